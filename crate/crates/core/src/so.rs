//! Semantic orientation of a phrase.
//!
//! Pointwise mutual information measured against a positive and a negative
//! reference word, reduced to a hit-count log-odds ratio: with `near_pos` =
//! hits(phrase NEAR positive), `near_neg` = hits(phrase NEAR negative), and
//! `ref_pos`/`ref_neg` the reference totals,
//!
//! ```text
//! so = log[ (near_pos + eps) * (ref_neg + eps) / ((near_neg + eps) * (ref_pos + eps)) ]
//! ```
//!
//! A phrase is skipped (no value) when both raw NEAR counts fall below the
//! minimum-hits threshold. Positive values mean association with the
//! positive reference.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extract::CandidatePhrase;
use crate::hits::{HitBackend, HitQuery, HitsError, DEFAULT_WINDOW};

#[derive(Debug, Error)]
pub enum SoError {
    #[error("pmi domain error: {0}")]
    Domain(String),
    #[error("degenerate reference words: both totals are zero")]
    DegenerateReference,
    #[error(transparent)]
    Backend(#[from] HitsError),
}

/// Scoring configuration. Defaults: references "excellent"/"poor", smoothing
/// 0.01, minimum hits 4, natural log, window 10, no exclusions.
#[derive(Debug, Clone, PartialEq)]
pub struct SoConfig {
    pub positive_ref: String,
    pub negative_ref: String,
    pub epsilon: f64,
    pub min_hits: u64,
    pub log_base: f64,
    pub window: u32,
    pub exclusions: BTreeSet<String>,
}

impl Default for SoConfig {
    fn default() -> SoConfig {
        SoConfig {
            positive_ref: "excellent".to_string(),
            negative_ref: "poor".to_string(),
            epsilon: 0.01,
            min_hits: 4,
            log_base: std::f64::consts::E,
            window: DEFAULT_WINDOW,
            exclusions: BTreeSet::new(),
        }
    }
}

impl SoConfig {
    /// Logarithm in the configured base. The default base is the exact
    /// natural log; other bases divide by `ln(base)`.
    fn log(&self, x: f64) -> f64 {
        if self.log_base == std::f64::consts::E {
            x.ln()
        } else {
            x.ln() / self.log_base.ln()
        }
    }
}

/// The four counts behind one estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitCounts {
    /// hits(phrase NEAR positive_ref)
    pub near_pos: u64,
    /// hits(phrase NEAR negative_ref)
    pub near_neg: u64,
    /// hits(positive_ref)
    pub ref_pos: u64,
    /// hits(negative_ref)
    pub ref_neg: u64,
}

/// Computed value or an explicit skip, plus the raw counts either way.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SoEstimate {
    #[serde(flatten)]
    pub status: SoStatus,
    pub counts: HitCounts,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SoStatus {
    Computed { value: f64 },
    Skipped,
}

impl SoEstimate {
    pub fn value(&self) -> Option<f64> {
        match self.status {
            SoStatus::Computed { value } => Some(value),
            SoStatus::Skipped => None,
        }
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.status, SoStatus::Skipped)
    }
}

/// Pointwise mutual information `log(p_joint / (p1 * p2))` in the given
/// base. All probabilities must be positive.
pub fn pmi(p_joint: f64, p1: f64, p2: f64, log_base: f64) -> Result<f64, SoError> {
    for (name, p) in [("p_joint", p_joint), ("p1", p1), ("p2", p2)] {
        if p.is_nan() || p <= 0.0 {
            return Err(SoError::Domain(format!("{name} must be positive, got {p}")));
        }
    }
    if log_base.is_nan() || log_base <= 1.0 {
        return Err(SoError::Domain(format!(
            "log base must exceed 1, got {log_base}"
        )));
    }
    Ok((p_joint / (p1 * p2)).ln() / log_base.ln())
}

/// Estimates semantic orientation through a hit backend.
pub struct SoEstimator<'a> {
    backend: &'a dyn HitBackend,
    cfg: SoConfig,
}

impl<'a> SoEstimator<'a> {
    pub fn new(backend: &'a dyn HitBackend, cfg: SoConfig) -> SoEstimator<'a> {
        SoEstimator { backend, cfg }
    }

    pub fn config(&self) -> &SoConfig {
        &self.cfg
    }

    /// Estimates a two-word phrase: four hit queries, the skip rule on raw
    /// counts, then the smoothed log-odds. Fails with
    /// [`SoError::DegenerateReference`] when both reference totals are zero,
    /// since smoothing alone would make the value meaningless.
    pub fn estimate(&self, word1: &str, word2: &str) -> Result<SoEstimate, SoError> {
        let cfg = &self.cfg;
        let ex = || cfg.exclusions.iter().cloned();
        let near_pos = self.backend.hits(
            &HitQuery::near(word1, word2, &cfg.positive_ref, cfg.window).with_exclusions(ex()),
        )?;
        let near_neg = self.backend.hits(
            &HitQuery::near(word1, word2, &cfg.negative_ref, cfg.window).with_exclusions(ex()),
        )?;
        let ref_pos = self
            .backend
            .hits(&HitQuery::term(&cfg.positive_ref).with_exclusions(ex()))?;
        let ref_neg = self
            .backend
            .hits(&HitQuery::term(&cfg.negative_ref).with_exclusions(ex()))?;
        let counts = HitCounts {
            near_pos,
            near_neg,
            ref_pos,
            ref_neg,
        };
        // Skip rule checks the raw, unsmoothed counts; both must fall short.
        if near_pos < cfg.min_hits && near_neg < cfg.min_hits {
            return Ok(SoEstimate {
                status: SoStatus::Skipped,
                counts,
            });
        }
        if ref_pos == 0 && ref_neg == 0 {
            return Err(SoError::DegenerateReference);
        }
        let e = cfg.epsilon;
        let odds = ((near_pos as f64 + e) * (ref_neg as f64 + e))
            / ((near_neg as f64 + e) * (ref_pos as f64 + e));
        Ok(SoEstimate {
            status: SoStatus::Computed {
                value: cfg.log(odds),
            },
            counts,
        })
    }

    pub fn estimate_phrase(&self, phrase: &CandidatePhrase) -> Result<SoEstimate, SoError> {
        self.estimate(&phrase.word1, &phrase.word2)
    }
}
