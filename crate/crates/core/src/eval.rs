//! Batch evaluation of classifications against author labels.
//!
//! Produces accuracy, a predicted-sign-by-author-label confusion matrix in
//! percentage form, the correlation of average orientation with star
//! ratings, and per-domain corpus summaries. Undetermined classifications
//! enter accuracy only after mapping to a configurable fallback label; the
//! report also carries accuracy restricted to determined reviews.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::classify::{AuthorLabel, ClassificationResult, Label, Review};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("nothing to evaluate")]
    EmptyEvaluation,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("zero variance in correlation input")]
    ZeroVariance,
    #[error("result {0:?} has no matching review")]
    MissingReview(String),
}

/// Label used in place of `Undetermined` when scoring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FallbackLabel {
    #[default]
    Recommended,
    NotRecommended,
}

impl FallbackLabel {
    pub fn as_label(self) -> Label {
        match self {
            FallbackLabel::Recommended => Label::Recommended,
            FallbackLabel::NotRecommended => Label::NotRecommended,
        }
    }
}

/// One scored review after fallback mapping: predicted sign and author verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabeledOutcome {
    pub predicted_positive: bool,
    pub author_positive: bool,
}

/// Percentage of outcomes whose predicted label matches the author's.
pub fn accuracy(outcomes: &[LabeledOutcome]) -> Result<f64, EvalError> {
    if outcomes.is_empty() {
        return Err(EvalError::EmptyEvaluation);
    }
    let matches = outcomes
        .iter()
        .filter(|o| o.predicted_positive == o.author_positive)
        .count();
    Ok(100.0 * matches as f64 / outcomes.len() as f64)
}

/// 2x2 confusion matrix, predicted sign by author label, with cells as
/// percentages of all scored reviews. Counts are kept alongside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfusionMatrix {
    pub pos_up: u64,
    pub pos_down: u64,
    pub neg_up: u64,
    pub neg_down: u64,
    pub pct_pos_up: f64,
    pub pct_pos_down: f64,
    pub pct_neg_up: f64,
    pub pct_neg_down: f64,
}

impl ConfusionMatrix {
    pub fn total(&self) -> u64 {
        self.pos_up + self.pos_down + self.neg_up + self.neg_down
    }

    /// Row sums (predicted positive, predicted negative) in percent.
    pub fn row_sums_pct(&self) -> (f64, f64) {
        (
            self.pct_pos_up + self.pct_pos_down,
            self.pct_neg_up + self.pct_neg_down,
        )
    }

    /// Column sums (author positive, author negative) in percent.
    pub fn col_sums_pct(&self) -> (f64, f64) {
        (
            self.pct_pos_up + self.pct_neg_up,
            self.pct_pos_down + self.pct_neg_down,
        )
    }
}

pub fn confusion_matrix(outcomes: &[LabeledOutcome]) -> Result<ConfusionMatrix, EvalError> {
    if outcomes.is_empty() {
        return Err(EvalError::EmptyEvaluation);
    }
    let mut counts = [0u64; 4];
    for o in outcomes {
        let idx = match (o.predicted_positive, o.author_positive) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        };
        counts[idx] += 1;
    }
    let n = outcomes.len() as f64;
    let pct = |c: u64| 100.0 * c as f64 / n;
    Ok(ConfusionMatrix {
        pos_up: counts[0],
        pos_down: counts[1],
        neg_up: counts[2],
        neg_down: counts[3],
        pct_pos_up: pct(counts[0]),
        pct_pos_down: pct(counts[1]),
        pct_neg_up: pct(counts[2]),
        pct_neg_down: pct(counts[3]),
    })
}

/// Sample Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, EvalError> {
    if xs.len() != ys.len() {
        return Err(EvalError::InsufficientData(format!(
            "length mismatch: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(EvalError::InsufficientData(format!(
            "need at least 2 pairs, got {}",
            xs.len()
        )));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        cov += (x - mx) * (y - my);
        vx += (x - mx) * (x - mx);
        vy += (y - my) * (y - my);
    }
    if vx == 0.0 || vy == 0.0 {
        return Err(EvalError::ZeroVariance);
    }
    Ok(cov / (vx * vy).sqrt())
}

/// Spearman rank correlation: Pearson over average ranks.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64, EvalError> {
    pearson(&ranks(xs), &ranks(ys))
}

/// Average ranks (1-based); ties share the mean of their rank range.
fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .partial_cmp(&values[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + 1 + j + 1) as f64 / 2.0;
        for &k in &order[i..=j] {
            out[k] = rank;
        }
        i = j + 1;
    }
    out
}

/// Per-domain review counts and mean extracted phrases.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainSummary {
    pub domain: String,
    pub review_count: usize,
    pub avg_phrases: f64,
    /// Set when the domain has no reviews; the average is reported as 0.
    pub is_empty: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub domains: Vec<DomainSummary>,
    pub overall: DomainSummary,
}

/// Summarizes (domain, extracted-phrase-count) entries per domain plus an
/// overall row. Domains come out sorted by name.
pub fn summarize_corpus(entries: &[(String, usize)]) -> CorpusSummary {
    let mut by_domain: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for (domain, phrases) in entries {
        let e = by_domain.entry(domain).or_default();
        e.0 += 1;
        e.1 += phrases;
    }
    let summary = |name: &str, count: usize, phrases: usize| DomainSummary {
        domain: name.to_string(),
        review_count: count,
        avg_phrases: if count == 0 {
            0.0
        } else {
            phrases as f64 / count as f64
        },
        is_empty: count == 0,
    };
    let domains = by_domain
        .iter()
        .map(|(name, (count, phrases))| summary(name, *count, *phrases))
        .collect();
    let total_phrases: usize = entries.iter().map(|(_, p)| p).sum();
    CorpusSummary {
        domains,
        overall: summary("all", entries.len(), total_phrases),
    }
}

/// Everything the evaluation knows about one domain (or about "all").
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainReport {
    pub domain: String,
    pub total: usize,
    pub determined: usize,
    pub undetermined: usize,
    /// Reviews without an author label; excluded from accuracy and confusion.
    pub unlabeled: usize,
    pub avg_phrases: f64,
    pub accuracy: Option<f64>,
    /// Accuracy over determined reviews only.
    pub accuracy_determined: Option<f64>,
    /// Pearson correlation of average orientation with star ratings, over
    /// determined star-rated reviews. Absent below 2 such reviews or under
    /// zero variance.
    pub correlation: Option<f64>,
    pub spearman: Option<f64>,
    pub confusion: Option<ConfusionMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub fallback: &'static str,
    pub overall: DomainReport,
    pub domains: Vec<DomainReport>,
}

fn domain_report(
    name: &str,
    entries: &[(&Review, &ClassificationResult)],
    fallback: FallbackLabel,
) -> DomainReport {
    let total = entries.len();
    let determined = entries
        .iter()
        .filter(|(_, r)| r.label != Label::Undetermined)
        .count();
    let unlabeled = entries
        .iter()
        .filter(|(rev, _)| rev.author_label == AuthorLabel::Unknown)
        .count();
    let phrases: usize = entries
        .iter()
        .map(|(_, r)| r.used_count + r.skipped_count)
        .sum();

    let outcome = |rev: &Review, res: &ClassificationResult| -> Option<LabeledOutcome> {
        let author_positive = match rev.author_label {
            AuthorLabel::Recommended => true,
            AuthorLabel::NotRecommended => false,
            AuthorLabel::Unknown => return None,
        };
        let predicted = match res.label {
            Label::Undetermined => fallback.as_label(),
            other => other,
        };
        Some(LabeledOutcome {
            predicted_positive: predicted == Label::Recommended,
            author_positive,
        })
    };

    let labeled: Vec<LabeledOutcome> = entries
        .iter()
        .filter_map(|(rev, res)| outcome(rev, res))
        .collect();
    let labeled_determined: Vec<LabeledOutcome> = entries
        .iter()
        .filter(|(_, res)| res.label != Label::Undetermined)
        .filter_map(|(rev, res)| outcome(rev, res))
        .collect();

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (rev, res) in entries {
        if let (Some(avg), Some(stars)) = (res.average_so, rev.stars) {
            xs.push(avg);
            ys.push(stars as f64);
        }
    }

    DomainReport {
        domain: name.to_string(),
        total,
        determined,
        undetermined: total - determined,
        unlabeled,
        avg_phrases: if total == 0 {
            0.0
        } else {
            phrases as f64 / total as f64
        },
        accuracy: accuracy(&labeled).ok(),
        accuracy_determined: accuracy(&labeled_determined).ok(),
        correlation: pearson(&xs, &ys).ok(),
        spearman: spearman(&xs, &ys).ok(),
        confusion: confusion_matrix(&labeled).ok(),
    }
}

/// Joins results with their reviews by id and builds the full report.
/// Every result must have a matching review; reviews without results are
/// ignored (classifying a subset is allowed).
pub fn build_report(
    reviews: &[Review],
    results: &[ClassificationResult],
    fallback: FallbackLabel,
) -> Result<EvalReport, EvalError> {
    if results.is_empty() {
        return Err(EvalError::EmptyEvaluation);
    }
    let by_id: BTreeMap<&str, &Review> =
        reviews.iter().map(|r| (r.review_id.as_str(), r)).collect();
    let mut all: Vec<(&Review, &ClassificationResult)> = Vec::with_capacity(results.len());
    let mut domains: BTreeMap<&str, Vec<(&Review, &ClassificationResult)>> = BTreeMap::new();
    for res in results {
        let rev = by_id
            .get(res.review_id.as_str())
            .ok_or_else(|| EvalError::MissingReview(res.review_id.clone()))?;
        all.push((rev, res));
        domains
            .entry(rev.domain.as_str())
            .or_default()
            .push((rev, res));
    }
    Ok(EvalReport {
        fallback: match fallback {
            FallbackLabel::Recommended => "recommended",
            FallbackLabel::NotRecommended => "not_recommended",
        },
        overall: domain_report("all", &all, fallback),
        domains: domains
            .iter()
            .map(|(name, entries)| domain_report(name, entries, fallback))
            .collect(),
    })
}

/// Plain-text rendering with aligned columns: corpus summary, accuracy and
/// correlation per domain, and the overall confusion matrix.
pub fn render_text(report: &EvalReport) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    let fmt_opt = |v: Option<f64>| match v {
        Some(v) => format!("{v:>8.4}"),
        None => format!("{:>8}", "-"),
    };
    let fmt_pct = |v: Option<f64>| match v {
        Some(v) => format!("{v:>8.2}"),
        None => format!("{:>8}", "-"),
    };

    writeln!(out, "corpus").unwrap();
    writeln!(
        out,
        "  {:<16} {:>8} {:>10} {:>12} {:>14}",
        "domain", "reviews", "determined", "undetermined", "avg phrases"
    )
    .unwrap();
    for d in report.domains.iter().chain([&report.overall]) {
        writeln!(
            out,
            "  {:<16} {:>8} {:>10} {:>12} {:>14.2}",
            d.domain, d.total, d.determined, d.undetermined, d.avg_phrases
        )
        .unwrap();
    }

    writeln!(out, "\nscores (fallback label: {})", report.fallback).unwrap();
    writeln!(
        out,
        "  {:<16} {:>8} {:>10} {:>8} {:>8}",
        "domain", "accuracy", "acc(det)", "pearson", "spearman"
    )
    .unwrap();
    for d in report.domains.iter().chain([&report.overall]) {
        writeln!(
            out,
            "  {:<16} {} {:>10} {} {}",
            d.domain,
            fmt_pct(d.accuracy),
            fmt_pct(d.accuracy_determined).trim_start(),
            fmt_opt(d.correlation),
            fmt_opt(d.spearman)
        )
        .unwrap();
    }

    if let Some(c) = &report.overall.confusion {
        let (row_pos, row_neg) = c.row_sums_pct();
        let (col_up, col_down) = c.col_sums_pct();
        writeln!(out, "\nconfusion (% of labeled reviews, all domains)").unwrap();
        writeln!(
            out,
            "  {:<10} {:>12} {:>16} {:>8}",
            "predicted", "recommended", "not recommended", "sum"
        )
        .unwrap();
        writeln!(
            out,
            "  {:<10} {:>12.2} {:>16.2} {:>8.2}",
            "positive", c.pct_pos_up, c.pct_pos_down, row_pos
        )
        .unwrap();
        writeln!(
            out,
            "  {:<10} {:>12.2} {:>16.2} {:>8.2}",
            "negative", c.pct_neg_up, c.pct_neg_down, row_neg
        )
        .unwrap();
        writeln!(
            out,
            "  {:<10} {:>12.2} {:>16.2} {:>8.2}",
            "sum",
            col_up,
            col_down,
            row_pos + row_neg
        )
        .unwrap();
    }
    out
}
