//! Review classification by average phrase orientation.
//!
//! A review is tagged, its candidate phrases extracted and scored, and the
//! arithmetic mean of the computed scores decides the label: strictly
//! positive means recommended. A review with no usable phrase is
//! `Undetermined` rather than a forced guess; the evaluation layer maps
//! that to a configurable fallback.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extract::{extract_phrases, CandidatePhrase};
use crate::so::{SoError, SoEstimate, SoEstimator};
use crate::tag::{parse_pretagged, TagError, Tagger};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Tag(#[from] TagError),
    #[error(transparent)]
    So(#[from] SoError),
    #[error("review {review_id:?} carries raw text but the tagger mode is pretagged-only")]
    RawTextNotAllowed { review_id: String },
    #[error("malformed review line {line}: {reason}")]
    MalformedReview { line: usize, reason: String },
    #[error("malformed result line {line}: {reason}")]
    MalformedResult { line: usize, reason: String },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Predicted label. `Undetermined` means no phrase produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Recommended,
    NotRecommended,
    Undetermined,
}

/// Author-supplied ground truth, when known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuthorLabel {
    Recommended,
    NotRecommended,
    Unknown,
}

/// Review body: raw text for the baseline tagger, or an externally tagged
/// `surface/TAG` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReviewText {
    Raw(String),
    Pretagged(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Review {
    pub review_id: String,
    pub domain: String,
    pub author_label: AuthorLabel,
    /// Star rating 1..=5 when the author gave one.
    pub stars: Option<u8>,
    pub text: ReviewText,
}

/// How raw review text is handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TaggerMode {
    /// Tag raw text with the baseline tagger; pre-tagged bodies still parse.
    #[default]
    Baseline,
    /// Only pre-tagged bodies are accepted.
    Pretagged,
}

/// One scored phrase of a review's ledger.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhraseScore {
    pub phrase: CandidatePhrase,
    pub so: SoEstimate,
}

/// Per-review outcome: the full phrase ledger, the mean of computed values,
/// and the resulting label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationResult {
    #[serde(rename = "id")]
    pub review_id: String,
    pub label: Label,
    pub average_so: Option<f64>,
    pub used_count: usize,
    pub skipped_count: usize,
    pub phrases: Vec<PhraseScore>,
}

/// Tagger + extractor + scorer wired together.
pub struct Pipeline<'a> {
    tagger: Tagger,
    mode: TaggerMode,
    estimator: SoEstimator<'a>,
}

impl<'a> Pipeline<'a> {
    pub fn new(tagger: Tagger, mode: TaggerMode, estimator: SoEstimator<'a>) -> Pipeline<'a> {
        Pipeline {
            tagger,
            mode,
            estimator,
        }
    }

    /// Runs the three pipeline steps on one review. Zero-phrase reviews are
    /// fine: they come back `Undetermined` with an absent average.
    pub fn classify(&self, review: &Review) -> Result<ClassificationResult, ClassifyError> {
        let tagged = match &review.text {
            ReviewText::Raw(text) => {
                if self.mode == TaggerMode::Pretagged {
                    return Err(ClassifyError::RawTextNotAllowed {
                        review_id: review.review_id.clone(),
                    });
                }
                self.tagger.tag_text(text)
            }
            ReviewText::Pretagged(line) => parse_pretagged(line)?,
        };
        let mut phrases = Vec::new();
        for phrase in extract_phrases(&tagged) {
            let so = self.estimator.estimate_phrase(&phrase)?;
            phrases.push(PhraseScore { phrase, so });
        }
        Ok(summarize(review.review_id.clone(), phrases))
    }

    /// Classifies reviews with a bounded worker pool. Output order equals
    /// input order regardless of the pool width.
    pub fn classify_batch(
        &self,
        reviews: &[Review],
        jobs: usize,
    ) -> Result<Vec<ClassificationResult>, ClassifyError> {
        if jobs <= 1 {
            return reviews.iter().map(|r| self.classify(r)).collect();
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| ClassifyError::Pool(e.to_string()))?;
        pool.install(|| {
            reviews
                .par_iter()
                .map(|r| self.classify(r))
                .collect::<Result<Vec<_>, _>>()
        })
    }
}

/// Mean of the computed values (accumulated in extraction order) and the
/// strict-positive labeling rule.
fn summarize(review_id: String, phrases: Vec<PhraseScore>) -> ClassificationResult {
    let used_count = phrases.iter().filter(|p| !p.so.is_skipped()).count();
    let skipped_count = phrases.len() - used_count;
    let average_so = (used_count > 0)
        .then(|| phrases.iter().filter_map(|p| p.so.value()).sum::<f64>() / used_count as f64);
    let label = match average_so {
        None => Label::Undetermined,
        Some(avg) if avg > 0.0 => Label::Recommended,
        Some(_) => Label::NotRecommended,
    };
    ClassificationResult {
        review_id,
        label,
        average_so,
        used_count,
        skipped_count,
        phrases,
    }
}

/// Wire form of one review line: `text` or `tagged`, exactly one of them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReviewRecord {
    pub id: String,
    pub domain: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stars: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tagged: Option<String>,
}

impl ReviewRecord {
    fn into_review(self, line: usize) -> Result<Review, ClassifyError> {
        let malformed = |reason: &str| ClassifyError::MalformedReview {
            line,
            reason: reason.to_string(),
        };
        let author_label = match self.label.as_deref() {
            None => AuthorLabel::Unknown,
            Some("recommended") => AuthorLabel::Recommended,
            Some("not_recommended") => AuthorLabel::NotRecommended,
            Some(other) => {
                return Err(malformed(&format!(
                    "label must be \"recommended\" or \"not_recommended\", got {other:?}"
                )))
            }
        };
        if let Some(stars) = self.stars {
            if !(1..=5).contains(&stars) {
                return Err(malformed(&format!("stars must be 1..=5, got {stars}")));
            }
        }
        let text = match (self.text, self.tagged) {
            (Some(text), None) => ReviewText::Raw(text),
            (None, Some(tagged)) => ReviewText::Pretagged(tagged),
            (Some(_), Some(_)) => return Err(malformed("both \"text\" and \"tagged\" present")),
            (None, None) => return Err(malformed("neither \"text\" nor \"tagged\" present")),
        };
        Ok(Review {
            review_id: self.id,
            domain: self.domain,
            author_label,
            stars: self.stars,
            text,
        })
    }
}

/// Parses review JSON Lines; blank lines are skipped and errors carry the
/// 1-based line number.
pub fn parse_reviews(reader: impl BufRead) -> Result<Vec<Review>, ClassifyError> {
    let mut reviews = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: ReviewRecord =
            serde_json::from_str(&line).map_err(|e| ClassifyError::MalformedReview {
                line: idx + 1,
                reason: e.to_string(),
            })?;
        reviews.push(record.into_review(idx + 1)?);
    }
    Ok(reviews)
}

pub fn read_reviews_file(path: &Path) -> Result<Vec<Review>, ClassifyError> {
    parse_reviews(BufReader::new(File::open(path)?))
}

/// Writes results as JSON Lines with stable field order, so identical runs
/// produce identical bytes.
pub fn write_results(
    w: &mut impl Write,
    results: &[ClassificationResult],
) -> Result<(), ClassifyError> {
    for r in results {
        serde_json::to_writer(&mut *w, r)
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
        writeln!(w)?;
    }
    Ok(())
}

pub fn parse_results(reader: impl BufRead) -> Result<Vec<ClassificationResult>, ClassifyError> {
    let mut results = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: ClassificationResult =
            serde_json::from_str(&line).map_err(|e| ClassifyError::MalformedResult {
                line: idx + 1,
                reason: e.to_string(),
            })?;
        results.push(record);
    }
    Ok(results)
}

pub fn read_results_file(path: &Path) -> Result<Vec<ClassificationResult>, ClassifyError> {
    parse_results(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hits::{FixtureBackend, HitQuery};
    use crate::so::SoConfig;

    /// Counts that steer the default-config estimate of `w1 w2` to `target`
    /// (both sides at least 1e6, so the landing error is below 1e-6).
    fn plant_phrase(fx: &mut FixtureBackend, w1: &str, w2: &str, target: f64) {
        let big = 1_000_000u64;
        let (near_pos, near_neg) = if target >= 0.0 {
            (
                (target.exp() * (big as f64 + 0.01) - 0.01).round() as u64,
                big,
            )
        } else {
            (
                big,
                ((-target).exp() * (big as f64 + 0.01) - 0.01).round() as u64,
            )
        };
        fx.insert(&HitQuery::near(w1, w2, "excellent", 10), near_pos);
        fx.insert(&HitQuery::near(w1, w2, "poor", 10), near_neg);
        fx.insert(&HitQuery::term("excellent"), 100_000_000);
        fx.insert(&HitQuery::term("poor"), 100_000_000);
    }

    fn pretagged_review(id: &str, line: &str) -> Review {
        Review {
            review_id: id.to_string(),
            domain: "banks".to_string(),
            author_label: AuthorLabel::Unknown,
            stars: None,
            text: ReviewText::Pretagged(line.to_string()),
        }
    }

    fn pipeline<'a>(backend: &'a FixtureBackend) -> Pipeline<'a> {
        Pipeline::new(
            Tagger::empty(),
            TaggerMode::Baseline,
            SoEstimator::new(backend, SoConfig::default()),
        )
    }

    #[test]
    fn zero_phrase_review_is_undetermined() {
        let fx = FixtureBackend::new();
        let p = pipeline(&fx);
        let result = p
            .classify(&pretagged_review("r1", "the/OTHER end/NN"))
            .unwrap();
        assert_eq!(result.label, Label::Undetermined);
        assert_eq!(result.average_so, None);
        assert_eq!(result.used_count, 0);
    }

    #[test]
    fn all_skipped_review_is_undetermined() {
        // No fixture counts: every query answers 0, so every phrase skips.
        let fx = FixtureBackend::new();
        let p = pipeline(&fx);
        let result = p
            .classify(&pretagged_review("r1", "good/JJ movie/NN"))
            .unwrap();
        assert_eq!(result.used_count, 0);
        assert_eq!(result.skipped_count, 1);
        assert_eq!(result.label, Label::Undetermined);
    }

    #[test]
    fn zero_average_is_not_recommended() {
        let mut fx = FixtureBackend::new();
        // Symmetric counts: exact zero.
        fx.insert(&HitQuery::near("good", "movie", "excellent", 10), 50);
        fx.insert(&HitQuery::near("good", "movie", "poor", 10), 50);
        fx.insert(&HitQuery::term("excellent"), 500);
        fx.insert(&HitQuery::term("poor"), 500);
        let p = pipeline(&fx);
        let result = p
            .classify(&pretagged_review("r1", "good/JJ movie/NN"))
            .unwrap();
        assert_eq!(result.average_so, Some(0.0));
        assert_eq!(result.label, Label::NotRecommended);
    }

    #[test]
    fn average_is_mean_of_computed_values() {
        let mut fx = FixtureBackend::new();
        plant_phrase(&mut fx, "good", "movie", 2.0);
        plant_phrase(&mut fx, "bad", "plot", -1.0);
        let p = pipeline(&fx);
        let result = p
            .classify(&pretagged_review(
                "r1",
                "good/JJ movie/NN ./OTHER bad/JJ plot/NN",
            ))
            .unwrap();
        assert_eq!(result.used_count, 2);
        let avg = result.average_so.unwrap();
        assert!((avg - 0.5).abs() < 1e-5, "avg = {avg}");
        assert_eq!(result.label, Label::Recommended);
        // Ledger preserved in extraction order.
        assert_eq!(result.phrases[0].phrase.text(), "good movie");
        assert_eq!(result.phrases[1].phrase.text(), "bad plot");
    }

    #[test]
    fn skipped_phrases_do_not_enter_the_mean() {
        let mut fx = FixtureBackend::new();
        plant_phrase(&mut fx, "good", "movie", 1.5);
        // "dull plot" gets counts below the threshold on both sides.
        fx.insert(&HitQuery::near("dull", "plot", "excellent", 10), 3);
        fx.insert(&HitQuery::near("dull", "plot", "poor", 10), 3);
        let p = pipeline(&fx);
        let result = p
            .classify(&pretagged_review(
                "r1",
                "good/JJ movie/NN ./OTHER dull/JJ plot/NN",
            ))
            .unwrap();
        assert_eq!((result.used_count, result.skipped_count), (1, 1));
        assert!((result.average_so.unwrap() - 1.5).abs() < 1e-5);
    }

    #[test]
    fn pretagged_mode_rejects_raw_text() {
        let fx = FixtureBackend::new();
        let p = Pipeline::new(
            Tagger::empty(),
            TaggerMode::Pretagged,
            SoEstimator::new(&fx, SoConfig::default()),
        );
        let review = Review {
            review_id: "r1".into(),
            domain: "banks".into(),
            author_label: AuthorLabel::Unknown,
            stars: None,
            text: ReviewText::Raw("good movie".into()),
        };
        assert!(matches!(
            p.classify(&review),
            Err(ClassifyError::RawTextNotAllowed { .. })
        ));
    }

    #[test]
    fn batch_parallel_matches_sequential() {
        let mut fx = FixtureBackend::new();
        plant_phrase(&mut fx, "good", "movie", 2.0);
        plant_phrase(&mut fx, "bad", "plot", -3.0);
        let p = pipeline(&fx);
        let reviews: Vec<Review> = (0..40)
            .map(|i| {
                let body = if i % 2 == 0 {
                    "good/JJ movie/NN"
                } else {
                    "bad/JJ plot/NN"
                };
                pretagged_review(&format!("r{i}"), body)
            })
            .collect();
        let seq = p.classify_batch(&reviews, 1).unwrap();
        let par = p.classify_batch(&reviews, 4).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.len(), 40);
        assert!(seq
            .iter()
            .enumerate()
            .all(|(i, r)| r.review_id == format!("r{i}")));
    }

    #[test]
    fn parse_reviews_cases() {
        assert!(parse_reviews("".as_bytes()).unwrap().is_empty());

        let one =
            r#"{"id":"r1","domain":"movies","label":"recommended","stars":5,"text":"good movie"}"#;
        let reviews = parse_reviews(one.as_bytes()).unwrap();
        assert_eq!(reviews.len(), 1);
        assert_eq!(reviews[0].author_label, AuthorLabel::Recommended);
        assert_eq!(reviews[0].stars, Some(5));
        assert_eq!(reviews[0].text, ReviewText::Raw("good movie".into()));

        let tagged = r#"{"id":"r2","domain":"banks","tagged":"online/JJ experience/NN"}"#;
        let reviews = parse_reviews(tagged.as_bytes()).unwrap();
        assert_eq!(reviews[0].author_label, AuthorLabel::Unknown);
        assert!(matches!(reviews[0].text, ReviewText::Pretagged(_)));
    }

    #[test]
    fn parse_reviews_errors_carry_line_numbers() {
        let data = r#"{"id":"r1","domain":"movies","text":"ok"}
{"id":"r2","domain":"movies"}"#;
        match parse_reviews(data.as_bytes()) {
            Err(ClassifyError::MalformedReview { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected malformed review, got {other:?}"),
        }

        let bad_label = r#"{"id":"r1","domain":"m","label":"meh","text":"x"}"#;
        assert!(parse_reviews(bad_label.as_bytes()).is_err());

        let bad_stars = r#"{"id":"r1","domain":"m","stars":9,"text":"x"}"#;
        assert!(parse_reviews(bad_stars.as_bytes()).is_err());

        let both = r#"{"id":"r1","domain":"m","text":"x","tagged":"x/NN"}"#;
        assert!(parse_reviews(both.as_bytes()).is_err());
    }

    #[test]
    fn results_round_trip_and_stable_bytes() {
        let mut fx = FixtureBackend::new();
        plant_phrase(&mut fx, "good", "movie", 2.0);
        let p = pipeline(&fx);
        let results = vec![
            p.classify(&pretagged_review("r1", "good/JJ movie/NN"))
                .unwrap(),
            p.classify(&pretagged_review("r2", "the/OTHER end/NN"))
                .unwrap(),
        ];
        let mut buf1 = Vec::new();
        write_results(&mut buf1, &results).unwrap();
        let mut buf2 = Vec::new();
        write_results(&mut buf2, &results).unwrap();
        assert_eq!(buf1, buf2);
        let parsed = parse_results(buf1.as_slice()).unwrap();
        assert_eq!(parsed, results);
    }
}
