//! Review-orientation engine.
//!
//! Classifies free-text reviews as recommended or not recommended without any
//! labeled training data. The pipeline has three stages:
//!
//! 1. [`tag`] / [`extract`] — part-of-speech tag the review and pull out
//!    two-word adjective/adverb phrases matching a small set of tag patterns.
//! 2. [`hits`] / [`so`] — score each phrase by a log-odds statistic computed
//!    from proximity hit counts against a pair of reference words
//!    ("excellent" vs. "poor") over a reference corpus.
//! 3. [`classify`] — average the phrase scores; a positive average means
//!    recommended.
//!
//! [`eval`] scores batches of classifications against author labels and
//! [`cli`] wires everything into one executable.

pub mod classify;
pub mod cli;
pub mod eval;
pub mod extract;
pub mod hits;
pub mod so;
pub mod tag;

pub use classify::{ClassificationResult, Label, Pipeline, Review};
pub use extract::{CandidatePhrase, PatternId};
pub use hits::{CorpusDocument, HitBackend, HitIndex, HitQuery, QueryCache};
pub use so::{SoConfig, SoEstimate, SoEstimator};
pub use tag::{PosTag, TaggedToken, Tagger, Token};
