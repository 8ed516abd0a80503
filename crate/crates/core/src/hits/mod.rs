//! Hit counting over a reference corpus.
//!
//! Answers two query shapes — `hits(term)` and `hits(phrase NEAR term)` —
//! as *document* counts (a document matches once no matter how many times
//! the query occurs in it). The positional inverted index is the production
//! path; a brute-force linear scan serves as its independent oracle. A
//! persistent query cache memoizes counts and honors a courtesy delay
//! declared by the backend, which matters for rate-limited remote engines.

mod cache;
mod corpus;
mod fixture;
mod index;
mod oracle;

pub use cache::{cached_hits, CachedBackend, QueryCache};
pub use corpus::{corpus_words, parse_corpus, read_corpus_file, CorpusRecord};
pub use fixture::FixtureBackend;
pub use index::{build_index, HitIndex};
pub use oracle::hits_oracle;

use std::collections::BTreeSet;
use std::time::Duration;

use thiserror::Error;

/// Default proximity window: the phrase and the term must occur within this
/// many word positions of one another, in either order.
pub const DEFAULT_WINDOW: u32 = 10;

/// Courtesy delay remote backend implementations should declare between
/// consecutive live queries. Local backends answer from memory and use zero.
pub const REMOTE_QUERY_DELAY: Duration = Duration::from_secs(5);

#[derive(Debug, Error)]
pub enum HitsError {
    #[error("duplicate document id {0:?}")]
    DuplicateDocId(String),
    #[error("backend unavailable: {0}")]
    BackendUnavailable(String),
    #[error("cache i/o: {0}")]
    CacheIo(std::io::Error),
    #[error("index i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("not an index file (bad magic)")]
    BadMagic,
    #[error("unsupported index format version {0}")]
    UnsupportedVersion(u32),
    #[error("corrupt index: {0}")]
    CorruptIndex(String),
    #[error("malformed corpus line {line}: {reason}")]
    MalformedCorpusLine { line: usize, reason: String },
    #[error("malformed fixture: {0}")]
    MalformedFixture(String),
}

/// A reference-corpus document: the local stand-in for a web page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusDocument {
    pub doc_id: String,
    /// Site or dataset label; exclusion filters match on this.
    pub source: String,
    /// Lowercased tokens, implicit positions `0..n-1`.
    pub words: Vec<String>,
}

impl CorpusDocument {
    pub fn new(
        doc_id: impl Into<String>,
        source: impl Into<String>,
        words: Vec<String>,
    ) -> CorpusDocument {
        CorpusDocument {
            doc_id: doc_id.into(),
            source: source.into(),
            words,
        }
    }
}

/// What a query counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryKind {
    /// Documents containing `word` at least once.
    Term { word: String },
    /// Documents containing the adjacent pair `word1 word2` with an
    /// occurrence of `term` within `window` positions of either phrase
    /// word, in either order.
    Near {
        word1: String,
        word2: String,
        term: String,
        window: u32,
    },
}

/// A hit-count query plus the source labels excluded from counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HitQuery {
    pub kind: QueryKind,
    pub exclusions: BTreeSet<String>,
}

impl HitQuery {
    /// Single-term query. The word is lowercased.
    pub fn term(word: impl AsRef<str>) -> HitQuery {
        HitQuery {
            kind: QueryKind::Term {
                word: word.as_ref().to_lowercase(),
            },
            exclusions: BTreeSet::new(),
        }
    }

    /// Phrase-NEAR-term query. Words are lowercased; `window` is clamped to
    /// at least 1.
    pub fn near(
        word1: impl AsRef<str>,
        word2: impl AsRef<str>,
        term: impl AsRef<str>,
        window: u32,
    ) -> HitQuery {
        HitQuery {
            kind: QueryKind::Near {
                word1: word1.as_ref().to_lowercase(),
                word2: word2.as_ref().to_lowercase(),
                term: term.as_ref().to_lowercase(),
                window: window.max(1),
            },
            exclusions: BTreeSet::new(),
        }
    }

    pub fn with_exclusions(mut self, exclusions: impl IntoIterator<Item = String>) -> HitQuery {
        self.exclusions = exclusions.into_iter().collect();
        self
    }

    /// Canonical serialization used as the cache key and fixture key:
    /// `term|word|ex1,ex2` or `near|w1 w2|term|window|ex1,ex2` with
    /// exclusions sorted.
    pub fn canonical(&self) -> String {
        let ex = self
            .exclusions
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>()
            .join(",");
        match &self.kind {
            QueryKind::Term { word } => format!("term|{word}|{ex}"),
            QueryKind::Near {
                word1,
                word2,
                term,
                window,
            } => format!("near|{word1} {word2}|{term}|{window}|{ex}"),
        }
    }
}

/// Anything that can answer hit-count queries: the local index, a replay
/// fixture, a cache wrapper, or (out of tree) a live search engine.
pub trait HitBackend: Send + Sync {
    fn hits(&self, query: &HitQuery) -> Result<u64, HitsError>;

    /// Minimum delay to honor between consecutive live calls to this
    /// backend. Remote implementations should return [`REMOTE_QUERY_DELAY`].
    fn min_query_delay(&self) -> Duration {
        Duration::ZERO
    }
}
