//! Replay backend: canned hit counts keyed by canonical query string.
//!
//! Lets the scoring pipeline run without any corpus, e.g. to replay a known
//! per-phrase ledger. The JSON form is a flat object mapping canonical query
//! strings to counts; queries not present answer zero.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use super::{HitBackend, HitQuery, HitsError};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FixtureBackend {
    counts: BTreeMap<String, u64>,
}

impl FixtureBackend {
    pub fn new() -> FixtureBackend {
        FixtureBackend::default()
    }

    pub fn from_json_str(data: &str) -> Result<FixtureBackend, HitsError> {
        let counts: BTreeMap<String, u64> =
            serde_json::from_str(data).map_err(|e| HitsError::MalformedFixture(e.to_string()))?;
        Ok(FixtureBackend { counts })
    }

    pub fn from_json_file(path: &Path) -> Result<FixtureBackend, HitsError> {
        FixtureBackend::from_json_str(&fs::read_to_string(path).map_err(HitsError::Io)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.counts).expect("string/u64 map serializes")
    }

    pub fn insert(&mut self, query: &HitQuery, count: u64) {
        self.counts.insert(query.canonical(), count);
    }

    pub fn insert_key(&mut self, key: impl Into<String>, count: u64) {
        self.counts.insert(key.into(), count);
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

impl HitBackend for FixtureBackend {
    fn hits(&self, query: &HitQuery) -> Result<u64, HitsError> {
        Ok(self.counts.get(&query.canonical()).copied().unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn answers_from_map_and_zero_otherwise() {
        let mut fx = FixtureBackend::new();
        fx.insert(&HitQuery::term("excellent"), 100);
        assert_eq!(fx.hits(&HitQuery::term("excellent")).unwrap(), 100);
        assert_eq!(fx.hits(&HitQuery::term("poor")).unwrap(), 0);
    }

    #[test]
    fn json_round_trip() {
        let mut fx = FixtureBackend::new();
        fx.insert(&HitQuery::near("low", "fees", "excellent", 10), 12);
        fx.insert(&HitQuery::term("poor"), 3);
        let loaded = FixtureBackend::from_json_str(&fx.to_json_string()).unwrap();
        assert_eq!(fx, loaded);
    }

    #[test]
    fn rejects_malformed_json() {
        assert!(matches!(
            FixtureBackend::from_json_str("{not json"),
            Err(HitsError::MalformedFixture(_))
        ));
    }
}
