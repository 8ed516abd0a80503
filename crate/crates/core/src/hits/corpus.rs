//! Reference-corpus ingestion.
//!
//! One JSON object per line with fields `id`, `source`, and `text`. Text is
//! tokenized the same way reviews are, lowercased, and tokens carrying no
//! alphanumeric character (detached punctuation) are dropped so that
//! proximity windows count words.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CorpusDocument, HitsError};
use crate::tag::tokenize;

/// Wire form of one corpus line.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusRecord {
    pub id: String,
    pub source: String,
    pub text: String,
}

/// Lowercased word sequence of a document as indexed: tokenized, with
/// punctuation-only tokens removed.
pub fn corpus_words(text: &str) -> Vec<String> {
    tokenize(text)
        .into_iter()
        .filter(|t| t.surface.chars().any(char::is_alphanumeric))
        .map(|t| t.surface.to_lowercase())
        .collect()
}

/// Parses JSON Lines into corpus documents; blank lines are skipped.
pub fn parse_corpus(reader: impl BufRead) -> Result<Vec<CorpusDocument>, HitsError> {
    let mut docs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: CorpusRecord =
            serde_json::from_str(&line).map_err(|e| HitsError::MalformedCorpusLine {
                line: idx + 1,
                reason: e.to_string(),
            })?;
        docs.push(CorpusDocument::new(
            record.id,
            record.source,
            corpus_words(&record.text),
        ));
    }
    Ok(docs)
}

pub fn read_corpus_file(path: &Path) -> Result<Vec<CorpusDocument>, HitsError> {
    parse_corpus(BufReader::new(File::open(path)?))
}
