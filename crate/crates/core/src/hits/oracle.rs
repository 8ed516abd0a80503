//! Brute-force hit counting by linear scan, used as the independent oracle
//! for the inverted index. No postings, no binary search: every document is
//! walked word by word.

use super::{CorpusDocument, HitQuery, QueryKind};

/// Same contract as [`super::HitIndex::hits`], computed with no index.
pub fn hits_oracle(docs: &[CorpusDocument], query: &HitQuery) -> u64 {
    docs.iter()
        .filter(|doc| !query.exclusions.contains(&doc.source))
        .filter(|doc| doc_matches(doc, &query.kind))
        .count() as u64
}

fn doc_matches(doc: &CorpusDocument, kind: &QueryKind) -> bool {
    match kind {
        QueryKind::Term { word } => doc.words.iter().any(|w| w == word),
        QueryKind::Near {
            word1,
            word2,
            term,
            window,
        } => {
            let mut phrase_starts = Vec::new();
            for (i, pair) in doc.words.windows(2).enumerate() {
                if pair[0] == *word1 && pair[1] == *word2 {
                    phrase_starts.push(i as i64);
                }
            }
            let term_positions: Vec<i64> = doc
                .words
                .iter()
                .enumerate()
                .filter(|(_, w)| *w == term)
                .map(|(i, _)| i as i64)
                .collect();
            phrase_starts.iter().any(|&p| {
                term_positions
                    .iter()
                    .any(|&t| ((t - p).abs()).min((t - p - 1).abs()) <= *window as i64)
            })
        }
    }
}
