//! Two-word phrase extraction.
//!
//! Scans tagged documents with five tag-pair patterns (each with a constraint
//! on the tag of the following word, which is never itself extracted) and
//! emits candidate phrases. Proper nouns never participate, so item names
//! cannot influence downstream scoring.

use serde::{Deserialize, Serialize};

use crate::tag::{PosTag, TaggedToken};

/// One of the five extraction pattern rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PatternId(u8);

impl PatternId {
    pub fn new(id: u8) -> Option<PatternId> {
        (1..=5).contains(&id).then_some(PatternId(id))
    }

    pub fn get(&self) -> u8 {
        self.0
    }
}

impl std::fmt::Display for PatternId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A two-consecutive-word phrase, lowercased, with the pattern row it
/// matched and the document position of its first word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidatePhrase {
    pub word1: String,
    pub word2: String,
    pub tag1: PosTag,
    pub tag2: PosTag,
    pub pattern: PatternId,
    pub start_position: usize,
}

impl CandidatePhrase {
    /// The phrase as queried: both words joined by one space.
    pub fn text(&self) -> String {
        format!("{} {}", self.word1, self.word2)
    }
}

fn is_noun(tag: PosTag) -> bool {
    matches!(tag, PosTag::Nn | PosTag::Nns)
}

fn is_adverb(tag: PosTag) -> bool {
    matches!(tag, PosTag::Rb | PosTag::Rbr | PosTag::Rbs)
}

fn is_verb(tag: PosTag) -> bool {
    matches!(tag, PosTag::Vb | PosTag::Vbd | PosTag::Vbn | PosTag::Vbg)
}

/// Matches a consecutive tag pair (with lookahead at the following tag)
/// against the five pattern rows:
///
/// 1. `JJ` + `NN`/`NNS`, any third word;
/// 2. `RB`/`RBR`/`RBS` + `JJ`, third word not a noun;
/// 3. `JJ` + `JJ`, third word not a noun;
/// 4. `NN`/`NNS` + `JJ`, third word not a noun;
/// 5. `RB`/`RBR`/`RBS` + `VB`/`VBD`/`VBN`/`VBG`, any third word.
///
/// `tag3 = None` means the pair ends the document, which satisfies "not a
/// noun". At most one row can match any triple; `None` when none does.
pub fn match_pattern(tag1: PosTag, tag2: PosTag, tag3: Option<PosTag>) -> Option<PatternId> {
    let third_not_noun = tag3.is_none_or(|t| !is_noun(t));
    let row = if tag1 == PosTag::Jj && is_noun(tag2) {
        1
    } else if is_adverb(tag1) && tag2 == PosTag::Jj && third_not_noun {
        2
    } else if tag1 == PosTag::Jj && tag2 == PosTag::Jj && third_not_noun {
        3
    } else if is_noun(tag1) && tag2 == PosTag::Jj && third_not_noun {
        4
    } else if is_adverb(tag1) && is_verb(tag2) {
        5
    } else {
        return None;
    };
    PatternId::new(row)
}

/// Slides over every adjacent token pair (with lookahead at the next tag) and
/// emits a lowercased [`CandidatePhrase`] for each pattern match. Overlapping
/// matches are all kept; output is ordered by start position.
pub fn extract_phrases(doc: &[TaggedToken]) -> Vec<CandidatePhrase> {
    let mut out = Vec::new();
    for i in 0..doc.len().saturating_sub(1) {
        let first = &doc[i];
        let second = &doc[i + 1];
        let third = doc.get(i + 2).map(|t| t.tag);
        if let Some(pattern) = match_pattern(first.tag, second.tag, third) {
            out.push(CandidatePhrase {
                word1: first.surface().to_lowercase(),
                word2: second.surface().to_lowercase(),
                tag1: first.tag,
                tag2: second.tag,
                pattern,
                start_position: first.position(),
            });
        }
    }
    out
}
