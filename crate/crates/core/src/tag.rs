//! Tokenization and part-of-speech tagging.
//!
//! Raw review text becomes a sequence of position-indexed, Penn-tagged tokens
//! through one of two paths: the built-in baseline tagger (lexicon lookup plus
//! suffix and capitalization heuristics) or ingestion of externally pre-tagged
//! text in `surface/TAG` form.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Sentence punctuation split off into standalone tokens by [`tokenize`].
const SPLIT_PUNCT: [char; 9] = ['.', ',', '!', '?', ';', ':', '"', '(', ')'];

/// Default lexicon shipped with the crate, `surface<TAB>TAG` per line.
const DEFAULT_LEXICON: &str = include_str!("../data/default_lexicon.tsv");

#[derive(Debug, Error)]
pub enum TagError {
    #[error("malformed pre-tagged item {item:?}: {reason}")]
    MalformedPretagged { item: String, reason: String },
    #[error("malformed lexicon line {line}: {reason}")]
    MalformedLexicon { line: usize, reason: String },
    #[error("lexicon i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// Penn Treebank tag inventory used by the extraction patterns. Anything
/// outside this set is folded into `Other`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PosTag {
    #[serde(rename = "JJ")]
    Jj,
    #[serde(rename = "JJR")]
    Jjr,
    #[serde(rename = "JJS")]
    Jjs,
    #[serde(rename = "NN")]
    Nn,
    #[serde(rename = "NNS")]
    Nns,
    #[serde(rename = "NNP")]
    Nnp,
    #[serde(rename = "NNPS")]
    Nnps,
    #[serde(rename = "RB")]
    Rb,
    #[serde(rename = "RBR")]
    Rbr,
    #[serde(rename = "RBS")]
    Rbs,
    #[serde(rename = "VB")]
    Vb,
    #[serde(rename = "VBD")]
    Vbd,
    #[serde(rename = "VBN")]
    Vbn,
    #[serde(rename = "VBG")]
    Vbg,
    #[serde(rename = "VBZ")]
    Vbz,
    #[serde(rename = "VBP")]
    Vbp,
    #[serde(rename = "OTHER")]
    Other,
}

impl PosTag {
    /// All tags, in a fixed order. Handy for exhaustive enumeration in tests.
    pub const ALL: [PosTag; 17] = [
        PosTag::Jj,
        PosTag::Jjr,
        PosTag::Jjs,
        PosTag::Nn,
        PosTag::Nns,
        PosTag::Nnp,
        PosTag::Nnps,
        PosTag::Rb,
        PosTag::Rbr,
        PosTag::Rbs,
        PosTag::Vb,
        PosTag::Vbd,
        PosTag::Vbn,
        PosTag::Vbg,
        PosTag::Vbz,
        PosTag::Vbp,
        PosTag::Other,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PosTag::Jj => "JJ",
            PosTag::Jjr => "JJR",
            PosTag::Jjs => "JJS",
            PosTag::Nn => "NN",
            PosTag::Nns => "NNS",
            PosTag::Nnp => "NNP",
            PosTag::Nnps => "NNPS",
            PosTag::Rb => "RB",
            PosTag::Rbr => "RBR",
            PosTag::Rbs => "RBS",
            PosTag::Vb => "VB",
            PosTag::Vbd => "VBD",
            PosTag::Vbn => "VBN",
            PosTag::Vbg => "VBG",
            PosTag::Vbz => "VBZ",
            PosTag::Vbp => "VBP",
            PosTag::Other => "OTHER",
        }
    }

    /// Parses a tag string; anything not in the inventory maps to `Other`.
    pub fn parse_lossy(s: &str) -> PosTag {
        match s {
            "JJ" => PosTag::Jj,
            "JJR" => PosTag::Jjr,
            "JJS" => PosTag::Jjs,
            "NN" => PosTag::Nn,
            "NNS" => PosTag::Nns,
            "NNP" => PosTag::Nnp,
            "NNPS" => PosTag::Nnps,
            "RB" => PosTag::Rb,
            "RBR" => PosTag::Rbr,
            "RBS" => PosTag::Rbs,
            "VB" => PosTag::Vb,
            "VBD" => PosTag::Vbd,
            "VBN" => PosTag::Vbn,
            "VBG" => PosTag::Vbg,
            "VBZ" => PosTag::Vbz,
            "VBP" => PosTag::Vbp,
            _ => PosTag::Other,
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A surface word with its zero-based position in the document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub position: usize,
}

impl Token {
    pub fn new(surface: impl Into<String>, position: usize) -> Token {
        Token {
            surface: surface.into(),
            position,
        }
    }
}

/// A token paired with its part-of-speech tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedToken {
    pub token: Token,
    pub tag: PosTag,
}

impl TaggedToken {
    pub fn new(surface: impl Into<String>, tag: PosTag, position: usize) -> TaggedToken {
        TaggedToken {
            token: Token::new(surface, position),
            tag,
        }
    }

    pub fn surface(&self) -> &str {
        &self.token.surface
    }

    pub fn position(&self) -> usize {
        self.token.position
    }
}

/// Splits text on whitespace, detaching leading/trailing sentence punctuation
/// (`. , ! ? ; : " ( )`) into standalone tokens. Positions are assigned
/// 0..n-1 in reading order. Total: never fails, empty text yields no tokens.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    for piece in text.split_whitespace() {
        let mut chars: &str = piece;
        // Leading punctuation, one token per character.
        while let Some(c) = chars.chars().next() {
            if SPLIT_PUNCT.contains(&c) {
                out.push(c.to_string());
                chars = &chars[c.len_utf8()..];
            } else {
                break;
            }
        }
        // Trailing punctuation, kept in reading order after the core word.
        let mut tail = Vec::new();
        while let Some(c) = chars.chars().next_back() {
            if SPLIT_PUNCT.contains(&c) {
                tail.push(c.to_string());
                chars = &chars[..chars.len() - c.len_utf8()];
            } else {
                break;
            }
        }
        if !chars.is_empty() {
            out.push(chars.to_string());
        }
        out.extend(tail.into_iter().rev());
    }
    out.into_iter()
        .enumerate()
        .map(|(i, s)| Token::new(s, i))
        .collect()
}

/// Baseline part-of-speech tagger: exact lexicon lookup first, then suffix
/// heuristics, then a capitalization rule, then the `NN` default.
#[derive(Debug, Clone, Default)]
pub struct Tagger {
    lexicon: HashMap<String, PosTag>,
}

impl Tagger {
    /// Tagger with an empty lexicon; only the heuristic rules apply.
    pub fn empty() -> Tagger {
        Tagger::default()
    }

    /// Tagger seeded with the built-in default lexicon.
    pub fn with_default_lexicon() -> Tagger {
        // The shipped file is well-formed; a parse failure is a build defect.
        Tagger::from_lexicon_str(DEFAULT_LEXICON).expect("built-in lexicon must parse")
    }

    /// Parses `surface<TAB>TAG` lines into a tagger lexicon. Surfaces must be
    /// lowercase; later entries for the same surface override earlier ones.
    pub fn from_lexicon_str(data: &str) -> Result<Tagger, TagError> {
        let mut lexicon = HashMap::new();
        for (idx, line) in data.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (surface, tag) =
                line.split_once('\t')
                    .ok_or_else(|| TagError::MalformedLexicon {
                        line: idx + 1,
                        reason: "expected surface<TAB>TAG".into(),
                    })?;
            if surface.is_empty() || surface.chars().any(char::is_whitespace) {
                return Err(TagError::MalformedLexicon {
                    line: idx + 1,
                    reason: "surface must be a non-empty single word".into(),
                });
            }
            lexicon.insert(surface.to_string(), PosTag::parse_lossy(tag.trim()));
        }
        Ok(Tagger { lexicon })
    }

    pub fn from_lexicon_file(path: &Path) -> Result<Tagger, TagError> {
        Tagger::from_lexicon_str(&fs::read_to_string(path)?)
    }

    pub fn lexicon_len(&self) -> usize {
        self.lexicon.len()
    }

    /// Tags a token sequence. Per token, in priority order: (1) lowercase
    /// lexicon lookup, (2) suffix heuristics, (3) capitalized and not at a
    /// sentence start means proper noun, (4) default `NN` for word-like
    /// tokens. Detached punctuation and other tokens without a letter tag
    /// as `OTHER`, so they never satisfy a noun constraint. Output order
    /// and positions equal the input's.
    pub fn tag(&self, tokens: &[Token]) -> Vec<TaggedToken> {
        tokens
            .iter()
            .enumerate()
            .map(|(i, tok)| {
                let lower = tok.surface.to_lowercase();
                let tag = self
                    .lexicon
                    .get(&lower)
                    .copied()
                    .or_else(|| self.suffix_tag(&lower))
                    .unwrap_or_else(|| {
                        if is_capitalized(&tok.surface) && !sentence_start(tokens, i) {
                            PosTag::Nnp
                        } else if tok.surface.chars().any(char::is_alphabetic) {
                            PosTag::Nn
                        } else {
                            PosTag::Other
                        }
                    });
                TaggedToken {
                    token: tok.clone(),
                    tag,
                }
            })
            .collect()
    }

    /// Tokenizes and tags in one step.
    pub fn tag_text(&self, text: &str) -> Vec<TaggedToken> {
        self.tag(&tokenize(text))
    }

    /// Suffix heuristics over the lowercased surface. Suffixes only apply
    /// when the remaining stem has at least two characters, so short words
    /// like "red" or "fly" fall through to the later rules.
    fn suffix_tag(&self, lower: &str) -> Option<PosTag> {
        let stem = |suffix: &str| -> Option<&str> {
            let s = lower.strip_suffix(suffix)?;
            (s.chars().count() >= 2).then_some(s)
        };
        if stem("ly").is_some() {
            return Some(PosTag::Rb);
        }
        if stem("ing").is_some() {
            return Some(PosTag::Vbg);
        }
        if stem("ed").is_some() {
            return Some(PosTag::Vbn);
        }
        if stem("est").is_some() {
            return Some(PosTag::Jjs);
        }
        if let Some(s) = stem("er") {
            // Comparative only when the stem is a known adjective ("cheaper"
            // via "cheap", "nicer" via "nice").
            let adjective = |w: &str| self.lexicon.get(w) == Some(&PosTag::Jj);
            if adjective(s) || adjective(&format!("{s}e")) {
                return Some(PosTag::Jjr);
            }
        }
        // Plural only when the stem is a known noun.
        let noun = |w: &str| self.lexicon.get(w) == Some(&PosTag::Nn);
        if let Some(s) = stem("es") {
            if noun(s) {
                return Some(PosTag::Nns);
            }
        }
        if let Some(s) = stem("s") {
            if noun(s) {
                return Some(PosTag::Nns);
            }
        }
        None
    }
}

fn is_capitalized(surface: &str) -> bool {
    surface.chars().next().is_some_and(|c| c.is_uppercase())
}

/// Sentence start: document position 0, or the preceding token in the slice
/// is sentence-final punctuation.
fn sentence_start(tokens: &[Token], i: usize) -> bool {
    if tokens[i].position == 0 {
        return true;
    }
    i.checked_sub(1)
        .map(|p| matches!(tokens[p].surface.as_str(), "." | "!" | "?"))
        .unwrap_or(false)
}

/// Parses one whitespace-separated `surface/TAG` document line. The tag is
/// split on the LAST `/` of each item, so surfaces may themselves contain
/// slashes. Unknown tag strings map to [`PosTag::Other`].
pub fn parse_pretagged(line: &str) -> Result<Vec<TaggedToken>, TagError> {
    line.split_whitespace()
        .enumerate()
        .map(|(position, item)| {
            let (surface, tag) =
                item.rsplit_once('/')
                    .ok_or_else(|| TagError::MalformedPretagged {
                        item: item.to_string(),
                        reason: "missing '/'".into(),
                    })?;
            if surface.is_empty() || tag.is_empty() {
                return Err(TagError::MalformedPretagged {
                    item: item.to_string(),
                    reason: "empty surface or tag".into(),
                });
            }
            Ok(TaggedToken::new(
                surface,
                PosTag::parse_lossy(tag),
                position,
            ))
        })
        .collect()
}

/// Renders a tagged sequence back to `surface/TAG` form; inverse of
/// [`parse_pretagged`] for whitespace-free surfaces.
pub fn render_pretagged(tokens: &[TaggedToken]) -> String {
    tokens
        .iter()
        .map(|t| format!("{}/{}", t.surface(), t.tag))
        .collect::<Vec<_>>()
        .join(" ")
}
