//! Positional inverted index and its versioned on-disk format.

use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{CorpusDocument, HitBackend, HitQuery, HitsError, QueryKind};

const MAGIC: [u8; 4] = *b"HIDX";
const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
struct DocEntry {
    doc_id: String,
    source: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Posting {
    /// Ordinal into the doc table, ascending within a word's posting list.
    doc: u32,
    /// Strictly increasing word positions within the document.
    positions: Vec<u32>,
}

/// Immutable positional index: word -> postings of (document, positions).
/// Built once, then read from any number of threads.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HitIndex {
    docs: Vec<DocEntry>,
    postings: BTreeMap<String, Vec<Posting>>,
}

/// Builds an index over the documents. Document order is preserved, so
/// rebuilding from the same input yields an identical index.
pub fn build_index(docs: &[CorpusDocument]) -> Result<HitIndex, HitsError> {
    let mut index = HitIndex::default();
    let mut seen: HashMap<&str, ()> = HashMap::with_capacity(docs.len());
    for doc in docs {
        if seen.insert(doc.doc_id.as_str(), ()).is_some() {
            return Err(HitsError::DuplicateDocId(doc.doc_id.clone()));
        }
        let ordinal = index.docs.len() as u32;
        index.docs.push(DocEntry {
            doc_id: doc.doc_id.clone(),
            source: doc.source.clone(),
        });
        for (pos, word) in doc.words.iter().enumerate() {
            let list = index.postings.entry(word.clone()).or_default();
            match list.last_mut() {
                Some(p) if p.doc == ordinal => p.positions.push(pos as u32),
                _ => list.push(Posting {
                    doc: ordinal,
                    positions: vec![pos as u32],
                }),
            }
        }
    }
    Ok(index)
}

impl HitIndex {
    pub fn doc_count(&self) -> usize {
        self.docs.len()
    }

    pub fn vocab_size(&self) -> usize {
        self.postings.len()
    }

    /// Document count matching the query, excluded sources filtered out.
    pub fn hits(&self, query: &HitQuery) -> u64 {
        match &query.kind {
            QueryKind::Term { word } => self
                .postings
                .get(word)
                .map(|list| list.iter().filter(|p| !self.excluded(p.doc, query)).count() as u64)
                .unwrap_or(0),
            QueryKind::Near {
                word1,
                word2,
                term,
                window,
            } => {
                let (Some(l1), Some(l2), Some(lt)) = (
                    self.postings.get(word1),
                    self.postings.get(word2),
                    self.postings.get(term),
                ) else {
                    return 0;
                };
                l1.iter()
                    .filter(|p1| {
                        if self.excluded(p1.doc, query) {
                            return false;
                        }
                        let Some(p2) = find_doc(l2, p1.doc) else {
                            return false;
                        };
                        let Some(pt) = find_doc(lt, p1.doc) else {
                            return false;
                        };
                        near_in_doc(&p1.positions, &p2.positions, &pt.positions, *window)
                    })
                    .count() as u64
            }
        }
    }

    fn excluded(&self, doc: u32, query: &HitQuery) -> bool {
        !query.exclusions.is_empty() && query.exclusions.contains(&self.docs[doc as usize].source)
    }

    /// Serializes as magic + version + doc table + postings.
    pub fn write_to(&self, w: &mut impl Write) -> Result<(), HitsError> {
        w.write_all(&MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        w.write_all(&(self.docs.len() as u64).to_le_bytes())?;
        for doc in &self.docs {
            write_str(w, &doc.doc_id)?;
            write_str(w, &doc.source)?;
        }
        w.write_all(&(self.postings.len() as u64).to_le_bytes())?;
        for (word, list) in &self.postings {
            write_str(w, word)?;
            w.write_all(&(list.len() as u64).to_le_bytes())?;
            for posting in list {
                w.write_all(&posting.doc.to_le_bytes())?;
                w.write_all(&(posting.positions.len() as u32).to_le_bytes())?;
                for &p in &posting.positions {
                    w.write_all(&p.to_le_bytes())?;
                }
            }
        }
        Ok(())
    }

    /// Loads an index, rejecting unknown magic or format versions.
    pub fn read_from(r: &mut impl Read) -> Result<HitIndex, HitsError> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if magic != MAGIC {
            return Err(HitsError::BadMagic);
        }
        let version = read_u32(r)?;
        if version != FORMAT_VERSION {
            return Err(HitsError::UnsupportedVersion(version));
        }
        let doc_count = read_u64(r)?;
        let mut docs = Vec::with_capacity(doc_count.min(1 << 20) as usize);
        for _ in 0..doc_count {
            let doc_id = read_str(r)?;
            let source = read_str(r)?;
            docs.push(DocEntry { doc_id, source });
        }
        let word_count = read_u64(r)?;
        let mut postings = BTreeMap::new();
        for _ in 0..word_count {
            let word = read_str(r)?;
            let list_len = read_u64(r)?;
            let mut list = Vec::with_capacity(list_len.min(1 << 20) as usize);
            for _ in 0..list_len {
                let doc = read_u32(r)?;
                if doc as u64 >= doc_count {
                    return Err(HitsError::CorruptIndex(format!(
                        "posting references document {doc} of {doc_count}"
                    )));
                }
                let npos = read_u32(r)?;
                let mut positions = Vec::with_capacity(npos.min(1 << 20) as usize);
                for _ in 0..npos {
                    positions.push(read_u32(r)?);
                }
                if positions.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(HitsError::CorruptIndex(
                        "positions not strictly increasing".into(),
                    ));
                }
                list.push(Posting { doc, positions });
            }
            postings.insert(word, list);
        }
        Ok(HitIndex { docs, postings })
    }

    pub fn save(&self, path: &Path) -> Result<(), HitsError> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<HitIndex, HitsError> {
        HitIndex::read_from(&mut BufReader::new(File::open(path)?))
    }
}

impl HitBackend for HitIndex {
    fn hits(&self, query: &HitQuery) -> Result<u64, HitsError> {
        Ok(HitIndex::hits(self, query))
    }
}

/// One adjacent occurrence (p, p+1) of the phrase close enough to any term
/// occurrence: a term position inside [p - window, p + 1 + window].
fn near_in_doc(pos1: &[u32], pos2: &[u32], pos_term: &[u32], window: u32) -> bool {
    pos1.iter().any(|&p| {
        if pos2.binary_search(&(p + 1)).is_err() {
            return false;
        }
        let lo = p.saturating_sub(window);
        let hi = p + 1 + window;
        let i = pos_term.partition_point(|&t| t < lo);
        pos_term.get(i).is_some_and(|&t| t <= hi)
    })
}

fn find_doc(list: &[Posting], doc: u32) -> Option<&Posting> {
    list.binary_search_by_key(&doc, |p| p.doc)
        .ok()
        .map(|i| &list[i])
}

fn write_str(w: &mut impl Write, s: &str) -> Result<(), HitsError> {
    w.write_all(&(s.len() as u32).to_le_bytes())?;
    w.write_all(s.as_bytes())?;
    Ok(())
}

fn read_u32(r: &mut impl Read) -> Result<u32, HitsError> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_u64(r: &mut impl Read) -> Result<u64, HitsError> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn read_str(r: &mut impl Read) -> Result<String, HitsError> {
    let len = read_u32(r)? as usize;
    let mut buf = vec![0u8; len];
    r.read_exact(&mut buf)?;
    String::from_utf8(buf).map_err(|e| HitsError::CorruptIndex(e.to_string()))
}
