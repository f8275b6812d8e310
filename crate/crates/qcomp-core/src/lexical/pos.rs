//! Part-of-speech tagging and keyword extraction.
//!
//! The reranker only ever needs to *exclude* adpositions and coordinating
//! conjunctions, which are closed classes, so the bundled tagger is a
//! fixed-lexicon lookup: known ADP and CCONJ words get their tags and
//! everything else tags NOUN. A full tagger can be plugged in behind
//! [`PosTagger`].

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::tokenize_words;
use crate::error::{Error, Result};

/// Coarse Universal POS tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Adp,
    Cconj,
    Noun,
    Verb,
    Adj,
    Adv,
    Pron,
    Det,
    Num,
    Other,
}

/// Assigns exactly one coarse POS tag to every token.
pub trait PosTagger: Send + Sync {
    fn tag(&self, token: &str) -> PosTag;
}

/// Closed-class lexicon tagger: fixed ADP and CCONJ word lists, NOUN for
/// everything else.
#[derive(Debug, Clone)]
pub struct LexiconTagger {
    adp: HashSet<String>,
    cconj: HashSet<String>,
}

const ADP_LEXICON: &str = include_str!("../../assets/adp.txt");
const CCONJ_LEXICON: &str = include_str!("../../assets/cconj.txt");

impl LexiconTagger {
    /// Tagger using the bundled English lexicons.
    pub fn bundled() -> Self {
        Self::from_word_lists(ADP_LEXICON.lines(), CCONJ_LEXICON.lines())
    }

    pub fn from_word_lists<'a>(
        adp: impl IntoIterator<Item = &'a str>,
        cconj: impl IntoIterator<Item = &'a str>,
    ) -> Self {
        let clean = |it: &mut dyn Iterator<Item = &'a str>| -> HashSet<String> {
            it.map(str::trim)
                .filter(|w| !w.is_empty())
                .map(str::to_lowercase)
                .collect()
        };
        LexiconTagger {
            adp: clean(&mut adp.into_iter()),
            cconj: clean(&mut cconj.into_iter()),
        }
    }

    /// Loads lexicons from files of one lowercase word per line. A `None`
    /// path keeps the bundled list for that class.
    pub fn from_files(adp_path: Option<&Path>, cconj_path: Option<&Path>) -> Result<Self> {
        let read = |path: &Path| -> Result<String> {
            std::fs::read_to_string(path)
                .map_err(|e| Error::storage(format!("reading lexicon {}", path.display()), e))
        };
        let adp = match adp_path {
            Some(p) => read(p)?,
            None => ADP_LEXICON.to_string(),
        };
        let cconj = match cconj_path {
            Some(p) => read(p)?,
            None => CCONJ_LEXICON.to_string(),
        };
        Ok(Self::from_word_lists(adp.lines(), cconj.lines()))
    }

    pub fn is_adp(&self, word: &str) -> bool {
        self.adp.contains(&word.to_lowercase())
    }

    pub fn is_cconj(&self, word: &str) -> bool {
        self.cconj.contains(&word.to_lowercase())
    }
}

impl PosTagger for LexiconTagger {
    fn tag(&self, token: &str) -> PosTag {
        let folded = token.to_lowercase();
        if self.adp.contains(&folded) {
            PosTag::Adp
        } else if self.cconj.contains(&folded) {
            PosTag::Cconj
        } else {
            PosTag::Noun
        }
    }
}

/// Extracts query keywords: tokenizes (commas and hyphens already act as
/// separators), removes tokens tagged ADP or CCONJ, lowercases, and
/// deduplicates keeping first occurrence in query order.
pub fn extract_keywords_by_pos(query: &str, tagger: &dyn PosTagger) -> Vec<String> {
    let mut seen = HashSet::new();
    let mut keywords = Vec::new();
    for token in tokenize_words(query) {
        if matches!(tagger.tag(token), PosTag::Adp | PosTag::Cconj) {
            continue;
        }
        let folded = token.to_lowercase();
        if seen.insert(folded.clone()) {
            keywords.push(folded);
        }
    }
    keywords
}
