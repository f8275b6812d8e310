//! Lexical matching: BM25 scoring and POS-based keyword extraction.

mod bm25;
mod pos;

pub use bm25::{bm25_build, bm25_score, Bm25Index, Bm25Params};
pub use pos::{extract_keywords_by_pos, LexiconTagger, PosTag, PosTagger};
