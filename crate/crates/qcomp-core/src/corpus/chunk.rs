//! Fixed-size and recursive chunking baselines.

use serde::{Deserialize, Serialize};

use super::tokenize::tokenize_words;
use super::Document;

/// Baseline chunking strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChunkStrategy {
    FixedSize,
    Recursive,
}

/// Separator hierarchy for recursive chunking, coarse to fine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Separator {
    SectionBreak,
    ParagraphBreak,
    SentenceBreak,
    WordBreak,
}

/// Chunking parameters. The 350-word default matches the fixed-size
/// baseline configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChunkConfig {
    pub strategy: ChunkStrategy,
    pub size_words: usize,
    pub overlap_words: usize,
    pub recursive_separators: Vec<Separator>,
}

impl Default for ChunkConfig {
    fn default() -> Self {
        ChunkConfig {
            strategy: ChunkStrategy::FixedSize,
            size_words: 350,
            overlap_words: 0,
            recursive_separators: vec![
                Separator::SectionBreak,
                Separator::ParagraphBreak,
                Separator::SentenceBreak,
                Separator::WordBreak,
            ],
        }
    }
}

impl ChunkConfig {
    pub fn fixed(size_words: usize, overlap_words: usize) -> Self {
        ChunkConfig {
            strategy: ChunkStrategy::FixedSize,
            size_words,
            overlap_words,
            ..ChunkConfig::default()
        }
    }

    pub fn recursive(size_words: usize) -> Self {
        ChunkConfig {
            strategy: ChunkStrategy::Recursive,
            size_words,
            ..ChunkConfig::default()
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        if self.size_words == 0 {
            return Err(crate::Error::Input("chunk size_words must be positive".into()));
        }
        if self.overlap_words >= self.size_words {
            return Err(crate::Error::Input(format!(
                "chunk overlap_words ({}) must be smaller than size_words ({})",
                self.overlap_words, self.size_words
            )));
        }
        Ok(())
    }
}

/// An ordered text segment of one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chunk {
    pub doc_id: String,
    pub index: usize,
    pub text: String,
    /// Half-open (start, end) into the document's word sequence.
    pub word_span: (usize, usize),
}

/// Dispatches to the strategy named in the config.
pub fn chunk_document(doc: &Document, cfg: &ChunkConfig) -> Vec<Chunk> {
    match cfg.strategy {
        ChunkStrategy::FixedSize => chunk_fixed(doc, cfg),
        ChunkStrategy::Recursive => chunk_recursive(doc, cfg),
    }
}

/// Fixed-size chunking: windows of `size_words` words stepping by
/// `size_words - overlap_words`; the last chunk may be shorter.
pub fn chunk_fixed(doc: &Document, cfg: &ChunkConfig) -> Vec<Chunk> {
    debug_assert_eq!(cfg.strategy, ChunkStrategy::FixedSize);
    let words = tokenize_words(&doc.full_text);
    let step = cfg.size_words - cfg.overlap_words;
    let mut chunks = Vec::new();
    let mut start = 0;
    while start < words.len() {
        let end = (start + cfg.size_words).min(words.len());
        chunks.push(Chunk {
            doc_id: doc.id.clone(),
            index: chunks.len(),
            text: words[start..end].join(" "),
            word_span: (start, end),
        });
        if end == words.len() {
            break;
        }
        start += step;
    }
    chunks
}

/// Number of fixed-size chunks at overlap 0: ceil(word_count / size_words).
pub fn fixed_chunk_count(word_count: usize, size_words: usize) -> usize {
    word_count.div_ceil(size_words)
}

/// Recursive chunking: pieces that fit within `size_words` are emitted
/// whole; oversized pieces are split at the coarsest remaining separator
/// and re-split finer as needed. WordBreak is the terminal fallback and
/// always succeeds.
pub fn chunk_recursive(doc: &Document, cfg: &ChunkConfig) -> Vec<Chunk> {
    debug_assert_eq!(cfg.strategy, ChunkStrategy::Recursive);
    let mut separators = cfg.recursive_separators.clone();
    if !separators.contains(&Separator::WordBreak) {
        separators.push(Separator::WordBreak);
    }

    let mut pieces: Vec<(String, usize)> = Vec::new();
    split_recursive(&doc.full_text, &separators, cfg.size_words, &mut pieces);

    let mut chunks = Vec::new();
    let mut offset = 0;
    for (text, words) in pieces {
        chunks.push(Chunk {
            doc_id: doc.id.clone(),
            index: chunks.len(),
            text,
            word_span: (offset, offset + words),
        });
        offset += words;
    }
    chunks
}

fn split_recursive(piece: &str, separators: &[Separator], size: usize, out: &mut Vec<(String, usize)>) {
    let words = tokenize_words(piece).len();
    if words == 0 {
        return;
    }
    if words <= size {
        out.push((piece.trim().to_string(), words));
        return;
    }
    let (sep, rest) = match separators.split_first() {
        Some((s, r)) => (*s, r),
        // Exhausted without WordBreak: emit oversized rather than lose text.
        None => {
            out.push((piece.trim().to_string(), words));
            return;
        }
    };
    if sep == Separator::WordBreak {
        let tokens = tokenize_words(piece);
        for window in tokens.chunks(size) {
            out.push((window.join(" "), window.len()));
        }
        return;
    }
    let parts = split_at(piece, sep);
    if parts.len() <= 1 {
        split_recursive(piece, rest, size, out);
    } else {
        for part in parts {
            split_recursive(part, rest, size, out);
        }
    }
}

fn split_at(piece: &str, sep: Separator) -> Vec<&str> {
    match sep {
        Separator::SectionBreak => split_sections(piece),
        Separator::ParagraphBreak => split_paragraphs(piece),
        Separator::SentenceBreak => split_sentences(piece),
        Separator::WordBreak => vec![piece],
    }
}

/// Splits before each detected heading line.
fn split_sections(piece: &str) -> Vec<&str> {
    let mut boundaries = Vec::new();
    let mut offset = 0;
    for line in piece.split_inclusive('\n') {
        let content = line.strip_suffix('\n').unwrap_or(line);
        if offset > 0 && super::heading_phrase(content).is_some() {
            boundaries.push(offset);
        }
        offset += line.len();
    }
    slice_at(piece, &boundaries)
}

/// Splits at runs of blank lines; the blank lines themselves are dropped.
fn split_paragraphs(piece: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut start: Option<usize> = None;
    let mut offset = 0;
    for line in piece.split_inclusive('\n') {
        let blank = line.trim().is_empty();
        if blank {
            if let Some(s) = start.take() {
                parts.push(&piece[s..offset]);
            }
        } else if start.is_none() {
            start = Some(offset);
        }
        offset += line.len();
    }
    if let Some(s) = start {
        parts.push(&piece[s..offset]);
    }
    parts
}

/// Splits after '.', '!', or '?' followed by whitespace.
fn split_sentences(piece: &str) -> Vec<&str> {
    let bytes = piece.as_bytes();
    let mut boundaries = Vec::new();
    let mut i = 0;
    while i + 1 < bytes.len() {
        let c = bytes[i];
        if (c == b'.' || c == b'!' || c == b'?') && bytes[i + 1].is_ascii_whitespace() {
            boundaries.push(i + 1);
        }
        i += 1;
    }
    slice_at(piece, &boundaries)
}

fn slice_at<'a>(piece: &'a str, boundaries: &[usize]) -> Vec<&'a str> {
    if boundaries.is_empty() {
        return vec![piece];
    }
    let mut parts = Vec::with_capacity(boundaries.len() + 1);
    let mut prev = 0;
    for &b in boundaries {
        parts.push(&piece[prev..b]);
        prev = b;
    }
    parts.push(&piece[prev..]);
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::ingest_document;
    use std::collections::BTreeMap;

    fn doc_of(text: &str) -> Document {
        let mut meta = BTreeMap::new();
        meta.insert("id".to_string(), "d".to_string());
        ingest_document(text, &meta).unwrap()
    }

    fn words(n: usize) -> String {
        (0..n).map(|i| format!("w{i}")).collect::<Vec<_>>().join(" ")
    }

    #[test]
    fn fixed_tiles_exactly() {
        let doc = doc_of(&words(700));
        let chunks = chunk_fixed(&doc, &ChunkConfig::fixed(350, 0));
        assert_eq!(chunks.len(), 2);
        assert_eq!(chunks[0].word_span, (0, 350));
        assert_eq!(chunks[1].word_span, (350, 700));
        assert_eq!(tokenize_words(&chunks[0].text).len(), 350);
    }

    #[test]
    fn fixed_short_document_is_one_chunk() {
        let doc = doc_of(&words(10));
        let chunks = chunk_fixed(&doc, &ChunkConfig::fixed(350, 0));
        assert_eq!(chunks.len(), 1);
        assert_eq!(chunks[0].word_span, (0, 10));
    }

    #[test]
    fn fixed_overlap_steps_by_size_minus_overlap() {
        let doc = doc_of(&words(400));
        let chunks = chunk_fixed(&doc, &ChunkConfig::fixed(350, 50));
        assert_eq!(chunks.len(), 2);
        assert_eq!(chunks[0].word_span, (0, 350));
        assert_eq!(chunks[1].word_span, (300, 400));
    }

    #[test]
    fn recursive_keeps_small_documents_whole() {
        let doc = doc_of(&format!("{}\n\n{}", words(100), words(100)));
        let chunks = chunk_recursive(&doc, &ChunkConfig::recursive(350));
        assert_eq!(chunks.len(), 1);
        assert_eq!(chunks[0].word_span, (0, 200));
    }

    #[test]
    fn recursive_splits_at_paragraph_break() {
        let doc = doc_of(&format!("{}\n\n{}", words(300), words(300)));
        let chunks = chunk_recursive(&doc, &ChunkConfig::recursive(350));
        assert_eq!(chunks.len(), 2);
        assert_eq!(chunks[0].word_span, (0, 300));
        assert_eq!(chunks[1].word_span, (300, 600));
    }

    #[test]
    fn recursive_falls_back_to_word_break() {
        // One 500-word "sentence": no section, paragraph, or sentence breaks.
        let doc = doc_of(&words(500));
        let chunks = chunk_recursive(&doc, &ChunkConfig::recursive(350));
        assert_eq!(chunks.len(), 2);
        assert_eq!(chunks[0].word_span, (0, 350));
        assert_eq!(chunks[1].word_span, (350, 500));
    }

    #[test]
    fn recursive_splits_sentences_before_words() {
        let sentence = |n: usize, tag: &str| {
            (0..n).map(|i| format!("{tag}{i}")).collect::<Vec<_>>().join(" ") + "."
        };
        let text = format!("{} {}", sentence(200, "a"), sentence(200, "b"));
        let doc = doc_of(&text);
        let chunks = chunk_recursive(&doc, &ChunkConfig::recursive(350));
        assert_eq!(chunks.len(), 2);
        assert_eq!(chunks[0].word_span, (0, 200));
        assert!(chunks[0].text.starts_with("a0"));
        assert!(chunks[1].text.starts_with("b0"));
    }

    #[test]
    fn config_validation() {
        assert!(ChunkConfig::fixed(350, 0).validate().is_ok());
        assert!(ChunkConfig::fixed(350, 350).validate().is_err());
        assert!(ChunkConfig::fixed(0, 0).validate().is_err());
    }

    #[test]
    fn dispatch_follows_strategy() {
        let doc = doc_of(&words(400));
        assert_eq!(chunk_document(&doc, &ChunkConfig::fixed(350, 0)).len(), 2);
        assert_eq!(
            chunk_document(&doc, &ChunkConfig::recursive(350))[0].word_span.0,
            0
        );
    }
}
