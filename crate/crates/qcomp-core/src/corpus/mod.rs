//! Document ingestion, section extraction, and baseline chunking.
//!
//! Ingestion consumes pre-extracted plain text (JSON Lines for batches);
//! PDF/HTML conversion lives outside this crate. All operations here are
//! pure: identical input bytes yield identical outputs.

mod chunk;
mod tokenize;

pub use chunk::{chunk_document, chunk_fixed, chunk_recursive, Chunk, ChunkConfig, ChunkStrategy, Separator};
pub use tokenize::{tokenize_words, word_count};

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Section categories the compression pipeline targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionKind {
    Introduction,
    Methodology,
    Discussion,
    Conclusion,
    Abstract,
    Other,
}

impl SectionKind {
    /// Maps a heading phrase to a section kind, case-insensitively.
    ///
    /// The first word decides: "method"/"approach" prefixes map to
    /// Methodology; "introduction", "discussion", "conclusion", and
    /// "abstract" (singular or plural) map to their kinds; anything else
    /// is Other.
    pub fn from_heading(heading: &str) -> SectionKind {
        let first = match heading.split_whitespace().next() {
            Some(w) => w.to_lowercase(),
            None => return SectionKind::Other,
        };
        if first.starts_with("method") || first.starts_with("approach") {
            return SectionKind::Methodology;
        }
        match first.strip_suffix('s').unwrap_or(&first) {
            "introduction" => SectionKind::Introduction,
            "discussion" => SectionKind::Discussion,
            "conclusion" => SectionKind::Conclusion,
            "abstract" => SectionKind::Abstract,
            _ => SectionKind::Other,
        }
    }

    /// Kinds the question-generation stage prompts on.
    pub fn is_compression_target(self) -> bool {
        matches!(
            self,
            SectionKind::Introduction
                | SectionKind::Methodology
                | SectionKind::Discussion
                | SectionKind::Conclusion
        )
    }
}

/// One extracted section of a document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Section {
    pub kind: SectionKind,
    pub heading: String,
    pub text: String,
    /// Position in document order; strictly increasing within a document.
    pub order: usize,
}

/// An ingested document; the unit of single-hop retrieval.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub title: String,
    pub authors: Vec<String>,
    pub date: String,
    pub platform: String,
    pub doi: Option<String>,
    pub sections: Vec<Section>,
    pub full_text: String,
}

impl Document {
    /// Sections the compression pipeline prompts on; falls back to every
    /// section when none of the target kinds were detected.
    pub fn target_sections(&self) -> Vec<&Section> {
        let targets: Vec<&Section> = self
            .sections
            .iter()
            .filter(|s| s.kind.is_compression_target())
            .collect();
        if targets.is_empty() {
            self.sections.iter().collect()
        } else {
            targets
        }
    }

    /// Abstract text if detected, else the first 300 words of the document.
    pub fn abstract_text(&self) -> String {
        if let Some(s) = self.sections.iter().find(|s| s.kind == SectionKind::Abstract) {
            return s.text.clone();
        }
        let words = tokenize_words(&self.full_text);
        words.iter().take(300).copied().collect::<Vec<_>>().join(" ")
    }
}

/// Builds a Document from raw text and a flat metadata map.
///
/// `metadata` must contain at least "id"; recognized keys are id, title,
/// authors (';'-separated), date, platform, and doi. Line endings are
/// normalized to LF and sections populated via [`extract_sections`].
pub fn ingest_document(raw: &str, metadata: &BTreeMap<String, String>) -> Result<Document> {
    if raw.is_empty() {
        return Err(Error::Input("document text is empty".into()));
    }
    let id = metadata
        .get("id")
        .filter(|v| !v.is_empty())
        .ok_or_else(|| Error::Input("metadata is missing required key \"id\"".into()))?;

    let full_text = normalize_line_endings(raw);
    let sections = extract_sections(&full_text);
    let authors = metadata
        .get("authors")
        .map(|v| {
            v.split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect()
        })
        .unwrap_or_default();

    Ok(Document {
        id: id.clone(),
        title: metadata.get("title").cloned().unwrap_or_default(),
        authors,
        date: metadata.get("date").cloned().unwrap_or_default(),
        platform: metadata.get("platform").cloned().unwrap_or_default(),
        doi: metadata.get("doi").filter(|v| !v.is_empty()).cloned(),
        sections,
        full_text,
    })
}

fn normalize_line_endings(raw: &str) -> String {
    raw.replace("\r\n", "\n").replace('\r', "\n")
}

/// Splits full text into sections at detected heading lines.
///
/// A line is a heading when it consists of optional numbering (digits and
/// dots) followed by a title-cased phrase of at most eight words. Section
/// text runs from the heading line to the next heading. Text before the
/// first heading, or text with no recognized heading at all, becomes an
/// Other section.
pub fn extract_sections(full_text: &str) -> Vec<Section> {
    let mut headings: Vec<(usize, String)> = Vec::new();
    let mut offset = 0;
    for line in full_text.split_inclusive('\n') {
        let content = line.strip_suffix('\n').unwrap_or(line);
        if let Some(phrase) = heading_phrase(content) {
            headings.push((offset, phrase.to_string()));
        }
        offset += line.len();
    }

    let mut sections = Vec::new();
    let push = |kind: SectionKind, heading: String, text: &str, sections: &mut Vec<Section>| {
        let text = text.trim();
        if text.is_empty() {
            return;
        }
        let order = sections.len();
        sections.push(Section {
            kind,
            heading,
            text: text.to_string(),
            order,
        });
    };

    if headings.is_empty() {
        push(SectionKind::Other, String::new(), full_text, &mut sections);
        return sections;
    }

    let first_start = headings[0].0;
    if first_start > 0 {
        push(SectionKind::Other, String::new(), &full_text[..first_start], &mut sections);
    }
    for (i, (start, phrase)) in headings.iter().enumerate() {
        let end = headings.get(i + 1).map_or(full_text.len(), |(s, _)| *s);
        push(
            SectionKind::from_heading(phrase),
            phrase.clone(),
            &full_text[*start..end],
            &mut sections,
        );
    }
    sections
}

/// Returns the heading phrase (numbering stripped) when `line` looks like
/// a section heading.
fn heading_phrase(line: &str) -> Option<&str> {
    let trimmed = line.trim();
    if trimmed.is_empty() {
        return None;
    }
    let trimmed = trimmed.strip_suffix(':').unwrap_or(trimmed).trim_end();

    // Optional leading numbering token: "3", "3.1", "3.1."
    let mut rest = trimmed;
    if let Some(first) = rest.split_whitespace().next() {
        let numeric = first.chars().all(|c| c.is_ascii_digit() || c == '.')
            && first.chars().any(|c| c.is_ascii_digit());
        if numeric {
            rest = rest[first.len()..].trim_start();
        }
    }
    if rest.is_empty() {
        return None;
    }

    let words: Vec<&str> = rest.split_whitespace().collect();
    if words.len() > 8 {
        return None;
    }
    let title_cased = words.iter().all(|w| {
        let mut chars = w.chars();
        let starts_upper = chars.next().is_some_and(|c| c.is_uppercase());
        starts_upper && w.chars().all(|c| c.is_alphanumeric() || c == '-' || c == '&')
    });
    if title_cased {
        Some(rest)
    } else {
        None
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CorpusRecord {
    id: String,
    #[serde(default)]
    title: String,
    #[serde(default)]
    authors: Vec<String>,
    #[serde(default)]
    date: String,
    #[serde(default)]
    platform: String,
    #[serde(default)]
    doi: Option<String>,
    text: String,
}

/// Reads a corpus from JSON Lines: one object per line with fields
/// {"id","title","authors","date","platform","doi","text"}.
///
/// Errors carry the 1-based line number of the offending record.
pub fn read_corpus_jsonl<R: BufRead>(reader: R) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| Error::storage(format!("reading corpus line {lineno}"), e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: CorpusRecord = serde_json::from_str(&line)
            .map_err(|e| Error::Input(format!("line {lineno}: malformed JSON record: {e}")))?;
        if record.id.is_empty() {
            return Err(Error::Input(format!("line {lineno}: empty document id")));
        }
        if record.text.is_empty() {
            return Err(Error::Input(format!("line {lineno}: empty document text")));
        }
        if !seen.insert(record.id.clone()) {
            return Err(Error::Input(format!(
                "line {lineno}: duplicate document id '{}'",
                record.id
            )));
        }
        let full_text = normalize_line_endings(&record.text);
        let sections = extract_sections(&full_text);
        docs.push(Document {
            id: record.id,
            title: record.title,
            authors: record.authors,
            date: record.date,
            platform: record.platform,
            doi: record.doi,
            sections,
            full_text,
        });
    }
    if docs.is_empty() {
        return Err(Error::Input("empty corpus".into()));
    }
    Ok(docs)
}

/// Writes documents back out in the corpus JSON Lines schema.
pub fn write_corpus_jsonl<W: Write>(docs: &[Document], mut writer: W) -> Result<()> {
    for doc in docs {
        let record = CorpusRecord {
            id: doc.id.clone(),
            title: doc.title.clone(),
            authors: doc.authors.clone(),
            date: doc.date.clone(),
            platform: doc.platform.clone(),
            doi: doc.doi.clone(),
            text: doc.full_text.clone(),
        };
        let line = serde_json::to_string(&record)
            .map_err(|e| Error::Input(format!("serializing document '{}': {e}", doc.id)))?;
        writeln!(writer, "{line}").map_err(|e| Error::storage("writing corpus", e))?;
    }
    Ok(())
}

/// Writes chunks as JSON Lines {"doc_id","index","text"} for inspection.
pub fn write_chunk_dump<W: Write>(chunks: &[Chunk], mut writer: W) -> Result<()> {
    #[derive(Serialize)]
    struct Row<'a> {
        doc_id: &'a str,
        index: usize,
        text: &'a str,
    }
    for chunk in chunks {
        let row = Row {
            doc_id: &chunk.doc_id,
            index: chunk.index,
            text: &chunk.text,
        };
        let line = serde_json::to_string(&row)
            .map_err(|e| Error::Input(format!("serializing chunk: {e}")))?;
        writeln!(writer, "{line}").map_err(|e| Error::storage("writing chunk dump", e))?;
    }
    Ok(())
}
