//! Shared word tokenization.
//!
//! One word definition serves chunk sizing, BM25 statistics, and keyword
//! frequency counting, so a "350-word chunk" means the same thing everywhere.

/// Splits text into word tokens.
///
/// Whitespace, hyphens, and commas separate tokens; leading and trailing
/// punctuation is stripped from each token; tokens that become empty are
/// dropped. Original casing is preserved — callers fold case as needed.
pub fn tokenize_words(text: &str) -> Vec<&str> {
    text.split(is_separator)
        .filter_map(|raw| {
            let token = raw.trim_matches(|c: char| !c.is_alphanumeric());
            if token.is_empty() {
                None
            } else {
                Some(token)
            }
        })
        .collect()
}

/// Number of word tokens in `text` under the shared definition.
pub fn word_count(text: &str) -> usize {
    tokenize_words(text).len()
}

fn is_separator(c: char) -> bool {
    // Commas and hyphens act as separators; en/em dashes get the same
    // treatment so "foo–bar" and "foo-bar" tokenize alike.
    c.is_whitespace() || matches!(c, ',' | '-' | '\u{2010}' | '\u{2013}' | '\u{2014}')
}
