//! Okapi BM25 scoring, generic over the scalar type.
//!
//! IDF uses the +1-inside-log form, ln((N − df + 0.5)/(df + 0.5) + 1),
//! which stays non-negative on tiny corpora.

use std::collections::HashMap;

use crate::corpus::tokenize_words;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// BM25 free parameters.
#[derive(Debug, Clone, Copy)]
pub struct Bm25Params<S: Scalar> {
    pub k1: S,
    pub b: S,
}

impl<S: Scalar> Default for Bm25Params<S> {
    fn default() -> Self {
        Bm25Params {
            k1: S::from_f64_const(1.2),
            b: S::from_f64_const(0.75),
        }
    }
}

impl<S: Scalar> Bm25Params<S> {
    pub fn validate(&self) -> Result<()> {
        if self.k1 < S::zero() {
            return Err(Error::Input("bm25 k1 must be non-negative".into()));
        }
        if self.b < S::zero() || self.b > S::one() {
            return Err(Error::Input("bm25 b must be within [0, 1]".into()));
        }
        Ok(())
    }
}

/// Immutable BM25 index over a text collection.
#[derive(Debug, Clone)]
pub struct Bm25Index<S: Scalar> {
    ids: Vec<String>,
    doc_lengths: Vec<usize>,
    term_frequencies: Vec<HashMap<String, usize>>,
    document_frequencies: HashMap<String, usize>,
    avg_doc_length: S,
    params: Bm25Params<S>,
}

impl<S: Scalar> Bm25Index<S> {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn avg_doc_length(&self) -> S {
        self.avg_doc_length
    }

    pub fn document_frequency(&self, term: &str) -> usize {
        self.document_frequencies.get(term).copied().unwrap_or(0)
    }

    pub fn term_frequency(&self, doc: usize, term: &str) -> usize {
        self.term_frequencies
            .get(doc)
            .and_then(|m| m.get(term))
            .copied()
            .unwrap_or(0)
    }
}

/// Builds an index from (id, text) pairs. Ids must be unique.
pub fn bm25_build<S: Scalar>(texts: &[(String, String)], params: Bm25Params<S>) -> Result<Bm25Index<S>> {
    params.validate()?;
    if texts.is_empty() {
        return Err(Error::Input("cannot build a BM25 index over zero texts".into()));
    }

    let mut ids = Vec::with_capacity(texts.len());
    let mut doc_lengths = Vec::with_capacity(texts.len());
    let mut term_frequencies = Vec::with_capacity(texts.len());
    let mut document_frequencies: HashMap<String, usize> = HashMap::new();
    let mut seen = std::collections::HashSet::new();

    for (id, text) in texts {
        if !seen.insert(id.clone()) {
            return Err(Error::Input(format!("duplicate id '{id}' in BM25 build input")));
        }
        let tokens = tokenize_words(text);
        let mut tf: HashMap<String, usize> = HashMap::new();
        for token in &tokens {
            *tf.entry(token.to_lowercase()).or_insert(0) += 1;
        }
        for term in tf.keys() {
            *document_frequencies.entry(term.clone()).or_insert(0) += 1;
        }
        ids.push(id.clone());
        doc_lengths.push(tokens.len());
        term_frequencies.push(tf);
    }

    let total: usize = doc_lengths.iter().sum();
    let avg_doc_length = S::from_count(total) / S::from_count(doc_lengths.len());

    Ok(Bm25Index {
        ids,
        doc_lengths,
        term_frequencies,
        document_frequencies,
        avg_doc_length,
        params,
    })
}

/// Scores every indexed document against the query.
///
/// score(d) = Σ_t IDF(t) · tf(t,d)·(k1+1) / (tf(t,d) + k1·(1 − b + b·len(d)/avg_len))
///
/// Query terms are case-folded shared tokens; repeated query terms
/// contribute once per occurrence. Documents that match nothing are
/// included with score 0. Results are sorted by descending score, ties
/// broken by ascending id.
pub fn bm25_score<S: Scalar>(index: &Bm25Index<S>, query: &str) -> Vec<(String, S)> {
    let n = S::from_count(index.ids.len());
    let k1 = index.params.k1;
    let b = index.params.b;
    let query_terms: Vec<String> = tokenize_words(query)
        .into_iter()
        .map(|t| t.to_lowercase())
        .collect();

    let mut scores = vec![S::zero(); index.ids.len()];
    if index.avg_doc_length > S::zero() {
        for term in &query_terms {
            let df = match index.document_frequencies.get(term) {
                Some(&df) => df,
                None => continue,
            };
            let df_s = S::from_count(df);
            let half = S::from_f64_const(0.5);
            let idf = ((n - df_s + half) / (df_s + half) + S::one()).ln();
            for (d, tf_map) in index.term_frequencies.iter().enumerate() {
                let tf = match tf_map.get(term) {
                    Some(&tf) => S::from_count(tf),
                    None => continue,
                };
                let len_ratio = S::from_count(index.doc_lengths[d]) / index.avg_doc_length;
                let denom = tf + k1 * (S::one() - b + b * len_ratio);
                scores[d] = scores[d] + idf * tf * (k1 + S::one()) / denom;
            }
        }
    }

    let mut ranked: Vec<(String, S)> = index
        .ids
        .iter()
        .cloned()
        .zip(scores)
        .collect();
    ranked.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.0.cmp(&b.0))
    });
    ranked
}
