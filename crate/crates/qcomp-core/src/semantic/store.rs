//! In-memory vector store with exact top-k search and flat-file
//! persistence.
//!
//! On disk a store is `<name>.vec` (raw little-endian float32, row-major)
//! plus `<name>.keys.json` (ordered key list with dim and model_id). The
//! byte layout is part of the contract. Files are written atomically via
//! a temp-file rename.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::backend::EmbeddingBackend;
use super::embedding::{cosine, Embedding};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which compression artifact a stored vector represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArtifactKind {
    Card,
    Query,
    Question,
}

/// Identity of one stored vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VectorKey {
    pub doc_id: String,
    pub kind: ArtifactKind,
    pub ordinal: usize,
}

/// Append-only vector store; all entries share one dimension and model.
#[derive(Debug, Clone)]
pub struct VectorStore<S: Scalar> {
    dim: usize,
    model_id: String,
    keys: Vec<VectorKey>,
    vectors: Vec<Embedding<S>>,
}

impl<S: Scalar> VectorStore<S> {
    pub fn new(dim: usize, model_id: impl Into<String>) -> Self {
        VectorStore {
            dim,
            model_id: model_id.into(),
            keys: Vec::new(),
            vectors: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn model_id(&self) -> &str {
        &self.model_id
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[VectorKey] {
        &self.keys
    }

    pub fn entries(&self) -> impl Iterator<Item = (&VectorKey, &Embedding<S>)> {
        self.keys.iter().zip(self.vectors.iter())
    }

    /// Adds a vector. Keys must be unique; dimension and model must match
    /// the store; all-zero vectors are rejected (cosine is undefined).
    pub fn push(&mut self, key: VectorKey, embedding: Embedding<S>) -> Result<()> {
        if embedding.dim() != self.dim {
            return Err(Error::Input(format!(
                "store dimension is {} but vector has {}",
                self.dim,
                embedding.dim()
            )));
        }
        if embedding.model_id() != self.model_id {
            return Err(Error::Input(format!(
                "store model is '{}' but vector came from '{}'",
                self.model_id,
                embedding.model_id()
            )));
        }
        if embedding.is_zero() {
            return Err(Error::Input("refusing to store an all-zero vector".into()));
        }
        if self.keys.contains(&key) {
            return Err(Error::Input(format!(
                "duplicate store key ({}, {:?}, {})",
                key.doc_id, key.kind, key.ordinal
            )));
        }
        self.keys.push(key);
        self.vectors.push(embedding);
        Ok(())
    }

    /// Writes `<name>.vec` + `<name>.keys.json` into `dir`, atomically.
    pub fn save(&self, dir: &Path, name: &str) -> Result<()> {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::storage(format!("creating {}", dir.display()), e))?;

        let mut raw = Vec::with_capacity(self.len() * self.dim * 4);
        for vector in &self.vectors {
            for value in vector.values() {
                let v = value.to_f32().ok_or_else(|| {
                    Error::Input("vector value does not fit in f32 for persistence".into())
                })?;
                raw.extend_from_slice(&v.to_le_bytes());
            }
        }
        write_atomic(&dir.join(format!("{name}.vec")), &raw)?;

        let sidecar = KeysFile {
            dim: self.dim,
            model_id: self.model_id.clone(),
            keys: self.keys.clone(),
        };
        let json = serde_json::to_vec_pretty(&sidecar)
            .map_err(|e| Error::Input(format!("serializing store keys: {e}")))?;
        write_atomic(&dir.join(format!("{name}.keys.json")), &json)
    }

    /// Loads a store persisted by [`VectorStore::save`].
    pub fn load(dir: &Path, name: &str) -> Result<Self> {
        let keys_path = dir.join(format!("{name}.keys.json"));
        let bytes = std::fs::read(&keys_path)
            .map_err(|e| Error::storage(format!("reading {}", keys_path.display()), e))?;
        let sidecar: KeysFile = serde_json::from_slice(&bytes)
            .map_err(|e| Error::Input(format!("malformed {}: {e}", keys_path.display())))?;

        let vec_path = dir.join(format!("{name}.vec"));
        let raw = std::fs::read(&vec_path)
            .map_err(|e| Error::storage(format!("reading {}", vec_path.display()), e))?;
        let expected = sidecar.keys.len() * sidecar.dim * 4;
        if raw.len() != expected {
            return Err(Error::Input(format!(
                "{} holds {} bytes but {} keys of dim {} need {}",
                vec_path.display(),
                raw.len(),
                sidecar.keys.len(),
                sidecar.dim,
                expected
            )));
        }

        let mut vectors = Vec::with_capacity(sidecar.keys.len());
        for row in raw.chunks_exact(sidecar.dim * 4) {
            let values: Vec<S> = row
                .chunks_exact(4)
                .map(|b| {
                    let v = f32::from_le_bytes([b[0], b[1], b[2], b[3]]);
                    S::from_f64_const(f64::from(v))
                })
                .collect();
            vectors.push(Embedding::new(values, sidecar.model_id.clone())?);
        }

        Ok(VectorStore {
            dim: sidecar.dim,
            model_id: sidecar.model_id,
            keys: sidecar.keys,
            vectors,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct KeysFile {
    dim: usize,
    model_id: String,
    keys: Vec<VectorKey>,
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, bytes)
        .map_err(|e| Error::storage(format!("writing {}", tmp.display()), e))?;
    std::fs::rename(&tmp, path)
        .map_err(|e| Error::storage(format!("renaming into {}", path.display()), e))
}

/// Exact top-k cosine search over every entry passing the kind filter.
///
/// Results are sorted by descending score; ties keep insertion (key)
/// order.
pub fn store_search<S: Scalar>(
    store: &VectorStore<S>,
    query: &Embedding<S>,
    k: usize,
    kind_filter: Option<ArtifactKind>,
) -> Result<Vec<(VectorKey, S)>> {
    if store.is_empty() {
        return Err(Error::State("vector store is empty".into()));
    }
    if query.dim() != store.dim() {
        return Err(Error::Input(format!(
            "query dimension {} does not match store dimension {}",
            query.dim(),
            store.dim()
        )));
    }
    let mut scored: Vec<(VectorKey, S)> = Vec::new();
    for (key, vector) in store.entries() {
        if let Some(kind) = kind_filter {
            if key.kind != kind {
                continue;
            }
        }
        scored.push((key.clone(), cosine(query, vector)?));
    }
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
    scored.truncate(k);
    Ok(scored)
}

/// Embeds each candidate's source section text and returns the top-k
/// doc ids by cosine against the query embedding, ranks 1..k. A doc id
/// appearing with several sections keeps its best-scoring one.
pub fn semantic_rerank_candidates<S: Scalar>(
    query_embedding: &Embedding<S>,
    candidates: &[(String, String)],
    backend: &dyn EmbeddingBackend<S>,
    k: usize,
) -> Result<Vec<crate::retrieval::RankedResult<S>>> {
    if candidates.is_empty() {
        return Err(Error::Input("semantic rerank requires at least one candidate".into()));
    }
    let mut best: Vec<(String, S)> = Vec::new();
    for (doc_id, section_text) in candidates {
        let embedding = super::backend::embed(section_text, backend)?;
        let score = cosine(query_embedding, &embedding)?;
        match best.iter_mut().find(|(id, _)| id == doc_id) {
            Some((_, existing)) if *existing >= score => {}
            Some((_, existing)) => *existing = score,
            None => best.push((doc_id.clone(), score)),
        }
    }
    best.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.0.cmp(&b.0))
    });
    Ok(best
        .into_iter()
        .take(k)
        .enumerate()
        .map(|(i, (doc_id, score))| crate::retrieval::RankedResult {
            doc_id,
            score,
            rank: i + 1,
        })
        .collect())
}
