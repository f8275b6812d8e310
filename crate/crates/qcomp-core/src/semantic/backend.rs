//! Embedding backends: the deterministic hash stub and the HTTP client.

use serde::{Deserialize, Serialize};

use super::embedding::Embedding;
use crate::corpus::tokenize_words;
use crate::error::{Error, Result};
use crate::net::{post_json, Semaphore, DEFAULT_INFLIGHT};
use crate::scalar::Scalar;

/// Produces embeddings of a fixed dimension under a stable model id.
pub trait EmbeddingBackend<S: Scalar>: Send + Sync {
    fn embed_text(&self, text: &str) -> Result<Embedding<S>>;
    fn dim(&self) -> usize;
    fn model_id(&self) -> &str;
}

/// Embeds text through the backend, enforcing the backend's declared
/// dimension (violations are contract errors, not input errors).
pub fn embed<S: Scalar>(text: &str, backend: &dyn EmbeddingBackend<S>) -> Result<Embedding<S>> {
    if text.is_empty() {
        return Err(Error::Input("cannot embed empty text".into()));
    }
    let embedding = backend.embed_text(text)?;
    if embedding.dim() != backend.dim() {
        return Err(Error::Contract(format!(
            "backend '{}' declared dimension {} but returned {}",
            backend.model_id(),
            backend.dim(),
            embedding.dim()
        )));
    }
    Ok(embedding)
}

/// Deterministic test backend: feature-hashes each token into `dim`
/// signed buckets and L2-normalizes. Equal texts map to equal vectors.
#[derive(Debug, Clone)]
pub struct HashStub {
    dim: usize,
    model_id: String,
}

impl HashStub {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "embedding dimension must be positive");
        HashStub {
            dim,
            model_id: format!("hash-stub-v1-d{dim}"),
        }
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in bytes {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

impl<S: Scalar> EmbeddingBackend<S> for HashStub {
    fn embed_text(&self, text: &str) -> Result<Embedding<S>> {
        let mut values = vec![S::zero(); self.dim];
        let mut any = false;
        for token in tokenize_words(text) {
            let hash = fnv1a(token.to_lowercase().as_bytes());
            let bucket = ((hash >> 1) % self.dim as u64) as usize;
            let sign = if hash & 1 == 0 { S::one() } else { -S::one() };
            values[bucket] = values[bucket] + sign;
            any = true;
        }
        if !any {
            values[0] = S::one();
        }
        let norm = values
            .iter()
            .fold(S::zero(), |acc, v| acc + *v * *v)
            .sqrt();
        if norm > S::zero() {
            for v in &mut values {
                *v = *v / norm;
            }
        } else {
            // Signed buckets cancelled out entirely; fall back to a unit axis.
            values[0] = S::one();
        }
        Embedding::new(values, self.model_id.clone())
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn model_id(&self) -> &str {
        &self.model_id
    }
}

#[derive(Serialize)]
struct EmbedRequest<'a> {
    text: &'a str,
}

#[derive(Deserialize)]
struct EmbedResponse {
    embedding: Vec<f64>,
    #[serde(default)]
    #[allow(dead_code)]
    model: String,
}

/// HTTP embedding backend: POST {"text"} to the endpoint, expecting
/// {"embedding":[...], "model":"..."} back. The auth token is sent as a
/// bearer header when present.
pub struct HttpEmbeddingBackend {
    url: String,
    dim: usize,
    model_id: String,
    token: Option<String>,
    client: reqwest::blocking::Client,
    inflight: Semaphore,
}

impl HttpEmbeddingBackend {
    pub fn new(url: impl Into<String>, dim: usize, token: Option<String>) -> Self {
        let url = url.into();
        HttpEmbeddingBackend {
            model_id: format!("http:{url}"),
            url,
            dim,
            token,
            client: reqwest::blocking::Client::new(),
            inflight: Semaphore::new(DEFAULT_INFLIGHT),
        }
    }

    pub fn with_inflight_cap(mut self, cap: usize) -> Self {
        self.inflight = Semaphore::new(cap);
        self
    }
}

impl<S: Scalar> EmbeddingBackend<S> for HttpEmbeddingBackend {
    fn embed_text(&self, text: &str) -> Result<Embedding<S>> {
        let _permit = self.inflight.acquire();
        let response: EmbedResponse = post_json(
            &self.client,
            &self.url,
            self.token.as_deref(),
            &EmbedRequest { text },
        )?;
        let values: Vec<S> = response
            .embedding
            .iter()
            .map(|v| S::from_f64_const(*v))
            .collect();
        Embedding::new(values, self.model_id.clone())
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn model_id(&self) -> &str {
        &self.model_id
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stub_is_deterministic_with_declared_dimension() {
        let stub = HashStub::new(8);
        let a: Embedding<f64> = embed("any text at all", &stub).unwrap();
        let b: Embedding<f64> = embed("any text at all", &stub).unwrap();
        assert_eq!(a.dim(), 8);
        assert_eq!(a.values(), b.values());
        assert!(a.values().iter().all(|v| v.is_finite()));
    }

    #[test]
    fn stub_normalizes_to_unit_length() {
        let stub = HashStub::new(16);
        let e: Embedding<f64> = embed("graph neural networks", &stub).unwrap();
        let norm: f64 = e.values().iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_text_rejected() {
        let stub = HashStub::new(8);
        let err = embed::<f64>("", &stub).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn dimension_contract_enforced() {
        struct Lying;
        impl EmbeddingBackend<f64> for Lying {
            fn embed_text(&self, _text: &str) -> Result<Embedding<f64>> {
                Embedding::new(vec![0.5; 7], "lying")
            }
            fn dim(&self) -> usize {
                8
            }
            fn model_id(&self) -> &str {
                "lying"
            }
        }
        let err = embed("text", &Lying).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn equal_texts_map_to_equal_vectors_distinct_texts_usually_differ() {
        let stub = HashStub::new(32);
        let a: Embedding<f64> = embed("knowledge compression", &stub).unwrap();
        let b: Embedding<f64> = embed("knowledge compression", &stub).unwrap();
        let c: Embedding<f64> = embed("entirely unrelated words", &stub).unwrap();
        assert_eq!(a.values(), b.values());
        assert_ne!(a.values(), c.values());
    }
}
