//! Question-based knowledge compression and retrieval engine.
//!
//! Documents are compressed into generated questions, search queries,
//! keywords, and a compact "paper-card"; retrieval then works over those
//! artifacts instead of the full text. The crate provides:
//!
//! - `corpus` — ingestion, section extraction, tokenization, and the
//!   fixed-size / recursive chunking baselines
//! - `compression` — question/query/card generation through a pluggable
//!   text-generation backend, plus artifact persistence
//! - `lexical` — Okapi BM25 scoring and POS-based keyword extraction
//! - `reranker` — the syntactic frequency-threshold passage reranker
//! - `semantic` — embedding backends, an in-memory vector store, and
//!   exact cosine top-k search
//! - `retrieval` — single-hop document-ID retrieval and multihop passage
//!   selection + answering
//! - `evaluation` — Accuracy@k / MRR@k / token-F1 metrics and benchmark
//!   runners
//!
//! Scoring math is generic over the floating-point type through
//! [`scalar::Scalar`]; [`Score`] is the default concrete choice.

pub mod corpus;
pub mod error;
pub mod lexical;
pub mod reranker;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default scalar type for scores, similarities, and metrics.
pub type Score = f64;
