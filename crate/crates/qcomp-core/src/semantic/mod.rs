//! Semantic matching: embedding backends, an in-memory vector store, and
//! exact cosine top-k search.

mod backend;
mod embedding;
mod store;

pub use backend::{embed, EmbeddingBackend, HashStub, HttpEmbeddingBackend};
pub use embedding::{cosine, Embedding};
pub use store::{semantic_rerank_candidates, store_search, ArtifactKind, VectorKey, VectorStore};
