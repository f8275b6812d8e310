//! Retrieval orchestration: single-hop document-ID retrieval over
//! compression artifacts and multihop passage selection + answering.

mod index;
mod multihop;
mod single_hop;

pub use index::{build_index, IndexParams, IndexedCorpus, LexicalEntry, StorageReport};
pub use multihop::{multihop_answer, split_passages, MultihopConfig, MultihopResult, PassageSplit};
pub use single_hop::single_hop_retrieve;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// A (document id, score, rank) triple returned by retrieval. Ranks are
/// 1-based and gapless; scores are non-increasing with rank.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedResult<S: Scalar> {
    pub doc_id: String,
    pub score: S,
    pub rank: usize,
}

/// Indexing/retrieval strategies: the question-centric pipeline and the
/// four baselines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    QuestionCentric,
    Bm25Cards,
    Bm25Abstracts,
    FixedChunk,
    RecursiveChunk,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::QuestionCentric,
        Strategy::Bm25Cards,
        Strategy::Bm25Abstracts,
        Strategy::FixedChunk,
        Strategy::RecursiveChunk,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::QuestionCentric => "question_centric",
            Strategy::Bm25Cards => "bm25_cards",
            Strategy::Bm25Abstracts => "bm25_abstracts",
            Strategy::FixedChunk => "fixed_chunk",
            Strategy::RecursiveChunk => "recursive_chunk",
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Strategy {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "question_centric" => Ok(Strategy::QuestionCentric),
            "bm25_cards" => Ok(Strategy::Bm25Cards),
            "bm25_abstracts" => Ok(Strategy::Bm25Abstracts),
            "fixed_chunk" => Ok(Strategy::FixedChunk),
            "recursive_chunk" => Ok(Strategy::RecursiveChunk),
            other => Err(crate::Error::Input(format!(
                "unknown strategy '{other}' (expected one of question_centric, bm25_cards, bm25_abstracts, fixed_chunk, recursive_chunk)"
            ))),
        }
    }
}

/// Single-hop retrieval parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RetrievalConfig {
    /// How many document ids to return.
    pub top_k: usize,
    /// How many lexical candidates feed the semantic stage.
    pub lexical_prefilter_n: usize,
}

impl Default for RetrievalConfig {
    fn default() -> Self {
        RetrievalConfig {
            top_k: 3,
            lexical_prefilter_n: 10,
        }
    }
}

impl RetrievalConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if self.top_k == 0 {
            return Err(crate::Error::Input("top_k must be positive".into()));
        }
        if self.lexical_prefilter_n < self.top_k {
            return Err(crate::Error::Input(format!(
                "lexical_prefilter_n ({}) must be at least top_k ({})",
                self.lexical_prefilter_n, self.top_k
            )));
        }
        Ok(())
    }
}
