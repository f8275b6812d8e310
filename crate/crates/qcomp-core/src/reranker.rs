//! Syntactic passage reranking.
//!
//! Passages are scored by the total frequency of query keywords they
//! contain, filtered at a minimum threshold, re-ordered by their original
//! document sequence, and truncated to the first few survivors. The
//! threshold is called L throughout (some call sites know it as k).

use serde::{Deserialize, Serialize};

use crate::corpus::tokenize_words;
use crate::lexical::{extract_keywords_by_pos, PosTagger};

/// An ordered text segment within one document; the unit of multihop
/// reranking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Passage {
    /// Original position in the source sequence.
    pub index: usize,
    pub text: String,
}

/// Keyword-frequency score for one passage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PassageAnalysis {
    pub index: usize,
    /// Sum over keywords of whole-token occurrence counts in the passage.
    pub freq_score: usize,
}

/// Reranker parameters.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RerankConfig {
    /// Minimum total keyword frequency a passage must reach (L).
    pub threshold: usize,
    /// How many surviving passages to return.
    pub max_passages: usize,
    /// Keep survivors in original document order (the reference behavior)
    /// rather than by descending frequency.
    pub preserve_order: bool,
    /// When nothing survives, retry with the threshold lowered toward 1.
    pub adaptive_fallback: bool,
}

impl Default for RerankConfig {
    fn default() -> Self {
        RerankConfig {
            threshold: 2,
            max_passages: 6,
            preserve_order: true,
            adaptive_fallback: true,
        }
    }
}

impl RerankConfig {
    pub fn with_threshold(threshold: usize) -> Self {
        RerankConfig {
            threshold,
            ..RerankConfig::default()
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        if self.threshold == 0 {
            return Err(crate::Error::Input("rerank threshold L must be at least 1".into()));
        }
        if self.max_passages == 0 {
            return Err(crate::Error::Input("rerank max_passages must be at least 1".into()));
        }
        Ok(())
    }
}

/// Scores each passage by total keyword frequency.
///
/// Counting is case-insensitive and whole-token: "art" does not match
/// inside "particle". Multiplicities sum — a keyword occurring twice
/// contributes two.
pub fn analyze_passages(keywords: &[String], passages: &[Passage]) -> Vec<PassageAnalysis> {
    let folded: Vec<String> = keywords.iter().map(|k| k.to_lowercase()).collect();
    passages
        .iter()
        .map(|p| {
            let mut counts = std::collections::HashMap::new();
            for token in tokenize_words(&p.text) {
                *counts.entry(token.to_lowercase()).or_insert(0usize) += 1;
            }
            let freq_score = folded.iter().map(|k| counts.get(k).copied().unwrap_or(0)).sum();
            PassageAnalysis {
                index: p.index,
                freq_score,
            }
        })
        .collect()
}

/// Keeps passages whose score meets the threshold, orders survivors, and
/// truncates to `max_passages`.
///
/// With `preserve_order` the survivors come back in ascending original
/// index; otherwise by descending score with ascending-index ties. When
/// nothing survives and `adaptive_fallback` is on, the threshold is
/// retried at L−1 down to 1; an empty list means nothing matched at all.
pub fn get_filtered_passages(
    analysis: &[PassageAnalysis],
    passages: &[Passage],
    cfg: &RerankConfig,
) -> Vec<Passage> {
    filter_passages(analysis, passages, cfg).selected
}

/// Filter outcome carrying the threshold that actually produced the
/// selection (useful for audit and tests).
#[derive(Debug, Clone)]
pub struct FilterOutcome {
    pub selected: Vec<Passage>,
    /// The threshold in effect for the returned set; `None` when even L=1
    /// kept nothing.
    pub effective_threshold: Option<usize>,
}

pub fn filter_passages(
    analysis: &[PassageAnalysis],
    passages: &[Passage],
    cfg: &RerankConfig,
) -> FilterOutcome {
    let by_index: std::collections::HashMap<usize, &Passage> =
        passages.iter().map(|p| (p.index, p)).collect();

    let kept_at = |level: usize| -> Vec<&PassageAnalysis> {
        analysis.iter().filter(|a| a.freq_score >= level).collect()
    };

    let mut level = cfg.threshold.max(1);
    let mut kept = kept_at(level);
    if kept.is_empty() && cfg.adaptive_fallback {
        while kept.is_empty() && level > 1 {
            level -= 1;
            kept = kept_at(level);
        }
    }
    if kept.is_empty() {
        return FilterOutcome {
            selected: Vec::new(),
            effective_threshold: None,
        };
    }

    if cfg.preserve_order {
        kept.sort_by_key(|a| a.index);
    } else {
        kept.sort_by(|a, b| b.freq_score.cmp(&a.freq_score).then(a.index.cmp(&b.index)));
    }
    let selected = kept
        .into_iter()
        .take(cfg.max_passages)
        .filter_map(|a| by_index.get(&a.index).map(|p| (*p).clone()))
        .collect();
    FilterOutcome {
        selected,
        effective_threshold: Some(level),
    }
}

/// Detailed reranking result, for audit trails.
#[derive(Debug, Clone)]
pub struct RerankOutcome {
    pub selected: Vec<Passage>,
    pub keywords: Vec<String>,
    pub analysis: Vec<PassageAnalysis>,
    pub effective_threshold: Option<usize>,
}

/// The full pipeline: keyword extraction, frequency scoring, threshold
/// filtering, order-preserving selection.
pub fn rerank(
    query: &str,
    passages: &[Passage],
    cfg: &RerankConfig,
    tagger: &dyn PosTagger,
) -> Vec<Passage> {
    rerank_detailed(query, passages, cfg, tagger).selected
}

pub fn rerank_detailed(
    query: &str,
    passages: &[Passage],
    cfg: &RerankConfig,
    tagger: &dyn PosTagger,
) -> RerankOutcome {
    let keywords = extract_keywords_by_pos(query, tagger);
    let analysis = analyze_passages(&keywords, passages);
    let outcome = filter_passages(&analysis, passages, cfg);
    RerankOutcome {
        selected: outcome.selected,
        keywords,
        analysis,
        effective_threshold: outcome.effective_threshold,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexical::LexiconTagger;
    use proptest::prelude::*;

    fn passages(texts: &[&str]) -> Vec<Passage> {
        texts
            .iter()
            .enumerate()
            .map(|(index, text)| Passage {
                index,
                text: text.to_string(),
            })
            .collect()
    }

    fn keywords(words: &[&str]) -> Vec<String> {
        words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn frequency_sums_multiplicities() {
        let ps = passages(&["graph neural networks use graph structure", "cooking recipes"]);
        let analysis = analyze_passages(&keywords(&["graph", "neural"]), &ps);
        assert_eq!(analysis[0].freq_score, 3);
        assert_eq!(analysis[1].freq_score, 0);
    }

    #[test]
    fn no_keywords_means_zero_scores() {
        let ps = passages(&["anything here", "and here"]);
        let analysis = analyze_passages(&[], &ps);
        assert!(analysis.iter().all(|a| a.freq_score == 0));
    }

    #[test]
    fn matching_is_whole_token() {
        let ps = passages(&["particle art"]);
        let analysis = analyze_passages(&keywords(&["art"]), &ps);
        assert_eq!(analysis[0].freq_score, 1);
    }

    #[test]
    fn survivors_keep_original_order_not_score_order() {
        let ps = passages(&["a", "b", "c", "d"]);
        let analysis = vec![
            PassageAnalysis { index: 0, freq_score: 2 },
            PassageAnalysis { index: 1, freq_score: 5 },
            PassageAnalysis { index: 2, freq_score: 3 },
            PassageAnalysis { index: 3, freq_score: 0 },
        ];
        let cfg = RerankConfig::with_threshold(2);
        let out = get_filtered_passages(&analysis, &ps, &cfg);
        let indices: Vec<usize> = out.iter().map(|p| p.index).collect();
        assert_eq!(indices, vec![0, 1, 2]);
    }

    #[test]
    fn fallback_exhausts_to_empty() {
        let ps = passages(&["a", "b"]);
        let analysis = vec![
            PassageAnalysis { index: 0, freq_score: 0 },
            PassageAnalysis { index: 1, freq_score: 0 },
        ];
        let cfg = RerankConfig::with_threshold(2);
        let out = filter_passages(&analysis, &ps, &cfg);
        assert!(out.selected.is_empty());
        assert_eq!(out.effective_threshold, None);
    }

    #[test]
    fn fallback_lowers_threshold_until_hit() {
        let ps = passages(&["a", "b"]);
        let analysis = vec![
            PassageAnalysis { index: 0, freq_score: 1 },
            PassageAnalysis { index: 1, freq_score: 0 },
        ];
        let cfg = RerankConfig::with_threshold(3);
        let out = filter_passages(&analysis, &ps, &cfg);
        assert_eq!(out.selected.len(), 1);
        assert_eq!(out.effective_threshold, Some(1));

        let strict = RerankConfig {
            adaptive_fallback: false,
            ..cfg
        };
        assert!(filter_passages(&analysis, &ps, &strict).selected.is_empty());
    }

    #[test]
    fn truncates_to_first_six_by_original_index() {
        let texts: Vec<String> = (0..10).map(|i| format!("topic topic filler{i}")).collect();
        let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
        let ps = passages(&refs);
        let analysis = analyze_passages(&keywords(&["topic"]), &ps);
        let out = get_filtered_passages(&analysis, &ps, &RerankConfig::with_threshold(2));
        let indices: Vec<usize> = out.iter().map(|p| p.index).collect();
        assert_eq!(indices, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn score_order_mode_for_ablation() {
        let ps = passages(&["a", "b", "c"]);
        let analysis = vec![
            PassageAnalysis { index: 0, freq_score: 2 },
            PassageAnalysis { index: 1, freq_score: 5 },
            PassageAnalysis { index: 2, freq_score: 2 },
        ];
        let cfg = RerankConfig {
            preserve_order: false,
            ..RerankConfig::with_threshold(2)
        };
        let out = get_filtered_passages(&analysis, &ps, &cfg);
        let indices: Vec<usize> = out.iter().map(|p| p.index).collect();
        assert_eq!(indices, vec![1, 0, 2]);
    }

    #[test]
    fn rerank_empty_passages_is_empty() {
        let tagger = LexiconTagger::bundled();
        assert!(rerank("any query", &[], &RerankConfig::default(), &tagger).is_empty());
    }

    #[test]
    fn rerank_with_closed_class_query_selects_nothing() {
        let tagger = LexiconTagger::bundled();
        let ps = passages(&["in and of themselves", "other text"]);
        let out = rerank("in and of", &ps, &RerankConfig::with_threshold(2), &tagger);
        assert!(out.is_empty());
    }

    #[test]
    fn rerank_matches_manual_composition() {
        let tagger = LexiconTagger::bundled();
        let ps = passages(&[
            "films directed by X won awards",
            "Y directed several films in the era",
            "unrelated cooking text",
            "X and Y collaborated on films",
        ]);
        let query = "films directed by X and Y";
        let cfg = RerankConfig::with_threshold(2);
        let direct = rerank(query, &ps, &cfg, &tagger);
        let kw = extract_keywords_by_pos(query, &tagger);
        let composed = get_filtered_passages(&analyze_passages(&kw, &ps), &ps, &cfg);
        assert_eq!(direct, composed);
        let indices: Vec<usize> = direct.iter().map(|p| p.index).collect();
        assert_eq!(indices, vec![0, 1, 3]);
    }

    proptest! {
        /// Output indices strictly increase, cardinality respects the cap,
        /// and every survivor meets the effective threshold.
        #[test]
        fn selection_invariants(
            scores in proptest::collection::vec(0usize..5, 0..30),
            threshold in 1usize..4,
        ) {
            let texts: Vec<String> = scores.iter().map(|_| "x".to_string()).collect();
            let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
            let ps = passages(&refs);
            let analysis: Vec<PassageAnalysis> = scores
                .iter()
                .enumerate()
                .map(|(index, s)| PassageAnalysis { index, freq_score: *s })
                .collect();
            let cfg = RerankConfig::with_threshold(threshold);
            let out = filter_passages(&analysis, &ps, &cfg);

            prop_assert!(out.selected.len() <= cfg.max_passages);
            prop_assert!(out.selected.windows(2).all(|w| w[0].index < w[1].index));
            if let Some(level) = out.effective_threshold {
                for p in &out.selected {
                    prop_assert!(scores[p.index] >= level);
                }
            } else {
                prop_assert!(out.selected.is_empty());
            }
        }

        /// Before truncation, the kept set at L+1 is a subset of the kept
        /// set at L.
        #[test]
        fn kept_sets_shrink_with_threshold(
            scores in proptest::collection::vec(0usize..6, 0..40),
            threshold in 1usize..5,
        ) {
            let kept = |level: usize| -> Vec<usize> {
                scores
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| **s >= level)
                    .map(|(i, _)| i)
                    .collect()
            };
            let tighter = kept(threshold + 1);
            let looser = kept(threshold);
            prop_assert!(tighter.iter().all(|i| looser.contains(i)));
        }
    }
}
