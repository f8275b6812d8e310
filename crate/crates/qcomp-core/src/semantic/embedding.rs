//! Embedding values and cosine similarity.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A fixed-length vector of finite reals with its producing model id.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding<S: Scalar> {
    values: Vec<S>,
    model_id: String,
}

impl<S: Scalar> Embedding<S> {
    /// Builds an embedding, rejecting non-finite values and empty vectors.
    pub fn new(values: Vec<S>, model_id: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Input("embedding must have at least one dimension".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Input("embedding contains non-finite values".into()));
        }
        Ok(Embedding {
            values,
            model_id: model_id.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn model_id(&self) -> &str {
        &self.model_id
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == S::zero())
    }
}

/// Cosine similarity: dot(a,b) / (‖a‖·‖b‖), in [−1, 1].
pub fn cosine<S: Scalar>(a: &Embedding<S>, b: &Embedding<S>) -> Result<S> {
    if a.dim() != b.dim() {
        return Err(Error::Input(format!(
            "cosine dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::Input("cosine similarity is undefined for a zero vector".into()));
    }
    let mut dot = S::zero();
    let mut norm_a = S::zero();
    let mut norm_b = S::zero();
    for (x, y) in a.values.iter().zip(&b.values) {
        dot = dot + *x * *y;
        norm_a = norm_a + *x * *x;
        norm_b = norm_b + *y * *y;
    }
    Ok(dot / (norm_a.sqrt() * norm_b.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn emb(values: &[f64]) -> Embedding<f64> {
        Embedding::new(values.to_vec(), "test").unwrap()
    }

    #[test]
    fn identical_unit_vectors_score_one() {
        let a = emb(&[1.0, 0.0]);
        assert!((cosine(&a, &a).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_vectors_score_zero() {
        assert_eq!(cosine(&emb(&[1.0, 0.0]), &emb(&[0.0, 1.0])).unwrap(), 0.0);
    }

    #[test]
    fn opposite_vectors_score_minus_one() {
        let s = cosine(&emb(&[1.0, 2.0]), &emb(&[-1.0, -2.0])).unwrap();
        assert!((s + 1.0).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch_and_zero_vector_rejected() {
        assert!(cosine(&emb(&[1.0]), &emb(&[1.0, 0.0])).is_err());
        assert!(cosine(&emb(&[0.0, 0.0]), &emb(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn non_finite_values_rejected() {
        assert!(Embedding::new(vec![f64::NAN], "m").is_err());
        assert!(Embedding::new(Vec::<f64>::new(), "m").is_err());
    }

    proptest! {
        /// cosine(a,b) == cosine(b,a) to 1e-12 and stays within [−1, 1].
        #[test]
        fn symmetric_and_bounded(
            a in proptest::collection::vec(-100.0f64..100.0, 4),
            b in proptest::collection::vec(-100.0f64..100.0, 4),
        ) {
            prop_assume!(a.iter().any(|v| *v != 0.0));
            prop_assume!(b.iter().any(|v| *v != 0.0));
            let ea = emb(&a);
            let eb = emb(&b);
            let ab = cosine(&ea, &eb).unwrap();
            let ba = cosine(&eb, &ea).unwrap();
            prop_assert!((ab - ba).abs() < 1e-12);
            prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&ab));
        }
    }
}
