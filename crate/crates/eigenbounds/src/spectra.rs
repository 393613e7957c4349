//! Finite spectrum prefixes and their power moments.
//!
//! A [`Spectrum`] is a validated, nondecreasing, finite sequence of
//! eigenvalues `lambda_1 <= lambda_2 <= ...` (or `lambda_0 <= lambda_1 <= ...`
//! for compact-manifold problems, where the first eigenvalue is 0). The
//! power moments
//!
//! ```text
//! S_l = (1/m) * sum_{i=1}^{m} lambda_i^l
//! ```
//!
//! are computed on demand with compensated summation; they are never cached.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kahan::KahanSum;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("spectrum must contain at least one eigenvalue")]
    Empty,

    #[error("eigenvalue at index {index} is not finite")]
    NonFinite { index: usize },

    #[error("eigenvalues not nondecreasing at index {index}: {left} > {right}")]
    NotSorted { index: usize, left: f64, right: f64 },

    #[error("prefix length {m} exceeds spectrum length {len}")]
    PrefixTooLong { m: usize, len: usize },

    #[error("prefix length must be at least 1")]
    ZeroPrefix,

    #[error("index origin must be 0 or 1, got {0}")]
    BadIndexOrigin(u8),
}

/// Whether the spectrum counts from `lambda_1` (bounded domains) or from
/// `lambda_0 = 0` (compact manifolds). Metadata only: every operation
/// addresses "the first m entries" uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexOrigin {
    Zero,
    One,
}

impl From<IndexOrigin> for u8 {
    fn from(origin: IndexOrigin) -> u8 {
        match origin {
            IndexOrigin::Zero => 0,
            IndexOrigin::One => 1,
        }
    }
}

impl TryFrom<u8> for IndexOrigin {
    type Error = SpectrumError;

    fn try_from(v: u8) -> Result<Self, SpectrumError> {
        match v {
            0 => Ok(IndexOrigin::Zero),
            1 => Ok(IndexOrigin::One),
            other => Err(SpectrumError::BadIndexOrigin(other)),
        }
    }
}

/// JSON wire format: `{"eigenvalues": [...], "index_origin": 0|1}`.
/// Unknown fields are rejected.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumRepr {
    eigenvalues: Vec<f64>,
    index_origin: u8,
}

/// A validated, nondecreasing finite prefix of a discrete spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpectrumRepr", into = "SpectrumRepr")]
pub struct Spectrum {
    values: Vec<f64>,
    index_origin: IndexOrigin,
}

impl TryFrom<SpectrumRepr> for Spectrum {
    type Error = SpectrumError;

    fn try_from(repr: SpectrumRepr) -> Result<Self, SpectrumError> {
        let origin = IndexOrigin::try_from(repr.index_origin)?;
        Spectrum::new(repr.eigenvalues, origin)
    }
}

impl From<Spectrum> for SpectrumRepr {
    fn from(s: Spectrum) -> SpectrumRepr {
        SpectrumRepr {
            eigenvalues: s.values,
            index_origin: s.index_origin.into(),
        }
    }
}

impl Spectrum {
    /// Validates and wraps a pre-sorted eigenvalue sequence.
    ///
    /// Input is required already nondecreasing: `m` indexes an ordered
    /// prefix, and silent sorting would mask data errors upstream.
    pub fn new(values: Vec<f64>, index_origin: IndexOrigin) -> Result<Self, SpectrumError> {
        Self::with_tolerance(values, index_origin, 0.0)
    }

    /// As [`Spectrum::new`], but tolerates descents of at most `abs_tol`
    /// (for spectra produced by iterative eigensolvers with tie jitter).
    pub fn with_tolerance(
        values: Vec<f64>,
        index_origin: IndexOrigin,
        abs_tol: f64,
    ) -> Result<Self, SpectrumError> {
        if values.is_empty() {
            return Err(SpectrumError::Empty);
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(SpectrumError::NonFinite { index: i });
            }
        }
        for i in 0..values.len() - 1 {
            if values[i + 1] < values[i] - abs_tol {
                return Err(SpectrumError::NotSorted {
                    index: i,
                    left: values[i],
                    right: values[i + 1],
                });
            }
        }
        Ok(Self {
            values,
            index_origin,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: a valid spectrum holds at least one eigenvalue.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_origin(&self) -> IndexOrigin {
        self.index_origin
    }

    /// The first `m` eigenvalues, regardless of index origin.
    pub fn prefix(&self, m: usize) -> Result<&[f64], SpectrumError> {
        if m == 0 {
            return Err(SpectrumError::ZeroPrefix);
        }
        if m > self.values.len() {
            return Err(SpectrumError::PrefixTooLong {
                m,
                len: self.values.len(),
            });
        }
        Ok(&self.values[..m])
    }

    /// The power mean `S_l = (1/m) sum_{i<m} lambda_i^l` over the first
    /// `m` entries, by compensated summation in ascending index order.
    pub fn moment(&self, m: usize, ell: u32) -> Result<f64, SpectrumError> {
        let prefix = self.prefix(m)?;
        let mut acc = KahanSum::new();
        for &lambda in prefix {
            acc.add(lambda.powi(ell as i32));
        }
        Ok(acc.value() / m as f64)
    }

    /// Moment view over a fixed prefix.
    pub fn moments(&self, m: usize) -> Result<Moments<'_>, SpectrumError> {
        self.prefix(m).map(|prefix| Moments { prefix })
    }
}

/// The map `l -> S_l` over a fixed prefix of a spectrum.
#[derive(Debug, Clone, Copy)]
pub struct Moments<'a> {
    prefix: &'a [f64],
}

impl Moments<'_> {
    pub fn m(&self) -> usize {
        self.prefix.len()
    }

    /// `S_l`. `S_0 = 1` exactly.
    pub fn s(&self, ell: u32) -> f64 {
        let mut acc = KahanSum::new();
        for &lambda in self.prefix {
            acc.add(lambda.powi(ell as i32));
        }
        acc.value() / self.prefix.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn accepts_sorted_with_ties() {
        let s = Spectrum::new(vec![1.0, 2.0, 2.0, 5.0], IndexOrigin::One).unwrap();
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn rejects_order_violation() {
        let err = Spectrum::new(vec![2.0, 1.0], IndexOrigin::One).unwrap_err();
        assert!(matches!(err, SpectrumError::NotSorted { index: 0, .. }));
    }

    #[test]
    fn allows_leading_zero_for_manifolds() {
        let s = Spectrum::new(vec![0.0, 3.1, 7.4], IndexOrigin::Zero).unwrap();
        assert_eq!(s.values()[0], 0.0);
    }

    #[test]
    fn rejects_empty_and_nonfinite() {
        assert!(matches!(
            Spectrum::new(vec![], IndexOrigin::One),
            Err(SpectrumError::Empty)
        ));
        assert!(matches!(
            Spectrum::new(vec![1.0, f64::NAN], IndexOrigin::One),
            Err(SpectrumError::NonFinite { index: 1 })
        ));
        assert!(matches!(
            Spectrum::new(vec![1.0, f64::INFINITY], IndexOrigin::One),
            Err(SpectrumError::NonFinite { index: 1 })
        ));
    }

    #[test]
    fn moment_matches_direct_arithmetic() {
        let s = Spectrum::new(vec![1.0, 2.0], IndexOrigin::One).unwrap();
        assert_eq!(s.moment(2, 1).unwrap(), 1.5);
        assert_eq!(s.moment(2, 2).unwrap(), 2.5);
    }

    #[test]
    fn zeroth_moment_is_exactly_one() {
        let s = Spectrum::new(vec![0.3, 1.7, 9.1, 44.0], IndexOrigin::One).unwrap();
        for m in 1..=4 {
            assert_eq!(s.moment(m, 0).unwrap(), 1.0);
        }
    }

    #[test]
    fn prefix_too_long_is_reported() {
        let s = Spectrum::new(vec![1.0, 2.0], IndexOrigin::One).unwrap();
        assert!(matches!(
            s.moment(3, 1),
            Err(SpectrumError::PrefixTooLong { m: 3, len: 2 })
        ));
        assert!(matches!(s.moment(0, 1), Err(SpectrumError::ZeroPrefix)));
    }

    #[test]
    fn json_round_trip_and_unknown_field_rejection() {
        let s = Spectrum::new(vec![1.0, 2.0, 2.0], IndexOrigin::Zero).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"eigenvalues":[1.0,2.0,2.0],"index_origin":0}"#);
        let back: Spectrum = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);

        let bad = r#"{"eigenvalues":[1.0],"index_origin":1,"extra":3}"#;
        assert!(serde_json::from_str::<Spectrum>(bad).is_err());
        let unsorted = r#"{"eigenvalues":[2.0,1.0],"index_origin":1}"#;
        assert!(serde_json::from_str::<Spectrum>(unsorted).is_err());
        let bad_origin = r#"{"eigenvalues":[1.0],"index_origin":2}"#;
        assert!(serde_json::from_str::<Spectrum>(bad_origin).is_err());
    }

    fn sorted_values() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(0.0..1e6f64, 1..40).prop_map(|mut v| {
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v
        })
    }

    proptest! {
        // Permutation invariance over the chosen prefix: the moment only
        // sees the multiset of prefix values.
        #[test]
        fn moment_is_permutation_invariant(values in sorted_values(), ell in 0u32..4) {
            let m = values.len();
            let s = Spectrum::new(values.clone(), IndexOrigin::One).unwrap();
            let reference = s.moment(m, ell).unwrap();

            let mut rotated = values;
            rotated.rotate_left(1);
            let naive: f64 = rotated.iter().map(|x| x.powi(ell as i32)).sum::<f64>() / m as f64;
            let scale = reference.abs().max(1.0);
            prop_assert!((reference - naive).abs() <= 1e-9 * scale);
        }

        // Variance nonnegativity: S_2 >= S_1^2 for every valid prefix.
        #[test]
        fn second_moment_dominates_square_of_first(values in sorted_values()) {
            let s = Spectrum::new(values, IndexOrigin::One).unwrap();
            for m in 1..=s.len() {
                let s1 = s.moment(m, 1).unwrap();
                let s2 = s.moment(m, 2).unwrap();
                prop_assert!(s2 - s1 * s1 >= -1e-9 * s2.abs().max(1.0));
            }
        }

        // Compensated summation agrees with naive summation to 1e-12
        // relative on benign inputs.
        #[test]
        fn kahan_agrees_with_naive(values in sorted_values(), ell in 0u32..3) {
            let m = values.len();
            let s = Spectrum::new(values.clone(), IndexOrigin::One).unwrap();
            let compensated = s.moment(m, ell).unwrap();
            let naive: f64 = values.iter().map(|x| x.powi(ell as i32)).sum::<f64>() / m as f64;
            prop_assert!((compensated - naive).abs() <= 1e-12 * naive.abs().max(1.0));
        }
    }
}
