//! The scalar gap functions whose roots are the eigenvalue bounds.
//!
//! For a profile `(c, a, b)`, a spectrum prefix `lambda_1..lambda_m` and an
//! exponent `p`, the low-regime gap function is
//!
//! ```text
//! f_p(sigma) = (1/m) sum_i (sigma - lambda_i)^p
//!            - (c/m)  sum_i (sigma - lambda_i)^(p-1) w(lambda_i),   p <= 2,
//! ```
//!
//! and the high-regime variant replaces `c` by `c*p/2`:
//!
//! ```text
//! ft_p(sigma) = (1/m) sum_i (sigma - lambda_i)^p
//!             - (c*p/2)(1/m) sum_i (sigma - lambda_i)^(p-1) w(lambda_i),   p >= 2.
//! ```
//!
//! Inside the sums `0^0 = 1` (the limiting value, which keeps `f_1`
//! continuous at `sigma = lambda_i`). Sums run in ascending index order
//! with compensated accumulation so output is deterministic.

use thiserror::Error;

use crate::kahan::KahanSum;
use crate::profiles::BoundProfile;
use crate::spectra::{Spectrum, SpectrumError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GapError {
    #[error("sigma = {sigma} lies below lambda_m = {lambda_m}")]
    SigmaBelowLambdaM { sigma: f64, lambda_m: f64 },

    #[error("exponent p = {p} outside the low regime (need p <= 2)")]
    ExponentNotLow { p: f64 },

    #[error("exponent p = {p} outside the high regime (need p >= 2)")]
    ExponentNotHigh { p: f64 },

    #[error("exponent p = {p} must be finite and nonnegative")]
    ExponentOutOfRange { p: f64 },

    #[error(transparent)]
    Spectrum(#[from] SpectrumError),

    #[error("sequence lengths differ: weights {weights}, a {a}, b {b}")]
    LengthMismatch { weights: usize, a: usize, b: usize },
}

/// An evaluable `f_p` / `ft_p` for a fixed (profile, spectrum, m, p).
///
/// `lambda_{m+1}` need not be present in the spectrum: only the first `m`
/// entries are read.
#[derive(Debug, Clone, Copy)]
pub struct GapFunction<'a> {
    profile: &'a BoundProfile,
    prefix: &'a [f64],
    p: f64,
}

impl<'a> GapFunction<'a> {
    pub fn new(
        profile: &'a BoundProfile,
        spectrum: &'a Spectrum,
        m: usize,
        p: f64,
    ) -> Result<Self, GapError> {
        if !p.is_finite() || p < 0.0 {
            return Err(GapError::ExponentOutOfRange { p });
        }
        let prefix = spectrum.prefix(m)?;
        Ok(Self { profile, prefix, p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.prefix.len()
    }

    pub fn profile(&self) -> &BoundProfile {
        self.profile
    }

    /// Largest eigenvalue of the prefix, `lambda_m`.
    pub fn lambda_m(&self) -> f64 {
        *self.prefix.last().expect("prefix is nonempty")
    }

    /// Raw sums `(sum_i g_i^p, sum_i g_i^(p-1) w_i)` for gaps
    /// `g_i = sigma - lambda_i`, without normalization or coefficient.
    /// Terms with `w_i == 0` are dropped from the second sum so that a
    /// zero weight never turns a singular gap power into `0 * inf`.
    fn power_sums(&self, sigma: f64, p: f64) -> (f64, f64) {
        let mut plain = KahanSum::new();
        let mut weighted = KahanSum::new();
        for &lambda in self.prefix {
            let gap = sigma - lambda;
            plain.add(gap.powf(p));
            let w = self.profile.weight(lambda);
            if w != 0.0 {
                weighted.add(gap.powf(p - 1.0) * w);
            }
        }
        (plain.value(), weighted.value())
    }

    /// Low-regime gap function `f_p(sigma)`, `p <= 2`.
    ///
    /// For `p < 1` the function diverges to a signed infinity as
    /// `sigma -> lambda_m^+`; evaluation at `sigma = lambda_m` returns that
    /// infinity as a sentinel (the sign a bracketing solver needs) rather
    /// than an error.
    pub fn eval_f(&self, sigma: f64) -> Result<f64, GapError> {
        if self.p > 2.0 {
            return Err(GapError::ExponentNotLow { p: self.p });
        }
        let lambda_m = self.lambda_m();
        if sigma < lambda_m {
            return Err(GapError::SigmaBelowLambdaM { sigma, lambda_m });
        }
        let (plain, weighted) = self.power_sums(sigma, self.p);
        let m = self.m() as f64;
        Ok((plain - self.profile.c * weighted) / m)
    }

    /// High-regime gap function `ft_p(sigma)`, `p >= 2`.
    pub fn eval_f_tilde(&self, sigma: f64) -> Result<f64, GapError> {
        let (plain, weighted) = self.f_tilde_parts(sigma)?;
        Ok(plain - weighted)
    }

    /// The two normalized parts of `ft_p`: the plain power mean and the
    /// coefficient-weighted mean. Their magnitudes set the natural scale
    /// for near-zero residual tests.
    pub(crate) fn f_tilde_parts(&self, sigma: f64) -> Result<(f64, f64), GapError> {
        if self.p < 2.0 {
            return Err(GapError::ExponentNotHigh { p: self.p });
        }
        let lambda_m = self.lambda_m();
        if sigma < lambda_m {
            return Err(GapError::SigmaBelowLambdaM { sigma, lambda_m });
        }
        let (plain, weighted) = self.power_sums(sigma, self.p);
        let m = self.m() as f64;
        Ok((plain / m, self.profile.coefficient(self.p) * weighted / m))
    }

    /// Truncated gap sum of the Aizenman-Lieb mechanism,
    ///
    /// ```text
    /// sum_i (sigma - lambda_i - r)_+^p
    ///   - K(p) sum_i (sigma - lambda_i - r)_+^(p-1) w(lambda_i),
    /// ```
    ///
    /// with `x_+ = max(x, 0)`. Un-normalized (no `1/m`). The truncation
    /// makes every `sigma` and `r >= 0` admissible.
    pub fn eval_f_plus(&self, sigma: f64, r: f64) -> f64 {
        let k = self.profile.coefficient(self.p);
        let mut plain = KahanSum::new();
        let mut weighted = KahanSum::new();
        for &lambda in self.prefix {
            let gap = (sigma - lambda - r).max(0.0);
            if gap == 0.0 {
                continue;
            }
            plain.add(gap.powf(self.p));
            weighted.add(gap.powf(self.p - 1.0) * self.profile.weight(lambda));
        }
        plain.value() - k * weighted.value()
    }

    /// Analytic derivative of `f_p` in `sigma`:
    ///
    /// ```text
    /// f_p'(sigma) = (1/m) ( p sum_i (sigma - lambda_i)^(p-1)
    ///                     - (p-1) c sum_i (sigma - lambda_i)^(p-2) w(lambda_i) ).
    /// ```
    ///
    /// The second term vanishes identically at `p = 1`.
    pub fn eval_f_derivative(&self, sigma: f64) -> Result<f64, GapError> {
        if self.p > 2.0 {
            return Err(GapError::ExponentNotLow { p: self.p });
        }
        let lambda_m = self.lambda_m();
        let ok = if self.p < 2.0 {
            sigma > lambda_m
        } else {
            sigma >= lambda_m
        };
        if !ok {
            return Err(GapError::SigmaBelowLambdaM { sigma, lambda_m });
        }
        let p = self.p;
        let mut first = KahanSum::new();
        let mut second = KahanSum::new();
        for &lambda in self.prefix {
            let gap = sigma - lambda;
            first.add(gap.powf(p - 1.0));
            if p != 1.0 {
                let w = self.profile.weight(lambda);
                if w != 0.0 {
                    second.add(gap.powf(p - 2.0) * w);
                }
            }
        }
        let m = self.m() as f64;
        let mut deriv = p * first.value();
        if p != 1.0 {
            deriv -= (p - 1.0) * self.profile.c * second.value();
        }
        Ok(deriv / m)
    }
}

/// The weighted reverse Chebyshev comparator
///
/// ```text
/// sum w_i * sum w_i a_i b_i  -  sum w_i a_i * sum w_i b_i ,
/// ```
///
/// which is `<= 0` whenever `a` and `b` are oppositely ordered and the
/// weights are nonnegative (and `>= 0` for similarly ordered sequences).
pub fn chebyshev_gap(weights: &[f64], a: &[f64], b: &[f64]) -> Result<f64, GapError> {
    if weights.len() != a.len() || weights.len() != b.len() {
        return Err(GapError::LengthMismatch {
            weights: weights.len(),
            a: a.len(),
            b: b.len(),
        });
    }
    let mut sw = KahanSum::new();
    let mut swab = KahanSum::new();
    let mut swa = KahanSum::new();
    let mut swb = KahanSum::new();
    for i in 0..weights.len() {
        sw.add(weights[i]);
        swab.add(weights[i] * a[i] * b[i]);
        swa.add(weights[i] * a[i]);
        swb.add(weights[i] * b[i]);
    }
    Ok(sw.value() * swab.value() - swa.value() * swb.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::IndexOrigin;
    use proptest::prelude::*;

    fn classical2() -> BoundProfile {
        BoundProfile::classical_membrane(2)
    }

    fn spectrum_12() -> Spectrum {
        Spectrum::new(vec![1.0, 2.0], IndexOrigin::One).unwrap()
    }

    #[test]
    fn hp_root_is_a_zero_of_f0() {
        let profile = classical2();
        let s = spectrum_12();
        let g = GapFunction::new(&profile, &s, 2, 0.0).unwrap();
        // Clearing denominators in 1 = 1/(s-1) + 2/(s-2) gives
        // s^2 - 6s + 6 = 0, larger root 3 + sqrt(3).
        let root = 3.0 + 3.0f64.sqrt();
        assert!(g.eval_f(root).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn yang2_root_is_a_zero_of_f1() {
        let profile = classical2();
        let s = spectrum_12();
        let g = GapFunction::new(&profile, &s, 2, 1.0).unwrap();
        // f_1 is linear: sigma - (1 + c) S_1, root 3 * 1.5.
        assert!(g.eval_f(4.5).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn single_term_cancellation_for_m_equal_one() {
        let profile = classical2();
        let s = spectrum_12();
        for p in [0.0, 0.3, 0.7, 1.0, 1.5, 2.0] {
            let g = GapFunction::new(&profile, &s, 1, p).unwrap();
            let sigma = 1.0 + profile.c * profile.weight(1.0); // (1+c) lambda_1
            assert!(
                g.eval_f(sigma).unwrap().abs() <= 1e-14,
                "p={p}: f={}",
                g.eval_f(sigma).unwrap()
            );
        }
    }

    #[test]
    fn below_lambda_m_is_a_domain_error() {
        let profile = classical2();
        let s = spectrum_12();
        let g = GapFunction::new(&profile, &s, 2, 1.0).unwrap();
        assert!(matches!(
            g.eval_f(1.5),
            Err(GapError::SigmaBelowLambdaM { .. })
        ));
        let g = GapFunction::new(&profile, &s, 2, 3.0).unwrap();
        assert!(matches!(g.eval_f(5.0), Err(GapError::ExponentNotLow { .. })));
        let g = GapFunction::new(&profile, &s, 2, 1.0).unwrap();
        assert!(matches!(
            g.eval_f_tilde(5.0),
            Err(GapError::ExponentNotHigh { .. })
        ));
    }

    #[test]
    fn negative_power_at_lambda_m_returns_signed_infinity() {
        let profile = classical2();
        let s = spectrum_12();
        for p in [0.0, 0.5] {
            let g = GapFunction::new(&profile, &s, 2, p).unwrap();
            let v = g.eval_f(2.0).unwrap();
            assert!(v.is_infinite() && v < 0.0, "p={p}: {v}");
        }
    }

    #[test]
    fn regimes_agree_identically_at_p_two() {
        let profile = classical2();
        let s = Spectrum::new(vec![1.0, 2.0, 2.5, 4.0], IndexOrigin::One).unwrap();
        let g = GapFunction::new(&profile, &s, 3, 2.0).unwrap();
        for sigma in [2.5, 3.0, 5.5, 10.0] {
            let f = g.eval_f(sigma).unwrap();
            let ft = g.eval_f_tilde(sigma).unwrap();
            assert!(
                (f - ft).abs() <= 1e-14 * f.abs().max(1.0),
                "sigma={sigma}: {f} vs {ft}"
            );
        }
    }

    #[test]
    fn f_tilde_value_at_lambda_m() {
        let profile = classical2();
        let s = spectrum_12();
        let g = GapFunction::new(&profile, &s, 2, 4.0).unwrap();
        // (1/2)[1 - 4*(1*1)] = -1.5
        assert_eq!(g.eval_f_tilde(2.0).unwrap(), -1.5);

        let g = GapFunction::new(&profile, &s, 1, 3.0).unwrap();
        assert_eq!(g.eval_f_tilde(1.0).unwrap(), 0.0);
    }

    #[test]
    fn f_plus_truncation() {
        let profile = classical2();
        let s = spectrum_12();
        let g = GapFunction::new(&profile, &s, 2, 2.0).unwrap();

        // Full truncation: r >= sigma - lambda_1 kills every term.
        assert_eq!(g.eval_f_plus(3.0, 2.0), 0.0);
        assert_eq!(g.eval_f_plus(3.0, 5.0), 0.0);

        // Partial truncation: only i = 1 survives at sigma=2.5, r=1.
        assert_eq!(g.eval_f_plus(2.5, 1.0), 0.25 - 2.0 * 0.5 * 1.0);

        // r = 0 recovers m * ft_p for p >= 2.
        for p in [2.0, 3.0, 4.0] {
            let g = GapFunction::new(&profile, &s, 2, p).unwrap();
            for sigma in [2.0, 2.5, 4.0] {
                let lhs = g.eval_f_plus(sigma, 0.0);
                let rhs = 2.0 * g.eval_f_tilde(sigma).unwrap();
                assert!(
                    (lhs - rhs).abs() <= 1e-13 * rhs.abs().max(1.0),
                    "p={p} sigma={sigma}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn derivative_is_constant_one_at_p_one() {
        let profile = classical2();
        let s = Spectrum::new(vec![1.0, 2.0, 7.0], IndexOrigin::One).unwrap();
        let g = GapFunction::new(&profile, &s, 3, 1.0).unwrap();
        for sigma in [7.5, 9.0, 120.0] {
            assert_eq!(g.eval_f_derivative(sigma).unwrap(), 1.0);
        }
    }

    #[test]
    fn derivative_of_f0_is_positive_for_positive_weights() {
        let profile = classical2();
        let s = spectrum_12();
        let g = GapFunction::new(&profile, &s, 2, 0.0).unwrap();
        for sigma in [2.1, 3.0, 8.0] {
            assert!(g.eval_f_derivative(sigma).unwrap() > 0.0);
        }
    }

    #[test]
    fn second_derivative_positive_for_p_between_one_and_two() {
        let profile = classical2();
        let s = Spectrum::new(vec![1.0, 1.5, 2.0], IndexOrigin::One).unwrap();
        for p in [1.25, 1.5, 1.75] {
            let g = GapFunction::new(&profile, &s, 3, p).unwrap();
            for sigma in [2.05, 2.5, 3.5, 6.0] {
                let h = 1e-5 * sigma;
                let fpp = (g.eval_f(sigma + h).unwrap() - 2.0 * g.eval_f(sigma).unwrap()
                    + g.eval_f(sigma - h).unwrap())
                    / (h * h);
                assert!(fpp > 0.0, "p={p} sigma={sigma}: f''={fpp}");
            }
        }
    }

    #[test]
    fn f_tilde_derivative_identity() {
        // ft_p' = p * ft_{p-1}, checked by central differences.
        let profile = classical2();
        let s = Spectrum::new(vec![1.0, 2.0, 2.5], IndexOrigin::One).unwrap();
        for p in [3.0, 3.5, 4.0, 6.0] {
            let g_hi = GapFunction::new(&profile, &s, 3, p).unwrap();
            let g_lo = GapFunction::new(&profile, &s, 3, p - 1.0).unwrap();
            for sigma in [3.0, 4.5, 7.0] {
                let h = 1e-6 * sigma;
                let fd = (g_hi.eval_f_tilde(sigma + h).unwrap()
                    - g_hi.eval_f_tilde(sigma - h).unwrap())
                    / (2.0 * h);
                let rhs = p * g_lo.eval_f_tilde(sigma).unwrap();
                assert!(
                    (fd - rhs).abs() <= 1e-6 * rhs.abs().max(1.0),
                    "p={p} sigma={sigma}: {fd} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn chebyshev_gap_hand_values() {
        // Oppositely ordered: 2*4 - 3*3 = -1.
        assert_eq!(
            chebyshev_gap(&[1.0, 1.0], &[1.0, 2.0], &[2.0, 1.0]).unwrap(),
            -1.0
        );
        // Constant a degenerates to 0.
        assert_eq!(
            chebyshev_gap(&[1.0, 2.0], &[3.0, 3.0], &[5.0, 1.0]).unwrap(),
            0.0
        );
        // Similarly ordered flips the sign: 2*5 - 3*3 = +1.
        assert_eq!(
            chebyshev_gap(&[1.0, 1.0], &[1.0, 2.0], &[1.0, 2.0]).unwrap(),
            1.0
        );
        assert!(matches!(
            chebyshev_gap(&[1.0], &[1.0, 2.0], &[1.0, 2.0]),
            Err(GapError::LengthMismatch { .. })
        ));
    }

    fn weights_and_sorted_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>)> {
        (2usize..12).prop_flat_map(|n| {
            (
                proptest::collection::vec(0.0..10.0f64, n),
                proptest::collection::vec(-100.0..100.0f64, n),
                proptest::collection::vec(-100.0..100.0f64, n),
            )
                .prop_map(|(w, mut a, mut b)| {
                    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
                    b.sort_by(|x, y| y.partial_cmp(x).unwrap());
                    (w, a, b)
                })
        })
    }

    proptest! {
        #[test]
        fn chebyshev_nonpositive_for_oppositely_ordered(
            (w, a, b) in weights_and_sorted_pair()
        ) {
            let gap = chebyshev_gap(&w, &a, &b).unwrap();
            let scale: f64 = w.iter().sum::<f64>()
                * a.iter().map(|x| x.abs()).fold(0.0, f64::max)
                * b.iter().map(|x| x.abs()).fold(0.0, f64::max);
            prop_assert!(gap <= 1e-12 * scale.max(1.0), "gap={gap}");
        }

        #[test]
        fn derivative_matches_central_difference(
            lambdas in proptest::collection::vec(0.5..50.0f64, 2..8),
            p in 0.0..=2.0f64,
            t in 0.1..5.0f64,
        ) {
            let mut values = lambdas;
            values.sort_by(|x, y| x.partial_cmp(y).unwrap());
            let s = Spectrum::new(values, IndexOrigin::One).unwrap();
            let profile = classical2();
            let m = s.len();
            let g = GapFunction::new(&profile, &s, m, p).unwrap();
            let lambda_m = s.values()[m - 1];
            let sigma = lambda_m * (1.0 + t);
            let h = 1e-6 * sigma;
            let fd = (g.eval_f(sigma + h).unwrap() - g.eval_f(sigma - h).unwrap()) / (2.0 * h);
            let an = g.eval_f_derivative(sigma).unwrap();
            prop_assert!((fd - an).abs() <= 1e-6 * an.abs().max(1.0), "fd={fd} an={an}");
        }

        #[test]
        fn f_plus_vanishes_under_full_truncation(
            sigma in 0.0..50.0f64,
            extra in 0.0..10.0f64,
            p in 2.0..6.0f64,
        ) {
            let profile = classical2();
            let s = Spectrum::new(vec![1.0, 2.0, 3.0], IndexOrigin::One).unwrap();
            let g = GapFunction::new(&profile, &s, 3, p).unwrap();
            let r = (sigma - 1.0).max(0.0) + extra;
            prop_assert_eq!(g.eval_f_plus(sigma, r), 0.0);
        }
    }
}
