//! Bounds for `lambda_{m+1}` from the first `m` eigenvalues.
//!
//! The explicit bounds (PPW, Yang 2, Yang 1) come in closed form; the
//! Hile-Protter bound and the general `sigma_p` are roots of the gap
//! function `f_p` located by bracketed iteration; `sigma_tilde_p` is the
//! first sign change of `ft_p` above `lambda_m`.
//!
//! The bracket is always certified before refinement: `f_p < 0` just above
//! `lambda_m` and `f_p > 0` at the upper end (the PPW value, doubled as a
//! safeguard until the sign flips).

use serde::Serialize;
use thiserror::Error;

use crate::gapfn::{GapError, GapFunction};
use crate::kahan::KahanSum;
use crate::profiles::BoundProfile;
use crate::spectra::{Spectrum, SpectrumError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("weight w(lambda_{index}) = {weight} must be positive for this method")]
    NonPositiveWeight { index: usize, weight: f64 },

    #[error("negative discriminant {disc}: complex roots, inadmissible profile/spectrum pair")]
    ComplexRoots { disc: f64 },

    #[error("no sign change found after {doublings} bracket doublings")]
    BracketFailure { doublings: usize },

    #[error("exponent p = {p} invalid here (expected {expected})")]
    InvalidExponent { p: f64, expected: &'static str },

    #[error("sigma_p and sigma_tilde_p disagree at p = 2: {sigma_p} vs {sigma_tilde_p}")]
    RegimeMismatch { sigma_p: f64, sigma_tilde_p: f64 },

    #[error(transparent)]
    Gap(#[from] GapError),

    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "PPW")]
    Ppw,
    #[serde(rename = "HP")]
    Hp,
    #[serde(rename = "YANG2")]
    Yang2,
    #[serde(rename = "YANG1")]
    Yang1,
    #[serde(rename = "SIGMA_P")]
    SigmaP,
    #[serde(rename = "SIGMA_TILDE_P")]
    SigmaTildeP,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self {
            Method::Ppw => "PPW",
            Method::Hp => "HP",
            Method::Yang2 => "YANG2",
            Method::Yang1 => "YANG1",
            Method::SigmaP => "SIGMA_P",
            Method::SigmaTildeP => "SIGMA_TILDE_P",
        };
        f.write_str(tag)
    }
}

/// One computed bound for `lambda_{m+1}`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundResult {
    /// The bound value (always `>= lambda_m`).
    pub value: f64,
    pub method: Method,
    /// Exponent of the family member; `None` for the PPW row.
    pub p: Option<f64>,
    /// Bracket certified before refinement; degenerate for closed forms.
    pub bracket: (f64, f64),
    /// `|f|` at the returned root; 0 for closed forms.
    pub residual: f64,
    pub iterations: usize,
    /// Set when the sigma_tilde scan saw unexpected sign structure or the
    /// march hit the upper estimate without a crossing.
    pub flagged: bool,
}

impl BoundResult {
    fn closed(value: f64, method: Method, p: Option<f64>) -> Self {
        Self {
            value,
            method,
            p,
            bracket: (value, value),
            residual: 0.0,
            iterations: 0,
            flagged: false,
        }
    }
}

/// Prefix statistics shared by every solver: `S_1`, `S_2`, the weighted
/// means `mean w(lambda_i)` and `mean w(lambda_i) lambda_i`.
struct PrefixStats {
    lambda_m: f64,
    s1: f64,
    s2: f64,
    w_mean: f64,
    wl_mean: f64,
}

fn prefix_stats(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
) -> Result<PrefixStats, SolverError> {
    let prefix = spectrum.prefix(m)?;
    let mut s1 = KahanSum::new();
    let mut s2 = KahanSum::new();
    let mut w = KahanSum::new();
    let mut wl = KahanSum::new();
    for &lambda in prefix {
        s1.add(lambda);
        s2.add(lambda * lambda);
        let wi = profile.weight(lambda);
        w.add(wi);
        wl.add(wi * lambda);
    }
    let mf = m as f64;
    Ok(PrefixStats {
        lambda_m: prefix[m - 1],
        s1: s1.value() / mf,
        s2: s2.value() / mf,
        w_mean: w.value() / mf,
        wl_mean: wl.value() / mf,
    })
}

fn require_positive_weights(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
) -> Result<(), SolverError> {
    for (index, &lambda) in spectrum.prefix(m)?.iter().enumerate() {
        let weight = profile.weight(lambda);
        if !(weight > 0.0) {
            return Err(SolverError::NonPositiveWeight { index, weight });
        }
    }
    Ok(())
}

/// PPW bound: `lambda_m + c * mean w(lambda_i)`. Exact closed form.
pub fn ppw_bound(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
) -> Result<BoundResult, SolverError> {
    let st = prefix_stats(profile, spectrum, m)?;
    Ok(BoundResult::closed(
        st.lambda_m + profile.c * st.w_mean,
        Method::Ppw,
        None,
    ))
}

/// Yang 2 bound: the root of the linear `f_1`, `S_1 + c * mean w(lambda_i)`.
pub fn yang2_bound(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
) -> Result<BoundResult, SolverError> {
    let st = prefix_stats(profile, spectrum, m)?;
    Ok(BoundResult::closed(
        st.s1 + profile.c * st.w_mean,
        Method::Yang2,
        Some(1.0),
    ))
}

/// Yang 1 bound: the larger root of the quadratic `f_2`,
///
/// ```text
/// sigma^2 - (2 S_1 + c W_1) sigma + (S_2 + c W_lambda) = 0 ,
/// ```
///
/// with `W_1 = mean w(lambda_i)` and `W_lambda = mean w(lambda_i) lambda_i`.
/// The root of larger magnitude is computed first; the other follows from
/// the product of roots.
pub fn yang1_bound(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
) -> Result<BoundResult, SolverError> {
    let st = prefix_stats(profile, spectrum, m)?;
    let b_coef = 2.0 * st.s1 + profile.c * st.w_mean;
    let c_coef = st.s2 + profile.c * st.wl_mean;
    let disc = b_coef * b_coef - 4.0 * c_coef;
    if disc < -1e-12 * b_coef * b_coef {
        return Err(SolverError::ComplexRoots { disc });
    }
    let sq = disc.max(0.0).sqrt();
    let value = if b_coef >= 0.0 {
        let big = 0.5 * (b_coef + sq);
        if big == 0.0 {
            0.0
        } else {
            big.max(c_coef / big)
        }
    } else {
        let big = 0.5 * (b_coef - sq);
        // big < 0, so the larger root is the co-root.
        c_coef / big
    };
    Ok(BoundResult::closed(value, Method::Yang1, Some(2.0)))
}

/// Hile-Protter bound: the unique root of `f_0` in `(lambda_m, PPW]`,
/// found by safeguarded Newton iteration (the derivative is analytic and
/// `f_0` is monotone increasing from `-inf` to 1).
pub fn hp_bound(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
) -> Result<BoundResult, SolverError> {
    require_positive_weights(profile, spectrum, m)?;
    let st = prefix_stats(profile, spectrum, m)?;
    let gap = GapFunction::new(profile, spectrum, m, 0.0)?;

    let lo = st.lambda_m + 1e-12 * st.lambda_m.max(1.0);
    let hi0 = st.lambda_m + profile.c * st.w_mean;
    let (mut a, mut b, doublings) = certify_bracket(&gap, st.lambda_m, lo, hi0, false)?;

    let f_lo = gap.eval_f(a)?;
    if f_lo >= 0.0 {
        // Root below bracket resolution.
        return Ok(BoundResult {
            value: a,
            method: Method::Hp,
            p: Some(0.0),
            bracket: (st.lambda_m, a),
            residual: f_lo.abs(),
            iterations: doublings,
            flagged: false,
        });
    }

    let bracket = (a, b);
    let mut x = b;
    let mut fx = gap.eval_f(x)?;
    let mut iterations = doublings;
    for _ in 0..200 {
        if fx.abs() <= 1e-12 * x.abs() || b - a <= 1e-13 * x.abs() {
            break;
        }
        iterations += 1;
        // Maintain the bracket from the latest sign information.
        if fx > 0.0 {
            b = b.min(x);
        } else if fx < 0.0 {
            a = a.max(x);
        } else {
            break;
        }
        let deriv = gap.eval_f_derivative(x)?;
        let newton = x - fx / deriv;
        x = if deriv > 0.0 && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        fx = gap.eval_f(x)?;
    }
    Ok(BoundResult {
        value: x,
        method: Method::Hp,
        p: Some(0.0),
        bracket,
        residual: fx.abs(),
        iterations,
        flagged: false,
    })
}

/// Establishes `f(a) <= 0 < f(b)` starting from `[lo, hi0]`, doubling the
/// span above `lambda_m` until the upper sign is strictly positive.
/// `tilde` selects which gap function is evaluated.
fn certify_bracket(
    gap: &GapFunction<'_>,
    lambda_m: f64,
    lo: f64,
    hi0: f64,
    tilde: bool,
) -> Result<(f64, f64, usize), SolverError> {
    let eval = |sigma: f64| -> Result<f64, GapError> {
        if tilde {
            gap.eval_f_tilde(sigma)
        } else {
            gap.eval_f(sigma)
        }
    };
    let mut hi = hi0.max(lo + 1e-6 * lo.abs().max(1.0));
    let mut doublings = 0;
    loop {
        let f_hi = eval(hi)?;
        if f_hi > 0.0 {
            return Ok((lo, hi, doublings));
        }
        if f_hi.is_nan() {
            return Err(SolverError::BracketFailure { doublings });
        }
        doublings += 1;
        if doublings > 64 {
            return Err(SolverError::BracketFailure { doublings });
        }
        hi = lambda_m + 2.0 * (hi - lambda_m);
    }
}

/// Bisects `[a, b]` with `f(a) <= 0 < f(b)` down to a relative interval of
/// `1e-13`, keeping the sign invariant. Returns (root, residual, iterations).
fn bisect<E>(
    mut a: f64,
    mut b: f64,
    mut eval: impl FnMut(f64) -> Result<f64, E>,
) -> Result<(f64, f64, usize), E> {
    let mut iterations = 0;
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if b - a <= 1e-13 * mid.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        if iterations >= 500 {
            break;
        }
        iterations += 1;
        let f_mid = eval(mid)?;
        if f_mid > 0.0 {
            b = mid;
        } else {
            a = mid;
        }
    }
    let root = 0.5 * (a + b);
    let residual = eval(root)?.abs();
    Ok((root, residual, iterations))
}

/// The unique root `sigma_p` of `f_p` above `lambda_m`, for `0 <= p <= 2`,
/// by bisection on a certified bracket. For `p < 1` all weights must be
/// positive (the sign structure of the uniqueness argument needs it).
pub fn sigma_p(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
    p: f64,
) -> Result<BoundResult, SolverError> {
    if !(0.0..=2.0).contains(&p) {
        return Err(SolverError::InvalidExponent {
            p,
            expected: "0 <= p <= 2",
        });
    }
    if p < 1.0 {
        require_positive_weights(profile, spectrum, m)?;
    }
    let st = prefix_stats(profile, spectrum, m)?;
    let gap = GapFunction::new(profile, spectrum, m, p)?;

    let lo = st.lambda_m + 1e-12 * st.lambda_m.max(1.0);
    let hi0 = st.lambda_m + profile.c * st.w_mean; // PPW dominates sigma_p
    let (a, b, doublings) = certify_bracket(&gap, st.lambda_m, lo, hi0, false)?;

    let f_lo = gap.eval_f(a)?;
    if f_lo >= 0.0 {
        return Ok(BoundResult {
            value: a,
            method: Method::SigmaP,
            p: Some(p),
            bracket: (st.lambda_m, a),
            residual: f_lo.abs(),
            iterations: doublings,
            flagged: false,
        });
    }

    let (value, residual, iterations) = bisect(a, b, |x| gap.eval_f(x))?;
    Ok(BoundResult {
        value,
        method: Method::SigmaP,
        p: Some(p),
        bracket: (a, b),
        residual,
        iterations: iterations + doublings,
        flagged: false,
    })
}

/// The first-crossing root `sigma_tilde_p` of `ft_p` for `p >= 2`: the
/// supremum of the interval starting at `lambda_m` on which `ft_p <= 0`.
///
/// The function is marched upward from `lambda_m` in steps of
/// `max(1e-3, 1e-3 * (hi - lambda_m))`, where `hi` is the tail estimate
/// `lambda_m + K(p) * mean w(lambda_i)`; the first cell with a sign change
/// is bisected. Afterwards `ft_p <= 0` is re-verified on 1000 samples of
/// `[lambda_m, root]`; a violation sets `flagged` instead of silently
/// returning a wrong supremum. If no crossing is seen up to `hi`, `hi` is
/// returned flagged (the supremum may equal the estimate).
pub fn sigma_tilde_p(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
    p: f64,
) -> Result<BoundResult, SolverError> {
    if !(p >= 2.0) {
        return Err(SolverError::InvalidExponent { p, expected: "p >= 2" });
    }
    let st = prefix_stats(profile, spectrum, m)?;
    let gap = GapFunction::new(profile, spectrum, m, p)?;

    let hi = st.lambda_m + profile.coefficient(p) * st.w_mean;
    let step = (1e-3 * (hi - st.lambda_m)).max(1e-3);
    // The estimate is an upper bound for the supremum and can be attained
    // exactly (m = 1 does); search marginally past it so an exact-boundary
    // root still produces a sign change.
    let search_hi = hi + 1e-9 * (hi - st.lambda_m).abs();

    let mut iterations = 0usize;
    let mut cell_lo = st.lambda_m;
    let mut crossing: Option<(f64, f64)> = None;
    let mut k = 1usize;
    loop {
        let s = (st.lambda_m + k as f64 * step).min(search_hi);
        iterations += 1;
        let f_s = gap.eval_f_tilde(s)?;
        if f_s > 0.0 {
            crossing = Some((cell_lo, s));
            break;
        }
        if s >= search_hi {
            break;
        }
        cell_lo = s;
        k += 1;
    }

    let (value, residual, bisect_iters, mut flagged, bracket) = match crossing {
        Some((a, b)) => {
            let (root, res, iters) = bisect(a, b, |x| gap.eval_f_tilde(x))?;
            (root, res, iters, false, (a, b))
        }
        // Never positive up to the estimate: the sup may equal it.
        None => (hi, gap.eval_f_tilde(hi)?.abs(), 0, true, (st.lambda_m, hi)),
    };

    // Sign-structure scan: ft_p must stay <= 0 on [lambda_m, root].
    let samples = 1000;
    for j in 0..samples {
        let sigma = st.lambda_m + (value - st.lambda_m) * j as f64 / (samples - 1) as f64;
        let (plain, weighted) = gap.f_tilde_parts(sigma)?;
        let scale = plain.abs() + weighted.abs();
        if plain - weighted > 1e-12 * scale {
            flagged = true;
            break;
        }
    }

    Ok(BoundResult {
        value,
        method: Method::SigmaTildeP,
        p: Some(p),
        bracket,
        residual,
        iterations: iterations + bisect_iters,
        flagged,
    })
}

/// Regime dispatch for a single exponent: `p < 2` goes to [`sigma_p`],
/// `p > 2` to [`sigma_tilde_p`], and `p = 2` computes both and asserts
/// they agree to 1e-9 relative.
pub fn bound_at(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
    p: f64,
) -> Result<BoundResult, SolverError> {
    if !p.is_finite() || p < 0.0 {
        return Err(SolverError::InvalidExponent { p, expected: "finite p >= 0" });
    }
    if p < 2.0 {
        sigma_p(profile, spectrum, m, p)
    } else if p > 2.0 {
        sigma_tilde_p(profile, spectrum, m, p)
    } else {
        let low = sigma_p(profile, spectrum, m, 2.0)?;
        let high = sigma_tilde_p(profile, spectrum, m, 2.0)?;
        let scale = low.value.abs().max(1e-300);
        if (low.value - high.value).abs() > 1e-9 * scale {
            return Err(SolverError::RegimeMismatch {
                sigma_p: low.value,
                sigma_tilde_p: high.value,
            });
        }
        Ok(low)
    }
}

/// One row of a bound table: the requested exponent and the outcome.
#[derive(Debug)]
pub struct BoundRow {
    /// `None` for the PPW row.
    pub p: Option<f64>,
    pub result: Result<BoundResult, SolverError>,
}

/// Computes the PPW row plus one row per requested exponent via
/// [`bound_at`]. Per-row failures are recorded without aborting the rest;
/// rows are ordered by ascending `p`.
pub fn bound_table(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
    p_list: &[f64],
) -> Result<Vec<BoundRow>, SolverError> {
    spectrum.prefix(m)?;
    let mut ps: Vec<f64> = p_list.to_vec();
    ps.sort_by(f64::total_cmp);

    let mut rows = Vec::with_capacity(ps.len() + 1);
    rows.push(BoundRow {
        p: None,
        result: ppw_bound(profile, spectrum, m),
    });
    for &p in &ps {
        rows.push(BoundRow {
            p: Some(p),
            result: bound_at(profile, spectrum, m, p),
        });
    }
    Ok(rows)
}
