//! Inequality and identity checks over (profile, spectrum) pairs.
//!
//! Every check emits a [`CheckReport`] whose `slack` is `RHS - LHS` of the
//! inequality in its printed orientation, so a pass is always
//! `slack >= -tolerance`. Identity checks (quadrature vs closed form,
//! beta-function ratios) fold their tolerance into the slack as
//! `tolerance - relative_difference`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::gapfn::{chebyshev_gap, GapError};
use crate::kahan::KahanSum;
use crate::profiles::BoundProfile;
use crate::solvers::{sigma_p, sigma_tilde_p, SolverError};
use crate::spectra::{Spectrum, SpectrumError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("spectrum holds {len} eigenvalues; checking against lambda_{next} needs one more")]
    MissingNextEigenvalue { len: usize, next: usize },

    #[error("g is not nondecreasing at table index {index}")]
    GNotMonotone { index: usize },

    #[error("g is negative at table index {index}: {value}")]
    GNegative { index: usize, value: f64 },

    #[error("g table is not finite at index {index}")]
    GNotFinite { index: usize },

    #[error("g table does not match the spectrum prefix: {reason}")]
    TableMismatch { reason: String },

    #[error("adaptive quadrature did not converge within depth 40")]
    QuadratureNonConvergence,

    #[error("beta function arguments must be positive, got s={s}, t={t}")]
    DomainError { s: f64, t: f64 },

    #[error("parameters out of range: {reason}")]
    BadParameter { reason: String },

    #[error(transparent)]
    Solver(#[from] SolverError),

    #[error(transparent)]
    Gap(#[from] GapError),

    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Structured outcome of one check. JSON field set is stable for CI use.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub pass: bool,
    /// RHS - LHS in the printed orientation (>= 0 means the inequality
    /// holds), or tolerance minus relative difference for identity checks.
    pub slack: f64,
    pub tolerance: f64,
    /// Worst-case witness: the index, exponent or sample pair attaining
    /// the minimal slack.
    pub witness: serde_json::Value,
    /// Compact digest of the inputs the check ran on.
    pub inputs: String,
}

impl CheckReport {
    fn new(
        check: impl Into<String>,
        slack: f64,
        tolerance: f64,
        witness: serde_json::Value,
        inputs: String,
    ) -> Self {
        Self {
            check: check.into(),
            pass: slack >= -tolerance,
            slack,
            tolerance,
            witness,
            inputs,
        }
    }
}

fn digest(profile: &BoundProfile, spectrum: &Spectrum, m: usize) -> String {
    format!(
        "profile={};m={m};spectrum_len={}",
        profile.name,
        spectrum.len()
    )
}

fn next_eigenvalue(spectrum: &Spectrum, m: usize) -> Result<f64, VerifyError> {
    spectrum.prefix(m)?;
    if spectrum.len() < m + 1 {
        return Err(VerifyError::MissingNextEigenvalue {
            len: spectrum.len(),
            next: m + 1,
        });
    }
    Ok(spectrum.values()[m])
}

/// Checks one member of the inequality family at exponent `p` against the
/// actual `lambda_{m+1}` stored in the spectrum:
///
/// ```text
/// slack = K(p) sum_i (lambda_{m+1} - lambda_i)^(p-1) w(lambda_i)
///       -      sum_i (lambda_{m+1} - lambda_i)^p .
/// ```
pub fn check_family_inequality(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
    p: f64,
) -> Result<CheckReport, VerifyError> {
    family_inequality_with_tol(profile, spectrum, m, p, 1e-10)
}

fn family_inequality_with_tol(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
    p: f64,
    tol_rel: f64,
) -> Result<CheckReport, VerifyError> {
    let next = next_eigenvalue(spectrum, m)?;
    let k = profile.coefficient(p);
    let mut lhs = KahanSum::new();
    let mut rhs = KahanSum::new();
    for &lambda in spectrum.prefix(m)? {
        let gap = next - lambda;
        lhs.add(gap.powf(p));
        let w = profile.weight(lambda);
        if w != 0.0 {
            rhs.add(gap.powf(p - 1.0) * w);
        }
    }
    let lhs = lhs.value();
    let rhs = k * rhs.value();
    let slack = rhs - lhs;
    let scale = lhs.abs() + rhs.abs();
    Ok(CheckReport::new(
        format!("family_inequality(p={p})"),
        slack,
        tol_rel * scale,
        json!({ "p": p, "lhs": lhs, "rhs": rhs }),
        digest(profile, spectrum, m),
    ))
}

/// Tabulated nonnegative, nondecreasing multiplier `g(lambda_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneFunctionTable {
    points: Vec<(f64, f64)>,
}

impl MonotoneFunctionTable {
    pub fn from_points(points: Vec<(f64, f64)>) -> Result<Self, VerifyError> {
        for (i, &(lambda, g)) in points.iter().enumerate() {
            if !lambda.is_finite() || !g.is_finite() {
                return Err(VerifyError::GNotFinite { index: i });
            }
            if g < 0.0 {
                return Err(VerifyError::GNegative { index: i, value: g });
            }
            if i > 0 && g < points[i - 1].1 {
                return Err(VerifyError::GNotMonotone { index: i });
            }
        }
        Ok(Self { points })
    }

    /// Tabulates `f` at the first `m` eigenvalues of the spectrum.
    pub fn tabulate(
        spectrum: &Spectrum,
        m: usize,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self, VerifyError> {
        let points = spectrum
            .prefix(m)?
            .iter()
            .map(|&lambda| (lambda, f(lambda)))
            .collect();
        Self::from_points(points)
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }
}

/// Checks the monotone-multiplier inequality (the `g`-weighted quadratic
/// form of the family): with the profile reduction the statement becomes
///
/// ```text
/// sum_i (lambda_{m+1} - lambda_i)^2 g(lambda_i)
///   <= sum_i (lambda_{m+1} - lambda_i) g(lambda_i) c w(lambda_i) .
/// ```
///
/// With `g == 1` this is exactly the family inequality at `p = 2`.
pub fn check_monotone_multiplier(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
    g: &MonotoneFunctionTable,
) -> Result<CheckReport, VerifyError> {
    monotone_multiplier_with_tol(profile, spectrum, m, g, 1e-10)
}

fn monotone_multiplier_with_tol(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
    g: &MonotoneFunctionTable,
    tol_rel: f64,
) -> Result<CheckReport, VerifyError> {
    let next = next_eigenvalue(spectrum, m)?;
    let prefix = spectrum.prefix(m)?;
    if g.points.len() != m {
        return Err(VerifyError::TableMismatch {
            reason: format!("table has {} points, prefix has {m}", g.points.len()),
        });
    }
    for (i, (&lambda, &(table_lambda, _))) in prefix.iter().zip(g.points.iter()).enumerate() {
        if table_lambda != lambda {
            return Err(VerifyError::TableMismatch {
                reason: format!("point {i} tabulated at {table_lambda}, eigenvalue is {lambda}"),
            });
        }
    }

    let mut lhs = KahanSum::new();
    let mut rhs = KahanSum::new();
    for (&lambda, &(_, gi)) in prefix.iter().zip(g.points.iter()) {
        let gap = next - lambda;
        lhs.add(gap * gap * gi);
        rhs.add(gap * gi * profile.c * profile.weight(lambda));
    }
    let lhs = lhs.value();
    let rhs = rhs.value();
    let slack = rhs - lhs;
    let scale = lhs.abs() + rhs.abs();
    Ok(CheckReport::new(
        "monotone_multiplier_inequality",
        slack,
        tol_rel * scale,
        json!({ "m": m, "lhs": lhs, "rhs": rhs }),
        digest(profile, spectrum, m),
    ))
}

/// Samples the mean-slope condition
///
/// ```text
/// (f(x) - f(y))/(x - y) >= (r(x) + r(y))/2 ,   r = f' ,
/// ```
///
/// over all pairs of the given sample points and reports the minimal
/// slack with its witness pair. A function whose derivative is concave
/// satisfies it; a convex derivative produces negative slack somewhere.
pub fn check_h1(
    f: impl Fn(f64) -> f64,
    f_prime: impl Fn(f64) -> f64,
    samples: &[f64],
) -> CheckReport {
    let mut min_slack = f64::INFINITY;
    let mut witness = json!(null);
    let mut deriv_scale = 0.0f64;
    for &x in samples {
        deriv_scale = deriv_scale.max(f_prime(x).abs());
    }
    for (i, &x) in samples.iter().enumerate() {
        for &y in samples.iter().skip(i + 1) {
            if x == y {
                continue;
            }
            let quotient = (f(x) - f(y)) / (x - y);
            let mean_r = 0.5 * (f_prime(x) + f_prime(y));
            let slack = quotient - mean_r;
            if slack < min_slack {
                min_slack = slack;
                witness = json!({ "x": x, "y": y, "quotient": quotient, "mean_r": mean_r });
            }
        }
    }
    if !min_slack.is_finite() && witness.is_null() {
        // Fewer than two distinct samples: vacuously true.
        min_slack = 0.0;
    }
    CheckReport::new(
        "h1_mean_slope",
        min_slack,
        1e-10 * deriv_scale.max(1.0),
        witness,
        format!("samples={}", samples.len()),
    )
}

// Lanczos coefficients (g = 10.900511), good to ~1e-14 relative over the
// positive axis.
const LANCZOS_R: f64 = 10.900511;
#[allow(clippy::excessive_precision)]
const LANCZOS_DK: [f64; 11] = [
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];
const LN_2_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// `ln Gamma(x)` for `x > 0` by the Lanczos approximation.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        let s = LANCZOS_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_DK[0], |s, (i, &d)| s + d / (i as f64 - x));
        LN_PI
            - (std::f64::consts::PI * x).sin().ln()
            - s.ln()
            - LN_2_SQRT_E_OVER_PI
            - (0.5 - x) * ((0.5 - x + LANCZOS_R) / std::f64::consts::E).ln()
    } else {
        let s = LANCZOS_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_DK[0], |s, (i, &d)| s + d / (x + i as f64 - 1.0));
        s.ln() + LN_2_SQRT_E_OVER_PI + (x - 0.5) * ((x - 0.5 + LANCZOS_R) / std::f64::consts::E).ln()
    }
}

/// Euler beta function `B(s, t) = Gamma(s) Gamma(t) / Gamma(s + t)`,
/// evaluated as `exp(lnG(s) + lnG(t) - lnG(s+t))` to avoid overflow.
pub fn beta_function(s: f64, t: f64) -> Result<f64, VerifyError> {
    if !(s > 0.0) || !(t > 0.0) || !s.is_finite() || !t.is_finite() {
        return Err(VerifyError::DomainError { s, t });
    }
    Ok((ln_gamma(s) + ln_gamma(t) - ln_gamma(s + t)).exp())
}

/// Adaptive Simpson quadrature with Richardson correction. `eps` is the
/// absolute per-panel error target. Panels still unresolved at depth 40
/// contribute their Richardson residual to an accumulated error estimate
/// (integrable endpoint singularities land here: the offending panel
/// width, and with it the true error, shrinks geometrically). The result
/// is non-convergent only if that accumulated estimate exceeds
/// `err_budget`.
fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    eps: f64,
    err_budget: f64,
) -> Result<f64, VerifyError> {
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        eps: f64,
        depth: u32,
        err_accum: &mut f64,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * eps || depth == 0 {
            if delta.abs() > 15.0 * eps {
                *err_accum += delta.abs() / 15.0;
            }
            return left + right + delta / 15.0;
        }
        let half_eps = 0.5 * eps;
        recurse(f, a, m, fa, flm, fm, left, half_eps, depth - 1, err_accum)
            + recurse(f, m, b, fm, frm, fb, right, half_eps, depth - 1, err_accum)
    }

    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut err_accum = 0.0;
    let value = recurse(f, a, b, fa, fm, fb, whole, eps, 40, &mut err_accum);
    if err_accum > err_budget {
        return Err(VerifyError::QuadratureNonConvergence);
    }
    Ok(value)
}

/// Verifies the beta-integral identity behind the exponent-lifting trick:
///
/// ```text
/// int_0^inf (g - r)_+^alpha r^(p-3) dr = g^(alpha+p-2) B(p-2, alpha+1) ,
/// ```
///
/// comparing adaptive quadrature of the left side (supported on `[0, g]`)
/// against the closed form. For `2 < p < 3` the endpoint factor `r^(p-3)`
/// is an integrable singularity, removed exactly by the substitution
/// `r = u^(1/(p-2))`; for `p >= 3` the integrand is regular and is
/// integrated directly.
pub fn aizenman_lieb_identity(gap: f64, alpha: f64, p: f64) -> Result<CheckReport, VerifyError> {
    aizenman_lieb_with_tol(gap, alpha, p, 1e-8)
}

fn aizenman_lieb_with_tol(
    gap: f64,
    alpha: f64,
    p: f64,
    tol: f64,
) -> Result<CheckReport, VerifyError> {
    if !(p > 2.0) || !(alpha > -1.0) || !(gap > 0.0) {
        return Err(VerifyError::BadParameter {
            reason: format!("need p > 2, alpha > -1, gap > 0; got p={p}, alpha={alpha}, gap={gap}"),
        });
    }
    let closed = gap.powf(alpha + p - 2.0) * beta_function(p - 2.0, alpha + 1.0)?;
    let eps = 1e-13 * closed.abs().max(f64::MIN_POSITIVE);
    let budget = 1e-10 * closed.abs().max(f64::MIN_POSITIVE);

    let quadrature = if p < 3.0 {
        // r = u^(1/(p-2)) turns (g-r)^alpha r^(p-3) dr into
        // (1/(p-2)) (g - u^(1/(p-2)))^alpha du on [0, g^(p-2)].
        let inv = 1.0 / (p - 2.0);
        let integrand = move |u: f64| (gap - u.powf(inv)).max(0.0).powf(alpha) * inv;
        adaptive_simpson(&integrand, 0.0, gap.powf(p - 2.0), eps, budget)?
    } else {
        let integrand = move |r: f64| (gap - r).max(0.0).powf(alpha) * r.powf(p - 3.0);
        adaptive_simpson(&integrand, 0.0, gap, eps, budget)?
    };

    let rel_diff = (quadrature - closed).abs() / closed.abs();
    Ok(CheckReport::new(
        "aizenman_lieb_identity",
        tol - rel_diff,
        tol,
        json!({ "p": p, "alpha": alpha, "gap": gap,
                "quadrature": quadrature, "closed_form": closed }),
        format!("p={p};alpha={alpha};gap={gap}"),
    ))
}

/// Asserts the two monotonicity statements of the family on grids of
/// exponents: `sigma_p` nonincreasing on `low_grid` (within `[0, 2]`) and
/// `sigma_tilde_p` nondecreasing on `high_grid` (`p >= 2`). The slack is
/// the minimal consecutive difference in the asserted direction.
pub fn monotonicity_report(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
    low_grid: &[f64],
    high_grid: &[f64],
) -> Result<CheckReport, VerifyError> {
    monotonicity_with_tol(profile, spectrum, m, low_grid, high_grid, 1e-9)
}

fn monotonicity_with_tol(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
    low_grid: &[f64],
    high_grid: &[f64],
    tol_rel: f64,
) -> Result<CheckReport, VerifyError> {
    let lows: Vec<f64> = low_grid
        .iter()
        .map(|&p| sigma_p(profile, spectrum, m, p).map(|r| r.value))
        .collect::<Result<_, _>>()?;
    let highs: Vec<f64> = high_grid
        .iter()
        .map(|&p| sigma_tilde_p(profile, spectrum, m, p).map(|r| r.value))
        .collect::<Result<_, _>>()?;

    let mut min_slack = f64::INFINITY;
    let mut witness = json!(null);
    let mut scale = 0.0f64;
    for v in lows.iter().chain(highs.iter()) {
        scale = scale.max(v.abs());
    }
    for i in 0..lows.len().saturating_sub(1) {
        let slack = lows[i] - lows[i + 1]; // nonincreasing
        if slack < min_slack {
            min_slack = slack;
            witness = json!({ "regime": "low", "pair": [low_grid[i], low_grid[i + 1]],
                              "values": [lows[i], lows[i + 1]] });
        }
    }
    for i in 0..highs.len().saturating_sub(1) {
        let slack = highs[i + 1] - highs[i]; // nondecreasing
        if slack < min_slack {
            min_slack = slack;
            witness = json!({ "regime": "high", "pair": [high_grid[i], high_grid[i + 1]],
                              "values": [highs[i], highs[i + 1]] });
        }
    }
    if !min_slack.is_finite() && witness.is_null() {
        min_slack = 0.0; // fewer than two points per grid
    }
    Ok(CheckReport::new(
        "sigma_monotonicity",
        min_slack,
        tol_rel * scale.max(1e-300),
        witness,
        digest(profile, spectrum, m),
    ))
}

fn chebyshev_trial(rng: &mut ChaCha8Rng, len: usize, opposite: bool) -> (f64, f64) {
    let w: Vec<f64> = (0..len).map(|_| rng.gen_range(0.0..1.0)).collect();
    let mut a: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut b: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
    a.sort_by(f64::total_cmp);
    if opposite {
        b.sort_by(|x, y| f64::total_cmp(y, x));
    } else {
        b.sort_by(f64::total_cmp);
    }
    let gap = chebyshev_gap(&w, &a, &b).expect("equal lengths");
    let sw: f64 = w.iter().sum();
    let swab: f64 = w.iter().zip(a.iter().zip(b.iter())).map(|(w, (a, b))| w * (a * b).abs()).sum();
    let swa: f64 = w.iter().zip(a.iter()).map(|(w, a)| w * a.abs()).sum();
    let swb: f64 = w.iter().zip(b.iter()).map(|(w, b)| w * b.abs()).sum();
    (gap, sw * swab + swa * swb)
}

/// Seeded random trials of the reverse Chebyshev inequality: nonnegative
/// weights against oppositely ordered sequences. Reports the minimal
/// slack `-gap` (the lemma asserts `gap <= 0`).
pub fn chebyshev_report(trials: usize, len: usize, seed: u64) -> CheckReport {
    chebyshev_with_tol(trials, len, seed, 1e-12)
}

fn chebyshev_with_tol(trials: usize, len: usize, seed: u64, tol_rel: f64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_slack = f64::INFINITY;
    let mut max_scale = 0.0f64;
    let mut witness = json!(null);
    for trial in 0..trials {
        let (gap, scale) = chebyshev_trial(&mut rng, len, true);
        max_scale = max_scale.max(scale);
        let slack = -gap;
        if slack < min_slack {
            min_slack = slack;
            witness = json!({ "trial": trial, "gap": gap });
        }
    }
    if trials == 0 {
        min_slack = 0.0;
    }
    CheckReport::new(
        "chebyshev_reverse",
        min_slack,
        tol_rel * max_scale.max(1e-300),
        witness,
        format!("trials={trials};len={len};seed={seed}"),
    )
}

/// Configuration of the full verification suite.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Exponents for the family-inequality checks.
    pub p_values: Vec<f64>,
    /// Reverse-Chebyshev random trials and sequence length.
    pub trials: usize,
    pub trial_len: usize,
    pub seed: u64,
    /// Number of random (p, alpha, gap) triples for the beta-integral batch.
    pub al_triples: usize,
    /// Replaces every check's default relative tolerance when set.
    pub tol: Option<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            p_values: vec![0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0],
            trials: 10_000,
            trial_len: 8,
            seed: 0,
            al_triples: 50,
            tol: None,
        }
    }
}

const LOW_GRID: [f64; 5] = [0.0, 0.5, 1.0, 1.5, 2.0];
const HIGH_GRID: [f64; 5] = [2.0, 2.5, 3.0, 4.0, 6.0];

/// Runs the whole check suite on one (profile, spectrum, m) triple:
/// family inequalities over the configured exponents, the monotone-g
/// form, the mean-slope condition, both monotonicity directions, the
/// reverse Chebyshev trials, the beta-integral batch, and the beta-ratio
/// identities. Reports come back in a fixed order.
pub fn run_suite(
    profile: &BoundProfile,
    spectrum: &Spectrum,
    m: usize,
    cfg: &SuiteConfig,
) -> Result<Vec<CheckReport>, VerifyError> {
    let mut reports = Vec::new();
    let family_tol = cfg.tol.unwrap_or(1e-10);
    for &p in &cfg.p_values {
        reports.push(family_inequality_with_tol(profile, spectrum, m, p, family_tol)?);
    }

    let g_const = MonotoneFunctionTable::tabulate(spectrum, m, |_| 1.0)?;
    reports.push(monotone_multiplier_with_tol(
        profile,
        spectrum,
        m,
        &g_const,
        cfg.tol.unwrap_or(1e-10),
    )?);

    // Mean-slope condition for f(x) = (lambda_{m+1} - x)^3, whose
    // derivative is concave.
    let next = next_eigenvalue(spectrum, m)?;
    if next > 0.0 {
        let f = move |x: f64| (next - x).powi(3);
        let fp = move |x: f64| -3.0 * (next - x).powi(2);
        let samples: Vec<f64> = (0..25)
            .map(|i| next * (0.02 + 0.96 * i as f64 / 24.0))
            .collect();
        reports.push(check_h1(f, fp, &samples));
    }

    reports.push(monotonicity_with_tol(
        profile,
        spectrum,
        m,
        &LOW_GRID,
        &HIGH_GRID,
        cfg.tol.unwrap_or(1e-9),
    )?);

    reports.push(chebyshev_with_tol(
        cfg.trials,
        cfg.trial_len,
        cfg.seed,
        cfg.tol.unwrap_or(1e-12),
    ));

    // Seeded random beta-integral triples on a stream separate from the
    // Chebyshev trials.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(1);
    let al_tol = cfg.tol.unwrap_or(1e-8);
    let mut worst: Option<CheckReport> = None;
    for _ in 0..cfg.al_triples {
        // p in (2, 8], alpha in (0, p], bounded away from the p = 2
        // degeneracy where the substituted integrand develops a boundary
        // layer of relative width p - 2.
        let p = 2.0 + rng.gen_range(0.01f64..6.0);
        let alpha = p * rng.gen_range(0.05f64..1.0);
        let gap = rng.gen_range(0.1f64..5.0);
        let report = aizenman_lieb_with_tol(gap, alpha, p, al_tol)?;
        if worst.as_ref().is_none_or(|w| report.slack < w.slack) {
            worst = Some(report);
        }
    }
    if let Some(mut w) = worst {
        w.check = format!("aizenman_lieb_batch(n={})", cfg.al_triples);
        w.inputs = format!("triples={};seed={}", cfg.al_triples, cfg.seed);
        reports.push(w);
    }

    reports.push(beta_ratio_report(cfg.tol.unwrap_or(1e-12))?);
    Ok(reports)
}

/// Closed-form ratio identities of the beta function used by the
/// exponent-lifting argument: `B(s,2)/B(s,3) = (s+2)/2` and
/// `B(q-p,p)/B(q-p,p+1) = q/p`.
pub fn beta_ratio_report(tol: f64) -> Result<CheckReport, VerifyError> {
    let mut max_rel = 0.0f64;
    let mut witness = json!(null);
    for &s in &[0.5, 1.0, 2.0, 5.0] {
        let ratio = beta_function(s, 2.0)? / beta_function(s, 3.0)?;
        let expected = (s + 2.0) / 2.0;
        let rel = (ratio - expected).abs() / expected;
        if rel > max_rel {
            max_rel = rel;
            witness = json!({ "identity": "B(s,2)/B(s,3)", "s": s });
        }
    }
    for &(q, p) in &[(3.0, 2.5), (4.0, 3.0), (6.0, 2.2), (5.5, 4.5)] {
        let ratio = beta_function(q - p, p)? / beta_function(q - p, p + 1.0)?;
        let expected = q / p;
        let rel = (ratio - expected).abs() / expected;
        if rel > max_rel {
            max_rel = rel;
            witness = json!({ "identity": "B(q-p,p)/B(q-p,p+1)", "q": q, "p": p });
        }
    }
    Ok(CheckReport::new(
        "beta_ratio_identities",
        tol - max_rel,
        tol,
        witness,
        "s in {0.5,1,2,5}; (q,p) samples".to_string(),
    ))
}
