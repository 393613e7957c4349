//! Test-spectrum generators with known ground truth.
//!
//! Analytic box eigenvalues, finite-difference Dirichlet Laplacians in 1D
//! and 2D, Sturm-Liouville and inhomogeneous-membrane discretizations.
//! Everything reduces to a symmetric tridiagonal eigenproblem solved by
//! Sturm-sequence bisection: the count of negative pivots in the shifted
//! LDLT recurrence equals the count of eigenvalues below the shift, so
//! each eigenvalue is certified by index while it is located.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spectra::{IndexOrigin, Spectrum, SpectrumError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("box sides must be positive and finite, got {value}")]
    NonPositiveSide { value: f64 },

    #[error("requested eigenvalue count must be at least 1")]
    ZeroCount,

    #[error("requested {requested} eigenvalues but only {available} modes exist")]
    CountTooLarge { requested: usize, available: usize },

    #[error("coefficient p must be positive on the grid: p({x}) = {value}")]
    NonPositiveP { x: f64, value: f64 },

    #[error("density must be positive on the grid: q({x}) = {value}")]
    NonPositiveDensity { x: f64, value: f64 },

    #[error("interval must satisfy a < b, got ({0}, {1})")]
    BadInterval(f64, f64),

    #[error("grid must have at least {min} interior points, got {grid}")]
    GridTooSmall { grid: usize, min: usize },

    #[error("off-diagonal length {offdiag} does not match diagonal length {diag}")]
    ShapeMismatch { diag: usize, offdiag: usize },

    #[error("matrix entries must be finite")]
    NonFiniteEntry,

    #[error("closed form and Sturm bisection disagree at mode {index}: {closed_form} vs {bisected}")]
    CrossCheckFailed {
        index: usize,
        closed_form: f64,
        bisected: f64,
    },

    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Named coefficient functions for file- and flag-driven generation.
/// String forms: `const:<v>`, `affine:<a>,<b>` (a + b*x), and
/// `poly:<c0>,<c1>,...` (ascending powers). No arbitrary code execution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum CoeffFn {
    Const(f64),
    Affine(f64, f64),
    Poly(Vec<f64>),
}

impl CoeffFn {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            CoeffFn::Const(v) => *v,
            CoeffFn::Affine(a, b) => a + b * x,
            CoeffFn::Poly(coeffs) => coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("invalid coefficient function {input:?}: expected const:<v>, affine:<a>,<b> or poly:<c0>,<c1>,...")]
pub struct CoeffFnParseError {
    input: String,
}

impl FromStr for CoeffFn {
    type Err = CoeffFnParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CoeffFnParseError {
            input: s.to_string(),
        };
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let values: Result<Vec<f64>, _> = args.split(',').map(|t| t.trim().parse::<f64>()).collect();
        let values = values.map_err(|_| bad())?;
        match (kind, values.as_slice()) {
            ("const", [v]) => Ok(CoeffFn::Const(*v)),
            ("affine", [a, b]) => Ok(CoeffFn::Affine(*a, *b)),
            ("poly", coeffs) if !coeffs.is_empty() => Ok(CoeffFn::Poly(coeffs.to_vec())),
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for CoeffFn {
    type Error = CoeffFnParseError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<CoeffFn> for String {
    fn from(f: CoeffFn) -> String {
        f.to_string()
    }
}

impl std::fmt::Display for CoeffFn {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoeffFn::Const(v) => write!(out, "const:{v}"),
            CoeffFn::Affine(a, b) => write!(out, "affine:{a},{b}"),
            CoeffFn::Poly(coeffs) => {
                write!(out, "poly:")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(out, ",")?;
                    }
                    write!(out, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

/// Symmetric tridiagonal matrix given by its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self, GeneratorError> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(GeneratorError::ShapeMismatch {
                diag: diag.len(),
                offdiag: offdiag.len(),
            });
        }
        if diag.iter().chain(offdiag.iter()).any(|v| !v.is_finite()) {
            return Err(GeneratorError::NonFiniteEntry);
        }
        Ok(Self { diag, offdiag })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Number of eigenvalues below `x`, equal to the number of
    /// nonpositive pivots of the shifted LDLT recurrence
    /// `d_i = (diag_i - x) - offdiag_{i-1}^2 / d_{i-1}`.
    ///
    /// Pivots inside `(-pivmin, pivmin)` are clamped to `-pivmin` with
    /// `pivmin = safemin * max(offdiag^2)`, which keeps the following
    /// division finite; a naive tiny replacement overflows the quotient
    /// to infinity and breaks the monotonicity of the count exactly when
    /// a bisection midpoint lands on a pivot value.
    pub fn sturm_count(&self, x: f64) -> usize {
        let max_e2 = self
            .offdiag
            .iter()
            .fold(0.0f64, |m, e| m.max(e * e))
            .max(1.0);
        let pivmin = f64::MIN_POSITIVE * max_e2;
        let mut count = 0;
        let mut d = self.diag[0] - x;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d <= 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let e = self.offdiag[i - 1];
            d = (self.diag[i] - x) - e * e / d;
            if d.abs() < pivmin {
                d = -pivmin;
            }
            if d <= 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Interval certain to contain the whole spectrum, from Gershgorin
    /// discs widened by a few ulps so the count at the upper end is `n`
    /// even when an eigenvalue sits exactly on a disc boundary.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.n();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i < n - 1 { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        let pad = 1e-12 * (hi - lo).abs() + 8.0 * f64::EPSILON * hi.abs().max(lo.abs()).max(1.0);
        (lo - pad, hi + pad)
    }
}

/// The `count` smallest eigenvalues by Sturm-sequence bisection, in
/// nondecreasing order. Each bisection runs to floating-point interval
/// exhaustion (well past 1e-13 of the spectral width), which preserves
/// high relative accuracy on eigenvalues much smaller than the width.
pub fn tridiag_eigenvalues(
    t: &TridiagonalMatrix,
    count: usize,
) -> Result<Vec<f64>, GeneratorError> {
    if count == 0 {
        return Err(GeneratorError::ZeroCount);
    }
    if count > t.n() {
        return Err(GeneratorError::CountTooLarge {
            requested: count,
            available: t.n(),
        });
    }
    let (lo, hi) = t.gershgorin_bounds();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let (mut a, mut b) = (lo, hi);
        loop {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if t.sturm_count(mid) <= k {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Smallest `count` Dirichlet eigenvalues of a rectangular box with the
/// given side lengths: `pi^2 * sum_j (k_j / a_j)^2` over positive integer
/// lattice points, sorted with multiplicity. The lattice is enumerated
/// under an energy cutoff grown geometrically until at least `count`
/// values lie strictly below the previous cutoff, so no low mode is
/// missed.
pub fn box_spectrum(sides: &[f64], count: usize) -> Result<Spectrum, GeneratorError> {
    if count == 0 {
        return Err(GeneratorError::ZeroCount);
    }
    if sides.is_empty() {
        return Err(GeneratorError::NonPositiveSide { value: f64::NAN });
    }
    for &a in sides {
        if !(a > 0.0) || !a.is_finite() {
            return Err(GeneratorError::NonPositiveSide { value: a });
        }
    }

    fn lattice(sides: &[f64], cutoff: f64, partial: f64, out: &mut Vec<f64>) {
        let a = sides[0];
        let rest = &sides[1..];
        let mut k = 1.0f64;
        loop {
            let v = partial + (k / a) * (k / a);
            if v > cutoff {
                break;
            }
            if rest.is_empty() {
                out.push(v);
            } else {
                lattice(rest, cutoff, v, out);
            }
            k += 1.0;
        }
    }

    // Work in units of sum (k_j/a_j)^2; multiply by pi^2 at the end.
    let ground: f64 = sides.iter().map(|a| 1.0 / (a * a)).sum();
    let mut cutoff = 2.0 * ground;
    let mut values = Vec::new();
    for _ in 0..70 {
        values.clear();
        lattice(sides, cutoff, 0.0, &mut values);
        let prev = cutoff / 2.0;
        if values.iter().filter(|&&v| v < prev).count() >= count {
            break;
        }
        cutoff *= 2.0;
    }
    values.sort_by(f64::total_cmp);
    values.truncate(count);
    let eigenvalues = values.into_iter().map(|v| PI * PI * v).collect();
    Ok(Spectrum::new(eigenvalues, IndexOrigin::One)?)
}

/// Closed-form eigenvalues of the 1D finite-difference Dirichlet Laplacian
/// on `(0, L)` with `n` interior points:
/// `(2/h^2)(1 - cos(k pi/(n+1))) = (4/h^2) sin^2(k pi / (2(n+1)))`,
/// `h = L/(n+1)`. The `sin^2` form keeps full relative accuracy for the
/// low modes.
fn fd_1d_eigenvalue(length: f64, n: usize, k: usize) -> f64 {
    let h = length / (n + 1) as f64;
    let s = (k as f64 * PI / (2.0 * (n + 1) as f64)).sin();
    4.0 / (h * h) * s * s
}

/// The smallest `count` eigenvalues of the 1D FD Dirichlet Laplacian,
/// computed in closed form and cross-checked against the Sturm-sequence
/// eigensolver to 1e-10 relative.
pub fn fd_laplacian_1d(
    length: f64,
    grid: usize,
    count: usize,
) -> Result<Spectrum, GeneratorError> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(GeneratorError::NonPositiveSide { value: length });
    }
    if grid == 0 {
        return Err(GeneratorError::GridTooSmall { grid, min: 1 });
    }
    if count == 0 {
        return Err(GeneratorError::ZeroCount);
    }
    if count > grid {
        return Err(GeneratorError::CountTooLarge {
            requested: count,
            available: grid,
        });
    }
    let closed: Vec<f64> = (1..=count).map(|k| fd_1d_eigenvalue(length, grid, k)).collect();

    let h = length / (grid + 1) as f64;
    let t = TridiagonalMatrix::new(vec![2.0 / (h * h); grid], vec![-1.0 / (h * h); grid - 1])?;
    let bisected = tridiag_eigenvalues(&t, count)?;
    for (i, (&cf, &bi)) in closed.iter().zip(bisected.iter()).enumerate() {
        if (cf - bi).abs() > 1e-10 * cf.abs() {
            return Err(GeneratorError::CrossCheckFailed {
                index: i + 1,
                closed_form: cf,
                bisected: bi,
            });
        }
    }
    Ok(Spectrum::new(closed, IndexOrigin::One)?)
}

#[derive(Debug, PartialEq)]
struct HeapEntry {
    value: f64,
    j: usize,
    k: usize,
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed: BinaryHeap is a max-heap, we pop the smallest sum.
        other.value.total_cmp(&self.value)
    }
}

/// Smallest `count` eigenvalues of the 2D FD Dirichlet Laplacian on a
/// rectangle, using the Kronecker-sum structure: every eigenvalue is
/// `mu_j + nu_k` for 1D eigenvalues `mu` (x direction) and `nu` (y
/// direction). The smallest sums are merged with a bounded heap.
pub fn fd_laplacian_2d_kronecker(
    lx: f64,
    ly: f64,
    nx: usize,
    ny: usize,
    count: usize,
) -> Result<Spectrum, GeneratorError> {
    for &l in &[lx, ly] {
        if !(l > 0.0) || !l.is_finite() {
            return Err(GeneratorError::NonPositiveSide { value: l });
        }
    }
    if nx == 0 || ny == 0 {
        return Err(GeneratorError::GridTooSmall { grid: nx.min(ny), min: 1 });
    }
    if count == 0 {
        return Err(GeneratorError::ZeroCount);
    }
    if count > nx * ny {
        return Err(GeneratorError::CountTooLarge {
            requested: count,
            available: nx * ny,
        });
    }

    let mu: Vec<f64> = (1..=nx).map(|k| fd_1d_eigenvalue(lx, nx, k)).collect();
    let nu: Vec<f64> = (1..=ny).map(|k| fd_1d_eigenvalue(ly, ny, k)).collect();

    // Frontier enumeration: (j, k+1) is pushed always, (j+1, k) only from
    // k = 0, so every lattice pair enters the heap exactly once.
    let mut heap = BinaryHeap::new();
    heap.push(HeapEntry {
        value: mu[0] + nu[0],
        j: 0,
        k: 0,
    });
    let mut values = Vec::with_capacity(count);
    while values.len() < count {
        let top = heap.pop().expect("heap cannot empty before count is reached");
        values.push(top.value);
        if top.k + 1 < ny {
            heap.push(HeapEntry {
                value: mu[top.j] + nu[top.k + 1],
                j: top.j,
                k: top.k + 1,
            });
        }
        if top.k == 0 && top.j + 1 < nx {
            heap.push(HeapEntry {
                value: mu[top.j + 1] + nu[0],
                j: top.j + 1,
                k: 0,
            });
        }
    }
    Ok(Spectrum::new(values, IndexOrigin::One)?)
}

/// FD discretization of the Sturm-Liouville problem
/// `-(p u')' + q u = lambda u` on `(a, b)` with Dirichlet ends:
/// midpoint-sampled `p` keeps the stencil symmetric and second order,
///
/// ```text
/// diag_j = (p_{j-1/2} + p_{j+1/2})/h^2 + q_j ,
/// off_j  = -p_{j+1/2}/h^2 .
/// ```
pub fn sturm_liouville_fd(
    p_fn: impl Fn(f64) -> f64,
    q_fn: impl Fn(f64) -> f64,
    interval: (f64, f64),
    grid: usize,
    count: usize,
) -> Result<Spectrum, GeneratorError> {
    let (a, b) = interval;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(GeneratorError::BadInterval(a, b));
    }
    if grid == 0 {
        return Err(GeneratorError::GridTooSmall { grid, min: 1 });
    }
    if count == 0 {
        return Err(GeneratorError::ZeroCount);
    }
    if count > grid {
        return Err(GeneratorError::CountTooLarge {
            requested: count,
            available: grid,
        });
    }
    let h = (b - a) / (grid + 1) as f64;
    let h2 = h * h;

    // p at the n+1 midpoints between consecutive nodes (including the two
    // half-cells that touch the boundary).
    let mut p_mid = Vec::with_capacity(grid + 1);
    for j in 0..=grid {
        let x = a + (j as f64 + 0.5) * h;
        let p = p_fn(x);
        if !(p > 0.0) {
            return Err(GeneratorError::NonPositiveP { x, value: p });
        }
        p_mid.push(p);
    }

    let mut diag = Vec::with_capacity(grid);
    for j in 1..=grid {
        let x = a + j as f64 * h;
        diag.push((p_mid[j - 1] + p_mid[j]) / h2 + q_fn(x));
    }
    let offdiag: Vec<f64> = (1..grid).map(|j| -p_mid[j] / h2).collect();

    let t = TridiagonalMatrix::new(diag, offdiag)?;
    let values = tridiag_eigenvalues(&t, count)?;
    Ok(Spectrum::with_tolerance(values, IndexOrigin::One, 0.0)?)
}

/// FD discretization of the inhomogeneous membrane `-u'' = lambda q(x) u`
/// on an interval: the generalized problem `A u = lambda D u` is reduced
/// to the standard symmetric form `D^{-1/2} A D^{-1/2}` (same spectrum)
/// before Sturm bisection.
pub fn inhomogeneous_fd_1d(
    density: impl Fn(f64) -> f64,
    interval: (f64, f64),
    grid: usize,
    count: usize,
) -> Result<Spectrum, GeneratorError> {
    let (a, b) = interval;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(GeneratorError::BadInterval(a, b));
    }
    if grid == 0 {
        return Err(GeneratorError::GridTooSmall { grid, min: 1 });
    }
    if count == 0 {
        return Err(GeneratorError::ZeroCount);
    }
    if count > grid {
        return Err(GeneratorError::CountTooLarge {
            requested: count,
            available: grid,
        });
    }
    let h = (b - a) / (grid + 1) as f64;
    let h2 = h * h;

    let mut q = Vec::with_capacity(grid);
    for j in 1..=grid {
        let x = a + j as f64 * h;
        let v = density(x);
        if !(v > 0.0) {
            return Err(GeneratorError::NonPositiveDensity { x, value: v });
        }
        q.push(v);
    }

    let diag: Vec<f64> = q.iter().map(|&qi| 2.0 / h2 / qi).collect();
    let offdiag: Vec<f64> = (0..grid - 1)
        .map(|j| -1.0 / h2 / (q[j] * q[j + 1]).sqrt())
        .collect();

    let t = TridiagonalMatrix::new(diag, offdiag)?;
    let values = tridiag_eigenvalues(&t, count)?;
    Ok(Spectrum::with_tolerance(values, IndexOrigin::One, 0.0)?)
}

/// Serializable description of a spectrum generator, the file interface
/// behind `generate`. Coefficient functions are named built-ins only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum SpectrumSource {
    #[serde(rename = "box_analytic")]
    BoxAnalytic { sides: Vec<f64>, count: usize },

    #[serde(rename = "fd_1d")]
    Fd1d {
        length: f64,
        grid: usize,
        count: usize,
    },

    #[serde(rename = "fd_2d_kronecker")]
    Fd2dKronecker {
        lx: f64,
        ly: f64,
        nx: usize,
        ny: usize,
        count: usize,
    },

    #[serde(rename = "sturm_liouville_fd")]
    SturmLiouvilleFd {
        p: CoeffFn,
        q: CoeffFn,
        interval: (f64, f64),
        grid: usize,
        count: usize,
    },

    #[serde(rename = "inhomogeneous_fd_1d")]
    InhomogeneousFd1d {
        density: CoeffFn,
        interval: (f64, f64),
        grid: usize,
        count: usize,
    },
}

impl SpectrumSource {
    /// Number of eigenvalues this source is configured to produce.
    pub fn count(&self) -> usize {
        match self {
            SpectrumSource::BoxAnalytic { count, .. }
            | SpectrumSource::Fd1d { count, .. }
            | SpectrumSource::Fd2dKronecker { count, .. }
            | SpectrumSource::SturmLiouvilleFd { count, .. }
            | SpectrumSource::InhomogeneousFd1d { count, .. } => *count,
        }
    }

    pub fn generate(&self) -> Result<Spectrum, GeneratorError> {
        fn check_grid(grid: usize) -> Result<(), GeneratorError> {
            if grid < 3 {
                Err(GeneratorError::GridTooSmall { grid, min: 3 })
            } else {
                Ok(())
            }
        }
        match self {
            SpectrumSource::BoxAnalytic { sides, count } => box_spectrum(sides, *count),
            SpectrumSource::Fd1d {
                length,
                grid,
                count,
            } => {
                check_grid(*grid)?;
                fd_laplacian_1d(*length, *grid, *count)
            }
            SpectrumSource::Fd2dKronecker {
                lx,
                ly,
                nx,
                ny,
                count,
            } => {
                check_grid(*nx.min(ny))?;
                fd_laplacian_2d_kronecker(*lx, *ly, *nx, *ny, *count)
            }
            SpectrumSource::SturmLiouvilleFd {
                p,
                q,
                interval,
                grid,
                count,
            } => {
                check_grid(*grid)?;
                sturm_liouville_fd(|x| p.eval(x), |x| q.eval(x), *interval, *grid, *count)
            }
            SpectrumSource::InhomogeneousFd1d {
                density,
                interval,
                grid,
                count,
            } => {
                check_grid(*grid)?;
                inhomogeneous_fd_1d(|x| density.eval(x), *interval, *grid, *count)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(x: f64, reference: f64) -> f64 {
        (x - reference).abs() / reference.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn coeff_fn_parse_eval_round_trip() {
        let c: CoeffFn = "const:2.5".parse().unwrap();
        assert_eq!(c.eval(7.0), 2.5);
        let a: CoeffFn = "affine:1,0.5".parse().unwrap();
        assert_eq!(a.eval(2.0), 2.0);
        let p: CoeffFn = "poly:1,0,2".parse().unwrap();
        assert_eq!(p.eval(3.0), 19.0);
        assert_eq!(p.to_string(), "poly:1,0,2");
        assert!("spline:1".parse::<CoeffFn>().is_err());
        assert!("const:".parse::<CoeffFn>().is_err());
        assert!("affine:1".parse::<CoeffFn>().is_err());
    }

    #[test]
    fn tridiag_three_point_laplacian() {
        // diag (2,2,2), off (-1,-1): characteristic cubic
        // (2-x)^3 - 2(2-x) = 0, roots 2 - sqrt(2), 2, 2 + sqrt(2).
        let t = TridiagonalMatrix::new(vec![2.0; 3], vec![-1.0; 2]).unwrap();
        let eig = tridiag_eigenvalues(&t, 3).unwrap();
        let expected = [2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        for (e, x) in eig.iter().zip(expected.iter()) {
            assert!(rel_err(*e, *x) <= 1e-13, "{e} vs {x}");
        }
    }

    #[test]
    fn tridiag_diagonal_matrix_returns_sorted_diag() {
        let t = TridiagonalMatrix::new(vec![3.0, 1.0, 2.0], vec![0.0, 0.0]).unwrap();
        let eig = tridiag_eigenvalues(&t, 3).unwrap();
        assert!(rel_err(eig[0], 1.0) <= 1e-13);
        assert!(rel_err(eig[1], 2.0) <= 1e-13);
        assert!(rel_err(eig[2], 3.0) <= 1e-13);
    }

    #[test]
    fn tridiag_scalar_matrix() {
        let t = TridiagonalMatrix::new(vec![5.0], vec![]).unwrap();
        assert!(rel_err(tridiag_eigenvalues(&t, 1).unwrap()[0], 5.0) <= 1e-13);
    }

    #[test]
    fn sturm_count_saturates_at_gershgorin_bound() {
        let t = TridiagonalMatrix::new(vec![2.0; 40], vec![-1.0; 39]).unwrap();
        let (lo, hi) = t.gershgorin_bounds();
        assert_eq!(t.sturm_count(lo), 0);
        assert_eq!(t.sturm_count(hi), 40);
        // Diagonal matrix: an eigenvalue sits exactly on the disc boundary.
        let t = TridiagonalMatrix::new(vec![1.0, 4.0], vec![0.0]).unwrap();
        let (_, hi) = t.gershgorin_bounds();
        assert_eq!(t.sturm_count(hi), 2);
    }

    #[test]
    fn tridiag_count_too_large() {
        let t = TridiagonalMatrix::new(vec![1.0, 2.0], vec![0.5]).unwrap();
        assert!(matches!(
            tridiag_eigenvalues(&t, 3),
            Err(GeneratorError::CountTooLarge { requested: 3, available: 2 })
        ));
    }

    #[test]
    fn trace_identity_over_full_spectrum() {
        let n = 60;
        let length = 1.0;
        let h = length / (n + 1) as f64;
        let t =
            TridiagonalMatrix::new(vec![2.0 / (h * h); n], vec![-1.0 / (h * h); n - 1]).unwrap();
        let eig = tridiag_eigenvalues(&t, n).unwrap();
        let trace: f64 = t.diag().iter().sum();
        let eig_sum: f64 = eig.iter().sum();
        let max_diag = t.diag().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!((trace - eig_sum).abs() <= 1e-9 * (n as f64 * max_diag));
    }

    #[test]
    fn box_unit_square_first_modes() {
        let s = box_spectrum(&[1.0, 1.0], 3).unwrap();
        let expected = [
            2.0 * PI * PI,
            5.0 * PI * PI,
            5.0 * PI * PI, // multiplicity from (1,2) and (2,1)
        ];
        for (v, e) in s.values().iter().zip(expected.iter()) {
            assert!(rel_err(*v, *e) <= 1e-12, "{v} vs {e}");
        }
    }

    #[test]
    fn box_interval_is_quadratic_sequence() {
        let s = box_spectrum(&[1.0], 3).unwrap();
        for (k, v) in s.values().iter().enumerate() {
            let expected = ((k + 1) * (k + 1)) as f64 * PI * PI;
            assert!(rel_err(*v, expected) <= 1e-12);
        }
    }

    #[test]
    fn box_deep_count_has_no_missed_modes() {
        // Compare against a brute-force enumeration with a generous cutoff.
        let sides = [1.0, 1.6180339887];
        let s = box_spectrum(&sides, 40).unwrap();
        let mut brute = Vec::new();
        for k1 in 1..200usize {
            for k2 in 1..200usize {
                brute.push(
                    PI * PI
                        * ((k1 * k1) as f64 / (sides[0] * sides[0])
                            + (k2 * k2) as f64 / (sides[1] * sides[1])),
                );
            }
        }
        brute.sort_by(f64::total_cmp);
        for (v, e) in s.values().iter().zip(brute.iter()) {
            assert!(rel_err(*v, *e) <= 1e-12);
        }
    }

    #[test]
    fn fd_1d_ground_state_converges() {
        // L = pi, n = 99: lambda_1 = 0.99992... approaching 1.
        let s = fd_laplacian_1d(PI, 99, 1).unwrap();
        assert!(rel_err(s.values()[0], 0.999_917_756_002_418) <= 1e-12);
        assert!((s.values()[0] - 1.0).abs() < 1e-4);
    }

    #[test]
    fn fd_1d_largest_mode_formula() {
        let n = 25;
        let s = fd_laplacian_1d(1.0, n, n).unwrap();
        let h = 1.0 / (n + 1) as f64;
        let expected = 2.0 / (h * h) * (1.0 - (n as f64 * PI / (n + 1) as f64).cos());
        assert!(rel_err(s.values()[n - 1], expected) <= 1e-12);
    }

    #[test]
    fn fd_1d_richardson_factor_near_four() {
        // Error of the ground state against pi^2/L^2 must quarter when h
        // halves (n -> 2n + 1).
        let l = 2.0;
        let exact = PI * PI / (l * l);
        let n = 120;
        let e1 = (fd_laplacian_1d(l, n, 1).unwrap().values()[0] - exact).abs();
        let e2 = (fd_laplacian_1d(l, 2 * n + 1, 1).unwrap().values()[0] - exact).abs();
        let factor = e1 / e2;
        assert!((3.2..=4.8).contains(&factor), "factor {factor}");
    }

    #[test]
    fn fd_1d_first_five_modes_error_is_second_order() {
        let l = PI;
        let n = 80;
        let max_err = |n: usize| -> f64 {
            let s = fd_laplacian_1d(l, n, 5).unwrap();
            s.values()
                .iter()
                .enumerate()
                .map(|(i, v)| rel_err(*v, ((i + 1) * (i + 1)) as f64))
                .fold(0.0, f64::max)
        };
        let factor = max_err(n) / max_err(2 * n + 1);
        assert!((3.2..=4.8).contains(&factor), "factor {factor}");
    }

    #[test]
    fn fd_2d_converges_to_box_modes() {
        let s = fd_laplacian_2d_kronecker(1.0, 1.0, 200, 200, 3).unwrap();
        let expected = [2.0 * PI * PI, 5.0 * PI * PI, 5.0 * PI * PI];
        for (v, e) in s.values().iter().zip(expected.iter()) {
            assert!(rel_err(*v, *e) <= 5e-3, "{v} vs {e}");
        }
    }

    #[test]
    fn fd_2d_single_point_grid() {
        let s = fd_laplacian_2d_kronecker(1.0, 1.0, 1, 1, 1).unwrap();
        let h = 0.5;
        let expected = 2.0 * (2.0 / (h * h)) * (1.0 - (PI / 2.0).cos());
        assert!(rel_err(s.values()[0], expected) <= 1e-12);
    }

    #[test]
    fn fd_2d_square_grid_has_exact_symmetric_ties() {
        let s = fd_laplacian_2d_kronecker(1.0, 1.0, 30, 30, 3).unwrap();
        // Modes (1,2) and (2,1) are exactly equal by symmetry.
        assert_eq!(s.values()[1], s.values()[2]);
    }

    #[test]
    fn fd_2d_agrees_with_full_enumeration() {
        let (nx, ny) = (7, 5);
        let s = fd_laplacian_2d_kronecker(1.0, 2.0, nx, ny, nx * ny).unwrap();
        let mut brute = Vec::new();
        for j in 1..=nx {
            for k in 1..=ny {
                brute.push(fd_1d_eigenvalue(1.0, nx, j) + fd_1d_eigenvalue(2.0, ny, k));
            }
        }
        brute.sort_by(f64::total_cmp);
        for (v, e) in s.values().iter().zip(brute.iter()) {
            assert_eq!(v, e);
        }
    }

    #[test]
    fn sturm_liouville_plain_string() {
        // p = 1, q = 0 on (0, pi): lambda_k -> k^2.
        let s = sturm_liouville_fd(|_| 1.0, |_| 0.0, (0.0, PI), 999, 2).unwrap();
        assert!(rel_err(s.values()[0], 1.0) <= 1e-5);
        assert!(rel_err(s.values()[1], 4.0) <= 1e-5);
    }

    #[test]
    fn sturm_liouville_constant_potential_shifts() {
        let base = sturm_liouville_fd(|_| 1.0, |_| 0.0, (0.0, PI), 299, 3).unwrap();
        let shifted = sturm_liouville_fd(|_| 1.0, |_| 5.0, (0.0, PI), 299, 3).unwrap();
        for (b, s) in base.values().iter().zip(shifted.values().iter()) {
            assert!((s - (b + 5.0)).abs() <= 1e-9 * s.abs().max(1.0));
        }
    }

    #[test]
    fn sturm_liouville_stiffness_scales() {
        let base = sturm_liouville_fd(|_| 1.0, |_| 0.0, (0.0, PI), 399, 3).unwrap();
        let stiff = sturm_liouville_fd(|_| 4.0, |_| 0.0, (0.0, PI), 399, 3).unwrap();
        for (b, s) in base.values().iter().zip(stiff.values().iter()) {
            assert!(rel_err(*s, 4.0 * b) <= 1e-10);
        }
        // Against the continuum: 4 * k^2 within FD error.
        assert!(rel_err(stiff.values()[0], 4.0) <= 1e-4);
    }

    #[test]
    fn sturm_liouville_rejects_nonpositive_p() {
        assert!(matches!(
            sturm_liouville_fd(|x| x - 0.5, |_| 0.0, (0.0, 1.0), 99, 1),
            Err(GeneratorError::NonPositiveP { .. })
        ));
    }

    #[test]
    fn inhomogeneous_uniform_density_matches_fd_laplacian() {
        let plain = fd_laplacian_1d(1.0, 199, 4).unwrap();
        let inhom = inhomogeneous_fd_1d(|_| 1.0, (0.0, 1.0), 199, 4).unwrap();
        for (p, i) in plain.values().iter().zip(inhom.values().iter()) {
            assert!(rel_err(*i, *p) <= 1e-10);
        }
    }

    #[test]
    fn inhomogeneous_density_scaling() {
        let unit = inhomogeneous_fd_1d(|_| 1.0, (0.0, 1.0), 149, 3).unwrap();
        let heavy = inhomogeneous_fd_1d(|_| 4.0, (0.0, 1.0), 149, 3).unwrap();
        for (u, h) in unit.values().iter().zip(heavy.values().iter()) {
            assert!(rel_err(*h, u / 4.0) <= 1e-10);
        }
    }

    #[test]
    fn inhomogeneous_density_monotonicity_bracket() {
        // q(x) = 1 + x on (0, 1): lambda_1 must sit between the uniform
        // q = 2 and q = 1 ground states.
        let s = inhomogeneous_fd_1d(|x| 1.0 + x, (0.0, 1.0), 399, 1).unwrap();
        let l1 = s.values()[0];
        assert!(l1 > PI * PI / 2.0 * 0.999);
        assert!(l1 < PI * PI * 1.001);
    }

    #[test]
    fn inhomogeneous_rejects_nonpositive_density() {
        assert!(matches!(
            inhomogeneous_fd_1d(|x| x - 0.5, (0.0, 1.0), 99, 1),
            Err(GeneratorError::NonPositiveDensity { .. })
        ));
    }

    #[test]
    fn source_json_round_trip_and_generation() {
        let text = r#"{"kind":"sturm_liouville_fd","p":"const:1","q":"const:0","interval":[0.0,3.141592653589793],"grid":499,"count":3}"#;
        let src: SpectrumSource = serde_json::from_str(text).unwrap();
        let s = src.generate().unwrap();
        assert!(rel_err(s.values()[0], 1.0) <= 1e-4);
        assert!(rel_err(s.values()[2], 9.0) <= 1e-4);
        let back = serde_json::to_string(&src).unwrap();
        let again: SpectrumSource = serde_json::from_str(&back).unwrap();
        assert_eq!(again, src);

        let boxed: SpectrumSource =
            serde_json::from_str(r#"{"kind":"box_analytic","sides":[1.0,1.0],"count":10}"#).unwrap();
        let s = boxed.generate().unwrap();
        assert_eq!(s.len(), 10);
        assert!(rel_err(s.values()[0], 2.0 * PI * PI) <= 1e-12);

        // Unknown kind or missing fields are rejected.
        assert!(serde_json::from_str::<SpectrumSource>(r#"{"kind":"fem_3d"}"#).is_err());
        assert!(
            serde_json::from_str::<SpectrumSource>(r#"{"kind":"fd_1d","length":1.0}"#).is_err()
        );
    }

    #[test]
    fn source_grid_floor_is_enforced() {
        let src = SpectrumSource::Fd1d {
            length: 1.0,
            grid: 2,
            count: 1,
        };
        assert!(matches!(
            src.generate(),
            Err(GeneratorError::GridTooSmall { grid: 2, min: 3 })
        ));
    }
}
