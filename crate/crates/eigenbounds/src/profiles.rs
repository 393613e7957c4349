//! Catalog of problem profiles reduced to a single inequality family.
//!
//! Every supported eigenvalue problem reduces to the same statement about
//! its spectrum: for a coefficient `c > 0` and an affine weight
//! `w(lambda) = a*lambda + b`,
//!
//! ```text
//! sum_i (sigma - lambda_i)^p  <=  K(p) * sum_i (sigma - lambda_i)^(p-1) * w(lambda_i)
//! ```
//!
//! with `K(p) = c` for `p <= 2` and `K(p) = c*p/2` for `p >= 2` (the two
//! regimes meet at `p = 2`). A [`BoundProfile`] stores `(c, a, b)` together
//! with the index origin convention of the underlying problem; the
//! constructors below translate each cataloged problem into these
//! parameters.

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::generators::CoeffFn;
use crate::spectra::IndexOrigin;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProfileError {
    #[error("density bounds must satisfy 0 < q_min <= q_max, got q_min={q_min}, q_max={q_max}")]
    BadDensity { q_min: f64, q_max: f64 },

    #[error("cap angle must lie in (0, pi), got {0}")]
    BadAngle(f64),

    #[error("need y_sup^2 >= y_inf^2 > 0, got y_sup^2={y_sup_sq}, y_inf^2={y_inf_sq}")]
    BadRatio { y_sup_sq: f64, y_inf_sq: f64 },

    #[error("first nonzero eigenvalue must be positive, got {0}")]
    BadLambda1(f64),

    #[error("matrix is not positive definite: pivot {pivot} at step {step} below tolerance {tol}")]
    NotSpd { pivot: f64, step: usize, tol: f64 },

    #[error("coefficient p(x) must be positive on the grid: p({x}) = {value}")]
    NonPositiveP { x: f64, value: f64 },

    #[error("matrix/vector dimensions do not match: matrix {matrix_len} entries, vector {vec_len}")]
    DimensionMismatch { matrix_len: usize, vec_len: usize },

    #[error("dimension must be at least {min}, got {n}")]
    BadDimension { n: u32, min: u32 },

    #[error("interval must satisfy a < b, got ({0}, {1})")]
    BadInterval(f64, f64),

    #[error("sampling grid must have at least one point")]
    EmptyGrid,

    #[error("profile coefficient must be positive and finite: c={c}, a={a}, b={b}")]
    BadCoefficient { c: f64, a: f64, b: f64 },
}

/// Reduced-inequality parameters for one cataloged problem.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundProfile {
    pub name: String,
    /// The `p <= 2` coefficient (`2*beta/(gamma*N)` in the abstract setting).
    pub c: f64,
    /// Weight slope.
    pub a: f64,
    /// Weight intercept.
    pub b: f64,
    pub index_origin: IndexOrigin,
}

impl BoundProfile {
    pub fn new(
        name: impl Into<String>,
        c: f64,
        a: f64,
        b: f64,
        index_origin: IndexOrigin,
    ) -> Result<Self, ProfileError> {
        if !(c > 0.0) || !c.is_finite() || !a.is_finite() || !b.is_finite() {
            return Err(ProfileError::BadCoefficient { c, a, b });
        }
        Ok(Self {
            name: name.into(),
            c,
            a,
            b,
            index_origin,
        })
    }

    /// The affine weight `w(lambda) = a*lambda + b`.
    pub fn weight(&self, lambda: f64) -> f64 {
        self.a * lambda + self.b
    }

    /// The regime coefficient `K(p) = c * max(1, p/2)`.
    pub fn coefficient(&self, p: f64) -> f64 {
        self.c * (p / 2.0).max(1.0)
    }

    /// Dirichlet Laplacian on a bounded domain in dimension `n`:
    /// `c = 4/n`, `w(lambda) = lambda`.
    pub fn classical_membrane(n: u32) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        Self {
            name: format!("classical_membrane(n={n})"),
            c: 4.0 / f64::from(n),
            a: 1.0,
            b: 0.0,
            index_origin: IndexOrigin::One,
        }
    }

    /// Membrane with nonuniform density `0 < q_min <= q(x) <= q_max`:
    /// the classical coefficient picks up the factor `q_max/q_min`.
    pub fn inhomogeneous_membrane(n: u32, q_min: f64, q_max: f64) -> Result<Self, ProfileError> {
        assert!(n >= 1, "dimension must be at least 1");
        if !(q_min > 0.0) || q_max < q_min || !q_max.is_finite() {
            return Err(ProfileError::BadDensity { q_min, q_max });
        }
        Ok(Self {
            name: format!("inhomogeneous_membrane(n={n},q_min={q_min},q_max={q_max})"),
            c: (4.0 / f64::from(n)) * (q_max / q_min),
            a: 1.0,
            b: 0.0,
            index_origin: IndexOrigin::One,
        })
    }

    /// Geodesic domain on the 2-sphere with circumscribing radius `theta`:
    /// `c = 8/(1 + cos(theta))^2`, recovering the Euclidean `c = 2` as
    /// `theta -> 0`.
    pub fn sphere_cap_2d(theta: f64) -> Result<Self, ProfileError> {
        if !(theta > 0.0 && theta < std::f64::consts::PI) {
            return Err(ProfileError::BadAngle(theta));
        }
        let denom = 1.0 + theta.cos();
        Ok(Self {
            name: format!("sphere_cap_2d(theta={theta})"),
            c: 8.0 / (denom * denom),
            a: 1.0,
            b: 0.0,
            index_origin: IndexOrigin::One,
        })
    }

    /// Domain on the n-sphere: `c*w(lambda) = (4*lambda + n^2)/n`.
    pub fn sphere_n(n: u32) -> Self {
        assert!(n >= 2, "sphere dimension must be at least 2");
        let nf = f64::from(n);
        Self {
            name: format!("sphere_n(n={n})"),
            c: 4.0 / nf,
            a: 1.0,
            b: nf * nf / 4.0,
            index_origin: IndexOrigin::One,
        }
    }

    /// Domain in the hyperbolic plane (half-plane model): constant weight,
    /// `c = 2 * sup(y^2)/inf(y^2)`.
    pub fn hyperbolic_2d(y_sup_sq: f64, y_inf_sq: f64) -> Result<Self, ProfileError> {
        if !(y_inf_sq > 0.0) || y_sup_sq < y_inf_sq || !y_sup_sq.is_finite() {
            return Err(ProfileError::BadRatio { y_sup_sq, y_inf_sq });
        }
        Ok(Self {
            name: format!("hyperbolic_2d(ratio={})", y_sup_sq / y_inf_sq),
            c: 2.0 * (y_sup_sq / y_inf_sq),
            a: 0.0,
            b: 1.0,
            index_origin: IndexOrigin::One,
        })
    }

    /// Minimally immersed n-submanifold of a sphere. Same parameters as
    /// [`BoundProfile::sphere_n`] but the spectrum counts from
    /// `lambda_0 = 0`.
    pub fn minimal_submanifold(n: u32) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        let nf = f64::from(n);
        Self {
            name: format!("minimal_submanifold(n={n})"),
            c: 4.0 / nf,
            a: 1.0,
            b: nf * nf / 4.0,
            index_origin: IndexOrigin::Zero,
        }
    }

    /// Compact homogeneous manifold with first nonzero eigenvalue
    /// `lambda_1`: `c*w(lambda) = 4*lambda + lambda_1`.
    pub fn homogeneous_manifold(lambda1: f64) -> Result<Self, ProfileError> {
        if !(lambda1 > 0.0) || !lambda1.is_finite() {
            return Err(ProfileError::BadLambda1(lambda1));
        }
        Ok(Self {
            name: format!("homogeneous_manifold(lambda1={lambda1})"),
            c: 4.0,
            a: 1.0,
            b: lambda1 / 4.0,
            index_origin: IndexOrigin::Zero,
        })
    }

    /// Schroedinger-like operator with potential bounded below by `m_lower`:
    /// `w(lambda) = lambda - m_lower`. `m_lower` may be any real; weight
    /// positivity is checked at solve time.
    pub fn schrodinger_like(n: u32, m_lower: f64) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        Self {
            name: format!("schrodinger_like(n={n},M={m_lower})"),
            c: 4.0 / f64::from(n),
            a: 1.0,
            b: -m_lower,
            index_origin: IndexOrigin::One,
        }
    }

    /// Constant-coefficient second-order elliptic operator with principal
    /// part `A` (symmetric positive definite, row-major `n*n`) and drift
    /// vector `b_vec`: the spectrum shifts by `s/4` with
    /// `s = b^T A^{-1} b = ||A^{-1/2} b||^2`, computed through a Cholesky
    /// forward solve.
    pub fn elliptic_constant_coeff(a_matrix: &[f64], b_vec: &[f64]) -> Result<Self, ProfileError> {
        let n = b_vec.len();
        if n == 0 || a_matrix.len() != n * n {
            return Err(ProfileError::DimensionMismatch {
                matrix_len: a_matrix.len(),
                vec_len: n,
            });
        }
        let max_diag = (0..n)
            .map(|i| a_matrix[i * n + i].abs())
            .fold(0.0f64, f64::max);
        let tol = 1e-12 * max_diag;

        // Cholesky A = L L^T on the symmetrized matrix. Only L is kept.
        let mut l = vec![0.0f64; n * n];
        for j in 0..n {
            for i in j..n {
                // Average the two triangles so nearly-symmetric inputs
                // (e.g. U A U^T formed in floating point) are accepted.
                let mut sum = 0.5 * (a_matrix[i * n + j] + a_matrix[j * n + i]);
                for k in 0..j {
                    sum -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if sum <= tol {
                        return Err(ProfileError::NotSpd {
                            pivot: sum,
                            step: j,
                            tol,
                        });
                    }
                    l[j * n + j] = sum.sqrt();
                } else {
                    l[i * n + j] = sum / l[j * n + j];
                }
            }
        }

        // Solve L y = b; then s = b^T A^{-1} b = ||y||^2.
        let mut y = b_vec.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] -= l[i * n + k] * y[k];
            }
            y[i] /= l[i * n + i];
        }
        let s: f64 = y.iter().map(|v| v * v).sum();

        Ok(Self {
            name: format!("elliptic_constant_coeff(n={n})"),
            c: 4.0 / n as f64,
            a: 1.0,
            b: -s / 4.0,
            index_origin: IndexOrigin::One,
        })
    }

    /// Sturm-Liouville operator `-(p u')' + q u` on `(a, b)` with Dirichlet
    /// ends. The effective potential
    ///
    /// ```text
    /// Q(x) = q(x) - (1/16) p'(x)^2 / p(x) + (1/4) p''(x)
    /// ```
    ///
    /// is sampled on a uniform grid; `M = min Q` over the grid and the
    /// weight becomes `lambda - M`. Derivatives of `p` are approximated by
    /// central differences with step equal to the grid spacing. A grid
    /// minimum can overestimate the true infimum if `Q` oscillates below
    /// grid scale.
    pub fn sturm_liouville(
        p_fn: impl Fn(f64) -> f64,
        q_fn: impl Fn(f64) -> f64,
        interval: (f64, f64),
        grid: usize,
    ) -> Result<Self, ProfileError> {
        let (a, b) = interval;
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(ProfileError::BadInterval(a, b));
        }
        if grid == 0 {
            return Err(ProfileError::EmptyGrid);
        }
        let h = (b - a) / (grid + 1) as f64;
        let dp = |x: f64| (p_fn(x + h) - p_fn(x - h)) / (2.0 * h);
        let ddp = |x: f64| (p_fn(x + h) - 2.0 * p_fn(x) + p_fn(x - h)) / (h * h);
        Self::sturm_liouville_impl(&p_fn, dp, ddp, &q_fn, interval, grid)
    }

    /// As [`BoundProfile::sturm_liouville`] with analytic derivatives of
    /// `p` supplied by the caller.
    pub fn sturm_liouville_with_derivatives(
        p_fn: impl Fn(f64) -> f64,
        dp_fn: impl Fn(f64) -> f64,
        ddp_fn: impl Fn(f64) -> f64,
        q_fn: impl Fn(f64) -> f64,
        interval: (f64, f64),
        grid: usize,
    ) -> Result<Self, ProfileError> {
        let (a, b) = interval;
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(ProfileError::BadInterval(a, b));
        }
        if grid == 0 {
            return Err(ProfileError::EmptyGrid);
        }
        Self::sturm_liouville_impl(&p_fn, dp_fn, ddp_fn, &q_fn, interval, grid)
    }

    fn sturm_liouville_impl(
        p_fn: &impl Fn(f64) -> f64,
        dp_fn: impl Fn(f64) -> f64,
        ddp_fn: impl Fn(f64) -> f64,
        q_fn: &impl Fn(f64) -> f64,
        (a, b): (f64, f64),
        grid: usize,
    ) -> Result<Self, ProfileError> {
        let h = (b - a) / (grid + 1) as f64;
        let mut m_min = f64::INFINITY;
        for j in 1..=grid {
            let x = a + j as f64 * h;
            let p = p_fn(x);
            if !(p > 0.0) {
                return Err(ProfileError::NonPositiveP { x, value: p });
            }
            let d = dp_fn(x);
            let q_eff = q_fn(x) - d * d / (16.0 * p) + 0.25 * ddp_fn(x);
            m_min = m_min.min(q_eff);
        }
        Ok(Self {
            name: format!("sturm_liouville(M={m_min})"),
            c: 4.0,
            a: 1.0,
            b: -m_min,
            index_origin: IndexOrigin::One,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileRepr {
    name: String,
    c: f64,
    a: f64,
    b: f64,
    index_origin: u8,
}

/// Named-constructor JSON forms: `{"kind": "classical", "n": 2}` etc.
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileKind {
    Classical {
        n: u32,
    },
    Inhomogeneous {
        n: u32,
        q_min: f64,
        q_max: f64,
    },
    SphereCap {
        theta: f64,
    },
    Sphere {
        n: u32,
    },
    Hyperbolic {
        y_sup_sq: f64,
        y_inf_sq: f64,
    },
    Minimal {
        n: u32,
    },
    Homogeneous {
        lambda1: f64,
    },
    Schrodinger {
        n: u32,
        m: f64,
    },
    Elliptic {
        a_matrix: Vec<Vec<f64>>,
        b_vec: Vec<f64>,
    },
    Sturm {
        p: CoeffFn,
        q: CoeffFn,
        interval: (f64, f64),
        grid: usize,
    },
}

impl ProfileKind {
    pub fn build(&self) -> Result<BoundProfile, ProfileError> {
        fn dim(n: u32, min: u32) -> Result<u32, ProfileError> {
            if n < min {
                Err(ProfileError::BadDimension { n, min })
            } else {
                Ok(n)
            }
        }
        match self {
            ProfileKind::Classical { n } => Ok(BoundProfile::classical_membrane(dim(*n, 1)?)),
            ProfileKind::Inhomogeneous { n, q_min, q_max } => {
                BoundProfile::inhomogeneous_membrane(dim(*n, 1)?, *q_min, *q_max)
            }
            ProfileKind::SphereCap { theta } => BoundProfile::sphere_cap_2d(*theta),
            ProfileKind::Sphere { n } => Ok(BoundProfile::sphere_n(dim(*n, 2)?)),
            ProfileKind::Hyperbolic { y_sup_sq, y_inf_sq } => {
                BoundProfile::hyperbolic_2d(*y_sup_sq, *y_inf_sq)
            }
            ProfileKind::Minimal { n } => Ok(BoundProfile::minimal_submanifold(dim(*n, 1)?)),
            ProfileKind::Homogeneous { lambda1 } => BoundProfile::homogeneous_manifold(*lambda1),
            ProfileKind::Schrodinger { n, m } => Ok(BoundProfile::schrodinger_like(dim(*n, 1)?, *m)),
            ProfileKind::Elliptic { a_matrix, b_vec } => {
                let flat: Vec<f64> = a_matrix.iter().flatten().copied().collect();
                BoundProfile::elliptic_constant_coeff(&flat, b_vec)
            }
            ProfileKind::Sturm {
                p,
                q,
                interval,
                grid,
            } => BoundProfile::sturm_liouville(|x| p.eval(x), |x| q.eval(x), *interval, *grid),
        }
    }
}

impl Serialize for BoundProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ProfileRepr {
            name: self.name.clone(),
            c: self.c,
            a: self.a,
            b: self.b,
            index_origin: self.index_origin.into(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BoundProfile {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Either {
            Raw(ProfileRepr),
            Kind(ProfileKind),
        }
        match Either::deserialize(deserializer)? {
            Either::Raw(r) => {
                let origin = IndexOrigin::try_from(r.index_origin)
                    .map_err(serde::de::Error::custom)?;
                BoundProfile::new(r.name, r.c, r.a, r.b, origin)
                    .map_err(serde::de::Error::custom)
            }
            Either::Kind(k) => k.build().map_err(serde::de::Error::custom),
        }
    }
}
