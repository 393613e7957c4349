//! Universal upper bounds for the (m+1)-st eigenvalue of a self-adjoint
//! operator from its first m eigenvalues.
//!
//! Given a validated spectrum prefix `lambda_1 <= ... <= lambda_m` and a
//! problem profile `(c, a, b)` (coefficient plus affine weight
//! `w(lambda) = a*lambda + b`), this crate computes the whole family of
//! bounds living between the explicit PPW estimate and the optimal Yang
//! form:
//!
//! | method        | what it is                                             |
//! |---------------|--------------------------------------------------------|
//! | `ppw_bound`   | `lambda_m + c * mean w(lambda_i)`, fully explicit      |
//! | `hp_bound`    | root of the harmonic-sum gap function (`p = 0`)        |
//! | `yang2_bound` | root of the linear gap function (`p = 1`)              |
//! | `yang1_bound` | larger root of the quadratic gap function (`p = 2`)    |
//! | `sigma_p`     | root of `f_p` for any `p` in `[0, 2]`, nonincreasing   |
//! | `sigma_tilde_p` | first crossing of `ft_p` for `p >= 2`, nondecreasing |
//!
//! The [`profiles`] module catalogs the geometric and physical problems
//! that reduce to this family (membranes, inhomogeneous densities,
//! spherical and hyperbolic domains, minimal submanifolds, homogeneous
//! manifolds, Schroedinger-like and elliptic operators, Sturm-Liouville
//! problems). The [`generators`] module produces test spectra with known
//! ground truth, and [`verify`] checks every inequality and identity the
//! family satisfies, reporting slacks in a stable JSON shape.
//!
//! ```
//! use eigenbounds::{BoundProfile, Spectrum, IndexOrigin};
//! use eigenbounds::solvers::{yang1_bound, sigma_p};
//!
//! let profile = BoundProfile::classical_membrane(2);
//! let spectrum = Spectrum::new(vec![1.0, 2.0], IndexOrigin::One).unwrap();
//!
//! // Yang's inequality bounds the third eigenvalue by 3 + sqrt(1.5).
//! let yang1 = yang1_bound(&profile, &spectrum, 2).unwrap();
//! assert!((yang1.value - 4.224744871391589).abs() < 1e-12);
//!
//! // The generic solver reproduces it as the p = 2 member of the family.
//! let generic = sigma_p(&profile, &spectrum, 2, 2.0).unwrap();
//! assert!((generic.value - yang1.value).abs() < 1e-10 * yang1.value);
//! ```
//!
//! Runnable walkthroughs live in `examples/`; the `eigenbounds` binary
//! exposes the same functionality as `bounds`, `verify`, `generate` and
//! `sweep` subcommands.

// Validation uses `!(x > 0.0)` deliberately: unlike `x <= 0.0` it also
// rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod kahan;

pub mod cli;
pub mod gapfn;
pub mod generators;
pub mod profiles;
pub mod solvers;
pub mod spectra;
pub mod verify;

pub use gapfn::{chebyshev_gap, GapError, GapFunction};
pub use generators::{
    box_spectrum, fd_laplacian_1d, fd_laplacian_2d_kronecker, inhomogeneous_fd_1d,
    sturm_liouville_fd, tridiag_eigenvalues, CoeffFn, GeneratorError, SpectrumSource,
    TridiagonalMatrix,
};
pub use profiles::{BoundProfile, ProfileError, ProfileKind};
pub use solvers::{
    bound_at, bound_table, hp_bound, ppw_bound, sigma_p, sigma_tilde_p, yang1_bound, yang2_bound,
    BoundResult, BoundRow, Method, SolverError,
};
pub use spectra::{IndexOrigin, Moments, Spectrum, SpectrumError};
pub use verify::{
    aizenman_lieb_identity, beta_function, check_family_inequality, check_h1, check_monotone_multiplier,
    chebyshev_report, ln_gamma, monotonicity_report, run_suite, CheckReport,
    MonotoneFunctionTable, SuiteConfig, VerifyError,
};
