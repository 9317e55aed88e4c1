//! Quadrature rules for bandlimited functions on [-1, 1].
//!
//! An `n`-point rule for bandlimit `c` takes the roots of the prolate
//! spheroidal wave function `psi_n` as nodes and chooses weights that integrate
//! `psi_0, ..., psi_{n-1}` to high accuracy. Construction costs `O(n log n)`:
//!
//! 1. Sturm bisection on a tridiagonal operator matrix gives `chi_n`
//!    ([`pswf::estimate_chi`]).
//! 2. Rayleigh quotient iteration gives the Legendre coefficients of `psi_n`
//!    ([`pswf::compute_expansion`]).
//! 3. Roots are marched outward from the origin with a Prufer predictor and a
//!    Taylor-series Newton corrector ([`rootfind::find_roots`]).
//! 4. Weights come from the second-kind series `Psi_n = sum alpha_k Q_k`,
//!    propagated between nodes by its ODE ([`weights::compute_weights`]).
//!
//! ```
//! use prolate_quad::{build_rule, ToleranceConfig};
//!
//! let rule = build_rule(100.0, 86, &ToleranceConfig::default()).unwrap();
//! let approx = rule.integrate(|x| (150.0 * x).cos());
//! let exact = 2.0 * 150f64.sin() / 150.0;
//! assert!((approx - exact).abs() < 1e-10);
//! ```

pub mod cli;
pub mod config;
pub mod error;
pub mod io;
pub mod legendre;
pub mod pswf;
pub mod rootfind;
pub mod rule;
pub mod tridiag;
pub mod weights;

pub use config::ToleranceConfig;
pub use error::{Error, Result};
pub use pswf::{compute_expansion, compute_lambda, estimate_chi, PswfExpansion};
pub use rule::{audit_error, build_rule, gauss_legendre_rule, min_nodes_for_accuracy, QuadratureRule};
