//! Prolate spheroidal wave functions of order zero: operator matrices, the
//! ODE eigenvalue `chi_n`, Legendre coefficients of `psi_n`, pointwise
//! evaluation, Taylor jets and the integral-operator eigenvalue `lambda_n`.

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::legendre::LegendreSeries;
use crate::tridiag::SymTridiagonal;

/// Parity of `psi_n`, equal to the parity of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(-1)^n`
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// Legendre expansion `psi_n = sum_k alpha_k P_k` of a normalized PSWF.
#[derive(Debug, Clone, PartialEq)]
pub struct PswfExpansion {
    c: f64,
    n: usize,
    chi: f64,
    alpha: LegendreSeries,
}

impl PswfExpansion {
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    pub fn alpha(&self) -> &LegendreSeries {
        &self.alpha
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.n)
    }

    /// `sum_k 2 alpha_k^2 / (2k + 1)`, the squared L2 norm on [-1, 1].
    pub fn norm_squared(&self) -> f64 {
        self.alpha
            .coefficients()
            .iter()
            .enumerate()
            .map(|(k, a)| 2.0 * a * a / (2 * k + 1) as f64)
            .sum()
    }
}

/// Leading `m x m` block of `A_even` or `A_odd` for bandlimit `c`.
pub fn build_operator_matrix(c: f64, parity: Parity, m: usize) -> SymTridiagonal {
    let c2 = c * c;
    let (diag, offdiag): (Vec<f64>, Vec<f64>) = match parity {
        Parity::Even => (
            (0..m)
                .map(|k| {
                    let k = k as f64;
                    2.0 * k * (2.0 * k + 1.0)
                        + (4.0 * k * (2.0 * k + 1.0) - 1.0) / ((4.0 * k + 3.0) * (4.0 * k - 1.0)) * c2
                })
                .collect(),
            (0..m.saturating_sub(1))
                .map(|k| {
                    let k = k as f64;
                    (2.0 * k + 2.0) * (2.0 * k + 1.0)
                        / ((4.0 * k + 3.0) * ((4.0 * k + 1.0) * (4.0 * k + 5.0)).sqrt())
                        * c2
                })
                .collect(),
        ),
        Parity::Odd => (
            (0..m)
                .map(|k| {
                    let k = k as f64;
                    (2.0 * k + 1.0) * (2.0 * k + 2.0)
                        + ((4.0 * k + 2.0) * (2.0 * k + 2.0) - 1.0) / ((4.0 * k + 5.0) * (4.0 * k + 1.0)) * c2
                })
                .collect(),
            (0..m.saturating_sub(1))
                .map(|k| {
                    let k = k as f64;
                    (2.0 * k + 3.0) * (2.0 * k + 2.0)
                        / ((4.0 * k + 5.0) * ((4.0 * k + 3.0) * (4.0 * k + 7.0)).sqrt())
                        * c2
                })
                .collect(),
        ),
    };
    SymTridiagonal::new(diag, offdiag).expect("operator matrix entries are finite")
}

/// Truncation used for the Sturm bisection stage.
pub fn chi_truncation(c: f64, n: usize) -> usize {
    (1.1 * c + n as f64 + 1000.0).ceil() as usize
}

/// Truncation used for Rayleigh quotient iteration.
///
/// `2n + 4` rows, raised when `n` is small relative to `c` so that the matrix
/// still covers Legendre degrees up to about `1.1c + n`.
pub fn rqi_truncation(c: f64, n: usize) -> usize {
    let by_c = ((1.1 * c + n as f64) / 2.0).ceil() as usize + 30;
    (2 * n + 4).max(by_c)
}

fn check_c(c: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain { what: "bandlimit c must be positive", value: c })
    }
}

/// Approximation to `chi_n` by Sturm bisection on the `chi_truncation(c, n)` block.
///
/// The result is verified to be closer to `chi_n` than to any other
/// eigenvalue of the same parity matrix.
pub fn estimate_chi(c: f64, n: usize, cfg: &ToleranceConfig) -> Result<f64> {
    check_c(c)?;
    let t = build_operator_matrix(c, Parity::of(n), chi_truncation(c, n));
    let m = n / 2;
    let (a, b) = t.bisect_bracket(m + 1, 0.0, (1.0 + 2.0 * n as f64) * c, cfg.bisection_stop)?;
    let chi = 0.5 * (a + b);
    let w = (b - a).max(8.0 * f64::EPSILON * chi.abs());
    if t.sturm_count(chi - 2.0 * w) != m || t.sturm_count(chi + 2.0 * w) != m + 1 {
        return Err(Error::Inconsistent(format!(
            "chi estimate {chi} for n={n} is not isolated from its neighbours"
        )));
    }
    Ok(chi)
}

/// Legendre expansion of `psi_n`: bisection for a shift, then Rayleigh
/// quotient iteration for the eigenvector.
pub fn compute_expansion(c: f64, n: usize, cfg: &ToleranceConfig) -> Result<PswfExpansion> {
    let chi_tilde = estimate_chi(c, n, cfg)?;
    expansion_from_shift(c, n, chi_tilde, cfg)
}

/// Second half of [`compute_expansion`], starting from an estimate of `chi_n`.
pub fn expansion_from_shift(c: f64, n: usize, chi_tilde: f64, cfg: &ToleranceConfig) -> Result<PswfExpansion> {
    check_c(c)?;
    let parity = Parity::of(n);
    let m = n / 2;
    let mut size = rqi_truncation(c, n);
    for _ in 0..8 {
        let t = build_operator_matrix(c, parity, size);
        let rqi = t.rayleigh_iterate(chi_tilde, cfg)?;
        let chi = rqi.eigenvalue;
        let delta = 1e-8 * (1.0 + chi.abs());
        if t.sturm_count(chi - delta) != m || t.sturm_count(chi + delta) != m + 1 {
            return Err(Error::Inconsistent(format!(
                "rayleigh iteration for n={n} converged to the wrong eigenvalue {chi}"
            )));
        }

        let mut alpha = vec![0.0; 2 * size];
        for (j, beta) in rqi.eigenvector.iter().enumerate() {
            let k = match parity {
                Parity::Even => 2 * j,
                Parity::Odd => 2 * j + 1,
            };
            alpha[k] = beta * (k as f64 + 0.5).sqrt();
        }
        let last = alpha.iter().rposition(|a| a.abs() >= f64::EPSILON).unwrap_or(0);
        // the tail must have decayed well before the truncation edge
        if last + 8 < alpha.len() {
            alpha.truncate(last.max(n) + 1);
            return Ok(PswfExpansion { c, n, chi, alpha: LegendreSeries::new(alpha)? });
        }
        size *= 2;
    }
    Err(Error::Inconsistent(format!("legendre coefficients of psi_{n} did not decay")))
}

/// `psi_n(x)` and `psi_n'(x)` for `|x| <= 1`.
pub fn eval_psi(exp: &PswfExpansion, x: f64) -> (f64, f64) {
    exp.alpha.eval_p(x)
}

/// Normalized Taylor coefficients of a solution at `center`:
/// `coeffs[k] = f^(k)(center) / k!`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorJet {
    center: f64,
    coeffs: Vec<f64>,
}

impl TaylorJet {
    pub fn center(&self) -> f64 {
        self.center
    }

    /// Highest derivative order `K` carried by the jet.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `f^(k)(center)`.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.coeffs[k] * fact
    }

    /// Value and first derivative at `x` from the truncated Taylor series.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let h = x - self.center;
        let mut val = 0.0;
        let mut der = 0.0;
        for (k, &t) in self.coeffs.iter().enumerate().rev() {
            val = val * h + t;
            if k > 0 {
                der = der * h + k as f64 * t;
            }
        }
        (val, der)
    }
}

/// Taylor jet of a solution of
/// `(1-x^2) f'' - 2x f' + (chi - c^2 x^2) f = g(x)` with `g` affine,
/// from `f(center)` and `f'(center)`. `forcing = [g(center), g'(center)]`.
pub(crate) fn prolate_jet(
    c: f64,
    chi: f64,
    center: f64,
    value: f64,
    slope: f64,
    order: usize,
    forcing: [f64; 2],
) -> Result<TaylorJet> {
    if !(center.abs() < 1.0) {
        return Err(Error::Domain { what: "taylor jet center needs |x| < 1", value: center });
    }
    let c2 = c * c;
    let x = center;
    let p = (1.0 - x) * (1.0 + x);
    let mut t = Vec::with_capacity(order + 1);
    t.push(value);
    t.push(slope);
    for k in 0..order.saturating_sub(1) {
        let kf = k as f64;
        let mut rhs = 2.0 * x * (kf + 1.0) * (kf + 1.0) * t[k + 1] + (kf * kf + kf + c2 * x * x - chi) * t[k];
        if k >= 1 {
            rhs += 2.0 * c2 * x * t[k - 1];
        }
        if k >= 2 {
            rhs += c2 * t[k - 2];
        }
        if k < 2 {
            rhs += forcing[k];
        }
        t.push(rhs / (p * (kf + 2.0) * (kf + 1.0)));
    }
    t.truncate(order + 1);
    Ok(TaylorJet { center, coeffs: t })
}

/// Derivatives of `psi_n` up to order `order` at `center` from the ODE.
pub fn psi_taylor_jet(exp: &PswfExpansion, center: f64, psi0: f64, dpsi0: f64, order: usize) -> Result<TaylorJet> {
    if order < 2 {
        return Err(Error::InvalidInput("taylor jet needs order >= 2".into()));
    }
    prolate_jet(exp.c, exp.chi, center, psi0, dpsi0, order, [0.0, 0.0])
}

/// `lambda_n` is real for even `n` and purely imaginary for odd `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseClass {
    RealAxis,
    ImaginaryAxis,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lambda {
    pub magnitude: f64,
    pub phase: PhaseClass,
}

/// Eigenvalue of the truncated Fourier transform belonging to `psi_n`.
///
/// `2 alpha_0 / psi_n(0)` for even `n`, `2 c i alpha_1 / (3 psi_n'(0))` for odd `n`.
/// Both are ratios of consistently scaled quantities, so tiny magnitudes keep
/// their relative accuracy.
pub fn compute_lambda(exp: &PswfExpansion) -> Result<Lambda> {
    let (psi0, dpsi0) = eval_psi(exp, 0.0);
    let (num, den, phase) = match exp.parity() {
        Parity::Even => (2.0 * exp.alpha.get(0), psi0, PhaseClass::RealAxis),
        Parity::Odd => (2.0 * exp.c * exp.alpha.get(1), 3.0 * dpsi0, PhaseClass::ImaginaryAxis),
    };
    if den == 0.0 || !den.is_finite() {
        return Err(Error::Inconsistent(format!(
            "psi_{} has a vanishing {} at 0",
            exp.n,
            if phase == PhaseClass::RealAxis { "value" } else { "derivative" }
        )));
    }
    Ok(Lambda { magnitude: (num / den).abs(), phase })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn operator_matrix_first_entries() {
        let t = build_operator_matrix(10.0, Parity::Even, 3);
        assert_abs_diff_eq!(t.diag()[0], 100.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t.offdiag()[0], 2.0 / (3.0 * 5f64.sqrt()) * 100.0, epsilon = 1e-12);
        assert!(t.offdiag().iter().all(|e| *e > 0.0));
        let t = build_operator_matrix(10.0, Parity::Odd, 3);
        assert!(t.offdiag().iter().all(|e| *e > 0.0));
    }

    #[test]
    fn chi_small_c_is_legendre() {
        let chi = estimate_chi(1e-4, 10, &cfg()).unwrap();
        assert_abs_diff_eq!(chi, 110.0, epsilon = 1e-4);
        let chi = estimate_chi(1e-4, 7, &cfg()).unwrap();
        assert_abs_diff_eq!(chi, 56.0, epsilon = 1e-4);
    }

    #[test]
    fn chi_rejects_bad_c() {
        assert!(estimate_chi(0.0, 3, &cfg()).is_err());
        assert!(estimate_chi(f64::NAN, 3, &cfg()).is_err());
    }

    #[test]
    fn small_c_expansion_is_normalized_legendre() {
        let exp = compute_expansion(1e-4, 4, &cfg()).unwrap();
        let a = exp.alpha().coefficients();
        for (k, v) in a.iter().enumerate() {
            if k != 4 {
                assert!(v.abs() < 1e-6, "alpha_{k} = {v}");
            }
        }
        // ||P_4||^2 = 2/9
        assert_abs_diff_eq!(a[4].abs(), (9.0f64 / 2.0).sqrt(), epsilon = 1e-6);
        assert_abs_diff_eq!(exp.norm_squared(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn parity_zeros_are_exact() {
        for n in [6, 7] {
            let exp = compute_expansion(20.0, n, &cfg()).unwrap();
            for (k, a) in exp.alpha().coefficients().iter().enumerate() {
                if k % 2 != n % 2 {
                    assert_eq!(*a, 0.0);
                }
            }
            let (psi, dpsi) = eval_psi(&exp, 0.0);
            if n % 2 == 1 {
                assert_eq!(psi, 0.0);
            } else {
                assert_eq!(dpsi, 0.0);
            }
        }
    }

    #[test]
    fn jet_second_derivative_at_origin() {
        let exp = compute_expansion(20.0, 30, &cfg()).unwrap();
        let (psi0, _) = eval_psi(&exp, 0.0);
        let jet = psi_taylor_jet(&exp, 0.0, psi0, 0.0, 30).unwrap();
        assert_abs_diff_eq!(jet.derivative(2), -exp.chi() * psi0, epsilon = 1e-9 * exp.chi());
        for k in (1..=30).step_by(2) {
            assert_eq!(jet.coeffs()[k], 0.0);
        }
        assert_eq!(jet.order(), 30);
    }

    #[test]
    fn jet_rejects_endpoint() {
        let exp = compute_expansion(5.0, 3, &cfg()).unwrap();
        assert!(psi_taylor_jet(&exp, 1.0, 0.0, 1.0, 30).is_err());
    }

    #[test]
    fn lambda_phase_follows_parity() {
        let even = compute_lambda(&compute_expansion(10.0, 4, &cfg()).unwrap()).unwrap();
        let odd = compute_lambda(&compute_expansion(10.0, 5, &cfg()).unwrap()).unwrap();
        assert_eq!(even.phase, PhaseClass::RealAxis);
        assert_eq!(odd.phase, PhaseClass::ImaginaryAxis);
        assert!(even.magnitude >= odd.magnitude);
    }
}
