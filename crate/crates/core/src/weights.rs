//! Quadrature weights `w_j = -2 Psi_n(x_j) / psi_n'(x_j)` where
//! `Psi_n = sum_k alpha_k Q_k`.
//!
//! `Psi_n` is evaluated directly at the central node, carried outward node to
//! node by Taylor jets of its inhomogeneous ODE, and evaluated directly again at
//! the last four nodes where the logarithmic endpoint singularity spoils the jets.

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::pswf::{prolate_jet, PswfExpansion, TaylorJet};
use crate::rootfind::RootTable;

/// Jet of `Psi_n`; same representation as a `psi_n` jet.
pub type PsiJet = TaylorJet;

/// Number of trailing nodes at which `Psi_n` is evaluated from its series.
pub const DIRECT_TAIL: usize = 4;

/// `Psi_n(x)` and `Psi_n'(x)` from the Q-series, `|x| < 1`.
pub fn psi2_direct(exp: &PswfExpansion, x: f64) -> Result<(f64, f64)> {
    exp.alpha().eval_q(x)
}

/// Jet of `Psi_n` at `center` from its value and slope there.
pub fn psi2_taylor_jet(exp: &PswfExpansion, center: f64, val: f64, der: f64, order: usize) -> Result<PsiJet> {
    if order < 3 {
        return Err(Error::InvalidInput("Psi jet needs order >= 3".into()));
    }
    let c2 = exp.c() * exp.c();
    let a0 = exp.alpha().get(0);
    let a1 = exp.alpha().get(1);
    let forcing = [-c2 * a0 * center - c2 * a1 / 3.0, -c2 * a0];
    prolate_jet(exp.c(), exp.chi(), center, val, der, order, forcing)
}

/// `Psi_n` at every node, in node order.
pub fn psi2_at_nodes(exp: &PswfExpansion, roots: &RootTable, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    let n = roots.len();
    if n != exp.n() {
        return Err(Error::InvalidInput(format!("{n} roots supplied for psi_{}", exp.n())));
    }
    let mid = n / 2;
    let mut vals = vec![0.0; n];
    let (mut val, mut der) = psi2_direct(exp, roots.nodes[mid])?;
    vals[mid] = val;
    for j in mid + 1..n {
        if j + DIRECT_TAIL < n {
            let jet = psi2_taylor_jet(exp, roots.nodes[j - 1], val, der, cfg.taylor_order)?;
            (val, der) = jet.eval(roots.nodes[j]);
        } else {
            (val, der) = psi2_direct(exp, roots.nodes[j])?;
        }
        vals[j] = val;
    }
    let sign = -exp.parity().sign();
    for j in 0..mid {
        vals[j] = sign * vals[n - 1 - j];
    }
    Ok(vals)
}

/// Weights `w_1..w_n` of the rule with nodes `roots.nodes`.
pub fn compute_weights(exp: &PswfExpansion, roots: &RootTable, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    let vals = psi2_at_nodes(exp, roots, cfg)?;
    let guard = f64::MIN_POSITIVE / f64::EPSILON;
    vals.iter()
        .zip(&roots.ders)
        .enumerate()
        .map(|(j, (v, d))| {
            if d.abs() < guard {
                Err(Error::TinyDerivative { index: j + 1, value: *d })
            } else {
                Ok(-2.0 * v / d)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pswf::compute_expansion;
    use crate::rootfind::find_roots;
    use approx::assert_abs_diff_eq;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn small_c_weights_are_gauss_legendre() {
        let exp = compute_expansion(1e-4, 5, &cfg()).unwrap();
        let roots = find_roots(&exp, &cfg()).unwrap();
        let w = compute_weights(&exp, &roots, &cfg()).unwrap();
        let gl = [0.236_926_885_1, 0.478_628_670_5, 0.568_888_888_9, 0.478_628_670_5, 0.236_926_885_1];
        for (a, b) in w.iter().zip(gl) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-8);
        }
    }

    #[test]
    fn psi2_jet_at_origin() {
        let exp = compute_expansion(20.0, 30, &cfg()).unwrap();
        assert_eq!(exp.alpha().get(1), 0.0);
        let val = 0.3;
        let jet = psi2_taylor_jet(&exp, 0.0, val, 0.0, 30).unwrap();
        assert_abs_diff_eq!(jet.derivative(2), -exp.chi() * val, epsilon = 1e-12 * exp.chi());
    }

    #[test]
    fn psi2_direct_q0() {
        let exp = compute_expansion(1e-4, 0, &cfg()).unwrap();
        let (v, d) = psi2_direct(&exp, 0.0).unwrap();
        let a0 = exp.alpha().get(0);
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d, a0, epsilon = 1e-6);
        assert!(psi2_direct(&exp, 1.0).is_err());
    }

    #[test]
    fn weights_sum_to_two_and_are_symmetric() {
        for n in [30, 31] {
            let exp = compute_expansion(20.0, n, &cfg()).unwrap();
            let roots = find_roots(&exp, &cfg()).unwrap();
            let w = compute_weights(&exp, &roots, &cfg()).unwrap();
            assert_abs_diff_eq!(w.iter().sum::<f64>(), 2.0, epsilon = 1e-12);
            for j in 0..n {
                assert_eq!(w[j], w[n - 1 - j]);
            }
        }
    }

    #[test]
    fn weights_reject_mismatched_roots() {
        let exp = compute_expansion(20.0, 30, &cfg()).unwrap();
        let roots = RootTable { nodes: vec![0.0; 3], ders: vec![1.0; 3] };
        assert!(compute_weights(&exp, &roots, &cfg()).is_err());
    }
}
