//! All roots of `psi_n` in (-1, 1) with `psi_n'` at each root.
//!
//! Starting from the root nearest the origin, each next root is predicted by
//! a crude RK2 solve of the inverted Prufer equation `dx/dtheta` and then
//! polished by Newton's method on a Taylor jet centered at the previous root.
//! Negative roots follow by symmetry.

use std::f64::consts::FRAC_PI_2;

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::pswf::{eval_psi, psi_taylor_jet, PswfExpansion, TaylorJet};

/// Nodes `x_1 < ... < x_n` and `psi_n'(x_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootTable {
    pub nodes: Vec<f64>,
    pub ders: Vec<f64>,
}

impl RootTable {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Result of a Prufer predictor solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub x: f64,
    /// The solve left the region where the phase equation is defined and the
    /// prediction was clamped.
    pub clamped: bool,
}

/// `dx/dtheta` for the PSWF Prufer phase, or `None` outside the oscillatory region.
fn prufer_slope(c: f64, chi: f64, x: f64, theta: f64) -> Option<f64> {
    let c2 = c * c;
    let p = (1.0 - x) * (1.0 + x);
    let r = chi - c2 * x * x;
    if !(p > 0.0 && r > 0.0) {
        return None;
    }
    let x2 = x * x;
    let num = c2 * x - 2.0 * c2 * x * x2 + x * chi;
    let den = 2.0 * r * p;
    let dtheta = -(r / p).sqrt() + num / den * (2.0 * theta).sin();
    if dtheta < 0.0 {
        Some(1.0 / dtheta)
    } else {
        None
    }
}

/// Largest `x` at which the phase equation is still defined.
fn oscillatory_limit(c: f64, chi: f64) -> f64 {
    let turning = chi.sqrt() / c;
    turning.min(1.0)
}

/// Crude midpoint-RK2 solve of `dx/dtheta` from `theta_start` to `theta_end`.
pub fn prufer_predict(
    exp: &PswfExpansion,
    x_start: f64,
    theta_start: f64,
    theta_end: f64,
    steps: usize,
) -> Result<Prediction> {
    if !(x_start.abs() < 1.0) {
        return Err(Error::Domain { what: "prufer start needs |x| < 1", value: x_start });
    }
    let (c, chi) = (exp.c(), exp.chi());
    let steps = steps.max(1);
    let h = (theta_end - theta_start) / steps as f64;
    let limit = oscillatory_limit(c, chi);
    let mut x = x_start;
    let mut theta = theta_start;
    for _ in 0..steps {
        let k1 = prufer_slope(c, chi, x, theta);
        let k2 = k1.and_then(|k1| prufer_slope(c, chi, x + 0.5 * h * k1, theta + 0.5 * h));
        match k2 {
            Some(k2) if (x + h * k2) < limit => {
                x += h * k2;
                theta += h;
            }
            _ => {
                return Ok(Prediction { x: 0.5 * (x + limit), clamped: true });
            }
        }
    }
    Ok(Prediction { x, clamped: false })
}

/// Newton's method for a root of the function carried by `jet`, starting at `x_guess`.
///
/// Returns the root and the derivative there, both evaluated from the jet.
pub fn newton_refine(jet: &TaylorJet, x_guess: f64, cfg: &ToleranceConfig) -> Result<(f64, f64)> {
    newton_logged(jet, x_guess, cfg, None)
}

pub(crate) fn newton_logged(
    jet: &TaylorJet,
    x_guess: f64,
    cfg: &ToleranceConfig,
    mut log: Option<&mut Vec<f64>>,
) -> Result<(f64, f64)> {
    let spacing = (x_guess - jet.center()).abs().max(f64::EPSILON);
    let mut x = x_guess;
    let mut last_step = f64::INFINITY;
    for _ in 0..cfg.newton_max_iters {
        let (f, df) = jet.eval(x);
        if f == 0.0 {
            return Ok((x, df));
        }
        let step = f / df;
        if !step.is_finite() {
            return Err(Error::NewtonDiverged { last: x });
        }
        x -= step;
        if let Some(log) = log.as_deref_mut() {
            log.push(x);
        }
        if !(x.abs() < 1.0) {
            return Err(Error::NewtonDiverged { last: x });
        }
        let size = step.abs();
        // converged, or stuck at roundoff level
        if size <= cfg.newton_tol * spacing || (size >= last_step && size <= 1e3 * f64::EPSILON * spacing.max(x.abs())) {
            return Ok((x, jet.eval(x).1));
        }
        last_step = size;
    }
    Err(Error::NewtonNoConvergence { iterations: cfg.newton_max_iters, last: x })
}

/// All `n` roots of `psi_n` in increasing order, with `psi_n'` at each.
pub fn find_roots(exp: &PswfExpansion, cfg: &ToleranceConfig) -> Result<RootTable> {
    let n = exp.n();
    if n == 0 {
        return Err(Error::InvalidInput("psi_0 has no roots".into()));
    }
    let order = cfg.taylor_order;
    let mid = n / 2;
    let mut nodes = vec![0.0; n];
    let mut ders = vec![0.0; n];

    if n % 2 == 1 {
        nodes[mid] = 0.0;
        ders[mid] = eval_psi(exp, 0.0).1;
    } else {
        let first = || -> Result<(f64, f64)> {
            let psi0 = eval_psi(exp, 0.0).0;
            let jet = psi_taylor_jet(exp, 0.0, psi0, 0.0, order)?;
            let guess = prufer_predict(exp, 0.0, 0.0, -FRAC_PI_2, (cfg.rk2_steps / 2).max(1))?;
            newton_refine(&jet, guess.x, cfg)
        };
        let (root, der) = first().map_err(|e| Error::Root { index: mid + 1, source: Box::new(e) })?;
        nodes[mid] = root;
        ders[mid] = der;
    }

    let endpoint_guard = 1.0 - 10.0 * f64::EPSILON;
    for j in mid..n - 1 {
        let step = || -> Result<(f64, f64)> {
            let jet = psi_taylor_jet(exp, nodes[j], 0.0, ders[j], order)?;
            let guess = prufer_predict(exp, nodes[j], FRAC_PI_2, -FRAC_PI_2, cfg.rk2_steps)?;
            if guess.x > endpoint_guard {
                return Err(Error::RootNearEndpoint { index: j + 2, x: guess.x });
            }
            let (root, der) = newton_refine(&jet, guess.x, cfg)?;
            if root <= nodes[j] || root > endpoint_guard {
                return Err(Error::Inconsistent(format!(
                    "newton from {} landed at {root}, outside ({}, 1)",
                    guess.x, nodes[j]
                )));
            }
            Ok((root, der))
        };
        let (root, der) = step().map_err(|e| Error::Root { index: j + 2, source: Box::new(e) })?;
        nodes[j + 1] = root;
        ders[j + 1] = der;
    }

    let sign = -exp.parity().sign();
    for j in 0..mid {
        nodes[j] = -nodes[n - 1 - j];
        ders[j] = sign * ders[n - 1 - j];
    }
    Ok(RootTable { nodes, ders })
}
