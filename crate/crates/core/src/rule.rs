//! End-to-end rule construction, accuracy audit, `n(eps)` search and the
//! Gauss-Legendre baseline.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use crate::config::ToleranceConfig;
use crate::error::{Error, Result, Stage};
use crate::legendre::eval_p_batch;
use crate::pswf::{compute_lambda, estimate_chi, expansion_from_shift};
use crate::rootfind::find_roots;
use crate::weights::compute_weights;

/// An `n`-point rule `{(w_j, x_j)}` for functions of bandlimit `c` on [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub c: f64,
    pub n: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub chi: f64,
    pub lambda_abs: f64,
    /// `n < 2c/pi`: the rule exists but its accuracy is not covered by theory.
    pub below_transition: bool,
}

impl QuadratureRule {
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(*x)).sum()
    }
}

/// Wall-clock split of one construction.
#[derive(Debug, Clone, Copy, Default)]
pub struct StageTimings {
    /// Bisection plus Rayleigh quotient iteration.
    pub prol: Duration,
    pub roots: Duration,
    pub weights: Duration,
    pub total: Duration,
}

/// `2c/pi`, roughly the number of eigenvalues on the plateau.
pub fn transition_index(c: f64) -> f64 {
    2.0 * c / PI
}

/// Builds the `n`-point rule for bandlimit `c`.
pub fn build_rule(c: f64, n: usize, cfg: &ToleranceConfig) -> Result<QuadratureRule> {
    build_rule_timed(c, n, cfg).map(|(rule, _)| rule)
}

/// [`build_rule`] that also reports per-stage timings.
pub fn build_rule_timed(c: f64, n: usize, cfg: &ToleranceConfig) -> Result<(QuadratureRule, StageTimings)> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::Domain { what: "bandlimit c must be positive", value: c });
    }
    if n == 0 {
        return Err(Error::InvalidInput("a rule needs n >= 1 nodes".into()));
    }
    cfg.validate()?;
    let start = Instant::now();
    let chi_tilde = estimate_chi(c, n, cfg).map_err(|e| e.at_stage(Stage::Chi))?;
    let exp = expansion_from_shift(c, n, chi_tilde, cfg).map_err(|e| e.at_stage(Stage::Expansion))?;
    let t_prol = start.elapsed();

    let t0 = Instant::now();
    let roots = find_roots(&exp, cfg).map_err(|e| e.at_stage(Stage::Roots))?;
    let t_roots = t0.elapsed();

    let t0 = Instant::now();
    let weights = compute_weights(&exp, &roots, cfg).map_err(|e| e.at_stage(Stage::Weights))?;
    let t_weights = t0.elapsed();

    let lambda = compute_lambda(&exp).map_err(|e| e.at_stage(Stage::Lambda))?;
    let total = start.elapsed();

    let rule = QuadratureRule {
        c,
        n,
        nodes: roots.nodes,
        weights,
        chi: exp.chi(),
        lambda_abs: lambda.magnitude,
        below_transition: (n as f64) < transition_index(c),
    };
    Ok((rule, StageTimings { prol: t_prol, roots: t_roots, weights: t_weights, total }))
}

/// `|lambda_n|` for bandlimit `c`.
pub fn lambda_abs(c: f64, n: usize, cfg: &ToleranceConfig) -> Result<f64> {
    let chi = estimate_chi(c, n, cfg)?;
    let exp = expansion_from_shift(c, n, chi, cfg)?;
    Ok(compute_lambda(&exp)?.magnitude)
}

/// Smallest accuracy accepted by [`min_nodes_for_accuracy`]; `|lambda_n|`
/// below this is not reliably computable in double precision.
pub const MIN_EPS: f64 = 1e-150;

/// Smallest `n` with `|lambda_n| < eps`.
pub fn min_nodes_for_accuracy(c: f64, eps: f64, cfg: &ToleranceConfig) -> Result<usize> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain { what: "eps must lie in (0, 1)", value: eps });
    }
    if eps < MIN_EPS {
        return Err(Error::Domain { what: "eps below the lambda computability floor 1e-150", value: eps });
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::Domain { what: "bandlimit c must be positive", value: c });
    }
    let below = |n: usize| -> Result<bool> { Ok(lambda_abs(c, n, cfg)? < eps) };

    let mut lo = transition_index(c).ceil() as usize;
    while lo > 0 && below(lo)? {
        lo /= 2;
    }
    if lo == 0 && below(0)? {
        return Ok(0);
    }
    // |lambda_lo| >= eps from here on
    let margin = (10.0 + 1.5 * c.ln() + 0.5 * (1.0 / eps).ln()) * (c / 2.0).ln().max(1.0);
    let mut hi = (transition_index(c) + margin).ceil() as usize + 50;
    hi = hi.max(lo + 1);
    while !below(hi)? {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if below(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // |lambda_n| is only nonincreasing; make sure nothing below also qualifies
    while hi > 0 && below(hi - 1)? {
        hi -= 1;
    }
    Ok(hi)
}

/// Worst-case error over the test frequencies, and where it occurred.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditReport {
    pub error: f64,
    pub worst_omega: f64,
    pub weight_sum_defect: f64,
}

/// `max_k |int cos(w_k x) dx - sum_j w_j cos(w_k x_j)|` with `w_k = 2kc/100`, `k = 1..100`.
pub fn audit_error(rule: &QuadratureRule) -> f64 {
    audit_nodes(rule.c, &rule.nodes, &rule.weights, 100).error
}

/// Audit with `num_freqs` equispaced frequencies on `(0, 2c]`.
pub fn audit_nodes(c: f64, nodes: &[f64], weights: &[f64], num_freqs: usize) -> AuditReport {
    let mut error = 0.0;
    let mut worst_omega = 0.0;
    for k in 1..=num_freqs {
        let omega = 2.0 * k as f64 * c / num_freqs as f64;
        let exact = 2.0 * omega.sin() / omega;
        let approx: f64 = nodes.iter().zip(weights).map(|(x, w)| w * (omega * x).cos()).sum();
        let e = (exact - approx).abs();
        if e > error {
            error = e;
            worst_omega = omega;
        }
    }
    let weight_sum_defect = weights.iter().sum::<f64>() - 2.0;
    AuditReport { error, worst_omega, weight_sum_defect }
}

/// Classical `n`-point Gauss-Legendre nodes and weights (increasing nodes).
pub fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // i-th largest root
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let pd = eval_p_batch(n, x)[n];
            dp = pd.1;
            let dx = pd.0 / pd.1;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1e-300) {
                break;
            }
        }
        dp = eval_p_batch(n, x).get(n).map_or(dp, |p| p.1);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}
