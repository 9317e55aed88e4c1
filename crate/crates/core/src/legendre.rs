//! Legendre polynomials `P_k`, Legendre functions of the second kind `Q_k`,
//! their derivatives, and series in each.
//!
//! All evaluations run the three-term recurrence forward from `k = 0`.

use crate::error::{Error, Result};

/// Coefficients `a_0..a_N` of a series `sum a_k P_k` (or `sum a_k Q_k`).
#[derive(Debug, Clone, PartialEq)]
pub struct LegendreSeries(Vec<f64>);

impl LegendreSeries {
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidInput("legendre series needs at least one coefficient".into()));
        }
        if let Some(bad) = coefficients.iter().find(|a| !a.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite legendre coefficient {bad}")));
        }
        Ok(Self(coefficients))
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.0
    }

    /// Index of the last coefficient, `N`.
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, k: usize) -> f64 {
        self.0.get(k).copied().unwrap_or(0.0)
    }

    /// `sum a_k P_k(x)` and its derivative. See [`eval_p_series`].
    pub fn eval_p(&self, x: f64) -> (f64, f64) {
        eval_p_series(&self.0, x)
    }

    /// `sum a_k Q_k(x)` and its derivative. See [`eval_q_series`].
    pub fn eval_q(&self, x: f64) -> Result<(f64, f64)> {
        eval_q_series(&self.0, x)
    }
}

/// Value and derivative of `sum_k coeffs[k] P_k(x)` for `|x| <= 1`.
pub fn eval_p_series(coeffs: &[f64], x: f64) -> (f64, f64) {
    if coeffs.is_empty() {
        return (0.0, 0.0);
    }
    if x.abs() == 1.0 {
        // P_k(+-1) = (+-1)^k, P_k'(+-1) = (+-1)^(k+1) k(k+1)/2
        let mut val = 0.0;
        let mut der = 0.0;
        for (k, &a) in coeffs.iter().enumerate() {
            let kf = k as f64;
            let s = if x < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
            val += s * a;
            der += s * x * a * kf * (kf + 1.0) / 2.0;
        }
        return (val, der);
    }
    let mut val = coeffs[0];
    let mut der = 0.0;
    if coeffs.len() == 1 {
        return (val, der);
    }
    let (mut p_prev, mut p) = (1.0, x);
    let (mut dp_prev, mut dp) = (0.0, 1.0);
    val += coeffs[1] * p;
    der += coeffs[1] * dp;
    for (k, &a) in coeffs.iter().enumerate().skip(2) {
        let kf = k as f64;
        let (p_next, dp_next) = p_step(kf, x, p, p_prev, dp, dp_prev);
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
        val += a * p;
        der += a * dp;
    }
    (val, der)
}

/// One step of the pair recurrences, producing index `k` from `k-1` and `k-2`.
#[inline]
fn p_step(k: f64, x: f64, p1: f64, p2: f64, dp1: f64, dp2: f64) -> (f64, f64) {
    let a = (2.0 * k - 1.0) / k;
    let b = (k - 1.0) / k;
    let p = a * x * p1 - b * p2;
    let dp = a * (p1 + x * dp1) - b * dp2;
    (p, dp)
}

/// Iterator over `(Q_k(x), Q_k'(x))` for `k = 0, 1, ...`.
struct QRecurrence {
    x: f64,
    k: usize,
    cur: (f64, f64),
    prev: (f64, f64),
}

impl QRecurrence {
    fn new(x: f64) -> Result<Self> {
        if !(x.abs() < 1.0) {
            return Err(Error::Domain { what: "Q_k evaluation needs |x| < 1", value: x });
        }
        let q0 = x.atanh();
        let dq0 = 1.0 / ((1.0 - x) * (1.0 + x));
        Ok(Self { x, k: 0, cur: (q0, dq0), prev: (0.0, 0.0) })
    }
}

impl Iterator for QRecurrence {
    type Item = (f64, f64);

    fn next(&mut self) -> Option<(f64, f64)> {
        let out = self.cur;
        let x = self.x;
        let next = match self.k {
            0 => (x * self.cur.0 - 1.0, self.cur.0 + x * self.cur.1),
            k => {
                let kf = (k + 1) as f64;
                p_step(kf, x, self.cur.0, self.prev.0, self.cur.1, self.prev.1)
            }
        };
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        Some(out)
    }
}

/// `(Q_k(x), Q_k'(x))` for `k = 0..=k_max`, `|x| < 1`.
pub fn eval_q_batch(k_max: usize, x: f64) -> Result<Vec<(f64, f64)>> {
    Ok(QRecurrence::new(x)?.take(k_max + 1).collect())
}

/// Value and derivative of `sum_k coeffs[k] Q_k(x)` for `|x| < 1`.
pub fn eval_q_series(coeffs: &[f64], x: f64) -> Result<(f64, f64)> {
    let q = QRecurrence::new(x)?;
    Ok(coeffs
        .iter()
        .zip(q)
        .fold((0.0, 0.0), |(v, d), (&a, (qk, dqk))| (v + a * qk, d + a * dqk)))
}

/// `(P_k(x), P_k'(x))` for `k = 0..=k_max`.
pub fn eval_p_batch(k_max: usize, x: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(k_max + 1);
    out.push((1.0, 0.0));
    if k_max >= 1 {
        out.push((x, 1.0));
    }
    for k in 2..=k_max {
        let (p1, dp1) = out[k - 1];
        let (p2, dp2) = out[k - 2];
        out.push(p_step(k as f64, x, p1, p2, dp1, dp2));
    }
    out
}
