//! Symmetric tridiagonal eigen-machinery: Sturm counts, bisection for a
//! single eigenvalue, shifted solves, and Rayleigh quotient iteration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};

/// Maximum number of times the upper end of a bisection bracket is doubled.
const MAX_DOUBLINGS: usize = 200;

/// Entries at or below this magnitude are ignored by the eigenvector convergence test.
const VECTOR_UNDERFLOW_GUARD: f64 = 1.5e-154;

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidInput("tridiagonal matrix must have dimension >= 1".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidInput(format!(
                "off-diagonal length {} does not match dimension {}",
                offdiag.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite tridiagonal entry".into()));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Interval containing every eigenvalue.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let m = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..m {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < m { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// `T v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let m = self.dim();
        (0..m)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < m {
                    s += self.offdiag[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// `|v|^T |T| |v|`.
    fn abs_quadratic_form(&self, v: &[f64]) -> f64 {
        let m = self.dim();
        (0..m)
            .map(|i| {
                let mut s = self.diag[i].abs() * v[i].abs();
                if i > 0 {
                    s += self.offdiag[i - 1].abs() * v[i - 1].abs();
                }
                if i + 1 < m {
                    s += self.offdiag[i].abs() * v[i + 1].abs();
                }
                s * v[i].abs()
            })
            .sum()
    }

    /// Number of eigenvalues strictly less than `x`.
    ///
    /// Runs the characteristic-polynomial recurrence in ratio form
    /// `q_r = p_r / p_{r-1}` and counts negative ratios. A vanishing ratio is
    /// replaced by `-pivmin`, i.e. counted as a sign change.
    pub fn sturm_count(&self, x: f64) -> usize {
        let pivmin = self.pivmin();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for (d, e) in self.diag[1..].iter().zip(&self.offdiag) {
            q = (d - x) - e * e / q;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn pivmin(&self) -> f64 {
        let emax = self.offdiag.iter().fold(1.0f64, |m, e| m.max(e * e));
        f64::MIN_POSITIVE * emax
    }

    /// Bracket `[a, b]` around the `index`-th smallest eigenvalue (1-based),
    /// with `sturm_count(a) = index - 1` and `sturm_count(b) = index`.
    ///
    /// Starts from `[a0, b0]`, doubling `b` until it lies above the target,
    /// then halves until `b - a < stop` or the interval can no longer be split.
    pub fn bisect_bracket(&self, index: usize, a0: f64, b0: f64, stop: f64) -> Result<(f64, f64)> {
        if index == 0 || index > self.dim() {
            return Err(Error::InvalidInput(format!(
                "eigenvalue index {index} out of range 1..={}",
                self.dim()
            )));
        }
        let (mut a, mut b) = (a0, b0);
        if self.sturm_count(a) >= index {
            // The caller's lower end is already too high; fall back to Gershgorin.
            a = self.gershgorin_bounds().0 - 1.0;
        }
        let mut doublings = 0;
        while self.sturm_count(b) < index {
            if doublings == MAX_DOUBLINGS {
                return Err(Error::Bracket { index, doublings });
            }
            a = b;
            b = if b > 0.0 { 2.0 * b } else { 1.0 };
            doublings += 1;
        }
        loop {
            let mid = 0.5 * (a + b);
            if b - a < stop || mid <= a || mid >= b {
                break;
            }
            if self.sturm_count(mid) < index {
                a = mid;
            } else {
                b = mid;
            }
        }
        Ok((a, b))
    }

    /// Midpoint of the final bracket from [`SymTridiagonal::bisect_bracket`].
    pub fn bisect_kth_eigenvalue(&self, index: usize, a0: f64, b0: f64, stop: f64) -> Result<f64> {
        let (a, b) = self.bisect_bracket(index, a0, b0, stop)?;
        Ok(0.5 * (a + b))
    }

    /// Solves `(T - shift I) y = rhs` by tridiagonal LU with adjacent-row
    /// partial pivoting.
    pub fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Result<ShiftedSolve> {
        let m = self.dim();
        if rhs.len() != m {
            return Err(Error::InvalidInput(format!(
                "rhs length {} does not match dimension {m}",
                rhs.len()
            )));
        }
        let mut d: Vec<f64> = self.diag.iter().map(|v| v - shift).collect();
        let mut dl = self.offdiag.clone();
        let mut du = self.offdiag.clone();
        let mut du2 = vec![0.0; m.saturating_sub(2)];
        let mut swapped = vec![false; m.saturating_sub(1)];

        let scale = self.diag.iter().chain(&self.offdiag).fold(shift.abs(), |s, v| s.max(v.abs()));
        let guard = f64::EPSILON * scale.max(f64::MIN_POSITIVE);
        let tiny = f64::MIN_POSITIVE / f64::EPSILON;
        let mut perturbations = 0;

        for i in 0..m.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i].abs() < tiny {
                    d[i] = if d[i] < 0.0 { -guard } else { guard };
                    perturbations += 1;
                }
                let l = dl[i] / d[i];
                dl[i] = l;
                d[i + 1] -= l * du[i];
            } else {
                let l = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = l;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - l * d[i + 1];
                if i + 2 < m {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -l;
                }
                swapped[i] = true;
            }
        }
        if d[m - 1].abs() < tiny {
            d[m - 1] = if d[m - 1] < 0.0 { -guard } else { guard };
            perturbations += 1;
        }

        let mut y = rhs.to_vec();
        for i in 0..m.saturating_sub(1) {
            if swapped[i] {
                let tmp = y[i];
                y[i] = y[i + 1];
                y[i + 1] = tmp - dl[i] * y[i];
            } else {
                y[i + 1] -= dl[i] * y[i];
            }
        }
        y[m - 1] /= d[m - 1];
        if m >= 2 {
            y[m - 2] = (y[m - 2] - du[m - 2] * y[m - 1]) / d[m - 2];
        }
        for i in (0..m.saturating_sub(2)).rev() {
            y[i] = (y[i] - du[i] * y[i + 1] - du2[i] * y[i + 2]) / d[i];
        }
        Ok(ShiftedSolve { solution: y, perturbations })
    }

    /// Rayleigh quotient iteration from `shift0`, starting from a seeded random unit vector.
    ///
    /// Convergence needs the eigenvalue change below `rqi_eig_tol * (1 + |lambda|)`
    /// (or below the rounding floor of the Rayleigh quotient) and
    /// the largest relative change among the small tail entries of the
    /// eigenvector below `rqi_vec_tol`, both on two consecutive iterations.
    /// See [`tail_change`].
    pub fn rayleigh_iterate(&self, shift0: f64, cfg: &ToleranceConfig) -> Result<RqiResult> {
        let m = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        let mut v: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        normalize(&mut v);

        let mut lambda = shift0;
        let mut streak = 0;
        let mut residual = f64::INFINITY;
        for iter in 1..=cfg.rqi_max_iters {
            let mut x = self.solve_shifted(lambda, &v)?.solution;
            if x.iter().any(|t| !t.is_finite()) {
                return Err(Error::RqiNoConvergence { iterations: iter, residual });
            }
            normalize(&mut x);
            if dot(&x, &v) < 0.0 {
                x.iter_mut().for_each(|t| *t = -*t);
            }
            let tx = self.mul_vec(&x);
            let new_lambda = dot(&x, &tx);
            residual = tx
                .iter()
                .zip(&x)
                .map(|(a, b)| (a - new_lambda * b).powi(2))
                .sum::<f64>()
                .sqrt();

            // Rayleigh quotients cannot settle below the rounding level of |x|^T |T| |x|
            let floor = 8.0 * f64::EPSILON * self.abs_quadratic_form(&x);
            let eig_ok = (new_lambda - lambda).abs() <= (cfg.rqi_eig_tol * (1.0 + new_lambda.abs())).max(floor);
            let vec_change = tail_change(&x, &v);
            let vec_ok = vec_change <= cfg.rqi_vec_tol;

            v = x;
            lambda = new_lambda;
            if eig_ok && vec_ok {
                streak += 1;
                if streak == 2 {
                    if let Some(first) = v.iter().find(|t| **t != 0.0) {
                        if *first < 0.0 {
                            v.iter_mut().for_each(|t| *t = -*t);
                        }
                    }
                    return Ok(RqiResult { eigenvalue: lambda, eigenvector: v, iterations: iter, residual });
                }
            } else {
                streak = 0;
            }
        }
        Err(Error::RqiNoConvergence { iterations: cfg.rqi_max_iters, residual })
    }
}

/// Output of [`SymTridiagonal::solve_shifted`].
#[derive(Debug, Clone)]
pub struct ShiftedSolve {
    pub solution: Vec<f64>,
    /// Number of pivots nudged away from zero.
    pub perturbations: usize,
}

#[derive(Debug, Clone)]
pub struct RqiResult {
    pub eigenvalue: f64,
    /// Unit 2-norm; first nonzero entry positive.
    pub eigenvector: Vec<f64>,
    pub iterations: usize,
    /// `||T v - lambda v||_2` at the final iterate.
    pub residual: f64,
}

/// Relative size below which an entry at either end of the vector counts as tail.
const TAIL_THRESHOLD: f64 = 1e-3;

/// Largest componentwise relative change between `new` and `old` over the
/// leading and trailing tails of `new`: the runs of entries before the first
/// and after the last entry of magnitude `TAIL_THRESHOLD * max|new|`.
///
/// The tails decay monotonically, so their entries carry high relative
/// accuracy; the interior oscillates and its near-zeros only carry absolute
/// accuracy. Entries below `VECTOR_UNDERFLOW_GUARD` are skipped.
fn tail_change(new: &[f64], old: &[f64]) -> f64 {
    let big = new.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    let thresh = TAIL_THRESHOLD * big;
    let first = new.iter().position(|t| t.abs() >= thresh).unwrap_or(0);
    let last = new.iter().rposition(|t| t.abs() >= thresh).unwrap_or(new.len() - 1);
    let rel = |i: usize| {
        let a = new[i];
        if a.abs() > VECTOR_UNDERFLOW_GUARD {
            ((a - old[i]) / a).abs()
        } else {
            0.0
        }
    };
    (0..first).chain(last + 1..new.len()).map(rel).fold(0.0, f64::max)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) {
    let big = v.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    if big == 0.0 {
        return;
    }
    v.iter_mut().for_each(|t| *t /= big);
    let norm = v.iter().map(|t| t * t).sum::<f64>().sqrt();
    v.iter_mut().for_each(|t| *t /= norm);
}
