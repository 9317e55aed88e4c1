//! Reference computations that share no code path with the library solvers.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use prolate_quad::pswf::{eval_psi, PswfExpansion};
use prolate_quad::gauss_legendre_rule;

/// The first `count` eigenvalues `chi_0 < chi_1 < ...` of the prolate operator,
/// from a dense symmetric eigensolve in the normalized Legendre basis (both parities).
pub fn dense_chi(c: f64, count: usize) -> Vec<f64> {
    let m = 2 * count + 2 * c.ceil() as usize + 60;
    let c2 = c * c;
    let mut a = DMatrix::<f64>::zeros(m, m);
    for k in 0..m {
        let kf = k as f64;
        a[(k, k)] = kf * (kf + 1.0) + c2 * (2.0 * kf * (kf + 1.0) - 1.0) / ((2.0 * kf + 3.0) * (2.0 * kf - 1.0));
        if k + 2 < m {
            let off = c2 * (kf + 2.0) * (kf + 1.0) / ((2.0 * kf + 3.0) * ((2.0 * kf + 1.0) * (2.0 * kf + 5.0)).sqrt());
            a[(k, k + 2)] = off;
            a[(k + 2, k)] = off;
        }
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev.truncate(count);
    ev
}

/// Roots of `psi_n` from sign changes on a uniform grid of `cells` cells, refined by bisection.
pub fn grid_roots(exp: &PswfExpansion, cells: usize) -> Vec<f64> {
    let f = |x: f64| eval_psi(exp, x).0;
    let xs: Vec<f64> = (0..=cells).map(|i| -1.0 + 2.0 * i as f64 / cells as f64).collect();
    let mut roots = Vec::new();
    for w in xs.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (fa, fb) = (f(a), f(b));
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa * fb >= 0.0 {
            continue;
        }
        loop {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if (f(m) > 0.0) == (fa > 0.0) {
                a = m;
            } else {
                b = m;
            }
        }
        roots.push(if f(a).abs() <= f(b).abs() { a } else { b });
    }
    roots
}

/// `w_j = int psi_n(x) / ((x - x_j) psi_n'(x_j)) dx` by brute-force Gauss-Legendre.
pub fn brute_force_weights(exp: &PswfExpansion, nodes: &[f64], points: usize) -> Vec<f64> {
    let (gx, gw) = gauss_legendre_rule(points);
    let psi: Vec<f64> = gx.iter().map(|&x| eval_psi(exp, x).0).collect();
    nodes
        .iter()
        .map(|&xj| {
            let d = eval_psi(exp, xj).1;
            gx.iter().zip(&gw).zip(&psi).map(|((x, w), p)| w * p / (x - xj)).sum::<f64>() / d
        })
        .collect()
}

/// `Q_k(x) = 1/2 PV int_{-1}^{1} P_k(t) / (x - t) dt`, with the singularity subtracted.
pub fn principal_value_q(k: usize, x: f64) -> f64 {
    let p = |t: f64| legendre_p(k, t);
    let (gx, gw) = gauss_legendre_rule(200);
    let px = p(x);
    let smooth: f64 = gx.iter().zip(&gw).map(|(t, w)| w * (p(*t) - px) / (x - t)).sum();
    0.5 * (px * ((1.0 + x) / (1.0 - x)).ln() + smooth)
}

/// Plain three-term recurrence for `P_k(x)`.
pub fn legendre_p(k: usize, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if k == 0 {
        return 1.0;
    }
    for j in 1..k {
        let jf = j as f64;
        let p2 = ((2.0 * jf + 1.0) * x * p1 - jf * p0) / (jf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Closed-form 5-point Gauss-Legendre rule.
pub fn gauss_legendre_5() -> ([f64; 5], [f64; 5]) {
    let r = (10.0f64 / 7.0).sqrt();
    let a = (5.0 - 2.0 * r).sqrt() / 3.0;
    let b = (5.0 + 2.0 * r).sqrt() / 3.0;
    let s70 = 70f64.sqrt();
    let wa = (322.0 + 13.0 * s70) / 900.0;
    let wb = (322.0 - 13.0 * s70) / 900.0;
    ([-b, -a, 0.0, a, b], [wb, wa, 128.0 / 225.0, wa, wb])
}

pub fn max_rel_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / y.abs().max(f64::MIN_POSITIVE)).fold(0.0, f64::max)
}
