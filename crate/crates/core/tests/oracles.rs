mod common;

use common::*;
use nalgebra::{DMatrix, SymmetricEigen};
use prolate_quad::legendre::eval_q_batch;
use prolate_quad::pswf::{
    build_operator_matrix, chi_truncation, eval_psi, psi_taylor_jet, Parity,
};
use prolate_quad::rootfind::find_roots;
use prolate_quad::weights::{psi2_at_nodes, psi2_direct};
use prolate_quad::{build_rule, compute_expansion, compute_lambda, estimate_chi, ToleranceConfig};
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

#[test]
fn chi_matches_dense_eigensolver() {
    for c in [0.5, 5.0, 20.0, 60.0] {
        let dense = dense_chi(c, 31);
        for (n, want) in dense.iter().enumerate() {
            let got = compute_expansion(c, n, &cfg()).unwrap().chi();
            assert!((got - want).abs() <= 1e-10 * want.abs().max(1.0), "c={c} n={n}: {got} vs {want}");
        }
    }
}

#[test]
fn bisection_estimate_is_close_to_dense() {
    let dense = dense_chi(50.0, 40);
    for n in [0, 1, 17, 39] {
        let est = estimate_chi(50.0, n, &cfg()).unwrap();
        assert!((est - dense[n]).abs() <= 2f64.powi(-40) * (1.0 + dense[n]) * 4.0, "n={n}");
    }
}

#[test]
fn sturm_count_matches_dense_spectrum() {
    for parity in [Parity::Even, Parity::Odd] {
        let t = build_operator_matrix(30.0, parity, 40);
        let m = t.dim();
        let mut a = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            a[(i, i)] = t.diag()[i];
            if i + 1 < m {
                a[(i, i + 1)] = t.offdiag()[i];
                a[(i + 1, i)] = t.offdiag()[i];
            }
        }
        let ev = SymmetricEigen::new(a).eigenvalues;
        for x in [-10.0, 0.0, 100.0, 777.7, 2500.0, 1e4, 1e5] {
            let below = ev.iter().filter(|&&e| e < x).count();
            assert_eq!(t.sturm_count(x), below, "{parity:?} x={x}");
        }
    }
}

#[test]
fn rqi_eigenvalue_lies_in_bisection_bracket() {
    for (c, n) in [(20.0, 30), (100.0, 86), (1000.0, 701)] {
        let t = build_operator_matrix(c, Parity::of(n), chi_truncation(c, n));
        let (a, b) = t.bisect_bracket(n / 2 + 1, 0.0, (1.0 + 2.0 * n as f64) * c, 2f64.powi(-40)).unwrap();
        let chi = compute_expansion(c, n, &cfg()).unwrap().chi();
        let slack = 4.0 * f64::EPSILON * chi;
        assert!(a - slack <= chi && chi <= b + slack, "c={c} n={n}: {chi} not in [{a}, {b}]");
    }
}

#[test]
fn roots_match_grid_bisection() {
    let exp = compute_expansion(20.0, 30, &cfg()).unwrap();
    let oracle = grid_roots(&exp, 100_000);
    let roots = find_roots(&exp, &cfg()).unwrap();
    assert_eq!(oracle.len(), 30);
    for (x, y) in roots.nodes.iter().zip(&oracle) {
        assert!((x - y).abs() <= 1e-12, "{x} vs {y}");
    }
}

#[test]
fn weights_match_brute_force_integral() {
    for (c, n) in [(20.0, 30), (100.0, 86)] {
        let rule = build_rule(c, n, &cfg()).unwrap();
        let exp = compute_expansion(c, n, &cfg()).unwrap();
        let oracle = brute_force_weights(&exp, &rule.nodes, 600);
        for (w, o) in rule.weights.iter().zip(&oracle) {
            assert!((w - o).abs() <= 1e-12, "c={c} n={n}: {w} vs {o}");
        }
    }
}

#[test]
fn q_matches_principal_value_integral() {
    for x in [-0.95, -0.3, 0.0, 0.123, 0.7, 0.99] {
        let q = eval_q_batch(40, x).unwrap();
        for k in [0, 1, 2, 5, 13, 40] {
            let pv = principal_value_q(k, x);
            assert!((q[k].0 - pv).abs() <= 1e-12, "k={k} x={x}: {} vs {pv}", q[k].0);
        }
    }
}

#[test]
fn taylor_jet_agrees_with_series() {
    let exp = compute_expansion(50.0, 41, &cfg()).unwrap();
    for x0 in [0.0, 0.31, -0.6, 0.85] {
        let (v, d) = eval_psi(&exp, x0);
        let jet = psi_taylor_jet(&exp, x0, v, d, 30).unwrap();
        for h in [-0.02, 0.01, 0.03] {
            let (jv, jd) = jet.eval(x0 + h);
            let (sv, sd) = eval_psi(&exp, x0 + h);
            assert!((jv - sv).abs() <= 1e-12 * (1.0 + sv.abs()), "x0={x0} h={h}");
            assert!((jd - sd).abs() <= 1e-10 * (1.0 + sd.abs()), "x0={x0} h={h}");
        }
    }
}

#[test]
fn propagated_psi2_matches_direct_near_the_end() {
    for (c, n) in [(100.0, 86), (1000.0, 700), (20.0, 30)] {
        let exp = compute_expansion(c, n, &cfg()).unwrap();
        let roots = find_roots(&exp, &cfg()).unwrap();
        let prop = psi2_at_nodes(&exp, &roots, &cfg()).unwrap();
        for j in [n - 5, n - 4] {
            let direct = psi2_direct(&exp, roots.nodes[j]).unwrap().0;
            assert!((prop[j] - direct).abs() <= 1e-9 * direct.abs(), "c={c} n={n} j={j}");
        }
    }
}

#[test]
fn rule_integrates_lower_pswfs() {
    let (c, n) = (20.0, 30);
    let rule = build_rule(c, n, &cfg()).unwrap();
    for k in 0..n {
        let exp = compute_expansion(c, k, &cfg()).unwrap();
        let quad = rule.integrate(|x| eval_psi(&exp, x).0);
        let exact = 2.0 * exp.alpha().get(0);
        assert!((quad - exact).abs() <= 1e-12, "k={k}: {quad} vs {exact}");
        if k % 2 == 0 {
            let lam = compute_lambda(&exp).unwrap().magnitude;
            assert!((lam * eval_psi(&exp, 0.0).0.abs() - exact.abs()).abs() <= 1e-12);
        }
    }
}

#[test]
fn hilbert_schmidt_norm_is_four() {
    let c = 20.0;
    let total: f64 = (0..80).map(|n| compute_lambda(&compute_expansion(c, n, &cfg()).unwrap()).unwrap().magnitude.powi(2)).sum();
    assert!((total - 4.0).abs() <= 1e-8, "{total}");
}

#[test]
fn small_c_is_gauss_legendre() {
    let rule = build_rule(1e-4, 5, &cfg()).unwrap();
    let (x, w) = gauss_legendre_5();
    for j in 0..5 {
        assert!((rule.nodes[j] - x[j]).abs() <= 1e-8);
        assert!((rule.weights[j] - w[j]).abs() <= 1e-8);
    }
}

#[test]
fn gauss_legendre_baseline_matches_closed_form() {
    let (gx, gw) = prolate_quad::gauss_legendre_rule(5);
    let (x, w) = gauss_legendre_5();
    assert!(max_rel_diff(&gw, &w) < 1e-14);
    for j in 0..5 {
        assert!((gx[j] - x[j]).abs() < 1e-15);
    }
}

#[test]
fn repeated_builds_are_bitwise_identical() {
    let a = build_rule(300.0, 220, &cfg()).unwrap();
    let b = build_rule(300.0, 220, &cfg()).unwrap();
    assert_eq!(a.nodes.iter().map(|x| x.to_bits()).collect::<Vec<_>>(), b.nodes.iter().map(|x| x.to_bits()).collect::<Vec<_>>());
    assert_eq!(a.weights.iter().map(|x| x.to_bits()).collect::<Vec<_>>(), b.weights.iter().map(|x| x.to_bits()).collect::<Vec<_>>());
    assert_eq!(a.chi.to_bits(), b.chi.to_bits());
    assert_eq!(a.lambda_abs.to_bits(), b.lambda_abs.to_bits());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rule_invariants(c in 1.0f64..400.0, extra in 0usize..40) {
        let n = prolate_quad::min_nodes_for_accuracy(c, 1e-14, &cfg()).unwrap() + extra;
        let rule = build_rule(c, n, &cfg()).unwrap();
        let exp = compute_expansion(c, n, &cfg()).unwrap();
        prop_assert!((exp.norm_squared() - 1.0).abs() <= 1e-12);
        for j in 0..n {
            prop_assert_eq!(rule.nodes[j], -rule.nodes[n - 1 - j]);
            prop_assert_eq!(rule.weights[j], rule.weights[n - 1 - j]);
            prop_assert!(rule.weights[j] > 0.0);
        }
        prop_assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        let sum: f64 = rule.weights.iter().sum();
        prop_assert!((sum - 2.0).abs() <= 1e-12f64.max(100.0 * c * f64::EPSILON), "sum={}", sum);
    }

    #[test]
    fn chi_increases_with_n(c in 0.1f64..200.0, n in 0usize..60) {
        let a = compute_expansion(c, n, &cfg()).unwrap().chi();
        let b = compute_expansion(c, n + 1, &cfg()).unwrap().chi();
        prop_assert!(a < b);
    }
}
