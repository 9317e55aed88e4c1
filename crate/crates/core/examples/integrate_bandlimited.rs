//! Integrate a random trigonometric sum with frequencies up to 2c.

use prolate_quad::{build_rule, min_nodes_for_accuracy, ToleranceConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = 500.0;
    let cfg = ToleranceConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let terms: Vec<(f64, f64, f64)> = (0..40)
        .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(0.0..2.0 * c), rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    let f = |x: f64| terms.iter().map(|&(a, w, p)| a * (w * x + p).cos()).sum::<f64>();
    // int_{-1}^{1} cos(w x + p) dx = 2 cos(p) sin(w) / w
    let exact: f64 = terms.iter().map(|&(a, w, p)| 2.0 * a * p.cos() * w.sin() / w).sum();

    println!("{:>8} {:>6} {:>12}", "eps", "n", "error");
    for eps in [1e-4, 1e-7, 1e-10, 1e-13] {
        let n = min_nodes_for_accuracy(c, eps, &cfg)?;
        let rule = build_rule(c, n, &cfg)?;
        println!("{eps:>8.0e} {n:>6} {:>12.3e}", (rule.integrate(f) - exact).abs());
    }
    Ok(())
}
