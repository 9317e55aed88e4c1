//! Sturm bisection and Rayleigh quotient iteration on the 1-D Laplacian,
//! whose eigenvalues are 2 - 2 cos(k pi / (m + 1)).

use prolate_quad::tridiag::SymTridiagonal;
use prolate_quad::ToleranceConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = 200;
    let t = SymTridiagonal::new(vec![2.0; m], vec![-1.0; m - 1])?;
    let cfg = ToleranceConfig::default();
    let (lo, hi) = t.gershgorin_bounds();
    for k in [1, 50, 200] {
        let exact = 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / (m as f64 + 1.0)).cos();
        let rough = t.bisect_kth_eigenvalue(k, lo, hi, 1e-6)?;
        let rqi = t.rayleigh_iterate(rough, &cfg)?;
        println!(
            "k={k:>3}  bisection {rough:.10}  rqi {:.16}  error {:.1e}  ({} iterations)",
            rqi.eigenvalue,
            (rqi.eigenvalue - exact).abs(),
            rqi.iterations
        );
    }
    println!("eigenvalues below 1: {}", t.sturm_count(1.0));
    Ok(())
}
