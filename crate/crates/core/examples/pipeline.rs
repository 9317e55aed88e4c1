//! The construction one stage at a time: eigenvalue, expansion, roots, weights.

use prolate_quad::pswf::{estimate_chi, eval_psi, expansion_from_shift};
use prolate_quad::rootfind::find_roots;
use prolate_quad::weights::compute_weights;
use prolate_quad::{compute_lambda, ToleranceConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (c, n) = (50.0, 40);
    let cfg = ToleranceConfig::default();

    let chi0 = estimate_chi(c, n, &cfg)?;
    let exp = expansion_from_shift(c, n, chi0, &cfg)?;
    println!("bisection chi = {chi0:.15e}");
    println!("refined   chi = {:.15e} ({} Legendre terms)", exp.chi(), exp.alpha().coefficients().len());

    let roots = find_roots(&exp, &cfg)?;
    let weights = compute_weights(&exp, &roots, &cfg)?;
    let worst = roots.nodes.iter().map(|&x| eval_psi(&exp, x).0.abs()).fold(0.0, f64::max);
    println!("{} roots, max |psi_n(x_j)| = {worst:.2e}", roots.len());
    println!("sum of weights - 2 = {:.2e}", weights.iter().sum::<f64>() - 2.0);
    println!("|lambda_n| = {:.6e}", compute_lambda(&exp)?.magnitude);

    for (x, w) in roots.nodes.iter().zip(&weights).take(5) {
        println!("  x = {x:+.16}  w = {w:.16e}");
    }
    Ok(())
}
