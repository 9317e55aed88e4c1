//! chi_n and |lambda_n| across the transition at n = 2c/pi.

use prolate_quad::{compute_expansion, compute_lambda, ToleranceConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c: f64 = std::env::args().nth(1).map_or(Ok(200.0), |s| s.parse())?;
    let cfg = ToleranceConfig::default();
    let knee = (2.0 * c / std::f64::consts::PI) as usize;
    println!("2c/pi = {:.2}, plateau level sqrt(2 pi / c) = {:.4}", 2.0 * c / std::f64::consts::PI, (2.0 * std::f64::consts::PI / c).sqrt());
    println!("{:>5} {:>22} {:>12}", "n", "chi", "|lambda|");
    for n in (knee.saturating_sub(20)..knee + 60).step_by(5) {
        let exp = compute_expansion(c, n, &cfg)?;
        println!("{n:>5} {:>22.14e} {:>12.5e}", exp.chi(), compute_lambda(&exp)?.magnitude);
    }
    Ok(())
}
