//! Construction time per stage as n doubles at a fixed bandlimit.

use prolate_quad::rule::build_rule_timed;
use prolate_quad::ToleranceConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c: f64 = std::env::args().nth(1).map_or(Ok(1e4), |s| s.parse())?;
    let cfg = ToleranceConfig::default();
    let knee = (2.0 * c / std::f64::consts::PI) as usize;
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "n", "t_prol", "t_roots", "t_weights", "t_total");
    let mut n = knee / 4;
    while n <= 2 * knee {
        let (_, t) = build_rule_timed(c, n, &cfg)?;
        println!(
            "{n:>8} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            t.prol.as_secs_f64(),
            t.roots.as_secs_f64(),
            t.weights.as_secs_f64(),
            t.total.as_secs_f64()
        );
        n *= 2;
    }
    Ok(())
}
