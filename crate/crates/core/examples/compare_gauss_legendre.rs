//! Audit error of the prolate rule and of Gauss-Legendre with the same number of nodes.

use prolate_quad::rule::audit_nodes;
use prolate_quad::{build_rule, gauss_legendre_rule, ToleranceConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = 1000.0;
    let cfg = ToleranceConfig::default();
    println!("{:>6} {:>12} {:>12}", "n", "prolate", "legendre");
    for n in (600..=1100).step_by(50) {
        let rule = build_rule(c, n, &cfg)?;
        let (gx, gw) = gauss_legendre_rule(n);
        let e_p = audit_nodes(c, &rule.nodes, &rule.weights, 100).error;
        let e_g = audit_nodes(c, &gx, &gw, 100).error;
        println!("{n:>6} {e_p:>12.3e} {e_g:>12.3e}");
    }
    Ok(())
}
