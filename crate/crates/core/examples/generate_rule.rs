//! Pick the rule size for a target accuracy, build the rule and save it.
//!
//!     cargo run --release --example generate_rule -- 1000 1e-25 rule.json

use prolate_quad::io::{Format, RuleFileRecord};
use prolate_quad::{build_rule, min_nodes_for_accuracy, ToleranceConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let c: f64 = args.first().map_or(Ok(1000.0), |s| s.parse())?;
    let eps: f64 = args.get(1).map_or(Ok(1e-25), |s| s.parse())?;
    let path = args.get(2).cloned().unwrap_or_else(|| "rule.json".into());

    let cfg = ToleranceConfig::default();
    let n = min_nodes_for_accuracy(c, eps, &cfg)?;
    let rule = build_rule(c, n, &cfg)?;
    println!("c = {c}, eps = {eps:e}: n = {n}, chi = {:.10e}, |lambda_n| = {:.5e}", rule.chi, rule.lambda_abs);

    let format = if path.ends_with(".csv") { Format::Csv } else { Format::Json };
    std::fs::write(&path, RuleFileRecord::from_rule(&rule, &cfg).to_string_as(format)?)?;
    println!("wrote {path}");
    Ok(())
}
