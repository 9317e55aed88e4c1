//! Command-line front end. Every command writes to caller-supplied streams so
//! it can be driven from tests; [`run`] returns the process exit code.
//!
//! Exit codes: 0 success, 1 numerical or I/O failure, 2 usage error,
//! 3 accuracy target not met.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::config::ToleranceConfig;
use crate::error::Error;
use crate::io::{Format, RuleFileRecord};
use crate::pswf::{compute_expansion, compute_lambda};
use crate::rule::{
    audit_nodes, build_rule, build_rule_timed, gauss_legendre_rule, min_nodes_for_accuracy, QuadratureRule, MIN_EPS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNMET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "prolate-quad", version, about = "Quadrature rules for bandlimited functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a rule and write it to a file or stdout.
    Generate(GenerateArgs),
    /// Audit a rule against cos(w x) for w in (0, 2c].
    Check(CheckArgs),
    /// Audit error of the prolate rule next to Gauss-Legendre, as CSV.
    CompareGl(RangeArgs),
    /// chi_n and |lambda_n| over a range of n, as CSV.
    Spectrum(RangeArgs),
    /// Per-stage construction timings, as CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("size").required(true).args(["n", "eps"])))]
pub struct GenerateArgs {
    #[arg(long)]
    pub c: f64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: Option<u64>,
    /// Target accuracy; `e-50` means exp(-50).
    #[arg(long, value_parser = parse_eps)]
    pub eps: Option<f64>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub tol: ToleranceArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, required_unless_present = "rule_file", conflicts_with = "rule_file")]
    pub c: Option<f64>,
    #[arg(long, required_unless_present = "rule_file", value_parser = clap::value_parser!(u64).range(1..))]
    pub n: Option<u64>,
    #[arg(long)]
    pub rule_file: Option<PathBuf>,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub num_freqs: u64,
    /// Exit with code 3 if the audit error exceeds this.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long)]
    pub c: f64,
    /// `start:stop:step`, stop inclusive.
    #[arg(long, value_parser = parse_range)]
    pub n_range: NRange,
    #[command(flatten)]
    pub tol: ToleranceArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// One bandlimit with `--n`, or a list with `--eps`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub c: Vec<f64>,
    #[arg(long, value_delimiter = ',', conflicts_with = "eps", required_unless_present = "eps")]
    pub n: Vec<usize>,
    #[arg(long, value_parser = parse_eps)]
    pub eps: Option<f64>,
    #[command(flatten)]
    pub tol: ToleranceArgs,
}

/// Overrides for [`ToleranceConfig`] fields.
#[derive(Debug, Default, Args)]
pub struct ToleranceArgs {
    #[arg(long)]
    pub bisection_stop: Option<f64>,
    #[arg(long)]
    pub newton_tol: Option<f64>,
    #[arg(long)]
    pub taylor_order: Option<usize>,
    #[arg(long)]
    pub rk2_steps: Option<usize>,
    #[arg(long)]
    pub rqi_eig_tol: Option<f64>,
    #[arg(long)]
    pub rqi_vec_tol: Option<f64>,
    #[arg(long)]
    pub rqi_max_iters: Option<usize>,
    #[arg(long)]
    pub newton_max_iters: Option<usize>,
    #[arg(long)]
    pub rng_seed: Option<u64>,
}

impl ToleranceArgs {
    pub fn to_config(&self) -> Result<ToleranceConfig, Error> {
        let mut cfg = ToleranceConfig::default();
        macro_rules! set {
            ($($f:ident),*) => { $(if let Some(v) = self.$f { cfg.$f = v; })* };
        }
        set!(bisection_stop, newton_tol, taylor_order, rk2_steps, rqi_eig_tol, rqi_vec_tol, rqi_max_iters, newton_max_iters, rng_seed);
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: usize,
    pub stop: usize,
    pub step: usize,
}

impl NRange {
    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.stop).step_by(self.step).collect()
    }
}

fn parse_range(s: &str) -> Result<NRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let nums = parts
        .iter()
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("'{p}' is not a nonnegative integer")))
        .collect::<Result<Vec<_>, _>>()?;
    let r = match nums.as_slice() {
        [start, stop] => NRange { start: *start, stop: *stop, step: 1 },
        [start, stop, step] => NRange { start: *start, stop: *stop, step: *step },
        _ => return Err("expected start:stop or start:stop:step".into()),
    };
    if r.start == 0 || r.step == 0 || r.start > r.stop {
        return Err("need 1 <= start <= stop and step >= 1".into());
    }
    Ok(r)
}

fn parse_eps(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let eps = if let Some(p) = t.strip_prefix("e^").or_else(|| t.strip_prefix('e')) {
        let p: f64 = p.parse().map_err(|_| format!("'{s}' is not a number"))?;
        p.exp()
    } else {
        t.parse().map_err(|_| format!("'{s}' is not a number"))?
    };
    if !(eps > 0.0 && eps < 1.0) {
        return Err(format!("eps must lie in (0, 1), got {eps:e}"));
    }
    if eps < MIN_EPS {
        return Err(format!("eps {eps:e} is below {MIN_EPS:e}, where |lambda_n| stops being computable"));
    }
    Ok(eps)
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Numerical(String),
    Unmet(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::Domain { .. } => Failure::Usage(e.to_string()),
            other => Failure::Numerical(describe(&other)),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Numerical(format!("i/o error: {e}"))
    }
}

fn describe(e: &Error) -> String {
    let mut s = e.to_string();
    let mut src = std::error::Error::source(e);
    while let Some(inner) = src {
        s.push_str(": ");
        s.push_str(&inner.to_string());
        src = inner.source();
    }
    s
}

fn check_c(c: f64) -> Result<(), Failure> {
    if c.is_finite() && c > 0.0 {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--c must be a positive number, got {c}")))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(&a, out, err),
        Command::Check(a) => cmd_check(&a, out),
        Command::CompareGl(a) => cmd_compare_gl(&a, out),
        Command::Spectrum(a) => cmd_spectrum(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
    };
    let _ = out.flush();
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Numerical(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_NUMERICAL
        }
        Err(Failure::Unmet(m)) => {
            let _ = writeln!(err, "{m}");
            EXIT_UNMET
        }
    }
}

// THREADS, when set, sizes the pool used for per-n sweeps.
fn with_thread_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let threads = std::env::var("THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok());
    match threads.and_then(|t| rayon::ThreadPoolBuilder::new().num_threads(t).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    check_c(a.c)?;
    let cfg = a.tol.to_config()?;
    let n = match (a.n, a.eps) {
        (Some(n), _) => n as usize,
        (None, Some(eps)) => min_nodes_for_accuracy(a.c, eps, &cfg)?,
        (None, None) => unreachable!("clap enforces --n or --eps"),
    };
    let rule = build_rule(a.c, n, &cfg)?;
    if rule.below_transition {
        let _ = writeln!(err, "warning: n={n} is below 2c/pi; the rule is not expected to be accurate");
    }
    let text = RuleFileRecord::from_rule(&rule, &cfg).to_string_as(a.format)?;
    match &a.output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let rule: QuadratureRule = match &a.rule_file {
        Some(path) => RuleFileRecord::read(path)
            .map_err(|e| Failure::Numerical(format!("cannot read {}: {}", path.display(), describe(&e))))?
            .into_rule(),
        None => {
            let c = a.c.expect("clap enforces --c");
            check_c(c)?;
            build_rule(c, a.n.expect("clap enforces --n") as usize, &a.tolerances.to_config()?)?
        }
    };
    let report = audit_nodes(rule.c, &rule.nodes, &rule.weights, a.num_freqs as usize);
    writeln!(out, "c = {}", rule.c)?;
    writeln!(out, "n = {}", rule.n)?;
    writeln!(out, "E = {:.6e}", report.error)?;
    writeln!(out, "sum_w - 2 = {:.6e}", report.weight_sum_defect)?;
    writeln!(out, "worst omega = {}", report.worst_omega)?;
    if let Some(tol) = a.tol {
        if !(report.error <= tol) {
            return Err(Failure::Unmet(format!("accuracy not met: E = {:.3e} > tol = {tol:.3e}", report.error)));
        }
    }
    Ok(())
}

/// Maps `f` over `ns` in parallel, keeping the order of `ns`.
fn per_n<T: Send>(ns: &[usize], f: impl Fn(usize) -> Result<T, Error> + Sync) -> Result<Vec<T>, Failure> {
    let rows: Vec<Result<T, Error>> = with_thread_pool(|| ns.par_iter().map(|&n| f(n)).collect());
    rows.into_iter()
        .zip(ns)
        .map(|(r, n)| r.map_err(|e| Failure::Numerical(format!("n={n}: {}", describe(&e)))))
        .collect()
}

fn cmd_compare_gl(a: &RangeArgs, out: &mut dyn Write) -> Result<(), Failure> {
    check_c(a.c)?;
    let cfg = a.tol.to_config()?;
    let ns = a.n_range.values();
    let rows = per_n(&ns, |n| {
        let rule = build_rule(a.c, n, &cfg)?;
        let e_pswf = audit_nodes(a.c, &rule.nodes, &rule.weights, 100).error;
        let (gx, gw) = gauss_legendre_rule(n);
        let e_gl = audit_nodes(a.c, &gx, &gw, 100).error;
        Ok((e_pswf, e_gl))
    })?;
    writeln!(out, "n,E_pswf,E_gl")?;
    for (n, (p, g)) in ns.iter().zip(rows) {
        writeln!(out, "{n},{p:.6e},{g:.6e}")?;
    }
    Ok(())
}

fn cmd_spectrum(a: &RangeArgs, out: &mut dyn Write) -> Result<(), Failure> {
    check_c(a.c)?;
    let cfg = a.tol.to_config()?;
    let ns = a.n_range.values();
    let rows = per_n(&ns, |n| {
        let exp = compute_expansion(a.c, n, &cfg)?;
        Ok((exp.chi(), compute_lambda(&exp)?.magnitude))
    })?;
    writeln!(out, "n,chi,lambda_abs")?;
    for (n, (chi, lam)) in ns.iter().zip(rows) {
        writeln!(out, "{n},{chi:.16e},{lam:.16e}")?;
    }
    Ok(())
}

// Timings run sequentially so they do not compete for cores.
fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let cfg = a.tol.to_config()?;
    for &c in &a.c {
        check_c(c)?;
    }
    match a.eps {
        Some(eps) => {
            writeln!(out, "c,n,t_prol,t_roots,t_weights,t_total")?;
            for &c in &a.c {
                let n = min_nodes_for_accuracy(c, eps, &cfg)?;
                let (_, t) = build_rule_timed(c, n, &cfg)?;
                writeln!(
                    out,
                    "{c},{n},{:.6},{:.6},{:.6},{:.6}",
                    t.prol.as_secs_f64(),
                    t.roots.as_secs_f64(),
                    t.weights.as_secs_f64(),
                    t.total.as_secs_f64()
                )?;
            }
        }
        None => {
            let [c] = a.c[..] else {
                return Err(Failure::Usage("with --n, give exactly one --c".into()));
            };
            writeln!(out, "n,t_prol,t_roots,t_weights,t_total")?;
            for &n in &a.n {
                let (_, t) = build_rule_timed(c, n, &cfg)?;
                writeln!(
                    out,
                    "{n},{:.6},{:.6},{:.6},{:.6}",
                    t.prol.as_secs_f64(),
                    t.roots.as_secs_f64(),
                    t.weights.as_secs_f64(),
                    t.total.as_secs_f64()
                )?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_accepts_natural_exponent() {
        assert!((parse_eps("e-50").unwrap() - (-50f64).exp()).abs() < 1e-30);
        assert_eq!(parse_eps("1e-10").unwrap(), 1e-10);
        assert!(parse_eps("1e-200").is_err());
        assert!(parse_eps("2").is_err());
        assert!(parse_eps("abc").is_err());
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("10:20:5").unwrap().values(), vec![10, 15, 20]);
        assert_eq!(parse_range("3:4").unwrap().values(), vec![3, 4]);
        assert!(parse_range("10:5:1").is_err());
        assert!(parse_range("0:5:1").is_err());
        assert!(parse_range("1:5:0").is_err());
        assert!(parse_range("a:b").is_err());
    }

    #[test]
    fn overrides_apply_and_validate() {
        let t = ToleranceArgs { taylor_order: Some(40), ..Default::default() };
        assert_eq!(t.to_config().unwrap().taylor_order, 40);
        let bad = ToleranceArgs { taylor_order: Some(2), ..Default::default() };
        assert!(bad.to_config().is_err());
    }
}
