//! Rule files: JSON, CSV and plain text, all lossless at full double precision.
//!
//! JSON stores floats in shortest round-trip form. CSV and text carry the
//! header as `#key=value` comment lines followed by one row per node with 17
//! significant digits.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::rule::QuadratureRule;

pub const GENERATOR_VERSION: &str = concat!("prolate-quad ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" | "txt" => Ok(Format::Text),
            other => Err(Error::Format(format!("unknown format '{other}', expected json, csv or text"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleFileRecord {
    pub c: f64,
    pub n: usize,
    pub chi: f64,
    pub lambda_abs: f64,
    pub version: String,
    pub config_digest: String,
    #[serde(default)]
    pub below_transition: bool,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub config: ToleranceConfig,
}

impl RuleFileRecord {
    pub fn from_rule(rule: &QuadratureRule, cfg: &ToleranceConfig) -> Self {
        Self {
            c: rule.c,
            n: rule.n,
            chi: rule.chi,
            lambda_abs: rule.lambda_abs,
            version: GENERATOR_VERSION.to_string(),
            config_digest: cfg.digest(),
            below_transition: rule.below_transition,
            nodes: rule.nodes.clone(),
            weights: rule.weights.clone(),
            config: cfg.clone(),
        }
    }

    pub fn into_rule(self) -> QuadratureRule {
        QuadratureRule {
            c: self.c,
            n: self.n,
            nodes: self.nodes,
            weights: self.weights,
            chi: self.chi,
            lambda_abs: self.lambda_abs,
            below_transition: self.below_transition,
        }
    }

    fn check(&self) -> Result<()> {
        if self.nodes.len() != self.n || self.weights.len() != self.n {
            return Err(Error::Format(format!(
                "header says n={} but found {} nodes and {} weights",
                self.n,
                self.nodes.len(),
                self.weights.len()
            )));
        }
        Ok(())
    }

    pub fn to_string_as(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Format(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut s = self.comment_header()?;
                s.push_str("node,weight\n");
                for (x, w) in self.nodes.iter().zip(&self.weights) {
                    let _ = writeln!(s, "{x:.16e},{w:.16e}");
                }
                Ok(s)
            }
            Format::Text => {
                let mut s = self.comment_header()?;
                for (i, (x, w)) in self.nodes.iter().zip(&self.weights).enumerate() {
                    let _ = writeln!(s, "{:>8} {x:>24.16e} {w:>24.16e}", i + 1);
                }
                Ok(s)
            }
        }
    }

    fn comment_header(&self) -> Result<String> {
        let config = serde_json::to_string(&self.config).map_err(|e| Error::Format(e.to_string()))?;
        let mut s = String::new();
        let _ = writeln!(s, "#c={}", self.c);
        let _ = writeln!(s, "#n={}", self.n);
        let _ = writeln!(s, "#chi={:e}", self.chi);
        let _ = writeln!(s, "#lambda_abs={:e}", self.lambda_abs);
        let _ = writeln!(s, "#version={}", self.version);
        let _ = writeln!(s, "#config_digest={}", self.config_digest);
        let _ = writeln!(s, "#below_transition={}", self.below_transition);
        let _ = writeln!(s, "#config={config}");
        Ok(s)
    }

    /// Parses any of the three formats, detected from the content.
    pub fn parse(text: &str) -> Result<Self> {
        let record = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?
        } else {
            parse_commented(text)?
        };
        record.check()?;
        Ok(record)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

fn parse_commented(text: &str) -> Result<RuleFileRecord> {
    let mut header = std::collections::HashMap::new();
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once('=') {
                header.insert(k.trim().to_string(), v.trim().to_string());
            }
            continue;
        }
        if line == "node,weight" {
            continue;
        }
        let fields: Vec<&str> = if line.contains(',') {
            line.split(',').map(str::trim).collect()
        } else {
            line.split_whitespace().collect()
        };
        let (xs, ws) = match fields.as_slice() {
            [x, w] => (*x, *w),
            [_, x, w] => (*x, *w),
            _ => return Err(Error::Format(format!("line {}: expected a node and a weight", lineno + 1))),
        };
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::Format(format!("line {}: bad number '{s}'", lineno + 1)))
        };
        nodes.push(num(xs)?);
        weights.push(num(ws)?);
    }

    let get = |k: &str| header.get(k).ok_or_else(|| Error::Format(format!("missing header field '{k}'")));
    let float = |k: &str| -> Result<f64> {
        get(k)?.parse().map_err(|_| Error::Format(format!("header field '{k}' is not a number")))
    };
    let config = match header.get("config") {
        Some(s) => serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?,
        None => ToleranceConfig::default(),
    };
    Ok(RuleFileRecord {
        c: float("c")?,
        n: get("n")?.parse().map_err(|_| Error::Format("header field 'n' is not an integer".into()))?,
        chi: float("chi")?,
        lambda_abs: float("lambda_abs")?,
        version: header.get("version").cloned().unwrap_or_default(),
        config_digest: header.get("config_digest").cloned().unwrap_or_default(),
        below_transition: header.get("below_transition").is_some_and(|v| v == "true"),
        nodes,
        weights,
        config,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RuleFileRecord {
        let cfg = ToleranceConfig::default();
        RuleFileRecord {
            c: 1e-4,
            n: 3,
            chi: 12.000000001,
            lambda_abs: 1.2345678901234567e-30,
            version: GENERATOR_VERSION.into(),
            config_digest: cfg.digest(),
            below_transition: false,
            nodes: vec![-0.7745966692414834, 0.0, 0.7745966692414834],
            weights: vec![0.5555555555555556, 0.8888888888888888, 0.5555555555555556 + 1e-16],
            config: cfg,
        }
    }

    #[test]
    fn every_format_round_trips_bitwise() {
        let rec = sample();
        for f in [Format::Json, Format::Csv, Format::Text] {
            let back = RuleFileRecord::parse(&rec.to_string_as(f).unwrap()).unwrap();
            assert_eq!(back, rec, "{f:?}");
        }
    }

    #[test]
    fn row_count_must_match_header() {
        let text = sample().to_string_as(Format::Csv).unwrap();
        let truncated: String = text.lines().take(text.lines().count() - 1).map(|l| format!("{l}\n")).collect();
        assert!(RuleFileRecord::parse(&truncated).is_err());
    }

    #[test]
    fn garbage_is_rejected() {
        assert!(RuleFileRecord::parse("#c=1\nfoo bar baz qux\n").is_err());
        assert!(RuleFileRecord::parse("{ not json").is_err());
        assert!("xml".parse::<Format>().is_err());
    }
}
