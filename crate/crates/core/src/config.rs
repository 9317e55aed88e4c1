use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Numeric knobs for every stage of the construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Absolute width at which Sturm bisection stops (floored at a few ulps of the eigenvalue).
    pub bisection_stop: f64,
    /// Newton stops once a step is below this fraction of the distance to the jet center.
    pub newton_tol: f64,
    /// Number of Taylor terms in every jet.
    pub taylor_order: usize,
    /// RK2 steps across a full pi of the Prufer phase.
    pub rk2_steps: usize,
    pub rqi_eig_tol: f64,
    pub rqi_vec_tol: f64,
    pub rqi_max_iters: usize,
    pub newton_max_iters: usize,
    pub rng_seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            bisection_stop: 2f64.powi(-40),
            newton_tol: 1e-14,
            taylor_order: 30,
            rk2_steps: 10,
            rqi_eig_tol: 1e-14,
            rqi_vec_tol: 1e-10,
            rqi_max_iters: 50,
            newton_max_iters: 20,
            rng_seed: 0,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("bisection_stop", self.bisection_stop),
            ("newton_tol", self.newton_tol),
            ("rqi_eig_tol", self.rqi_eig_tol),
            ("rqi_vec_tol", self.rqi_vec_tol),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput(format!("{name} must be positive, got {v}")));
            }
        }
        if self.taylor_order < 4 {
            return Err(Error::InvalidInput("taylor_order must be at least 4".into()));
        }
        if self.rk2_steps < 2 || self.rqi_max_iters == 0 || self.newton_max_iters == 0 {
            return Err(Error::InvalidInput("iteration and step counts must be positive".into()));
        }
        Ok(())
    }

    /// Short stable fingerprint of the configuration, recorded in rule files.
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let hash = Sha256::digest(json.as_bytes());
        hex::encode(&hash[..8])
    }
}
