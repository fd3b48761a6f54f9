use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Seed radii `σ(n) = ⌊exp(log^{χ³} n)⌋`, `t(n) = ⌊exp(log^{χ²} n)⌋` and
/// the error scale `ε(n) = 1 / log^{10} n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedSchedule {
    pub chi: f64,
}

impl Default for SeedSchedule {
    fn default() -> Self {
        SeedSchedule { chi: 0.5 }
    }
}

fn floor_exp_log_pow(n: u64, a: f64) -> u64 {
    let l = (n.max(1) as f64).ln();
    ((l.powf(a)).exp().floor() as u64).max(1)
}

impl SeedSchedule {
    pub fn new(chi: f64) -> Result<Self> {
        if !(chi > 0.0 && chi < 1.0) {
            return Err(Error::InvalidInput(format!("chi must lie in (0, 1), got {chi}")));
        }
        Ok(SeedSchedule { chi })
    }

    pub fn sigma(&self, n: u64) -> u64 {
        floor_exp_log_pow(n, self.chi.powi(3))
    }

    pub fn t(&self, n: u64) -> u64 {
        floor_exp_log_pow(n, self.chi.powi(2))
    }

    /// Infinite for `n <= 1`.
    pub fn epsilon(&self, n: u64) -> f64 {
        1.0 / (n as f64).ln().powi(10)
    }

    /// Smallest `n0` such that `σ(n) <= t(n) <= n` for every `n` in `[n0, n_max]`.
    pub fn threshold(&self, n_max: u64) -> u64 {
        (1..=n_max).rev().find(|&n| !(self.sigma(n) <= self.t(n) && self.t(n) <= n)).map_or(1, |bad| bad + 1)
    }
}
