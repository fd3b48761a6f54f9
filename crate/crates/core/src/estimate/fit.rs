use serde::{Deserialize, Serialize};

use super::Estimate;
use crate::error::{Error, Result};
use crate::stats::{linear_fit, Z95};

/// Regressor used against `log p̂`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecayModel {
    /// `log p̂ ~ n`.
    ExpInN,
    /// `log p̂ ~ n^α`.
    Stretched { alpha: f64 },
    /// `log p̂ ~ log n`.
    PowerLaw,
}

impl DecayModel {
    pub fn regressor(&self, n: f64) -> f64 {
        match *self {
            DecayModel::ExpInN => n,
            DecayModel::Stretched { alpha } => n.powf(alpha),
            DecayModel::PowerLaw => n.ln(),
        }
    }

    /// Column header for the regressor in plot data.
    pub fn axis_label(&self) -> String {
        match *self {
            DecayModel::ExpInN => "n".into(),
            DecayModel::Stretched { alpha } => format!("n^{alpha}"),
            DecayModel::PowerLaw => "log_n".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitPoint {
    pub n: f64,
    pub x: f64,
    pub log_p: f64,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: DecayModel,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub points: Vec<FitPoint>,
}

impl FitResult {
    /// Two whitespace-separated columns: regressor and `log p̂`.
    pub fn plot_data(&self) -> String {
        let mut out = format!("# {} log_p_hat\n", self.model.axis_label());
        for p in &self.points {
            out.push_str(&format!("{} {}\n", p.x, p.log_p));
        }
        out
    }
}

/// Weighted least squares of `log p̂` on the model's regressor.
///
/// Zero estimates are dropped. Each point is weighted by `1/σ²` where `σ`
/// is the Wilson interval width on the log scale divided by `2·1.96`.
pub fn fit_decay(table: &[(f64, Estimate)], model: DecayModel) -> Result<FitResult> {
    if let DecayModel::Stretched { alpha } = model {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidInput(format!("stretched exponent must be positive, got {alpha}")));
        }
    }
    let points: Vec<FitPoint> = table
        .iter()
        .filter(|(n, e)| e.p_hat > 0.0 && *n > 0.0)
        .map(|(n, e)| {
            let sigma = if e.ci_low > 0.0 { (e.ci_high.ln() - e.ci_low.ln()) / (2.0 * Z95) } else { 0.0 };
            let weight = if sigma > 0.0 { 1.0 / (sigma * sigma) } else { 1.0 };
            FitPoint { n: *n, x: model.regressor(*n), log_p: e.p_hat.ln(), weight }
        })
        .collect();
    if points.len() < 4 {
        return Err(Error::InsufficientPoints { needed: 4, got: points.len() });
    }
    let xy: Vec<(f64, f64)> = points.iter().map(|p| (p.x, p.log_p)).collect();
    let w: Vec<f64> = points.iter().map(|p| p.weight).collect();
    let line = linear_fit(&xy, &w);
    Ok(FitResult { model, slope: line.slope, intercept: line.intercept, r2: line.r2, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(f: impl Fn(f64) -> f64, ns: &[f64]) -> Vec<(f64, Estimate)> {
        let total = 1u64 << 40;
        ns.iter()
            .map(|&n| (n, Estimate::from_counts((f(n) * total as f64).round() as u64, total, 0, String::new())))
            .collect()
    }

    #[test]
    fn exponential_table() {
        let ns: Vec<f64> = (1..=12).map(f64::from).collect();
        let fit = fit_decay(&synthetic(|n| (-0.5 * n).exp(), &ns), DecayModel::ExpInN).unwrap();
        assert!((-0.55..=-0.45).contains(&fit.slope), "{fit:?}");
        assert!(fit.r2 >= 0.99);
        assert_eq!(fit.plot_data().lines().count(), 13);
    }

    #[test]
    fn stretched_table() {
        let ns: Vec<f64> = (1..=20).map(|k| f64::from(k * k)).collect();
        let table = synthetic(|n| (-n.sqrt()).exp(), &ns);
        let fit = fit_decay(&table, DecayModel::Stretched { alpha: 0.5 }).unwrap();
        assert!((fit.slope + 1.0).abs() < 0.02, "{fit:?}");
        assert!(fit.r2 >= 0.99);
        let plain = fit_decay(&table, DecayModel::ExpInN).unwrap();
        assert!(plain.r2 < fit.r2);
    }

    #[test]
    fn too_few_points() {
        let table = synthetic(|n| (-n).exp(), &[1.0, 2.0, 3.0]);
        assert!(matches!(fit_decay(&table, DecayModel::ExpInN), Err(Error::InsufficientPoints { needed: 4, got: 3 })));
        let mut table = synthetic(|n| (-n).exp(), &[1.0, 2.0, 3.0, 4.0]);
        table[0].1 = Estimate::from_counts(0, 100, 0, String::new());
        assert!(fit_decay(&table, DecayModel::ExpInN).is_err());
    }

    #[test]
    fn power_law_slope() {
        let ns: Vec<f64> = (2..=10).map(|k| f64::from(k) * 4.0).collect();
        let fit = fit_decay(&synthetic(|n| n.powf(-1.5), &ns), DecayModel::PowerLaw).unwrap();
        assert!((fit.slope + 1.5).abs() < 0.01, "{fit:?}");
    }
}
