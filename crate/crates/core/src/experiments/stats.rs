//! Estimates with standard errors, binned densities and output tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::tree::CumulativeProfile;

/// Monte Carlo mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithError {
    pub value: f64,
    /// Sample standard deviation over `√reps`.
    pub stderr: f64,
    pub reps: usize,
    pub seed: u64,
}

impl EstimateWithError {
    pub fn from_samples(xs: &[f64], seed: u64) -> Result<Self> {
        if xs.len() < 2 {
            return Err(Error::invalid_arg("reps", "at least 2 replications are needed"));
        }
        let (m, sd) = mean_sd(xs);
        Ok(Self {
            value: m,
            stderr: sd / (xs.len() as f64).sqrt(),
            reps: xs.len(),
            seed,
        })
    }

    /// `(value − target) / stderr`.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.value - target) / self.stderr
    }

    pub fn rel_error(&self, target: f64) -> f64 {
        (self.value - target).abs() / target.abs()
    }
}

/// Sample mean and standard deviation (denominator `n − 1`).
pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (m, f64::NAN);
    }
    let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, v.sqrt())
}

/// Nearest-rank percentile, `q ∈ (0, 1]`.
pub fn percentile(xs: &[f64], q: f64) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let rank = ((q * v.len() as f64).ceil() as usize).clamp(1, v.len());
    v[rank - 1]
}

/// Ratio of means `mean(a)/mean(b)` with a bootstrap standard error.
pub fn bootstrap_ratio(a: &[f64], b: &[f64], resamples: usize, seed: u64) -> (f64, f64) {
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let ratio = mean(a) / mean(b);
    let mut rng = RngStream::new(seed, u64::MAX);
    let mut rs = Vec::with_capacity(resamples);
    for _ in 0..resamples {
        let ma = (0..a.len()).map(|_| a[rng.below(a.len())]).sum::<f64>() / a.len() as f64;
        let mb = (0..b.len()).map(|_| b[rng.below(b.len())]).sum::<f64>() / b.len() as f64;
        rs.push(ma / mb);
    }
    (ratio, mean_sd(&rs).1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Bin averages of the scaled profile.
    Density,
    /// Raw integrals over each bin.
    Raw,
}

/// Uniform bins `[x0 + jδ, x0 + (j+1)δ)` of a scaled interpolated profile
/// `x ↦ c · f(x s)`, with the mass outside the bins kept separately.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinnedDensity {
    pub x0: f64,
    pub delta: f64,
    pub mass: Vec<f64>,
    pub below: f64,
    pub above: f64,
    pub mode: Normalization,
}

impl BinnedDensity {
    /// Bins `x ↦ f(x·x_scale) / y_norm` where `f` interpolates `counts`;
    /// bin integrals are exact.
    pub fn from_profile(
        counts: &[u64],
        x_scale: f64,
        y_norm: f64,
        x0: f64,
        delta: f64,
        bins: usize,
        mode: Normalization,
    ) -> Self {
        let cum = CumulativeProfile::new(counts);
        Self::from_cumulative(&cum, x_scale, y_norm, x0, delta, bins, mode)
    }

    /// Same as [`BinnedDensity::from_profile`] from a running integral.
    pub fn from_cumulative(
        cum: &CumulativeProfile,
        x_scale: f64,
        y_norm: f64,
        x0: f64,
        delta: f64,
        bins: usize,
        mode: Normalization,
    ) -> Self {
        // ∫ f(x s)/c dx over [a, b] = (F(bs) − F(as)) / (s c)
        let int = |a: f64| cum.at(a * x_scale) / (x_scale * y_norm);
        let total = cum.at(f64::INFINITY) / (x_scale * y_norm);
        let mut mass = Vec::with_capacity(bins);
        let mut prev = int(x0);
        for j in 0..bins {
            let next = int(x0 + (j + 1) as f64 * delta);
            let m = next - prev;
            mass.push(match mode {
                Normalization::Density => m / delta,
                Normalization::Raw => m,
            });
            prev = next;
        }
        Self {
            x0,
            delta,
            mass,
            below: int(x0),
            above: total - prev,
            mode,
        }
    }

    pub fn edges(&self, j: usize) -> (f64, f64) {
        let a = self.x0 + j as f64 * self.delta;
        (a, a + self.delta)
    }

    /// Total scaled mass, bins plus both overflow parts.
    pub fn total_mass(&self) -> f64 {
        let inside: f64 = match self.mode {
            Normalization::Density => self.mass.iter().map(|m| m * self.delta).sum(),
            Normalization::Raw => self.mass.iter().sum(),
        };
        inside + self.below + self.above
    }
}

/// A CSV table with a header row.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    /// Rows as JSON objects keyed by the header.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: serde_json::Map<String, serde_json::Value> = self
                    .header
                    .iter()
                    .zip(r)
                    .map(|(h, v)| (h.clone(), serde_json::Value::String(v.clone())))
                    .collect();
                serde_json::Value::Object(m)
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// Formats a float for CSV output (shortest round-trip form).
pub fn fmt(x: f64) -> String {
    format!("{x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimate_basics() {
        let e = EstimateWithError::from_samples(&[1.0, 2.0, 3.0, 4.0], 9).unwrap();
        assert_eq!(e.value, 2.5);
        assert!((e.stderr - (5.0f64 / 3.0).sqrt() / 2.0).abs() < 1e-15);
        assert!(EstimateWithError::from_samples(&[1.0], 0).is_err());
    }

    #[test]
    fn binned_mass_is_conserved() {
        let counts = [1u64, 3, 4, 2, 1];
        let b = BinnedDensity::from_profile(&counts, 1.1, 10.0, 0.0, 0.1, 7, Normalization::Density);
        assert!((b.total_mass() - 1.0).abs() < 1e-12);
        let r = BinnedDensity::from_profile(&counts, 1.1, 10.0, 0.0, 0.1, 7, Normalization::Raw);
        assert!((r.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn percentiles() {
        let xs: Vec<f64> = (1..=100).map(|i| i as f64).collect();
        assert_eq!(percentile(&xs, 0.99), 99.0);
        assert_eq!(percentile(&xs, 1.0), 100.0);
    }
}
