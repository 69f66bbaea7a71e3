//! Weight sequences, offspring distributions and the tilting algebra.
//!
//! A weight sequence is either a rooted sequence `φ_k` (weight of a vertex
//! with `k` children) or an unrooted sequence `w_k` (weight of a vertex of
//! degree `k`). Analytic families are stored in closed form so moments and
//! generating-function derivatives never need truncation; everything else
//! is a finite table.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Tail threshold below which dense probability tables are cut.
const DENSE_TAIL: f64 = 1e-20;
/// Hard cap on the length of dense probability tables.
const DENSE_CAP: usize = 10_000_000;
/// Index cap used when an analytic unrooted family is turned into tables.
pub const DEFAULT_TABLE_TRUNCATION: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    RootedPhi,
    UnrootedW,
}

/// Closed-form weight families; every family is closed under tilting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `c r^k`
    Geometric { scale: f64, ratio: f64 },
    /// `c (m)_k / k! r^k` with rising factorial `(m)_k`
    NegativeBinomial { scale: f64, ratio: f64, shape: f64 },
    /// `c λ^k / k!`
    Poisson { scale: f64, rate: f64 },
    /// `c r^k / k` for `k ≥ 1`, zero at `k = 0`
    Logarithmic { scale: f64, ratio: f64 },
    /// `c r^k (k − s)!` for `k ≥ s`, zero below the shift `s`
    Factorial { scale: f64, ratio: f64, shift: u32 },
    /// Finite support.
    Table { coeffs: Vec<f64> },
}

fn powk(r: f64, k: usize) -> f64 {
    if k == 0 {
        1.0
    } else if r == 0.0 {
        0.0
    } else if k <= i32::MAX as usize {
        r.powi(k as i32)
    } else {
        r.powf(k as f64)
    }
}

/// Rising factorial `(m)_j = m (m+1) ... (m+j-1)`.
fn rising(m: f64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (m + i as f64))
}

fn factorial(j: usize) -> f64 {
    if j <= 170 {
        (1..=j).fold(1.0, |acc, i| acc * i as f64)
    } else {
        f64::INFINITY
    }
}

impl Family {
    /// Coefficient of `z^k`.
    pub fn coefficient(&self, k: usize) -> f64 {
        match *self {
            Family::Geometric { scale, ratio } => scale * powk(ratio, k),
            Family::NegativeBinomial { scale, ratio, shape } => {
                if k <= 200 {
                    let mut t = scale;
                    for j in 0..k {
                        t *= (shape + j as f64) / (j as f64 + 1.0) * ratio;
                    }
                    t
                } else if ratio == 0.0 {
                    0.0
                } else {
                    let kf = k as f64;
                    scale
                        * (ln_gamma(kf + shape) - ln_gamma(shape) - ln_gamma(kf + 1.0)
                            + kf * ratio.ln())
                        .exp()
                }
            }
            Family::Poisson { scale, rate } => {
                if k <= 200 {
                    (0..k).fold(scale, |t, j| t * rate / (j as f64 + 1.0))
                } else if rate == 0.0 {
                    0.0
                } else {
                    let kf = k as f64;
                    scale * (kf * rate.ln() - ln_gamma(kf + 1.0)).exp()
                }
            }
            Family::Logarithmic { scale, ratio } => {
                if k == 0 {
                    0.0
                } else {
                    scale * powk(ratio, k) / k as f64
                }
            }
            Family::Factorial {
                scale,
                ratio,
                shift,
            } => {
                let s = shift as usize;
                if k < s {
                    0.0
                } else {
                    scale * powk(ratio, k) * factorial(k - s)
                }
            }
            Family::Table { ref coeffs } => coeffs.get(k).copied().unwrap_or(0.0),
        }
    }

    /// Radius of convergence of `Σ c_k z^k`; `+∞` for finite tables.
    pub fn radius(&self) -> f64 {
        match *self {
            Family::Geometric { ratio, .. }
            | Family::NegativeBinomial { ratio, .. }
            | Family::Logarithmic { ratio, .. } => {
                if ratio == 0.0 {
                    f64::INFINITY
                } else {
                    1.0 / ratio
                }
            }
            Family::Poisson { .. } | Family::Table { .. } => f64::INFINITY,
            Family::Factorial { ratio, .. } => {
                if ratio == 0.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
        }
    }

    /// `j`-th derivative of the generating function at real `s ≥ 0`;
    /// `+∞` outside the disc of convergence.
    pub fn derivative(&self, j: usize, s: f64) -> f64 {
        match *self {
            Family::Geometric { scale, ratio } => {
                let d = 1.0 - ratio * s;
                if d <= 0.0 {
                    return f64::INFINITY;
                }
                scale * powk(ratio, j) * factorial(j) * d.powi(-(j as i32 + 1))
            }
            Family::NegativeBinomial {
                scale,
                ratio,
                shape,
            } => {
                let d = 1.0 - ratio * s;
                if d <= 0.0 {
                    return f64::INFINITY;
                }
                scale * powk(ratio, j) * rising(shape, j) * d.powf(-(shape + j as f64))
            }
            Family::Poisson { scale, rate } => scale * powk(rate, j) * (rate * s).exp(),
            Family::Logarithmic { scale, ratio } => {
                let d = 1.0 - ratio * s;
                if d <= 0.0 {
                    return f64::INFINITY;
                }
                if j == 0 {
                    -scale * d.ln()
                } else {
                    scale * powk(ratio, j) * factorial(j - 1) * d.powi(-(j as i32))
                }
            }
            Family::Factorial { .. } => {
                if s == 0.0 {
                    factorial(j) * self.coefficient(j)
                } else if self.radius().is_infinite() {
                    // ratio 0: only the shift term survives
                    let Family::Factorial { scale, shift, .. } = *self else {
                        unreachable!()
                    };
                    if shift == 0 && j == 0 {
                        scale
                    } else {
                        0.0
                    }
                } else {
                    f64::INFINITY
                }
            }
            Family::Table { ref coeffs } => {
                let mut acc = 0.0;
                for k in (j..coeffs.len()).rev() {
                    let falling = ((k - j + 1)..=k).fold(1.0, |a, i| a * i as f64);
                    acc = acc * s + falling * coeffs[k];
                }
                acc
            }
        }
    }

    /// `a b^k c_k`.
    pub fn tilt(&self, a: f64, b: f64) -> Family {
        match *self {
            Family::Geometric { scale, ratio } => Family::Geometric {
                scale: a * scale,
                ratio: b * ratio,
            },
            Family::NegativeBinomial {
                scale,
                ratio,
                shape,
            } => Family::NegativeBinomial {
                scale: a * scale,
                ratio: b * ratio,
                shape,
            },
            Family::Poisson { scale, rate } => Family::Poisson {
                scale: a * scale,
                rate: b * rate,
            },
            Family::Logarithmic { scale, ratio } => Family::Logarithmic {
                scale: a * scale,
                ratio: b * ratio,
            },
            Family::Factorial {
                scale,
                ratio,
                shift,
            } => Family::Factorial {
                scale: a * scale,
                ratio: b * ratio,
                shift,
            },
            Family::Table { ref coeffs } => Family::Table {
                coeffs: coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| a * powk(b, k) * c)
                    .collect(),
            },
        }
    }

    fn check_params(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidWeights(what.to_string()));
        let ok = |x: f64| x.is_finite() && x >= 0.0;
        match *self {
            Family::Geometric { scale, ratio }
            | Family::Logarithmic { scale, ratio }
            | Family::Factorial { scale, ratio, .. } => {
                if !ok(scale) || !ok(ratio) {
                    return bad("scale and ratio must be finite and nonnegative");
                }
            }
            Family::Poisson { scale, rate } => {
                if !ok(scale) || !ok(rate) {
                    return bad("scale and rate must be finite and nonnegative");
                }
            }
            Family::NegativeBinomial {
                scale,
                ratio,
                shape,
            } => {
                if !ok(scale) || !ok(ratio) || !(shape.is_finite() && shape > 0.0) {
                    return bad("scale, ratio must be nonnegative and shape positive");
                }
            }
            Family::Table { ref coeffs } => {
                if coeffs.iter().any(|&c| !ok(c)) {
                    return bad("table coefficients must be finite and nonnegative");
                }
            }
        }
        Ok(())
    }

    /// True if some coefficient with index `≥ k` is positive.
    fn has_positive_from(&self, k: usize) -> bool {
        match *self {
            Family::Table { ref coeffs } => coeffs.iter().skip(k).any(|&c| c > 0.0),
            Family::Factorial { scale, ratio, shift } => {
                scale > 0.0 && (ratio > 0.0 || (shift as usize) >= k)
            }
            Family::Geometric { scale, ratio }
            | Family::NegativeBinomial { scale, ratio, .. }
            | Family::Logarithmic { scale, ratio } => {
                scale > 0.0 && (ratio > 0.0 || (k == 0 && self.coefficient(0) > 0.0))
            }
            Family::Poisson { scale, rate } => scale > 0.0 && (rate > 0.0 || k == 0),
        }
    }
}

/// A nonnegative weight sequence together with its interpretation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightSequence {
    pub kind: WeightKind,
    pub family: Family,
}

impl WeightSequence {
    /// Builds a sequence after checking that every coefficient is finite
    /// and nonnegative.
    pub fn new(kind: WeightKind, family: Family) -> Result<Self> {
        family.check_params()?;
        Ok(Self { kind, family })
    }

    pub fn rooted(family: Family) -> Result<Self> {
        Self::new(WeightKind::RootedPhi, family)
    }

    pub fn unrooted(family: Family) -> Result<Self> {
        Self::new(WeightKind::UnrootedW, family)
    }

    pub fn table(kind: WeightKind, coeffs: Vec<f64>) -> Result<Self> {
        Self::new(kind, Family::Table { coeffs })
    }

    pub fn coefficient(&self, k: usize) -> f64 {
        self.family.coefficient(k)
    }

    pub fn radius(&self) -> f64 {
        self.family.radius()
    }

    /// Checks the offspring-weight invariant `φ_0 > 0` and `φ_k > 0` for
    /// some `k ≥ 2`.
    pub fn require_offspring(&self) -> Result<()> {
        if self.kind != WeightKind::RootedPhi {
            return Err(Error::InvalidWeights(
                "expected rooted weights φ_k".to_string(),
            ));
        }
        if !(self.coefficient(0) > 0.0) || !self.family.has_positive_from(2) {
            return Err(Error::InvalidWeights(
                "offspring weights need φ_0 > 0 and φ_k > 0 for some k ≥ 2".to_string(),
            ));
        }
        Ok(())
    }

    /// Checks the unrooted invariant `w_1 > 0` and `w_k > 0` for some `k ≥ 3`.
    pub fn require_unrooted(&self) -> Result<()> {
        if self.kind != WeightKind::UnrootedW {
            return Err(Error::InvalidWeights(
                "expected unrooted weights w_k".to_string(),
            ));
        }
        if !(self.coefficient(1) > 0.0) || !self.family.has_positive_from(3) {
            return Err(Error::InvalidWeights(
                "unrooted weights need w_1 > 0 and w_k > 0 for some k ≥ 3".to_string(),
            ));
        }
        Ok(())
    }

    /// `(a b^k w_k)`, same kind.
    pub fn tilt(&self, a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0 && b.is_finite() && b > 0.0) {
            return Err(Error::invalid_arg("tilt", "a and b must be positive and finite"));
        }
        Ok(Self {
            kind: self.kind,
            family: self.family.tilt(a, b),
        })
    }

    /// Mean and variance of the normalized sequence `w_k / Σ w_j`.
    pub fn mean_variance(&self) -> Result<(f64, f64)> {
        let f0 = self.family.derivative(0, 1.0);
        let f1 = self.family.derivative(1, 1.0);
        let f2 = self.family.derivative(2, 1.0);
        if !(f0.is_finite() && f1.is_finite() && f2.is_finite()) || self.radius() <= 1.0 {
            return Err(Error::MomentDiverges(format!(
                "radius of convergence {} does not exceed 1",
                self.radius()
            )));
        }
        if f0 <= 0.0 {
            return Err(Error::InvalidWeights("total weight is zero".to_string()));
        }
        let mu = f1 / f0;
        Ok((mu, f2 / f0 + mu - mu * mu))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A probability sequence with cached moments, span and a dense table for
/// sampling.
#[derive(Clone, Debug)]
pub struct OffspringDistribution {
    law: WeightSequence,
    probs: Vec<f64>,
    mean: f64,
    variance: f64,
    span: usize,
}

impl OffspringDistribution {
    /// Normalizes a rooted weight sequence into a probability law.
    pub fn from_weights(ws: &WeightSequence) -> Result<Self> {
        if ws.kind != WeightKind::RootedPhi {
            return Err(Error::InvalidWeights(
                "offspring laws come from rooted weights".to_string(),
            ));
        }
        let total = ws.family.derivative(0, 1.0);
        if !total.is_finite() || ws.radius() <= 1.0 && !matches!(ws.family, Family::Table { .. }) {
            return Err(Error::MomentDiverges(format!(
                "weights are not summable (radius {})",
                ws.radius()
            )));
        }
        if total <= 0.0 {
            return Err(Error::InvalidWeights("total weight is zero".to_string()));
        }
        let law = ws.tilt(1.0 / total, 1.0)?;
        let (mean, variance) = law.mean_variance()?;
        let probs = dense_table(&law.family)?;
        let span = span_of(&probs);
        Ok(Self {
            law,
            probs,
            mean,
            variance,
            span,
        })
    }

    /// `p_k = (1−q) q^k`.
    pub fn geometric(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::invalid_arg("q", "geometric needs 0 < q < 1"));
        }
        Self::from_weights(&WeightSequence::rooted(Family::Geometric {
            scale: 1.0 - q,
            ratio: q,
        })?)
    }

    /// Binomial(2, q): `((1−q)², 2q(1−q), q²)`.
    pub fn binary(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::invalid_arg("q", "binary needs 0 < q < 1"));
        }
        Self::from_probabilities(vec![(1.0 - q) * (1.0 - q), 2.0 * q * (1.0 - q), q * q])
    }

    /// Poisson(λ).
    pub fn poisson(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::invalid_arg("lambda", "poisson needs λ > 0"));
        }
        Self::from_weights(&WeightSequence::rooted(Family::Poisson {
            scale: (-lambda).exp(),
            rate: lambda,
        })?)
    }

    /// Finite probability vector; must sum to 1 within 1e-12.
    pub fn from_probabilities(p: Vec<f64>) -> Result<Self> {
        let s: f64 = p.iter().sum();
        if (s - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidWeights(format!(
                "probabilities sum to {s}, not 1"
            )));
        }
        Self::from_weights(&WeightSequence::table(WeightKind::RootedPhi, p)?)
    }

    /// Normalized law in closed form.
    pub fn law(&self) -> &WeightSequence {
        &self.law
    }

    /// Dense probability table; the tail beyond it is below 1e-20 per term.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn p(&self, k: usize) -> f64 {
        self.law.coefficient(k)
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn sigma(&self) -> f64 {
        self.variance.sqrt()
    }

    pub fn span(&self) -> usize {
        self.span
    }

    /// `Φ^{(j)}(s)` of the probability generating function.
    pub fn pgf_derivative(&self, j: usize, s: f64) -> f64 {
        self.law.family.derivative(j, s)
    }

    /// Checks the conditions for a critical offspring law usable by the
    /// conditioned samplers.
    pub fn require_critical(&self) -> Result<()> {
        self.law.require_offspring()?;
        if (self.mean - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidWeights(format!(
                "offspring law must be critical, mean is {}",
                self.mean
            )));
        }
        Ok(())
    }

    /// `Σ k^r p_k < ∞`, checked through the radius of convergence.
    pub fn has_moment(&self, r: u32) -> bool {
        let _ = r;
        self.law.radius() > 1.0 || matches!(self.law.family, Family::Table { .. })
    }
}

fn dense_table(f: &Family) -> Result<Vec<f64>> {
    if let Family::Table { coeffs } = f {
        let mut v = coeffs.clone();
        while v.len() > 1 && *v.last().unwrap() == 0.0 {
            v.pop();
        }
        return Ok(v);
    }
    let mut v = Vec::new();
    let mut mass = 0.0;
    for k in 0..DENSE_CAP {
        let c = f.coefficient(k);
        v.push(c);
        mass += c;
        let decreasing = k > 0 && c <= v[k - 1];
        if decreasing && c < DENSE_TAIL && mass > 0.5 {
            while v.len() > 1 && *v.last().unwrap() == 0.0 {
                v.pop();
            }
            return Ok(v);
        }
    }
    Err(Error::Numerical(format!(
        "probability table exceeds {DENSE_CAP} entries"
    )))
}

fn span_of(p: &[f64]) -> usize {
    let Some(k0) = p.iter().position(|&x| x > 0.0) else {
        return 1;
    };
    let g = p
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0.0)
        .fold(0, |g, (k, _)| gcd(g, k - k0));
    g.max(1)
}

/// Free-function form of [`WeightSequence::mean_variance`] /
/// [`OffspringDistribution`] moments.
pub fn mean_variance(ws: &WeightSequence) -> Result<(f64, f64)> {
    ws.mean_variance()
}

/// `(a b^k w_k)`.
pub fn tilt(ws: &WeightSequence, a: f64, b: f64) -> Result<WeightSequence> {
    ws.tilt(a, b)
}

/// Mean of the tilt `b^k φ_k`, as a function of `b`.
fn tilted_mean(f: &Family, b: f64) -> f64 {
    let f0 = f.derivative(0, b);
    let f1 = f.derivative(1, b);
    b * f1 / f0
}

const BISECTION_STEPS: usize = 200;
const MEAN_TOL: f64 = 1e-12;

/// Finds the equivalent critical probability law by bisection on `b`.
/// Returns `(p, a, b)` with `p_k = a b^k φ_k`.
pub fn criticalize(ws: &WeightSequence) -> Result<(OffspringDistribution, f64, f64)> {
    ws.require_offspring()?;
    let f = &ws.family;
    let radius = f.radius();
    if radius == 0.0 {
        return Err(Error::RadiusZero);
    }
    let b = if radius > 1.0 && (tilted_mean(f, 1.0) - 1.0).abs() <= MEAN_TOL {
        1.0
    } else {
        let mut hi;
        if radius.is_finite() {
            hi = radius;
            let edge = tilted_mean(f, radius * (1.0 - 1e-15));
            if edge.is_finite() && edge < 1.0 {
                return Err(Error::NoCriticalTilt {
                    radius,
                    boundary_mean: edge,
                });
            }
        } else {
            hi = 1.0;
            let mut grown = 0;
            while tilted_mean(f, hi) < 1.0 {
                hi *= 2.0;
                grown += 1;
                if grown > 2000 || !hi.is_finite() {
                    return Err(Error::NoCriticalTilt {
                        radius,
                        boundary_mean: tilted_mean(f, hi),
                    });
                }
            }
        }
        let mut lo = 0.0;
        let mut mid = 0.5 * (lo + hi);
        for _ in 0..BISECTION_STEPS {
            mid = 0.5 * (lo + hi);
            let m = tilted_mean(f, mid);
            if (m - 1.0).abs() <= MEAN_TOL {
                break;
            }
            if m < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        mid
    };
    let a = 1.0 / f.derivative(0, b);
    let p = OffspringDistribution::from_weights(&ws.tilt(a, b)?)?;
    Ok((p, a, b))
}

/// Vertex-marking reduction: `φ_k = w_{k+1}/k!`, `φ°_k = w_k/k!`.
pub fn unrooted_to_rooted(w: &WeightSequence) -> Result<(WeightSequence, WeightSequence)> {
    if w.kind != WeightKind::UnrootedW {
        return Err(Error::InvalidWeights(
            "unrooted_to_rooted needs unrooted weights".to_string(),
        ));
    }
    let rooted = |f| WeightSequence::rooted(f);
    match w.family {
        Family::Factorial {
            scale,
            ratio,
            shift: 0,
        } => Ok((
            rooted(Family::NegativeBinomial {
                scale: scale * ratio,
                ratio,
                shape: 2.0,
            })?,
            rooted(Family::Geometric { scale, ratio })?,
        )),
        Family::Factorial {
            scale,
            ratio,
            shift: 1,
        } => Ok((
            rooted(Family::Geometric {
                scale: scale * ratio,
                ratio,
            })?,
            rooted(Family::Logarithmic { scale, ratio })?,
        )),
        Family::Geometric { scale, ratio } => Ok((
            rooted(Family::Poisson {
                scale: scale * ratio,
                rate: ratio,
            })?,
            rooted(Family::Poisson { scale, rate: ratio })?,
        )),
        _ => {
            let len = match &w.family {
                Family::Table { coeffs } => coeffs.len(),
                _ => DEFAULT_TABLE_TRUNCATION + 1,
            };
            let mut phi = Vec::with_capacity(len);
            let mut phi0 = Vec::with_capacity(len);
            for k in 0..len {
                let kf = factorial(k);
                phi0.push(w.coefficient(k) / kf);
                if k + 1 < len {
                    phi.push(w.coefficient(k + 1) / kf);
                }
            }
            Ok((
                WeightSequence::table(WeightKind::RootedPhi, phi)?,
                WeightSequence::table(WeightKind::RootedPhi, phi0)?,
            ))
        }
    }
}

/// Critical pair `(p, p°)` for an unrooted sequence: `φ` is criticalized and
/// `φ°` is tilted with the same `b`, then normalized.
pub fn unrooted_critical(
    w: &WeightSequence,
) -> Result<(OffspringDistribution, OffspringDistribution)> {
    w.require_unrooted()?;
    let (phi, phi0) = unrooted_to_rooted(w)?;
    let (p, _, b) = criticalize(&phi)?;
    let tilted = phi0.tilt(1.0, b)?;
    let p0 = OffspringDistribution::from_weights(&tilted)?;
    Ok((p, p0))
}

/// Limit law of the root degree of a modified tree: `k p°_k / μ(p°)`,
/// indexed from `k = 0` (entry 0 is zero).
pub fn root_degree_limit(p0: &OffspringDistribution) -> Result<Vec<f64>> {
    let mu = p0.mean();
    if !(mu > 0.0) {
        return Err(Error::InvalidWeights("root law has zero mean".to_string()));
    }
    Ok(p0
        .probs()
        .iter()
        .enumerate()
        .map(|(k, &p)| k as f64 * p / mu)
        .collect())
}

/// JSON weight specification:
/// `{"kind": ..., "params": {...}, "coeffs": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSpec {
    pub kind: String,
    #[serde(default)]
    pub params: serde_json::Map<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<f64>>,
}

/// A parsed specification: either an offspring law or unrooted weights.
#[derive(Clone, Debug)]
pub enum Model {
    Rooted(WeightSequence),
    Unrooted(WeightSequence),
}

impl WeightSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn num(&self, key: &str) -> Result<Option<f64>> {
        match self.params.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_f64()
                .map(Some)
                .ok_or_else(|| Error::invalid_arg(key, "expected a number")),
        }
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.params.get(key) {
            None => Ok(false),
            Some(v) => v
                .as_bool()
                .ok_or_else(|| Error::invalid_arg(key, "expected a boolean")),
        }
    }

    fn allow(&self, keys: &[&str]) -> Result<()> {
        for k in self.params.keys() {
            if !keys.contains(&k.as_str()) {
                return Err(Error::invalid_arg(
                    k,
                    format!("unknown parameter for kind `{}`", self.kind),
                ));
            }
        }
        if self.coeffs.is_some() && self.kind != "table" {
            return Err(Error::invalid_arg("coeffs", "only valid for kind `table`"));
        }
        Ok(())
    }

    fn require(&self, key: &str) -> Result<f64> {
        self.num(key)?
            .ok_or_else(|| Error::invalid_arg(key, format!("required for kind `{}`", self.kind)))
    }

    /// Resolves the specification into weights.
    pub fn to_model(&self) -> Result<Model> {
        let wrap = |unrooted: bool, f: Family| -> Result<Model> {
            Ok(if unrooted {
                Model::Unrooted(WeightSequence::unrooted(f)?)
            } else {
                Model::Rooted(WeightSequence::rooted(f)?)
            })
        };
        match self.kind.as_str() {
            "geometric" => {
                self.allow(&["q", "scale", "ratio", "unrooted"])?;
                let unrooted = self.flag("unrooted")?;
                let f = if let Some(q) = self.num("q")? {
                    if !(q > 0.0 && q < 1.0) {
                        return Err(Error::invalid_arg("q", "need 0 < q < 1"));
                    }
                    Family::Geometric {
                        scale: 1.0 - q,
                        ratio: q,
                    }
                } else {
                    Family::Geometric {
                        scale: self.num("scale")?.unwrap_or(1.0),
                        ratio: self.require("ratio")?,
                    }
                };
                wrap(unrooted, f)
            }
            "poisson" => {
                self.allow(&["lambda", "scale", "rate", "unrooted"])?;
                let unrooted = self.flag("unrooted")?;
                let f = if let Some(l) = self.num("lambda")? {
                    Family::Poisson {
                        scale: (-l).exp(),
                        rate: l,
                    }
                } else {
                    Family::Poisson {
                        scale: self.num("scale")?.unwrap_or(1.0),
                        rate: self.require("rate")?,
                    }
                };
                wrap(unrooted, f)
            }
            "binary" => {
                self.allow(&["q"])?;
                let q = self.num("q")?.unwrap_or(0.5);
                if !(q > 0.0 && q < 1.0) {
                    return Err(Error::invalid_arg("q", "need 0 < q < 1"));
                }
                wrap(
                    false,
                    Family::Table {
                        coeffs: vec![(1.0 - q) * (1.0 - q), 2.0 * q * (1.0 - q), q * q],
                    },
                )
            }
            "table" => {
                self.allow(&["unrooted"])?;
                let coeffs = self
                    .coeffs
                    .clone()
                    .ok_or_else(|| Error::invalid_arg("coeffs", "required for kind `table`"))?;
                wrap(self.flag("unrooted")?, Family::Table { coeffs })
            }
            "factorial_unrooted" => {
                self.allow(&["scale", "ratio", "shift"])?;
                let shift = self.num("shift")?.unwrap_or(0.0);
                if shift != 0.0 && shift != 1.0 {
                    return Err(Error::invalid_arg("shift", "must be 0 or 1"));
                }
                wrap(
                    true,
                    Family::Factorial {
                        scale: self.num("scale")?.unwrap_or(1.0),
                        ratio: self.num("ratio")?.unwrap_or(1.0),
                        shift: shift as u32,
                    },
                )
            }
            other => Err(Error::invalid_arg(
                "kind",
                format!("unknown kind `{other}`"),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn moments_of_named_laws() {
        let g = OffspringDistribution::geometric(0.5).unwrap();
        assert!(close(g.mean(), 1.0, 1e-14) && close(g.variance(), 2.0, 1e-14));
        // partial sums to k=60
        let (m, s2) = (0..=60).fold((0.0, 0.0), |(m, s), k| {
            let p = 0.5f64.powi(k + 1);
            (m + k as f64 * p, s + (k * k) as f64 * p)
        });
        assert!(close(m, 1.0, 1e-12) && close(s2 - m * m, 2.0, 1e-12));

        let b = OffspringDistribution::binary(0.5).unwrap();
        assert_eq!(b.probs(), &[0.25, 0.5, 0.25]);
        assert!(close(b.mean(), 1.0, 1e-15) && close(b.variance(), 0.5, 1e-15));

        let p = OffspringDistribution::poisson(1.0).unwrap();
        assert!(close(p.mean(), 1.0, 1e-14) && close(p.variance(), 1.0, 1e-14));
    }

    #[test]
    fn stored_moments_match_dense_sums() {
        for d in [
            OffspringDistribution::geometric(0.5).unwrap(),
            OffspringDistribution::poisson(1.0).unwrap(),
            OffspringDistribution::geometric(0.3).unwrap(),
        ] {
            let s: f64 = d.probs().iter().sum();
            let m: f64 = d.probs().iter().enumerate().map(|(k, p)| k as f64 * p).sum();
            let m2: f64 = d
                .probs()
                .iter()
                .enumerate()
                .map(|(k, p)| (k * k) as f64 * p)
                .sum();
            assert!((s - 1.0).abs() < 1e-12);
            assert!((m - d.mean()).abs() < 1e-12);
            assert!((m2 - m * m - d.variance()).abs() < 1e-10);
        }
    }

    #[test]
    fn divergent_moments_are_reported() {
        let w = WeightSequence::rooted(Family::Geometric {
            scale: 1.0,
            ratio: 1.0,
        })
        .unwrap();
        assert!(matches!(w.mean_variance(), Err(Error::MomentDiverges(_))));
    }

    #[test]
    fn tilt_examples() {
        let phi = WeightSequence::rooted(Family::NegativeBinomial {
            scale: 1.0,
            ratio: 1.0,
            shape: 2.0,
        })
        .unwrap();
        let t = phi.tilt(4.0 / 9.0, 1.0 / 3.0).unwrap();
        for k in 0..30 {
            let want = 4.0 * (k as f64 + 1.0) * 3f64.powi(-(k as i32) - 2);
            assert!(close(t.coefficient(k), want, 1e-14), "k={k}");
        }
        assert_eq!(phi.tilt(1.0, 1.0).unwrap(), phi);
        let g = WeightSequence::rooted(Family::Geometric {
            scale: 0.5,
            ratio: 0.5,
        })
        .unwrap();
        let t = g.tilt(2.0, 1.0).unwrap();
        for k in 0..20 {
            assert!(close(t.coefficient(k), 0.5f64.powi(k as i32), 1e-15));
        }
    }

    #[test]
    fn criticalize_examples() {
        let phi = WeightSequence::rooted(Family::NegativeBinomial {
            scale: 1.0,
            ratio: 1.0,
            shape: 2.0,
        })
        .unwrap();
        let (p, a, b) = criticalize(&phi).unwrap();
        assert!(close(a, 4.0 / 9.0, 1e-12) && close(b, 1.0 / 3.0, 1e-12));
        for k in 0..30 {
            let want = 4.0 * (k as f64 + 1.0) * 3f64.powi(-(k as i32) - 2);
            assert!(close(p.p(k), want, 1e-11));
        }
        assert!((p.mean() - 1.0).abs() <= 1e-10);
        assert!(close(p.variance(), 1.5, 1e-9));

        let pois = WeightSequence::rooted(Family::Poisson {
            scale: (-1.0f64).exp(),
            rate: 1.0,
        })
        .unwrap();
        let (q, a, b) = criticalize(&pois).unwrap();
        assert!(close(a, 1.0, 1e-12) && b == 1.0);
        assert!(close(q.p(3), (-1.0f64).exp() / 6.0, 1e-14));

        let half = WeightSequence::rooted(Family::Geometric {
            scale: 1.0,
            ratio: 0.5,
        })
        .unwrap();
        let (q, a, b) = criticalize(&half).unwrap();
        assert!(close(a, 0.5, 1e-12) && close(b, 1.0, 1e-12));
        let (m, _) = q.law().mean_variance().unwrap();
        assert!((m - 1.0).abs() < 1e-10);
    }

    #[test]
    fn criticalize_table_and_errors() {
        let t = WeightSequence::table(WeightKind::RootedPhi, vec![1.0, 0.0, 3.0]).unwrap();
        let (p, _, _) = criticalize(&t).unwrap();
        // mean 1 forces p = (1/2, 0, 1/2)
        assert!(close(p.p(0), 0.5, 1e-10) && close(p.p(2), 0.5, 1e-10));
        assert_eq!(p.span(), 2);

        let fac = WeightSequence::rooted(Family::Factorial {
            scale: 1.0,
            ratio: 1.0,
            shift: 0,
        })
        .unwrap();
        assert!(matches!(criticalize(&fac), Err(Error::RadiusZero)));

        // φ_0 = 0 is not an offspring sequence
        let poor = WeightSequence::rooted(Family::Logarithmic {
            scale: 1.0,
            ratio: 1.0,
        })
        .unwrap();
        assert!(criticalize(&poor).is_err());
    }

    #[test]
    fn unrooted_to_rooted_examples() {
        let w = WeightSequence::unrooted(Family::Factorial {
            scale: 1.0,
            ratio: 1.0,
            shift: 0,
        })
        .unwrap();
        let (phi, phi0) = unrooted_to_rooted(&w).unwrap();
        for k in 0..20 {
            assert!(close(phi.coefficient(k), k as f64 + 1.0, 1e-14));
            assert!(close(phi0.coefficient(k), 1.0, 1e-14));
        }
        let w = WeightSequence::table(WeightKind::UnrootedW, vec![0.0, 1.0, 0.0, 1.0, 0.0]).unwrap();
        let (phi, phi0) = unrooted_to_rooted(&w).unwrap();
        assert_eq!(phi.coefficient(0), 1.0);
        assert_eq!(phi.coefficient(1), 0.0);
        assert_eq!(phi.coefficient(2), 0.5);
        assert_eq!(phi0.coefficient(3), 1.0 / 6.0);
        let w = WeightSequence::unrooted(Family::Geometric {
            scale: 1.0,
            ratio: 1.0,
        })
        .unwrap();
        let (phi, phi0) = unrooted_to_rooted(&w).unwrap();
        for k in 0..15 {
            let want = 1.0 / factorial(k);
            assert!(close(phi.coefficient(k), want, 1e-14));
            assert!(close(phi0.coefficient(k), want, 1e-14));
        }
    }

    #[test]
    fn unrooted_factorial_gives_example_root_law() {
        let w = WeightSequence::unrooted(Family::Factorial {
            scale: 1.0,
            ratio: 1.0,
            shift: 0,
        })
        .unwrap();
        let (p, p0) = unrooted_critical(&w).unwrap();
        assert!(close(p.p(0), 4.0 / 9.0, 1e-12));
        // p°_k ∝ 3^{-k}; restricted to k ≥ 1 it is 2·3^{-k}
        let tail: f64 = 1.0 - p0.p(0);
        for k in 1..10 {
            assert!(close(p0.p(k) / tail, 2.0 * 3f64.powi(-(k as i32)), 1e-12));
        }
    }

    #[test]
    fn root_degree_limit_examples() {
        let e = (-1.0f64).exp();
        let l = root_degree_limit(&OffspringDistribution::poisson(1.0).unwrap()).unwrap();
        assert_eq!(l[0], 0.0);
        for (k, want) in [(1, e), (2, e), (3, e / 2.0), (4, e / 6.0)] {
            assert!(close(l[k], want, 1e-14));
        }
        assert!((l.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let l = root_degree_limit(&OffspringDistribution::geometric(0.5).unwrap()).unwrap();
        for k in 1..20 {
            assert!(close(l[k], k as f64 * 0.5f64.powi(k as i32 + 1), 1e-13));
        }
        let point = OffspringDistribution::from_probabilities(vec![0.0, 0.0, 1.0]).unwrap();
        assert_eq!(root_degree_limit(&point).unwrap(), vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn spans() {
        assert_eq!(OffspringDistribution::geometric(0.5).unwrap().span(), 1);
        let b2 = OffspringDistribution::from_probabilities(vec![0.5, 0.0, 0.5]).unwrap();
        assert_eq!(b2.span(), 2);
    }

    #[test]
    fn json_specs() {
        let s = WeightSpec::from_json(r#"{"kind":"geometric","params":{"q":0.5}}"#).unwrap();
        let Model::Rooted(w) = s.to_model().unwrap() else {
            panic!()
        };
        assert!(close(w.coefficient(3), 1.0 / 16.0, 1e-15));
        let s = WeightSpec::from_json(r#"{"kind":"table","coeffs":[0,1,0,1],"params":{"unrooted":true}}"#)
            .unwrap();
        assert!(matches!(s.to_model().unwrap(), Model::Unrooted(_)));
        assert!(WeightSpec::from_json(r#"{"kind":"geometric","bogus":1}"#).is_err());
        let s = WeightSpec::from_json(r#"{"kind":"poisson","params":{"mu":1}}"#).unwrap();
        assert!(s.to_model().is_err());
    }
}
