//! Model parameters, boundary fields and the tree recursion map.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign of the coupling constant `J`, read off from `theta = exp(J beta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coupling {
    Ferromagnetic,
    Antiferromagnetic,
}

impl Coupling {
    pub fn of(theta: f64) -> Option<Coupling> {
        if theta > 1.0 {
            Some(Coupling::Ferromagnetic)
        } else if theta > 0.0 && theta < 1.0 {
            Some(Coupling::Antiferromagnetic)
        } else {
            None
        }
    }
}

#[derive(Deserialize)]
struct RawParams {
    q: usize,
    k: usize,
    theta: f64,
}

/// Spin count `q`, tree order `k` and `theta = exp(J beta)`.
///
/// `theta == 1` (no interaction) is rejected: every equation downstream
/// divides by `theta - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct ModelParams {
    q: usize,
    k: usize,
    theta: f64,
    coupling: Coupling,
}

impl TryFrom<RawParams> for ModelParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        ModelParams::new(raw.q, raw.k, raw.theta)
    }
}

impl ModelParams {
    pub fn new(q: usize, k: usize, theta: f64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParams(format!("q must be >= 2, got {q}")));
        }
        if k < 1 {
            return Err(Error::InvalidParams(format!("k must be >= 1, got {k}")));
        }
        if !theta.is_finite() || theta <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "theta must be positive and finite, got {theta}"
            )));
        }
        let coupling = Coupling::of(theta).ok_or_else(|| {
            Error::InvalidParams("theta must differ from 1 (J = 0 is degenerate)".into())
        })?;
        Ok(ModelParams {
            q,
            k,
            theta,
            coupling,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn coupling(&self) -> Coupling {
        self.coupling
    }

    /// Same `q` and `k` at a different `theta`.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        ModelParams::new(self.q, self.k, theta)
    }

    /// Length of a normalized field vector, `q - 1`.
    pub fn field_len(&self) -> usize {
        self.q - 1
    }

    /// Antiferromagnetic period-two threshold `(k - q + 1) / (k + 1)`.
    /// May be non-positive, in which case no period-two solutions exist.
    pub fn theta_bar_cr(&self) -> f64 {
        (self.k as f64 - self.q as f64 + 1.0) / (self.k as f64 + 1.0)
    }
}

/// Exponentiated boundary field `z_i = exp(h_i)`, `i = 1..q-1`.
///
/// The `q`-th component is normalized out, so it is implicitly 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct FieldVector(Vec<f64>);

impl TryFrom<Vec<f64>> for FieldVector {
    type Error = Error;

    fn try_from(z: Vec<f64>) -> Result<Self> {
        FieldVector::new(z)
    }
}

impl From<FieldVector> for Vec<f64> {
    fn from(z: FieldVector) -> Vec<f64> {
        z.0
    }
}

impl FieldVector {
    pub fn new(z: Vec<f64>) -> Result<Self> {
        if z.is_empty() {
            return Err(Error::InvalidParams(
                "field vector must be non-empty".into(),
            ));
        }
        if let Some(bad) = z.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::Domain(format!(
                "field entries must be positive and finite, got {bad}"
            )));
        }
        Ok(FieldVector(z))
    }

    /// From log-fields `h`, i.e. `z = exp(h)`.
    pub fn from_log(h: &[f64]) -> Result<Self> {
        FieldVector::new(h.iter().map(|v| v.exp()).collect())
    }

    /// The symmetric point `(1, ..., 1)`.
    pub fn ones(len: usize) -> Self {
        FieldVector(vec![1.0; len])
    }

    /// `value` at `positions`, 1 elsewhere.
    pub fn placed(len: usize, positions: &[usize], value: f64) -> Result<Self> {
        let mut z = vec![1.0; len];
        for &i in positions {
            if i >= len {
                return Err(Error::InvalidParams(format!(
                    "position {i} out of range for length {len}"
                )));
            }
            z[i] = value;
        }
        FieldVector::new(z)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn log(&self) -> Vec<f64> {
        self.0.iter().map(|v| v.ln()).collect()
    }

    /// Coordinates reordered as `out[i] = z[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.len() || !perm.iter().all(|&p| p < self.len()) {
            return Err(Error::InvalidParams("permutation length mismatch".into()));
        }
        FieldVector::new(perm.iter().map(|&p| self.0[p]).collect())
    }

    pub fn max_abs_diff(&self, other: &FieldVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// The invariant set `I_m`: `m` coordinates share a free value, the rest are 1.
///
/// The canonical representative frees the first `m` coordinates. `m == q`
/// is admitted for counting purposes; it has no realization as a field
/// vector of length `q - 1` (see [`InvariantClass::canonical`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantClass {
    m: usize,
    q: usize,
}

impl InvariantClass {
    pub fn new(m: usize, q: usize) -> Result<Self> {
        if m < 1 || m > q {
            return Err(Error::InvalidParams(format!(
                "class index m must lie in [1, {q}], got {m}"
            )));
        }
        Ok(InvariantClass { m, q })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// True for the formal class `m == q`.
    pub fn is_full(&self) -> bool {
        self.m == self.q
    }

    /// Canonical representative `(value, .., value, 1, .., 1)` of length `q - 1`.
    /// `None` for the formal class `m == q`.
    pub fn canonical(&self, value: f64) -> Option<Result<FieldVector>> {
        if self.is_full() {
            return None;
        }
        let positions: Vec<usize> = (0..self.m).collect();
        Some(FieldVector::placed(self.q - 1, &positions, value))
    }

    /// All placements of the `m` free coordinates among `q - 1`, in
    /// lexicographic order; the first one is canonical.
    pub fn placements(&self) -> impl Iterator<Item = Vec<usize>> {
        let len = self.q - 1;
        let m = if self.is_full() { len + 1 } else { self.m };
        (0..len).combinations(m)
    }

    /// Number of copies of `I_m` among the `q` unnormalized spin
    /// coordinates, `binomial(q, m)`.
    pub fn multiplicity(&self) -> usize {
        binomial(self.q, self.m)
    }
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Order-independent sum, so permuting `z` cannot change any rounding.
fn permutation_invariant_sum(z: &[f64]) -> f64 {
    let mut sorted = z.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.iter().sum()
}

fn check_len(params: &ModelParams, z: &FieldVector) -> Result<()> {
    if z.len() != params.field_len() {
        return Err(Error::InvalidParams(format!(
            "field vector has length {}, expected q - 1 = {}",
            z.len(),
            params.field_len()
        )));
    }
    Ok(())
}

/// One step of the tree recursion in exponentiated coordinates:
/// `out_i = ((theta - 1) z_i + sum_j z_j + 1) / (theta + sum_j z_j)`.
pub fn recursion_map(params: &ModelParams, z: &FieldVector) -> Result<FieldVector> {
    check_len(params, z)?;
    let theta = params.theta();
    let sum = permutation_invariant_sum(z.as_slice());
    let denom = theta + sum;
    let out: Vec<f64> = z
        .as_slice()
        .iter()
        // numerator written as (theta - 1)(z_i - 1) + denom, so z_i = 1 maps to exactly 1
        .map(|&zi| ((theta - 1.0) * (zi - 1.0) + denom) / denom)
        .collect();
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite value in recursion map".into()));
    }
    FieldVector::new(out)
}

/// The recursion map raised to the `k`-th power, i.e. the field a vertex
/// receives from `k` identical children.
pub fn recursion_power(params: &ModelParams, z: &FieldVector) -> Result<FieldVector> {
    let step = recursion_map(params, z)?;
    let k = params.k() as i32;
    FieldVector::new(step.as_slice().iter().map(|v| v.powi(k)).collect())
}

/// `z_i - F_i(z)^k`; the zero vector exactly at translation-invariant fixed points.
pub fn ti_residual(params: &ModelParams, z: &FieldVector) -> Result<Vec<f64>> {
    let image = recursion_power(params, z)?;
    Ok(z.as_slice()
        .iter()
        .zip(image.as_slice())
        .map(|(a, b)| a - b)
        .collect())
}

/// Max-norm of [`ti_residual`], each component scaled by `max(1, z_i)`.
pub fn ti_residual_norm(params: &ModelParams, z: &FieldVector) -> Result<f64> {
    let res = ti_residual(params, z)?;
    Ok(res
        .iter()
        .zip(z.as_slice())
        .map(|(r, zi)| r.abs() / zi.max(1.0))
        .fold(0.0, f64::max))
}
