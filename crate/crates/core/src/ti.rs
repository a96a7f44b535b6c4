//! Translation-invariant solutions of the fixed-point system.
//!
//! Every translation-invariant solution lies, up to a permutation of
//! coordinates, in some class `I_m`: `m` coordinates equal `z`, the rest
//! equal 1. On `I_m` the system collapses to the scalar equation
//! `z = f_m(z)`; with `x = z^(1/k)` it becomes a polynomial of degree
//! `k + 1` with the trivial root `x = 1`. For `k = 3` the quotient is the
//! cubic solved by [`cubic_cardano`]; other `k` go through the numeric
//! oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ti_residual_norm, FieldVector, InvariantClass, ModelParams};
use crate::poly::{
    bisect, cubic_cardano, numeric_roots, quartic_ferrari, reduced_cubic, Multiplicity, Polynomial,
    RootDomain,
};
use crate::ZERO_TOL;

/// `theta` within this distance of `theta_cr` is treated as critical.
pub const CRITICAL_SNAP: f64 = 1e-8;

/// Lifted vectors closer than this (max-norm, relative) are the same solution.
pub const DEDUP_TOL: f64 = 1e-8;

/// Both routes to `theta_cr` must agree to this tolerance.
pub const CRITICAL_AGREEMENT: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Criticality {
    Subcritical,
    Critical,
    Supercritical,
}

/// Critical `theta` of class `m` at `k = 3`, where the reduced cubic acquires
/// a double positive root.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalTheta {
    pub m: usize,
    pub q: usize,
    pub theta_cr: f64,
    /// Location of the tangency.
    pub x_double_root: f64,
    /// `psi(x**)` with `x**` from the tangency quartic.
    pub theta_cr_closed_form: f64,
    /// Root in `theta` of `phi(x*(theta, m); theta) = 0`.
    pub theta_cr_scalar: f64,
    /// The Ferrari expression was unusable and the quartic oracle root was used.
    pub closed_form_flagged: bool,
}

/// Unique positive critical point of the reduced cubic for `theta > 1`.
pub fn x_star(theta: f64, m: usize) -> f64 {
    let t = theta - 1.0;
    let mf = m as f64;
    (t + (t * t + 3.0 * mf * t).sqrt()) / (3.0 * mf)
}

/// `psi(x) = (m x^3 + q - m) / (x^2 + x) + 1`: the `theta` at which `x`
/// is a root of the reduced cubic.
pub fn psi(x: f64, q: usize, m: usize) -> f64 {
    let mf = m as f64;
    (mf * x.powi(3) + (q - m) as f64) / (x * x + x) + 1.0
}

/// `theta_cr(m, q)` at `k = 3`, computed through the tangency quartic and,
/// independently, by solving `phi(x*(theta)) = 0` in `theta`.
pub fn critical_theta(q: usize, m: usize) -> Result<CriticalTheta> {
    let quartic = quartic_ferrari(q, m)?;
    let x_double_root = quartic.value;
    let closed = psi(x_double_root, q, m);

    let min_value = |theta: f64| {
        let cubic = reduced_cubic(theta, q, m).expect("class validated above");
        cubic.eval(x_star(theta, m))
    };
    let lo = 1.0;
    let mut hi = 2.0;
    while min_value(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::Numeric("no sign change bracketing theta_cr".into()));
        }
    }
    let scalar = bisect(min_value, lo, hi);

    if (closed - scalar).abs() > CRITICAL_AGREEMENT {
        return Err(Error::CriticalMismatch {
            closed_form: closed,
            scalar,
        });
    }
    let cubic = reduced_cubic(closed, q, m)?;
    let slope = cubic.derivative().expect("cubic").eval(x_double_root);
    if cubic.eval(x_double_root).abs() > 1e-8 || slope.abs() > 1e-8 {
        return Err(Error::Numeric(format!(
            "x** = {x_double_root} is not a double root at theta_cr = {closed}"
        )));
    }
    Ok(CriticalTheta {
        m,
        q,
        theta_cr: closed,
        x_double_root,
        theta_cr_closed_form: closed,
        theta_cr_scalar: scalar,
        closed_form_flagged: quartic.flagged,
    })
}

/// `theta = (k + q - 1)/(k - 1)`, where `f_m'(1) = k (theta-1)/(theta+q-1) = 1`
/// for every `m`. There a nontrivial branch passes through `z = 1`, so each
/// class loses one nontrivial root at that single `theta`. `None` for `k = 1`.
pub fn trivial_crossing_theta(q: usize, k: usize) -> Option<f64> {
    (k >= 2).then(|| (k + q - 1) as f64 / (k - 1) as f64)
}

/// Scalar map on `I_m`: `f_m(z) = (((theta+m-1) z + q-m) / (m z + q-m-1+theta))^k`.
pub fn reduced_map(params: &ModelParams, m: usize, z: f64) -> f64 {
    let (q, theta) = (params.q() as f64, params.theta());
    let mf = m as f64;
    (((theta + mf - 1.0) * z + q - mf) / (mf * z + q - mf - 1.0 + theta)).powi(params.k() as i32)
}

/// `m x^(k+1) - (theta+m-1) x^k + (q-m-1+theta) x - (q-m)`, whose positive
/// roots `x` give the solutions `z = x^k` of `z = f_m(z)`.
pub fn class_polynomial(params: &ModelParams, m: usize) -> Result<Polynomial> {
    let (q, k, theta) = (params.q(), params.k(), params.theta());
    if m < 1 || m >= q {
        return Err(Error::InvalidParams(format!(
            "need 1 <= m <= q - 1, got m = {m}"
        )));
    }
    let mf = m as f64;
    let mut c = vec![0.0; k + 2];
    c[0] -= (q - m) as f64;
    c[1] += (q - m) as f64 - 1.0 + theta;
    c[k] -= theta + mf - 1.0;
    c[k + 1] += mf;
    Polynomial::new(c)
}

/// One translation-invariant solution, stored by its canonical representative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TISolution {
    pub m: usize,
    /// Positive root `x` of the class polynomial; `z = x^k`.
    pub x_root: f64,
    pub z: f64,
    /// Canonical lift: the first `m` coordinates equal `z`.
    pub z_vector: FieldVector,
    /// Max-norm of the fixed-point residual, each coordinate scaled by `max(1, z_i)`.
    pub residual: f64,
    /// Position of `theta` relative to `theta_cr(m, q)`; known only for `k = 3`.
    pub criticality: Option<Criticality>,
    pub multiplicity: Multiplicity,
    /// Set when the input `theta` was within [`CRITICAL_SNAP`] of
    /// `theta_cr` and the solution was computed at `theta_cr` itself.
    pub snapped_theta: Option<f64>,
}

impl TISolution {
    pub fn is_trivial(&self) -> bool {
        self.z == 1.0
    }

    /// All placements of this solution among the `q - 1` coordinates.
    pub fn lifted(&self, q: usize) -> impl Iterator<Item = FieldVector> + '_ {
        let class = InvariantClass::new(self.m, q).expect("solution class is valid");
        let trivial = self.is_trivial();
        let placements: Box<dyn Iterator<Item = Vec<usize>>> = if trivial {
            Box::new(std::iter::once(Vec::new()))
        } else {
            Box::new(class.placements())
        };
        placements.map(move |pos| {
            FieldVector::placed(q - 1, &pos, self.z).expect("positive finite solution")
        })
    }
}

fn trivial_solution(
    params: &ModelParams,
    m: usize,
    criticality: Option<Criticality>,
) -> TISolution {
    TISolution {
        m,
        x_root: 1.0,
        z: 1.0,
        z_vector: FieldVector::ones(params.field_len()),
        residual: 0.0,
        criticality,
        multiplicity: Multiplicity::Simple,
        snapped_theta: None,
    }
}

fn classify(theta: f64, theta_cr: f64, snapped: bool) -> Criticality {
    if snapped {
        Criticality::Critical
    } else if theta < theta_cr {
        Criticality::Subcritical
    } else {
        Criticality::Supercritical
    }
}

/// All positive solutions of `z = f_m(z)`, the trivial `z = 1` first.
pub fn solve_class(params: &ModelParams, m: usize) -> Result<Vec<TISolution>> {
    let (q, k, theta) = (params.q(), params.k(), params.theta());
    let class = InvariantClass::new(m, q)?;
    if class.is_full() {
        return Err(Error::InvalidParams(format!(
            "translation-invariant classes need m <= q - 1, got {m}"
        )));
    }

    let mut effective = *params;
    let mut snapped_theta = None;
    let mut criticality = None;
    let roots: Vec<(f64, Multiplicity)>;

    if k == 3 && theta > 1.0 {
        let crit = critical_theta(q, m)?;
        if (theta - crit.theta_cr).abs() <= CRITICAL_SNAP {
            snapped_theta = Some(crit.theta_cr);
            effective = params.with_theta(crit.theta_cr)?;
            roots = vec![(crit.x_double_root, Multiplicity::Double)];
        } else {
            let report = cubic_cardano(theta, q, m)?;
            roots = report
                .positive()
                .iter()
                .map(|r| (r.value, r.multiplicity))
                .collect();
        }
        criticality = Some(classify(theta, crit.theta_cr, snapped_theta.is_some()));
    } else {
        if k == 3 {
            criticality = Some(Criticality::Subcritical);
        }
        let (quotient, _) = class_polynomial(params, m)?.divide_linear(1.0)?;
        let report = numeric_roots(&quotient, RootDomain::Positive)?;
        roots = report
            .positive()
            .iter()
            .map(|r| (r.value, r.multiplicity))
            .collect();
    }

    let mut out = vec![trivial_solution(params, m, criticality)];
    for (x, multiplicity) in roots {
        let z = x.powi(k as i32);
        if (z - 1.0).abs() <= DEDUP_TOL {
            continue;
        }
        let z_vector = class.canonical(z).expect("m < q")?;
        let residual = ti_residual_norm(&effective, &z_vector)?;
        if residual >= ZERO_TOL {
            return Err(Error::Numeric(format!(
                "class {m} root z = {z} has fixed-point residual {residual:e}"
            )));
        }
        out.push(TISolution {
            m,
            x_root: x,
            z,
            z_vector,
            residual,
            criticality,
            multiplicity,
            snapped_theta,
        });
    }
    Ok(out)
}

/// Every translation-invariant solution for one parameter set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TIEnumeration {
    /// Canonical representatives: the trivial solution, then each class's roots.
    pub solutions: Vec<TISolution>,
    /// Distinct solution vectors after lifting every representative to all
    /// its coordinate placements.
    pub total_count_with_permutations: usize,
    /// Count expected from the known closed-form classification, when one applies.
    pub predicted: Option<usize>,
    /// `theta_cr(m, q)` for `m = 1..q-1`; filled for `k = 3` only.
    pub critical: Vec<CriticalTheta>,
}

impl TIEnumeration {
    pub fn matches_prediction(&self) -> Option<bool> {
        self.predicted
            .map(|p| p == self.total_count_with_permutations)
    }

    /// All distinct lifted solution vectors.
    pub fn lifted_vectors(&self, q: usize) -> Vec<FieldVector> {
        let mut distinct: Vec<FieldVector> = Vec::new();
        for v in self.solutions.iter().flat_map(|s| s.lifted(q)) {
            let dup = distinct.iter().any(|d| {
                d.as_slice()
                    .iter()
                    .zip(v.as_slice())
                    .all(|(a, b)| (a - b).abs() <= DEDUP_TOL * a.abs().max(1.0))
            });
            if !dup {
                distinct.push(v);
            }
        }
        distinct
    }
}

/// Expected solution count.
///
/// * `theta < 1`: 1.
/// * `q = 3, k = 3`: 1 / 3 / 7 below / at / above `theta_cr` (the
///   classical statement; the lifted count at `theta_cr` is in fact 4, see
///   the crate README).
/// * `k = 3`, other `q`: 1 below every `theta_cr(m, q)`, `2^q - 1` above all.
pub fn predicted_ti_count(params: &ModelParams, critical: &[CriticalTheta]) -> Option<usize> {
    let theta = params.theta();
    if theta < 1.0 {
        return Some(1);
    }
    if params.k() != 3 || critical.is_empty() {
        return None;
    }
    let near = critical
        .iter()
        .any(|c| (theta - c.theta_cr).abs() <= CRITICAL_SNAP);
    let below_all = critical.iter().all(|c| theta < c.theta_cr) && !near;
    let above_all = critical.iter().all(|c| theta > c.theta_cr) && !near;
    if params.q() == 3 {
        return Some(if below_all {
            1
        } else if above_all {
            7
        } else {
            3
        });
    }
    if below_all {
        Some(1)
    } else if above_all {
        Some((1usize << params.q()) - 1)
    } else {
        None
    }
}

/// Solve every class `m = 1..q-1` and count distinct lifted solutions.
pub fn enumerate_ti(params: &ModelParams) -> Result<TIEnumeration> {
    let q = params.q();
    let critical = if params.k() == 3 {
        (1..q)
            .map(|m| critical_theta(q, m))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };

    let mut solutions = vec![];
    for m in 1..q {
        let class = solve_class(params, m)?;
        if solutions.is_empty() {
            solutions.push(class[0].clone());
        }
        solutions.extend(class.into_iter().skip(1));
    }
    if solutions.is_empty() {
        return Err(Error::InvalidParams("q must be >= 2".into()));
    }

    let mut enumeration = TIEnumeration {
        solutions,
        total_count_with_permutations: 0,
        predicted: predicted_ti_count(params, &critical),
        critical,
    };
    enumeration.total_count_with_permutations = enumeration.lifted_vectors(q).len();
    Ok(enumeration)
}
