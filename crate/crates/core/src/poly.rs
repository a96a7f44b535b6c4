//! Real polynomial roots: closed-form cubic and quartic solvers for the
//! reduced fixed-point equations, plus an independent numeric oracle.
//!
//! The oracle brackets roots by sign changes on a scan grid that is
//! augmented with every critical point of the polynomial (found
//! recursively from the derivative). Between consecutive critical points
//! the polynomial is monotone, so no pair of roots can hide inside a
//! panel, and a tangency shows up as a critical point where the value
//! vanishes to rounding. The root count is then cross-checked against
//! the real eigenvalues of the companion matrix.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scan panels per bracket search.
pub const SCAN_PANELS: usize = 4096;

/// Every accepted root satisfies `|p(r)| < RESIDUAL_REL_TOL * scale(p, r)`.
pub const RESIDUAL_REL_TOL: f64 = 1e-9;

/// Closed-form roots must match oracle roots to this relative tolerance.
pub const AGREEMENT_TOL: f64 = 1e-9;

/// Relative size below which a value is zero up to rounding.
pub const NUMERIC_ZERO_REL: f64 = 64.0 * f64::EPSILON;

/// Real polynomial with coefficients in ascending order of degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// `ascending[i]` multiplies `x^i`. Trailing zeros are trimmed.
    pub fn new(ascending: Vec<f64>) -> Result<Self> {
        if ascending.iter().any(|c| !c.is_finite()) {
            return Err(Error::Numeric("non-finite polynomial coefficient".into()));
        }
        let mut coeffs = ascending;
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidParams(
                "polynomial has all-zero coefficients".into(),
            ));
        }
        Ok(Polynomial { coeffs })
    }

    /// Coefficients from the leading term down.
    pub fn from_descending(descending: &[f64]) -> Result<Self> {
        Polynomial::new(descending.iter().rev().copied().collect())
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// `sum |a_i| |x|^i`, the natural size of rounding error in `eval(x)`.
    pub fn eval_scale(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * ax + c.abs())
    }

    pub fn derivative(&self) -> Option<Polynomial> {
        if self.degree() == 0 {
            return None;
        }
        let d: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * i as f64)
            .collect();
        Polynomial::new(d).ok()
    }

    /// Synthetic division by `(x - root)`: returns quotient and remainder.
    pub fn divide_linear(&self, root: f64) -> Result<(Polynomial, f64)> {
        if self.degree() == 0 {
            return Err(Error::InvalidParams("cannot deflate a constant".into()));
        }
        let n = self.degree();
        let mut quotient = vec![0.0; n];
        let mut carry = 0.0;
        for i in (0..=n).rev() {
            let value = self.coeffs[i] + carry * root;
            if i == 0 {
                return Ok((Polynomial::new(quotient)?, value));
            }
            quotient[i - 1] = value;
            carry = value;
        }
        unreachable!()
    }

    fn is_small_at(&self, x: f64, rel: f64) -> bool {
        self.eval(x).abs() <= rel * self.eval_scale(x)
    }

    /// Cauchy bound: every root satisfies `|x| <= 1 + max |a_i / a_n|`.
    fn cauchy_bound(&self) -> f64 {
        let lead = self.coeffs[self.degree()].abs();
        1.0 + self.coeffs[..self.degree()]
            .iter()
            .map(|c| c.abs() / lead)
            .fold(0.0, f64::max)
    }

    /// Nonzero roots satisfy `|x| >= |a_0| / (|a_0| + max_{i>=1} |a_i|)`.
    fn nonzero_root_lower_bound(&self) -> f64 {
        let a0 = self.coeffs[0].abs();
        let rest = self.coeffs[1..].iter().map(|c| c.abs()).fold(0.0, f64::max);
        a0 / (a0 + rest)
    }
}

/// Where to look for roots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RootDomain {
    /// The open interval `(lo, hi)`.
    Interval { lo: f64, hi: f64 },
    /// `(0, inf)`.
    Positive,
    /// The whole real line.
    Real,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Multiplicity {
    Simple,
    /// Even multiplicity (a tangency); in practice a double root.
    Double,
}

impl Multiplicity {
    pub fn count(self) -> usize {
        match self {
            Multiplicity::Simple => 1,
            Multiplicity::Double => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootMethod {
    ClosedForm,
    Bisection,
    Companion,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: f64,
    pub bracket: (f64, f64),
    pub multiplicity: Multiplicity,
}

/// Roots sorted ascending, with the method that produced them and
/// whether an independent count agreed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    pub roots: Vec<Root>,
    pub method: RootMethod,
    pub cross_checked: bool,
    pub notes: Vec<String>,
}

impl RootReport {
    pub fn values(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.value).collect()
    }

    /// Number of roots counted with multiplicity.
    pub fn count_with_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity.count()).sum()
    }

    pub fn positive(&self) -> Vec<Root> {
        self.roots
            .iter()
            .filter(|r| r.value > 0.0)
            .copied()
            .collect()
    }
}

fn scan_grid(lo: f64, hi: f64, panels: usize) -> Vec<f64> {
    let log = lo > 0.0 && hi / lo > 100.0;
    (0..=panels)
        .map(|j| {
            let s = j as f64 / panels as f64;
            if j == panels {
                hi
            } else if log {
                (lo.ln() + s * (hi.ln() - lo.ln())).exp()
            } else {
                lo + s * (hi - lo)
            }
        })
        .collect()
}

/// Bisection of a sign change to full double precision.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of `poly` in the open interval `(lo, hi)`, both finite.
fn isolate(poly: &Polynomial, lo: f64, hi: f64) -> Vec<Root> {
    if poly.degree() == 0 || lo >= hi || lo.is_nan() || hi.is_nan() {
        return Vec::new();
    }
    if poly.degree() == 1 {
        let x = -poly.coeffs[0] / poly.coeffs[1];
        return if x > lo && x < hi {
            vec![Root {
                value: x,
                bracket: (lo, hi),
                multiplicity: Multiplicity::Simple,
            }]
        } else {
            Vec::new()
        };
    }

    let critical: Vec<f64> = poly
        .derivative()
        .map(|d| isolate(&d, lo, hi).into_iter().map(|r| r.value).collect())
        .unwrap_or_default();

    let mut nodes = scan_grid(lo, hi, SCAN_PANELS);
    nodes.extend(critical.iter().copied());
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();
    let mut values: Vec<f64> = nodes.iter().map(|&x| poly.eval(x)).collect();

    let mut roots = Vec::new();
    let last = nodes.len() - 1;
    for j in 1..last {
        let x = nodes[j];
        let is_critical = critical.contains(&x);
        if values[j] == 0.0 || (is_critical && poly.is_small_at(x, NUMERIC_ZERO_REL)) {
            let crosses = values[j - 1] * values[j + 1] < 0.0;
            let multiplicity = if is_critical && !crosses {
                Multiplicity::Double
            } else {
                Multiplicity::Simple
            };
            roots.push(Root {
                value: x,
                bracket: (nodes[j - 1], nodes[j + 1]),
                multiplicity,
            });
            values[j] = 0.0;
        }
    }
    for j in 0..last {
        if values[j] * values[j + 1] < 0.0 {
            let (a, b) = (nodes[j], nodes[j + 1]);
            let x = bisect(|x| poly.eval(x), a, b);
            roots.push(Root {
                value: x,
                bracket: (a, b),
                multiplicity: Multiplicity::Simple,
            });
        }
    }
    roots.sort_by(|a, b| a.value.total_cmp(&b.value));
    roots
}

/// Number of real eigenvalues of the companion matrix inside `(lo, hi)`,
/// counted with multiplicity.
fn companion_real_count(poly: &Polynomial, lo: f64, hi: f64) -> usize {
    let n = poly.degree();
    if n == 0 {
        return 0;
    }
    let lead = poly.coeffs[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -poly.coeffs[i] / lead;
    }
    m.complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() <= 1e-6 * z.re.abs().max(1.0))
        .filter(|z| z.re > lo && z.re < hi)
        .count()
}

/// All real roots of `poly` in `domain`.
///
/// Simple roots are bisected to full double precision; tangencies are
/// reported as [`Multiplicity::Double`]. `cross_checked` records whether
/// the companion-matrix eigenvalue count agrees.
pub fn numeric_roots(poly: &Polynomial, domain: RootDomain) -> Result<RootReport> {
    let zero_roots = poly.coeffs.iter().take_while(|c| **c == 0.0).count();
    let stripped = Polynomial::new(poly.coeffs[zero_roots..].to_vec())?;

    let (dom_lo, dom_hi) = match domain {
        RootDomain::Interval { lo, hi } => {
            if lo >= hi || lo.is_nan() || hi.is_nan() {
                return Err(Error::InvalidParams(format!(
                    "empty root domain ({lo}, {hi})"
                )));
            }
            (lo, hi)
        }
        RootDomain::Positive => (0.0, f64::INFINITY),
        RootDomain::Real => (f64::NEG_INFINITY, f64::INFINITY),
    };

    let mut roots = Vec::new();
    if stripped.degree() > 0 {
        let bound = 2.0 * stripped.cauchy_bound();
        let mut lo = dom_lo.max(-bound);
        let hi = dom_hi.min(bound);
        if lo == 0.0 {
            lo = 0.5 * stripped.nonzero_root_lower_bound();
        }
        roots = isolate(&stripped, lo, hi);
    }
    if zero_roots > 0 && dom_lo < 0.0 && dom_hi > 0.0 {
        let multiplicity = if zero_roots == 1 {
            Multiplicity::Simple
        } else {
            Multiplicity::Double
        };
        roots.push(Root {
            value: 0.0,
            bracket: (0.0, 0.0),
            multiplicity,
        });
        roots.sort_by(|a, b| a.value.total_cmp(&b.value));
    }

    let mut notes = Vec::new();
    let eig_count = companion_real_count(&stripped, dom_lo, dom_hi)
        + if dom_lo < 0.0 && dom_hi > 0.0 {
            zero_roots
        } else {
            0
        };
    let found: usize = roots.iter().map(|r| r.multiplicity.count()).sum();
    let cross_checked = eig_count == found;
    if !cross_checked {
        notes.push(format!(
            "companion matrix reports {eig_count} real roots in the domain, bracketing found {found}"
        ));
    }
    for r in &roots {
        if !poly.is_small_at(r.value, RESIDUAL_REL_TOL) {
            return Err(Error::Numeric(format!(
                "root {} fails the residual check: |p| = {:e}",
                r.value,
                poly.eval(r.value).abs()
            )));
        }
    }
    Ok(RootReport {
        roots,
        method: RootMethod::Bisection,
        cross_checked,
        notes,
    })
}

/// Sign changes in the coefficient sequence, zeros skipped: an upper bound
/// on the number of positive roots with the same parity.
pub fn descartes_positive_bound(poly: &Polynomial) -> usize {
    let signs: Vec<bool> = poly
        .coeffs
        .iter()
        .filter(|c| **c != 0.0)
        .map(|c| *c > 0.0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn check_class(q: usize, m: usize) -> Result<()> {
    if q < 2 || m < 1 || m >= q {
        return Err(Error::InvalidParams(format!(
            "need 1 <= m <= q - 1, got q = {q}, m = {m}"
        )));
    }
    Ok(())
}

/// The reduced cubic `m x^3 - (theta-1) x^2 - (theta-1) x + (q-m)` whose
/// positive roots give nontrivial translation-invariant solutions at `k = 3`.
pub fn reduced_cubic(theta: f64, q: usize, m: usize) -> Result<Polynomial> {
    check_class(q, m)?;
    let t = theta - 1.0;
    Polynomial::new(vec![(q - m) as f64, -t, -t, m as f64])
}

/// Tangency quartic `m x^4 + 2m x^3 - 2(q-m) x - (q-m)`.
pub fn tangency_quartic(q: usize, m: usize) -> Result<Polynomial> {
    check_class(q, m)?;
    let (m, r) = (m as f64, (q - m) as f64);
    Polynomial::new(vec![-r, -2.0 * r, 0.0, 2.0 * m, m])
}

fn agrees(a: f64, b: f64) -> bool {
    (a - b).abs() <= AGREEMENT_TOL * b.abs().max(1.0)
}

/// Real roots of the reduced cubic via Cardano's formula.
///
/// With `x = y + (theta-1)/(3m)` the cubic becomes `y^3 + p y + r = 0`.
/// The sign of `D = r^2/4 + p^3/27` selects the branch: one real root
/// (`D > 0`), a double root (`D = 0` to rounding), or three real roots
/// `y_j = 2 sqrt(-p/3) cos((alpha + 2 pi j)/3)` with
/// `alpha = atan2(sqrt(-D), -r/2)` (`D < 0`). The result is checked
/// against [`numeric_roots`]; on disagreement the oracle roots are
/// returned with `cross_checked = false`.
pub fn cubic_cardano(theta: f64, q: usize, m: usize) -> Result<RootReport> {
    if !(theta.is_finite() && theta > 1.0) {
        return Err(Error::Regime(format!(
            "Cardano branch needs theta > 1, got {theta}"
        )));
    }
    let cubic = reduced_cubic(theta, q, m)?;
    let mf = m as f64;
    let a = -(theta - 1.0) / mf;
    let b = a;
    let c = (q - m) as f64 / mf;
    let shift = -a / 3.0;
    let p = b - a * a / 3.0;
    let r = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = r * r / 4.0 + p * p * p / 27.0;
    let disc_scale = r * r / 4.0 + (p * p * p).abs() / 27.0;

    let mut closed: Vec<(f64, Multiplicity)> = if disc.abs() <= NUMERIC_ZERO_REL * disc_scale {
        vec![
            (3.0 * r / p + shift, Multiplicity::Simple),
            (-1.5 * r / p + shift, Multiplicity::Double),
        ]
    } else if disc > 0.0 {
        let s = disc.sqrt();
        vec![(
            (-r / 2.0 + s).cbrt() + (-r / 2.0 - s).cbrt() + shift,
            Multiplicity::Simple,
        )]
    } else {
        let rho = 2.0 * (-p / 3.0).sqrt();
        let alpha = (-disc).sqrt().atan2(-r / 2.0);
        (0..3)
            .map(|j| {
                let y = rho * ((alpha + 2.0 * std::f64::consts::PI * j as f64) / 3.0).cos();
                (y + shift, Multiplicity::Simple)
            })
            .collect()
    };
    closed.sort_by(|x, y| x.0.total_cmp(&y.0));

    let oracle = numeric_roots(&cubic, RootDomain::Real)?;
    let matched = closed.len() == oracle.roots.len()
        && closed
            .iter()
            .zip(&oracle.roots)
            .all(|((x, mult), o)| *mult == o.multiplicity && agrees(*x, o.value));

    if !matched {
        let mut flagged = oracle;
        flagged.cross_checked = false;
        flagged.notes.push(format!(
            "Cardano roots {:?} disagree with the oracle; oracle roots returned",
            closed.iter().map(|c| c.0).collect::<Vec<_>>()
        ));
        return Ok(flagged);
    }
    let roots = closed
        .iter()
        .zip(&oracle.roots)
        .map(|((x, mult), o)| Root {
            value: *x,
            bracket: o.bracket,
            multiplicity: *mult,
        })
        .collect();
    Ok(RootReport {
        roots,
        method: RootMethod::ClosedForm,
        cross_checked: oracle.cross_checked,
        notes: oracle.notes,
    })
}

/// Positive root of the tangency quartic.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuarticRoot {
    /// Closed-form value when it agrees with the oracle, else the oracle value.
    pub value: f64,
    /// Ferrari closed form, `None` when it is not a real number.
    pub closed_form: Option<f64>,
    pub oracle: f64,
    /// True when the closed form is unavailable or disagrees with the oracle.
    pub flagged: bool,
}

/// Ferrari's closed form for the positive root of
/// `m x^4 + 2m x^3 - 2(q-m) x - (q-m)`:
///
/// `x = (4th_root(8 a^3) + sqrt((3 - 2a) sqrt(2a) - 6 + 4q/m)) / (2 4th_root(2a)) - 1/2`,
/// `a = (cbrt(m (8m^2 - 12mq + 4q^2)) + m) / (2m)`.
///
/// The expression degenerates for some `(q, m)` (e.g. `a = 0` at `q = 3,
/// m = 2`); the oracle value is returned there with `flagged = true`.
pub fn quartic_ferrari(q: usize, m: usize) -> Result<QuarticRoot> {
    let quartic = tangency_quartic(q, m)?;
    let (qf, mf) = (q as f64, m as f64);
    let alpha0 = ((mf * (8.0 * mf * mf - 12.0 * mf * qf + 4.0 * qf * qf)).cbrt() + mf) / (2.0 * mf);
    let closed = ((8.0 * alpha0.powi(3)).powf(0.25)
        + ((3.0 - 2.0 * alpha0) * (2.0 * alpha0).sqrt() - 6.0 + 4.0 * qf / mf).sqrt())
        / (2.0 * (2.0 * alpha0).powf(0.25))
        - 0.5;
    let closed_form = closed.is_finite().then_some(closed);

    let positive = numeric_roots(&quartic, RootDomain::Positive)?.positive();
    let oracle = match positive.as_slice() {
        [only] => only.value,
        other => {
            return Err(Error::Numeric(format!(
                "tangency quartic should have one positive root, found {}",
                other.len()
            )))
        }
    };
    match closed_form {
        Some(x) if agrees(x, oracle) => Ok(QuarticRoot {
            value: x,
            closed_form,
            oracle,
            flagged: false,
        }),
        _ => Ok(QuarticRoot {
            value: oracle,
            closed_form,
            oracle,
            flagged: true,
        }),
    }
}
