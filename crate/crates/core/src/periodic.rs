//! Period-two solutions on the invariant sets `I_m` (antiferromagnetic regime).
//!
//! On `I_m` the two-level system reduces to `x = f(y)`, `y = f(x)` with
//!
//! ```text
//! f(x) = ((theta x + (m-1) x + q - m) / (theta + m x + q - m - 1))^k
//! ```
//!
//! Solutions are the roots of `h(x) = ln f(x) - ln g(x)`, `g = f^-1`, on the
//! window `(theta_1, theta_2)` where `g > 0`. The trivial root `x = 1`
//! is always present; for `theta < theta_bar_cr` two more appear, one on
//! each side of 1, and they form a swapped pair `(x0, y0) = (y2, x2)`.
//!
//! The formal class `m = q` uses the same reduced system with `q - m = 0`.
//! There `g` has no upper pole, `f` has a pole at `(1 - theta)/q`, and the
//! window becomes `(max(theta_1, (1 - theta)/q), f(theta_1))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{binomial, recursion_power, FieldVector, InvariantClass, ModelParams};
use crate::poly::{bisect, numeric_roots, Polynomial, RootDomain, SCAN_PANELS};
use crate::ZERO_TOL;

/// Period-two and translation-invariant solutions closer than this are one.
pub const PAIR_TOL: f64 = 1e-8;

/// Relative inset from the window ends used by the root scan.
const SCAN_INSET: f64 = 1e-9;

/// Upper scan limit for the `m = q` class when its window is unbounded.
const FULL_CLASS_CAP: f64 = 1e12;

/// Relative inset of the `h`-profile grid, as a fraction of the window width.
pub const PROFILE_INSET: f64 = 1e-6;

/// Theta used for an `h`-profile when the caller does not choose one.
pub const DEFAULT_PROFILE_THETA: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq)]
struct ClassMap {
    q: f64,
    m: f64,
    k: usize,
    theta: f64,
}

impl ClassMap {
    fn new(params: &ModelParams, m: usize) -> Result<Self> {
        InvariantClass::new(m, params.q())?;
        Ok(ClassMap {
            q: params.q() as f64,
            m: m as f64,
            k: params.k(),
            theta: params.theta(),
        })
    }

    fn full(&self) -> bool {
        self.m == self.q
    }

    fn kf(&self) -> f64 {
        self.k as f64
    }

    /// Base of `f` before the k-th power. Written so numerator and
    /// denominator are the same expression at `x = 1`.
    fn f_base(&self, x: f64) -> f64 {
        let s = self.m * x + (self.q - self.m);
        ((self.theta - 1.0) * x + s) / ((self.theta - 1.0) + s)
    }

    fn f(&self, x: f64) -> f64 {
        self.f_base(x).powi(self.k as i32)
    }

    fn ln_f(&self, x: f64) -> f64 {
        self.kf() * self.f_base(x).ln()
    }

    fn g_parts(&self, x: f64) -> (f64, f64) {
        let t = x.powf(1.0 / self.kf());
        let num = (self.q - self.m) * (1.0 - t) + (1.0 - self.theta) * t;
        let den = self.m * (t - 1.0) + (1.0 - self.theta);
        (num, den)
    }

    fn theta_1(&self) -> f64 {
        ((self.theta + self.m - 1.0) / self.m).powi(self.k as i32)
    }

    fn window(&self) -> (f64, f64) {
        let theta_1 = self.theta_1();
        if !self.full() {
            let theta_2 =
                ((self.q - self.m) / (self.theta + self.q - self.m - 1.0)).powi(self.k as i32);
            return (theta_1, theta_2);
        }
        let f_pole = (1.0 - self.theta) / self.q;
        if theta_1 > f_pole {
            (theta_1, self.f(theta_1))
        } else {
            (f_pole, FULL_CLASS_CAP)
        }
    }

    fn in_window(&self, x: f64) -> Result<()> {
        let (lo, hi) = self.window();
        if x > lo && x < hi && x.is_finite() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "x = {x} outside the window ({lo}, {hi})"
            )))
        }
    }

    fn g(&self, x: f64) -> Result<f64> {
        self.in_window(x)?;
        let (num, den) = self.g_parts(x);
        Ok(num / den)
    }

    fn h(&self, x: f64) -> Result<f64> {
        self.in_window(x)?;
        let (num, den) = self.g_parts(x);
        Ok(self.ln_f(x) - (num.ln() - den.ln()))
    }

    /// Numerator polynomial `p(t)` of `h'` in the variable `t = x^(1/k)`.
    fn p_poly(&self) -> Polynomial {
        let (q, m, th, k) = (self.q, self.m, self.theta, self.k);
        let kf = k as f64;
        let mut c = vec![0.0; 2 * k + 1];
        c[2 * k] += m * (th + m - 1.0);
        c[k + 1] += kf * kf * m * (th + q - m - 1.0);
        c[k] -= (kf * kf - 1.0) * (th * th + (q - 2.0) * th + 2.0 * m * q - 2.0 * m * m - q + 1.0);
        c[k - 1] += kf * kf * (th + m - 1.0) * (q - m);
        c[0] += (th + q - m - 1.0) * (q - m);
        Polynomial::new(c).expect("leading coefficient m(theta+m-1) > 0")
    }

    fn h_prime(&self, x: f64) -> Result<f64> {
        self.in_window(x)?;
        let (q, m, th, k) = (self.q, self.m, self.theta, self.k as i32);
        let kf = self.kf();
        let t = x.powf(1.0 / kf);
        let tk = t.powi(k);
        let denom = kf
            * t.powi(k - 1)
            * ((th + m - 1.0) * tk + q - m)
            * (m * tk + th + q - m - 1.0)
            * (m * t - th - m + 1.0)
            * ((th + q - m - 1.0) * t - q + m);
        Ok((th - 1.0) * (th + q - 1.0) * self.p_poly().eval(t) / denom)
    }

    /// `h(x) / ln x`, continuous through `x = 1` with value `h'(1)`.
    fn deflated(&self, x: f64) -> f64 {
        if x == 1.0 {
            return h_prime_at_one(self.q, self.k, self.theta);
        }
        self.h(x).map(|h| h / x.ln()).unwrap_or(f64::NAN)
    }
}

/// `h'(1) = k (theta-1)/(theta+q-1) - (theta+q-1)/(k (theta-1))`, the same for every `m`.
fn h_prime_at_one(q: f64, k: usize, theta: f64) -> f64 {
    let a = k as f64 * (theta - 1.0) / (theta + q - 1.0);
    a - 1.0 / a
}

fn require_antiferro(params: &ModelParams) -> Result<()> {
    if params.theta() >= 1.0 {
        return Err(Error::Regime(format!(
            "period-two solving needs 0 < theta < 1, got theta = {}",
            params.theta()
        )));
    }
    Ok(())
}

/// The reduced map `f` on `I_m`.
pub fn f_map(params: &ModelParams, m: usize, x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("f needs x > 0, got {x}")));
    }
    let map = ClassMap::new(params, m)?;
    let y = map.f(x);
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("f({x}) = {y} is not positive")));
    }
    Ok(y)
}

/// `g = f^-1`, defined on the window `(theta_1, theta_2)`.
pub fn g_map(params: &ModelParams, m: usize, x: f64) -> Result<f64> {
    require_antiferro(params)?;
    ClassMap::new(params, m)?.g(x)
}

/// `h(x) = ln f(x) - ln g(x)` on the window.
pub fn h_log_ratio(params: &ModelParams, m: usize, x: f64) -> Result<f64> {
    require_antiferro(params)?;
    ClassMap::new(params, m)?.h(x)
}

/// `h'(x)` assembled from the polynomial `p(t)`, `t = x^(1/k)`.
pub fn h_prime(params: &ModelParams, m: usize, x: f64) -> Result<f64> {
    require_antiferro(params)?;
    ClassMap::new(params, m)?.h_prime(x)
}

/// The polynomial `p(t)` whose positive roots are the critical points of `h`.
pub fn h_prime_numerator(params: &ModelParams, m: usize) -> Result<Polynomial> {
    Ok(ClassMap::new(params, m)?.p_poly())
}

/// Window where `g > 0`, the threshold, and the critical points of `h`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BifurcationWindow {
    pub theta_1: f64,
    pub theta_2: f64,
    pub theta_bar_cr: f64,
    /// Critical points of `h` inside the window, ascending.
    pub critical_points: Vec<f64>,
}

pub fn bifurcation_window(params: &ModelParams, m: usize) -> Result<BifurcationWindow> {
    require_antiferro(params)?;
    let map = ClassMap::new(params, m)?;
    let (theta_1, theta_2) = map.window();
    let kf = map.kf();
    let (t_lo, t_hi) = (theta_1.powf(1.0 / kf), theta_2.powf(1.0 / kf));
    let critical_points =
        numeric_roots(&map.p_poly(), RootDomain::Interval { lo: t_lo, hi: t_hi })?
            .values()
            .into_iter()
            .map(|t| t.powi(map.k as i32))
            .collect();
    Ok(BifurcationWindow {
        theta_1,
        theta_2,
        theta_bar_cr: params.theta_bar_cr(),
        critical_points,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolutionKind {
    TranslationInvariant,
    PeriodTwo,
}

/// A solution `(x, y)` of the two-level system on `I_m`: `x` on even
/// levels, `y = f(x)` on odd levels.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicSolution {
    pub m: usize,
    pub x: f64,
    pub y: f64,
    pub kind: SolutionKind,
    /// `|x - f(y)| / max(1, x)` and `|y - f(x)| / max(1, y)`.
    pub residuals: [f64; 2],
}

impl PeriodicSolution {
    /// Even- and odd-level field vectors of the canonical representative.
    /// `None` for the formal class `m = q`.
    pub fn field_vectors(&self, q: usize) -> Option<Result<(FieldVector, FieldVector)>> {
        let class = InvariantClass::new(self.m, q).ok()?;
        let u = class.canonical(self.x)?;
        let v = class.canonical(self.y)?;
        Some(u.and_then(|u| v.map(|v| (u, v))))
    }
}

/// Residuals of the reduced system at `(x, y)`.
pub fn pair_residuals(params: &ModelParams, m: usize, x: f64, y: f64) -> Result<[f64; 2]> {
    let map = ClassMap::new(params, m)?;
    Ok([
        (x - map.f(y)).abs() / x.max(1.0),
        (y - map.f(x)).abs() / y.max(1.0),
    ])
}

/// Max-norm residual of the full two-level system for field vectors `(u, v)`:
/// `u = F(v)^k` and `v = F(u)^k` componentwise, scaled by `max(1, .)`.
pub fn full_system_residual(params: &ModelParams, u: &FieldVector, v: &FieldVector) -> Result<f64> {
    let fu = recursion_power(params, u)?;
    let fv = recursion_power(params, v)?;
    let scaled = |a: &FieldVector, b: &FieldVector| {
        a.as_slice()
            .iter()
            .zip(b.as_slice())
            .map(|(x, y)| (x - y).abs() / x.max(1.0))
            .fold(0.0, f64::max)
    };
    Ok(scaled(u, &fv).max(scaled(v, &fu)))
}

/// All solutions found on `I_m`, with the count expected for this regime.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicClassReport {
    pub m: usize,
    pub window: BifurcationWindow,
    /// Sorted by `x`.
    pub solutions: Vec<PeriodicSolution>,
    /// 3 below `theta_bar_cr`, 1 above; `None` at equality or when
    /// `k < 3` or `q < 3`.
    pub predicted: Option<usize>,
    pub matches: Option<bool>,
    /// With three solutions: `x0 < 1 < x2` and `y0 > 1 > y2`.
    pub ordering_ok: Option<bool>,
}

impl PeriodicClassReport {
    pub fn period_two(&self) -> impl Iterator<Item = &PeriodicSolution> {
        self.solutions
            .iter()
            .filter(|s| s.kind == SolutionKind::PeriodTwo)
    }
}

fn newton_polish(map: &ClassMap, x: f64, bracket: (f64, f64)) -> f64 {
    let (Ok(h), Ok(dh)) = (map.h(x), map.h_prime(x)) else {
        return x;
    };
    if dh == 0.0 || !dh.is_finite() {
        return x;
    }
    let next = x - h / dh;
    match map.h(next) {
        Ok(hn) if next > bracket.0 && next < bracket.1 && hn.abs() < h.abs() => next,
        _ => x,
    }
}

/// Roots of `h` on `I_m`, each expanded to a solution `(x, f(x))`.
///
/// Roots are bracketed on a log-spaced grid of the window and bisected on
/// `h(x)/ln(x)`, which removes the known root at 1 without splitting the
/// window. The count is then compared with the expected one rather than
/// assumed.
pub fn solve_periodic_class(params: &ModelParams, m: usize) -> Result<PeriodicClassReport> {
    require_antiferro(params)?;
    let map = ClassMap::new(params, m)?;
    let window = bifurcation_window(params, m)?;
    let (lo, hi) = (
        window.theta_1 * (1.0 + SCAN_INSET),
        window.theta_2 * (1.0 - SCAN_INSET),
    );

    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    let nodes: Vec<f64> = (0..=SCAN_PANELS)
        .map(|j| (ln_lo + (ln_hi - ln_lo) * j as f64 / SCAN_PANELS as f64).exp())
        .collect();
    let values: Vec<f64> = nodes.iter().map(|&x| map.deflated(x)).collect();

    let mut xs = vec![1.0];
    for j in 0..SCAN_PANELS {
        let (a, b) = (nodes[j], nodes[j + 1]);
        let (va, vb) = (values[j], values[j + 1]);
        if !(va.is_finite() && vb.is_finite()) {
            continue;
        }
        if va == 0.0 {
            xs.push(a);
        } else if va * vb < 0.0 {
            let x = bisect(|x| map.deflated(x), a, b);
            xs.push(newton_polish(&map, x, (a, b)));
        }
    }
    // the exact root x = 1 stands in for any scan root that lands next to it
    xs.retain(|&x| x == 1.0 || (x - 1.0).abs() > PAIR_TOL);
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() <= PAIR_TOL * b.abs().max(1.0));

    let mut solutions = Vec::with_capacity(xs.len());
    for x in xs {
        let y = map.f(x);
        let residuals = pair_residuals(params, m, x, y)?;
        if residuals.iter().any(|r| r.is_nan() || *r >= ZERO_TOL) {
            return Err(Error::Numeric(format!(
                "class {m}: root x = {x} has system residuals {residuals:?}"
            )));
        }
        let kind = if (x - y).abs() > PAIR_TOL {
            SolutionKind::PeriodTwo
        } else {
            SolutionKind::TranslationInvariant
        };
        solutions.push(PeriodicSolution {
            m,
            x,
            y,
            kind,
            residuals,
        });
    }

    let (q, k) = (params.q(), params.k());
    let theta_bar = params.theta_bar_cr();
    let predicted = if k < 3 || q < 3 || params.theta() == theta_bar {
        None
    } else if params.theta() < theta_bar {
        Some(3)
    } else {
        Some(1)
    };
    let ordering_ok = (solutions.len() == 3).then(|| {
        let (s0, s1, s2) = (&solutions[0], &solutions[1], &solutions[2]);
        s0.x < 1.0 && s1.x == 1.0 && s2.x > 1.0 && s0.y > 1.0 && s1.y == 1.0 && s2.y < 1.0
    });
    Ok(PeriodicClassReport {
        m,
        window,
        matches: predicted.map(|p| p == solutions.len()),
        solutions,
        predicted,
        ordering_ok,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassCount {
    pub m: usize,
    /// Copies of `I_m` among the `q` spin coordinates, `binomial(q, m)`.
    pub multiplicity: usize,
    pub period_two_solutions: usize,
    pub contribution: usize,
    pub report: PeriodicClassReport,
}

/// Period-two (non translation-invariant) solutions over the union of all
/// `I_m`, `m = 1..q`, and their coordinate copies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicCount {
    pub total: usize,
    /// `2 (2^q - 1)`.
    pub predicted: usize,
    pub matches: bool,
    pub breakdown: Vec<ClassCount>,
}

/// Count period-two solutions class by class.
///
/// Requires `k >= 3`, `3 <= q < k + 1` and `0 < theta < theta_bar_cr`.
pub fn count_periodic_measures(params: &ModelParams) -> Result<PeriodicCount> {
    let (q, k, theta) = (params.q(), params.k(), params.theta());
    if k < 3 {
        return Err(Error::Regime(format!("k >= 3 fails (k = {k})")));
    }
    if q < 3 {
        return Err(Error::Regime(format!("q >= 3 fails (q = {q})")));
    }
    if q > k {
        return Err(Error::Regime(format!("q < k + 1 fails (q = {q}, k = {k})")));
    }
    let theta_bar = params.theta_bar_cr();
    if theta >= theta_bar {
        return Err(Error::Regime(format!(
            "theta < theta_bar_cr = (k - q + 1)/(k + 1) = {theta_bar} fails (theta = {theta})"
        )));
    }

    let breakdown = (1..=q)
        .map(|m| {
            let report = solve_periodic_class(params, m)?;
            let multiplicity = binomial(q, m);
            let period_two_solutions = report.period_two().count();
            Ok(ClassCount {
                m,
                multiplicity,
                period_two_solutions,
                contribution: multiplicity * period_two_solutions,
                report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = breakdown.iter().map(|c| c.contribution).sum();
    let predicted = 2 * ((1usize << q) - 1);
    Ok(PeriodicCount {
        total,
        predicted,
        matches: total == predicted,
        breakdown,
    })
}

/// Samples of `h` on an evenly spaced grid over the window, inset by
/// [`PROFILE_INSET`] of the window width at both ends.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HProfile {
    pub m: usize,
    pub theta: f64,
    pub theta_1: f64,
    pub theta_2: f64,
    pub epsilon: f64,
    pub samples: Vec<(f64, f64)>,
}

impl HProfile {
    /// Sign changes along the profile; exact zeros are skipped.
    pub fn sign_changes(&self) -> usize {
        let signs: Vec<bool> = self
            .samples
            .iter()
            .filter(|(_, h)| *h != 0.0)
            .map(|(_, h)| *h > 0.0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

pub fn emit_h_profile(params: &ModelParams, m: usize, grid_size: usize) -> Result<HProfile> {
    require_antiferro(params)?;
    if grid_size < 2 {
        return Err(Error::InvalidParams(format!(
            "grid size must be >= 2, got {grid_size}"
        )));
    }
    let map = ClassMap::new(params, m)?;
    let (theta_1, theta_2) = map.window();
    let epsilon = PROFILE_INSET * (theta_2 - theta_1);
    let (a, b) = (theta_1 + epsilon, theta_2 - epsilon);
    let samples = (0..grid_size)
        .map(|i| {
            let x = a + (b - a) * i as f64 / (grid_size - 1) as f64;
            map.h(x).map(|h| (x, h))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HProfile {
        m,
        theta: params.theta(),
        theta_1,
        theta_2,
        epsilon,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: usize, k: usize, theta: f64) -> ModelParams {
        ModelParams::new(q, k, theta).unwrap()
    }

    #[test]
    fn f_fixed_at_one_and_hand_value() {
        let p = params(3, 3, 0.2);
        assert_eq!(f_map(&p, 1, 1.0).unwrap(), 1.0);
        assert!((f_map(&p, 1, 2.0).unwrap() - 0.421875).abs() < 1e-15);
        assert_eq!(g_map(&p, 1, 1.0).unwrap(), 1.0);
        assert_eq!(h_log_ratio(&p, 1, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn g_inverts_f() {
        let p = params(3, 3, 0.2);
        let y = f_map(&p, 1, 0.5).unwrap();
        assert!((g_map(&p, 1, y).unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn g_outside_window_is_domain_error() {
        let p = params(3, 3, 0.2);
        let w = bifurcation_window(&p, 1).unwrap();
        assert!(matches!(
            g_map(&p, 1, w.theta_1 * 0.5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            g_map(&p, 1, w.theta_2 * 1.5),
            Err(Error::Domain(_))
        ));
        assert!(g_map(&p, 1, w.theta_2 * (1.0 - 1e-9)).unwrap() < 1e-6);
    }

    #[test]
    fn ferro_regime_rejected() {
        let p = params(3, 3, 2.0);
        assert!(matches!(solve_periodic_class(&p, 1), Err(Error::Regime(_))));
        assert!(f_map(&p, 1, 2.0).is_ok());
    }

    #[test]
    fn h_prime_at_one_sign() {
        for &(theta, negative) in &[(0.2, true), (0.24, true), (0.26, false), (0.5, false)] {
            let p = params(3, 3, theta);
            let d = h_prime(&p, 1, 1.0).unwrap();
            assert_eq!(d < 0.0, negative, "theta = {theta}, h'(1) = {d}");
            assert!((d - h_prime_at_one(3.0, 3, theta)).abs() < 1e-12);
        }
    }

    #[test]
    fn three_roots_below_threshold() {
        let rep = solve_periodic_class(&params(3, 3, 0.2), 1).unwrap();
        assert_eq!(rep.solutions.len(), 3);
        assert_eq!(rep.matches, Some(true));
        assert_eq!(rep.ordering_ok, Some(true));
        assert_eq!(rep.period_two().count(), 2);
        let (s0, s2) = (rep.solutions[0], rep.solutions[2]);
        assert!((s0.x - s2.y).abs() < 1e-9 && (s0.y - s2.x).abs() < 1e-9);
    }

    #[test]
    fn one_root_above_threshold() {
        let rep = solve_periodic_class(&params(3, 3, 0.3), 1).unwrap();
        assert_eq!(rep.solutions.len(), 1);
        assert_eq!(rep.solutions[0].kind, SolutionKind::TranslationInvariant);
        assert_eq!(rep.matches, Some(true));
    }

    #[test]
    fn full_class_window() {
        let p = params(3, 3, 0.2);
        let rep = solve_periodic_class(&p, 3).unwrap();
        assert_eq!(rep.solutions.len(), 3);
        assert!(rep.solutions[0].field_vectors(3).is_none());
    }

    #[test]
    fn count_regime_errors() {
        let err = count_periodic_measures(&params(4, 3, 0.1)).unwrap_err();
        assert!(err.to_string().contains("q < k + 1"), "{err}");
        let err = count_periodic_measures(&params(3, 3, 0.3)).unwrap_err();
        assert!(err.to_string().contains("theta_bar_cr"), "{err}");
        let err = count_periodic_measures(&params(3, 2, 0.1)).unwrap_err();
        assert!(err.to_string().contains("k >= 3"), "{err}");
    }

    #[test]
    fn count_q3() {
        let c = count_periodic_measures(&params(3, 3, 0.2)).unwrap();
        assert_eq!(c.total, 14);
        assert!(c.matches);
        assert_eq!(
            c.breakdown
                .iter()
                .map(|b| b.multiplicity)
                .collect::<Vec<_>>(),
            vec![3, 3, 1]
        );
    }

    #[test]
    fn profile_grid_and_errors() {
        let p = params(3, 3, 0.2);
        let prof = emit_h_profile(&p, 1, 50).unwrap();
        assert_eq!(prof.samples.len(), 50);
        assert!(prof.samples.windows(2).all(|w| w[0].0 < w[1].0));
        assert!(emit_h_profile(&p, 1, 1).is_err());
    }
}
