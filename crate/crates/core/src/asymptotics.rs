//! Growth rates of the cutsize distribution and typical minimum cutsizes.
//!
//! All logarithms are base 2. For relative cutsize `sigma` and relative part
//! size `mu1`,
//!
//! ```text
//! g(sigma, mu1) = H2(sigma) - gamma (delta-1)/delta H2(mu1)
//!                 + inf_{u>0} [ sigma log p(u) + (1-sigma) log q(u) - mu1 gamma log u ]
//! h(sigma, eps) = max_{mu1 in [(1-eps)/2, (1+eps)/2]} g(sigma, mu1)
//! ```
//!
//! The inner objective is convex in `t = ln u` (log-sum-exp of polynomials
//! with non-negative coefficients), so its minimiser is the unique root of
//! the derivative and is located by bracketing plus safeguarded Newton.

use std::f64::consts::LN_2;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::ensemble::EnsembleParams;
use crate::error::{Error, Result};

/// Variable and check degrees of a regular ensemble; `n` does not enter the
/// asymptotic quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Degrees {
    gamma: usize,
    delta: usize,
}

impl Degrees {
    pub fn new(gamma: usize, delta: usize) -> Result<Self> {
        if gamma == 0 || delta == 0 {
            return Err(Error::InvalidParams(format!(
                "gamma and delta must be >= 1 (got {gamma}, {delta})"
            )));
        }
        Ok(Degrees { gamma, delta })
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn design_rate(&self) -> f64 {
        1.0 - self.gamma as f64 / self.delta as f64
    }

    /// `gamma (delta - 1) / delta`.
    fn binomial_weight(&self) -> f64 {
        self.gamma as f64 * (self.delta as f64 - 1.0) / self.delta as f64
    }

    fn require_root_regime(&self) -> Result<()> {
        if self.gamma < 2 || self.delta < 3 {
            return Err(Error::Domain(format!(
                "typical minimum cutsize needs gamma >= 2 and delta >= 3 (got {}, {})",
                self.gamma, self.delta
            )));
        }
        Ok(())
    }
}

impl From<&EnsembleParams> for Degrees {
    fn from(p: &EnsembleParams) -> Self {
        Degrees {
            gamma: p.gamma(),
            delta: p.delta(),
        }
    }
}

/// Binary entropy in bits, with `H2(0) = H2(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("binary entropy argument {x} outside [0, 1]")));
    }
    Ok(h2(x))
}

fn h2(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// `sum_k c_k e^{k t}` for fixed `(ln c_k, k)` terms, evaluated in log space.
struct LogPoly {
    terms: Vec<(f64, f64)>,
}

struct LogPolyAt {
    /// natural log of the value
    ln: f64,
    /// mean exponent under weights `c_k e^{kt}`: `u f'(u) / f(u)`
    mean: f64,
    var: f64,
}

impl LogPoly {
    fn p(gamma: usize) -> Self {
        let mut terms = Vec::new();
        let mut c = 1.0f64;
        for k in 1..gamma {
            c = c * (gamma - k + 1) as f64 / k as f64;
            terms.push((c.ln(), k as f64));
        }
        LogPoly { terms }
    }

    fn q(gamma: usize) -> Self {
        LogPoly {
            terms: vec![(0.0, 0.0), (0.0, gamma as f64)],
        }
    }

    fn at(&self, t: f64) -> LogPolyAt {
        let max = self
            .terms
            .iter()
            .map(|&(lc, k)| lc + k * t)
            .fold(f64::NEG_INFINITY, f64::max);
        let (mut z, mut m1, mut m2) = (0.0, 0.0, 0.0);
        for &(lc, k) in &self.terms {
            let w = (lc + k * t - max).exp();
            z += w;
            m1 += w * k;
            m2 += w * k * k;
        }
        let mean = m1 / z;
        LogPolyAt {
            ln: max + z.ln(),
            mean,
            var: (m2 / z - mean * mean).max(0.0),
        }
    }
}

/// Minimiser of the inner objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerMinimum {
    pub u_star: f64,
    /// Minimum value in bits.
    pub value: f64,
    /// `|sigma u p'q + (1-sigma) u p q' - mu1 gamma p q| / (mu1 gamma p q)`.
    pub relative_residual: f64,
}

const STATIONARITY_TOL: f64 = 1e-12;

/// `inf_{u>0} sigma log p(u) + (1-sigma) log q(u) - mu1 gamma log u`, for
/// `0 < sigma < gamma min(mu1, 1-mu1)` and `gamma >= 2`.
pub fn inner_infimum(sigma: f64, mu1: f64, gamma: usize) -> Result<InnerMinimum> {
    let limit = gamma as f64 * mu1.min(1.0 - mu1);
    if gamma < 2 || !(sigma > 0.0 && sigma < limit && sigma <= 1.0) {
        return Err(Error::Domain(format!(
            "inner infimum needs gamma >= 2 and 0 < sigma < gamma*min(mu1, 1-mu1) \
             (gamma={gamma}, sigma={sigma}, mu1={mu1})"
        )));
    }
    let (p, q) = (LogPoly::p(gamma), LogPoly::q(gamma));
    let target = mu1 * gamma as f64;
    // derivative of the objective in t = ln u, in nats, and its slope
    let slope = |t: f64| {
        let (pa, qa) = (p.at(t), q.at(t));
        (
            sigma * pa.mean + (1.0 - sigma) * qa.mean - target,
            sigma * pa.var + (1.0 - sigma) * qa.var,
        )
    };

    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    let mut expansions = 0;
    while slope(lo).0 >= 0.0 {
        lo *= 2.0;
        expansions += 1;
        if expansions > 60 {
            return Err(Error::NoConvergence(format!(
                "lower bracket not found: t in [{lo}, {hi}], sigma={sigma}, mu1={mu1}"
            )));
        }
    }
    while slope(hi).0 <= 0.0 {
        hi *= 2.0;
        expansions += 1;
        if expansions > 120 {
            return Err(Error::NoConvergence(format!(
                "upper bracket not found: t in [{lo}, {hi}], sigma={sigma}, mu1={mu1}"
            )));
        }
    }

    let mut t = 0.0f64.clamp(lo, hi);
    let mut r = slope(t);
    for _ in 0..200 {
        if r.0.abs() < 1e-15 * target || hi - lo < 4.0 * f64::EPSILON * t.abs().max(1.0) {
            break;
        }
        if r.0 < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let newton = t - r.0 / r.1;
        t = if newton > lo && newton < hi && r.1 > 0.0 {
            newton
        } else {
            0.5 * (lo + hi)
        };
        r = slope(t);
    }
    let relative_residual = r.0.abs() / target;
    if r.0.abs() / LN_2 >= STATIONARITY_TOL {
        return Err(Error::NoConvergence(format!(
            "stationarity residual {:.3e} at t={t} (bracket [{lo}, {hi}]), sigma={sigma}, mu1={mu1}",
            r.0
        )));
    }
    let value = (sigma * p.at(t).ln + (1.0 - sigma) * q.at(t).ln - target * t) / LN_2;
    Ok(InnerMinimum {
        u_star: t.exp(),
        value,
        relative_residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    /// Interior point, inner infimum attained at `u_star`.
    Interior,
    /// `sigma = 0`, closed form.
    ClosedForm,
    /// `sigma` on the edge `gamma min(mu1, 1-mu1)`; the infimum escapes to
    /// `u -> 0` or `u -> inf` and the value is that limit.
    Boundary,
    /// No bipartition with this cutsize exists; value is `-inf`.
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthPoint {
    pub sigma: f64,
    /// Relative part size; for `h` the maximising one.
    pub mu1: f64,
    pub value: f64,
    pub u_star: Option<f64>,
    pub kind: PointKind,
}

const BOUNDARY_TOL: f64 = 1e-12;

fn check_unit(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("{name} = {x} outside [0, 1]")));
    }
    Ok(())
}

/// Growth rate `g(sigma, mu1)` of `A(sigma n, mu1 m)`.
pub fn growth_g(sigma: f64, mu1: f64, degrees: Degrees) -> Result<GrowthPoint> {
    check_unit("sigma", sigma)?;
    check_unit("mu1", mu1)?;
    let gamma = degrees.gamma as f64;
    let point = |value, u_star, kind| GrowthPoint {
        sigma,
        mu1,
        value,
        u_star,
        kind,
    };
    if sigma == 0.0 {
        let value = (1.0 - degrees.binomial_weight()) * h2(mu1);
        return Ok(point(value, None, PointKind::ClosedForm));
    }
    let limit = gamma * mu1.min(1.0 - mu1);
    // p = 0 when gamma = 1: every net lies inside one part
    if degrees.gamma == 1 || sigma > limit + BOUNDARY_TOL {
        return Ok(point(f64::NEG_INFINITY, None, PointKind::Infeasible));
    }
    let outer = h2(sigma) - degrees.binomial_weight() * h2(mu1);
    if sigma >= limit - BOUNDARY_TOL {
        // p(u) ~ gamma u at 0 and ~ gamma u^(gamma-1) at infinity; either way
        // the objective flattens to sigma log2(gamma)
        let value = outer + sigma * gamma.log2();
        return Ok(point(value, None, PointKind::Boundary));
    }
    let inner = inner_infimum(sigma, mu1, degrees.gamma)?;
    Ok(point(outer + inner.value, Some(inner.u_star), PointKind::Interior))
}

/// Exactly-balanced growth rate in closed form:
/// `H2(sigma) + sigma log2(2^(gamma-1) - 1) - gamma (delta-1)/delta + 1`.
pub fn growth_g_half_closed(sigma: f64, degrees: Degrees) -> Result<f64> {
    check_unit("sigma", sigma)?;
    if degrees.gamma < 2 {
        return Err(Error::Domain("closed form needs gamma >= 2 (log of 0)".into()));
    }
    let spread = (2f64.powi(degrees.gamma as i32 - 1) - 1.0).log2();
    Ok(h2(sigma) + sigma * spread - degrees.binomial_weight() + 1.0)
}

const MU_GRID: usize = 201;

/// Growth rate `h(sigma, eps)` of `B(sigma n, eps)`.
///
/// `g` is symmetric under `mu1 -> 1 - mu1`, so only `[(1-eps)/2, 1/2]` is
/// searched: a 201-point grid, then golden-section refinement around the
/// best grid point.
pub fn growth_h(sigma: f64, epsilon: f64, degrees: Degrees) -> Result<GrowthPoint> {
    check_unit("sigma", sigma)?;
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::Domain(format!("epsilon = {epsilon} outside [0, 1)")));
    }
    if epsilon == 0.0 {
        return growth_g(sigma, 0.5, degrees);
    }
    let lo = (1.0 - epsilon) / 2.0;
    let step = (0.5 - lo) / (MU_GRID - 1) as f64;
    let mut best = growth_g(sigma, lo, degrees)?;
    let mut best_i = 0;
    for i in 1..MU_GRID {
        let mu = if i == MU_GRID - 1 { 0.5 } else { lo + step * i as f64 };
        let g = growth_g(sigma, mu, degrees)?;
        if g.value > best.value {
            best = g;
            best_i = i;
        }
    }
    if best.value == f64::NEG_INFINITY {
        return Ok(best);
    }
    let a = (lo + step * best_i.saturating_sub(1) as f64).max(lo);
    let b = (lo + step * (best_i + 1) as f64).min(0.5);
    let eval = |mu: f64| growth_g(sigma, mu, degrees).map(|g| g.value).unwrap_or(f64::NEG_INFINITY);
    let mu = golden_section_max(eval, a, b, 1e-12);
    let refined = growth_g(sigma, mu, degrees)?;
    Ok(if refined.value > best.value { refined } else { best })
}

/// Maximiser of a unimodal `f` on `[a, b]`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// `1 - (1-mu1)^gamma - mu1^gamma`, the cutsize fraction that maximises
/// `g(., mu1)`.
pub fn sigma_plus(mu1: f64, gamma: usize) -> f64 {
    1.0 - (1.0 - mu1).powi(gamma as i32) - mu1.powi(gamma as i32)
}

/// `g(sigma_plus, mu1) = (gamma / delta) H2(mu1)`.
pub fn growth_at_sigma_plus(mu1: f64, degrees: Degrees) -> f64 {
    degrees.gamma as f64 / degrees.delta as f64 * h2(mu1)
}

/// `d g / d sigma` at an interior point, by the envelope theorem:
/// `log2((1-sigma)/sigma) + log2 p(u*) - log2 q(u*)`.
pub fn growth_g_slope(sigma: f64, mu1: f64, degrees: Degrees) -> Result<f64> {
    let inner = inner_infimum(sigma, mu1, degrees.gamma)?;
    let t = inner.u_star.ln();
    let (p, q) = (LogPoly::p(degrees.gamma), LogPoly::q(degrees.gamma));
    Ok(((1.0 - sigma) / sigma).log2() + (p.at(t).ln - q.at(t).ln) / LN_2)
}

/// Location of the maximum of the concave map `sigma -> g(sigma, mu1)`,
/// found by bisection on its slope.
pub fn argmax_sigma(mu1: f64, degrees: Degrees) -> Result<f64> {
    if degrees.gamma < 2 || !(mu1 > 0.0 && mu1 < 1.0) {
        return Err(Error::Domain(format!(
            "argmax needs gamma >= 2 and 0 < mu1 < 1 (gamma={}, mu1={mu1})",
            degrees.gamma
        )));
    }
    let edge = (degrees.gamma as f64 * mu1.min(1.0 - mu1)).min(1.0);
    let (mut lo, mut hi) = (edge * 1e-9, edge * (1.0 - 1e-9));
    if growth_g_slope(hi, mu1, degrees)? >= 0.0 {
        return Ok(hi);
    }
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if growth_g_slope(mid, mu1, degrees)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Grid and tolerance of the typical-minimum-cutsize search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSearch {
    pub grid_step: f64,
    pub tol: f64,
}

impl Default for RootSearch {
    fn default() -> Self {
        RootSearch {
            grid_step: 1e-3,
            tol: 1e-10,
        }
    }
}

/// Result of locating `inf { sigma > 0 : f(sigma) > 0 }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub sigma: f64,
    /// Last point with `f <= 0` and first point with `f > 0`.
    pub bracket: (f64, f64),
}

/// Scans `(0, upper]` on the grid for the first point where `f > 0`, then
/// bisects between it and its predecessor.
pub fn first_positive_crossing<F>(f: F, upper: f64, search: RootSearch) -> Result<Crossing>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(search.grid_step > 0.0 && search.tol > 0.0) {
        return Err(Error::Domain("grid step and tolerance must be positive".into()));
    }
    let steps = (upper / search.grid_step).ceil() as usize;
    let mut prev = 0.0;
    let mut dump = String::new();
    for i in 1..=steps {
        let sigma = if i == steps { upper } else { i as f64 * search.grid_step };
        let v = f(sigma)?;
        if i <= 3 || i + 3 > steps {
            let _ = write!(dump, " f({sigma:.4})={v:.3e}");
        }
        if v > 0.0 {
            let (mut lo, mut hi) = (prev, sigma);
            while hi - lo > search.tol {
                let mid = 0.5 * (lo + hi);
                if f(mid)? > 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(Crossing {
                sigma: 0.5 * (lo + hi),
                bracket: (lo, hi),
            });
        }
        prev = sigma;
    }
    Err(Error::NoConvergence(format!(
        "no sign change on (0, {upper}] with step {}:{dump}",
        search.grid_step
    )))
}

/// `beta*(eps) = inf { sigma > 0 : h(sigma, eps) > 0 }`, searched over
/// `(0, sigma_plus(1/2)]`.
pub fn beta_star(epsilon: f64, degrees: Degrees, search: RootSearch) -> Result<f64> {
    degrees.require_root_regime()?;
    let upper = sigma_plus(0.5, degrees.gamma);
    first_positive_crossing(|s| growth_h(s, epsilon, degrees).map(|g| g.value), upper, search)
        .map(|c| c.sigma)
}

/// `alpha*(mu1) = inf { sigma > 0 : g(sigma, mu1) > 0 }`, searched over
/// `(0, sigma_plus(mu1)]`.
pub fn alpha_star(mu1: f64, degrees: Degrees, search: RootSearch) -> Result<f64> {
    degrees.require_root_regime()?;
    if !(mu1 > 0.0 && mu1 < 1.0) {
        return Err(Error::Domain(format!("mu1 = {mu1} outside (0, 1)")));
    }
    let upper = sigma_plus(mu1, degrees.gamma);
    first_positive_crossing(|s| growth_g(s, mu1, degrees).map(|g| g.value), upper, search)
        .map(|c| c.sigma)
}

/// Design rate against typical minimum cutsize for one ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerdictRow {
    pub gamma: usize,
    pub delta: usize,
    pub epsilon: f64,
    pub design_rate: f64,
    pub beta_star: f64,
    pub satisfied: bool,
    pub margin: f64,
}

impl VerdictRow {
    pub const CSV_HEADER: &'static str = "gamma,delta,design_rate,beta_star,satisfied,margin";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.gamma,
            self.delta,
            fmt_sig10(self.design_rate),
            fmt_sig10(self.beta_star),
            self.satisfied,
            fmt_sig10(self.margin)
        )
    }
}

/// Two-way block-diagonal encodability is typical only if the design rate
/// `1 - gamma/delta` is at least `beta*(eps)`.
pub fn verdict(degrees: Degrees, epsilon: f64, search: RootSearch) -> Result<VerdictRow> {
    let beta = beta_star(epsilon, degrees, search)?;
    let design_rate = degrees.design_rate();
    let margin = design_rate - beta;
    Ok(VerdictRow {
        gamma: degrees.gamma,
        delta: degrees.delta,
        epsilon,
        design_rate,
        beta_star: beta,
        satisfied: margin >= 0.0,
        margin,
    })
}

/// `0, step, 2 step, ..., 1` (the last point is exactly 1).
pub fn sigma_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::Domain(format!("grid step {step} must lie in (0, 1]")));
    }
    let count = (1.0 / step - 1e-9).ceil() as usize;
    let mut grid: Vec<f64> = (0..count).map(|i| i as f64 * step).collect();
    grid.push(1.0);
    Ok(grid)
}

/// `h(sigma, eps)` on the given grid.
pub fn curve(degrees: Degrees, epsilon: f64, grid: &[f64]) -> Result<Vec<GrowthPoint>> {
    grid.par_iter()
        .map(|&s| growth_h(s, epsilon, degrees))
        .collect()
}

/// `sigma,h` with 10 significant digits.
pub fn curve_csv(points: &[GrowthPoint]) -> String {
    let mut out = String::from("sigma,h\n");
    for p in points {
        let _ = writeln!(out, "{},{}", fmt_sig10(p.sigma), fmt_sig10(p.value));
    }
    out
}

/// Formats with 10 significant digits; infinities as `-inf`/`inf`.
pub fn fmt_sig10(x: f64) -> String {
    if x.is_infinite() {
        return if x < 0.0 { "-inf".into() } else { "inf".into() };
    }
    if x == 0.0 || x.is_nan() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..10).contains(&mag) {
        let decimals = (9 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" { "0".into() } else { s }
    } else {
        format!("{x:.9e}")
    }
}
