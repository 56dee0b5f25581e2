//! Expectations under the standard Gaussian weight `exp(-u^2) / sqrt(pi)`.
//!
//! The primary rule is Gauss–Hermite with node doubling. Integrands that
//! oscillate faster than the largest Hermite rule can resolve (large Wigner
//! angles near a horizon, or large centroid momenta) fall back to composite
//! Gauss–Legendre on the truncated support `[-support, support]`, bisecting
//! panels until each meets its share of the absolute tolerance.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nodes and weights of a Gauss rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Environment variable overriding the Hermite node cap.
pub const NODE_CAP_ENV: &str = "GRAVENT_QUAD_NODES";

/// Convergence settings for [`gaussian_expectation`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadConfig {
    /// Hermite node count of the first estimate.
    pub min_nodes: usize,
    /// Cap on the Hermite node count.
    pub max_nodes: usize,
    /// Successive estimates closer than this are accepted.
    pub tol: f64,
    /// Unconverged results with a residual above this are errors.
    pub fail_tol: f64,
    /// Enable the composite Gauss–Legendre fallback.
    pub fallback: bool,
    /// Cap on the number of Legendre panel evaluations.
    pub max_panels: usize,
    /// Half-width of the truncated support in standardised units.
    pub support: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            min_nodes: 64,
            max_nodes: 2048,
            tol: 1e-10,
            fail_tol: 1e-6,
            fallback: true,
            max_panels: 1 << 16,
            support: 12.0,
        }
    }
}

impl QuadConfig {
    pub fn with_max_nodes(mut self, max_nodes: usize) -> Self {
        self.max_nodes = max_nodes.max(self.min_nodes);
        self
    }

    /// Reads the Hermite node cap from `GRAVENT_QUAD_NODES`, if set.
    /// Default settings with the Hermite rule capped at `n` nodes.
    pub fn with_node_cap(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("quadrature node cap must be at least 2, got {n}")));
        }
        let mut cfg = Self::default();
        cfg.min_nodes = cfg.min_nodes.min(n);
        Ok(cfg.with_max_nodes(n))
    }

    /// Default settings, with the node cap taken from `GRAVENT_QUAD_NODES`
    /// when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(NODE_CAP_ENV) {
            Ok(raw) => {
                let n: usize = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::domain(format!("{NODE_CAP_ENV} must be a positive integer, got {raw:?}")))?;
                Self::with_node_cap(n)
            }
            Err(_) => Ok(Self::default()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadMethod {
    GaussHermite,
    CompositeLegendre,
}

/// What the quadrature achieved.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadReport {
    pub method: QuadMethod,
    /// Points in the accepted estimate (nodes, or panels times panel order).
    pub points: usize,
    /// Difference between the last two estimates.
    pub residual: f64,
    pub converged: bool,
}

/// Eigenvalues of a symmetric tridiagonal matrix (implicit QL).
///
/// `diag` is overwritten with the eigenvalues; `off[i]` couples rows `i` and
/// `i + 1` and is destroyed.
fn tridiagonal_eigenvalues(diag: &mut [f64], off: &mut [f64]) -> Result<()> {
    let n = diag.len();
    if n == 0 {
        return Ok(());
    }
    off[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                return Err(Error::Numerical("tridiagonal QL failed to converge".into()));
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

/// Orthonormal Hermite recurrence at `x`: returns `(psi_n, psi_{n-1}, ln_scale)`
/// where the true values are the returned ones times `exp(ln_scale)`.
fn hermite_orthonormal(n: usize, x: f64) -> (f64, f64, f64) {
    const BIG: f64 = 1e150;
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    let mut ln_scale = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let next = x * (2.0 / jf).sqrt() * cur - ((jf - 1.0) / jf).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > BIG {
            cur /= BIG;
            prev /= BIG;
            ln_scale += BIG.ln();
        }
    }
    (cur, prev, ln_scale)
}

fn compute_hermite_rule(n: usize) -> Result<Rule> {
    if n == 0 {
        return Err(Error::domain("Gauss-Hermite rule needs at least one node"));
    }
    // Golub-Welsch: eigenvalues of the Jacobi matrix seed Newton polishing.
    let mut diag = vec![0.0; n];
    let mut off: Vec<f64> = (1..=n).map(|i| (i as f64 / 2.0).sqrt()).collect();
    tridiagonal_eigenvalues(&mut diag, &mut off)?;
    diag.sort_by(|a, b| a.total_cmp(b));

    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &seed in &diag {
        let mut x = seed;
        for _ in 0..8 {
            let (p, q, _) = hermite_orthonormal(n, x);
            let dx = p / ((2.0 * nf).sqrt() * q);
            x -= dx;
            if dx.abs() <= 1e-15 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, q, ln_scale) = hermite_orthonormal(n, x);
        let ln_dpsi = ((2.0 * nf).sqrt() * q).abs().ln() + ln_scale;
        nodes.push(x);
        weights.push((2f64.ln() - 2.0 * ln_dpsi).exp());
    }
    // Enforce exact symmetry.
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(Rule { nodes, weights })
}

/// Gauss–Hermite rule for `∫ exp(-x^2) f(x) dx`, cached per node count.
pub fn hermite_rule(n: usize) -> Result<Arc<Rule>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Rule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().expect("rule cache poisoned").get(&n) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(compute_hermite_rule(n)?);
    let mut guard = cache.lock().expect("rule cache poisoned");
    Ok(Arc::clone(guard.entry(n).or_insert(rule)))
}

fn compute_legendre_rule(n: usize) -> Rule {
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

/// Panel order of the composite Legendre fallback.
pub const LEGENDRE_ORDER: usize = 20;

/// Gauss–Legendre rule of order [`LEGENDRE_ORDER`] on `[-1, 1]`.
pub fn legendre_rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| compute_legendre_rule(LEGENDRE_ORDER))
}

fn max_abs_diff<const K: usize>(a: &[f64; K], b: &[f64; K]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn hermite_estimate<const K: usize, F>(f: &F, rule: &Rule) -> [f64; K]
where
    F: Fn(f64) -> [f64; K],
{
    let norm = PI.sqrt().recip();
    let mut acc = [0.0; K];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        if w == 0.0 {
            continue;
        }
        let v = f(x);
        for k in 0..K {
            acc[k] += w * v[k];
        }
    }
    acc.map(|a| a * norm)
}

fn legendre_panel<const K: usize, F>(f: &F, a: f64, b: f64) -> [f64; K]
where
    F: Fn(f64) -> [f64; K],
{
    let rule = legendre_rule();
    let half = 0.5 * (b - a);
    let centre = 0.5 * (a + b);
    let mut acc = [0.0; K];
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let u = centre + half * t;
        let weight = w * (-u * u).exp();
        let v = f(u);
        for k in 0..K {
            acc[k] += weight * v[k];
        }
    }
    acc.map(|a| a * half * PI.sqrt().recip())
}

const INITIAL_PANELS: usize = 32;

/// Adaptive composite Gauss–Legendre. Returns the estimate, the summed
/// error estimate and the number of panel evaluations.
fn adaptive_legendre<const K: usize, F>(f: &F, cfg: &QuadConfig) -> ([f64; K], f64, usize)
where
    F: Fn(f64) -> [f64; K],
{
    let span = 2.0 * cfg.support;
    let width = span / INITIAL_PANELS as f64;
    let mut stack: Vec<(f64, f64, [f64; K])> = (0..INITIAL_PANELS)
        .rev()
        .map(|i| {
            let a = -cfg.support + i as f64 * width;
            let b = if i + 1 == INITIAL_PANELS { cfg.support } else { a + width };
            (a, b, legendre_panel(f, a, b))
        })
        .collect();
    let mut used = INITIAL_PANELS;
    let mut total = [0.0; K];
    let mut residual = 0.0;
    while let Some((a, b, coarse)) = stack.pop() {
        let mid = 0.5 * (a + b);
        let left = legendre_panel(f, a, mid);
        let right = legendre_panel(f, mid, b);
        used += 2;
        let fine: [f64; K] = std::array::from_fn(|k| left[k] + right[k]);
        let err = max_abs_diff(&fine, &coarse);
        let budget = cfg.tol * (b - a) / span;
        if err <= budget || used + 2 > cfg.max_panels || mid <= a || mid >= b {
            for k in 0..K {
                total[k] += fine[k];
            }
            residual += err;
        } else {
            stack.push((mid, b, right));
            stack.push((a, mid, left));
        }
    }
    (total, residual, used)
}

/// Computes `E[f(u)]` for `u` with density `exp(-u^2)/sqrt(pi)`.
///
/// `f` returns `K` components; convergence is judged on the largest
/// component change between successive refinements.
pub fn gaussian_expectation<const K: usize, F>(f: F, cfg: &QuadConfig) -> Result<([f64; K], QuadReport)>
where
    F: Fn(f64) -> [f64; K],
{
    if cfg.min_nodes == 0 || cfg.max_nodes < cfg.min_nodes {
        return Err(Error::domain("quadrature node range is empty"));
    }
    let mut evaluations = 0usize;
    let mut best: Option<([f64; K], QuadReport)> = None;
    let mut consider = |value: [f64; K], report: QuadReport| {
        if best.as_ref().is_none_or(|(_, b)| report.residual < b.residual) {
            best = Some((value, report));
        }
    };

    let mut n = cfg.min_nodes;
    let mut prev: Option<[f64; K]> = None;
    loop {
        let rule = hermite_rule(n)?;
        let est = hermite_estimate(&f, &rule);
        evaluations += n;
        if !est.iter().all(|v| v.is_finite()) {
            return Err(Error::Numerical("non-finite integrand".into()));
        }
        if let Some(p) = prev {
            let residual = max_abs_diff(&est, &p);
            let report = QuadReport {
                method: QuadMethod::GaussHermite,
                points: n,
                residual,
                converged: residual < cfg.tol,
            };
            if report.converged {
                return Ok((est, report));
            }
            consider(est, report);
        }
        if n * 2 > cfg.max_nodes {
            break;
        }
        prev = Some(est);
        n *= 2;
    }

    if cfg.fallback {
        let (est, residual, panels) = adaptive_legendre(&f, cfg);
        evaluations += panels * LEGENDRE_ORDER;
        if !est.iter().all(|v| v.is_finite()) {
            return Err(Error::Numerical("non-finite integrand".into()));
        }
        let report = QuadReport {
            method: QuadMethod::CompositeLegendre,
            points: panels * LEGENDRE_ORDER,
            residual,
            converged: residual < cfg.tol,
        };
        if report.converged {
            return Ok((est, report));
        }
        consider(est, report);
    }

    match best {
        Some((value, report)) if report.residual <= cfg.fail_tol => Ok((value, report)),
        Some((_, report)) => Err(Error::Convergence {
            residual: report.residual,
            evaluations,
        }),
        None => Err(Error::Convergence {
            residual: f64::INFINITY,
            evaluations,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_weights_sum_to_sqrt_pi() {
        for n in [1, 2, 7, 64, 257, 2048] {
            let rule = hermite_rule(n).unwrap();
            let sum: f64 = rule.weights.iter().sum();
            assert!((sum - PI.sqrt()).abs() < 1e-12, "n = {n}: {sum}");
        }
    }

    #[test]
    fn hermite_small_rules_match_closed_form() {
        let r2 = hermite_rule(2).unwrap();
        assert!((r2.nodes[1] - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((r2.weights[0] - PI.sqrt() / 2.0).abs() < 1e-15);
        let r3 = hermite_rule(3).unwrap();
        assert!((r3.nodes[2] - 1.5f64.sqrt()).abs() < 1e-15);
        assert!((r3.weights[1] - 2.0 * PI.sqrt() / 3.0).abs() < 1e-14);
    }

    #[test]
    fn hermite_integrates_even_moments() {
        // E[u^{2k}] = (2k-1)!! / 2^k under exp(-u^2)/sqrt(pi).
        let (m, _) = gaussian_expectation(|u| [u * u, u.powi(4), u.powi(6), u], &QuadConfig::default()).unwrap();
        assert!((m[0] - 0.5).abs() < 1e-14);
        assert!((m[1] - 0.75).abs() < 1e-14);
        assert!((m[2] - 1.875).abs() < 1e-13);
        assert!(m[3].abs() < 1e-15);
    }

    #[test]
    fn large_rule_nodes_are_roots() {
        let rule = hermite_rule(1024).unwrap();
        assert!(rule.nodes.windows(2).all(|w| w[1] > w[0]));
        let x = rule.nodes[700];
        let (p, q, _) = hermite_orthonormal(1024, x);
        assert!((p / q).abs() < 1e-12);
    }

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let rule = legendre_rule();
        let s: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.powi(38)).sum();
        assert!((s - 2.0 / 39.0).abs() < 1e-14);
    }

    #[test]
    fn fallback_handles_fast_oscillation() {
        // E[cos(a u^2)] = Re (1 - i a)^(-1/2); the phase outruns any Hermite rule.
        let a = 500.0;
        let (m, report) = gaussian_expectation(|u| [(a * u * u).cos()], &QuadConfig::default()).unwrap();
        let exact = num_complex::Complex64::new(1.0, -a).powf(-0.5).re;
        assert_eq!(report.method, QuadMethod::CompositeLegendre);
        assert!(report.converged);
        assert!((m[0] - exact).abs() < 1e-9, "{} vs {exact}", m[0]);
    }

    #[test]
    fn convergence_error_without_fallback() {
        let cfg = QuadConfig {
            fallback: false,
            max_nodes: 128,
            ..QuadConfig::default()
        };
        let err = gaussian_expectation(|u| [(300.0 * u).cos()], &cfg).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }));
    }
}
