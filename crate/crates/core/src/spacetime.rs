//! Static spherically symmetric metrics
//! `ds² = -e^{2A(z)} dt² + e^{2B(z)} dz² + z² dΩ²` in units `c = r_s = 1`,
//! their static tetrads and horizons, and the Schwarzschild ↔ Kruskal maps.

use std::fmt;

use nalgebra::{Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::numeric::bisect;

/// `e^{2A}` below this counts as "on a horizon".
pub const HORIZON_TOL: f64 = 1e-9;

/// Metric potentials and their radial derivatives at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Potentials {
    pub a: f64,
    pub b: f64,
    pub da: f64,
    pub db: f64,
}

/// A static spherically symmetric metric, given by its potentials `A`, `B`
/// and their analytic derivatives.
pub trait MetricModel: Send + Sync {
    fn a(&self, z: f64) -> f64;
    fn b(&self, z: f64) -> f64;
    fn da(&self, z: f64) -> f64;
    fn db(&self, z: f64) -> f64;
    fn description(&self) -> String;

    /// `e^{2A(z)}`, the squared lapse.
    fn lapse_squared(&self, z: f64) -> f64 {
        (2.0 * self.a(z)).exp()
    }

    /// Known horizon radii in ascending order.
    fn horizons(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// Evaluates the potentials, rejecting points on or inside a horizon.
pub fn metric_potentials(model: &dyn MetricModel, z: f64) -> Result<Potentials> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("radius must be positive and finite, got {z}")));
    }
    let lapse_squared = model.lapse_squared(z);
    if !(lapse_squared >= HORIZON_TOL) {
        return Err(Error::Horizon { z, lapse_squared });
    }
    Ok(Potentials {
        a: model.a(z),
        b: model.b(z),
        da: model.da(z),
        db: model.db(z),
    })
}

/// Reissner–Nordström-type hole: `e^{2A} = e^{-2B} = 1 - 1/z + ξ²/z²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargedBlackHole {
    xi2: f64,
}

impl ChargedBlackHole {
    pub fn new(xi2: f64) -> Result<Self> {
        if !(xi2 >= 0.0) || !xi2.is_finite() {
            return Err(Error::domain(format!("charge parameter ξ² must be finite and ≥ 0, got {xi2}")));
        }
        Ok(Self { xi2 })
    }

    pub fn schwarzschild() -> Self {
        Self { xi2: 0.0 }
    }

    pub fn xi2(&self) -> f64 {
        self.xi2
    }

    fn lapse_derivative(&self, z: f64) -> f64 {
        1.0 / (z * z) - 2.0 * self.xi2 / (z * z * z)
    }
}

impl MetricModel for ChargedBlackHole {
    fn a(&self, z: f64) -> f64 {
        0.5 * self.lapse_squared(z).ln()
    }

    fn b(&self, z: f64) -> f64 {
        -self.a(z)
    }

    fn da(&self, z: f64) -> f64 {
        0.5 * self.lapse_derivative(z) / self.lapse_squared(z)
    }

    fn db(&self, z: f64) -> f64 {
        -self.da(z)
    }

    fn description(&self) -> String {
        format!("charged black hole, xi2 = {}", self.xi2)
    }

    fn lapse_squared(&self, z: f64) -> f64 {
        1.0 - 1.0 / z + self.xi2 / (z * z)
    }

    fn horizons(&self) -> Vec<f64> {
        horizons(self.xi2)
    }
}

type Potential = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A metric built from user supplied potentials and analytic derivatives.
pub struct CustomMetric {
    description: String,
    a: Potential,
    b: Potential,
    da: Potential,
    db: Potential,
    horizons: Vec<f64>,
}

impl CustomMetric {
    pub fn new<A, B, DA, DB>(description: impl Into<String>, a: A, b: B, da: DA, db: DB) -> Self
    where
        A: Fn(f64) -> f64 + Send + Sync + 'static,
        B: Fn(f64) -> f64 + Send + Sync + 'static,
        DA: Fn(f64) -> f64 + Send + Sync + 'static,
        DB: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            description: description.into(),
            a: Box::new(a),
            b: Box::new(b),
            da: Box::new(da),
            db: Box::new(db),
            horizons: Vec::new(),
        }
    }

    pub fn with_horizons(mut self, mut horizons: Vec<f64>) -> Self {
        horizons.sort_by(|a, b| a.total_cmp(b));
        self.horizons = horizons;
        self
    }
}

impl fmt::Debug for CustomMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomMetric")
            .field("description", &self.description)
            .field("horizons", &self.horizons)
            .finish_non_exhaustive()
    }
}

impl MetricModel for CustomMetric {
    fn a(&self, z: f64) -> f64 {
        (self.a)(z)
    }
    fn b(&self, z: f64) -> f64 {
        (self.b)(z)
    }
    fn da(&self, z: f64) -> f64 {
        (self.da)(z)
    }
    fn db(&self, z: f64) -> f64 {
        (self.db)(z)
    }
    fn description(&self) -> String {
        self.description.clone()
    }
    fn horizons(&self) -> Vec<f64> {
        self.horizons.clone()
    }
}

/// Real roots of `z² - z + ξ² = 0`, ascending.
pub fn horizons(xi2: f64) -> Vec<f64> {
    let disc = 1.0 - 4.0 * xi2;
    if disc > 0.0 {
        let s = disc.sqrt();
        vec![(1.0 - s) / 2.0, (1.0 + s) / 2.0]
    } else if disc == 0.0 {
        vec![0.5]
    } else {
        Vec::new()
    }
}

/// The outermost horizon, if any.
pub fn outer_horizon(xi2: f64) -> Option<f64> {
    horizons(xi2).last().copied()
}

/// Diagonal tetrad `e_a^μ` for `a = 0..3` paired with `μ = (t, r, θ, φ)`
/// (or `(T, R, θ, φ)` for the Kruskal frame).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tetrad {
    pub e0: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
}

impl Tetrad {
    pub fn components(&self) -> [f64; 4] {
        [self.e0, self.e1, self.e2, self.e3]
    }

    /// Largest deviation of `e_a^μ e_b^ν g_μν` from `η = diag(-1, 1, 1, 1)`
    /// for a diagonal metric `g`.
    pub fn eta_residual(&self, metric_diag: [f64; 4]) -> f64 {
        const ETA: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];
        self.components()
            .iter()
            .zip(metric_diag)
            .zip(ETA)
            .map(|((e, g), eta)| (e * e * g - eta).abs())
            .fold(0.0, f64::max)
    }
}

fn check_polar(theta: f64) -> Result<f64> {
    let s = theta.sin();
    if s.abs() < 1e-12 {
        return Err(Error::domain(format!("sin θ vanishes at θ = {theta}")));
    }
    Ok(s)
}

/// Static observer's tetrad `(e^{-A}, e^{-B}, 1/z, 1/(z sin θ))`.
pub fn tetrad_static(model: &dyn MetricModel, z: f64, theta: f64) -> Result<Tetrad> {
    let pot = metric_potentials(model, z)?;
    let s = check_polar(theta)?;
    Ok(Tetrad {
        e0: (-pot.a).exp(),
        e1: (-pot.b).exp(),
        e2: 1.0 / z,
        e3: 1.0 / (z * s),
    })
}

/// Diagonal of `g_μν` for the static metric at `(z, θ)`.
pub fn static_metric_diag(model: &dyn MetricModel, z: f64, theta: f64) -> Result<[f64; 4]> {
    let pot = metric_potentials(model, z)?;
    let s = theta.sin();
    Ok([-(2.0 * pot.a).exp(), (2.0 * pot.b).exp(), z * z, z * z * s * s])
}

/// A point in Kruskal coordinates together with its areal radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KruskalPoint {
    /// Kruskal time `T`.
    pub t: f64,
    /// Kruskal radius `R`.
    pub r_k: f64,
    /// Areal radius.
    pub r: f64,
}

impl KruskalPoint {
    /// Residual of `R² - T² = 4 (r - 1) e^r`.
    pub fn defining_residual(&self) -> f64 {
        (self.r_k * self.r_k - self.t * self.t) - kruskal_invariant(self.r)
    }
}

/// `4 (r - 1) e^r`, monotone increasing for `r > 0`.
fn kruskal_invariant(r: f64) -> f64 {
    4.0 * (r - 1.0) * r.exp()
}

/// Schwarzschild `(r, t)` to Kruskal `(T, R)`.
///
/// Outside the horizon `T/R = tanh(t/2)`; inside, the roles of `T` and `R`
/// swap so that `R/T = tanh(t/2)`.
pub fn kruskal_map(r: f64, t: f64) -> Result<KruskalPoint> {
    if !(r > 0.0) || !r.is_finite() || !t.is_finite() {
        return Err(Error::domain(format!("Kruskal map needs r > 0 and finite t, got r = {r}, t = {t}")));
    }
    let amp = 2.0 * (r - 1.0).abs().sqrt() * (0.5 * r).exp();
    let (ch, sh) = ((0.5 * t).cosh(), (0.5 * t).sinh());
    let (tk, rk) = if r >= 1.0 { (amp * sh, amp * ch) } else { (amp * ch, amp * sh) };
    Ok(KruskalPoint { t: tk, r_k: rk, r })
}

/// Areal radius for Kruskal `(T, R)`, solving `4 (r - 1) e^r = R² - T²`.
pub fn r_of(t: f64, r_k: f64) -> Result<f64> {
    let target = r_k * r_k - t * t;
    if !target.is_finite() {
        return Err(Error::domain("non-finite Kruskal coordinates"));
    }
    if target <= -4.0 {
        return Err(Error::domain(format!(
            "R² - T² = {target} lies on or beyond the r = 0 singularity"
        )));
    }
    let mut hi = 2.0;
    while kruskal_invariant(hi) < target {
        hi *= 2.0;
    }
    let r = bisect(|r| kruskal_invariant(r) - target, 0.0, hi, 0.0)?;
    Ok(r)
}

impl KruskalPoint {
    pub fn from_kruskal(t: f64, r_k: f64) -> Result<Self> {
        Ok(Self { t, r_k, r: r_of(t, r_k)? })
    }
}

/// The local Lorentz transformation taking the static Schwarzschild tetrad
/// to the Kruskal tetrad at an exterior point. A boost along the 1-axis.
pub fn frame_transform_matrix(p: &KruskalPoint) -> Result<Matrix4<f64>> {
    if !(p.r > 1.0) {
        return Err(Error::Horizon {
            z: p.r,
            lapse_squared: 1.0 - 1.0 / p.r,
        });
    }
    let k = 0.5 * ((-p.r).exp() / (p.r - 1.0)).sqrt();
    let (diag, off) = (k * p.r_k, -k * p.t);
    let mut m = Matrix4::identity();
    m[(0, 0)] = diag;
    m[(1, 1)] = diag;
    m[(0, 1)] = off;
    m[(1, 0)] = off;
    Ok(m)
}

/// Kruskal-frame tetrad `(√r e^{r/2}, √r e^{r/2}, 1/r, 1/(r sin θ))`,
/// regular across the horizon.
pub fn kruskal_tetrad(r: f64, theta: f64) -> Result<Tetrad> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("Kruskal tetrad needs r > 0, got {r}")));
    }
    let s = check_polar(theta)?;
    let radial = r.sqrt() * (0.5 * r).exp();
    Ok(Tetrad {
        e0: radial,
        e1: radial,
        e2: 1.0 / r,
        e3: 1.0 / (r * s),
    })
}

/// Diagonal of the Kruskal-form Schwarzschild metric at areal radius `r`.
pub fn kruskal_metric_diag(r: f64, theta: f64) -> [f64; 4] {
    let conformal = (-r).exp() / r;
    let s = theta.sin();
    [-conformal, conformal, r * r, r * r * s * s]
}

/// The `(t, r)` legs of the static Schwarzschild tetrad pushed forward to
/// Kruskal components. Row `a` is leg `e_a`, columns are `(T, R)`.
pub fn static_tetrad_in_kruskal(r: f64, t: f64) -> Result<Matrix2<f64>> {
    if !(r > 1.0) {
        return Err(Error::Horizon {
            z: r,
            lapse_squared: 1.0 - 1.0 / r,
        });
    }
    let p = kruskal_map(r, t)?;
    // ∂(T, R)/∂t = (R, T)/2 and ∂(T, R)/∂r = (T, R) r / (2 (r - 1)).
    let lapse = (1.0 - 1.0 / r).sqrt();
    let radial_scale = r / (2.0 * (r - 1.0));
    Ok(Matrix2::new(
        0.5 * p.r_k / lapse,
        0.5 * p.t / lapse,
        lapse * radial_scale * p.t,
        lapse * radial_scale * p.r_k,
    ))
}
