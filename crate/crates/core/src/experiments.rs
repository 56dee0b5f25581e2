//! Parameter sweeps of the circular-orbit experiment, curve feature finders,
//! the radial-geodesic invariance check and the static/Kruskal comparison.

use serde::{Deserialize, Serialize};

use crate::entanglement::{
    entanglement_of_formation, reduced_density_bruteforce, reduced_state, wootters_concurrence, BellState,
    MomentumDistribution,
};
use crate::error::{Error, Result};
use crate::numeric::{golden_section_min, linspace};
use crate::quadrature::QuadConfig;
use crate::spacetime::{self, ChargedBlackHole};
use crate::wigner::{
    self, angle_about_2_axis, kruskal_rate, lambda_radial, momentum_factor, orbit_profile, product_integral,
    rotation_part, schwarzschild_rate, OrbitParams, WignerRate,
};

/// Gap kept between a swept radius and the outer horizon (or `z = 0`).
pub const Z_CLAMP_MARGIN: f64 = 1e-3;
/// Rows this close to a horizon may take the stationary-phase limit.
pub const STATIONARY_PHASE_WINDOW: f64 = 1e-3;
/// Minimum depth below both neighbouring peaks for a reported extremum.
pub const MIN_PROMINENCE: f64 = 1e-3;
/// Width of the golden-section bracket at which a minimum is accepted.
pub const MINIMUM_XTOL: f64 = 1e-4;

pub mod flags {
    pub const HORIZON: &str = "horizon";
    pub const NO_CONVERGENCE: &str = "no-convergence";
    pub const UNCONVERGED: &str = "unconverged";
    pub const STATIONARY_PHASE: &str = "stationary-phase";
    pub const CLOSED_FORM_MISMATCH: &str = "closed-form-mismatch";
    pub const STATIC_DIVERGENT: &str = "static-divergent";
    pub const STATIC_ZERO: &str = "static-zero";
    pub const KRUSKAL_UNDEFINED: &str = "kruskal-undefined";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    Q,
    TauRatio,
    Z,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::Q => "q",
            SweepVariable::TauRatio => "tau_ratio",
            SweepVariable::Z => "z",
        }
    }

    fn apply(self, base: &OrbitParams, x: f64) -> OrbitParams {
        let mut p = *base;
        match self {
            SweepVariable::Q => p.q = x,
            SweepVariable::TauRatio => p.tau_ratio = x,
            SweepVariable::Z => p.z = x,
        }
        p
    }
}

impl std::str::FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(SweepVariable::Q),
            "tau" | "tau_ratio" => Ok(SweepVariable::TauRatio),
            "z" => Ok(SweepVariable::Z),
            other => Err(Error::domain(format!("unknown sweep variable {other:?} (expected q, tau_ratio or z)"))),
        }
    }
}

/// A one-dimensional sweep over `variable ∈ [lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub lo: f64,
    pub hi: f64,
    pub samples: usize,
    /// Values of the non-swept parameters; the swept field is ignored.
    pub fixed: OrbitParams,
    pub bell: BellState,
    #[serde(default)]
    pub quad: QuadConfig,
    /// Report `E = 0` next to horizons and where quadrature fails.
    #[serde(default)]
    pub stationary_phase: bool,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl SweepSpec {
    /// Validates the sweep and clamps a radial sweep to start outside the
    /// outer horizon (or away from `z = 0`), recording a note when it does.
    pub fn normalized(mut self) -> Result<Self> {
        if !self.lo.is_finite() || !self.hi.is_finite() || !(self.lo < self.hi) {
            return Err(Error::domain(format!("sweep range must satisfy lo < hi, got [{}, {}]", self.lo, self.hi)));
        }
        if self.samples < 2 {
            return Err(Error::domain(format!("a sweep needs at least 2 samples, got {}", self.samples)));
        }
        if self.variable == SweepVariable::Z {
            let floor = spacetime::outer_horizon(self.fixed.xi2).unwrap_or(0.0) + Z_CLAMP_MARGIN;
            if self.lo < floor {
                if self.hi <= floor {
                    return Err(Error::domain(format!(
                        "radial sweep [{}, {}] lies entirely inside z ≤ {floor}",
                        self.lo, self.hi
                    )));
                }
                self.notes.push(match spacetime::outer_horizon(self.fixed.xi2) {
                    Some(h) => format!("lo clamped from {} to outer horizon z+ = {h} plus {Z_CLAMP_MARGIN}", self.lo),
                    None => format!("lo clamped from {} to z = {Z_CLAMP_MARGIN} (no horizon)", self.lo),
                });
                self.lo = floor;
            }
        }
        let probe = self.variable.apply(&self.fixed, self.lo);
        match probe.validate() {
            Ok(()) | Err(Error::Horizon { .. }) => {}
            Err(e) => return Err(e),
        }
        if self.variable == SweepVariable::TauRatio && self.lo < 0.0 {
            return Err(Error::domain("tau_ratio sweep must start at ≥ 0"));
        }
        self.fixed = probe;
        Ok(self)
    }

    pub fn grid(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.samples)
    }
}

/// One sample of a sweep. Missing values are NaN and explained by `flags`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub x: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "S")]
    pub s: f64,
    pub concurrence: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub flags: Vec<String>,
}

impl SweepRow {
    pub fn is_valid(&self) -> bool {
        self.e.is_finite()
    }

    fn missing(x: f64, flags: Vec<String>) -> Self {
        Self {
            x,
            c: f64::NAN,
            s: f64::NAN,
            concurrence: f64::NAN,
            e: f64::NAN,
            flags,
        }
    }

    fn stationary_phase(x: f64, mut flags: Vec<String>) -> Self {
        flags.push(flags::STATIONARY_PHASE.into());
        Self {
            x,
            c: 0.0,
            s: 0.0,
            concurrence: 0.0,
            e: 0.0,
            flags,
        }
    }
}

fn near_singularity(xi2: f64, z: f64) -> bool {
    spacetime::horizons(xi2)
        .into_iter()
        .chain(std::iter::once(0.0))
        .any(|h| (z - h).abs() <= STATIONARY_PHASE_WINDOW * (1.0 + 1e-9))
}

/// Evaluates the pipeline `Θ → (𝒞, 𝒮) → ϱ → C → E` at one sweep value.
pub fn evaluate_point(spec: &SweepSpec, x: f64) -> SweepRow {
    let params = spec.variable.apply(&spec.fixed, x);
    let mut row_flags = Vec::new();
    let near = near_singularity(params.xi2, params.z);

    let prefactor = match params.validate().and_then(|_| orbit_profile(params.xi2, params.z)) {
        Ok(profile) => 2.0 * std::f64::consts::PI * params.tau_ratio * profile,
        Err(err) => {
            row_flags.push(match err {
                Error::Horizon { .. } => flags::HORIZON.to_string(),
                other => other.kind().to_string(),
            });
            return if spec.stationary_phase {
                SweepRow::stationary_phase(x, row_flags)
            } else {
                SweepRow::missing(x, row_flags)
            };
        }
    };
    if spec.stationary_phase && near {
        return SweepRow::stationary_phase(x, row_flags);
    }

    let q = params.q;
    let theta = move |p: f64| prefactor * momentum_factor(q, p);
    let dist = match MomentumDistribution::new(params.q, params.beta) {
        Ok(d) => d,
        Err(err) => return SweepRow::missing(x, vec![err.kind().to_string()]),
    };
    let state = match reduced_state(spec.bell, theta, &dist, &spec.quad) {
        Ok(st) => st,
        Err(err) => {
            row_flags.push(match err {
                Error::Convergence { .. } => flags::NO_CONVERGENCE.to_string(),
                other => other.kind().to_string(),
            });
            return if spec.stationary_phase {
                SweepRow::stationary_phase(x, row_flags)
            } else {
                SweepRow::missing(x, row_flags)
            };
        }
    };
    if !state.consistent {
        row_flags.push(flags::CLOSED_FORM_MISMATCH.into());
    }
    if state.moments.report.is_some_and(|r| !r.converged) {
        row_flags.push(flags::UNCONVERGED.into());
    }
    let result = wootters_concurrence(&state.density).and_then(|c| Ok((c, entanglement_of_formation(c)?)));
    match result {
        Ok((concurrence, e)) => SweepRow {
            x,
            c: state.moments.c,
            s: state.moments.s,
            concurrence,
            e,
            flags: row_flags,
        },
        Err(err) => {
            row_flags.push(err.kind().to_string());
            SweepRow::missing(x, row_flags)
        }
    }
}

/// Runs a sweep. Rows come back in ascending `x`; the result does not depend
/// on how rows were scheduled.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let spec = spec.clone().normalized()?;
    let grid = spec.grid();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok(grid.par_iter().map(|&x| evaluate_point(&spec, x)).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(grid.iter().map(|&x| evaluate_point(&spec, x)).collect())
    }
}

/// The sweeps behind the six published curves.
///
/// Ranges the curves show without stating are artifact defaults: `q ∈ [0, 20]`,
/// `τ/τ_s ∈ [0, 30]`, `z ∈ [clamp, 6]`, 400 samples each.
pub fn figure_preset(n: u8) -> Result<SweepSpec> {
    const SAMPLES: usize = 400;
    let fig1 = OrbitParams {
        xi2: 0.265,
        z: 1.6,
        q: 0.0,
        beta: 1.0,
        tau_ratio: 5.0,
    };
    let fig4 = OrbitParams {
        xi2: 0.16,
        z: 0.0,
        q: 0.6,
        beta: 1.0,
        tau_ratio: 5.0,
    };
    let spec = |variable, lo, hi, fixed, notes: &[&str]| SweepSpec {
        variable,
        lo,
        hi,
        samples: SAMPLES,
        fixed,
        bell: BellState::Chi1,
        quad: QuadConfig::default(),
        stationary_phase: false,
        notes: notes.iter().map(|s| s.to_string()).collect(),
    };
    let raw = match n {
        1 => spec(SweepVariable::Q, 0.0, 20.0, fig1, &["q range [0, 20] is an artifact default"]),
        2 => spec(
            SweepVariable::Q,
            0.0,
            20.0,
            OrbitParams { beta: 4.0, ..fig1 },
            &["xi2, z, tau_ratio inherited from figure 1", "q range [0, 20] is an artifact default"],
        ),
        3 => spec(
            SweepVariable::TauRatio,
            0.0,
            30.0,
            OrbitParams { q: 0.6, ..fig1 },
            &[
                "xi2, z, beta inherited from figure 1",
                "q = 0.6 inherited from figure 4",
                "tau_ratio range [0, 30] is an artifact default",
            ],
        ),
        4 => spec(SweepVariable::Z, 0.0, 6.0, fig4, &["z upper limit 6 is an artifact default"]),
        5 => spec(
            SweepVariable::Z,
            0.0,
            6.0,
            OrbitParams { xi2: 0.265, ..fig4 },
            &["beta, q, tau_ratio inherited from figure 4", "z upper limit 6 is an artifact default"],
        ),
        6 => spec(
            SweepVariable::Z,
            0.0,
            6.0,
            OrbitParams { xi2: 0.5, ..fig4 },
            &["beta, q, tau_ratio inherited from figure 4", "z upper limit 6 is an artifact default"],
        ),
        other => return Err(Error::domain(format!("figure must be 1..6, got {other}"))),
    };
    raw.normalized()
}

/// A refined local extremum of a sweep curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub x: f64,
    #[serde(rename = "E")]
    pub e: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Minimum,
    Maximum,
}

/// Indices of interior local extrema of `E` among valid rows, keeping only
/// those at least `min_prominence` away from the surrounding curve.
pub fn local_extrema(rows: &[SweepRow], kind: ExtremumKind, min_prominence: f64) -> Vec<usize> {
    let sign = match kind {
        ExtremumKind::Minimum => 1.0,
        ExtremumKind::Maximum => -1.0,
    };
    let value = |i: usize| sign * rows[i].e;
    let valid = |i: usize| rows[i].is_valid();
    let mut out = Vec::new();
    let mut i = 1;
    while i + 1 < rows.len() {
        if !(valid(i - 1) && valid(i) && valid(i + 1)) || !(value(i) < value(i - 1)) {
            i += 1;
            continue;
        }
        // Step over a flat bottom.
        let mut j = i;
        while j + 1 < rows.len() && valid(j + 1) && value(j + 1) == value(i) {
            j += 1;
        }
        if j + 1 < rows.len() && valid(j + 1) && value(j + 1) > value(i) {
            let depth = value(i);
            let walk = |indices: &mut dyn Iterator<Item = usize>| {
                let mut peak = depth;
                for k in indices {
                    if !valid(k) || value(k) < depth {
                        break;
                    }
                    peak = peak.max(value(k));
                }
                peak
            };
            let left = walk(&mut (0..i).rev());
            let right = walk(&mut (j + 1..rows.len()));
            if left.min(right) - depth >= min_prominence {
                out.push(i);
            }
        }
        i = j + 1;
    }
    out
}

/// Local minima of `E` along the sweep, refined by golden-section search to
/// a bracket narrower than [`MINIMUM_XTOL`].
pub fn find_entanglement_minima(spec: &SweepSpec) -> Result<Vec<Extremum>> {
    let spec = spec.clone().normalized()?;
    if spec.variable != SweepVariable::Z {
        return Err(Error::domain("minimum search expects a sweep over z"));
    }
    let rows = run_sweep(&spec)?;
    let objective = |x: f64| {
        let e = evaluate_point(&spec, x).e;
        if e.is_finite() {
            e
        } else {
            f64::INFINITY
        }
    };
    Ok(local_extrema(&rows, ExtremumKind::Minimum, MIN_PROMINENCE)
        .into_iter()
        .map(|i| {
            let (x, e) = golden_section_min(objective, rows[i - 1].x, rows[i + 1].x, MINIMUM_XTOL);
            Extremum { x, e }
        })
        .collect())
}

/// Outcome of an invariance check of the reduced spin state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub bell: BellState,
    pub tau: f64,
    /// Largest entrywise distance between final and initial state.
    pub max_deviation: f64,
    /// Largest deviation of the accumulated Wigner rotation from identity
    /// (at the distribution centre).
    pub rotation_residual: f64,
}

/// Entrywise tolerance for the state to count as unchanged.
pub const INVARIANCE_TOL: f64 = 1e-10;

/// Accumulates `rate(τ, p)` over `[0, tau]` for every momentum, applies the
/// resulting spin rotation to `bell` through the component integrals, and
/// checks that the reduced state is unchanged.
pub fn invariance_check<R>(bell: BellState, rate: R, tau: f64, dist: &MomentumDistribution, steps: usize) -> Result<InvarianceReport>
where
    R: Fn(f64, f64) -> WignerRate,
{
    let accumulate = |p: f64| product_integral(|t| rate(t, p).0, 0.0, tau, steps);
    let centre = accumulate(dist.q)?;
    let rotation_residual = (centre - nalgebra::Matrix3::identity()).abs().max();
    let theta_fn = |p: f64| accumulate(p).map(|w| angle_about_2_axis(&w)).unwrap_or(f64::NAN);
    let quad = QuadConfig {
        fallback: false,
        ..QuadConfig::default()
    };
    let (rho, _) = reduced_density_bruteforce(bell, theta_fn, dist, &quad)?;
    let initial = bell.projector();
    let mut worst = (0usize, 0usize, 0.0f64);
    for i in 0..4 {
        for j in 0..4 {
            let d = (rho.0[(i, j)] - initial.0[(i, j)]).norm();
            if !(d <= worst.2) {
                worst = (i, j, d);
            }
        }
    }
    if !(worst.2 <= INVARIANCE_TOL) {
        return Err(Error::Assertion(format!(
            "{bell}: final state entry ({}, {}) deviates from the initial state by {:e}",
            worst.0, worst.1, worst.2
        )));
    }
    Ok(InvarianceReport {
        bell,
        tau,
        max_deviation: worst.2,
        rotation_residual,
    })
}

/// Radial fall from rest at infinity in Schwarzschild, starting at `r0`:
/// `r(τ) = (r0^{3/2} − 3τ/2)^{2/3}`, local speed `v = −1/√r`.
pub fn radial_infall(r0: f64, tau: f64) -> (f64, f64) {
    let r = (r0.powf(1.5) - 1.5 * tau).powf(2.0 / 3.0);
    (r, -1.0 / r.sqrt())
}

const RADIAL_R0: f64 = 10.0;
const RADIAL_TAU: f64 = 15.0;
const RADIAL_STEPS: usize = 512;

/// Checks that radial free fall leaves every Bell state untouched, and that
/// the accumulated centroid transformation is a pure boost.
pub fn radial_invariance_check(bell: BellState) -> Result<InvarianceReport> {
    let hole = ChargedBlackHole::schwarzschild();
    let (r_end, _) = radial_infall(RADIAL_R0, RADIAL_TAU);
    if !(r_end > 1.0) {
        return Err(Error::domain("radial path crosses the horizon"));
    }
    let lambda = product_integral(
        |t| {
            let (r, v) = radial_infall(RADIAL_R0, t);
            lambda_radial(&hole, r, v).map(|l| l.0).unwrap_or_else(|_| nalgebra::Matrix4::from_element(f64::NAN))
        },
        0.0,
        RADIAL_TAU,
        wigner::DEFAULT_STEPS,
    )?;
    let boost_rotation = rotation_part(&lambda)?;
    let boost_residual = (boost_rotation - nalgebra::Matrix3::identity()).abs().max();
    if !(boost_residual <= 1e-8) {
        return Err(Error::Assertion(format!(
            "accumulated radial transformation has a rotation part (residual {boost_residual:e})"
        )));
    }
    let rate = |t: f64, p: f64| {
        let (r, v) = radial_infall(RADIAL_R0, t);
        wigner::radial_wigner_rate(&hole, r, v, p).unwrap_or(WignerRate(nalgebra::Matrix3::from_element(f64::NAN)))
    };
    let dist = MomentumDistribution::new(0.5, 1.0)?;
    let mut report = invariance_check(bell, rate, RADIAL_TAU, &dist, RADIAL_STEPS)?;
    report.rotation_residual = report.rotation_residual.max(boost_residual);
    Ok(report)
}

/// One row of the static vs Kruskal frame comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameRow {
    pub r: f64,
    pub static_rate: Option<f64>,
    pub kruskal_rate: Option<f64>,
    pub flags: Vec<String>,
}

/// Threshold above which the static rate is reported as divergent.
pub const DIVERGENCE_THRESHOLD: f64 = 1e3;
/// Static rates below this count as the zero at `r = 3/2`.
pub const RATE_ZERO_TOL: f64 = 1e-10;

pub fn frame_comparison(r_grid: &[f64], q: f64, p: f64) -> Vec<FrameRow> {
    r_grid
        .iter()
        .map(|&r| {
            let mut row_flags = Vec::new();
            let static_rate = match schwarzschild_rate(r, q, p) {
                Ok(v) => {
                    if v.abs() > DIVERGENCE_THRESHOLD {
                        row_flags.push(flags::STATIC_DIVERGENT.to_string());
                    } else if v.abs() < RATE_ZERO_TOL {
                        row_flags.push(flags::STATIC_ZERO.to_string());
                    }
                    Some(v)
                }
                Err(_) => {
                    row_flags.push(flags::STATIC_DIVERGENT.to_string());
                    None
                }
            };
            let kruskal_rate = match kruskal_rate(r, q, p) {
                Ok(v) => Some(v),
                Err(_) => {
                    row_flags.push(flags::KRUSKAL_UNDEFINED.to_string());
                    None
                }
            };
            FrameRow {
                r,
                static_rate,
                kruskal_rate,
                flags: row_flags,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(n: u8, samples: usize) -> SweepSpec {
        SweepSpec {
            samples,
            ..figure_preset(n).unwrap()
        }
    }

    #[test]
    fn presets() {
        let f1 = figure_preset(1).unwrap();
        assert_eq!(f1.variable, SweepVariable::Q);
        assert_eq!((f1.fixed.xi2, f1.fixed.z, f1.fixed.beta, f1.fixed.tau_ratio), (0.265, 1.6, 1.0, 5.0));
        let f4 = figure_preset(4).unwrap();
        assert_eq!(f4.variable, SweepVariable::Z);
        assert_eq!((f4.fixed.xi2, f4.fixed.beta, f4.fixed.q, f4.fixed.tau_ratio), (0.16, 1.0, 0.6, 5.0));
        assert!((f4.lo - 0.8).abs() <= Z_CLAMP_MARGIN + 1e-12 && f4.lo > 0.8);
        assert!(f4.notes.iter().any(|n| n.contains("clamped")));
        let f5 = figure_preset(5).unwrap();
        assert_eq!((f5.fixed.xi2, f5.fixed.q, f5.fixed.beta, f5.fixed.tau_ratio), (0.265, 0.6, 1.0, 5.0));
        let f6 = figure_preset(6).unwrap();
        assert_eq!(f6.fixed.xi2, 0.5);
        assert!(f6.lo < 0.01);
        assert!(figure_preset(0).is_err() && figure_preset(7).is_err());
        // normalisation is idempotent
        assert_eq!(f4.clone().normalized().unwrap(), f4);
    }

    #[test]
    fn spec_validation() {
        let mut s = figure_preset(1).unwrap();
        s.samples = 1;
        assert!(s.clone().normalized().is_err());
        s.samples = 3;
        s.lo = 5.0;
        s.hi = 5.0;
        assert!(s.normalized().is_err());
    }

    #[test]
    fn zero_proper_time_keeps_full_entanglement() {
        let spec = small(3, 5);
        let row = evaluate_point(&spec, 0.0);
        assert!((row.e - 1.0).abs() < 1e-12);
        assert!(row.flags.is_empty());
    }

    #[test]
    fn rows_are_ordered_and_consistent() {
        let rows = run_sweep(&small(4, 40)).unwrap();
        assert!(rows.windows(2).all(|w| w[1].x > w[0].x));
        for r in rows.iter().filter(|r| r.is_valid()) {
            assert!((r.concurrence - (r.c * r.c + r.s * r.s)).abs() < 1e-8, "{r:?}");
            assert!((0.0..=1.0).contains(&r.e));
        }
    }

    #[test]
    fn stationary_phase_zeroes_horizon_rows() {
        let mut spec = small(4, 5);
        spec.stationary_phase = true;
        let row = evaluate_point(&spec, spec.lo);
        assert_eq!(row.e, 0.0);
        assert!(row.flags.contains(&flags::STATIONARY_PHASE.to_string()));
        spec.stationary_phase = false;
        let row = evaluate_point(&spec, 0.5);
        assert!(!row.is_valid());
        assert_eq!(row.flags, vec![flags::HORIZON.to_string()]);
    }

    #[test]
    fn extrema_prominence_filter() {
        let mk = |e: &[f64]| -> Vec<SweepRow> {
            e.iter()
                .enumerate()
                .map(|(i, &e)| SweepRow {
                    x: i as f64,
                    c: 0.0,
                    s: 0.0,
                    concurrence: 0.0,
                    e,
                    flags: vec![],
                })
                .collect()
        };
        let rows = mk(&[1.0, 0.5, 0.2, 0.6, 0.9, 0.3, 0.31, 0.8]);
        assert_eq!(local_extrema(&rows, ExtremumKind::Minimum, 1e-3), vec![2, 5]);
        assert_eq!(local_extrema(&rows, ExtremumKind::Maximum, 1e-3), vec![4]);
        let noisy = mk(&[1e-30, 1e-40, 1e-35, 0.1, 0.5]);
        assert!(local_extrema(&noisy, ExtremumKind::Minimum, 1e-3).is_empty());
        let mut gap = mk(&[1.0, 0.2, 1.0]);
        gap[1].e = f64::NAN;
        assert!(local_extrema(&gap, ExtremumKind::Minimum, 1e-3).is_empty());
    }

    #[test]
    fn radial_check_passes_and_negative_control_fails() {
        let report = radial_invariance_check(BellState::Chi2).unwrap();
        assert!(report.max_deviation <= INVARIANCE_TOL);
        let dist = MomentumDistribution::new(0.5, 1.0).unwrap();
        // χ₁ and χ₄ are invariant under equal real rotations of both spins; χ₂ is not.
        let err = invariance_check(BellState::Chi2, |_, _| WignerRate::about_2_axis(0.3), 2.0, &dist, 16).unwrap_err();
        assert!(matches!(err, Error::Assertion(_)));
    }

    #[test]
    fn frame_rows() {
        let rows = frame_comparison(&[1.0, 1.5, 10.0], 0.6, 0.2);
        assert_eq!(rows[0].static_rate, None);
        assert!(rows[0].flags.contains(&flags::STATIC_DIVERGENT.to_string()));
        assert!(rows[0].kruskal_rate.unwrap().is_finite());
        assert_eq!(rows[1].static_rate, Some(0.0));
        assert!(rows[1].kruskal_rate.unwrap() != 0.0);
        assert!(rows[2].flags.is_empty());
        let far = frame_comparison(&[20.0], 0.6, 0.2);
        assert!(far[0].static_rate.unwrap().abs() < rows[2].static_rate.unwrap().abs());
        assert!(far[0].kruskal_rate.unwrap().abs() < rows[2].kruskal_rate.unwrap().abs());
    }
}
