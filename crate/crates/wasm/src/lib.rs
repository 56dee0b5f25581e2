//! Browser bindings for the interactive demo in `www/`.

use gravent::entanglement::{entanglement_of_formation, reduced_state, wootters_concurrence, MomentumDistribution};
use gravent::experiments::{run_sweep, SweepSpec, SweepVariable};
use gravent::{spacetime, wigner, BellState, OrbitParams, QuadConfig};
use wasm_bindgen::prelude::*;

/// One sampled curve: swept values and the matching moments and entanglement.
#[wasm_bindgen]
pub struct Curve {
    xs: Vec<f64>,
    c: Vec<f64>,
    s: Vec<f64>,
    e: Vec<f64>,
    lo: f64,
}

#[wasm_bindgen]
impl Curve {
    #[wasm_bindgen(getter)]
    pub fn xs(&self) -> Vec<f64> {
        self.xs.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn c(&self) -> Vec<f64> {
        self.c.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn s(&self) -> Vec<f64> {
        self.s.clone()
    }

    /// Entanglement of formation; NaN where the point could not be computed.
    #[wasm_bindgen(getter)]
    pub fn e(&self) -> Vec<f64> {
        self.e.clone()
    }

    /// Start of the sweep after clamping away from the horizon.
    #[wasm_bindgen(getter)]
    pub fn lo(&self) -> f64 {
        self.lo
    }
}

/// Horizons and Wigner-angle zeros for a given charge.
#[wasm_bindgen]
pub struct Radii {
    horizons: Vec<f64>,
    zeros: Vec<f64>,
}

#[wasm_bindgen]
impl Radii {
    #[wasm_bindgen(getter)]
    pub fn horizons(&self) -> Vec<f64> {
        self.horizons.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn zeros(&self) -> Vec<f64> {
        self.zeros.clone()
    }
}

/// Spin state at a single parameter point.
#[wasm_bindgen]
pub struct SpinPoint {
    re: Vec<f64>,
    im: Vec<f64>,
    c: f64,
    s: f64,
    concurrence: f64,
    e: f64,
}

#[wasm_bindgen]
impl SpinPoint {
    /// Real parts of the 4×4 density matrix, row-major.
    #[wasm_bindgen(getter)]
    pub fn re(&self) -> Vec<f64> {
        self.re.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn im(&self) -> Vec<f64> {
        self.im.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn c(&self) -> f64 {
        self.c
    }

    #[wasm_bindgen(getter)]
    pub fn s(&self) -> f64 {
        self.s
    }

    #[wasm_bindgen(getter)]
    pub fn concurrence(&self) -> f64 {
        self.concurrence
    }

    #[wasm_bindgen(getter)]
    pub fn e(&self) -> f64 {
        self.e
    }
}

fn js_err(e: gravent::Error) -> JsError {
    JsError::new(&format!("{}: {e}", e.kind()))
}

#[allow(clippy::too_many_arguments)]
fn sweep_curve(
    variable: &str,
    lo: f64,
    hi: f64,
    samples: usize,
    params: OrbitParams,
    bell: &str,
) -> gravent::Result<Curve> {
    let spec = SweepSpec {
        variable: variable.parse::<SweepVariable>()?,
        lo,
        hi,
        samples,
        fixed: params,
        bell: bell.parse::<BellState>()?,
        quad: QuadConfig::default(),
        stationary_phase: false,
        notes: Vec::new(),
    }
    .normalized()?;
    let rows = run_sweep(&spec)?;
    Ok(Curve {
        xs: rows.iter().map(|r| r.x).collect(),
        c: rows.iter().map(|r| r.c).collect(),
        s: rows.iter().map(|r| r.s).collect(),
        e: rows.iter().map(|r| r.e).collect(),
        lo: spec.lo,
    })
}

fn spin_point(params: OrbitParams, bell: &str) -> gravent::Result<SpinPoint> {
    params.validate()?;
    let bell = bell.parse::<BellState>()?;
    let dist = MomentumDistribution::new(params.q, params.beta)?;
    let theta = |p: f64| wigner::theta_circular(&params, p).unwrap_or(f64::NAN);
    let state = reduced_state(bell, theta, &dist, &QuadConfig::default())?;
    let concurrence = wootters_concurrence(&state.density)?;
    let m = state.density.0;
    Ok(SpinPoint {
        re: (0..16).map(|k| m[(k / 4, k % 4)].re).collect(),
        im: (0..16).map(|k| m[(k / 4, k % 4)].im).collect(),
        c: state.moments.c,
        s: state.moments.s,
        concurrence,
        e: entanglement_of_formation(concurrence)?,
    })
}

/// Sweeps `variable` ("q", "tau_ratio" or "z") over `[lo, hi]` with the other
/// parameters fixed. Radial sweeps start just outside the outer horizon.
#[wasm_bindgen(js_name = sweep)]
#[allow(clippy::too_many_arguments)]
pub fn js_sweep(
    variable: &str,
    lo: f64,
    hi: f64,
    samples: usize,
    xi2: f64,
    z: f64,
    q: f64,
    beta: f64,
    tau_ratio: f64,
    bell: &str,
) -> Result<Curve, JsError> {
    let params = OrbitParams {
        xi2,
        z,
        q,
        beta,
        tau_ratio,
    };
    sweep_curve(variable, lo, hi, samples, params, bell).map_err(js_err)
}

#[wasm_bindgen(js_name = radii)]
pub fn js_radii(xi2: f64) -> Result<Radii, JsError> {
    spacetime::ChargedBlackHole::new(xi2).map_err(js_err)?;
    Ok(Radii {
        horizons: spacetime::horizons(xi2),
        zeros: wigner::theta_zeros(xi2),
    })
}

#[wasm_bindgen(js_name = spinState)]
pub fn js_spin_state(xi2: f64, z: f64, q: f64, beta: f64, tau_ratio: f64, bell: &str) -> Result<SpinPoint, JsError> {
    let params = OrbitParams {
        xi2,
        z,
        q,
        beta,
        tau_ratio,
    };
    spin_point(params, bell).map_err(js_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig4() -> OrbitParams {
        OrbitParams {
            xi2: 0.16,
            z: 1.0,
            q: 0.6,
            beta: 1.0,
            tau_ratio: 5.0,
        }
    }

    #[test]
    fn curve_starts_outside_the_horizon() {
        let curve = sweep_curve("z", 0.0, 4.0, 50, fig4(), "chi1").unwrap();
        assert_eq!(curve.xs.len(), 50);
        assert!(curve.lo > 0.8);
        assert!(curve.e.iter().all(|e| (0.0..=1.0).contains(e)));
    }

    #[test]
    fn spin_point_at_a_zero_is_the_bell_state() {
        let z = wigner::theta_zeros(0.16)[0];
        let p = spin_point(OrbitParams { z, ..fig4() }, "chi1").unwrap();
        assert!((p.e - 1.0).abs() < 1e-9);
        assert!((p.re[0] - 0.5).abs() < 1e-9 && (p.re[3] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(sweep_curve("w", 0.0, 1.0, 5, fig4(), "chi1").is_err());
        assert!(spin_point(OrbitParams { z: 0.5, ..fig4() }, "chi1").is_err());
        assert!(spin_point(fig4(), "chi9").is_err());
    }
}
