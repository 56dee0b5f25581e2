//! Self-checks behind `gravent validate`: oracle equivalence of the closed
//! and brute-force spin states plus the library's invariants, on a fixed
//! pseudo-random sample.

use gravent::entanglement::{
    entanglement_of_formation, reduced_density_bruteforce, reduced_density_closed, trig_moments,
    wootters_concurrence, BellState, DensityMatrix4, MomentumDistribution,
};
use gravent::experiments::{evaluate_point, figure_preset, radial_invariance_check};
use gravent::spacetime::{frame_transform_matrix, kruskal_map, outer_horizon};
use gravent::wigner::{kruskal_rate, momentum_factor, product_integral, rotation_matrix, schwarzschild_rate, theta_circular, theta_zeros, OrbitParams, WignerRate};
use gravent::QuadConfig;
use nalgebra::{Matrix4, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_2024;
pub const DRAWS: usize = 100;

pub struct Check {
    pub name: &'static str,
    pub outcome: Result<String, String>,
}

/// Random circular-orbit parameters strictly outside any horizon.
pub fn random_orbit(rng: &mut impl Rng) -> OrbitParams {
    let xi2 = rng.random_range(0.0..0.6);
    let floor = outer_horizon(xi2).unwrap_or(0.05);
    OrbitParams {
        xi2,
        z: floor + rng.random_range(0.1..6.0),
        q: rng.random_range(0.0..3.0),
        beta: rng.random_range(0.2..3.0),
        tau_ratio: rng.random_range(0.0..8.0),
    }
}

fn hygiene(rho: &DensityMatrix4) -> Result<(), String> {
    let herm = rho.hermiticity_residual();
    let tr = rho.trace();
    let min = rho.min_eigenvalue();
    if herm >= 1e-12 || (tr.re - 1.0).abs() >= 1e-10 || tr.im.abs() >= 1e-10 || min <= -1e-10 {
        return Err(format!("hermiticity {herm:e}, trace {tr}, min eigenvalue {min:e}"));
    }
    Ok(())
}

fn spin_states() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let quad = QuadConfig::default();
    let mut worst_oracle: f64 = 0.0;
    let mut worst_identity: f64 = 0.0;
    for _ in 0..DRAWS {
        let params = random_orbit(&mut rng);
        let theta = |p: f64| theta_circular(&params, p).unwrap_or(f64::NAN);
        let dist = MomentumDistribution::new(params.q, params.beta).map_err(|e| e.to_string())?;
        let m = trig_moments(theta, &dist, &quad).map_err(|e| format!("{params:?}: {e}"))?;
        if m.coherence() > 1.0 + 1e-12 {
            return Err(format!("{params:?}: C² + S² = {}", m.coherence()));
        }
        let flipped = trig_moments(|p| -theta(p), &dist, &quad).map_err(|e| e.to_string())?;
        if (flipped.c - m.c).abs() > 1e-10 || (flipped.s + m.s).abs() > 1e-10 {
            return Err(format!("{params:?}: Θ → −Θ does not map (C, S) to (C, −S)"));
        }
        let mut concurrences = Vec::new();
        for bell in BellState::ALL {
            let closed = reduced_density_closed(bell, &m);
            let (brute, _) = reduced_density_bruteforce(bell, theta, &dist, &quad).map_err(|e| e.to_string())?;
            worst_oracle = worst_oracle.max(closed.max_deviation(&brute));
            hygiene(&closed).map_err(|e| format!("{bell} closed form at {params:?}: {e}"))?;
            hygiene(&brute).map_err(|e| format!("{bell} brute force at {params:?}: {e}"))?;
            let c = wootters_concurrence(&closed).map_err(|e| e.to_string())?;
            worst_identity = worst_identity.max((c - m.coherence()).abs());
            concurrences.push(c);
        }
        let spread = concurrences.iter().fold(0.0f64, |a, &c| a.max((c - concurrences[0]).abs()));
        if spread > 1e-10 {
            return Err(format!("{params:?}: concurrence differs across Bell states by {spread:e}"));
        }
    }
    if worst_oracle > 1e-8 || worst_identity > 1e-8 {
        return Err(format!(
            "closed vs brute force {worst_oracle:e}, concurrence vs C² + S² {worst_identity:e}"
        ));
    }
    Ok(format!(
        "{DRAWS} draws × 4 Bell states: closed vs brute force {worst_oracle:.1e}, concurrence vs C² + S² {worst_identity:.1e}"
    ))
}

fn entanglement_curve() -> Result<String, String> {
    let grid: Vec<f64> = (0..=1000).map(|i| i as f64 / 1000.0).collect();
    let values: Vec<f64> = grid.iter().map(|&c| entanglement_of_formation(c).unwrap()).collect();
    if values[0] != 0.0 || values[1000] != 1.0 {
        return Err(format!("E(0) = {}, E(1) = {}", values[0], values[1000]));
    }
    if let Some(w) = values.windows(2).position(|w| w[1] < w[0]) {
        return Err(format!("E decreases after C = {}", grid[w]));
    }
    Ok("E(0) = 0, E(1) = 1, monotone on 1001 points".into())
}

fn peak_property() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let base = figure_preset(4).map_err(|e| e.to_string())?;
    let zero = theta_zeros(base.fixed.xi2)[0];
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let mut spec = base.clone();
        spec.fixed.q = rng.random_range(0.0..3.0);
        spec.fixed.beta = rng.random_range(0.2..3.0);
        spec.fixed.tau_ratio = rng.random_range(0.0..20.0);
        worst = worst.max((evaluate_point(&spec, zero).e - 1.0).abs());
    }
    if worst > 1e-6 {
        return Err(format!("|E − 1| = {worst:e} at z = {zero}"));
    }
    Ok(format!("|E − 1| ≤ {worst:.1e} at z = {zero:.6} over 5 draws"))
}

fn product_integral_check() -> Result<String, String> {
    let (rate, tau) = (0.7, 3.0);
    let w = product_integral(|_| WignerRate::about_2_axis(rate).0, 0.0, tau, 10_000).map_err(|e| e.to_string())?;
    let err = (w - rotation_matrix(rate * tau)).abs().max();
    if err > 1e-8 {
        return Err(format!("constant rate deviates by {err:e}"));
    }
    Ok(format!("constant rate matches the closed form to {err:.1e}"))
}

fn radial() -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for bell in BellState::ALL {
        let report = radial_invariance_check(bell).map_err(|e| e.to_string())?;
        worst = worst.max(report.max_deviation);
    }
    Ok(format!("all Bell states unchanged to {worst:.1e}"))
}

fn frames() -> Result<String, String> {
    let (q, p) = (0.6, 0.2);
    let at_photon_sphere = schwarzschild_rate(1.5, q, p).map_err(|e| e.to_string())?;
    let near_horizon = schwarzschild_rate(1.0 + 1e-8, q, p).map_err(|e| e.to_string())?;
    let at_horizon = kruskal_rate(1.0, q, p).map_err(|e| e.to_string())?;
    if at_photon_sphere.abs() > 1e-10 || near_horizon.abs() <= 1e3 {
        return Err(format!("static rate {at_photon_sphere:e} at r = 3/2, {near_horizon:e} near r = 1"));
    }
    if (at_horizon - (-0.5f64).exp() * momentum_factor(q, p)).abs() > 1e-10 {
        return Err(format!("Kruskal rate at r = 1 is {at_horizon}"));
    }
    let eta = Matrix4::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0));
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let r = 1.05 + 0.5 * i as f64;
        let t = -3.0 + 0.3 * i as f64;
        let m = frame_transform_matrix(&kruskal_map(r, t).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        worst = worst.max((m * eta * m.transpose() - eta).abs().max());
        let at_rest = frame_transform_matrix(&kruskal_map(r, 0.0).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        worst = worst.max((at_rest - Matrix4::identity()).abs().max());
    }
    if worst > 1e-10 {
        return Err(format!("frame transformation residual {worst:e}"));
    }
    Ok(format!("rates at special radii as expected, frame residual {worst:.1e}"))
}

pub fn run_all() -> Vec<Check> {
    vec![
        Check {
            name: "spin-state oracle and hygiene",
            outcome: spin_states(),
        },
        Check {
            name: "entanglement of formation",
            outcome: entanglement_curve(),
        },
        Check {
            name: "peak at Θ zero",
            outcome: peak_property(),
        },
        Check {
            name: "product integral",
            outcome: product_integral_check(),
        },
        Check {
            name: "radial invariance",
            outcome: radial(),
        },
        Check {
            name: "frame comparison",
            outcome: frames(),
        },
    ]
}
