//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use gravent::entanglement::{
    reduced_density_bruteforce, reduced_density_closed, trig_moments, wootters_concurrence, BellState,
    DensityMatrix4, MomentumDistribution,
};
use gravent::experiments::{
    evaluate_point, figure_preset, find_entanglement_minima, local_extrema, radial_infall, radial_invariance_check,
    run_sweep, ExtremumKind, MIN_PROMINENCE,
};
use gravent::numeric::bisect;
use gravent::spacetime::{frame_transform_matrix, horizons, kruskal_map, outer_horizon, ChargedBlackHole};
use gravent::wigner::{
    kruskal_rate, lambda_radial, momentum_factor, product_integral, rotation_matrix, rotation_part, schwarzschild_rate,
    theta_circular, theta_zeros, OrbitParams, WignerRate,
};
use gravent::QuadConfig;
use nalgebra::{Matrix3, Matrix4, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gravent(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gravent"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("gravent {args:?} failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn parse_zeros(text: &str) -> Vec<f64> {
    text.lines().filter_map(|l| l.trim().parse().ok()).collect()
}

fn zero_radii() -> Outcome {
    let near = |got: &[f64], want: &[f64]| got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g - w).abs() <= 1e-4);
    let a = parse_zeros(&gravent(&["zeros", "--xi2", "0.16"])?);
    ensure(near(&a, &[1.2425]), || format!("xi2 = 0.16 gave {a:?}"))?;
    let b = parse_zeros(&gravent(&["zeros", "--xi2", "0.265"])?);
    ensure(near(&b, &[0.5697, 0.9303]), || format!("xi2 = 0.265 gave {b:?}"))?;
    let c_text = gravent(&["zeros", "--xi2", "0.3"])?;
    let c = parse_zeros(&c_text);
    ensure(c.is_empty() && c_text.starts_with("none"), || format!("xi2 = 0.3 gave {c_text:?}"))?;
    Ok(format!("{a:?}, {b:?}, none"))
}

fn horizon_radii() -> Outcome {
    let a = horizons(0.16);
    ensure(a.len() == 2 && (a[0] - 0.2).abs() <= 1e-12 && (a[1] - 0.8).abs() <= 1e-12, || format!("{a:?}"))?;
    let b = horizons(0.25);
    ensure(b.len() == 1 && (b[0] - 0.5).abs() <= 1e-12, || format!("{b:?}"))?;
    let c = horizons(0.5);
    ensure(c.is_empty(), || format!("{c:?}"))?;
    Ok(format!("{a:?}, {b:?}, {c:?}"))
}

fn peak_property() -> Outcome {
    let spec = figure_preset(4).map_err(|e| e.to_string())?;
    let at_quoted = evaluate_point(&spec, 1.2425).e;
    ensure((at_quoted - 1.0).abs() <= 1e-6, || format!("E(1.2425) = {at_quoted}"))?;
    let zero = theta_zeros(spec.fixed.xi2)[0];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let mut draw = spec.clone();
        draw.fixed.q = rng.random_range(0.0..2.0);
        draw.fixed.beta = rng.random_range(0.5..3.0);
        draw.fixed.tau_ratio = rng.random_range(1.0..10.0);
        let e = evaluate_point(&draw, zero).e;
        ensure((e - 1.0).abs() <= 1e-6, || format!("E = {e} at z = {zero} for {:?}", draw.fixed))?;
        worst = worst.max((e - 1.0).abs());
    }
    Ok(format!("E(1.2425) = 1 - {:.1e}; 5 draws at z = {zero:.6} within {worst:.1e}", 1.0 - at_quoted))
}

fn minima() -> Outcome {
    let m4 = find_entanglement_minima(&figure_preset(4).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let z4: Vec<f64> = m4.iter().map(|m| m.x).collect();
    ensure(z4.len() == 1 && (z4[0] - 2.25).abs() <= 0.1, || format!("figure 4 minima {z4:?}"))?;
    let m5 = find_entanglement_minima(&figure_preset(5).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let z5: Vec<f64> = m5.iter().map(|m| m.x).collect();
    ensure(
        z5.len() == 2 && (z5[0] - 0.65).abs() <= 0.1 && (z5[1] - 1.96).abs() <= 0.1,
        || format!("figure 5 minima {z5:?}"),
    )?;
    Ok(format!("figure 4 at {:.4}; figure 5 at {:.4} and {:.4}", z4[0], z5[0], z5[1]))
}

fn monotone_descent() -> Outcome {
    let rows = run_sweep(&figure_preset(1).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(rows.iter().all(|r| r.is_valid()), || "figure 1 has missing rows".into())?;
    ensure((rows[0].e - 1.0).abs() <= 1e-6, || format!("E(q = 0) = {}", rows[0].e))?;
    let rise = rows.windows(2).map(|w| w[1].e - w[0].e).fold(f64::NEG_INFINITY, f64::max);
    ensure(rise <= 1e-3, || format!("E rises by {rise:e}"))?;
    let last = rows.last().unwrap();
    ensure(last.e < 0.05, || format!("E(q = {}) = {}", last.x, last.e))?;
    let rows2 = run_sweep(&figure_preset(2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let peaks = local_extrema(&rows2, ExtremumKind::Maximum, MIN_PROMINENCE);
    ensure(!peaks.is_empty(), || "figure 2 has no interior maximum".into())?;
    Ok(format!(
        "figure 1: largest step up {rise:.1e}, E({}) = {:.1e}; figure 2: {} maxima, first at q = {:.3}",
        last.x,
        last.e,
        peaks.len(),
        rows2[peaks[0]].x
    ))
}

fn asymptotics() -> Outcome {
    let mut failures = Vec::new();
    let mut values = Vec::new();
    for n in 4..=6u8 {
        let spec = figure_preset(n).map_err(|e| e.to_string())?;
        let e = evaluate_point(&spec, 50.0).e;
        values.push(format!("figure {n}: E(50) = {e:.6}"));
        if e.is_nan() || e <= 0.999 {
            failures.push(format!("figure {n}: E(50) = {e:.6} ≤ 0.999"));
        }
    }
    let m6 = find_entanglement_minima(&figure_preset(6).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    if !m6.is_empty() {
        failures.push(format!("figure 6 has interior minima {m6:?}"));
    }
    if failures.is_empty() {
        Ok(format!("{}; figure 6 has no interior minima", values.join(", ")))
    } else {
        Err(format!("{}; figure 6 interior minima: {}", failures.join(", "), m6.len()))
    }
}

struct Draw {
    params: OrbitParams,
    moments: gravent::TrigMoments,
    closed: Vec<DensityMatrix4>,
    brute: Vec<DensityMatrix4>,
}

fn random_draws() -> Result<Vec<Draw>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let quad = QuadConfig::default();
    (0..100)
        .map(|_| {
            let xi2 = rng.random_range(0.0..0.6);
            let params = OrbitParams {
                xi2,
                z: outer_horizon(xi2).unwrap_or(0.05) + rng.random_range(0.1..6.0),
                q: rng.random_range(0.0..3.0),
                beta: rng.random_range(0.2..3.0),
                tau_ratio: rng.random_range(0.0..8.0),
            };
            let theta = |p: f64| theta_circular(&params, p).unwrap();
            let dist = MomentumDistribution::new(params.q, params.beta).map_err(|e| e.to_string())?;
            let moments = trig_moments(theta, &dist, &quad).map_err(|e| format!("{params:?}: {e}"))?;
            let mut closed = Vec::new();
            let mut brute = Vec::new();
            for bell in BellState::ALL {
                closed.push(reduced_density_closed(bell, &moments));
                brute.push(reduced_density_bruteforce(bell, theta, &dist, &quad).map_err(|e| e.to_string())?.0);
            }
            Ok(Draw {
                params,
                moments,
                closed,
                brute,
            })
        })
        .collect()
}

fn oracle_equivalence(draws: &[Draw]) -> Outcome {
    let mut worst: f64 = 0.0;
    for d in draws {
        for (c, b) in d.closed.iter().zip(&d.brute) {
            let dev = c.max_deviation(b);
            ensure(dev <= 1e-8, || format!("{:?}: deviation {dev:e}", d.params))?;
            worst = worst.max(dev);
        }
    }
    Ok(format!("100 draws × 4 Bell states, largest entry deviation {worst:.1e}"))
}

fn concurrence_identity(draws: &[Draw]) -> Outcome {
    let (mut worst, mut spread): (f64, f64) = (0.0, 0.0);
    for d in draws {
        let cs: Vec<f64> = d.closed.iter().map(|rho| wootters_concurrence(rho).unwrap()).collect();
        for c in &cs {
            let dev = (c - d.moments.coherence()).abs();
            ensure(dev <= 1e-8, || format!("{:?}: |C − (C² + S²)| = {dev:e}", d.params))?;
            worst = worst.max(dev);
            spread = spread.max((c - cs[0]).abs());
        }
    }
    ensure(spread <= 1e-10, || format!("concurrence differs across Bell states by {spread:e}"))?;
    Ok(format!("|C − (C² + S²)| ≤ {worst:.1e}, spread across Bell states {spread:.1e}"))
}

fn hygiene(draws: &[Draw]) -> Outcome {
    let (mut herm, mut trace, mut min_eig, mut coherence): (f64, f64, f64, f64) = (0.0, 0.0, f64::INFINITY, 0.0);
    for d in draws {
        coherence = coherence.max(d.moments.coherence());
        for rho in d.closed.iter().chain(&d.brute) {
            herm = herm.max(rho.hermiticity_residual());
            trace = trace.max((rho.trace() - 1.0).norm());
            min_eig = min_eig.min(rho.min_eigenvalue());
        }
    }
    ensure(herm < 1e-12 && trace < 1e-10 && min_eig > -1e-10 && coherence <= 1.0, || {
        format!("hermiticity {herm:e}, trace {trace:e}, min eigenvalue {min_eig:e}, max C² + S² {coherence}")
    })?;
    Ok(format!(
        "800 matrices: hermiticity {herm:.1e}, trace {trace:.1e}, min eigenvalue {min_eig:.1e}, max C² + S² {coherence:.4}"
    ))
}

fn product_integral_oracle() -> Outcome {
    let (rate, tau) = (0.7, 3.0);
    let w = product_integral(|_| WignerRate::about_2_axis(rate).0, 0.0, tau, 10_000).map_err(|e| e.to_string())?;
    let constant_err = (w - rotation_matrix(rate * tau)).abs().max();
    ensure(constant_err <= 1e-8, || format!("constant rate error {constant_err:e}"))?;

    let varying = |t: f64| {
        let (a, b, c) = (t.cos(), (2.0 * t).sin(), 0.5 * t);
        Matrix3::new(0.0, a, b, -a, 0.0, c, -b, -c, 0.0)
    };
    let at = |n: usize| product_integral(varying, 0.0, 2.0, n).unwrap();
    let (a, b, c) = (at(64), at(128), at(256));
    let order = ((a - b).abs().max() / (b - c).abs().max()).log2();
    ensure(order >= 2.0, || format!("observed order {order}"))?;

    let hole = ChargedBlackHole::schwarzschild();
    let lambda = product_integral(
        |t| {
            let (r, v) = radial_infall(10.0, t);
            lambda_radial(&hole, r, v).unwrap().0
        },
        0.0,
        15.0,
        4096,
    )
    .map_err(|e| e.to_string())?;
    let rot = rotation_part(&lambda).map_err(|e| e.to_string())?;
    let radial_err = (rot - Matrix3::identity()).abs().max();
    ensure(radial_err <= 1e-8, || format!("radial rotation block off identity by {radial_err:e}"))?;
    Ok(format!(
        "constant rate error {constant_err:.1e}, observed order {order:.4}, radial rotation residual {radial_err:.1e}"
    ))
}

fn radial_invariance() -> Outcome {
    let mut worst: f64 = 0.0;
    for bell in BellState::ALL {
        let report = radial_invariance_check(bell).map_err(|e| e.to_string())?;
        ensure(report.max_deviation <= 1e-10, || format!("{bell}: {:e}", report.max_deviation))?;
        worst = worst.max(report.max_deviation);
    }
    Ok(format!("all four Bell states unchanged within {worst:.1e}"))
}

fn frame_comparison() -> Outcome {
    let (q, p) = (0.6, 0.2);
    let root = bisect(|r| schwarzschild_rate(r, q, p).unwrap(), 1.2, 3.0, 1e-14).map_err(|e| e.to_string())?;
    ensure((root - 1.5).abs() <= 1e-10, || format!("static rate vanishes at r = {root}"))?;
    let near = schwarzschild_rate(1.0 + 1e-8, q, p).map_err(|e| e.to_string())?;
    ensure(near.abs() > 1e3, || format!("static rate at 1 + 1e-8 is {near}"))?;
    let at_horizon = kruskal_rate(1.0, q, p).map_err(|e| e.to_string())?;
    let expected = (-0.5f64).exp() * momentum_factor(q, p);
    ensure((at_horizon - expected).abs() <= 1e-10, || format!("Kruskal rate at r = 1 is {at_horizon}, want {expected}"))?;
    let eta = Matrix4::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0));
    let (mut lorentz, mut identity): (f64, f64) = (0.0, 0.0);
    for i in 0..20 {
        let r = 1.01 + 2.5 * i as f64;
        let t = -5.0 + 0.5 * i as f64;
        let m = frame_transform_matrix(&kruskal_map(r, t).unwrap()).map_err(|e| e.to_string())?;
        lorentz = lorentz.max((m * eta * m.transpose() - eta).abs().max());
        let m0 = frame_transform_matrix(&kruskal_map(r, 0.0).unwrap()).map_err(|e| e.to_string())?;
        identity = identity.max((m0 - Matrix4::identity()).abs().max());
    }
    ensure(lorentz <= 1e-10 && identity <= 1e-10, || format!("η residual {lorentz:e}, t = 0 residual {identity:e}"))?;
    Ok(format!(
        "static zero at r = {root:.12}, static rate {near:.2e} at 1 + 1e-8, Kruskal rate at horizon off by {:.1e}, η residual {lorentz:.1e}",
        (at_horizon - expected).abs()
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let paths = [dir.path().join("one.csv"), dir.path().join("two.csv")];
    for p in &paths {
        gravent(&["figure", "4", "-o", p.to_str().unwrap()])?;
    }
    let (a, b) = (std::fs::read(&paths[0]).map_err(|e| e.to_string())?, std::fs::read(&paths[1]).map_err(|e| e.to_string())?);
    ensure(a == b, || "figure 4 CSV differs between runs".into())?;
    Ok(format!("two runs of figure 4 give identical {}-byte CSV files", a.len()))
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(outcome) => outcome,
        Err(payload) => Err(payload
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into())),
    }
}

fn main() {
    let draws_data = catch_unwind(random_draws).unwrap_or_else(|_| Err("drawing parameters panicked".into()));
    let with_draws = |f: fn(&[Draw]) -> Outcome| -> Outcome {
        match &draws_data {
            Ok(d) => guarded(|| f(d)),
            Err(e) => Err(e.clone()),
        }
    };

    let results: Vec<(u8, &str, Outcome)> = vec![
        (1, "Wigner-angle zero radii", guarded(zero_radii)),
        (2, "horizon radii", guarded(horizon_radii)),
        (3, "peak at the zero radius", guarded(peak_property)),
        (4, "entanglement minima", guarded(minima)),
        (5, "monotone descent and oscillation in q", guarded(monotone_descent)),
        (6, "asymptotic recovery at large z", guarded(asymptotics)),
        (7, "closed form matches brute force", with_draws(oracle_equivalence)),
        (8, "concurrence identity", with_draws(concurrence_identity)),
        (9, "density-matrix hygiene", with_draws(hygiene)),
        (10, "product integral", guarded(product_integral_oracle)),
        (11, "radial invariance", guarded(radial_invariance)),
        (12, "static vs Kruskal frames", guarded(frame_comparison)),
        (13, "determinism", guarded(determinism)),
    ];
    let mut failed = 0;
    for (id, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
