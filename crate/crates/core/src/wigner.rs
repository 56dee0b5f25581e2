//! Local Lorentz generators, Wigner rotation rates and accumulated angles for
//! circular and radial motion, plus the time-ordered product integral.
//!
//! Index layout for 4×4 matrices is `(0, 1, 2, 3)` = (time, radial, polar,
//! azimuthal) legs of the local frame; 3×3 rates use the spatial legs
//! `(1, 2, 3)` at positions `(0, 1, 2)`. Units are `c = r_s = m = 1`, so
//! momenta are the dimensionless `p³/mc`.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix3, Matrix4, SMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spacetime::{self, metric_potentials, MetricModel, HORIZON_TOL};

/// Default step count for [`product_integral`].
pub const DEFAULT_STEPS: usize = 4096;

/// The momentum dependence shared by every circular-orbit rate:
/// `q √(q²+1) (√(q²+1) − q p / (√(p²+1) + 1))`.
pub fn momentum_factor(q: f64, p: f64) -> f64 {
    let gamma = q.hypot(1.0);
    q * gamma * (gamma - q * p / (p.hypot(1.0) + 1.0))
}

/// Centroid kinematics on a circular orbit of radius `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularOrbitState {
    pub gamma: f64,
    pub q0: f64,
    pub q3: f64,
    /// Radial component of the proper acceleration.
    pub a1: f64,
}

impl CircularOrbitState {
    pub fn mass_shell_residual(&self) -> f64 {
        self.q0 * self.q0 - self.q3 * self.q3 - 1.0
    }
}

pub fn circular_orbit_state(model: &dyn MetricModel, z: f64, q: f64) -> Result<CircularOrbitState> {
    let pot = metric_potentials(model, z)?;
    let gamma2 = q * q + 1.0;
    let gamma = gamma2.sqrt();
    let a1 = gamma2 * (-pot.b).exp() * (pot.da - (gamma2 - 1.0) / (gamma2 * z));
    Ok(CircularOrbitState {
        gamma,
        q0: gamma,
        q3: q,
        a1,
    })
}

/// `λ^a_b` of an infinitesimal local Lorentz transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzGenerator(pub Matrix4<f64>);

const ETA: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

impl LorentzGenerator {
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Largest entry of `λη + (λη)ᵀ`; zero for a Lorentz generator.
    pub fn generator_residual(&self) -> f64 {
        let eta = Matrix4::from_diagonal(&ETA.into());
        let le = self.0 * eta;
        (le + le.transpose()).abs().max()
    }

    /// `λ_{a0} = η_aa λ^a_0`.
    fn lowered_time_column(&self, a: usize) -> f64 {
        ETA[a] * self.0[(a, 0)]
    }
}

/// `e^{-B} (A′ − 1/z)`, the combination through which the metric enters
/// every circular-orbit generator.
fn curvature_acceleration(model: &dyn MetricModel, z: f64) -> Result<f64> {
    let pot = metric_potentials(model, z)?;
    Ok((-pot.b).exp() * (pot.da - 1.0 / z))
}

/// Generator for a circular equatorial orbit with centroid momentum `q`.
pub fn lambda_circular(model: &dyn MetricModel, z: f64, q: f64) -> Result<LorentzGenerator> {
    let k = curvature_acceleration(model, z)?;
    let gamma2 = q * q + 1.0;
    let gamma = gamma2.sqrt();
    let v = q / gamma;
    let boost = gamma * (gamma2 - 1.0) * k;
    let rot = -gamma * gamma2 * v * k;
    let mut m = Matrix4::zeros();
    m[(1, 0)] = boost;
    m[(0, 1)] = boost;
    m[(1, 3)] = rot;
    m[(3, 1)] = -rot;
    Ok(LorentzGenerator(m))
}

/// Generator for radial geodesic motion with local speed `v`: a pure boost
/// `λ^0_1 = λ^1_0 = −γ A′ e^{−B}`.
pub fn lambda_radial(model: &dyn MetricModel, z: f64, v: f64) -> Result<LorentzGenerator> {
    if !(v.abs() < 1.0) {
        return Err(Error::domain(format!("radial speed must satisfy |v| < 1, got {v}")));
    }
    let pot = metric_potentials(model, z)?;
    let gamma = 1.0 / (1.0 - v * v).sqrt();
    let boost = -gamma * pot.da * (-pot.b).exp();
    let mut m = Matrix4::zeros();
    m[(0, 1)] = boost;
    m[(1, 0)] = boost;
    Ok(LorentzGenerator(m))
}

/// Spatial rotation rate `w^i_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerRate(pub Matrix3<f64>);

impl WignerRate {
    pub fn zero() -> Self {
        Self(Matrix3::zeros())
    }

    /// About the 2-axis: `w^1_3 = −w^3_1 = rate`.
    pub fn about_2_axis(rate: f64) -> Self {
        let mut m = Matrix3::zeros();
        m[(0, 2)] = rate;
        m[(2, 0)] = -rate;
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn w13(&self) -> f64 {
        self.0[(0, 2)]
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        (self.0 + self.0.transpose()).abs().max()
    }
}

/// Wigner rotation rate seen by a particle of spatial momentum `p` (local
/// frame, units of `mc`) under the local generator `lambda`:
/// `w^i_j = λ^i_j + (λ^i_0 p_j − λ_{j0} p^i) / (p^0 + 1)`.
pub fn wigner_rate(lambda: &LorentzGenerator, p: [f64; 3]) -> WignerRate {
    let p0 = (1.0 + p.iter().map(|x| x * x).sum::<f64>()).sqrt();
    let l = lambda.matrix();
    let mut w = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let (a, b) = (i + 1, j + 1);
            w[(i, j)] = l[(a, b)] + (l[(a, 0)] * p[j] - lambda.lowered_time_column(b) * p[i]) / (p0 + 1.0);
        }
    }
    WignerRate(w)
}

/// Closed-form `w^1_3 = −e^{−B}(A′ − 1/z) M(q, p)` for a circular orbit.
pub fn wigner_rate_w13(model: &dyn MetricModel, z: f64, q: f64, p: f64) -> Result<f64> {
    Ok(-curvature_acceleration(model, z)? * momentum_factor(q, p))
}

/// Full 3×3 rate for a circular orbit, built from the generator; the
/// particle momentum lies along the 3-axis.
pub fn circular_wigner_rate(model: &dyn MetricModel, z: f64, q: f64, p: f64) -> Result<WignerRate> {
    Ok(wigner_rate(&lambda_circular(model, z, q)?, [0.0, 0.0, p]))
}

/// Rate for radial motion; the particle momentum is collinear with the
/// motion, so this is identically zero.
pub fn radial_wigner_rate(model: &dyn MetricModel, z: f64, v: f64, p: f64) -> Result<WignerRate> {
    Ok(wigner_rate(&lambda_radial(model, z, v)?, [p, 0.0, 0.0]))
}

/// Physical configuration of the circular-orbit experiment around a
/// charged black hole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitParams {
    pub xi2: f64,
    pub z: f64,
    pub q: f64,
    pub beta: f64,
    pub tau_ratio: f64,
}

impl OrbitParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.xi2, self.z, self.q, self.beta, self.tau_ratio]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::domain("orbit parameters must be finite"));
        }
        if self.xi2 < 0.0 {
            return Err(Error::domain(format!("xi2 must be ≥ 0, got {}", self.xi2)));
        }
        if !(self.beta > 0.0) {
            return Err(Error::domain(format!("beta must be > 0, got {}", self.beta)));
        }
        if self.tau_ratio < 0.0 {
            return Err(Error::domain(format!("tau_ratio must be ≥ 0, got {}", self.tau_ratio)));
        }
        if !(self.z > 0.0) {
            return Err(Error::domain(format!("z must be > 0, got {}", self.z)));
        }
        if let Some(outer) = spacetime::outer_horizon(self.xi2) {
            if self.z <= outer {
                return Err(Error::Horizon {
                    z: self.z,
                    lapse_squared: 1.0 - 1.0 / self.z + self.xi2 / (self.z * self.z),
                });
            }
        }
        Ok(())
    }
}

/// Radial profile `(2z² − 3z + 4ξ²) / (2z² √(z² − z + ξ²))` of the charged-hole
/// rotation rate.
pub fn orbit_profile(xi2: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("radius must be positive and finite, got {z}")));
    }
    let quad = z * z - z + xi2;
    let lapse_squared = quad / (z * z);
    if !(lapse_squared >= HORIZON_TOL) {
        return Err(Error::Horizon { z, lapse_squared });
    }
    Ok((2.0 * z * z - 3.0 * z + 4.0 * xi2) / (2.0 * z * z * quad.sqrt()))
}

/// Accumulated Wigner angle `Θ(p)` for a circular orbit around a charged
/// hole, with the `2π` of the photon period absorbed so `tau_ratio = τ/τ_s`.
pub fn theta_circular(params: &OrbitParams, p: f64) -> Result<f64> {
    let profile = orbit_profile(params.xi2, params.z)?;
    Ok(2.0 * PI * params.tau_ratio * profile * momentum_factor(params.q, p))
}

/// `Θ` for an arbitrary metric model: `2π (τ/τ_s) w^1_3`.
pub fn theta_circular_model(model: &dyn MetricModel, z: f64, q: f64, tau_ratio: f64, p: f64) -> Result<f64> {
    Ok(2.0 * PI * tau_ratio * wigner_rate_w13(model, z, q, p)?)
}

/// Radii outside the outer horizon where `Θ` vanishes for every momentum.
pub fn theta_zeros(xi2: f64) -> Vec<f64> {
    let disc = 9.0 - 32.0 * xi2;
    if !(disc >= 0.0) {
        return Vec::new();
    }
    let s = disc.sqrt();
    let floor = spacetime::outer_horizon(xi2).unwrap_or(0.0);
    let mut roots = vec![(3.0 - s) / 4.0, (3.0 + s) / 4.0];
    roots.dedup();
    roots.retain(|&z| z > floor && z > 0.0);
    roots
}

/// Rotation by `theta` about the 2-axis.
pub fn rotation_matrix(theta: f64) -> Matrix3<f64> {
    let (s, c) = theta.sin_cos();
    Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
}

/// Rotation angle of a rotation about the 2-axis.
pub fn angle_about_2_axis(rotation: &Matrix3<f64>) -> f64 {
    rotation[(0, 2)].atan2(rotation[(0, 0)])
}

/// Spin-½ representation `D(θ) = exp(−i J₂ θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinRotation(pub Matrix2<Complex64>);

pub fn spin_rep(theta: f64) -> SpinRotation {
    let (s, c) = (0.5 * theta).sin_cos();
    let r = |x: f64| Complex64::new(x, 0.0);
    SpinRotation(Matrix2::new(r(c), r(-s), r(s), r(c)))
}

fn pauli() -> [Matrix2<Complex64>; 3] {
    let (o, l, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
    [
        Matrix2::new(o, l, l, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(l, o, o, -l),
    ]
}

impl SpinRotation {
    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn unitarity_residual(&self) -> f64 {
        let d = self.0;
        (d * d.adjoint() - Matrix2::identity()).map(|c| c.norm()).max()
    }

    pub fn determinant(&self) -> Complex64 {
        self.0.determinant()
    }

    /// The SO(3) image `R_ij = ½ tr(σ_i D σ_j D†)`.
    pub fn adjoint_rotation(&self) -> Matrix3<f64> {
        let s = pauli();
        let d = self.0;
        Matrix3::from_fn(|i, j| 0.5 * (s[i] * d * s[j] * d.adjoint()).trace().re)
    }
}

fn one_norm<const N: usize>(m: &SMatrix<f64, N, N>) -> f64 {
    m.column_iter().map(|c| c.abs().sum()).fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring of a Taylor series.
pub fn expm<const N: usize>(m: &SMatrix<f64, N, N>) -> SMatrix<f64, N, N> {
    let norm = one_norm(m);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let scaled = m * 0.5f64.powi(squarings);
    let mut result = SMatrix::<f64, N, N>::identity();
    let mut term = SMatrix::<f64, N, N>::identity();
    for k in 1..=30 {
        term = term * scaled / k as f64;
        result += term;
        if one_norm(&term) <= f64::EPSILON * one_norm(&result) {
            break;
        }
    }
    for _ in 0..squarings {
        result = result * result;
    }
    result
}

/// Time-ordered exponential `T exp ∫ rate(τ) dτ` over `[tau_i, tau_f]`.
///
/// Each step contributes `exp(rate(τ_mid) Δτ)`; later steps multiply from
/// the left. Second order in `Δτ`.
pub fn product_integral<const N: usize, F>(rate: F, tau_i: f64, tau_f: f64, steps: usize) -> Result<SMatrix<f64, N, N>>
where
    F: Fn(f64) -> SMatrix<f64, N, N>,
{
    if steps == 0 {
        return Err(Error::domain("product integral needs at least one step"));
    }
    if !tau_i.is_finite() || !tau_f.is_finite() {
        return Err(Error::domain("non-finite integration interval"));
    }
    let h = (tau_f - tau_i) / steps as f64;
    let mut acc = SMatrix::<f64, N, N>::identity();
    for k in 0..steps {
        let mid = tau_i + (k as f64 + 0.5) * h;
        let r = rate(mid);
        if !r.iter().all(|v| v.is_finite()) {
            return Err(Error::domain(format!("non-finite rate at τ = {mid}")));
        }
        acc = expm(&(r * h)) * acc;
    }
    Ok(acc)
}

/// Rotation factor of the polar decomposition `Λ = P U` (`P` symmetric
/// positive definite, `U` orthogonal), returned as its spatial 3×3 block.
/// For a Lorentz transformation `P` is the boost and `U` the rotation.
pub fn rotation_part(lambda: &Matrix4<f64>) -> Result<Matrix3<f64>> {
    let svd = lambda.svd(true, true);
    let (Some(u), Some(v_t)) = (svd.u, svd.v_t) else {
        return Err(Error::Numerical("SVD failed in polar decomposition".into()));
    };
    let orthogonal = u * v_t;
    Ok(orthogonal.fixed_view::<3, 3>(1, 1).into_owned())
}

/// Static-frame Schwarzschild rate `((1 − 3/(2r)) / (r √(1 − 1/r))) M(q, p)`.
pub fn schwarzschild_rate(r: f64, q: f64, p: f64) -> Result<f64> {
    if !r.is_finite() {
        return Err(Error::domain("non-finite radius"));
    }
    let lapse_squared = 1.0 - 1.0 / r;
    if !(r > 1.0) || lapse_squared < HORIZON_TOL {
        return Err(Error::Horizon { z: r, lapse_squared });
    }
    Ok((1.0 - 1.5 / r) / (r * lapse_squared.sqrt()) * momentum_factor(q, p))
}

/// Kruskal-frame rate `(1/(4r)) √(e^{−r}/r) (3 + r) M(q̃, p̃)`, regular at `r = 1`.
pub fn kruskal_rate(r: f64, q: f64, p: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("Kruskal rate needs r > 0, got {r}")));
    }
    Ok(((-r).exp() / r).sqrt() * (3.0 + r) / (4.0 * r) * momentum_factor(q, p))
}
