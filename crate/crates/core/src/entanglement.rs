//! Two-spin reduced states after a momentum-dependent Wigner rotation, and
//! their concurrence and entanglement of formation.
//!
//! Spin basis ordering is `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩` (index `2 σ₁ + σ₂`).

use std::fmt;

use nalgebra::{DMatrix, Matrix4, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{gaussian_expectation, QuadConfig, QuadReport};

/// Entrywise agreement required between the closed form and the direct
/// component integrals.
pub const CONSISTENCY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BellState {
    Chi1,
    Chi2,
    Chi3,
    Chi4,
}

impl BellState {
    pub const ALL: [BellState; 4] = [BellState::Chi1, BellState::Chi2, BellState::Chi3, BellState::Chi4];

    /// `(1,0,0,1)/√2`, `(1,0,0,−1)/√2`, `(0,1,1,0)/√2`, `(0,1,−1,0)/√2`.
    pub fn vector(self) -> [f64; 4] {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            BellState::Chi1 => [h, 0.0, 0.0, h],
            BellState::Chi2 => [h, 0.0, 0.0, -h],
            BellState::Chi3 => [0.0, h, h, 0.0],
            BellState::Chi4 => [0.0, h, -h, 0.0],
        }
    }

    pub fn projector(self) -> DensityMatrix4 {
        let v = self.vector();
        DensityMatrix4(Matrix4::from_fn(|i, j| Complex64::new(v[i] * v[j], 0.0)))
    }

    pub fn name(self) -> &'static str {
        match self {
            BellState::Chi1 => "chi1",
            BellState::Chi2 => "chi2",
            BellState::Chi3 => "chi3",
            BellState::Chi4 => "chi4",
        }
    }
}

impl fmt::Display for BellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BellState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "chi1" | "1" => Ok(BellState::Chi1),
            "chi2" | "2" => Ok(BellState::Chi2),
            "chi3" | "3" => Ok(BellState::Chi3),
            "chi4" | "4" => Ok(BellState::Chi4),
            other => Err(Error::domain(format!("unknown Bell state {other:?} (expected chi1..chi4)"))),
        }
    }
}

/// Gaussian momentum weight `exp(−(p−q)²/β²) / (√π β)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumDistribution {
    pub q: f64,
    pub beta: f64,
}

impl MomentumDistribution {
    pub fn new(q: f64, beta: f64) -> Result<Self> {
        if !q.is_finite() || !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::domain(format!("invalid momentum distribution q = {q}, beta = {beta}")));
        }
        Ok(Self { q, beta })
    }

    pub fn weight(&self, p: f64) -> f64 {
        let u = (p - self.q) / self.beta;
        (-u * u).exp() / (std::f64::consts::PI.sqrt() * self.beta)
    }

    /// Momentum at standardised coordinate `u = (p − q)/β`.
    pub fn momentum(&self, u: f64) -> f64 {
        self.q + self.beta * u
    }

    /// `E[f(p)]` under this distribution.
    pub fn expectation<const K: usize, F>(&self, f: F, quad: &QuadConfig) -> Result<([f64; K], QuadReport)>
    where
        F: Fn(f64) -> [f64; K],
    {
        gaussian_expectation(|u| f(self.momentum(u)), quad)
    }
}

/// Averages `𝒞 = ⟨cos Θ⟩`, `𝒮 = ⟨sin Θ⟩` over the momentum distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigMoments {
    pub c: f64,
    pub s: f64,
    pub report: Option<QuadReport>,
}

impl TrigMoments {
    pub fn new(c: f64, s: f64) -> Self {
        Self { c, s, report: None }
    }

    /// `𝒞² + 𝒮²`, which is also the concurrence of every reduced state.
    pub fn coherence(&self) -> f64 {
        self.c * self.c + self.s * self.s
    }
}

pub fn trig_moments<F>(theta_fn: F, dist: &MomentumDistribution, quad: &QuadConfig) -> Result<TrigMoments>
where
    F: Fn(f64) -> f64,
{
    let ([c, s], report) = dist.expectation(
        |p| {
            let (s, c) = theta_fn(p).sin_cos();
            [c, s]
        },
        quad,
    )?;
    Ok(TrigMoments {
        c,
        s,
        report: Some(report),
    })
}

/// 4×4 two-spin density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4(pub Matrix4<Complex64>);

impl DensityMatrix4 {
    pub fn from_real(m: Matrix4<f64>) -> Self {
        Self(m.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    pub fn hermiticity_residual(&self) -> f64 {
        (self.0 - self.0.adjoint()).map(|c| c.norm()).max()
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues(&self.0)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Largest entrywise distance to `other`.
    pub fn max_deviation(&self, other: &DensityMatrix4) -> f64 {
        (self.0 - other.0).map(|c| c.norm()).max()
    }

    /// Checks Hermiticity (1e-12), unit trace (1e-10) and positivity (−1e-10).
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_residual();
        if herm >= 1e-12 {
            return Err(Error::Numerical(format!("density matrix not Hermitian (residual {herm:e})")));
        }
        let tr = self.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() >= 1e-10 {
            return Err(Error::Numerical(format!("density matrix trace is {tr}")));
        }
        let min = self.min_eigenvalue();
        if min <= -1e-10 {
            return Err(Error::Numerical(format!("density matrix has eigenvalue {min:e}")));
        }
        Ok(())
    }
}

fn hermitize(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    (m + m.adjoint()).map(|c| c * 0.5)
}

fn hermitian_eigenvalues(m: &Matrix4<Complex64>) -> [f64; 4] {
    let eig = SymmetricEigen::new(hermitize(m));
    let mut v: [f64; 4] = eig.eigenvalues.into();
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

/// Reduced state from the averaged moments.
///
/// χ₁ and χ₄ depend only on `⟨cos(Θ₁ − Θ₂)⟩ = 𝒞² + 𝒮²`; χ₂ and χ₃ on
/// `⟨cos(Θ₁ + Θ₂)⟩ = 𝒞² − 𝒮²` and `⟨sin(Θ₁ + Θ₂)⟩ = 2𝒞𝒮`, with the sign of
/// the latter fixed by `D(Θ) = exp(−i J₂ Θ)`.
pub fn reduced_density_closed(bell: BellState, m: &TrigMoments) -> DensityMatrix4 {
    let k = m.coherence();
    let x = m.c * m.c - m.s * m.s;
    let y = 2.0 * m.c * m.s;
    let rows = match bell {
        BellState::Chi1 | BellState::Chi4 => {
            let sign = if bell == BellState::Chi1 { 1.0 } else { -1.0 };
            let (outer, inner) = (1.0 + sign * k, 1.0 - sign * k);
            [
                [outer, 0.0, 0.0, outer],
                [0.0, inner, -inner, 0.0],
                [0.0, -inner, inner, 0.0],
                [outer, 0.0, 0.0, outer],
            ]
        }
        BellState::Chi2 | BellState::Chi3 => {
            let sign = if bell == BellState::Chi2 { 1.0 } else { -1.0 };
            let (outer, inner, y) = (1.0 + sign * x, 1.0 - sign * x, sign * y);
            [
                [outer, y, y, -outer],
                [y, inner, inner, -y],
                [y, inner, inner, -y],
                [-outer, -y, -y, outer],
            ]
        }
    };
    DensityMatrix4::from_real(Matrix4::from_fn(|i, j| 0.25 * rows[i][j]))
}

/// Per-particle averages of the half-angle products entering `D ⊗ D`.
#[derive(Debug, Clone, Copy)]
struct HalfAngleMoments {
    cc: f64,
    ss: f64,
    cs: f64,
}

impl HalfAngleMoments {
    /// `E[D_{as} D_{bt}]` for real `D = [[c, −s], [s, c]]`.
    fn pair(&self, a: usize, s: usize, b: usize, t: usize) -> f64 {
        // D_{as} = sign · (c if a == s else s)
        let entry = |row: usize, col: usize| -> (bool, f64) {
            if row == col {
                (true, 1.0)
            } else if row == 0 {
                (false, -1.0)
            } else {
                (false, 1.0)
            }
        };
        let (first_cos, s1) = entry(a, s);
        let (second_cos, s2) = entry(b, t);
        let value = match (first_cos, second_cos) {
            (true, true) => self.cc,
            (false, false) => self.ss,
            _ => self.cs,
        };
        s1 * s2 * value
    }
}

fn half_angle_moments<F>(theta_fn: &F, dist: &MomentumDistribution, quad: &QuadConfig) -> Result<(HalfAngleMoments, QuadReport)>
where
    F: Fn(f64) -> f64,
{
    let ([cc, ss, cs], report) = dist.expectation(
        |p| {
            let (s, c) = (0.5 * theta_fn(p)).sin_cos();
            [c * c, s * s, c * s]
        },
        quad,
    )?;
    Ok((HalfAngleMoments { cc, ss, cs }, report))
}

/// Reduced state from the component integrals: each particle's `D(Θ)`
/// averaged independently, then contracted with the Bell amplitudes.
pub fn reduced_density_bruteforce<F>(
    bell: BellState,
    theta_fn: F,
    dist: &MomentumDistribution,
    quad: &QuadConfig,
) -> Result<(DensityMatrix4, QuadReport)>
where
    F: Fn(f64) -> f64,
{
    let (m, report) = half_angle_moments(&theta_fn, dist, quad)?;
    let chi = bell.vector();
    let rho = Matrix4::from_fn(|row, col| {
        let (a, b) = (row >> 1, row & 1);
        let (c, d) = (col >> 1, col & 1);
        let mut acc = 0.0;
        for (ket, &amp_ket) in chi.iter().enumerate() {
            if amp_ket == 0.0 {
                continue;
            }
            let (s1, s2) = (ket >> 1, ket & 1);
            for (bra, &amp_bra) in chi.iter().enumerate() {
                if amp_bra == 0.0 {
                    continue;
                }
                let (t1, t2) = (bra >> 1, bra & 1);
                acc += amp_ket * amp_bra * m.pair(a, s1, c, t1) * m.pair(b, s2, d, t2);
            }
        }
        acc
    });
    Ok((DensityMatrix4::from_real(rho), report))
}

/// Reduced state together with the moments it was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState {
    pub moments: TrigMoments,
    pub density: DensityMatrix4,
    /// Entrywise distance between closed form and component integrals.
    pub deviation: f64,
    /// `false` when the closed form disagreed with the component integrals;
    /// `density` then holds the component-integral result.
    pub consistent: bool,
}

/// Closed-form reduced state, cross-checked against the component integrals.
pub fn reduced_state<F>(bell: BellState, theta_fn: F, dist: &MomentumDistribution, quad: &QuadConfig) -> Result<SpinState>
where
    F: Fn(f64) -> f64,
{
    let moments = trig_moments(&theta_fn, dist, quad)?;
    let closed = reduced_density_closed(bell, &moments);
    let (brute, _) = reduced_density_bruteforce(bell, &theta_fn, dist, quad)?;
    let deviation = closed.max_deviation(&brute);
    let consistent = deviation <= CONSISTENCY_TOL;
    Ok(SpinState {
        moments,
        density: if consistent { closed } else { brute },
        deviation,
        consistent,
    })
}

/// `(σ_y ⊗ σ_y) ϱ* (σ_y ⊗ σ_y)`.
pub fn spin_flip(rho: &DensityMatrix4) -> DensityMatrix4 {
    // σ_y ⊗ σ_y is real: antidiagonal (−1, 1, 1, −1).
    let mut yy = Matrix4::<Complex64>::zeros();
    for (i, sign) in [-1.0, 1.0, 1.0, -1.0].into_iter().enumerate() {
        yy[(i, 3 - i)] = Complex64::new(sign, 0.0);
    }
    DensityMatrix4(yy * rho.0.map(|c| c.conj()) * yy)
}

/// Eigenvalues of `ϱ` below this are treated as exact zeros.
const RANK_TOL: f64 = 1e-13;

/// Square roots `λᵢ` of the eigenvalues of `ϱ ϱ̃`, descending.
///
/// With `ϱ = W W†` they are the singular values of `Wᵀ (σ_y ⊗ σ_y) W`,
/// which avoids square roots of near-zero eigenvalues.
pub fn spin_flip_singular_values(rho: &DensityMatrix4) -> Result<[f64; 4]> {
    let eig = SymmetricEigen::new(hermitize(&rho.0));
    let min = eig.eigenvalues.min();
    if min < -1e-6 {
        return Err(Error::Numerical(format!("matrix is not positive semidefinite (eigenvalue {min:e})")));
    }
    let kept: Vec<usize> = (0..4).filter(|&k| eig.eigenvalues[k] > RANK_TOL).collect();
    let mut out = [0.0; 4];
    if kept.is_empty() {
        return Ok(out);
    }
    let w = DMatrix::from_fn(4, kept.len(), |i, j| {
        let k = kept[j];
        eig.eigenvectors[(i, k)] * eig.eigenvalues[k].sqrt()
    });
    let mut yy = DMatrix::<Complex64>::zeros(4, 4);
    for (i, sign) in [-1.0, 1.0, 1.0, -1.0].into_iter().enumerate() {
        yy[(i, 3 - i)] = Complex64::new(sign, 0.0);
    }
    let tau = w.transpose() * yy * w;
    let mut sv: Vec<f64> = tau.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    out[..sv.len()].copy_from_slice(&sv);
    Ok(out)
}

/// Eigenvalues of `ϱ ϱ̃`, descending.
pub fn spin_flip_eigenvalues(rho: &DensityMatrix4) -> Result<[f64; 4]> {
    Ok(spin_flip_singular_values(rho)?.map(|l| l * l))
}

/// Wootters concurrence `max{0, λ₁ − λ₂ − λ₃ − λ₄}`.
pub fn wootters_concurrence(rho: &DensityMatrix4) -> Result<f64> {
    let l = spin_flip_singular_values(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

/// Binary entropy in bits, with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// Entanglement of formation `h((1 + √(1 − C²)) / 2)`.
pub fn entanglement_of_formation(concurrence: f64) -> Result<f64> {
    const SLACK: f64 = 1e-12;
    if !(-SLACK..=1.0 + SLACK).contains(&concurrence) {
        return Err(Error::domain(format!("concurrence must lie in [0, 1], got {concurrence}")));
    }
    let c = concurrence.clamp(0.0, 1.0);
    Ok(binary_entropy(0.5 * (1.0 + (1.0 - c * c).sqrt())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn bell_states_orthonormal() {
        for a in BellState::ALL {
            for b in BellState::ALL {
                let dot: f64 = a.vector().iter().zip(b.vector()).map(|(x, y)| x * y).sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-15);
            }
        }
        assert_eq!("chi3".parse::<BellState>().unwrap(), BellState::Chi3);
        assert!("chi5".parse::<BellState>().is_err());
    }

    #[test]
    fn distribution_normalised() {
        let d = MomentumDistribution::new(0.6, 4.0).unwrap();
        let ([one], _) = d.expectation(|_| [1.0], &quad()).unwrap();
        assert!((one - 1.0).abs() < 1e-12);
        // direct Riemann sum of the weight itself
        let h = 1e-3;
        let total: f64 = (-60_000..=60_000).map(|i| d.weight(0.6 + i as f64 * h) * h).sum();
        assert!((total - 1.0).abs() < 1e-10);
        assert!(MomentumDistribution::new(0.0, 0.0).is_err());
    }

    #[test]
    fn constant_angle_moments() {
        let d = MomentumDistribution::new(0.3, 1.0).unwrap();
        let m = trig_moments(|_| 0.9, &d, &quad()).unwrap();
        assert!((m.c - 0.9f64.cos()).abs() < 1e-14);
        assert!((m.s - 0.9f64.sin()).abs() < 1e-14);
    }

    #[test]
    fn narrow_distribution_limit() {
        let d = MomentumDistribution::new(0.6, 1e-6).unwrap();
        let theta = |p: f64| 3.0 * p * p + 1.0;
        let m = trig_moments(theta, &d, &quad()).unwrap();
        assert!((m.c - theta(0.6).cos()).abs() < 1e-6);
        assert!((m.s - theta(0.6).sin()).abs() < 1e-6);
        assert!((m.coherence() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn linear_angle_matches_characteristic_function() {
        for &(a, b, q, beta) in &[(0.3, 1.7, 0.6, 1.0), (-1.0, 6.0, 2.0, 4.0), (2.0, -0.5, -1.0, 0.25)] {
            let d = MomentumDistribution::new(q, beta).unwrap();
            let m = trig_moments(|p| a + b * p, &d, &quad()).unwrap();
            let damp = (-(beta * b) * (beta * b) / 4.0).exp();
            assert!((m.c - damp * (a + b * q).cos()).abs() < 1e-10);
            assert!((m.s - damp * (a + b * q).sin()).abs() < 1e-10);
        }
    }

    #[test]
    fn closed_form_special_values() {
        let rho = reduced_density_closed(BellState::Chi1, &TrigMoments::new(1.0, 0.0));
        assert!(rho.max_deviation(&BellState::Chi1.projector()) < 1e-15);
        let rho = reduced_density_closed(BellState::Chi1, &TrigMoments::new(0.0, 0.0));
        let expect = Matrix4::new(
            1.0, 0.0, 0.0, 1.0, 0.0, 1.0, -1.0, 0.0, 0.0, -1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0,
        ) * 0.25;
        assert!(rho.max_deviation(&DensityMatrix4::from_real(expect)) < 1e-15);
        assert!(wootters_concurrence(&rho).unwrap() < 1e-12);
        for bell in BellState::ALL {
            let rho = reduced_density_closed(bell, &TrigMoments::new(1.0, 0.0));
            assert!(rho.max_deviation(&bell.projector()) < 1e-15, "{bell}");
        }
    }

    #[test]
    fn closed_form_matches_component_integrals() {
        let d = MomentumDistribution::new(0.4, 0.8).unwrap();
        let theta = |p: f64| 1.1 + 2.0 * p - 0.3 * p * p;
        let m = trig_moments(theta, &d, &quad()).unwrap();
        assert!(m.s.abs() > 0.05, "test needs 𝒮 ≠ 0");
        for bell in BellState::ALL {
            let closed = reduced_density_closed(bell, &m);
            let (brute, _) = reduced_density_bruteforce(bell, theta, &d, &quad()).unwrap();
            assert!(closed.max_deviation(&brute) < 1e-10, "{bell}: {}", closed.max_deviation(&brute));
        }
    }

    #[test]
    fn bruteforce_identity_rotation() {
        let d = MomentumDistribution::new(0.0, 1.0).unwrap();
        for bell in BellState::ALL {
            let (rho, _) = reduced_density_bruteforce(bell, |_| 0.0, &d, &quad()).unwrap();
            assert!(rho.max_deviation(&bell.projector()) < 1e-14);
        }
    }

    #[test]
    fn concurrence_of_standard_states() {
        for bell in BellState::ALL {
            assert!((wootters_concurrence(&bell.projector()).unwrap() - 1.0).abs() < 1e-12);
        }
        let mixed = DensityMatrix4::from_real(Matrix4::identity() * 0.25);
        assert!(wootters_concurrence(&mixed).unwrap() < 1e-12);
        // product state |↑↓⟩
        let mut prod = Matrix4::zeros();
        prod[(1, 1)] = 1.0;
        assert!(wootters_concurrence(&DensityMatrix4::from_real(prod)).unwrap() < 1e-12);
    }

    #[test]
    fn concurrence_rejects_non_psd() {
        let mut bad = Matrix4::identity() * 0.25;
        bad[(0, 0)] = -0.5;
        bad[(3, 3)] = 1.0;
        assert!(matches!(
            wootters_concurrence(&DensityMatrix4::from_real(bad)),
            Err(Error::Numerical(_))
        ));
    }

    #[test]
    fn complex_werner_like_state() {
        // Phase-rotated Bell state mixed with noise: C = max(0, (3p − 1)/2).
        let phase = Complex64::from_polar(1.0, 0.7);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = [Complex64::new(h, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), phase * h];
        for p in [0.2, 0.5, 0.9] {
            let pure = Matrix4::from_fn(|i, j| v[i] * v[j].conj());
            let rho = DensityMatrix4(pure * Complex64::new(p, 0.0) + Matrix4::identity() * Complex64::new((1.0 - p) / 4.0, 0.0));
            rho.validate().unwrap();
            let c = wootters_concurrence(&rho).unwrap();
            assert!((c - ((3.0 * p - 1.0) / 2.0).max(0.0)).abs() < 1e-10, "p = {p}: {c}");
        }
    }

    #[test]
    fn entanglement_of_formation_values() {
        assert!((entanglement_of_formation(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(entanglement_of_formation(0.0).unwrap(), 0.0);
        // h((1 + √0.75)/2), evaluated independently to 16 digits
        assert!((entanglement_of_formation(0.5).unwrap() - 0.354_578_902_665_269_88).abs() < 1e-12);
        assert!(entanglement_of_formation(1.1).is_err());
        assert!(entanglement_of_formation(-0.1).is_err());
        assert!(entanglement_of_formation(f64::NAN).is_err());
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
    }

    #[test]
    fn reduced_state_reports_consistency() {
        let d = MomentumDistribution::new(0.6, 1.0).unwrap();
        let st = reduced_state(BellState::Chi2, |p| 2.0 * p, &d, &quad()).unwrap();
        assert!(st.consistent);
        assert!(st.deviation < 1e-10);
    }
}
