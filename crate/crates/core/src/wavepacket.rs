//! Momentum-space wave packets with one-dimensional support along axis 3,
//! their reduced spin density matrices, and spin entropy.
//!
//! The transverse momenta are fixed at zero, so a packet lives on a grid of
//! `p³` values. Each grid weight already contains the invariant measure
//! `N(p) = m / p⁰`, so every momentum integral is a plain weighted sum.

use gauss_quad::GaussHermite;
use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::lorentz::{spin_half_rep, wigner_rotation, LocalMomentum, SpinHalfRep};
use crate::transport::LorentzTransform;

/// Nodes `p³_k` and weights `μ_k` with `∫ dp³ N(p) g(p) ≈ Σ μ_k g(p³_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    mass: f64,
}

impl MomentumGrid {
    /// A single node of unit weight: the sharp-momentum limit.
    pub fn single(p3: f64, mass: f64) -> Result<Self> {
        check_mass(mass)?;
        Ok(Self {
            nodes: vec![p3],
            weights: vec![1.0],
            mass,
        })
    }

    /// Trapezoid rule on `n` equally spaced nodes over `[lo, hi]`.
    pub fn uniform(lo: f64, hi: f64, n: usize, mass: f64) -> Result<Self> {
        check_mass(mass)?;
        if n < 2 {
            return Err(invalid("nodes", "a uniform grid needs at least two nodes"));
        }
        if !(hi > lo) {
            return Err(invalid("hi", "upper bound must exceed lower bound"));
        }
        let h = (hi - lo) / (n - 1) as f64;
        let nodes: Vec<f64> = (0..n).map(|k| lo + k as f64 * h).collect();
        let weights = nodes
            .iter()
            .enumerate()
            .map(|(k, &p)| {
                let end = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
                end * h * measure(p, mass)
            })
            .collect();
        Ok(Self {
            nodes,
            weights,
            mass,
        })
    }

    /// Gauss–Hermite nodes for the weight `exp(−(p − center)² / width²)`.
    pub fn gauss_hermite(center: f64, width: f64, n: usize, mass: f64) -> Result<Self> {
        check_mass(mass)?;
        if !(width > 0.0) {
            return Err(invalid("width", "must be positive"));
        }
        if n < 2 {
            return Err(invalid("nodes", "Gauss-Hermite needs at least two nodes"));
        }
        let rule = GaussHermite::new(n).map_err(|e| invalid("nodes", e.to_string()))?;
        let mut pairs: Vec<(f64, f64)> = rule.into_iter().collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let nodes = pairs
            .iter()
            .map(|&(x, _)| center + width * x)
            .collect::<Vec<_>>();
        let weights = pairs
            .iter()
            .zip(&nodes)
            .map(|(&(x, w), &p)| width * w * (x * x).exp() * measure(p, mass))
            .collect();
        Ok(Self {
            nodes,
            weights,
            mass,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn momentum(&self, k: usize) -> LocalMomentum {
        LocalMomentum::along_z(self.nodes[k], self.mass)
            .expect("grid mass validated on construction")
    }
}

fn check_mass(mass: f64) -> Result<()> {
    if !(mass > 0.0 && mass.is_finite()) {
        return Err(invalid("mass", "must be positive"));
    }
    Ok(())
}

fn measure(p3: f64, mass: f64) -> f64 {
    mass / (p3 * p3 + mass * mass).sqrt()
}

/// How to discretize a Gaussian packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridSpec {
    /// Gauss–Hermite nodes matched to the packet's Gaussian.
    GaussHermite { nodes: usize },
    /// Trapezoid nodes over `q³ ± half_width · w`.
    Uniform { nodes: usize, half_width: f64 },
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::GaussHermite { nodes: 129 }
    }
}

/// Amplitudes `C(p_k, σ)` for `σ ∈ {↑, ↓}` on a momentum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WavePacket {
    grid: MomentumGrid,
    up: Vec<Complex64>,
    down: Vec<Complex64>,
    width: f64,
}

impl WavePacket {
    /// Builds a packet from raw amplitudes and normalizes it on the grid.
    pub fn from_amplitudes(
        grid: MomentumGrid,
        up: Vec<Complex64>,
        down: Vec<Complex64>,
        width: f64,
    ) -> Result<Self> {
        if up.len() != grid.len() || down.len() != grid.len() {
            return Err(invalid("amplitudes", "length must match the grid"));
        }
        let norm = norm_on(&grid, &up, &down);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(invalid("amplitudes", "packet has zero or non-finite norm"));
        }
        let s = Complex64::from(1.0 / norm.sqrt());
        Ok(Self {
            up: up.into_iter().map(|c| c * s).collect(),
            down: down.into_iter().map(|c| c * s).collect(),
            grid,
            width,
        })
    }

    pub fn grid(&self) -> &MomentumGrid {
        &self.grid
    }

    pub fn up(&self) -> &[Complex64] {
        &self.up
    }

    pub fn down(&self) -> &[Complex64] {
        &self.down
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn mass(&self) -> f64 {
        self.grid.mass
    }

    /// `Σ_σ Σ_k μ_k |C(p_k, σ)|²`.
    pub fn norm(&self) -> f64 {
        norm_on(&self.grid, &self.up, &self.down)
    }

    /// Probability weight `μ_k Σ_σ |C(p_k, σ)|²` of each node.
    pub fn probabilities(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.grid.len())
            .map(move |k| self.grid.weights[k] * (self.up[k].norm_sqr() + self.down[k].norm_sqr()))
    }
}

fn norm_on(grid: &MomentumGrid, up: &[Complex64], down: &[Complex64]) -> f64 {
    (0..grid.len())
        .map(|k| grid.weights[k] * (up[k].norm_sqr() + down[k].norm_sqr()))
        .sum()
}

/// Spin-up packet, Gaussian in `p³` about `q3` with spread `w`:
/// `C(p, ↑) ∝ exp(−(p³ − q³)² / 2w²) / √N(p)`. `w = 0` gives the
/// single-node momentum eigenstate.
pub fn gaussian_packet(q3: f64, w: f64, mass: f64, spec: GridSpec) -> Result<WavePacket> {
    if !(w >= 0.0 && w.is_finite()) {
        return Err(invalid("w", "spread must be finite and non-negative"));
    }
    if !q3.is_finite() {
        return Err(invalid("q3", "must be finite"));
    }
    if w == 0.0 {
        let grid = MomentumGrid::single(q3, mass)?;
        return WavePacket::from_amplitudes(
            grid,
            vec![Complex64::from(1.0)],
            vec![Complex64::from(0.0)],
            0.0,
        );
    }
    let grid = match spec {
        GridSpec::GaussHermite { nodes } => MomentumGrid::gauss_hermite(q3, w, nodes, mass)?,
        GridSpec::Uniform { nodes, half_width } => {
            if !(half_width > 0.0) {
                return Err(invalid("half_width", "must be positive"));
            }
            MomentumGrid::uniform(q3 - half_width * w, q3 + half_width * w, nodes, mass)?
        }
    };
    let amp = |p: f64| {
        let x = (p - q3) / w;
        (-0.5 * x * x).exp() / (std::f64::consts::PI.sqrt() * w * measure(p, mass)).sqrt()
    };
    let up: Vec<Complex64> = grid
        .nodes
        .iter()
        .map(|&p| Complex64::from(amp(p)))
        .collect();
    let down = vec![Complex64::from(0.0); grid.len()];
    let raw = norm_on(&grid, &up, &down);
    if (1.0 - raw).abs() > 1e-6 {
        return Err(Error::Coverage { covered: raw });
    }
    WavePacket::from_amplitudes(grid, up, down, w)
}

/// A 2×2 spin density matrix in the `(↑, ↓)` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinDensityMatrix {
    matrix: Matrix2<Complex64>,
}

/// Eigenvalues with magnitude below this are rounding noise and read as 0.
const EIGEN_FLOOR: f64 = 1e-14;

impl SpinDensityMatrix {
    /// Accepts a matrix that is Hermitian with unit trace to `1e-12`.
    pub fn from_matrix(matrix: Matrix2<Complex64>) -> Result<Self> {
        let herm = (matrix - matrix.adjoint())
            .iter()
            .fold(0.0_f64, |m, z| m.max(z.norm()));
        if herm > 1e-12 {
            return Err(Error::Invariant(format!(
                "density matrix not Hermitian ({herm:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr - Complex64::from(1.0)).norm() > 1e-12 {
            return Err(Error::Invariant(format!("density matrix trace {tr}")));
        }
        Ok(Self { matrix })
    }

    /// `½ (I + r·σ)` for a Bloch vector `r`.
    pub fn from_bloch(r: [f64; 3]) -> Self {
        let s = crate::lorentz::pauli();
        let m = Matrix2::identity()
            + s[0] * Complex64::from(r[0])
            + s[1] * Complex64::from(r[1])
            + s[2] * Complex64::from(r[2]);
        Self {
            matrix: m * Complex64::from(0.5),
        }
    }

    pub fn pure(state: [Complex64; 2]) -> Result<Self> {
        let n = state[0].norm_sqr() + state[1].norm_sqr();
        if !(n > 0.0) {
            return Err(invalid("state", "zero vector"));
        }
        let mut m = Matrix2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = state[i] * state[j].conj() / n;
            }
        }
        Ok(Self { matrix: m })
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.matrix[(0, 0)].re;
        let d = self.matrix[(1, 1)].re;
        let b = self.matrix[(0, 1)];
        let mean = 0.5 * (a + d);
        let r = (0.5 * (a - d)).hypot(b.norm());
        [mean - r, mean + r]
    }

    pub fn bloch_vector(&self) -> [f64; 3] {
        let m = &self.matrix;
        [
            2.0 * m[(0, 1)].re,
            -2.0 * m[(0, 1)].im,
            (m[(0, 0)] - m[(1, 1)]).re,
        ]
    }

    /// `D ρ D†`.
    pub fn conjugated(&self, d: &SpinHalfRep) -> Self {
        Self {
            matrix: d.matrix() * self.matrix * d.matrix().adjoint(),
        }
    }
}

/// `ρ(σ′, σ) = Σ_k μ_k C(p_k, σ′) C*(p_k, σ)`.
pub fn reduced_density(packet: &WavePacket) -> SpinDensityMatrix {
    let mut m = Matrix2::zeros();
    for k in 0..packet.grid.len() {
        let c = [packet.up[k], packet.down[k]];
        let mu = Complex64::from(packet.grid.weights[k]);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] += mu * c[i] * c[j].conj();
            }
        }
    }
    SpinDensityMatrix { matrix: m }
}

/// Reduced density after rotating each node's spin by `rep(p_k)`.
pub fn evolve_spin_with<F>(packet: &WavePacket, mut rep: F) -> Result<SpinDensityMatrix>
where
    F: FnMut(&LocalMomentum) -> Result<SpinHalfRep>,
{
    let mut m = Matrix2::zeros();
    for k in 0..packet.grid.len() {
        let d = rep(&packet.grid.momentum(k))?;
        let c = d.apply([packet.up[k], packet.down[k]]);
        let mu = Complex64::from(packet.grid.weights[k]);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] += mu * c[i] * c[j].conj();
            }
        }
    }
    Ok(SpinDensityMatrix { matrix: m })
}

/// Reduced density matrix after the packet undergoes `lt`: each momentum
/// component picks up the spin rotation `D(W(Λ, p))`.
pub fn evolve_spin(packet: &WavePacket, lt: &LorentzTransform) -> Result<SpinDensityMatrix> {
    lt.check(1e-9)?;
    evolve_spin_with(packet, |p| Ok(spin_half_rep(&wigner_rotation(lt, p)?)))
}

/// `S = −Σ λ log₂ λ` in bits, with `0 log 0 = 0`. A state whose smaller
/// eigenvalue is below the floor counts as pure.
pub fn von_neumann_entropy(rho: &SpinDensityMatrix) -> Result<f64> {
    let [low, high] = rho.eigenvalues();
    if low < -1e-9 {
        return Err(Error::NegativeEigenvalue(low));
    }
    if low <= EIGEN_FLOOR {
        return Ok(0.0);
    }
    let high = high.min(1.0);
    Ok((-low * low.log2() - high * high.log2()).clamp(0.0, 1.0))
}

/// Binary entropy `−P log₂ P − (1 − P) log₂ (1 − P)`, zero when either
/// probability is below the floor.
pub fn binary_entropy(p: f64) -> f64 {
    let q = 1.0 - p;
    if p.min(q) <= EIGEN_FLOOR {
        return 0.0;
    }
    (-p * p.log2() - q * q.log2()).clamp(0.0, 1.0)
}

/// Weighted average `Σ_k μ_k Σ_σ |C(p_k, σ)|² f(p_k)` over the momentum
/// distribution.
pub fn momentum_average<F>(packet: &WavePacket, mut f: F) -> Complex64
where
    F: FnMut(&LocalMomentum) -> Complex64,
{
    let mut acc = Complex64::from(0.0);
    for (k, prob) in packet.probabilities().enumerate() {
        acc += f(&packet.grid.momentum(k)) * prob;
    }
    acc
}
