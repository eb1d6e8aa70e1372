//! Standard boosts, Wigner rotations and the spin-1/2 representation.

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3};
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::transport::{LocalVector, LorentzGenerator, LorentzTransform};

/// An on-shell four-momentum `p^a = (√(|p|² + m²), p)` (with `c = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalMomentum {
    p: [f64; 4],
    mass: f64,
}

impl LocalMomentum {
    /// Puts the spatial momentum on the mass shell.
    pub fn on_shell(spatial: [f64; 3], mass: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(invalid("mass", "must be positive"));
        }
        let p2: f64 = spatial.iter().map(|x| x * x).sum();
        let e = (p2 + mass * mass).sqrt();
        Ok(Self {
            p: [e, spatial[0], spatial[1], spatial[2]],
            mass,
        })
    }

    /// Momentum along axis 3 only, the packet's one-dimensional support.
    pub fn along_z(p3: f64, mass: f64) -> Result<Self> {
        Self::on_shell([0.0, 0.0, p3], mass)
    }

    pub fn rest(mass: f64) -> Result<Self> {
        Self::on_shell([0.0; 3], mass)
    }

    /// Accepts a full four-vector if it is on the shell to `1e-12` relative.
    pub fn from_four(p: [f64; 4], mass: f64) -> Result<Self> {
        let shell = Self::on_shell([p[1], p[2], p[3]], mass)?;
        if !(p[0] > 0.0) || (shell.p[0] - p[0]).abs() > 1e-12 * shell.p[0] {
            return Err(Error::Invariant(format!(
                "momentum {p:?} is off the mass shell for m = {mass}"
            )));
        }
        Ok(Self { p, mass })
    }

    pub fn four(&self) -> [f64; 4] {
        self.p
    }

    pub fn energy(&self) -> f64 {
        self.p[0]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.p[1], self.p[2], self.p[3]]
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Invariant measure `N(p) = m / p^0`.
    pub fn measure(&self) -> f64 {
        self.mass / self.p[0]
    }

    pub fn as_local(&self) -> LocalVector {
        LocalVector(self.p)
    }
}

/// The pure boost carrying `(m, 0)` to `p`:
/// `L^0_0 = γ`, `L^0_i = L^i_0 = p^i/m`, `L^i_k = δ_ik + (γ−1) p^i p^k / |p|²`.
///
/// `(γ−1)/|p|²` is evaluated as `1/(m²(γ+1))`, which is regular at `p = 0`.
pub fn standard_boost(p: &LocalMomentum) -> LorentzTransform {
    let m = p.mass;
    let u = [p.p[1] / m, p.p[2] / m, p.p[3] / m];
    let gamma = p.p[0] / m;
    let mut l = Matrix4::identity();
    l[(0, 0)] = gamma;
    for i in 0..3 {
        l[(0, i + 1)] = u[i];
        l[(i + 1, 0)] = u[i];
        for k in 0..3 {
            l[(i + 1, k + 1)] += u[i] * u[k] / (1.0 + gamma);
        }
    }
    LorentzTransform::from_matrix(l)
}

/// Directional derivative of the standard boost with respect to the spatial
/// momentum along `dp`.
fn standard_boost_derivative(p: &LocalMomentum, dp: [f64; 3]) -> Matrix4<f64> {
    let m = p.mass;
    let u = [p.p[1] / m, p.p[2] / m, p.p[3] / m];
    let du = dp.map(|x| x / m);
    let gamma = p.p[0] / m;
    let dgamma: f64 = (0..3).map(|i| u[i] * du[i]).sum::<f64>() / gamma;
    let g1 = 1.0 + gamma;
    let mut d = Matrix4::zeros();
    d[(0, 0)] = dgamma;
    for i in 0..3 {
        d[(0, i + 1)] = du[i];
        d[(i + 1, 0)] = du[i];
        for k in 0..3 {
            d[(i + 1, k + 1)] =
                (du[i] * u[k] + u[i] * du[k]) / g1 - u[i] * u[k] * dgamma / (g1 * g1);
        }
    }
    d
}

/// A little-group element: a spatial rotation embedded in 4×4 form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerRotation {
    matrix: Matrix4<f64>,
}

impl WignerRotation {
    pub fn identity() -> Self {
        Self {
            matrix: Matrix4::identity(),
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.matrix
    }

    /// Spatial 3×3 block.
    pub fn spatial(&self) -> Matrix3<f64> {
        self.matrix.fixed_view::<3, 3>(1, 1).into_owned()
    }

    /// Largest violation of the little-group structure: time row/column
    /// deviating from `(1, 0, 0, 0)`, non-orthogonality or `det ≠ 1`.
    pub fn residual(&self) -> f64 {
        let m = &self.matrix;
        let mut r = (m[(0, 0)] - 1.0).abs();
        for i in 1..4 {
            r = r.max(m[(0, i)].abs()).max(m[(i, 0)].abs());
        }
        let s = self.spatial();
        r = r.max((s.transpose() * s - Matrix3::identity()).abs().max());
        r.max((s.determinant() - 1.0).abs())
    }

    fn from_spatial(s: Matrix3<f64>) -> Self {
        let mut matrix = Matrix4::identity();
        matrix.fixed_view_mut::<3, 3>(1, 1).copy_from(&s);
        Self { matrix }
    }

    /// Right-handed rotation by `angle` about `axis` (normalized here).
    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Self {
        Self::from_spatial(rodrigues(Vector3::from(axis).normalize() * angle))
    }

    pub fn compose(&self, later: &WignerRotation) -> Self {
        Self {
            matrix: later.matrix * self.matrix,
        }
    }

    pub fn as_transform(&self) -> LorentzTransform {
        LorentzTransform::from_matrix(self.matrix)
    }
}

/// `exp` of the rotation generator whose axis-angle vector is `theta`.
fn rodrigues(theta: Vector3<f64>) -> Matrix3<f64> {
    let angle = theta.norm();
    if angle == 0.0 {
        return Matrix3::identity();
    }
    let n = theta / angle;
    let k = n.cross_matrix();
    Matrix3::identity() + k * angle.sin() + k * k * (1.0 - angle.cos())
}

/// `W(Λ, p) = L⁻¹(Λp) Λ L(p)`.
pub fn wigner_rotation(lambda_t: &LorentzTransform, p: &LocalMomentum) -> Result<WignerRotation> {
    let moved = lambda_t.apply(&p.as_local()).0;
    if !(moved[0] > 0.0) {
        return Err(Error::Invariant(format!(
            "transformed momentum has non-positive energy {}",
            moved[0]
        )));
    }
    let k = LocalMomentum::on_shell([moved[1], moved[2], moved[3]], p.mass)?;
    let w = standard_boost(&k).inverse() * *lambda_t * standard_boost(p);
    Ok(WignerRotation {
        matrix: *w.matrix(),
    })
}

/// Rate of the Wigner rotation for an infinitesimal transformation
/// `1 + λ dτ` at fixed momentum `p`: `d/dε W(exp(ελ), p)` at `ε = 0`.
pub fn wigner_generator(lambda: &LorentzGenerator, p: &LocalMomentum) -> LorentzGenerator {
    let l = standard_boost(p);
    let l_inv = l.inverse();
    let lp = lambda.matrix() * nalgebra::Vector4::from(p.four());
    let dl = standard_boost_derivative(p, [lp[1], lp[2], lp[3]]);
    LorentzGenerator::from_matrix(l_inv.matrix() * (lambda.matrix() * l.matrix() - dl))
}

/// Wigner rotation accumulated by a packet component whose local momentum
/// stays at `p` while the frame undergoes the time-ordered steps
/// `(λ_k, Δτ_k)`: the product of `exp(ω(λ_k, p) Δτ_k)`, later steps on the
/// left.
pub fn transported_wigner_rotation(
    samples: &[(LorentzGenerator, f64)],
    p: &LocalMomentum,
) -> WignerRotation {
    let mut total = Matrix3::identity();
    for (lambda, dtau) in samples {
        let omega = wigner_generator(lambda, p);
        let m = omega.matrix();
        // axis-angle rate from the antisymmetric spatial block
        let rate = Vector3::new(
            0.5 * (m[(3, 2)] - m[(2, 3)]),
            0.5 * (m[(1, 3)] - m[(3, 1)]),
            0.5 * (m[(2, 1)] - m[(1, 2)]),
        );
        total = rodrigues(rate * *dtau) * total;
    }
    WignerRotation::from_spatial(total)
}

/// Rotation axis (unit vector) and angle in `[0, π]`. The identity returns
/// angle 0 with axis `(0, 0, 1)`; at angle `π` the axis is chosen with its
/// first nonzero component positive.
pub fn rotation_angle_axis(w: &WignerRotation) -> ([f64; 3], f64) {
    let r = w.spatial();
    let v = Vector3::new(
        r[(2, 1)] - r[(1, 2)],
        r[(0, 2)] - r[(2, 0)],
        r[(1, 0)] - r[(0, 1)],
    );
    let sin2 = v.norm();
    let cos2 = r.trace() - 1.0;
    let angle = sin2.atan2(cos2);
    if angle == 0.0 || sin2 == 0.0 && cos2 > 0.0 {
        return ([0.0, 0.0, 1.0], 0.0);
    }
    let axis = if cos2 > -1.0 {
        v / sin2
    } else {
        // near π: n nᵀ = (R + Rᵀ − 2 cos θ I) / (2 (1 − cos θ))
        let c = cos2 / 2.0;
        let b = ((r + r.transpose()) * 0.5 - Matrix3::identity() * c) / (1.0 - c);
        let j = (0..3)
            .max_by(|&a, &b2| b[(a, a)].partial_cmp(&b[(b2, b2)]).unwrap())
            .unwrap();
        let mut n = b.column(j).into_owned() / b[(j, j)].max(0.0).sqrt();
        n.normalize_mut();
        if v.dot(&n) < 0.0 {
            n = -n;
        }
        if v.norm() < 1e-12 {
            let first = n.iter().copied().find(|x| x.abs() > 1e-12).unwrap_or(1.0);
            if first < 0.0 {
                n = -n;
            }
        }
        n
    };
    ([axis[0], axis[1], axis[2]], angle)
}

/// Angle of `w` as a signed rotation about `axis`, in `(−π, π]`.
pub fn signed_angle_about(w: &WignerRotation, axis: [f64; 3]) -> f64 {
    let (n, angle) = rotation_angle_axis(w);
    let d: f64 = (0..3).map(|i| n[i] * axis[i]).sum();
    if d < 0.0 && angle < std::f64::consts::PI {
        -angle
    } else {
        angle
    }
}

/// The Pauli matrices `(σ_x, σ_y, σ_z)`.
pub fn pauli() -> [Matrix2<Complex64>; 3] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        Matrix2::new(o, one, one, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(one, o, o, -one),
    ]
}

/// A 2×2 SU(2) matrix acting on `(↑, ↓)` spin amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinHalfRep {
    matrix: Matrix2<Complex64>,
}

impl SpinHalfRep {
    pub fn identity() -> Self {
        Self {
            matrix: Matrix2::identity(),
        }
    }

    /// `exp(−i (n·σ) θ / 2)`.
    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Self {
        let n = Vector3::from(axis).normalize();
        let s = pauli();
        let ns = s[0] * Complex64::from(n[0])
            + s[1] * Complex64::from(n[1])
            + s[2] * Complex64::from(n[2]);
        let half = angle / 2.0;
        Self {
            matrix: Matrix2::identity() * Complex64::from(half.cos())
                - ns * Complex64::new(0.0, half.sin()),
        }
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.matrix
    }

    pub fn unitarity_residual(&self) -> f64 {
        (self.matrix.adjoint() * self.matrix - Matrix2::identity())
            .iter()
            .fold(0.0_f64, |m, z| m.max(z.norm()))
    }

    pub fn determinant(&self) -> Complex64 {
        self.matrix.determinant()
    }

    pub fn apply(&self, state: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.matrix;
        [
            m[(0, 0)] * state[0] + m[(0, 1)] * state[1],
            m[(1, 0)] * state[0] + m[(1, 1)] * state[1],
        ]
    }
}

impl std::ops::Mul for SpinHalfRep {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            matrix: self.matrix * rhs.matrix,
        }
    }
}

/// `D^(1/2)(W)` for a Wigner rotation, via its axis and angle.
pub fn spin_half_rep(w: &WignerRotation) -> SpinHalfRep {
    let (axis, angle) = rotation_angle_axis(w);
    SpinHalfRep::from_axis_angle(axis, angle)
}
