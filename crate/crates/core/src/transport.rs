//! Local Lorentz transformations accumulated by a wave packet whose centroid
//! follows a prescribed world line.
//!
//! At each proper time the centroid momentum seen in the local inertial
//! frame changes through two channels: the external force (four-acceleration)
//! and the rotation of the frame field itself along the path. Together they
//! form a generator `λ^a_b` of the Lorentz algebra; the finite transformation
//! is the time-ordered exponential of `λ`, later times acting on the left.

use nalgebra::Matrix4;

use crate::error::{invalid, Error, Result};
use crate::geometry::{eta, FrameField, Metric, Schwarzschild, SpacetimePoint};

/// Components `v^a` in a local inertial frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalVector(pub [f64; 4]);

impl LocalVector {
    pub fn components(&self) -> [f64; 4] {
        self.0
    }

    /// `v_a = η_{ab} v^b`.
    pub fn lowered(&self) -> [f64; 4] {
        let v = self.0;
        [-v[0], v[1], v[2], v[3]]
    }

    /// Minkowski product `η_{ab} v^a w^b`.
    pub fn dot(&self, other: &LocalVector) -> f64 {
        let a = self.lowered();
        (0..4).map(|i| a[i] * other.0[i]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

/// An element `λ^a_b` of the Lorentz algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzGenerator {
    matrix: Matrix4<f64>,
}

impl LorentzGenerator {
    pub fn zero() -> Self {
        Self {
            matrix: Matrix4::zeros(),
        }
    }

    /// Wraps a matrix without checking algebra membership.
    pub fn from_matrix(matrix: Matrix4<f64>) -> Self {
        Self { matrix }
    }

    /// Boost along spatial axis `axis` (1..=3) with unit rapidity rate.
    pub fn boost(axis: usize) -> Self {
        let mut m = Matrix4::zeros();
        m[(0, axis)] = 1.0;
        m[(axis, 0)] = 1.0;
        Self { matrix: m }
    }

    /// Right-handed rotation about spatial axis `axis` (1..=3) with unit rate.
    pub fn rotation(axis: usize) -> Self {
        let (i, k) = match axis {
            1 => (2, 3),
            2 => (3, 1),
            3 => (1, 2),
            _ => panic!("spatial axis must be 1, 2 or 3"),
        };
        let mut m = Matrix4::zeros();
        m[(i, k)] = -1.0;
        m[(k, i)] = 1.0;
        Self { matrix: m }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.matrix
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.matrix[(a, b)]
    }

    /// `max |η λ + (η λ)^T|`; zero for algebra elements.
    pub fn algebra_residual(&self) -> f64 {
        let lowered = eta() * self.matrix;
        (lowered + lowered.transpose()).abs().max()
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.abs().max()
    }

    pub fn is_finite(&self) -> bool {
        self.matrix.iter().all(|v| v.is_finite())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            matrix: self.matrix * s,
        }
    }

    /// Exact exponential `exp(λ t)`.
    pub fn exp(&self, t: f64) -> LorentzTransform {
        LorentzTransform {
            matrix: (self.matrix * t).exp(),
        }
    }
}

impl std::ops::Add for LorentzGenerator {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            matrix: self.matrix + rhs.matrix,
        }
    }
}

impl std::ops::Sub for LorentzGenerator {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            matrix: self.matrix - rhs.matrix,
        }
    }
}

/// A proper orthochronous Lorentz transformation `Λ^a_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzTransform {
    matrix: Matrix4<f64>,
}

impl LorentzTransform {
    pub fn identity() -> Self {
        Self {
            matrix: Matrix4::identity(),
        }
    }

    /// Wraps a matrix without checking the group invariants.
    pub fn from_matrix(matrix: Matrix4<f64>) -> Self {
        Self { matrix }
    }

    /// Wraps a matrix, rejecting anything that is not proper orthochronous
    /// to within `1e-9`.
    pub fn try_from_matrix(matrix: Matrix4<f64>) -> Result<Self> {
        let t = Self { matrix };
        t.check(1e-9)?;
        Ok(t)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.matrix
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.matrix[(a, b)]
    }

    /// `Λ^T η Λ − η`, max-norm.
    pub fn metric_residual(&self) -> f64 {
        (self.matrix.transpose() * eta() * self.matrix - eta())
            .abs()
            .max()
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }

    pub fn check(&self, tol: f64) -> Result<()> {
        let res = self.metric_residual();
        if !(res <= tol) {
            return Err(Error::Invariant(format!("Λ^T η Λ − η residual {res:e}")));
        }
        let det = self.determinant();
        if !((det - 1.0).abs() <= tol) {
            return Err(Error::Invariant(format!("det Λ = {det}")));
        }
        if !(self.matrix[(0, 0)] >= 1.0 - tol) {
            return Err(Error::Invariant(format!(
                "Λ^0_0 = {} is not orthochronous",
                self.matrix[(0, 0)]
            )));
        }
        Ok(())
    }

    /// `η Λ^T η`, the group inverse.
    pub fn inverse(&self) -> Self {
        Self {
            matrix: eta() * self.matrix.transpose() * eta(),
        }
    }

    /// `self` followed by `later`, i.e. `later · self`.
    pub fn then(&self, later: &LorentzTransform) -> Self {
        Self {
            matrix: later.matrix * self.matrix,
        }
    }

    pub fn apply(&self, v: &LocalVector) -> LocalVector {
        let mut out = [0.0; 4];
        for (a, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|b| self.matrix[(a, b)] * v.0[b]).sum();
        }
        LocalVector(out)
    }

    /// Pulls the matrix back onto the group by Newton iterations on
    /// `Λ (Λ^{-1}_η Λ)^{-1/2}`.
    pub fn reorthonormalized(&self) -> Self {
        let mut m = self.matrix;
        for _ in 0..8 {
            let err = eta() * m.transpose() * eta() * m - Matrix4::identity();
            if err.abs().max() < 1e-15 {
                break;
            }
            m -= m * err * 0.5;
        }
        Self { matrix: m }
    }
}

impl std::ops::Mul for LorentzTransform {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            matrix: self.matrix * rhs.matrix,
        }
    }
}

/// A world line `τ ↦ (x(τ), u(τ))` given in closed form.
pub trait Trajectory: Send + Sync {
    fn position(&self, tau: f64) -> SpacetimePoint;

    /// Four-velocity `u^μ = dx^μ/dτ` in chart components.
    fn velocity(&self, tau: f64) -> [f64; 4];

    /// `du^μ/dτ` in chart components. The default is a central difference.
    fn velocity_derivative(&self, tau: f64) -> [f64; 4] {
        let h = 1e-6 * tau.abs().max(1.0);
        let p = self.velocity(tau + h);
        let m = self.velocity(tau - h);
        [0, 1, 2, 3].map(|i| (p[i] - m[i]) / (2.0 * h))
    }

    /// Proper-time interval on which the world line is defined.
    fn domain(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }
}

/// Uniform circular motion at radius `r` on the equator, with rapidity `xi`
/// relative to the static observer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularOrbit {
    chart: Schwarzschild,
    r: f64,
    xi: f64,
}

impl CircularOrbit {
    pub fn new(chart: Schwarzschild, r: f64, xi: f64) -> Result<Self> {
        if !xi.is_finite() {
            return Err(invalid("xi", "rapidity must be finite"));
        }
        chart.check_domain(&SpacetimePoint::equatorial(0.0, r, 0.0))?;
        Ok(Self { chart, r, xi })
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    pub fn rapidity(&self) -> f64 {
        self.xi
    }

    pub fn chart(&self) -> &Schwarzschild {
        &self.chart
    }
}

/// Circular orbit of radius `r` around a hole of radius `r_s` (`r_s = 0`
/// gives flat space) with `tanh(xi) = v/c`.
pub fn circular_trajectory_schwarzschild(r: f64, r_s: f64, xi: f64) -> Result<CircularOrbit> {
    if !(r_s >= 0.0) {
        return Err(invalid("r_s", "must be non-negative"));
    }
    let chart = if r_s == 0.0 {
        crate::geometry::minkowski_spherical()
    } else {
        crate::geometry::schwarzschild_metric(r_s)?
    };
    CircularOrbit::new(chart, r, xi)
}

impl Trajectory for CircularOrbit {
    fn position(&self, tau: f64) -> SpacetimePoint {
        let u = self.velocity(0.0);
        SpacetimePoint::equatorial(u[0] * tau, self.r, u[3] * tau)
    }

    fn velocity(&self, _tau: f64) -> [f64; 4] {
        let sf = self.chart.f(self.r).sqrt();
        [self.xi.cosh() / sf, 0.0, 0.0, self.xi.sinh() / self.r]
    }

    fn velocity_derivative(&self, _tau: f64) -> [f64; 4] {
        [0.0; 4]
    }
}

/// Radial free fall from rest at infinity, passing `r0` at `τ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialInfall {
    chart: Schwarzschild,
    r0: f64,
}

impl RadialInfall {
    pub fn new(chart: Schwarzschild, r0: f64) -> Result<Self> {
        if chart.r_s() <= 0.0 {
            return Err(invalid(
                "r_s",
                "free fall from rest at infinity needs r_s > 0",
            ));
        }
        chart.check_domain(&SpacetimePoint::equatorial(0.0, r0, 0.0))?;
        Ok(Self { chart, r0 })
    }

    pub fn radius(&self, tau: f64) -> f64 {
        let r_s = self.chart.r_s();
        (self.r0.powf(1.5) - 1.5 * r_s.sqrt() * tau).powf(2.0 / 3.0)
    }

    fn coordinate_time(&self, r: f64) -> f64 {
        let r_s = self.chart.r_s();
        let t = |r: f64| {
            let rho = (r / r_s).sqrt();
            -2.0 * r_s * (rho.powi(3) / 3.0 + rho + 0.5 * ((rho - 1.0) / (rho + 1.0)).ln())
        };
        t(r) - t(self.r0)
    }
}

impl Trajectory for RadialInfall {
    fn position(&self, tau: f64) -> SpacetimePoint {
        let r = self.radius(tau);
        SpacetimePoint::equatorial(self.coordinate_time(r), r, 0.0)
    }

    fn velocity(&self, tau: f64) -> [f64; 4] {
        let r = self.radius(tau);
        let r_s = self.chart.r_s();
        [1.0 / self.chart.f(r), -(r_s / r).sqrt(), 0.0, 0.0]
    }

    fn velocity_derivative(&self, tau: f64) -> [f64; 4] {
        let r = self.radius(tau);
        let r_s = self.chart.r_s();
        let f = self.chart.f(r);
        let ur = -(r_s / r).sqrt();
        [
            -(r_s / (r * r)) / (f * f) * ur,
            -r_s / (2.0 * r * r),
            0.0,
            0.0,
        ]
    }

    fn domain(&self) -> (f64, f64) {
        let r_s = self.chart.r_s();
        // τ at which r reaches r_s
        let horizon = (self.r0.powf(1.5) - r_s.powf(1.5)) / (1.5 * r_s.sqrt());
        (f64::NEG_INFINITY, horizon)
    }
}

/// Inertial motion in Cartesian Minkowski coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StraightLine {
    origin: SpacetimePoint,
    u: [f64; 4],
}

impl StraightLine {
    /// Starts at `origin` with three-velocity `beta` (|beta| < 1).
    pub fn new(origin: SpacetimePoint, beta: [f64; 3]) -> Result<Self> {
        let b2: f64 = beta.iter().map(|b| b * b).sum();
        if !(b2 < 1.0) {
            return Err(invalid("beta", "speed must be below c"));
        }
        let g = 1.0 / (1.0 - b2).sqrt();
        Ok(Self {
            origin,
            u: [g, g * beta[0], g * beta[1], g * beta[2]],
        })
    }
}

impl Trajectory for StraightLine {
    fn position(&self, tau: f64) -> SpacetimePoint {
        let o = self.origin.0;
        SpacetimePoint([0, 1, 2, 3].map(|i| o[i] + self.u[i] * tau))
    }

    fn velocity(&self, _tau: f64) -> [f64; 4] {
        self.u
    }

    fn velocity_derivative(&self, _tau: f64) -> [f64; 4] {
        [0.0; 4]
    }
}

/// Constant proper acceleration `g` along the Cartesian x axis in flat space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicMotion {
    g: f64,
}

impl HyperbolicMotion {
    pub fn new(g: f64) -> Result<Self> {
        if !(g > 0.0 && g.is_finite()) {
            return Err(invalid("g", "proper acceleration must be positive"));
        }
        Ok(Self { g })
    }
}

impl Trajectory for HyperbolicMotion {
    fn position(&self, tau: f64) -> SpacetimePoint {
        let s = self.g * tau;
        SpacetimePoint::new(s.sinh() / self.g, s.cosh() / self.g, 0.0, 0.0)
    }

    fn velocity(&self, tau: f64) -> [f64; 4] {
        let s = self.g * tau;
        [s.cosh(), s.sinh(), 0.0, 0.0]
    }

    fn velocity_derivative(&self, tau: f64) -> [f64; 4] {
        let s = self.g * tau;
        [self.g * s.sinh(), self.g * s.cosh(), 0.0, 0.0]
    }
}

/// `|g_{μν} u^μ u^ν + 1|`.
pub fn normalization_residual<M, T>(metric: &M, traj: &T, tau: f64) -> Result<f64>
where
    M: Metric + ?Sized,
    T: Trajectory + ?Sized,
{
    let g = metric.components(&traj.position(tau))?;
    let u = traj.velocity(tau);
    let mut s = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            s += g[(mu, nu)] * u[mu] * u[nu];
        }
    }
    Ok((s + 1.0).abs())
}

fn check_tau<T: Trajectory + ?Sized>(traj: &T, tau: f64) -> Result<()> {
    let (lo, hi) = traj.domain();
    if !(tau >= lo && tau <= hi) {
        return Err(invalid(
            "tau",
            format!("{tau} outside trajectory domain [{lo}, {hi}]"),
        ));
    }
    Ok(())
}

/// Centroid momentum `q^a = m e^a_μ u^μ` in the local frame.
pub fn centroid_momentum<T, F>(traj: &T, field: &F, tau: f64, mass: f64) -> Result<LocalVector>
where
    T: Trajectory + ?Sized,
    F: FrameField,
{
    check_tau(traj, tau)?;
    let v = field.vierbein(&traj.position(tau))?;
    let u = v.to_local(&traj.velocity(tau));
    Ok(LocalVector(u.map(|c| mass * c)))
}

/// Four-acceleration `a^a = e^a_μ u^ν ∇_ν u^μ` in the local frame.
pub fn four_acceleration<T, F>(traj: &T, field: &F, tau: f64) -> Result<LocalVector>
where
    T: Trajectory + ?Sized,
    F: FrameField,
{
    check_tau(traj, tau)?;
    let x = traj.position(tau);
    let u = traj.velocity(tau);
    let du = traj.velocity_derivative(tau);
    let gamma = field.metric().christoffel(&x)?;
    let quad = gamma.contract(&u, &u);
    let acc = [0, 1, 2, 3].map(|mu| du[mu] + quad[mu]);
    Ok(LocalVector(field.vierbein(&x)?.to_local(&acc)))
}

/// Rotation of the local frame along the path,
/// `χ^a_b = u^μ e_b^ν ∇_μ e^a_ν`.
pub fn frame_change_chi<T, F>(traj: &T, field: &F, tau: f64) -> Result<LorentzGenerator>
where
    T: Trajectory + ?Sized,
    F: FrameField,
{
    check_tau(traj, tau)?;
    let x = traj.position(tau);
    let u = traj.velocity(tau);
    let v = field.vierbein(&x)?;
    let grad = field.coframe_gradient(&x)?;
    let gamma = field.metric().christoffel(&x)?;
    let frame = v.frame();
    let coframe = v.coframe();

    // D[(a, nu)] = u^μ ∇_μ e^a_ν
    let mut d = Matrix4::zeros();
    for a in 0..4 {
        for nu in 0..4 {
            let mut acc = 0.0;
            for mu in 0..4 {
                if u[mu] == 0.0 {
                    continue;
                }
                let mut conn = 0.0;
                for rho in 0..4 {
                    conn += gamma.get(rho, mu, nu) * coframe[(a, rho)];
                }
                acc += u[mu] * (grad[mu][(a, nu)] - conn);
            }
            d[(a, nu)] = acc;
        }
    }
    // χ^a_b = D[(a, nu)] e_b^ν
    Ok(LorentzGenerator::from_matrix(d * frame.transpose()))
}

/// Boost generated by the external force,
/// `−(a^a q_b − q^a a_b) / m` (with `c = 1`).
pub fn acceleration_generator(a: &LocalVector, q: &LocalVector, mass: f64) -> LorentzGenerator {
    let q_low = q.lowered();
    let a_low = a.lowered();
    let mut m = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = -(a.0[i] * q_low[j] - q.0[i] * a_low[j]) / mass;
        }
    }
    LorentzGenerator::from_matrix(m)
}

/// The two pieces of the infinitesimal local Lorentz transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorParts {
    pub acceleration: LorentzGenerator,
    pub frame_change: LorentzGenerator,
}

impl GeneratorParts {
    pub fn total(&self) -> LorentzGenerator {
        self.acceleration + self.frame_change
    }
}

pub fn infinitesimal_lt_parts<T, F>(
    traj: &T,
    field: &F,
    tau: f64,
    mass: f64,
) -> Result<GeneratorParts>
where
    T: Trajectory + ?Sized,
    F: FrameField,
{
    if !(mass > 0.0) {
        return Err(invalid("mass", "must be positive"));
    }
    let a = four_acceleration(traj, field, tau)?;
    let q = centroid_momentum(traj, field, tau, mass)?;
    Ok(GeneratorParts {
        acceleration: acceleration_generator(&a, &q, mass),
        frame_change: frame_change_chi(traj, field, tau)?,
    })
}

/// `λ^a_b(τ)`: acceleration boost plus frame change.
pub fn infinitesimal_lt<T, F>(traj: &T, field: &F, tau: f64, mass: f64) -> Result<LorentzGenerator>
where
    T: Trajectory + ?Sized,
    F: FrameField,
{
    Ok(infinitesimal_lt_parts(traj, field, tau, mass)?.total())
}

/// How each step's factor is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    /// `exp(λ(τ_mid) Δτ)`, second order.
    #[default]
    Midpoint,
    /// Two-point Gauss fourth-order Magnus step.
    Magnus4,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub steps: usize,
    pub scheme: Scheme,
    /// Drift in `Λ^T η Λ − η` above which the result is re-projected.
    pub reorthonormalize_above: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            steps: 4096,
            scheme: Scheme::Midpoint,
            reorthonormalize_above: 1e-9,
        }
    }
}

impl IntegratorConfig {
    pub fn with_steps(steps: usize) -> Self {
        Self {
            steps,
            ..Self::default()
        }
    }
}

fn checked_generator<T, F>(traj: &T, field: &F, tau: f64, mass: f64) -> Result<LorentzGenerator>
where
    T: Trajectory + ?Sized,
    F: FrameField,
{
    match infinitesimal_lt(traj, field, tau, mass) {
        Ok(l) if l.is_finite() => Ok(l),
        Ok(_) => Err(Error::NonFiniteGenerator { tau }),
        Err(Error::Horizon { .. }) | Err(Error::CoordinateSingularity { .. }) => {
            Err(Error::NonFiniteGenerator { tau })
        }
        Err(e) => Err(e),
    }
}

fn validate_window(tau_i: f64, tau_f: f64, steps: usize) -> Result<()> {
    if !(tau_i.is_finite() && tau_f.is_finite()) {
        return Err(invalid("tau", "endpoints must be finite"));
    }
    if tau_f < tau_i {
        return Err(invalid("tau_f", "must not precede tau_i"));
    }
    if steps == 0 {
        return Err(invalid("steps", "must be at least 1"));
    }
    Ok(())
}

/// Midpoint samples `(λ(τ_k), Δτ)` of the generator on `[tau_i, tau_f]`.
pub fn generator_samples<T, F>(
    traj: &T,
    field: &F,
    tau_i: f64,
    tau_f: f64,
    mass: f64,
    steps: usize,
) -> Result<Vec<(LorentzGenerator, f64)>>
where
    T: Trajectory + ?Sized,
    F: FrameField,
{
    validate_window(tau_i, tau_f, steps)?;
    if tau_f == tau_i {
        return Ok(Vec::new());
    }
    let h = (tau_f - tau_i) / steps as f64;
    (0..steps)
        .map(|k| {
            let tau = tau_i + (k as f64 + 0.5) * h;
            Ok((checked_generator(traj, field, tau, mass)?, h))
        })
        .collect()
}

/// Product of `exp(λ_k Δτ_k)` over time-ordered samples, later factors on
/// the left.
pub fn ordered_exponential(samples: &[(LorentzGenerator, f64)]) -> LorentzTransform {
    let total = samples
        .iter()
        .fold(Matrix4::identity(), |acc, (lambda, dtau)| {
            (lambda.matrix() * *dtau).exp() * acc
        });
    LorentzTransform::from_matrix(total)
}

/// Time-ordered exponential `Λ(τ_f, τ_i) = T exp ∫ λ dτ` with `steps`
/// equal midpoint steps.
pub fn integrate_lorentz<T, F>(
    traj: &T,
    field: &F,
    tau_i: f64,
    tau_f: f64,
    mass: f64,
    steps: usize,
) -> Result<LorentzTransform>
where
    T: Trajectory + ?Sized,
    F: FrameField,
{
    integrate_lorentz_with(
        traj,
        field,
        tau_i,
        tau_f,
        mass,
        &IntegratorConfig::with_steps(steps),
    )
}

pub fn integrate_lorentz_with<T, F>(
    traj: &T,
    field: &F,
    tau_i: f64,
    tau_f: f64,
    mass: f64,
    config: &IntegratorConfig,
) -> Result<LorentzTransform>
where
    T: Trajectory + ?Sized,
    F: FrameField,
{
    validate_window(tau_i, tau_f, config.steps)?;
    if !(mass > 0.0) {
        return Err(invalid("mass", "must be positive"));
    }
    let mut total = Matrix4::identity();
    if tau_f == tau_i {
        return Ok(LorentzTransform::identity());
    }
    let h = (tau_f - tau_i) / config.steps as f64;
    let gauss = 3f64.sqrt() / 6.0;
    for k in 0..config.steps {
        let start = tau_i + k as f64 * h;
        let exponent = match config.scheme {
            Scheme::Midpoint => {
                *checked_generator(traj, field, start + 0.5 * h, mass)?.matrix() * h
            }
            Scheme::Magnus4 => {
                let a1 = *checked_generator(traj, field, start + (0.5 - gauss) * h, mass)?.matrix();
                let a2 = *checked_generator(traj, field, start + (0.5 + gauss) * h, mass)?.matrix();
                let comm = a2 * a1 - a1 * a2;
                (a1 + a2) * (0.5 * h) + comm * (3f64.sqrt() / 12.0 * h * h)
            }
        };
        // later factors act on the left
        total = exponent.exp() * total;
    }
    let out = LorentzTransform::from_matrix(total);
    if out.metric_residual() > config.reorthonormalize_above {
        Ok(out.reorthonormalized())
    } else {
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{minkowski_spherical, schwarzschild_metric, CartesianFrame, StaticFrame};

    fn setup(r: f64, r_s: f64, xi: f64) -> (CircularOrbit, StaticFrame) {
        let orbit = circular_trajectory_schwarzschild(r, r_s, xi).unwrap();
        (orbit, StaticFrame::new(*orbit.chart()))
    }

    #[test]
    fn static_observer_velocity() {
        let (orbit, _) = setup(3.0, 1.0, 0.0);
        let u = orbit.velocity(0.0);
        let f: f64 = 1.0 - 1.0 / 3.0;
        assert_eq!(u, [1.0 / f.sqrt(), 0.0, 0.0, 0.0]);
    }

    #[test]
    fn circular_velocity_is_normalized() {
        let (orbit, _) = setup(2.0, 1.0, 1.0);
        let res = normalization_residual(orbit.chart(), &orbit, 0.0).unwrap();
        assert!(res < 1e-12);
    }

    #[test]
    fn hyperbolic_identities_at_v_08() {
        let xi = 0.8f64.atanh();
        assert!((xi.cosh() - 5.0 / 3.0).abs() < 1e-14);
        assert!((xi.sinh() - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn orbit_inside_horizon_rejected() {
        assert!(matches!(
            circular_trajectory_schwarzschild(1.0, 1.0, 0.3),
            Err(Error::Horizon { .. })
        ));
    }

    #[test]
    fn static_particle_acceleration() {
        for &r in &[1.2, 2.0, 7.0] {
            let (orbit, field) = setup(r, 1.0, 0.0);
            let a = four_acceleration(&orbit, &field, 0.0).unwrap();
            let f: f64 = 1.0 - 1.0 / r;
            let expected = 1.0 / (2.0 * r * r * f.sqrt());
            assert!((a.0[1] - expected).abs() < 1e-13 * expected);
            assert_eq!([a.0[0], a.0[2], a.0[3]], [0.0; 3]);
        }
    }

    #[test]
    fn flat_circular_orbit_is_centripetal() {
        let xi = 0.7f64;
        let orbit = CircularOrbit::new(minkowski_spherical(), 2.5, xi).unwrap();
        let field = StaticFrame::new(minkowski_spherical());
        let a = four_acceleration(&orbit, &field, 0.0).unwrap();
        let expected = -xi.sinh().powi(2) / 2.5;
        assert!((a.0[1] - expected).abs() < 1e-14);
        assert_eq!(a.0[0], 0.0);
        assert_eq!(a.0[3], 0.0);
    }

    #[test]
    fn geodesics_have_zero_acceleration() {
        // circular geodesic: tanh²ξ = r_s / (2 (r − r_s))
        let r = 3.0;
        let xi = (0.5f64 / (r - 1.0)).sqrt().atanh();
        let (orbit, field) = setup(r, 1.0, xi);
        assert!(four_acceleration(&orbit, &field, 0.0).unwrap().max_abs() < 1e-10);

        let chart = schwarzschild_metric(1.0).unwrap();
        let fall = RadialInfall::new(chart, 6.0).unwrap();
        let field = StaticFrame::new(chart);
        for &tau in &[0.0, 2.0, 5.0] {
            assert!(four_acceleration(&fall, &field, tau).unwrap().max_abs() < 1e-10);
        }

        let line =
            StraightLine::new(SpacetimePoint::new(0.0, 1.0, 2.0, 3.0), [0.3, -0.2, 0.5]).unwrap();
        let a = four_acceleration(&line, &CartesianFrame::default(), 1.5).unwrap();
        assert_eq!(a.max_abs(), 0.0);
    }

    #[test]
    fn infall_velocity_matches_position_derivative() {
        let chart = schwarzschild_metric(1.0).unwrap();
        let fall = RadialInfall::new(chart, 8.0).unwrap();
        let tau = 3.0;
        let h = 1e-5;
        let p = fall.position(tau + h).0;
        let m = fall.position(tau - h).0;
        let u = fall.velocity(tau);
        for mu in 0..2 {
            let fd = (p[mu] - m[mu]) / (2.0 * h);
            assert!(
                (fd - u[mu]).abs() < 1e-8,
                "component {mu}: {fd} vs {}",
                u[mu]
            );
        }
        assert!(normalization_residual(&chart, &fall, tau).unwrap() < 1e-12);
        assert!(fall.domain().1 > 0.0);
    }

    #[test]
    fn chi_matches_closed_forms_on_circular_orbit() {
        let r = 2.3;
        let xi = 0.9f64;
        let (orbit, field) = setup(r, 1.0, xi);
        let chi = frame_change_chi(&orbit, &field, 0.0).unwrap();
        let f: f64 = 1.0 - 1.0 / r;
        let boost = -xi.cosh() / (2.0 * r * r * f.sqrt());
        let rot = xi.sinh() * f.sqrt() / r;
        assert!((chi.get(0, 1) - boost).abs() < 1e-14);
        assert!((chi.get(1, 0) - boost).abs() < 1e-14);
        assert!((chi.get(1, 3) - rot).abs() < 1e-14);
        assert!((chi.get(3, 1) + rot).abs() < 1e-14);
        assert!(chi.algebra_residual() < 1e-14);
    }

    #[test]
    fn chi_vanishes_for_flat_static_particle() {
        let orbit = CircularOrbit::new(minkowski_spherical(), 1.7, 0.0).unwrap();
        let field = StaticFrame::new(minkowski_spherical());
        assert_eq!(
            frame_change_chi(&orbit, &field, 0.0).unwrap().max_abs(),
            0.0
        );
    }

    #[test]
    fn combined_generator_reproduces_l_factor() {
        let r = 2.3;
        let xi = 0.9f64;
        let (orbit, field) = setup(r, 1.0, xi);
        let lam = infinitesimal_lt(&orbit, &field, 0.0, 1.0).unwrap();
        let f: f64 = 1.0 - 1.0 / r;
        let l = xi.cosh().powi(2) * xi.sinh() / r * (1.0 - 1.0 / (2.0 * r * f)) * f.sqrt();
        assert!((lam.get(0, 1) + l * xi.tanh()).abs() < 1e-13);
        assert!((lam.get(1, 0) + l * xi.tanh()).abs() < 1e-13);
        assert!((lam.get(1, 3) - l).abs() < 1e-13);
        assert!((lam.get(3, 1) + l).abs() < 1e-13);
        for (a, b) in [(0, 0), (0, 2), (0, 3), (2, 2), (2, 3), (3, 3)] {
            assert!(lam.get(a, b).abs() < 1e-13);
        }
    }

    #[test]
    fn static_particle_generator_cancels() {
        for &r in &[1.05, 1.5, 3.0, 10.0] {
            let (orbit, field) = setup(r, 1.0, 0.0);
            let lam = infinitesimal_lt(&orbit, &field, 0.0, 1.0).unwrap();
            assert!(lam.max_abs() < 1e-10, "r = {r}: {}", lam.max_abs());
        }
    }

    #[test]
    fn flat_limit_generator() {
        let r = 4.0;
        let xi = 0.6f64;
        let orbit = CircularOrbit::new(minkowski_spherical(), r, xi).unwrap();
        let field = StaticFrame::new(minkowski_spherical());
        let lam = infinitesimal_lt(&orbit, &field, 0.0, 1.0).unwrap();
        let l = xi.cosh().powi(2) * xi.sinh() / r;
        assert!((lam.get(0, 1) + l * xi.tanh()).abs() < 1e-14);
        assert!((lam.get(1, 3) - l).abs() < 1e-14);
    }

    #[test]
    fn generator_split_is_consistent() {
        let (orbit, field) = setup(1.8, 1.0, 0.4);
        let parts = infinitesimal_lt_parts(&orbit, &field, 0.0, 2.0).unwrap();
        let total = infinitesimal_lt(&orbit, &field, 0.0, 2.0).unwrap();
        assert_eq!(parts.total(), total);
        assert!(parts.acceleration.algebra_residual() < 1e-14);
    }

    #[test]
    fn empty_window_is_identity() {
        let (orbit, field) = setup(2.0, 1.0, 0.5);
        let lt = integrate_lorentz(&orbit, &field, 1.0, 1.0, 1.0, 16).unwrap();
        assert_eq!(lt, LorentzTransform::identity());
    }

    #[test]
    fn integrator_argument_errors() {
        let (orbit, field) = setup(2.0, 1.0, 0.5);
        assert!(integrate_lorentz(&orbit, &field, 1.0, 0.0, 1.0, 16).is_err());
        assert!(integrate_lorentz(&orbit, &field, 0.0, 1.0, 1.0, 0).is_err());
        assert!(integrate_lorentz(&orbit, &field, 0.0, 1.0, 0.0, 4).is_err());
    }

    #[test]
    fn horizon_crossing_reports_tau() {
        let chart = schwarzschild_metric(1.0).unwrap();
        let fall = RadialInfall::new(chart, 3.0).unwrap();
        let field = StaticFrame::new(chart);
        let end = fall.domain().1;
        let err = integrate_lorentz(&fall, &field, 0.0, end + 1.0, 1.0, 64).unwrap_err();
        match err {
            Error::NonFiniteGenerator { tau } => assert!(tau > 0.0),
            Error::InvalidParameter { name, .. } => assert_eq!(name, "tau"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hyperbolic_motion_is_a_pure_boost() {
        let g = 0.8;
        let traj = HyperbolicMotion::new(g).unwrap();
        let field = CartesianFrame::default();
        let lam = infinitesimal_lt(&traj, &field, 0.3, 1.0).unwrap();
        assert!((lam.get(1, 0) - g).abs() < 1e-12);
        assert!((lam.get(0, 1) - g).abs() < 1e-12);
        let lt = integrate_lorentz(&traj, &field, 0.0, 2.0, 1.0, 64).unwrap();
        let q0 = centroid_momentum(&traj, &field, 0.0, 1.0).unwrap();
        let q1 = centroid_momentum(&traj, &field, 2.0, 1.0).unwrap();
        let moved = lt.apply(&q0);
        for a in 0..4 {
            assert!((moved.0[a] - q1.0[a]).abs() < 1e-12);
        }
    }

    #[test]
    fn window_composition_respects_ordering() {
        let chart = schwarzschild_metric(1.0).unwrap();
        let fall = RadialInfall::new(chart, 8.0).unwrap();
        let field = StaticFrame::new(chart);
        let cfg = IntegratorConfig {
            steps: 256,
            scheme: Scheme::Magnus4,
            ..IntegratorConfig::default()
        };
        let first = integrate_lorentz_with(&fall, &field, 0.0, 2.0, 1.0, &cfg).unwrap();
        let second = integrate_lorentz_with(&fall, &field, 2.0, 4.0, 1.0, &cfg).unwrap();
        let cfg2 = IntegratorConfig { steps: 512, ..cfg };
        let whole = integrate_lorentz_with(&fall, &field, 0.0, 4.0, 1.0, &cfg2).unwrap();
        let composed = first.then(&second);
        assert!((composed.matrix() - whole.matrix()).abs().max() < 1e-10);
    }

    #[test]
    fn reorthonormalization_repairs_drift() {
        let lt = LorentzGenerator::boost(1).exp(0.7) * LorentzGenerator::rotation(2).exp(0.3);
        let noisy = LorentzTransform::from_matrix(lt.matrix() + Matrix4::from_element(1e-7));
        assert!(noisy.metric_residual() > 1e-8);
        let fixed = noisy.reorthonormalized();
        assert!(fixed.metric_residual() < 1e-13);
        assert!((fixed.matrix() - lt.matrix()).abs().max() < 1e-6);
    }

    #[test]
    fn rotation_generator_is_right_handed() {
        // rotating the x axis about z by +90° yields the y axis
        let r = LorentzGenerator::rotation(3).exp(std::f64::consts::FRAC_PI_2);
        let x = r.apply(&LocalVector([0.0, 1.0, 0.0, 0.0]));
        assert!((x.0[2] - 1.0).abs() < 1e-15);
        // about y: z goes to x
        let r = LorentzGenerator::rotation(2).exp(std::f64::consts::FRAC_PI_2);
        let z = r.apply(&LocalVector([0.0, 0.0, 0.0, 1.0]));
        assert!((z.0[1] - 1.0).abs() < 1e-15);
    }
}
