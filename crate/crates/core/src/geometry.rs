//! Spacetime metrics, the static vierbein field and Levi-Civita connection
//! coefficients.
//!
//! Units are geometric: `c = 1`. Lengths are in whatever unit the caller
//! picks for `r_s`; the scenario layer fixes `r_s = 1`.

use nalgebra::Matrix4;

use crate::error::{Error, Result};

/// Minkowski metric `diag(-1, 1, 1, 1)` on local inertial indices.
pub fn eta() -> Matrix4<f64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(-1.0, 1.0, 1.0, 1.0))
}

/// Coordinates `x^0..x^3` in the chart of the metric they belong to.
/// For Schwarzschild this is `(t, r, theta, phi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint(pub [f64; 4]);

impl SpacetimePoint {
    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self([x0, x1, x2, x3])
    }

    /// Equatorial Schwarzschild point `(t, r, pi/2, phi)`.
    pub fn equatorial(t: f64, r: f64, phi: f64) -> Self {
        Self([t, r, std::f64::consts::FRAC_PI_2, phi])
    }

    pub fn coords(&self) -> [f64; 4] {
        self.0
    }

    fn shifted(&self, index: usize, delta: f64) -> Self {
        let mut c = self.0;
        c[index] += delta;
        Self(c)
    }
}

/// Connection coefficients `gamma[mu][nu][rho] = Γ^μ_{νρ}` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChristoffelSymbols {
    gamma: [[[f64; 4]; 4]; 4],
}

impl ChristoffelSymbols {
    pub fn zero() -> Self {
        Self {
            gamma: [[[0.0; 4]; 4]; 4],
        }
    }

    /// `Γ^μ_{νρ}`.
    pub fn get(&self, mu: usize, nu: usize, rho: usize) -> f64 {
        self.gamma[mu][nu][rho]
    }

    /// Writes both `Γ^μ_{νρ}` and `Γ^μ_{ρν}`.
    pub fn set_symmetric(&mut self, mu: usize, nu: usize, rho: usize, value: f64) {
        self.gamma[mu][nu][rho] = value;
        self.gamma[mu][rho][nu] = value;
    }

    pub fn as_array(&self) -> &[[[f64; 4]; 4]; 4] {
        &self.gamma
    }

    /// `Γ^μ_{νρ} a^ν b^ρ`.
    pub fn contract(&self, a: &[f64; 4], b: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (mu, o) in out.iter_mut().enumerate() {
            for nu in 0..4 {
                for rho in 0..4 {
                    *o += self.gamma[mu][nu][rho] * a[nu] * b[rho];
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.gamma
            .iter()
            .flatten()
            .flatten()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

/// A Lorentzian metric `g_{μν}(x)` with signature `(-,+,+,+)`.
pub trait Metric: Send + Sync {
    /// Metric components at `x`. Fails outside the chart domain.
    fn components(&self, x: &SpacetimePoint) -> Result<Matrix4<f64>>;

    fn signature(&self) -> [i8; 4] {
        [-1, 1, 1, 1]
    }

    /// Characteristic size of each coordinate near `x`, used to scale
    /// finite-difference steps.
    fn coordinate_scale(&self, x: &SpacetimePoint) -> [f64; 4] {
        x.0.map(|c| c.abs().max(1.0))
    }

    /// Levi-Civita connection. Charts with known closed forms override this;
    /// the default is the central-difference route.
    fn christoffel(&self, x: &SpacetimePoint) -> Result<ChristoffelSymbols> {
        christoffel_numeric(self, x, 1e-6)
    }
}

/// Flat metric in Cartesian coordinates.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Minkowski;

impl Metric for Minkowski {
    fn components(&self, _x: &SpacetimePoint) -> Result<Matrix4<f64>> {
        Ok(eta())
    }

    fn christoffel(&self, _x: &SpacetimePoint) -> Result<ChristoffelSymbols> {
        Ok(ChristoffelSymbols::zero())
    }
}

pub fn minkowski_metric() -> Minkowski {
    Minkowski
}

/// Schwarzschild metric in `(t, r, theta, phi)`. `r_s = 0` is flat space
/// in spherical coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schwarzschild {
    r_s: f64,
}

/// Schwarzschild spacetime with horizon radius `r_s > 0`.
pub fn schwarzschild_metric(r_s: f64) -> Result<Schwarzschild> {
    if !(r_s > 0.0 && r_s.is_finite()) {
        return Err(crate::error::invalid(
            "r_s",
            format!("must be positive, got {r_s}"),
        ));
    }
    Ok(Schwarzschild { r_s })
}

/// Flat spacetime in spherical coordinates (the `r_s -> 0` limit).
pub fn minkowski_spherical() -> Schwarzschild {
    Schwarzschild { r_s: 0.0 }
}

impl Schwarzschild {
    pub fn r_s(&self) -> f64 {
        self.r_s
    }

    /// `f(r) = 1 - r_s / r`, evaluated as `(r - r_s) / r`.
    pub fn f(&self, r: f64) -> f64 {
        (r - self.r_s) / r
    }

    /// Checks `r > r_s` and `sin(theta) != 0`, returning `(r, sin, cos)`.
    pub fn check_domain(&self, x: &SpacetimePoint) -> Result<(f64, f64, f64)> {
        let [_, r, theta, _] = x.0;
        if !r.is_finite() || r <= self.r_s || r <= 0.0 {
            return Err(Error::Horizon { r, r_s: self.r_s });
        }
        let (s, c) = theta.sin_cos();
        if !theta.is_finite() || s.abs() < 1e-12 {
            return Err(Error::CoordinateSingularity { theta });
        }
        Ok((r, s, c))
    }
}

impl Metric for Schwarzschild {
    fn components(&self, x: &SpacetimePoint) -> Result<Matrix4<f64>> {
        let (r, s, _) = self.check_domain(x)?;
        let f = self.f(r);
        Ok(Matrix4::from_diagonal(&nalgebra::Vector4::new(
            -f,
            1.0 / f,
            r * r,
            r * r * s * s,
        )))
    }

    fn coordinate_scale(&self, x: &SpacetimePoint) -> [f64; 4] {
        let r = x.0[1].abs().max(f64::MIN_POSITIVE);
        [r, r, 1.0, 1.0]
    }

    fn christoffel(&self, x: &SpacetimePoint) -> Result<ChristoffelSymbols> {
        let (r, s, c) = self.check_domain(x)?;
        let f = self.f(r);
        let df = self.r_s / (r * r);
        let mut g = ChristoffelSymbols::zero();
        g.set_symmetric(0, 0, 1, df / (2.0 * f));
        g.set_symmetric(1, 0, 0, f * df / 2.0);
        g.set_symmetric(1, 1, 1, -df / (2.0 * f));
        g.set_symmetric(1, 2, 2, -r * f);
        g.set_symmetric(1, 3, 3, -r * f * s * s);
        g.set_symmetric(2, 1, 2, 1.0 / r);
        g.set_symmetric(2, 3, 3, -s * c);
        g.set_symmetric(3, 1, 3, 1.0 / r);
        g.set_symmetric(3, 2, 3, c / s);
        Ok(g)
    }
}

/// Connection coefficients of `metric` at `x`, through the metric's own
/// (possibly closed-form) implementation.
pub fn christoffel<M: Metric + ?Sized>(
    metric: &M,
    x: &SpacetimePoint,
) -> Result<ChristoffelSymbols> {
    metric.christoffel(x)
}

/// Metric derivatives `∂_σ g_{μν}` by central differences with step
/// `rel_step * coordinate_scale`.
pub fn metric_gradient<M: Metric + ?Sized>(
    metric: &M,
    x: &SpacetimePoint,
    rel_step: f64,
) -> Result<[Matrix4<f64>; 4]> {
    let scale = metric.coordinate_scale(x);
    let mut grad = [Matrix4::zeros(); 4];
    for (sigma, d) in grad.iter_mut().enumerate() {
        let h = rel_step * scale[sigma];
        let plus = metric.components(&x.shifted(sigma, h))?;
        let minus = metric.components(&x.shifted(sigma, -h))?;
        *d = (plus - minus) / (2.0 * h);
    }
    Ok(grad)
}

/// `Γ^μ_{νρ} = ½ g^{μσ}(∂_ν g_{σρ} + ∂_ρ g_{σν} − ∂_σ g_{νρ})` with the
/// derivatives taken by central differences. Works for any [`Metric`].
pub fn christoffel_numeric<M: Metric + ?Sized>(
    metric: &M,
    x: &SpacetimePoint,
    rel_step: f64,
) -> Result<ChristoffelSymbols> {
    let g = metric.components(x)?;
    let g_inv = g.try_inverse().ok_or(Error::SingularMetric)?;
    let dg = metric_gradient(metric, x, rel_step)?;
    let mut out = ChristoffelSymbols::zero();
    for mu in 0..4 {
        for nu in 0..4 {
            for rho in nu..4 {
                let mut acc = 0.0;
                for sigma in 0..4 {
                    let term = dg[nu][(sigma, rho)] + dg[rho][(sigma, nu)] - dg[sigma][(nu, rho)];
                    acc += g_inv[(mu, sigma)] * term;
                }
                out.set_symmetric(mu, nu, rho, 0.5 * acc);
            }
        }
    }
    Ok(out)
}

/// Orthonormal frame `e_a^μ` (rows indexed by `a`) together with its
/// inverse coframe `e^a_μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vierbein {
    frame: Matrix4<f64>,
    coframe: Matrix4<f64>,
}

impl Vierbein {
    /// Builds the coframe by inverting `frame`.
    pub fn from_frame(frame: Matrix4<f64>) -> Result<Self> {
        let inv = frame
            .try_inverse()
            .ok_or_else(|| Error::Invariant("vierbein frame is singular".into()))?;
        Ok(Self {
            frame,
            coframe: inv.transpose(),
        })
    }

    /// `frame[(a, mu)] = e_a^μ`.
    pub fn frame(&self) -> &Matrix4<f64> {
        &self.frame
    }

    /// `coframe[(a, mu)] = e^a_μ`.
    pub fn coframe(&self) -> &Matrix4<f64> {
        &self.coframe
    }

    /// Local components `v^a = e^a_μ v^μ`.
    pub fn to_local(&self, v: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (a, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|mu| self.coframe[(a, mu)] * v[mu]).sum();
        }
        out
    }

    /// Coordinate components `v^μ = e_a^μ v^a`.
    pub fn to_coordinate(&self, v: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (mu, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|a| self.frame[(a, mu)] * v[a]).sum();
        }
        out
    }

    /// Largest deviation of `e^a_μ e_a^ν` and `e^a_μ e_b^μ` from identity.
    pub fn inverse_residual(&self) -> f64 {
        let one = Matrix4::identity();
        let r1 = (self.coframe.transpose() * self.frame - one).abs().max();
        let r2 = (self.coframe * self.frame.transpose() - one).abs().max();
        r1.max(r2)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            frame: self.frame * factor,
            coframe: self.coframe / factor,
        }
    }
}

/// `max |e_a^μ e_b^ν g_{μν} − η_{ab}|`.
pub fn verify_vierbein<M: Metric + ?Sized>(
    metric: &M,
    v: &Vierbein,
    x: &SpacetimePoint,
) -> Result<f64> {
    let g = metric.components(x)?;
    let gram = v.frame * g * v.frame.transpose();
    Ok((gram - eta()).abs().max())
}

/// Frame of the observer at rest with respect to Killing time:
/// `e_0 = ∂_t/√f`, `e_1 = √f ∂_r`, `e_2 = ∂_θ/r`, `e_3 = ∂_φ/(r sinθ)`.
pub fn static_vierbein_schwarzschild(x: &SpacetimePoint, r_s: f64) -> Result<Vierbein> {
    if !(r_s >= 0.0) {
        return Err(crate::error::invalid("r_s", "must be non-negative"));
    }
    let chart = Schwarzschild { r_s };
    let (r, s, _) = chart.check_domain(x)?;
    let sf = chart.f(r).sqrt();
    let frame = Matrix4::from_diagonal(&nalgebra::Vector4::new(
        1.0 / sf,
        sf,
        1.0 / r,
        1.0 / (r * s),
    ));
    let coframe = Matrix4::from_diagonal(&nalgebra::Vector4::new(sf, 1.0 / sf, r, r * s));
    Ok(Vierbein { frame, coframe })
}

/// A field of local inertial frames over the chart of a metric.
pub trait FrameField: Send + Sync {
    type Chart: Metric;

    fn metric(&self) -> &Self::Chart;

    fn vierbein(&self, x: &SpacetimePoint) -> Result<Vierbein>;

    /// Coframe derivatives: `grad[mu][(a, nu)] = ∂_μ e^a_ν`.
    ///
    /// The default is a central difference on [`FrameField::vierbein`].
    fn coframe_gradient(&self, x: &SpacetimePoint) -> Result<[Matrix4<f64>; 4]> {
        let scale = self.metric().coordinate_scale(x);
        let mut grad = [Matrix4::zeros(); 4];
        for (mu, d) in grad.iter_mut().enumerate() {
            let h = 1e-6 * scale[mu];
            let plus = self.vierbein(&x.shifted(mu, h))?;
            let minus = self.vierbein(&x.shifted(mu, -h))?;
            *d = (plus.coframe - minus.coframe) / (2.0 * h);
        }
        Ok(grad)
    }
}

/// Static-observer frame field on a Schwarzschild (or spherical
/// Minkowski) chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticFrame {
    chart: Schwarzschild,
}

impl StaticFrame {
    pub fn new(chart: Schwarzschild) -> Self {
        Self { chart }
    }
}

impl FrameField for StaticFrame {
    type Chart = Schwarzschild;

    fn metric(&self) -> &Schwarzschild {
        &self.chart
    }

    fn vierbein(&self, x: &SpacetimePoint) -> Result<Vierbein> {
        static_vierbein_schwarzschild(x, self.chart.r_s)
    }

    fn coframe_gradient(&self, x: &SpacetimePoint) -> Result<[Matrix4<f64>; 4]> {
        let (r, s, c) = self.chart.check_domain(x)?;
        let f = self.chart.f(r);
        let sf = f.sqrt();
        let df = self.chart.r_s / (r * r);
        let mut grad = [Matrix4::zeros(); 4];
        // only r and theta derivatives survive
        grad[1][(0, 0)] = df / (2.0 * sf);
        grad[1][(1, 1)] = -df / (2.0 * f * sf);
        grad[1][(2, 2)] = 1.0;
        grad[1][(3, 3)] = s;
        grad[2][(3, 3)] = r * c;
        Ok(grad)
    }
}

/// The identity frame on Cartesian Minkowski space.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CartesianFrame {
    chart: Minkowski,
}

impl FrameField for CartesianFrame {
    type Chart = Minkowski;

    fn metric(&self) -> &Minkowski {
        &self.chart
    }

    fn vierbein(&self, _x: &SpacetimePoint) -> Result<Vierbein> {
        Ok(Vierbein {
            frame: Matrix4::identity(),
            coframe: Matrix4::identity(),
        })
    }

    fn coframe_gradient(&self, _x: &SpacetimePoint) -> Result<[Matrix4<f64>; 4]> {
        Ok([Matrix4::zeros(); 4])
    }
}
