//! Circular orbits around a Schwarzschild black hole, seen by the static
//! observer.
//!
//! For this orbit the local Lorentz generator is constant along the path: a
//! rotation about axis 2 at rate `L` plus a boost along axis 1 at rate
//! `−L tanh ξ`. A momentum component at `p³` then sees its spin rotated about
//! axis 2 at rate `Ω(p³) = [1 − p³ tanh ξ / (p⁰ + m)] L`, and averaging the
//! phase `exp(iΩτ)` over the packet gives the generated entropy.
//!
//! Everything here is dimensionless with `c = r_s = m = 1`: radii are in
//! `r_s`, momenta in `mc`, times in `r_s/c`. [`Units`] converts back.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::geometry::{schwarzschild_metric, StaticFrame};
use crate::lorentz::{
    signed_angle_about, spin_half_rep, transported_wigner_rotation, wigner_rotation, LocalMomentum,
};
use crate::transport::{
    generator_samples, infinitesimal_lt, integrate_lorentz, ordered_exponential, CircularOrbit,
    LorentzGenerator, LorentzTransform,
};
use crate::wavepacket::{
    binary_entropy, evolve_spin_with, gaussian_packet, momentum_average, von_neumann_entropy,
    GridSpec, SpinDensityMatrix, WavePacket,
};

/// A circular orbit at `r` with local speed `v = tanh ξ` carrying a Gaussian
/// packet of momentum spread `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchwarzschildScenario {
    r_s_over_r: f64,
    xi: f64,
    w_over_mc: f64,
}

impl SchwarzschildScenario {
    pub fn new(r_s_over_r: f64, v_over_c: f64, w_over_mc: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&v_over_c) {
            return Err(invalid(
                "v_over_c",
                format!("must lie in [0, 1), got {v_over_c}"),
            ));
        }
        Self::from_rapidity(r_s_over_r, v_over_c.atanh(), w_over_mc)
    }

    pub fn from_rapidity(r_s_over_r: f64, xi: f64, w_over_mc: f64) -> Result<Self> {
        if r_s_over_r >= 1.0 {
            return Err(Error::Horizon {
                r: 1.0 / r_s_over_r,
                r_s: 1.0,
            });
        }
        if !(r_s_over_r > 0.0) {
            return Err(invalid(
                "r_s_over_r",
                format!("must lie in (0, 1), got {r_s_over_r}"),
            ));
        }
        if !(xi >= 0.0 && xi.is_finite()) {
            return Err(invalid("xi", "rapidity must be finite and non-negative"));
        }
        if !(w_over_mc >= 0.0 && w_over_mc.is_finite()) {
            return Err(invalid("w_over_mc", "must be finite and non-negative"));
        }
        Ok(Self {
            r_s_over_r,
            xi,
            w_over_mc,
        })
    }

    pub fn r_s_over_r(&self) -> f64 {
        self.r_s_over_r
    }

    /// Orbit radius in units of `r_s`.
    pub fn r(&self) -> f64 {
        1.0 / self.r_s_over_r
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn v_over_c(&self) -> f64 {
        self.xi.tanh()
    }

    pub fn w(&self) -> f64 {
        self.w_over_mc
    }

    /// Centroid momentum `q³ = mc sinh ξ`.
    pub fn q3(&self) -> f64 {
        self.xi.sinh()
    }

    /// `τ_s = m r_s / w`; infinite for a sharp packet.
    pub fn tau_s(&self) -> f64 {
        if self.w_over_mc == 0.0 {
            f64::INFINITY
        } else {
            1.0 / self.w_over_mc
        }
    }

    pub fn with_w(&self, w_over_mc: f64) -> Result<Self> {
        Self::from_rapidity(self.r_s_over_r, self.xi, w_over_mc)
    }

    /// World line and static frame field for the numeric pipeline.
    pub fn setup(&self) -> (CircularOrbit, StaticFrame) {
        let chart = schwarzschild_metric(1.0).expect("unit horizon radius");
        let orbit =
            CircularOrbit::new(chart, self.r(), self.xi).expect("scenario validated r > r_s");
        (orbit, StaticFrame::new(chart))
    }

    pub fn packet(&self, spec: GridSpec) -> Result<WavePacket> {
        gaussian_packet(self.q3(), self.w_over_mc, 1.0, spec)
    }
}

/// Conversion from the dimensionless scenario to physical units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    pub r_s: f64,
    pub mass: f64,
    pub c: f64,
}

impl Units {
    pub fn time(&self, natural: f64) -> f64 {
        natural * self.r_s / self.c
    }

    pub fn rate(&self, natural: f64) -> f64 {
        natural * self.c / self.r_s
    }

    pub fn momentum(&self, natural: f64) -> f64 {
        natural * self.mass * self.c
    }

    pub fn length(&self, natural: f64) -> f64 {
        natural * self.r_s
    }
}

/// `L = (c cosh²ξ sinh ξ / r) [1 − r_s / (2 r f)] √f`.
///
/// Evaluated as `cosh²ξ sinh ξ · x (2 − 3x) / (2 √(1 − x))` with `x = r_s/r`,
/// which makes the zero at `r = 3 r_s / 2` exact.
pub fn l_factor(s: &SchwarzschildScenario) -> f64 {
    let x = s.r_s_over_r;
    let (sh, ch) = (s.xi.sinh(), s.xi.cosh());
    ch * ch * sh * x * (2.0 - 3.0 * x) / (2.0 * (1.0 - x).sqrt())
}

/// The bracket `1 − r_s / (2 r f)`.
pub fn gravity_bracket(s: &SchwarzschildScenario) -> f64 {
    let x = s.r_s_over_r;
    (2.0 - 3.0 * x) / (2.0 * (1.0 - x))
}

/// Spin rotation rate about axis 2 for the momentum component at `p³`.
pub fn omega(p3: f64, s: &SchwarzschildScenario) -> f64 {
    let p0 = (p3 * p3 + 1.0).sqrt();
    (1.0 - p3 / (p0 + 1.0) * s.xi.tanh()) * l_factor(s)
}

/// Closed-form rates of the small-spread expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceCoefficients {
    pub l: f64,
    pub a: f64,
    pub b: f64,
    pub tau_s: f64,
}

impl DecoherenceCoefficients {
    /// `|B| τ_s`, the dimensionless decoherence rate.
    pub fn normalized_rate(&self) -> f64 {
        self.b.abs() * self.tau_s
    }
}

pub fn small_w_coefficients(s: &SchwarzschildScenario) -> DecoherenceCoefficients {
    let l = l_factor(s);
    let w = s.w_over_mc;
    let (th, ch) = (s.xi.tanh(), s.xi.cosh());
    let a = l * w * w * th * th / 2.0 * (1.0 / ((ch + 1.0) * (ch + 1.0)) - 1.0 / (ch * ch));
    let b = l * w * th * (1.0 / ch - 1.0 / (ch + 1.0));
    DecoherenceCoefficients {
        l,
        a,
        b,
        tau_s: s.tau_s(),
    }
}

/// `|avg exp(iΩτ)| ≃ (1 + A²τ²)^(−1/4) exp[−B²τ² / (4(1 + A²τ²))]`.
pub fn phase_average_approx(c: &DecoherenceCoefficients, tau: f64) -> f64 {
    let at2 = (c.a * tau).powi(2);
    let bt2 = (c.b * tau).powi(2);
    (1.0 + at2).powf(-0.25) * (-bt2 / (4.0 * (1.0 + at2))).exp()
}

/// Chooses a grid that resolves `exp(iΩτ)` over the packet: Gauss–Hermite
/// with `nodes` points while the phase varies slowly across the packet, a
/// trapezoid over `±8w` sized to the phase gradient otherwise.
pub fn exact_grid_for(s: &SchwarzschildScenario, tau: f64, nodes: usize) -> GridSpec {
    // |dΩ/dp³| = |L tanh ξ| / (p⁰ (p⁰ + 1)) ≤ |L tanh ξ| / 2
    let k = 0.5 * (l_factor(s) * s.xi.tanh()).abs() * tau.abs();
    let wk = s.w_over_mc * k;
    if wk <= 10.0 {
        return GridSpec::GaussHermite { nodes };
    }
    let needed = (1.25 * (16.0 * wk + 192.0) / std::f64::consts::TAU).ceil() as usize + 1;
    let n = needed.max(nodes) | 1;
    GridSpec::Uniform {
        nodes: n,
        half_width: 8.0,
    }
}

/// `|avg exp(iΩτ)|` by quadrature over the Gaussian packet, with the full
/// `Ω(p³)`.
pub fn phase_average_exact(s: &SchwarzschildScenario, tau: f64, nodes: usize) -> Result<f64> {
    let packet = s.packet(exact_grid_for(s, tau, nodes))?;
    Ok(phase_average_on(s, &packet, tau))
}

/// [`phase_average_exact`] at many times, reusing the packet while the grid
/// choice stays the same.
pub fn phase_averages_exact(
    s: &SchwarzschildScenario,
    taus: &[f64],
    nodes: usize,
) -> Result<Vec<f64>> {
    let mut cached: Option<(GridSpec, WavePacket)> = None;
    let mut out = Vec::with_capacity(taus.len());
    for &t in taus {
        let spec = exact_grid_for(s, t, nodes);
        let packet = match &cached {
            Some((cs, p)) if *cs == spec => p,
            _ => {
                let p = s.packet(spec)?;
                &cached.insert((spec, p)).1
            }
        };
        out.push(phase_average_on(s, packet, t));
    }
    Ok(out)
}

/// `|avg exp(iΩτ)|` over a given packet.
pub fn phase_average_on(s: &SchwarzschildScenario, packet: &WavePacket, tau: f64) -> f64 {
    let l = l_factor(s);
    let th = s.xi.tanh();
    momentum_average(packet, |p| {
        let rate = (1.0 - p.spatial()[2] / (p.energy() + 1.0) * th) * l;
        Complex64::from_polar(1.0, rate * tau)
    })
    .norm()
}

/// `S′ = H(P)` with `P = ½ (1 − m)`, `m = |avg|`.
///
/// Written as `1 − [(1 + m) log₂(1 + m) + (1 − m) log₂(1 − m)] / 2` so that
/// the approach to `S′ = 1` keeps full relative precision and stays
/// monotone in `m`.
pub fn entropy_from_phase_average(magnitude: f64) -> f64 {
    let m = magnitude.clamp(0.0, 1.0);
    if m > 0.5 {
        return binary_entropy(0.5 * (1.0 - m));
    }
    let g = ((1.0 + m) * m.ln_1p() + (1.0 - m) * (-m).ln_1p()) / (2.0 * std::f64::consts::LN_2);
    (1.0 - g).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveMode {
    /// Small-spread closed form.
    Approx,
    /// Quadrature over the packet with the full `Ω(p³)`.
    Exact,
}

/// Generated entropy `S′(τ)` at each `τ` (in `r_s/c`).
pub fn entropy_curve(
    s: &SchwarzschildScenario,
    taus: &[f64],
    mode: CurveMode,
    nodes: usize,
) -> Result<Vec<(f64, f64)>> {
    if let Some(bad) = taus.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(invalid("tau", format!("{bad} is not a non-negative time")));
    }
    match mode {
        CurveMode::Approx => {
            let c = small_w_coefficients(s);
            Ok(taus
                .iter()
                .map(|&t| (t, entropy_from_phase_average(phase_average_approx(&c, t))))
                .collect())
        }
        CurveMode::Exact => Ok(taus
            .iter()
            .zip(phase_averages_exact(s, taus, nodes)?)
            .map(|(&t, m)| (t, entropy_from_phase_average(m)))
            .collect()),
    }
}

/// `|B| τ_s` across `r_s/r` at fixed `v/c` and `w/mc`.
pub fn decoherence_rate_curve(
    r_s_over_r: &[f64],
    v_over_c: f64,
    w_over_mc: f64,
) -> Result<Vec<(f64, f64)>> {
    if !(w_over_mc > 0.0) {
        return Err(invalid(
            "w_over_mc",
            "the rate is normalized by τ_s and needs w > 0",
        ));
    }
    r_s_over_r
        .iter()
        .map(|&x| {
            let s = SchwarzschildScenario::new(x, v_over_c, w_over_mc)?;
            Ok((x, small_w_coefficients(&s).normalized_rate()))
        })
        .collect()
}

/// How a finite transformation is turned into a spin rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WignerRoute {
    /// `W(Λ, p)` with the finite, integrated `Λ`.
    Literal,
    /// Time-ordered product of infinitesimal Wigner rotations at fixed local
    /// momentum.
    Transported,
}

/// `λ` at the start of the orbit, from the general transport machinery.
pub fn numeric_generator(s: &SchwarzschildScenario) -> Result<LorentzGenerator> {
    let (orbit, frame) = s.setup();
    infinitesimal_lt(&orbit, &frame, 0.0, 1.0)
}

/// `Λ(τ, 0)` integrated along the orbit with `steps` steps.
pub fn numeric_transform(
    s: &SchwarzschildScenario,
    tau: f64,
    steps: usize,
) -> Result<LorentzTransform> {
    let (orbit, frame) = s.setup();
    integrate_lorentz(&orbit, &frame, 0.0, tau, 1.0, steps)
}

/// Sampled generators `(λ_k, Δτ)` on `[0, τ]`.
pub fn numeric_samples(
    s: &SchwarzschildScenario,
    tau: f64,
    steps: usize,
) -> Result<Vec<(LorentzGenerator, f64)>> {
    let (orbit, frame) = s.setup();
    generator_samples(&orbit, &frame, 0.0, tau, 1.0, steps)
}

/// Signed Wigner angle about axis 2 for the component at `p3`, from sampled
/// generators.
pub fn wigner_angle_from_samples(
    samples: &[(LorentzGenerator, f64)],
    p3: f64,
    route: WignerRoute,
) -> Result<f64> {
    let p = LocalMomentum::along_z(p3, 1.0)?;
    let w = match route {
        WignerRoute::Literal => wigner_rotation(&ordered_exponential(samples), &p)?,
        WignerRoute::Transported => transported_wigner_rotation(samples, &p),
    };
    Ok(signed_angle_about(&w, [0.0, 1.0, 0.0]))
}

/// Numeric counterpart of `Ω(p³) τ`.
pub fn numeric_wigner_angle(
    s: &SchwarzschildScenario,
    p3: f64,
    tau: f64,
    steps: usize,
    route: WignerRoute,
) -> Result<f64> {
    wigner_angle_from_samples(&numeric_samples(s, tau, steps)?, p3, route)
}

/// Reduced spin state after `τ`, each momentum component rotated by its
/// transported Wigner rotation.
pub fn pipeline_density(
    s: &SchwarzschildScenario,
    packet: &WavePacket,
    tau: f64,
    steps: usize,
) -> Result<SpinDensityMatrix> {
    let samples = numeric_samples(s, tau, steps)?;
    evolve_spin_with(packet, |p| {
        Ok(spin_half_rep(&transported_wigner_rotation(&samples, p)))
    })
}

pub fn pipeline_entropy(
    s: &SchwarzschildScenario,
    packet: &WavePacket,
    tau: f64,
    steps: usize,
) -> Result<f64> {
    von_neumann_entropy(&pipeline_density(s, packet, tau, steps)?)
}
