#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;
use proptest::prelude::*;

use spin_decoherence::geometry::{
    christoffel, christoffel_numeric, metric_gradient, schwarzschild_metric,
    static_vierbein_schwarzschild, verify_vierbein, Metric, SpacetimePoint,
};
use spin_decoherence::lorentz::{
    spin_half_rep, wigner_rotation, LocalMomentum, SpinHalfRep, WignerRotation,
};
use spin_decoherence::schwarzschild::{
    entropy_curve, exact_grid_for, l_factor, phase_average_on, pipeline_density, pipeline_entropy,
    CurveMode, SchwarzschildScenario,
};
use spin_decoherence::transport::{LorentzGenerator, LorentzTransform};
use spin_decoherence::wavepacket::{evolve_spin, von_neumann_entropy, GridSpec};

fn lorentz(boost: [f64; 3], rot: [f64; 3]) -> LorentzTransform {
    let mut lt = LorentzTransform::identity();
    for axis in 1..=3 {
        lt = LorentzGenerator::boost(axis).exp(boost[axis - 1])
            * LorentzGenerator::rotation(axis).exp(rot[axis - 1])
            * lt;
    }
    lt
}

fn rep_distance(a: &SpinHalfRep, b: &SpinHalfRep) -> f64 {
    let plus = (a.matrix() - b.matrix())
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    let minus = (a.matrix() + b.matrix())
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    plus.min(minus)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn wigner_rotation_is_a_rotation(
        boost in prop::array::uniform3(-1.5f64..1.5),
        rot in prop::array::uniform3(-3.0f64..3.0),
        p in prop::array::uniform3(-4.0f64..4.0),
    ) {
        let lt = lorentz(boost, rot);
        let p = LocalMomentum::on_shell(p, 1.0).unwrap();
        let w = wigner_rotation(&lt, &p).unwrap();
        prop_assert!(w.residual() < 1e-9, "residual {}", w.residual());
        let d = spin_half_rep(&w);
        prop_assert!(d.unitarity_residual() < 1e-10);
        prop_assert!((d.determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn spin_representation_is_a_homomorphism_up_to_sign(
        a in prop::array::uniform3(-3.0f64..3.0),
        b in prop::array::uniform3(-3.0f64..3.0),
    ) {
        let wa = WignerRotation::from_axis_angle(a, a.iter().map(|x| x * x).sum::<f64>().sqrt());
        let wb = WignerRotation::from_axis_angle(b, b.iter().map(|x| x * x).sum::<f64>().sqrt());
        let composed = spin_half_rep(&wa.compose(&wb));
        let product = spin_half_rep(&wb) * spin_half_rep(&wa);
        prop_assert!(rep_distance(&composed, &product) < 1e-10);
    }

    #[test]
    fn wigner_rotations_compose_along_a_chain(
        b1 in prop::array::uniform3(-1.0f64..1.0),
        b2 in prop::array::uniform3(-1.0f64..1.0),
        p in prop::array::uniform3(-3.0f64..3.0),
    ) {
        // W(Λ₂Λ₁, p) = W(Λ₂, Λ₁p) W(Λ₁, p)
        let l1 = lorentz(b1, [0.3, -0.2, 0.5]);
        let l2 = lorentz(b2, [-0.4, 0.1, 0.2]);
        let p = LocalMomentum::on_shell(p, 1.0).unwrap();
        let moved = l1.apply(&p.as_local()).components();
        let p1 = LocalMomentum::from_four(moved, 1.0).unwrap();
        let whole = wigner_rotation(&(l2 * l1), &p).unwrap();
        let chained = wigner_rotation(&l1, &p).unwrap().compose(&wigner_rotation(&l2, &p1).unwrap());
        let gap = (whole.matrix() - chained.matrix()).abs().max();
        prop_assert!(gap < 1e-9, "gap {gap}");
    }

    #[test]
    fn static_vierbein_is_orthonormal(
        r_s in 0.1f64..10.0,
        r_over in 1.01f64..100.0,
        theta in 0.05f64..3.09,
        t in -50.0f64..50.0,
        phi in 0.0f64..std::f64::consts::TAU,
    ) {
        let chart = schwarzschild_metric(r_s).unwrap();
        let x = SpacetimePoint::new(t, r_s * r_over, theta, phi);
        let v = static_vierbein_schwarzschild(&x, r_s).unwrap();
        prop_assert!(verify_vierbein(&chart, &v, &x).unwrap() < 1e-12);
        prop_assert!(v.inverse_residual() < 1e-12);
    }

    #[test]
    fn connection_is_metric_compatible(r_over in 1.05f64..50.0, theta in 0.2f64..2.9) {
        // ∂_ρ g_{μν} = Γ^λ_{ρμ} g_{λν} + Γ^λ_{ρν} g_{μλ}
        let chart = schwarzschild_metric(1.0).unwrap();
        let x = SpacetimePoint::new(0.0, r_over, theta, 1.0);
        let g = chart.components(&x).unwrap();
        let gamma = christoffel(&chart, &x).unwrap();
        let dg = metric_gradient(&chart, &x, 1e-5).unwrap();
        let mut worst: f64 = 0.0;
        for rho in 0..4 {
            for mu in 0..4 {
                for nu in 0..4 {
                    let mut rhs = 0.0;
                    for l in 0..4 {
                        rhs += gamma.get(l, rho, mu) * g[(l, nu)] + gamma.get(l, rho, nu) * g[(mu, l)];
                    }
                    worst = worst.max((dg[rho][(mu, nu)] - rhs).abs());
                }
            }
        }
        // central differences lose accuracy with the size of the derivatives near r_s
        let scale = dg.iter().map(|d| d.abs().max()).fold(1.0, f64::max);
        prop_assert!(worst < 1e-7 * scale, "worst {worst}, scale {scale}");
        let numeric = christoffel_numeric(&chart, &x, 1e-5).unwrap();
        let mut gap: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    gap = gap.max((numeric.get(a, b, c) - gamma.get(a, b, c)).abs());
                }
            }
        }
        prop_assert!(gap < 1e-7 * scale.max(gamma.max_abs()), "gap {gap}");
    }

    #[test]
    fn entropy_curves_are_bounded_and_approx_is_monotone(
        x in 0.02f64..0.98,
        v in 0.0f64..0.95,
        w in 0.0f64..0.2,
    ) {
        let s = SchwarzschildScenario::new(x, v, w).unwrap();
        let taus: Vec<f64> = (0..40).map(|k| k as f64 * 2.5).collect();
        let approx = entropy_curve(&s, &taus, CurveMode::Approx, 129).unwrap();
        let exact = entropy_curve(&s, &taus, CurveMode::Exact, 129).unwrap();
        prop_assert_eq!(approx[0].1, 0.0);
        prop_assert_eq!(exact[0].1, 0.0);
        for pair in approx.windows(2) {
            prop_assert!(pair[1].1 >= pair[0].1);
        }
        for (_, e) in approx.iter().chain(&exact) {
            prop_assert!((0.0..=1.0).contains(e));
        }
    }

    #[test]
    fn sign_of_l_follows_the_bracket(x in 0.01f64..0.99, v in 0.01f64..0.99) {
        let s = SchwarzschildScenario::new(x, v, 0.1).unwrap();
        let l = l_factor(&s);
        if x < 2.0 / 3.0 {
            prop_assert!(l > 0.0);
        } else if x > 2.0 / 3.0 {
            prop_assert!(l < 0.0);
        }
    }
}

#[test]
fn pipeline_matches_exact_mode_at_ten_times() {
    let s = SchwarzschildScenario::new(0.9, 0.8, 0.1).unwrap();
    let mut worst: f64 = 0.0;
    for k in 1..=10 {
        let tau = k as f64 * s.tau_s();
        let packet = s.packet(exact_grid_for(&s, tau, 129)).unwrap();
        let numeric = pipeline_entropy(&s, &packet, tau, 4096).unwrap();
        let exact = entropy_curve(&s, &[tau], CurveMode::Exact, 129).unwrap()[0].1;
        worst = worst.max((numeric - exact).abs());
    }
    assert!(worst < 1e-8, "worst entropy gap {worst:e}");
}

#[test]
fn pipeline_density_off_diagonal_is_the_phase_average() {
    // a spin-up packet rotated about axis 2 has |ρ↑↓| = |avg exp(iΩτ)| / 2
    let s = SchwarzschildScenario::new(0.5, 0.6, 0.1).unwrap();
    let packet = s.packet(GridSpec::default()).unwrap();
    let tau = 2.0 * s.tau_s();
    let rho = pipeline_density(&s, &packet, tau, 4096).unwrap();
    let magnitude = phase_average_on(&s, &packet, tau);
    let bloch = rho.bloch_vector();
    let transverse = (bloch[0] * bloch[0] + bloch[2] * bloch[2]).sqrt();
    assert!((transverse - magnitude).abs() < 1e-10);
    assert!(bloch[1].abs() < 1e-12);
}

#[test]
fn literal_evolution_agrees_with_exact_mode_at_short_times() {
    let s = SchwarzschildScenario::new(0.3, 0.8, 0.1).unwrap();
    let packet = s.packet(GridSpec::default()).unwrap();
    for k in 1..=10 {
        let tau = 1e-5 * k as f64 * s.tau_s();
        let lt = LorentzGenerator::from_matrix(
            *spin_decoherence::schwarzschild::numeric_generator(&s)
                .unwrap()
                .matrix(),
        )
        .exp(tau);
        let literal = von_neumann_entropy(&evolve_spin(&packet, &lt).unwrap()).unwrap();
        let exact = entropy_curve(&s, &[tau], CurveMode::Exact, 129).unwrap()[0].1;
        assert!(
            (literal - exact).abs() < 1e-8,
            "tau {tau}: {literal} vs {exact}"
        );
    }
}

#[test]
fn exact_quadrature_converges_with_nodes() {
    let s = SchwarzschildScenario::new(0.9, 0.8, 0.1).unwrap();
    let tau = 3.0 * s.tau_s();
    let at = |n| {
        let packet = s.packet(GridSpec::GaussHermite { nodes: n }).unwrap();
        phase_average_on(&s, &packet, tau)
    };
    let (a, b, c) = (at(17), at(65), at(129));
    assert!((b - c).abs() < 1e-12, "{b} vs {c}");
    assert!((a - c).abs() > (b - c).abs());
}

#[test]
fn packet_fully_dephases_at_long_times() {
    let s = SchwarzschildScenario::new(0.9, 0.8, 0.1).unwrap();
    let tau = 1e3 * s.tau_s();
    let curve = entropy_curve(&s, &[tau], CurveMode::Exact, 129).unwrap();
    assert!(curve[0].1 > 0.99, "S' = {}", curve[0].1);
    let packet = s.packet(exact_grid_for(&s, tau, 129)).unwrap();
    assert!(phase_average_on(&s, &packet, tau) < 0.05);
}
