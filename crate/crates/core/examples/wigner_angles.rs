//! Spin rotation angle for momenta across the packet, from the numeric
//! transport pipeline and from the closed-form rate.

use spin_decoherence::runner::keystone_momenta;
use spin_decoherence::schwarzschild::{
    numeric_samples, omega, wigner_angle_from_samples, SchwarzschildScenario, WignerRoute,
};

/// Into `(−π, π]`, the range of the extracted angle.
fn wrap(angle: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let a = angle.rem_euclid(tau);
    if a > std::f64::consts::PI {
        a - tau
    } else {
        a
    }
}

fn main() -> spin_decoherence::Result<()> {
    let s = SchwarzschildScenario::new(0.9, 0.8, 0.1)?;
    let tau = 0.05 * s.tau_s();
    let samples = numeric_samples(&s, tau, 4096)?;
    println!("tau = {tau} r_s/c");
    println!("p3          transported        Omega*tau          literal W(Lambda,p)");
    for p in keystone_momenta(&s).into_iter().step_by(4) {
        let transported = wigner_angle_from_samples(&samples, p, WignerRoute::Transported)?;
        let literal = wigner_angle_from_samples(&samples, p, WignerRoute::Literal)?;
        println!(
            "{p:<10.6}  {transported:<17.12}  {:<17.12}  {literal:.12}",
            wrap(omega(p, &s) * tau)
        );
    }
    Ok(())
}
