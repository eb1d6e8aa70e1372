//! Builds the static Schwarzschild frame at a few radii and prints how well
//! it orthonormalizes the metric, next to the finite-difference check of the
//! closed-form connection.

use spin_decoherence::geometry::{
    christoffel, christoffel_numeric, schwarzschild_metric, static_vierbein_schwarzschild,
    verify_vierbein, SpacetimePoint,
};

fn main() -> spin_decoherence::Result<()> {
    let chart = schwarzschild_metric(1.0)?;
    println!("r/r_s      |e e g - eta|   max |Gamma - Gamma_fd|");
    for r in [1.01, 1.5, 3.0, 10.0, 100.0] {
        let x = SpacetimePoint::new(0.0, r, 1.2, 0.3);
        let v = static_vierbein_schwarzschild(&x, 1.0)?;
        let exact = christoffel(&chart, &x)?;
        let numeric = christoffel_numeric(&chart, &x, 1e-5)?;
        let mut gap: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    gap = gap.max((exact.get(a, b, c) - numeric.get(a, b, c)).abs());
                }
            }
        }
        println!(
            "{r:<10} {:<15.3e} {gap:.3e}",
            verify_vierbein(&chart, &v, &x)?
        );
    }
    Ok(())
}
