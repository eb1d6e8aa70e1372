//! Decoherence rate |B| tau_s against r_s/r at v/c = 0.8, with the zero at
//! r = 3 r_s / 2 and the blow-up at the horizon.

use spin_decoherence::schwarzschild::decoherence_rate_curve;

fn main() -> spin_decoherence::Result<()> {
    let xs: Vec<f64> = (1..=19)
        .map(|i| i as f64 / 20.0)
        .chain([2.0 / 3.0, 0.99, 0.999, 0.9999])
        .collect();
    let mut curve = decoherence_rate_curve(&xs, 0.8, 0.1)?;
    curve.sort_by(|a, b| a.0.total_cmp(&b.0));
    println!("r_s_over_r,abs_B_times_tau_s");
    for (x, b) in curve {
        println!("{x:.6},{b:.9e}");
    }
    Ok(())
}
