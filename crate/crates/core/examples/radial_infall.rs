//! Free fall from rest at infinity. The world line is a geodesic, so the
//! force term vanishes and only the static frame's turning contributes.

use spin_decoherence::geometry::{schwarzschild_metric, StaticFrame};
use spin_decoherence::transport::{
    four_acceleration, infinitesimal_lt, integrate_lorentz, RadialInfall,
};

fn main() -> spin_decoherence::Result<()> {
    let chart = schwarzschild_metric(1.0)?;
    let fall = RadialInfall::new(chart, 10.0)?;
    let frame = StaticFrame::new(chart);
    println!("tau        r          |a|          boost rate lambda_01");
    for k in 0..6 {
        let tau = 3.0 * k as f64;
        let a = four_acceleration(&fall, &frame, tau)?;
        let lambda = infinitesimal_lt(&fall, &frame, tau, 1.0)?;
        println!(
            "{tau:<10} {:<10.5} {:<12.3e} {:.9}",
            fall.radius(tau),
            a.max_abs(),
            lambda.get(0, 1)
        );
    }
    let lt = integrate_lorentz(&fall, &frame, 0.0, 15.0, 1.0, 4096)?;
    println!("Lambda(15, 0) metric residual {:.2e}", lt.metric_residual());
    Ok(())
}
