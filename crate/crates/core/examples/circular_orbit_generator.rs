//! Local Lorentz generator seen by a particle on a circular orbit, split into
//! the part from the external force and the part from the turning frame.

use spin_decoherence::schwarzschild::{l_factor, SchwarzschildScenario};
use spin_decoherence::transport::infinitesimal_lt_parts;

fn main() -> spin_decoherence::Result<()> {
    let s = SchwarzschildScenario::new(0.9, 0.8, 0.1)?;
    let (orbit, frame) = s.setup();
    let parts = infinitesimal_lt_parts(&orbit, &frame, 0.0, 1.0)?;
    let show = |label: &str, m: &nalgebra::Matrix4<f64>| {
        println!("{label}:");
        for a in 0..4 {
            println!(
                "  {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
                m[(a, 0)],
                m[(a, 1)],
                m[(a, 2)],
                m[(a, 3)]
            );
        }
    };
    show("acceleration", parts.acceleration.matrix());
    show("frame change", parts.frame_change.matrix());
    show("total", parts.total().matrix());
    let l = l_factor(&s);
    println!(
        "closed form: rotation rate L = {l:.9}, boost rate -L tanh(xi) = {:.9}",
        -l * s.v_over_c()
    );
    Ok(())
}
