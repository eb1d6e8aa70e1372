//! Orbits approaching the horizon: the rotation rate grows like 1/sqrt(f)
//! while the numeric generator keeps tracking the closed form.

use spin_decoherence::schwarzschild::{l_factor, numeric_generator, SchwarzschildScenario};

fn main() -> spin_decoherence::Result<()> {
    println!("r_s/r       L                 |lambda_13 - L|");
    for k in 1..=6 {
        let x = 1.0 - 10f64.powi(-k);
        let s = SchwarzschildScenario::new(x, 0.8, 0.1)?;
        let l = l_factor(&s);
        let numeric = numeric_generator(&s)?.get(1, 3);
        println!("{x:<11} {l:<17.9e} {:.2e}", (numeric - l).abs());
    }
    match SchwarzschildScenario::new(1.0, 0.8, 0.1) {
        Err(e) => println!("at the horizon: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
