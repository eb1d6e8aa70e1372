//! Generated spin entropy against proper time at r_s/r = 0.9, v/c = 0.8,
//! w/mc = 0.1, as CSV on standard output.

use spin_decoherence::runner::{run_fig1, ScenarioConfig};

fn main() -> spin_decoherence::Result<()> {
    let cfg = ScenarioConfig {
        tau_count: 41,
        ..ScenarioConfig::fig1()
    };
    print!("{}", run_fig1(&cfg)?.to_csv(None));
    Ok(())
}
