//! A rotation that is the same for every momentum only turns the spin; the
//! entropy of the reduced state is unchanged.

use num_complex::Complex64;
use spin_decoherence::transport::LorentzGenerator;
use spin_decoherence::wavepacket::{
    evolve_spin, reduced_density, von_neumann_entropy, MomentumGrid, WavePacket,
};

fn main() -> spin_decoherence::Result<()> {
    let grid = MomentumGrid::gauss_hermite(0.5, 0.2, 33, 1.0)?;
    let nodes = grid.nodes().to_vec();
    // spin direction varies with momentum, so the reduced state is mixed
    let up = nodes
        .iter()
        .map(|p| Complex64::new((2.0 * p).cos(), 0.0))
        .collect();
    let down = nodes
        .iter()
        .map(|p| Complex64::new((2.0 * p).sin(), 0.3))
        .collect();
    let packet = WavePacket::from_amplitudes(grid, up, down, 0.2)?;
    let rotation = LorentzGenerator::rotation(2).exp(1.1) * LorentzGenerator::rotation(3).exp(-0.4);
    let before = von_neumann_entropy(&reduced_density(&packet))?;
    let after = von_neumann_entropy(&evolve_spin(&packet, &rotation)?)?;
    println!("entropy before {before:.15}");
    println!("entropy after  {after:.15}");
    println!("difference     {:.2e}", (after - before).abs());
    Ok(())
}
