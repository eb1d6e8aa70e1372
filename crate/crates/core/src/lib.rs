//! Spin decoherence of a spin-1/2 wave packet carried through curved
//! spacetime.
//!
//! The crate follows a packet's centroid along a prescribed world line,
//! accumulates the local Lorentz transformation produced by the external
//! force and by the changing local inertial frame, maps it to
//! momentum-dependent Wigner rotations of the spin, and traces out the
//! momentum to obtain the reduced spin density matrix and its entropy.
//!
//! * [`geometry`]: metrics, the static vierbein field, connection coefficients.
//! * [`transport`]: world lines, the infinitesimal local Lorentz transformation
//!   and its time-ordered exponential.
//! * [`lorentz`]: standard boosts, Wigner rotations, the spin-1/2 representation.
//! * [`wavepacket`]: momentum grids, packets, reduced density matrices, entropy.
//! * [`schwarzschild`]: closed forms for circular orbits around a black hole and
//!   the numeric pipeline that checks them.
//! * [`runner`]: configuration files, CSV curve tables and the validation suite
//!   used by the `spindecoh` binary.
//!
//! Units are natural: `c = 1`, and the scenario layer also fixes `r_s = 1`
//! and `m = 1`.

// `!(x > 0.0)` is used on purpose so that NaN fails validation; index loops
// mirror tensor notation.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod geometry;
pub mod lorentz;
pub mod runner;
pub mod schwarzschild;
pub mod transport;
pub mod wavepacket;

pub use error::{Error, Result};
