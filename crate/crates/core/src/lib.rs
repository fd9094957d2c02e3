//! Capacities of the amplitude-damping channel with Markov memory over two
//! uses, assisted by shared entanglement.
//!
//! The crate evaluates the closed-form capacity expressions and checks them
//! against brute-force density-matrix computations: Kraus channels applied to
//! explicit states, exchange-matrix entropies, and the Lindblad generator from
//! which the correlated noise is derived.

pub mod capacities;
pub mod channels;
pub mod entropy;
pub mod error;
pub mod lindblad;
pub mod matcore;
pub mod optimize;
pub mod sweep;
pub mod verify;

pub use capacities::{ce2, ce_lim, cp2, qe2, CapacityReport, EntanglementAnsatz};
pub use channels::{memory_channel, ChannelParams, KrausChannel};
pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, DensityMatrix};
