//! Dense two-qubit quantum-correlation toolkit.
//!
//! The crate covers four layers:
//!
//! * [`linalg`]: small dense complex matrices, tensor products, partial
//!   traces and transposes, a cyclic Jacobi Hermitian eigensolver and the
//!   entropy primitives built on it.
//! * [`states`]: the concurrence-parameterized pure families and Werner
//!   states used as initial conditions.
//! * [`channels`]: phase and amplitude damping Kraus channels, their
//!   application to two-qubit states and their isometric dilations.
//! * [`measures`]: concurrence, entanglement of formation, mutual
//!   information, one-way discord, negativity and geometric discord.
//!
//! Qubit 0 is always the leftmost tensor factor, i.e. the most significant
//! bit of a computational basis index. Entropies are in bits.

pub mod channels;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod optimize;
pub mod sample;
pub mod states;

pub use channels::{ChannelKind, DilationIsometry, QubitChannel};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenSystem, C64};
pub use measures::{CorrelationReport, DiscordResult, GeometricDiscord, MeasurementBasis, Side};
pub use states::{BellState, DensityMatrix, FamilyKind, PureState, StateFamily};
