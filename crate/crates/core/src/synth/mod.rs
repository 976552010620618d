//! Circuit synthesis for walk evolution, pulse compilation and the QFT.

mod exact;
mod pulse;
mod qft;
mod terms;
mod trotter;

pub use exact::{exact_propagator, exact_propagator_real, EigenPropagator};
pub use pulse::{circuit_to_pulses, replay, replay_with, PulseSchedule, PulseStrengths};
pub use qft::{build_qft_circuit, qft_reference, QftLevel};
pub use terms::{synth_line_walk_step, synth_onsite, synth_pauli_evolution};
pub use trotter::{time_sliced, trotterize, trotterize_dressed, Schedule, Segment, TrotterPlan};
