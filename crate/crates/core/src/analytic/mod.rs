//! Phase-mask interaction, photon-order decomposition and free propagation.
//!
//! Everything here acts on the co-moving envelope; the carrier
//! `e^{i k0 x − i E0 t/ħ}` is kept implicit.

mod mask;
mod orders;
mod vacuum;

pub use mask::{apply_interaction, build_phase_mask, PhaseMask};
pub use orders::{
    order_amplitudes_exact, order_series_printed, order_series_taylor, transverse_envelope, weak_field_order,
    OrderAmplitude, OrderDecomposition, MAX_ORDER,
};
pub use vacuum::{free_propagate_axes, vacuum_propagate};
