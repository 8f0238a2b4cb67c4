//! Truncated Fock-space engine.
//!
//! States live in a finite number basis `|0⟩ … |N-1⟩` chosen by a
//! [`TruncationPolicy`]. Every builder verifies that the probability mass it
//! discards is below the policy's tail tolerance and fails with
//! [`Error::TruncationOverflow`](crate::Error::TruncationOverflow) otherwise.

mod beam_splitter;
mod channels;
mod moments;
mod policy;
mod state;
mod two_mode;

pub use beam_splitter::{beam_splitter_apply, BeamSplitter};
pub use channels::{loss_channel, photon_add};
pub use moments::{
    antinormal_from_normal, antinormal_moment_direct, moment_set, normal_moment, MAX_MOMENT_ORDER,
};
pub use policy::TruncationPolicy;
pub use state::{coherent_state, thermal_state, FockDensity, FockVector};
pub use two_mode::{
    condition_no_click, TwoModeDensity, TwoModeDims, TwoModeMixture, DENSE_JOINT_CAP,
    MIXTURE_MODE_CAP,
};
