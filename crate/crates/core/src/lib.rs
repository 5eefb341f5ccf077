//! Online unsupervised channel estimation for massive MIMO via unfolded
//! matching pursuit.
//!
//! A base station observing noisy uplink channel vectors `x = h + n` can
//! estimate `h` by greedy sparse recovery over a dictionary of steering
//! vectors. When the assumed array configuration (gains, positions) is
//! imperfect, that dictionary is wrong and estimation quality degrades. This
//! crate implements the whole pipeline:
//!
//! * [`array`] — antenna arrays (nominal and perturbed), steering vectors and
//!   steering-vector dictionaries over azimuth grids;
//! * [`channel`] — sparse multipath channel generation and a deterministic
//!   stream of noisy observations at a prescribed input SNR;
//! * [`estimators`] — least squares, single-atom projection, matching pursuit
//!   and orthogonal matching pursuit baselines;
//! * [`model`] — the unfolded network: a depth-`K` matching-pursuit recursion
//!   with a learnable tied weight matrix, trained online by Adam on the
//!   residual loss `½‖r_K‖²` from noisy observations alone;
//! * [`gradcheck`] — finite-difference verification of the hand-derived
//!   backward pass;
//! * [`checkpoint`] — bit-exact model serialization;
//! * [`experiments`] — reproducible experiment drivers (dictionary-mismatch
//!   SNR-loss sweep, online-learning run) with CSV output.
//!
//! All randomness flows from explicit `u64` seeds; repeated runs with the
//! same seed are bit-identical.

pub mod array;
pub mod channel;
pub mod checkpoint;
pub mod config;
pub mod error;
pub mod estimators;
pub mod experiments;
pub mod gradcheck;
mod kernels;
pub mod model;
pub mod rng;

pub use error::{Error, Result};
