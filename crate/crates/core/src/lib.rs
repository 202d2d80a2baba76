//! Hyperbolic volumes of two-bridge knots `K(p,q)` computed from a closed
//! formula in the Riley roots, without triangulating the complement.
//!
//! The pipeline is
//!
//! 1. [`knotparams`]: validate `(p,q)`, sign sequence, `ell`;
//! 2. [`polyseq`]: convergent polynomials `P_n, Q_n` and the Riley
//!    polynomial `P_{p-1}`;
//! 3. [`roots`]: all complex roots of `P_{p-1}`;
//! 4. [`volume`]: the points `z_n = P_n(x)/Q_n(x)` on the projective line,
//!    the pre-Bloch element and its volume via [`dilog`];
//!
//! while [`freegroup`] verifies the word identities in the free group
//! `F<u,v>` that the formula rests on.

pub mod dilog;
pub mod freegroup;
pub mod knotparams;
pub mod polyseq;
pub mod roots;
pub mod volume;

pub use knotparams::{make_params, BridgeParams, ParamError};
pub use volume::{volume, VolumeError, VolumeResult};
