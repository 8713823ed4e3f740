//! Binary non-linear cyclic codes at the Gilbert-Varshamov bound.
//!
//! The construction runs in two steps. [`autocyclic`] builds the set `C'` of
//! words whose nontrivial cyclic shifts all sit at normalized distance at
//! least `delta` from the word itself. [`packing`] then greedily keeps whole
//! orbits of `C'` and discards everything within cyclic distance `delta`,
//! leaving a cyclic code of minimum distance `delta` and size at least
//! `|C'| / (n 2^{H(delta) n})`. [`verify`] re-checks every claimed property
//! by brute force, and [`bounds`] evaluates the closed-form quantities.
//!
//! ```
//! use cyclic_gv::{autocyclic, packing, DistanceThreshold};
//!
//! let delta: DistanceThreshold = "2/7".parse().unwrap();
//! let cprime = autocyclic::enumerate_auto_cyclic(7, delta).unwrap();
//! let (code, trace) = packing::greedy_pack(&cprime, delta).unwrap();
//! assert!(packing::verify_rate_bound(cprime.len() as u64, code.len() as u64, 7, delta));
//! assert_eq!(trace.final_size, code.len() as u64);
//! ```

pub mod autocyclic;
pub mod bounds;
pub mod codeset;
pub mod codeword;
pub mod error;
pub mod packing;
mod par;
pub mod real;
pub mod rng;
pub mod verify;

pub use codeset::{CodeKind, CodeSet};
pub use codeword::{
    auto_cyclic_distance, cyclic_distance, hamming, shift, Codeword, DistanceThreshold,
    RationalDistance,
};
pub use error::{Error, ErrorKind, Result};
pub use real::Real;

/// Crate version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Trial-division primality, for the small lengths this crate handles.
pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}
