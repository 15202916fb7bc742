//! Exact verification, construction and search of `t`-designs in the
//! symmetric group `S_n` under the fixed-point metric
//! `d(σ, τ) = n − F(σ∘τ⁻¹)`.
//!
//! A subset `D ⊆ S_n` is a `t`-design when the first `t` power moments of its
//! distance distribution match those of `S_n` itself. The crate decides this
//! three ways (moments, reversed-Charlier dual frequencies, and the
//! rearranged `tcrit` equations), checks the size bound
//! `|D| ≥ n(n−1)⋯(n−t+1)` and its equality case, builds the classical
//! extremal families, and runs small exhaustive and backtracking searches.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod charlier;
pub mod construct;
pub mod design;
pub mod error;
pub mod exact;
pub mod field;
pub mod io;
pub mod perm;
pub mod permset;
pub mod search;

pub use error::{Error, Result};
pub use perm::{format_one_line, parse_one_line, Permutation};
pub use permset::PermSet;
