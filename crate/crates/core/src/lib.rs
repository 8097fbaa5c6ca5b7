//! Mod-2 characteristic-class computation engine and batch verifier.
//!
//! The crate replays every symbolic computation in a bound for involutions
//! whose fixed-point set is a disjoint union of an n-dimensional and a
//! 4-dimensional real projective space, and adjudicates each step against
//! the published closed forms.  Every nontrivial value is produced twice,
//! through independent routes, before it is trusted:
//!
//! * polynomial normal forms are computed both by an indexed
//!   coefficient-table engine ([`rings::RpMuElement`]) and by naive
//!   term rewriting ([`oracle::naive_normal_form`]);
//! * bracket classes on the 4-dimensional side are computed both from a
//!   binomial-coefficient closed form and by direct expansion of the
//!   defining product ([`charclass::bracket_f4`]);
//! * final counting numbers are recomputed by a brute-force pipeline that
//!   shares no ring code with the fast path.
//!
//! A disagreement between published text and computed ground truth is a
//! first-class outcome (`paper_mismatch`), reported with a witness term,
//! never silently patched.

pub mod binomial;
pub mod charclass;
pub mod emit;
mod error;
pub mod gf2;
mod linalg;
pub mod oracle;
pub mod report;
pub mod rings;
pub mod suite;
pub mod symmfunc;
pub mod wu;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
