//! Edge-labelled complete graph operads and the combinatorics around them.
//!
//! The crate is organised bottom-up:
//!
//! - [`operads`]: objects of the label/orientation posets, the families
//!   `G ⊇ Ke ⊇ K ⊇ M ⊇ MUp, MDown`, the operad structure maps and enumeration.
//! - [`poset`], [`complex`], [`homology`], [`collapse`], [`contractible`]:
//!   finite posets, simplicial complexes, integer homology and collapse engines
//!   used to certify contractibility of under/over posets.
//! - [`partition`]: ordered partitions compatible with an object, the
//!   compatibility complex built from them and the deterministic collapse
//!   driver for the two-label case.
//! - [`grothendieck`]: Grothendieck constructions of poset-valued functors and
//!   the recursive description of over-posets of `MDown`.
//! - [`cubes`]: little n-cubes with exact rational endpoints.

pub mod bitset;
pub mod collapse;
pub mod complex;
pub mod contractible;
pub mod cubes;
pub mod error;
pub mod grothendieck;
pub mod homology;
pub mod operads;
pub mod partition;
pub mod poset;
pub mod sampling;

pub use error::{Error, Result};
