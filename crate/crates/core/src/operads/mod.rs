//! Objects of the label/orientation posets and the (pre)operads built from them.
//!
//! Ground sets are always `0..k` internally. Textual forms (see [`syntax`])
//! use 1-based element names.

mod enumerate;
mod family;
mod object;
mod structure;
pub mod syntax;

pub use enumerate::{bits_needed, enumerate_family, enumerate_family_with, DEFAULT_MAX_BITS};
pub use family::{in_family, is_morphism, linear_order, FamilyTag};
pub(crate) use family::leq as family_leq;
pub(crate) use family::{find_cycle, topo_ranks};
pub use object::{pair_count, pair_index, CanonicalKey, Edge, GraphObject};
pub use structure::{
    box_product, dual, gamma, restrict, sigma_action, top_decomposition, Permutation,
};
