//! Finite simplicial sets, normalized and twisted chains, and functoriality.

mod chains;
mod sset;
#[cfg(test)]
mod tests;

pub use chains::{
    chains_on_map, cochain_algebra, edge_cochain, normalized_chains, twisted_chains, twisted_cochain_algebra,
    untwisting_pair, validate_normalized_chains, NormalizedChains,
};
pub use sset::{
    boundary, compose_maps, fixtures, identity_map, label_vertices, quotient, quotient_by_labels, quotient_map, simplex_map,
    sphere, standard_simplex, subset_complex, surjection_to_word, validate_map, validate_sset, word_to_surjection,
    DegenerateForm, Elem, FiniteSimplicialSet, Simplex, SimplicialMap,
};

/// Sphere models `Δ^n/∂Δ^n`.
pub use sset::sphere as simplex_quotient;
