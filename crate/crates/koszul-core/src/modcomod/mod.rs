//! Comodules over pointed curved coalgebras, modules over dg categories, the twisted
//! free and cofree functors, and their adjunction.

mod comodule;
mod module;
mod twist;
#[cfg(test)]
mod tests;

pub use comodule::{
    closed_maps_dim, comodule_maps, cotensor, hom_degrees, hom_differential, restrict, validate_comodule,
    Comodule, ComoduleMaps, Side,
};
pub use module::{apply_map, direct_sum, representable, shift, validate_module, zero_module, Module};
pub use twist::{fg_adjunction_check, twist_comodule, twist_module, FgCertificate, FgRow};
