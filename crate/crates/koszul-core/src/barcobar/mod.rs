//! Bar and cobar constructions, Maurer–Cartan sets and the adjunction between them.

mod adjunction;
mod bar;
mod cobar;
mod counit;
mod crosscheck;
mod mc;

pub use adjunction::{bar_hom_enumerate, bar_twisting, coalgebra_hom_enumerate, psi, psi_inv};
pub use bar::{bar, bar_nonreduced, bar_reduced, BarCoalgebra};
pub use cobar::{cobar, cobar_generators, cobar_label, cobar_on_morphism, compose_cobar_functors, validate_cobar_functor, CobarFunctor};
pub use counit::{cobar_bound_for, counit_check, CounitReport, CounitRow, COBAR_LENGTH_CAP};
pub use crosscheck::{reduced_nonreduced_check, retract_independence, RetractIsomorphism};

pub use mc::{
    candidate_count, candidates, cobar_hom_enumerate, mc_check, mc_check_report, mc_enumerate, mc_pullback, mc_residuals,
    object_maps, phi, phi_inv, tautological, MCElement,
};

#[cfg(test)]
mod tests;
