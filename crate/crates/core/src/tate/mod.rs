//! Commensurability, indices and residues on monomial lattices, and the
//! engine checking reciprocity for symbols that are additive on lattices.

mod lattice;
mod operator;
mod residue;
mod xsymbol;

pub use lattice::{independence_check, lattice_sum_all, MonomialLattice, MonomialSet};
pub use operator::{
    index_additivity_check, index_additivity_sides, lattice_index, set_index, DiagonalOperator, MonomialOperator,
};
pub use residue::{
    abstract_residue_trace, abstract_residue_trace_with, classical_residue, classical_residue_local,
    residue_on_set, residue_window_bound, Truncation,
};
pub use xsymbol::{
    general_reciprocity_run, split_index_sides, tame_on_set, valuation_index_family, xsymbol_axiom_check, AxiomCheck,
    ReciprocityRun, ResidueSlot, XSymbol, XSymbolFamily, MAX_FAMILY,
};
