//! Symmetric 3-cocycles and their cohomology.

mod cohomology;
mod forms;
mod quadratic;
mod symmetric;
mod table;

pub use cohomology::{
    are_cohomologous, coboundary_of, cocycle_space, enumerate_h3_sym, Cochain2, CocycleSpace, H3Sym,
};
pub use forms::{h_mu_pair, reduce_cyclic, rho_biadditive, rho_cyclic, standard_h_mu};
pub use quadratic::{quadratic_of, validate_quadratic, QuadraticMap};
pub use symmetric::{periodic_sample, validate_symmetric_cocycle, CocycleForm, SymCocycle3};
pub use table::CochainTable;
