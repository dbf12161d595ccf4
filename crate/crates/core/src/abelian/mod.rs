//! Exact arithmetic for finitely generated abelian groups.

mod group;
mod hom;
mod modular;
mod snf;

pub use group::{FgAbGroup, GroupElement, GroupIndex};
pub use hom::{hom_count, is_exact_at, present_quotient, GroupHom, QuotientPresentation, Subquotients};
pub use modular::{solve_linear, solve_mod, ModularSolution};
pub use snf::{smith_normal_form, solve_integer, IntMatrix, SmithForm};
