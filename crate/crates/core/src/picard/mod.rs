//! Skeletal Picard groupoids and symmetric monoidal functors between them.

mod functor;
mod groupoid;
mod strictify;

pub use functor::{compose_functors, solve_constraint, validate_functor, Constraint, ConstraintSolution, PicFunctor};
pub use groupoid::{make_picard, PicGroupoid, PicMorphism, StructuralCells};
pub use strictify::{alpha0, are_equivalent, equivalence_functor, strictify, Alpha0, Strictification, WitnessSearch};
