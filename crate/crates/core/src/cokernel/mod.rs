//! The cokernel bigroupoid of a functor between permutative models, its
//! homotopy groups and long exact sequence, the double category of
//! squares, and the Postnikov tower.

mod bigroupoid;
mod double;
mod homotopy;
mod postnikov;

pub use bigroupoid::{build_cokernel, c_f_embed, tensor_one_cells, CokBigroupoid, CokOneCell, CokTwoCell};
pub use double::{double_category_check, double_check_size, DoubleCell, Transport};
pub use homotopy::{
    cok_homotopy_groups, enumerate_homotopy, long_exact_sequence, CokHomotopy, EnumeratedHomotopy, FiniteGroupTable,
    LesReport, Pi1,
};
pub use postnikov::{postnikov_tower, PostnikovReport, PostnikovTower, K0};
