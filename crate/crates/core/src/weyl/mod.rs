//! Classical root systems, characters, plethysms and branching.

pub mod branch;
pub mod character;
pub mod datum;
pub mod decomp;

pub use branch::{branch, branch_partition_rule, BranchRule};
pub use character::{
    char_mul, decompose, freudenthal_char, power_op, DominantCharacter, PowerKind,
};
pub use datum::{Family, RootDatum, Weight};
pub use decomp::{brauer_klimyk, power_decomposition, tensor, tensor_minuscule, Decomposition};
