pub mod beta;
pub mod extv;
pub mod index_set;
pub mod spin;
pub mod tensor;

pub use beta::{beta, beta_k, is_pure};
pub use extv::{clifford_mul, ExtVElem};
pub use index_set::IndexSet;
pub use spin::{
    alpha, build_u_g, clifford_act, pure_spinor_of_subspace, spin_pairing, Parity, SpinElem,
    VVector,
};
pub use tensor::{alpha_pq_rs, kappa_apply, psi_tensor, ContractionScale, TensorElem};
