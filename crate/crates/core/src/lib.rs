//! Exact computation of the homological Z2-index of the Grassmannian
//! G(2n,n) under the orthocomplement involution.
//!
//! The quotient G(2n,n)/Z2 is O(2n)/G for the wreath product
//! G = O(n) wr Z2, so the index can be read off from exact mod-2
//! algebra: present H*(BG) through external Steenrod squares over
//! H*(BO(n)) = Z2[w1,...,wn], form the kernel ideal of the restriction
//! to O(2n)/G, and find the largest d with c^d outside the ideal.
//!
//! Module map:
//! - [`monomial`]: the polynomial algebra Z2[w1,...,wn], deg wi = i
//! - [`wreath`]: H*(B(O(n) wr Z2)) in the classifying-space limit;
//!   Sqe, the odot pairing, and the cup-product table
//! - [`gf2`]: streaming sparse row echelon over GF(2)
//! - [`kernel`]: kernel-ideal generators, membership, and the index
//! - [`numeric`]: floating-point checks of the two equivariant maps
//!   (projection-matrix sphere map, block-diagonal embedding)

pub mod gf2;
pub mod kernel;
pub mod monomial;
pub mod numeric;
pub mod wreath;

pub use gf2::{EchelonState, Membership, SparseRow};
pub use kernel::{
    compute_index, kernel_generators, replicate_hand_relations, IndexOptions, IndexReport,
    KernelError, KernelGenerators, VerifiedRelation,
};
pub use monomial::{binom_mod2, enumerate_monomials, Monomial, PolyZ2};
pub use numeric::{verify_equivariant_maps, NumericOptions, NumericSummary, ProjectionMatrix};
pub use wreath::{odot, sqe, wreath_basis, WreathBasis, WreathBasisElement, WreathClass};
