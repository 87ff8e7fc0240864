//! Exact computer algebra for finite groupoids and the ring constructions
//! attached to them: groupoid-graded algebras, groupoid actions on sets and
//! algebras, smash products, skew groupoid rings, invariant subalgebras,
//! Galois coordinate systems, duality verification, and Morita contexts.
//!
//! All arithmetic is over arbitrary-precision rationals; every construction
//! is re-verified exhaustively after it is built, so a value of one of the
//! validated types is a certificate that the defining axioms hold.

pub mod algebra;
pub mod biset;
pub mod dual;
pub mod duality;
pub mod fixtures;
pub mod graded;
pub mod groupoid;
pub mod gset;
pub mod json;
pub mod linalg;
pub mod morita;
pub mod scalar;
pub mod skew;
pub mod smash;

pub use algebra::{AlgebraError, AlgebraMap, ModuleRep, Side, StructureAlgebra};
pub use biset::{orbit_gset, partial_bijection_groupoid, BiSet, BisetError, OrbitGSet};
pub use dual::DualGroupoidAlgebra;
pub use duality::{verify_duality, DualityReport};
pub use graded::{groupoid_algebra, GradedAlgebra};
pub use groupoid::{right_cosets, CosetPartition, Groupoid, GroupoidError, Subgroupoid};
pub use gset::{check_morphism, ActionError, GSet, GSetMorphism, MorphismClass};
pub use linalg::{Mat, Subspace};
pub use morita::{build_morita_context, MoritaContext, XGradedModule};
pub use scalar::Scalar;
pub use skew::{gamma_action, skew_groupoid_ring, AlgebraAction, SkewRing};
pub use smash::{eta_embedding, induced_morphism, smash_product, SmashAlgebra};
