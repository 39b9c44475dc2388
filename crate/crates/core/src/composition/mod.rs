//! Split octonions, structure-constant algebras, doubling, and quaternion
//! subalgebras.

mod algebra;
mod octonion;
mod subalgebra;

pub use algebra::{
    associativity_witness, commutativity_witness, doubling_chain, hurwitz_flags, Algebra,
    CompositionReport, CompositionWitness, HurwitzFlags, SplitOctonions, StructureAlgebra,
    StructureAlgebraDoc,
};
pub use octonion::{Mat2, Octonion};
pub use subalgebra::{
    find_zero_divisor, orthogonal_complement, quaternion_presentation, QuaternionPresentation,
    SubalgebraBasis, ZeroDivisorSearch,
};
