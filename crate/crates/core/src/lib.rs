//! Crystals for quantum Borcherds-Bozec algebras: Borcherds-Cartan data,
//! abstract crystals and their tensor products, the elementary crystals,
//! the sequence model of `B(∞)`, the highest weight crystals `B(λ)`, and
//! checkers for axioms, morphisms and isomorphisms over finite windows.

pub mod cartan;
pub mod check;
pub mod crystal;
pub mod elementary;
pub mod error;
pub mod fault;
pub mod graph;
pub mod highest;
pub mod par;
pub mod sequence;
pub mod tensor;

pub use cartan::{CartanDatum, IndexClass, MatrixRule, MatrixViolation, Weight};
pub use check::{
    check_axioms, check_axioms_with, check_strict_morphism, is_normal, sync_isomorphism, Clause,
    IsoReport, MorphismReport, NormalityReport, Report, Violation,
};
pub use crystal::{Crystal, ExtInt, Op};
pub use elementary::{Elementary, ElementaryElement, ElementaryKind};
pub use error::{CrystalError, Result};
pub use graph::{
    close_component, explore, explore_with, highest_weight_elements, Edge, LabelledGraph, Node,
};
pub use highest::{build_blambda, hw_sum_embedding, pi_lambda, HighestWeightCrystal, HwElem};
pub use par::Exec;
pub use sequence::{
    build_binfty, psi_embedding, sequence_independence, IndexSequence, SeqElem, SequenceCrystal,
};
pub use tensor::{assoc_isomorphism, FactorTensor, Tensor, TensorElem};
