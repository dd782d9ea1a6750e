//! The modular-tensor-category data model: fusion rules, twists and dimensions,
//! validation, the unnormalized S-matrix, Gauss sums and structure admissibility.

mod category;
mod fusion;
mod modular;
mod structure;

use crate::cyclo::{CycMatrix, CycScalar, CycloError};

pub use category::{direct_sum, validate, Category, Factor, ValidationError};
pub(crate) use fusion::intmat;
pub use fusion::FusionData;
pub use modular::{
    gauss_sums, s_tilde_of, verify_modular, verlinde_fusion, GaussSums, ModularityReport,
    ModularityWitness,
};
pub use structure::{
    admissibility, choose_p, FactorStructure, RootChoice, SignatureRoot, StructureReport,
};

/// Simple objects are labelled `0..rank`.
pub type Label = usize;

/// Twists, quantum dimensions and an optional unnormalized S-matrix, indexed by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularDatum {
    pub twist: Vec<CycScalar>,
    pub qdim: Vec<CycScalar>,
    pub s_tilde: Option<CycMatrix>,
}

/// Malformed input shapes, caught before any axiom is checked.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DataError {
    #[error("the label set is empty")]
    EmptyLabelSet,
    #[error("no unit summand declared")]
    NoUnit,
    #[error("label {label} out of range for rank {rank}")]
    LabelOutOfRange { label: Label, rank: usize },
    #[error("{what} has length {found}, expected {expected}")]
    WrongLength {
        what: &'static str,
        expected: usize,
        found: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MtcError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("category is not modular ({0})")]
    NotModular(ModularityWitness),
    #[error("convention-inconsistency: computed S-matrix is not symmetric at ({i}, {j})")]
    ConventionInconsistency { i: Label, j: Label },
    #[error("root-enumeration-unsupported: anomaly of factor {factor} is not a root of unity ({anomaly})")]
    RootEnumerationUnsupported { factor: Label, anomaly: CycScalar },
    #[error("root index {index} out of range ({count} choices)")]
    RootIndexOutOfRange { index: usize, count: usize },
    #[error("expected {expected} root indices (one per factor), got {found}")]
    RootIndexCount { expected: usize, found: usize },
    #[error("verlinde-mismatch at ({i}, {j}, {k}): reconstructed {value}")]
    VerlindeMismatch {
        i: Label,
        j: Label,
        k: Label,
        value: String,
    },
    #[error("invalid label {0}")]
    InvalidLabel(Label),
    #[error(transparent)]
    Arithmetic(#[from] CycloError),
}

#[cfg(test)]
mod tests;
