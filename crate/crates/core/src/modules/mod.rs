//! Weight modules at desk scale: highest-weight simples, Kac modules, rank-one
//! dense modules, super tensor products, endomorphisms, simplicity, shadows
//! and induced characters.

mod character;
mod dense;
mod endo;
mod highest;
mod kac;
mod shadow;
mod simplicity;
mod tensor;
mod window;

pub use character::{induced_character, CharacterWindow};
pub use dense::{odd_rank_one_module, rank1_cuspidal};
pub use endo::{endomorphisms, invariants_subspace, irreducible_tensor, EndoBasis, SplitTag};
pub use highest::{finite_simple_module, highest_weight_simple};
pub use kac::{even_part_algebra, even_part_simple, kac_module_type_one, odd_part_roots};
pub use shadow::shadow_of_module;
pub use simplicity::{simplicity_check, Verdict};
pub use tensor::{outer_tensor, tensor, TensorProduct};
pub use window::{Completeness, ModuleBuilder, ModuleWindow, SparseVec, Weight, WeightSpace};

use crate::combinatorics::CombError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModError {
    #[error("NotDominantIntegral: {0}")]
    NotDominantIntegral(String),
    #[error("NotTypeI: {0}")]
    NotTypeI(String),
    #[error("DegenerateParameters: {0}")]
    DegenerateParameters(String),
    #[error("AlgebraMismatch")]
    AlgebraMismatch,
    #[error("FactorNotSimple: {0}")]
    FactorNotSimple(String),
    #[error("CosetViolation: {0}")]
    CosetViolation(String),
    #[error("NotTotal: the operation needs a finite-dimensional module")]
    NotTotal,
    #[error("Unsupported: {0}")]
    Unsupported(String),
    #[error("BadParameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Comb(#[from] CombError),
    #[error("Internal: {0}")]
    Internal(String),
}

impl ModError {
    pub fn code(&self) -> &'static str {
        match self {
            ModError::NotDominantIntegral(_) => "NotDominantIntegral",
            ModError::NotTypeI(_) => "NotTypeI",
            ModError::DegenerateParameters(_) => "DegenerateParameters",
            ModError::AlgebraMismatch => "AlgebraMismatch",
            ModError::FactorNotSimple(_) => "FactorNotSimple",
            ModError::CosetViolation(_) => "CosetViolation",
            ModError::NotTotal => "NotTotal",
            ModError::Unsupported(_) => "Unsupported",
            ModError::BadParameter(_) => "BadParameter",
            ModError::Comb(e) => e.code(),
            ModError::Internal(_) => "Internal",
        }
    }
}
