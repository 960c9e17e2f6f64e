//! Partial conjugations of right-angled Artin groups and the BNS invariant
//! `Σ¹` of the pure symmetric automorphism group `PΣ(A(Γ))`.
//!
//! Start from a [`SimplicialGraph`], wrap it in a [`PsaGroup`] to get the
//! generators and presentation, then use [`SigmaDecider`] to place characters
//! in `Σ¹` or its complement. [`theorem_b`] decides whether the group is
//! itself a right-angled Artin group. The [`oracle`] module holds exhaustive
//! reference implementations and the randomized self-test.

mod biclique;
mod bitset;
pub mod character;
pub mod error;
pub mod families;
pub mod graph;
pub mod oracle;
pub mod pconj;
pub mod raag;

pub use character::{
    classify_type, hyperbolic_set, inner_value, sigma_membership, sphere_dimension, Character, ComplementWitness,
    EpimorphismSketch, Image, Membership, SigmaDecider, SigmaReason, SigmaVerdict, TypeVerdict,
};
pub use error::{Error, Result};
pub use families::{
    construct_maximal_pset, extends_to_delta_pset, extends_to_pset, is_delta_pset, is_pset, maximal_delta_psets,
    maximal_psets, quadruple_is_delta, AdmissibleFamily, DeltaNode, FamilyKind, MaximalFamilies,
};
pub use graph::{GraphFormat, SilWitness, SimplicialGraph, Vertex, VertexSet};
pub use pconj::{partial_conjugations, PairCase, PartialConjugation, Presentation, PsaGroup, Relation};
pub use raag::{
    counting_check_psa, counting_check_raag, maximal_missing_subspheres, psa_complement_subspheres,
    raag_sigma_membership, theorem_b, theorem_b_report, CountingCheck, RaagCharacter, RaagVerdict, Subsphere,
    SubsphereSupport,
};

/// Version of the JSON input and output schemas.
pub const SCHEMA_VERSION: &str = "1";
