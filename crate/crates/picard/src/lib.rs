//! The Picard modular group Gamma = SU(2,1; Z[i]) acting on complex
//! hyperbolic 2-space D, with the machinery needed to locate and classify
//! its elliptic fixed points:
//!
//! * exact Gaussian-integer vectors and group elements ([`gaussian`],
//!   [`hermitian`]),
//! * finite subgroup closures and structure identification ([`subgroups`]),
//! * horospherical coordinates, the Siegel strip, and reduction
//!   ([`horoball`]),
//! * the exhaustion functions f_P, strong admissibility, and first-contact
//!   optimization ([`exhaustion`]),
//! * fixed sets, point stabilizers, the isotropy classes Gamma_1..Gamma_9,
//!   and bounded conjugacy search ([`elliptic`]),
//! * self-contained acceptance checks ([`verify`]).
//!
//! Exact arithmetic (BigInt Gaussian integers) is used wherever membership
//! or incidence is decided; floating point appears only in coordinates,
//! eigen-decompositions, and the optimizer, always behind stated tolerances.

pub mod error;
pub mod gaussian;
pub mod hermitian;
pub mod subgroups;
pub mod horoball;
pub mod optimize;
pub mod exhaustion;
pub mod elliptic;
pub mod verify;

pub use error::{Error, Result};
pub use exhaustion::{
    argmax_parabolics, enumerate_isotropic, f_exhaustion, first_contact, in_spine,
    is_strongly_admissible, named_family, FamilyName, ParabolicFamily, ParabolicRep,
};
pub use elliptic::{
    bounded_nonconjugacy, catalog_group, classify_point, classify_point_with_bound, eigenlines,
    fixed_set, point_stabilizer, verify_table1, ClassLabel, Classification, FixedSet,
    FixedSetKind, IsotropyClass, TABLE1,
};
pub use gaussian::{GaussInt, GaussVec3};
pub use hermitian::{form_matrix, form_q, generator, parse_word, GMatrix, GeneratorName};
pub use horoball::{
    act, act_parabolic, horo_to_vector, in_siegel_strip, siegel_reduce, vector_to_horo, HoroPoint,
    SiegelWord,
};
pub use subgroups::{closure, Label, StructureFingerprint, SubgroupClosure};

/// Rounds to 12 significant digits; all float output passes through here so
/// that serialized results are reproducible across platforms.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().unwrap()
}
