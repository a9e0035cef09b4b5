//! Generalized permutations and one-cylinder half-translation surfaces.
//!
//! The crate encodes Jenkins–Strebel quadratic differentials with a single
//! horizontal cylinder by generalized permutations, computes their strata,
//! checks the irreducibility conditions, builds integer suspensions together
//! with their orientation double covers, and uses these to enumerate and
//! connect the permutation classes of small strata.

pub mod classify;
pub mod conditions;
pub mod error;
pub mod genperm;
pub mod strata;
pub mod suspension;

pub use classify::{
    bubble, component_report, connect, enumerate_stratum, enumerate_type, excise_simple_cylinder, excisions,
    Citation, ClassEntry, ComponentReport, EnumerateOptions, Excision, MergeEdge, MoveConfig,
};
pub use conditions::{
    condition_star, is_irreducible, red_condition, weak_reducibility, Irreducibility, RedDecomposition, RedVerdict,
    WeakSplit, WeakVerdict,
};
pub use error::{Error, Result};
pub use genperm::{GeneralizedPermutation, Letter, Row, SymmetryGroup};
pub use strata::{
    hyperelliptic_rep, irreducible_rep, match_component, singularity_pattern, stratum_info, ComponentTag, HyperKind,
    IrreducibleName, SingularityPattern,
};
pub use suspension::{
    admissible_feasible, build_cover, cylinder_decomposition, gamma_mult_one_evidence, sample_admissible,
    separatrix_spectrum, simple_cylinder_angle, sl2z_orbit, vertical_permutation, AdmissibleVector,
    CylinderDecomposition, SeparatrixSpectrum, SquareTiledCover,
};
