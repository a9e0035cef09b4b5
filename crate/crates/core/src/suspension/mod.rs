//! Integer suspensions `Su(π, λ)`: the cylinder of height one whose boundary
//! intervals are glued according to `π`, by translation across the cylinder
//! and by a half turn along one side.

pub mod admissible;
pub mod cover;
pub mod cylinders;
pub mod spectrum;

pub use admissible::{admissible_feasible, sample_admissible, AdmissibleVector};
pub use cover::{CoverKey, HorizontalCylinder, Orbit, SquareTiledCover, Vertices};
pub use cylinders::{
    cylinder_decomposition, head_cylinder_angle, read_one_cylinder, simple_cylinder_angle, vertical_permutation,
    Angle, Cylinder, CylinderDecomposition, OneCylinder,
};
pub use spectrum::{gamma_mult_one_evidence, separatrix_spectrum, Germ, Segment, SeparatrixSpectrum};

use crate::error::Result;
use crate::genperm::GeneralizedPermutation;

pub fn build_cover(gp: &GeneralizedPermutation, lambda: &AdmissibleVector) -> Result<SquareTiledCover> {
    SquareTiledCover::build(gp, lambda)
}

/// Orbit of the cover of `Su(gp, lambda)` under the shear and the quarter turn.
pub fn sl2z_orbit(gp: &GeneralizedPermutation, lambda: &AdmissibleVector, cap: usize) -> Result<Orbit> {
    Ok(build_cover(gp, lambda)?.sl2z_orbit(cap))
}
