//! Numerical foundation: dense complex linear algebra, special functions
//! and quadrature grids.

pub mod linalg;
pub mod quadrature;
pub mod special;
pub mod sum;

use rayon::prelude::*;

/// Order-preserving parallel map over grid nodes.
pub(crate) fn par_map<P: Sync, R: Send>(items: &[P], f: impl Fn(&P) -> R + Sync + Send) -> Vec<R> {
    items.par_iter().map(f).collect()
}

pub use linalg::{ComplexMatrix, ComplexVector, HermitianEigen};
pub use quadrature::{
    default_disk_invariant_grid, default_plane_grid, default_sphere_grid, disk_grid, disk_invariant_grid,
    euler_grid, gauss_jacobi, gauss_legendre, plane_grid, sphere_grid, DiskPoint, EulerAngles, Measure,
    QuadratureGrid, SpherePoint,
};
pub use special::{clebsch_gordan, jacobi_polynomial, ln_gamma, spherical_harmonic, wigner_small_d};
