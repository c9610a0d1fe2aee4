//! Generalized coherent states for the Heisenberg–Weyl group, SU(2) and
//! SU(1,1): construction, overlaps, completeness and frames.
//!
//! Everything is generic over the scalar type through [`Real`]; the aliases
//! below fix it to `f64` or `f32`.

pub mod error;
pub mod frames;
pub mod io;
pub mod mathcore;
pub mod scalar;
pub mod su11;
pub mod su2;
pub mod weyl;

pub use error::{Error, Result};
pub use frames::{CoherentFamily, FamilyPoint, FrameReport, Group, LatticeSubsystem};
pub use mathcore::{ComplexMatrix, ComplexVector, DiskPoint, EulerAngles, Measure, QuadratureGrid, SpherePoint};
pub use scalar::{HalfInt, Real};
pub use su11::{DiskFunction, DiskRep, SU11Element};
pub use su2::{SU2Element, SpinRep};
pub use weyl::{FockSpace, Lattice, WeylElement};

pub type Complex64 = num_complex::Complex<f64>;
pub type Complex32 = num_complex::Complex<f32>;
pub type ComplexMatrix64 = ComplexMatrix<f64>;
pub type ComplexMatrix32 = ComplexMatrix<f32>;
pub type SpinRep64 = SpinRep<f64>;
pub type SpinRep32 = SpinRep<f32>;
pub type SU2Element64 = SU2Element<f64>;
pub type SU2Element32 = SU2Element<f32>;
pub type DiskRep64 = DiskRep<f64>;
pub type DiskRep32 = DiskRep<f32>;
pub type DiskFunction64 = DiskFunction<f64>;
pub type DiskFunction32 = DiskFunction<f32>;
pub type SU11Element64 = SU11Element<f64>;
pub type SU11Element32 = SU11Element<f32>;
pub type FockSpace64 = FockSpace<f64>;
pub type FockSpace32 = FockSpace<f32>;
pub type Lattice64 = Lattice<f64>;
pub type Lattice32 = Lattice<f32>;
pub type CoherentFamily64 = CoherentFamily<f64>;
pub type CoherentFamily32 = CoherentFamily<f32>;
