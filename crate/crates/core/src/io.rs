//! JSON interchange for lattices, admissibility and frame reports, disk
//! functions and point sets.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::mathcore::quadrature::{DiskPoint, SpherePoint};
use crate::scalar::Real;
use crate::su11::{DiskFunction, DiskRep};
use crate::weyl::{AdmissibilityReport, Lattice};

/// `{"n_modes": N, "periods": [[re, im, ...], ...], "epsilon": [...]}`.
///
/// Each period lists the real and imaginary parts of its `N` components.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub n_modes: usize,
    pub periods: Vec<Vec<f64>>,
    #[serde(default)]
    pub epsilon: Vec<f64>,
}

impl LatticeSpec {
    pub fn to_lattice<T: Real>(&self) -> Result<Lattice<T>> {
        let periods = self
            .periods
            .iter()
            .map(|p| {
                if p.len() != 2 * self.n_modes {
                    return Err(Error::Dimension {
                        expected: 2 * self.n_modes,
                        got: p.len(),
                    });
                }
                Ok(p.chunks(2).map(|c| Complex::new(T::lit(c[0]), T::lit(c[1]))).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Lattice::new(self.n_modes, periods, self.epsilon.iter().map(|e| T::lit(*e)).collect())
    }

    pub fn from_lattice<T: Real>(lat: &Lattice<T>) -> Self {
        Self {
            n_modes: lat.n_modes(),
            periods: lat
                .periods()
                .iter()
                .map(|p| p.iter().flat_map(|z| [z.re.as_f64(), z.im.as_f64()]).collect())
                .collect(),
            epsilon: lat.epsilon().iter().map(|e| e.as_f64()).collect(),
        }
    }
}

/// Admissibility verdict with the rounded integer matrix `B` and its raw values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityJson {
    pub admissible: bool,
    pub matrix: Vec<Vec<i64>>,
    pub raw: Vec<Vec<f64>>,
    pub max_deviation: f64,
}

impl<T: Real> From<&AdmissibilityReport<T>> for AdmissibilityJson {
    fn from(r: &AdmissibilityReport<T>) -> Self {
        Self {
            admissible: r.admissible,
            matrix: r.rounded.clone(),
            raw: r.raw.iter().map(|row| row.iter().map(|x| x.as_f64()).collect()).collect(),
            max_deviation: r.max_deviation.as_f64(),
        }
    }
}

/// `{"k": k, "coefficients": [[re, im], ...]}` with Taylor coefficients `c_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskFunctionJson {
    pub k: f64,
    pub coefficients: Vec<[f64; 2]>,
}

impl DiskFunctionJson {
    pub fn from_function<T: Real>(f: &DiskFunction<T>) -> Self {
        let top = f.degree().map_or(0, |d| d + 1);
        Self {
            k: f.k().as_f64(),
            coefficients: f.coefficients()[..top].iter().map(|c| [c.re.as_f64(), c.im.as_f64()]).collect(),
        }
    }

    /// Rebuilds the function in `rep`, whose index must equal `k`.
    pub fn to_function<T: Real>(&self, rep: &DiskRep<T>) -> Result<DiskFunction<T>> {
        if rep.k().as_f64() != self.k {
            return Err(domain(format!("function has k = {}, representation has k = {}", self.k, rep.k())));
        }
        let c = self.coefficients.iter().map(|[re, im]| Complex::new(T::lit(*re), T::lit(*im))).collect();
        DiskFunction::from_coefficients(rep, c)
    }
}

/// `{"points": [[a, b], ...], "cell_volume": V}`: polar angles `(θ, φ)` on
/// the sphere or `(Re ζ, Im ζ)` in the disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetSpec {
    pub points: Vec<[f64; 2]>,
    #[serde(default)]
    pub cell_volume: Option<f64>,
}

impl PointSetSpec {
    pub fn sphere_points<T: Real>(&self) -> Vec<SpherePoint<T>> {
        self.points.iter().map(|[t, p]| SpherePoint::new(T::lit(*t), T::lit(*p))).collect()
    }

    pub fn disk_points<T: Real>(&self) -> Result<Vec<DiskPoint<T>>> {
        self.points
            .iter()
            .map(|[re, im]| DiskPoint::new(Complex::new(T::lit(*re), T::lit(*im))))
            .collect()
    }
}

pub fn from_json<'a, D: Deserialize<'a>>(s: &'a str) -> Result<D> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty-printed JSON; keys follow field order and floats use the shortest
/// representation that reads back to the same value.
pub fn to_json<S: Serialize>(value: &S) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::lattice_admissible;

    #[test]
    fn lattice_round_trip() {
        let spec: LatticeSpec = from_json(r#"{"n_modes": 1, "periods": [[1.7724538509055159, 0.0], [0.0, 1.7724538509055159]]}"#).unwrap();
        let lat = spec.to_lattice::<f64>().unwrap();
        assert!((lat.cell_volume() - std::f64::consts::PI).abs() < 1e-12);
        let report = AdmissibilityJson::from(&lattice_admissible(&lat));
        assert!(report.admissible);
        assert_eq!(report.matrix, vec![vec![0, -1], vec![1, 0]]);
        let again: LatticeSpec = from_json(&to_json(&LatticeSpec::from_lattice(&lat)).unwrap()).unwrap();
        assert_eq!(again.to_lattice::<f64>().unwrap(), lat);
        assert!(from_json::<LatticeSpec>(r#"{"n_modes": 1, "periods": [[1.0]]}"#).unwrap().to_lattice::<f64>().is_err());
        assert!(matches!(from_json::<LatticeSpec>("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn disk_function_round_trip() {
        let rep = DiskRep::new(1.5, 16).unwrap();
        let j: DiskFunctionJson = from_json(r#"{"k": 1.5, "coefficients": [[0.1, 0.2], [0.0, -1.0], [3.0, 0.0]]}"#).unwrap();
        let f = j.to_function(&rep).unwrap();
        assert_eq!(f.coefficients()[1], Complex::new(0.0, -1.0));
        assert_eq!(DiskFunctionJson::from_function(&f), j);
        let other = DiskRep::new(2.0, 16).unwrap();
        assert!(j.to_function(&other).is_err());
    }
}
