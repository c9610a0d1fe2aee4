//! Group-generic coherent-state machinery: continuum and discrete frame
//! operators, expansions over the family and the reproducing kernel.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::mathcore::linalg::{inner, norm, weighted_outer_sum, ComplexMatrix, ComplexVector};
use crate::mathcore::par_map;
use crate::mathcore::quadrature::{DiskPoint, QuadratureGrid, SpherePoint};
use crate::mathcore::sum::CompensatedComplexSum;
use crate::scalar::{HalfInt, Real};
use crate::su11::{self, DiskRep};
use crate::su2::{self, SpinRep};
use crate::weyl::{self, FockSpace, Lattice};

/// Minimum base-space separation between lattice points.
pub const DISTINCT_TOLERANCE: f64 = 1e-9;

/// Outer pairs sampled by [`kernel_check`].
pub const KERNEL_PAIRS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Weyl,
    Su2,
    Su11,
}

impl Group {
    pub fn tag(&self) -> &'static str {
        match self {
            Group::Weyl => "weyl",
            Group::Su2 => "su2",
            Group::Su11 => "su11",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weyl" => Ok(Group::Weyl),
            "su2" => Ok(Group::Su2),
            "su11" => Ok(Group::Su11),
            _ => Err(domain(format!("unknown group {s:?}, expected weyl, su2 or su11"))),
        }
    }
}

/// Point of the base space `G/H` of one of the three families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyPoint<T> {
    Sphere(SpherePoint<T>),
    Disk(DiskPoint<T>),
    Plane(Complex<T>),
}

impl<T: Real> FamilyPoint<T> {
    fn distance(&self, other: &Self) -> Option<T> {
        match (self, other) {
            (FamilyPoint::Sphere(a), FamilyPoint::Sphere(b)) => {
                let (u, v) = (a.unit_vector(), b.unit_vector());
                Some(u.iter().zip(&v).map(|(x, y)| (*x - *y) * (*x - *y)).sum::<T>().sqrt())
            }
            (FamilyPoint::Disk(a), FamilyPoint::Disk(b)) => Some((a.zeta() - b.zeta()).norm()),
            (FamilyPoint::Plane(a), FamilyPoint::Plane(b)) => Some((a - b).norm()),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
enum Kind<T> {
    Su2 { rep: SpinRep<T>, mu: HalfInt },
    Su11 { rep: DiskRep<T> },
    Weyl { space: FockSpace<T>, fiducial: ComplexVector<T> },
}

/// The system `{|x>}` of one group with a quadrature rule over its base space.
///
/// SU(1,1) families integrate with the cutoff-extrapolated rule of
/// [`su11::d_constant`], so some effective weights are negative.
#[derive(Clone, Debug)]
pub struct CoherentFamily<T> {
    kind: Kind<T>,
    nodes: Vec<FamilyPoint<T>>,
    weights: Vec<T>,
    probe_dim: usize,
    d: T,
}

impl<T: Real> CoherentFamily<T> {
    /// Spin-`j` states `|μ, n>` over a sphere grid; the probe space is the whole representation.
    pub fn su2(j: HalfInt, mu: HalfInt, grid: &QuadratureGrid<T, SpherePoint<T>>) -> Result<Self> {
        grid.require("sphere_dn")?;
        let rep = SpinRep::new(j)?;
        rep.check_weight(mu)?;
        Ok(Self {
            probe_dim: rep.dim(),
            d: su2::d_theoretical(j),
            nodes: grid.nodes().iter().copied().map(FamilyPoint::Sphere).collect(),
            weights: grid.weights().to_vec(),
            kind: Kind::Su2 { rep, mu },
        })
    }

    /// Disk states `|ζ>` of index `k` over an invariant-measure grid.
    pub fn su11(rep: DiskRep<T>, probe_dim: usize, grid: &QuadratureGrid<T, DiskPoint<T>>) -> Result<Self> {
        grid.require("disk_dmu")?;
        check_probe(probe_dim, rep.cutoff() / 2)?;
        let (nodes, weights) = su11::extrapolated_rule(&rep, grid)?;
        Ok(Self {
            probe_dim,
            d: rep.d_theoretical(),
            nodes: nodes.into_iter().map(FamilyPoint::Disk).collect(),
            weights,
            kind: Kind::Su11 { rep },
        })
    }

    /// Single-mode displaced states `D(α)|ψ₀>` over a plane grid.
    pub fn weyl(space: FockSpace<T>, fiducial: ComplexVector<T>, probe_dim: usize, grid: &QuadratureGrid<T, Complex<T>>) -> Result<Self> {
        grid.require("plane_d2alpha")?;
        if space.n_modes() != 1 {
            return Err(domain("phase-space families are implemented for a single mode"));
        }
        check_probe(probe_dim, space.cutoff() / 2)?;
        weyl::weyl_coherent_state(&[Complex::zero()], &fiducial, &space)?;
        Ok(Self {
            probe_dim,
            d: T::PI(),
            nodes: grid.nodes().iter().copied().map(FamilyPoint::Plane).collect(),
            weights: grid.weights().to_vec(),
            kind: Kind::Weyl { space, fiducial },
        })
    }

    pub fn group(&self) -> Group {
        match self.kind {
            Kind::Su2 { .. } => Group::Su2,
            Kind::Su11 { .. } => Group::Su11,
            Kind::Weyl { .. } => Group::Weyl,
        }
    }

    pub fn nodes(&self) -> &[FamilyPoint<T>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Dimension of the subspace on which expansions are carried out.
    pub fn probe_dim(&self) -> usize {
        self.probe_dim
    }

    /// `4π/(2j+1)`, `π/(2k-1)` or `π`.
    pub fn d_theoretical(&self) -> T {
        self.d
    }

    /// Largest leading block on which truncated states are trustworthy.
    pub fn truncation_limit(&self) -> usize {
        match &self.kind {
            Kind::Su2 { rep, .. } => rep.dim(),
            Kind::Su11 { rep } => rep.cutoff() / 2,
            Kind::Weyl { space, .. } => space.cutoff() / 2,
        }
    }

    fn point_mismatch(&self) -> Error {
        domain(format!("point does not belong to the {} base space", self.group()))
    }

    /// Full state vector `|x>` in the family's (truncated) Hilbert space.
    pub fn state_at(&self, x: &FamilyPoint<T>) -> Result<ComplexVector<T>> {
        match (&self.kind, x) {
            (Kind::Su2 { rep, mu }, FamilyPoint::Sphere(p)) => su2::coherent_state(rep, *mu, p),
            (Kind::Su11 { rep }, FamilyPoint::Disk(p)) => su11::coherent_state(rep, p)?.orthonormal(rep),
            (Kind::Weyl { space, fiducial }, FamilyPoint::Plane(a)) => weyl::weyl_coherent_state(&[*a], fiducial, space),
            _ => Err(self.point_mismatch()),
        }
    }

    /// Leading `len` components of `|x>`.
    pub fn state_prefix(&self, x: &FamilyPoint<T>, len: usize) -> Result<ComplexVector<T>> {
        match (&self.kind, x) {
            (Kind::Su11 { rep }, FamilyPoint::Disk(p)) => Ok(su11::coherent_coordinates(rep, p, len)),
            _ => {
                let mut v = self.state_at(x)?;
                v.truncate(len);
                Ok(v)
            }
        }
    }

    /// `<x|y>`
    pub fn overlap(&self, x: &FamilyPoint<T>, y: &FamilyPoint<T>) -> Result<Complex<T>> {
        match (&self.kind, x, y) {
            (Kind::Su11 { rep }, FamilyPoint::Disk(a), FamilyPoint::Disk(b)) => Ok(su11::overlap(rep, a, b)),
            _ => Ok(inner(&self.state_at(x)?, &self.state_at(y)?)),
        }
    }

    fn probe_states(&self, len: usize) -> Result<Vec<ComplexVector<T>>> {
        par_map(&self.nodes, |x| self.state_prefix(x, len)).into_iter().collect()
    }
}

fn check_probe(probe_dim: usize, limit: usize) -> Result<()> {
    if probe_dim == 0 || probe_dim > limit {
        return Err(domain(format!("probe_dim {probe_dim} must lie in 1..={limit}")));
    }
    Ok(())
}

/// `∫ dx |x><x|` on the leading `probe_dim` block.
pub fn continuum_frame_operator<T: Real>(family: &CoherentFamily<T>, probe_dim: usize) -> Result<ComplexMatrix<T>> {
    check_probe(probe_dim, family.truncation_limit())?;
    let states = family.probe_states(probe_dim)?;
    Ok(weighted_outer_sum(&states, &family.weights, probe_dim))
}

/// Samples `c(x) = <x|ψ>` on the family nodes, `ψ` given on the probe subspace.
pub fn expand<T: Real>(family: &CoherentFamily<T>, psi: &[Complex<T>]) -> Result<ComplexVector<T>> {
    if psi.len() != family.probe_dim {
        return Err(Error::Dimension {
            expected: family.probe_dim,
            got: psi.len(),
        });
    }
    let n = norm(psi);
    if (n - T::one()).abs() > T::tol(1e-10) {
        return Err(Error::Unnormalized { norm: n.as_f64() });
    }
    coefficients(family, psi)
}

fn coefficients<T: Real>(family: &CoherentFamily<T>, psi: &[Complex<T>]) -> Result<ComplexVector<T>> {
    let len = psi.len();
    par_map(&family.nodes, |x| Ok(inner(&family.state_prefix(x, len)?, psi))).into_iter().collect()
}

/// `(1/d) ∫ dx c(x)|x>` on the probe subspace.
pub fn reconstruct<T: Real>(family: &CoherentFamily<T>, samples: &[Complex<T>]) -> Result<ComplexVector<T>> {
    if samples.len() != family.nodes.len() {
        return Err(Error::Dimension {
            expected: family.nodes.len(),
            got: samples.len(),
        });
    }
    let states = family.probe_states(family.probe_dim)?;
    let scale = family.d.recip();
    let mut acc = vec![CompensatedComplexSum::new(); family.probe_dim];
    for ((v, c), w) in states.iter().zip(samples).zip(&family.weights) {
        let cw = *c * *w;
        for (a, x) in acc.iter_mut().zip(v) {
            a.add(cw * x);
        }
    }
    Ok(acc.into_iter().map(|a| a.value() * scale).collect())
}

/// `(1/d) ∫ dx |c(x)|²`
pub fn parseval<T: Real>(family: &CoherentFamily<T>, samples: &[Complex<T>]) -> Result<T> {
    if samples.len() != family.nodes.len() {
        return Err(Error::Dimension {
            expected: family.nodes.len(),
            got: samples.len(),
        });
    }
    let total = crate::mathcore::sum::sum_real(samples.iter().zip(&family.weights).map(|(c, w)| c.norm_sqr() * *w));
    Ok(total / family.d)
}

/// `f̂(x) = ∫ dy K(x,y) f(y)` at every node, with `K(x,y) = <x|y>/d`.
///
/// Evaluated as `<x|Φ>` with `Φ = (1/d) ∫ dy f(y)|y>`, so the cost is linear
/// in the grid size.
pub fn project<T: Real>(family: &CoherentFamily<T>, samples: &[Complex<T>]) -> Result<ComplexVector<T>> {
    let phi = reconstruct(family, samples)?;
    coefficients(family, &phi)
}

/// Node index pairs probed by [`kernel_check`]; the first pair is diagonal.
pub fn kernel_pairs(len: usize) -> Vec<(usize, usize)> {
    if len == 0 {
        return Vec::new();
    }
    (0..KERNEL_PAIRS)
        .map(|i| {
            let x = (i * len) / KERNEL_PAIRS;
            let z = if i == 0 { x } else { (x + len / 3 + 7919 * i) % len };
            (x, z)
        })
        .collect()
}

/// `max |K(x,z) - ∫ dy K(x,y) K(y,z)|` over [`kernel_pairs`].
pub fn kernel_check<T: Real>(family: &CoherentFamily<T>) -> Result<T> {
    let pairs = kernel_pairs(family.nodes.len());
    let d = family.d;
    // SU(1,1) overlaps have a closed form; elsewhere the states are cached.
    let states: Option<Vec<ComplexVector<T>>> = match family.kind {
        Kind::Su11 { .. } => None,
        _ => Some(par_map(&family.nodes, |x| family.state_at(x)).into_iter().collect::<Result<_>>()?),
    };
    let ov = |i: usize, k: usize| -> Result<Complex<T>> {
        match &states {
            Some(s) => Ok(inner(&s[i], &s[k])),
            None => family.overlap(&family.nodes[i], &family.nodes[k]),
        }
    };
    let errs: Vec<Result<T>> = par_map(&pairs, |&(i, k)| {
        let mut acc = CompensatedComplexSum::new();
        for (y, w) in family.weights.iter().enumerate() {
            acc.add(ov(i, y)? * ov(y, k)? * *w);
        }
        Ok((ov(i, k)? / d - acc.value() / (d * d)).norm())
    });
    errs.into_iter().try_fold(T::zero(), |m, e| Ok(m.max(e?)))
}

/// Discrete subsystem `{|x_l>}` of a family with the cell volume `V_Γ`.
#[derive(Clone, Debug)]
pub struct LatticeSubsystem<'a, T> {
    family: &'a CoherentFamily<T>,
    points: Vec<FamilyPoint<T>>,
    cell_volume: T,
}

impl<'a, T: Real> LatticeSubsystem<'a, T> {
    pub fn new(family: &'a CoherentFamily<T>, points: Vec<FamilyPoint<T>>, cell_volume: T) -> Result<Self> {
        if !(cell_volume >= T::zero()) {
            return Err(domain(format!("cell volume {cell_volume} must be non-negative")));
        }
        let probe = match family.nodes.first() {
            Some(p) => *p,
            None => return Err(domain("family has no nodes")),
        };
        for (i, p) in points.iter().enumerate() {
            if p.distance(&probe).is_none() {
                return Err(family.point_mismatch());
            }
            for q in &points[..i] {
                if p.distance(q).unwrap() < T::lit(DISTINCT_TOLERANCE) {
                    return Err(domain(format!("lattice points {p:?} and {q:?} coincide")));
                }
            }
        }
        Ok(Self {
            family,
            points,
            cell_volume,
        })
    }

    /// Sphere points with `V_Γ = 4π/count`.
    pub fn uniform_sphere(family: &'a CoherentFamily<T>, points: Vec<SpherePoint<T>>) -> Result<Self> {
        let v = if points.is_empty() {
            T::zero()
        } else {
            T::lit(4.0) * T::PI() / T::from_usize_lossy(points.len())
        };
        Self::new(family, points.into_iter().map(FamilyPoint::Sphere).collect(), v)
    }

    /// Points `mω₁ + nω₂`, `|m|, |n| ≤ range`, of a planar lattice with `V_Γ` its cell area.
    pub fn weyl_lattice(family: &'a CoherentFamily<T>, lattice: &Lattice<T>, range: i64) -> Result<Self> {
        let pts = lattice.points(range)?;
        Self::new(family, pts.into_iter().map(FamilyPoint::Plane).collect(), lattice.cell_volume())
    }

    /// Square lattice of cell area `π`.
    pub fn von_neumann(family: &'a CoherentFamily<T>, range: i64) -> Result<Self> {
        Self::weyl_lattice(family, &Lattice::square(T::PI())?, range)
    }

    pub fn family(&self) -> &CoherentFamily<T> {
        self.family
    }

    pub fn points(&self) -> &[FamilyPoint<T>] {
        &self.points
    }

    pub fn cell_volume(&self) -> T {
        self.cell_volume
    }
}

/// `S = Σ_l |x_l><x_l|` on the leading `probe_dim` block.
pub fn frame_operator<T: Real>(sub: &LatticeSubsystem<'_, T>, probe_dim: usize) -> Result<ComplexMatrix<T>> {
    check_probe(probe_dim, sub.family.truncation_limit())?;
    let states: Vec<ComplexVector<T>> = par_map(&sub.points, |x| sub.family.state_prefix(x, probe_dim))
        .into_iter()
        .collect::<Result<_>>()?;
    Ok(weighted_outer_sum(&states, &vec![T::one(); states.len()], probe_dim))
}

/// Extreme eigenvalues `(A, B)` of [`frame_operator`].
pub fn frame_bounds<T: Real>(sub: &LatticeSubsystem<'_, T>, probe_dim: usize) -> Result<(T, T)> {
    let eig = frame_operator(sub, probe_dim)?.hermitian_eigen()?;
    Ok((eig.min(), eig.max()))
}

/// Frame bounds of a lattice subsystem together with `V_Γ/d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub group: Group,
    pub probe_dim: usize,
    pub num_points: usize,
    pub cell_volume: f64,
    pub d: f64,
    pub ratio: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
}

pub fn frame_report<T: Real>(sub: &LatticeSubsystem<'_, T>, probe_dim: usize) -> Result<FrameReport> {
    let (a, b) = frame_bounds(sub, probe_dim)?;
    let d = sub.family.d;
    Ok(FrameReport {
        group: sub.family.group(),
        probe_dim,
        num_points: sub.points.len(),
        cell_volume: sub.cell_volume.as_f64(),
        d: d.as_f64(),
        ratio: (sub.cell_volume / d).as_f64(),
        a: a.as_f64(),
        b: b.as_f64(),
    })
}
