//! Property suites shared by the `properties` and `acceptance` targets.
//! Every suite drives a proptest runner seeded with [`SEED`].

#![allow(dead_code)]

use std::f64::consts::PI;

use gcs_core::frames::{self, CoherentFamily, FamilyPoint, LatticeSubsystem};
use gcs_core::mathcore::linalg::{inner, norm};
use gcs_core::mathcore::special::jacobi_polynomial_derivative;
use gcs_core::mathcore::{
    clebsch_gordan, default_disk_invariant_grid, default_plane_grid, default_sphere_grid, disk_grid,
    disk_invariant_grid, jacobi_polynomial, plane_grid, sphere_grid, wigner_small_d, ComplexMatrix, DiskPoint,
    SpherePoint,
};
use gcs_core::su11::{self, DiskFunction, DiskRep, SU11Element};
use gcs_core::su2::{self, DensityMatrix, Field, SU2Element, SpinRep};
use gcs_core::weyl::{self, FockSpace, Lattice, WeylElement};
use gcs_core::{Complex64, HalfInt};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const SEED: [u8; 32] = *b"generalized-coherent-states-seed";

pub type Suite = (&'static str, fn() -> Result<(), String>);

pub const SUITES: &[Suite] = &[
    ("mathcore::wigner_rows_orthonormal", wigner_rows_orthonormal),
    ("mathcore::wigner_matches_exponential", wigner_matches_exponential),
    ("mathcore::clebsch_gordan_orthogonality", clebsch_gordan_orthogonality),
    ("mathcore::jacobi_differential_equation", jacobi_differential_equation),
    ("mathcore::grid_refinement", grid_refinement),
    ("mathcore::grid_weights", grid_weights),
    ("mathcore::hermitian_and_unitary", hermitian_and_unitary),
    ("weyl::compose_associative", weyl_compose_associative),
    ("weyl::representation", weyl_representation),
    ("weyl::central_period", weyl_central_period),
    ("weyl::admissibility_unimodular", weyl_admissibility_unimodular),
    ("weyl::vacuum_overlap", weyl_vacuum_overlap),
    ("weyl::commutators", weyl_commutators),
    ("su2::generators", su2_generators),
    ("su2::eigenvector_property", su2_eigenvector_property),
    ("su2::overlap_below_one", su2_overlap_below_one),
    ("su2::hermitian_symmetry", su2_hermitian_symmetry),
    ("su2::covariance", su2_covariance),
    ("su2::identity_check", su2_identity_check),
    ("su2::fidelity_invariance", su2_fidelity_invariance),
    ("su2::density_invariants", su2_density_invariants),
    ("su11::orthonormal_basis", su11_orthonormal_basis),
    ("su11::coherent_decay", su11_coherent_decay),
    ("su11::representation", su11_representation),
    ("su11::overlap_closed_form", su11_overlap_closed_form),
    ("su11::unitarity", su11_unitarity),
    ("su11::growth_bound", su11_growth_bound),
    ("su11::reproduction", su11_reproduction),
    ("frames::frame_operator_psd", frames_frame_operator_psd),
    ("frames::continuum_frame_operator", frames_continuum),
    ("frames::round_trip", frames_round_trip),
    ("frames::covariance", frames_covariance),
];

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn fail(e: impl std::fmt::Display) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

pub fn h(doubled: i32) -> HalfInt {
    HalfInt::from_doubled(doubled)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `(2j, 2μ)` with `0 ≤ 2j ≤ max`.
fn spin_and_weight(min: i32, max: i32) -> impl Strategy<Value = (i32, i32)> {
    (min..=max).prop_flat_map(|tj| (Just(tj), 0..=tj).prop_map(|(tj, i)| (tj, tj - 2 * i)))
}

fn sphere_point() -> impl Strategy<Value = (f64, f64)> {
    (0.0..PI, 0.0..2.0 * PI)
}

fn complex_in(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..=radius, 0.0..2.0 * PI).prop_map(|(r, p)| Complex64::from_polar(r, p))
}

fn complex_vec(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| c(a, b)), len)
}

fn normalized(v: Vec<Complex64>) -> Vec<Complex64> {
    let n = norm(&v);
    v.into_iter().map(|x| x / n).collect()
}

// mathcore

fn wigner_rows_orthonormal() -> Result<(), String> {
    let theta = prop_oneof![Just(0.3), Just(1.1), Just(2.7), 0.0..PI];
    run(48, (0..=12i32, theta), |(tj, th)| {
        let ws: Vec<HalfInt> = h(tj).weights().collect();
        for &m1 in &ws {
            for &m2 in &ws {
                let s: f64 = ws
                    .iter()
                    .map(|&n| wigner_small_d::<f64>(h(tj), m1, n, th).unwrap() * wigner_small_d::<f64>(h(tj), m2, n, th).unwrap())
                    .sum();
                let e = if m1 == m2 { 1.0 } else { 0.0 };
                prop_assert!((s - e).abs() <= 1e-10, "j={tj}/2 μ={m1:?} μ'={m2:?}: {s}");
            }
        }
        Ok(())
    })
}

fn wigner_matches_exponential() -> Result<(), String> {
    run(48, (0..=8i32, 0.0..PI), |(tj, th)| {
        let rep = SpinRep::<f64>::new(h(tj)).map_err(fail)?;
        let u = rep.j2().hermitian_eigen().map_err(fail)?.map_spectrum(|l| Complex64::from_polar(1.0, -th * l));
        for m in h(tj).weights() {
            for n in h(tj).weights() {
                let brute = u[(rep.index(m).unwrap(), rep.index(n).unwrap())];
                let d = wigner_small_d::<f64>(h(tj), m, n, th).map_err(fail)?;
                prop_assert!((brute - c(d, 0.0)).norm() <= 1e-10, "j={tj}/2 ({m:?},{n:?}): {brute} vs {d}");
            }
        }
        Ok(())
    })
}

fn clebsch_gordan_orthogonality() -> Result<(), String> {
    run(25, (0..=4i32, 0..=4i32), |(t1, t2)| {
        let (j1, j2) = (h(t1), h(t2));
        let cg = |m1: HalfInt, m2: HalfInt, jj: HalfInt, mm: HalfInt| -> f64 {
            if m1 + m2 != mm || mm.abs() > jj {
                0.0
            } else {
                clebsch_gordan(j1, m1, j2, m2, jj, mm).unwrap()
            }
        };
        let totals: Vec<HalfInt> = ((t1 - t2).abs()..=t1 + t2).step_by(2).map(h).collect();
        let coupled: Vec<(HalfInt, HalfInt)> = totals.iter().flat_map(|&jj| jj.weights().map(move |mm| (jj, mm))).collect();
        let product: Vec<(HalfInt, HalfInt)> = j1.weights().flat_map(|a| j2.weights().map(move |b| (a, b))).collect();
        for &(ja, ma) in &coupled {
            for &(jb, mb) in &coupled {
                let s: f64 = product.iter().map(|&(a, b)| cg(a, b, ja, ma) * cg(a, b, jb, mb)).sum();
                let e = if (ja, ma) == (jb, mb) { 1.0 } else { 0.0 };
                prop_assert!((s - e).abs() <= 1e-12, "row sum {s}");
            }
        }
        for &(a, b) in &product {
            for &(a2, b2) in &product {
                let s: f64 = coupled.iter().map(|&(jj, mm)| cg(a, b, jj, mm) * cg(a2, b2, jj, mm)).sum();
                let e = if (a, b) == (a2, b2) { 1.0 } else { 0.0 };
                prop_assert!((s - e).abs() <= 1e-12, "column sum {s}");
            }
        }
        Ok(())
    })
}

fn jacobi_differential_equation() -> Result<(), String> {
    run(200, (0..=10usize, -0.9..5.0f64, -0.9..5.0f64, -0.99..0.99f64), |(n, a, b, x)| {
        let y = jacobi_polynomial(n, a, b, x);
        let dy = jacobi_polynomial_derivative(n, a, b, x);
        let d2y = if n == 0 {
            0.0
        } else {
            (n as f64 + a + b + 1.0) / 2.0 * jacobi_polynomial_derivative(n - 1, a + 1.0, b + 1.0, x)
        };
        let nf = n as f64;
        let terms = [(1.0 - x * x) * d2y, (b - a - (a + b + 2.0) * x) * dy, nf * (nf + a + b + 1.0) * y];
        let scale: f64 = terms.iter().map(|t| t.abs()).sum::<f64>().max(f64::MIN_POSITIVE);
        let residual = terms.iter().sum::<f64>().abs() / scale;
        prop_assert!(residual <= 1e-8, "n={n} a={a} b={b} x={x}: {residual}");
        Ok(())
    })
}

fn refinement_holds(errors: &[f64], floor: f64) -> bool {
    errors.windows(2).all(|w| w[1] <= w[0] / 100.0 || w[1] <= floor)
}

fn grid_refinement() -> Result<(), String> {
    let v = (-1.5..1.5f64, -1.5..1.5f64, -1.5..1.5f64);
    run(16, (v, complex_in(1.0)), |((v1, v2, v3), center)| {
        let len = (v1 * v1 + v2 * v2 + v3 * v3).sqrt().max(1e-12);
        let exact = 4.0 * PI * len.sinh() / len;
        let errs: Vec<f64> = [(3, 6), (6, 12), (12, 24), (24, 48)]
            .iter()
            .map(|&(nt, np)| {
                let g = sphere_grid::<f64>(nt, np).unwrap();
                (g.integrate(|p| {
                    let n = p.unit_vector();
                    (v1 * n[0] + v2 * n[1] + v3 * n[2]).exp()
                }) - exact)
                    .abs()
            })
            .collect();
        prop_assert!(refinement_holds(&errs, 1e-12 * exact), "sphere errors {errs:?}");
        let errs: Vec<f64> = [(6, 12), (12, 24), (24, 48), (48, 96)]
            .iter()
            .map(|&(nr, np)| {
                let g = plane_grid::<f64>(6.0, nr, np).unwrap();
                (g.integrate(|z| (-(z - center).norm_sqr()).exp()) - PI).abs()
            })
            .collect();
        prop_assert!(refinement_holds(&errs, 1e-12 * PI), "plane errors {errs:?}");
        Ok(())
    })
}

fn grid_weights() -> Result<(), String> {
    run(24, (2..40usize, 2..80usize, 0.55..5.0f64), |(nt, np, k)| {
        let s = sphere_grid::<f64>(nt, np).map_err(fail)?;
        prop_assert!(s.weights().iter().all(|w| *w > 0.0));
        prop_assert!((s.total_weight() / (4.0 * PI) - 1.0).abs() <= 1e-10);
        let d = disk_grid::<f64>(k, nt, np).map_err(fail)?;
        prop_assert!(d.weights().iter().all(|w| *w > 0.0));
        prop_assert!((d.total_weight() - 1.0).abs() <= 1e-10, "disk mass {}", d.total_weight());
        let inv = disk_invariant_grid::<f64>(1e-4, nt, np).map_err(fail)?;
        prop_assert!(inv.weights().iter().all(|w| *w > 0.0));
        let p = plane_grid::<f64>(3.0, nt, np).map_err(fail)?;
        prop_assert!(p.weights().iter().all(|w| *w > 0.0));
        prop_assert!((p.total_weight() / (9.0 * PI) - 1.0).abs() <= 1e-12);
        Ok(())
    })
}

fn hermitian_and_unitary() -> Result<(), String> {
    let entries = (1..=8usize).prop_flat_map(|n| (Just(n), complex_vec(n * n..=n * n)));
    run(48, entries, |(n, data)| {
        let a = ComplexMatrix::from_row_major(n, n, data).map_err(fail)?;
        let herm = (&a + &a.adjoint()).scale_real(0.5);
        prop_assert!(herm.hermiticity_defect() <= 1e-12);
        let eig = herm.hermitian_eigen().map_err(fail)?;
        prop_assert!(eig.map_spectrum(|l| c(l, 0.0)).max_abs_diff(&herm) <= 1e-12);
        let u = eig.map_spectrum(|l| Complex64::from_polar(1.0, l));
        prop_assert!(u.unitarity_defect() <= 1e-10);
        Ok(())
    })
}

// weyl

fn weyl_element(n: usize) -> impl Strategy<Value = WeylElement<f64>> {
    (-10.0..10.0f64, prop::collection::vec(complex_in(2.0), n)).prop_map(|(t, a)| WeylElement::new(t, a))
}

fn weyl_compose_associative() -> Result<(), String> {
    let triple = (1..=3usize).prop_flat_map(|n| (weyl_element(n), weyl_element(n), weyl_element(n)));
    run(200, triple, |(a, b, g)| {
        let left = a.compose(&b).unwrap().compose(&g).unwrap();
        let right = a.compose(&b.compose(&g).unwrap()).unwrap();
        prop_assert!((left.t - right.t).abs() <= 1e-14 * (1.0 + left.t.abs()) * 8.0);
        for (x, y) in left.alpha.iter().zip(&right.alpha) {
            prop_assert!((x - y).norm() <= 1e-14 * 8.0);
        }
        Ok(())
    })
}

fn weyl_representation() -> Result<(), String> {
    let space = FockSpace::<f64>::single_mode(64).unwrap();
    let g = || (-PI..PI, complex_in(1.0)).prop_map(|(t, a)| WeylElement::new(t, vec![a]));
    run(24, (g(), g()), |(g1, g2)| {
        let t1 = weyl::weyl_operator(&g1, &space).map_err(fail)?.matrix;
        let t2 = weyl::weyl_operator(&g2, &space).map_err(fail)?.matrix;
        let t12 = weyl::weyl_operator(&g1.compose(&g2).map_err(fail)?, &space).map_err(fail)?.matrix;
        let prod = &t1 * &t2;
        let half = space.cutoff() / 2;
        let dev = (0..half)
            .flat_map(|r| (0..half).map(move |col| (r, col)))
            .map(|(r, col)| (prod[(r, col)] - t12[(r, col)]).norm())
            .fold(0.0, f64::max);
        prop_assert!(dev <= 1e-8, "{dev}");
        Ok(())
    })
}

fn weyl_central_period() -> Result<(), String> {
    let space = FockSpace::<f64>::single_mode(16).unwrap();
    run(16, -5..=5i32, |k| {
        let g = WeylElement::new(2.0 * PI * f64::from(k), vec![c(0.0, 0.0)]);
        let m = weyl::weyl_operator(&g, &space).map_err(fail)?.matrix;
        prop_assert!(m.max_abs_diff(&ComplexMatrix::identity(space.dim())) <= 1e-15);
        Ok(())
    })
}

/// Product of elementary integer row operations; determinant ±1.
fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..n, 0..n, -2..=2i64, any::<bool>()), 1..6).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, s, swap) in ops {
            if swap {
                m.swap(i, j);
            } else if i != j {
                let row = m[j].clone();
                for (x, y) in m[i].iter_mut().zip(row) {
                    *x += s * y;
                }
            }
        }
        m
    })
}

fn transformed(lat: &Lattice<f64>, m: &[Vec<i64>]) -> Lattice<f64> {
    let p = lat.periods();
    let periods = m
        .iter()
        .map(|row| {
            (0..lat.n_modes())
                .map(|comp| row.iter().zip(p).map(|(&s, w)| w[comp] * s as f64).sum())
                .collect()
        })
        .collect();
    Lattice::new(lat.n_modes(), periods, lat.epsilon().to_vec()).unwrap()
}

fn weyl_admissibility_unimodular() -> Result<(), String> {
    let s = PI.sqrt();
    let planar = [
        Lattice::square(PI).unwrap(),
        Lattice::square(PI / 2.0).unwrap(),
        Lattice::square(3.0 * PI).unwrap(),
        Lattice::planar(c(s, 0.0), c(0.5 * s, s)).unwrap(),
        Lattice::planar(c(1.3, 0.2), c(-0.4, 1.1)).unwrap(),
    ];
    let z = c(0.0, 0.0);
    let two_mode = [
        Lattice::new(2, vec![vec![c(s, 0.0), z], vec![c(0.0, s), z], vec![z, c(s, 0.0)], vec![z, c(0.0, s)]], vec![]).unwrap(),
        Lattice::new(2, vec![vec![c(s, 0.0), z], vec![c(0.0, s), z], vec![z, c(s, 0.0)], vec![z, c(0.0, 0.5 * s)]], vec![])
            .unwrap(),
    ];
    run(40, (0..planar.len(), unimodular(2), 0..two_mode.len(), unimodular(4)), |(i, m, k, m4)| {
        let base = weyl::lattice_admissible(&planar[i]).admissible;
        prop_assert_eq!(weyl::lattice_admissible(&transformed(&planar[i], &m)).admissible, base);
        let base = weyl::lattice_admissible(&two_mode[k]).admissible;
        prop_assert_eq!(weyl::lattice_admissible(&transformed(&two_mode[k], &m4)).admissible, base);
        Ok(())
    })
}

fn weyl_vacuum_overlap() -> Result<(), String> {
    let space = FockSpace::<f64>::single_mode(64).unwrap();
    run(32, (complex_in(1.5), complex_in(1.5)), |(a, b)| {
        let va = weyl::weyl_coherent_state(&[a], &space.vacuum(), &space).map_err(fail)?;
        let vb = weyl::weyl_coherent_state(&[b], &space.vacuum(), &space).map_err(fail)?;
        let got = inner(&va, &vb).norm_sqr();
        prop_assert!((got - (-(a - b).norm_sqr()).exp()).abs() <= 1e-8);
        Ok(())
    })
}

fn weyl_commutators() -> Result<(), String> {
    run(16, (1..=64usize, 1..=2usize), |(cutoff, modes)| {
        let cutoff = if modes == 2 { cutoff.min(8) } else { cutoff };
        let space = FockSpace::<f64>::new(modes, cutoff).map_err(fail)?;
        prop_assert!(space.commutator_defect() <= 1e-13);
        Ok(())
    })
}

// su2

fn su2_generators() -> Result<(), String> {
    run(13, 0..=12i32, |tj| {
        let rep = SpinRep::<f64>::new(h(tj)).map_err(fail)?;
        let [j1, j2, j3] = rep.generators();
        let i = c(0.0, 1.0);
        for (a, b, cc) in [(j1, j2, j3), (j2, j3, j1), (j3, j1, j2)] {
            prop_assert!(a.commutator(b).max_abs_diff(&cc.scale(i)) <= 1e-12);
        }
        let jj = f64::from(tj) / 2.0;
        let casimir = &(&(j1 * j1) + &(j2 * j2)) + &(j3 * j3);
        prop_assert!(casimir.max_abs_diff(&ComplexMatrix::identity(rep.dim()).scale_real(jj * (jj + 1.0))) <= 1e-10);
        for mu in h(tj).weights() {
            let row = rep.index(mu).unwrap();
            prop_assert!(j3[(row, row)] == c(mu.to_real(), 0.0));
        }
        let off: f64 = (0..rep.dim())
            .flat_map(|r| (0..rep.dim()).map(move |s| (r, s)))
            .filter(|(r, s)| r != s)
            .map(|(r, s)| j3[(r, s)].norm())
            .fold(0.0, f64::max);
        prop_assert!(off == 0.0);
        Ok(())
    })
}

fn su2_eigenvector_property() -> Result<(), String> {
    run(200, (spin_and_weight(0, 12), sphere_point()), |((tj, tm), (th, ph))| {
        let rep = SpinRep::<f64>::new(h(tj)).map_err(fail)?;
        let p = SpherePoint::new(th, ph);
        let v = su2::coherent_state(&rep, h(tm), &p).map_err(fail)?;
        prop_assert!((norm(&v) - 1.0).abs() <= 1e-12);
        let nv = rep.projected(p.unit_vector()).apply(&v);
        let mu = f64::from(tm) / 2.0;
        let res = nv.iter().zip(&v).map(|(a, b)| (a - b * mu).norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(res <= 1e-10, "{res}");
        Ok(())
    })
}

fn su2_overlap_below_one() -> Result<(), String> {
    let pair = (1..=12i32, sphere_point(), sphere_point())
        .prop_filter("separated points", |(_, a, b)| {
            let (p, q) = (SpherePoint::new(a.0, a.1), SpherePoint::new(b.0, b.1));
            p.dot(&q).clamp(-1.0, 1.0).acos() >= 1e-3
        });
    run(500, pair, |(tj, a, b)| {
        let rep = SpinRep::<f64>::new(h(tj)).map_err(fail)?;
        let o = su2::overlap(&rep, h(tj), &SpherePoint::new(a.0, a.1), &SpherePoint::new(b.0, b.1)).map_err(fail)?;
        prop_assert!(o.norm() <= 1.0 - 1e-8, "{}", o.norm());
        Ok(())
    })
}

fn su2_hermitian_symmetry() -> Result<(), String> {
    run(100, (spin_and_weight(0, 12), sphere_point(), sphere_point()), |((tj, tm), a, b)| {
        let rep = SpinRep::<f64>::new(h(tj)).map_err(fail)?;
        let (p, q) = (SpherePoint::new(a.0, a.1), SpherePoint::new(b.0, b.1));
        let pq = su2::overlap(&rep, h(tm), &p, &q).map_err(fail)?;
        let qp = su2::overlap(&rep, h(tm), &q, &p).map_err(fail)?;
        prop_assert!((pq - qp.conj()).norm() <= 1e-14);
        Ok(())
    })
}

fn su2_covariance() -> Result<(), String> {
    let euler = (0.0..2.0 * PI, 0.0..PI, 0.0..4.0 * PI);
    run(50, (spin_and_weight(0, 12), euler, sphere_point(), sphere_point()), |((tj, tm), (a, b, g), x, y)| {
        let rep = SpinRep::<f64>::new(h(tj)).map_err(fail)?;
        let el = SU2Element::from_euler(a, b, g);
        let (p, q) = (SpherePoint::new(x.0, x.1), SpherePoint::new(y.0, y.1));
        let before = su2::overlap(&rep, h(tm), &p, &q).map_err(fail)?.norm();
        let after = su2::overlap(&rep, h(tm), &el.act(&p), &el.act(&q)).map_err(fail)?.norm();
        prop_assert!((before - after).abs() <= 1e-10, "{before} vs {after}");
        Ok(())
    })
}

fn su2_identity_check() -> Result<(), String> {
    let grid = default_sphere_grid::<f64>();
    run(12, spin_and_weight(0, 12), |(tj, tm)| {
        let rep = SpinRep::<f64>::new(h(tj)).map_err(fail)?;
        let dev = su2::identity_check(&rep, h(tm), &grid).map_err(fail)?;
        prop_assert!(dev <= 1e-10, "{dev}");
        Ok(())
    })
}

fn su2_fidelity_invariance() -> Result<(), String> {
    let field = (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, 0.2..2.0f64, any::<bool>());
    run(6, (2..=4i32, field), |(tj, (a1, a2, a3, omega, rotating))| {
        let rep = SpinRep::<f64>::new(h(tj)).map_err(fail)?;
        let top = rep.basis_state(h(tj)).map_err(fail)?;
        let bottom = rep.basis_state(h(-tj)).map_err(fail)?;
        let psi0 = normalized(top.iter().zip(&bottom).map(|(a, b)| a + b).collect());
        let f = if rotating {
            Field::Rotating {
                amplitude: a1,
                omega,
                axial: a3,
            }
        } else {
            Field::Constant([a1, a2, a3])
        };
        let traj = su2::evolve_quantum(&rep, &f, &psi0, 1.0, 1e-3).map_err(fail)?;
        let (f0, _) = su2::max_coherent_fidelity(&rep, h(tj), &psi0).map_err(fail)?;
        let (f1, _) = su2::max_coherent_fidelity(&rep, h(tj), traj.states.last().unwrap()).map_err(fail)?;
        prop_assert!(f0 < 1.0 - 1e-3);
        prop_assert!((f0 - f1).abs() <= 1e-6, "{f0} vs {f1}");
        Ok(())
    })
}

fn su2_density_invariants() -> Result<(), String> {
    let mats = (1..=5usize).prop_flat_map(|n| (Just(n), complex_vec(n * n..=n * n)));
    run(48, mats, |(n, data)| {
        let g = ComplexMatrix::from_row_major(n, n, data).map_err(fail)?;
        let m = &g * &g.adjoint();
        let t = m.trace().re;
        let rho = DensityMatrix::new(m.scale_real(1.0 / t)).map_err(fail)?;
        prop_assert!(rho.matrix().hermiticity_defect() <= 1e-12);
        prop_assert!((rho.matrix().trace() - c(1.0, 0.0)).norm() <= 1e-12);
        prop_assert!(rho.min_eigenvalue() >= -1e-10);
        let rep = SpinRep::<f64>::new(h(n as i32 - 1)).map_err(fail)?;
        let q = su2::q_function(&rep, &rho, h(n as i32 - 1), &SpherePoint::new(0.7, 1.9)).map_err(fail)?;
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&q));
        Ok(())
    })
}

// su11

fn su11_orthonormal_basis() -> Result<(), String> {
    run(100, (0.55..5.0f64, 0..64usize, 0..64usize), |(k, m, n)| {
        let rep = DiskRep::new(k, 64).map_err(fail)?;
        let ip = su11::inner_product(&rep, &su11::basis_vector(&rep, m).unwrap(), &su11::basis_vector(&rep, n).unwrap())
            .map_err(fail)?;
        let e = if m == n { 1.0 } else { 0.0 };
        prop_assert!((ip - c(e, 0.0)).norm() <= 1e-12, "{ip}");
        Ok(())
    })
}

fn su11_coherent_decay() -> Result<(), String> {
    let k = prop_oneof![Just(1.0), Just(1.5), Just(2.0), Just(3.0), 0.6..4.0f64];
    run(48, (k, complex_in(0.9)), |(k, z)| {
        let rep = DiskRep::new(k, su11::DEFAULT_CUTOFF).map_err(fail)?;
        let s = su11::coherent_state(&rep, &DiskPoint::new(z).unwrap()).map_err(fail)?;
        prop_assert!((su11::norm(&rep, &s).unwrap() - 1.0).abs() <= 1e-10);
        let cs = s.coefficients();
        for n in 0..40 {
            if cs[n].norm() < 1e-250 || z.norm() < 1e-12 {
                break;
            }
            let ratio = cs[n + 1].norm() / cs[n].norm();
            let nf = n as f64;
            let expect = z.norm() * (nf + 2.0 * k) / (nf + 1.0);
            prop_assert!((ratio / expect - 1.0).abs() <= 1e-10, "n={n}: {ratio} vs {expect}");
        }
        Ok(())
    })
}

fn disk_function(rep: &DiskRep<f64>, coeffs: Vec<Complex64>) -> DiskFunction<f64> {
    DiskFunction::from_coefficients(rep, coeffs).unwrap()
}

fn su11_element(max_r: f64) -> impl Strategy<Value = SU11Element<f64>> {
    (0.0..max_r, 0.0..2.0 * PI, 0.0..2.0 * PI).prop_map(|(r, p, q)| SU11Element::from_parameters(r, p, q))
}

fn su11_representation() -> Result<(), String> {
    let k = prop_oneof![Just(1.0), Just(1.5), Just(2.0), Just(2.5), Just(3.0)];
    run(24, (k, su11_element(1.0), su11_element(1.0), complex_vec(1..=6)), |(k, g1, g2, f)| {
        let rep = DiskRep::new(k, su11::DEFAULT_CUTOFF).map_err(fail)?;
        let f = disk_function(&rep, f);
        let two = su11::group_action(&rep, &g1, &su11::group_action(&rep, &g2, &f).map_err(fail)?).map_err(fail)?;
        let one = su11::group_action(&rep, &g1.compose(&g2), &f).map_err(fail)?;
        let diff = disk_function(&rep, two.coefficients().iter().zip(one.coefficients()).map(|(a, b)| a - b).collect());
        let rel = su11::norm(&rep, &diff).unwrap() / su11::norm(&rep, &f).unwrap();
        prop_assert!(rel <= 1e-7, "{rel}");
        Ok(())
    })
}

fn su11_overlap_closed_form() -> Result<(), String> {
    run(48, (0.6..4.0f64, complex_in(0.8), complex_in(0.8)), |(k, a, b)| {
        let rep = DiskRep::new(k, su11::DEFAULT_CUTOFF).map_err(fail)?;
        let (a, b) = (DiskPoint::new(a).unwrap(), DiskPoint::new(b).unwrap());
        let ip = su11::inner_product(&rep, &su11::coherent_state(&rep, &a).unwrap(), &su11::coherent_state(&rep, &b).unwrap())
            .map_err(fail)?;
        prop_assert!((ip - su11::overlap(&rep, &a, &b)).norm() <= 1e-10);
        Ok(())
    })
}

fn su11_unitarity() -> Result<(), String> {
    let k = prop_oneof![Just(1.0), Just(1.5)];
    run(20, (k, su11_element(1.5), complex_vec(1..=8)), |(k, g, f)| {
        let rep = DiskRep::new(k, su11::DEFAULT_CUTOFF).map_err(fail)?;
        let f = disk_function(&rep, f);
        let out = su11::group_action(&rep, &g, &f).map_err(fail)?;
        let (a, b) = (su11::norm(&rep, &out).unwrap(), su11::norm(&rep, &f).unwrap());
        prop_assert!((a - b).abs() <= 1e-8 * b, "{a} vs {b}");
        Ok(())
    })
}

fn su11_growth_bound() -> Result<(), String> {
    run(100, (0.6..4.0f64, complex_vec(1..=12), complex_in(0.95)), |(k, f, z)| {
        let rep = DiskRep::new(k, 64).map_err(fail)?;
        let f = disk_function(&rep, f);
        let s = su11::symbol(&rep, &f, &DiskPoint::new(z).unwrap()).map_err(fail)?;
        let bound = su11::norm(&rep, &f).unwrap();
        prop_assert!(s.norm() <= bound * (1.0 + 1e-12), "{} > {bound}", s.norm());
        Ok(())
    })
}

fn su11_reproduction() -> Result<(), String> {
    run(20, (0.6..4.0f64, complex_vec(1..=11), complex_in(0.9)), |(k, f, z)| {
        let rep = DiskRep::new(k, su11::DEFAULT_CUTOFF).map_err(fail)?;
        let f = disk_function(&rep, f);
        let got = su11::inner_product(&rep, &su11::delta_function(&rep, z).unwrap(), &f).map_err(fail)?;
        prop_assert!((got - f.eval(z)).norm() <= 1e-8);
        Ok(())
    })
}

// frames

fn frames_frame_operator_psd() -> Result<(), String> {
    let sphere = default_sphere_grid::<f64>();
    let points = prop::collection::vec(sphere_point(), 0..12);
    run(24, (spin_and_weight(0, 6), points, prop::collection::vec(complex_in(0.8), 0..8)), |((tj, tm), pts, zs)| {
        let fam = CoherentFamily::su2(h(tj), h(tm), &sphere).map_err(fail)?;
        let pts: Vec<_> = pts.into_iter().map(|(t, p)| SpherePoint::new(t, p)).collect();
        if let Ok(sub) = LatticeSubsystem::uniform_sphere(&fam, pts) {
            let s = frames::frame_operator(&sub, fam.probe_dim()).map_err(fail)?;
            prop_assert!(s.hermiticity_defect() <= 1e-12);
            prop_assert!(s.hermitian_eigen().unwrap().min() >= -1e-12);
        }
        let rep = DiskRep::new(1.5, 64).unwrap();
        let fam = CoherentFamily::su11(rep, 8, &disk_invariant_grid(1e-3, 4, 8).unwrap()).map_err(fail)?;
        let pts: Vec<_> = zs.into_iter().map(|z| FamilyPoint::Disk(DiskPoint::new(z).unwrap())).collect();
        if let Ok(sub) = LatticeSubsystem::new(&fam, pts, 1.0) {
            let s = frames::frame_operator(&sub, 8).map_err(fail)?;
            prop_assert!(s.hermiticity_defect() <= 1e-12);
            prop_assert!(s.hermitian_eigen().unwrap().min() >= -1e-12);
        }
        Ok(())
    })
}

fn frames_continuum() -> Result<(), String> {
    let sphere = default_sphere_grid::<f64>();
    run(12, spin_and_weight(0, 8), |(tj, tm)| {
        let fam = CoherentFamily::su2(h(tj), h(tm), &sphere).map_err(fail)?;
        let s = frames::continuum_frame_operator(&fam, fam.probe_dim()).map_err(fail)?;
        let target = ComplexMatrix::identity(fam.probe_dim()).scale_real(fam.d_theoretical());
        prop_assert!(s.max_abs_diff(&target) <= 1e-10);
        Ok(())
    })
}

fn frames_round_trip() -> Result<(), String> {
    let sphere = default_sphere_grid::<f64>();
    let su2_fams: Vec<_> = [(2, 2), (3, 1), (4, -2), (6, 6)]
        .iter()
        .map(|&(tj, tm)| CoherentFamily::su2(h(tj), h(tm), &sphere).unwrap())
        .collect();
    let rep = DiskRep::new(1.5, su11::DEFAULT_CUTOFF).unwrap();
    let disk = CoherentFamily::su11(rep, 6, &default_disk_invariant_grid()).unwrap();
    let space = FockSpace::<f64>::single_mode(64).unwrap();
    let plane = CoherentFamily::weyl(space.clone(), space.vacuum(), 6, &default_plane_grid()).unwrap();
    run(16, (0..su2_fams.len(), complex_vec(7..=7)), |(i, v)| {
        let fam = &su2_fams[i];
        let psi = normalized(v[..fam.probe_dim()].to_vec());
        let back = frames::reconstruct(fam, &frames::expand(fam, &psi).map_err(fail)?).map_err(fail)?;
        prop_assert!(back.iter().zip(&psi).all(|(a, b)| (a - b).norm() <= 1e-8));
        let psi = normalized(v[..6].to_vec());
        for fam in [&disk, &plane] {
            let back = frames::reconstruct(fam, &frames::expand(fam, &psi).map_err(fail)?).map_err(fail)?;
            let dev = back.iter().zip(&psi).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            prop_assert!(dev <= 1e-6, "{:?}: {dev}", fam.group());
        }
        Ok(())
    })
}

fn frames_covariance() -> Result<(), String> {
    let sphere = default_sphere_grid::<f64>();
    let euler = (0.0..2.0 * PI, 0.0..PI, 0.0..4.0 * PI);
    run(5, (spin_and_weight(1, 6), euler), |((tj, tm), (a, b, g))| {
        let fam = CoherentFamily::su2(h(tj), h(tm), &sphere).map_err(fail)?;
        let s = frames::continuum_frame_operator(&fam, fam.probe_dim()).map_err(fail)?;
        let rep = SpinRep::<f64>::new(h(tj)).unwrap();
        let t = rep.operator(&SU2Element::from_euler(a, b, g));
        let conj = &(&t * &s) * &t.adjoint();
        prop_assert!(conj.max_abs_diff(&s) <= 1e-8);
        Ok(())
    })
}

pub fn run_suite(name: &str) {
    let (_, suite) = SUITES.iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("no suite {name}"));
    if let Err(e) = suite() {
        panic!("{name}: {e}");
    }
}
