use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::path::Path;

use gcs_core::frames::{self, CoherentFamily, FrameReport, LatticeSubsystem};
use gcs_core::io::{self, AdmissibilityJson, LatticeSpec, PointSetSpec};
use gcs_core::mathcore::linalg::inner;
use gcs_core::mathcore::quadrature::{default_disk_invariant_grid, default_plane_grid, default_sphere_grid};
use gcs_core::mathcore::{disk_invariant_grid, plane_grid, sphere_grid};
use gcs_core::su2::{self, DensityMatrix, Field, SampledField};
use gcs_core::{su11, weyl, ComplexMatrix, DiskPoint, DiskRep, FockSpace, HalfInt, SpherePoint, SpinRep};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Check, RunReport};
use crate::{DynamicsArgs, FieldKind, GroupArgs, LatticeArgs, LatticeGroup, OverlapArgs, PqArgs};

/// Any failure that is not a failed check: bad input, I/O, domain errors.
#[derive(Debug)]
pub struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<gcs_core::Error> for CliError {
    fn from(e: gcs_core::Error) -> Self {
        Self(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError(msg.into())
}

type Result<T> = std::result::Result<T, CliError>;

fn half_int(s: &str) -> Result<HalfInt> {
    Ok(s.parse::<HalfInt>()?)
}

fn spin(j: &str, mu: Option<&str>) -> Result<(SpinRep<f64>, HalfInt)> {
    let j = half_int(j)?;
    let rep = SpinRep::new(j)?;
    let mu = match mu {
        Some(m) => half_int(m)?,
        None => j,
    };
    rep.check_weight(mu)?;
    Ok((rep, mu))
}

fn floats<const N: usize>(s: &str) -> Result<[f64; N]> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| usage(format!("expected {N} comma-separated numbers, got {s:?}")))?;
    parts
        .try_into()
        .map_err(|_| usage(format!("expected {N} comma-separated numbers, got {s:?}")))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn verify(group: &GroupArgs) -> Result<RunReport> {
    match group {
        GroupArgs::Su2(a) => {
            let (rep, mu) = spin(&a.j, a.mu.as_deref())?;
            let grid = sphere_grid(a.n_theta, a.n_phi)?;
            let d = su2::d_constant(&rep, mu, &grid)?;
            let d_th: f64 = su2::d_theoretical(rep.j());
            let dev = su2::identity_check(&rep, mu, &grid)?;
            let mut r = RunReport::new("verify su2");
            r.param("j", rep.j().to_string())
                .param("mu", mu.to_string())
                .param("n_theta", a.n_theta)
                .param("n_phi", a.n_phi)
                .result("d", d)
                .result("d_theoretical", d_th)
                .check(Check::new("d_relative", d / d_th, 1.0, 1e-10))
                .check(Check::at_most("identity_deviation", dev, 1e-10));
            Ok(r)
        }
        GroupArgs::Su11(a) => {
            let rep = DiskRep::new(a.k, a.cutoff)?;
            let grid = disk_invariant_grid(a.epsilon, a.n_r, a.n_phi)?;
            let d = su11::d_constant(&rep, &grid)?;
            let dev = su11::identity_check(&rep, &grid, a.probe)?;
            let mut r = RunReport::new("verify su11");
            r.param("k", a.k)
                .param("cutoff", a.cutoff)
                .param("probe_dim", a.probe)
                .param("epsilon", a.epsilon)
                .param("n_r", a.n_r)
                .param("n_phi", a.n_phi)
                .result("d", d)
                .result("d_theoretical", rep.d_theoretical())
                .check(Check::new("d", d, rep.d_theoretical(), 1e-6))
                .check(Check::at_most("identity_deviation", dev, 1e-6));
            Ok(r)
        }
        GroupArgs::Weyl(a) => {
            let space = FockSpace::single_mode(a.cutoff)?;
            let psi0 = space.number_state(a.fiducial)?;
            let grid = plane_grid(a.radius, a.n_r, a.n_phi)?;
            let s = weyl::weyl_frame_operator(&space, &grid, &psi0, a.probe)?;
            let d = s[(0, 0)].re;
            let dev = s.scale_real(1.0 / PI).max_abs_diff(&ComplexMatrix::identity(a.probe));
            let mut r = RunReport::new("verify weyl");
            r.param("cutoff", a.cutoff)
                .param("fiducial", a.fiducial)
                .param("probe_dim", a.probe)
                .param("radius", a.radius)
                .param("n_r", a.n_r)
                .param("n_phi", a.n_phi)
                .result("d", d)
                .result("d_theoretical", PI)
                .check(Check::new("d", d, PI, 1e-8))
                .check(Check::at_most("identity_deviation", dev, 1e-8));
            Ok(r)
        }
    }
}

fn field(a: &DynamicsArgs) -> Result<Field<f64>> {
    Ok(match a.field {
        FieldKind::Constant => Field::Constant(floats::<3>(&a.a)?),
        FieldKind::Rotating => Field::Rotating {
            amplitude: a.amplitude,
            omega: a.omega,
            axial: a.axial,
        },
        FieldKind::Chirped => Field::Chirped {
            amplitude: a.amplitude,
            omega: a.omega,
            rate: a.rate,
            axial: a.axial,
        },
        FieldKind::File => {
            let path = a.field_file.as_deref().ok_or_else(|| usage("--field file needs --field-file"))?;
            let mut rdr = csv::Reader::from_path(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let mut times = Vec::new();
            let mut values = Vec::new();
            for row in rdr.deserialize::<(f64, f64, f64, f64)>() {
                let (t, a1, a2, a3) = row?;
                times.push(t);
                values.push([a1, a2, a3]);
            }
            Field::Sampled(SampledField::new(times, values)?)
        }
    })
}

fn field_name(k: FieldKind) -> &'static str {
    match k {
        FieldKind::Constant => "constant",
        FieldKind::Rotating => "rotating",
        FieldKind::Chirped => "chirped",
        FieldKind::File => "file",
    }
}

pub fn dynamics(a: &DynamicsArgs) -> Result<RunReport> {
    let (rep, mu) = spin(&a.j, a.mu.as_deref())?;
    let f = field(a)?;
    let n0 = SpherePoint::new(a.theta, a.phi);
    let psi0 = su2::coherent_state(&rep, mu, &n0)?;
    let q = su2::evolve_quantum(&rep, &f, &psi0, a.t_end, a.dt)?;
    let c = su2::evolve_classical(&f, &n0, a.t_end, a.dt)?;
    let mu_f = mu.to_real::<f64>();
    let mut max_deficit = 0.0f64;
    let mut max_expect = 0.0f64;
    let mut fidelity = Vec::with_capacity(q.states.len());
    for (psi, n) in q.states.iter().zip(&c.vectors) {
        let deficit = su2::fidelity_deficit(&rep, mu, *n, psi)?;
        max_deficit = max_deficit.max(deficit);
        fidelity.push(1.0 - deficit);
        if mu_f != 0.0 {
            let e = su2::expectation_vector(&rep, psi);
            let err = (0..3).map(|i| (e[i] / mu_f - n[i]).powi(2)).sum::<f64>().sqrt();
            max_expect = max_expect.max(err);
        }
    }
    if let Some(path) = &a.out {
        write_trajectory(path, &q.times, &q.states, &c.vectors, &fidelity)?;
    }
    let mut r = RunReport::new("dynamics");
    r.param("j", rep.j().to_string())
        .param("mu", mu.to_string())
        .param("theta", a.theta)
        .param("phi", a.phi)
        .param("field", field_name(a.field))
        .param("t_end", a.t_end)
        .param("dt", a.dt);
    match a.field {
        FieldKind::Constant => {
            r.param("a", floats::<3>(&a.a)?);
        }
        FieldKind::Rotating | FieldKind::Chirped => {
            r.param("amplitude", a.amplitude).param("omega", a.omega).param("axial", a.axial);
            if a.field == FieldKind::Chirped {
                r.param("rate", a.rate);
            }
        }
        FieldKind::File => {
            r.param("field_file", a.field_file.as_ref().map(|p| p.display().to_string()));
        }
    }
    r.result("steps", q.times.len() - 1)
        .check(Check::at_most("max_fidelity_deficit", max_deficit, 1e-8))
        .check(Check::at_most("max_norm_drift", q.max_norm_drift, 1e-8));
    if mu_f != 0.0 {
        r.check(Check::at_most("max_expectation_error", max_expect, 1e-6));
    }
    Ok(r)
}

fn write_trajectory(
    path: &Path,
    times: &[f64],
    states: &[Vec<Complex<f64>>],
    vectors: &[[f64; 3]],
    fidelity: &[f64],
) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let dim = states.first().map_or(0, Vec::len);
    let mut header = vec!["t".to_owned()];
    for i in 0..dim {
        header.push(format!("re_{i}"));
        header.push(format!("im_{i}"));
    }
    header.extend(["n1", "n2", "n3", "fidelity"].map(String::from));
    w.write_record(&header)?;
    for (((t, psi), n), f) in times.iter().zip(states).zip(vectors).zip(fidelity) {
        let mut row = vec![t.to_string()];
        for z in psi {
            row.push(z.re.to_string());
            row.push(z.im.to_string());
        }
        row.extend(n.iter().map(f64::to_string));
        row.push(f.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn frame_checks(r: &mut RunReport, report: &FrameReport) {
    r.result("frame", report)
        .check(Check::at_most("frame_psd_defect", (-report.a).max(0.0), 1e-12));
}

fn write_frame(path: &Path, report: &FrameReport) -> Result<()> {
    let s = io::to_json(report)?;
    fs::write(path, s + "\n").map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn lattice(a: &LatticeArgs) -> Result<RunReport> {
    let text = read(&a.spec)?;
    let mut r = RunReport::new("lattice");
    r.param("spec", a.spec.display().to_string()).param("probe_dim", a.probe);
    let report = match a.group {
        LatticeGroup::Weyl => {
            let spec: LatticeSpec = io::from_json(&text)?;
            let lat = spec.to_lattice::<f64>()?;
            let adm = weyl::lattice_admissible(&lat);
            r.param("group", "weyl")
                .param("range", a.range)
                .param("cutoff", a.cutoff)
                .result("admissibility", AdmissibilityJson::from(&adm));
            if lat.n_modes() != 1 {
                return Ok(r);
            }
            let space = FockSpace::single_mode(a.cutoff)?;
            let fam = CoherentFamily::weyl(space.clone(), space.vacuum(), a.probe.min(a.cutoff / 2).max(1), &default_plane_grid())?;
            let sub = LatticeSubsystem::weyl_lattice(&fam, &lat, a.range)?;
            frames::frame_report(&sub, a.probe)?
        }
        LatticeGroup::Su2 => {
            let j = a.j.as_deref().ok_or_else(|| usage("lattice su2 needs --j"))?;
            let (rep, mu) = spin(j, a.mu.as_deref())?;
            let spec: PointSetSpec = io::from_json(&text)?;
            let fam = CoherentFamily::su2(rep.j(), mu, &default_sphere_grid())?;
            let pts = spec.sphere_points();
            let sub = match spec.cell_volume {
                Some(v) => LatticeSubsystem::new(&fam, pts.into_iter().map(frames::FamilyPoint::Sphere).collect(), v)?,
                None => LatticeSubsystem::uniform_sphere(&fam, pts)?,
            };
            r.param("group", "su2").param("j", rep.j().to_string()).param("mu", mu.to_string());
            frames::frame_report(&sub, a.probe)?
        }
        LatticeGroup::Su11 => {
            let k = a.k.ok_or_else(|| usage("lattice su11 needs --k"))?;
            let spec: PointSetSpec = io::from_json(&text)?;
            let v = spec
                .cell_volume
                .ok_or_else(|| usage("su11 point sets must give cell_volume"))?;
            let rep = DiskRep::new(k, su11::DEFAULT_CUTOFF)?;
            let fam = CoherentFamily::su11(rep, a.probe.min(su11::DEFAULT_CUTOFF / 2).max(1), &default_disk_invariant_grid())?;
            let pts: Vec<DiskPoint<f64>> = spec.disk_points()?;
            let sub = LatticeSubsystem::new(&fam, pts.into_iter().map(frames::FamilyPoint::Disk).collect(), v)?;
            r.param("group", "su11").param("k", k);
            frames::frame_report(&sub, a.probe)?
        }
    };
    frame_checks(&mut r, &report);
    if let Some(path) = &a.out {
        write_frame(path, &report)?;
    }
    Ok(r)
}

/// `L_n(x)` by the three-term recurrence.
fn laguerre(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 - x);
    if n == 0 {
        return prev;
    }
    for m in 1..n {
        let m = m as f64;
        let next = ((2.0 * m + 1.0 - x) * cur - m * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

pub fn overlap(group: &OverlapArgs) -> Result<RunReport> {
    match group {
        OverlapArgs::Su2 { j, mu, a, b } => {
            let (rep, mu) = spin(j, mu.as_deref())?;
            let [ta, pa] = floats::<2>(a)?;
            let [tb, pb] = floats::<2>(b)?;
            let (pa, pb) = (SpherePoint::new(ta, pa), SpherePoint::new(tb, pb));
            let ov = su2::overlap(&rep, mu, &pa, &pb)?;
            let expected = su2::overlap_modulus_wigner(rep.j(), mu, pa.dot(&pb))?;
            let mut r = RunReport::new("overlap su2");
            r.param("j", rep.j().to_string())
                .param("mu", mu.to_string())
                .param("a", [ta, pa.phi])
                .param("b", [tb, pb.phi])
                .result("overlap", [ov.re, ov.im])
                .check(Check::new("modulus", ov.norm(), expected, 1e-10));
            Ok(r)
        }
        OverlapArgs::Su11 { k, cutoff, a, b } => {
            let rep = DiskRep::new(*k, *cutoff)?;
            let [ar, ai] = floats::<2>(a)?;
            let [br, bi] = floats::<2>(b)?;
            let za = DiskPoint::new(Complex::new(ar, ai))?;
            let zb = DiskPoint::new(Complex::new(br, bi))?;
            let closed = su11::overlap(&rep, &za, &zb);
            let series = su11::inner_product(&rep, &su11::coherent_state(&rep, &za)?, &su11::coherent_state(&rep, &zb)?)?;
            let mut r = RunReport::new("overlap su11");
            r.param("k", *k)
                .param("cutoff", *cutoff)
                .param("a", [ar, ai])
                .param("b", [br, bi])
                .result("overlap", [closed.re, closed.im])
                .check(Check::at_most("closed_form_vs_series", (closed - series).norm(), 1e-10));
            Ok(r)
        }
        OverlapArgs::Weyl { cutoff, fiducial, a, b } => {
            let space = FockSpace::single_mode(*cutoff)?;
            let psi0 = space.number_state(*fiducial)?;
            let [ar, ai] = floats::<2>(a)?;
            let [br, bi] = floats::<2>(b)?;
            let (za, zb) = (Complex::new(ar, ai), Complex::new(br, bi));
            let sa = weyl::weyl_coherent_state(&[za], &psi0, &space)?;
            let sb = weyl::weyl_coherent_state(&[zb], &psi0, &space)?;
            let ov = inner(&sa, &sb);
            let x = (za - zb).norm_sqr();
            let expected = (-x / 2.0).exp() * laguerre(*fiducial, x).abs();
            let mut r = RunReport::new("overlap weyl");
            r.param("cutoff", *cutoff)
                .param("fiducial", *fiducial)
                .param("a", [ar, ai])
                .param("b", [br, bi])
                .result("overlap", [ov.re, ov.im])
                .check(Check::new("modulus", ov.norm(), expected, 1e-10));
            Ok(r)
        }
    }
}

fn random_density(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix<f64> {
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let rho = g.matmul(&g.adjoint());
    let tr = rho.trace().re;
    rho.scale_real(1.0 / tr)
}

pub fn pq(a: &PqArgs) -> Result<RunReport> {
    let (rep, mu) = spin(&a.j, a.mu.as_deref())?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let grid = default_sphere_grid::<f64>();
    let scale = f64::from(rep.j().doubled() + 1) / (4.0 * PI);
    let mut max_err = 0.0f64;
    let mut max_q_err = 0.0f64;
    for _ in 0..a.samples {
        let rho = random_density(rep.dim(), &mut rng);
        let coeffs = su2::rho_to_p(&rep, mu, &rho)?;
        let back = su2::p_to_rho(&rep, mu, &coeffs)?;
        max_err = max_err.max(back.operator.max_abs_diff(&rho));
        let dm = DensityMatrix::new(rho)?;
        let total = grid.integrate(|p| su2::q_function(&rep, &dm, mu, p).unwrap_or(f64::NAN));
        max_q_err = max_q_err.max((scale * total - 1.0).abs());
    }
    let mut r = RunReport::new("pq");
    r.param("j", rep.j().to_string())
        .param("mu", mu.to_string())
        .param("samples", a.samples)
        .param("seed", a.seed)
        .check(Check::at_most("round_trip", max_err, 1e-8))
        .check(Check::at_most("q_normalization", max_q_err, 1e-10));
    Ok(r)
}
