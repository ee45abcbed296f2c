//! Acceptance gate. Prints one line per criterion and exits non-zero if any
//! of them fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use trinion::exec::Exec;
use trinion::polytope::{lattice_contains, mc_volume_fraction, Lattice, Tetrahedron, Vertex, E0};
use trinion::su2::{ClassAngle, Su2Element};
use trinion::verify::{
    boundary_reducibility_scan, forward_scan, grid_scan, injectivity_scan, run_plan, witness_scan,
    OracleConfig, VerifyPlan,
};

const SEED: u64 = 20_240_601;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn tetrahedron_equivalence() -> Outcome {
    let start = Instant::now();
    let r = grid_scan(51, &OracleConfig::default(), Exec::default()).expect("valid grid");
    let secs = start.elapsed().as_secs_f64();
    outcome(
        r.membership_mismatches == 0 && r.oracle_disagreements == 0 && secs < 60.0,
        format!(
            "{} points, {} inside, {} membership mismatches, oracle {}/{} disagree outside the band \
             ({} of {} band points differ, logged only), {secs:.2}s",
            r.points,
            r.inside,
            r.membership_mismatches,
            r.oracle_disagreements,
            r.oracle_checked,
            r.band_disagreements,
            r.band_points,
        ),
    )
}

fn forward_direction() -> Outcome {
    let start = Instant::now();
    let r = forward_scan(100_000, SEED, Exec::default()).expect("positive count");
    let secs = start.elapsed().as_secs_f64();
    outcome(
        r.violations == 0 && r.worst_slack >= -1e-9 && secs < 10.0,
        format!(
            "{} samples, {} violations, worst slack {:.3e}, {secs:.2}s",
            r.samples, r.violations, r.worst_slack
        ),
    )
}

fn witness_fidelity() -> Outcome {
    let r = witness_scan(10_000, SEED, Exec::default()).expect("positive count");
    outcome(
        r.failures == 0 && r.max_product_error < 1e-9 && r.max_angle_error < 1e-9,
        format!(
            "{} points, max product error {:.3e}, max angle error {:.3e}",
            r.samples, r.max_product_error, r.max_angle_error
        ),
    )
}

fn boundary_reducible() -> Outcome {
    let r = boundary_reducibility_scan(1_000, SEED, Exec::default()).expect("positive count");
    outcome(
        r.passed() && r.max_facet_commutator < 1e-9 && r.min_interior_commutator > 1e-6,
        format!(
            "{} facet samples, max commutator {:.3e}; {} interior samples, min commutator {:.3e}",
            r.facet.samples, r.max_facet_commutator, r.interior.samples, r.min_interior_commutator
        ),
    )
}

fn injectivity() -> Outcome {
    let r = injectivity_scan(1_000, SEED, Exec::default()).expect("positive count");
    outcome(
        r.passed() && r.max_recovery_error < 1e-8,
        format!(
            "{} recovered, max error {:.3e}; {} distinct pairs, {} wrongly conjugate",
            r.recovered.samples - r.recovered.violations,
            r.max_recovery_error,
            r.separated.samples,
            r.separated.violations
        ),
    )
}

fn geometry_constants() -> Outcome {
    let expected = [[0.0, 0.0, 0.0], [PI, PI, 0.0], [0.0, PI, PI], [PI, 0.0, PI]];
    let vertices_ok = Tetrahedron::trinion().vertices() == &expected
        && Vertex::ALL.map(Vertex::coords) == expected;
    let fraction = mc_volume_fraction(1_000_000, SEED, Exec::default());
    let covolume = Lattice::kernel().covolume();
    let e0_in = lattice_contains(E0, 1e-12);
    let half_out = !lattice_contains([0.5, 0.5, 0.0], 1e-12);
    outcome(
        vertices_ok
            && (fraction - 1.0 / 3.0).abs() <= 0.002
            && (covolume - 0.5).abs() <= 1e-12
            && e0_in
            && half_out,
        format!(
            "vertices exact: {vertices_ok}, volume fraction {fraction:.5}, covolume {covolume}, \
             e0 in lattice: {e0_in}, (1/2,1/2,0) excluded: {half_out}"
        ),
    )
}

fn entry_formulas() -> Outcome {
    let n = 20;
    let (mut entry_err, mut trace_err) = (0.0f64, 0.0f64);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let t1 = PI * i as f64 / (n - 1) as f64;
                let t2 = PI * j as f64 / (n - 1) as f64;
                let beta = 2.0 * PI * k as f64 / (n - 1) as f64;
                let g = Su2Element::from_class(ClassAngle::new(t1.min(PI)).unwrap())
                    * Su2Element::tilted(ClassAngle::new(t2.min(PI)).unwrap(), beta);
                let m = g.matrix();
                let (s1, c1) = t1.sin_cos();
                let (s2, c2) = t2.sin_cos();
                let (sb, cb) = beta.sin_cos();
                let re = c1 * c2 - s1 * s2 * cb;
                let im = s1 * c2 + c1 * s2 * cb;
                let printed = [
                    [
                        Complex64::new(re, im),
                        Complex64::new(c1 * s2 * sb, s1 * s2 * sb),
                    ],
                    [
                        Complex64::new(-c1 * s2 * sb, s1 * s2 * sb),
                        Complex64::new(re, -im),
                    ],
                ];
                for r in 0..2 {
                    for c in 0..2 {
                        entry_err = entry_err.max((m[r][c] - printed[r][c]).norm());
                    }
                }
                trace_err = trace_err.max((g.trace() - 2.0 * re).abs());
            }
        }
    }
    outcome(
        entry_err <= 1e-12 && trace_err <= 1e-12,
        format!(
            "8000 grid points, max entry error {entry_err:.3e}, max trace error {trace_err:.3e}"
        ),
    )
}

fn determinism() -> Outcome {
    let plan = VerifyPlan {
        forward: Some(20_000),
        boundary: Some(500),
        injectivity: Some(500),
        witness: Some(2_000),
        grid: Some(11),
        oracle: OracleConfig::default(),
    };
    let render =
        |exec| serde_json::to_string_pretty(&run_plan(&plan, SEED, exec).unwrap()).unwrap();
    let first = render(Exec::Sequential);
    let again = render(Exec::Sequential);
    let parallel = render(Exec::Parallel);
    let other_seed =
        serde_json::to_string_pretty(&run_plan(&plan, SEED + 1, Exec::Sequential).unwrap())
            .unwrap();
    let volume_same = mc_volume_fraction(300_000, SEED, Exec::Sequential).to_bits()
        == mc_volume_fraction(300_000, SEED, Exec::Parallel).to_bits();
    outcome(
        first == again && first == parallel && first != other_seed && volume_same,
        format!(
            "rerun identical: {}, sequential vs parallel identical: {}, seed sensitive: {}, \
             volume estimate identical: {volume_same}",
            first == again,
            first == parallel,
            first != other_seed
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "tetrahedron equivalence on the 51^3 grid",
            tetrahedron_equivalence,
        ),
        ("forward direction, 1e5 Haar triples", forward_direction),
        ("witness fidelity, 1e4 points", witness_fidelity),
        ("boundary iff reducible", boundary_reducible),
        ("injectivity up to conjugation", injectivity),
        ("geometry constants", geometry_constants),
        ("product entry formulas", entry_formulas),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} {name}: {}", i + 1, o.detail);
        failures += usize::from(!o.passed);
    }
    if failures == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!(
            "acceptance: {failures} of {} criteria failed",
            criteria.len()
        );
        ExitCode::FAILURE
    }
}
