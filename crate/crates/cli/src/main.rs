mod angle;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use angle::{Angle, AngleUnit};
use trinion::polytope::{self, export, Facet, Region, Tetrahedron};
use trinion::solver::{self, SolveOutcome, ANGLE_TOLERANCE};
use trinion::su2::{AngleTriple, Su2Element, PRODUCT_TOLERANCE};
use trinion::verify::{self, OracleConfig, SampledRepresentation, VerifyPlan, VerifyReport};
use trinion::Exec;

#[derive(Debug, Parser)]
#[command(
    name = "trinion",
    version,
    about = "Conjugacy classes of SU(2) with product one"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Tolerance for facet activity and membership.
    #[arg(long, global = true, env = "TRINION_TOL", default_value_t = ANGLE_TOLERANCE)]
    tol: f64,
    /// Seed for every random scan.
    #[arg(long, global = true, env = "TRINION_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, env = "TRINION_OUTPUT", value_enum, default_value_t = Output::Text)]
    output: Output,
    /// How bare angle arguments are read.
    #[arg(long, global = true, env = "TRINION_UNIT", value_enum, default_value_t = AngleUnit::Rad)]
    unit: AngleUnit,
    /// Run scans on one thread. Results are identical either way.
    #[arg(long, global = true, env = "TRINION_SEQUENTIAL")]
    sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Json,
    Off,
}

/// Three class angles: radians, or multiples of pi such as `pi`, `0.5pi`, `3/4pi`.
#[derive(Debug, Args)]
struct Triple {
    #[arg(allow_hyphen_values = true)]
    t1: String,
    #[arg(allow_hyphen_values = true)]
    t2: String,
    #[arg(allow_hyphen_values = true)]
    t3: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test a triple against the tetrahedron. Exits 0 inside, 1 outside.
    Check(Triple),
    /// Build an explicit triple of matrices with product one.
    Solve(Triple),
    /// Draw Haar-random representations, or estimate the volume fraction.
    Sample {
        #[arg(long, default_value_t = 1000)]
        n: u64,
        /// Report the Monte Carlo volume fraction of the tetrahedron in the cube.
        #[arg(long)]
        volume: bool,
    },
    /// Run the oracle scans. Without selections, runs every scan but the grid.
    Verify {
        #[arg(long, value_name = "N")]
        forward: Option<u64>,
        #[arg(long, value_name = "M")]
        boundary: Option<u64>,
        #[arg(long, value_name = "K")]
        injectivity: Option<u64>,
        #[arg(long, value_name = "N")]
        witness: Option<u64>,
        /// Points per axis of the cube grid.
        #[arg(long, value_name = "N")]
        grid: Option<u64>,
        #[arg(long, default_value_t = OracleConfig::default().beta_grid)]
        beta_grid: usize,
        #[arg(long, default_value_t = OracleConfig::default().refine_iters)]
        refine_iters: usize,
        #[arg(long, default_value_t = OracleConfig::default().feasibility_margin)]
        margin: f64,
    },
    /// Write the tetrahedron as JSON or OFF.
    Export {
        #[arg(long, env = "TRINION_FORMAT", value_enum, default_value_t = ExportFormat::Json)]
        format: ExportFormat,
        /// Destination file; standard output when omitted.
        path: Option<PathBuf>,
    },
}

/// A failure with its exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m,
        }
    }
}

impl From<trinion::Error> for Failure {
    fn from(e: trinion::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// What a command printed and whether its claim held.
struct Done {
    stdout: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(done) => {
            print!("{}", done.stdout);
            if done.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Result<Done, Failure> {
    let g = &cli.global;
    if !(g.tol.is_finite() && g.tol > 0.0) {
        return Err(Failure::Usage(format!(
            "--tol must be positive, got {}",
            g.tol
        )));
    }
    let exec = if g.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    match &cli.command {
        Command::Check(t) => check(g, t),
        Command::Solve(t) => solve(g, t),
        Command::Sample { n, volume } => sample(g, *n, *volume, exec),
        Command::Verify {
            forward,
            boundary,
            injectivity,
            witness,
            grid,
            beta_grid,
            refine_iters,
            margin,
        } => {
            let oracle = OracleConfig {
                beta_grid: *beta_grid,
                refine_iters: *refine_iters,
                feasibility_margin: *margin,
            };
            oracle.validate()?;
            let selected = [forward, boundary, injectivity, witness, grid]
                .iter()
                .any(|o| o.is_some());
            let plan = if selected {
                VerifyPlan {
                    forward: *forward,
                    boundary: *boundary,
                    injectivity: *injectivity,
                    witness: *witness,
                    grid: *grid,
                    oracle,
                }
            } else {
                VerifyPlan {
                    oracle,
                    ..VerifyPlan::standard()
                }
            };
            verify_cmd(g, &plan, exec)
        }
        Command::Export { format, path } => export_cmd(*format, path.as_ref()),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

fn parse_triple(g: &Global, t: &Triple) -> Result<(Vec<Angle>, AngleTriple), Failure> {
    let angles = [&t.t1, &t.t2, &t.t3]
        .into_iter()
        .map(|s| Angle::parse(s, g.unit))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::Usage)?;
    let [t1, t2, t3] = [0, 1, 2].map(|i| angles[i].radians());
    let triple = AngleTriple::new(t1, t2, t3)?;
    Ok((angles, triple))
}

#[derive(Debug, Serialize)]
struct FacetMargin {
    facet: Facet,
    inequality: &'static str,
    slack: f64,
}

fn facet_margins(t: &AngleTriple) -> Vec<FacetMargin> {
    Facet::ALL
        .into_iter()
        .zip(polytope::margins(t))
        .map(|(facet, slack)| FacetMargin {
            facet,
            inequality: facet.inequality(),
            slack,
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct CheckReport {
    input: Vec<String>,
    angles: AngleTriple,
    tolerance: f64,
    inside: bool,
    region: Region,
    margins: Vec<FacetMargin>,
}

fn check(g: &Global, t: &Triple) -> Result<Done, Failure> {
    let (input, angles) = parse_triple(g, t)?;
    let tetra = Tetrahedron::trinion();
    let report = CheckReport {
        input: input.iter().map(Angle::to_string).collect(),
        angles,
        tolerance: g.tol,
        inside: tetra.contains(&angles, g.tol),
        region: tetra.classify(&angles, g.tol),
        margins: facet_margins(&angles),
    };
    let stdout = match g.output {
        Output::Json => json(&report),
        Output::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "angles: {}", fmt_triple(&angles));
            let _ = writeln!(s, "inside: {}", report.inside);
            let _ = writeln!(s, "region: {}", report.region);
            for m in &report.margins {
                let _ = writeln!(s, "margin {:?} on [{}]", m.slack, m.inequality);
            }
            s
        }
    };
    Ok(Done {
        stdout,
        ok: report.inside,
    })
}

fn fmt_triple(t: &AngleTriple) -> String {
    let [a, b, c] = t.as_array();
    format!("({a:?}, {b:?}, {c:?})")
}

/// Matrix entries as `[re, im]` pairs.
type Entries = [[[f64; 2]; 2]; 2];

fn entries(e: &Su2Element) -> Entries {
    e.matrix().map(|row| row.map(|z| [z.re, z.im]))
}

fn fmt_complex([re, im]: [f64; 2]) -> String {
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{re:?} {sign} {:?}i", im.abs())
}

#[derive(Debug, Serialize)]
struct WitnessCheck {
    matrices: [Entries; 3],
    product_error: f64,
    max_angle_error: f64,
}

#[derive(Debug, Serialize)]
struct SolveReport {
    input: Vec<String>,
    angles: AngleTriple,
    tolerance: f64,
    outcome: SolveOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<WitnessCheck>,
}

fn solve(g: &Global, t: &Triple) -> Result<Done, Failure> {
    let (input, angles) = parse_triple(g, t)?;
    let outcome = solver::solve_witness(&angles, g.tol)?;
    let check = outcome.witness().map(|w| WitnessCheck {
        matrices: w.rep.elements().map(|e| entries(&e)),
        product_error: w.rep.product_error(),
        max_angle_error: w.rep.moment_map().max_abs_diff(&angles),
    });
    if let Some(c) = &check {
        if c.product_error >= PRODUCT_TOLERANCE {
            eprintln!(
                "error: witness product is {:?} from the identity, above {PRODUCT_TOLERANCE:?}",
                c.product_error
            );
            return Ok(Done {
                stdout: String::new(),
                ok: false,
            });
        }
    }
    let report = SolveReport {
        input: input.iter().map(Angle::to_string).collect(),
        angles,
        tolerance: g.tol,
        outcome,
        check,
    };
    let ok = report.outcome.is_witness();
    let stdout = match g.output {
        Output::Json => json(&report),
        Output::Text => solve_text(&report),
    };
    Ok(Done { stdout, ok })
}

fn solve_text(r: &SolveReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "angles: {}", fmt_triple(&r.angles));
    match (&r.outcome, &r.check) {
        (SolveOutcome::Witness(w), Some(c)) => {
            let _ = writeln!(s, "status: witness");
            let _ = writeln!(s, "region: {}", w.region);
            let _ = writeln!(s, "beta: {:?}", w.beta.beta);
            if let Some(raw) = w.beta.cos_beta_raw {
                let _ = writeln!(s, "cos beta (raw): {raw:?}");
            }
            for (i, (e, m)) in w.rep.elements().iter().zip(&c.matrices).enumerate() {
                let [a, b, cc, d] = e.components();
                let _ = writeln!(s, "a{}: quaternion [{a:?}, {b:?}, {cc:?}, {d:?}]", i + 1);
                for row in m {
                    let _ = writeln!(s, "    [{}, {}]", fmt_complex(row[0]), fmt_complex(row[1]));
                }
            }
            let _ = writeln!(s, "product error: {:?}", c.product_error);
            let _ = writeln!(s, "max angle error: {:?}", c.max_angle_error);
        }
        (SolveOutcome::Infeasible { margins, violated }, _) => {
            let _ = writeln!(s, "status: infeasible");
            for f in violated {
                let _ = writeln!(s, "violates [{}]", f.inequality());
            }
            for (f, m) in Facet::ALL.iter().zip(margins) {
                let _ = writeln!(s, "margin {m:?} on [{}]", f.inequality());
            }
        }
        (SolveOutcome::Witness(_), None) => unreachable!("witnesses always carry a check"),
    }
    s
}

#[derive(Debug, Serialize)]
struct VolumeReport {
    seed: u64,
    samples: u64,
    fraction: f64,
    expected: f64,
}

#[derive(Debug, Serialize)]
struct SampleReport {
    seed: u64,
    samples: Vec<SampledRepresentation>,
}

fn sample(g: &Global, n: u64, volume: bool, exec: Exec) -> Result<Done, Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let stdout = if volume {
        let r = VolumeReport {
            seed: g.seed,
            samples: n,
            fraction: polytope::mc_volume_fraction(n, g.seed, exec),
            expected: 1.0 / 3.0,
        };
        match g.output {
            Output::Json => json(&r),
            Output::Text => format!(
                "samples: {}\nseed: {}\nvolume fraction: {:?}\nexpected: {:?}\n",
                r.samples, r.seed, r.fraction, r.expected
            ),
        }
    } else {
        let r = SampleReport {
            seed: g.seed,
            samples: verify::sample_representations(n, g.seed, exec),
        };
        match g.output {
            Output::Json => json(&r),
            Output::Text => {
                let mut s = String::new();
                for x in &r.samples {
                    let [a1, a2, a3] = x.rep.elements().map(|e| e.components());
                    let _ = writeln!(s, "{} a1={a1:?} a2={a2:?} a3={a3:?}", fmt_triple(&x.angles));
                }
                s
            }
        }
    };
    Ok(Done { stdout, ok: true })
}

fn verify_cmd(g: &Global, plan: &VerifyPlan, exec: Exec) -> Result<Done, Failure> {
    let report = verify::run_plan(plan, g.seed, exec)?;
    let stdout = match g.output {
        Output::Json => json(&report),
        Output::Text => verify_text(&report),
    };
    Ok(Done {
        stdout,
        ok: report.passed,
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn verify_text(r: &VerifyReport) -> String {
    let mut s = format!("seed: {}\n", r.seed);
    if let Some(f) = &r.forward {
        let _ = writeln!(
            s,
            "forward: {} samples={} violations={} worst_slack={:?}",
            verdict(f.passed()),
            f.samples,
            f.violations,
            f.worst_slack
        );
    }
    if let Some(b) = &r.boundary {
        let _ = writeln!(
            s,
            "boundary: {} facet_samples={} facet_violations={} max_facet_commutator={:?} \
             interior_samples={} interior_violations={} min_interior_commutator={:?}",
            verdict(b.passed()),
            b.facet.samples,
            b.facet.violations,
            b.max_facet_commutator,
            b.interior.samples,
            b.interior.violations,
            b.min_interior_commutator
        );
    }
    if let Some(i) = &r.injectivity {
        let _ = writeln!(
            s,
            "injectivity: {} pairs={} recovery_failures={} max_recovery_error={:?} false_conjugacies={}",
            verdict(i.passed()),
            i.pairs,
            i.recovered.violations,
            i.max_recovery_error,
            i.separated.violations
        );
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(
            s,
            "witness: {} samples={} failures={} max_product_error={:?} max_angle_error={:?}",
            verdict(w.passed()),
            w.samples,
            w.failures,
            w.max_product_error,
            w.max_angle_error
        );
    }
    if let Some(gr) = &r.grid {
        let _ = writeln!(
            s,
            "grid: {} points={} inside={} membership_mismatches={} fidelity_failures={} \
             oracle_disagreements={}/{} holonomy_mismatches={} band_disagreements={}/{}",
            verdict(gr.passed()),
            gr.points,
            gr.inside,
            gr.membership_mismatches,
            gr.fidelity_failures,
            gr.oracle_disagreements,
            gr.oracle_checked,
            gr.holonomy_mismatches,
            gr.band_disagreements,
            gr.band_points
        );
    }
    let _ = writeln!(s, "overall: {}", verdict(r.passed));
    s
}

fn export_cmd(format: ExportFormat, path: Option<&PathBuf>) -> Result<Done, Failure> {
    let tetra = Tetrahedron::trinion();
    let body = match format {
        ExportFormat::Json => export::to_json(tetra),
        ExportFormat::Off => export::to_off(tetra),
    };
    match path {
        Some(p) => {
            std::fs::write(p, &body)
                .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display())))?;
            Ok(Done {
                stdout: String::new(),
                ok: true,
            })
        }
        None => Ok(Done {
            stdout: body,
            ok: true,
        }),
    }
}
