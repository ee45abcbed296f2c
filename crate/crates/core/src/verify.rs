//! Independent oracles and seeded scans.
//!
//! The oracle never touches the quaternion code or the closed-form tilt: it
//! rebuilds `g1` and `g2` as explicit complex 2x2 matrices from the angles,
//! multiplies them entry by entry and searches the tilt `b` over a grid of
//! `[0, 2 pi)` followed by golden-section refinement. The scans drive the
//! solver and the tetrahedron against each other on Haar-random input, facet
//! samples and conjugated witnesses. Every scan is a deterministic function
//! of its seed and parameters.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{fold_blocks, fold_seeded, map_seeded, Exec};
use crate::polytope::{self, Facet, Tetrahedron, Vertex};
use crate::solver::{self, holonomy_condition, SolveOutcome, ANGLE_TOLERANCE};
use crate::su2::{
    conjugator_between, AngleTriple, Conjugacy, Representation, Su2Element, CONJUGACY_TOLERANCE,
};

/// Allowed negative facet slack for moment-map images of random triples.
pub const FORWARD_TOLERANCE: f64 = 1e-9;
/// Witnesses on the boundary must commute to this Frobenius distance.
pub const FACET_COMMUTATOR_BOUND: f64 = 1e-9;
/// Interior witnesses must have `[a1, a2]` at least this far from the identity.
pub const INTERIOR_COMMUTATOR_FLOOR: f64 = 1e-6;
/// Product error and per-angle error allowed for a witness.
pub const WITNESS_TOLERANCE: f64 = 1e-9;
/// Distinct triples in the injectivity scan differ by more than this.
pub const DISTINCT_GAP: f64 = 1e-3;
/// Lower bound on barycentric weights of sampled points.
pub const MIN_BARYCENTRIC: f64 = 0.05;

const FORWARD_DOMAIN: u64 = 1;
const FACET_DOMAIN: u64 = 2;
const INTERIOR_DOMAIN: u64 = 3;
const RECOVER_DOMAIN: u64 = 4;
const SEPARATE_DOMAIN: u64 = 5;
const SAMPLE_DOMAIN: u64 = 6;
const WITNESS_DOMAIN: u64 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Number of tilt samples over `[0, 2 pi)`.
    pub beta_grid: usize,
    /// Golden-section steps around the best grid tilt.
    pub refine_iters: usize,
    /// A triple counts as solvable when the best angle gap is below this.
    pub feasibility_margin: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            beta_grid: 720,
            refine_iters: 40,
            feasibility_margin: 1e-4,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.beta_grid < 3 {
            return Err(Error::InvalidConfig("beta_grid must be at least 3"));
        }
        if !(self.feasibility_margin.is_finite() && self.feasibility_margin > 0.0) {
            return Err(Error::InvalidConfig("feasibility_margin must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub solvable: bool,
    /// Smallest `|angle(g1 g2(b)) - t3|` found.
    pub gap: f64,
    /// The tilt achieving it.
    pub beta: f64,
}

type Mat = [[Complex64; 2]; 2];

fn class_matrix(theta: f64) -> Mat {
    let (s, c) = theta.sin_cos();
    let zero = Complex64::new(0.0, 0.0);
    [[Complex64::new(c, s), zero], [zero, Complex64::new(c, -s)]]
}

fn tilted_matrix(s2: f64, c2: f64, sb: f64, cb: f64) -> Mat {
    [
        [Complex64::new(c2, s2 * cb), Complex64::new(s2 * sb, 0.0)],
        [Complex64::new(-s2 * sb, 0.0), Complex64::new(c2, -s2 * cb)],
    ]
}

fn matmul(x: &Mat, y: &Mat) -> Mat {
    std::array::from_fn(|i| std::array::from_fn(|j| x[i][0] * y[0][j] + x[i][1] * y[1][j]))
}

fn angle_from_trace(m: &Mat) -> f64 {
    (0.5 * (m[0][0] + m[1][1]).re).clamp(-1.0, 1.0).acos()
}

/// The tilt search with its grid tabulated once.
#[derive(Debug, Clone)]
pub struct BetaOracle {
    cfg: OracleConfig,
    grid: Vec<(f64, f64, f64)>,
}

impl BetaOracle {
    pub fn new(cfg: OracleConfig) -> Result<Self> {
        cfg.validate()?;
        let step = 2.0 * PI / cfg.beta_grid as f64;
        let grid = (0..cfg.beta_grid)
            .map(|k| {
                let beta = step * k as f64;
                let (sb, cb) = beta.sin_cos();
                (beta, sb, cb)
            })
            .collect();
        Ok(Self { cfg, grid })
    }

    pub fn config(&self) -> &OracleConfig {
        &self.cfg
    }

    pub fn check(&self, t: &AngleTriple) -> OracleVerdict {
        let [t1, t2, t3] = t.as_array();
        let g1 = class_matrix(t1);
        let (s2, c2) = t2.sin_cos();
        let gap_at = |sb: f64, cb: f64| {
            (angle_from_trace(&matmul(&g1, &tilted_matrix(s2, c2, sb, cb))) - t3).abs()
        };

        let (mut best_beta, mut best_gap) = (0.0, f64::INFINITY);
        for &(beta, sb, cb) in &self.grid {
            let gap = gap_at(sb, cb);
            if gap < best_gap {
                best_gap = gap;
                best_beta = beta;
            }
        }

        let step = 2.0 * PI / self.cfg.beta_grid as f64;
        let eval = |beta: f64| {
            let (sb, cb) = beta.sin_cos();
            gap_at(sb, cb)
        };
        let ratio = 0.5 * (5f64.sqrt() - 1.0);
        let (mut lo, mut hi) = (best_beta - step, best_beta + step);
        let mut x1 = hi - ratio * (hi - lo);
        let mut x2 = lo + ratio * (hi - lo);
        let (mut f1, mut f2) = (eval(x1), eval(x2));
        for _ in 0..self.cfg.refine_iters {
            if f1 <= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - ratio * (hi - lo);
                f1 = eval(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + ratio * (hi - lo);
                f2 = eval(x2);
            }
            for (x, f) in [(x1, f1), (x2, f2)] {
                if f < best_gap {
                    best_gap = f;
                    best_beta = x;
                }
            }
        }

        OracleVerdict {
            solvable: best_gap < self.cfg.feasibility_margin,
            gap: best_gap,
            beta: best_beta.rem_euclid(2.0 * PI),
        }
    }
}

/// Decides solvability of `t` by direct search over the tilt.
pub fn oracle_solvable(t: &AngleTriple, cfg: &OracleConfig) -> Result<OracleVerdict> {
    Ok(BetaOracle::new(*cfg)?.check(t))
}

/// Counts, a violation tally and the smallest margin to the asserted
/// threshold (positive means the assertion held with room to spare).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingReport {
    pub samples: u64,
    pub violations: u64,
    pub worst_slack: f64,
    pub seed: u64,
}

impl SamplingReport {
    fn empty(seed: u64) -> Self {
        Self {
            samples: 0,
            violations: 0,
            worst_slack: f64::INFINITY,
            seed,
        }
    }

    fn record(&mut self, slack: f64, violated: bool) {
        self.samples += 1;
        self.violations += u64::from(violated);
        self.worst_slack = self.worst_slack.min(slack);
    }

    fn merge(self, other: Self) -> Self {
        Self {
            samples: self.samples + other.samples,
            violations: self.violations + other.violations,
            worst_slack: self.worst_slack.min(other.worst_slack),
            seed: self.seed,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn require_positive(n: u64, what: &'static str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidConfig(what))
    } else {
        Ok(())
    }
}

/// Moment-map image of `(a1, a2, (a1 a2)^-1)` and its smallest facet slack.
pub fn forward_triple(a1: Su2Element, a2: Su2Element) -> (AngleTriple, f64) {
    let t = Representation::from_pair(a1, a2).moment_map();
    let slack = polytope::margins(&t)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    (t, slack)
}

/// Maps `n` Haar-random triples through the moment map and tests membership.
pub fn forward_scan(n: u64, seed: u64, exec: Exec) -> Result<SamplingReport> {
    require_positive(n, "forward scan needs at least one sample")?;
    Ok(fold_seeded(
        exec,
        n,
        seed,
        FORWARD_DOMAIN,
        || SamplingReport::empty(seed),
        |rng, range| {
            let mut report = SamplingReport::empty(seed);
            for _ in range {
                let a1 = Su2Element::haar_sample(rng);
                let a2 = Su2Element::haar_sample(rng);
                let (_, slack) = forward_triple(a1, a2);
                report.record(slack, slack < -FORWARD_TOLERANCE);
            }
            report
        },
        SamplingReport::merge,
    ))
}

/// Uniform point of the simplex with every weight at least `floor`.
fn simplex_weights<const N: usize, R: Rng + ?Sized>(rng: &mut R, floor: f64) -> [f64; N] {
    let mut cuts = [0.0; N];
    for c in cuts.iter_mut().take(N - 1) {
        *c = rng.random::<f64>();
    }
    cuts[..N - 1].sort_by(f64::total_cmp);
    cuts[N - 1] = 1.0;
    let mut prev = 0.0;
    let scale = 1.0 - N as f64 * floor;
    cuts.map(|c| {
        let w = c - prev;
        prev = c;
        floor + scale * w
    })
}

fn combine<const N: usize>(weights: [f64; N], points: [[f64; 3]; N]) -> AngleTriple {
    let p: [f64; 3] = std::array::from_fn(|k| {
        weights
            .iter()
            .zip(points.iter())
            .map(|(w, v)| w * v[k])
            .sum::<f64>()
            .clamp(0.0, PI)
    });
    AngleTriple::try_from(p).expect("clamped into the cube")
}

/// A point of `facet` away from its edges.
pub fn sample_facet_point<R: Rng + ?Sized>(rng: &mut R, facet: Facet) -> AngleTriple {
    combine(
        simplex_weights::<3, _>(rng, MIN_BARYCENTRIC),
        facet.vertices().map(Vertex::coords),
    )
}

/// An interior point of the tetrahedron away from its boundary.
pub fn sample_interior_point<R: Rng + ?Sized>(rng: &mut R) -> AngleTriple {
    combine(
        simplex_weights::<4, _>(rng, MIN_BARYCENTRIC),
        Vertex::ALL.map(Vertex::coords),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub seed: u64,
    pub per_facet: u64,
    /// Slack is `FACET_COMMUTATOR_BOUND - commutator distance`.
    pub facet: SamplingReport,
    /// Slack is `commutator distance - INTERIOR_COMMUTATOR_FLOOR`.
    pub interior: SamplingReport,
    pub max_facet_commutator: f64,
    pub min_interior_commutator: f64,
}

impl BoundaryReport {
    pub fn passed(&self) -> bool {
        self.facet.passed() && self.interior.passed()
    }
}

/// Solves witnesses at `m` points of each facet (they must commute) and at
/// `m` interior points (`[a1, a2]` must not).
pub fn boundary_reducibility_scan(m: u64, seed: u64, exec: Exec) -> Result<BoundaryReport> {
    require_positive(m, "boundary scan needs at least one sample per facet")?;
    let (facet, max_facet_commutator) = fold_seeded(
        exec,
        4 * m,
        seed,
        FACET_DOMAIN,
        || (SamplingReport::empty(seed), 0.0f64),
        |rng, range| {
            let mut acc = (SamplingReport::empty(seed), 0.0f64);
            for i in range {
                let t = sample_facet_point(rng, Facet::ALL[(i % 4) as usize]);
                let commutator = match solver::solve_witness(&t, ANGLE_TOLERANCE) {
                    Ok(SolveOutcome::Witness(w)) if w.region.is_boundary() => {
                        w.rep.max_commutator_distance()
                    }
                    _ => f64::INFINITY,
                };
                let slack = FACET_COMMUTATOR_BOUND - commutator;
                acc.0.record(slack, commutator >= FACET_COMMUTATOR_BOUND);
                acc.1 = acc.1.max(commutator);
            }
            acc
        },
        |a, b| (a.0.merge(b.0), a.1.max(b.1)),
    );
    let (interior, min_interior_commutator) = fold_seeded(
        exec,
        m,
        seed,
        INTERIOR_DOMAIN,
        || (SamplingReport::empty(seed), f64::INFINITY),
        |rng, range| {
            let mut acc = (SamplingReport::empty(seed), f64::INFINITY);
            for _ in range {
                let t = sample_interior_point(rng);
                let commutator = match solver::solve_witness(&t, ANGLE_TOLERANCE) {
                    Ok(SolveOutcome::Witness(w)) if w.region == polytope::Region::Interior => w
                        .rep
                        .a1()
                        .commutator(&w.rep.a2())
                        .frobenius_distance(&Su2Element::IDENTITY),
                    _ => 0.0,
                };
                acc.0.record(
                    commutator - INTERIOR_COMMUTATOR_FLOOR,
                    commutator <= INTERIOR_COMMUTATOR_FLOOR,
                );
                acc.1 = acc.1.min(commutator);
            }
            acc
        },
        |a, b| (a.0.merge(b.0), a.1.min(b.1)),
    );
    Ok(BoundaryReport {
        seed,
        per_facet: m,
        facet,
        interior,
        max_facet_commutator,
        min_interior_commutator,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InjectivityReport {
    pub seed: u64,
    pub pairs: u64,
    /// Conjugated witnesses; slack is `CONJUGACY_TOLERANCE - entry error`.
    pub recovered: SamplingReport,
    /// Witnesses of distinct triples; slack is the largest trace-half gap,
    /// the invariant that rules out conjugacy.
    pub separated: SamplingReport,
    pub max_recovery_error: f64,
}

impl InjectivityReport {
    pub fn passed(&self) -> bool {
        self.recovered.passed() && self.separated.passed()
    }
}

fn interior_witness<R: Rng + ?Sized>(rng: &mut R) -> (AngleTriple, Representation) {
    loop {
        let t = sample_interior_point(rng);
        if let Ok(SolveOutcome::Witness(w)) = solver::solve_witness(&t, ANGLE_TOLERANCE) {
            return (t, w.rep);
        }
    }
}

/// For `k` interior witnesses conjugated by a Haar-random element, recovers
/// a conjugator; for `k` pairs of distinct triples, expects `NotConjugate`.
pub fn injectivity_scan(k: u64, seed: u64, exec: Exec) -> Result<InjectivityReport> {
    require_positive(k, "injectivity scan needs at least one pair")?;
    let (recovered, max_recovery_error) = fold_seeded(
        exec,
        k,
        seed,
        RECOVER_DOMAIN,
        || (SamplingReport::empty(seed), 0.0f64),
        |rng, range| {
            let mut acc = (SamplingReport::empty(seed), 0.0f64);
            for _ in range {
                let (_, rep) = interior_witness(rng);
                let u = Su2Element::haar_sample(rng);
                let moved = rep.conjugate_by(&u);
                let error = match conjugator_between(&rep, &moved, CONJUGACY_TOLERANCE) {
                    Ok(Conjugacy::Conjugate(v)) => rep.conjugate_by(&v).max_entry_error(&moved),
                    _ => f64::INFINITY,
                };
                acc.0
                    .record(CONJUGACY_TOLERANCE - error, error >= CONJUGACY_TOLERANCE);
                acc.1 = acc.1.max(error);
            }
            acc
        },
        |a, b| (a.0.merge(b.0), a.1.max(b.1)),
    );
    let separated = fold_seeded(
        exec,
        k,
        seed,
        SEPARATE_DOMAIN,
        || SamplingReport::empty(seed),
        |rng, range| {
            let mut report = SamplingReport::empty(seed);
            for _ in range {
                let (t, rep) = interior_witness(rng);
                let (other_rep, other_t) = loop {
                    let (s, r) = interior_witness(rng);
                    if s.max_abs_diff(&t) > DISTINCT_GAP {
                        break (r, s);
                    }
                };
                let other = other_rep.conjugate_by(&Su2Element::haar_sample(rng));
                let found = matches!(
                    conjugator_between(&rep, &other, CONJUGACY_TOLERANCE),
                    Ok(Conjugacy::Conjugate(_))
                );
                let evidence = (0..3)
                    .map(|i| (t.class(i).radians().cos() - other_t.class(i).radians().cos()).abs())
                    .fold(0.0, f64::max);
                report.record(evidence, found);
            }
            report
        },
        SamplingReport::merge,
    );
    Ok(InjectivityReport {
        seed,
        pairs: k,
        recovered,
        separated,
        max_recovery_error,
    })
}

/// Cross-check of solver, tetrahedron, holonomy condition and oracle on the
/// uniform grid of `[0, pi]^3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub points_per_axis: u64,
    pub points: u64,
    pub inside: u64,
    /// Witness produced exactly where the tetrahedron test passes.
    pub membership_mismatches: u64,
    /// Witnesses with product or angle error at or above the bound.
    pub fidelity_failures: u64,
    pub max_product_error: f64,
    pub max_angle_error: f64,
    /// Points further than `band` from the boundary, checked against the oracle.
    pub oracle_checked: u64,
    pub oracle_disagreements: u64,
    pub holonomy_mismatches: u64,
    /// Points within `band` of the boundary; disagreements there are only logged.
    pub band_points: u64,
    pub band_disagreements: u64,
    pub band: f64,
}

impl GridReport {
    fn empty(n: u64, band: f64) -> Self {
        Self {
            points_per_axis: n,
            points: 0,
            inside: 0,
            membership_mismatches: 0,
            fidelity_failures: 0,
            max_product_error: 0.0,
            max_angle_error: 0.0,
            oracle_checked: 0,
            oracle_disagreements: 0,
            holonomy_mismatches: 0,
            band_points: 0,
            band_disagreements: 0,
            band,
        }
    }

    fn merge(self, o: Self) -> Self {
        Self {
            points_per_axis: self.points_per_axis,
            points: self.points + o.points,
            inside: self.inside + o.inside,
            membership_mismatches: self.membership_mismatches + o.membership_mismatches,
            fidelity_failures: self.fidelity_failures + o.fidelity_failures,
            max_product_error: self.max_product_error.max(o.max_product_error),
            max_angle_error: self.max_angle_error.max(o.max_angle_error),
            oracle_checked: self.oracle_checked + o.oracle_checked,
            oracle_disagreements: self.oracle_disagreements + o.oracle_disagreements,
            holonomy_mismatches: self.holonomy_mismatches + o.holonomy_mismatches,
            band_points: self.band_points + o.band_points,
            band_disagreements: self.band_disagreements + o.band_disagreements,
            band: self.band,
        }
    }

    pub fn passed(&self) -> bool {
        self.membership_mismatches == 0
            && self.fidelity_failures == 0
            && self.oracle_disagreements == 0
            && self.holonomy_mismatches == 0
    }
}

/// Grid coordinate `pi * i / (n - 1)`, pinned to `pi` at the last index.
pub fn grid_angle(i: u64, n: u64) -> f64 {
    if i + 1 >= n {
        PI
    } else {
        (PI * i as f64 / (n - 1) as f64).min(PI)
    }
}

/// Runs solver, tetrahedron and oracle over the `n^3` grid.
pub fn grid_scan(n: u64, cfg: &OracleConfig, exec: Exec) -> Result<GridReport> {
    if n < 2 {
        return Err(Error::InvalidConfig(
            "grid needs at least two points per axis",
        ));
    }
    let oracle = BetaOracle::new(*cfg)?;
    let band = 2.0 * cfg.feasibility_margin;
    let tetra = Tetrahedron::trinion();
    Ok(fold_blocks(
        exec,
        n * n * n,
        || GridReport::empty(n, band),
        |_, range| {
            let mut r = GridReport::empty(n, band);
            for idx in range {
                let p = [idx / (n * n), (idx / n) % n, idx % n].map(|i| grid_angle(i, n));
                let t = AngleTriple::try_from(p).expect("grid stays in the cube");
                r.points += 1;

                let inside = tetra.contains(&t, ANGLE_TOLERANCE);
                r.inside += u64::from(inside);
                let outcome = solver::solve_witness(&t, ANGLE_TOLERANCE).expect("valid tolerance");
                let witness = outcome.witness();
                r.membership_mismatches += u64::from(witness.is_some() != inside);
                if let Some(w) = witness {
                    let product_error = w.rep.product_error();
                    let angle_error = w.rep.moment_map().max_abs_diff(&t);
                    r.max_product_error = r.max_product_error.max(product_error);
                    r.max_angle_error = r.max_angle_error.max(angle_error);
                    r.fidelity_failures += u64::from(
                        product_error >= WITNESS_TOLERANCE || angle_error >= WITNESS_TOLERANCE,
                    );
                }

                let verdict = oracle.check(&t);
                let disagrees = verdict.solvable != witness.is_some();
                if tetra.boundary_distance(&t) > band {
                    r.oracle_checked += 1;
                    r.oracle_disagreements += u64::from(disagrees);
                    r.holonomy_mismatches += u64::from(holonomy_condition(p) != inside);
                } else {
                    r.band_points += 1;
                    r.band_disagreements += u64::from(disagrees);
                }
            }
            r
        },
        GridReport::merge,
    ))
}

/// Round trip on `count` rejection-sampled points of the tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub seed: u64,
    pub samples: u64,
    pub failures: u64,
    pub max_product_error: f64,
    pub max_angle_error: f64,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn witness_scan(count: u64, seed: u64, exec: Exec) -> Result<WitnessReport> {
    require_positive(count, "witness scan needs at least one sample")?;
    let empty = || WitnessReport {
        seed,
        samples: 0,
        failures: 0,
        max_product_error: 0.0,
        max_angle_error: 0.0,
    };
    Ok(fold_seeded(
        exec,
        count,
        seed,
        WITNESS_DOMAIN,
        empty,
        |rng, range| {
            let mut r = empty();
            for _ in range {
                let t = loop {
                    let p: [f64; 3] = std::array::from_fn(|_| rng.random_range(0.0..=PI));
                    let t = AngleTriple::try_from(p).expect("sampled in the cube");
                    if polytope::contains(&t, 0.0) {
                        break t;
                    }
                };
                let (product_error, angle_error) = match solver::solve_witness(&t, ANGLE_TOLERANCE)
                {
                    Ok(SolveOutcome::Witness(w)) => {
                        (w.rep.product_error(), w.rep.moment_map().max_abs_diff(&t))
                    }
                    _ => (f64::INFINITY, f64::INFINITY),
                };
                r.samples += 1;
                r.failures += u64::from(
                    product_error >= WITNESS_TOLERANCE || angle_error >= WITNESS_TOLERANCE,
                );
                r.max_product_error = r.max_product_error.max(product_error);
                r.max_angle_error = r.max_angle_error.max(angle_error);
            }
            r
        },
        |a, b| WitnessReport {
            seed,
            samples: a.samples + b.samples,
            failures: a.failures + b.failures,
            max_product_error: a.max_product_error.max(b.max_product_error),
            max_angle_error: a.max_angle_error.max(b.max_angle_error),
        },
    ))
}

/// A Haar-random representation and its moment-map image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampledRepresentation {
    pub rep: Representation,
    pub angles: AngleTriple,
}

/// `n` Haar-random representations `(a1, a2, (a1 a2)^-1)`, in a fixed order.
pub fn sample_representations(n: u64, seed: u64, exec: Exec) -> Vec<SampledRepresentation> {
    map_seeded(exec, n, seed, SAMPLE_DOMAIN, |rng, range| {
        range
            .map(|_| {
                let rep = Representation::from_pair(
                    Su2Element::haar_sample(rng),
                    Su2Element::haar_sample(rng),
                );
                SampledRepresentation {
                    rep,
                    angles: rep.moment_map(),
                }
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Which scans to run.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct VerifyPlan {
    pub forward: Option<u64>,
    pub boundary: Option<u64>,
    pub injectivity: Option<u64>,
    pub witness: Option<u64>,
    pub grid: Option<u64>,
    pub oracle: OracleConfig,
}

impl VerifyPlan {
    /// Every scan at its acceptance size, except the grid.
    pub fn standard() -> Self {
        Self {
            forward: Some(100_000),
            boundary: Some(1_000),
            injectivity: Some(1_000),
            witness: Some(10_000),
            grid: None,
            oracle: OracleConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forward: Option<SamplingReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundaryReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub injectivity: Option<InjectivityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridReport>,
    pub passed: bool,
}

pub fn run_plan(plan: &VerifyPlan, seed: u64, exec: Exec) -> Result<VerifyReport> {
    let forward = plan
        .forward
        .map(|n| forward_scan(n, seed, exec))
        .transpose()?;
    let boundary = plan
        .boundary
        .map(|m| boundary_reducibility_scan(m, seed, exec))
        .transpose()?;
    let injectivity = plan
        .injectivity
        .map(|k| injectivity_scan(k, seed, exec))
        .transpose()?;
    let witness = plan
        .witness
        .map(|c| witness_scan(c, seed, exec))
        .transpose()?;
    let grid = plan
        .grid
        .map(|n| grid_scan(n, &plan.oracle, exec))
        .transpose()?;
    let passed = forward.is_none_or(|r| r.passed())
        && boundary.is_none_or(|r| r.passed())
        && injectivity.is_none_or(|r| r.passed())
        && witness.is_none_or(|r| r.passed())
        && grid.is_none_or(|r| r.passed());
    Ok(VerifyReport {
        seed,
        forward,
        boundary,
        injectivity,
        witness,
        grid,
        passed,
    })
}
