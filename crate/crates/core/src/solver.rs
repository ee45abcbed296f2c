//! Constructive solution of the eigenvalue problem for three classes.
//!
//! Up to conjugation a witness has the form
//!
//! ```text
//! a1 = diag(e^{i t1}, e^{-i t1})
//! a2 = [[cos t2 + i sin t2 cos b, sin t2 sin b], [-sin t2 sin b, cos t2 - i sin t2 cos b]]
//! a3 = (a1 a2)^-1
//! ```
//!
//! and `a1 a2` lies in `C(t3)` exactly when
//! `cos t1 cos t2 - sin t1 sin t2 cos b = cos t3`. The tilt `b` is taken in
//! `[0, pi]`, i.e. `sin t2 sin b >= 0`.
//!
//! Instead of `arccos` of the ratio, `b` is computed from the half-angle form
//!
//! ```text
//! tan^2(b/2) = sin(u_upper/2) sin(u_wrap/2) / (sin(u_lower_a/2) sin(u_lower_b/2))
//! ```
//!
//! where the `u` are the facet slacks of the tetrahedron. This stays accurate
//! at the boundary, where the ratio sits at `+-1` and `arccos` would turn a
//! rounding error of `1e-16` into a tilt error of `1e-8`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{check_tolerance, Error, Result};
use crate::polytope::{self, Facet, Region};
use crate::su2::{AngleTriple, Representation, Su2Element};

/// Default tolerance for facet activity, witness angles and the cos-ratio clamp.
pub const ANGLE_TOLERANCE: f64 = 1e-9;

/// The tilt angle of the second generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaSolution {
    /// In `[0, pi]`.
    pub beta: f64,
    /// `(cos t1 cos t2 - cos t3) / (sin t1 sin t2)`, absent when the
    /// denominator is below tolerance and every tilt works.
    pub cos_beta_raw: Option<f64>,
    /// `|cos_beta_raw| > 1` and was pulled back onto `[-1, 1]`.
    pub clamped: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BetaResult {
    Solved(BetaSolution),
    Infeasible {
        cos_beta_raw: f64,
        margins: [f64; 4],
    },
}

/// A constructed triple together with the data that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(flatten)]
    pub beta: BetaSolution,
    pub region: Region,
    pub rep: Representation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SolveOutcome {
    Witness(Witness),
    Infeasible {
        /// Signed facet slacks, negative where violated.
        margins: [f64; 4],
        violated: Vec<Facet>,
    },
}

impl SolveOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SolveOutcome::Witness(w) => Some(w),
            SolveOutcome::Infeasible { .. } => None,
        }
    }

    pub fn is_witness(&self) -> bool {
        self.witness().is_some()
    }
}

fn cos_ratio(t: &AngleTriple) -> (f64, f64) {
    let [t1, t2, t3] = t.as_array();
    let (s1, c1) = t1.sin_cos();
    let (s2, c2) = t2.sin_cos();
    (c1 * c2 - t3.cos(), s1 * s2)
}

/// Tilt from facet slacks in [`Facet::ALL`] order. Negative slacks count as
/// zero. When both sides vanish any tilt works and `0` is returned.
fn beta_from_slacks(slacks: [f64; 4]) -> f64 {
    let half_sin = |u: f64| (0.5 * u.max(0.0)).sin().max(0.0);
    let num = half_sin(slacks[Facet::Upper.index()]) * half_sin(slacks[Facet::Wrap.index()]);
    let den = half_sin(slacks[Facet::LowerA.index()]) * half_sin(slacks[Facet::LowerB.index()]);
    if num == 0.0 {
        0.0
    } else if den == 0.0 {
        PI
    } else {
        2.0 * num.sqrt().atan2(den.sqrt())
    }
}

/// Solves `cos t1 cos t2 - sin t1 sin t2 cos b = cos t3` for `b` in `[0, pi]`.
///
/// Infeasible iff the ratio leaves `[-1 - tol, 1 + tol]`. Triples with
/// `sin t1 sin t2 <= tol` have no well-defined ratio and are rejected with
/// [`Error::Degenerate`]; [`solve_witness`] handles them.
pub fn beta_from_angles(t: &AngleTriple, tol: f64) -> Result<BetaResult> {
    check_tolerance(tol)?;
    let (num, den) = cos_ratio(t);
    if den <= tol {
        return Err(Error::Degenerate(den));
    }
    let raw = num / den;
    let margins = polytope::margins(t);
    if raw.abs() > 1.0 + tol {
        return Ok(BetaResult::Infeasible {
            cos_beta_raw: raw,
            margins,
        });
    }
    let beta = if raw.abs() >= 1.0 {
        if raw > 0.0 {
            0.0
        } else {
            PI
        }
    } else {
        beta_from_slacks(margins)
    };
    Ok(BetaResult::Solved(BetaSolution {
        beta,
        cos_beta_raw: Some(raw),
        clamped: raw.abs() > 1.0,
    }))
}

/// The holonomy condition `|t1 - t2| <= t3 <= min(t1 + t2, 2 pi - (t1 + t2))`
/// on raw angles; `false` outside the cube `[0, pi]^3`.
pub fn holonomy_condition(angles: [f64; 3]) -> bool {
    let Ok(t) = AngleTriple::try_from(angles) else {
        return false;
    };
    let [t1, t2, t3] = t.as_array();
    (t1 - t2).abs() <= t3 && t3 <= (t1 + t2).min(2.0 * PI - (t1 + t2))
}

/// Builds `(a1, a2, a3)` with classes `t` and `a1 a2 a3 = 1`, or reports the
/// violated facets.
///
/// Feasibility is membership in the tetrahedron within `tol`. Slacks of facets
/// active within `tol` are set to zero, so boundary triples get a tilt of
/// exactly `0` or `pi` and a diagonal (reducible) witness. Central first or
/// second classes fall out of the same formula: both sides of the half-angle
/// ratio vanish and the tilt is irrelevant.
pub fn solve_witness(t: &AngleTriple, tol: f64) -> Result<SolveOutcome> {
    check_tolerance(tol)?;
    let region = polytope::classify(t, tol);
    let margins = polytope::margins(t);
    if let Region::Exterior { violated } = region {
        return Ok(SolveOutcome::Infeasible { margins, violated });
    }

    let mut slacks = margins;
    for facet in region.active_facets() {
        slacks[facet.index()] = 0.0;
    }
    let beta = beta_from_slacks(slacks);

    let (num, den) = cos_ratio(t);
    let cos_beta_raw = (den > tol).then(|| num / den);
    let clamped = cos_beta_raw.is_some_and(|r| r.abs() > 1.0);

    let [c1, c2, _] = t.classes();
    let rep = Representation::from_pair(Su2Element::from_class(c1), Su2Element::tilted(c2, beta));
    Ok(SolveOutcome::Witness(Witness {
        beta: BetaSolution {
            beta,
            cos_beta_raw,
            clamped,
        },
        region,
        rep,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::ClassAngle;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn triple(t1: f64, t2: f64, t3: f64) -> AngleTriple {
        AngleTriple::new(t1, t2, t3).unwrap()
    }

    fn solved(t: &AngleTriple) -> BetaSolution {
        match beta_from_angles(t, ANGLE_TOLERANCE).unwrap() {
            BetaResult::Solved(b) => b,
            other => panic!("expected a tilt, got {other:?}"),
        }
    }

    #[test]
    fn beta_examples() {
        let b = solved(&triple(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2));
        assert_abs_diff_eq!(b.beta, FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(b.cos_beta_raw.unwrap(), 0.0, epsilon = 1e-15);

        // (1/4 - 1/2) / (3/4) = -1/3.
        let t = triple(FRAC_PI_3, FRAC_PI_3, FRAC_PI_3);
        let b = solved(&t);
        assert_abs_diff_eq!(b.cos_beta_raw.unwrap(), -1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b.beta, 1.910_633_236_249_018_6, epsilon = 1e-14);
        let c = ClassAngle::new(FRAC_PI_3).unwrap();
        let product = Su2Element::from_class(c) * Su2Element::tilted(c, b.beta);
        assert_abs_diff_eq!(product.trace(), 1.0, epsilon = 1e-14);

        let bad = triple(FRAC_PI_4, FRAC_PI_4, 3.0 * FRAC_PI_4);
        match beta_from_angles(&bad, ANGLE_TOLERANCE).unwrap() {
            BetaResult::Infeasible {
                cos_beta_raw,
                margins,
            } => {
                assert_abs_diff_eq!(cos_beta_raw, 1.0 + 2f64.sqrt(), epsilon = 1e-14);
                assert!(margins[Facet::Upper.index()] < 0.0);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn beta_rejects_degenerate_and_bad_tolerance() {
        assert!(matches!(
            beta_from_angles(&triple(0.0, 1.0, 1.0), ANGLE_TOLERANCE),
            Err(Error::Degenerate(_))
        ));
        assert!(beta_from_angles(&triple(1.0, 1.0, 1.0), -1.0).is_err());
    }

    #[test]
    fn half_angle_tilt_matches_arccos() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut checked = 0;
        while checked < 2000 {
            let t = triple(
                rng.random_range(0.0..PI),
                rng.random_range(0.0..PI),
                rng.random_range(0.0..PI),
            );
            if !polytope::contains(&t, 0.0) {
                continue;
            }
            let b = solved(&t);
            let raw = b.cos_beta_raw.unwrap();
            assert_abs_diff_eq!(b.beta.cos(), raw.clamp(-1.0, 1.0), epsilon = 1e-9);
            checked += 1;
        }
    }

    #[test]
    fn witness_examples() {
        let w = solve_witness(&triple(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2), ANGLE_TOLERANCE).unwrap();
        let w = w.witness().unwrap();
        assert_abs_diff_eq!(w.beta.beta, FRAC_PI_2, epsilon = 1e-15);
        let neg_k = Su2Element::new(0.0, 0.0, 0.0, -1.0).unwrap();
        let expected = [Su2Element::I, Su2Element::J, neg_k];
        for (x, y) in w.rep.elements().iter().zip(expected) {
            assert!(x.frobenius_distance(&y) < 1e-15, "{x} vs {y}");
        }

        let w = solve_witness(&triple(0.0, 1.0, 1.0), ANGLE_TOLERANCE).unwrap();
        let rep = w.witness().unwrap().rep;
        let c = Su2Element::from_class(ClassAngle::new(1.0).unwrap());
        assert_eq!(rep.a1(), Su2Element::IDENTITY);
        assert!(rep.a2().frobenius_distance(&c) < 1e-15);
        assert!(rep.a3().frobenius_distance(&c.inverse()) < 1e-15);

        let w = solve_witness(
            &triple(FRAC_PI_3, FRAC_PI_3, 2.0 * FRAC_PI_3),
            ANGLE_TOLERANCE,
        )
        .unwrap();
        let w = w.witness().unwrap();
        assert_eq!(w.beta.beta, 0.0);
        assert_eq!(
            w.region,
            Region::Facet {
                facet: Facet::Upper
            }
        );
        assert_eq!(w.rep.a2().vector()[1], 0.0);
        let product = w.rep.a1() * w.rep.a2();
        let target = Su2Element::from_class(ClassAngle::new(2.0 * FRAC_PI_3).unwrap());
        assert!(product.frobenius_distance(&target) < 1e-15);
    }

    #[test]
    fn infeasible_reports_margins() {
        let out = solve_witness(
            &triple(FRAC_PI_4, FRAC_PI_4, 3.0 * FRAC_PI_4),
            ANGLE_TOLERANCE,
        )
        .unwrap();
        match out {
            SolveOutcome::Infeasible { margins, violated } => {
                assert_eq!(violated, vec![Facet::Upper]);
                assert_abs_diff_eq!(margins[Facet::Upper.index()], -FRAC_PI_4, epsilon = 1e-15);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn central_classes() {
        // t1 = pi: feasible iff t3 = pi - t2.
        let w = solve_witness(&triple(PI, 0.7, PI - 0.7), ANGLE_TOLERANCE).unwrap();
        let rep = w.witness().unwrap().rep;
        assert!(rep.moment_map().max_abs_diff(&triple(PI, 0.7, PI - 0.7)) < 1e-12);
        assert!(!solve_witness(&triple(PI, 0.7, 0.7), ANGLE_TOLERANCE)
            .unwrap()
            .is_witness());
        // Both central.
        let w = solve_witness(&triple(PI, PI, 0.0), ANGLE_TOLERANCE).unwrap();
        assert_eq!(
            w.witness().unwrap().region,
            Region::Vertex {
                vertex: polytope::Vertex::R
            }
        );
        assert!(!solve_witness(&triple(PI, PI, 0.5), ANGLE_TOLERANCE)
            .unwrap()
            .is_witness());
        // Second class central.
        let w = solve_witness(&triple(1.2, 0.0, 1.2), ANGLE_TOLERANCE).unwrap();
        assert!(
            w.witness()
                .unwrap()
                .rep
                .moment_map()
                .max_abs_diff(&triple(1.2, 0.0, 1.2))
                < 1e-12
        );
    }

    #[test]
    fn sign_convention_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..5000 {
            let t = triple(
                rng.random_range(0.0..PI),
                rng.random_range(0.0..PI),
                rng.random_range(0.0..PI),
            );
            if let SolveOutcome::Witness(w) = solve_witness(&t, ANGLE_TOLERANCE).unwrap() {
                assert!((0.0..=PI).contains(&w.beta.beta));
                // The j component of a2 is sin(t2) sin(beta).
                assert!(w.rep.a2().vector()[1] >= 0.0);
            }
        }
    }

    #[test]
    fn holonomy_examples() {
        assert!(holonomy_condition([FRAC_PI_2; 3]));
        assert!(holonomy_condition([PI, 0.0, PI]));
        assert!(!holonomy_condition([0.1, 0.2, 2.0 * PI - 0.25]));
        assert!(!holonomy_condition([0.1, 0.2, 0.35]));
    }

    #[test]
    fn holonomy_agrees_with_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100_000 {
            let p: [f64; 3] = std::array::from_fn(|_| rng.random_range(0.0..=PI));
            let t = AngleTriple::try_from(p).unwrap();
            assert_eq!(
                holonomy_condition(p),
                polytope::contains(&t, 1e-12),
                "{p:?}"
            );
        }
    }

    #[test]
    fn outcome_json_shape() {
        let w = solve_witness(&triple(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2), ANGLE_TOLERANCE).unwrap();
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(v["status"], "witness");
        assert!(v["beta"].is_f64());
        assert_eq!(v["region"]["kind"], "interior");
        assert!(v["rep"]["a1"].is_array());
        let back: SolveOutcome = serde_json::from_value(v).unwrap();
        assert_eq!(back, w);

        let inf = solve_witness(
            &triple(FRAC_PI_4, FRAC_PI_4, 3.0 * FRAC_PI_4),
            ANGLE_TOLERANCE,
        )
        .unwrap();
        let v = serde_json::to_value(&inf).unwrap();
        assert_eq!(v["status"], "infeasible");
        assert_eq!(v["margins"].as_array().unwrap().len(), 4);
        assert_eq!(serde_json::from_value::<SolveOutcome>(v).unwrap(), inf);
    }
}
