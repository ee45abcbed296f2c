use std::f64::consts::PI;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trinion::polytope::{self, Tetrahedron};
use trinion::verify::{oracle_solvable, OracleConfig};
use trinion::{
    conjugator_between, holonomy_condition, solve_witness, AngleTriple, Conjugacy, Representation,
    SolveOutcome, Su2Element,
};

fn cube() -> impl Strategy<Value = AngleTriple> {
    prop::array::uniform3(0.0..=PI).prop_map(|p| AngleTriple::try_from(p).unwrap())
}

/// Interior points from positive barycentric weights on `S, R, Q, P`.
fn interior() -> impl Strategy<Value = AngleTriple> {
    prop::array::uniform4(0.02..1.0f64).prop_map(|w| {
        let total: f64 = w.iter().sum();
        let vs = Tetrahedron::trinion().vertices();
        let p: [f64; 3] =
            std::array::from_fn(|k| (0..4).map(|i| w[i] * vs[i][k]).sum::<f64>() / total);
        AngleTriple::try_from(p.map(|x| x.clamp(0.0, PI))).unwrap()
    })
}

fn element() -> impl Strategy<Value = Su2Element> {
    any::<u64>().prop_map(|s| Su2Element::haar_sample(&mut ChaCha8Rng::seed_from_u64(s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn witness_exactly_inside(t in cube()) {
        let outcome = solve_witness(&t, 1e-9).unwrap();
        prop_assert_eq!(outcome.is_witness(), polytope::contains(&t, 1e-9));
        if let SolveOutcome::Witness(w) = outcome {
            prop_assert!(w.rep.product_error() < 1e-9);
            prop_assert!(w.rep.moment_map().max_abs_diff(&t) < 1e-9);
            prop_assert_eq!(w.region.is_boundary(), w.rep.max_commutator_distance() < 1e-9);
        }
    }

    #[test]
    fn holonomy_matches_membership_off_the_boundary(t in cube()) {
        prop_assume!(Tetrahedron::trinion().boundary_distance(&t) > 1e-9);
        prop_assert_eq!(holonomy_condition(t.as_array()), polytope::contains(&t, 1e-12));
    }

    #[test]
    fn moment_map_is_conjugation_invariant(a1 in element(), a2 in element(), u in element()) {
        let rep = Representation::from_pair(a1, a2);
        let moved = rep.conjugate_by(&u);
        prop_assert!(rep.moment_map().max_abs_diff(&moved.moment_map()) < 1e-7);
        prop_assert!(polytope::contains(&rep.moment_map(), 1e-9));
    }

    #[test]
    fn conjugated_witnesses_are_recovered(t in interior(), u in element()) {
        let rep = solve_witness(&t, 1e-9).unwrap().witness().unwrap().rep;
        let moved = rep.conjugate_by(&u);
        match conjugator_between(&rep, &moved, 1e-8).unwrap() {
            Conjugacy::Conjugate(v) => prop_assert!(rep.conjugate_by(&v).max_entry_error(&moved) < 1e-8),
            Conjugacy::NotConjugate => prop_assert!(false, "conjugate pair not recognised"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn oracle_agrees_off_the_band(t in cube()) {
        let cfg = OracleConfig::default();
        prop_assume!(Tetrahedron::trinion().boundary_distance(&t) > 2.0 * cfg.feasibility_margin);
        let verdict = oracle_solvable(&t, &cfg).unwrap();
        prop_assert_eq!(verdict.solvable, solve_witness(&t, 1e-9).unwrap().is_witness());
    }
}
