//! SU(2) representations of the pair of pants: the Jeffrey–Weitsman
//! tetrahedron of attainable conjugacy-class angles, a closed-form witness
//! solver, the kernel lattice of the moment map, and brute-force oracles that
//! check all of it.
//!
//! ```
//! use trinion::{solve_witness, AngleTriple, SolveOutcome};
//! use std::f64::consts::FRAC_PI_2;
//!
//! let t = AngleTriple::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2).unwrap();
//! let SolveOutcome::Witness(w) = solve_witness(&t, 1e-9).unwrap() else { unreachable!() };
//! assert!(w.rep.product_error() < 1e-9);
//! ```

pub mod error;
pub mod exec;
pub mod polytope;
pub mod solver;
pub mod su2;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use polytope::{Facet, Lattice, Region, Tetrahedron, Vertex};
pub use solver::{
    beta_from_angles, holonomy_condition, solve_witness, BetaResult, SolveOutcome, Witness,
};
pub use su2::{conjugator_between, AngleTriple, ClassAngle, Conjugacy, Representation, Su2Element};
pub use verify::{oracle_solvable, OracleConfig, OracleVerdict};
