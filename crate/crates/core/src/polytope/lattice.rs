//! The kernel lattice `Z^3 + Z (1/2, 1/2, 1/2)` of the torus action on the
//! normalized coordinates, and reduction to a fundamental domain of
//! `R^3 / Lambda`.

use serde::Serialize;

/// The extra generator `(1/2, 1/2, 1/2)`.
pub const E0: [f64; 3] = [0.5, 0.5, 0.5];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lattice {
    /// A basis `e1, e2, e0`.
    pub basis: [[f64; 3]; 3],
    /// The spanning set `e1, e2, e3, e0`.
    pub generators: [[f64; 3]; 4],
}

impl Default for Lattice {
    fn default() -> Self {
        Self::kernel()
    }
}

fn frac(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    // rem_euclid rounds tiny negatives up to exactly 1.0.
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

fn near_integer(x: f64, tol: f64) -> bool {
    (x - x.round()).abs() <= tol
}

impl Lattice {
    pub fn kernel() -> Self {
        let e1 = [1.0, 0.0, 0.0];
        let e2 = [0.0, 1.0, 0.0];
        let e3 = [0.0, 0.0, 1.0];
        Self {
            basis: [e1, e2, E0],
            generators: [e1, e2, e3, E0],
        }
    }

    /// `|det(basis)|`; `1/2` for an index-two extension of `Z^3`.
    pub fn covolume(&self) -> f64 {
        let [a, b, c] = self.basis;
        (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))
            .abs()
    }

    /// `v` is in `Z^3` or in `e0 + Z^3`, componentwise within `tol`.
    pub fn contains(&self, v: [f64; 3], tol: f64) -> bool {
        v.iter().all(|&x| near_integer(x, tol))
            || v.iter().zip(E0).all(|(&x, e)| near_integer(x - e, tol))
    }

    /// Representative of `v + Lambda` in `[0, 1/2) x [0, 1) x [0, 1)`.
    ///
    /// Reduce mod `Z^3` into the unit box; if the first coordinate lands in
    /// `[1/2, 1)`, shift by `-e0` and reduce again.
    pub fn reduce(&self, v: [f64; 3]) -> [f64; 3] {
        let w = v.map(frac);
        if w[0] >= 0.5 {
            [frac(w[0] - 0.5), frac(w[1] - 0.5), frac(w[2] - 0.5)]
        } else {
            w
        }
    }

    /// Integer combination `sum n_i * generators[i]`.
    pub fn point(&self, coeffs: [i64; 4]) -> [f64; 3] {
        std::array::from_fn(|k| {
            coeffs
                .iter()
                .zip(self.generators.iter())
                .map(|(&n, g)| n as f64 * g[k])
                .sum()
        })
    }
}

pub fn lattice_contains(v: [f64; 3], tol: f64) -> bool {
    Lattice::kernel().contains(v, tol)
}

pub fn lattice_reduce(v: [f64; 3]) -> [f64; 3] {
    Lattice::kernel().reduce(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// Brute force: the shift `lambda` in a box of lattice points that lands
    /// `v - lambda` in the fundamental domain.
    fn reduce_by_search(v: [f64; 3]) -> [f64; 3] {
        let lat = Lattice::kernel();
        let mut found = None;
        for a in -17..=17 {
            for b in -17..=17 {
                for c in -17..=17 {
                    for e in 0..=1 {
                        let shift = lat.point([a, b, c, e]);
                        let w: [f64; 3] = std::array::from_fn(|k| v[k] - shift[k]);
                        let inside = (0.0..0.5).contains(&w[0])
                            && (0.0..1.0).contains(&w[1])
                            && (0.0..1.0).contains(&w[2]);
                        if inside {
                            assert!(found.is_none(), "two representatives for {v:?}");
                            found = Some(w);
                        }
                    }
                }
            }
        }
        found.expect("no representative in search box")
    }

    #[test]
    fn membership_examples() {
        assert!(lattice_contains(E0, 1e-12));
        assert!(lattice_contains([1.0, 2.0, 3.0], 1e-12));
        assert!(!lattice_contains([0.5, 0.5, 0.0], 1e-12));
        assert!(lattice_contains([-1.5, 2.5, 0.5], 1e-12));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(lattice_reduce([1.0, 1.0, 1.0]), [0.0, 0.0, 0.0]);
        assert_eq!(lattice_reduce(E0), [0.0, 0.0, 0.0]);
        let r = lattice_reduce([0.7, 0.1, 0.1]);
        let expected = reduce_by_search([0.7, 0.1, 0.1]);
        for k in 0..3 {
            assert_abs_diff_eq!(r[k], [0.2, 0.6, 0.6][k], epsilon = 1e-15);
            assert_abs_diff_eq!(r[k], expected[k], epsilon = 1e-15);
        }
        assert_eq!(lattice_reduce([-1e-18, 0.25, 0.25]), [0.0, 0.25, 0.25]);
    }

    #[test]
    fn covolume_is_one_half() {
        assert_abs_diff_eq!(Lattice::kernel().covolume(), 0.5, epsilon = 1e-12);
    }

    fn dyadic() -> impl Strategy<Value = f64> {
        (-4096i64..4096).prop_map(|k| k as f64 / 256.0)
    }

    proptest! {
        #[test]
        fn reduce_agrees_with_search(v in prop::array::uniform3(dyadic())) {
            prop_assert_eq!(lattice_reduce(v), reduce_by_search(v));
        }

        #[test]
        fn reduce_is_invariant_and_idempotent(
            v in prop::array::uniform3(dyadic()),
            coeffs in prop::array::uniform4(-20i64..20),
        ) {
            let lat = Lattice::kernel();
            let shift = lat.point(coeffs);
            let moved: [f64; 3] = std::array::from_fn(|k| v[k] + shift[k]);
            let r = lat.reduce(v);
            prop_assert_eq!(lat.reduce(moved), r);
            prop_assert_eq!(lat.reduce(r), r);
            let diff: [f64; 3] = std::array::from_fn(|k| v[k] - r[k]);
            prop_assert!(lat.contains(diff, 1e-12));
        }

        #[test]
        fn reduce_float_inputs(v in prop::array::uniform3(-50.0f64..50.0), coeffs in prop::array::uniform4(-20i64..20)) {
            let lat = Lattice::kernel();
            let shift = lat.point(coeffs);
            let moved: [f64; 3] = std::array::from_fn(|k| v[k] + shift[k]);
            let (a, b) = (lat.reduce(v), lat.reduce(moved));
            // Equal up to rounding, modulo the lattice at the domain seams.
            let diff: [f64; 3] = std::array::from_fn(|k| a[k] - b[k]);
            prop_assert!(lat.contains(diff, 1e-9));
            prop_assert!((0.0..0.5).contains(&a[0]) && (0.0..1.0).contains(&a[1]) && (0.0..1.0).contains(&a[2]));
        }

        #[test]
        fn group_laws(x in prop::array::uniform4(-50i64..50), y in prop::array::uniform4(-50i64..50)) {
            let lat = Lattice::kernel();
            let (p, q) = (lat.point(x), lat.point(y));
            let sum: [f64; 3] = std::array::from_fn(|k| p[k] + q[k]);
            prop_assert!(lat.contains(p, 1e-12));
            prop_assert!(lat.contains(sum, 1e-12));
            prop_assert!(lat.contains(p.map(|c| -c), 1e-12));
        }
    }
}
