//! SU(2) stored as unit quaternions.
//!
//! The quaternion `(a, b, c, d)` stands for the matrix
//!
//! ```text
//! [  a + b i    c + d i ]
//! [ -c + d i    a - b i ]
//! ```
//!
//! so the Hamilton product is the matrix product, the quaternion conjugate is
//! the matrix inverse and the trace is `2a`. Conjugacy classes are labelled by
//! the angle `theta` in `[0, pi]` with `trace = 2 cos(theta)`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{check_tolerance, Error, Result};

/// Default bound on the Frobenius distance of `a1 a2 a3` from the identity.
pub const PRODUCT_TOLERANCE: f64 = 1e-9;
/// Default bound on the entrywise error accepted by [`conjugator_between`].
pub const CONJUGACY_TOLERANCE: f64 = 1e-8;

/// Norm-squared deviation below which a quaternion is left untouched.
const RENORM_SLACK: f64 = 4.0 * f64::EPSILON;
/// Inputs whose norm is further than this from 1 are rejected.
const UNIT_INPUT_TOLERANCE: f64 = 1e-6;

pub type Matrix2 = [[Complex64; 2]; 2];

/// An element of SU(2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 4]", try_from = "[f64; 4]")]
pub struct Su2Element {
    q: [f64; 4],
}

fn norm_sq(q: &[f64; 4]) -> f64 {
    q.iter().map(|x| x * x).sum()
}

fn cross(u: [f64; 3], v: [f64; 3]) -> [f64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn dot(u: [f64; 3], v: [f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

fn norm3(v: [f64; 3]) -> f64 {
    dot(v, v).sqrt()
}

impl Su2Element {
    pub const IDENTITY: Self = Self {
        q: [1.0, 0.0, 0.0, 0.0],
    };
    pub const MINUS_IDENTITY: Self = Self {
        q: [-1.0, 0.0, 0.0, 0.0],
    };
    /// `diag(i, -i)`.
    pub const I: Self = Self {
        q: [0.0, 1.0, 0.0, 0.0],
    };
    /// `[[0, 1], [-1, 0]]`.
    pub const J: Self = Self {
        q: [0.0, 0.0, 1.0, 0.0],
    };
    /// `[[0, i], [i, 0]]`.
    pub const K: Self = Self {
        q: [0.0, 0.0, 0.0, 1.0],
    };

    /// Builds an element from quaternion coordinates.
    ///
    /// Coordinates that are already unit up to a few ulps are kept bit for bit,
    /// so serialized elements read back unchanged; otherwise they are rescaled.
    /// Anything further than `1e-6` from the unit sphere is rejected.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let q = [a, b, c, d];
        if q.iter().any(|x| !x.is_finite())
            || (norm_sq(&q).sqrt() - 1.0).abs() > UNIT_INPUT_TOLERANCE
        {
            return Err(Error::NotUnit(q));
        }
        Ok(Self::renormalized(q))
    }

    fn renormalized(q: [f64; 4]) -> Self {
        let n2 = norm_sq(&q);
        if (n2 - 1.0).abs() <= RENORM_SLACK {
            Self { q }
        } else {
            let n = n2.sqrt();
            Self {
                q: q.map(|x| x / n),
            }
        }
    }

    /// The diagonal representative `diag(e^{i theta}, e^{-i theta})` of a class.
    pub fn from_class(angle: ClassAngle) -> Self {
        let (s, c) = angle.radians().sin_cos();
        Self::renormalized([c, s, 0.0, 0.0])
    }

    /// The element of class `angle` whose axis is tilted by `beta` from the
    /// `i` axis towards `j`:
    ///
    /// ```text
    /// [ cos t + i sin t cos b     sin t sin b          ]
    /// [ -sin t sin b              cos t - i sin t cos b ]
    /// ```
    pub fn tilted(angle: ClassAngle, beta: f64) -> Self {
        let (s, c) = angle.radians().sin_cos();
        let (sb, cb) = beta.sin_cos();
        Self::renormalized([c, s * cb, s * sb, 0.0])
    }

    /// Rotation by `phi` about the `i` axis, i.e. `diag(e^{i phi/2}, e^{-i phi/2})`.
    pub fn about_i_axis(phi: f64) -> Self {
        let (s, c) = (0.5 * phi).sin_cos();
        Self::renormalized([c, s, 0.0, 0.0])
    }

    /// A Haar-distributed element: a uniform point of the unit 3-sphere.
    pub fn haar_sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
            let n2 = norm_sq(&q);
            if n2 > 1e-12 {
                let n = n2.sqrt();
                return Self {
                    q: q.map(|x| x / n),
                };
            }
        }
    }

    pub fn components(&self) -> [f64; 4] {
        self.q
    }

    pub fn scalar(&self) -> f64 {
        self.q[0]
    }

    pub fn vector(&self) -> [f64; 3] {
        [self.q[1], self.q[2], self.q[3]]
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.q[0]
    }

    pub fn matrix(&self) -> Matrix2 {
        let [a, b, c, d] = self.q;
        [
            [Complex64::new(a, b), Complex64::new(c, d)],
            [Complex64::new(-c, d), Complex64::new(a, -b)],
        ]
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let [a0, a1, a2, a3] = self.q;
        let [b0, b1, b2, b3] = other.q;
        Self::renormalized([
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ])
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.q;
        Self { q: [a, -b, -c, -d] }
    }

    /// The conjugacy class angle `arccos(trace / 2)`.
    ///
    /// Evaluated as `atan2(|v|, a)`, which agrees with the clamped arccos on
    /// the unit sphere but keeps full accuracy near the central classes
    /// `0` and `pi`, where arccos loses half the digits.
    pub fn class_angle(&self) -> ClassAngle {
        ClassAngle(norm3(self.vector()).atan2(self.q[0]))
    }

    /// `u * self * u^-1`. The scalar part, hence the class, is kept exactly.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        let v = rotate(u, self.vector());
        Self {
            q: [self.q[0], v[0], v[1], v[2]],
        }
    }

    pub fn is_central(&self, tol: f64) -> bool {
        norm3(self.vector()) <= tol
    }

    /// Frobenius norm of the difference of the matrix views.
    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        let d2: f64 = self
            .q
            .iter()
            .zip(other.q.iter())
            .map(|(x, y)| (x - y) * (x - y))
            .sum();
        (2.0 * d2).sqrt()
    }

    /// Largest modulus of an entry of the difference of the matrix views.
    pub fn max_entry_error(&self, other: &Self) -> f64 {
        let d: [f64; 4] = std::array::from_fn(|k| self.q[k] - other.q[k]);
        d[0].hypot(d[1]).max(d[2].hypot(d[3]))
    }

    /// Group commutator `x y x^-1 y^-1`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.multiply(other)
            .multiply(&self.inverse())
            .multiply(&other.inverse())
    }
}

impl Mul for Su2Element {
    type Output = Su2Element;

    fn mul(self, rhs: Su2Element) -> Su2Element {
        self.multiply(&rhs)
    }
}

impl From<Su2Element> for [f64; 4] {
    fn from(x: Su2Element) -> Self {
        x.q
    }
}

impl TryFrom<[f64; 4]> for Su2Element {
    type Error = Error;

    fn try_from(q: [f64; 4]) -> Result<Self> {
        Su2Element::new(q[0], q[1], q[2], q[3])
    }
}

impl fmt::Display for Su2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.q;
        write!(f, "[{a:?}, {b:?}, {c:?}, {d:?}]")
    }
}

/// Rotates `v` by the SO(3) image of the unit quaternion `u`.
fn rotate(u: &Su2Element, v: [f64; 3]) -> [f64; 3] {
    let w = u.q[0];
    let r = u.vector();
    let t = cross(r, v).map(|x| 2.0 * x);
    let rt = cross(r, t);
    [
        v[0] + w * t[0] + rt[0],
        v[1] + w * t[1] + rt[1],
        v[2] + w * t[2] + rt[2],
    ]
}

/// A unit quaternion whose conjugation action carries the direction of `v`
/// onto `+i`. `v` must be nonzero.
fn align_to_i_axis(v: [f64; 3]) -> Su2Element {
    let n = norm3(v);
    let dir = v.map(|x| x / n);
    // Rotate onto whichever of +i, -i is closer so that 1 + cos stays >= 1.
    let target = if dir[0] >= 0.0 { 1.0 } else { -1.0 };
    let to = [target, 0.0, 0.0];
    let c = cross(dir, to);
    let u = Su2Element::renormalized([1.0 + dot(dir, to), c[0], c[1], c[2]]);
    if target > 0.0 {
        u
    } else {
        // Conjugation by j sends -i to +i exactly.
        Su2Element::J.multiply(&u)
    }
}

/// A conjugacy class label `theta` in `[0, pi]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(into = "f64", try_from = "f64")]
pub struct ClassAngle(f64);

impl ClassAngle {
    pub const ZERO: Self = Self(0.0);
    pub const PI: Self = Self(PI);

    pub fn new(theta: f64) -> Result<Self> {
        if (0.0..=PI).contains(&theta) {
            Ok(Self(theta))
        } else {
            Err(Error::AngleOutOfRange { value: theta })
        }
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

impl From<ClassAngle> for f64 {
    fn from(c: ClassAngle) -> f64 {
        c.0
    }
}

impl TryFrom<f64> for ClassAngle {
    type Error = Error;

    fn try_from(theta: f64) -> Result<Self> {
        ClassAngle::new(theta)
    }
}

/// A triple of class angles `(t1, t2, t3)` in `[0, pi]^3`, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 3]", try_from = "[f64; 3]")]
pub struct AngleTriple([f64; 3]);

impl AngleTriple {
    pub fn new(t1: f64, t2: f64, t3: f64) -> Result<Self> {
        for value in [t1, t2, t3] {
            ClassAngle::new(value)?;
        }
        Ok(Self([t1, t2, t3]))
    }

    pub fn from_classes(classes: [ClassAngle; 3]) -> Self {
        Self(classes.map(ClassAngle::radians))
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    pub fn class(&self, i: usize) -> ClassAngle {
        ClassAngle(self.0[i])
    }

    pub fn classes(&self) -> [ClassAngle; 3] {
        self.0.map(ClassAngle)
    }

    /// Largest componentwise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..3)
            .map(|i| (self.0[i] - other.0[i]).abs())
            .fold(0.0, f64::max)
    }
}

impl From<AngleTriple> for [f64; 3] {
    fn from(t: AngleTriple) -> Self {
        t.0
    }
}

impl TryFrom<[f64; 3]> for AngleTriple {
    type Error = Error;

    fn try_from(t: [f64; 3]) -> Result<Self> {
        AngleTriple::new(t[0], t[1], t[2])
    }
}

/// A representation of the trinion group `<c1, c2, c3 | c1 c2 c3 = 1>`,
/// given by the images `(a1, a2, a3)` of the three boundary loops.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "RepresentationRepr", try_from = "RepresentationRepr")]
pub struct Representation {
    a: [Su2Element; 3],
}

#[derive(Serialize, Deserialize)]
struct RepresentationRepr {
    a1: Su2Element,
    a2: Su2Element,
    a3: Su2Element,
}

impl Representation {
    /// Checks the relation `a1 a2 a3 = 1` against [`PRODUCT_TOLERANCE`].
    pub fn new(a1: Su2Element, a2: Su2Element, a3: Su2Element) -> Result<Self> {
        Self::with_tolerance(a1, a2, a3, PRODUCT_TOLERANCE)
    }

    pub fn with_tolerance(
        a1: Su2Element,
        a2: Su2Element,
        a3: Su2Element,
        tol: f64,
    ) -> Result<Self> {
        check_tolerance(tol)?;
        let rep = Self { a: [a1, a2, a3] };
        let distance = rep.product_error();
        if distance <= tol {
            Ok(rep)
        } else {
            Err(Error::ProductNotIdentity {
                distance,
                tolerance: tol,
            })
        }
    }

    /// Closes up a pair with `a3 = (a1 a2)^-1`.
    pub fn from_pair(a1: Su2Element, a2: Su2Element) -> Self {
        Self {
            a: [a1, a2, a1.multiply(&a2).inverse()],
        }
    }

    pub fn elements(&self) -> [Su2Element; 3] {
        self.a
    }

    pub fn a1(&self) -> Su2Element {
        self.a[0]
    }

    pub fn a2(&self) -> Su2Element {
        self.a[1]
    }

    pub fn a3(&self) -> Su2Element {
        self.a[2]
    }

    pub fn product(&self) -> Su2Element {
        self.a[0].multiply(&self.a[1]).multiply(&self.a[2])
    }

    /// Frobenius distance of `a1 a2 a3` from the identity.
    pub fn product_error(&self) -> f64 {
        self.product().frobenius_distance(&Su2Element::IDENTITY)
    }

    /// The triple of class angles of `a1, a2, a3`.
    pub fn moment_map(&self) -> AngleTriple {
        AngleTriple::from_classes(self.a.map(|x| x.class_angle()))
    }

    /// Componentwise `u a_i u^-1`.
    pub fn conjugate_by(&self, u: &Su2Element) -> Self {
        Self {
            a: self.a.map(|x| x.conjugate_by(u)),
        }
    }

    /// Largest Frobenius distance between pairwise commutators and the identity.
    pub fn max_commutator_distance(&self) -> f64 {
        let [a1, a2, a3] = self.a;
        [(a1, a2), (a1, a3), (a2, a3)]
            .iter()
            .map(|(x, y)| x.commutator(y).frobenius_distance(&Su2Element::IDENTITY))
            .fold(0.0, f64::max)
    }

    /// Largest entrywise matrix error against another triple.
    pub fn max_entry_error(&self, other: &Self) -> f64 {
        (0..3)
            .map(|i| self.a[i].max_entry_error(&other.a[i]))
            .fold(0.0, f64::max)
    }
}

impl From<Representation> for RepresentationRepr {
    fn from(r: Representation) -> Self {
        Self {
            a1: r.a[0],
            a2: r.a[1],
            a3: r.a[2],
        }
    }
}

impl TryFrom<RepresentationRepr> for Representation {
    type Error = Error;

    fn try_from(r: RepresentationRepr) -> Result<Self> {
        Representation::new(r.a1, r.a2, r.a3)
    }
}

/// Outcome of [`conjugator_between`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Conjugacy {
    /// `u` with `u r_i u^-1 = s_i` for all three components.
    Conjugate(Su2Element),
    NotConjugate,
}

impl Conjugacy {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, Conjugacy::Conjugate(_))
    }
}

/// Finds `u` with `u r_i u^-1 = s_i` (entrywise within `tol`) for `i = 1, 2, 3`.
///
/// Both triples are brought to a normal form: the element with the longest
/// axis is rotated onto the `i` axis, which leaves the diagonal torus as the
/// remaining freedom; that circle is fixed by matching the phase of the
/// `(j, k)` part of the element with the largest off-axis component. The
/// candidate is accepted only after checking all three components.
pub fn conjugator_between(r: &Representation, s: &Representation, tol: f64) -> Result<Conjugacy> {
    check_tolerance(tol)?;
    let (re, se) = (r.elements(), s.elements());

    // Conjugation fixes scalar parts, so a scalar mismatch is conclusive.
    if (0..3).any(|i| (re[i].scalar() - se[i].scalar()).abs() > tol) {
        return Ok(Conjugacy::NotConjugate);
    }

    let axis_len = |x: &Su2Element| norm3(x.vector());
    let pivot = (0..3)
        .max_by(|&i, &j| axis_len(&re[i]).total_cmp(&axis_len(&re[j])))
        .unwrap_or(0);

    let candidate = if axis_len(&re[pivot]) <= tol || axis_len(&se[pivot]) == 0.0 {
        Su2Element::IDENTITY
    } else {
        let ur = align_to_i_axis(re[pivot].vector());
        let us = align_to_i_axis(se[pivot].vector());
        let rn = r.conjugate_by(&ur).elements();
        let sn = s.conjugate_by(&us).elements();

        let off_axis = |x: &Su2Element| x.q[2].hypot(x.q[3]);
        let second = (0..3)
            .filter(|&i| i != pivot)
            .max_by(|&i, &j| off_axis(&rn[i]).total_cmp(&off_axis(&rn[j])))
            .unwrap_or(0);

        let torus = if off_axis(&rn[second]) > 0.0 && off_axis(&sn[second]) > 0.0 {
            let phase_r = rn[second].q[3].atan2(rn[second].q[2]);
            let phase_s = sn[second].q[3].atan2(sn[second].q[2]);
            Su2Element::about_i_axis(phase_s - phase_r)
        } else {
            Su2Element::IDENTITY
        };
        us.inverse().multiply(&torus).multiply(&ur)
    };

    let fits = (0..3).all(|i| re[i].conjugate_by(&candidate).max_entry_error(&se[i]) <= tol);
    Ok(if fits {
        Conjugacy::Conjugate(candidate)
    } else {
        Conjugacy::NotConjugate
    })
}
