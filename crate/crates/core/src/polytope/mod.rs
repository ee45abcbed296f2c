//! The tetrahedron of admissible class-angle triples.
//!
//! Three classes `C(t1), C(t2), C(t3)` contain matrices with `A1 A2 A3 = 1`
//! exactly when `(t1, t2, t3)` satisfies
//!
//! ```text
//! t1 - t2 <= t3,   t2 - t1 <= t3,   t3 <= t1 + t2,   t3 <= 2 pi - (t1 + t2)
//! ```
//!
//! which cuts out the tetrahedron with vertices `S = (0,0,0)`,
//! `R = (pi,pi,0)`, `Q = (0,pi,pi)` and `P = (pi,0,pi)` inside the cube
//! `[0, pi]^3`. Points on its boundary are the images of reducible
//! representations.

use std::f64::consts::PI;
use std::fmt;
use std::sync::LazyLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{fold_seeded, Exec};
use crate::su2::AngleTriple;

pub mod export;
mod lattice;

pub use lattice::{lattice_contains, lattice_reduce, Lattice, E0};

/// Default absolute tolerance on facet residuals, in radians.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

const TWO_PI: f64 = 2.0 * PI;

/// `normal . theta <= offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: [f64; 3],
    pub offset: f64,
}

impl HalfSpace {
    /// `offset - normal . p`; nonnegative inside.
    pub fn slack(&self, p: [f64; 3]) -> f64 {
        let n = self.normal;
        self.offset - (n[0] * p[0] + n[1] * p[1] + n[2] * p[2])
    }

    pub fn normal_length(&self) -> f64 {
        self.normal.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// The four facets, in the order of the defining inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Facet {
    /// `t1 - t2 <= t3`
    LowerA,
    /// `t2 - t1 <= t3`
    LowerB,
    /// `t3 <= t1 + t2`
    Upper,
    /// `t3 <= 2 pi - (t1 + t2)`
    Wrap,
}

impl Facet {
    pub const ALL: [Facet; 4] = [Facet::LowerA, Facet::LowerB, Facet::Upper, Facet::Wrap];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn half_space(self) -> HalfSpace {
        let (normal, offset) = match self {
            Facet::LowerA => ([1.0, -1.0, -1.0], 0.0),
            Facet::LowerB => ([-1.0, 1.0, -1.0], 0.0),
            Facet::Upper => ([-1.0, -1.0, 1.0], 0.0),
            Facet::Wrap => ([1.0, 1.0, 1.0], TWO_PI),
        };
        HalfSpace { normal, offset }
    }

    pub fn inequality(self) -> &'static str {
        match self {
            Facet::LowerA => "t1 - t2 <= t3",
            Facet::LowerB => "t2 - t1 <= t3",
            Facet::Upper => "t3 <= t1 + t2",
            Facet::Wrap => "t3 <= 2pi - (t1 + t2)",
        }
    }

    /// The vertex not on this facet.
    pub fn opposite_vertex(self) -> Vertex {
        match self {
            Facet::LowerA => Vertex::Q,
            Facet::LowerB => Vertex::P,
            Facet::Upper => Vertex::R,
            Facet::Wrap => Vertex::S,
        }
    }

    /// The three vertices spanning this facet, in `S, R, Q, P` order.
    pub fn vertices(self) -> [Vertex; 3] {
        let opposite = self.opposite_vertex();
        let mut out = [Vertex::S; 3];
        for (slot, v) in out
            .iter_mut()
            .zip(Vertex::ALL.into_iter().filter(|&v| v != opposite))
        {
            *slot = v;
        }
        out
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.inequality())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Vertex {
    S,
    R,
    Q,
    P,
}

impl Vertex {
    /// Export order.
    pub const ALL: [Vertex; 4] = [Vertex::S, Vertex::R, Vertex::Q, Vertex::P];

    pub fn coords(self) -> [f64; 3] {
        match self {
            Vertex::S => [0.0, 0.0, 0.0],
            Vertex::R => [PI, PI, 0.0],
            Vertex::Q => [0.0, PI, PI],
            Vertex::P => [PI, 0.0, PI],
        }
    }

    pub fn opposite_facet(self) -> Facet {
        match self {
            Vertex::S => Facet::Wrap,
            Vertex::R => Facet::Upper,
            Vertex::Q => Facet::LowerA,
            Vertex::P => Facet::LowerB,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Where a triple sits relative to the tetrahedron.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Exterior { violated: Vec<Facet> },
    Interior,
    Facet { facet: Facet },
    Edge { facets: [Facet; 2] },
    Vertex { vertex: Vertex },
}

impl Region {
    /// Facets holding with equality (for `Exterior`, the violated ones).
    pub fn active_facets(&self) -> Vec<Facet> {
        match self {
            Region::Exterior { violated } => violated.clone(),
            Region::Interior => Vec::new(),
            Region::Facet { facet } => vec![*facet],
            Region::Edge { facets } => facets.to_vec(),
            Region::Vertex { vertex } => Facet::ALL
                .into_iter()
                .filter(|&f| f != vertex.opposite_facet())
                .collect(),
        }
    }

    /// On the boundary of the tetrahedron: a reducible class.
    pub fn is_boundary(&self) -> bool {
        matches!(
            self,
            Region::Facet { .. } | Region::Edge { .. } | Region::Vertex { .. }
        )
    }

    pub fn is_inside(&self) -> bool {
        !matches!(self, Region::Exterior { .. })
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Exterior { violated } => {
                write!(f, "exterior (violates")?;
                for facet in violated {
                    write!(f, " [{facet}]")?;
                }
                write!(f, ")")
            }
            Region::Interior => write!(f, "interior"),
            Region::Facet { facet } => write!(f, "facet [{facet}]"),
            Region::Edge { facets } => write!(f, "edge [{}] & [{}]", facets[0], facets[1]),
            Region::Vertex { vertex } => write!(f, "vertex {vertex}"),
        }
    }
}

/// The facet hyperplanes written as `coefficients . theta = rhs`, in the
/// form obtained directly from the vertex description.
const HYPERPLANES: [([f64; 3], f64); 4] = [
    ([-1.0, 1.0, 1.0], 0.0),
    ([1.0, -1.0, 1.0], 0.0),
    ([-1.0, -1.0, 1.0], 0.0),
    ([1.0, 1.0, 1.0], TWO_PI),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Tetrahedron {
    facets: [HalfSpace; 4],
    vertices: [[f64; 3]; 4],
}

static TRINION: LazyLock<Tetrahedron> = LazyLock::new(|| {
    let t = Tetrahedron {
        facets: Facet::ALL.map(Facet::half_space),
        vertices: Vertex::ALL.map(Vertex::coords),
    };
    if let Err(msg) = t.check_consistency() {
        panic!("inconsistent tetrahedron tables: {msg}");
    }
    t
});

impl Tetrahedron {
    /// The moment polytope of the trinion, validated on first use.
    pub fn trinion() -> &'static Tetrahedron {
        &TRINION
    }

    pub fn facets(&self) -> &[HalfSpace; 4] {
        &self.facets
    }

    pub fn vertices(&self) -> &[[f64; 3]; 4] {
        &self.vertices
    }

    /// Signed facet slacks in [`Facet::ALL`] order; negative means violated.
    pub fn margins(&self, t: &AngleTriple) -> [f64; 4] {
        let p = t.as_array();
        self.facets.map(|h| h.slack(p))
    }

    /// Smallest facet slack divided by the facet normal length.
    pub fn signed_distance(&self, t: &AngleTriple) -> f64 {
        let p = t.as_array();
        self.facets
            .iter()
            .map(|h| h.slack(p) / h.normal_length())
            .fold(f64::INFINITY, f64::min)
    }

    /// Euclidean distance from `t` to the boundary surface, inside or out.
    pub fn boundary_distance(&self, t: &AngleTriple) -> f64 {
        let p = t.as_array();
        Facet::ALL
            .into_iter()
            .map(|f| {
                let [a, b, c] = f.vertices().map(Vertex::coords);
                dist2(closest_on_triangle(p, a, b, c), p).sqrt()
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, t: &AngleTriple, tol: f64) -> bool {
        self.margins(t).iter().all(|&m| m >= -tol)
    }

    pub fn classify(&self, t: &AngleTriple, tol: f64) -> Region {
        let margins = self.margins(t);
        let violated: Vec<Facet> = Facet::ALL
            .into_iter()
            .filter(|f| margins[f.index()] < -tol)
            .collect();
        if !violated.is_empty() {
            return Region::Exterior { violated };
        }
        let active: Vec<Facet> = Facet::ALL
            .into_iter()
            .filter(|f| margins[f.index()] <= tol)
            .collect();
        match active.as_slice() {
            [] => Region::Interior,
            [facet] => Region::Facet { facet: *facet },
            [a, b] => Region::Edge { facets: [*a, *b] },
            _ => {
                // Three active facets pin a vertex; with an oversized
                // tolerance all four may be active, so take the nearest.
                let p = t.as_array();
                let vertex = Vertex::ALL
                    .into_iter()
                    .filter(|v| active.len() > 3 || !active.contains(&v.opposite_facet()))
                    .min_by(|a, b| dist2(a.coords(), p).total_cmp(&dist2(b.coords(), p)))
                    .unwrap_or(Vertex::S);
                Region::Vertex { vertex }
            }
        }
    }

    /// Checks the vertex/facet tables against each other, against the
    /// hyperplane form of the facets and against permutations of the angles.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        const EPS: f64 = 1e-12;
        for (vi, v) in self.vertices.iter().enumerate() {
            let slacks = self.facets.map(|h| h.slack(*v));
            if slacks.iter().any(|&s| s < -EPS) {
                return Err(format!("vertex {vi} violates a facet"));
            }
            if slacks.iter().filter(|s| s.abs() <= EPS).count() != 3 {
                return Err(format!("vertex {vi} is not on exactly three facets"));
            }
        }
        for (fi, h) in self.facets.iter().enumerate() {
            if self
                .vertices
                .iter()
                .filter(|v| h.slack(**v).abs() <= EPS)
                .count()
                != 3
            {
                return Err(format!("facet {fi} does not hold exactly three vertices"));
            }
        }
        for (coeffs, rhs) in HYPERPLANES {
            let matched = self.facets.iter().any(|h| {
                [1.0, -1.0].iter().any(|&sign| {
                    (0..3).all(|k| (h.normal[k] - sign * coeffs[k]).abs() <= EPS)
                        && (h.offset - sign * rhs).abs() <= EPS
                })
            });
            if !matched {
                return Err(format!("hyperplane {coeffs:?} = {rhs} has no facet"));
            }
        }
        for perm in PERMUTATIONS {
            for h in &self.facets {
                let permuted = permute(h.normal, perm);
                let found = self.facets.iter().any(|g| {
                    (0..3).all(|k| (g.normal[k] - permuted[k]).abs() <= EPS)
                        && (g.offset - h.offset).abs() <= EPS
                });
                if !found {
                    return Err(format!("facet {h:?} not closed under permutation {perm:?}"));
                }
            }
        }
        Ok(())
    }
}

fn dist2(a: [f64; 3], b: [f64; 3]) -> f64 {
    (0..3).map(|k| (a[k] - b[k]) * (a[k] - b[k])).sum()
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn lerp(a: [f64; 3], d: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] + s * d[0], a[1] + s * d[1], a[2] + s * d[2]]
}

/// Closest point to `p` on triangle `abc`, by Voronoi region of the triangle.
fn closest_on_triangle(p: [f64; 3], a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> [f64; 3] {
    let ab = sub(b, a);
    let ac = sub(c, a);
    let ap = sub(p, a);
    let d1 = dot3(ab, ap);
    let d2 = dot3(ac, ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return a;
    }
    let bp = sub(p, b);
    let d3 = dot3(ab, bp);
    let d4 = dot3(ac, bp);
    if d3 >= 0.0 && d4 <= d3 {
        return b;
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        return lerp(a, ab, d1 / (d1 - d3));
    }
    let cp = sub(p, c);
    let d5 = dot3(ab, cp);
    let d6 = dot3(ac, cp);
    if d6 >= 0.0 && d5 <= d6 {
        return c;
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        return lerp(a, ac, d2 / (d2 - d6));
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        return lerp(b, sub(c, b), (d4 - d3) / ((d4 - d3) + (d5 - d6)));
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    [
        a[0] + ab[0] * v + ac[0] * w,
        a[1] + ab[1] * v + ac[1] * w,
        a[2] + ab[2] * v + ac[2] * w,
    ]
}

pub(crate) const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

pub(crate) fn permute(v: [f64; 3], perm: [usize; 3]) -> [f64; 3] {
    [v[perm[0]], v[perm[1]], v[perm[2]]]
}

/// Membership in the tetrahedron with absolute tolerance `tol` on each facet.
pub fn contains(t: &AngleTriple, tol: f64) -> bool {
    Tetrahedron::trinion().contains(t, tol)
}

pub fn classify(t: &AngleTriple, tol: f64) -> Region {
    Tetrahedron::trinion().classify(t, tol)
}

pub fn margins(t: &AngleTriple) -> [f64; 4] {
    Tetrahedron::trinion().margins(t)
}

/// The coordinates `h_j = t_j / pi` in `[0, 1]^3`.
pub fn normalized(t: &AngleTriple) -> [f64; 3] {
    t.as_array().map(|x| x / PI)
}

/// `|h1 - h2| <= h3 <= h1 + h2` and `h1 + h2 + h3 <= 2` on `[0, 1]^3`.
pub fn in_normalized_image(h: [f64; 3], tol: f64) -> bool {
    let [h1, h2, h3] = h;
    h.iter().all(|x| (-tol..=1.0 + tol).contains(x))
        && (h1 - h2).abs() <= h3 + tol
        && h3 <= h1 + h2 + tol
        && h1 + h2 + h3 <= 2.0 + tol
}

/// The trace function `2 cos(pi h)` in the normalized coordinate.
pub fn character_coordinate(h: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&h) {
        Ok(2.0 * (PI * h).cos())
    } else {
        Err(Error::OutOfUnitInterval(h))
    }
}

/// The open dense set where all `h_j` lie in `(0, 1)` and the triple is
/// interior, i.e. the classes are non-central and the representation is
/// irreducible.
pub fn in_regular_locus(t: &AngleTriple, tol: f64) -> bool {
    let h = normalized(t);
    h.iter().all(|&x| x > tol / PI && x < 1.0 - tol / PI) && classify(t, tol) == Region::Interior
}

/// Fraction of the given points inside the tetrahedron (exact facets).
pub fn volume_fraction(points: &[AngleTriple]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let inside = points.iter().filter(|t| contains(t, 0.0)).count();
    inside as f64 / points.len() as f64
}

const VOLUME_DOMAIN: u64 = 0x766f_6c75_6d65;

/// Monte Carlo estimate of `vol(tetrahedron) / pi^3` from `samples` uniform
/// points of the cube. Exact value: `1/3`.
pub fn mc_volume_fraction(samples: u64, seed: u64, exec: Exec) -> f64 {
    if samples == 0 {
        return 0.0;
    }
    let tetra = Tetrahedron::trinion();
    let inside = fold_seeded(
        exec,
        samples,
        seed,
        VOLUME_DOMAIN,
        || 0u64,
        |rng, range| {
            range
                .filter(|_| {
                    let p: [f64; 3] = std::array::from_fn(|_| rng.random_range(0.0..=PI));
                    tetra.facets.iter().all(|h| h.slack(p) >= 0.0)
                })
                .count() as u64
        },
        |a, b| a + b,
    );
    inside as f64 / samples as f64
}
