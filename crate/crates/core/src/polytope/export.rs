//! JSON and OFF renderings of the tetrahedron.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Facet, HalfSpace, Tetrahedron, Vertex};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TetrahedronExport {
    /// `S, R, Q, P`.
    pub vertices: Vec<[f64; 3]>,
    /// In the order of the defining inequalities.
    pub facets: Vec<HalfSpace>,
}

impl TetrahedronExport {
    pub fn from_tetrahedron(t: &Tetrahedron) -> Self {
        Self {
            vertices: t.vertices().to_vec(),
            facets: t.facets().to_vec(),
        }
    }
}

pub fn to_json(t: &Tetrahedron) -> String {
    let mut s = serde_json::to_string_pretty(&TetrahedronExport::from_tetrahedron(t))
        .expect("plain floats always serialize");
    s.push('\n');
    s
}

/// Vertex indices of each facet triangle, ordered counter-clockwise when
/// seen from outside.
pub fn faces(t: &Tetrahedron) -> [[usize; 3]; 4] {
    let index = |v: Vertex| Vertex::ALL.iter().position(|&w| w == v).unwrap_or(0);
    let pts = t.vertices();
    Facet::ALL.map(|f| {
        let [a, b, c] = f.vertices().map(index);
        let (p, q, r) = (pts[a], pts[b], pts[c]);
        let u: [f64; 3] = std::array::from_fn(|k| q[k] - p[k]);
        let w: [f64; 3] = std::array::from_fn(|k| r[k] - p[k]);
        let n = [
            u[1] * w[2] - u[2] * w[1],
            u[2] * w[0] - u[0] * w[2],
            u[0] * w[1] - u[1] * w[0],
        ];
        let outward = f.half_space().normal;
        if n[0] * outward[0] + n[1] * outward[1] + n[2] * outward[2] > 0.0 {
            [a, b, c]
        } else {
            [a, c, b]
        }
    })
}

pub fn to_off(t: &Tetrahedron) -> String {
    let mut out = String::from("OFF\n4 4 6\n");
    for v in t.vertices() {
        let _ = writeln!(out, "{:?} {:?} {:?}", v[0], v[1], v[2]);
    }
    for [a, b, c] in faces(t) {
        let _ = writeln!(out, "3 {a} {b} {c}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn off_lists_vertices_in_order() {
        let off = to_off(Tetrahedron::trinion());
        let lines: Vec<&str> = off.lines().collect();
        assert_eq!(lines[0], "OFF");
        assert_eq!(lines[1], "4 4 6");
        assert_eq!(lines[2], "0.0 0.0 0.0");
        assert_eq!(lines[3], format!("{PI:?} {PI:?} 0.0"));
        assert_eq!(lines[4], format!("0.0 {PI:?} {PI:?}"));
        assert_eq!(lines[5], format!("{PI:?} 0.0 {PI:?}"));
        assert_eq!(lines.len(), 10);
        assert!(lines[6..].iter().all(|l| l.starts_with("3 ")));
    }

    #[test]
    fn faces_point_outward() {
        let t = Tetrahedron::trinion();
        let centroid = [PI / 2.0; 3];
        for (f, [a, b, c]) in Facet::ALL.into_iter().zip(faces(t)) {
            let pts = t.vertices();
            // Each face holds exactly the facet's vertices.
            for i in [a, b, c] {
                assert!(f.half_space().slack(pts[i]).abs() < 1e-12);
            }
            let u: [f64; 3] = std::array::from_fn(|k| pts[b][k] - pts[a][k]);
            let w: [f64; 3] = std::array::from_fn(|k| pts[c][k] - pts[a][k]);
            let n = [
                u[1] * w[2] - u[2] * w[1],
                u[2] * w[0] - u[0] * w[2],
                u[0] * w[1] - u[1] * w[0],
            ];
            let to_center: [f64; 3] = std::array::from_fn(|k| centroid[k] - pts[a][k]);
            assert!(n.iter().zip(to_center).map(|(x, y)| x * y).sum::<f64>() < 0.0);
        }
    }

    #[test]
    fn json_round_trips() {
        let s = to_json(Tetrahedron::trinion());
        let back: TetrahedronExport = serde_json::from_str(&s).unwrap();
        assert_eq!(
            back,
            TetrahedronExport::from_tetrahedron(Tetrahedron::trinion())
        );
        assert_eq!(back.vertices[1], [PI, PI, 0.0]);
        assert_eq!(back.facets[3].offset, 2.0 * PI);
    }
}
