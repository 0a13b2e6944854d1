//! Lattice polytopes: hulls, faces, lattice points and Minkowski decompositions.
//!
//! Polytopes of affine dimension at most two are handled by projecting onto two
//! coordinates that are injective on the affine hull and running an integer
//! monotone chain. Higher-dimensional ones decide vertices, edges and 2-faces
//! with exact feasibility LPs.

mod decompose;
mod lp;

pub use decompose::{
    enumerate_decompositions, lambda_candidates, lambda_of, reconstruct, split_maps, Decomposition,
    InvalidAssignment, LambdaAssignment, VertexMap,
};

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::support::{Exponent, Support};

#[derive(Clone, Debug)]
struct AffineFrame {
    origin: Vec<i64>,
    basis: Vec<Vec<i64>>,
    echelon: Vec<(usize, Vec<i128>)>,
}

impl AffineFrame {
    fn of(points: &[Vec<i64>]) -> AffineFrame {
        let origin = points[0].clone();
        let mut frame = AffineFrame {
            origin,
            basis: Vec::new(),
            echelon: Vec::new(),
        };
        for p in &points[1..] {
            let dir: Vec<i64> = p.iter().zip(&frame.origin).map(|(a, b)| a - b).collect();
            let red = frame.reduce(&dir);
            if let Some(pc) = red.iter().position(|&c| c != 0) {
                frame.echelon.push((pc, red));
                frame.basis.push(dir);
            }
        }
        frame
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, v: &[i64]) -> Vec<i128> {
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (pc, row) in &self.echelon {
            let f = v[*pc];
            if f == 0 {
                continue;
            }
            let p = row[*pc];
            for (x, &r) in v.iter_mut().zip(row) {
                *x = *x * p - r * f;
            }
            let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                v.iter_mut().for_each(|x| *x /= g);
            }
        }
        v
    }

    fn contains(&self, x: &[i64]) -> bool {
        let dir: Vec<i64> = x.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        self.reduce(&dir).iter().all(|&c| c == 0)
    }

    /// Two coordinates on which the projection of a plane frame is injective.
    fn plane_coords(&self) -> (usize, usize) {
        let (d1, d2) = (&self.basis[0], &self.basis[1]);
        let n = d1.len();
        for a in 0..n {
            for b in a + 1..n {
                if d1[a] * d2[b] - d1[b] * d2[a] != 0 {
                    return (a, b);
                }
            }
        }
        unreachable!("independent directions have a nonzero 2x2 minor")
    }
}

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i128 {
    (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128 - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
}

/// Strictly convex counter-clockwise hull; returns indices into `pts`.
fn convex_polygon(pts: &[[i64; 2]]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by_key(|&i| pts[i]);
    idx.dedup_by_key(|i| pts[*i]);
    if idx.len() < 3 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && cross(
                pts[lower[lower.len() - 2]],
                pts[lower[lower.len() - 1]],
                pts[i],
            ) <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && cross(
                pts[upper[upper.len() - 2]],
                pts[upper[upper.len() - 1]],
                pts[i],
            ) <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn canonical_cycle(mut cyc: Vec<usize>) -> Vec<usize> {
    let start = (0..cyc.len()).min_by_key(|&i| cyc[i]).unwrap_or(0);
    cyc.rotate_left(start);
    if cyc.len() > 2 && cyc[1] > cyc[cyc.len() - 1] {
        cyc[1..].reverse();
    }
    cyc
}

#[derive(Clone, Debug)]
enum Shape {
    Point,
    Segment {
        dir: Vec<i64>,
        lo: i64,
        hi: i64,
    },
    Polygon {
        coords: (usize, usize),
        ring: Vec<[i64; 2]>,
    },
    Solid,
}

/// A lattice polytope with its vertices (sorted), edges and 2-faces.
#[derive(Clone)]
pub struct LatticePolytope {
    n: usize,
    vertices: Vec<Exponent>,
    edges: Vec<(usize, usize)>,
    faces2: Vec<Vec<usize>>,
    frame: AffineFrame,
    shape: Shape,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{:?}", self.vertices)
    }
}

/// `conv S` with full face data.
pub fn hull(s: &Support) -> Result<LatticePolytope> {
    LatticePolytope::from_points(s.dim(), s.points())
}

/// Extreme points of `conv points`, sorted; cheaper than a full [`hull`].
pub fn hull_vertices(n: usize, points: &[Exponent]) -> Result<Vec<Exponent>> {
    let mut pts: Vec<Exponent> = points.to_vec();
    pts.sort();
    pts.dedup();
    let raw: Vec<Vec<i64>> = pts.iter().map(Exponent::to_i64).collect();
    let frame = AffineFrame::of(&raw);
    let idx = vertex_indices(n, &raw, &frame)?;
    let mut v: Vec<Exponent> = idx.into_iter().map(|i| pts[i].clone()).collect();
    v.sort();
    Ok(v)
}

fn vertex_indices(n: usize, raw: &[Vec<i64>], frame: &AffineFrame) -> Result<Vec<usize>> {
    match frame.dim() {
        0 => Ok(vec![0]),
        1 => {
            let d = &frame.basis[0];
            let t = |x: &Vec<i64>| -> i64 {
                x.iter()
                    .zip(&frame.origin)
                    .zip(d)
                    .map(|((a, o), di)| (a - o) * di)
                    .sum()
            };
            let lo = (0..raw.len()).min_by_key(|&i| t(&raw[i])).unwrap();
            let hi = (0..raw.len()).max_by_key(|&i| t(&raw[i])).unwrap();
            Ok(vec![lo, hi])
        }
        2 => {
            let (a, b) = frame.plane_coords();
            let proj: Vec<[i64; 2]> = raw.iter().map(|x| [x[a], x[b]]).collect();
            Ok(convex_polygon(&proj))
        }
        _ => {
            let mut alive: Vec<bool> = vec![true; raw.len()];
            for i in 0..raw.len() {
                let others: Vec<Vec<i64>> = (0..raw.len())
                    .filter(|&j| j != i && alive[j])
                    .map(|j| raw[j].iter().zip(&raw[i]).map(|(u, x)| u - x).collect())
                    .collect();
                if lp::affine_combination_exists(&others, &[], n)? {
                    alive[i] = false;
                }
            }
            Ok((0..raw.len()).filter(|&i| alive[i]).collect())
        }
    }
}

impl LatticePolytope {
    pub fn from_points(n: usize, points: &[Exponent]) -> Result<LatticePolytope> {
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        for p in points {
            if p.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.dim(),
                });
            }
        }
        let vertices = hull_vertices(n, points)?;
        let raw: Vec<Vec<i64>> = vertices.iter().map(Exponent::to_i64).collect();
        let frame = AffineFrame::of(&raw);
        let mut poly = LatticePolytope {
            n,
            vertices,
            edges: Vec::new(),
            faces2: Vec::new(),
            frame,
            shape: Shape::Point,
        };
        match poly.frame.dim() {
            0 => {}
            1 => {
                let dir = poly.frame.basis[0].clone();
                let t0 = dot_diff(&raw[0], &poly.frame.origin, &dir);
                let t1 = dot_diff(&raw[1], &poly.frame.origin, &dir);
                poly.edges = vec![(0, 1)];
                poly.shape = Shape::Segment {
                    dir,
                    lo: t0.min(t1),
                    hi: t0.max(t1),
                };
            }
            2 => {
                let (a, b) = poly.frame.plane_coords();
                let proj: Vec<[i64; 2]> = raw.iter().map(|x| [x[a], x[b]]).collect();
                let ring = convex_polygon(&proj);
                debug_assert_eq!(ring.len(), raw.len());
                for i in 0..ring.len() {
                    let (u, v) = (ring[i], ring[(i + 1) % ring.len()]);
                    poly.edges.push((u.min(v), u.max(v)));
                }
                poly.edges.sort();
                poly.shape = Shape::Polygon {
                    coords: (a, b),
                    ring: ring.iter().map(|&i| proj[i]).collect(),
                };
                poly.faces2 = vec![canonical_cycle(ring)];
            }
            _ => {
                poly.shape = Shape::Solid;
                poly.solid_faces(&raw)?;
            }
        }
        Ok(poly)
    }

    fn is_face(&self, raw: &[Vec<i64>], face: &[usize]) -> Result<bool> {
        let f0 = &raw[face[0]];
        let diff = |u: &Vec<i64>| -> Vec<i64> { u.iter().zip(f0).map(|(a, b)| a - b).collect() };
        let nonneg: Vec<Vec<i64>> = (0..raw.len())
            .filter(|i| !face.contains(i))
            .map(|i| diff(&raw[i]))
            .collect();
        let free: Vec<Vec<i64>> = face[1..].iter().map(|&i| diff(&raw[i])).collect();
        Ok(!lp::affine_combination_exists(&nonneg, &free, self.n)?)
    }

    fn solid_faces(&mut self, raw: &[Vec<i64>]) -> Result<()> {
        let nv = raw.len();
        for i in 0..nv {
            for j in i + 1..nv {
                if self.is_face(raw, &[i, j])? {
                    self.edges.push((i, j));
                }
            }
        }
        let mut nbrs = vec![Vec::new(); nv];
        for &(i, j) in &self.edges {
            nbrs[i].push(j);
            nbrs[j].push(i);
        }
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for v in 0..nv {
            for (x, &w1) in nbrs[v].iter().enumerate() {
                for &w2 in &nbrs[v][x + 1..] {
                    let plane =
                        AffineFrame::of(&[raw[v].clone(), raw[w1].clone(), raw[w2].clone()]);
                    let members: Vec<usize> =
                        (0..nv).filter(|&u| plane.contains(&raw[u])).collect();
                    if seen.contains(&members) {
                        continue;
                    }
                    seen.push(members.clone());
                    if members.len() == nv || !self.is_face(raw, &members)? {
                        continue;
                    }
                    let (a, b) = plane.plane_coords();
                    let proj: Vec<[i64; 2]> =
                        members.iter().map(|&u| [raw[u][a], raw[u][b]]).collect();
                    let ring: Vec<usize> = convex_polygon(&proj)
                        .into_iter()
                        .map(|k| members[k])
                        .collect();
                    self.faces2.push(canonical_cycle(ring));
                }
            }
        }
        self.faces2.sort();
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    /// Edges as index pairs `(i, j)`, `i < j`, into [`LatticePolytope::vertices`].
    pub fn edge_indices(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Exponent, &Exponent)> {
        self.edges
            .iter()
            .map(|&(i, j)| (&self.vertices[i], &self.vertices[j]))
    }

    /// 2-faces as closed vertex cycles of indices into the vertex list.
    pub fn faces2(&self) -> &[Vec<usize>] {
        &self.faces2
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn vertex_support(&self) -> Support {
        Support::new(self.n, self.vertices.clone()).expect("a polytope has a vertex")
    }

    pub fn inf_point(&self) -> Exponent {
        self.vertex_support().inf_point()
    }

    pub fn contains(&self, x: &Exponent) -> Result<bool> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.dim(),
            });
        }
        self.contains_raw(&x.to_i64())
    }

    fn contains_raw(&self, x: &[i64]) -> Result<bool> {
        if !self.frame.contains(x) {
            return Ok(false);
        }
        Ok(match &self.shape {
            Shape::Point => true,
            Shape::Segment { dir, lo, hi } => {
                let t = dot_diff(x, &self.frame.origin, dir);
                *lo <= t && t <= *hi
            }
            Shape::Polygon {
                coords: (a, b),
                ring,
            } => {
                let p = [x[*a], x[*b]];
                (0..ring.len()).all(|i| cross(ring[i], ring[(i + 1) % ring.len()], p) >= 0)
            }
            Shape::Solid => {
                let shifted: Vec<Vec<i64>> = self
                    .vertices
                    .iter()
                    .map(|v| {
                        v.coords()
                            .iter()
                            .zip(x)
                            .map(|(&a, &b)| a as i64 - b)
                            .collect()
                    })
                    .collect();
                lp::affine_combination_exists(&shifted, &[], self.n)?
            }
        })
    }

    /// `C ∩ Z^n`, sorted lexicographically.
    pub fn lattice_points(&self) -> Result<Vec<Exponent>> {
        let lo = self.inf_point().to_i64();
        let hi: Vec<i64> = (0..self.n)
            .map(|t| self.vertices.iter().map(|v| v[t] as i64).max().unwrap())
            .collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if self.contains_raw(&cur)? {
                out.push(Exponent::from_i64(&cur)?);
            }
            // odometer, last coordinate fastest so the output is lex sorted
            let mut t = self.n;
            loop {
                if t == 0 {
                    return Ok(out);
                }
                t -= 1;
                if cur[t] < hi[t] {
                    cur[t] += 1;
                    break;
                }
                cur[t] = lo[t];
            }
        }
    }

    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        let a = self.vertex_support();
        let b = other.vertex_support();
        LatticePolytope::from_points(self.n, a.minkowski_sum(&b)?.points())
    }

    pub fn translate_down(&self, by: &Exponent) -> Result<LatticePolytope> {
        let pts = self
            .vertices
            .iter()
            .map(|v| {
                v.checked_sub(by)
                    .ok_or_else(|| Error::Precondition("translation leaves N^n".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        LatticePolytope::from_points(self.n, &pts)
    }

    /// `C / e` if every vertex is divisible by `e`.
    pub fn exact_div(&self, e: u32) -> Option<LatticePolytope> {
        let pts = self
            .vertices
            .iter()
            .map(|v| v.exact_div(e))
            .collect::<Option<Vec<_>>>()?;
        LatticePolytope::from_points(self.n, &pts).ok()
    }

    pub fn scale(&self, m: u32) -> Result<LatticePolytope> {
        let pts = self
            .vertices
            .iter()
            .map(|v| v.checked_scale(m))
            .collect::<Result<Vec<_>>>()?;
        LatticePolytope::from_points(self.n, &pts)
    }
}

fn dot_diff(x: &[i64], o: &[i64], d: &[i64]) -> i64 {
    x.iter().zip(o).zip(d).map(|((a, b), c)| (a - b) * c).sum()
}

/// `X_a`: the points of `s` minimizing `<., a>`.
pub fn min_face(s: &[Exponent], a: &[i64]) -> Vec<Exponent> {
    let val = |x: &Exponent| -> i64 { x.coords().iter().zip(a).map(|(&c, &w)| c as i64 * w).sum() };
    let Some(m) = s.iter().map(val).min() else {
        return Vec::new();
    };
    let mut out: Vec<Exponent> = s.iter().filter(|x| val(x) == m).cloned().collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, pts: &[&[u32]]) -> Support {
        Support::from_coords(n, pts.iter().map(|p| p.to_vec())).unwrap()
    }

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec()).unwrap()
    }

    #[test]
    fn unit_square() {
        let c = hull(&s(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(c.vertices().len(), 4);
        assert_eq!(c.edge_indices().len(), 4);
        assert_eq!(c.faces2().len(), 1);
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn segment_drops_interior() {
        let c = hull(&s(1, &[&[0], &[1], &[2]])).unwrap();
        assert_eq!(c.vertices(), &[e(&[0]), e(&[2])]);
        assert_eq!(c.edge_indices(), &[(0, 1)]);
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn triangle_with_edge_point() {
        let c = hull(&s(2, &[&[0, 0], &[2, 0], &[0, 2], &[1, 1]])).unwrap();
        assert_eq!(c.vertices(), &[e(&[0, 0]), e(&[0, 2]), e(&[2, 0])]);
        assert_eq!(c.edge_indices().len(), 3);
        assert!(c.contains(&e(&[1, 1])).unwrap());
        assert!(!c.contains(&e(&[2, 1])).unwrap());
        assert_eq!(c.lattice_points().unwrap().len(), 6);
    }

    #[test]
    fn cube_faces() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        pts.push(vec![1, 1, 0]);
        let c = hull(&Support::from_coords(3, pts).unwrap()).unwrap();
        assert_eq!(c.dim(), 3);
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.edge_indices().len(), 12);
        assert_eq!(c.faces2().len(), 6);
        for f in c.faces2() {
            assert_eq!(f.len(), 4);
        }
        assert_eq!(c.lattice_points().unwrap().len(), 8);
    }

    #[test]
    fn simplex_in_3d_and_plane_in_3d() {
        let tet = hull(&s(
            3,
            &[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 0, 0]],
        ))
        .unwrap();
        assert_eq!(tet.vertices().len(), 4);
        assert_eq!(tet.edge_indices().len(), 6);
        assert_eq!(tet.faces2().len(), 4);
        assert_eq!(tet.lattice_points().unwrap().len(), 10);
        // a triangle living in a plane of N^3
        let tri = hull(&s(3, &[&[0, 0, 1], &[2, 0, 1], &[0, 2, 1], &[1, 1, 1]])).unwrap();
        assert_eq!(tri.dim(), 2);
        assert_eq!(tri.vertices().len(), 3);
        assert_eq!(tri.lattice_points().unwrap().len(), 6);
        // a tilted plane
        let tilt = hull(&s(3, &[&[0, 0, 0], &[2, 0, 2], &[0, 2, 0]])).unwrap();
        assert_eq!(tilt.lattice_points().unwrap().len(), 6);
        assert!(!tilt.contains(&e(&[1, 0, 0])).unwrap());
    }

    #[test]
    fn point_polytope() {
        let c = hull(&s(2, &[&[3, 1]])).unwrap();
        assert!(c.is_point());
        assert_eq!(c.dim(), 0);
        assert_eq!(c.lattice_points().unwrap(), vec![e(&[3, 1])]);
    }

    #[test]
    fn min_face_examples() {
        let sq = [e(&[0, 0]), e(&[1, 0]), e(&[0, 1]), e(&[1, 1])];
        assert_eq!(min_face(&sq, &[1, 1]), vec![e(&[0, 0])]);
        assert_eq!(min_face(&sq, &[0, 0]).len(), 4);
        let tri = [e(&[0, 0]), e(&[2, 0]), e(&[0, 2])];
        assert_eq!(min_face(&tri, &[0, 1]), vec![e(&[0, 0]), e(&[2, 0])]);
    }

    #[test]
    fn lattice_points_sorted() {
        let c = hull(&s(2, &[&[0, 0], &[3, 0], &[0, 3]])).unwrap();
        let pts = c.lattice_points().unwrap();
        assert_eq!(pts.len(), 10);
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(pts, sorted);
    }
}
