//! Integral Minkowski decompositions `C = C' + C''` through edge coefficients.
//!
//! For a decomposition, each vertex `v` of `C` splits uniquely as
//! `v = phi(v) + psi(v)` with `phi(v)` a vertex of `C'`. Along an edge `[v, w]`,
//! `phi(w) - phi(v) = lambda (w - v)` with `lambda` in `[0, 1]`, so the edge
//! coefficients determine `phi` up to translation; we pin `inf C' = 0`.

use std::collections::{BTreeMap, VecDeque};

use num_integer::Integer;
use num_rational::Ratio;

use super::LatticePolytope;
use crate::error::{Error, Result};
use crate::support::Exponent;

pub type VertexMap = BTreeMap<Exponent, Exponent>;

/// Edge coefficients keyed by `(v, w)` with `v < w`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct LambdaAssignment(BTreeMap<(Exponent, Exponent), Ratio<i64>>);

impl LambdaAssignment {
    pub fn new() -> Self {
        LambdaAssignment(BTreeMap::new())
    }

    pub fn insert(&mut self, v: &Exponent, w: &Exponent, lambda: Ratio<i64>) {
        let key = if v <= w {
            (v.clone(), w.clone())
        } else {
            (w.clone(), v.clone())
        };
        self.0.insert(key, lambda);
    }

    pub fn get(&self, v: &Exponent, w: &Exponent) -> Option<Ratio<i64>> {
        let key = if v <= w {
            (v.clone(), w.clone())
        } else {
            (w.clone(), v.clone())
        };
        self.0.get(&key).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponent, &Exponent, Ratio<i64>)> {
        self.0.iter().map(|((v, w), &l)| (v, w, l))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Values in the edge order of `c`.
    pub fn vector(&self, c: &LatticePolytope) -> Vec<Ratio<i64>> {
        c.edges()
            .map(|(v, w)| self.get(v, w).unwrap_or_default())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub left: LatticePolytope,
    pub right: LatticePolytope,
    pub lambda: LambdaAssignment,
    pub phi: VertexMap,
    pub psi: VertexMap,
}

impl Decomposition {
    pub fn is_trivial(&self) -> bool {
        self.left.is_point() || self.right.is_point()
    }
}

/// Why [`reconstruct`] rejected an assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvalidAssignment {
    MissingEdge(Exponent, Exponent),
    OutOfRange(Exponent, Exponent),
    Inconsistent(Exponent, Exponent),
    NonIntegral(Exponent),
    NotASummand,
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &c| g.gcd(&c))
}

/// `alpha / d` for `alpha = 0..=d`, `d` the gcd of `w - v`.
pub fn lambda_candidates(v: &Exponent, w: &Exponent) -> Result<Vec<Ratio<i64>>> {
    if v.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            found: w.dim(),
        });
    }
    if v == w {
        return Err(Error::DegenerateSegment);
    }
    let d = content(&diff(&w.to_i64(), &v.to_i64()));
    Ok((0..=d).map(|a| Ratio::new(a, d)).collect())
}

/// The unique splitting of every vertex of `c` along `cp + cpp`.
pub fn split_maps(
    c: &LatticePolytope,
    cp: &LatticePolytope,
    cpp: &LatticePolytope,
) -> Result<(VertexMap, VertexMap)> {
    if cp.minkowski_sum(cpp)? != *c {
        return Err(Error::NotASummand);
    }
    let mut phi = VertexMap::new();
    let mut psi = VertexMap::new();
    for v in c.vertices() {
        let mut found = None;
        for x in cp.vertices() {
            if let Some(y) = v.checked_sub(x) {
                if cpp.vertices().binary_search(&y).is_ok() {
                    if found.is_some() {
                        return Err(Error::InvalidSplitting(format!(
                            "vertex {v} splits in more than one way"
                        )));
                    }
                    found = Some((x.clone(), y));
                }
            }
        }
        let (x, y) = found.ok_or(Error::NotASummand)?;
        phi.insert(v.clone(), x);
        psi.insert(v.clone(), y);
    }
    Ok((phi, psi))
}

/// `lambda` on each edge from `phi(w) - phi(v) = lambda (w - v)`.
pub fn lambda_of(c: &LatticePolytope, phi: &VertexMap) -> Result<LambdaAssignment> {
    let mut out = LambdaAssignment::new();
    for (v, w) in c.edges() {
        let missing =
            || Error::InvalidSplitting(format!("phi is undefined at an endpoint of [{v}, {w}]"));
        let pv = phi.get(v).ok_or_else(missing)?.to_i64();
        let pw = phi.get(w).ok_or_else(missing)?.to_i64();
        let dphi = diff(&pw, &pv);
        let edge = diff(&w.to_i64(), &v.to_i64());
        let t = edge
            .iter()
            .position(|&x| x != 0)
            .expect("edge endpoints differ");
        let lambda = Ratio::new(dphi[t], edge[t]);
        let parallel = (0..edge.len())
            .all(|s| dphi[s] as i128 * edge[t] as i128 == dphi[t] as i128 * edge[s] as i128);
        if !parallel {
            return Err(Error::InvalidSplitting(format!(
                "phi difference on [{v}, {w}] is not parallel to the edge"
            )));
        }
        if lambda < Ratio::from_integer(0) || lambda > Ratio::from_integer(1) {
            return Err(Error::InvalidSplitting(format!(
                "lambda {lambda} on [{v}, {w}] is outside [0, 1]"
            )));
        }
        out.insert(v, w, lambda);
    }
    Ok(out)
}

fn finish(
    c: &LatticePolytope,
    raw_phi: &[Vec<i64>],
    lambda: LambdaAssignment,
) -> Result<std::result::Result<Decomposition, InvalidAssignment>> {
    let n = c.ambient_dim();
    let m: Vec<i64> = (0..n)
        .map(|t| raw_phi.iter().map(|p| p[t]).min().unwrap())
        .collect();
    let mut phi = VertexMap::new();
    let mut psi = VertexMap::new();
    for (v, p) in c.vertices().iter().zip(raw_phi) {
        let shifted = diff(p, &m);
        let rest = diff(&v.to_i64(), &shifted);
        let (Ok(x), Ok(y)) = (Exponent::from_i64(&shifted), Exponent::from_i64(&rest)) else {
            return Ok(Err(InvalidAssignment::NotASummand));
        };
        phi.insert(v.clone(), x);
        psi.insert(v.clone(), y);
    }
    let left_pts: Vec<Exponent> = phi.values().cloned().collect();
    let right_pts: Vec<Exponent> = psi.values().cloned().collect();
    let left = LatticePolytope::from_points(n, &left_pts)?;
    let right = LatticePolytope::from_points(n, &right_pts)?;
    if left.minkowski_sum(&right)? != *c {
        return Ok(Err(InvalidAssignment::NotASummand));
    }
    Ok(Ok(Decomposition {
        left,
        right,
        lambda,
        phi,
        psi,
    }))
}

/// Rebuilds `phi` by path sums from the edge coefficients and validates it.
pub fn reconstruct(
    c: &LatticePolytope,
    lambda: &LambdaAssignment,
) -> Result<std::result::Result<Decomposition, InvalidAssignment>> {
    let zero = Ratio::from_integer(0);
    let one = Ratio::from_integer(1);
    let mut clean = LambdaAssignment::new();
    for (v, w) in c.edges() {
        match lambda.get(v, w) {
            None => return Ok(Err(InvalidAssignment::MissingEdge(v.clone(), w.clone()))),
            Some(l) if l < zero || l > one => {
                return Ok(Err(InvalidAssignment::OutOfRange(v.clone(), w.clone())))
            }
            Some(l) => clean.insert(v, w, l),
        }
    }
    let verts = c.vertices();
    let nv = verts.len();
    let n = c.ambient_dim();
    let mut adj = vec![Vec::new(); nv];
    for &(i, j) in c.edge_indices() {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut phi: Vec<Option<Vec<Ratio<i64>>>> = vec![None; nv];
    phi[0] = Some(vec![zero; n]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if phi[w].is_some() {
                continue;
            }
            let l = clean.get(&verts[u], &verts[w]).unwrap();
            let pu = phi[u].clone().unwrap();
            let step: Vec<Ratio<i64>> = (0..n)
                .map(|t| pu[t] + l * Ratio::from_integer(verts[w][t] as i64 - verts[u][t] as i64))
                .collect();
            phi[w] = Some(step);
            queue.push_back(w);
        }
    }
    let phi: Vec<Vec<Ratio<i64>>> = phi
        .into_iter()
        .map(|p| p.expect("edge graph is connected"))
        .collect();
    for &(i, j) in c.edge_indices() {
        let l = clean.get(&verts[i], &verts[j]).unwrap();
        for t in 0..n {
            let want = l * Ratio::from_integer(verts[j][t] as i64 - verts[i][t] as i64);
            if phi[j][t] - phi[i][t] != want {
                return Ok(Err(InvalidAssignment::Inconsistent(
                    verts[i].clone(),
                    verts[j].clone(),
                )));
            }
        }
    }
    let mut raw = Vec::with_capacity(nv);
    for (v, p) in verts.iter().zip(&phi) {
        if p.iter().any(|x| !x.is_integer()) {
            return Ok(Err(InvalidAssignment::NonIntegral(v.clone())));
        }
        raw.push(p.iter().map(|x| x.to_integer()).collect::<Vec<i64>>());
    }
    finish(c, &raw, clean)
}

struct Enumerator<'a> {
    c: &'a LatticePolytope,
    raw: Vec<Vec<i64>>,
    order: Vec<usize>,
    parent: Vec<usize>,
    checks: Vec<Vec<(usize, usize)>>,
    phi: Vec<Vec<i64>>,
    positive_dims: bool,
    out: Vec<Decomposition>,
}

impl Enumerator<'_> {
    fn edge_ok(&self, i: usize, j: usize) -> bool {
        let edge = diff(&self.raw[j], &self.raw[i]);
        let d = content(&edge);
        let dphi = diff(&self.phi[j], &self.phi[i]);
        // dphi must be alpha * edge / d with 0 <= alpha <= d
        let t = edge.iter().position(|&x| x != 0).unwrap();
        let prim_t = edge[t] / d;
        if dphi[t] % prim_t != 0 {
            return false;
        }
        let alpha = dphi[t] / prim_t;
        (0..=d).contains(&alpha) && (0..edge.len()).all(|s| dphi[s] == alpha * (edge[s] / d))
    }

    fn walk(&mut self, pos: usize) -> Result<()> {
        if pos == self.order.len() {
            return self.emit();
        }
        let v = self.order[pos];
        let u = self.parent[v];
        let edge = diff(&self.raw[v], &self.raw[u]);
        let d = content(&edge);
        for alpha in 0..=d {
            self.phi[v] = self.phi[u]
                .iter()
                .zip(&edge)
                .map(|(p, e)| p + alpha * (e / d))
                .collect();
            if self.checks[pos].iter().all(|&(i, j)| self.edge_ok(i, j)) {
                self.walk(pos + 1)?;
            }
        }
        Ok(())
    }

    fn emit(&mut self) -> Result<()> {
        let c = self.c;
        let verts = c.vertices();
        let mut lambda = LambdaAssignment::new();
        for &(i, j) in c.edge_indices() {
            let edge = diff(&self.raw[j], &self.raw[i]);
            let dphi = diff(&self.phi[j], &self.phi[i]);
            let t = edge.iter().position(|&x| x != 0).unwrap();
            lambda.insert(&verts[i], &verts[j], Ratio::new(dphi[t], edge[t]));
        }
        if let Ok(dec) = finish(c, &self.phi, lambda)? {
            if !(self.positive_dims && dec.is_trivial()) {
                self.out.push(dec);
            }
        }
        Ok(())
    }
}

/// All integral decompositions of `c` with `inf C' = 0`, sorted by the
/// edge-coefficient vector. With `require_positive_dims`, summands that are
/// single points are dropped.
pub fn enumerate_decompositions(
    c: &LatticePolytope,
    require_positive_dims: bool,
) -> Result<Vec<Decomposition>> {
    let verts = c.vertices();
    let nv = verts.len();
    let raw: Vec<Vec<i64>> = verts.iter().map(Exponent::to_i64).collect();
    let mut adj = vec![Vec::new(); nv];
    for &(i, j) in c.edge_indices() {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut parent = vec![usize::MAX; nv];
    let mut seen = vec![false; nv];
    let mut bfs = vec![0usize];
    seen[0] = true;
    let mut head = 0;
    while head < bfs.len() {
        let u = bfs[head];
        head += 1;
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                bfs.push(w);
            }
        }
    }
    let pos_of: Vec<usize> = {
        let mut p = vec![0; nv];
        for (k, &v) in bfs.iter().enumerate() {
            p[v] = k;
        }
        p
    };
    // Non-tree edges are checked as soon as both endpoints have phi.
    let order: Vec<usize> = bfs[1..].to_vec();
    let mut checks = vec![Vec::new(); order.len()];
    for &(i, j) in c.edge_indices() {
        if parent[j] == i || parent[i] == j {
            continue;
        }
        let when = pos_of[i].max(pos_of[j]);
        checks[when - 1].push((i, j));
    }
    let n = c.ambient_dim();
    let mut en = Enumerator {
        c,
        raw,
        order,
        parent,
        checks,
        phi: vec![vec![0; n]; nv],
        positive_dims: require_positive_dims,
        out: Vec::new(),
    };
    en.walk(0)?;
    let mut out = en.out;
    out.sort_by_cached_key(|d| d.lambda.vector(c));
    Ok(out)
}
