//! Backtracking search for a factor with prescribed Newton polytope.
//!
//! A stage fixes the field and a pair of lattice-point sets `A ⊂ C'`,
//! `B ⊂ C''` with `C' + C'' = C`. Coefficients of `Q` on `A` are assigned one
//! at a time (vertices nonzero, the lex-smallest point fixed to 1). Whenever all
//! points of `Q` on an edge of `C'` are known, the edge polynomial of `Q` must
//! divide the matching edge polynomial of `P`, since initial forms multiply.
//! At a leaf `R = P / Q` is solved triangularly from the lex-largest point of
//! `A` and the product is checked exactly.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::polytope::LatticePolytope;
use crate::support::Exponent;

#[derive(Clone, Debug)]
pub(crate) struct EdgeLine {
    /// Indices into `A` along the edge of `C'`.
    a_line: Vec<usize>,
    /// Indices into the points of `C` along the matching edge of `C`.
    c_line: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Stage {
    pub ext: u32,
    pub a_points: Vec<Exponent>,
    pub b_points: Vec<Exponent>,
    a_vertex: Vec<bool>,
    /// `prod[a * |B| + b]` is the index of `a + b` among the points of `C`.
    prod: Vec<usize>,
    order: Vec<usize>,
    checks_at: Vec<Vec<usize>>,
    lines: Vec<EdgeLine>,
    pivot: usize,
    b_order: Vec<usize>,
    solve_terms: Vec<Vec<(usize, usize)>>,
}

/// Split of the vertices of `C` into a vertex of `C'` and one of `C''`.
pub(crate) struct SummandPair<'a> {
    pub left: &'a LatticePolytope,
    pub right: &'a LatticePolytope,
    /// `phi(v)` for each vertex `v` of `C`, in `C`'s vertex order.
    pub phi: Vec<Vec<i64>>,
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Stage {
    pub(crate) fn new(
        c: &LatticePolytope,
        c_index: &HashMap<Exponent, usize>,
        pair: SummandPair<'_>,
        ext: u32,
    ) -> Result<Stage> {
        let a_points = pair.left.lattice_points()?;
        let b_points = pair.right.lattice_points()?;
        let a_index: HashMap<&Exponent, usize> =
            a_points.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let a_vertex: Vec<bool> = a_points
            .iter()
            .map(|p| pair.left.vertices().binary_search(p).is_ok())
            .collect();
        let nb = b_points.len();
        let mut prod = Vec::with_capacity(a_points.len() * nb);
        for a in &a_points {
            for b in &b_points {
                let s = a.checked_add(b)?;
                let idx = *c_index
                    .get(&s)
                    .ok_or_else(|| Error::Precondition(format!("{s} is not in C")))?;
                prod.push(idx);
            }
        }
        let verts = c.vertices();
        let mut lines = Vec::new();
        for &(i, j) in c.edge_indices() {
            let (pv, pw) = (&pair.phi[i], &pair.phi[j]);
            let dphi = sub(pw, pv);
            if dphi.iter().all(|&x| x == 0) {
                continue;
            }
            let (v, w) = (verts[i].to_i64(), verts[j].to_i64());
            let edge = sub(&w, &v);
            let d = edge.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            let step: Vec<i64> = edge.iter().map(|x| x / d).collect();
            let t = step.iter().position(|&x| x != 0).unwrap();
            let len_a = dphi[t] / step[t];
            let at = |base: &[i64], s: i64| -> Exponent {
                let v: Vec<i64> = base.iter().zip(&step).map(|(b, st)| b + s * st).collect();
                Exponent::from_i64(&v).expect("edge points are lattice points of N^n")
            };
            let a_line = (0..=len_a).map(|s| a_index[&at(pv, s)]).collect();
            let c_line = (0..=d).map(|s| c_index[&at(&v, s)]).collect();
            lines.push(EdgeLine { a_line, c_line });
        }
        let na = a_points.len();
        // Assignment order: the normalization point first, then the edge
        // with the fewest unassigned points, repeatedly; interior points last.
        let mut order = vec![0usize];
        let mut placed = vec![false; na];
        placed[0] = true;
        let mut done = vec![false; lines.len()];
        loop {
            let next = (0..lines.len())
                .filter(|&k| !done[k])
                .min_by_key(|&k| lines[k].a_line.iter().filter(|&&a| !placed[a]).count());
            let Some(k) = next else { break };
            done[k] = true;
            for &a in &lines[k].a_line {
                if !placed[a] {
                    placed[a] = true;
                    order.push(a);
                }
            }
        }
        for a in 0..na {
            if !placed[a] {
                order.push(a);
            }
        }
        let mut pos = vec![0usize; na];
        for (k, &a) in order.iter().enumerate() {
            pos[a] = k;
        }
        let mut checks_at = vec![Vec::new(); na];
        for (k, line) in lines.iter().enumerate() {
            let when = line.a_line.iter().map(|&a| pos[a]).max().unwrap();
            checks_at[when].push(k);
        }
        let pivot = na - 1;
        let mut b_order: Vec<usize> = (0..nb).collect();
        b_order.reverse();
        let b_index: HashMap<&Exponent, usize> =
            b_points.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut solve_terms = vec![Vec::new(); nb];
        for (bi, b) in b_points.iter().enumerate() {
            let k = a_points[pivot].checked_add(b)?;
            for (ai, a) in a_points.iter().enumerate().take(pivot) {
                if let Some(bp) = k.checked_sub(a) {
                    if let Some(&bj) = b_index.get(&bp) {
                        solve_terms[bi].push((ai, bj));
                    }
                }
            }
        }
        Ok(Stage {
            ext,
            a_points,
            b_points,
            a_vertex,
            prod,
            order,
            checks_at,
            lines,
            pivot,
            b_order,
            solve_terms,
        })
    }
}

/// Outcome of one stage search.
pub(crate) struct Found {
    pub q: Vec<FieldElement>,
    pub r: Vec<FieldElement>,
}

pub(crate) struct Searcher<'a> {
    stage: &'a Stage,
    field: &'a Field,
    target: &'a [FieldElement],
    q: Vec<FieldElement>,
    r: Vec<FieldElement>,
    prod_buf: Vec<FieldElement>,
    rem_buf: Vec<FieldElement>,
    budget: &'a mut u64,
}

impl<'a> Searcher<'a> {
    pub(crate) fn new(
        stage: &'a Stage,
        field: &'a Field,
        target: &'a [FieldElement],
        budget: &'a mut u64,
    ) -> Self {
        Searcher {
            stage,
            field,
            target,
            q: vec![FieldElement::ZERO; stage.a_points.len()],
            r: vec![FieldElement::ZERO; stage.b_points.len()],
            prod_buf: vec![FieldElement::ZERO; target.len()],
            rem_buf: Vec::new(),
            budget,
        }
    }

    pub(crate) fn run(mut self) -> Result<Option<Found>> {
        if self.descend(0)? {
            Ok(Some(Found {
                q: self.q,
                r: self.r,
            }))
        } else {
            Ok(None)
        }
    }

    fn spend(&mut self) -> Result<()> {
        if *self.budget == 0 {
            return Err(Error::Inconclusive("search budget exhausted".into()));
        }
        *self.budget -= 1;
        Ok(())
    }

    fn descend(&mut self, depth: usize) -> Result<bool> {
        let st = self.stage;
        if depth == st.order.len() {
            return self.leaf();
        }
        let a = st.order[depth];
        let q_size = self.field.size() as u32;
        let (lo, hi) = if depth == 0 {
            (1, 2)
        } else if st.a_vertex[a] {
            (1, q_size)
        } else {
            (0, q_size)
        };
        for v in lo..hi {
            self.spend()?;
            self.q[a] = self.field.element(v)?;
            let ok =
                (0..st.checks_at[depth].len()).all(|k| self.line_divides(st.checks_at[depth][k]));
            if ok && self.descend(depth + 1)? {
                return Ok(true);
            }
        }
        self.q[a] = FieldElement::ZERO;
        Ok(false)
    }

    /// Does the edge polynomial of `Q` divide that of `P`?
    fn line_divides(&mut self, k: usize) -> bool {
        let f = self.field;
        let line = &self.stage.lines[k];
        let rem = &mut self.rem_buf;
        rem.clear();
        rem.extend(line.c_line.iter().map(|&c| self.target[c]));
        let dq = line.a_line.len() - 1;
        let lead_inv = f.inv(self.q[*line.a_line.last().unwrap()]);
        for top in (dq..rem.len()).rev() {
            let c = f.mul(rem[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            for (s, &a) in line.a_line.iter().enumerate() {
                let idx = top - dq + s;
                rem[idx] = f.sub(rem[idx], f.mul(c, self.q[a]));
            }
        }
        rem[..dq].iter().all(|x| x.is_zero())
    }

    fn leaf(&mut self) -> Result<bool> {
        let st = self.stage;
        let f = self.field;
        let nb = st.b_points.len();
        let piv_inv = f.inv(self.q[st.pivot]);
        for &b in &st.b_order {
            let mut s = self.target[st.prod[st.pivot * nb + b]];
            for &(a, bj) in &st.solve_terms[b] {
                let qa = self.q[a];
                if !qa.is_zero() {
                    s = f.sub(s, f.mul(qa, self.r[bj]));
                }
            }
            self.r[b] = f.mul(s, piv_inv);
        }
        self.prod_buf
            .iter_mut()
            .for_each(|x| *x = FieldElement::ZERO);
        for (a, &qa) in self.q.iter().enumerate() {
            if qa.is_zero() {
                continue;
            }
            for (b, &rb) in self.r.iter().enumerate() {
                if rb.is_zero() {
                    continue;
                }
                let idx = st.prod[a * nb + b];
                self.prod_buf[idx] = f.add(self.prod_buf[idx], f.mul(qa, rb));
            }
        }
        Ok(self.prod_buf == self.target)
    }
}
