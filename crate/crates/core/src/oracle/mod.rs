//! Exhaustive ground truth over small finite fields.
//!
//! Absolute reducibility is decided by searching factors whose Newton
//! polytopes form an integral decomposition of `C(P)`. If `P` factors over the
//! base field some decomposition with two positive-dimensional summands
//! carries the factors. Otherwise `P` is a product of `e` Galois conjugates of
//! one absolutely irreducible factor defined over the degree-`e` extension, so
//! `C(P) = e C(Q)`; only those homothetic splits are searched over extensions.
//! [`Strategy::Exhaustive`] drops that reduction and searches every
//! decomposition over every extension, and serves as a cross-check.

mod search;

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factorizer::Factorization;
use crate::field::{Field, FieldElement};
use crate::poly::Polynomial;
use crate::polytope::{enumerate_decompositions, hull, hull_vertices, LatticePolytope};
use crate::support::{Exponent, Support};

use search::{Searcher, Stage, SummandPair};

pub const DEFAULT_CAP: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Galois,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest extension degree searched; `None` means the total degree.
    pub max_ext: Option<u32>,
    /// Search nodes allowed per polynomial, and members allowed per support.
    pub cap: u64,
    pub strategy: Strategy,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_ext: None,
            cap: DEFAULT_CAP,
            strategy: Strategy::Galois,
        }
    }
}

impl OracleConfig {
    pub fn with_max_ext(max_ext: u32) -> Self {
        OracleConfig {
            max_ext: Some(max_ext),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZStatus {
    Empty,
    All,
    Proper { reducible: u64, total: u64 },
}

impl ZStatus {
    fn from_counts(reducible: u64, total: u64) -> ZStatus {
        if reducible == 0 {
            ZStatus::Empty
        } else if reducible == total {
            ZStatus::All
        } else {
            ZStatus::Proper { reducible, total }
        }
    }
}

/// Precomputed stages for every polynomial with a given Newton polytope.
pub struct SearchPlan {
    n: usize,
    points: Vec<Exponent>,
    stages: Vec<(Field, Stage)>,
}

fn phi_vec(c: &LatticePolytope, f: impl Fn(&Exponent) -> Exponent) -> Vec<Vec<i64>> {
    c.vertices().iter().map(|v| f(v).to_i64()).collect()
}

impl SearchPlan {
    pub fn new(
        c: &LatticePolytope,
        field: &Field,
        max_ext: u32,
        strategy: Strategy,
    ) -> Result<SearchPlan> {
        let points = c.lattice_points()?;
        let index: HashMap<Exponent, usize> = points
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let decs = enumerate_decompositions(c, true)?;
        // Each unordered split once, searching the summand with fewer points.
        let mut splits = Vec::new();
        let mut seen = BTreeSet::new();
        for dec in &decs {
            let key_l = dec.left.vertices().to_vec();
            let key_r = dec.right.vertices().to_vec();
            let key = if key_l <= key_r {
                (key_l, key_r)
            } else {
                (key_r, key_l)
            };
            if !seen.insert(key) {
                continue;
            }
            let nl = dec.left.lattice_points()?.len();
            let nr = dec.right.lattice_points()?.len();
            splits.push(if nl <= nr {
                (
                    dec.left.clone(),
                    dec.right.clone(),
                    phi_vec(c, |v| dec.phi[v].clone()),
                )
            } else {
                (
                    dec.right.clone(),
                    dec.left.clone(),
                    phi_vec(c, |v| dec.psi[v].clone()),
                )
            });
        }
        let mut stages = Vec::new();
        let split_exts: Vec<u32> = match strategy {
            Strategy::Galois => vec![1],
            Strategy::Exhaustive => (1..=max_ext.max(1)).collect(),
        };
        for &m in &split_exts {
            let ext = field.extension(m)?;
            for (l, r, phi) in &splits {
                let pair = SummandPair {
                    left: l,
                    right: r,
                    phi: phi.clone(),
                };
                stages.push((ext.clone(), Stage::new(c, &index, pair, m)?));
            }
        }
        if strategy == Strategy::Galois {
            for e in 2..=max_ext {
                let Some(small) = c.exact_div(e) else {
                    continue;
                };
                if small.is_point() {
                    continue;
                }
                let big = small.scale(e - 1)?;
                let phi = phi_vec(c, |v| v.exact_div(e).expect("vertices divisible by e"));
                let ext = field.extension(e)?;
                let pair = SummandPair {
                    left: &small,
                    right: &big,
                    phi,
                };
                stages.push((ext, Stage::new(c, &index, pair, e)?));
            }
        }
        Ok(SearchPlan {
            n: c.ambient_dim(),
            points,
            stages,
        })
    }

    /// Runs every stage on `p`, whose Newton polytope must be the plan's.
    pub fn search(&self, p: &Polynomial, cap: u64) -> Result<Option<Factorization>> {
        let mut budget = cap;
        let base: Vec<FieldElement> = self.points.iter().map(|e| p.coefficient(e)).collect();
        let mut cached: Option<(u32, Vec<FieldElement>)> = None;
        for (ext, stage) in &self.stages {
            let target = match &cached {
                Some((m, t)) if *m == stage.ext => t,
                _ => {
                    let emb = p.field().embedding(ext)?;
                    let t = base.iter().map(|&c| emb.apply(c)).collect();
                    cached = Some((stage.ext, t));
                    &cached.as_ref().unwrap().1
                }
            };
            if let Some(found) = Searcher::new(stage, ext, target, &mut budget).run()? {
                let left = Polynomial::from_terms(
                    ext,
                    self.n,
                    stage.a_points.iter().cloned().zip(found.q),
                )?;
                let right = Polynomial::from_terms(
                    ext,
                    self.n,
                    stage.b_points.iter().cloned().zip(found.r),
                )?;
                let fac = Factorization {
                    left,
                    right,
                    extension_degree: stage.ext,
                };
                if !fac.verify(p)? {
                    return Err(Error::Precondition(
                        "search produced an invalid factorization".into(),
                    ));
                }
                return Ok(Some(fac));
            }
        }
        Ok(None)
    }
}

/// Certificates that need no search: monomial content and monomials.
fn trivial_certificate(p: &Polynomial) -> Result<Option<Option<Factorization>>> {
    let n = p.dim();
    let one = p.field().one();
    let s = p.support()?;
    let inf = s.inf_point();
    if p.is_monomial() {
        if inf.degree() < 2 {
            return Ok(Some(None));
        }
        let t = (0..n).find(|&t| inf[t] >= 1).unwrap();
        let xt = Exponent::unit(n, t);
        let left = Polynomial::monomial(p.field(), xt.clone(), one);
        let right = p.shift_down(&xt).expect("X_t divides the monomial");
        return Ok(Some(Some(Factorization {
            left,
            right,
            extension_degree: 1,
        })));
    }
    if !inf.is_zero() {
        let left = Polynomial::monomial(p.field(), inf.clone(), one);
        let right = p.shift_down(&inf).expect("inf divides every term");
        return Ok(Some(Some(Factorization {
            left,
            right,
            extension_degree: 1,
        })));
    }
    Ok(None)
}

fn resolve_max_ext(cfg: &OracleConfig, s: &Support) -> u32 {
    cfg.max_ext
        .unwrap_or_else(|| s.total_degree().clamp(1, u32::MAX as u64) as u32)
}

/// `Some(certificate)` if `p` factors over an extension of degree at most
/// `max_ext`, `None` if it provably does not within that bound.
pub fn is_absolutely_reducible(
    p: &Polynomial,
    cfg: &OracleConfig,
) -> Result<Option<Factorization>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(done) = trivial_certificate(p)? {
        return Ok(done);
    }
    let s = p.support()?;
    let c = hull(&s)?;
    let plan = SearchPlan::new(&c, p.field(), resolve_max_ext(cfg, &s), cfg.strategy)?;
    plan.search(p, cfg.cap)
}

/// Number of unit-collapsed members of `V_I` over `field`, if it fits in `cap`.
pub fn member_count(s: &Support, field: &Field, cap: u64) -> Result<u64> {
    let units = field.size() - 1;
    let mut total: u64 = 1;
    for _ in 1..s.len() {
        total = total
            .checked_mul(units)
            .filter(|&t| t <= cap)
            .ok_or_else(|| Error::Inconclusive(format!("more than {cap} members in V_I")))?;
    }
    Ok(total)
}

/// The `idx`-th member with coefficient 1 at the lex-smallest point, the
/// others being powers of the field generator in mixed radix.
pub fn member(s: &Support, field: &Field, idx: u64) -> Result<Polynomial> {
    let units = field.size() - 1;
    let mut rest = idx;
    let terms = s.iter().enumerate().map(|(k, e)| {
        let c = if k == 0 {
            field.one()
        } else {
            let digit = rest % units;
            rest /= units;
            field.exp(digit)
        };
        (e.clone(), c)
    });
    Polynomial::from_terms(field, s.dim(), terms.collect::<Vec<_>>())
}

/// Counts the absolutely reducible members of `V_I` with coefficients in
/// `field`, up to a common unit factor.
pub fn z_status(s: &Support, field: &Field, cfg: &OracleConfig) -> Result<ZStatus> {
    let total = member_count(s, field, cfg.cap)?;
    let first = member(s, field, 0)?;
    if trivial_certificate(&first)?.is_some() {
        // Depends only on the support.
        let red = is_absolutely_reducible(&first, cfg)?.is_some();
        return Ok(ZStatus::from_counts(if red { total } else { 0 }, total));
    }
    let c = hull(s)?;
    let plan = SearchPlan::new(&c, field, resolve_max_ext(cfg, s), cfg.strategy)?;
    let flags = (0..total)
        .into_par_iter()
        .map(|i| Ok(plan.search(&member(s, field, i)?, cfg.cap)?.is_some()))
        .collect::<Result<Vec<bool>>>()?;
    let reducible = flags.iter().filter(|&&b| b).count() as u64;
    Ok(ZStatus::from_counts(reducible, total))
}

/// Vertices of `C(PQ)` against the Minkowski sum of the vertex sets of
/// `C(P)` and `C(Q)`.
pub fn ostrowski_check(p: &Polynomial, q: &Polynomial) -> Result<bool> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.dim();
    let pq = p.mul(q)?;
    let lhs = hull_vertices(n, pq.support()?.points())?;
    let vp = hull_vertices(n, p.support()?.points())?;
    let vq = hull_vertices(n, q.support()?.points())?;
    let mut sum = Vec::with_capacity(vp.len() * vq.len());
    for a in &vp {
        for b in &vq {
            sum.push(a.checked_add(b)?);
        }
    }
    Ok(lhs == hull_vertices(n, &sum)?)
}

/// Random nonzero polynomial with up to `max_terms` distinct monomials of
/// total degree at most `max_degree`.
pub fn random_polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    field: &Field,
    n: usize,
    max_degree: u32,
    max_terms: usize,
) -> Result<Polynomial> {
    let count = rng.gen_range(1..=max_terms.max(1));
    let mut terms = std::collections::BTreeMap::new();
    let q = field.size() as u32;
    for _ in 0..count {
        let mut left = max_degree;
        let mut e = vec![0u32; n];
        for slot in e.iter_mut() {
            *slot = rng.gen_range(0..=left);
            left -= *slot;
        }
        // avoid favouring early coordinates
        let shift = rng.gen_range(0..n);
        e.rotate_left(shift);
        let c = field.element(rng.gen_range(1..q))?;
        terms.insert(Exponent::new(e)?, c);
    }
    Polynomial::from_terms(field, n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn poly(f: &Field, n: usize, t: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_int_terms(f, n, t).unwrap()
    }

    fn s(n: usize, pts: &[&[u32]]) -> Support {
        Support::from_coords(n, pts.iter().map(|p| p.to_vec())).unwrap()
    }

    #[test]
    fn frobenius_square() {
        let f2 = make_field(2, 1).unwrap();
        let p = poly(&f2, 2, &[(&[0, 0], 1), (&[2, 0], 1), (&[0, 2], 1)]);
        let fac = is_absolutely_reducible(&p, &OracleConfig::with_max_ext(1))
            .unwrap()
            .unwrap();
        assert!(fac.verify(&p).unwrap());
        assert_eq!(
            fac.left,
            poly(&f2, 2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)])
        );
    }

    #[test]
    fn triangle_irreducible_in_char_3() {
        let f3 = make_field(3, 1).unwrap();
        let p = poly(&f3, 2, &[(&[0, 0], 1), (&[2, 0], 1), (&[0, 2], 1)]);
        assert!(is_absolutely_reducible(&p, &OracleConfig::with_max_ext(2))
            .unwrap()
            .is_none());
    }

    #[test]
    fn linear_is_irreducible() {
        let f5 = make_field(5, 1).unwrap();
        let p = poly(&f5, 2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        assert!(is_absolutely_reducible(&p, &OracleConfig::default())
            .unwrap()
            .is_none());
        let x = poly(&f5, 2, &[(&[1, 0], 3)]);
        assert!(is_absolutely_reducible(&x, &OracleConfig::default())
            .unwrap()
            .is_none());
        let xy = poly(&f5, 2, &[(&[1, 1], 3)]);
        assert!(is_absolutely_reducible(&xy, &OracleConfig::default())
            .unwrap()
            .unwrap()
            .verify(&xy)
            .unwrap());
    }

    #[test]
    fn monomial_content_stripped() {
        let f3 = make_field(3, 1).unwrap();
        let p = poly(&f3, 2, &[(&[1, 0], 1), (&[1, 1], 1), (&[2, 3], 2)]);
        let fac = is_absolutely_reducible(&p, &OracleConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(fac.left, poly(&f3, 2, &[(&[1, 0], 1)]));
    }

    #[test]
    fn needs_extension() {
        // X^2 + Y^2 = (X + iY)(X - iY) only over F_9
        let f3 = make_field(3, 1).unwrap();
        let p = poly(&f3, 2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        assert!(is_absolutely_reducible(&p, &OracleConfig::with_max_ext(1))
            .unwrap()
            .is_none());
        let fac = is_absolutely_reducible(&p, &OracleConfig::with_max_ext(2))
            .unwrap()
            .unwrap();
        assert_eq!(fac.extension_degree, 2);
        assert!(fac.verify(&p).unwrap());
    }

    #[test]
    fn exhaustive_agrees_on_small_members() {
        let f3 = make_field(3, 1).unwrap();
        let sup = s(2, &[&[0, 0], &[2, 0], &[1, 1], &[0, 2]]);
        let g = OracleConfig::default();
        let x = OracleConfig {
            strategy: Strategy::Exhaustive,
            ..g
        };
        for i in 0..member_count(&sup, &f3, 100).unwrap() {
            let p = member(&sup, &f3, i).unwrap();
            assert_eq!(
                is_absolutely_reducible(&p, &g).unwrap().is_some(),
                is_absolutely_reducible(&p, &x).unwrap().is_some(),
                "{p}"
            );
        }
    }

    #[test]
    fn z_status_examples() {
        let tri = s(2, &[&[0, 0], &[2, 0], &[0, 2]]);
        let f2 = make_field(2, 1).unwrap();
        let f3 = make_field(3, 1).unwrap();
        let cfg = OracleConfig::with_max_ext(2);
        assert_eq!(z_status(&tri, &f2, &cfg).unwrap(), ZStatus::All);
        assert_eq!(z_status(&tri, &f3, &cfg).unwrap(), ZStatus::Empty);
        let lin = s(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(
            z_status(&lin, &f2, &OracleConfig::default()).unwrap(),
            ZStatus::Empty
        );
        // a + bX + cY + dXY is reducible iff ad = bc: half of the 8 members over F_3
        let sq = s(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(
            z_status(&sq, &f3, &OracleConfig::default()).unwrap(),
            ZStatus::Proper {
                reducible: 4,
                total: 8
            }
        );
    }

    #[test]
    fn cap_is_reported() {
        let f5 = make_field(5, 1).unwrap();
        let tri = s(2, &[&[0, 0], &[6, 0], &[0, 6]]);
        let cfg = OracleConfig {
            cap: 10,
            ..OracleConfig::with_max_ext(3)
        };
        assert!(z_status(&tri, &f5, &cfg).unwrap_err().is_inconclusive());
        let big = s(1, &[&[0], &[1], &[2], &[3]]);
        assert!(member_count(&big, &f5, 10).unwrap_err().is_inconclusive());
    }

    #[test]
    fn ostrowski_small() {
        let f2 = make_field(2, 1).unwrap();
        let p = poly(&f2, 1, &[(&[0], 1), (&[1], 1)]);
        assert!(ostrowski_check(&p, &p).unwrap());
        let c = poly(&f2, 1, &[(&[0], 1)]);
        assert!(ostrowski_check(&c, &p).unwrap());
    }
}
