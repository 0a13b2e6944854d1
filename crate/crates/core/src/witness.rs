//! Supports whose behaviour depends on the characteristic.
//!
//! The building block is a triple `(I', I'', I)` for which "no `P, Q` with
//! `I(P) = I'`, `I(Q) = I''`, `I(PQ) = I`" (statement B) holds exactly in the
//! characteristics dividing `d`. Lifts turn B for a triple into emptiness of
//! `Z_J` for a single support `J`; a linear map injective on `I' + I''`
//! transports triples to one variable, and a two-row lift lands `J` in `N^2`.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{nullspace, Field, FieldElement};
use crate::oracle::{member_count, z_status, OracleConfig, ZStatus};
use crate::poly::Polynomial;
use crate::support::{Exponent, Support};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTriple {
    pub ip: Support,
    pub ipp: Support,
    pub i: Support,
    pub d: u32,
}

fn pts3(it: impl IntoIterator<Item = [u32; 3]>) -> Result<Support> {
    Support::from_coords(3, it.into_iter().map(|p| p.to_vec()))
}

/// The triple in `N^3` for which B holds exactly when the characteristic divides `d`.
pub fn lemma44_sets(d: u32) -> Result<WitnessTriple> {
    if d < 2 {
        return Err(Error::Precondition(format!(
            "d must be at least 2, got {d}"
        )));
    }
    let ip = pts3([
        [0, 0, 0],
        [1, 0, 0],
        [0, 1, 0],
        [1, 1, 0],
        [0, 0, 1],
        [0, 1, 1],
    ])?;
    let ipp = pts3((0..=d).flat_map(|i| [[i, 0, 0], [i, 1, 0]]))?;
    let sum = ip.minkowski_sum(&ipp)?;
    let removed: BTreeSet<Exponent> = (1..=d)
        .flat_map(|i| [[i, 0, 0], [i, 2, 0]])
        .chain([[0, 1, 1], [d, 1, 1]])
        .map(|p| Exponent::new(p.to_vec()))
        .collect::<Result<_>>()?;
    let i = Support::new(
        3,
        sum.iter()
            .filter(|p| !removed.contains(*p))
            .cloned()
            .collect(),
    )?;
    Ok(WitnessTriple { ip, ipp, i, d })
}

/// Explicit `P, Q` with `I(P) = I'`, `I(Q) = I''`, `I(PQ) = I`.
#[derive(Clone, Debug)]
pub struct WitnessPair {
    pub p: Polynomial,
    pub q: Polynomial,
    pub zeta: FieldElement,
    pub a: FieldElement,
}

/// Builds the pair over the smallest extension of `field` containing a
/// primitive `d`-th root `zeta` and some `a` outside `mu_d ∪ {-1, -zeta^-1}`;
/// `a` is the first such element by index.
pub fn lemma44_witness_pair(d: u32, field: &Field) -> Result<WitnessPair> {
    if d < 2 {
        return Err(Error::Precondition(format!(
            "d must be at least 2, got {d}"
        )));
    }
    let p = field.characteristic();
    if (d as u64).is_multiple_of(p) {
        return Err(Error::Precondition(format!(
            "characteristic {p} divides d = {d}"
        )));
    }
    for m in 1.. {
        let ext = field.extension(m)?;
        let Some(zeta) = ext.root_of_unity(d as u64) else {
            continue;
        };
        let mu: Vec<FieldElement> = (0..d as u64).map(|k| ext.pow(zeta, k)).collect();
        let minus_one = ext.neg(ext.one());
        let bad = ext.neg(ext.inv(zeta));
        let found = ext
            .units()
            .find(|a| !mu.contains(a) && *a != minus_one && *a != bad);
        let Some(a) = found else { continue };
        let f = &ext;
        let one = f.one();
        let e = |x: u32, y: u32, z: u32| Exponent::new(vec![x, y, z]).expect("small exponent");
        let pp = Polynomial::from_terms(
            f,
            3,
            vec![
                (e(0, 0, 0), one),
                (e(1, 0, 0), minus_one),
                (e(0, 1, 0), a),
                (e(1, 1, 0), f.neg(f.mul(a, zeta))),
                (e(0, 0, 1), one),
                (e(0, 1, 1), minus_one),
            ],
        )?;
        let qq = Polynomial::from_terms(
            f,
            3,
            (0..=d)
                .flat_map(|i| [(e(i, 0, 0), one), (e(i, 1, 0), f.pow(zeta, i as u64))])
                .collect::<Vec<_>>(),
        )?;
        return Ok(WitnessPair {
            p: pp,
            q: qq,
            zeta,
            a,
        });
    }
    unreachable!("some extension always has enough elements")
}

fn coefficient_vectors(s: &Support, field: &Field, k: u64) -> Result<Polynomial> {
    crate::oracle::member(s, field, k)
}

/// Does some `(P, Q)` over `field` realize the triple? Enumerates
/// unit-collapsed `P`; for each, the `Q` killing the coefficients on
/// `(I' + I'') \ I` form a kernel, which is enumerated in full.
pub fn check_b(t: &WitnessTriple, field: &Field, cap: u64) -> Result<bool> {
    let sum = t.ip.minkowski_sum(&t.ipp)?;
    if !t.i.is_subset(&sum) {
        return Ok(true);
    }
    let blocked: Vec<&Exponent> = sum.iter().filter(|k| !t.i.contains(k)).collect();
    let q_index: HashMap<&Exponent, usize> =
        t.ipp.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let np = member_count(&t.ip, field, cap)?;
    let q_size = field.size();
    let nq = t.ipp.len();
    let realized = (0..np).into_par_iter().map(|k| -> Result<bool> {
        let p = coefficient_vectors(&t.ip, field, k)?;
        let mut rows = Vec::with_capacity(blocked.len());
        for b in &blocked {
            let mut row = vec![FieldElement::ZERO; nq];
            for (e, c) in p.terms() {
                if let Some(j) = b.checked_sub(e) {
                    if let Some(&col) = q_index.get(&j) {
                        row[col] = c;
                    }
                }
            }
            rows.push(row);
        }
        let basis = nullspace(field, &rows, nq);
        let count = q_size
            .checked_pow(basis.len() as u32)
            .filter(|&c| c.saturating_mul(np) <= cap)
            .ok_or_else(|| {
                Error::Inconclusive(format!(
                    "kernel of dimension {} exceeds the cap",
                    basis.len()
                ))
            })?;
        for idx in 0..count {
            let mut v = vec![FieldElement::ZERO; nq];
            let mut rest = idx;
            for vec_b in &basis {
                let c = field.element((rest % q_size) as u32)?;
                rest /= q_size;
                if c.is_zero() {
                    continue;
                }
                for (slot, &x) in v.iter_mut().zip(vec_b) {
                    *slot = field.add(*slot, field.mul(c, x));
                }
            }
            if v.iter().any(|x| x.is_zero()) {
                continue;
            }
            let q = Polynomial::from_terms(field, t.ipp.dim(), t.ipp.iter().cloned().zip(v))?;
            if p.mul(&q)?.support()? == t.i {
                return Ok(true);
            }
        }
        Ok(false)
    });
    let any = realized
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .any(|b| b);
    Ok(!any)
}

/// Pairwise enumeration of unit-collapsed `P` and `Q`; a cross-check for [`check_b`].
pub fn check_b_bruteforce(t: &WitnessTriple, field: &Field, cap: u64) -> Result<bool> {
    let np = member_count(&t.ip, field, cap)?;
    let nq = member_count(&t.ipp, field, cap)?;
    if np.checked_mul(nq).is_none_or(|x| x > cap) {
        return Err(Error::Inconclusive(format!(
            "{np} x {nq} pairs exceed the cap"
        )));
    }
    let realized = (0..np)
        .into_par_iter()
        .map(|i| -> Result<bool> {
            let p = crate::oracle::member(&t.ip, field, i)?;
            for j in 0..nq {
                let q = crate::oracle::member(&t.ipp, field, j)?;
                if p.mul(&q)?.support()? == t.i {
                    return Ok(true);
                }
            }
            Ok(false)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(!realized.into_iter().any(|b| b))
}

/// `(I × {(0,0)}) ∪ (I' × {(0,1)}) ∪ (I'' × {(1,0)}) ∪ {(0,…,0,1,1)}`.
pub fn lemma43_lift(t: &WitnessTriple) -> Result<Support> {
    let n = t.i.dim();
    let tag = |s: &Support, y: u32, z: u32| -> Vec<Exponent> {
        s.iter()
            .map(|e| {
                let mut c = e.coords().to_vec();
                c.extend([y, z]);
                Exponent::new(c).expect("lifted exponent")
            })
            .collect()
    };
    let mut pts = tag(&t.i, 0, 0);
    pts.extend(tag(&t.ip, 0, 1));
    pts.extend(tag(&t.ipp, 1, 0));
    let mut top = vec![0u32; n];
    top.extend([1, 1]);
    pts.push(Exponent::new(top)?);
    Support::new(n + 2, pts)
}

/// Integer linear map `Z^n -> Z^m`, one row per output coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub rows: Vec<Vec<i64>>,
}

impl LinearMap {
    pub fn apply(&self, x: &Exponent) -> Vec<i64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(x.coords()).map(|(a, &b)| a * b as i64).sum())
            .collect()
    }
}

/// `x ↦ x_{o_0} + b_0 x_{o_1} + b_0 b_1 x_{o_2} + …` for `order = (o_0, o_1, …)`.
pub fn mixed_radix_flatten(radices: &[u32], order: &[usize]) -> Result<LinearMap> {
    if let Some(b) = radices.iter().find(|&&b| b < 2) {
        return Err(Error::Precondition(format!("radix {b} is less than 2")));
    }
    let n = radices.len();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(Error::Precondition(format!(
            "{order:?} is not a permutation of 0..{n}"
        )));
    }
    let mut row = vec![0i64; n];
    let mut w: i64 = 1;
    for (&o, &b) in order.iter().zip(radices) {
        row[o] = w;
        w = w.checked_mul(b as i64).ok_or(Error::ExponentOverflow)?;
    }
    Ok(LinearMap { rows: vec![row] })
}

/// `6i + j + 3k`: radices `(3, 2, d+2)` on the coordinates `(j, k, i)`.
pub fn lemma47_map(d: u32) -> Result<LinearMap> {
    mixed_radix_flatten(&[3, 2, d + 2], &[1, 2, 0])
}

fn image(ell: &LinearMap, offset: &[i64], s: &Support) -> Result<Support> {
    let pts = s
        .iter()
        .map(|e| {
            let v: Vec<i64> = ell
                .apply(e)
                .iter()
                .zip(offset)
                .map(|(a, b)| a + b)
                .collect();
            Exponent::from_i64(&v)
        })
        .collect::<Result<Vec<_>>>()?;
    Support::new(ell.rows.len(), pts)
}

/// Image of a triple under `ell` with offsets `a'`, `a''`, after checking
/// that `ell` is injective on `I' + I''`.
pub fn transport_triple(
    t: &WitnessTriple,
    ell: &LinearMap,
    a_p: &[i64],
    a_pp: &[i64],
) -> Result<WitnessTriple> {
    let m = ell.rows.len();
    if a_p.len() != m || a_pp.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: a_p.len().max(a_pp.len()),
        });
    }
    let sum = t.ip.minkowski_sum(&t.ipp)?;
    let mut seen: HashMap<Vec<i64>, &Exponent> = HashMap::new();
    for e in sum.iter() {
        if let Some(prev) = seen.insert(ell.apply(e), e) {
            return Err(Error::NotInjective(prev.to_string(), e.to_string()));
        }
    }
    let both: Vec<i64> = a_p.iter().zip(a_pp).map(|(a, b)| a + b).collect();
    Ok(WitnessTriple {
        ip: image(ell, a_p, &t.ip)?,
        ipp: image(ell, a_pp, &t.ipp)?,
        i: image(ell, &both, &t.i)?,
        d: t.d,
    })
}

/// Maps a polynomial's exponents through `ell` plus `offset`.
pub fn transport_polynomial(p: &Polynomial, ell: &LinearMap, offset: &[i64]) -> Result<Polynomial> {
    let terms = p
        .terms()
        .map(|(e, c)| {
            let v: Vec<i64> = ell
                .apply(e)
                .iter()
                .zip(offset)
                .map(|(a, b)| a + b)
                .collect();
            Ok((Exponent::from_i64(&v)?, c))
        })
        .collect::<Result<Vec<_>>>()?;
    Polynomial::from_terms(p.field(), ell.rows.len(), terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum J1Mode {
    Union,
    SymmetricDifference,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftVariant {
    /// `h > g'`: the two copies in row one are disjoint.
    Separated,
    /// `h = g'`: the copies meet at `g'`.
    Overlapping(J1Mode),
}

fn univariate_values(s: &Support, name: &str) -> Result<Vec<u32>> {
    if s.dim() != 1 {
        return Err(Error::Precondition(format!("{name} must be univariate")));
    }
    Ok(s.iter().map(|e| e[0]).collect())
}

/// `J = (J_0 × {0}) ∪ (J_1 × {1}) ∪ {(0,2)}` with `J_0 = h + I` and `J_1`
/// built from `I'` and `h + I''` according to `variant`.
pub fn lemma48_lift(
    ip: &Support,
    ipp: &Support,
    i: &Support,
    variant: LiftVariant,
    h: u32,
) -> Result<Support> {
    let a = univariate_values(ip, "I'")?;
    let b = univariate_values(ipp, "I''")?;
    let c = univariate_values(i, "I")?;
    if a[0] != 0 || b[0] != 0 || c[0] != 0 {
        return Err(Error::Precondition(
            "I', I'' and I must have minimum 0".into(),
        ));
    }
    let (g1, g2) = (*a.last().unwrap(), *b.last().unwrap());
    if g1 == 0 || g2 == 0 {
        return Err(Error::Precondition(
            "I' and I'' must have positive maximum".into(),
        ));
    }
    if *c.last().unwrap() != g1 + g2 {
        return Err(Error::Precondition(format!("max I must be {}", g1 + g2)));
    }
    let shifted: BTreeSet<u32> = b.iter().map(|x| x + h).collect();
    let lower: BTreeSet<u32> = a.iter().copied().collect();
    let j1: BTreeSet<u32> = match variant {
        LiftVariant::Separated => {
            if h <= g1 {
                return Err(Error::Precondition(format!(
                    "h = {h} must exceed g' = {g1}"
                )));
            }
            lower.union(&shifted).copied().collect()
        }
        LiftVariant::Overlapping(mode) => {
            if h != g1 {
                return Err(Error::Precondition(format!("h = {h} must equal g' = {g1}")));
            }
            let mut with_g: BTreeSet<u32> = c.iter().copied().collect();
            with_g.insert(g1);
            let uni: BTreeSet<u32> = lower.union(&shifted).copied().collect();
            if with_g == uni {
                return Err(Error::Precondition(
                    "I ∪ {g'} equals I' ∪ (g' + I'')".into(),
                ));
            }
            match mode {
                J1Mode::Union => uni,
                J1Mode::SymmetricDifference => {
                    lower.symmetric_difference(&shifted).copied().collect()
                }
            }
        }
    };
    let mut pts: Vec<Vec<u32>> = c.iter().map(|x| vec![x + h, 0]).collect();
    pts.extend(j1.iter().map(|&x| vec![x, 1]));
    pts.push(vec![0, 2]);
    Support::from_coords(2, pts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// `Z_J` is empty exactly in the characteristics in `S`.
    A,
    /// `Z_J` is nonempty exactly in the characteristics in `S`.
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicWitness {
    pub j: Support,
    pub primes: Vec<u64>,
    pub case: Case,
    /// Univariate triple behind a case A support with `S` nonempty.
    pub triple: Option<WitnessTriple>,
}

impl CharacteristicWitness {
    /// Whether `Z_J` is expected empty in characteristic `p`.
    pub fn expects_empty(&self, p: u64) -> bool {
        let inside = self.primes.contains(&p);
        match self.case {
            Case::A => inside,
            Case::B => !inside,
        }
    }
}

/// The univariate triple obtained from the `N^3` triple by `6i + j + 3k`.
pub fn lemma47_triple(d: u32) -> Result<WitnessTriple> {
    transport_triple(&lemma44_sets(d)?, &lemma47_map(d)?, &[0], &[0])
}

pub fn build_characteristic_witness(primes: &[u64], case: Case) -> Result<CharacteristicWitness> {
    let mut s: Vec<u64> = primes.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&p) = s.iter().find(|&&p| !crate::field::is_prime(p)) {
        return Err(Error::NotPrime(p));
    }
    if s.is_empty() {
        if case == Case::B {
            return Err(Error::Precondition(
                "case B needs a nonempty set of primes".into(),
            ));
        }
        return Ok(CharacteristicWitness {
            j: Support::univariate(&[1, 2])?,
            primes: s,
            case,
            triple: None,
        });
    }
    let d64: u64 = s.iter().product();
    let d = u32::try_from(d64).map_err(|_| Error::ExponentOverflow)?;
    match case {
        Case::B => {
            let j = Support::from_coords(2, vec![vec![0, 0], vec![d, 0], vec![0, d]])?;
            Ok(CharacteristicWitness {
                j,
                primes: s,
                case,
                triple: None,
            })
        }
        Case::A => {
            let t = lemma47_triple(d)?;
            let g1 = t.ip.points().last().unwrap()[0];
            let j = lemma48_lift(
                &t.ip,
                &t.ipp,
                &t.i,
                LiftVariant::Overlapping(J1Mode::SymmetricDifference),
                g1,
            )?;
            Ok(CharacteristicWitness {
                j,
                primes: s,
                case,
                triple: Some(t),
            })
        }
    }
}

/// `(λP + Y)(X^{g'} Q + Y)` with `λ` cancelling the overlap at `X^{g'}`:
/// a reducible member of `V_J` for the symmetric-difference lift.
pub fn lift_reducible_member(p: &Polynomial, q: &Polynomial, g1: u32) -> Result<Polynomial> {
    let f = p.field();
    let gp = Exponent::new(vec![g1])?;
    let lambda = f.neg(f.div(q.coefficient(&Exponent::zero(1)), p.coefficient(&gp)));
    let y = Polynomial::monomial(f, Exponent::new(vec![0, 1])?, f.one());
    let up =
        |r: &Polynomial, shift: u32| r.map_exponents(2, |e| Exponent::new(vec![e[0] + shift, 0]));
    let left = up(&p.scale(lambda), 0)?.add(&y)?;
    let right = up(q, g1)?.add(&y)?;
    left.mul(&right)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Observation {
    ZStatus(ZStatus),
    /// `check_b` found no realizing pair over the field.
    BHolds,
    /// A member of `Z_J` was exhibited over the given extension degree.
    ReducibleMember {
        extension_degree: u32,
    },
    /// `check_b` found a realizing pair over the field itself.
    BFails,
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldVerdict {
    pub field: Field,
    pub expected_empty: bool,
    pub observation: Observation,
    pub consistent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub entries: Vec<FieldVerdict>,
}

impl WitnessReport {
    pub fn all_consistent(&self) -> bool {
        self.entries.iter().all(|e| e.consistent == Some(true))
    }

    pub fn any_inconclusive(&self) -> bool {
        self.entries.iter().any(|e| e.consistent.is_none())
    }
}

fn observe(w: &CharacteristicWitness, field: &Field, cfg: &OracleConfig) -> Result<Observation> {
    let p = field.characteristic();
    match (&w.case, &w.triple) {
        (Case::A, Some(t)) => {
            if w.primes.contains(&p) {
                Ok(if check_b(t, field, cfg.cap)? {
                    Observation::BHolds
                } else {
                    Observation::BFails
                })
            } else {
                let pair = lemma44_witness_pair(t.d, field)?;
                let ell = lemma47_map(t.d)?;
                let pu = transport_polynomial(&pair.p, &ell, &[0])?;
                let qu = transport_polynomial(&pair.q, &ell, &[0])?;
                let g1 = t.ip.points().last().unwrap()[0];
                let member = lift_reducible_member(&pu, &qu, g1)?;
                if member.support()? != w.j {
                    return Err(Error::Precondition("lifted witness pair misses J".into()));
                }
                Ok(Observation::ReducibleMember {
                    extension_degree: pair.p.field().degree() / field.degree(),
                })
            }
        }
        _ => Ok(Observation::ZStatus(z_status(&w.j, field, cfg)?)),
    }
}

/// Checks the witness field by field. Case B and the `S = ∅` support go
/// through `z_status`. Case A uses B on the univariate triple where it should
/// hold, and an explicit reducible member of `V_J` built from the witness
/// pair where it should fail.
pub fn verify_witness(
    w: &CharacteristicWitness,
    fields: &[Field],
    cfg: &OracleConfig,
) -> Result<WitnessReport> {
    let mut entries = Vec::new();
    for field in fields {
        let expected_empty = w.expects_empty(field.characteristic());
        let observation = match observe(w, field, cfg) {
            Ok(o) => o,
            Err(e) if e.is_inconclusive() => Observation::Inconclusive(e.to_string()),
            Err(e) => return Err(e),
        };
        let consistent = match &observation {
            Observation::ZStatus(ZStatus::Empty) => Some(expected_empty),
            Observation::ZStatus(ZStatus::All) | Observation::ReducibleMember { .. } => {
                Some(!expected_empty)
            }
            // a finite field only samples V_J, so Proper is informative only
            // when emptiness was expected
            Observation::ZStatus(ZStatus::Proper { .. }) => Some(!expected_empty),
            Observation::BHolds => Some(expected_empty),
            Observation::BFails => Some(!expected_empty),
            Observation::Inconclusive(_) => None,
        };
        entries.push(FieldVerdict {
            field: field.clone(),
            expected_empty,
            observation,
            consistent,
        });
    }
    Ok(WitnessReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn uni(v: &[u32]) -> Support {
        Support::univariate(v).unwrap()
    }

    #[test]
    fn sizes() {
        for d in 2..=6 {
            let t = lemma44_sets(d).unwrap();
            assert_eq!(
                (t.ip.len(), t.ipp.len(), t.i.len()),
                (6, 2 * d as usize + 2, 4 * d as usize + 7)
            );
            assert_eq!(lemma43_lift(&t).unwrap().len(), 6 * d as usize + 16);
        }
        assert!(lemma44_sets(1).is_err());
    }

    #[test]
    fn lemma43_dimension() {
        let j = lemma43_lift(&lemma44_sets(2).unwrap()).unwrap();
        assert_eq!(j.dim(), 5);
    }

    #[test]
    fn mixed_radix() {
        let l = mixed_radix_flatten(&[2, 3], &[0, 1]).unwrap();
        assert_eq!(l.apply(&Exponent::new(vec![1, 2]).unwrap()), vec![5]);
        assert_eq!(lemma47_map(2).unwrap().rows, vec![vec![6, 1, 3]]);
        assert!(mixed_radix_flatten(&[1, 3], &[0, 1]).is_err());
        assert!(mixed_radix_flatten(&[2, 3], &[0, 0]).is_err());
        let mut imgs = BTreeSet::new();
        for a in 0..2 {
            for b in 0..3 {
                imgs.insert(l.apply(&Exponent::new(vec![a, b]).unwrap())[0]);
            }
        }
        assert_eq!(imgs.len(), 6);
    }

    #[test]
    fn transported_sets() {
        let t = lemma47_triple(2).unwrap();
        assert_eq!(t.ip, uni(&[0, 1, 3, 4, 6, 7]));
        assert_eq!(t.ipp, uni(&[0, 1, 6, 7, 12, 13]));
        let sum_of_coords = LinearMap {
            rows: vec![vec![1, 1, 1]],
        };
        let err =
            transport_triple(&lemma44_sets(2).unwrap(), &sum_of_coords, &[0], &[0]).unwrap_err();
        assert!(matches!(err, Error::NotInjective(_, _)));
    }

    #[test]
    fn transported_i_matches_closed_form() {
        for d in 2..=6u32 {
            let t = lemma47_triple(d).unwrap();
            let mut v: BTreeSet<u32> = [0, 2, 6 * d + 6, 6 * d + 8].into();
            v.extend((0..=d + 1).map(|i| 6 * i + 1));
            v.extend((0..=d).map(|i| 6 * i + 3));
            v.extend((1..d).map(|i| 6 * i + 4));
            v.extend((0..=d).map(|i| 6 * i + 5));
            assert_eq!(t.i, uni(&v.into_iter().collect::<Vec<_>>()));
        }
    }

    #[test]
    fn lift_sizes() {
        let w = build_characteristic_witness(&[2], Case::A).unwrap();
        assert_eq!((w.j.len(), w.j.total_degree()), (26, 27));
        for d in 2..=6u32 {
            let t = lemma47_triple(d).unwrap();
            let j = lemma48_lift(
                &t.ip,
                &t.ipp,
                &t.i,
                LiftVariant::Overlapping(J1Mode::SymmetricDifference),
                7,
            )
            .unwrap();
            assert_eq!(j.len(), 6 * d as usize + 14);
            assert_eq!(j.total_degree(), 6 * d as u64 + 15);
            let u = lemma48_lift(
                &t.ip,
                &t.ipp,
                &t.i,
                LiftVariant::Overlapping(J1Mode::Union),
                7,
            )
            .unwrap();
            assert_eq!(u.len(), 6 * d as usize + 15);
            assert!(lemma48_lift(&t.ip, &t.ipp, &t.i, LiftVariant::Separated, 7).is_err());
            assert_eq!(
                lemma48_lift(&t.ip, &t.ipp, &t.i, LiftVariant::Separated, 8)
                    .unwrap()
                    .len(),
                6 * d as usize + 16
            );
        }
    }

    #[test]
    fn witness_pair_f5() {
        let f5 = make_field(5, 1).unwrap();
        let w = lemma44_witness_pair(2, &f5).unwrap();
        assert_eq!((w.zeta, w.a), (f5.from_int(4), f5.from_int(2)));
        let t = lemma44_sets(2).unwrap();
        assert_eq!(w.p.mul(&w.q).unwrap().support().unwrap(), t.i);
        assert!(lemma44_witness_pair(2, &make_field(2, 1).unwrap()).is_err());
    }

    #[test]
    fn witness_pair_needs_f9() {
        let w = lemma44_witness_pair(2, &make_field(3, 1).unwrap()).unwrap();
        assert_eq!(w.p.field().size(), 9);
        assert!(!w.p.field().in_subfield(w.a, 1));
    }

    #[test]
    fn check_b_small() {
        let t = lemma44_sets(2).unwrap();
        let f2 = make_field(2, 1).unwrap();
        assert!(check_b(&t, &f2, 1 << 20).unwrap());
        assert!(check_b_bruteforce(&t, &f2, 1 << 20).unwrap());
        assert!(!check_b(&t, &make_field(5, 1).unwrap(), 1 << 20).unwrap());
    }

    #[test]
    fn case_b_builder() {
        let w = build_characteristic_witness(&[3, 2], Case::B).unwrap();
        assert_eq!(
            w.j,
            Support::from_coords(2, vec![vec![0, 0], vec![6, 0], vec![0, 6]]).unwrap()
        );
        assert_eq!(
            build_characteristic_witness(&[], Case::A).unwrap().j,
            uni(&[1, 2])
        );
        assert!(build_characteristic_witness(&[4], Case::B).is_err());
    }
}
