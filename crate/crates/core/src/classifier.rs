//! Deciding whether a support is good, with a certificate naming the reason.
//!
//! `I` is good over every field when some variable divides all monomials
//! (and `I` is not just that variable), or when `I` sits on a lattice segment
//! `[i, j]` with `i_t j_t = 0` for all `t` and the coordinates of `i, j` share a
//! factor `d > 1`. Otherwise it is good exactly in the characteristics `p`
//! with `I ⊂ pN^n`, `I != {0}`.

use crate::field::prime_factors;
use crate::support::{segment_lattice_points, Exponent, Support};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    GoodAllFields,
    GoodExactlyInChars(Vec<u64>),
    NeverGood,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `X_{var+1}` divides every member.
    CondI {
        var: usize,
    },
    /// Members are binary forms of degree `d` in `X^{i/d}`, `X^{j/d}`.
    CondII {
        i: Exponent,
        j: Exponent,
        d: u32,
    },
    /// Members are `p`-th powers in characteristic `p`.
    CondIII {
        primes: Vec<u64>,
    },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub certificate: Certificate,
}

impl Classification {
    pub fn is_good_in_char(&self, p: u64) -> bool {
        match &self.verdict {
            Verdict::GoodAllFields => true,
            Verdict::GoodExactlyInChars(s) => s.contains(&p),
            Verdict::NeverGood => false,
        }
    }
}

/// Smallest variable index (from 0) with every point having that coordinate
/// at least 1, excluding `I = {e_t}`.
pub fn check_condition_i(s: &Support) -> Option<usize> {
    let n = s.dim();
    (0..n).find(|&t| {
        s.iter().all(|p| p[t] >= 1) && !(s.is_singleton() && s.points()[0] == Exponent::unit(n, t))
    })
}

/// Colexicographic comparison: last coordinate first.
fn colex_less(a: &Exponent, b: &Exponent) -> bool {
    a.coords().iter().rev().lt(b.coords().iter().rev())
}

/// Segment endpoints `(i, j)` and `d` when the support is a good segment.
pub fn check_condition_ii(s: &Support) -> Option<(Exponent, Exponent, u32)> {
    if s.is_singleton() {
        return None;
    }
    let a = s.points()[0].to_i64();
    let b = s.points()[1].to_i64();
    let dir: Vec<i64> = b.iter().zip(&a).map(|(x, y)| x - y).collect();
    let n = s.dim();
    let mut lo = (i64::MAX, 0usize);
    let mut hi = (i64::MIN, 0usize);
    for (k, p) in s.iter().enumerate() {
        let v: Vec<i64> = p.to_i64().iter().zip(&a).map(|(x, y)| x - y).collect();
        for x in 0..n {
            for y in x + 1..n {
                if v[x] * dir[y] != v[y] * dir[x] {
                    return None;
                }
            }
        }
        let t: i64 = v.iter().zip(&dir).map(|(x, y)| x * y).sum();
        if t < lo.0 {
            lo = (t, k);
        }
        if t > hi.0 {
            hi = (t, k);
        }
    }
    let (p, q) = (s.points()[lo.1].clone(), s.points()[hi.1].clone());
    let (i, j) = if colex_less(&p, &q) { (p, q) } else { (q, p) };
    if (0..n).any(|t| i[t] != 0 && j[t] != 0) {
        return None;
    }
    let d = num_integer::gcd(i.content(), j.content());
    if d <= 1 {
        return None;
    }
    let seg = segment_lattice_points(&i, &j).ok()?;
    if !s.iter().all(|x| seg.contains(x)) {
        return None;
    }
    Some((i, j, d))
}

/// Primes `p` with `I ⊂ pN^n`; empty for `I = {0}`.
pub fn check_condition_iii(s: &Support) -> Vec<u64> {
    let g = s.content();
    if g <= 1 {
        return Vec::new();
    }
    prime_factors(g as u64)
}

pub fn classify(s: &Support) -> Classification {
    if let Some(var) = check_condition_i(s) {
        return Classification {
            verdict: Verdict::GoodAllFields,
            certificate: Certificate::CondI { var },
        };
    }
    if let Some((i, j, d)) = check_condition_ii(s) {
        return Classification {
            verdict: Verdict::GoodAllFields,
            certificate: Certificate::CondII { i, j, d },
        };
    }
    let primes = check_condition_iii(s);
    if !primes.is_empty() {
        return Classification {
            verdict: Verdict::GoodExactlyInChars(primes.clone()),
            certificate: Certificate::CondIII { primes },
        };
    }
    Classification {
        verdict: Verdict::NeverGood,
        certificate: Certificate::None,
    }
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
    fn condition_i() {
        assert_eq!(
            check_condition_i(&Support::univariate(&[1, 2]).unwrap()),
            Some(0)
        );
        assert_eq!(check_condition_i(&s(2, &[&[1, 0]])), None);
        assert_eq!(check_condition_i(&s(2, &[&[0, 0], &[1, 1]])), None);
        assert_eq!(check_condition_i(&s(2, &[&[0, 2], &[1, 1]])), Some(1));
        assert_eq!(check_condition_i(&s(2, &[&[1, 1]])), Some(0));
        assert_eq!(check_condition_i(&s(2, &[&[0, 2]])), Some(1));
    }

    #[test]
    fn condition_ii() {
        assert_eq!(
            check_condition_ii(&s(2, &[&[4, 0], &[2, 1], &[0, 2]])),
            Some((e(&[4, 0]), e(&[0, 2]), 2))
        );
        assert_eq!(
            check_condition_ii(&Support::univariate(&[0, 1, 2]).unwrap()),
            Some((e(&[0]), e(&[2]), 2))
        );
        assert_eq!(check_condition_ii(&s(2, &[&[2, 0], &[0, 3]])), None);
        assert_eq!(check_condition_ii(&s(2, &[&[2, 2]])), None);
        assert_eq!(
            check_condition_ii(&s(2, &[&[0, 0], &[2, 2]])),
            Some((e(&[0, 0]), e(&[2, 2]), 2))
        );
        // collinear but endpoints share a variable
        assert_eq!(check_condition_ii(&s(2, &[&[2, 1], &[4, 2]])), None);
        // not collinear
        assert_eq!(
            check_condition_ii(&s(2, &[&[0, 0], &[2, 0], &[0, 2]])),
            None
        );
    }

    #[test]
    fn condition_iii() {
        assert_eq!(
            check_condition_iii(&s(2, &[&[0, 0], &[6, 0], &[0, 6]])),
            vec![2, 3]
        );
        assert_eq!(
            check_condition_iii(&Support::univariate(&[0]).unwrap()),
            Vec::<u64>::new()
        );
        assert_eq!(
            check_condition_iii(&s(2, &[&[1, 0], &[0, 1]])),
            Vec::<u64>::new()
        );
    }

    #[test]
    fn classify_examples() {
        let c = classify(&Support::univariate(&[1, 2]).unwrap());
        assert_eq!(c.verdict, Verdict::GoodAllFields);
        assert_eq!(c.certificate, Certificate::CondI { var: 0 });
        let c = classify(&s(2, &[&[0, 0], &[6, 0], &[0, 6]]));
        assert_eq!(c.verdict, Verdict::GoodExactlyInChars(vec![2, 3]));
        assert!(c.is_good_in_char(3) && !c.is_good_in_char(5));
        let c = classify(&s(2, &[&[0, 0], &[1, 0], &[0, 1]]));
        assert_eq!(c.verdict, Verdict::NeverGood);
        assert_eq!(c.certificate, Certificate::None);
    }

    #[test]
    fn preference_order() {
        // {(2,0),(4,0)}: condition (i) and (iii) both hold; (i) wins
        let c = classify(&s(2, &[&[2, 0], &[4, 0]]));
        assert_eq!(c.certificate, Certificate::CondI { var: 0 });
        // {0, 2}: (ii) and (iii); (ii) wins
        let c = classify(&Support::univariate(&[0, 2]).unwrap());
        assert!(matches!(c.certificate, Certificate::CondII { .. }));
    }

    #[test]
    fn translation_law() {
        let c = classify(&s(2, &[&[1, 2], &[2, 1], &[3, 3]]));
        assert_eq!(c.certificate, Certificate::CondI { var: 0 });
        assert_eq!(classify(&s(2, &[&[0, 0]])).verdict, Verdict::NeverGood);
    }
}
