//! Dense univariate polynomials and root finding by exhaustive scan.

use super::{Field, FieldElement};
use crate::error::{Error, Result};

/// Dense polynomial, lowest coefficient first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        UniPoly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::new(&self.field, vec![]);
        }
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(f, out)
    }

    pub fn scale(&self, c: FieldElement) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Quotient and remainder; panics when dividing by zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = f.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::new(f, vec![]), self.clone());
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], lead_inv);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, b));
            }
        }
        rem.truncate(dd);
        (UniPoly::new(f, quot), UniPoly::new(f, rem))
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Divides by `(x - r)` assuming `r` is a root.
    fn deflate(&self, r: FieldElement) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len();
        let mut out = vec![FieldElement::ZERO; n - 1];
        let mut carry = FieldElement::ZERO;
        for i in (1..n).rev() {
            carry = f.add(self.coeffs[i], f.mul(carry, r));
            out[i - 1] = carry;
        }
        UniPoly::new(f, out)
    }

    pub fn embed(&self, target: &Field) -> Result<UniPoly> {
        let e = self.field.embedding(target)?;
        Ok(UniPoly::new(
            target,
            self.coeffs.iter().map(|&c| e.apply(c)).collect(),
        ))
    }
}

/// A root together with the smallest extension of the base field that holds it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub field: Field,
    pub value: FieldElement,
    pub multiplicity: u32,
    /// Degree of `field` over the polynomial's base field.
    pub extension_degree: u32,
}

/// All roots in `F_{q^m}` for `m = 1..=max_ext`, each once, in its smallest
/// extension. Multiplicities come from repeated deflation.
pub fn univariate_roots(f: &UniPoly, max_ext: u32) -> Result<Vec<Root>> {
    let deg = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(d) => d,
    };
    let base = f.field();
    let mut roots = Vec::new();
    let mut found = 0usize;
    for m in 1..=max_ext {
        if found == deg {
            break;
        }
        // A new root of degree exactly m needs an irreducible factor of degree m.
        if m as usize > deg - found {
            break;
        }
        let ext = base.extension(m)?;
        let g = f.embed(&ext)?;
        let kb = base.degree();
        for x in ext.elements() {
            if (1..m).any(|d| m % d == 0 && ext.in_subfield(x, kb * d)) {
                continue;
            }
            if !g.eval(x).is_zero() {
                continue;
            }
            let mut h = g.clone();
            let mut mult = 0u32;
            while h.degree().unwrap_or(0) > 0 && h.eval(x).is_zero() {
                h = h.deflate(x);
                mult += 1;
            }
            found += mult as usize;
            roots.push(Root {
                field: ext.clone(),
                value: x,
                multiplicity: mult,
                extension_degree: m,
            });
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn x2_plus_1_over_f3() {
        let f3 = make_field(3, 1).unwrap();
        let f = UniPoly::from_ints(&f3, &[1, 0, 1]);
        let roots = univariate_roots(&f, 2).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(r.field.size(), 9);
            assert_eq!(r.multiplicity, 1);
            let sq = r.field.mul(r.value, r.value);
            assert_eq!(sq, r.field.from_int(-1));
        }
        assert!(univariate_roots(&f, 1).unwrap().is_empty());
    }

    #[test]
    fn x2_x_1_over_f2() {
        let f2 = make_field(2, 1).unwrap();
        let f = UniPoly::from_ints(&f2, &[1, 1, 1]);
        let roots = univariate_roots(&f, 2).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(r.extension_degree, 2);
            assert!(!r.field.in_subfield(r.value, 1));
            assert_eq!(r.multiplicity, 1);
        }
    }

    #[test]
    fn double_root_at_zero() {
        for (p, k) in [(2, 1), (5, 1), (3, 2)] {
            let fld = make_field(p, k).unwrap();
            let f = UniPoly::from_ints(&fld, &[0, 0, 1]);
            let roots = univariate_roots(&f, 3).unwrap();
            assert_eq!(roots.len(), 1);
            assert_eq!(roots[0].value, FieldElement::ZERO);
            assert_eq!(roots[0].multiplicity, 2);
        }
    }

    #[test]
    fn zero_polynomial() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(
            univariate_roots(&UniPoly::new(&f, vec![]), 2).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn multiplicity_in_char_p() {
        // (x+1)^3 = x^3 + 1 over F_3
        let f3 = make_field(3, 1).unwrap();
        let f = UniPoly::from_ints(&f3, &[1, 0, 0, 1]);
        let roots = univariate_roots(&f, 3).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].value, f3.from_int(-1));
        assert_eq!(roots[0].multiplicity, 3);
    }

    #[test]
    fn div_rem_identity() {
        let f5 = make_field(5, 1).unwrap();
        let a = UniPoly::from_ints(&f5, &[3, 1, 4, 1, 2]);
        let b = UniPoly::from_ints(&f5, &[1, 0, 3]);
        let (q, r) = a.div_rem(&b);
        let back = q.mul(&b);
        let sum: Vec<_> = (0..5)
            .map(|i| {
                let x = back.coeffs().get(i).copied().unwrap_or_default();
                let y = r.coeffs().get(i).copied().unwrap_or_default();
                f5.add(x, y)
            })
            .collect();
        assert_eq!(UniPoly::new(&f5, sum), a);
        assert!(r.degree().is_none_or(|d| d < 2));
    }
}
