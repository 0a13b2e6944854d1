//! Sparse multivariate polynomials over a [`Field`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::support::{Exponent, Support};

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    n: usize,
    terms: BTreeMap<Exponent, FieldElement>,
}

impl Polynomial {
    pub fn zero(field: &Field, n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        Polynomial {
            field: field.clone(),
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Sums the given terms; repeated exponents accumulate and zeros drop out.
    pub fn from_terms<I>(field: &Field, n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, FieldElement)>,
    {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut p = Polynomial::zero(field, n);
        for (e, c) in terms {
            if e.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: e.dim(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience constructor from integer exponents and prime-field coefficients.
    pub fn from_int_terms(field: &Field, n: usize, terms: &[(&[u32], i64)]) -> Result<Self> {
        let ts = terms
            .iter()
            .map(|(e, c)| Ok((Exponent::new(e.to_vec())?, field.from_int(*c))))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(field, n, ts)
    }

    pub fn monomial(field: &Field, exp: Exponent, coeff: FieldElement) -> Self {
        let n = exp.dim();
        let mut p = Polynomial::zero(field, n);
        p.add_term(exp, coeff);
        p
    }

    pub fn constant(field: &Field, n: usize, c: FieldElement) -> Self {
        Polynomial::monomial(field, Exponent::zero(n), c)
    }

    fn add_term(&mut self, e: Exponent, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        match self.terms.get_mut(&e) {
            Some(slot) => {
                let s = f.add(*slot, c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, FieldElement)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, e: &Exponent) -> FieldElement {
        self.terms.get(e).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn support(&self) -> Result<Support> {
        if self.is_zero() {
            return Err(Error::EmptySupport);
        }
        Support::new(self.n, self.terms.keys().cloned().collect())
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Exponent::degree).max().unwrap_or(0)
    }

    /// Nonzero and not a constant.
    pub fn is_nonconstant(&self) -> bool {
        self.terms.keys().any(|e| !e.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lex-smallest term.
    pub fn lex_min_term(&self) -> Option<(&Exponent, FieldElement)> {
        self.terms.iter().next().map(|(e, &c)| (e, c))
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut out = Polynomial::zero(f, self.n);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_term(a.checked_add(b)?, f.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field.neg(FieldElement::ONE))
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        let f = &self.field;
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms
                .iter()
                .map(|(e, &a)| (e.clone(), f.mul(a, c)))
                .collect()
        };
        Polynomial {
            field: f.clone(),
            n: self.n,
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::constant(&self.field, self.n, FieldElement::ONE);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Divides every exponent by `m`; `None` if some exponent is not divisible.
    pub fn shift_down(&self, m: &Exponent) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (e, &c) in &self.terms {
            terms.insert(e.checked_sub(m)?, c);
        }
        Some(Polynomial {
            field: self.field.clone(),
            n: self.n,
            terms,
        })
    }

    /// Applies `f` to every exponent; the map must be injective on the support.
    pub fn map_exponents<F>(&self, n: usize, mut f: F) -> Result<Polynomial>
    where
        F: FnMut(&Exponent) -> Result<Exponent>,
    {
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| Ok((f(e)?, c)))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(&self.field, n, terms)
    }

    pub fn embed(&self, target: &Field) -> Result<Polynomial> {
        let e = self.field.embedding(target)?;
        let terms = self
            .terms
            .iter()
            .map(|(x, &c)| (x.clone(), e.apply(c)))
            .collect();
        Ok(Polynomial {
            field: target.clone(),
            n: self.n,
            terms,
        })
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over F_{}", self, self.field)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(t, &a)| {
                    if a == 1 {
                        format!("X{}", t + 1)
                    } else {
                        format!("X{}^{}", t + 1, a)
                    }
                })
                .collect();
            let coeff = self.field.format(c);
            match (mono.is_empty(), c == FieldElement::ONE) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{}*{}", coeff, mono.join("*"))?,
            }
        }
        Ok(())
    }
}
