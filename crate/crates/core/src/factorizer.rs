//! Explicit factorizations for polynomials whose support is good.

use crate::classifier::{classify, Certificate, Classification};
use crate::error::{Error, Result};
use crate::field::{univariate_roots, FieldElement, UniPoly};
use crate::poly::Polynomial;
use crate::support::{segment_lattice_points, Exponent};

/// `left * right` equals the input embedded into `left.field()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub left: Polynomial,
    pub right: Polynomial,
    /// Degree of the factors' field over the input's field.
    pub extension_degree: u32,
}

impl Factorization {
    /// Scales so the left factor has coefficient 1 at its lex-smallest exponent.
    pub fn normalized(left: Polynomial, right: Polynomial, extension_degree: u32) -> Factorization {
        let f = left.field().clone();
        let c = left
            .lex_min_term()
            .map(|(_, c)| c)
            .unwrap_or(FieldElement::ONE);
        let inv = f.inv(c);
        Factorization {
            left: left.scale(inv),
            right: right.scale(c),
            extension_degree,
        }
    }

    /// Exact product check against `p`, plus nonconstancy of both factors.
    pub fn verify(&self, p: &Polynomial) -> Result<bool> {
        let target = p.embed(self.left.field())?;
        Ok(self.left.is_nonconstant()
            && self.right.is_nonconstant()
            && self.left.mul(&self.right)? == target)
    }
}

fn checked(p: &Polynomial, f: Factorization) -> Result<Factorization> {
    if !f.verify(p)? {
        return Err(Error::Precondition(
            "factor product does not reproduce the input".into(),
        ));
    }
    Ok(f)
}

/// `(X_t, P / X_t)` with `t = var + 1`.
pub fn factor_cond_i(p: &Polynomial, var: usize) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.dim();
    if var >= n {
        return Err(Error::Precondition(format!(
            "variable index {var} out of range"
        )));
    }
    let xt = Exponent::unit(n, var);
    let right = p
        .shift_down(&xt)
        .ok_or_else(|| Error::Precondition(format!("X{} does not divide every term", var + 1)))?;
    if !right.is_nonconstant() {
        return Err(Error::Precondition(format!(
            "polynomial is a multiple of X{} alone",
            var + 1
        )));
    }
    let left = Polynomial::monomial(p.field(), xt, FieldElement::ONE);
    checked(p, Factorization::normalized(left, right, 1))
}

/// Splits off the linear form `X^{j/d} - r X^{i/d}` for a root `r` of the
/// dehomogenized binary form.
pub fn factor_cond_ii(
    p: &Polynomial,
    i: &Exponent,
    j: &Exponent,
    d: u32,
    max_ext: u32,
) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if d < 2 {
        return Err(Error::Precondition(
            "segment degree must be at least 2".into(),
        ));
    }
    let seg = segment_lattice_points(i, j)?;
    if seg.len() != d as usize + 1 {
        return Err(Error::Precondition(format!(
            "segment [{i}, {j}] has {} lattice points, not d+1",
            seg.len()
        )));
    }
    let (Some(ui), Some(uj)) = (i.exact_div(d), j.exact_div(d)) else {
        return Err(Error::Precondition(format!(
            "{d} does not divide the endpoints"
        )));
    };
    let field = p.field();
    if p.coefficient(i).is_zero() || p.coefficient(j).is_zero() {
        return Err(Error::Precondition(
            "both segment endpoints must be in the support".into(),
        ));
    }
    if p.terms().any(|(e, _)| !seg.contains(e)) {
        return Err(Error::Precondition(
            "support is not contained in the segment".into(),
        ));
    }
    // P = sum_a c_a u^(d-a) w^a with u = X^{i/d}, w = X^{j/d}
    let coeffs: Vec<FieldElement> = seg.iter().map(|e| p.coefficient(e)).collect();
    let f = UniPoly::new(field, coeffs);
    let roots = univariate_roots(&f, max_ext)?;
    let root = roots.first().ok_or(Error::RootsNotFound { max_ext })?;
    let k = &root.field;
    let r = root.value;
    let emb = field.embedding(k)?;
    let lifted = UniPoly::new(k, f.coeffs().iter().map(|&c| emb.apply(c)).collect());
    let lin = UniPoly::new(k, vec![k.neg(r), FieldElement::ONE]);
    let (g, rem) = lifted.div_rem(&lin);
    debug_assert!(rem.is_zero());
    let n = p.dim();
    let mono = |a: u32, b: u32| -> Result<Exponent> {
        ui.checked_scale(a)?.checked_add(&uj.checked_scale(b)?)
    };
    let left = Polynomial::from_terms(
        k,
        n,
        [(mono(0, 1)?, FieldElement::ONE), (mono(1, 0)?, k.neg(r))],
    )?;
    let gd = d - 1;
    let right_terms = g
        .coeffs()
        .iter()
        .enumerate()
        .map(|(b, &c)| Ok((mono(gd - b as u32, b as u32)?, c)))
        .collect::<Result<Vec<_>>>()?;
    let right = Polynomial::from_terms(k, n, right_terms)?;
    checked(
        p,
        Factorization::normalized(left, right, root.extension_degree),
    )
}

/// `(Q, Q^(p-1))` with `Q^p = P`.
pub fn factor_cond_iii(p: &Polynomial, prime: u64) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = p.field();
    if field.characteristic() != prime {
        return Err(Error::CharacteristicNotCovered(field.characteristic()));
    }
    if !p.is_nonconstant() {
        return Err(Error::Precondition("support is {0}".into()));
    }
    let pm = u32::try_from(prime).map_err(|_| Error::Precondition("prime too large".into()))?;
    let terms = p
        .terms()
        .map(|(e, c)| {
            let e = e
                .exact_div(pm)
                .ok_or_else(|| Error::Precondition(format!("{e} is not divisible by {prime}")))?;
            Ok((e, field.frobenius_inverse(c)))
        })
        .collect::<Result<Vec<_>>>()?;
    let q = Polynomial::from_terms(field, p.dim(), terms)?;
    let rest = q.pow(pm - 1)?;
    checked(p, Factorization::normalized(q, rest, 1))
}

/// Dispatches on the certificate; the product is verified before returning.
pub fn factor_by_certificate(p: &Polynomial, c: &Classification) -> Result<Factorization> {
    match &c.certificate {
        Certificate::CondI { var } => factor_cond_i(p, *var),
        Certificate::CondII { i, j, d } => factor_cond_ii(p, i, j, *d, *d),
        Certificate::CondIII { primes } => {
            let ch = p.field().characteristic();
            if !primes.contains(&ch) {
                return Err(Error::CharacteristicNotCovered(ch));
            }
            factor_cond_iii(p, ch)
        }
        Certificate::None => Err(Error::NeverGood),
    }
}

/// Classifies the support of `p`, then factors by the certificate.
pub fn factor(p: &Polynomial) -> Result<(Classification, Factorization)> {
    let c = classify(&p.support()?);
    let f = factor_by_certificate(p, &c)?;
    Ok((c, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::support::Support;

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec()).unwrap()
    }

    #[test]
    fn cond_i() {
        let f3 = make_field(3, 1).unwrap();
        let p = Polynomial::from_int_terms(&f3, 2, &[(&[2, 0], 1), (&[1, 1], 1)]).unwrap();
        let fac = factor_cond_i(&p, 0).unwrap();
        assert_eq!(
            fac.left,
            Polynomial::from_int_terms(&f3, 2, &[(&[1, 0], 1)]).unwrap()
        );
        assert_eq!(
            fac.right,
            Polynomial::from_int_terms(&f3, 2, &[(&[1, 0], 1), (&[0, 1], 1)]).unwrap()
        );
        let ax = Polynomial::from_int_terms(&f3, 1, &[(&[1], 2)]).unwrap();
        assert!(matches!(factor_cond_i(&ax, 0), Err(Error::Precondition(_))));
        let x3 = Polynomial::from_int_terms(&f3, 1, &[(&[3], 1)]).unwrap();
        let fac = factor_cond_i(&x3, 0).unwrap();
        assert_eq!(
            fac.right,
            Polynomial::from_int_terms(&f3, 1, &[(&[2], 1)]).unwrap()
        );
    }

    #[test]
    fn cond_ii_binary_form() {
        let f5 = make_field(5, 1).unwrap();
        let p = Polynomial::from_int_terms(&f5, 2, &[(&[4, 0], 1), (&[0, 2], -1)]).unwrap();
        let fac = factor_cond_ii(&p, &e(&[4, 0]), &e(&[0, 2]), 2, 2).unwrap();
        assert_eq!(fac.extension_degree, 1);
        assert!(fac.verify(&p).unwrap());
        assert_eq!(fac.left.len(), 2);
        assert_eq!(fac.right.len(), 2);
        let sup = fac.left.support().unwrap();
        assert_eq!(
            sup,
            Support::from_coords(2, [vec![0, 1], vec![2, 0]]).unwrap()
        );
    }

    #[test]
    fn cond_ii_needs_extension() {
        let f3 = make_field(3, 1).unwrap();
        let p = Polynomial::from_int_terms(&f3, 1, &[(&[0], 1), (&[2], 1)]).unwrap();
        let fac = factor_cond_ii(&p, &e(&[0]), &e(&[2]), 2, 2).unwrap();
        assert_eq!(fac.extension_degree, 2);
        assert_eq!(fac.left.field().size(), 9);
        assert!(fac.verify(&p).unwrap());
        assert_eq!(
            factor_cond_ii(&p, &e(&[0]), &e(&[2]), 2, 1).unwrap_err(),
            Error::RootsNotFound { max_ext: 1 }
        );
    }

    #[test]
    fn cond_ii_rejects_monomial() {
        let f3 = make_field(3, 1).unwrap();
        let p = Polynomial::from_int_terms(&f3, 1, &[(&[2], 1)]).unwrap();
        assert!(matches!(
            factor_cond_ii(&p, &e(&[0]), &e(&[2]), 2, 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cond_iii() {
        let f2 = make_field(2, 1).unwrap();
        let p = Polynomial::from_int_terms(&f2, 2, &[(&[0, 0], 1), (&[2, 0], 1), (&[0, 2], 1)])
            .unwrap();
        let fac = factor_cond_iii(&p, 2).unwrap();
        let q = Polynomial::from_int_terms(&f2, 2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)])
            .unwrap();
        assert_eq!((fac.left.clone(), fac.right.clone()), (q.clone(), q));
        let f4 = make_field(2, 2).unwrap();
        let g = f4.generator();
        let gx2 = Polynomial::monomial(&f4, e(&[2]), g);
        let fac = factor_cond_iii(&gx2, 2).unwrap();
        assert!(fac.verify(&gx2).unwrap());
        // before normalization Q = (g+1) X; after it the left factor is X
        assert_eq!(
            fac.left,
            Polynomial::monomial(&f4, e(&[1]), FieldElement::ONE)
        );
        let f3 = make_field(3, 1).unwrap();
        let p = Polynomial::from_int_terms(&f3, 1, &[(&[0], 1), (&[3], 1)]).unwrap();
        let fac = factor_cond_iii(&p, 3).unwrap();
        let q = Polynomial::from_int_terms(&f3, 1, &[(&[0], 1), (&[1], 1)]).unwrap();
        assert_eq!(fac.left, q);
        assert_eq!(fac.right, q.mul(&q).unwrap());
    }

    #[test]
    fn cond_iii_frobenius_root_of_generator() {
        let f4 = make_field(2, 2).unwrap();
        let g = f4.generator();
        let gx2 = Polynomial::monomial(&f4, e(&[2]), g);
        let fac = factor_cond_iii(&gx2, 2).unwrap();
        // the scalar (g+1)^2 = g moves into the right factor
        assert_eq!(fac.right.coefficient(&e(&[1])), g);
    }

    #[test]
    fn dispatch() {
        let f3 = make_field(3, 1).unwrap();
        let p = Polynomial::from_int_terms(&f3, 1, &[(&[1], 1), (&[2], 1)]).unwrap();
        let (c, fac) = factor(&p).unwrap();
        assert_eq!(c.certificate, Certificate::CondI { var: 0 });
        assert_eq!(
            fac.right,
            Polynomial::from_int_terms(&f3, 1, &[(&[0], 1), (&[1], 1)]).unwrap()
        );
        let f5 = make_field(5, 1).unwrap();
        let tri = Polynomial::from_int_terms(&f5, 2, &[(&[0, 0], 1), (&[6, 0], 1), (&[0, 6], 1)])
            .unwrap();
        assert_eq!(
            factor(&tri).unwrap_err(),
            Error::CharacteristicNotCovered(5)
        );
        let quad = Polynomial::from_int_terms(&f3, 1, &[(&[0], 1), (&[1], 1), (&[2], 1)]).unwrap();
        let (_, fac) = factor(&quad).unwrap();
        assert_eq!(fac.extension_degree, 1);
        // 1 + X + X^2 = (X + 2)^2 over F_3
        assert_eq!(
            fac.left,
            Polynomial::from_int_terms(&f3, 1, &[(&[0], 1), (&[1], 2)]).unwrap()
        );
        assert_eq!(fac.right, fac.left);
        assert!(fac.verify(&quad).unwrap());
        let lin = Polynomial::from_int_terms(&f3, 2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)])
            .unwrap();
        assert_eq!(factor(&lin).unwrap_err(), Error::NeverGood);
    }
}
