//! Finite fields `F_{p^k}` built as `F_p[x]/(f)` with log/antilog tables.
//!
//! An element is its index in base `p`: coordinate `c_i` of `x^i` is the
//! `i`-th base-`p` digit, so index 0 is zero, index 1 is one and for `k = 1`
//! the index is the residue itself.
//!
//! Moduli are primitive and chosen compatibly along the subfield lattice, so
//! `x` generates the multiplicative group and `F_{p^d} -> F_{p^k}` sends the
//! generator to `g^((p^k-1)/(p^d-1))`.

mod linalg;
mod univariate;

pub use linalg::nullspace;
pub use univariate::{univariate_roots, Root, UniPoly};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest field we build tables for.
pub const MAX_FIELD_SIZE: u64 = 1 << 21;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

/// Shared handle to a field context. Two handles are equal iff they have the
/// same `(p, k)`; construction is deterministic so that identifies the field.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({}^{})", self.0.p, self.0.k)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.0.p, self.0.k)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), Field>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), Field>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds (or fetches the cached) field `F_{p^k}`.
pub fn make_field(p: u64, k: u32) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidDegree);
    }
    let too_large = Error::FieldTooLarge { p, k: k as u64 };
    let q = (p as u128).checked_pow(k).ok_or(too_large.clone())?;
    if q > MAX_FIELD_SIZE as u128 {
        return Err(too_large);
    }
    let key = (p as u32, k);
    if let Some(f) = registry().lock().unwrap().get(&key) {
        return Ok(f.clone());
    }
    // Subfields first; their moduli constrain ours.
    let mut sub = Vec::new();
    for d in 1..k {
        if k.is_multiple_of(d) {
            sub.push((d, make_field(p, d)?));
        }
    }
    let ctx = build_ctx(p as u32, k, &sub);
    let field = Field(Arc::new(ctx));
    let mut reg = registry().lock().unwrap();
    Ok(reg.entry(key).or_insert(field).clone())
}

/// Parses `"p^k"` or a bare prime `"p"`.
pub fn parse_field(spec: &str) -> Result<Field> {
    let bad = || Error::input("field", format!("expected p^k, got {spec:?}"));
    let (p, k) = match spec.trim().split_once('^') {
        Some((p, k)) => (
            p.trim().parse::<u64>().map_err(|_| bad())?,
            k.trim().parse::<u32>().map_err(|_| bad())?,
        ),
        None => (spec.trim().parse::<u64>().map_err(|_| bad())?, 1),
    };
    make_field(p, k)
}

// Slow arithmetic in F_p[x]/(f) used only while choosing the modulus.
struct SlowRing<'a> {
    p: u64,
    f: &'a [u64],
}

impl SlowRing<'_> {
    fn k(&self) -> usize {
        self.f.len() - 1
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let k = self.k();
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for t in 0..k {
                let sub = c * self.f[t] % self.p;
                let slot = &mut prod[deg - k + t];
                *slot = (*slot + self.p - sub) % self.p;
            }
        }
        prod.truncate(k);
        prod
    }

    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.k()];
        v[0] = 1;
        v
    }

    fn x(&self) -> Vec<u64> {
        let k = self.k();
        if k == 1 {
            return vec![(self.p - self.f[0]) % self.p];
        }
        let mut v = vec![0; k];
        v[1] = 1;
        v
    }

    fn pow(&self, base: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    fn eval(&self, g: &[u32], y: &[u64]) -> Vec<u64> {
        let mut acc = vec![0; self.k()];
        for &c in g.iter().rev() {
            acc = self.mul(&acc, y);
            acc[0] = (acc[0] + c as u64) % self.p;
        }
        acc
    }
}

fn choose_modulus(p: u32, k: u32, sub: &[(u32, Field)]) -> Vec<u32> {
    let p64 = p as u64;
    let q = p64.pow(k);
    let order = q - 1;
    let factors = prime_factors(order);
    // Candidates x^k + c_{k-1}x^{k-1} + ... + c_0 in increasing base-p code,
    // i.e. lexicographic in (c_{k-1}, ..., c_0).
    for code in 0..q {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut c = code;
        for _ in 0..k {
            f.push(c % p64);
            c /= p64;
        }
        f.push(1);
        if f[0] == 0 {
            continue;
        }
        let ring = SlowRing { p: p64, f: &f };
        let x = ring.x();
        if ring.pow(&x, order) != ring.one() {
            continue;
        }
        if factors
            .iter()
            .any(|r| ring.pow(&x, order / r) == ring.one())
        {
            continue;
        }
        let compatible = sub.iter().all(|(d, field)| {
            let n = order / (p64.pow(*d) - 1);
            let y = ring.pow(&x, n);
            ring.eval(&field.0.modulus, &y).iter().all(|&c| c == 0)
        });
        if compatible {
            return f.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("a compatible primitive modulus always exists")
}

fn build_ctx(p: u32, k: u32, sub: &[(u32, Field)]) -> FieldCtx {
    let modulus = choose_modulus(p, k, sub);
    let q = p.pow(k);
    let ku = k as usize;
    let mut exp = Vec::with_capacity(q as usize - 1);
    let mut log = vec![NONE; q as usize];
    let encode = |digits: &[u32]| digits.iter().rev().fold(0u32, |acc, &d| acc * p + d);
    let mut cur = vec![0u32; ku];
    cur[0] = 1;
    for i in 0..q - 1 {
        let idx = encode(&cur);
        exp.push(idx);
        log[idx as usize] = i;
        // multiply by x
        let top = cur[ku - 1];
        for t in (1..ku).rev() {
            cur[t] = cur[t - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for t in 0..ku {
                cur[t] = (cur[t] + p - top * modulus[t] % p) % p;
            }
        }
    }
    let mut ctx = FieldCtx {
        p,
        k,
        q,
        modulus,
        exp,
        log,
        zech: Vec::new(),
    };
    let zech = (0..q - 1)
        .map(|n| {
            let s = ctx.add_digits(1, ctx.exp[n as usize]);
            if s == 0 {
                NONE
            } else {
                ctx.log[s as usize]
            }
        })
        .collect();
    ctx.zech = zech;
    ctx
}

impl FieldCtx {
    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn size(&self) -> u64 {
        self.0.q as u64
    }

    /// Monic modulus, lowest coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The class of `x`; a generator of the multiplicative group.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.0.exp[1 % (self.0.q as usize - 1)])
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    pub fn units(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.0.q).map(FieldElement)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.0.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::input(
                "coeff",
                format!("index {index} out of range for F_{}", self),
            ))
        }
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() > self.0.k as usize {
            return Err(Error::input(
                "coeff",
                format!("more than {} coordinates", self.0.k),
            ));
        }
        let mut idx = 0u32;
        for &c in coords.iter().rev() {
            if c >= self.0.p {
                return Err(Error::input(
                    "coeff",
                    format!("coordinate {c} not reduced mod {}", self.0.p),
                ));
            }
            idx = idx * self.0.p + c;
        }
        Ok(FieldElement(idx))
    }

    pub fn coords(&self, a: FieldElement) -> Vec<u32> {
        let mut v = a.0;
        (0..self.0.k)
            .map(|_| {
                let d = v % self.0.p;
                v /= self.0.p;
                d
            })
            .collect()
    }

    /// Discrete log with respect to [`Field::generator`]. `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize])
    }

    pub fn exp(&self, e: u64) -> FieldElement {
        FieldElement(self.0.exp[(e % (self.0.q as u64 - 1)) as usize])
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let c = &self.0;
        if c.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if c.k == 1 {
            return FieldElement((a.0 + b.0) % c.p);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let m = c.q - 1;
        let la = c.log[a.0 as usize];
        let lb = c.log[b.0 as usize];
        let n = if lb >= la { lb - la } else { lb + m - la };
        let z = c.zech[n as usize];
        if z == NONE {
            return FieldElement::ZERO;
        }
        let s = la + z;
        FieldElement(c.exp[(if s >= m { s - m } else { s }) as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let c = &self.0;
        if c.p == 2 || a.0 == 0 {
            return a;
        }
        if c.k == 1 {
            return FieldElement(c.p - a.0);
        }
        let m = c.q - 1;
        let s = c.log[a.0 as usize] + m / 2;
        FieldElement(c.exp[(if s >= m { s - m } else { s }) as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let c = &self.0;
        let m = c.q - 1;
        let s = c.log[a.0 as usize] + c.log[b.0 as usize];
        FieldElement(c.exp[(if s >= m { s - m } else { s }) as usize])
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        assert!(a.0 != 0, "inverse of zero");
        let c = &self.0;
        let m = c.q - 1;
        let l = c.log[a.0 as usize];
        FieldElement(c.exp[(if l == 0 { 0 } else { m - l }) as usize])
    }

    #[inline]
    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let m = (self.0.q - 1) as u128;
        let l = self.0.log[a.0 as usize] as u128;
        FieldElement(self.0.exp[((l * e as u128) % m) as usize])
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.0.p as u64)
    }

    /// The unique `y` with `y^p = a`, namely `a^(p^(k-1))`.
    pub fn frobenius_inverse(&self, a: FieldElement) -> FieldElement {
        self.pow(a, (self.0.p as u64).pow(self.0.k - 1))
    }

    /// Multiplicative order of a unit.
    pub fn order(&self, a: FieldElement) -> u64 {
        assert!(a.0 != 0, "order of zero");
        let m = (self.0.q - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        m / num_integer::gcd(m, l)
    }

    /// A primitive `d`-th root of unity if `d | q - 1`.
    pub fn root_of_unity(&self, d: u64) -> Option<FieldElement> {
        let m = (self.0.q - 1) as u64;
        (d >= 1 && m.is_multiple_of(d)).then(|| self.exp(m / d))
    }

    /// Whether `a` lies in the subfield of size `p^d`.
    pub fn in_subfield(&self, a: FieldElement, d: u32) -> bool {
        if a.0 == 0 {
            return true;
        }
        if !self.0.k.is_multiple_of(d) {
            return false;
        }
        let m = (self.0.q - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        (l * ((self.0.p as u64).pow(d) - 1)).is_multiple_of(m)
    }

    /// `F_{p^(k m)}`.
    pub fn extension(&self, m: u32) -> Result<Field> {
        if m == 0 {
            return Err(Error::InvalidDegree);
        }
        make_field(
            self.0.p as u64,
            self.0.k.checked_mul(m).ok_or(Error::InvalidDegree)?,
        )
    }

    /// Image of `a` under the fixed embedding into `target`.
    pub fn embed(&self, a: FieldElement, target: &Field) -> Result<FieldElement> {
        Ok(self.embedding(target)?.apply(a))
    }

    pub fn embedding(&self, target: &Field) -> Result<Embedding> {
        if self.0.p != target.0.p || !target.0.k.is_multiple_of(self.0.k) {
            return Err(Error::IncompatibleFields {
                p: self.0.p as u64,
                from: self.0.k,
                to: target.0.k,
            });
        }
        let ratio = (target.0.q as u64 - 1) / (self.0.q as u64 - 1);
        Ok(Embedding {
            source: self.clone(),
            target: target.clone(),
            ratio,
        })
    }

    pub fn format(&self, a: FieldElement) -> String {
        if self.0.k == 1 {
            return a.0.to_string();
        }
        let cs = self.coords(a);
        let parts: Vec<String> = cs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "a".to_string(),
                (1, c) => format!("{c}a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}a^{i}"),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else if parts.len() == 1 {
            parts[0].clone()
        } else {
            format!("({})", parts.join("+"))
        }
    }
}

#[derive(Clone)]
pub struct Embedding {
    source: Field,
    target: Field,
    ratio: u64,
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: FieldElement) -> FieldElement {
        match self.source.log(a) {
            None => FieldElement::ZERO,
            Some(l) => self.target.exp(l as u64 * self.ratio),
        }
    }
}

/// Smallest `F_{p^k}` containing a primitive `d`-th root of unity, and that root.
pub fn primitive_root_of_unity(p: u64, d: u64) -> Result<(Field, FieldElement)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d == 0 || d.is_multiple_of(p) {
        return Err(Error::NoPrimitiveRoot { p, d });
    }
    let mut k = 1u32;
    let mut pk = p % d;
    while pk != 1 % d {
        pk = pk * p % d;
        k += 1;
    }
    let field = make_field(p, k)?;
    let zeta = field.root_of_unity(d).expect("d divides p^k - 1");
    Ok((field, zeta))
}
