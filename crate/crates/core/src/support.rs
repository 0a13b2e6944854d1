//! Exponent vectors and supports.

use std::fmt;
use std::ops::Index;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A lattice point of `N^n`, `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(coords: Vec<u32>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(Exponent(coords))
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        Exponent(vec![0; n])
    }

    /// `e_t` with `t` counted from 0.
    pub fn unit(n: usize, t: usize) -> Self {
        let mut e = Exponent::zero(n);
        e.0[t] = 1;
        e
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn checked_add(&self, other: &Exponent) -> Result<Exponent> {
        check_dims(self.dim(), other.dim())?;
        let v = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Exponent(v))
    }

    /// `self - other` if it stays in `N^n`.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        if self.dim() != other.dim() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    pub fn checked_scale(&self, m: u32) -> Result<Exponent> {
        let v = self
            .0
            .iter()
            .map(|&a| a.checked_mul(m).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Exponent(v))
    }

    /// `self / d` if every coordinate is divisible by `d`.
    pub fn exact_div(&self, d: u32) -> Option<Exponent> {
        if d == 0 || self.0.iter().any(|&a| a % d != 0) {
            return None;
        }
        Some(Exponent(self.0.iter().map(|&a| a / d).collect()))
    }

    pub fn componentwise_min(&self, other: &Exponent) -> Exponent {
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&c| c as i64).collect()
    }

    pub fn from_i64(v: &[i64]) -> Result<Exponent> {
        if v.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let coords = v
            .iter()
            .map(|&c| {
                u32::try_from(c).map_err(|_| {
                    if c < 0 {
                        Error::Precondition(format!("negative coordinate {c}"))
                    } else {
                        Error::ExponentOverflow
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Exponent(coords))
    }

    /// gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> u32 {
        self.0.iter().fold(0u32, |g, &c| g.gcd(&c))
    }
}

impl Index<usize> for Exponent {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A nonempty finite subset of `N^n`, kept sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support {
    n: usize,
    points: Vec<Exponent>,
}

impl Support {
    pub fn new(n: usize, mut points: Vec<Exponent>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        for p in &points {
            check_dims(n, p.dim())?;
        }
        points.sort();
        points.dedup();
        Ok(Support { n, points })
    }

    pub fn from_coords<I, V>(n: usize, pts: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vec<u32>>,
    {
        let points = pts
            .into_iter()
            .map(|v| Exponent::new(v.into()))
            .collect::<Result<Vec<_>>>()?;
        Support::new(n, points)
    }

    /// Shorthand for one-dimensional supports.
    pub fn univariate(values: &[u32]) -> Result<Self> {
        Support::from_coords(1, values.iter().map(|&v| vec![v]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Exponent] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Exponent> {
        self.points.iter()
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        self.points.binary_search(e).is_ok()
    }

    pub fn is_singleton(&self) -> bool {
        self.points.len() == 1
    }

    pub fn inf_point(&self) -> Exponent {
        let mut inf = self.points[0].clone();
        for p in &self.points[1..] {
            inf = inf.componentwise_min(p);
        }
        inf
    }

    /// `(S - inf S, inf S)`.
    pub fn normalize(&self) -> (Support, Exponent) {
        let inf = self.inf_point();
        let points = self
            .points
            .iter()
            .map(|p| p.checked_sub(&inf).expect("inf is below every point"))
            .collect();
        (Support { n: self.n, points }, inf)
    }

    pub fn translate(&self, offset: &Exponent) -> Result<Support> {
        let pts = self
            .points
            .iter()
            .map(|p| p.checked_add(offset))
            .collect::<Result<Vec<_>>>()?;
        Support::new(self.n, pts)
    }

    pub fn minkowski_sum(&self, other: &Support) -> Result<Support> {
        check_dims(self.n, other.n)?;
        let mut pts = Vec::with_capacity(self.len() * other.len());
        for a in &self.points {
            for b in &other.points {
                pts.push(a.checked_add(b)?);
            }
        }
        Support::new(self.n, pts)
    }

    pub fn union(&self, other: &Support) -> Result<Support> {
        check_dims(self.n, other.n)?;
        Support::new(
            self.n,
            self.points.iter().chain(&other.points).cloned().collect(),
        )
    }

    pub fn total_degree(&self) -> u64 {
        self.points.iter().map(Exponent::degree).max().unwrap_or(0)
    }

    /// gcd of all coordinates of all points.
    pub fn content(&self) -> u32 {
        self.points.iter().fold(0u32, |g, p| g.gcd(&p.content()))
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }
}

impl fmt::Debug for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl<'a> IntoIterator for &'a Support {
    type Item = &'a Exponent;
    type IntoIter = std::slice::Iter<'a, Exponent>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// `[i, j] ∩ Z^n`, from `i` to `j`.
pub fn segment_lattice_points(i: &Exponent, j: &Exponent) -> Result<Vec<Exponent>> {
    check_dims(i.dim(), j.dim())?;
    if i == j {
        return Err(Error::DegenerateSegment);
    }
    let (a, b) = (i.to_i64(), j.to_i64());
    let diff: Vec<i64> = a.iter().zip(&b).map(|(x, y)| y - x).collect();
    let d = diff.iter().fold(0i64, |g, &c| g.gcd(&c));
    (0..=d)
        .map(|s| {
            let v: Vec<i64> = a
                .iter()
                .zip(&diff)
                .map(|(&x, &dx)| x + s * (dx / d))
                .collect();
            Exponent::from_i64(&v)
        })
        .collect()
}
