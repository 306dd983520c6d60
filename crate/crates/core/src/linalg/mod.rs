//! Exact linear algebra on sparse vectors: Gauss–Jordan over the
//! rationals, fraction-free elimination over parameter polynomials,
//! membership with coordinates, and linear constraints on parameters.

mod constraints;
mod poly;
mod rational;

use std::fmt;

use thiserror::Error;

use crate::coeff::{Poly, Rational};

pub use constraints::{solve_parameter_constraints, Constraint, ConstraintSet};
pub use poly::PolyBasis;
pub use rational::{verify_coordinates, Membership, RationalBasis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("vector of dimension {found} in a space of dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coefficient `{0}` is not a rational constant")]
    MixedDomain(String),
    #[error("coefficient `{0}` is not linear in the parameters")]
    Nonlinear(String),
}

/// Coefficient rings the eliminations run over.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Poly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Poly::mul(self, other)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
}

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseVec<K> {
    dim: usize,
    entries: Vec<(usize, K)>,
}

impl<K: Scalar> SparseVec<K> {
    pub fn zero(dim: usize) -> Self {
        SparseVec {
            dim,
            entries: Vec::new(),
        }
    }

    /// Builds a vector from unsorted entries, summing repeated indices.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, K)>) -> Self {
        let mut v: Vec<(usize, K)> = entries.into_iter().collect();
        v.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, K)> = Vec::with_capacity(v.len());
        for (i, c) in v {
            assert!(i < dim, "index {i} out of range {dim}");
            match out.last_mut() {
                Some((j, d)) if *j == i => *d = d.add(&c),
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec { dim, entries: out }
    }

    pub fn unit(dim: usize, i: usize, c: K) -> Self {
        SparseVec::from_entries(dim, [(i, c)])
    }

    pub fn from_dense(values: Vec<K>) -> Self {
        let dim = values.len();
        SparseVec::from_entries(dim, values.into_iter().enumerate())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, K)] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> K {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => K::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(usize, K)> {
        self.entries.first()
    }

    pub fn to_dense(&self) -> Vec<K> {
        let mut out = vec![K::zero(); self.dim];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return SparseVec::zero(self.dim);
        }
        SparseVec {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, v.mul(c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: &K, other: &Self, b: &K) -> Self {
        self.scale(a).add_scaled(other, b)
    }

    /// `self + c * other` by a sorted merge.
    pub fn add_scaled(&self, other: &Self, c: &K) -> Self {
        use std::cmp::Ordering;
        if c.is_zero() {
            return self.clone();
        }
        let (x, y) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].0.cmp(&y[j].0) {
                Ordering::Less => {
                    out.push(x[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((y[j].0, y[j].1.mul(c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = x[i].1.add(&y[j].1.mul(c));
                    if !v.is_zero() {
                        out.push((x[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&x[i..]);
        out.extend(y[j..].iter().map(|(k, v)| (*k, v.mul(c))));
        SparseVec {
            dim: self.dim,
            entries: out,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &K::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &K::one().neg())
    }

    /// Moves entry `i` to index `f(i)` in a space of dimension `dim`.
    pub fn remap(&self, dim: usize, f: impl Fn(usize) -> usize) -> Self {
        SparseVec::from_entries(dim, self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }

    /// Keeps the entries whose index satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> Self {
        SparseVec {
            dim: self.dim,
            entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect(),
        }
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> SparseVec<L> {
        SparseVec::from_entries(self.dim, self.entries.iter().map(|(i, c)| (*i, f(c))))
    }
}

impl<K: Scalar> fmt::Display for SparseVec<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (i, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {c}")?;
        }
        write!(f, "]")
    }
}

impl<K: Scalar> fmt::Debug for SparseVec<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseVec<{}>{self}", self.dim)
    }
}

/// Coordinates over the rationals, or an error naming the first
/// non-constant coefficient.
pub fn to_rational(v: &SparseVec<Poly>) -> Result<SparseVec<Rational>, LinalgError> {
    let mut entries = Vec::with_capacity(v.nnz());
    for (i, c) in v.entries() {
        let q = c
            .constant_value()
            .ok_or_else(|| LinalgError::MixedDomain(c.to_string()))?;
        entries.push((*i, q));
    }
    Ok(SparseVec::from_entries(v.dim(), entries))
}

pub fn to_poly(v: &SparseVec<Rational>) -> SparseVec<Poly> {
    v.map(|c| Poly::constant(c.clone()))
}

/// Row-reduced span over one of the two coefficient domains.
#[derive(Clone, Debug)]
pub enum SpanBasis {
    Rational(RationalBasis),
    Polynomial(PolyBasis),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Rational,
    Polynomial,
}

impl SpanBasis {
    pub fn rank(&self) -> usize {
        match self {
            SpanBasis::Rational(b) => b.rank(),
            SpanBasis::Polynomial(b) => b.rank(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SpanBasis::Rational(b) => b.dim(),
            SpanBasis::Polynomial(b) => b.dim(),
        }
    }

    /// Product of the pivots; identically 1 over the rationals.
    pub fn certificate(&self) -> Poly {
        match self {
            SpanBasis::Rational(_) => Poly::one(),
            SpanBasis::Polynomial(b) => b.certificate(),
        }
    }
}

/// Reduces `vectors` over `domain`. The rational domain rejects vectors
/// whose coefficients involve parameters.
pub fn reduce(vectors: &[SparseVec<Poly>], dim: usize, domain: Domain) -> Result<SpanBasis, LinalgError> {
    for v in vectors {
        if v.dim() != dim {
            return Err(LinalgError::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
    }
    Ok(match domain {
        Domain::Rational => {
            let mut b = RationalBasis::new(dim);
            for v in vectors {
                b.insert(&to_rational(v)?);
            }
            SpanBasis::Rational(b)
        }
        Domain::Polynomial => SpanBasis::Polynomial(PolyBasis::reduce(vectors.to_vec(), dim, None)),
    })
}

#[cfg(test)]
mod tests;
