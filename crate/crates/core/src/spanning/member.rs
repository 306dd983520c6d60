use std::collections::BTreeMap;

use crate::coeff::{Poly, Rational};
use crate::linalg::{to_rational, verify_coordinates, RationalBasis, SparseVec};
use crate::presentation::Presentation;
use crate::term::Element;

use super::{ideal_span, relation_orbit, FreeBasis, SpanningError};

/// Ideal membership in one arity, with coordinates over named generating
/// elements. In arity 3 these are the permuted relations themselves.
#[derive(Clone, Debug)]
pub struct IdealMembership {
    basis: FreeBasis,
    labels: Vec<String>,
    vectors: Vec<SparseVec<Rational>>,
    span: RationalBasis,
}

/// Outcome of one membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub target: Element,
    pub member: bool,
    /// `(coefficient, generating element)` pairs summing to the target.
    pub coordinates: Vec<(Rational, String)>,
    /// Target minus its projection onto the ideal; zero for members.
    pub residue: Element,
    /// Whether the coordinates were re-checked against the target.
    pub verified: bool,
}

impl IdealMembership {
    pub fn new(p: &Presentation, n: usize) -> Result<Self, SpanningError> {
        if !p.parameters.is_empty() {
            return Err(SpanningError::Symbolic(p.parameters.join(", ")));
        }
        let basis = FreeBasis::new(&p.generators, n)?;
        let (labels, elements): (Vec<String>, Vec<Element>) = if n == 3 {
            relation_orbit(p).into_iter().map(|o| (o.label(), o.element)).unzip()
        } else if n < 3 {
            (Vec::new(), Vec::new())
        } else {
            ideal_span(p, n)?
                .elements
                .into_iter()
                .enumerate()
                .map(|(i, e)| (format!("span[{i}]"), e))
                .unzip()
        };
        let vectors: Vec<SparseVec<Rational>> = elements
            .iter()
            .map(|e| to_rational(&basis.vector(e)?).map_err(|_| SpanningError::Symbolic(e.to_string())))
            .collect::<Result<_, _>>()?;
        let mut span = RationalBasis::with_provenance(basis.len());
        for v in &vectors {
            span.insert(v);
        }
        Ok(IdealMembership {
            basis,
            labels,
            vectors,
            span,
        })
    }

    pub fn basis(&self) -> &FreeBasis {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    pub fn span(&self) -> &RationalBasis {
        &self.span
    }

    /// Membership of an element with rational coefficients.
    pub fn certify(&self, e: &Element) -> Result<Certificate, SpanningError> {
        let v = to_rational(&self.basis.vector(e)?).map_err(|_| SpanningError::Symbolic(e.to_string()))?;
        let m = self.span.member(&v).expect("dimension matches");
        let (coordinates, verified) = match &m.coordinates {
            Some(c) => {
                let ok = verify_coordinates(&self.vectors, c, &v);
                let named = c.iter().map(|(i, a)| (a.clone(), self.labels[*i].clone())).collect();
                (named, ok)
            }
            None => (Vec::new(), false),
        };
        Ok(Certificate {
            target: e.clone(),
            member: m.is_member,
            coordinates,
            residue: self.basis.element(&m.residue),
            verified,
        })
    }

    /// Membership identically in the parameters: each coefficient of a
    /// parameter monomial must be a member on its own.
    pub fn certify_identically(&self, e: &Element) -> Result<Vec<(String, Certificate)>, SpanningError> {
        split_by_parameters(e)
            .into_iter()
            .map(|(k, part)| Ok((k, self.certify(&part)?)))
            .collect()
    }
}

/// Whether two parameter-free presentations on the same generators
/// generate the same ideal: equal arity-3 ranks and each relation of one a
/// member of the other's ideal.
pub fn same_ideal(a: &Presentation, b: &Presentation) -> Result<bool, SpanningError> {
    let ia = IdealMembership::new(a, 3)?;
    let ib = IdealMembership::new(b, 3)?;
    let mut all = ia.rank() == ib.rank();
    for (p, q) in [(a, &ib), (b, &ia)] {
        for r in &p.relations {
            all &= q.certify(&r.element)?.member;
        }
    }
    Ok(all)
}

/// Components of an element by monomial in its parameters, keyed by the
/// printed monomial (`1` for the constant part).
pub fn split_by_parameters(e: &Element) -> BTreeMap<String, Element> {
    let mut out: BTreeMap<String, Element> = BTreeMap::new();
    for (m, c) in e.terms() {
        for (mono, a) in c.terms() {
            let key = mono
                .iter()
                .fold(Poly::one(), |acc, (v, k)| acc.mul(&Poly::var(v).pow(*k)))
                .to_string();
            let part = out.entry(key).or_insert_with(|| Element::zero(e.arity()));
            *part = part.add(&Element::from_monomial(m.clone(), Poly::constant(a.clone())));
        }
    }
    out
}
