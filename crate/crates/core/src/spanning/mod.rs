//! Multilinear bases of free operads and spanning sets of operadic ideals.

mod member;
mod oracle;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::coeff::Poly;
use crate::linalg::{to_rational, RationalBasis, SparseVec};
use crate::presentation::Presentation;
use crate::term::{Element, Generator, Monomial, Perm, Symmetry, Tree};

pub use member::{same_ideal, split_by_parameters, Certificate, IdealMembership};
pub use oracle::{ap_dimension_oracle, ap_graded_oracle, brute_force_basis_size, count_free, set_partitions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpanningError {
    #[error("arity must be at least {min}, got {arity}")]
    ArityTooSmall { arity: usize, min: usize },
    #[error("monomial `{0}` is not in the free basis")]
    NotInBasis(String),
    #[error("exact membership needs rational coefficients, found parameters in {0}")]
    Symbolic(String),
}

/// All canonical monomials of one arity, in the canonical tree order.
#[derive(Clone, Debug)]
pub struct FreeBasis {
    arity: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl FreeBasis {
    pub fn new(generators: &[Generator], n: usize) -> Result<Self, SpanningError> {
        if n == 0 {
            return Err(SpanningError::ArityTooSmall { arity: 0, min: 1 });
        }
        let mut memo: HashMap<u32, Vec<Tree>> = HashMap::new();
        let full: u32 = (1u32 << n) - 1;
        let mut trees = trees_on(full, generators, &mut memo);
        trees.sort();
        let monomials: Vec<Monomial> = trees.into_iter().map(Monomial::from_canonical).collect();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(FreeBasis {
            arity: n,
            monomials,
            index,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `e` in this basis.
    pub fn vector(&self, e: &Element) -> Result<SparseVec<Poly>, SpanningError> {
        let mut entries = Vec::with_capacity(e.len());
        for (m, c) in e.terms() {
            let i = self
                .position(m)
                .ok_or_else(|| SpanningError::NotInBasis(m.to_string()))?;
            entries.push((i, c.clone()));
        }
        Ok(SparseVec::from_entries(self.len(), entries))
    }

    pub fn element<K>(&self, v: &SparseVec<K>) -> Element
    where
        K: crate::linalg::Scalar + Into<Poly>,
    {
        let mut e = Element::zero(self.arity);
        for (i, c) in v.entries() {
            e = e.add(&Element::from_monomial(self.monomials[*i].clone(), c.clone().into()));
        }
        e
    }

    /// Bracket weight of each basis monomial.
    pub fn weights(&self, ideal_gens: &BTreeSet<String>) -> Vec<usize> {
        self.monomials
            .iter()
            .map(|m| m.bracket_weight(ideal_gens))
            .collect()
    }
}

/// Canonical trees on the label set `mask`: for a symmetric or
/// antisymmetric root the child holding the smallest label comes first.
fn trees_on(mask: u32, generators: &[Generator], memo: &mut HashMap<u32, Vec<Tree>>) -> Vec<Tree> {
    if let Some(t) = memo.get(&mask) {
        return t.clone();
    }
    let out = if mask.count_ones() == 1 {
        vec![Tree::leaf(mask.trailing_zeros() + 1)]
    } else {
        let low = mask & mask.wrapping_neg();
        let mut out = Vec::new();
        // proper nonempty submasks as left children
        let mut left = (mask - 1) & mask;
        while left != 0 {
            let right = mask & !left;
            for g in generators {
                if g.symmetry() != Symmetry::None && left & low == 0 {
                    continue;
                }
                let ls = trees_on(left, generators, memo);
                let rs = trees_on(right, generators, memo);
                for l in &ls {
                    for r in &rs {
                        out.push(Tree::node(g.clone(), l.clone(), r.clone()));
                    }
                }
            }
            left = (left - 1) & mask;
        }
        out
    };
    memo.insert(mask, out.clone());
    out
}

/// Spanning set of the arity-n component of the ideal generated by the
/// relations of a presentation.
#[derive(Clone, Debug)]
pub struct IdealSpan {
    pub arity: usize,
    pub elements: Vec<Element>,
}

impl IdealSpan {
    pub fn vectors(&self, basis: &FreeBasis) -> Vec<SparseVec<Poly>> {
        self.elements
            .iter()
            .map(|e| basis.vector(e).expect("ideal elements use presentation generators"))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// One permuted relation `σ·r` of the arity-3 spanning set.
#[derive(Clone, Debug)]
pub struct OrbitElement {
    pub relation: String,
    pub perm: Perm,
    pub element: Element,
}

impl OrbitElement {
    /// `name∘(σ(1),σ(2),σ(3))`.
    pub fn label(&self) -> String {
        let im: Vec<String> = self.perm.images().iter().map(|i| i.to_string()).collect();
        format!("{}[{}]", self.relation, im.join(","))
    }
}

/// Every relation under every permutation of its inputs: a spanning set of
/// the ideal in arity 3 made of genuine composites.
pub fn relation_orbit(p: &Presentation) -> Vec<OrbitElement> {
    let perms = Perm::all(3);
    p.relations
        .iter()
        .flat_map(|r| {
            perms.iter().map(move |s| OrbitElement {
                relation: r.name.clone(),
                perm: s.clone(),
                element: r.element.permute_inputs(s).expect("arity 3"),
            })
        })
        .collect()
}

/// How stages of the recursive closure are thinned out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Compression {
    /// Replace each stage by a reduced basis of its span (rational
    /// coefficients only).
    Basis,
    /// Only drop repeated elements.
    Dedup,
}

/// Chooses [`Compression::Basis`] when every relation has rational
/// coefficients.
pub fn ideal_span(p: &Presentation, n: usize) -> Result<IdealSpan, SpanningError> {
    let rational = p.relations.iter().all(|r| r.element.parameters().is_empty());
    let mode = if rational {
        Compression::Basis
    } else {
        Compression::Dedup
    };
    ideal_span_with(&p.relation_elements(), &p.generators, n, mode)
}

/// Recursive closure from the arity-3 relations up to arity `n`.
pub fn ideal_span_with(
    relations: &[Element],
    generators: &[Generator],
    n: usize,
    mode: Compression,
) -> Result<IdealSpan, SpanningError> {
    if n < 3 {
        return Err(SpanningError::ArityTooSmall { arity: n, min: 3 });
    }
    let mut stage: Vec<Element> = Vec::new();
    for r in relations {
        for sigma in Perm::all(3) {
            stage.push(r.permute_inputs(&sigma).expect("arity 3"));
        }
    }
    stage = thin(stage, generators, 3, mode);
    for k in 3..n {
        let next = extend(&stage, generators, k);
        stage = thin(next, generators, k + 1, mode);
    }
    Ok(IdealSpan {
        arity: n,
        elements: stage,
    })
}

/// One closure step from arity `k` to `k + 1`.
pub fn extend(stage: &[Element], generators: &[Generator], k: usize) -> Vec<Element> {
    let n = (k + 1) as u32;
    let mut out = Vec::new();
    for e in stage {
        // g(e, x) and g(x, e)
        for x in 1..=n {
            let shifted = e.relabel(&|l| if l >= x { l + 1 } else { l });
            for g in generators {
                out.push(g.apply(&shifted, &Element::leaf(x)));
                if g.symmetry() == Symmetry::None {
                    out.push(g.apply(&Element::leaf(x), &shifted));
                }
            }
        }
        // e with slot i replaced by g(a, b)
        for i in 1..=k {
            for a in 1..=n {
                for b in a + 1..=n {
                    let rest: Vec<u32> = (1..=n).filter(|&l| l != a && l != b).collect();
                    for g in generators {
                        let mut pairs = vec![(a, b)];
                        if g.symmetry() == Symmetry::None {
                            pairs.push((b, a));
                        }
                        for (l, r) in pairs {
                            let mut it = rest.iter();
                            let args: Vec<Element> = (1..=k)
                                .map(|j| {
                                    if j == i {
                                        g.apply(&Element::leaf(l), &Element::leaf(r))
                                    } else {
                                        Element::leaf(*it.next().expect("k-1 labels"))
                                    }
                                })
                                .collect();
                            out.push(e.graft(&args));
                        }
                    }
                }
            }
        }
    }
    out
}

fn thin(elements: Vec<Element>, generators: &[Generator], n: usize, mode: Compression) -> Vec<Element> {
    match mode {
        Compression::Dedup => {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for e in elements {
                if e.is_zero() {
                    continue;
                }
                let key = primitive(&e);
                if seen.insert(key.to_string()) {
                    out.push(key);
                }
            }
            out
        }
        Compression::Basis => {
            let basis = FreeBasis::new(generators, n).expect("n >= 1");
            let mut rb = RationalBasis::new(basis.len());
            for e in &elements {
                let v = basis.vector(e).expect("presentation generators");
                rb.insert(&to_rational(&v).expect("rational relations"));
            }
            rb.rows().into_iter().map(|r| basis.element(r)).collect()
        }
    }
}

/// Scales an element so that its first coefficient has leading
/// rational coefficient 1.
fn primitive(e: &Element) -> Element {
    match e.terms().next().and_then(|(_, c)| c.leading_coeff().cloned()) {
        Some(lead) => e.scale_rational(&lead.recip().expect("nonzero")),
        None => e.clone(),
    }
}

/// Brute-force spanning set at arity `n`: every relation with free
/// monomials grafted into its three slots, placed into every slot of every
/// free monomial, then closed under all input permutations.
pub fn brute_force_span(relations: &[Element], generators: &[Generator], n: usize) -> Result<Vec<Element>, SpanningError> {
    if n < 3 {
        return Err(SpanningError::ArityTooSmall { arity: n, min: 3 });
    }
    let bases: Vec<FreeBasis> = (1..=n)
        .map(|k| FreeBasis::new(generators, k).expect("k >= 1"))
        .collect();
    let mut out = Vec::new();
    for m in 3..=n {
        // r ∘ (M1, M2, M3) with arities summing to m
        let mut inner = Vec::new();
        for a1 in 1..=m - 2 {
            for a2 in 1..=m - 1 - a1 {
                let a3 = m - a1 - a2;
                for r in relations {
                    for m1 in bases[a1 - 1].monomials() {
                        for m2 in bases[a2 - 1].monomials() {
                            for m3 in bases[a3 - 1].monomials() {
                                let args = [
                                    mono_shift(m1, 0),
                                    mono_shift(m2, a1 as u32),
                                    mono_shift(m3, (a1 + a2) as u32),
                                ];
                                inner.push(r.graft(&args));
                            }
                        }
                    }
                }
            }
        }
        // contexts of arity n - m + 1
        let c = n - m + 1;
        for ctx in bases[c - 1].monomials() {
            let ctx = Element::from_monomial(ctx.clone(), Poly::one());
            for slot in 1..=c {
                for e in &inner {
                    out.push(ctx.compose(slot, e).expect("slot in range"));
                }
            }
        }
    }
    let mut closed = Vec::with_capacity(out.len() * Perm::all(n).len());
    let perms = Perm::all(n);
    for e in &out {
        for s in &perms {
            closed.push(e.permute_inputs(s).expect("arity n"));
        }
    }
    Ok(closed)
}

fn mono_shift(m: &Monomial, by: u32) -> Element {
    Element::from_monomial(m.clone(), Poly::one()).relabel(&|l| l + by)
}

#[cfg(test)]
mod tests;
