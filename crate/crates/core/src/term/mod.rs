//! Tree monomials, signed canonical forms, the symmetric-group action on
//! inputs and operadic composition.

mod parse;
mod perm;
mod tree;

pub mod testgen;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::coeff::{Assignment, CoeffError, Poly, Rational};

pub use parse::{parse_element, parse_monomial};
pub(crate) use parse::{parse_element_at, Scope};
pub use perm::Perm;
pub use tree::{Node, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("repeated leaf label {0}")]
    RepeatedLeaf(u32),
    #[error("leaf labels must be exactly 1..{arity}; found {label}")]
    LeafOutOfRange { label: u32, arity: usize },
    #[error("slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("permutation of size {perm} applied to arity {arity}")]
    PermSize { perm: usize, arity: usize },
    #[error("not a permutation: {0:?}")]
    NotBijection(Vec<u32>),
    #[error("mixed arities {0} and {1}")]
    ArityMismatch(usize, usize),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    None,
}

impl Symmetry {
    pub fn keyword(self) -> &'static str {
        match self {
            Symmetry::Symmetric => "symmetric",
            Symmetry::Antisymmetric => "antisymmetric",
            Symmetry::None => "none",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Symmetry> {
        match s {
            "symmetric" => Some(Symmetry::Symmetric),
            "antisymmetric" => Some(Symmetry::Antisymmetric),
            "none" => Some(Symmetry::None),
            _ => None,
        }
    }
}

/// A named binary operation with a declared input symmetry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    name: Arc<str>,
    symmetry: Symmetry,
}

impl Generator {
    pub fn new(name: &str, symmetry: Symmetry) -> Self {
        Generator {
            name: Arc::from(name),
            symmetry,
        }
    }

    pub fn symmetric(name: &str) -> Self {
        Generator::new(name, Symmetry::Symmetric)
    }

    pub fn antisymmetric(name: &str) -> Self {
        Generator::new(name, Symmetry::Antisymmetric)
    }

    pub fn plain(name: &str) -> Self {
        Generator::new(name, Symmetry::None)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn arity(&self) -> usize {
        2
    }

    /// `g(1,2)` as an element.
    pub fn element(&self) -> Element {
        self.apply(&Element::leaf(1), &Element::leaf(2))
    }

    /// `g(a, b)` for elements on disjoint label sets, expanded bilinearly.
    pub fn apply(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero(a.arity + b.arity);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let raw = Tree::node(self.clone(), ma.0.clone(), mb.0.clone());
                out.add_raw(&raw, &ca.mul(cb));
            }
        }
        out
    }
}

/// A tree in canonical form. Signs never live here; they are absorbed into
/// element coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Tree);

impl Monomial {
    pub fn tree(&self) -> &Tree {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.num_leaves() as usize
    }

    /// Number of internal vertices labelled by a generator in `ideal_gens`.
    pub fn bracket_weight(&self, ideal_gens: &BTreeSet<String>) -> usize {
        self.0.count_gens(ideal_gens)
    }

    /// Wraps a tree already known to be canonical.
    pub(crate) fn from_canonical(tree: Tree) -> Monomial {
        debug_assert!(matches!(tree.canonical(), Some((ref t, false)) if *t == tree));
        Monomial(tree)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Checks that the leaves of `tree` are exactly `1..=n`.
pub fn check_labels(tree: &Tree) -> Result<usize, TermError> {
    let leaves = tree.leaves();
    let n = leaves.len();
    let mut seen = vec![false; n + 1];
    for &l in &leaves {
        if l == 0 || l as usize > n {
            return Err(TermError::LeafOutOfRange { label: l, arity: n });
        }
        if seen[l as usize] {
            return Err(TermError::RepeatedLeaf(l));
        }
        seen[l as usize] = true;
    }
    Ok(n)
}

/// Finite linear combination of canonical monomials of one arity.
///
/// Public constructors require leaf labels `1..=arity`; internally,
/// elements over other disjoint label sets appear as grafting arguments.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    arity: usize,
    terms: BTreeMap<Monomial, Poly>,
}

impl Element {
    pub fn zero(arity: usize) -> Self {
        Element {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn leaf(label: u32) -> Self {
        Element::from_monomial(Monomial(Tree::leaf(label)), Poly::one())
    }

    /// The canonicalize operation: one-term element with the sign absorbed,
    /// or zero.
    pub fn canonicalize(tree: &Tree) -> Result<Element, TermError> {
        check_labels(tree)?;
        Ok(Element::from_raw(tree))
    }

    /// Canonicalizes without checking that labels are `1..=n`.
    pub(crate) fn from_raw(tree: &Tree) -> Element {
        let mut e = Element::zero(tree.num_leaves() as usize);
        e.add_raw(tree, &Poly::one());
        e
    }

    pub fn from_monomial(m: Monomial, c: Poly) -> Self {
        let mut terms = BTreeMap::new();
        let arity = m.arity();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { arity, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Poly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Adds `c * tree` after canonicalizing the tree.
    pub(crate) fn add_raw(&mut self, tree: &Tree, c: &Poly) {
        if let Some((t, neg)) = tree.canonical() {
            let c = if neg { c.neg() } else { c.clone() };
            self.add_term(Monomial(t), &c);
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        self.add_scaled(other, &Poly::one())
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add_scaled(other, &Poly::int(-1))
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Element, c: &Poly) -> Element {
        let mut out = self.clone();
        if self.is_zero() {
            out.arity = other.arity;
        }
        for (m, v) in &other.terms {
            out.add_term(m.clone(), &v.mul(c));
        }
        out
    }

    pub fn scale(&self, c: &Poly) -> Element {
        let mut out = Element::zero(self.arity);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v.mul(c));
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Element {
        self.scale(&Poly::constant(c.clone()))
    }

    pub fn neg(&self) -> Element {
        self.scale(&Poly::int(-1))
    }

    /// Sum of `c_i * e_i`.
    pub fn linear_combination<'a>(
        arity: usize,
        parts: impl IntoIterator<Item = (Poly, &'a Element)>,
    ) -> Element {
        let mut out = Element::zero(arity);
        for (c, e) in parts {
            out = out.add_scaled(e, &c);
        }
        out
    }

    /// Union of the parameters occurring in the coefficients.
    pub fn parameters(&self) -> BTreeSet<String> {
        self.terms
            .values()
            .flat_map(|c| c.vars().iter().cloned())
            .collect()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Element {
        let mut out = Element::zero(self.arity);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Substitutes parameter values in every coefficient; assignments to
    /// parameters absent from this element are ignored.
    pub fn evaluate(&self, assignment: &Assignment) -> Element {
        self.map_coeffs(|c| c.evaluate_lenient(assignment))
    }

    /// Relabels leaf `i` to `sigma(i)` and re-canonicalizes.
    pub fn permute_inputs(&self, sigma: &Perm) -> Result<Element, TermError> {
        if !self.is_zero() && sigma.len() != self.arity {
            return Err(TermError::PermSize {
                perm: sigma.len(),
                arity: self.arity,
            });
        }
        let mut out = Element::zero(self.arity);
        for (m, c) in &self.terms {
            let raw = m.0.relabel(&|l| sigma.apply(l));
            out.add_raw(&raw, c);
        }
        Ok(out)
    }

    /// Partial composition `self ∘_slot inner`: `inner` replaces leaf `slot`,
    /// labels shifted order-preservingly so the result is on `1..k+m-1`.
    pub fn compose(&self, slot: usize, inner: &Element) -> Result<Element, TermError> {
        let k = self.arity;
        let m = inner.arity;
        if slot == 0 || slot > k {
            return Err(TermError::SlotOutOfRange { slot, arity: k });
        }
        let shift = (slot - 1) as u32;
        let args: Vec<Element> = (1..=k as u32)
            .map(|j| {
                let j_us = j as usize;
                if j_us < slot {
                    Element::leaf(j)
                } else if j_us == slot {
                    inner.relabel(&|l| l + shift)
                } else {
                    Element::leaf(j + m as u32 - 1)
                }
            })
            .collect();
        Ok(self.graft(&args))
    }

    /// Replaces leaf `i` of every term by `args[i-1]`; the arguments must
    /// live on disjoint label sets. Labels of the result are those of the
    /// arguments.
    pub fn graft(&self, args: &[Element]) -> Element {
        let arity = args.iter().map(|a| a.arity).sum();
        let mut out = Element::zero(arity);
        for (m, c) in &self.terms {
            let e = graft_tree(&m.0, args);
            out = out.add_scaled(&e, c);
        }
        out.arity = arity;
        out
    }

    /// Applies an arbitrary injective relabeling to the leaves.
    pub fn relabel(&self, f: &dyn Fn(u32) -> u32) -> Element {
        let mut out = Element::zero(self.arity);
        for (m, c) in &self.terms {
            out.add_raw(&m.0.relabel(f), c);
        }
        out
    }

    /// Leaf labels used by the terms.
    pub fn label_set(&self) -> BTreeSet<u32> {
        self.terms
            .keys()
            .flat_map(|m| m.0.leaves())
            .collect()
    }

    /// Terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Generators occurring anywhere in the element.
    pub fn generators(&self) -> BTreeSet<Generator> {
        fn walk(t: &Tree, out: &mut BTreeSet<Generator>) {
            if let Tree::Node(n) = t {
                out.insert(n.gen.clone());
                walk(&n.left, out);
                walk(&n.right, out);
            }
        }
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            walk(&m.0, &mut out);
        }
        out
    }
}

fn graft_tree(t: &Tree, args: &[Element]) -> Element {
    match t {
        Tree::Leaf(l) => args[*l as usize - 1].clone(),
        Tree::Node(n) => {
            let a = graft_tree(&n.left, args);
            let b = graft_tree(&n.right, args);
            n.gen.apply(&a, &b)
        }
    }
}

/// Full polarization of an expression with repeated variables.
///
/// `terms` are raw trees in which the labels listed in `repeated` occur
/// several times; each such label `x` comes with as many fresh labels as it
/// has occurrences, and the result is the sum over all bijections between
/// occurrences and fresh labels. Labels occurring once are kept.
pub fn linearize(terms: &[(Poly, Tree)], repeated: &[(u32, Vec<u32>)]) -> Element {
    let mut out: Option<Element> = None;
    for (c, tree) in terms {
        let leaves = tree.leaves();
        // positions of each repeated variable
        let mut variants: Vec<Vec<u32>> = vec![leaves.clone()];
        for (x, fresh) in repeated {
            let pos: Vec<usize> = leaves
                .iter()
                .enumerate()
                .filter(|(_, l)| *l == x)
                .map(|(i, _)| i)
                .collect();
            assert_eq!(pos.len(), fresh.len(), "occurrence count of {x}");
            let mut next = Vec::new();
            for v in &variants {
                for p in Perm::all(fresh.len()) {
                    let mut w = v.clone();
                    for (k, &i) in pos.iter().enumerate() {
                        w[i] = fresh[p.apply(k as u32 + 1) as usize - 1];
                    }
                    next.push(w);
                }
            }
            variants = next;
        }
        for v in variants {
            let raw = relabel_positional(tree, &v, &mut 0);
            let e = Element::from_raw(&raw).scale(c);
            out = Some(match out {
                None => e,
                Some(acc) => acc.add(&e),
            });
        }
    }
    out.unwrap_or_else(|| Element::zero(0))
}

fn relabel_positional(t: &Tree, labels: &[u32], pos: &mut usize) -> Tree {
    match t {
        Tree::Leaf(_) => {
            let l = labels[*pos];
            *pos += 1;
            Tree::leaf(l)
        }
        Tree::Node(n) => {
            let l = relabel_positional(&n.left, labels, pos);
            let r = relabel_positional(&n.right, labels, pos);
            Tree::node(n.gen.clone(), l, r)
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if c.num_terms() == 1 {
                let text = c.to_string();
                let (neg, body) = match text.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, text),
                };
                match (i, neg) {
                    (0, true) => write!(f, "-")?,
                    (0, false) => {}
                    (_, true) => write!(f, " - ")?,
                    (_, false) => write!(f, " + ")?,
                }
                if body == "1" {
                    write!(f, "{m}")?;
                } else {
                    write!(f, "{body}*{m}")?;
                }
            } else {
                if i > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}]({self})", self.arity)
    }
}

#[cfg(test)]
mod tests;
