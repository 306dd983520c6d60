//! Directed rewriting of elements by relations of the form
//! `outer(inner(1,2),3) = rhs`, with terms above a weight bound set aside.

use std::collections::BTreeSet;

use crate::coeff::Poly;
use crate::term::{Element, Monomial, Symmetry, Tree};

/// `outer(inner(1,2),3) → rhs`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub name: String,
    pub outer: String,
    pub inner: String,
    /// Also match `outer(3, inner(1,2))` by swapping the children of a
    /// symmetric or antisymmetric outer vertex.
    pub both_sides: bool,
    pub rhs: Element,
}

impl Rule {
    /// Solves `relation = 0` for its `outer(inner(1,2),3)` term.
    pub fn from_relation(name: &str, relation: &Element, outer: &str, inner: &str, both_sides: bool) -> Option<Rule> {
        let (lhs, c) = relation.terms().find(|(m, _)| {
            let t = m.tree();
            t.as_node().is_some_and(|n| {
                n.gen.name() == outer
                    && n.right.is_leaf()
                    && n.left.as_node().is_some_and(|i| i.gen.name() == inner && i.left.is_leaf() && i.right.is_leaf())
            })
        })?;
        let inv = c.constant_value()?.recip()?;
        let rest = relation.sub(&Element::from_monomial(lhs.clone(), c.clone()));
        Some(Rule {
            name: name.to_string(),
            outer: outer.to_string(),
            inner: inner.to_string(),
            both_sides,
            rhs: rest.scale_rational(&-&inv),
        })
    }
}

pub struct Rewriter {
    rules: Vec<Rule>,
    ideal_gens: BTreeSet<String>,
    /// Terms of this weight or more go to the remainder.
    cutoff: Option<usize>,
}

/// Normal form with the discarded high-weight terms and the number of
/// rewrite steps taken.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub normal: Element,
    pub remainder: Element,
    pub steps: usize,
}

/// A subtree of a canonical monomial, on its own labels.
fn mono(t: &Tree) -> Element {
    Element::from_monomial(Monomial::from_canonical(t.clone()), Poly::one())
}

impl Rewriter {
    pub fn new(rules: Vec<Rule>, ideal_gens: BTreeSet<String>, cutoff: Option<usize>) -> Self {
        Rewriter {
            rules,
            ideal_gens,
            cutoff,
        }
    }

    /// Applies `rule` at the root of `t`, using the left child as the inner
    /// vertex, or the right child when `right` is set.
    pub fn apply_at_root(&self, rule: &Rule, t: &Tree, right: bool) -> Option<Element> {
        let n = t.as_node()?;
        if n.gen.name() != rule.outer {
            return None;
        }
        let (inner, other, sign) = if right {
            let sign = match n.gen.symmetry() {
                Symmetry::Symmetric => 1,
                Symmetry::Antisymmetric => -1,
                Symmetry::None => return None,
            };
            (&n.right, &n.left, sign)
        } else {
            (&n.left, &n.right, 1)
        };
        let i = inner.as_node()?;
        if i.gen.name() != rule.inner {
            return None;
        }
        let out = rule.rhs.graft(&[mono(&i.left), mono(&i.right), mono(other)]);
        Some(if sign < 0 { out.neg() } else { out })
    }

    fn at_vertex(&self, t: &Tree) -> Option<Element> {
        for r in &self.rules {
            if let Some(e) = self.apply_at_root(r, t, false) {
                return Some(e);
            }
            if r.both_sides {
                if let Some(e) = self.apply_at_root(r, t, true) {
                    return Some(e);
                }
            }
        }
        None
    }

    /// One rewrite at the outermost-leftmost redex of `t`.
    pub fn step(&self, t: &Tree) -> Option<Element> {
        if let Some(e) = self.at_vertex(t) {
            return Some(e);
        }
        let n = t.as_node()?;
        if let Some(l) = self.step(&n.left) {
            return Some(n.gen.apply(&l, &mono(&n.right)));
        }
        let r = self.step(&n.right)?;
        Some(n.gen.apply(&mono(&n.left), &r))
    }

    fn split(&self, e: Element, remainder: &mut Element) -> Element {
        match self.cutoff {
            None => e,
            Some(w) => {
                let high = e.filter(|m| m.bracket_weight(&self.ideal_gens) >= w);
                *remainder = remainder.add(&high);
                e.sub(&high)
            }
        }
    }

    /// Rewrites until no rule applies, always at the first reducible
    /// monomial.
    pub fn normalize(&self, e: &Element) -> Normalized {
        let mut remainder = Element::zero(e.arity());
        let mut cur = self.split(e.clone(), &mut remainder);
        let mut steps = 0;
        loop {
            let found = cur.terms().find_map(|(m, c)| self.step(m.tree()).map(|r| (m.clone(), c.clone(), r)));
            let Some((m, c, r)) = found else { break };
            let next = cur
                .sub(&Element::from_monomial(m, c.clone()))
                .add_scaled(&r, &c);
            cur = self.split(next, &mut remainder);
            steps += 1;
            assert!(steps < 1_000_000, "rewriting does not terminate");
        }
        Normalized {
            normal: cur,
            remainder,
            steps,
        }
    }

    /// Normal form after first applying `rule` at the root of `m`.
    pub fn normalize_from(&self, rule: &Rule, m: &Monomial, right: bool) -> Option<Normalized> {
        let first = self.apply_at_root(rule, m.tree(), right)?;
        let mut n = self.normalize(&first);
        n.steps += 1;
        Some(n)
    }

    pub fn is_normal(&self, e: &Element) -> bool {
        e.terms().all(|(m, _)| self.step(m.tree()).is_none())
    }
}
