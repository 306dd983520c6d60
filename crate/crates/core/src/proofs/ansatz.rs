//! Candidate deformation terms and the cyclic symmetrizer test.

use std::collections::BTreeSet;

use crate::coeff::{Poly, Rational};
use crate::linalg::{solve_parameter_constraints, to_rational, ConstraintSet, RationalBasis, SparseVec};
use crate::presentation::Presentation;
use crate::spanning::{FreeBasis, IdealMembership};
use crate::term::{Element, Generator, Perm};

use super::ProofError;

/// `e + σe + σ²e` for the cycle `σ = (1 2 3)`.
pub fn cyclic_symmetrizer(e: &Element) -> Element {
    let s = Perm::cycle(3, &[1, 2, 3]).expect("valid cycle");
    let s2 = s.after(&s);
    e.add(&e.permute_inputs(&s).expect("arity 3"))
        .add(&e.permute_inputs(&s2).expect("arity 3"))
}

/// Basis of the arity-3 elements of one bracket weight on which `perm`
/// acts by `sign`, as reduced rows.
pub fn equivariant_candidates(
    generators: &[Generator],
    ideal_gens: &BTreeSet<String>,
    weight: usize,
    perm: &Perm,
    sign: i64,
) -> Vec<Element> {
    let basis = FreeBasis::new(generators, 3).expect("arity 3");
    let mut rb = RationalBasis::new(basis.len());
    for m in basis.monomials() {
        if m.bracket_weight(ideal_gens) != weight {
            continue;
        }
        let e = Element::from_monomial(m.clone(), Poly::one());
        let moved = e.permute_inputs(perm).expect("arity 3");
        let proj = if sign < 0 { e.sub(&moved) } else { e.add(&moved) };
        rb.insert(&rational(&basis, &proj));
    }
    rb.rows().into_iter().map(|r| basis.element(r)).collect()
}

fn rational(basis: &FreeBasis, e: &Element) -> SparseVec<Rational> {
    to_rational(&basis.vector(e).expect("free generators")).expect("rational element")
}

/// Dimension of `span(xs) + span(modulo)` minus that of `span(modulo)`.
pub(crate) fn rank_modulo(generators: &[Generator], xs: &[Element], modulo: &[Element]) -> usize {
    let basis = FreeBasis::new(generators, 3).expect("arity 3");
    let mut rb = RationalBasis::new(basis.len());
    for e in modulo {
        rb.insert(&rational(&basis, e));
    }
    let before = rb.rank();
    for e in xs {
        rb.insert(&rational(&basis, e));
    }
    rb.rank() - before
}

/// Conditions on the parameters of `relation` under which its cyclic
/// symmetrization lies in the arity-3 ideal of `target`.
pub(crate) fn symmetrized_constraints(relation: &Element, target: &Presentation) -> Result<ConstraintSet, ProofError> {
    let tester = IdealMembership::new(target, 3)?;
    let v = tester
        .basis()
        .vector(&cyclic_symmetrizer(relation))?;
    Ok(solve_parameter_constraints(&[v], tester.span())?)
}
