use std::collections::BTreeSet;

use proptest::prelude::*;

use super::testgen::{random_element, random_perm, random_tree, shuffled, SplitMix};
use super::*;

fn gens() -> Vec<Generator> {
    vec![
        Generator::symmetric("m"),
        Generator::antisymmetric("b"),
        Generator::plain("p"),
    ]
}

fn el(s: &str) -> Element {
    parse_element(s, &gens(), None).unwrap()
}

fn ideal_b() -> BTreeSet<String> {
    ["b".to_string()].into_iter().collect()
}

#[test]
fn canonicalize_examples() {
    let g = gens();
    let m = &g[0];
    let b = &g[1];
    let t = Tree::node(m.clone(), Tree::leaf(2), Tree::leaf(1));
    assert_eq!(Element::canonicalize(&t).unwrap(), el("m(1,2)"));
    let t = Tree::node(b.clone(), Tree::leaf(2), Tree::leaf(1));
    assert_eq!(Element::canonicalize(&t).unwrap(), el("-b(1,2)"));
    let t = Tree::node(
        b.clone(),
        Tree::node(m.clone(), Tree::leaf(3), Tree::leaf(1)),
        Tree::leaf(2),
    );
    assert_eq!(Element::canonicalize(&t).unwrap().to_string(), "b(m(1,3),2)");
}

#[test]
fn antisymmetric_vertex_with_equal_subtrees_is_zero() {
    let b = Generator::antisymmetric("b");
    let inner = Tree::node(b.clone(), Tree::leaf(1), Tree::leaf(2));
    let t = Tree::node(b, inner.clone(), inner);
    assert!(t.canonical().is_none());
    assert!(Element::from_raw(&t).is_zero());
    // with labels checked, such a tree is rejected before it can arise
    assert_eq!(Element::canonicalize(&t), Err(TermError::RepeatedLeaf(1)));
}

#[test]
fn canonicalize_rejects_bad_labels() {
    let m = Generator::symmetric("m");
    let t = Tree::node(m.clone(), Tree::leaf(1), Tree::leaf(3));
    assert!(matches!(
        Element::canonicalize(&t),
        Err(TermError::LeafOutOfRange { label: 3, .. })
    ));
}

#[test]
fn permute_examples() {
    let sigma = Perm::cycle(3, &[1, 2, 3]).unwrap();
    let e = el("m(m(1,2),3)");
    assert_eq!(e.permute_inputs(&sigma).unwrap().to_string(), "m(1,m(2,3))");
    assert_eq!(
        e.permute_inputs(&sigma).unwrap(),
        Element::from_raw(&parse_tree_str("m(m(2,3),1)"))
    );
    let swap = Perm::transposition(2, 1, 2).unwrap();
    assert_eq!(el("b(1,2)").permute_inputs(&swap).unwrap(), el("-b(1,2)"));
    assert!(matches!(
        el("b(1,2)").permute_inputs(&Perm::identity(3)),
        Err(TermError::PermSize { .. })
    ));
}

fn parse_tree_str(s: &str) -> Tree {
    let mut cur = crate::text::Cursor::new(s).unwrap();
    let g = gens();
    let scope = parse::Scope {
        generators: &g,
        parameters: None,
    };
    parse::parse_tree(&mut cur, &scope).unwrap()
}

fn cyclic_sum(e: &Element) -> Element {
    let s = Perm::cycle(3, &[1, 2, 3]).unwrap();
    let s2 = s.after(&s);
    e.add(&e.permute_inputs(&s).unwrap())
        .add(&e.permute_inputs(&s2).unwrap())
}

#[test]
fn cyclic_symmetrizer_kills_the_commutative_associator() {
    let assoc = el("m(m(1,2),3) - m(1,m(2,3))");
    assert!(cyclic_sum(&assoc).is_zero());
}

#[test]
fn compose_examples() {
    let c = el("m(1,2)").compose(1, &el("b(1,2)")).unwrap();
    assert_eq!(c, el("m(b(1,2),3)"));
    let c = el("b(1,2)").compose(2, &el("m(1,2)")).unwrap();
    assert_eq!(c.to_string(), "b(1,m(2,3))");
    assert!(matches!(
        el("b(1,2)").compose(3, &el("m(1,2)")),
        Err(TermError::SlotOutOfRange { .. })
    ));
}

#[test]
fn bracket_weight_examples() {
    let w = |s: &str| {
        let e = el(s);
        let w = e.terms().next().unwrap().0.bracket_weight(&ideal_b());
        w
    };
    assert_eq!(w("m(m(1,2),3)"), 0);
    assert_eq!(w("b(b(1,2),3)"), 2);
    assert_eq!(w("m(b(1,3),2)"), 1);
}

#[test]
fn text_round_trip_examples() {
    for s in [
        "b(m(1,2),3) - 2*m(b(1,3),2)",
        "(t + v)*b(b(1,2),3) - 1/2*p(p(1,2),3)",
        "-t*m(1,m(2,3))",
        "1",
        "2*1",
    ] {
        let e = el(s);
        assert_eq!(e.to_string(), s);
        assert_eq!(el(&e.to_string()), e);
    }
}

#[test]
fn parse_diagnostics() {
    let g = gens();
    let err = parse_element("m(1,q(2,3))", &g, None).unwrap_err();
    assert!(matches!(err.kind, crate::text::ParseErrorKind::UnknownGenerator(_)));
    let err = parse_element("m(1,m(1,2))", &g, None).unwrap_err();
    assert!(matches!(err.kind, crate::text::ParseErrorKind::RepeatedLeaf(1)));
    let err = parse_element("m(1,m(2,4))", &g, None).unwrap_err();
    assert!(matches!(err.kind, crate::text::ParseErrorKind::LeafOutOfRange { label: 4, .. }));
    let err = parse_element("t*m(1,2)", &g, Some(&[])).unwrap_err();
    assert!(matches!(err.kind, crate::text::ParseErrorKind::UndeclaredParameter(_)));
    let err = parse_element("m(1,2) + m(m(1,2),3)", &g, None).unwrap_err();
    assert!(matches!(err.kind, crate::text::ParseErrorKind::MixedArity(2, 3)));
}

#[test]
fn linearize_flexible_law() {
    // (x, y, x) with x repeated, polarized into labels 1 and 3
    let p = Generator::plain("p");
    let node = |l: Tree, r: Tree| Tree::node(p.clone(), l, r);
    let (x, y) = (Tree::leaf(9), Tree::leaf(2));
    let lhs = node(node(x.clone(), y.clone()), x.clone());
    let rhs = node(x.clone(), node(y, x));
    let terms = vec![(Poly::one(), lhs), (Poly::int(-1), rhs)];
    let lin = linearize(&terms, &[(9, vec![1, 3])]);
    assert_eq!(lin, el("p(p(1,2),3) - p(1,p(2,3)) + p(p(3,2),1) - p(3,p(2,1))"));
}

// ---- randomized properties ----

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonicalize_is_idempotent(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = SplitMix(seed);
        let labels = shuffled(&mut rng, n);
        let t = random_tree(&mut rng, &labels, &gens());
        let e = Element::canonicalize(&t).unwrap();
        for (m, _) in e.terms() {
            let again = Element::canonicalize(m.tree()).unwrap();
            prop_assert_eq!(again, Element::from_monomial(m.clone(), Poly::one()));
        }
    }

    #[test]
    fn permutation_is_a_group_action(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = SplitMix(seed);
        let e = random_element(&mut rng, &gens(), n);
        let s = random_perm(&mut rng, n);
        let t = random_perm(&mut rng, n);
        let lhs = e.permute_inputs(&s).unwrap().permute_inputs(&t).unwrap();
        let rhs = e.permute_inputs(&t.after(&s)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(e.permute_inputs(&Perm::identity(n)).unwrap(), e);
    }

    #[test]
    fn composition_exchange_laws(seed in any::<u64>(), k in 1usize..=3, m in 1usize..=3, p in 1usize..=2) {
        let mut rng = SplitMix(seed);
        let x = random_element(&mut rng, &gens(), k);
        let y = random_element(&mut rng, &gens(), m);
        let z = random_element(&mut rng, &gens(), p);
        let i = 1 + rng.below(k);
        let j = 1 + rng.below(m);
        // nested: (x ∘_i y) ∘_{i+j-1} z = x ∘_i (y ∘_j z)
        let lhs = x.compose(i, &y).unwrap().compose(i + j - 1, &z).unwrap();
        let rhs = x.compose(i, &y.compose(j, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        // disjoint: for i < l, (x ∘_l z) ∘_i y = (x ∘_i y) ∘_{l+m-1} z
        if k >= 2 {
            let i = 1 + rng.below(k - 1);
            let l = i + 1 + rng.below(k - i);
            let lhs = x.compose(l, &z).unwrap().compose(i, &y).unwrap();
            let rhs = x.compose(i, &y).unwrap().compose(l + m - 1, &z).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn weight_is_additive_under_composition(seed in any::<u64>(), k in 1usize..=3, m in 1usize..=3) {
        let mut rng = SplitMix(seed);
        let g = gens();
        let lx = shuffled(&mut rng, k);
        let ly = shuffled(&mut rng, m);
        let x = Element::from_raw(&random_tree(&mut rng, &lx, &g));
        let y = Element::from_raw(&random_tree(&mut rng, &ly, &g));
        prop_assume!(!x.is_zero() && !y.is_zero());
        let wx = x.terms().next().unwrap().0.bracket_weight(&ideal_b());
        let wy = y.terms().next().unwrap().0.bracket_weight(&ideal_b());
        let i = 1 + rng.below(k);
        let c = x.compose(i, &y).unwrap();
        prop_assert_eq!(c.len(), 1);
        prop_assert_eq!(c.terms().next().unwrap().0.bracket_weight(&ideal_b()), wx + wy);
    }

    #[test]
    fn swapping_antisymmetric_children_negates(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = SplitMix(seed);
        let b = Generator::antisymmetric("b");
        let labels = shuffled(&mut rng, n);
        let cut = 1 + rng.below(n - 1);
        let l = random_tree(&mut rng, &labels[..cut], std::slice::from_ref(&b));
        let r = random_tree(&mut rng, &labels[cut..], std::slice::from_ref(&b));
        let a = Element::from_raw(&Tree::node(b.clone(), l.clone(), r.clone()));
        let s = Element::from_raw(&Tree::node(b, r, l));
        prop_assert_eq!(a.neg(), s);
    }

    #[test]
    fn element_text_round_trip(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = SplitMix(seed);
        let e = random_element(&mut rng, &gens(), n);
        prop_assume!(!e.is_zero());
        let text = e.to_string();
        let back = parse_element(&text, &gens(), None).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, e);
    }
}
