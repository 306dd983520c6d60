use std::sync::OnceLock;

use proptest::prelude::*;

use super::rewrite::Rewriter;
use super::rigidity::{ideal_b, rules};
use super::*;
use crate::coeff::Rational;
use crate::presentation::{preset, presets};
use crate::spanning::IdealMembership;
use crate::term::testgen::{random_element, random_perm, SplitMix};
use crate::term::{Element, Perm};

fn x(i: u32) -> Element {
    presets::x(i)
}

#[test]
fn rules_are_solved_for_the_leading_term() {
    let ap = preset("almost-poisson").unwrap();
    let (leib, assoc) = rules(&ap);
    assert_eq!(leib.rhs, presets::m(&presets::b(&x(1), &x(3)), &x(2)).add(&presets::m(&presets::b(&x(2), &x(3)), &x(1))));
    assert_eq!(assoc.rhs, presets::m(&x(1), &presets::m(&x(2), &x(3))));
    assert!(!assoc.both_sides);
}

#[test]
fn bracket_on_the_right_picks_up_a_sign() {
    let ap = preset("almost-poisson").unwrap();
    let (leib, assoc) = rules(&ap);
    let rw = Rewriter::new(vec![leib.clone(), assoc], ideal_b(), None);
    let e = presets::b(&x(1), &presets::m(&x(2), &x(3)));
    let (mono, c) = e.terms().next().unwrap();
    let out = rw.apply_at_root(&leib, mono.tree(), true).unwrap().scale(c);
    let b = presets::b;
    assert_eq!(out, presets::m(&b(&x(2), &x(1)), &x(3)).add(&presets::m(&b(&x(3), &x(1)), &x(2))).neg());
    assert!(rw.apply_at_root(&leib, mono.tree(), false).is_none());
}

#[test]
fn normal_forms() {
    let ap = preset("almost-poisson").unwrap();
    let (leib, assoc) = rules(&ap);
    let rw = Rewriter::new(vec![leib, assoc], ideal_b(), None);
    let e = presets::m(&presets::m(&presets::m(&x(1), &x(2)), &x(3)), &x(4));
    let n = rw.normalize(&e);
    assert_eq!(n.normal.to_string(), "m(1,m(2,m(3,4)))");
    assert!(rw.is_normal(&n.normal));
    assert!(n.remainder.is_zero());
    let again = rw.normalize(&n.normal);
    assert_eq!(again.steps, 0);
}

#[test]
fn cutoff_sets_terms_aside() {
    let fam = preset("ap-family").unwrap();
    let (leib, assoc) = rules(&fam);
    let rw = Rewriter::new(vec![leib, assoc], ideal_b(), Some(2));
    let e = presets::b(&presets::b(&x(1), &x(2)), &x(3)).add(&presets::m(&x(1), &presets::m(&x(2), &x(3))));
    let n = rw.normalize(&e);
    assert_eq!(n.remainder, presets::b(&presets::b(&x(1), &x(2)), &x(3)));
    assert_eq!(n.normal.to_string(), "m(1,m(2,3))");
}

#[test]
fn rigidity_steps_in_detail() {
    let s = rigidity_steps().unwrap();
    assert_eq!(s.one.factor, Some(Rational::from_int(-4)));
    assert!(!s.one.cross_term_in_ideal);
    assert_eq!(s.two.coefficient.to_string(), "-t");
    assert_eq!(s.combined.to_string(), "{t = 0, v = 0}");
}

#[test]
fn symmetrizer_identities() {
    assert!(cyclic_symmetrizer(&presets::assoc_m()).is_zero());
    let s = Perm::cycle(3, &[1, 2, 3]).unwrap();
    let e = presets::b(&presets::m(&x(1), &x(2)), &x(3));
    assert_eq!(cyclic_symmetrizer(&e.permute_inputs(&s).unwrap()), cyclic_symmetrizer(&e));
}

#[test]
fn unknown_name() {
    assert!(!is_known("nope"));
    assert!(matches!(run("nope", &Options::default()), Err(ProofError::Unknown(_))));
}

#[test]
fn reports_are_deterministic() {
    let a = run("flexible", &Options::default()).unwrap();
    let b = run("flexible", &Options::default()).unwrap();
    assert_eq!(a.render_text(false), b.render_text(false));
    assert_eq!(a.record(false), b.record(false));
    assert!(a.record(false).get("seconds").is_none());
    assert!(a.record(true).get("seconds").is_some());
    assert!(a.render_text(false).starts_with("flexible: PASS\n"));
}

#[test]
fn run_many_keeps_order() {
    let names = ["flexible", "kokoris-remark", "star-trivial"];
    let out = run_many(&names, &Options::default());
    let got: Vec<&str> = out.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(got, names);
    assert!(out.iter().all(|(_, r)| r.as_ref().unwrap().passed()));
}

#[test]
fn every_verification_passes() {
    for (name, _) in VERIFICATIONS {
        let r = run(name, &Options::default()).unwrap();
        assert!(r.passed(), "{r}");
    }
}

fn testers() -> &'static [IdealMembership; 2] {
    static T: OnceLock<[IdealMembership; 2]> = OnceLock::new();
    T.get_or_init(|| {
        let ap = preset("almost-poisson").unwrap();
        [IdealMembership::new(&ap, 3).unwrap(), IdealMembership::new(&ap, 4).unwrap()]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // normal forms stay in the same class modulo the ideal
    #[test]
    fn rewriting_preserves_classes(seed in any::<u64>(), n in 3usize..=4) {
        let ap = preset("almost-poisson").unwrap();
        let (leib, assoc) = rules(&ap);
        let rw = Rewriter::new(vec![leib, assoc], ideal_b(), None);
        let mut rng = SplitMix(seed);
        let e = random_element(&mut rng, &ap.generators, n);
        let out = rw.normalize(&e);
        prop_assert!(rw.is_normal(&out.normal));
        let tester = &testers()[n - 3];
        prop_assert!(tester.certify(&out.normal.sub(&e)).unwrap().member);
        let s = random_perm(&mut rng, n);
        let moved = rw.normalize(&e.permute_inputs(&s).unwrap());
        prop_assert!(tester.certify(&moved.normal.sub(&out.normal.permute_inputs(&s).unwrap())).unwrap().member);
    }
}
