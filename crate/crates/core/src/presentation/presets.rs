//! Built-in presentations, assembled directly from trees so that nothing
//! here depends on the text parser.

use crate::coeff::{Poly, Rational};
use crate::term::{Element, Generator};

use super::{Presentation, PresentationError};

pub const PRESET_NAMES: &[&str] = &[
    "free2",
    "commutative-assoc",
    "anticommutative",
    "poisson",
    "livernet-loday",
    "almost-poisson",
    "ap-family",
    "poisson-family",
    "kokoris",
    "alternative",
    "associative-polarized",
    "associative",
];

pub fn preset(name: &str) -> Result<Presentation, PresentationError> {
    Ok(match name {
        "free2" => free2(),
        "commutative-assoc" => commutative_assoc(),
        "anticommutative" => anticommutative(),
        "poisson" => poisson(),
        "livernet-loday" => livernet_loday(),
        "almost-poisson" => almost_poisson(),
        "ap-family" => ap_family(),
        "poisson-family" => poisson_family(),
        "kokoris" => kokoris(),
        "alternative" => alternative(),
        "associative-polarized" => associative_polarized(),
        "associative" => associative(),
        _ => return Err(PresentationError::UnknownPreset(name.to_string())),
    })
}

pub fn x(i: u32) -> Element {
    Element::leaf(i)
}

/// Commutative product `m`.
pub fn prod() -> Generator {
    Generator::symmetric("m")
}

/// Anticommutative bracket `b`.
pub fn bracket() -> Generator {
    Generator::antisymmetric("b")
}

/// Single product `p` with no symmetry.
pub fn plain() -> Generator {
    Generator::plain("p")
}

pub fn m(a: &Element, b: &Element) -> Element {
    prod().apply(a, b)
}

pub fn b(a: &Element, c: &Element) -> Element {
    bracket().apply(a, c)
}

pub fn p(a: &Element, c: &Element) -> Element {
    plain().apply(a, c)
}

/// Commutator `p(a,c) - p(c,a)`.
pub fn commutator(a: &Element, c: &Element) -> Element {
    p(a, c).sub(&p(c, a))
}

fn int(n: i64) -> Poly {
    Poly::int(n)
}

fn var(name: &str) -> Poly {
    Poly::var(name)
}

/// `(x1 x2) x3 - x1 (x2 x3)` for the product `op`.
pub fn associator(op: &dyn Fn(&Element, &Element) -> Element, a: &Element, c: &Element, d: &Element) -> Element {
    op(&op(a, c), d).sub(&op(a, &op(c, d)))
}

/// `{{1,2},3} + {{2,3},1} + {{3,1},2}` for the bracket `op`.
pub fn jacobiator(op: &dyn Fn(&Element, &Element) -> Element) -> Element {
    op(&op(&x(1), &x(2)), &x(3))
        .add(&op(&op(&x(2), &x(3)), &x(1)))
        .add(&op(&op(&x(3), &x(1)), &x(2)))
}

pub fn assoc_m() -> Element {
    associator(&m, &x(1), &x(2), &x(3))
}

/// `{12,3} - {1,3}2 - {2,3}1`.
pub fn leibniz() -> Element {
    b(&m(&x(1), &x(2)), &x(3))
        .sub(&m(&b(&x(1), &x(3)), &x(2)))
        .sub(&m(&b(&x(2), &x(3)), &x(1)))
}

pub fn jacobi() -> Element {
    jacobiator(&b)
}

/// `{{1,3},2} + {{2,3},1}`, the deformation term of the Leibniz rule.
pub fn leibniz_deformation() -> Element {
    b(&b(&x(1), &x(3)), &x(2)).add(&b(&b(&x(2), &x(3)), &x(1)))
}

/// `{{1,2},3} - {{3,2},1} + 2{{1,3},2}`, the deformation term of
/// associativity in the almost Poisson family.
pub fn assoc_deformation() -> Element {
    b(&b(&x(1), &x(2)), &x(3))
        .sub(&b(&b(&x(3), &x(2)), &x(1)))
        .add_scaled(&b(&b(&x(1), &x(3)), &x(2)), &int(2))
}

/// `{2,{1,3}}`.
pub fn ll_deformation() -> Element {
    b(&x(2), &b(&x(1), &x(3)))
}

fn product_and_bracket(name: &str) -> Presentation {
    Presentation::new(name, vec![prod(), bracket()]).with_ideal(&["b"])
}

fn free2() -> Presentation {
    product_and_bracket("free2")
}

fn commutative_assoc() -> Presentation {
    Presentation::new("commutative-assoc", vec![prod()]).relation("assoc", assoc_m())
}

fn anticommutative() -> Presentation {
    Presentation::new("anticommutative", vec![bracket()]).with_ideal(&["b"])
}

fn poisson() -> Presentation {
    product_and_bracket("poisson")
        .relation("assoc", assoc_m())
        .relation("leibniz", leibniz())
        .relation("jacobi", jacobi())
}

fn livernet_loday() -> Presentation {
    product_and_bracket("livernet-loday")
        .with_parameters(&["t"])
        .relation("assoc", assoc_m().add_scaled(&ll_deformation(), &int(-1).mul(&var("t"))))
        .relation("leibniz", leibniz())
        .relation("jacobi", jacobi())
}

fn almost_poisson() -> Presentation {
    product_and_bracket("almost-poisson")
        .relation("assoc", assoc_m())
        .relation("leibniz", leibniz())
}

fn ap_family() -> Presentation {
    product_and_bracket("ap-family")
        .with_parameters(&["t", "v"])
        .relation("assoc", assoc_m().add_scaled(&assoc_deformation(), &var("t").neg()))
        .relation("leibniz", leibniz().add_scaled(&leibniz_deformation(), &var("v").neg()))
}

fn poisson_family() -> Presentation {
    let s_term = m(&b(&x(1), &x(2)), &x(3)).sub(&m(&b(&x(3), &x(2)), &x(1)));
    let t_term = b(&b(&x(1), &x(2)), &x(3)).sub(&b(&b(&x(3), &x(2)), &x(1)));
    let u_term = b(&b(&x(1), &x(3)), &x(2));
    let assoc = assoc_m()
        .add_scaled(&s_term, &var("s").neg())
        .add_scaled(&t_term, &var("t").neg())
        .add_scaled(&u_term, &var("u").neg());
    product_and_bracket("poisson-family")
        .with_parameters(&["s", "t", "u", "v"])
        .relation("assoc", assoc)
        .relation("leibniz", leibniz().add_scaled(&leibniz_deformation(), &var("v").neg()))
        .relation("jacobi", jacobi())
}

/// `J(1,2,3) - 4(1,2,3) + [[1,3],2]` for the commutator of `p`.
pub fn kokoris_relation() -> Element {
    jacobiator(&commutator)
        .add_scaled(&associator(&p, &x(1), &x(2), &x(3)), &int(-4))
        .add(&commutator(&commutator(&x(1), &x(3)), &x(2)))
}

fn kokoris() -> Presentation {
    Presentation::new("kokoris", vec![plain()]).relation("kokoris", kokoris_relation())
}

fn associative() -> Presentation {
    Presentation::new("associative", vec![plain()])
        .relation("assoc", associator(&p, &x(1), &x(2), &x(3)))
}

fn alternative() -> Presentation {
    let a = |i, j, k| associator(&p, &x(i), &x(j), &x(k));
    Presentation::new("alternative", vec![plain()])
        .relation("left-alt", a(1, 2, 3).add(&a(2, 1, 3)))
        .relation("right-alt", a(1, 2, 3).add(&a(1, 3, 2)))
}

/// `p(1,2)` written in the polarized generators: `(m + b)/2`.
pub fn depolarized_product(l: &Element, r: &Element) -> Element {
    m(l, r).add(&b(l, r)).scale_rational(&Rational::new(1, 2))
}

fn associative_polarized() -> Presentation {
    // 4 * ((12)3 - 1(23)) with each product replaced by (m + b)/2
    let assoc = associator(&depolarized_product, &x(1), &x(2), &x(3)).scale(&int(4));
    product_and_bracket("associative-polarized").relation("assoc", assoc)
}
