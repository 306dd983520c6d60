use std::collections::BTreeSet;

use crate::coeff::{Poly, Rational};
use crate::graded::{gr_dimensions, quotient_dimension, weight_split};
use crate::morphism::{
    depolarization, half_depolarization, half_polarization, iso_check_low_arity, polarization, GenMap, IsoReport,
};
use crate::presentation::{preset, presets, Presentation};
use crate::spanning::{self, ap_dimension_oracle, ap_graded_oracle, IdealMembership};
use crate::term::Element;

use super::ansatz::cyclic_symmetrizer;
use super::rigidity::{ansatz_checks, assignment};
use super::{Options, ProofError, VerificationReport};

fn x(i: u32) -> Element {
    presets::x(i)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn ideal_b() -> BTreeSet<String> {
    ["b".to_string()].into_iter().collect()
}

fn max_arity(opts: &Options) -> usize {
    if opts.allow_big {
        5
    } else {
        4
    }
}

fn dims_text(dims: &[(usize, usize, usize)]) -> String {
    dims.iter()
        .map(|(n, a, b)| format!("arity {n}: {a} and {b}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn iso_detail(rep: &IsoReport) -> String {
    let mut s = dims_text(&rep.dims);
    for f in &rep.composite_failures {
        s.push_str(&format!("\ncomposite fails on {f}"));
    }
    for (k, c) in rep.forward.entries.iter().chain(&rep.backward.entries) {
        if !c.member {
            s.push_str(&format!("\nrelation {k} not preserved: residue {}", c.residue));
        }
    }
    s
}

fn same_ideal(a: &Presentation, b: &Presentation) -> Result<bool, ProofError> {
    Ok(spanning::same_ideal(a, b)?)
}

pub(crate) fn ll_flatness(opts: &Options) -> Result<VerificationReport, ProofError> {
    let mut r = VerificationReport::new("ll-flatness");
    let ll = preset("livernet-loday")?;
    let samples = [0, 1, -1, 2, 7];
    let mut dims = Vec::new();
    for n in 2..=max_arity(opts) {
        let d = quotient_dimension(&ll, n)?;
        let cert = d.certificate.clone().unwrap_or_else(Poly::one);
        let covered: Vec<i64> = samples
            .iter()
            .copied()
            .filter(|&t| {
                cert.evaluate_lenient(&assignment(&[("t", t)]))
                    .constant_value()
                    .is_some_and(|c| !c.is_zero())
            })
            .collect();
        r.check(
            format!("arity {n}: generic dimension {}", factorial(n)),
            d.quotient() == factorial(n),
            format!("free {}, ideal rank {}, quotient {}", d.free, d.rank, d.quotient()),
        );
        let mut at = Vec::new();
        for &t in &samples {
            let p = ll.evaluate(&assignment(&[("t", t)]))?;
            at.push(quotient_dimension(&p, n)?.quotient());
        }
        r.check(
            format!("arity {n}: dimension {} at each sample", factorial(n)),
            at.iter().all(|&d| d == factorial(n)),
            format!(
                "t = {samples:?}: {at:?}\npivot product {cert}, nonzero at t = {covered:?}; the rest rechecked by direct elimination"
            ),
        );
        dims.push(d.quotient());
    }
    r.table("dimensions", dims);
    let ll0 = ll.evaluate(&assignment(&[("t", 0)]))?;
    let poisson = preset("poisson")?;
    r.check("t = 0 is the Poisson operad", same_ideal(&ll0, &poisson)?, "same relations up to the ideal");
    Ok(r)
}

pub(crate) fn ll_assoc_iso() -> Result<VerificationReport, ProofError> {
    let mut r = VerificationReport::new("ll-assoc-iso");
    let ll = preset("livernet-loday")?.evaluate(&assignment(&[("t", 1)]))?;
    let ass = preset("associative")?;
    let f = half_depolarization(ass.clone(), ll.clone())?;
    let g = polarization(ll, ass)?;
    let rep = iso_check_low_arity(&f, &g, 4)?;
    r.check(
        "p = (m + b)/2 and m = p12 + p21, b = p12 - p21 are inverse up to arity 4",
        rep.passed(),
        iso_detail(&rep),
    );
    r.check(
        "dimensions n!",
        rep.dims.iter().all(|&(n, a, b)| a == factorial(n) && b == factorial(n)),
        dims_text(&rep.dims),
    );
    for (k, c) in rep.forward.entries {
        r.certificate(format!("{} {k}", f.name), c);
    }
    Ok(r)
}

pub(crate) fn ap_dims(opts: &Options) -> Result<VerificationReport, ProofError> {
    let mut r = VerificationReport::new("ap-dims");
    let ap = preset("almost-poisson")?;
    let mut dims = Vec::new();
    for n in 2..=max_arity(opts) {
        let d = quotient_dimension(&ap, n)?.quotient();
        let expect = ap_dimension_oracle(n) as usize;
        r.check(
            format!("arity {n}: dimension {expect}"),
            d == expect,
            format!("computed {d}, from set partitions {expect}"),
        );
        dims.push(d);
        if n >= 3 {
            let g = gr_dimensions(&ap, n)?;
            let expect: Vec<usize> = ap_graded_oracle(n).into_iter().map(|v| v as usize).collect();
            r.check(
                format!("arity {n}: associated graded {expect:?}"),
                g.gr() == expect && g.total() == d,
                g.to_string(),
            );
            r.table(format!("gr arity {n}"), g.gr());
        }
    }
    r.table("dimensions", dims);
    Ok(r)
}

pub(crate) fn poisson_classify() -> Result<VerificationReport, ProofError> {
    let mut r = VerificationReport::new("poisson-classify");
    let b = presets::b;
    let jac = presets::jacobi();
    let split = weight_split(&jac, &ideal_b());
    r.check(
        "the Jacobi relation lies in weight 2",
        split.keys().copied().collect::<Vec<_>>() == vec![2],
        jac.to_string(),
    );
    let n_assoc = cyclic_symmetrizer(&presets::assoc_m());
    let n_u = cyclic_symmetrizer(&b(&b(&x(1), &x(3)), &x(2)));
    r.check(
        "cyclic symmetrization kills the associator and sends {{1,3},2} to -J",
        n_assoc.is_zero() && n_u == jac.neg(),
        format!("N(assoc) = {n_assoc}\nN({{{{1,3}},2}}) = {n_u}"),
    );

    ansatz_checks(&mut r, true)?;

    let t_term = b(&b(&x(1), &x(2)), &x(3)).sub(&b(&b(&x(3), &x(2)), &x(1)));
    let u_term = b(&b(&x(1), &x(3)), &x(2));
    r.check(
        "the two weight-2 terms differ by the Jacobi relation",
        t_term.sub(&u_term) == jac,
        format!("{t_term}  -  {u_term}"),
    );
    let fam = preset("poisson-family")?;
    let at = |s: i64, t: i64, u: i64, v: i64| fam.evaluate(&assignment(&[("s", s), ("t", t), ("u", u), ("v", v)]));
    let same = same_ideal(&at(0, 1, 1, 0)?, &at(0, 2, 0, 0)?)? && same_ideal(&at(0, 3, -1, 0)?, &at(0, 0, 2, 0)?)?;
    r.check("only t + u matters", same, "equal ideals at (t, u) = (1, 1), (2, 0) and (3, -1), (0, 2)");

    let mut lines = Vec::new();
    let mut ok = true;
    for v in [0, 1, -1] {
        for tu in [0, 1, 2] {
            let p = at(0, tu, 0, v)?;
            let d3 = quotient_dimension(&p, 3)?.quotient();
            let d4 = quotient_dimension(&p, 4)?.quotient();
            let flat = d3 == 6 && d4 == 24;
            ok &= flat == (v == 0);
            lines.push(format!("v = {v}, t + u = {tu}: ({d3}, {d4}){}", if flat { " flat" } else { "" }));
        }
    }
    r.check("flat exactly when v = 0", ok, lines.join("\n"));

    let g = gr_dimensions(&at(1, 0, 0, 0)?, 3)?.gr();
    r.check(
        "s = 1 breaks the associated graded in arity 3",
        g != vec![1, 3, 2],
        format!("gr {g:?} instead of [1, 3, 2]"),
    );
    Ok(r)
}

fn kokoris_maps() -> Result<(GenMap, GenMap), ProofError> {
    let kok = preset("kokoris")?;
    let ap = preset("almost-poisson")?;
    Ok((depolarization(kok.clone(), ap.clone())?, half_polarization(ap, kok)?))
}

pub(crate) fn kokoris_iso() -> Result<VerificationReport, ProofError> {
    let mut r = VerificationReport::new("kokoris-iso");
    let (f, g) = kokoris_maps()?;
    let rep = iso_check_low_arity(&f, &g, 4)?;
    r.check("p = m + b and its inverse agree up to arity 4", rep.passed(), iso_detail(&rep));
    r.check(
        "dimensions match almost Poisson",
        rep.dims.iter().all(|&(n, a, b)| a == b && a == ap_dimension_oracle(n) as usize),
        dims_text(&rep.dims),
    );
    for (k, c) in rep.forward.entries {
        r.certificate(format!("{} {k}", f.name), c);
    }
    for (k, c) in rep.backward.entries {
        r.certificate(format!("{} {k}", g.name), c);
    }
    Ok(r)
}

pub(crate) fn star_trivial() -> Result<VerificationReport, ProofError> {
    let mut r = VerificationReport::new("star-trivial");
    let kok = preset("kokoris")?;
    let ap = preset("almost-poisson")?;
    let h2 = Poly::var("h").scale(&Rational::new(1, 2));
    let img = presets::m(&x(1), &x(2)).add(&presets::b(&x(1), &x(2)).scale(&h2));
    let star = GenMap::new("star", kok, ap.clone(), [("p".to_string(), img)])?;
    let tester = IdealMembership::new(&ap, 3)?;
    let image = star.apply(&presets::kokoris_relation())?;
    let parts = tester.certify_identically(&image)?;
    let ok = parts.iter().all(|(_, c)| c.member);
    r.check(
        "p = m + (h/2) b sends the relation into the ideal for every h",
        ok,
        format!("image {image}"),
    );
    for (k, c) in parts {
        r.certificate(format!("coefficient of {k}"), c);
    }

    let scale = GenMap::scaling(&ap, "b", h2)?;
    let mut ok = true;
    let mut lines = Vec::new();
    for rel in &ap.relations {
        let e = scale.apply(&rel.element)?;
        let good = tester.certify_identically(&e)?.iter().all(|(_, c)| c.member);
        ok &= good;
        lines.push(format!("{}: {e}", rel.name));
    }
    r.check("b -> (h/2) b keeps the relations", ok, lines.join("\n"));

    let at0 = image.evaluate(&assignment(&[("h", 0)]));
    let expect = presets::assoc_m().scale(&Poly::int(-4));
    let c0 = tester.certify(&at0)?;
    r.check(
        "h = 0 gives -4 times the associator of m",
        at0 == expect && c0.member,
        at0.to_string(),
    );
    Ok(r)
}

fn assoc_p(i: u32, j: u32, k: u32) -> Element {
    presets::associator(&presets::p, &x(i), &x(j), &x(k))
}

pub(crate) fn flexible() -> Result<VerificationReport, ProofError> {
    let mut r = VerificationReport::new("flexible");
    let tester = IdealMembership::new(&preset("kokoris")?, 3)?;
    let flex = assoc_p(1, 2, 3).add(&assoc_p(3, 2, 1));
    let c = tester.certify(&flex)?;
    r.check(
        "(1,2,3) + (3,2,1) is a consequence",
        c.member && c.verified,
        flex.to_string(),
    );
    r.certificate("flexible", c);
    let a = tester.certify(&assoc_p(1, 2, 3))?;
    r.check("the associator is not", !a.member, format!("residue {}", a.residue));
    let ra = tester.certify(&assoc_p(1, 2, 3).add(&assoc_p(1, 3, 2)))?;
    r.check("right alternativity is not", !ra.member, format!("residue {}", ra.residue));
    let la = tester.certify(&assoc_p(1, 2, 3).add(&assoc_p(2, 1, 3)))?;
    r.check("left alternativity is not", !la.member, format!("residue {}", la.residue));
    Ok(r)
}

/// `(1,2,3) - (1,2,3)'` with `'` the associator of `½[1,2]`.
pub fn kokoris_remark_element() -> Element {
    let half = |a: &Element, c: &Element| presets::commutator(a, c).scale_rational(&Rational::new(1, 2));
    assoc_p(1, 2, 3).sub(&presets::associator(&half, &x(1), &x(2), &x(3)))
}

pub(crate) fn kokoris_remark() -> Result<VerificationReport, ProofError> {
    let mut r = VerificationReport::new("kokoris-remark");
    let e = kokoris_remark_element();
    let kok = preset("kokoris")?;
    let mut from_e = kok.clone();
    from_e.name = "kokoris-remark".to_string();
    from_e.relations[0].element = e.clone();
    let ke = IdealMembership::new(&from_e, 3)?;
    let kk = IdealMembership::new(&kok, 3)?;
    let same = same_ideal(&from_e, &kok)?;
    r.check(
        "the orbit of E spans the same ideal",
        same && ke.rank() == 5 && kk.rank() == 5,
        format!("E = {e}\nranks {} and {}", ke.rank(), kk.rank()),
    );
    let rel = presets::kokoris_relation();
    let quarter = Rational::new(-1, 4);
    r.check(
        "E is -1/4 times the relation",
        e == rel.scale_rational(&quarter),
        format!("relation {rel}"),
    );
    let comm = preset("commutative-assoc")?;
    let to_comm = GenMap::new("commute", kok, comm.clone(), [("p".to_string(), presets::m(&x(1), &x(2)))])?;
    let img = to_comm.apply(&e)?;
    r.check(
        "for a commutative product E is the associator",
        img == presets::assoc_m(),
        img.to_string(),
    );
    Ok(r)
}

/// Sagle's form of the Malcev identity, linearized.
pub fn malcev() -> Element {
    let b = presets::b;
    let (a, c, d, e) = (x(1), x(2), x(3), x(4));
    b(&b(&a, &d), &b(&c, &e))
        .sub(&b(&b(&b(&a, &c), &d), &e))
        .sub(&b(&b(&b(&c, &d), &e), &a))
        .sub(&b(&b(&b(&d, &e), &a), &c))
        .sub(&b(&b(&b(&e, &a), &c), &d))
}

pub(crate) fn alt_warning() -> Result<VerificationReport, ProofError> {
    let mut r = VerificationReport::new("alt-warning");
    let alt = preset("alternative")?;
    let f = half_depolarization(alt, preset("free2")?)?;
    let p = f.transport()?;
    let t3 = IdealMembership::new(&p, 3)?;
    let (m, b) = (presets::m, presets::b);
    let third = Rational::new(1, 3);
    let ident = presets::assoc_m()
        .add(&presets::jacobi().scale_rational(&third))
        .add(&b(&b(&x(1), &x(3)), &x(2)));
    let c1 = t3.certify(&ident)?;
    r.check("associator of m in terms of the bracket", c1.member, ident.to_string());
    r.certificate("associator", c1);
    let leib = b(&m(&x(1), &x(2)), &x(3))
        .sub(&m(&x(1), &b(&x(2), &x(3))))
        .sub(&m(&x(2), &b(&x(1), &x(3))));
    let c2 = t3.certify(&leib)?;
    r.check("the bracket is a derivation of m", c2.member, leib.to_string());
    r.certificate("leibniz", c2);
    let t4 = IdealMembership::new(&p, 4)?;
    let c3 = t4.certify(&malcev())?;
    r.check("the bracket satisfies the Malcev identity", c3.member, malcev().to_string());
    let in_ap = IdealMembership::new(&preset("almost-poisson")?, 4)?.certify(&malcev())?.member;
    r.check("the Malcev identity does not hold in almost Poisson", !in_ap, "control");
    let g = gr_dimensions(&p, 4)?.gr();
    let ap: Vec<usize> = ap_graded_oracle(4).into_iter().map(|v| v as usize).collect();
    r.check(
        "not a flat deformation of almost Poisson",
        g != ap,
        format!("gr {g:?}, almost Poisson {ap:?}"),
    );
    r.table("gr arity 4", g);
    Ok(r)
}
