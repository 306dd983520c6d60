use super::*;
use crate::coeff::Rational;
use crate::text::ParseErrorKind;

const AP_SRC: &str = "
# commutative associative product and a biderivation bracket
operad ap {
  gen m : 2 symmetric;
  gen b : 2 antisymmetric;
  ideal b;
  rel assoc : m(m(1,2),3) - m(1,m(2,3)) = 0;
  rel leibniz : b(m(1,2),3) = m(b(1,3),2) + m(1,b(2,3));
}
";

fn assign(pairs: &[(&str, i64)]) -> Assignment {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), Rational::from_int(*v)))
        .collect()
}

#[test]
fn almost_poisson_source() {
    let p = parse(AP_SRC).unwrap();
    assert_eq!(p.generators.len(), 2);
    assert_eq!(p.relations.len(), 2);
    let ap = preset("almost-poisson").unwrap();
    assert_eq!(p.relations, ap.relations);
}

#[test]
fn livernet_loday_at_zero_is_poisson() {
    let ll = preset("livernet-loday").unwrap();
    let at0 = ll.evaluate(&assign(&[("t", 0)])).unwrap();
    assert_eq!(at0.relations, preset("poisson").unwrap().relations);
    assert!(at0.parameters.is_empty());
}

#[test]
fn ap_family_at_origin_is_almost_poisson() {
    let fam = preset("ap-family").unwrap();
    let at0 = fam.evaluate(&assign(&[("t", 0), ("v", 0)])).unwrap();
    assert_eq!(at0.relations, preset("almost-poisson").unwrap().relations);
}

#[test]
fn evaluate_rejects_unknown_parameter() {
    let fam = preset("ap-family").unwrap();
    assert!(fam.evaluate(&assign(&[("w", 1)])).is_err());
}

#[test]
fn unknown_preset() {
    assert_eq!(
        preset("lie"),
        Err(PresentationError::UnknownPreset("lie".into()))
    );
}

#[test]
fn every_preset_round_trips_through_text() {
    for name in PRESET_NAMES {
        let p = preset(name).unwrap();
        let text = p.to_string();
        let back = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        assert_eq!(back, p, "{name}");
        assert_eq!(back.to_string(), text);
    }
}

#[test]
fn preset_relations_are_canonical() {
    for name in PRESET_NAMES {
        for r in preset(name).unwrap().relations {
            assert_eq!(r.element.arity(), 3, "{name}/{}", r.name);
            for (mono, _) in r.element.terms() {
                let again = Element::canonicalize(mono.tree()).unwrap();
                assert_eq!(again.len(), 1);
                assert!(again.coefficient(mono).is_one(), "{name}/{}", r.name);
            }
        }
    }
}

#[test]
fn jacobiator_convention() {
    assert_eq!(
        presets::jacobi().to_string(),
        "-b(1,b(2,3)) + b(b(1,2),3) - b(b(1,3),2)"
    );
}

#[test]
fn kokoris_relation_is_expanded_in_one_generator() {
    let k = presets::kokoris_relation();
    assert!(!k.is_zero());
    assert!(k.len() <= 12);
    assert_eq!(k.generators().len(), 1);
}

#[test]
fn free_operad_has_no_relations() {
    let p = parse("operad f { gen m : 2 symmetric; gen b : 2 antisymmetric; }").unwrap();
    assert!(p.relations.is_empty());
}

fn kind(src: &str) -> ParseErrorKind {
    parse(src).unwrap_err().kind
}

#[test]
fn diagnostics_are_distinct() {
    let head = "operad e {\n  gen m : 2 symmetric;\n";
    let leaf4 = format!("{head}  rel r : m(m(1,2),4) = 0;\n}}");
    let err = parse(&leaf4).unwrap_err();
    assert!(err.to_string().contains("leaf out of range"), "{err}");
    assert_eq!((err.line, err.col), (3, 11));

    assert!(matches!(
        kind(&format!("{head}  rel r : m(q(1,2),3) = 0;\n}}")),
        ParseErrorKind::UnknownGenerator(g) if g == "q"
    ));
    assert!(matches!(
        kind(&format!("{head}  rel r : m(m(1,1),3) = 0;\n}}")),
        ParseErrorKind::RepeatedLeaf(1)
    ));
    assert!(matches!(
        kind(&format!("{head}  rel r : m(1,2) = 0;\n}}")),
        ParseErrorKind::NotArity3 { arity: 2, .. }
    ));
    assert!(matches!(
        kind(&format!("{head}  rel r : t*m(m(1,2),3) = 0;\n}}")),
        ParseErrorKind::UndeclaredParameter(t) if t == "t"
    ));
    assert!(matches!(
        kind(&format!("{head}  rel r : m(m(1,2),3) = 0\n}}")),
        ParseErrorKind::Syntax(_)
    ));
    assert!(matches!(
        kind(&format!("{head}  gen m : 2 none;\n}}")),
        ParseErrorKind::Duplicate(_)
    ));
    assert!(matches!(
        kind("operad e { gen m : 3 symmetric; }"),
        ParseErrorKind::Invalid(_)
    ));
}

#[test]
fn maps_resolve_operads_and_presets() {
    let src = format!(
        "{AP_SRC}
map dep : ap -> kokoris {{
  m(1,2) => 1/2*p(1,2) + 1/2*p(2,1);
  b(1,2) => 1/2*p(1,2) - 1/2*p(2,1);
}}"
    );
    let doc = parse_document(&src).unwrap();
    assert_eq!(doc.maps.len(), 1);
    let map = &doc.maps[0];
    assert_eq!(map.source.name, "ap");
    assert_eq!(map.target.name, "kokoris");
    assert_eq!(map.images[0].1.to_string(), "1/2*p(1,2) + 1/2*p(2,1)");
    let bad = "map f : nowhere -> kokoris { }";
    assert!(matches!(
        parse_document(bad).unwrap_err().kind,
        ParseErrorKind::UnknownOperad(_)
    ));
}

#[test]
fn fixtures_match_presets() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for name in PRESET_NAMES {
        let path = format!("{dir}/{}.op", name.replace('-', "_"));
        let src = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
        let p = parse(&src).unwrap_or_else(|e| panic!("{path}: {e}"));
        let q = preset(name).unwrap();
        assert_eq!(p.name, q.name);
        assert_eq!(p.generators, q.generators);
        assert_eq!(p.ideal_gens, q.ideal_gens);
        assert_eq!(p.parameters, q.parameters);
        let pe: Vec<_> = p.relations.iter().map(|r| &r.element).collect();
        let qe: Vec<_> = q.relations.iter().map(|r| &r.element).collect();
        assert_eq!(pe, qe, "{path}");
    }
}
