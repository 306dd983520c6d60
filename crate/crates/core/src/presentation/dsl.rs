use std::collections::BTreeSet;

use crate::term::{parse_element_at, Element, Generator, Scope, Symmetry};
use crate::text::{Cursor, ParseError, ParseErrorKind, Token};

use super::{preset, Presentation, Relation};

/// Generator images declared by a `map` block. Images live over the
/// target's generators; any parameter name is allowed in them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpec {
    pub name: String,
    pub source: Presentation,
    pub target: Presentation,
    pub images: Vec<(String, Element)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub operads: Vec<Presentation>,
    pub maps: Vec<MapSpec>,
}

/// Parses a file holding exactly one `operad` block.
pub fn parse(src: &str) -> Result<Presentation, ParseError> {
    let mut doc = parse_document(src)?;
    if doc.operads.len() != 1 || !doc.maps.is_empty() {
        return Err(ParseError {
            line: 1,
            col: 1,
            kind: ParseErrorKind::Invalid(format!(
                "expected one operad block, found {} operads and {} maps",
                doc.operads.len(),
                doc.maps.len()
            )),
        });
    }
    Ok(doc.operads.remove(0))
}

/// Parses any sequence of `operad` and `map` blocks. Maps may refer to
/// operads declared earlier in the file or to presets.
pub fn parse_document(src: &str) -> Result<Document, ParseError> {
    let mut cur = Cursor::new(src)?;
    let mut doc = Document::default();
    while !cur.at_eof() {
        let (kw, tok) = cur.expect_ident()?;
        match kw.as_str() {
            "operad" => {
                let p = parse_operad(&mut cur)?;
                if doc.operads.iter().any(|q| q.name == p.name) {
                    return Err(cur.error_at(&tok, ParseErrorKind::Duplicate(p.name)));
                }
                doc.operads.push(p);
            }
            "map" => {
                let m = parse_map(&mut cur, &doc.operads)?;
                doc.maps.push(m);
            }
            _ => {
                return Err(cur.error_at(
                    &tok,
                    ParseErrorKind::Syntax(format!("expected `operad` or `map`, found `{kw}`")),
                ))
            }
        }
    }
    Ok(doc)
}

fn name_list(cur: &mut Cursor) -> Result<Vec<(String, Token)>, ParseError> {
    let mut out = vec![cur.expect_name()?];
    while cur.eat_sym(",") {
        out.push(cur.expect_name()?);
    }
    cur.expect_sym(";")?;
    Ok(out)
}

fn parse_operad(cur: &mut Cursor) -> Result<Presentation, ParseError> {
    let (name, _) = cur.expect_name()?;
    cur.expect_sym("{")?;
    let mut p = Presentation::new(&name, Vec::new());
    let mut ideal: Vec<(String, Token)> = Vec::new();
    let mut rel_names = BTreeSet::new();
    while !cur.eat_sym("}") {
        let (kw, kw_tok) = cur.expect_ident()?;
        match kw.as_str() {
            "param" => {
                for (n, tok) in name_list(cur)? {
                    if p.parameters.contains(&n) {
                        return Err(cur.error_at(&tok, ParseErrorKind::Duplicate(n)));
                    }
                    p.parameters.push(n);
                }
            }
            "gen" => {
                let (g, tok) = cur.expect_name()?;
                cur.expect_sym(":")?;
                let (arity, arity_tok) = cur.expect_int()?;
                if arity != "2" {
                    return Err(cur.error_at(
                        &arity_tok,
                        ParseErrorKind::Invalid(format!("generator `{g}` has arity {arity}, only 2 is supported")),
                    ));
                }
                let (sym, sym_tok) = cur.expect_ident()?;
                let symmetry = Symmetry::from_keyword(&sym).ok_or_else(|| {
                    cur.error_at(
                        &sym_tok,
                        ParseErrorKind::Invalid(format!(
                            "unknown symmetry `{sym}` (symmetric, antisymmetric or none)"
                        )),
                    )
                })?;
                cur.expect_sym(";")?;
                if p.generator(&g).is_some() {
                    return Err(cur.error_at(&tok, ParseErrorKind::Duplicate(g)));
                }
                p.generators.push(Generator::new(&g, symmetry));
            }
            "ideal" => ideal.extend(name_list(cur)?),
            "rel" => {
                let (rname, tok) = cur.expect_name()?;
                cur.expect_sym(":")?;
                let scope = Scope {
                    generators: &p.generators,
                    parameters: Some(&p.parameters),
                };
                let lhs = parse_element_at(cur, &scope)?;
                cur.expect_sym("=")?;
                let rhs = parse_element_at(cur, &scope)?;
                cur.expect_sym(";")?;
                let arity = if lhs.is_zero() { rhs.arity() } else { lhs.arity() };
                if !lhs.is_zero() && !rhs.is_zero() && lhs.arity() != rhs.arity() {
                    return Err(cur.error_at(&tok, ParseErrorKind::MixedArity(lhs.arity(), rhs.arity())));
                }
                if arity != 3 {
                    return Err(cur.error_at(&tok, ParseErrorKind::NotArity3 { name: rname, arity }));
                }
                let element = lhs.sub(&rhs);
                if !rel_names.insert(rname.clone()) {
                    return Err(cur.error_at(&tok, ParseErrorKind::Duplicate(rname)));
                }
                p.relations.push(Relation {
                    name: rname,
                    element,
                });
            }
            _ => {
                return Err(cur.error_at(
                    &kw_tok,
                    ParseErrorKind::Syntax(format!(
                        "expected `param`, `gen`, `ideal`, `rel` or `}}`, found `{kw}`"
                    )),
                ))
            }
        }
    }
    for (g, tok) in ideal {
        if p.generator(&g).is_none() {
            return Err(cur.error_at(&tok, ParseErrorKind::UnknownGenerator(g)));
        }
        p.ideal_gens.insert(g);
    }
    Ok(p)
}

fn resolve(cur: &Cursor, tok: &Token, name: &str, known: &[Presentation]) -> Result<Presentation, ParseError> {
    if let Some(p) = known.iter().find(|p| p.name == name) {
        return Ok(p.clone());
    }
    preset(name).map_err(|_| cur.error_at(tok, ParseErrorKind::UnknownOperad(name.to_string())))
}

// map NAME : SRC -> TGT { g(1,2) => element; ... }
fn parse_map(cur: &mut Cursor, known: &[Presentation]) -> Result<MapSpec, ParseError> {
    let (name, _) = cur.expect_name()?;
    cur.expect_sym(":")?;
    let (src, src_tok) = cur.expect_name()?;
    cur.expect_sym("->")?;
    let (tgt, tgt_tok) = cur.expect_name()?;
    let source = resolve(cur, &src_tok, &src, known)?;
    let target = resolve(cur, &tgt_tok, &tgt, known)?;
    cur.expect_sym("{")?;
    let mut images: Vec<(String, Element)> = Vec::new();
    while !cur.eat_sym("}") {
        let (g, g_tok) = cur.expect_ident()?;
        if source.generator(&g).is_none() {
            return Err(cur.error_at(&g_tok, ParseErrorKind::UnknownGenerator(g)));
        }
        cur.expect_sym("(")?;
        let one = cur.expect_int()?;
        cur.expect_sym(",")?;
        let two = cur.expect_int()?;
        cur.expect_sym(")")?;
        if one.0 != "1" || two.0 != "2" {
            return Err(cur.error_at(
                &one.1,
                ParseErrorKind::Invalid(format!("map images are declared as `{g}(1,2)`")),
            ));
        }
        cur.expect_sym("=>")?;
        let scope = Scope {
            generators: &target.generators,
            parameters: None,
        };
        let img_tok = cur.token().clone();
        let img = parse_element_at(cur, &scope)?;
        cur.expect_sym(";")?;
        if !img.is_zero() && img.arity() != 2 {
            return Err(cur.error_at(
                &img_tok,
                ParseErrorKind::Invalid(format!("image of `{g}` has arity {}", img.arity())),
            ));
        }
        if images.iter().any(|(h, _)| *h == g) {
            return Err(cur.error_at(&g_tok, ParseErrorKind::Duplicate(g)));
        }
        images.push((g, img));
    }
    Ok(MapSpec {
        name,
        source,
        target,
        images,
    })
}
