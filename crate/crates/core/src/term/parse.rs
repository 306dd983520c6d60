use crate::coeff::{parse_factor, Poly};
use crate::text::{Cursor, ParseError, ParseErrorKind, Tok, Token};

use super::{check_labels, Element, Generator, Monomial, TermError, Tree};

/// Context for resolving names while parsing elements.
pub struct Scope<'a> {
    pub generators: &'a [Generator],
    /// `None` accepts any parameter name.
    pub parameters: Option<&'a [String]>,
}

impl Scope<'_> {
    fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name() == name)
    }

    fn knows_param(&self, name: &str) -> bool {
        self.parameters
            .is_none_or(|ps| ps.iter().any(|p| p == name))
    }
}

pub(crate) fn parse_tree(cur: &mut Cursor, scope: &Scope) -> Result<Tree, ParseError> {
    match cur.peek().clone() {
        Tok::Int(n) => {
            let tok = cur.bump();
            let label: u32 = n.parse().map_err(|_| {
                cur.error_at(&tok, ParseErrorKind::Syntax("leaf label too large".into()))
            })?;
            if label == 0 {
                return Err(cur.error_at(
                    &tok,
                    ParseErrorKind::LeafOutOfRange {
                        label: 0,
                        leaves: 0,
                    },
                ));
            }
            Ok(Tree::leaf(label))
        }
        Tok::Ident(name) => {
            let tok = cur.bump();
            let gen = scope
                .generator(&name)
                .cloned()
                .ok_or_else(|| cur.error_at(&tok, ParseErrorKind::UnknownGenerator(name)))?;
            cur.expect_sym("(")?;
            let left = parse_tree(cur, scope)?;
            cur.expect_sym(",")?;
            let right = parse_tree(cur, scope)?;
            cur.expect_sym(")")?;
            Ok(Tree::node(gen, left, right))
        }
        _ => Err(cur.unexpected("monomial")),
    }
}

fn label_error(cur: &Cursor, tok: &Token, e: TermError) -> ParseError {
    let kind = match e {
        TermError::RepeatedLeaf(l) => ParseErrorKind::RepeatedLeaf(l),
        TermError::LeafOutOfRange { label, arity } => ParseErrorKind::LeafOutOfRange {
            label,
            leaves: arity,
        },
        other => ParseErrorKind::Syntax(other.to_string()),
    };
    cur.error_at(tok, kind)
}

fn ends_term(tok: &Tok) -> bool {
    matches!(tok, Tok::Eof | Tok::Sym("+" | "-" | ";" | "=" | ")" | ","))
}

/// One `coefficient "*"? monomial` term. A trailing bare integer is a leaf,
/// so `2*1` is twice the unit of arity one.
fn parse_term(cur: &mut Cursor, scope: &Scope) -> Result<(Poly, Tree, Token), ParseError> {
    let mut coeff = Poly::one();
    loop {
        let is_app = matches!(cur.peek(), Tok::Ident(_)) && matches!(cur.peek_at(1), Tok::Sym("("));
        let is_leaf = matches!(cur.peek(), Tok::Int(_)) && ends_term(cur.peek_at(1));
        if is_app || is_leaf {
            let tok = cur.token().clone();
            let tree = parse_tree(cur, scope)?;
            return Ok((coeff, tree, tok));
        }
        let f = parse_factor(cur, &|p| scope.knows_param(p))?;
        coeff = coeff.mul(&f);
        cur.eat_sym("*");
        if ends_term(cur.peek()) {
            return Err(cur.unexpected("monomial"));
        }
    }
}

/// Parses a signed sum of terms. The literal `0` is the zero element.
pub(crate) fn parse_element_at(cur: &mut Cursor, scope: &Scope) -> Result<Element, ParseError> {
    if matches!(cur.peek(), Tok::Int(n) if n == "0")
        && !matches!(cur.peek_at(1), Tok::Sym("/" | "*"))
    {
        cur.bump();
        return Ok(Element::zero(0));
    }
    let mut out: Option<Element> = None;
    let mut negate = cur.eat_sym("-");
    if !negate {
        cur.eat_sym("+");
    }
    loop {
        let (c, tree, tok) = parse_term(cur, scope)?;
        let n = check_labels(&tree).map_err(|e| label_error(cur, &tok, e))?;
        let c = if negate { c.neg() } else { c };
        let e = Element::from_raw(&tree).scale(&c);
        out = Some(match out {
            None => e,
            Some(acc) => {
                if acc.arity() != n {
                    return Err(cur.error_at(&tok, ParseErrorKind::MixedArity(acc.arity(), n)));
                }
                let mut s = acc.add(&e);
                if s.is_zero() {
                    s = Element::zero(n);
                }
                s
            }
        });
        if cur.eat_sym("+") {
            negate = false;
        } else if cur.eat_sym("-") {
            negate = true;
        } else {
            break;
        }
    }
    Ok(out.expect("at least one term"))
}

/// Parses an element such as `b(m(1,2),3) - 2*m(b(1,3),2)`.
pub fn parse_element(
    src: &str,
    generators: &[Generator],
    parameters: Option<&[String]>,
) -> Result<Element, ParseError> {
    let mut cur = Cursor::new(src)?;
    let scope = Scope {
        generators,
        parameters,
    };
    let e = parse_element_at(&mut cur, &scope)?;
    cur.expect_eof()?;
    Ok(e)
}

/// Parses a single monomial and returns its canonical form with sign.
pub fn parse_monomial(src: &str, generators: &[Generator]) -> Result<Element, ParseError> {
    let mut cur = Cursor::new(src)?;
    let scope = Scope {
        generators,
        parameters: Some(&[]),
    };
    let tok = cur.token().clone();
    let tree = parse_tree(&mut cur, &scope)?;
    cur.expect_eof()?;
    Element::canonicalize(&tree).map_err(|e| label_error(&cur, &tok, e))
}

impl Monomial {
    /// Parses the textual form of a monomial already in canonical form.
    pub fn parse(src: &str, generators: &[Generator]) -> Result<Monomial, ParseError> {
        let e = parse_monomial(src, generators)?;
        let found = match e.terms().next() {
            Some((m, c)) if c.is_one() && e.len() == 1 => Some(m.clone()),
            _ => None,
        };
        found.ok_or_else(|| ParseError {
            line: 1,
            col: 1,
            kind: ParseErrorKind::Invalid(format!("`{src}` is not in canonical form")),
        })
    }
}
