use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use super::{CoeffError, Rational};
use crate::text::{Cursor, ParseError, ParseErrorKind, Tok};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial over the rationals in named parameters.
///
/// The parameter list is kept equal to the set of parameters that actually
/// occur, sorted by name, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Arc<[String]>,
    terms: BTreeMap<Exponent, Rational>,
}

pub type Assignment = BTreeMap<String, Rational>;

impl Default for Poly {
    fn default() -> Self {
        Poly::zero()
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            vars: Arc::from(Vec::new()),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponent(Vec::new()), c);
        }
        Poly {
            vars: Arc::from(Vec::new()),
            terms,
        }
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Rational::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Exponent(vec![1]), Rational::one());
        Poly {
            vars: Arc::from(vec![name.to_string()]),
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(Rational::zero),
        )
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Exponent::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Terms as `(var -> exponent, coefficient)`, highest term first.
    pub fn terms(&self) -> impl Iterator<Item = (BTreeMap<&str, u32>, &Rational)> + '_ {
        self.terms.iter().rev().map(move |(e, c)| {
            let m = self
                .vars
                .iter()
                .zip(e.0.iter())
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| (v.as_str(), k))
                .collect();
            (m, c)
        })
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Constant term plus coefficient of each parameter, provided the
    /// polynomial has total degree at most one.
    pub fn linear_parts(&self) -> Option<(Rational, BTreeMap<String, Rational>)> {
        if self.degree() > 1 {
            return None;
        }
        let mut constant = Rational::zero();
        let mut lin = BTreeMap::new();
        for (e, c) in &self.terms {
            match e.0.iter().position(|&k| k == 1) {
                None => constant = c.clone(),
                Some(i) => {
                    lin.insert(self.vars[i].clone(), c.clone());
                }
            }
        }
        Some((constant, lin))
    }

    /// Rebuilds the polynomial with a new variable list (a superset).
    fn embed(&self, vars: &Arc<[String]>) -> BTreeMap<Exponent, Rational> {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return self.terms.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0; vars.len()];
                for (i, &k) in e.0.iter().enumerate() {
                    out[map[i]] = k;
                }
                (Exponent(out), c.clone())
            })
            .collect()
    }

    fn union_vars(a: &Poly, b: &Poly) -> Arc<[String]> {
        if *a.vars == *b.vars {
            return a.vars.clone();
        }
        if b.vars.is_empty() {
            return a.vars.clone();
        }
        if a.vars.is_empty() {
            return b.vars.clone();
        }
        let set: BTreeSet<&String> = a.vars.iter().chain(b.vars.iter()).collect();
        Arc::from(set.into_iter().cloned().collect::<Vec<_>>())
    }

    /// Drops zero coefficients and parameters that no longer occur.
    fn normalized(vars: Arc<[String]>, mut terms: BTreeMap<Exponent, Rational>) -> Poly {
        terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..vars.len())
            .map(|i| terms.keys().any(|e| e.0[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return Poly { vars, terms };
        }
        let new_vars: Vec<String> = vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = terms
            .into_iter()
            .map(|(e, c)| {
                let k: Vec<u32> = e
                    .0
                    .iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(&k, _)| k)
                    .collect();
                (Exponent(k), c)
            })
            .collect();
        Poly {
            vars: Arc::from(new_vars),
            terms,
        }
    }

    fn add_scaled(&self, other: &Poly, sign: bool) -> Poly {
        if other.is_zero() {
            return self.clone();
        }
        let vars = Poly::union_vars(self, other);
        let mut terms = self.embed(&vars);
        for (e, c) in other.embed(&vars) {
            let entry = terms.entry(e).or_insert_with(Rational::zero);
            if sign {
                *entry += &c;
            } else {
                *entry -= &c;
            }
        }
        Poly::normalized(vars, terms)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.add_scaled(other, true)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add_scaled(other, false)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        let vars = Poly::union_vars(self, other);
        let a = self.embed(&vars);
        let b = other.embed(&vars);
        let mut terms: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e = Exponent(ea.0.iter().zip(&eb.0).map(|(x, y)| x + y).collect());
                *terms.entry(e).or_insert_with(Rational::zero) += &(ca * cb);
            }
        }
        Poly::normalized(vars, terms)
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::one())
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes rational values for some parameters.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Poly, CoeffError> {
        for name in assignment.keys() {
            if !self.vars.iter().any(|v| v == name) {
                return Err(CoeffError::UnknownParameter(name.clone()));
            }
        }
        Ok(self.evaluate_lenient(assignment))
    }

    /// Like [`Poly::evaluate`] but ignores assignments to absent parameters.
    pub fn evaluate_lenient(&self, assignment: &Assignment) -> Poly {
        if self.is_constant() {
            return self.clone();
        }
        let values: Vec<Option<&Rational>> =
            self.vars.iter().map(|v| assignment.get(v)).collect();
        if values.iter().all(Option::is_none) {
            return self.clone();
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = e.0.clone();
            for (i, val) in values.iter().enumerate() {
                if let Some(val) = val {
                    coef *= &val.pow(e.0[i]);
                    rest[i] = 0;
                }
            }
            *terms
                .entry(Exponent(rest))
                .or_insert_with(Rational::zero) += &coef;
        }
        Poly::normalized(self.vars.clone(), terms)
    }

    /// Total order used to pick pivots: constants first, then by degree,
    /// number of terms and finally term-by-term from the top.
    pub fn pivot_cmp(&self, other: &Poly) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.num_terms().cmp(&other.num_terms()))
            .then_with(|| {
                let a: Vec<_> = self.terms().collect();
                let b: Vec<_> = other.terms().collect();
                for ((ma, ca), (mb, cb)) in a.iter().zip(b.iter()) {
                    let o = ma.cmp(mb).then_with(|| ca.abs().cmp(&cb.abs())).then_with(|| ca.cmp(cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }

    /// Largest monomial dividing every term, as an exponent map.
    pub fn monomial_content(&self) -> BTreeMap<String, u32> {
        let mut out = BTreeMap::new();
        if self.is_zero() {
            return out;
        }
        for (i, v) in self.vars.iter().enumerate() {
            let k = self.terms.keys().map(|e| e.0[i]).min().unwrap_or(0);
            if k > 0 {
                out.insert(v.clone(), k);
            }
        }
        out
    }

    /// Divides by a monomial that is known to divide every term.
    pub fn div_monomial(&self, m: &BTreeMap<String, u32>) -> Poly {
        if m.is_empty() {
            return self.clone();
        }
        let sub: Vec<u32> = self
            .vars
            .iter()
            .map(|v| m.get(v).copied().unwrap_or(0))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let k = e
                    .0
                    .iter()
                    .zip(&sub)
                    .map(|(a, b)| a.checked_sub(*b).expect("monomial divides"))
                    .collect();
                (Exponent(k), c.clone())
            })
            .collect();
        Poly::normalized(self.vars.clone(), terms)
    }

    /// Parses the textual form, treating every identifier as a parameter.
    pub fn parse(src: &str) -> Result<Poly, ParseError> {
        let mut cur = Cursor::new(src)?;
        let p = parse_sum(&mut cur, &|_| true)?;
        cur.expect_eof()?;
        Ok(p)
    }
}

/// `sum := ['+'|'-'] product (('+'|'-') product)*`
pub(crate) fn parse_sum(
    cur: &mut Cursor,
    known: &dyn Fn(&str) -> bool,
) -> Result<Poly, ParseError> {
    let mut acc = Poly::zero();
    let mut negate = false;
    if cur.eat_sym("-") {
        negate = true;
    } else {
        cur.eat_sym("+");
    }
    loop {
        let p = parse_product(cur, known)?;
        acc = if negate { acc.sub(&p) } else { acc.add(&p) };
        if cur.eat_sym("+") {
            negate = false;
        } else if cur.eat_sym("-") {
            negate = true;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_product(cur: &mut Cursor, known: &dyn Fn(&str) -> bool) -> Result<Poly, ParseError> {
    let mut acc = parse_factor(cur, known)?;
    while cur.eat_sym("*") {
        acc = acc.mul(&parse_factor(cur, known)?);
    }
    Ok(acc)
}

/// `factor := INT ['/' INT] | NAME ['^' INT] | '(' sum ')' ['^' INT]`
pub(crate) fn parse_factor(
    cur: &mut Cursor,
    known: &dyn Fn(&str) -> bool,
) -> Result<Poly, ParseError> {
    let base = match cur.peek().clone() {
        Tok::Int(n) => {
            let tok = cur.bump();
            let mut text = n;
            if cur.eat_sym("/") {
                let (d, _) = cur.expect_int()?;
                text = format!("{text}/{d}");
            }
            let r: Rational = text.parse().map_err(|e: CoeffError| {
                cur.error_at(&tok, ParseErrorKind::Syntax(e.to_string()))
            })?;
            return Ok(Poly::constant(r));
        }
        Tok::Ident(name) => {
            let tok = cur.bump();
            if !known(&name) {
                return Err(cur.error_at(&tok, ParseErrorKind::UndeclaredParameter(name)));
            }
            Poly::var(&name)
        }
        Tok::Sym("(") => {
            cur.bump();
            let p = parse_sum(cur, known)?;
            cur.expect_sym(")")?;
            p
        }
        _ => return Err(cur.unexpected("number, parameter or `(`")),
    };
    if cur.eat_sym("^") {
        let (k, tok) = cur.expect_int()?;
        let k: u32 = k.parse().map_err(|_| {
            cur.error_at(&tok, ParseErrorKind::Syntax("exponent too large".into()))
        })?;
        return Ok(base.pow(k));
    }
    Ok(base)
}

impl FromStr for Poly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Poly::parse(s)
    }
}

impl From<Rational> for Poly {
    fn from(r: Rational) -> Self {
        Poly::constant(r)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &BTreeMap<&str, u32>) -> fmt::Result {
    for (i, (v, k)) in m.iter().enumerate() {
        if i > 0 {
            write!(f, "*")?;
        }
        if *k == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write_monomial(f, &m)?;
            } else {
                write!(f, "{a}*")?;
                write_monomial(f, &m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn assign(pairs: &[(&str, i64)]) -> Assignment {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), Rational::from_int(*v)))
            .collect()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&Poly::var("t") + &Poly::var("v"), p("t + v"));
        assert!((&p("t+v") - &p("t+v")).is_zero());
        assert_eq!(&p("2*t") * &p("3*v"), p("6*t*v"));
        assert_eq!((&p("t+v") - &p("t+v")).vars().len(), 0);
    }

    #[test]
    fn evaluation_examples() {
        assert!(p("t^2").evaluate(&assign(&[("t", 0)])).unwrap().is_zero());
        assert!(p("t").evaluate(&assign(&[("t", 1)])).unwrap().is_one());
        assert_eq!(
            p("2*v + t").evaluate(&assign(&[("v", 3)])).unwrap(),
            p("t + 6")
        );
        assert!(matches!(
            p("t").evaluate(&assign(&[("w", 1)])),
            Err(CoeffError::UnknownParameter(_))
        ));
    }

    #[test]
    fn printing_is_graded_lex_descending() {
        assert_eq!(p("-1/2 + 2*t*v^2").to_string(), "2*t*v^2 - 1/2");
        assert_eq!(p("v + t + t^2").to_string(), "t^2 + t + v");
        assert_eq!(p("-t").to_string(), "-t");
        assert_eq!(p("(t+1)^2").to_string(), "t^2 + 2*t + 1");
        assert_eq!(p("1/2*h").to_string(), "1/2*h");
    }

    #[test]
    fn canonical_after_cancellation() {
        let a = &p("t*v + 1") - &p("t*v");
        assert_eq!(a, Poly::one());
        assert!(a.is_constant());
    }

    #[test]
    fn linear_parts() {
        let (c, lin) = p("2*t - v + 3").linear_parts().unwrap();
        assert_eq!(c, Rational::from_int(3));
        assert_eq!(lin["t"], Rational::from_int(2));
        assert_eq!(lin["v"], Rational::from_int(-1));
        assert!(p("t*v").linear_parts().is_none());
    }

    #[test]
    fn monomial_content() {
        let q = p("t^2*v + t^3");
        let m = q.monomial_content();
        assert_eq!(m.get("t"), Some(&2));
        assert_eq!(q.div_monomial(&m), p("v + t"));
    }
}
