//! Quotient dimensions and the associated graded of the bracket filtration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::coeff::Poly;
use crate::linalg::{to_rational, LinalgError, PolyBasis, RationalBasis, SparseVec};
use crate::presentation::Presentation;
use crate::spanning::{ideal_span, FreeBasis, SpanningError};
use crate::term::Element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error(transparent)]
    Spanning(#[from] SpanningError),
    #[error("presentation has free parameters: {0}")]
    Symbolic(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Splits an element by bracket weight.
pub fn weight_split(e: &Element, ideal_gens: &BTreeSet<String>) -> BTreeMap<usize, Element> {
    let mut out: BTreeMap<usize, Element> = BTreeMap::new();
    for (m, c) in e.terms() {
        let w = m.bracket_weight(ideal_gens);
        let part = out.entry(w).or_insert_with(|| Element::zero(e.arity()));
        *part = part.add(&Element::from_monomial(m.clone(), c.clone()));
    }
    out
}

/// The lowest-weight component, or zero.
pub fn leading_part(e: &Element, ideal_gens: &BTreeSet<String>) -> Element {
    weight_split(e, ideal_gens)
        .into_iter()
        .next()
        .map(|(_, x)| x)
        .unwrap_or_else(|| Element::zero(e.arity()))
}

/// Size of the free component, rank of the ideal and their difference. For
/// symbolic presentations the rank is generic and `certificate` vanishes
/// wherever a specialization may have a larger quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dimension {
    pub arity: usize,
    pub free: usize,
    pub rank: usize,
    pub certificate: Option<Poly>,
}

impl Dimension {
    pub fn quotient(&self) -> usize {
        self.free - self.rank
    }
}

pub fn quotient_dimension(p: &Presentation, n: usize) -> Result<Dimension, GradedError> {
    let basis = FreeBasis::new(&p.generators, n)?;
    if n < 3 {
        return Ok(Dimension {
            arity: n,
            free: basis.len(),
            rank: 0,
            certificate: None,
        });
    }
    let vectors = ideal_span(p, n)?.vectors(&basis);
    let symbolic = vectors.iter().any(|v| v.entries().iter().any(|(_, c)| !c.is_constant()));
    let (rank, certificate) = if symbolic {
        let b = PolyBasis::reduce(vectors, basis.len(), None);
        (b.rank(), Some(b.certificate()))
    } else {
        (rational_basis(&vectors, basis.len())?.rank(), None)
    };
    Ok(Dimension {
        arity: n,
        free: basis.len(),
        rank,
        certificate,
    })
}

fn rational_basis(vectors: &[SparseVec<Poly>], dim: usize) -> Result<RationalBasis, LinalgError> {
    let mut b = RationalBasis::new(dim);
    for v in vectors {
        b.insert(&to_rational(v)?);
    }
    Ok(b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRow {
    pub weight: usize,
    pub free: usize,
    /// Independent leading parts of ideal elements in this weight.
    pub leading: usize,
    pub gr: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTable {
    pub arity: usize,
    pub rows: Vec<GradedRow>,
}

impl GradedTable {
    pub fn gr(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.gr).collect()
    }

    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| r.gr).sum()
    }
}

impl fmt::Display for GradedTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "weight  free  leading  gr")?;
        for r in &self.rows {
            writeln!(f, "{:>6}  {:>4}  {:>7}  {:>2}", r.weight, r.free, r.leading, r.gr)?;
        }
        write!(f, "total gr = {}", self.total())
    }
}

/// Dimensions of the associated graded of the quotient for the filtration
/// by bracket weight. The presentation must have rational coefficients.
///
/// Columns are ordered by weight and the ideal is brought to reduced
/// echelon form; each row's pivot sits in the weight of its leading part,
/// so the pivots in a weight block span the leading parts of that weight.
pub fn gr_dimensions(p: &Presentation, n: usize) -> Result<GradedTable, GradedError> {
    if !p.parameters.is_empty() {
        return Err(GradedError::Symbolic(p.parameters.join(", ")));
    }
    let span = if n >= 3 { ideal_span(p, n)?.elements } else { Vec::new() };
    gr_of_span(p, n, &span)
}

/// [`gr_dimensions`] for the ideal spanned by `span` in arity `n`.
pub fn gr_of_span(p: &Presentation, n: usize, span: &[Element]) -> Result<GradedTable, GradedError> {
    let basis = FreeBasis::new(&p.generators, n)?;
    let weights = basis.weights(&p.ideal_gens);
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&i| (weights[i], i));
    let mut column = vec![0; basis.len()];
    for (new, &old) in order.iter().enumerate() {
        column[old] = new;
    }
    let max_w = weights.iter().copied().max().unwrap_or(0);
    let mut free = vec![0; max_w + 1];
    for &w in &weights {
        free[w] += 1;
    }
    let mut leading = vec![0; max_w + 1];
    let mut vectors = Vec::with_capacity(span.len());
    for e in span {
        vectors.push(basis.vector(e)?.remap(basis.len(), |i| column[i]));
    }
    let rb = rational_basis(&vectors, basis.len())?;
    for c in rb.pivot_columns() {
        leading[weights[order[c]]] += 1;
    }
    let rows = (0..=max_w)
        .map(|w| GradedRow {
            weight: w,
            free: free[w],
            leading: leading[w],
            gr: free[w] - leading[w],
        })
        .collect();
    Ok(GradedTable { arity: n, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Assignment, Rational};
    use crate::presentation::preset;
    use crate::spanning::{ap_graded_oracle, brute_force_span};

    fn at(p: &Presentation, vals: &[(&str, i64)]) -> Presentation {
        let a: Assignment = vals.iter().map(|(k, v)| (k.to_string(), Rational::from_int(*v))).collect();
        p.evaluate(&a).unwrap()
    }

    #[test]
    fn weight_split_of_leibniz() {
        let p = preset("almost-poisson").unwrap();
        let leib = p.relations.iter().find(|r| r.name == "leibniz").unwrap();
        let parts = weight_split(&leib.element, &p.ideal_gens);
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![1]);
        let assoc = &p.relations.iter().find(|r| r.name == "assoc").unwrap().element;
        assert_eq!(leading_part(assoc, &p.ideal_gens).len(), 2);
    }

    #[test]
    fn almost_poisson_tables() {
        let p = preset("almost-poisson").unwrap();
        let t3 = gr_dimensions(&p, 3).unwrap();
        assert_eq!(t3.gr(), vec![1, 3, 3]);
        assert_eq!(t3.gr().iter().map(|&x| x as u128).collect::<Vec<_>>(), ap_graded_oracle(3));
        assert_eq!(gr_dimensions(&p, 4).unwrap().gr(), vec![1, 6, 15, 15]);
    }

    #[test]
    fn brute_force_span_gives_the_same_tables() {
        for (name, n) in [("almost-poisson", 4), ("poisson", 4), ("kokoris", 4), ("alternative", 4)] {
            let p = preset(name).unwrap();
            let brute = brute_force_span(&p.relation_elements(), &p.generators, n).unwrap();
            assert_eq!(gr_of_span(&p, n, &brute).unwrap(), gr_dimensions(&p, n).unwrap(), "{name}");
        }
    }

    #[test]
    fn poisson_table_at_three() {
        let p = preset("poisson").unwrap();
        let t = gr_dimensions(&p, 3).unwrap();
        assert_eq!(t.gr(), vec![1, 3, 2]);
        assert_eq!(t.total(), quotient_dimension(&p, 3).unwrap().quotient());
    }

    #[test]
    fn flat_members_have_gr_equal_to_quotient() {
        let fam = preset("ap-family").unwrap();
        for vals in [[("t", 0), ("v", 0)], [("t", 1), ("v", 0)], [("t", 0), ("v", 1)]] {
            let p = at(&fam, &vals);
            let t = gr_dimensions(&p, 3).unwrap();
            assert_eq!(t.total(), quotient_dimension(&p, 3).unwrap().quotient());
        }
    }

    #[test]
    fn symbolic_presentations_are_rejected() {
        assert!(matches!(
            gr_dimensions(&preset("ap-family").unwrap(), 3),
            Err(GradedError::Symbolic(_))
        ));
    }

    #[test]
    fn symbolic_dimension_has_certificate() {
        let d = quotient_dimension(&preset("livernet-loday").unwrap(), 3).unwrap();
        assert_eq!(d.quotient(), 6);
        assert!(d.certificate.is_some());
        let d = quotient_dimension(&preset("free2").unwrap(), 2).unwrap();
        assert_eq!((d.free, d.quotient()), (2, 2));
    }
}
