use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::coeff::{Poly, Rational};

use super::SparseVec;

/// Fraction-free triangular basis over polynomials in the parameters.
///
/// Rows are stored in elimination order; row `k` vanishes at the pivot
/// columns of rows `0..k`. The rank is the generic rank over the field of
/// rational functions, and the product of the pivots certifies where it
/// may drop.
#[derive(Clone, Debug)]
pub struct PolyBasis {
    dim: usize,
    rows: Vec<SparseVec<Poly>>,
    pivots: Vec<(usize, Poly)>,
    /// Parameters divided out of some row during elimination.
    divided: BTreeSet<String>,
}

impl PolyBasis {
    /// Eliminates `vectors`. Pivots are chosen among all remaining entries:
    /// lowest column block first when `blocks` is given, then lowest
    /// degree, leftmost column, smallest polynomial and earliest row.
    pub fn reduce(vectors: Vec<SparseVec<Poly>>, dim: usize, blocks: Option<&[usize]>) -> Self {
        let mut divided = BTreeSet::new();
        let mut remaining: Vec<SparseVec<Poly>> = vectors
            .into_iter()
            .filter(|v| !v.is_zero())
            .map(|v| normalize(&v, &mut divided))
            .collect();
        let block = |c: usize| blocks.map_or(0, |b| b[c]);
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        while !remaining.is_empty() {
            let mut best: Option<(usize, usize, &Poly)> = None;
            for (r, v) in remaining.iter().enumerate() {
                for (c, p) in v.entries() {
                    let better = match best {
                        None => true,
                        Some((_, bc, bp)) => {
                            (block(*c), p.degree(), *c)
                                .cmp(&(block(bc), bp.degree(), bc))
                                .then_with(|| p.pivot_cmp(bp))
                                == Ordering::Less
                        }
                    };
                    if better {
                        best = Some((r, *c, p));
                    }
                }
            }
            let (r, col, _) = best.expect("nonzero rows have entries");
            let row = remaining.remove(r);
            let p = row.get(col);
            let unit = p.constant_value();
            let mut next = Vec::with_capacity(remaining.len());
            for v in remaining {
                let a = v.get(col);
                let w = if a.is_zero() {
                    v
                } else if let Some(u) = &unit {
                    v.add_scaled(&row, &a.scale(&u.recip().expect("nonzero pivot")).neg())
                } else {
                    v.combine(&p, &row, &a.neg())
                };
                if !w.is_zero() {
                    next.push(normalize(&w, &mut divided));
                }
            }
            remaining = next;
            pivots.push((col, p));
            rows.push(row);
        }
        PolyBasis {
            dim,
            rows,
            pivots,
            divided,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<Poly>] {
        &self.rows
    }

    /// Pivot column and pivot polynomial of each row, in elimination order.
    pub fn pivots(&self) -> &[(usize, Poly)] {
        &self.pivots
    }

    /// Product of the pivots and of the parameters divided out along the
    /// way, made monic. Where it does not vanish, the specialized rows lie
    /// in the specialized span and stay independent.
    pub fn certificate(&self) -> Poly {
        let pivots = self
            .pivots
            .iter()
            .fold(Poly::one(), |acc, (_, p)| acc.mul(p));
        let c = self
            .divided
            .iter()
            .fold(pivots, |acc, x| acc.mul(&Poly::var(x)));
        match c.leading_coeff().and_then(|a| a.recip()) {
            Some(inv) => c.scale(&inv),
            None => c,
        }
    }

    /// Residue of `v` after fraction-free reduction by the rows in order.
    pub fn reduce_vec(&self, v: &SparseVec<Poly>) -> SparseVec<Poly> {
        let mut v = v.clone();
        for (row, (col, p)) in self.rows.iter().zip(&self.pivots) {
            let a = v.get(*col);
            if a.is_zero() {
                continue;
            }
            v = match p.constant_value() {
                Some(u) => v.add_scaled(row, &a.scale(&u.recip().expect("nonzero pivot")).neg()),
                None => v.combine(p, row, &a.neg()),
            };
            if !v.is_zero() {
                v = normalize(&v, &mut BTreeSet::new());
            }
        }
        v
    }

    /// Generic membership: `v` lies in the span over rational functions.
    pub fn contains(&self, v: &SparseVec<Poly>) -> bool {
        self.reduce_vec(v).is_zero()
    }
}

/// Divides out the monomial content shared by all entries and scales the
/// first entry's leading coefficient to one.
fn normalize(v: &SparseVec<Poly>, divided: &mut BTreeSet<String>) -> SparseVec<Poly> {
    let mut common: Option<BTreeMap<String, u32>> = None;
    for (_, c) in v.entries() {
        let m = c.monomial_content();
        common = Some(match common {
            None => m,
            Some(prev) => prev
                .into_iter()
                .filter_map(|(k, e)| m.get(&k).map(|f| (k, e.min(*f))))
                .collect(),
        });
        if common.as_ref().is_some_and(|c| c.is_empty()) {
            break;
        }
    }
    let common = common.unwrap_or_default();
    divided.extend(common.keys().cloned());
    let lead = v
        .leading()
        .and_then(|(_, c)| c.leading_coeff().cloned())
        .unwrap_or_else(Rational::one);
    let inv = lead.recip().unwrap_or_else(Rational::one);
    v.map(|c| c.div_monomial(&common).scale(&inv))
}
