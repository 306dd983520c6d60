use std::collections::HashMap;

use crate::coeff::Rational;

use super::{LinalgError, SparseVec};

/// Incremental Gauss–Jordan basis over the rationals.
///
/// Every row has pivot entry 1 and is zero at the pivot columns of all
/// other rows. When provenance is tracked, each row also records its
/// expression as a combination of the inserted vectors.
#[derive(Clone, Debug)]
pub struct RationalBasis {
    dim: usize,
    rows: Vec<SparseVec<Rational>>,
    pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
    provenance: Option<Vec<SparseVec<Rational>>>,
    inserted: usize,
}

/// Result of a membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub is_member: bool,
    /// Residue after reduction; zero exactly for members.
    pub residue: SparseVec<Rational>,
    /// Coefficients on the inserted vectors, when provenance is tracked.
    pub coordinates: Option<Vec<(usize, Rational)>>,
}

impl RationalBasis {
    pub fn new(dim: usize) -> Self {
        RationalBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: HashMap::new(),
            provenance: None,
            inserted: 0,
        }
    }

    /// A basis that records how each row combines the inserted vectors.
    pub fn with_provenance(dim: usize) -> Self {
        RationalBasis {
            provenance: Some(Vec::new()),
            ..RationalBasis::new(dim)
        }
    }

    pub fn from_vectors<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a SparseVec<Rational>>) -> Self {
        let mut b = RationalBasis::new(dim);
        for v in vectors {
            b.insert(v);
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Rows sorted by pivot column: the reduced row echelon form.
    pub fn rows(&self) -> Vec<&SparseVec<Rational>> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| &self.rows[i]).collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    fn check(&self, v: &SparseVec<Rational>) -> Result<(), LinalgError> {
        if v.dim() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// Subtracts the basis rows at the pivot columns of `v`; the second
    /// component lists the multiples used.
    fn reduce_with(&self, v: &SparseVec<Rational>) -> (SparseVec<Rational>, Vec<(usize, Rational)>) {
        let used: Vec<(usize, Rational)> = v
            .entries()
            .iter()
            .filter_map(|(c, a)| self.pivot_row.get(c).map(|&r| (r, a.clone())))
            .collect();
        let mut out = v.clone();
        for (r, a) in &used {
            out = out.add_scaled(&self.rows[*r], &-a);
        }
        (out, used)
    }

    /// Residue of `v` modulo the span.
    pub fn reduce_vec(&self, v: &SparseVec<Rational>) -> SparseVec<Rational> {
        assert_eq!(v.dim(), self.dim);
        self.reduce_with(v).0
    }

    /// Inserts a vector; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec<Rational>) -> bool {
        assert_eq!(v.dim(), self.dim, "dimension mismatch");
        let index = self.inserted;
        self.inserted += 1;
        let (residue, used) = self.reduce_with(v);
        let Some((col, lead)) = residue.leading().cloned() else {
            return false;
        };
        let inv = lead.recip().expect("nonzero pivot");
        let row = residue.scale(&inv);
        let comb = self.provenance.as_ref().map(|prov| {
            let mut c = SparseVec::unit(self.inserted, index, Rational::one());
            for (r, a) in &used {
                c = c.add_scaled(&widen(&prov[*r], self.inserted), &-a);
            }
            c.scale(&inv)
        });
        // clear the new pivot column from the existing rows
        for r in 0..self.rows.len() {
            let a = self.rows[r].get(col);
            if a.is_zero() {
                continue;
            }
            self.rows[r] = self.rows[r].add_scaled(&row, &-&a);
            if let (Some(prov), Some(c)) = (self.provenance.as_mut(), comb.as_ref()) {
                prov[r] = widen(&prov[r], self.inserted).add_scaled(c, &-&a);
            }
        }
        self.pivot_row.insert(col, self.rows.len());
        self.pivots.push(col);
        self.rows.push(row);
        if let (Some(prov), Some(c)) = (self.provenance.as_mut(), comb) {
            prov.push(c);
        }
        true
    }

    pub fn contains(&self, v: &SparseVec<Rational>) -> bool {
        self.reduce_vec(v).is_zero()
    }

    /// Membership with the residue and, when tracked, coordinates over the
    /// inserted vectors.
    pub fn member(&self, v: &SparseVec<Rational>) -> Result<Membership, LinalgError> {
        self.check(v)?;
        let (residue, used) = self.reduce_with(v);
        let is_member = residue.is_zero();
        let coordinates = match (&self.provenance, is_member) {
            (Some(prov), true) => {
                let mut c = SparseVec::zero(self.inserted);
                for (r, a) in &used {
                    c = c.add_scaled(&widen(&prov[*r], self.inserted), a);
                }
                Some(c.entries().to_vec())
            }
            _ => None,
        };
        Ok(Membership {
            is_member,
            residue,
            coordinates,
        })
    }
}

fn widen(v: &SparseVec<Rational>, dim: usize) -> SparseVec<Rational> {
    if v.dim() == dim {
        v.clone()
    } else {
        v.remap(dim, |i| i)
    }
}

/// Checks that `coordinates` applied to `vectors` reproduce `target`.
pub fn verify_coordinates(
    vectors: &[SparseVec<Rational>],
    coordinates: &[(usize, Rational)],
    target: &SparseVec<Rational>,
) -> bool {
    let mut acc = SparseVec::zero(target.dim());
    for (i, c) in coordinates {
        acc = acc.add_scaled(&vectors[*i], c);
    }
    acc == *target
}
