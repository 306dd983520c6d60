use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::coeff::{Poly, Rational};

use super::{LinalgError, RationalBasis, SparseVec};

/// Linear condition `Σ cᵢ·pᵢ + constant = 0`, scaled so that the first
/// parameter with a nonzero coefficient has coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coefficients: BTreeMap<String, Rational>,
    pub constant: Rational,
}

impl Constraint {
    fn normalized(coefficients: BTreeMap<String, Rational>, constant: Rational) -> Option<Self> {
        let coefficients: BTreeMap<String, Rational> =
            coefficients.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let lead = match coefficients.values().next() {
            Some(c) => c.clone(),
            None if constant.is_zero() => return None,
            None => constant.clone(),
        };
        let inv = lead.recip().expect("nonzero");
        Some(Constraint {
            coefficients: coefficients.into_iter().map(|(k, c)| (k, &c * &inv)).collect(),
            constant: &constant * &inv,
        })
    }

    /// `0 = 1`.
    pub fn is_contradiction(&self) -> bool {
        self.coefficients.is_empty() && !self.constant.is_zero()
    }

    /// `(name, value)` when the constraint pins a single parameter.
    pub fn as_assignment(&self) -> Option<(String, Rational)> {
        if self.coefficients.len() != 1 {
            return None;
        }
        let (k, _) = self.coefficients.iter().next()?;
        Some((k.clone(), -&self.constant))
    }

    /// The linear part as a polynomial.
    pub fn linear_part(&self) -> Poly {
        self.coefficients
            .iter()
            .fold(Poly::zero(), |acc, (k, c)| acc.add(&Poly::var(k).scale(c)))
    }
}

impl Ord for Constraint {
    /// By coefficients, then by right-hand side.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coefficients
            .cmp(&other.coefficients)
            .then_with(|| other.constant.cmp(&self.constant))
    }
}

impl PartialOrd for Constraint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_contradiction() {
            return write!(f, "0 = 1");
        }
        write!(f, "{} = {}", self.linear_part(), -&self.constant)
    }
}

/// Normalized, sorted and deduplicated linear conditions, with a flag
/// telling whether they can hold simultaneously.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSet {
    pub constraints: Vec<Constraint>,
    pub satisfiable: bool,
    /// Reduced echelon form of the system.
    pub reduced: Vec<Constraint>,
}

impl ConstraintSet {
    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    fn from_equations(eqs: BTreeSet<Constraint>) -> Self {
        let params: BTreeSet<&String> = eqs.iter().flat_map(|e| e.coefficients.keys()).collect();
        let params: Vec<&String> = params.into_iter().collect();
        let n = params.len();
        let mut basis = RationalBasis::new(n + 1);
        for e in &eqs {
            let entries = e
                .coefficients
                .iter()
                .map(|(k, c)| (params.iter().position(|p| *p == k).expect("known"), c.clone()))
                .chain(std::iter::once((n, e.constant.clone())));
            basis.insert(&SparseVec::from_entries(n + 1, entries));
        }
        let satisfiable = !basis.pivot_columns().contains(&n);
        let reduced = basis
            .rows()
            .into_iter()
            .filter_map(|row| {
                let coeffs = row
                    .entries()
                    .iter()
                    .filter(|(i, _)| *i < n)
                    .map(|(i, c)| (params[*i].clone(), c.clone()))
                    .collect();
                Constraint::normalized(coeffs, row.get(n))
            })
            .collect();
        ConstraintSet {
            constraints: eqs.into_iter().collect(),
            satisfiable,
            reduced,
        }
    }
}

impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.constraints.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))?;
        if !self.satisfiable {
            write!(f, " (unsatisfiable)")?;
        }
        Ok(())
    }
}

/// Conditions on the parameters under which every vector lies in `span`.
///
/// Each coordinate must have total degree at most one in the parameters.
/// A vector `v₀ + Σ pᵢ vᵢ` lies in the span iff the residue
/// `r(v₀) + Σ pᵢ r(vᵢ)` vanishes, one equation per column.
pub fn solve_parameter_constraints(
    vectors: &[SparseVec<Poly>],
    span: &RationalBasis,
) -> Result<ConstraintSet, LinalgError> {
    let dim = span.dim();
    let mut eqs = BTreeSet::new();
    for v in vectors {
        if v.dim() != dim {
            return Err(LinalgError::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
        let mut constant = Vec::new();
        let mut by_param: BTreeMap<String, Vec<(usize, Rational)>> = BTreeMap::new();
        for (i, c) in v.entries() {
            let (c0, lin) = c
                .linear_parts()
                .ok_or_else(|| LinalgError::Nonlinear(c.to_string()))?;
            constant.push((*i, c0));
            for (p, a) in lin {
                by_param.entry(p).or_default().push((*i, a));
            }
        }
        let r0 = span.reduce_vec(&SparseVec::from_entries(dim, constant));
        let residues: Vec<(String, SparseVec<Rational>)> = by_param
            .into_iter()
            .map(|(p, e)| (p, span.reduce_vec(&SparseVec::from_entries(dim, e))))
            .collect();
        let mut cols: BTreeSet<usize> = r0.entries().iter().map(|(i, _)| *i).collect();
        for (_, r) in &residues {
            cols.extend(r.entries().iter().map(|(i, _)| *i));
        }
        for c in cols {
            let coeffs = residues.iter().map(|(p, r)| (p.clone(), r.get(c))).collect();
            if let Some(eq) = Constraint::normalized(coeffs, r0.get(c)) {
                eqs.insert(eq);
            }
        }
    }
    Ok(ConstraintSet::from_equations(eqs))
}
