use proptest::prelude::*;

use super::*;
use crate::coeff::Assignment;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn qvec(v: &[i64]) -> SparseVec<Rational> {
    SparseVec::from_dense(v.iter().map(|&x| q(x)).collect())
}

fn pvec(v: &[&str]) -> SparseVec<Poly> {
    SparseVec::from_dense(v.iter().map(|s| Poly::parse(s).unwrap()).collect())
}

#[test]
fn rank_examples() {
    let b = RationalBasis::from_vectors(2, &[qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1])]);
    assert_eq!(b.rank(), 2);
    let p = PolyBasis::reduce(vec![pvec(&["t", "1"]), pvec(&["t", "1"])], 2, None);
    assert_eq!(p.rank(), 1);
    assert!(p.certificate().is_one());
    assert_eq!(p.pivots()[0].0, 1);
}

#[test]
fn reduce_rejects_mixed_domains() {
    let v = vec![pvec(&["t", "1"])];
    assert!(matches!(
        reduce(&v, 2, Domain::Rational),
        Err(LinalgError::MixedDomain(_))
    ));
    assert_eq!(reduce(&v, 2, Domain::Polynomial).unwrap().rank(), 1);
    assert!(matches!(
        reduce(&v, 3, Domain::Polynomial),
        Err(LinalgError::DimensionMismatch { .. })
    ));
}

#[test]
fn rref_rows_have_increasing_pivots() {
    let b = RationalBasis::from_vectors(
        4,
        &[qvec(&[0, 2, 1, 0]), qvec(&[1, 1, 0, 3]), qvec(&[1, 3, 1, 3])],
    );
    assert_eq!(b.rank(), 2);
    assert_eq!(b.pivot_columns(), vec![0, 1]);
    let rows = b.rows();
    assert_eq!(rows[0].get(1), q(0));
    assert_eq!(rows[1].get(0), q(0));
}

#[test]
fn zero_vector_is_a_member_with_zero_coordinates() {
    let mut b = RationalBasis::with_provenance(3);
    b.insert(&qvec(&[1, 2, 0]));
    let m = b.member(&SparseVec::zero(3)).unwrap();
    assert!(m.is_member);
    assert_eq!(m.coordinates, Some(vec![]));
}

#[test]
fn membership_coordinates_reproduce_the_target() {
    let vs = vec![qvec(&[1, 1, 0]), qvec(&[0, 1, 1]), qvec(&[1, 2, 1])];
    let mut b = RationalBasis::with_provenance(3);
    for v in &vs {
        b.insert(v);
    }
    let target = qvec(&[2, 5, 3]);
    let m = b.member(&target).unwrap();
    assert!(m.is_member);
    assert!(verify_coordinates(&vs, m.coordinates.as_ref().unwrap(), &target));
    assert!(!b.member(&qvec(&[1, 0, 0])).unwrap().is_member);
    assert!(b.member(&qvec(&[1, 0])).is_err());
}

#[test]
fn poly_certificate_includes_divided_parameters() {
    // (t, 1) and (0, 1): eliminating leaves t*e1, which is divided by t
    let p = PolyBasis::reduce(vec![pvec(&["t", "1"]), pvec(&["0", "1"])], 2, None);
    assert_eq!(p.rank(), 2);
    assert_eq!(p.certificate().to_string(), "t");
}

#[test]
fn constraint_examples() {
    let span = RationalBasis::new(3);
    let v = pvec(&["2*v", "2*v", "0"]);
    let c = solve_parameter_constraints(&[v], &span).unwrap();
    assert_eq!(c.to_string(), "{v = 0}");
    assert!(c.satisfiable);

    let span = RationalBasis::from_vectors(3, &[qvec(&[1, 1, 0])]);
    let c = solve_parameter_constraints(&[pvec(&["v", "v", "0"])], &span).unwrap();
    assert!(c.is_empty());

    let span = RationalBasis::new(2);
    let c = solve_parameter_constraints(&[pvec(&["t", "0"]), pvec(&["t - 1", "0"])], &span).unwrap();
    assert_eq!(c.to_string(), "{t = 0, t = 1} (unsatisfiable)");
    assert!(!c.satisfiable);
}

#[test]
fn constraints_combine_parameters() {
    let span = RationalBasis::new(2);
    let c = solve_parameter_constraints(&[pvec(&["2*s + 2*t - 2", "u - 2*t"])], &span).unwrap();
    assert_eq!(c.to_string(), "{s + t = 1, t - 1/2*u = 0}");
    assert!(c.satisfiable);
    assert_eq!(c.reduced.len(), 2);
}

#[test]
fn constraints_reject_nonlinear_coefficients() {
    let span = RationalBasis::new(1);
    assert!(matches!(
        solve_parameter_constraints(&[pvec(&["t^2"])], &span),
        Err(LinalgError::Nonlinear(_))
    ));
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-2i64..=2, cols), 1..=rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rank_is_order_invariant(m in small_matrix(7, 5), seed in any::<u64>()) {
        let vs: Vec<_> = m.iter().map(|r| qvec(r)).collect();
        let mut shuffled = vs.clone();
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = RationalBasis::from_vectors(5, &vs);
        let b = RationalBasis::from_vectors(5, &shuffled);
        prop_assert_eq!(a.rank(), b.rank());
        let ra: Vec<_> = a.rows().into_iter().cloned().collect();
        let rb: Vec<_> = b.rows().into_iter().cloned().collect();
        prop_assert_eq!(ra, rb);
    }

    #[test]
    fn membership_matches_rank_growth(m in small_matrix(5, 5), v in proptest::collection::vec(-2i64..=2, 5)) {
        let vs: Vec<_> = m.iter().map(|r| qvec(r)).collect();
        let mut b = RationalBasis::with_provenance(5);
        for x in &vs {
            b.insert(x);
        }
        let target = qvec(&v);
        let mem = b.member(&target).unwrap();
        let mut bigger = b.clone();
        bigger.insert(&target);
        prop_assert_eq!(mem.is_member, bigger.rank() == b.rank());
        if let Some(c) = mem.coordinates {
            prop_assert!(verify_coordinates(&vs, &c, &target));
        }
    }

    #[test]
    fn generic_rank_matches_evaluations(
        a in small_matrix(5, 4),
        b in small_matrix(5, 4),
        points in proptest::collection::vec(-20i64..=20, 5),
    ) {
        // entries a + b*t
        let rows = a.len().min(b.len());
        let vs: Vec<SparseVec<Poly>> = (0..rows)
            .map(|i| {
                SparseVec::from_dense(
                    (0..4)
                        .map(|j| Poly::int(a[i][j]).add(&Poly::int(b[i][j]).mul(&Poly::var("t"))))
                        .collect(),
                )
            })
            .collect();
        let basis = PolyBasis::reduce(vs.clone(), 4, None);
        let cert = basis.certificate();
        for t in points {
            let at: Assignment = [("t".to_string(), q(t))].into_iter().collect();
            if cert.evaluate_lenient(&at).is_zero() {
                continue;
            }
            let evaluated: Vec<_> = vs
                .iter()
                .map(|v| v.map(|c| c.evaluate_lenient(&at).constant_value().unwrap()))
                .collect();
            prop_assert_eq!(RationalBasis::from_vectors(4, &evaluated).rank(), basis.rank());
        }
    }
}
