use proptest::prelude::*;

use super::*;
use crate::linalg::PolyBasis;
use crate::presentation::preset;

fn rational_rank(vs: &[SparseVec<Poly>], dim: usize) -> usize {
    let mut b = RationalBasis::new(dim);
    for v in vs {
        b.insert(&to_rational(v).unwrap());
    }
    b.rank()
}

fn rank_of(p: &Presentation, n: usize) -> usize {
    let basis = FreeBasis::new(&p.generators, n).unwrap();
    let span = ideal_span(p, n).unwrap();
    let vs = span.vectors(&basis);
    if p.parameters.is_empty() {
        rational_rank(&vs, basis.len())
    } else {
        PolyBasis::reduce(vs, basis.len(), None).rank()
    }
}

#[test]
fn free_sizes() {
    let p = preset("free2").unwrap();
    let sizes: Vec<usize> = (1..=5).map(|n| FreeBasis::new(&p.generators, n).unwrap().len()).collect();
    assert_eq!(sizes, vec![1, 2, 12, 120, 1680]);
    for n in 1..=5 {
        assert_eq!(count_free(&p.generators, n), sizes[n - 1] as u128);
    }
    assert!(FreeBasis::new(&p.generators, 0).is_err());
}

#[test]
fn free_size_matches_brute_force_enumeration() {
    let free = preset("free2").unwrap();
    let kok = preset("kokoris").unwrap();
    assert_eq!(FreeBasis::new(&kok.generators, 3).unwrap().len(), 12);
    assert_eq!(brute_force_basis_size(&kok.generators, 3), 12);
    for n in 1..=4 {
        assert_eq!(brute_force_basis_size(&free.generators, n), FreeBasis::new(&free.generators, n).unwrap().len());
        assert_eq!(brute_force_basis_size(&kok.generators, n), count_free(&kok.generators, n) as usize);
    }
}

#[test]
fn basis_is_sorted_and_indexed() {
    let p = preset("free2").unwrap();
    let b = FreeBasis::new(&p.generators, 4).unwrap();
    assert!(b.monomials().windows(2).all(|w| w[0] < w[1]));
    for (i, m) in b.monomials().iter().enumerate() {
        assert_eq!(b.position(m), Some(i));
    }
    let first: Vec<String> = b.monomials()[..2].iter().map(|m| m.to_string()).collect();
    assert_eq!(first, vec!["b(1,b(2,b(3,4)))", "b(1,b(2,m(3,4)))"]);
}

#[test]
fn vector_round_trip() {
    let p = preset("almost-poisson").unwrap();
    let b = FreeBasis::new(&p.generators, 3).unwrap();
    for e in p.relation_elements() {
        assert_eq!(b.element(&b.vector(&e).unwrap()), e);
    }
}

#[test]
fn partition_oracle() {
    let ns: Vec<u128> = (1..=5).map(ap_dimension_oracle).collect();
    assert_eq!(ns, vec![1, 2, 7, 37, 266]);
    assert_eq!(ap_graded_oracle(3), vec![1, 3, 3]);
    assert_eq!(ap_graded_oracle(4), vec![1, 6, 15, 15]);
    // Bell numbers
    let bell: Vec<usize> = (1..=6).map(|n| set_partitions(n).len()).collect();
    assert_eq!(bell, vec![1, 2, 5, 15, 52, 203]);
}

#[test]
fn arity_three_ranks() {
    assert_eq!(rank_of(&preset("almost-poisson").unwrap(), 3), 5);
    assert_eq!(rank_of(&preset("poisson").unwrap(), 3), 6);
    assert_eq!(rank_of(&preset("ap-family").unwrap(), 3), 5);
    assert_eq!(rank_of(&preset("livernet-loday").unwrap(), 3), 6);
}

#[test]
fn small_arity_rejected() {
    let p = preset("poisson").unwrap();
    assert!(matches!(ideal_span(&p, 2), Err(SpanningError::ArityTooSmall { .. })));
    assert!(brute_force_span(&p.relation_elements(), &p.generators, 2).is_err());
}

#[test]
fn poisson_quotients_have_factorial_dimension() {
    let p = preset("poisson").unwrap();
    for (n, fact) in [(3, 6), (4, 24)] {
        let free = FreeBasis::new(&p.generators, n).unwrap().len();
        assert_eq!(free - rank_of(&p, n), fact);
    }
}

#[test]
fn recursive_span_matches_brute_force_at_arity_four() {
    for name in ["almost-poisson", "poisson", "kokoris"] {
        let p = preset(name).unwrap();
        let basis = FreeBasis::new(&p.generators, 4).unwrap();
        let rec = RationalBasis::from_vectors(
            basis.len(),
            &ideal_span(&p, 4)
                .unwrap()
                .vectors(&basis)
                .iter()
                .map(|v| to_rational(v).unwrap())
                .collect::<Vec<_>>(),
        );
        let brute = brute_force_span(&p.relation_elements(), &p.generators, 4).unwrap();
        for e in &brute {
            let v = to_rational(&basis.vector(e).unwrap()).unwrap();
            assert!(rec.contains(&v), "{name}: {e} missing");
        }
        let brute_rank = rational_rank(
            &brute.iter().map(|e| basis.vector(e).unwrap()).collect::<Vec<_>>(),
            basis.len(),
        );
        assert_eq!(brute_rank, rec.rank(), "{name}");
    }
}

#[test]
fn dedup_and_basis_modes_agree() {
    let p = preset("almost-poisson").unwrap();
    let basis = FreeBasis::new(&p.generators, 4).unwrap();
    let a = ideal_span_with(&p.relation_elements(), &p.generators, 4, Compression::Dedup).unwrap();
    let b = ideal_span_with(&p.relation_elements(), &p.generators, 4, Compression::Basis).unwrap();
    assert!(a.len() > b.len());
    assert_eq!(rational_rank(&a.vectors(&basis), basis.len()), b.len());
}

#[test]
fn graded_oracle_sizes_match_free_weights() {
    let p = preset("free2").unwrap();
    let b = FreeBasis::new(&p.generators, 3).unwrap();
    let w = b.weights(&["b".to_string()].into_iter().collect());
    let count = |k| w.iter().filter(|&&x| x == k).count();
    assert_eq!((count(0), count(1), count(2)), (3, 6, 3));
}

fn shuffled<T: Clone>(v: &[T], seed: u64) -> Vec<T> {
    let mut out = v.to_vec();
    let mut s = seed;
    for i in (1..out.len()).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        out.swap(i, (s >> 33) as usize % (i + 1));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn span_rank_is_order_invariant(seed in any::<u64>(), which in 0usize..3) {
        let p = preset(["almost-poisson", "poisson", "kokoris"][which]).unwrap();
        let basis = FreeBasis::new(&p.generators, 4).unwrap();
        let mut stage = Vec::new();
        for r in p.relation_elements() {
            for s in Perm::all(3) {
                stage.push(r.permute_inputs(&s).unwrap());
            }
        }
        let vs: Vec<_> = extend(&stage, &p.generators, 3)
            .iter()
            .map(|e| basis.vector(e).unwrap())
            .collect();
        let a = rational_rank(&vs, basis.len());
        let b = rational_rank(&shuffled(&vs, seed), basis.len());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn span_is_stable_under_relabeling(seed in any::<u64>()) {
        let p = preset("almost-poisson").unwrap();
        let basis = FreeBasis::new(&p.generators, 4).unwrap();
        let span = ideal_span(&p, 4).unwrap();
        let rb = RationalBasis::from_vectors(
            basis.len(),
            &span.vectors(&basis).iter().map(|v| to_rational(v).unwrap()).collect::<Vec<_>>(),
        );
        let perms = Perm::all(4);
        let sigma = &perms[(seed % perms.len() as u64) as usize];
        let e = &span.elements[(seed >> 8) as usize % span.len()];
        let moved = to_rational(&basis.vector(&e.permute_inputs(sigma).unwrap()).unwrap()).unwrap();
        prop_assert!(rb.contains(&moved));
    }
}
