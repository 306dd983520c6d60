//! Counting oracles that avoid linear algebra.

use std::collections::BTreeSet;

use crate::term::{Element, Generator, Monomial, Perm, Symmetry, Tree};

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of the arity-n component of the free operad, by recursion on
/// the root split.
pub fn count_free(generators: &[Generator], n: usize) -> u128 {
    let mut f = vec![0u128; n + 1];
    if n == 0 {
        return 0;
    }
    f[1] = 1;
    for k in 2..=n {
        let ordered: u128 = (1..k)
            .map(|i| binomial(k as u128, i as u128) * f[i] * f[k - i])
            .sum();
        f[k] = generators
            .iter()
            .map(|g| match g.symmetry() {
                Symmetry::None => ordered,
                _ => ordered / 2,
            })
            .sum();
    }
    f[n]
}

fn planar_shapes(n: usize) -> Vec<Shape> {
    if n == 1 {
        return vec![Shape::Leaf];
    }
    let mut out = Vec::new();
    for i in 1..n {
        for l in planar_shapes(i) {
            for r in planar_shapes(n - i) {
                out.push(Shape::Node(Box::new(l.clone()), Box::new(r.clone())));
            }
        }
    }
    out
}

#[derive(Clone)]
enum Shape {
    Leaf,
    Node(Box<Shape>, Box<Shape>),
}

fn fill(shape: &Shape, labels: &mut impl Iterator<Item = u32>, gens: &mut impl Iterator<Item = Generator>) -> Tree {
    match shape {
        Shape::Leaf => Tree::leaf(labels.next().expect("enough labels")),
        Shape::Node(l, r) => {
            let g = gens.next().expect("enough generators");
            let l = fill(l, labels, gens);
            let r = fill(r, labels, gens);
            Tree::node(g, l, r)
        }
    }
}

/// Number of distinct canonical monomials reached by labeling every planar
/// shape with every permutation and every choice of generators.
pub fn brute_force_basis_size(generators: &[Generator], n: usize) -> usize {
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let internal = n.saturating_sub(1);
    let choices = generators.len().pow(internal as u32);
    for shape in planar_shapes(n) {
        for sigma in Perm::all(n) {
            for mut code in 0..choices {
                let gens: Vec<Generator> = (0..internal)
                    .map(|_| {
                        let g = generators[code % generators.len()].clone();
                        code /= generators.len();
                        g
                    })
                    .collect();
                let tree = fill(&shape, &mut sigma.images().iter().copied(), &mut gens.into_iter());
                let e = Element::canonicalize(&tree).expect("labels 1..n");
                seen.extend(e.terms().map(|(m, _)| m.clone()));
            }
        }
    }
    seen.len()
}

/// All set partitions of `1..=n`, blocks sorted.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    partitions_rec(1, n as u32, &mut blocks, &mut out);
    out
}

fn partitions_rec(next: u32, n: u32, blocks: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
    if next > n {
        out.push(blocks.clone());
        return;
    }
    for i in 0..blocks.len() {
        blocks[i].push(next);
        partitions_rec(next + 1, n, blocks, out);
        blocks[i].pop();
    }
    blocks.push(vec![next]);
    partitions_rec(next + 1, n, blocks, out);
    blocks.pop();
}

fn double_factorial_odd(k: usize) -> u128 {
    // (2k - 3)!! with (-1)!! = 1
    (1..k).map(|i| (2 * i - 1) as u128).product()
}

/// Products of brackets multiplied commutatively: per bracket weight, the
/// number of set partitions into `n - w` blocks, each block weighted by the
/// number of bracket monomials on it.
pub fn ap_graded_oracle(n: usize) -> Vec<u128> {
    let mut by_weight = vec![0u128; n.max(1)];
    for p in set_partitions(n) {
        let w = n - p.len();
        by_weight[w] += p.iter().map(|b| double_factorial_odd(b.len())).product::<u128>();
    }
    by_weight
}

/// Total of [`ap_graded_oracle`].
pub fn ap_dimension_oracle(n: usize) -> u128 {
    ap_graded_oracle(n).iter().sum()
}
