//! Seeded random trees and elements, for property tests here and in
//! downstream test suites.

use crate::coeff::Poly;

use super::{Element, Generator, Perm, Tree};

/// SplitMix64.
#[derive(Clone, Debug)]
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

pub fn random_tree(rng: &mut SplitMix, labels: &[u32], gens: &[Generator]) -> Tree {
    if labels.len() == 1 {
        return Tree::leaf(labels[0]);
    }
    let cut = 1 + rng.below(labels.len() - 1);
    let g = gens[rng.below(gens.len())].clone();
    let l = random_tree(rng, &labels[..cut], gens);
    let r = random_tree(rng, &labels[cut..], gens);
    Tree::node(g, l, r)
}

pub fn shuffled(rng: &mut SplitMix, n: usize) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.below(i + 1));
    }
    v
}

pub fn random_element(rng: &mut SplitMix, g: &[Generator], n: usize) -> Element {
    let mut e = Element::zero(n);
    for _ in 0..1 + rng.below(3) {
        let labels = shuffled(rng, n);
        let t = random_tree(rng, &labels, g);
        let c = Poly::int(rng.below(7) as i64 - 3);
        e = e.add(&Element::from_raw(&t).scale(&c));
    }
    e
}

pub fn random_perm(rng: &mut SplitMix, n: usize) -> Perm {
    Perm::from_images(shuffled(rng, n)).unwrap()
}
