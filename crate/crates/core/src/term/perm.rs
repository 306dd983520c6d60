use std::fmt;

use super::TermError;

/// Permutation of `1..=n`, stored as the list of images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((1..=n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm, TermError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i as usize > n || seen[i as usize] {
                return Err(TermError::NotBijection(images));
            }
            seen[i as usize] = true;
        }
        Ok(Perm(images))
    }

    /// Cycle `(c_1 c_2 ... c_k)` on `1..=n`.
    pub fn cycle(n: usize, cycle: &[u32]) -> Result<Perm, TermError> {
        let mut images: Vec<u32> = (1..=n as u32).collect();
        for (i, &c) in cycle.iter().enumerate() {
            if c == 0 || c as usize > n {
                return Err(TermError::NotBijection(cycle.to_vec()));
            }
            images[c as usize - 1] = cycle[(i + 1) % cycle.len()];
        }
        Perm::from_images(images)
    }

    pub fn transposition(n: usize, a: u32, b: u32) -> Result<Perm, TermError> {
        Perm::cycle(n, &[a, b])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize - 1] = i as u32 + 1;
        }
        Perm(inv)
    }

    /// All permutations of `1..=n` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = (1..=n as u32).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.0.len()];
        let mut sign = 1;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize - 1;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}
