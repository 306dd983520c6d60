use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::Generator;

/// A binary tree with generator-labelled internal vertices and integer leaves.
///
/// Trees compare by the canonical-form order: minimal leaf label, number of
/// leaves, root label (leaves before internal vertices, then generator
/// name), then left child, then right child.
#[derive(Clone)]
pub enum Tree {
    Leaf(u32),
    Node(Arc<Node>),
}

pub struct Node {
    pub gen: Generator,
    pub left: Tree,
    pub right: Tree,
    min_leaf: u32,
    leaves: u32,
}

impl Tree {
    pub fn leaf(label: u32) -> Tree {
        Tree::Leaf(label)
    }

    pub fn node(gen: Generator, left: Tree, right: Tree) -> Tree {
        let min_leaf = left.min_leaf().min(right.min_leaf());
        let leaves = left.num_leaves() + right.num_leaves();
        Tree::Node(Arc::new(Node {
            gen,
            left,
            right,
            min_leaf,
            leaves,
        }))
    }

    pub fn min_leaf(&self) -> u32 {
        match self {
            Tree::Leaf(l) => *l,
            Tree::Node(n) => n.min_leaf,
        }
    }

    pub fn num_leaves(&self) -> u32 {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(n) => n.leaves,
        }
    }

    pub fn as_node(&self) -> Option<&Node> {
        match self {
            Tree::Leaf(_) => None,
            Tree::Node(n) => Some(n),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf(_))
    }

    /// Leaf labels in left-to-right order.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.num_leaves() as usize);
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Tree::Leaf(l) => out.push(*l),
            Tree::Node(n) => {
                n.left.collect_leaves(out);
                n.right.collect_leaves(out);
            }
        }
    }

    pub fn label_set(&self) -> BTreeSet<u32> {
        self.leaves().into_iter().collect()
    }

    /// Number of internal vertices whose generator name is in `names`.
    pub fn count_gens(&self, names: &BTreeSet<String>) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(n) => {
                usize::from(names.contains(n.gen.name()))
                    + n.left.count_gens(names)
                    + n.right.count_gens(names)
            }
        }
    }

    pub fn internal_vertices(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(n) => 1 + n.left.internal_vertices() + n.right.internal_vertices(),
        }
    }

    /// Applies `f` to every leaf label.
    pub fn relabel(&self, f: &dyn Fn(u32) -> u32) -> Tree {
        match self {
            Tree::Leaf(l) => Tree::Leaf(f(*l)),
            Tree::Node(n) => Tree::node(n.gen.clone(), n.left.relabel(f), n.right.relabel(f)),
        }
    }

    /// Canonical form: children of symmetric and antisymmetric vertices sorted
    /// by the tree order. Returns the sign picked up at antisymmetric swaps, or
    /// `None` when an antisymmetric vertex has two equal subtrees (the
    /// monomial is zero).
    pub fn canonical(&self) -> Option<(Tree, bool)> {
        match self {
            Tree::Leaf(_) => Some((self.clone(), false)),
            Tree::Node(n) => {
                let (l, sl) = n.left.canonical()?;
                let (r, sr) = n.right.canonical()?;
                let mut neg = sl ^ sr;
                let (l, r) = match n.gen.symmetry() {
                    super::Symmetry::None => (l, r),
                    sym => match l.cmp(&r) {
                        Ordering::Less => (l, r),
                        Ordering::Equal => {
                            if sym == super::Symmetry::Antisymmetric {
                                return None;
                            }
                            (l, r)
                        }
                        Ordering::Greater => {
                            if sym == super::Symmetry::Antisymmetric {
                                neg = !neg;
                            }
                            (r, l)
                        }
                    },
                };
                Some((Tree::node(n.gen.clone(), l, r), neg))
            }
        }
    }

    fn root_key(&self) -> Option<&Generator> {
        self.as_node().map(|n| &n.gen)
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Tree {}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Tree::Node(a), Tree::Node(b)) = (self, other) {
            if Arc::ptr_eq(a, b) {
                return Ordering::Equal;
            }
        }
        self.min_leaf()
            .cmp(&other.min_leaf())
            .then_with(|| self.num_leaves().cmp(&other.num_leaves()))
            .then_with(|| match (self.root_key(), other.root_key()) {
                (None, None) => Ordering::Equal,
                (None, Some(_)) => Ordering::Less,
                (Some(_), None) => Ordering::Greater,
                (Some(a), Some(b)) => a.cmp(b),
            })
            .then_with(|| match (self, other) {
                (Tree::Node(a), Tree::Node(b)) => {
                    a.left.cmp(&b.left).then_with(|| a.right.cmp(&b.right))
                }
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Tree::Leaf(l) => {
                0u8.hash(state);
                l.hash(state);
            }
            Tree::Node(n) => {
                1u8.hash(state);
                n.gen.name().hash(state);
                n.left.hash(state);
                n.right.hash(state);
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(l) => write!(f, "{l}"),
            Tree::Node(n) => write!(f, "{}({},{})", n.gen.name(), n.left, n.right),
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
