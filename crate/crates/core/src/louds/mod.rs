//! LOUDS: a tree's shape as the level-order concatenation of its node
//! descriptions, where a node with `k` children is written `1^k 0`.
//!
//! No `10` super-root prefix is emitted; wrap the tree with
//! [`Tree::with_super_root`] to get the conventional layout. A node's
//! position is the offset of the first bit of its description. Navigation
//! uses nothing but `rank`, `select`, `succ` and `pred`.

mod traversal;
mod tree;

pub use traversal::{
    labels_in_level_order, level_traversal, lo_fringe, lo_index, lo_traversal, lo_traversal_lt, lo_traversal_st, mzip,
    LevelSeq,
};
pub use tree::{children_of_forest, Forest, Tree};

use std::fmt;

use crate::bitvec::{pred, rank, select, succ, BitSeq};
use crate::error::Error;

/// `k` ones followed by a zero, for a node with `k` children.
pub fn node_description<A>(children: &[Tree<A>]) -> Vec<bool> {
    let mut d = vec![true; children.len()];
    d.push(false);
    d
}

pub fn children_description<A>(t: &Tree<A>) -> Vec<bool> {
    node_description(&t.children)
}

/// The LOUDS bits of `t`; `2 * number_of_nodes(t) - 1` long.
pub fn louds_encode<A>(t: &Tree<A>) -> BitSeq {
    lo_traversal_st(children_description, t).into_iter().flatten().collect()
}

/// Encoding of the part of the traversal that precedes `p`.
pub fn louds_lt<A>(s: &[&Tree<A>], p: &[usize]) -> BitSeq {
    lo_traversal_lt(children_description, s, p).into_iter().flatten().collect()
}

/// 0-based bit offset of the description of the node at `p`.
pub fn louds_position<A>(s: &[&Tree<A>], p: &[usize]) -> usize {
    louds_lt(s, p).len()
}

/// Number of children of the node whose description starts at `v`.
pub fn louds_children(b: &[bool], v: usize) -> usize {
    succ(false, b, v + 1) - (v + 1)
}

/// Position of the `i`-th child (0-based) of the node at `v`.
pub fn louds_child(b: &[bool], v: usize, i: usize) -> usize {
    select(false, rank(true, v + i, b) + 1, b)
}

/// Position of the parent of the node at `v`.
pub fn louds_parent(b: &[bool], v: usize) -> usize {
    let j = select(true, rank(false, v, b), b);
    pred(false, b, j)
}

/// A validated LOUDS bit sequence with checked navigation.
///
/// The raw formulas above are total and return garbage for offsets that are
/// not node positions; these methods reject such offsets instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Louds {
    bits: BitSeq,
}

impl Louds {
    pub fn from_tree<A>(t: &Tree<A>) -> Self {
        Louds { bits: louds_encode(t) }
    }

    /// Accepts `bits` if it is the encoding of some tree: every node is
    /// announced by a one before its own description starts, and there is
    /// exactly one more zero than ones.
    pub fn from_bits(bits: BitSeq) -> Result<Self, Error> {
        let mut ones = 0usize;
        let mut zeros = 0usize;
        for (k, &b) in bits.iter().enumerate() {
            if b {
                ones += 1;
            } else {
                zeros += 1;
                // Node `zeros` starts after this zero and must already have a parent edge.
                if k + 1 < bits.len() && ones < zeros {
                    return Err(Error::parse(1, k + 2, "node description starts before any edge reaches it"));
                }
            }
        }
        if zeros != ones + 1 || bits.last() != Some(&false) {
            return Err(Error::parse(
                1,
                bits.len().max(1),
                "not a complete encoding: need one more 0 than 1 and a final 0",
            ));
        }
        Ok(Louds { bits })
    }

    pub fn bits(&self) -> &BitSeq {
        &self.bits
    }

    pub fn node_count(&self) -> usize {
        self.bits.len().div_ceil(2)
    }

    pub fn is_node(&self, v: usize) -> bool {
        v < self.bits.len() && (v == 0 || !self.bits[v - 1])
    }

    fn check(&self, v: usize) -> Result<(), Error> {
        if self.is_node(v) {
            Ok(())
        } else {
            Err(Error::NotANodePosition(v))
        }
    }

    /// Level-order index of the node at `v`.
    pub fn node_index(&self, v: usize) -> Result<usize, Error> {
        self.check(v)?;
        Ok(rank(false, v, &self.bits))
    }

    /// Position of the node with level-order index `k`.
    pub fn position_of(&self, k: usize) -> Result<usize, Error> {
        if k >= self.node_count() {
            return Err(Error::OutOfRange { index: k, len: self.node_count() });
        }
        Ok(if k == 0 { 0 } else { select(false, k, &self.bits) })
    }

    pub fn children(&self, v: usize) -> Result<usize, Error> {
        self.check(v)?;
        Ok(louds_children(&self.bits, v))
    }

    pub fn child(&self, v: usize, i: usize) -> Result<usize, Error> {
        let children = self.children(v)?;
        if i >= children {
            return Err(Error::NoSuchChild { pos: v, index: i, children });
        }
        Ok(louds_child(&self.bits, v, i))
    }

    pub fn parent(&self, v: usize) -> Result<usize, Error> {
        self.check(v)?;
        if v == 0 {
            return Err(Error::RootHasNoParent);
        }
        Ok(louds_parent(&self.bits, v))
    }

    /// Position of the node reached by following `path` from the root.
    pub fn position_of_path(&self, path: &[usize]) -> Result<usize, Error> {
        path.iter().try_fold(0, |v, &i| self.child(v, i).map_err(|_| Error::InvalidPath { path: path.to_vec() }))
    }
}

impl fmt::Display for Louds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::oracle;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const EXAMPLE_TREE: &str = "(1 (2 (5) (6)) (3) (4 (7) (8 (10)) (9)))";
    const WRAPPED_LOUDS: [u8; 21] = [1, 0, 1, 1, 1, 0, 1, 1, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0];

    fn wrapped() -> Tree<String> {
        EXAMPLE_TREE.parse::<Tree<String>>().unwrap().with_super_root("0".into())
    }

    fn wrapped_louds() -> Vec<bool> {
        WRAPPED_LOUDS.iter().map(|&b| b == 1).collect()
    }

    #[test]
    fn wrapped_encoding() {
        assert_eq!(louds_encode(&wrapped()).as_slice(), wrapped_louds().as_slice());
        assert_eq!(louds_encode(&Tree::leaf(())).as_slice(), &[false]);
        assert_eq!(node_description(&[Tree::leaf(()), Tree::leaf(())]), vec![true, true, false]);
        assert_eq!(node_description::<()>(&[]), vec![false]);
    }

    #[test]
    fn wrapped_positions() {
        let t = wrapped();
        assert_eq!(louds_position(&[&t], &[0, 2, 1]), 17);
        assert_eq!(louds_position(&[&t], &[]), 0);
        assert_eq!(louds_position(&[&t], &[0]), 2);
        assert_eq!(louds_position(&[&t], &[0, 2]), 10);
    }

    #[test]
    fn wrapped_navigation() {
        let b = wrapped_louds();
        assert_eq!(louds_children(&b, 17), 1);
        assert_eq!(louds_children(&b, 0), 1);
        assert_eq!(louds_children(&b, 2), 3);
        assert_eq!(louds_child(&b, 10, 1), 17);
        assert_eq!(louds_child(&b, 0, 0), 2);
        assert_eq!(louds_parent(&b, 17), 10);
        assert_eq!(louds_parent(&b, 2), 0);
    }

    #[test]
    fn checked_navigation() {
        let l = Louds::from_tree(&wrapped());
        assert_eq!(l.node_count(), 11);
        assert_eq!(l.children(17), Ok(1));
        assert_eq!(l.child(10, 1), Ok(17));
        assert_eq!(l.parent(17), Ok(10));
        assert_eq!(l.children(3), Err(Error::NotANodePosition(3)));
        assert_eq!(l.children(21), Err(Error::NotANodePosition(21)));
        assert_eq!(l.child(17, 1), Err(Error::NoSuchChild { pos: 17, index: 1, children: 1 }));
        assert_eq!(l.parent(0), Err(Error::RootHasNoParent));
        assert_eq!(l.position_of_path(&[0, 2, 1]), Ok(17));
        assert!(l.position_of_path(&[1]).is_err());
        assert_eq!(l.node_index(17), Ok(8));
        assert_eq!(l.position_of(8), Ok(17));
        assert_eq!(l.position_of(0), Ok(0));
    }

    #[test]
    fn from_bits_validation() {
        let good: BitSeq = "101110110011100001000".parse().unwrap();
        assert!(Louds::from_bits(good).is_ok());
        assert!(Louds::from_bits("0".parse().unwrap()).is_ok());
        for bad in ["", "1", "10", "00", "0100", "1000", "01"] {
            assert!(Louds::from_bits(bad.parse().unwrap()).is_err(), "{bad}");
        }
    }

    #[test]
    fn from_bits_accepts_every_encoding() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let t = gen::random_tree(&mut rng, 300);
            assert!(Louds::from_bits(louds_encode(&t)).is_ok());
        }
    }

    #[test]
    fn size_law_and_bit_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..200 {
            let t = gen::random_tree(&mut rng, 500);
            let b = louds_encode(&t);
            let n = t.number_of_nodes();
            assert_eq!(b.len(), 2 * n - 1);
            assert_eq!(oracle::count(false, &b), n);
            assert_eq!(oracle::count(true, &b), n - 1);
        }
    }

    #[test]
    fn position_is_select_of_index() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let t = gen::random_tree(&mut rng, 80);
            let s = [&t];
            for p in oracle::all_paths(&t) {
                let pad = vec![0; t.height() + 1];
                let full: Vec<usize> = p.iter().chain(&pad).copied().collect();
                let idx = lo_index(&s, &p);
                assert_eq!(louds_position(&s, &p), select(false, idx, &louds_lt(&s, &full)));
            }
        }
    }

    #[test]
    fn navigation_theorems_with_truncated_encoding() {
        // The bits only extend as far as the traversal up to the queried path
        // plus an arbitrary suffix.
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..40 {
            let t = gen::random_tree(&mut rng, 60);
            let s = [&t];
            for p in oracle::all_paths(&t) {
                let pad = gen::random_path(&mut rng, &t, p.len() % 3);
                let v = louds_position(&s, &p);

                let ext: Vec<usize> = p.iter().copied().chain([0]).chain(pad.iter().copied()).collect();
                assert_eq!(louds_children(&louds_lt(&s, &ext), v), t.children_at(&p).unwrap());

                if let Some((&i, parent)) = p.split_last() {
                    let ext: Vec<usize> = p.iter().chain(&pad).copied().collect();
                    let b = louds_lt(&s, &ext);
                    let pv = louds_position(&s, parent);
                    assert_eq!(louds_parent(&b, v), pv);
                    assert_eq!(louds_child(&b, pv, i), v);
                }
            }
        }
    }

    #[test]
    fn child_parent_round_trip_on_random_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..100 {
            let t = gen::random_tree(&mut rng, 200);
            let l = Louds::from_tree(&t);
            for k in 0..l.node_count() {
                let v = l.position_of(k).unwrap();
                for i in 0..l.children(v).unwrap() {
                    assert_eq!(l.parent(l.child(v, i).unwrap()).unwrap(), v);
                }
            }
        }
    }
}
