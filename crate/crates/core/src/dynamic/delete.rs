//! Deletion.
//!
//! The recursion returns a [`DeletedDTree`]: the rebuilt subtree, whether its
//! black-height dropped by one (`down`), and the `(1, bit)` metadata of the
//! removed bit, which ancestors subtract from their `(num, ones)` when the
//! deletion happened in their left subtree.
//!
//! Leaf underflow is repaired at the lowest black node, whose children are
//! leaves or red nodes over two leaves. Together these form a group of 2 to 4
//! adjacent leaves, every one of which has an adjacent leaf in the same group:
//!
//! ```text
//!   2 leaves   B(a, b)
//!   3 leaves   B(R(a, b), c)        B(a, R(b, c))
//!   4 leaves   B(R(a, b), R(c, d))
//! ```
//!
//! When the target leaf drops below `low`:
//!
//! | neighbour in the group           | repair                         | result                                   |
//! |----------------------------------|--------------------------------|------------------------------------------|
//! | right has more than `low` bits   | move its first bit over        | same leaf count                          |
//! | else left has more than `low`    | move its last bit over         | same leaf count                          |
//! | neither                          | merge with right (else left)   | one leaf fewer; 2 -> 1 lowers the height |
//!
//! A group of 3 is rebuilt with the red node over the two leaves that took
//! part in a borrow, which is the rotation needed when the partner leaf sat
//! under a different parent (leaf/red-node configurations on either side).
//! After a merge the group is rebuilt in its canonical shape for the new
//! count; a group of 2 merging into one leaf reports `down`.
//!
//! Above the bottom level, [`balance_left_del`] and [`balance_right_del`]
//! absorb a lowered child by recoloring and rotating, or pass `down` upward.

use super::{Color, DTree, Meta, Node, SizeBounds};
use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletedDTree {
    pub tree: DTree,
    pub down: bool,
    pub deleted: Meta,
}

impl DeletedDTree {
    fn same_height(tree: DTree, deleted: Meta) -> Self {
        DeletedDTree { tree, down: false, deleted }
    }

    fn lowered(tree: DTree, deleted: Meta) -> Self {
        DeletedDTree { tree, down: true, deleted }
    }
}

/// Red-black validity allowing a black-height one lower than `bh` when
/// `down` is set, in which case the root must not be red.
pub fn is_deleted_redblack(tr: &DeletedDTree, ctxt: Color, bh: usize) -> bool {
    if tr.down {
        super::is_redblack(&tr.tree, Color::Red, bh.saturating_sub(1))
    } else {
        super::is_redblack(&tr.tree, ctxt, bh)
    }
}

/// Deletes position `i` (which must be in range) from `t`.
pub fn ddel(t: &DTree, i: usize, bounds: SizeBounds) -> DeletedDTree {
    match t {
        DTree::Leaf(s) => {
            let mut bits = s.to_vec();
            let b = bits.remove(i);
            DeletedDTree::same_height(DTree::leaf(bits), Meta::bit(b))
        }
        DTree::Node(n) => {
            if n.color == Color::Black {
                if let Some(group) = LeafGroup::of(n) {
                    return group.delete(i, bounds);
                }
            }
            if i < n.meta.num {
                let l = ddel(&n.left, i, bounds);
                let meta = n.meta - l.deleted;
                balance_left_del(n.color, l, meta, n.right.clone())
            } else {
                let r = ddel(&n.right, i - n.meta.num, bounds);
                balance_right_del(n.color, n.left.clone(), n.meta, r)
            }
        }
    }
}

/// Removes the bit at `i` and paints the root black.
pub fn ddelete(t: &DTree, i: usize, bounds: SizeBounds) -> Result<DTree, Error> {
    let len = t.size();
    if i >= len {
        return Err(Error::OutOfRange { index: i, len });
    }
    Ok(ddel(t, i, bounds).tree.blacken())
}

/// Rebuilds `color(l, meta, r)` after a deletion in `l`.
///
/// Cases when `l` came back lowered (`l` at height h-1, `r` at height h):
///
/// ```text
///   R(l, B(R(a,b), c))  -> R(B(l,a), B(b,c))
///   R(l, B(a, c))       -> B(R(l,a), c)                a not red
///   B(l, R(a, c))       -> B(<red case on l, a>, c)
///   B(l, B(R(a,b), c))  -> B(B(l,a), B(b,c))
///   B(l, B(a, R(b,c)))  -> B(B(l,a), B(b,c))            a not red
///   B(l, B(a, c))       -> B(l, R(a, c)), still lowered  a, c not red
/// ```
pub fn balance_left_del(color: Color, l: DeletedDTree, meta: Meta, r: DTree) -> DeletedDTree {
    let deleted = l.deleted;
    let l_tree = l.tree;
    if !l.down {
        return DeletedDTree::same_height(DTree::node(color, l_tree, meta, r), deleted);
    }
    match color {
        Color::Red => DeletedDTree::same_height(fix_left_under_red(l_tree, meta, r), deleted),
        Color::Black => {
            let Some(rn) = r.as_node() else {
                debug_assert!(false, "lowered left subtree with a leaf sibling");
                return DeletedDTree::lowered(DTree::black(l_tree, meta, r), deleted);
            };
            let tree = if rn.color == Color::Red {
                let inner = fix_left_under_red(l_tree, meta, rn.left.clone());
                DTree::black(inner, meta + rn.meta, rn.right.clone())
            } else if let Some(rl) = rn.left.as_red() {
                DTree::black(
                    DTree::black(l_tree, meta, rl.left.clone()),
                    meta + rl.meta,
                    DTree::black(rl.right.clone(), rn.meta - rl.meta, rn.right.clone()),
                )
            } else if let Some(rr) = rn.right.as_red() {
                DTree::black(
                    DTree::black(l_tree, meta, rn.left.clone()),
                    meta + rn.meta,
                    DTree::black(rr.left.clone(), rr.meta, rr.right.clone()),
                )
            } else {
                let sibling = DTree::red(rn.left.clone(), rn.meta, rn.right.clone());
                return DeletedDTree::lowered(DTree::black(l_tree, meta, sibling), deleted);
            };
            DeletedDTree::same_height(tree, deleted)
        }
    }
}

/// Mirror image of [`balance_left_del`] for a deletion in `r`.
///
/// ```text
///   R(B(a, R(b,c)), r)  -> R(B(a,b), B(c,r))
///   R(B(a, c), r)       -> B(a, R(c,r))                c not red
///   B(R(a, c), r)       -> B(a, <red case on c, r>)
///   B(B(a, R(b,c)), r)  -> B(B(a,b), B(c,r))
///   B(B(R(a,b), c), r)  -> B(B(a,b), B(c,r))            c not red
///   B(B(a, c), r)       -> B(R(a, c), r), still lowered  a, c not red
/// ```
pub fn balance_right_del(color: Color, l: DTree, meta: Meta, r: DeletedDTree) -> DeletedDTree {
    let deleted = r.deleted;
    let r_tree = r.tree;
    if !r.down {
        return DeletedDTree::same_height(DTree::node(color, l, meta, r_tree), deleted);
    }
    match color {
        Color::Red => DeletedDTree::same_height(fix_right_under_red(l, meta, r_tree), deleted),
        Color::Black => {
            let Some(ln) = l.as_node() else {
                debug_assert!(false, "lowered right subtree with a leaf sibling");
                return DeletedDTree::lowered(DTree::black(l, meta, r_tree), deleted);
            };
            let tree = if ln.color == Color::Red {
                let inner = fix_right_under_red(ln.right.clone(), meta - ln.meta, r_tree);
                DTree::black(ln.left.clone(), ln.meta, inner)
            } else if let Some(lr) = ln.right.as_red() {
                DTree::black(
                    DTree::black(ln.left.clone(), ln.meta, lr.left.clone()),
                    ln.meta + lr.meta,
                    DTree::black(lr.right.clone(), meta - ln.meta - lr.meta, r_tree),
                )
            } else if let Some(ll) = ln.left.as_red() {
                DTree::black(
                    DTree::black(ll.left.clone(), ll.meta, ll.right.clone()),
                    ln.meta,
                    DTree::black(ln.right.clone(), meta - ln.meta, r_tree),
                )
            } else {
                let sibling = DTree::red(ln.left.clone(), ln.meta, ln.right.clone());
                return DeletedDTree::lowered(DTree::black(sibling, meta, r_tree), deleted);
            };
            DeletedDTree::same_height(tree, deleted)
        }
    }
}

// A red node whose left child lost one black level; `r` is black. The result
// keeps the original height and may have a red root.
fn fix_left_under_red(l: DTree, meta: Meta, r: DTree) -> DTree {
    let Some(rn) = r.as_node() else {
        debug_assert!(false, "lowered left subtree with a leaf sibling");
        return DTree::red(l, meta, r);
    };
    if let Some(rl) = rn.left.as_red() {
        DTree::red(
            DTree::black(l, meta, rl.left.clone()),
            meta + rl.meta,
            DTree::black(rl.right.clone(), rn.meta - rl.meta, rn.right.clone()),
        )
    } else {
        DTree::black(DTree::red(l, meta, rn.left.clone()), meta + rn.meta, rn.right.clone())
    }
}

fn fix_right_under_red(l: DTree, meta: Meta, r: DTree) -> DTree {
    let Some(ln) = l.as_node() else {
        debug_assert!(false, "lowered right subtree with a leaf sibling");
        return DTree::red(l, meta, r);
    };
    if let Some(lr) = ln.right.as_red() {
        DTree::red(
            DTree::black(ln.left.clone(), ln.meta, lr.left.clone()),
            ln.meta + lr.meta,
            DTree::black(lr.right.clone(), meta - ln.meta - lr.meta, r),
        )
    } else {
        DTree::black(ln.left.clone(), ln.meta, DTree::red(ln.right.clone(), meta - ln.meta, r))
    }
}

/// The leaves under a lowest black node, in order.
struct LeafGroup {
    leaves: Vec<Vec<bool>>,
    /// For three leaves: index of the first leaf under the red node.
    pair_at: usize,
}

impl LeafGroup {
    fn of(n: &Node) -> Option<Self> {
        fn red_pair(t: &DTree) -> Option<[&[bool]; 2]> {
            let r = t.as_red()?;
            Some([r.left.as_leaf()?, r.right.as_leaf()?])
        }
        let own = |s: &[bool]| s.to_vec();
        let (leaves, pair_at) = match (&n.left, &n.right) {
            (DTree::Leaf(a), DTree::Leaf(b)) => (vec![own(a), own(b)], 0),
            (l, DTree::Leaf(c)) => {
                let [a, b] = red_pair(l)?;
                (vec![own(a), own(b), own(c)], 0)
            }
            (DTree::Leaf(a), r) => {
                let [b, c] = red_pair(r)?;
                (vec![own(a), own(b), own(c)], 1)
            }
            (l, r) => {
                let [a, b] = red_pair(l)?;
                let [c, d] = red_pair(r)?;
                (vec![own(a), own(b), own(c), own(d)], 0)
            }
        };
        Some(LeafGroup { leaves, pair_at })
    }

    fn delete(mut self, i: usize, bounds: SizeBounds) -> DeletedDTree {
        let low = bounds.low();
        let mut k = 0;
        let mut j = i;
        while j >= self.leaves[k].len() {
            j -= self.leaves[k].len();
            k += 1;
        }
        let bit = self.leaves[k].remove(j);
        let deleted = Meta::bit(bit);
        let m = self.leaves.len();

        if self.leaves[k].len() >= low {
            return DeletedDTree::same_height(self.build(), deleted);
        }
        if k + 1 < m && self.leaves[k + 1].len() > low {
            let moved = self.leaves[k + 1].remove(0);
            self.leaves[k].push(moved);
            self.pair_at = k;
            return DeletedDTree::same_height(self.build(), deleted);
        }
        if k > 0 && self.leaves[k - 1].len() > low {
            let moved = self.leaves[k - 1].pop().expect("more than low bits");
            self.leaves[k].insert(0, moved);
            self.pair_at = k - 1;
            return DeletedDTree::same_height(self.build(), deleted);
        }

        let p = if k + 1 < m { k } else { k - 1 };
        let tail = self.leaves.remove(p + 1);
        self.leaves[p].extend(tail);
        if self.leaves.len() == 1 {
            let merged = self.leaves.pop().expect("one leaf");
            return DeletedDTree::lowered(DTree::leaf(merged), deleted);
        }
        // Only reachable from four leaves: keep the merged leaf under the red node.
        self.pair_at = if p == 2 { 1 } else { p.min(1) };
        DeletedDTree::same_height(self.build(), deleted)
    }

    fn build(self) -> DTree {
        let metas: Vec<Meta> = self.leaves.iter().map(|s| Meta::of_bits(s)).collect();
        let mut leaves = self.leaves.into_iter().map(DTree::leaf);
        let mut next = || leaves.next().expect("leaf count matches shape");
        match metas.len() {
            2 => DTree::black(next(), metas[0], next()),
            3 if self.pair_at == 0 => {
                let pair = DTree::red(next(), metas[0], next());
                DTree::black(pair, metas[0] + metas[1], next())
            }
            3 => {
                let a = next();
                let pair = DTree::red(next(), metas[1], next());
                DTree::black(a, metas[0], pair)
            }
            4 => {
                let l = DTree::red(next(), metas[0], next());
                let r = DTree::red(next(), metas[2], next());
                DTree::black(l, metas[0] + metas[1], r)
            }
            n => unreachable!("leaf group of {n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{bits, leaf};
    use super::super::{dinsert, redblack_check, wf_check, wf_dtree};
    use super::*;
    use crate::gen;
    use crate::oracle;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn low3() -> SizeBounds {
        SizeBounds::new(3, 8).unwrap()
    }

    #[test]
    fn borrow_after_rotation() {
        use Color::*;
        let t = DTree::with_meta(Black, leaf("100"), DTree::with_meta(Red, leaf("1011"), leaf("111")));
        let out = ddelete(&t, 1, low3()).unwrap();
        let expected = DTree::with_meta(Black, DTree::with_meta(Red, leaf("101"), leaf("011")), leaf("111"));
        assert_eq!(out, expected);
        assert_eq!(out.flatten(), oracle::delete_at(&t.flatten(), 1).unwrap());
    }

    #[test]
    fn merge_after_rotation() {
        use Color::*;
        let t = DTree::with_meta(Black, leaf("100"), DTree::with_meta(Red, leaf("101"), leaf("1111")));
        let out = ddelete(&t, 1, low3()).unwrap();
        assert_eq!(out, DTree::with_meta(Black, leaf("10101"), leaf("1111")));
    }

    #[test]
    fn merging_last_pair_leaves_a_single_leaf() {
        let t = DTree::with_meta(Color::Black, leaf("100"), leaf("011"));
        let d = ddel(&t, 4, low3());
        assert!(d.down);
        assert_eq!(d.deleted, Meta::new(1, 1));
        assert_eq!(d.tree, leaf("10001"));
    }

    #[test]
    fn borrow_from_left_when_right_is_short() {
        let t = DTree::with_meta(Color::Black, leaf("1100"), leaf("011"));
        let out = ddelete(&t, 5, low3()).unwrap();
        assert_eq!(out, DTree::with_meta(Color::Black, leaf("110"), leaf("001")));
    }

    #[test]
    fn delete_last_bit_leaves_empty_leaf() {
        let bounds = low3();
        let mut t = leaf("1");
        t = ddelete(&t, 0, bounds).unwrap();
        assert_eq!(t, leaf(""));
        assert!(wf_check(&t, bounds, true));
        assert_eq!(ddelete(&t, 0, bounds), Err(Error::OutOfRange { index: 0, len: 0 }));
    }

    #[test]
    fn random_interleaved_inserts_and_deletes() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for round in 0..1000 {
            let low = rng.gen_range(1..5);
            let bounds = SizeBounds::new(low, 2 * low + rng.gen_range(0..3)).unwrap();
            let mut t = DTree::default();
            let mut flat: Vec<bool> = Vec::new();
            for step in 0..rng.gen_range(1..200) {
                if flat.is_empty() || rng.gen_bool(0.55) {
                    let i = rng.gen_range(0..=flat.len());
                    let b = rng.gen_bool(0.5);
                    t = dinsert(&t, b, i, bounds).unwrap();
                    flat = oracle::insert1(&flat, b, i).unwrap();
                } else {
                    let i = rng.gen_range(0..flat.len());
                    t = ddelete(&t, i, bounds).unwrap();
                    flat = oracle::delete_at(&flat, i).unwrap();
                }
                assert_eq!(t.flatten(), flat, "round {round} step {step}");
                assert!(wf_check(&t, bounds, true), "round {round} step {step}\n{}", t.dump());
                assert!(redblack_check(&t).is_some(), "round {round} step {step}\n{}", t.dump());
            }
        }
    }

    #[test]
    fn deleting_everything() {
        let bounds = SizeBounds::new(2, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut flat = gen::random_bits(&mut rng, 300);
        let mut t = DTree::from_bits(&flat, bounds);
        while !flat.is_empty() {
            let i = rng.gen_range(0..flat.len());
            t = ddelete(&t, i, bounds).unwrap();
            flat = oracle::delete_at(&flat, i).unwrap();
            assert_eq!(t.flatten(), flat);
            assert!(wf_check(&t, bounds, true));
            assert!(redblack_check(&t).is_some());
        }
        assert_eq!(t, leaf(""));
    }

    fn deleted(rng: &mut ChaCha8Rng, bh: usize, ctxt: Color, down: bool) -> DeletedDTree {
        let (tree, ctxt_used) = if down {
            (gen::random_redblack(rng, bh - 1, Color::Red), Color::Red)
        } else {
            (gen::random_redblack(rng, bh, ctxt), ctxt)
        };
        let _ = ctxt_used;
        DeletedDTree { tree, down, deleted: Meta::bit(rng.gen_bool(0.5)) }
    }

    fn check_rebuilt(out: &DeletedDTree, l: &[bool], r: &[bool]) {
        let mut expected = l.to_vec();
        expected.extend_from_slice(r);
        assert_eq!(out.tree.flatten(), expected);
        assert!(wf_dtree(&out.tree, 0, usize::MAX));
    }

    proptest! {
        #[test]
        fn balance_left_del_black(seed in any::<u64>(), n in 2usize..5, down in any::<bool>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let l = deleted(&mut rng, n - 1, Color::Black, down);
            let r = gen::random_redblack(&mut rng, n - 1, Color::Black);
            let (lf, rf) = (l.tree.flatten(), r.flatten());
            let out = balance_left_del(Color::Black, l, Meta::of_bits(&lf), r);
            check_rebuilt(&out, &lf, &rf);
            prop_assert!(is_deleted_redblack(&out, Color::Red, n));
            prop_assert!(is_deleted_redblack(&out, Color::Black, n));
        }

        #[test]
        fn balance_left_del_red(seed in any::<u64>(), n in 1usize..5, down in any::<bool>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let l = deleted(&mut rng, n, Color::Red, down);
            let r = gen::random_redblack(&mut rng, n, Color::Red);
            let (lf, rf) = (l.tree.flatten(), r.flatten());
            let out = balance_left_del(Color::Red, l, Meta::of_bits(&lf), r);
            check_rebuilt(&out, &lf, &rf);
            prop_assert!(is_deleted_redblack(&out, Color::Black, n));
        }

        #[test]
        fn balance_right_del_black(seed in any::<u64>(), n in 2usize..5, down in any::<bool>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let l = gen::random_redblack(&mut rng, n - 1, Color::Black);
            let r = deleted(&mut rng, n - 1, Color::Black, down);
            let (lf, rf) = (l.flatten(), r.tree.flatten());
            let out = balance_right_del(Color::Black, l, Meta::of_bits(&lf), r);
            check_rebuilt(&out, &lf, &rf);
            prop_assert!(is_deleted_redblack(&out, Color::Red, n));
            prop_assert!(is_deleted_redblack(&out, Color::Black, n));
        }

        #[test]
        fn balance_right_del_red(seed in any::<u64>(), n in 1usize..5, down in any::<bool>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let l = gen::random_redblack(&mut rng, n, Color::Red);
            let r = deleted(&mut rng, n, Color::Red, down);
            let (lf, rf) = (l.flatten(), r.tree.flatten());
            let out = balance_right_del(Color::Red, l, Meta::of_bits(&lf), r);
            check_rebuilt(&out, &lf, &rf);
            prop_assert!(is_deleted_redblack(&out, Color::Black, n));
        }
    }

    #[test]
    fn plain_rebuild_when_not_lowered() {
        let l = DeletedDTree { tree: leaf("10"), down: false, deleted: Meta::bit(true) };
        let out = balance_left_del(Color::Black, l, Meta::new(2, 1), leaf("0"));
        assert!(!out.down);
        assert_eq!(out.tree, DTree::black(leaf("10"), Meta::new(2, 1), leaf("0")));
        assert_eq!(bits("10").len(), 2);
    }
}
