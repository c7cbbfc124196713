//! Insertion: descend to the leaf, insert, split a leaf that reaches `high`
//! into two halves under a red node, and rebalance on the way up.

use super::{Color, DTree, Meta, SizeBounds};
use crate::error::Error;

/// Inserts `b` at `i` in leaf `s`. A leaf that reaches `high` bits is split
/// into its first `⌈n/2⌉` bits and the rest under a red node.
pub fn dins_leaf(s: &[bool], b: bool, i: usize, bounds: SizeBounds) -> DTree {
    let mut bits = Vec::with_capacity(s.len() + 1);
    bits.extend_from_slice(&s[..i]);
    bits.push(b);
    bits.extend_from_slice(&s[i..]);
    if bits.len() >= bounds.high() {
        let right = bits.split_off(bits.len().div_ceil(2));
        let meta = Meta::of_bits(&bits);
        DTree::red(DTree::leaf(bits), meta, DTree::leaf(right))
    } else {
        DTree::leaf(bits)
    }
}

/// The four-case rebalance for a left child that may be a red node with a red
/// child, under a black parent. Metadata of rebuilt nodes is derived from the
/// old metadata only:
///
/// ```text
///   B(R(R(a,b),c),d) -> R(B(a,b),B(c,d))
///   B(R(a,R(b,c)),d) -> R(B(a,b),B(c,d))
/// ```
pub fn balance_left(color: Color, l: DTree, meta: Meta, r: DTree) -> DTree {
    if color == Color::Black {
        if let Some(y) = l.as_red() {
            if let Some(x) = y.left.as_red() {
                return DTree::red(
                    DTree::black(x.left.clone(), x.meta, x.right.clone()),
                    y.meta,
                    DTree::black(y.right.clone(), meta - y.meta, r),
                );
            }
            if let Some(z) = y.right.as_red() {
                return DTree::red(
                    DTree::black(y.left.clone(), y.meta, z.left.clone()),
                    y.meta + z.meta,
                    DTree::black(z.right.clone(), meta - y.meta - z.meta, r),
                );
            }
        }
    }
    DTree::node(color, l, meta, r)
}

/// Mirror image of [`balance_left`]:
///
/// ```text
///   B(a,R(R(b,c),d)) -> R(B(a,b),B(c,d))
///   B(a,R(b,R(c,d))) -> R(B(a,b),B(c,d))
/// ```
pub fn balance_right(color: Color, l: DTree, meta: Meta, r: DTree) -> DTree {
    if color == Color::Black {
        if let Some(z) = r.as_red() {
            if let Some(y) = z.left.as_red() {
                return DTree::red(
                    DTree::black(l, meta, y.left.clone()),
                    meta + y.meta,
                    DTree::black(y.right.clone(), z.meta - y.meta, z.right.clone()),
                );
            }
            if let Some(w) = z.right.as_red() {
                return DTree::red(
                    DTree::black(l, meta, z.left.clone()),
                    meta + z.meta,
                    DTree::black(w.left.clone(), w.meta, w.right.clone()),
                );
            }
        }
    }
    DTree::node(color, l, meta, r)
}

/// Insertion without the final root repaint. `i` must be at most the size.
pub fn dins(t: &DTree, b: bool, i: usize, bounds: SizeBounds) -> DTree {
    match t {
        DTree::Leaf(s) => dins_leaf(s, b, i, bounds),
        DTree::Node(n) => {
            if i < n.meta.num {
                let left = dins(&n.left, b, i, bounds);
                balance_left(n.color, left, n.meta + Meta::bit(b), n.right.clone())
            } else {
                let right = dins(&n.right, b, i - n.meta.num, bounds);
                balance_right(n.color, n.left.clone(), n.meta, right)
            }
        }
    }
}

/// Inserts `b` so that it ends up at position `i`, then paints the root black.
pub fn dinsert(t: &DTree, b: bool, i: usize, bounds: SizeBounds) -> Result<DTree, Error> {
    let len = t.size();
    if i > len {
        return Err(Error::OutOfRange { index: i, len });
    }
    Ok(dins(t, b, i, bounds).blacken())
}
