//! Dynamic bit vectors as red-black trees with bits in the leaves.
//!
//! Each internal node stores the size and popcount of its left subtree
//! ([`Meta`]); leaves are flat bit arrays whose length stays within
//! [`SizeBounds`]. Queries descend one root-to-leaf path. Updates are
//! persistent: they return a new tree that shares every untouched subtree
//! with the old one.

mod delete;
mod dump;
mod insert;

pub use delete::{balance_left_del, balance_right_del, ddel, ddelete, is_deleted_redblack, DeletedDTree};
pub use insert::{balance_left, balance_right, dins, dins_leaf, dinsert};

use std::ops::{Add, Sub};
use std::sync::Arc;

use crate::bitvec::{self, BitSeq};
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Black,
}

/// Size and popcount of a left subtree (`num`, `ones`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Meta {
    pub num: usize,
    pub ones: usize,
}

impl Meta {
    pub const fn new(num: usize, ones: usize) -> Self {
        Meta { num, ones }
    }

    pub fn of_bits(bits: &[bool]) -> Self {
        Meta { num: bits.len(), ones: bits.iter().filter(|&&b| b).count() }
    }

    /// The contribution of a single bit.
    pub fn bit(b: bool) -> Self {
        Meta { num: 1, ones: b as usize }
    }

    pub fn zeros(&self) -> usize {
        self.num - self.ones
    }
}

impl Add for Meta {
    type Output = Meta;

    fn add(self, rhs: Meta) -> Meta {
        Meta { num: self.num + rhs.num, ones: self.ones + rhs.ones }
    }
}

impl Sub for Meta {
    type Output = Meta;

    fn sub(self, rhs: Meta) -> Meta {
        Meta { num: self.num - rhs.num, ones: self.ones - rhs.ones }
    }
}

/// Leaf length bounds: every leaf except a lone root leaf holds between
/// `low` and `high - 1` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeBounds {
    low: usize,
    high: usize,
}

impl SizeBounds {
    pub fn new(low: usize, high: usize) -> Result<Self, Error> {
        if low == 0 || high < 2 * low {
            return Err(Error::InvalidBounds { low, high });
        }
        Ok(SizeBounds { low, high })
    }

    /// `low = w²/2`, `high = 2w²`.
    pub fn from_word_size(w: usize) -> Result<Self, Error> {
        Self::new(w * w / 2, 2 * w * w)
    }

    pub fn low(&self) -> usize {
        self.low
    }

    pub fn high(&self) -> usize {
        self.high
    }
}

impl Default for SizeBounds {
    /// Production bounds for 64-bit words.
    fn default() -> Self {
        Self::from_word_size(64).expect("w = 64 gives valid bounds")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub color: Color,
    pub left: DTree,
    pub meta: Meta,
    pub right: DTree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DTree {
    Node(Arc<Node>),
    Leaf(Arc<[bool]>),
}

impl Default for DTree {
    fn default() -> Self {
        DTree::leaf(Vec::new())
    }
}

impl DTree {
    pub fn node(color: Color, left: DTree, meta: Meta, right: DTree) -> Self {
        DTree::Node(Arc::new(Node { color, left, meta, right }))
    }

    pub fn black(left: DTree, meta: Meta, right: DTree) -> Self {
        DTree::node(Color::Black, left, meta, right)
    }

    pub fn red(left: DTree, meta: Meta, right: DTree) -> Self {
        DTree::node(Color::Red, left, meta, right)
    }

    pub fn leaf(bits: impl Into<Arc<[bool]>>) -> Self {
        DTree::Leaf(bits.into())
    }

    /// A node whose metadata is computed by flattening `left`; for fixtures.
    pub fn with_meta(color: Color, left: DTree, right: DTree) -> Self {
        let meta = Meta::of_bits(&left.flatten());
        DTree::node(color, left, meta, right)
    }

    pub fn as_node(&self) -> Option<&Node> {
        match self {
            DTree::Node(n) => Some(n),
            DTree::Leaf(_) => None,
        }
    }

    pub fn as_leaf(&self) -> Option<&[bool]> {
        match self {
            DTree::Leaf(s) => Some(s),
            DTree::Node(_) => None,
        }
    }

    pub fn as_red(&self) -> Option<&Node> {
        self.as_node().filter(|n| n.color == Color::Red)
    }

    pub fn is_red(&self) -> bool {
        self.as_red().is_some()
    }

    /// Repaints a red root black; leaves and black roots are returned as is.
    pub fn blacken(self) -> Self {
        match &self {
            DTree::Node(n) if n.color == Color::Red => DTree::black(n.left.clone(), n.meta, n.right.clone()),
            _ => self,
        }
    }

    /// In-order concatenation of the leaves.
    pub fn flatten(&self) -> Vec<bool> {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        out
    }

    fn flatten_into(&self, out: &mut Vec<bool>) {
        match self {
            DTree::Leaf(s) => out.extend_from_slice(s),
            DTree::Node(n) => {
                n.left.flatten_into(out);
                n.right.flatten_into(out);
            }
        }
    }

    /// Size and popcount of the whole tree, read off the right spine.
    pub fn totals(&self) -> Meta {
        let mut acc = Meta::default();
        let mut t = self;
        loop {
            match t {
                DTree::Node(n) => {
                    acc = acc + n.meta;
                    t = &n.right;
                }
                DTree::Leaf(s) => return acc + Meta::of_bits(s),
            }
        }
    }

    pub fn size(&self) -> usize {
        self.totals().num
    }

    pub fn count_ones(&self) -> usize {
        self.totals().ones
    }

    pub fn rank1(&self, i: usize) -> usize {
        let mut acc = 0;
        let mut i = i;
        let mut t = self;
        loop {
            match t {
                DTree::Node(n) => {
                    if i < n.meta.num {
                        t = &n.left;
                    } else {
                        acc += n.meta.ones;
                        i -= n.meta.num;
                        t = &n.right;
                    }
                }
                DTree::Leaf(s) => return acc + bitvec::rank(true, i, s),
            }
        }
    }

    pub fn rank(&self, b: bool, i: usize) -> usize {
        if b {
            self.rank1(i)
        } else {
            i.min(self.size()) - self.rank1(i)
        }
    }

    /// 1-based position of the `i`-th `b`; `0` for `i == 0`, `size + 1` if absent.
    pub fn select(&self, b: bool, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        let count = |m: &Meta| if b { m.ones } else { m.zeros() };
        let mut offset = 0;
        let mut i = i;
        let mut t = self;
        loop {
            match t {
                DTree::Node(n) => {
                    let left = count(&n.meta);
                    if i <= left {
                        t = &n.left;
                    } else {
                        i -= left;
                        offset += n.meta.num;
                        t = &n.right;
                    }
                }
                DTree::Leaf(s) => return offset + bitvec::select(b, i, s),
            }
        }
    }

    pub fn select1(&self, i: usize) -> usize {
        self.select(true, i)
    }

    pub fn select0(&self, i: usize) -> usize {
        self.select(false, i)
    }

    pub fn access(&self, i: usize) -> Result<bool, Error> {
        let mut i = i;
        let mut t = self;
        loop {
            match t {
                DTree::Node(n) => {
                    if i < n.meta.num {
                        t = &n.left;
                    } else {
                        i -= n.meta.num;
                        t = &n.right;
                    }
                }
                DTree::Leaf(s) => {
                    return s.get(i).copied().ok_or(Error::OutOfRange { index: i, len: s.len() });
                }
            }
        }
    }

    /// Writes `b` at position `i`; the flag says whether the bit changed.
    /// Shape and colors are untouched, only `ones` on the path is adjusted.
    pub fn update(&self, i: usize, b: bool) -> Result<(DTree, bool), Error> {
        let len = self.size();
        if i >= len {
            return Err(Error::OutOfRange { index: i, len });
        }
        Ok(self.update_at(i, b))
    }

    fn update_at(&self, i: usize, b: bool) -> (DTree, bool) {
        match self {
            DTree::Leaf(s) => {
                if s[i] == b {
                    return (self.clone(), false);
                }
                let mut bits = s.to_vec();
                bits[i] = b;
                (DTree::leaf(bits), true)
            }
            DTree::Node(n) => {
                if i < n.meta.num {
                    let (left, changed) = n.left.update_at(i, b);
                    if !changed {
                        return (self.clone(), false);
                    }
                    let ones = if b { n.meta.ones + 1 } else { n.meta.ones - 1 };
                    (DTree::node(n.color, left, Meta::new(n.meta.num, ones), n.right.clone()), true)
                } else {
                    let (right, changed) = n.right.update_at(i - n.meta.num, b);
                    if !changed {
                        return (self.clone(), false);
                    }
                    (DTree::node(n.color, n.left.clone(), n.meta, right), true)
                }
            }
        }
    }

    pub fn set(&self, i: usize) -> Result<(DTree, bool), Error> {
        self.update(i, true)
    }

    pub fn clear(&self, i: usize) -> Result<(DTree, bool), Error> {
        self.update(i, false)
    }

    /// Balanced tree over `bits` with leaves in `[low, high)`; a single leaf
    /// when fewer than `high` bits are given.
    pub fn from_bits(bits: &[bool], bounds: SizeBounds) -> DTree {
        let n = bits.len();
        if n < bounds.high {
            return DTree::leaf(bits.to_vec());
        }
        // Fewest leaves that keep each one below `high`; each then holds at least `low`.
        let m = n.div_ceil(bounds.high - 1);
        let mut leaves = Vec::with_capacity(m);
        let mut start = 0;
        for k in 0..m {
            let len = n / m + usize::from(k < n % m);
            leaves.push(&bits[start..start + len]);
            start += len;
        }
        let red_depth = m.ilog2() as usize;
        build_balanced(&leaves, 0, red_depth).0
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            DTree::Leaf(_) => 1,
            DTree::Node(n) => n.left.leaf_count() + n.right.leaf_count(),
        }
    }

    /// Number of nodes (leaf included) on every root-to-leaf path.
    pub fn path_lengths(&self) -> Vec<usize> {
        fn walk(t: &DTree, depth: usize, out: &mut Vec<usize>) {
            match t {
                DTree::Leaf(_) => out.push(depth + 1),
                DTree::Node(n) => {
                    walk(&n.left, depth + 1, out);
                    walk(&n.right, depth + 1, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }

    pub fn leaves(&self) -> Vec<&[bool]> {
        fn walk<'a>(t: &'a DTree, out: &mut Vec<&'a [bool]>) {
            match t {
                DTree::Leaf(s) => out.push(s),
                DTree::Node(n) => {
                    walk(&n.left, out);
                    walk(&n.right, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

// Halving split; internal nodes at depth `red_depth` are red so that every
// path crosses the same number of black nodes.
fn build_balanced(leaves: &[&[bool]], depth: usize, red_depth: usize) -> (DTree, Meta) {
    if let [leaf] = leaves {
        return (DTree::leaf(leaf.to_vec()), Meta::of_bits(leaf));
    }
    let mid = leaves.len().div_ceil(2);
    let (left, lm) = build_balanced(&leaves[..mid], depth + 1, red_depth);
    let (right, rm) = build_balanced(&leaves[mid..], depth + 1, red_depth);
    let color = if depth >= red_depth { Color::Red } else { Color::Black };
    (DTree::node(color, left, lm, right), lm + rm)
}

/// `wf_dtree`: metadata matches every left subtree and every leaf length is
/// in `[low, high)`.
pub fn wf_dtree(t: &DTree, low: usize, high: usize) -> bool {
    fn go(t: &DTree, low: usize, high: usize) -> Option<Meta> {
        match t {
            DTree::Leaf(s) => (low <= s.len() && s.len() < high).then(|| Meta::of_bits(s)),
            DTree::Node(n) => {
                let l = go(&n.left, low, high)?;
                let r = go(&n.right, low, high)?;
                (l == n.meta).then(|| l + r)
            }
        }
    }
    go(t, low, high).is_some()
}

/// `wf_dtree'`: as [`wf_dtree`], except that a tree made of a single leaf
/// only needs to stay below `high`.
pub fn wf_dtree_relaxed(t: &DTree, low: usize, high: usize) -> bool {
    match t {
        DTree::Leaf(s) => s.len() < high,
        DTree::Node(_) => wf_dtree(t, low, high),
    }
}

pub fn wf_check(t: &DTree, bounds: SizeBounds, relaxed: bool) -> bool {
    if relaxed {
        wf_dtree_relaxed(t, bounds.low, bounds.high)
    } else {
        wf_dtree(t, bounds.low, bounds.high)
    }
}

/// Red-black validity of `t` under a parent of color `ctxt`, with `bh`
/// black nodes on every path (leaves count zero).
pub fn is_redblack(t: &DTree, ctxt: Color, bh: usize) -> bool {
    match t {
        DTree::Leaf(_) => bh == 0,
        DTree::Node(n) => match (n.color, ctxt) {
            (Color::Red, Color::Red) => false,
            (Color::Red, Color::Black) => is_redblack(&n.left, Color::Red, bh) && is_redblack(&n.right, Color::Red, bh),
            (Color::Black, _) => {
                bh > 0 && is_redblack(&n.left, Color::Black, bh - 1) && is_redblack(&n.right, Color::Black, bh - 1)
            }
        },
    }
}

/// The black-height of `t` if it is a red-black tree under a red context
/// (so a red root is rejected), `None` otherwise.
pub fn redblack_check(t: &DTree) -> Option<usize> {
    fn go(t: &DTree, ctxt: Color) -> Option<usize> {
        match t {
            DTree::Leaf(_) => Some(0),
            DTree::Node(n) => {
                if n.color == Color::Red && ctxt == Color::Red {
                    return None;
                }
                let l = go(&n.left, n.color)?;
                let r = go(&n.right, n.color)?;
                (l == r).then_some(l + usize::from(n.color == Color::Black))
            }
        }
    }
    go(t, Color::Red)
}

/// A bit vector backed by a [`DTree`], with bounds checking on every update.
#[derive(Debug, Clone)]
pub struct DynamicBitVector {
    tree: DTree,
    bounds: SizeBounds,
}

impl DynamicBitVector {
    pub fn new(bounds: SizeBounds) -> Self {
        DynamicBitVector { tree: DTree::default(), bounds }
    }

    pub fn from_bits(bits: &[bool], bounds: SizeBounds) -> Self {
        DynamicBitVector { tree: DTree::from_bits(bits, bounds), bounds }
    }

    /// Wraps an existing tree without checking it.
    pub fn from_tree(tree: DTree, bounds: SizeBounds) -> Self {
        DynamicBitVector { tree, bounds }
    }

    pub fn tree(&self) -> &DTree {
        &self.tree
    }

    pub fn bounds(&self) -> SizeBounds {
        self.bounds
    }

    pub fn len(&self) -> usize {
        self.tree.size()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn count_ones(&self) -> usize {
        self.tree.count_ones()
    }

    pub fn to_bits(&self) -> BitSeq {
        self.tree.flatten().into()
    }

    pub fn access(&self, i: usize) -> Result<bool, Error> {
        let len = self.len();
        if i >= len {
            return Err(Error::OutOfRange { index: i, len });
        }
        self.tree.access(i)
    }

    pub fn rank(&self, b: bool, i: usize) -> usize {
        self.tree.rank(b, i)
    }

    pub fn rank1(&self, i: usize) -> usize {
        self.tree.rank1(i)
    }

    pub fn select0(&self, i: usize) -> usize {
        self.tree.select0(i)
    }

    pub fn select1(&self, i: usize) -> usize {
        self.tree.select1(i)
    }

    pub fn insert(&mut self, i: usize, b: bool) -> Result<(), Error> {
        self.tree = dinsert(&self.tree, b, i, self.bounds)?;
        Ok(())
    }

    /// Removes and returns the bit at `i`.
    pub fn delete(&mut self, i: usize) -> Result<bool, Error> {
        let bit = self.access(i)?;
        self.tree = ddelete(&self.tree, i, self.bounds)?;
        Ok(bit)
    }

    pub fn set(&mut self, i: usize) -> Result<bool, Error> {
        let (tree, changed) = self.tree.set(i)?;
        self.tree = tree;
        Ok(changed)
    }

    pub fn clear(&mut self, i: usize) -> Result<bool, Error> {
        let (tree, changed) = self.tree.clear(i)?;
        self.tree = tree;
        Ok(changed)
    }

    pub fn is_well_formed(&self) -> bool {
        wf_check(&self.tree, self.bounds, true)
    }

    pub fn black_height(&self) -> Option<usize> {
        redblack_check(&self.tree)
    }

    pub fn dump(&self) -> String {
        self.tree.dump()
    }
}
