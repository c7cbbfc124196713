//! Random instance generators shared by tests, the verification sweeps and
//! the CLI `verify` command.

use rand::Rng;

use crate::dynamic::{Color, DTree};
use crate::louds::Tree;
use crate::script::Op;

/// A random ordinal tree with between 1 and `max_nodes` nodes, labeled by
/// creation order. Parents are drawn either uniformly from all earlier nodes
/// or from the few most recent ones, which mixes bushy and deep shapes.
pub fn random_tree(rng: &mut impl Rng, max_nodes: usize) -> Tree<usize> {
    let n = rng.gen_range(1..=max_nodes.max(1));
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    for k in 1..n {
        let parent = if rng.gen_bool(0.3) { rng.gen_range(k.saturating_sub(3)..k) } else { rng.gen_range(0..k) };
        kids[parent].push(k);
    }
    build(0, &kids)
}

fn build(k: usize, kids: &[Vec<usize>]) -> Tree<usize> {
    Tree::node(k, kids[k].iter().map(|&c| build(c, kids)).collect())
}

/// A path of exactly `len` steps that mostly follows existing children and
/// occasionally steps outside the tree.
pub fn random_path<A>(rng: &mut impl Rng, t: &Tree<A>, len: usize) -> Vec<usize> {
    let mut node = Some(t);
    (0..len)
        .map(|_| {
            let width = node.map_or(0, |n| n.children.len());
            let step =
                if width > 0 && rng.gen_bool(0.9) { rng.gen_range(0..width) } else { rng.gen_range(0..width + 3) };
            node = node.and_then(|n| n.children.get(step));
            step
        })
        .collect()
}

pub fn random_bits(rng: &mut impl Rng, len: usize) -> Vec<bool> {
    (0..len).map(|_| rng.gen_bool(0.5)).collect()
}

/// A red-black tree with black-height `bh` that is valid under a parent of
/// color `ctxt`, with leaves of 1 to 4 random bits and correct metadata.
pub fn random_redblack(rng: &mut impl Rng, bh: usize, ctxt: Color) -> DTree {
    if ctxt == Color::Black && rng.gen_bool(0.4) {
        let l = random_redblack(rng, bh, Color::Red);
        let r = random_redblack(rng, bh, Color::Red);
        return DTree::with_meta(Color::Red, l, r);
    }
    if bh == 0 {
        let len = rng.gen_range(1..=4);
        return DTree::leaf(random_bits(rng, len));
    }
    let l = random_redblack(rng, bh - 1, Color::Black);
    let r = random_redblack(rng, bh - 1, Color::Black);
    DTree::with_meta(Color::Black, l, r)
}

/// A script of `len` operations valid against a vector of `initial_len`
/// bits, tracking the length as it goes. Deletions are slightly less likely
/// than insertions so the vector grows across leaf splits.
pub fn random_script(rng: &mut impl Rng, initial_len: usize, len: usize) -> Vec<Op> {
    let mut size = initial_len;
    let mut ops = Vec::with_capacity(len);
    for _ in 0..len {
        let roll = rng.gen_range(0..100);
        let op = if size == 0 || roll < 30 {
            size += 1;
            Op::Insert(rng.gen_range(0..size), rng.gen_bool(0.5))
        } else if roll < 55 {
            size -= 1;
            Op::Delete(rng.gen_range(0..=size))
        } else if roll < 63 {
            Op::Set(rng.gen_range(0..size))
        } else if roll < 71 {
            Op::Clear(rng.gen_range(0..size))
        } else if roll < 79 {
            Op::Rank(rng.gen_range(0..=size + 1))
        } else if roll < 86 {
            Op::Select0(rng.gen_range(0..=size / 2 + 2))
        } else if roll < 93 {
            Op::Select1(rng.gen_range(0..=size / 2 + 2))
        } else {
            Op::Access(rng.gen_range(0..size))
        };
        ops.push(op);
    }
    ops
}
