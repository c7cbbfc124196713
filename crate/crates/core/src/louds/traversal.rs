//! Level-order traversals.
//!
//! Three formulations of the same breadth-first order:
//! - [`lo_traversal`] iterates `height` times over a forest;
//! - [`level_traversal`] / [`lo_traversal_st`] recurse structurally on the
//!   tree and combine children level by level with [`mzip`];
//! - [`lo_traversal_lt`] stops at a path, keeping the node that path names at
//!   the front of a queue.

use super::tree::{children_of_forest, Forest, Tree};

/// One inner sequence per tree level.
pub type LevelSeq<B> = Vec<Vec<B>>;

pub fn lo_traversal<A, B>(f: impl Fn(&Tree<A>) -> B, t: &Tree<A>) -> Vec<B> {
    let mut out = Vec::new();
    let mut s: Forest<'_, A> = vec![t];
    for _ in 0..t.height() {
        out.extend(s.iter().map(|t| f(t)));
        s = children_of_forest(&s);
    }
    out
}

/// Pointwise concatenation of levels; the longer tail is kept as is.
pub fn mzip<B>(l: LevelSeq<B>, r: LevelSeq<B>) -> LevelSeq<B> {
    let (mut long, short, left_is_long) = if l.len() >= r.len() { (l, r, true) } else { (r, l, false) };
    for (level, mut other) in long.iter_mut().zip(short) {
        if left_is_long {
            level.append(&mut other);
        } else {
            other.append(level);
            *level = other;
        }
    }
    long
}

pub fn level_traversal<A, B>(f: &impl Fn(&Tree<A>) -> B, t: &Tree<A>) -> LevelSeq<B> {
    // foldr over the children
    let below = t.children.iter().rev().fold(Vec::new(), |acc, c| mzip(level_traversal(f, c), acc));
    let mut levels = Vec::with_capacity(below.len() + 1);
    levels.push(vec![f(t)]);
    levels.extend(below);
    levels
}

pub fn lo_traversal_st<A, B>(f: impl Fn(&Tree<A>) -> B, t: &Tree<A>) -> Vec<B> {
    level_traversal(&f, t).into_iter().flatten().collect()
}

/// Labels in breadth-first order; position `k` holds the label of node `k`.
pub fn labels_in_level_order<A: Clone>(t: &Tree<A>) -> Vec<A> {
    lo_traversal_st(|n| n.label.clone(), t)
}

/// Runs the queue along `p`, returning the nodes output and the remaining queue.
fn traverse_up_to<'a, A, B>(f: &impl Fn(&Tree<A>) -> B, s: &[&'a Tree<A>], p: &[usize]) -> (Vec<B>, Forest<'a, A>) {
    let mut out = Vec::new();
    let mut queue: Forest<'a, A> = s.to_vec();
    for &n in p {
        let Some((&front, rest)) = queue.split_first() else {
            break;
        };
        let (taken, remaining) = front.children.split_at(n.min(front.children.len()));
        out.extend(queue.iter().map(|t| f(t)));
        out.extend(taken.iter().map(f));
        let next: Forest<'a, A> = remaining
            .iter()
            .chain(rest.iter().flat_map(|t| t.children.iter()))
            .chain(taken.iter().flat_map(|t| t.children.iter()))
            .collect();
        queue = next;
    }
    (out, queue)
}

/// Level-order traversal of the nodes preceding the one at `p`.
///
/// The front of `s` is the current node. Each step `n` outputs the whole
/// queue and the first `n` children of the front node, then continues with the
/// remaining children followed by the children of everything just output.
/// `p` need not be a valid path.
pub fn lo_traversal_lt<A, B>(f: impl Fn(&Tree<A>) -> B, s: &[&Tree<A>], p: &[usize]) -> Vec<B> {
    traverse_up_to(&f, s, p).0
}

/// The queue left after walking `p`: the forest that generates the rest of
/// the traversal.
pub fn lo_fringe<'a, A>(s: &[&'a Tree<A>], p: &[usize]) -> Forest<'a, A> {
    traverse_up_to(&|_: &Tree<A>| (), s, p).1
}

/// Number of nodes before `p` in level order (0-based index of the node).
pub fn lo_index<A>(s: &[&Tree<A>], p: &[usize]) -> usize {
    traverse_up_to(&|_: &Tree<A>| (), s, p).0.len()
}
