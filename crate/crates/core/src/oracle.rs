//! Naive reference implementations.
//!
//! Nothing here shares code with the structures under test: rank is a
//! set-cardinality count over 1-based positions, select is either a filtered
//! enumeration or the minimum-index search, and tree navigation walks the
//! inductive tree directly.

use std::collections::VecDeque;

use crate::error::Error;
use crate::louds::Tree;

/// Cardinality of `{ k in [1, n] | k <= i && s[k - 1] == b }`.
pub fn rank(b: bool, i: usize, s: &[bool]) -> usize {
    (1..=s.len()).filter(|&k| k <= i && s[k - 1] == b).count()
}

pub fn count(b: bool, s: &[bool]) -> usize {
    s.iter().filter(|&&x| x == b).count()
}

pub fn select(b: bool, i: usize, s: &[bool]) -> usize {
    if i == 0 {
        return 0;
    }
    s.iter().enumerate().filter(|&(_, &x)| x == b).nth(i - 1).map_or(s.len() + 1, |(k, _)| k + 1)
}

/// `min { k <= n | rank(b, k, s) == i }`, or `n + 1` when no such `k` exists.
/// Quadratic; only for small inputs.
pub fn select_min_index(b: bool, i: usize, s: &[bool]) -> usize {
    (0..=s.len()).find(|&k| rank(b, k, s) == i).unwrap_or(s.len() + 1)
}

pub fn access(s: &[bool], i: usize) -> Result<bool, Error> {
    s.get(i).copied().ok_or(Error::OutOfRange { index: i, len: s.len() })
}

pub fn insert1(s: &[bool], b: bool, i: usize) -> Result<Vec<bool>, Error> {
    if i > s.len() {
        return Err(Error::OutOfRange { index: i, len: s.len() });
    }
    Ok(s[..i].iter().copied().chain([b]).chain(s[i..].iter().copied()).collect())
}

pub fn delete_at(s: &[bool], i: usize) -> Result<Vec<bool>, Error> {
    if i >= s.len() {
        return Err(Error::OutOfRange { index: i, len: s.len() });
    }
    Ok(s.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect())
}

pub fn update_at(s: &[bool], i: usize, b: bool) -> Result<Vec<bool>, Error> {
    if i >= s.len() {
        return Err(Error::OutOfRange { index: i, len: s.len() });
    }
    Ok(s.iter().enumerate().map(|(k, &x)| if k == i { b } else { x }).collect())
}

/// Queue-based breadth-first listing of node labels.
pub fn bfs_queue<A: Clone>(t: &Tree<A>) -> Vec<A> {
    let mut out = Vec::new();
    let mut queue = VecDeque::from([t]);
    while let Some(node) = queue.pop_front() {
        out.push(node.label.clone());
        queue.extend(node.children.iter());
    }
    out
}

/// Ground-truth navigation facts about the node at `path`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Navigation {
    pub children: usize,
    pub parent: Option<Vec<usize>>,
    pub child_paths: Vec<Vec<usize>>,
}

pub fn tree_navigate<A>(t: &Tree<A>, path: &[usize]) -> Result<Navigation, Error> {
    let mut node = t;
    for &step in path {
        node = node.children.get(step).ok_or_else(|| Error::InvalidPath { path: path.to_vec() })?;
    }
    let children = node.children.len();
    let parent = path.split_last().map(|(_, init)| init.to_vec());
    let child_paths = (0..children).map(|i| path.iter().copied().chain([i]).collect()).collect();
    Ok(Navigation { children, parent, child_paths })
}

/// Every valid path of `t`, in depth-first preorder.
pub fn all_paths<A>(t: &Tree<A>) -> Vec<Vec<usize>> {
    fn walk<A>(t: &Tree<A>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(prefix.clone());
        for (i, c) in t.children.iter().enumerate() {
            prefix.push(i);
            walk(c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    walk(t, &mut Vec::new(), &mut out);
    out
}
