//! Lock-step checking of a dynamic bit vector against the flat oracle.
//!
//! After every operation the [`Checker`] compares the query result (or error)
//! with the oracle's, compares the flattened tree with the oracle sequence,
//! and checks leaf bounds, metadata, the red-black invariant and the path
//! length bounds.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dynamic::{redblack_check, wf_check, DTree, DynamicBitVector, SizeBounds};
use crate::error::Error;
use crate::louds::{louds_child, louds_children, louds_encode, louds_parent, louds_position, Tree};
use crate::script::Op;
use crate::{gen, oracle, par};

/// Something that can be driven by scripts and whose tree can be inspected.
/// Implemented by [`DynamicBitVector`]; tests wrap it to inject faults.
pub trait Subject {
    fn apply(&mut self, op: &Op) -> Result<Option<usize>, Error>;
    fn tree(&self) -> &DTree;
    fn bounds(&self) -> SizeBounds;
}

impl Subject for DynamicBitVector {
    fn apply(&mut self, op: &Op) -> Result<Option<usize>, Error> {
        op.apply(self)
    }

    fn tree(&self) -> &DTree {
        DynamicBitVector::tree(self)
    }

    fn bounds(&self) -> SizeBounds {
        DynamicBitVector::bounds(self)
    }
}

/// The oracle's answer to `op` on `s`, updating `s` in place.
pub fn oracle_apply(s: &mut Vec<bool>, op: &Op) -> Result<Option<usize>, Error> {
    Ok(match *op {
        Op::Insert(i, b) => {
            *s = oracle::insert1(s, b, i)?;
            None
        }
        Op::Delete(i) => {
            *s = oracle::delete_at(s, i)?;
            None
        }
        Op::Set(i) => {
            *s = oracle::update_at(s, i, true)?;
            None
        }
        Op::Clear(i) => {
            *s = oracle::update_at(s, i, false)?;
            None
        }
        Op::Rank(i) => Some(oracle::rank(true, i, s)),
        Op::Select0(k) => Some(oracle::select(false, k, s)),
        Op::Select1(k) => Some(oracle::select(true, k, s)),
        Op::Access(i) => Some(usize::from(oracle::access(s, i)?)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Divergence {
    Result { got: Result<Option<usize>, Error>, expected: Result<Option<usize>, Error> },
    Contents { got: Vec<bool>, expected: Vec<bool> },
    NotWellFormed,
    NotRedBlack,
    TooDeep { path: usize, limit: usize },
}

/// The first step at which the subject left the oracle. Step 0 is the
/// initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub step: usize,
    pub op: Option<Op>,
    pub divergence: Divergence,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.op {
            Some(op) => write!(f, "step {} (`{op}`): ", self.step)?,
            None => write!(f, "initial state: ")?,
        }
        match &self.divergence {
            Divergence::Result { got, expected } => write!(f, "result {got:?}, oracle {expected:?}"),
            Divergence::Contents { got, expected } => write!(
                f,
                "contents {}, oracle {}",
                crate::bitvec::bits_to_string(got),
                crate::bitvec::bits_to_string(expected)
            ),
            Divergence::NotWellFormed => write!(f, "leaf bounds or metadata violated"),
            Divergence::NotRedBlack => write!(f, "red-black invariant violated"),
            Divergence::TooDeep { path, limit } => write!(f, "path of {path} nodes exceeds {limit}"),
        }
    }
}

impl std::error::Error for Mismatch {}

/// Largest allowed root-to-leaf path (in nodes, leaf included): twice the
/// black-height plus one, and twice `⌈log₂(leaves + 1)⌉` plus one.
pub fn depth_limit(t: &DTree, black_height: usize) -> usize {
    let leaves = t.leaf_count();
    let log = (leaves + 1).next_power_of_two().ilog2() as usize;
    (2 * black_height + 1).min(2 * log + 1)
}

pub fn check_invariants(t: &DTree, bounds: SizeBounds) -> Result<(), Divergence> {
    if !wf_check(t, bounds, true) {
        return Err(Divergence::NotWellFormed);
    }
    let bh = redblack_check(t).ok_or(Divergence::NotRedBlack)?;
    let limit = depth_limit(t, bh);
    let path = t.path_lengths().into_iter().max().unwrap_or(0);
    if path > limit {
        return Err(Divergence::TooDeep { path, limit });
    }
    Ok(())
}

pub struct Checker<S> {
    subject: S,
    model: Vec<bool>,
    steps: usize,
}

impl<S: Subject> Checker<S> {
    /// Checks the initial state against `model`.
    pub fn new(subject: S, model: Vec<bool>) -> Result<Self, Mismatch> {
        let c = Checker { subject, model, steps: 0 };
        c.check_state(None)?;
        Ok(c)
    }

    pub fn subject(&self) -> &S {
        &self.subject
    }

    pub fn model(&self) -> &[bool] {
        &self.model
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    fn check_state(&self, op: Option<Op>) -> Result<(), Mismatch> {
        let fail = |divergence| Mismatch { step: self.steps, op, divergence };
        let got = self.subject.tree().flatten();
        if got != self.model {
            return Err(fail(Divergence::Contents { got, expected: self.model.clone() }));
        }
        check_invariants(self.subject.tree(), self.subject.bounds()).map_err(fail)
    }

    /// Applies `op` to both sides. An operation the oracle also rejects is
    /// not a mismatch; the rejection is passed through.
    pub fn step(&mut self, op: Op) -> Result<Result<Option<usize>, Error>, Mismatch> {
        self.steps += 1;
        let got = self.subject.apply(&op);
        let expected = oracle_apply(&mut self.model, &op);
        if got != expected {
            return Err(Mismatch { step: self.steps, op: Some(op), divergence: Divergence::Result { got, expected } });
        }
        self.check_state(Some(op))?;
        Ok(got)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub seed: u64,
    pub scripts: usize,
    pub ops_per_script: usize,
    pub initial_len: usize,
    pub bounds: SizeBounds,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub scripts: usize,
    pub ops: usize,
    /// Longest root-to-leaf path seen in any state.
    pub max_path: usize,
    /// Failures as `(script index, mismatch)`, in script order.
    pub failures: Vec<(usize, Mismatch)>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct ScriptOutcome {
    ops: usize,
    max_path: usize,
    failure: Option<Mismatch>,
}

fn run_one(cfg: &SweepConfig, k: usize) -> ScriptOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(k as u64));
    let initial = gen::random_bits(&mut rng, cfg.initial_len);
    let ops = gen::random_script(&mut rng, cfg.initial_len, cfg.ops_per_script);
    let v = DynamicBitVector::from_bits(&initial, cfg.bounds);
    let path_of = |t: &DTree| t.path_lengths().into_iter().max().unwrap_or(0);
    let mut checker = match Checker::new(v, initial) {
        Ok(c) => c,
        Err(m) => return ScriptOutcome { ops: 0, max_path: 0, failure: Some(m) },
    };
    let mut max_path = path_of(checker.subject().tree());
    for op in ops {
        if let Err(m) = checker.step(op) {
            return ScriptOutcome { ops: checker.steps(), max_path, failure: Some(m) };
        }
        max_path = max_path.max(path_of(checker.subject().tree()));
    }
    ScriptOutcome { ops: checker.steps(), max_path, failure: None }
}

fn collect(outcomes: Vec<ScriptOutcome>) -> SweepReport {
    let mut report = SweepReport { scripts: outcomes.len(), ..SweepReport::default() };
    for (k, o) in outcomes.into_iter().enumerate() {
        report.ops += o.ops;
        report.max_path = report.max_path.max(o.max_path);
        if let Some(m) = o.failure {
            report.failures.push((k, m));
        }
    }
    report
}

/// Random scripts checked op by op; script `k` is seeded with `seed + k`, so
/// results do not depend on scheduling.
pub fn sweep(cfg: &SweepConfig) -> SweepReport {
    collect(par::map_range(cfg.scripts, |k| run_one(cfg, k)))
}

pub fn sweep_sequential(cfg: &SweepConfig) -> SweepReport {
    collect((0..cfg.scripts).map(|k| run_one(cfg, k)).collect())
}

/// Navigation results on one tree that disagree with the tree itself, as
/// `(path, description)`.
pub fn louds_disagreements<A: Sync>(t: &Tree<A>) -> Vec<(Vec<usize>, String)> {
    let bits = louds_encode(t);
    let paths = oracle::all_paths(t);
    let s = [t];
    let per_path = par::map(&paths, |p| {
        let mut bad = Vec::new();
        let nav = match oracle::tree_navigate(t, p) {
            Ok(nav) => nav,
            Err(e) => return vec![(p.clone(), e.to_string())],
        };
        let v = louds_position(&s, p);
        let children = louds_children(&bits, v);
        if children != nav.children {
            bad.push((p.clone(), format!("children {children}, expected {}", nav.children)));
        }
        for (i, cp) in nav.child_paths.iter().enumerate() {
            let got = louds_child(&bits, v, i);
            let expected = louds_position(&s, cp);
            if got != expected {
                bad.push((p.clone(), format!("child {i} at {got}, expected {expected}")));
            }
        }
        if let Some(pp) = &nav.parent {
            let got = louds_parent(&bits, v);
            let expected = louds_position(&s, pp);
            if got != expected {
                bad.push((p.clone(), format!("parent at {got}, expected {expected}")));
            }
        }
        bad
    });
    per_path.into_iter().flatten().collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoudsReport {
    pub trees: usize,
    pub positions: usize,
    pub failures: Vec<(usize, Vec<usize>, String)>,
}

/// [`louds_disagreements`] over `trees` random trees of up to `max_nodes` nodes.
pub fn louds_sweep(seed: u64, trees: usize, max_nodes: usize) -> LoudsReport {
    let results = par::map_range(trees, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        let t = gen::random_tree(&mut rng, max_nodes);
        (t.number_of_nodes(), louds_disagreements(&t))
    });
    let mut report = LoudsReport { trees, ..LoudsReport::default() };
    for (k, (n, bad)) in results.into_iter().enumerate() {
        report.positions += n;
        report.failures.extend(bad.into_iter().map(|(p, msg)| (k, p, msg)));
    }
    report
}
