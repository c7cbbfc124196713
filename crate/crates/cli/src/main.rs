use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use succinct_core::louds::{louds_position, Louds, Tree};
use succinct_core::oracle;
use succinct_core::script::Script;
use succinct_core::verify::{self, Checker, SweepConfig};
use succinct_core::{BitSeq, DTree, DynamicBitVector, SizeBounds};

#[derive(Parser)]
#[command(name = "succinct", version, about = "LOUDS trees and dynamic bit vectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the LOUDS bits of a parenthesized tree file.
    LoudsBuild {
        tree_file: PathBuf,
        /// Put the tree under an extra root first.
        #[arg(long)]
        super_root: bool,
    },
    /// Navigate LOUDS bits given literally or as @file.
    LoudsQuery {
        bits: String,
        op: NavOp,
        #[arg(long)]
        pos: Option<usize>,
        #[arg(long)]
        index: Option<usize>,
        /// Tree file to check the answer against; needs --path.
        #[arg(long, requires = "path")]
        verify: Option<PathBuf>,
        /// Comma-separated child indices naming the queried node.
        #[arg(long, value_parser = parse_path)]
        path: Option<NodePath>,
    },
    /// Run an operation script against a dynamic bit vector.
    DbvRun {
        script: PathBuf,
        /// Initial contents as a bit string.
        #[arg(long, conflicts_with = "tree")]
        init: Option<String>,
        /// Initial tree as a dump file.
        #[arg(long)]
        tree: Option<PathBuf>,
        /// Leaf bounds `low,high`; defaults to those for 64-bit words.
        #[arg(long, value_parser = parse_bounds)]
        bounds: Option<SizeBounds>,
        /// Check every step against the flat oracle and the tree invariants.
        #[arg(long)]
        verify: bool,
        /// Print the final tree.
        #[arg(long)]
        dump: bool,
        /// Print the elapsed time to stderr.
        #[arg(long)]
        time: bool,
    },
    /// Random cross-checks of the dynamic bit vector and LOUDS navigation.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        scripts: usize,
        #[arg(long, default_value_t = 200)]
        ops: usize,
        #[arg(long, default_value_t = 0)]
        initial_len: usize,
        #[arg(long, value_parser = parse_bounds, default_value = "8,32")]
        bounds: SizeBounds,
        #[arg(long, default_value_t = 100)]
        trees: usize,
        #[arg(long, default_value_t = 300)]
        max_nodes: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NavOp {
    Children,
    Child,
    Parent,
}

enum Failure {
    Usage(anyhow::Error),
    Mismatch(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

#[derive(Clone)]
struct NodePath(Vec<usize>);

fn parse_path(s: &str) -> Result<NodePath, String> {
    if s.trim().is_empty() {
        return Ok(NodePath(Vec::new()));
    }
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| format!("bad path component `{p}`")))
        .collect::<Result<_, _>>()
        .map(NodePath)
}

fn parse_bounds(s: &str) -> Result<SizeBounds, String> {
    let (low, high) = s.split_once(',').ok_or("expected `low,high`")?;
    let low = low.trim().parse().map_err(|_| format!("bad low `{low}`"))?;
    let high = high.trim().parse().map_err(|_| format!("bad high `{high}`"))?;
    SizeBounds::new(low, high).map_err(|e| e.to_string())
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_tree(path: &Path) -> anyhow::Result<Tree<String>> {
    read(path)?.parse().with_context(|| format!("parsing {}", path.display()))
}

fn louds_build(tree_file: &Path, super_root: bool) -> Result<(), Failure> {
    let mut t = read_tree(tree_file)?;
    if super_root {
        t = t.with_super_root("*".to_string());
    }
    println!("{}", Louds::from_tree(&t));
    Ok(())
}

fn louds_query(
    bits: &str,
    op: NavOp,
    pos: Option<usize>,
    index: Option<usize>,
    verify: Option<&Path>,
    path: Option<&[usize]>,
) -> Result<(), Failure> {
    let text = match bits.strip_prefix('@') {
        Some(file) => read(Path::new(file))?,
        None => bits.to_string(),
    };
    let seq: BitSeq = text.parse().context("parsing bits")?;
    let louds = Louds::from_bits(seq).context("bits are not a LOUDS encoding")?;
    let v = match (pos, path) {
        (Some(v), _) => v,
        (None, Some(p)) => louds.position_of_path(p).context("resolving --path")?,
        (None, None) => return Err(Failure::Usage(anyhow::anyhow!("one of --pos or --path is required"))),
    };
    let answer = match op {
        NavOp::Children => louds.children(v),
        NavOp::Child => {
            let i = index.ok_or_else(|| anyhow::anyhow!("`child` needs --index"))?;
            louds.child(v, i)
        }
        NavOp::Parent => louds.parent(v),
    }
    .context("query")?;
    println!("{answer}");

    if let (Some(tree_file), Some(p)) = (verify, path) {
        let t = read_tree(tree_file)?;
        let encoded = Louds::from_tree(&t);
        if encoded.bits() != louds.bits() {
            return Err(Failure::Mismatch(format!(
                "bits differ from the encoding of {}: {encoded}",
                tree_file.display()
            )));
        }
        let nav = oracle::tree_navigate(&t, p).context("resolving --path in the tree")?;
        let s = [&t];
        let expected_pos = louds_position(&s, p);
        if expected_pos != v {
            return Err(Failure::Mismatch(format!("--pos {v} but path {p:?} is at {expected_pos}")));
        }
        let expected = match op {
            NavOp::Children => nav.children,
            NavOp::Child => {
                let i = index.unwrap_or_default();
                louds_position(&s, &nav.child_paths[i])
            }
            NavOp::Parent => {
                let pp = nav.parent.ok_or_else(|| anyhow::anyhow!("the root has no parent"))?;
                louds_position(&s, &pp)
            }
        };
        if expected != answer {
            return Err(Failure::Mismatch(format!("answer {answer}, tree gives {expected}")));
        }
        eprintln!("verified against {}", tree_file.display());
    }
    Ok(())
}

struct RunArgs<'a> {
    script: &'a Path,
    init: Option<&'a str>,
    tree: Option<&'a Path>,
    bounds: SizeBounds,
    verify: bool,
    dump: bool,
    time: bool,
}

fn dbv_run(a: RunArgs<'_>) -> Result<(), Failure> {
    let script = Script::parse(&read(a.script)?).with_context(|| format!("parsing {}", a.script.display()))?;
    let v = match (a.init, a.tree) {
        (_, Some(file)) => {
            let tree = DTree::from_dump(&read(file)?).with_context(|| format!("parsing {}", file.display()))?;
            DynamicBitVector::from_tree(tree, a.bounds)
        }
        (Some(bits), None) => {
            let bits: BitSeq = bits.parse().context("parsing --init")?;
            DynamicBitVector::from_bits(&bits, a.bounds)
        }
        (None, None) => DynamicBitVector::new(a.bounds),
    };
    let start = Instant::now();
    let mut out = String::new();
    let final_tree = if a.verify {
        let model = v.tree().flatten();
        let mut checker = Checker::new(v, model).map_err(|m| Failure::Mismatch(m.to_string()))?;
        for &(line, op) in &script.ops {
            match checker.step(op) {
                Ok(Ok(Some(r))) => out.push_str(&format!("{r}\n")),
                Ok(Ok(None)) => {}
                Ok(Err(e)) => return Err(Failure::Usage(anyhow::anyhow!("line {line}: {e}"))),
                Err(m) => return Err(Failure::Mismatch(format!("line {line}: {m}"))),
            }
        }
        checker.subject().tree().clone()
    } else {
        let mut v = v;
        let results = script.run(&mut v).context("running script")?;
        for r in results {
            out.push_str(&format!("{r}\n"));
        }
        v.tree().clone()
    };
    let elapsed = start.elapsed();
    print!("{out}");
    if a.dump {
        print!("{}", final_tree.dump());
    }
    if a.verify {
        eprintln!("verified {} operations", script.len());
    }
    if a.time {
        eprintln!("elapsed: {:.3} ms", elapsed.as_secs_f64() * 1e3);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::LoudsBuild { tree_file, super_root } => louds_build(&tree_file, super_root),
        Command::LoudsQuery { bits, op, pos, index, verify, path } => {
            louds_query(&bits, op, pos, index, verify.as_deref(), path.as_ref().map(|p| p.0.as_slice()))
        }
        Command::DbvRun { script, init, tree, bounds, verify, dump, time } => dbv_run(RunArgs {
            script: &script,
            init: init.as_deref(),
            tree: tree.as_deref(),
            bounds: bounds.unwrap_or_default(),
            verify,
            dump,
            time,
        }),
        Command::Verify { seed, scripts, ops, initial_len, bounds, trees, max_nodes } => {
            let cfg = SweepConfig { seed, scripts, ops_per_script: ops, initial_len, bounds };
            let dbv = verify::sweep(&cfg);
            println!("dynamic: {} scripts, {} ops, {} failures", dbv.scripts, dbv.ops, dbv.failures.len());
            let louds = verify::louds_sweep(seed, trees, max_nodes);
            println!("louds: {} trees, {} nodes, {} failures", louds.trees, louds.positions, louds.failures.len());
            if let Some((k, m)) = dbv.failures.first() {
                return Err(Failure::Mismatch(format!("script {k}: {m}")));
            }
            if let Some((k, p, msg)) = louds.failures.first() {
                return Err(Failure::Mismatch(format!("tree {k}, path {p:?}: {msg}")));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
