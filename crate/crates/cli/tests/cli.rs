use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use succinct_core::script::Script;
use succinct_core::{gen, louds::Tree};
use tempfile::TempDir;

const EXAMPLE_TREE: &str = "(1 (2 (5) (6)) (3) (4 (7) (8 (10)) (9)))";
const WRAPPED_LOUDS: &str = "101110110011100001000";

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        fs::write(&p, contents).unwrap();
        p.to_string_lossy().into_owned()
    }
}

fn succinct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_succinct")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn louds_build_with_super_root() {
    let d = Dir::new();
    let tree = d.file("example.tree", EXAMPLE_TREE);
    let o = succinct(&["louds-build", &tree, "--super-root"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), WRAPPED_LOUDS);

    let o = succinct(&["louds-build", &tree]);
    assert_eq!(stdout(&o).trim(), "1110110011100001000");
}

#[test]
fn louds_build_single_node() {
    let d = Dir::new();
    let o = succinct(&["louds-build", &d.file("x.tree", "(x)")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn louds_build_length_law_on_generated_files() {
    let d = Dir::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..20 {
        let t = gen::random_tree(&mut rng, 300);
        let path = d.file(&format!("t{k}.tree"), &t.to_string());
        let o = succinct(&["louds-build", &path]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim().len(), 2 * t.number_of_nodes() - 1);
    }
}

#[test]
fn louds_build_errors() {
    let d = Dir::new();
    let o = succinct(&["louds-build", &d.file("empty.tree", "")]);
    assert_eq!(o.status.code(), Some(2));
    let o = succinct(&["louds-build", &d.file("bad.tree", "(1 (2)\n  (3")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    let o = succinct(&["louds-build", "/nonexistent/file.tree"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn louds_query_navigation() {
    let o = succinct(&["louds-query", WRAPPED_LOUDS, "children", "--pos", "17"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = succinct(&["louds-query", WRAPPED_LOUDS, "child", "--pos", "0", "--index", "0"]);
    assert_eq!(stdout(&o).trim(), "2");
    let o = succinct(&["louds-query", WRAPPED_LOUDS, "parent", "--pos", "17"]);
    assert_eq!(stdout(&o).trim(), "10");
    let o = succinct(&["louds-query", WRAPPED_LOUDS, "children", "--path", "0,2,1"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn louds_query_bits_from_file() {
    let d = Dir::new();
    let f = d.file("bits", &format!("{WRAPPED_LOUDS}\n"));
    let o = succinct(&["louds-query", &format!("@{f}"), "parent", "--pos", "17"]);
    assert_eq!(stdout(&o).trim(), "10");
}

#[test]
fn louds_query_errors() {
    for args in [
        &["louds-query", "10x1", "children", "--pos", "0"][..],
        &["louds-query", WRAPPED_LOUDS, "children", "--pos", "3"],
        &["louds-query", WRAPPED_LOUDS, "children", "--pos", "99"],
        &["louds-query", WRAPPED_LOUDS, "child", "--pos", "17", "--index", "1"],
        &["louds-query", WRAPPED_LOUDS, "parent", "--pos", "0"],
        &["louds-query", "1", "children", "--pos", "0"],
        &["louds-query", WRAPPED_LOUDS, "child", "--pos", "0"],
    ] {
        let o = succinct(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn louds_query_verify() {
    let d = Dir::new();
    let tree: Tree<String> = EXAMPLE_TREE.parse().unwrap();
    let wrapped = d.file("wrapped.tree", &tree.with_super_root("0".into()).to_string());
    let o = succinct(&["louds-query", WRAPPED_LOUDS, "parent", "--pos", "17", "--verify", &wrapped, "--path", "0,2,1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "10");
    let o = succinct(&["louds-query", WRAPPED_LOUDS, "child", "--verify", &wrapped, "--path", "0,2", "--index", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "17");

    // Position and path naming different nodes.
    let o =
        succinct(&["louds-query", WRAPPED_LOUDS, "children", "--pos", "10", "--verify", &wrapped, "--path", "0,2,1"]);
    assert_eq!(o.status.code(), Some(1));
    // Bits of another tree.
    let other = d.file("other.tree", "(a (b) (c))");
    let o = succinct(&["louds-query", WRAPPED_LOUDS, "children", "--pos", "0", "--verify", &other, "--path", ""]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dbv_run_two_bits() {
    let d = Dir::new();
    let script = d.file("s", "insert 0 1\ninsert 1 0\nrank 2\n");
    let o = succinct(&["dbv-run", &script]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "1\n");
    let o = succinct(&["dbv-run", &script, "--verify", "--bounds", "2,4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn dbv_run_with_initial_bits() {
    let d = Dir::new();
    let script = d.file("s", "access 2\nselect1 2\nselect0 3\nrank 5\ndelete 0\nrank 5\n");
    let o = succinct(&["dbv-run", &script, "--init", "10110", "--bounds", "1,2", "--verify"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "1\n3\n6\n3\n2\n");
}

#[test]
fn borrow_after_delete_via_dump() {
    let d = Dir::new();
    let tree = d.file("t", "(B 3 1 [100] (R 4 3 [1011] [111]))");
    let script = d.file("s", "delete 1\n");
    let o = succinct(&["dbv-run", &script, "--tree", &tree, "--bounds", "3,8", "--verify", "--dump"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "(B 6 4\n  (R 3 2\n    [101]\n    [011])\n  [111])\n");
}

#[test]
fn merge_after_delete_via_dump() {
    let d = Dir::new();
    let tree = d.file("t", "(B 3 1 [100] (R 3 2 [101] [1111]))");
    let script = d.file("s", "delete 1\n");
    let o = succinct(&["dbv-run", &script, "--tree", &tree, "--bounds", "3,8", "--verify", "--dump"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "(B 5 3\n  [10101]\n  [1111])\n");
}

#[test]
fn dbv_run_long_random_script_verifies() {
    let d = Dir::new();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let script = Script::from_ops(gen::random_script(&mut rng, 0, 10_000));
    let path = d.file("long", &script.to_string());
    let o = succinct(&["dbv-run", &path, "--bounds", "8,32", "--verify", "--time"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("verified 10000 operations"));
    assert!(stderr(&o).contains("elapsed"));
}

#[test]
fn dbv_run_verify_catches_corrupt_tree() {
    let d = Dir::new();
    let script = d.file("s", "rank 3\n");
    // Stored left size 2 while the left leaf holds 3 bits.
    let bad_meta = d.file("meta", "(B 2 1 [100] [111])");
    let o = succinct(&["dbv-run", &script, "--tree", &bad_meta, "--bounds", "3,8", "--verify"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    // Same tree without --verify runs and gives a wrong answer silently.
    let o = succinct(&["dbv-run", &script, "--tree", &bad_meta, "--bounds", "3,8"]);
    assert!(o.status.success());

    let red_root = d.file("red", "(R 3 1 [100] [111])");
    let o = succinct(&["dbv-run", &script, "--tree", &red_root, "--bounds", "3,8", "--verify"]);
    assert_eq!(o.status.code(), Some(1));

    let short_leaf = d.file("short", "(B 2 1 [10] [111])");
    let o = succinct(&["dbv-run", &script, "--tree", &short_leaf, "--bounds", "3,8", "--verify"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dbv_run_errors_carry_line_numbers() {
    let d = Dir::new();
    let o = succinct(&["dbv-run", &d.file("s", "insert 0 1\n\nbogus 3\n")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    for extra in [&[][..], &["--verify"]] {
        let mut args = vec!["dbv-run"];
        let f = d.file("r", "insert 0 1\ndelete 4\n");
        args.push(&f);
        args.extend_from_slice(extra);
        let o = succinct(&args);
        assert_eq!(o.status.code(), Some(2));
        assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    }
    let o = succinct(&["dbv-run", &d.file("t", "rank 0\n"), "--bounds", "3,5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = succinct(&["dbv-run", &d.file("u", "rank 0\n"), "--tree", &d.file("bad", "(B 1 0 [0]")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_subcommand() {
    let o = succinct(&["verify", "--scripts", "30", "--ops", "200", "--trees", "20"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("dynamic: 30 scripts, 6000 ops, 0 failures"), "{out}");
    assert!(out.contains("louds: 20 trees"), "{out}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(succinct(&[]).status.code(), Some(2));
    assert_eq!(succinct(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(succinct(&["louds-query", WRAPPED_LOUDS, "sideways", "--pos", "0"]).status.code(), Some(2));
}
