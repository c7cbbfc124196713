//! Operation scripts for [`DynamicBitVector`], one operation per line:
//!
//! ```text
//! insert <i> <0|1>
//! delete <i>
//! set <i>
//! clear <i>
//! rank <i>
//! select0 <k>
//! select1 <k>
//! access <i>
//! ```
//!
//! Blank lines and lines starting with `#` are skipped. Queries produce one
//! decimal result each; `rank` counts ones.

use std::fmt;
use std::str::FromStr;

use crate::dynamic::DynamicBitVector;
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Insert(usize, bool),
    Delete(usize),
    Set(usize),
    Clear(usize),
    Rank(usize),
    Select0(usize),
    Select1(usize),
    Access(usize),
}

impl Op {
    pub fn is_query(&self) -> bool {
        matches!(self, Op::Rank(_) | Op::Select0(_) | Op::Select1(_) | Op::Access(_))
    }

    /// Runs the operation; queries return their result.
    pub fn apply(&self, v: &mut DynamicBitVector) -> Result<Option<usize>, Error> {
        Ok(match *self {
            Op::Insert(i, b) => {
                v.insert(i, b)?;
                None
            }
            Op::Delete(i) => {
                v.delete(i)?;
                None
            }
            Op::Set(i) => {
                v.set(i)?;
                None
            }
            Op::Clear(i) => {
                v.clear(i)?;
                None
            }
            Op::Rank(i) => Some(v.rank1(i)),
            Op::Select0(k) => Some(v.select0(k)),
            Op::Select1(k) => Some(v.select1(k)),
            Op::Access(i) => Some(usize::from(v.access(i)?)),
        })
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Op::Insert(i, b) => write!(f, "insert {i} {}", u8::from(b)),
            Op::Delete(i) => write!(f, "delete {i}"),
            Op::Set(i) => write!(f, "set {i}"),
            Op::Clear(i) => write!(f, "clear {i}"),
            Op::Rank(i) => write!(f, "rank {i}"),
            Op::Select0(k) => write!(f, "select0 {k}"),
            Op::Select1(k) => write!(f, "select1 {k}"),
            Op::Access(i) => write!(f, "access {i}"),
        }
    }
}

impl FromStr for Op {
    type Err = Error;

    /// Parses a single line; error positions are reported on line 1.
    fn from_str(line: &str) -> Result<Self, Error> {
        parse_line(line, 1)
    }
}

fn parse_line(line: &str, lineno: usize) -> Result<Op, Error> {
    let words: Vec<(usize, &str)> =
        line.split_whitespace().map(|w| (w.as_ptr() as usize - line.as_ptr() as usize + 1, w)).collect();
    let end = line.trim_end().len() + 1;
    let Some(&(_, name)) = words.first() else {
        return Err(Error::parse(lineno, 1, "empty operation"));
    };
    let arity = if name == "insert" { 2 } else { 1 };
    let number = |k: usize| -> Result<usize, Error> {
        let &(col, w) =
            words.get(k).ok_or_else(|| Error::parse(lineno, end, format!("`{name}` expects {arity} argument(s)")))?;
        w.parse().map_err(|_| Error::parse(lineno, col, format!("expected a non-negative integer, found `{w}`")))
    };
    let op = match name {
        "insert" => {
            let i = number(1)?;
            let b = match words.get(2) {
                Some((_, "0")) => false,
                Some((_, "1")) => true,
                Some(&(col, w)) => return Err(Error::parse(lineno, col, format!("expected bit 0 or 1, found `{w}`"))),
                None => return Err(Error::parse(lineno, end, "`insert` expects 2 argument(s)")),
            };
            Op::Insert(i, b)
        }
        "delete" => Op::Delete(number(1)?),
        "set" => Op::Set(number(1)?),
        "clear" => Op::Clear(number(1)?),
        "rank" => Op::Rank(number(1)?),
        "select0" => Op::Select0(number(1)?),
        "select1" => Op::Select1(number(1)?),
        "access" => Op::Access(number(1)?),
        other => return Err(Error::parse(lineno, 1, format!("unknown operation `{other}`"))),
    };
    if let Some(&(col, _)) = words.get(arity + 1) {
        return Err(Error::parse(lineno, col, "trailing input after operation"));
    }
    Ok(op)
}

/// A parsed script: each operation with its 1-based source line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Script {
    pub ops: Vec<(usize, Op)>,
}

impl Script {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut ops = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            ops.push((k + 1, parse_line(line, k + 1)?));
        }
        Ok(Script { ops })
    }

    pub fn from_ops(ops: impl IntoIterator<Item = Op>) -> Self {
        Script { ops: ops.into_iter().enumerate().map(|(k, op)| (k + 1, op)).collect() }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Runs every operation, collecting query results. The first failing
    /// operation aborts the run with its line number.
    pub fn run(&self, v: &mut DynamicBitVector) -> Result<Vec<usize>, Error> {
        let mut out = Vec::new();
        for &(line, op) in &self.ops {
            match op.apply(v) {
                Ok(Some(r)) => out.push(r),
                Ok(None) => {}
                Err(e) => return Err(Error::AtLine { line, source: Box::new(e) }),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (_, op) in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamic::SizeBounds;
    use crate::gen;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_bit_example() {
        let s = Script::parse("insert 0 1\ninsert 1 0\nrank 2\n").unwrap();
        let mut v = DynamicBitVector::new(SizeBounds::new(2, 4).unwrap());
        assert_eq!(s.run(&mut v), Ok(vec![1]));
        assert_eq!(v.to_bits().to_string(), "10");
    }

    #[test]
    fn all_ops_parse() {
        let text = "insert 3 0\ndelete 1\nset 2\nclear 2\nrank 9\nselect0 1\nselect1 0\naccess 4\n";
        let s = Script::parse(text).unwrap();
        let ops: Vec<Op> = s.ops.iter().map(|&(_, op)| op).collect();
        assert_eq!(
            ops,
            [
                Op::Insert(3, false),
                Op::Delete(1),
                Op::Set(2),
                Op::Clear(2),
                Op::Rank(9),
                Op::Select0(1),
                Op::Select1(0),
                Op::Access(4)
            ]
        );
        assert_eq!(s.to_string(), text);
    }

    #[test]
    fn comments_and_blank_lines_keep_line_numbers() {
        let s = Script::parse("# setup\n\ninsert 0 1\n  \naccess 0\n").unwrap();
        assert_eq!(s.ops, vec![(3, Op::Insert(0, true)), (5, Op::Access(0))]);
    }

    #[test]
    fn parse_errors() {
        let cases = [
            ("insert 0 1\nfrobnicate 2", 2, 1),
            ("insert 0", 1, 9),
            ("insert 0 2", 1, 10),
            ("rank -1", 1, 6),
            ("rank 1 2", 1, 8),
            ("access", 1, 7),
        ];
        for (text, line, column) in cases {
            match Script::parse(text) {
                Err(Error::Parse { line: l, column: c, .. }) => assert_eq!((l, c), (line, column), "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn runtime_error_reports_line() {
        let s = Script::parse("insert 0 1\n\ndelete 5\nrank 1").unwrap();
        let mut v = DynamicBitVector::new(SizeBounds::new(2, 4).unwrap());
        assert_eq!(
            s.run(&mut v),
            Err(Error::AtLine { line: 3, source: Box::new(Error::OutOfRange { index: 5, len: 1 }) })
        );
    }

    #[test]
    fn generated_scripts_round_trip_and_run() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..50 {
            let s = Script::from_ops(gen::random_script(&mut rng, 0, 300));
            assert_eq!(Script::parse(&s.to_string()), Ok(s.clone()));
            let mut v = DynamicBitVector::new(SizeBounds::new(2, 5).unwrap());
            assert!(s.run(&mut v).is_ok());
        }
    }
}
