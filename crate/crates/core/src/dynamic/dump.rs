//! Text form of a [`DTree`]:
//!
//! ```text
//! (B 16 3
//!   (B 8 1
//!     [10000010]
//!     [00000100])
//!   [1000])
//! ```
//!
//! A node is `(color num ones left right)` with color `B` or `R` and the
//! stored left-subtree metadata; a leaf is its bits in brackets. Metadata is
//! read back exactly as written, without checking it against the leaves, so a
//! dump can describe a malformed tree.

use std::fmt::Write;

use super::{Color, DTree, Meta};
use crate::error::Error;

impl DTree {
    pub fn dump(&self) -> String {
        let mut out = String::new();
        write_tree(self, 0, &mut out);
        out.push('\n');
        out
    }

    pub fn from_dump(text: &str) -> Result<DTree, Error> {
        let mut p = Parser::new(text);
        let t = p.tree()?;
        p.skip_ws();
        if let Some((line, col, _)) = p.peek() {
            return Err(Error::parse(line, col, "trailing input after tree"));
        }
        Ok(t)
    }
}

fn write_tree(t: &DTree, indent: usize, out: &mut String) {
    match t {
        DTree::Leaf(s) => {
            out.push('[');
            crate::bitvec::write_bits(out, s).expect("writing to a String cannot fail");
            out.push(']');
        }
        DTree::Node(n) => {
            let c = if n.color == Color::Red { 'R' } else { 'B' };
            write!(out, "({c} {} {}", n.meta.num, n.meta.ones).unwrap();
            for child in [&n.left, &n.right] {
                out.push('\n');
                out.extend(std::iter::repeat_n(' ', indent + 2));
                write_tree(child, indent + 2, out);
            }
            out.push(')');
        }
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { chars: text.chars().peekable(), line: 1, col: 1 }
    }

    fn peek(&mut self) -> Option<(usize, usize, char)> {
        self.chars.peek().map(|&c| (self.line, self.col, c))
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.col, message)
    }

    fn expect(&mut self, want: char) -> Result<(), Error> {
        self.skip_ws();
        match self.peek() {
            Some((_, _, c)) if c == want => {
                self.bump();
                Ok(())
            }
            Some((line, col, c)) => Err(Error::parse(line, col, format!("expected {want:?}, found {c:?}"))),
            None => Err(self.err(format!("expected {want:?}, found end of input"))),
        }
    }

    fn number(&mut self) -> Result<usize, Error> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let mut digits = String::new();
        while let Some(&c) = self.chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            digits.push(c);
            self.bump();
        }
        digits.parse().map_err(|_| Error::parse(line, col, "expected a number"))
    }

    fn tree(&mut self) -> Result<DTree, Error> {
        self.skip_ws();
        match self.peek() {
            Some((_, _, '[')) => self.leaf(),
            Some((_, _, '(')) => {
                self.bump();
                self.skip_ws();
                let color = match self.peek() {
                    Some((_, _, 'B')) => Color::Black,
                    Some((_, _, 'R')) => Color::Red,
                    _ => return Err(self.err("expected node color B or R")),
                };
                self.bump();
                let num = self.number()?;
                let ones = self.number()?;
                let left = self.tree()?;
                let right = self.tree()?;
                self.expect(')')?;
                Ok(DTree::node(color, left, Meta::new(num, ones), right))
            }
            Some((line, col, c)) => Err(Error::parse(line, col, format!("expected '(' or '[', found {c:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn leaf(&mut self) -> Result<DTree, Error> {
        self.expect('[')?;
        let mut bits = Vec::new();
        loop {
            match self.peek() {
                Some((_, _, ']')) => {
                    self.bump();
                    return Ok(DTree::leaf(bits));
                }
                Some((_, _, '0')) => bits.push(false),
                Some((_, _, '1')) => bits.push(true),
                Some((line, col, c)) => return Err(Error::parse(line, col, format!("invalid bit {c:?} in leaf"))),
                None => return Err(self.err("unterminated leaf")),
            }
            self.bump();
        }
    }
}
