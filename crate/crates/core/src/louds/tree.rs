use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Arbitrarily branching labeled tree. A leaf is a node without children.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree<A> {
    pub label: A,
    pub children: Vec<Tree<A>>,
}

/// A queue of borrowed trees, as consumed by the level-order traversals.
pub type Forest<'a, A> = Vec<&'a Tree<A>>;

impl<A> Tree<A> {
    pub fn node(label: A, children: Vec<Tree<A>>) -> Self {
        Tree { label, children }
    }

    pub fn leaf(label: A) -> Self {
        Tree { label, children: Vec::new() }
    }

    /// Wraps `self` as the only child of a new root, which reproduces the
    /// conventional `10` prefix in the encoding.
    pub fn with_super_root(self, label: A) -> Self {
        Tree { label, children: vec![self] }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of levels; a single leaf has height 1.
    pub fn height(&self) -> usize {
        1 + self.children.iter().map(Tree::height).max().unwrap_or(0)
    }

    pub fn number_of_nodes(&self) -> usize {
        1 + self.children.iter().map(Tree::number_of_nodes).sum::<usize>()
    }

    pub fn map<B>(&self, f: &impl Fn(&A) -> B) -> Tree<B> {
        Tree { label: f(&self.label), children: self.children.iter().map(|c| c.map(f)).collect() }
    }

    pub fn valid_position(&self, path: &[usize]) -> bool {
        match path.split_first() {
            None => true,
            Some((&n, rest)) => self.children.get(n).is_some_and(|c| c.valid_position(rest)),
        }
    }

    pub fn subtree(&self, path: &[usize]) -> Result<&Tree<A>, Error> {
        let mut node = self;
        for &n in path {
            node = node.children.get(n).ok_or_else(|| Error::InvalidPath { path: path.to_vec() })?;
        }
        Ok(node)
    }

    /// Child count of the node at `path`.
    pub fn children_at(&self, path: &[usize]) -> Result<usize, Error> {
        Ok(self.subtree(path)?.children.len())
    }
}

/// Concatenation of the children of every tree in `s`, in order.
pub fn children_of_forest<'a, A>(s: &[&'a Tree<A>]) -> Forest<'a, A> {
    s.iter().flat_map(|t| t.children.iter()).collect()
}

impl<A: fmt::Display> fmt::Display for Tree<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.label)?;
        for c in &self.children {
            write!(f, " {c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Tree<String> {
    type Err = Error;

    /// Parses the parenthesized form `(label child*)`, e.g.
    /// `(1 (2 (5) (6)) (3) (4 (7) (8 (10)) (9)))`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = Parser::new(s);
        p.skip_ws();
        if p.peek().is_none() {
            return Err(Error::parse(1, 1, "empty input"));
        }
        let tree = p.tree()?;
        p.skip_ws();
        if p.peek().is_some() {
            return Err(p.error("trailing input after tree"));
        }
        Ok(tree)
    }
}

struct Parser<'s> {
    chars: std::iter::Peekable<std::str::Chars<'s>>,
    line: usize,
    column: usize,
}

impl<'s> Parser<'s> {
    fn new(s: &'s str) -> Self {
        Parser { chars: s.chars().peekable(), line: 1, column: 1 }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::parse(self.line, self.column, message)
    }

    // Explicit stack so deep trees cannot overflow the call stack.
    fn tree(&mut self) -> Result<Tree<String>, Error> {
        let mut stack: Vec<Tree<String>> = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some('(') => {
                    self.bump();
                    self.skip_ws();
                    let label = self.label()?;
                    stack.push(Tree::leaf(label));
                }
                Some(')') => {
                    if stack.is_empty() {
                        return Err(self.error("unbalanced ')'"));
                    }
                    self.bump();
                    let done = stack.pop().expect("non-empty");
                    match stack.last_mut() {
                        Some(parent) => parent.children.push(done),
                        None => return Ok(done),
                    }
                }
                Some(_) if stack.is_empty() => return Err(self.error("expected '('")),
                Some(_) => return Err(self.error("expected '(' or ')'")),
                None => return Err(self.error("unexpected end of input, missing ')'")),
            }
        }
    }

    fn label(&mut self) -> Result<String, Error> {
        let mut label = String::new();
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '(' || c == ')' {
                break;
            }
            label.push(c);
            self.bump();
        }
        if label.is_empty() {
            return Err(self.error("expected a node label"));
        }
        Ok(label)
    }
}
