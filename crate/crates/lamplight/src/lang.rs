//! The programming language `E = (t + r + l + [E])*`: AST, parser, printer,
//! and a fuel-bounded interpreter over a sparse unbounded bit tape.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{self, Gen, GroupElement, Word};

#[derive(Debug, Error, PartialEq)]
pub enum LangError {
    #[error("illegal character '{ch}' at index {pos}")]
    IllegalChar { ch: char, pos: usize },
    #[error("unclosed bracket at index {pos}")]
    UnclosedBracket { pos: usize },
    #[error("unmatched ']' at index {pos}")]
    UnmatchedClose { pos: usize },
    #[error("segment contains a loop")]
    LoopInSegment,
}

/// One AST node: a primitive instruction or a loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Prim(Gen),
    Loop(Program),
}

/// A program: a sequence of primitives and loops.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Program {
    pub items: Vec<Node>,
}

impl Program {
    pub fn empty() -> Self {
        Program::default()
    }

    pub fn new(items: Vec<Node>) -> Self {
        Program { items }
    }

    /// Program length: one per primitive, two per bracket pair. This is the
    /// length every generating function counts.
    pub fn len(&self) -> usize {
        self.items
            .iter()
            .map(|n| match n {
                Node::Prim(_) => 1,
                Node::Loop(body) => 2 + body.len(),
            })
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains_loop(&self) -> bool {
        self.items.iter().any(|n| matches!(n, Node::Loop(_)))
    }
}

/// Parse program text; whitespace is ignored, anything outside
/// `{t, r, l, [, ]}` is rejected with its position.
pub fn parse(text: &str) -> Result<Program, LangError> {
    let mut stack: Vec<(usize, Vec<Node>)> = Vec::new();
    let mut current = Vec::new();
    for (pos, ch) in text.char_indices() {
        match ch {
            't' => current.push(Node::Prim(Gen::T)),
            'r' => current.push(Node::Prim(Gen::R)),
            'l' => current.push(Node::Prim(Gen::L)),
            '[' => {
                stack.push((pos, std::mem::take(&mut current)));
            }
            ']' => {
                let (_, mut outer) = stack
                    .pop()
                    .ok_or(LangError::UnmatchedClose { pos })?;
                outer.push(Node::Loop(Program::new(std::mem::take(&mut current))));
                current = outer;
            }
            c if c.is_whitespace() => {}
            c => return Err(LangError::IllegalChar { ch: c, pos }),
        }
    }
    if let Some(&(pos, _)) = stack.first() {
        return Err(LangError::UnclosedBracket { pos });
    }
    Ok(Program::new(current))
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for node in &self.items {
            match node {
                Node::Prim(g) => write!(f, "{}", g.as_char())?,
                Node::Loop(body) => write!(f, "[{body}]")?,
            }
        }
        Ok(())
    }
}

/// Interpreter state: sparse set of 1-bits plus head position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tape {
    pub ones: BTreeSet<i64>,
    pub head: i64,
}

impl Tape {
    pub fn new<I: IntoIterator<Item = i64>>(ones: I, head: i64) -> Self {
        Tape {
            ones: ones.into_iter().collect(),
            head,
        }
    }

    pub fn bit(&self, pos: i64) -> bool {
        self.ones.contains(&pos)
    }

    pub fn toggle(&mut self, pos: i64) {
        if !self.ones.remove(&pos) {
            self.ones.insert(pos);
        }
    }

    /// Apply a loop-free group element: XOR its lamps at head-relative
    /// positions, then move the head by its shift.
    pub fn apply_element(&mut self, elem: &GroupElement) {
        for p in elem.lamps.iter() {
            self.toggle(self.head + p);
        }
        self.head += elem.shift;
    }
}

/// Result of a fuel-bounded run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    Halted { tape: Tape, steps: u64 },
    FuelExhausted { tape: Tape },
    NonTerminating { witness: String },
}

impl Outcome {
    pub fn is_halted(&self) -> bool {
        matches!(self, Outcome::Halted { .. })
    }
}

/// Run `p` on `input` with the given fuel. Each primitive execution and each
/// loop-condition check costs one unit; running out of fuel is a normal
/// outcome, not an error.
pub fn run(p: &Program, input: &Tape, fuel: u64) -> Outcome {
    let mut tape = input.clone();
    let mut remaining = fuel;
    if exec(&p.items, &mut tape, &mut remaining) {
        Outcome::Halted {
            tape,
            steps: fuel - remaining,
        }
    } else {
        Outcome::FuelExhausted { tape }
    }
}

fn exec(items: &[Node], tape: &mut Tape, fuel: &mut u64) -> bool {
    for node in items {
        match node {
            Node::Prim(g) => {
                if *fuel == 0 {
                    return false;
                }
                *fuel -= 1;
                match g {
                    Gen::T => tape.toggle(tape.head),
                    Gen::R => tape.head += 1,
                    Gen::L => tape.head -= 1,
                }
            }
            Node::Loop(body) => loop {
                if *fuel == 0 {
                    return false;
                }
                *fuel -= 1;
                if !tape.bit(tape.head) {
                    break;
                }
                if !exec(&body.items, tape, fuel) {
                    return false;
                }
            },
        }
    }
    true
}

/// The group element realized by a loop-free program: fold of the generator
/// letters under composition.
pub fn loop_free_segment_to_group(p: &Program) -> Result<GroupElement, LangError> {
    let mut letters = Vec::with_capacity(p.items.len());
    for node in &p.items {
        match node {
            Node::Prim(g) => letters.push(*g),
            Node::Loop(_) => return Err(LangError::LoopInSegment),
        }
    }
    Ok(group::evaluate(&Word(letters)))
}
