//! Correlation Boxes: arithmetic relations between attribute values of
//! different elements, e.g. `w1 = 100 - w2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::{Id, ModelError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

impl Op {
    pub fn symbol(self) -> char {
        match self {
            Op::Add => '+',
            Op::Sub => '-',
            Op::Mul => '*',
            Op::Div => '/',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            Op::Add | Op::Sub => 1,
            Op::Mul | Op::Div => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Slot(String),
    Bin(Op, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn bin(op: Op, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn slot(name: &str) -> Expr {
        Expr::Slot(name.to_string())
    }

    fn collect_slots<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Num(_) => {}
            Expr::Slot(s) => out.push(s),
            Expr::Bin(_, a, b) => {
                a.collect_slots(out);
                b.collect_slots(out);
            }
        }
    }

    pub fn slots(&self) -> Vec<&str> {
        let mut v = Vec::new();
        self.collect_slots(&mut v);
        v
    }

    fn occurrences(&self, slot: &str) -> usize {
        self.slots().into_iter().filter(|s| *s == slot).count()
    }

    pub fn eval(&self, env: &BTreeMap<String, f64>) -> Result<f64, CorrelationError> {
        match self {
            Expr::Num(n) => Ok(*n),
            Expr::Slot(s) => env
                .get(s)
                .copied()
                .ok_or_else(|| CorrelationError::UnboundSlots(vec![s.clone()])),
            Expr::Bin(op, a, b) => {
                let x = a.eval(env)?;
                let y = b.eval(env)?;
                apply(*op, x, y)
            }
        }
    }
}

fn apply(op: Op, x: f64, y: f64) -> Result<f64, CorrelationError> {
    Ok(match op {
        Op::Add => x + y,
        Op::Sub => x - y,
        Op::Mul => x * y,
        Op::Div => {
            if y == 0.0 {
                return Err(CorrelationError::DivisionByZero);
            }
            x / y
        }
    })
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, parent: Op, right: bool) -> fmt::Result {
            let paren = match e {
                Expr::Bin(op, ..) => {
                    op.precedence() < parent.precedence() || (right && op.precedence() == parent.precedence())
                }
                _ => false,
            };
            if paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Num(n) if n.is_sign_negative() => write!(f, "({n})"),
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Slot(s) => f.write_str(s),
            Expr::Bin(op, a, b) => {
                child(f, a, *op, false)?;
                write!(f, " {} ", op.symbol())?;
                child(f, b, *op, true)
            }
        }
    }
}

/// Parses an arithmetic expression over slot names, numbers, `+ - * /`
/// and parentheses.
pub fn parse_expr(src: &str) -> Result<Expr, String> {
    let mut p = ExprParser { src: src.as_bytes(), pos: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(format!("unexpected {:?} at offset {}", &src[p.pos..], p.pos));
    }
    Ok(e)
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos] == b' ' {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Expr, String> {
        let mut lhs = self.product()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            lhs = Expr::bin(if c == b'+' { Op::Add } else { Op::Sub }, lhs, rhs);
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, String> {
        let mut lhs = self.atom()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.atom()?;
            lhs = Expr::bin(if c == b'*' { Op::Mul } else { Op::Div }, lhs, rhs);
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Expr, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(format!("expected ')' at offset {}", self.pos));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'-' || c == b'.' => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() {
                    let c = self.src[self.pos];
                    let exp_sign = (c == b'-' || c == b'+') && matches!(self.src[self.pos - 1], b'e' | b'E');
                    if c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E' || exp_sign {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).map_err(|e| e.to_string())?;
                let n: f64 = text.parse().map_err(|_| format!("bad number {text:?}"))?;
                if !n.is_finite() {
                    return Err(format!("number {text:?} is not finite"));
                }
                Ok(Expr::Num(n))
            }
            Some(c) if is_slot_byte(c) => {
                let start = self.pos;
                while self.pos < self.src.len() && is_slot_byte(self.src[self.pos]) {
                    self.pos += 1;
                }
                Ok(Expr::Slot(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()))
            }
            Some(c) => Err(format!("unexpected {:?} at offset {}", c as char, self.pos)),
            None => Err("unexpected end of expression".into()),
        }
    }
}

fn is_slot_byte(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_' || (c.is_ascii_digit())
}

pub fn is_slot_name(s: &str) -> bool {
    let b = s.as_bytes();
    !b.is_empty() && (b[0].is_ascii_alphabetic() || b[0] == b'_') && b.iter().all(|&c| is_slot_byte(c))
}

/// `target = expr`.
#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    pub target: String,
    pub expr: Expr,
}

impl Equation {
    pub fn new(target: &str, expr: Expr) -> Self {
        Equation { target: target.to_string(), expr }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.target, self.expr)
    }
}

pub fn parse_equation(src: &str) -> Result<Equation, String> {
    let (lhs, rhs) = src.split_once('=').ok_or_else(|| format!("equation {src:?} has no '='"))?;
    let target = lhs.trim();
    if !is_slot_name(target) {
        return Err(format!("equation target {target:?} is not a slot name"));
    }
    Ok(Equation { target: target.to_string(), expr: parse_expr(rhs.trim())? })
}

/// One variable of a correlation: an attribute of some element.
#[derive(Debug, Clone, PartialEq)]
pub struct Slot {
    pub name: String,
    pub owner: Id,
    pub attribute: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationPayload {
    slots: Vec<Slot>,
    equations: Vec<Equation>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorrelationError {
    #[error("slots not bound: {}", .0.join(", "))]
    UnboundSlots(Vec<String>),
    #[error("no equation solves for slot {0:?}")]
    NoEquationForSlot(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown slot {0:?}")]
    UnknownSlot(String),
}

impl CorrelationPayload {
    pub fn new(slots: Vec<Slot>, equations: Vec<Equation>) -> Result<Self, ModelError> {
        let mut names = BTreeSet::new();
        for s in &slots {
            if !is_slot_name(&s.name) {
                return Err(ModelError::InvalidPayload(format!("bad slot name {:?}", s.name)));
            }
            if !is_attribute_token(&s.attribute) {
                return Err(ModelError::InvalidPayload(format!("bad slot attribute {:?}", s.attribute)));
            }
            if !names.insert(s.name.as_str()) {
                return Err(ModelError::InvalidPayload(format!("slot {:?} declared twice", s.name)));
            }
        }
        for eq in &equations {
            for used in std::iter::once(eq.target.as_str()).chain(eq.expr.slots()) {
                if !names.contains(used) {
                    return Err(ModelError::InvalidPayload(format!(
                        "equation `{eq}` references undeclared slot {used:?}"
                    )));
                }
            }
            if eq.expr.occurrences(&eq.target) > 0 {
                return Err(ModelError::InvalidPayload(format!("equation `{eq}` is not explicit in its target")));
            }
        }
        Ok(CorrelationPayload { slots, equations })
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// True when every slot can be solved from the others.
    pub fn invertible(&self) -> bool {
        self.slots.iter().all(|s| self.solver_for(&s.name).is_some())
    }

    fn solver_for(&self, free: &str) -> Option<(&Equation, bool)> {
        if let Some(eq) = self.equations.iter().find(|e| e.target == free) {
            return Some((eq, false));
        }
        self.equations
            .iter()
            .find(|e| e.expr.occurrences(free) == 1)
            .map(|e| (e, true))
    }
}

fn is_attribute_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-')
}

/// Solves `free` given values for every other slot.
pub fn evaluate_correlation(
    c: &CorrelationPayload,
    bound: &BTreeMap<String, f64>,
    free: &str,
) -> Result<f64, CorrelationError> {
    if !c.slots.iter().any(|s| s.name == free) {
        return Err(CorrelationError::UnknownSlot(free.to_string()));
    }
    let missing: Vec<String> = c
        .slots
        .iter()
        .filter(|s| s.name != free && !bound.contains_key(&s.name))
        .map(|s| s.name.clone())
        .collect();
    if !missing.is_empty() {
        return Err(CorrelationError::UnboundSlots(missing));
    }
    let (eq, isolate) = c
        .solver_for(free)
        .ok_or_else(|| CorrelationError::NoEquationForSlot(free.to_string()))?;
    if !isolate {
        return eq.expr.eval(bound);
    }
    let target_value = *bound
        .get(&eq.target)
        .ok_or_else(|| CorrelationError::UnboundSlots(vec![eq.target.clone()]))?;
    isolate_slot(&eq.expr, free, target_value, bound)
}

/// Inverts `expr == value` for the single occurrence of `free` in `expr`.
fn isolate_slot(expr: &Expr, free: &str, value: f64, env: &BTreeMap<String, f64>) -> Result<f64, CorrelationError> {
    match expr {
        Expr::Slot(s) if s == free => Ok(value),
        Expr::Slot(_) | Expr::Num(_) => Err(CorrelationError::NoEquationForSlot(free.to_string())),
        Expr::Bin(op, a, b) => {
            if a.occurrences(free) == 1 {
                let k = b.eval(env)?;
                let inner = match op {
                    Op::Add => value - k,
                    Op::Sub => value + k,
                    Op::Mul => apply(Op::Div, value, k)?,
                    Op::Div => value * k,
                };
                isolate_slot(a, free, inner, env)
            } else {
                let k = a.eval(env)?;
                let inner = match op {
                    Op::Add => value - k,
                    Op::Sub => k - value,
                    Op::Mul => apply(Op::Div, value, k)?,
                    Op::Div => apply(Op::Div, k, value)?,
                };
                isolate_slot(b, free, inner, env)
            }
        }
    }
}
