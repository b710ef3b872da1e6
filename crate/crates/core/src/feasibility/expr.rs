//! Integer expressions used by the construction catalog.
//!
//! ```text
//! expr    := or
//! or      := and ( "||" and )*
//! and     := cmp ( "&&" cmp )*
//! cmp     := sum ( ("==" | "!=" | "<" | "<=" | ">" | ">=") sum )?
//! sum     := product ( ("+" | "-") product )*
//! product := unary ( ("*" | "/" | "%") unary )*
//! unary   := ("-" | "!") unary | power
//! power   := atom ( "^" unary )?
//! atom    := integer | name | "binom(" expr "," expr ")" | "(" expr ")"
//! ```
//!
//! Values are `i128`; `/` is floor division, comparisons and logic yield 0 or 1.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Int(i128),
    Var(String),
    Neg(Box<Node>),
    Not(Box<Node>),
    Bin(Op, Box<Node>, Box<Node>),
    Binom(Box<Node>, Box<Node>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Pow,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
}

/// A parsed expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    source: String,
    root: Node,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i128),
    Name(String),
    Sym(&'static str),
}

const SYMBOLS: [&str; 18] = [
    "==", "!=", "<=", ">=", "&&", "||", "<", ">", "+", "-", "*", "/", "%", "^", "!", "(", ")", ",",
];

fn lex(src: &str) -> Result<Vec<Tok>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v = src[start..i].parse().map_err(|_| bad(src, "integer literal too large"))?;
            out.push(Tok::Int(v));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Tok::Name(src[start..i].to_string()));
        } else {
            for s in SYMBOLS {
                if src[i..].starts_with(s) {
                    out.push(Tok::Sym(s));
                    i += s.len();
                    continue 'outer;
                }
            }
            return Err(bad(src, &format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

fn bad(src: &str, msg: &str) -> Error {
    Error::Catalog(format!("expression {src:?}: {msg}"))
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(t)) if *t == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(bad(self.src, &format!("expected {s:?}")))
        }
    }

    fn binary_level(
        &mut self,
        ops: &[(&str, Op)],
        next: fn(&mut Self) -> Result<Node>,
        repeat: bool,
    ) -> Result<Node> {
        let mut lhs = next(self)?;
        loop {
            let Some(&(_, op)) = ops.iter().find(|(s, _)| self.eat(s)) else {
                return Ok(lhs);
            };
            let rhs = next(self)?;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
            if !repeat {
                return Ok(lhs);
            }
        }
    }

    fn or(&mut self) -> Result<Node> {
        self.binary_level(&[("||", Op::Or)], Self::and, true)
    }

    fn and(&mut self) -> Result<Node> {
        self.binary_level(&[("&&", Op::And)], Self::cmp, true)
    }

    fn cmp(&mut self) -> Result<Node> {
        let ops = [
            ("==", Op::Eq),
            ("!=", Op::Ne),
            ("<=", Op::Le),
            (">=", Op::Ge),
            ("<", Op::Lt),
            (">", Op::Gt),
        ];
        self.binary_level(&ops, Self::sum, false)
    }

    fn sum(&mut self) -> Result<Node> {
        self.binary_level(&[("+", Op::Add), ("-", Op::Sub)], Self::product, true)
    }

    fn product(&mut self) -> Result<Node> {
        self.binary_level(&[("*", Op::Mul), ("/", Op::Div), ("%", Op::Rem)], Self::unary, true)
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat("-") {
            Ok(Node::Neg(Box::new(self.unary()?)))
        } else if self.eat("!") {
            Ok(Node::Not(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.eat("^") {
            let exp = self.unary()?;
            return Ok(Node::Bin(Op::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Node::Int(v))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                if name == "binom" {
                    self.expect("(")?;
                    let a = self.or()?;
                    self.expect(",")?;
                    let b = self.or()?;
                    self.expect(")")?;
                    Ok(Node::Binom(Box::new(a), Box::new(b)))
                } else {
                    Ok(Node::Var(name))
                }
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.or()?;
                self.expect(")")?;
                Ok(e)
            }
            _ => Err(bad(self.src, "expected a value")),
        }
    }
}

/// Variable bindings for evaluation.
pub type Env = HashMap<&'static str, i128>;

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { src, toks: lex(src)?, pos: 0 };
        let root = p.or()?;
        if p.pos != p.toks.len() {
            return Err(bad(src, "trailing input"));
        }
        Ok(Expr { source: src.to_string(), root })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval(&self, env: &Env) -> Result<i128> {
        eval(&self.root, env, &self.source)
    }

    pub fn eval_bool(&self, env: &Env) -> Result<bool> {
        Ok(self.eval(env)? != 0)
    }

    /// Names of the variables the expression reads.
    pub fn variables(&self) -> Vec<String> {
        fn walk(n: &Node, out: &mut Vec<String>) {
            match n {
                Node::Int(_) => {}
                Node::Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                Node::Neg(a) | Node::Not(a) => walk(a, out),
                Node::Bin(_, a, b) | Node::Binom(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }
}

fn overflow(src: &str) -> Error {
    bad(src, "arithmetic overflow")
}

fn eval(node: &Node, env: &Env, src: &str) -> Result<i128> {
    Ok(match node {
        Node::Int(v) => *v,
        Node::Var(name) => *env
            .get(name.as_str())
            .ok_or_else(|| bad(src, &format!("unbound variable {name:?}")))?,
        Node::Neg(a) => eval(a, env, src)?.checked_neg().ok_or_else(|| overflow(src))?,
        Node::Not(a) => (eval(a, env, src)? == 0) as i128,
        Node::Binom(a, b) => binom(eval(a, env, src)?, eval(b, env, src)?).ok_or_else(|| overflow(src))?,
        Node::Bin(op, a, b) => {
            let x = eval(a, env, src)?;
            // short-circuit so guards like `q > 2 && ...` can protect the right side
            match op {
                Op::And if x == 0 => return Ok(0),
                Op::Or if x != 0 => return Ok(1),
                _ => {}
            }
            let y = eval(b, env, src)?;
            match op {
                Op::Add => x.checked_add(y).ok_or_else(|| overflow(src))?,
                Op::Sub => x.checked_sub(y).ok_or_else(|| overflow(src))?,
                Op::Mul => x.checked_mul(y).ok_or_else(|| overflow(src))?,
                Op::Div | Op::Rem if y == 0 => return Err(bad(src, "division by zero")),
                Op::Div => x.div_euclid(y),
                Op::Rem => x.rem_euclid(y),
                Op::Pow => {
                    let e = u32::try_from(y).map_err(|_| bad(src, "negative or huge exponent"))?;
                    x.checked_pow(e).ok_or_else(|| overflow(src))?
                }
                Op::Eq => (x == y) as i128,
                Op::Ne => (x != y) as i128,
                Op::Lt => (x < y) as i128,
                Op::Le => (x <= y) as i128,
                Op::Gt => (x > y) as i128,
                Op::Ge => (x >= y) as i128,
                Op::And | Op::Or => (y != 0) as i128,
            }
        }
    })
}

fn binom(n: i128, k: i128) -> Option<i128> {
    if n < 0 || k < 0 || k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&'static str, i128)]) -> Env {
        pairs.iter().cloned().collect()
    }

    fn ev(src: &str, e: &Env) -> i128 {
        Expr::parse(src).unwrap().eval(e).unwrap()
    }

    #[test]
    fn arithmetic_and_precedence() {
        let e = env(&[("q", 4), ("d", 3), ("s", 7)]);
        assert_eq!(ev("q^2+1", &e), 17);
        assert_eq!(ev("q^2-2*d+3", &e), 13);
        assert_eq!(ev("-q^2", &e), -16);
        assert_eq!(ev("2^3^2", &e), 512);
        assert_eq!(ev("s/2+1", &e), 4);
        assert_eq!(ev("(s+1)/2", &e), 4);
        assert_eq!(ev("-7/2", &e), -4);
        assert_eq!(ev("binom(s,d)", &e), 35);
        assert_eq!(ev("binom(3,5)", &e), 0);
    }

    #[test]
    fn logic_and_comparison() {
        let e = env(&[("q", 3), ("d", 3)]);
        assert_eq!(ev("q % 2 == 1 || d % 2 == 1", &e), 1);
        assert_eq!(ev("!(q == 2 && d == 4)", &e), 1);
        assert_eq!(ev("d != q", &e), 0);
        assert_eq!(ev("q <= 3 && q >= 3 && q < 4 && q > 2", &e), 1);
        // right operand is never evaluated
        assert_eq!(ev("q == 2 && unknown", &e), 0);
    }

    #[test]
    fn errors() {
        for src in ["", "1 +", "(1", "q $ 2", "binom(1)", "1 2"] {
            assert!(Expr::parse(src).is_err(), "{src:?}");
        }
        let e = env(&[]);
        assert!(Expr::parse("x + 1").unwrap().eval(&e).is_err());
        assert!(Expr::parse("1 / 0").unwrap().eval(&e).is_err());
        assert!(Expr::parse("2 ^ 200").unwrap().eval(&e).is_err());
        assert_eq!(Expr::parse("q + s*d").unwrap().variables(), vec!["q", "s", "d"]);
    }
}
