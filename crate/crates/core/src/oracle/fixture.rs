//! Text format for stabilizer codes.
//!
//! ```text
//! # five-qubit code
//! p 2
//! n 5
//! S + XZZXI
//! S + IXZZX
//! S + XIXZZ
//! S + ZXIXZ
//! L + XXXXX
//! L + ZZZZZ
//! ```
//!
//! `S` lines are stabilizer generators and `L` lines optional logical
//! generators in the order `X̄_1 Z̄_1 X̄_2 Z̄_2 ...`. The phase field is an
//! integer exponent `r` of `ζ = exp(iπ/p)` or one of `+ - +i -i` (the last two
//! for `p = 2` only). The operator is either `n` whitespace separated symbols
//! (`I`, `X`, `Z`, `X^a`, `Z^b`, `X^aZ^b`, and `Y` for `p = 2`) or a single
//! compact token of the letters `IXYZ`.

use super::code::{make_code, StabilizerCode};
use super::pauli::PauliElement;
use crate::error::{Error, Result};

pub const FIVE_QUBIT: &str = include_str!("../../data/fixtures/five_qubit.stab");
pub const HEXACODE: &str = include_str!("../../data/fixtures/hexacode.stab");
pub const SHOR: &str = include_str!("../../data/fixtures/shor.stab");
pub const FOUR_TWO_TWO: &str = include_str!("../../data/fixtures/four_two_two.stab");
pub const QUTRIT_FOUR_ZERO_THREE: &str = include_str!("../../data/fixtures/qutrit_403.stab");
pub const GHZ3: &str = include_str!("../../data/fixtures/ghz3.stab");

/// Shipped fixtures by name.
pub const FIXTURES: [(&str, &str); 6] = [
    ("five_qubit", FIVE_QUBIT),
    ("hexacode", HEXACODE),
    ("shor", SHOR),
    ("four_two_two", FOUR_TWO_TWO),
    ("qutrit_403", QUTRIT_FOUR_ZERO_THREE),
    ("ghz3", GHZ3),
];

pub fn fixture(name: &str) -> Result<StabilizerCode> {
    let (_, text) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::domain(format!("unknown fixture {name:?}")))?;
    parse_code(text)
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_phase(tok: &str, p: u32, line: usize) -> Result<i64> {
    match tok {
        "+" => Ok(0),
        "-" => Ok(p as i64),
        "+i" | "-i" if p != 2 => Err(err(line, format!("phase {tok} needs p = 2"))),
        "+i" => Ok(1),
        "-i" => Ok(3),
        _ => tok.parse::<i64>().map_err(|_| err(line, format!("bad phase {tok:?}"))),
    }
}

/// One site symbol, returning `(x, z, extra ζ exponent)`.
fn parse_symbol(tok: &str, p: u32, line: usize) -> Result<(u32, u32, i64)> {
    let bad = || err(line, format!("bad symbol {tok:?}"));
    match tok {
        "I" => return Ok((0, 0, 0)),
        // Y = i X Z
        "Y" if p == 2 => return Ok((1, 1, 1)),
        "Y" => return Err(err(line, "Y is only defined for p = 2")),
        _ => {}
    }
    let mut rest = tok;
    let mut x = 0;
    let mut z = 0;
    for (letter, slot) in [('X', &mut x), ('Z', &mut z)] {
        if let Some(r) = rest.strip_prefix(letter) {
            let (exp, tail) = match r.strip_prefix('^') {
                Some(r) => {
                    let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                    (r[..end].parse::<u32>().map_err(|_| bad())?, &r[end..])
                }
                None => (1, r),
            };
            *slot = exp % p;
            rest = tail;
        }
    }
    if !rest.is_empty() || tok.is_empty() {
        return Err(bad());
    }
    Ok((x, z, 0))
}

fn parse_operator(fields: &[&str], p: u32, n: usize, line: usize) -> Result<PauliElement> {
    let Some((phase_tok, ops)) = fields.split_first() else {
        return Err(err(line, "missing phase"));
    };
    let mut phase = parse_phase(phase_tok, p, line)?;
    let symbols: Vec<String> = if ops.len() == 1 && n > 1 {
        let t = ops[0];
        if !t.chars().all(|c| "IXYZ".contains(c)) {
            return Err(err(line, format!("compact token {t:?} may only use I, X, Y, Z")));
        }
        t.chars().map(String::from).collect()
    } else {
        ops.iter().map(|s| s.to_string()).collect()
    };
    if symbols.len() != n {
        return Err(err(line, format!("expected {n} site symbols, got {}", symbols.len())));
    }
    let mut x = Vec::with_capacity(n);
    let mut z = Vec::with_capacity(n);
    for s in &symbols {
        let (a, b, extra) = parse_symbol(s, p, line)?;
        x.push(a);
        z.push(b);
        phase += extra;
    }
    Ok(PauliElement::new(p, phase, x, z))
}

/// Parses and validates a code; errors carry 1-based line numbers.
pub fn parse_code(text: &str) -> Result<StabilizerCode> {
    let mut p: Option<u32> = None;
    let mut n: Option<usize> = None;
    let mut stabs = Vec::new();
    let mut logicals = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields[0] {
            "p" | "n" => {
                let [_, value] = fields[..] else {
                    return Err(err(line, format!("expected `{} <integer>`", fields[0])));
                };
                let v: u32 = value.parse().map_err(|_| err(line, format!("bad integer {value:?}")))?;
                let slot_taken = if fields[0] == "p" { p.replace(v).is_some() } else { n.replace(v as usize).is_some() };
                if slot_taken {
                    return Err(err(line, format!("`{}` given twice", fields[0])));
                }
            }
            "S" | "L" => {
                let (Some(pv), Some(nv)) = (p, n) else {
                    return Err(err(line, "`p` and `n` must precede generators"));
                };
                if !super::code::is_prime(pv) {
                    return Err(err(line, format!("p = {pv} is not prime")));
                }
                let op = parse_operator(&fields[1..], pv, nv, line)?;
                if fields[0] == "S" {
                    stabs.push(op);
                } else {
                    logicals.push(op);
                }
            }
            other => return Err(err(line, format!("unknown directive {other:?}"))),
        }
    }
    let (Some(p), Some(n)) = (p, n) else {
        return Err(err(last_line, "missing `p` or `n`"));
    };
    let logicals = if logicals.is_empty() && stabs.len() < n { None } else { Some(logicals) };
    make_code(p, n, stabs, logicals)
}

/// Renders a code in the fixture format.
pub fn write_code(code: &StabilizerCode) -> String {
    let mut out = format!("p {}\nn {}\n", code.p(), code.n());
    for s in code.stabilizers() {
        out.push_str(&format!("S {s}\n"));
    }
    for l in code.logicals().unwrap_or(&[]) {
        out.push_str(&format!("L {l}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse() {
        let expect = [
            ("five_qubit", 2, 5, 1),
            ("hexacode", 2, 6, 0),
            ("shor", 2, 9, 1),
            ("four_two_two", 2, 4, 2),
            ("qutrit_403", 3, 4, 0),
            ("ghz3", 2, 3, 0),
        ];
        for (name, p, n, k) in expect {
            let c = fixture(name).unwrap();
            assert_eq!((c.p(), c.n(), c.k()), (p, n, k), "{name}");
        }
    }

    #[test]
    fn symbol_forms() {
        let c = parse_code("p 3\nn 2\nS 0 X^1Z^2 Z\nS 0 X^2 X^2Z^2\n").unwrap();
        assert_eq!(c.stabilizers()[1].zvec(), &[0, 2]);
        assert!(parse_code("p 3\nn 2\nS 0 X I\nS 0 Z I\n").is_err());
        let c = parse_code("p 3\nn 2\nS 0 X X^2\nS 0 Z Z\n").unwrap();
        assert_eq!(c.stabilizers()[0].xvec(), &[1, 2]);
        let c = parse_code("p 2\nn 2\nS + YY\nS - XX\n").unwrap();
        assert_eq!(c.stabilizers()[0].phase(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("p 2\nn 2\nS + XQ\n", 3),
            ("p 2\nn 2\n\nS + X\n", 4),
            ("S + XX\n", 1),
            ("p 3\nn 1\nS +i X\n", 3),
            ("p 2\nn 1\np 2\n", 3),
            ("p 2\nn 1\nQ foo\n", 3),
            ("p 3\nn 2\nS 0 Y I\n", 3),
        ];
        for (text, line) in cases {
            match parse_code(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn write_then_parse_round_trips() {
        for (name, _) in FIXTURES {
            let c = fixture(name).unwrap();
            assert_eq!(parse_code(&write_code(&c)).unwrap(), c, "{name}");
        }
    }
}
