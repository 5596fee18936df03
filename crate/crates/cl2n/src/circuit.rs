//! The `.qc` circuit format.
//!
//! ```text
//! # Bell pair
//! qubits 2
//! h 0
//! cnot 0 1
//! measure 0 -> 0
//! measure 1
//! ```
//!
//! One statement per line, `#` starts a comment, tokens are separated by
//! whitespace and keywords are lowercase. The first statement must be the
//! `qubits` header. A measurement without `-> k` writes the next free
//! classical slot.

use std::fmt;

use cl2n_core::GateOp;
use thiserror::Error;

/// Highest classical slot index a file may name.
pub const MAX_SLOT: usize = 1 << 16;

/// Largest qubit count a header may declare.
pub const MAX_QUBITS: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    ops: Vec<GateOp>,
    creg: usize,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Self, cl2n_core::Error> {
        if n == 0 {
            return Err(cl2n_core::Error::ZeroQubits);
        }
        Ok(Circuit { n, ops: Vec::new(), creg: 0 })
    }

    /// Appends an op. A measurement without a slot gets the next free one.
    pub fn push(&mut self, op: GateOp) -> Result<(), cl2n_core::Error> {
        op.validate(self.n)?;
        let op = match op {
            GateOp::Measure { qubit, slot } => {
                let k = slot.unwrap_or(self.creg);
                self.creg = self.creg.max(k + 1);
                GateOp::Measure { qubit, slot: Some(k) }
            }
            other => other,
        };
        self.ops.push(op);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    /// Number of classical slots.
    pub fn creg(&self) -> usize {
        self.creg
    }

    pub fn measurement_count(&self) -> usize {
        self.ops.iter().filter(|op| op.is_measurement()).count()
    }

    /// Canonical text: header, one op per line, explicit slots.
    pub fn serialize(&self) -> String {
        let mut out = format!("qubits {}\n", self.n);
        for op in &self.ops {
            out.push_str(&op.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl std::str::FromStr for Circuit {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

/// A syntax or range error with its 1-based position.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}{}", token_suffix(.token))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// The offending token; empty when the problem is a missing one.
    pub token: String,
}

fn token_suffix(token: &str) -> String {
    if token.is_empty() {
        String::new()
    } else {
        format!(" (found `{token}`)")
    }
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    /// Column just past the last token, for "missing operand" errors.
    end: usize,
}

impl<'a> Line<'a> {
    fn error(&self, at: Option<Token<'a>>, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.number,
            column: at.map_or(self.end, |t| t.column),
            message: message.into(),
            token: at.map_or(String::new(), |t| t.text.to_string()),
        }
    }
}

fn tokenize(number: usize, raw: &str) -> Line<'_> {
    let code = raw.split('#').next().unwrap_or("");
    let code = code.strip_suffix('\r').unwrap_or(code);
    let mut tokens = Vec::new();
    let mut start = None;
    let mut column = 0;
    for (i, ch) in code.char_indices() {
        column += 1;
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((i, column)),
            (true, Some((s, c))) => {
                tokens.push(Token { text: &code[s..i], column: c });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((s, c)) = start {
        tokens.push(Token { text: &code[s..], column: c });
    }
    Line { number, tokens, end: column + 1 }
}

fn integer(line: &Line<'_>, t: Token<'_>, what: &str) -> Result<usize, ParseError> {
    if !t.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(line.error(Some(t), format!("expected a non-negative integer {what}")));
    }
    t.text
        .parse()
        .map_err(|_| line.error(Some(t), format!("{what} is too large")))
}

fn qubit(line: &Line<'_>, t: Token<'_>, n: usize) -> Result<usize, ParseError> {
    let q = integer(line, t, "qubit index")?;
    if q >= n {
        return Err(line.error(Some(t), format!("qubit index {q} out of range for {n} qubits")));
    }
    Ok(q)
}

fn arity(line: &Line<'_>, keyword: &str, expected: usize) -> Result<(), ParseError> {
    let got = line.tokens.len() - 1;
    if got == expected {
        return Ok(());
    }
    let plural = if expected == 1 { "" } else { "s" };
    let message = format!("`{keyword}` takes {expected} operand{plural}, found {got}");
    Err(line.error(line.tokens.get(expected + 1).copied(), message))
}

fn header(line: &Line<'_>) -> Result<usize, ParseError> {
    let first = line.tokens[0];
    if first.text != "qubits" {
        return Err(line.error(Some(first), "expected `qubits N` header before any statement"));
    }
    arity(line, "qubits", 1)?;
    let t = line.tokens[1];
    let n = integer(line, t, "qubit count")?;
    if n == 0 || n > MAX_QUBITS {
        return Err(line.error(Some(t), format!("qubit count must be between 1 and {MAX_QUBITS}")));
    }
    Ok(n)
}

fn statement(line: &Line<'_>, n: usize) -> Result<GateOp, ParseError> {
    let kw = line.tokens[0];
    let operand = |i: usize| line.tokens[i];
    let one = |f: fn(usize) -> GateOp| -> Result<GateOp, ParseError> {
        arity(line, kw.text, 1)?;
        Ok(f(qubit(line, operand(1), n)?))
    };
    let two = |f: fn(usize, usize) -> GateOp| -> Result<GateOp, ParseError> {
        arity(line, kw.text, 2)?;
        let a = qubit(line, operand(1), n)?;
        let b = qubit(line, operand(2), n)?;
        if a == b {
            return Err(line.error(Some(operand(2)), format!("`{}` needs two distinct qubits", kw.text)));
        }
        Ok(f(a, b))
    };
    match kw.text {
        "h" => one(GateOp::H),
        "s" => one(GateOp::S),
        "sdg" => one(GateOp::Sdg),
        "x" => one(GateOp::X),
        "y" => one(GateOp::Y),
        "z" => one(GateOp::Z),
        "cnot" => two(|control, target| GateOp::Cnot { control, target }),
        "cz" => two(GateOp::Cz),
        "swap" => two(GateOp::Swap),
        "measure" => measure(line, n),
        "qubits" => Err(line.error(Some(kw), "duplicate `qubits` header")),
        other if !other.is_empty() && other.to_lowercase() != other => {
            Err(line.error(Some(kw), "keywords are lowercase"))
        }
        _ => Err(line.error(Some(kw), "unknown keyword")),
    }
}

fn measure(line: &Line<'_>, n: usize) -> Result<GateOp, ParseError> {
    let t = &line.tokens;
    match t.len() {
        1 => Err(line.error(None, "`measure` takes a qubit operand")),
        2 => Ok(GateOp::Measure { qubit: qubit(line, t[1], n)?, slot: None }),
        _ => {
            let q = qubit(line, t[1], n)?;
            if t[2].text != "->" {
                return Err(line.error(Some(t[2]), "expected `->` before the classical slot"));
            }
            let Some(&k) = t.get(3) else {
                return Err(line.error(None, "expected a classical slot after `->`"));
            };
            let slot = integer(line, k, "classical slot")?;
            if slot >= MAX_SLOT {
                return Err(line.error(Some(k), format!("classical slot must be below {MAX_SLOT}")));
            }
            if let Some(&extra) = t.get(4) {
                return Err(line.error(Some(extra), "unexpected token after measurement"));
            }
            Ok(GateOp::Measure { qubit: q, slot: Some(slot) })
        }
    }
}

/// Parses circuit text. LF and CRLF line endings are accepted.
pub fn parse(source: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    for (i, raw) in source.split('\n').enumerate() {
        let line = tokenize(i + 1, raw);
        if line.tokens.is_empty() {
            continue;
        }
        match circuit.as_mut() {
            None => circuit = Some(Circuit::new(header(&line)?).expect("n >= 1")),
            Some(c) => {
                let op = statement(&line, c.n())?;
                c.push(op).expect("operands checked by the parser");
            }
        }
    }
    circuit.ok_or_else(|| ParseError {
        line: source.lines().count().max(1),
        column: 1,
        message: "missing `qubits N` header".to_string(),
        token: String::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(src: &str) -> ParseError {
        parse(src).unwrap_err()
    }

    #[test]
    fn bell() {
        let c = parse("qubits 2\nh 0\ncnot 0 1").unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(c.ops(), &[GateOp::H(0), GateOp::Cnot { control: 0, target: 1 }]);
        assert_eq!(c.creg(), 0);
    }

    #[test]
    fn comments_blank_lines_crlf() {
        let c = parse("# header follows\r\n\r\nqubits 3 # three\r\n  h 2\t\r\nmeasure 2\r\n").unwrap();
        assert_eq!(c.ops(), &[GateOp::H(2), GateOp::Measure { qubit: 2, slot: Some(0) }]);
    }

    #[test]
    fn measurement_slots() {
        let c = parse("qubits 2\nmeasure 0\nmeasure 1\nmeasure 0 -> 0\nmeasure 1 -> 4\nmeasure 0").unwrap();
        let slots: Vec<_> = c
            .ops()
            .iter()
            .map(|op| match op {
                GateOp::Measure { slot, .. } => slot.unwrap(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(slots, [0, 1, 0, 4, 5]);
        assert_eq!(c.creg(), 6);
    }

    #[test]
    fn serialize_canonical() {
        let c = parse("qubits 2\n  h   0 \nmeasure 1\n").unwrap();
        assert_eq!(c.serialize(), "qubits 2\nh 0\nmeasure 1 -> 0\n");
        assert_eq!(Circuit::new(4).unwrap().serialize(), "qubits 4\n");
        assert_eq!(parse(&c.serialize()).unwrap(), c);
    }

    #[test]
    fn error_positions() {
        let e = err("qubits 1\ncnot 0 0");
        assert_eq!((e.line, e.column), (2, 8));
        let e = err("qubits 2\nh 5");
        assert_eq!((e.line, e.column, e.token.as_str()), (2, 3, "5"));
        assert!(e.message.contains("out of range"));
        let e = err("qubits 2\nqubits 2");
        assert_eq!(e.line, 2);
        assert!(e.message.contains("duplicate"));
        let e = err("qubits 2\nh");
        assert_eq!((e.line, e.column, e.token.as_str()), (2, 2, ""));
        let e = err("qubits 2\nh 0 1");
        assert_eq!((e.line, e.column, e.token.as_str()), (2, 5, "1"));
        let e = err("qubits 2\nH 0");
        assert!(e.message.contains("lowercase"));
        let e = err("qubits 2\nt 0");
        assert_eq!(e.message, "unknown keyword");
        let e = err("qubits 2\nh -1");
        assert_eq!(e.token, "-1");
        let e = err("# nothing\nh 0\n");
        assert_eq!(e.line, 2);
        let e = err("");
        assert_eq!(e.line, 1);
        let e = err("# only\n\n# comments\n");
        assert_eq!((e.line, e.message.as_str()), (3, "missing `qubits N` header"));
        let e = err("qubits 0");
        assert_eq!(e.column, 8);
        let e = err("qubits 2\nmeasure 0 1");
        assert_eq!(e.token, "1");
        let e = err("qubits 2\nmeasure 0 ->");
        assert_eq!((e.line, e.column), (2, 13));
    }

    #[test]
    fn columns_count_characters() {
        let e = err("qubits 2\n  \u{3b1}\u{3b2} 0");
        assert_eq!((e.column, e.token.as_str()), (3, "\u{3b1}\u{3b2}"));
        let e = err("qubits 2\n\u{3b1} h 0");
        assert_eq!(e.column, 1);
    }

    #[test]
    fn display_includes_position() {
        assert_eq!(err("qubits 2\nh 9").to_string(), "line 2, column 3: qubit index 9 out of range for 2 qubits (found `9`)");
    }
}
