//! Rational expressions in sequence terms, periodic-quantity templates and
//! their exact verification along a trace.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

use super::field::Field;
use super::iterate::SeqTrace;
use super::spec::{shift_text, Seq, Slot};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Term(Slot),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn eval<F: Field>(&self, t: &SeqTrace<F>, q: i64) -> Result<F> {
        Ok(match self {
            Expr::Num(r) => F::from_rational(r)
                .ok_or_else(|| Error::ZeroDivision(format!(" reducing {}", format_rational(r))))?,
            Expr::Term(s) => t
                .get(*s, q)
                .cloned()
                .ok_or_else(|| Error::SequenceTooShort(format!("{} at q={q}", s.render(t.kind))))?,
            Expr::Add(a, b) => a.eval(t, q)?.add(&b.eval(t, q)?),
            Expr::Sub(a, b) => a.eval(t, q)?.sub(&b.eval(t, q)?),
            Expr::Mul(a, b) => a.eval(t, q)?.mul(&b.eval(t, q)?),
            Expr::Div(a, b) => {
                let d = b.eval(t, q)?;
                a.eval(t, q)?.div(&d).ok_or_else(|| Error::ZeroDivision(format!(" evaluating at q={q}")))?
            }
            Expr::Pow(a, e) => {
                let v = a.eval(t, q)?;
                if *e >= 0 {
                    v.pow(*e as u64)
                } else {
                    v.inv()
                        .ok_or_else(|| Error::ZeroDivision(format!(" evaluating at q={q}")))?
                        .pow(e.unsigned_abs())
                }
            }
            Expr::Neg(a) => F::zero().sub(&a.eval(t, q)?),
        })
    }

    fn visit(&self, f: &mut impl FnMut(&Slot)) {
        match self {
            Expr::Num(_) => {}
            Expr::Term(s) => f(s),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Expr::Pow(a, _) | Expr::Neg(a) => a.visit(f),
        }
    }

    /// Largest offset used per sequence (None if unused), and the smallest
    /// offset overall.
    pub fn reach(&self) -> ([Option<i64>; 2], i64) {
        let mut hi = [None, None];
        let mut lo = 0i64;
        self.visit(&mut |s| {
            let h = &mut hi[s.seq.index()];
            *h = Some(h.map_or(s.offset, |v: i64| v.max(s.offset)));
            lo = lo.min(s.offset);
        });
        (hi, lo)
    }

    pub fn render(&self, names: [&str; 2]) -> String {
        self.render_prec(names, 0)
    }

    fn render_prec(&self, names: [&str; 2], prec: u8) -> String {
        let (s, p) = match self {
            Expr::Num(r) => {
                let t = format_rational(r);
                let p = if t.contains('/') || t.starts_with('-') { 2 } else { 4 };
                (t, p)
            }
            Expr::Term(s) => (format!("{}({})", names[s.seq.index()], shift_text(s.offset)), 4),
            Expr::Add(a, b) => (format!("{} + {}", a.render_prec(names, 1), b.render_prec(names, 1)), 1),
            Expr::Sub(a, b) => (format!("{} - {}", a.render_prec(names, 1), b.render_prec(names, 2)), 1),
            Expr::Mul(a, b) => (format!("{}*{}", a.render_prec(names, 2), b.render_prec(names, 3)), 2),
            Expr::Div(a, b) => (format!("{}/{}", a.render_prec(names, 2), b.render_prec(names, 3)), 2),
            Expr::Pow(a, e) => (format!("{}^{e}", a.render_prec(names, 4)), 3),
            Expr::Neg(a) => (format!("-{}", a.render_prec(names, 3)), 2),
        };
        if p < prec { format!("({s})") } else { s }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(["z", "y"]))
    }
}

/// Parses expressions such as `(z(q)+z(q+3))/y(q+1)` or `A(q+1)/B(q)`.
/// `z`/`A` name the first sequence and `y`/`B` the second.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { s: src.as_bytes(), i: 0, src };
    let e = p.sum()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at column {} in {:?}", self.i + 1, self.src))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut e = self.product()?;
        loop {
            if self.eat(b'+') {
                e = Expr::Add(Box::new(e), Box::new(self.product()?));
            } else if self.eat(b'-') {
                e = Expr::Sub(Box::new(e), Box::new(self.product()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat(b'*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let n = self.integer()?;
            let n = i64::try_from(&n).map_err(|_| self.err("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected a number"));
        }
        Ok(self.src[start..self.i].parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Num(Rational::from_integer(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() => {
                let seq = match c {
                    b'z' | b'A' => Seq::Z,
                    b'y' | b'B' => Seq::Y,
                    _ => return Err(self.err(&format!("unknown sequence '{}'", c as char))),
                };
                self.i += 1;
                self.expect(b'(')?;
                if self.peek() != Some(b'q') {
                    return Err(self.err("expected 'q'"));
                }
                self.i += 1;
                let offset = if self.eat(b'+') {
                    i64::try_from(&self.integer()?).map_err(|_| self.err("shift too large"))?
                } else if self.eat(b'-') {
                    -i64::try_from(&self.integer()?).map_err(|_| self.err("shift too large"))?
                } else {
                    0
                };
                self.expect(b')')?;
                Ok(Expr::Term(Slot { seq, offset }))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Period {
    Constant,
    Every(usize),
}

impl Period {
    pub fn shift(self) -> usize {
        match self {
            Period::Constant => 1,
            Period::Every(p) => p,
        }
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Period::Constant => write!(f, "constant"),
            Period::Every(p) => write!(f, "period {p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicQuantityTemplate {
    pub name: String,
    pub expr: Expr,
    pub period: Period,
}

impl PeriodicQuantityTemplate {
    pub fn parse(name: &str, expr: &str, period: Period) -> Result<Self> {
        Ok(PeriodicQuantityTemplate { name: name.into(), expr: parse_expr(expr)?, period })
    }

    /// Number of shifts q for which the value and its shifted copy both lie
    /// inside the trace.
    pub fn max_horizon<F: Field>(&self, t: &SeqTrace<F>) -> usize {
        let (hi, lo) = self.expr.reach();
        let mut h = i64::MAX;
        for s in 0..2 {
            if let Some(o) = hi[s] {
                h = h.min(t.seqs[s].len() as i64 - o - self.period.shift() as i64);
            }
        }
        if lo < 0 {
            h -= -lo;
        }
        if h == i64::MAX { 0 } else { h.max(0) as usize }
    }
}

/// The periodic quantities of the worked examples, by name.
pub fn builtin(name: &str) -> Option<PeriodicQuantityTemplate> {
    let (expr, period) = match name {
        "s81" | "s81-t" => ("y(q)/z(q+1)", Period::Every(2)),
        "s81-y" => ("A(q+1)/B(q)", Period::Every(2)),
        "s82" => ("(z(q)+z(q+3))/y(q)", Period::Constant),
        "s83" => ("(y(q)*y(q+2)+y(q+1))/(z(q+1)*z(q+2))", Period::Constant),
        "s84" => ("(z(q)+z(q+3))/y(q+1)", Period::Constant),
        "s85" => ("(z(q)+1)/(y(q+2)*y(q))", Period::Every(2)),
        "s86" => ("(y(q)*y(q+1)+y(q+3)*y(q+4))/z(q+1)", Period::Constant),
        _ => return None,
    };
    Some(PeriodicQuantityTemplate::parse(name, expr, period).expect("built-in templates parse"))
}

pub const BUILTIN_NAMES: [&str; 7] = ["s81-t", "s81-y", "s82", "s83", "s84", "s85", "s86"];

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicReport {
    pub name: String,
    pub period: Period,
    pub horizon: usize,
    pub passed: bool,
    pub first_failure: Option<usize>,
    pub values: Vec<Rational>,
}

impl fmt::Display for PeriodicReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} ({}, {} shifts checked)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.period,
            self.horizon
        )?;
        if let Some(q) = self.first_failure {
            write!(f, ": value({}) != value({q})", q + self.period.shift())?;
        }
        Ok(())
    }
}

/// Checks value(q + period) = value(q) for q = 0..horizon. The report keeps
/// the first few distinct values.
pub fn verify_periodic(t: &SeqTrace<Rational>, tmpl: &PeriodicQuantityTemplate, horizon: usize) -> Result<PeriodicReport> {
    let avail = tmpl.max_horizon(t);
    if horizon > avail {
        return Err(Error::SequenceTooShort(format!(
            "horizon {horizon} exceeds the {avail} shifts available for {}",
            tmpl.name
        )));
    }
    let (_, lo) = tmpl.expr.reach();
    let base = -lo;
    let p = tmpl.period.shift();
    let mut vals: Vec<Rational> = Vec::with_capacity(horizon + p);
    for q in 0..horizon + p {
        vals.push(tmpl.expr.eval(t, base + q as i64)?);
    }
    let first_failure = (0..horizon).find(|&q| vals[q + p] != vals[q]);
    vals.truncate(p.max(1));
    Ok(PeriodicReport {
        name: tmpl.name.clone(),
        period: tmpl.period,
        horizon,
        passed: first_failure.is_none(),
        first_failure,
        values: vals,
    })
}

pub fn constant(r: Rational) -> Expr {
    Expr::Num(r)
}

pub fn one() -> Expr {
    Expr::Num(<Rational as Field>::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn parse_and_print() {
        let e = parse_expr("(z(q)+z(q+3))/y(q+1)").unwrap();
        assert_eq!(e.to_string(), "(z(q) + z(q+3))/y(q+1)");
        let e = parse_expr("A(q+1)/B(q)").unwrap();
        assert_eq!(e.render(["A", "B"]), "A(q+1)/B(q)");
        assert_eq!(parse_expr("z(q)^-2*y(q-1)").unwrap().to_string(), "z(q)^-2*y(q-1)");
        assert_eq!(parse_expr("-z(q) - (y(q) - 1)").unwrap().to_string(), "-z(q) - (y(q) - 1)");
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse_expr("z(q+1) +").unwrap_err();
        assert!(e.to_string().contains("column 9"), "{e}");
        assert!(parse_expr("w(q)").is_err());
        assert!(parse_expr("z(p)").is_err());
    }

    #[test]
    fn builtins_parse() {
        for n in BUILTIN_NAMES {
            assert!(builtin(n).is_some());
        }
        assert!(builtin("nope").is_none());
    }

    #[test]
    fn constant_template_on_constant_sequence() {
        let t = SeqTrace::new(super::super::spec::Kind::T, vec![int(3); 10], vec![int(5); 10]);
        let tmpl = PeriodicQuantityTemplate::parse("c", "y(q)/z(q+2)", Period::Constant).unwrap();
        let r = verify_periodic(&t, &tmpl, 7).unwrap();
        assert!(r.passed);
        assert!(verify_periodic(&t, &tmpl, 8).is_err());
    }

    #[test]
    fn detects_failure() {
        let z: Vec<Rational> = (1..=10).map(int).collect();
        let t = SeqTrace::new(super::super::spec::Kind::T, z.clone(), z);
        let tmpl = PeriodicQuantityTemplate::parse("r", "z(q+1)/y(q)", Period::Every(2)).unwrap();
        let r = verify_periodic(&t, &tmpl, 5).unwrap();
        assert_eq!(r.first_failure, Some(0));
    }
}
