//! Versioned file formats: quiver-v1, seed-v1, trace-v1 and sequences-v1
//! (JSON), plus CSV and DOT exports.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cluster::Seed;
use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::orbit::OrbitTrace;
use crate::period::Period2Spec;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::systems::{Kind, SeqTrace};

pub const QUIVER_FORMAT: &str = "quiverperiod/quiver-v1";
pub const SEED_FORMAT: &str = "quiverperiod/seed-v1";
pub const TRACE_FORMAT: &str = "quiverperiod/trace-v1";
pub const SEQUENCES_FORMAT: &str = "quiverperiod/sequences-v1";

fn parse_err(e: serde_json::Error) -> Error {
    let (line, column) = (e.line(), e.column());
    let msg = e.to_string();
    let msg = msg.strip_suffix(&format!(" at line {line} column {column}")).unwrap_or(&msg);
    Error::Parse(format!("line {line} column {column}: {msg}"))
}

fn int_value(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::from(v.to_string()),
    }
}

fn value_int(v: &Value, at: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("{at}: {n} is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{at}: {s:?} is not an integer"))),
        other => Err(Error::Parse(format!("{at}: expected an integer, found {other}"))),
    }
}

fn matrix_value(b: &ExchangeMatrix) -> Value {
    Value::Array(b.rows().iter().map(|r| Value::Array(r.iter().map(int_value).collect())).collect())
}

fn matrix_from_value(n: usize, b: &Value) -> Result<ExchangeMatrix> {
    let rows = b.as_array().ok_or_else(|| Error::Parse("b: expected an array of rows".into()))?;
    if rows.len() != n {
        return Err(Error::Parse(format!("b has {} rows but n = {n}", rows.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (i, r) in rows.iter().enumerate() {
        let r = r.as_array().ok_or_else(|| Error::Parse(format!("b row {}: expected an array", i + 1)))?;
        if r.len() != n {
            return Err(Error::Parse(format!("b row {} has {} entries but n = {n}", i + 1, r.len())));
        }
        out.push(
            r.iter()
                .enumerate()
                .map(|(j, v)| value_int(v, &format!("b[{}][{}]", i + 1, j + 1)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    ExchangeMatrix::from_rows(out)
}

fn check_format(v: &Value, want: &str) -> Result<()> {
    match v.get("format").and_then(Value::as_str) {
        Some(f) if f == want => Ok(()),
        Some(f) => Err(Error::Parse(format!("format {f:?}, expected {want:?}"))),
        None => Err(Error::Parse(format!("missing format field (expected {want:?})"))),
    }
}

fn get_n(v: &Value) -> Result<usize> {
    v.get("n")
        .and_then(Value::as_u64)
        .map(|n| n as usize)
        .ok_or_else(|| Error::Parse("n: expected a positive integer".into()))
}

pub fn quiver_value(b: &ExchangeMatrix) -> Value {
    serde_json::json!({ "format": QUIVER_FORMAT, "n": b.n(), "b": matrix_value(b) })
}

/// One-line quiver-v1 text.
pub fn quiver_to_json(b: &ExchangeMatrix) -> String {
    quiver_value(b).to_string()
}

pub fn parse_quiver(text: &str) -> Result<ExchangeMatrix> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    check_format(&v, QUIVER_FORMAT)?;
    let n = get_n(&v)?;
    matrix_from_value(n, v.get("b").ok_or_else(|| Error::Parse("missing field b".into()))?)
}

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|r| Value::from(format_rational(r))).collect())
}

fn parse_rationals(v: &Value, field: &str) -> Result<Vec<Rational>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse(format!("{field}: expected an array")))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| match x {
            Value::String(s) => parse_rational(s).map_err(|e| Error::Parse(format!("{field}[{i}]: {e}"))),
            Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap_or(0).into())),
            other => Err(Error::Parse(format!("{field}[{i}]: expected \"p/q\", found {other}"))),
        })
        .collect()
}

pub fn seed_to_json(s: &Seed<Rational>) -> String {
    let mut v = serde_json::json!({
        "format": SEED_FORMAT,
        "n": s.n(),
        "b": matrix_value(&s.b),
        "x": rationals(&s.x),
    });
    if let Some(y) = &s.y {
        v["y"] = rationals(y);
    }
    v.to_string()
}

pub fn parse_seed(text: &str) -> Result<Seed<Rational>> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    check_format(&v, SEED_FORMAT)?;
    let n = get_n(&v)?;
    let b = matrix_from_value(n, v.get("b").ok_or_else(|| Error::Parse("missing field b".into()))?)?;
    let x = parse_rationals(v.get("x").ok_or_else(|| Error::Parse("missing field x".into()))?, "x")?;
    let y = match v.get("y") {
        None | Some(Value::Null) => None,
        Some(y) => Some(parse_rationals(y, "y")?),
    };
    Seed::new(b, x, y)
}

/// A quiver-v1 or seed-v1 file, whichever `text` holds; a bare quiver
/// gets the all-ones cluster and no y-values.
pub fn parse_quiver_or_seed(text: &str) -> Result<Seed<Rational>> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    if v.get("format").and_then(Value::as_str) == Some(QUIVER_FORMAT) {
        let b = parse_quiver(text)?;
        let n = b.n();
        return Seed::new(b, vec![Rational::from_integer(1.into()); n], None);
    }
    parse_seed(text)
}

#[derive(Serialize, Deserialize)]
struct FrameRepr {
    u: usize,
    vertex: usize,
    b: Value,
    x: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<Vec<String>>,
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn trace_to_json(t: &OrbitTrace<Rational>) -> String {
    let frames: Vec<FrameRepr> = t
        .frames
        .iter()
        .map(|f| FrameRepr {
            u: f.u,
            vertex: f.vertex,
            b: matrix_value(&f.b),
            x: strs(&f.x),
            y: f.y.as_deref().map(strs),
        })
        .collect();
    let mut v = serde_json::json!({
        "format": TRACE_FORMAT,
        "spec": t.spec,
        "frames": frames,
        "z": strs(&t.z),
        "y": strs(&t.y),
    });
    if !t.a.is_empty() {
        v["A"] = Value::from(strs(&t.a));
        v["B"] = Value::from(strs(&t.b));
    }
    v.to_string()
}

pub fn parse_trace(text: &str) -> Result<OrbitTrace<Rational>> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    check_format(&v, TRACE_FORMAT)?;
    let spec: Period2Spec = serde_json::from_value(v.get("spec").cloned().unwrap_or(Value::Null)).map_err(parse_err)?;
    let spec = Period2Spec::general(spec.n(), spec.shape(), spec.k())?;
    let frames: Vec<FrameRepr> =
        serde_json::from_value(v.get("frames").cloned().unwrap_or(Value::Null)).map_err(parse_err)?;
    let mut out = OrbitTrace { spec, frames: Vec::new(), z: Vec::new(), y: Vec::new(), a: Vec::new(), b: Vec::new() };
    for f in frames {
        let x = f.x.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        let y = f.y.map(|ys| ys.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()).transpose()?;
        out.frames.push(crate::orbit::Frame { u: f.u, vertex: f.vertex, b: matrix_from_value(spec.n(), &f.b)?, x, y });
    }
    let seq = |name: &str| -> Result<Vec<Rational>> {
        match v.get(name) {
            Some(s) => parse_rationals(s, name),
            None => Ok(Vec::new()),
        }
    };
    out.z = seq("z")?;
    out.y = seq("y")?;
    out.a = seq("A")?;
    out.b = seq("B")?;
    Ok(out)
}

/// Long-format CSV: one row per (u, slot) with slots x1..xn, y1..yn.
pub fn trace_to_csv(t: &OrbitTrace<Rational>) -> String {
    let mut out = String::from("u,slot,value\n");
    for f in &t.frames {
        for (i, v) in f.x.iter().enumerate() {
            let _ = writeln!(out, "{},x{},{}", f.u, i + 1, format_rational(v));
        }
        if let Some(y) = &f.y {
            for (i, v) in y.iter().enumerate() {
                let _ = writeln!(out, "{},y{},{}", f.u, i + 1, format_rational(v));
            }
        }
    }
    out
}

/// Directed graph with one labelled edge i -> j per b_ij > 0.
pub fn to_dot(b: &ExchangeMatrix) -> String {
    let mut out = String::from("digraph quiver {\n");
    for i in 1..=b.n() {
        let _ = writeln!(out, "  {i};");
    }
    for (i, j, w) in b.arrows() {
        let _ = writeln!(out, "  {i} -> {j} [label=\"{w}\"];");
    }
    out.push_str("}\n");
    out
}

/// Sequence windows and traces for the standalone systems: the two
/// sequences under their kind-specific names (z, y or A, B). Z multiplier
/// files use the same layout with kind "tz".
pub fn sequences_to_json(t: &SeqTrace<Rational>) -> String {
    let names = [crate::systems::Seq::Z.name(t.kind), crate::systems::Seq::Y.name(t.kind)];
    let mut v = serde_json::json!({ "format": SEQUENCES_FORMAT, "kind": t.kind });
    v[names[0]] = rationals(&t.seqs[0]);
    v[names[1]] = rationals(&t.seqs[1]);
    v.to_string()
}

pub fn parse_sequences(text: &str) -> Result<SeqTrace<Rational>> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    check_format(&v, SEQUENCES_FORMAT)?;
    let kind: Kind = serde_json::from_value(v.get("kind").cloned().unwrap_or(Value::Null)).map_err(parse_err)?;
    let names = [crate::systems::Seq::Z.name(kind), crate::systems::Seq::Y.name(kind)];
    let mut seqs = [Vec::new(), Vec::new()];
    for (i, name) in names.iter().enumerate() {
        let s = v.get(*name).ok_or_else(|| Error::Parse(format!("missing field {name}")))?;
        seqs[i] = parse_rationals(s, name)?;
    }
    Ok(SeqTrace { kind, seqs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn markov() -> ExchangeMatrix {
        ExchangeMatrix::from_i64_rows(&[vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]).unwrap()
    }

    #[test]
    fn quiver_text() {
        assert_eq!(quiver_to_json(&markov()), r#"{"b":[[0,2,-2],[-2,0,2],[2,-2,0]],"format":"quiverperiod/quiver-v1","n":3}"#);
        assert_eq!(parse_quiver(&quiver_to_json(&markov())).unwrap(), markov());
    }

    #[test]
    fn big_entries_survive() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let b = ExchangeMatrix::from_rows(vec![vec![0.into(), big.clone()], vec![-big, 0.into()]]).unwrap();
        assert_eq!(parse_quiver(&quiver_to_json(&b)).unwrap(), b);
    }

    #[test]
    fn parse_errors() {
        let e = parse_quiver("{\"format\": \"quiverperiod/quiver-v1\", \"n\": 2,\n \"b\": [[0, 1], [1 0]]}").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        assert!(parse_quiver(r#"{"format":"quiverperiod/quiver-v1","n":2,"b":[[0,1],[1,0]]}"#).is_err());
        assert!(parse_quiver(r#"{"format":"quiverperiod/quiver-v9","n":1,"b":[[0]]}"#).is_err());
        assert!(parse_quiver(r#"{"format":"quiverperiod/quiver-v1","n":2,"b":[[0,1]]}"#).is_err());
    }

    #[test]
    fn dot_has_one_edge_per_pair() {
        let d = to_dot(&markov());
        assert_eq!(d.matches("->").count(), 3);
        assert!(d.contains("1 -> 2 [label=\"2\"];"));
        assert!(d.contains("3 -> 1 [label=\"2\"];"));
    }

    #[test]
    fn seed_round_trip() {
        let s = Seed::new(
            markov(),
            vec![Rational::new(1.into(), 2.into()), Rational::from_integer(3.into()), Rational::from_integer(1.into())],
            Some(vec![Rational::from_integer(2.into()); 3]),
        )
        .unwrap();
        let text = seed_to_json(&s);
        assert!(text.contains("\"1/2\""));
        assert_eq!(parse_seed(&text).unwrap(), s);
    }
}
