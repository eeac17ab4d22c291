//! Two-equation T-, Y- and T_Z-systems of a period-2 quiver and their
//! closed-form extraction from B(0) and B(1) = μ_1(B).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::period::{is_period2, Period2Spec, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    T,
    Y,
    Tz,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::T => "t",
            Kind::Y => "y",
            Kind::Tz => "tz",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t" => Ok(Kind::T),
            "y" => Ok(Kind::Y),
            "tz" | "t_z" => Ok(Kind::Tz),
            _ => Err(Error::Parse(format!("unknown system kind {s:?} (expected t, y or tz)"))),
        }
    }
}

/// The two interleaved sequences: values at vertex 1 (even times) and at
/// vertex k (odd times). Printed z, y for T-systems and A, B for Y-systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Seq {
    Z,
    Y,
}

impl Seq {
    pub fn name(self, kind: Kind) -> &'static str {
        match (self, kind) {
            (Seq::Z, Kind::Y) => "A",
            (Seq::Y, Kind::Y) => "B",
            (Seq::Z, _) => "z",
            (Seq::Y, _) => "y",
        }
    }

    pub fn index(self) -> usize {
        match self {
            Seq::Z => 0,
            Seq::Y => 1,
        }
    }
}

/// A sequence term s(q + offset).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub seq: Seq,
    pub offset: i64,
}

impl Slot {
    pub fn z(offset: i64) -> Self {
        Slot { seq: Seq::Z, offset }
    }

    pub fn y(offset: i64) -> Self {
        Slot { seq: Seq::Y, offset }
    }

    pub fn render(&self, kind: Kind) -> String {
        format!("{}({})", self.seq.name(kind), shift_text(self.offset))
    }
}

pub(crate) fn shift_text(o: i64) -> String {
    match o {
        0 => "q".into(),
        o if o > 0 => format!("q+{o}"),
        o => format!("q-{}", -o),
    }
}

/// lhs[0]·lhs[1] = right-hand side built from the exponent maps.
///
/// T: Π s^plus + Π s^minus. Y: Π (1+s)^plus / Π (1+1/s)^minus.
/// T_Z: Z(q)·(Π s^plus + Π s^minus).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "EquationRepr", try_from = "EquationRepr")]
pub struct Equation {
    pub lhs: [Slot; 2],
    pub plus: BTreeMap<Slot, u64>,
    pub minus: BTreeMap<Slot, u64>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    seq: Seq,
    offset: i64,
    exp: u64,
}

#[derive(Serialize, Deserialize)]
struct EquationRepr {
    lhs: [Slot; 2],
    plus: Vec<TermRepr>,
    minus: Vec<TermRepr>,
}

impl From<Equation> for EquationRepr {
    fn from(e: Equation) -> Self {
        let conv = |m: &BTreeMap<Slot, u64>| {
            m.iter().map(|(s, &exp)| TermRepr { seq: s.seq, offset: s.offset, exp }).collect()
        };
        EquationRepr { lhs: e.lhs, plus: conv(&e.plus), minus: conv(&e.minus) }
    }
}

impl TryFrom<EquationRepr> for Equation {
    type Error = String;
    fn try_from(r: EquationRepr) -> std::result::Result<Self, String> {
        let conv = |v: Vec<TermRepr>| -> std::result::Result<BTreeMap<Slot, u64>, String> {
            let mut m = BTreeMap::new();
            for t in v {
                let s = Slot { seq: t.seq, offset: t.offset };
                if t.exp > 0 && m.insert(s, t.exp).is_some() {
                    return Err(format!("repeated term {s:?}"));
                }
            }
            Ok(m)
        };
        Ok(Equation { lhs: r.lhs, plus: conv(r.plus)?, minus: conv(r.minus)? })
    }
}

impl Equation {
    /// The term solved for when iterating: the later left-hand slot.
    pub fn unknown(&self) -> Slot {
        self.lhs[1]
    }

    pub fn slots(&self) -> impl Iterator<Item = &Slot> {
        self.lhs.iter().chain(self.plus.keys()).chain(self.minus.keys())
    }

    fn render_monomial(m: &BTreeMap<Slot, u64>, kind: Kind) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter()
            .map(|(s, &e)| if e == 1 { s.render(kind) } else { format!("{}^{e}", s.render(kind)) })
            .collect::<Vec<_>>()
            .join("*")
    }

    fn render_factors(m: &BTreeMap<Slot, u64>, kind: Kind, inverse: bool) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter()
            .map(|(s, &e)| {
                let base = if inverse {
                    format!("(1+1/{})", s.render(kind))
                } else {
                    format!("(1+{})", s.render(kind))
                };
                if e == 1 { base } else { format!("{base}^{e}") }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn render(&self, kind: Kind, index: usize) -> String {
        let lhs = format!("{}*{}", self.lhs[0].render(kind), self.lhs[1].render(kind));
        let rhs = match kind {
            Kind::T => format!(
                "{} + {}",
                Self::render_monomial(&self.plus, kind),
                Self::render_monomial(&self.minus, kind)
            ),
            Kind::Tz => format!(
                "Z{}(q)*({} + {})",
                Seq::from_index(index).name(kind),
                Self::render_monomial(&self.plus, kind),
                Self::render_monomial(&self.minus, kind)
            ),
            Kind::Y => {
                let num = Self::render_factors(&self.plus, kind, false);
                if self.minus.is_empty() {
                    num
                } else {
                    format!("{num} / ({})", Self::render_factors(&self.minus, kind, true))
                }
            }
        };
        format!("{lhs} = {rhs}")
    }
}

impl Seq {
    pub fn from_index(i: usize) -> Seq {
        if i == 0 { Seq::Z } else { Seq::Y }
    }
}

pub const SYSTEM_FORMAT: &str = "quiverperiod/system-v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub kind: Kind,
    pub spec: Period2Spec,
    /// Equation 0 comes from the mutation at vertex 1, equation 1 from the
    /// mutation at vertex k.
    pub equations: [Equation; 2],
}

impl SystemSpec {
    /// The same exponents read as another kind of system (T ↔ T_Z).
    pub fn with_kind(&self, kind: Kind) -> Self {
        SystemSpec { kind, ..self.clone() }
    }

    /// Number of initial values needed for each sequence: the offset of the
    /// unknown in the equation producing that sequence.
    pub fn required_window(&self) -> [usize; 2] {
        let mut w = [0usize; 2];
        for e in &self.equations {
            let u = e.unknown();
            w[u.seq.index()] = u.offset.max(0) as usize;
        }
        w
    }

    pub fn text(&self) -> String {
        self.equations
            .iter()
            .enumerate()
            .map(|(i, e)| e.render(self.kind, i))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::json!({
            "format": SYSTEM_FORMAT,
            "kind": self.kind,
            "spec": self.spec,
            "equations": self.equations,
            "text": self.text().lines().collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&v).expect("system serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct File {
            format: String,
            kind: Kind,
            spec: Period2Spec,
            equations: [Equation; 2],
        }
        let f: File = serde_json::from_str(s).map_err(|e| Error::Parse(format!("system file: {e}")))?;
        if f.format != SYSTEM_FORMAT {
            return Err(Error::Parse(format!("expected format {SYSTEM_FORMAT:?}, got {:?}", f.format)));
        }
        Ok(SystemSpec { kind: f.kind, spec: f.spec, equations: f.equations })
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

fn bracket(b: &BigInt) -> u64 {
    if b.is_positive() {
        b.to_u64().expect("exchange matrix entry fits in u64")
    } else {
        0
    }
}

/// Adds [b] to `plus` and [−b] to `minus` at `slot`.
fn put(eq: &mut Equation, slot: Slot, b: &BigInt) {
    let (p, m) = (bracket(b), bracket(&-b));
    if p > 0 {
        *eq.plus.entry(slot).or_insert(0) += p;
    }
    if m > 0 {
        *eq.minus.entry(slot).or_insert(0) += m;
    }
}

fn empty(lhs: [Slot; 2]) -> Equation {
    Equation { lhs, plus: BTreeMap::new(), minus: BTreeMap::new() }
}

/// Reads the system off B(0) and B(1) = μ_1(B). The vertex paired with
/// z(q+p) is ν^p(1) and with y(q+p) is ν^p(k) for the T-system; the
/// Y-system pairs shifts with σ^p instead.
pub fn extract_system(b: &ExchangeMatrix, spec: &Period2Spec, kind: Kind) -> Result<SystemSpec> {
    if b.n() != spec.n() {
        return Err(Error::DegreeMismatch { expected: spec.n(), found: b.n() });
    }
    if !is_period2(b, spec)? {
        return Err(Error::NotPeriod2(spec.to_string()));
    }
    let (n, k) = (spec.n() as i64, spec.k());
    let ki = k as i64;
    let b0 = b;
    let b1 = b.mutate(1)?;
    let nu = spec.nu();
    let sigma = spec.sigma();
    let nu_p = |p: i64, v: usize| nu.pow(p).apply(v);
    let sg_p = |p: i64, v: usize| sigma.pow(p).apply(v);
    let one = spec.shape() == Shape::OneCycle;
    let equations = match kind {
        Kind::T | Kind::Tz => {
            let (mut e0, mut e1) = if one {
                (empty([Slot::z(0), Slot::y(ki - 1)]), empty([Slot::y(0), Slot::z(n - ki + 1)]))
            } else {
                (empty([Slot::z(0), Slot::z(ki - 1)]), empty([Slot::y(0), Slot::y(n - ki + 1)]))
            };
            let (z0, y0, z1, y1) = if one {
                (1..=n - ki, 0..=ki - 2, 1..=n - ki, 1..=ki - 1)
            } else {
                (1..=ki - 2, 0..=n - ki, 1..=ki - 1, 1..=n - ki)
            };
            for p in z0 {
                put(&mut e0, Slot::z(p), b0.get(nu_p(p, 1), 1));
            }
            for p in y0 {
                put(&mut e0, Slot::y(p), b0.get(nu_p(p, k), 1));
            }
            for p in z1 {
                put(&mut e1, Slot::z(p), b1.get(nu_p(p, 1), k));
            }
            for p in y1 {
                put(&mut e1, Slot::y(p), b1.get(nu_p(p, k), k));
            }
            [e0, e1]
        }
        Kind::Y => {
            let (mut e0, mut e1) = if one {
                (empty([Slot::z(0), Slot::y(ki - 1)]), empty([Slot::y(0), Slot::z(n - ki + 1)]))
            } else {
                (empty([Slot::z(0), Slot::z(ki - 1)]), empty([Slot::y(0), Slot::y(n - ki + 1)]))
            };
            let (z0, y0, z1, y1) = if one {
                (1..=ki - 1, 0..=ki - 2, 1..=n - ki, 1..=n - ki)
            } else {
                (1..=ki - 2, 0..=ki - 2, 1..=n - ki + 1, 1..=n - ki)
            };
            // G± use the negated entries of the vertex row
            for p in z0 {
                put(&mut e0, Slot::z(p), &-b0.get(1, sg_p(p, 1)));
            }
            for p in y0 {
                put(&mut e0, Slot::y(p), &-b1.get(k, sg_p(p, 1)));
            }
            for p in z1 {
                put(&mut e1, Slot::z(p), &-b0.get(1, sg_p(p, k)));
            }
            for p in y1 {
                put(&mut e1, Slot::y(p), &-b1.get(k, sg_p(p, k)));
            }
            [e0, e1]
        }
    };
    Ok(SystemSpec { kind, spec: *spec, equations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyDef;

    fn first(n: i64) -> ExchangeMatrix {
        FamilyDef::by_key("n4-k2").unwrap().generate(&[n]).unwrap()
    }

    #[test]
    fn first_quiver_t_system() {
        let spec = Period2Spec::new(4, Shape::OneCycle, 2).unwrap();
        let s = extract_system(&first(3), &spec, Kind::T).unwrap();
        assert_eq!(s.text(), "z(q)*y(q+1) = z(q+1)^3*y(q)^3 + 1\ny(q)*z(q+3) = z(q+2)^3*y(q+1)^3 + 1");
        assert_eq!(s.required_window(), [3, 1]);
    }

    #[test]
    fn first_quiver_y_system() {
        let spec = Period2Spec::new(4, Shape::OneCycle, 2).unwrap();
        let s = extract_system(&first(1), &spec, Kind::Y).unwrap();
        assert_eq!(s.text(), "A(q)*B(q+1) = (1+A(q+1))*(1+B(q))\nB(q)*A(q+3) = (1+A(q+2))*(1+B(q+1))");
    }

    #[test]
    fn json_round_trip() {
        let spec = Period2Spec::new(4, Shape::OneCycle, 2).unwrap();
        let s = extract_system(&first(2), &spec, Kind::Tz).unwrap();
        assert_eq!(SystemSpec::from_json(&s.to_json()).unwrap(), s);
        assert!(s.text().starts_with("z(q)*y(q+1) = Zz(q)*("));
    }

    #[test]
    fn kind_parses() {
        assert_eq!("TZ".parse::<Kind>().unwrap(), Kind::Tz);
        assert!("x".parse::<Kind>().is_err());
    }
}
