//! Generators for every classified family of period-2 quivers with 3 to 6 vertices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::period::{is_period2, Period2Spec, Shape};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    N3,
    N4,
    N5OneCycle,
    N5Other,
    N6,
}

impl Theorem {
    pub const ALL: [Theorem; 5] =
        [Theorem::N3, Theorem::N4, Theorem::N5OneCycle, Theorem::N5Other, Theorem::N6];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::N3 => "N3",
            Theorem::N4 => "N4",
            Theorem::N5OneCycle => "N5_1cycle",
            Theorem::N5Other => "N5_other",
            Theorem::N6 => "N6",
        }
    }

    /// The period-2 equations whose solutions the classification covers.
    pub fn specs(self) -> Vec<Period2Spec> {
        let s = |n, shape, k| Period2Spec::general(n, shape, k).expect("valid spec");
        match self {
            Theorem::N3 => vec![s(3, Shape::OneCycle, 2), s(3, Shape::TwoCycle, 2)],
            Theorem::N4 => vec![
                s(4, Shape::OneCycle, 2),
                s(4, Shape::TwoCycle, 3),
                s(4, Shape::TwoCycle, 2),
            ],
            Theorem::N5OneCycle => vec![s(5, Shape::OneCycle, 2), s(5, Shape::OneCycle, 3)],
            Theorem::N5Other => vec![s(5, Shape::TwoCycle, 3), s(5, Shape::TwoCycle, 2)],
            Theorem::N6 => vec![s(6, Shape::OneCycle, 5)],
        }
    }

    pub fn families(self) -> Vec<&'static FamilyDef> {
        FAMILIES.iter().filter(|f| f.theorem == self).collect()
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace(['-', '_'], "");
        Ok(match key.as_str() {
            "n3" | "thm3" => Theorem::N3,
            "n4" | "thm4" => Theorem::N4,
            "n51cycle" | "n5one" | "n5onecycle" | "thm5" => Theorem::N5OneCycle,
            "n5other" | "n5two" | "thm6" => Theorem::N5Other,
            "n6" | "thm7" => Theorem::N6,
            _ => return Err(Error::Parse(format!("unknown theorem {s:?}"))),
        })
    }
}

type Arrows = Vec<(usize, usize, BigInt)>;

/// Edges whose weights are known only as an unordered set of formulas.
pub struct Starred {
    pub edges: Vec<(usize, usize)>,
    pub formulas: Vec<BigInt>,
}

pub struct FamilyDef {
    pub key: &'static str,
    pub theorem: Theorem,
    pub index: usize,
    pub n: usize,
    pub shape: Shape,
    pub k: usize,
    pub params: &'static [&'static str],
    /// smallest admissible value per parameter beyond label nonnegativity
    pub min: &'static [i64],
    arrows: fn(&[BigInt]) -> Arrows,
    starred: Option<fn(&[BigInt]) -> Starred>,
}

impl FamilyDef {
    pub fn spec(&self) -> Period2Spec {
        Period2Spec::general(self.n, self.shape, self.k).expect("valid spec")
    }

    pub fn by_key(key: &str) -> Option<&'static FamilyDef> {
        FAMILIES.iter().find(|f| f.key == key)
    }

    /// Instantiates the display. Fails when a parameter is below its proviso or a
    /// displayed arrow label is negative.
    pub fn generate(&self, params: &[i64]) -> Result<ExchangeMatrix> {
        if params.len() != self.params.len() {
            return Err(Error::InvalidFamily(format!(
                "{} takes {} parameter(s) ({}), got {}",
                self.key,
                self.params.len(),
                self.params.join(", "),
                params.len()
            )));
        }
        for ((name, &v), &lo) in self.params.iter().zip(params).zip(self.min) {
            if v < lo {
                return Err(Error::InvalidFamily(format!("{}: requires {name} >= {lo}", self.key)));
            }
        }
        let p: Vec<BigInt> = params.iter().map(|&v| BigInt::from(v)).collect();
        let arrows = (self.arrows)(&p);
        for (i, j, w) in &arrows {
            if w.is_negative() {
                return Err(Error::InvalidFamily(format!(
                    "{}: label of arrow {i}->{j} is {w} < 0 for {}",
                    self.key,
                    self.describe(params)
                )));
            }
        }
        let base = ExchangeMatrix::from_arrows(self.n, &arrows)?;
        let Some(starred) = self.starred else { return Ok(base) };
        let st = starred(&p);
        if st.formulas.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidFamily(format!(
                "{}: negative starred label for {}",
                self.key,
                self.describe(params)
            )));
        }
        // the display leaves the assignment of formulas to starred edges open;
        // keep exactly the assignments that solve the period-2 equation
        let spec = self.spec();
        let mut hits: Vec<ExchangeMatrix> = Vec::new();
        for choice in
            std::iter::repeat(0..st.formulas.len()).take(st.edges.len()).multi_cartesian_product()
        {
            let mut extra = arrows.clone();
            for (&(i, j), &f) in st.edges.iter().zip(&choice) {
                extra.push((i, j, st.formulas[f].clone()));
            }
            let b = ExchangeMatrix::from_arrows(self.n, &extra)?;
            if is_period2(&b, &spec)? && !hits.contains(&b) {
                hits.push(b);
            }
        }
        match hits.len() {
            1 => Ok(hits.pop().expect("one hit")),
            0 => Err(Error::InvalidFamily(format!(
                "{}: no starred assignment is period 2 for {}",
                self.key,
                self.describe(params)
            ))),
            _ => Err(Error::InvalidFamily(format!(
                "{}: starred assignment ambiguous for {}",
                self.key,
                self.describe(params)
            ))),
        }
    }

    pub fn describe(&self, params: &[i64]) -> String {
        if self.params.is_empty() {
            return self.key.to_string();
        }
        let ps: Vec<String> =
            self.params.iter().zip(params).map(|(n, v)| format!("{n}={v}")).collect();
        format!("{}[{}]", self.key, ps.join(","))
    }

    /// Every valid instance with all parameters in `0..=max`.
    pub fn instances(&'static self, max: i64) -> Vec<FamilyInstance> {
        if self.params.is_empty() {
            return self
                .generate(&[])
                .map(|b| vec![FamilyInstance { def: self, params: Vec::new(), matrix: b }])
                .unwrap_or_default();
        }
        std::iter::repeat(0..=max)
            .take(self.params.len())
            .multi_cartesian_product()
            .filter_map(|params| {
                let matrix = self.generate(&params).ok()?;
                Some(FamilyInstance { def: self, params, matrix })
            })
            .collect()
    }
}

#[derive(Clone)]
pub struct FamilyInstance {
    pub def: &'static FamilyDef,
    pub params: Vec<i64>,
    pub matrix: ExchangeMatrix,
}

impl FamilyInstance {
    pub fn label(&self) -> String {
        self.def.describe(&self.params)
    }

    pub fn spec(&self) -> Period2Spec {
        self.def.spec()
    }

    /// Degenerate members (typically parameter 0) may fall apart.
    pub fn connected(&self) -> bool {
        self.matrix.is_connected()
    }
}

impl fmt::Debug for FamilyInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.label(), self.matrix)
    }
}

/// Names one displayed quiver of a theorem together with its parameters.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FamilyId {
    pub theorem: Theorem,
    pub index: usize,
    pub params: BTreeMap<String, i64>,
}

impl FamilyId {
    pub fn def(&self) -> Result<&'static FamilyDef> {
        FAMILIES
            .iter()
            .find(|f| f.theorem == self.theorem && f.index == self.index)
            .ok_or_else(|| {
                Error::InvalidFamily(format!("{} has no display {}", self.theorem, self.index))
            })
    }
}

pub fn generate_family(id: &FamilyId) -> Result<ExchangeMatrix> {
    let def = id.def()?;
    let mut values = Vec::new();
    for name in def.params {
        let v = id.params.get(*name).ok_or_else(|| {
            Error::InvalidFamily(format!("{}: missing parameter {name}", def.key))
        })?;
        values.push(*v);
    }
    if let Some(extra) = id.params.keys().find(|k| !def.params.contains(&k.as_str())) {
        return Err(Error::InvalidFamily(format!("{}: unknown parameter {extra}", def.key)));
    }
    def.generate(&values)
}

/// Pairs (a, b, shift) such that the μ1 partner of `a` with parameter `x`
/// is a relabeling of `b` with parameter `x + shift`.
pub const PARTNER_CLAIMS: &[(&str, &str, i64)] =
    &[("n5-k3a-right", "n5-k3c-left", 1), ("n5-k3c-right", "n5-k3d-right", 0)];

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

trait Weight {
    fn weight(self) -> BigInt;
}

impl Weight for i32 {
    fn weight(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Weight for BigInt {
    fn weight(self) -> BigInt {
        self
    }
}

impl Weight for &BigInt {
    fn weight(self) -> BigInt {
        self.clone()
    }
}

macro_rules! arrows {
    ($(($i:expr, $j:expr, $w:expr)),* $(,)?) => {
        vec![$(($i, $j, Weight::weight($w))),*]
    };
}

pub static FAMILIES: &[FamilyDef] = &[
    FamilyDef {
        key: "n3-acyclic",
        theorem: Theorem::N3,
        index: 0,
        n: 3,
        shape: Shape::OneCycle,
        k: 2,
        params: &["n"],
        min: &[0],
        arrows: |p| arrows![(1, 2, &p[0]), (1, 3, &p[0]), (2, 3, &p[0])],
        starred: None,
    },
    FamilyDef {
        key: "n3-markov",
        theorem: Theorem::N3,
        index: 1,
        n: 3,
        shape: Shape::OneCycle,
        k: 2,
        params: &[],
        min: &[],
        arrows: |_| arrows![(1, 2, 2), (2, 3, 2), (3, 1, 2)],
        starred: None,
    },
    FamilyDef {
        key: "n4-k2",
        theorem: Theorem::N4,
        index: 0,
        n: 4,
        shape: Shape::OneCycle,
        k: 2,
        params: &["n"],
        min: &[0],
        arrows: |p| arrows![(2, 1, &p[0]), (4, 1, &p[0]), (3, 2, &p[0]), (3, 4, &p[0])],
        starred: None,
    },
    FamilyDef {
        key: "n4-two-k3-left",
        theorem: Theorem::N4,
        index: 1,
        n: 4,
        shape: Shape::TwoCycle,
        k: 3,
        params: &["l", "m", "n"],
        min: &[0, 0, 0],
        arrows: |p| {
            let (l, m, n) = (&p[0], &p[1], &p[2]);
            arrows![(1, 4, m), (1, 3, n), (2, 4, n), (2, 1, l), (4, 3, l), (3, 2, m + n * l)]
        },
        starred: None,
    },
    FamilyDef {
        key: "n4-two-k3-right",
        theorem: Theorem::N4,
        index: 2,
        n: 4,
        shape: Shape::TwoCycle,
        k: 3,
        params: &["l", "m", "n", "p"],
        min: &[0, 0, 0, 0],
        arrows: |p| {
            let (l, m, n, q) = (&p[0], &p[1], &p[2], &p[3]);
            arrows![(1, 2, l), (1, 4, m), (1, 3, n), (2, 4, n), (3, 2, m), (3, 4, q)]
        },
        starred: None,
    },
    FamilyDef {
        key: "n4-two-k2-left",
        theorem: Theorem::N4,
        index: 3,
        n: 4,
        shape: Shape::TwoCycle,
        k: 2,
        params: &["m", "n"],
        min: &[0, 0],
        arrows: |p| {
            let (m, n) = (&p[0], &p[1]);
            arrows![(1, 3, n), (1, 2, n), (2, 4, n * n + m), (2, 3, m), (4, 3, m), (4, 1, n)]
        },
        starred: None,
    },
    FamilyDef {
        key: "n4-two-k2-right",
        theorem: Theorem::N4,
        index: 4,
        n: 4,
        shape: Shape::TwoCycle,
        k: 2,
        params: &["m", "n"],
        min: &[0, 0],
        arrows: |p| {
            let (m, n) = (&p[0], &p[1]);
            let m1 = m + 1;
            arrows![
                (1, 3, n),
                (1, 2, n),
                (2, 4, n * n * &m1 - m),
                (4, 1, n * &m1),
                (3, 4, m),
                (3, 2, m),
            ]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-k2a-left",
        theorem: Theorem::N5OneCycle,
        index: 0,
        n: 5,
        shape: Shape::OneCycle,
        k: 2,
        params: &[],
        min: &[],
        arrows: |_| arrows![(1, 3, 1), (1, 4, 1), (2, 5, 1), (2, 1, 2), (5, 3, 1), (3, 2, 2), (4, 2, 1)],
        starred: None,
    },
    FamilyDef {
        key: "n5-k2a-right",
        theorem: Theorem::N5OneCycle,
        index: 1,
        n: 5,
        shape: Shape::OneCycle,
        k: 2,
        params: &["l"],
        min: &[0],
        arrows: |p| {
            let l = &p[0];
            arrows![
                (1, 3, l + 1),
                (1, 5, l),
                (2, 5, 1),
                (2, 1, 1),
                (5, 4, b(3) * l + 1),
                (3, 5, 1),
                (3, 2, 1),
                (4, 1, 1),
                (4, 3, l),
                (4, 2, 1),
            ]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-k2b-left",
        theorem: Theorem::N5OneCycle,
        index: 2,
        n: 5,
        shape: Shape::OneCycle,
        k: 2,
        params: &["n"],
        min: &[0],
        arrows: |p| {
            let n = &p[0];
            arrows![(1, 3, 1), (2, 5, 1), (2, 1, n), (5, 4, 1), (3, 5, 1), (3, 2, n), (4, 1, 1), (4, 2, 1)]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-k2b-right",
        theorem: Theorem::N5OneCycle,
        index: 3,
        n: 5,
        shape: Shape::OneCycle,
        k: 2,
        params: &["m"],
        min: &[0],
        arrows: |p| {
            let m = &p[0];
            arrows![(2, 1, m), (5, 1, m), (3, 2, m), (3, 4, m), (4, 5, m)]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-k2c-left",
        theorem: Theorem::N5OneCycle,
        index: 4,
        n: 5,
        shape: Shape::OneCycle,
        k: 2,
        params: &["p"],
        min: &[0],
        arrows: |p| {
            let q = &p[0];
            arrows![(1, 4, q), (2, 1, 1), (5, 3, q), (5, 1, 1), (3, 2, 1), (3, 4, 1), (4, 5, q + 1)]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-k2c-right",
        theorem: Theorem::N5OneCycle,
        index: 5,
        n: 5,
        shape: Shape::OneCycle,
        k: 2,
        params: &["m"],
        min: &[0],
        arrows: |p| {
            let m = &p[0];
            arrows![(1, 4, m), (2, 4, m), (5, 3, m), (5, 2, m), (3, 1, m), (4, 5, m * m)]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-k3a-left",
        theorem: Theorem::N5OneCycle,
        index: 6,
        n: 5,
        shape: Shape::OneCycle,
        k: 3,
        params: &["m", "n"],
        min: &[0, 0],
        arrows: |p| {
            let (m, n) = (&p[0], &p[1]);
            arrows![
                (2, 5, n),
                (2, 3, m),
                (2, 1, m),
                (5, 1, m),
                (5, 3, n),
                (3, 1, n),
                (4, 3, m),
                (4, 5, m),
                (4, 2, n),
                (4, 1, n),
            ]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-k3a-right",
        theorem: Theorem::N5OneCycle,
        index: 7,
        n: 5,
        shape: Shape::OneCycle,
        k: 3,
        params: &["n"],
        min: &[0],
        arrows: |p| {
            let n = &p[0];
            let n1 = n + 1;
            arrows![
                (1, 4, 1),
                (2, 3, &n1),
                (2, 1, &n1),
                (5, 1, 1),
                (5, 2, 1),
                (3, 5, 1),
                (3, 1, n),
                (4, 3, &n1),
                (4, 5, 1),
                (4, 2, n),
            ]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-k3b-left",
        theorem: Theorem::N5OneCycle,
        index: 8,
        n: 5,
        shape: Shape::OneCycle,
        k: 3,
        params: &["m", "n"],
        min: &[0, 0],
        arrows: |p| {
            let (m, n) = (&p[0], &p[1]);
            let m1 = m + 1;
            arrows![
                (1, 2, m),
                (1, 5, m),
                (2, 5, n * &m1),
                (2, 3, m * (n - 1)),
                (5, 3, n * &m1),
                (5, 4, m),
                (3, 4, m),
                (3, 1, n),
                (4, 1, n),
                (4, 2, n),
            ]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-k3b-right",
        theorem: Theorem::N5OneCycle,
        index: 9,
        n: 5,
        shape: Shape::OneCycle,
        k: 3,
        params: &["l", "n"],
        min: &[0, 0],
        arrows: |p| {
            let (l, n) = (&p[0], &p[1]);
            arrows![
                (1, 2, 1),
                (1, 5, 1),
                (2, 5, l + n),
                (2, 3, n - 1),
                (5, 3, l + n),
                (5, 4, 1),
                (3, 4, 1),
                (3, 1, n),
                (4, 1, l),
                (4, 2, n),
            ]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-k3c-left",
        theorem: Theorem::N5OneCycle,
        index: 10,
        n: 5,
        shape: Shape::OneCycle,
        k: 3,
        params: &["m"],
        min: &[0],
        arrows: |p| {
            let m = &p[0];
            arrows![
                (1, 2, 1),
                (1, 4, m - 1),
                (1, 5, m),
                (2, 5, 1),
                (5, 3, 1),
                (5, 4, m),
                (3, 1, 1),
                (3, 4, 1),
                (4, 2, 1),
            ]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-k3c-right",
        theorem: Theorem::N5OneCycle,
        index: 11,
        n: 5,
        shape: Shape::OneCycle,
        k: 3,
        params: &["n"],
        min: &[0],
        arrows: |p| {
            let n = &p[0];
            arrows![
                (1, 2, 1),
                (1, 5, 1),
                (2, 5, n),
                (2, 3, n - 1),
                (5, 3, n),
                (5, 4, 1),
                (3, 1, n),
                (3, 4, 1),
                (4, 2, n),
            ]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-k3d-left",
        theorem: Theorem::N5OneCycle,
        index: 12,
        n: 5,
        shape: Shape::OneCycle,
        k: 3,
        params: &["m"],
        min: &[0],
        arrows: |p| {
            let m = &p[0];
            arrows![(1, 2, m), (1, 5, m), (5, 4, m), (3, 2, m), (3, 4, m)]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-k3d-right",
        theorem: Theorem::N5OneCycle,
        index: 13,
        n: 5,
        shape: Shape::OneCycle,
        k: 3,
        params: &["l"],
        min: &[0],
        arrows: |p| {
            let l = &p[0];
            arrows![(1, 2, 1), (1, 5, 1), (2, 5, l), (5, 3, l), (5, 4, 1), (3, 2, 1), (3, 4, 1), (4, 1, l)]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-two-k3-left",
        theorem: Theorem::N5Other,
        index: 0,
        n: 5,
        shape: Shape::TwoCycle,
        k: 3,
        params: &["m", "n", "p"],
        min: &[0, 0, 0],
        arrows: |p| {
            let (m, n, q) = (&p[0], &p[1], &p[2]);
            let m1 = m + 1;
            arrows![
                (1, 2, &m1),
                (2, 3, n * &m1 + q),
                (2, 5, q + n * m),
                (5, 1, n + q),
                (5, 4, m),
                (3, 1, n),
                (3, 5, m),
                (3, 4, m),
                (4, 1, q),
                (4, 2, n),
            ]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-two-k3-right",
        theorem: Theorem::N5Other,
        index: 1,
        n: 5,
        shape: Shape::TwoCycle,
        k: 3,
        params: &["m", "n", "p"],
        min: &[0, 0, 0],
        arrows: |p| {
            let (m, n, q) = (&p[0], &p[1], &p[2]);
            arrows![
                (1, 2, 1),
                (2, 3, n + q),
                (2, 5, q),
                (5, 3, m),
                (5, 1, n + q),
                (3, 1, n),
                (4, 2, n),
                (4, 1, q),
                (4, 5, m),
                (4, 3, m),
            ]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-two-k2a-left",
        theorem: Theorem::N5Other,
        index: 2,
        n: 5,
        shape: Shape::TwoCycle,
        k: 2,
        params: &["m", "n"],
        min: &[0, 2],
        arrows: |p| {
            let (m, n) = (&p[0], &p[1]);
            let n2 = n * n;
            arrows![
                (1, 2, n),
                (1, 3, n),
                (2, 3, m),
                (2, 4, &n2 - 2),
                (2, 5, &n2 + m),
                (5, 1, n),
                (5, 4, &n2 + b(3) * m),
                (3, 5, 2),
                (4, 1, n),
                (4, 3, m),
            ]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-two-k2a-right",
        theorem: Theorem::N5Other,
        index: 3,
        n: 5,
        shape: Shape::TwoCycle,
        k: 2,
        params: &["m"],
        min: &[0],
        arrows: |p| {
            let m = &p[0];
            arrows![
                (1, 2, 1),
                (1, 3, 1),
                (2, 3, m),
                (2, 5, m + 1),
                (5, 1, 1),
                (5, 4, b(3) * m + 1),
                (3, 5, 2),
                (4, 2, 1),
                (4, 1, 1),
                (4, 3, m),
            ]
        },
        starred: None,
    },
    FamilyDef {
        key: "n5-two-k2b-left",
        theorem: Theorem::N5Other,
        index: 4,
        n: 5,
        shape: Shape::TwoCycle,
        k: 2,
        params: &["m", "n"],
        min: &[0, 2],
        arrows: |p| {
            let (m, n) = (&p[0], &p[1]);
            let m1 = m + 1;
            arrows![
                (1, 2, n),
                (1, 3, n),
                (5, 1, n * &m1),
                (3, 5, b(2) * &m1),
                (3, 2, m),
                (3, 4, m),
                (4, 1, n * &m1),
            ]
        },
        starred: Some(|p| {
            let (m, n) = (&p[0], &p[1]);
            let m1 = m + 1;
            Starred {
                edges: vec![(2, 4), (2, 5), (5, 4)],
                formulas: vec![n * n * &m1 - m, (n * n - 2) * &m1],
            }
        }),
    },
    FamilyDef {
        key: "n5-two-k2b-right",
        theorem: Theorem::N5Other,
        index: 5,
        n: 5,
        shape: Shape::TwoCycle,
        k: 2,
        params: &["m"],
        min: &[0],
        arrows: |p| {
            let m = &p[0];
            let m1 = m + 1;
            arrows![
                (1, 2, 1),
                (1, 3, 1),
                (2, 5, 1),
                (5, 1, &m1),
                (5, 4, 1),
                (3, 5, b(2) * &m1),
                (3, 2, m),
                (3, 4, m),
                (4, 2, &m1),
                (4, 1, &m1),
            ]
        },
        starred: None,
    },
    FamilyDef {
        key: "n6-a",
        theorem: Theorem::N6,
        index: 0,
        n: 6,
        shape: Shape::OneCycle,
        k: 5,
        params: &["m"],
        min: &[0],
        arrows: |p| {
            let m = &p[0];
            arrows![(1, 3, 1), (1, 6, m), (6, 2, 1), (5, 1, 1), (4, 6, 1)]
        },
        starred: None,
    },
    FamilyDef {
        key: "n6-b-left",
        theorem: Theorem::N6,
        index: 1,
        n: 6,
        shape: Shape::OneCycle,
        k: 5,
        params: &["n"],
        min: &[0],
        arrows: |p| {
            let n = &p[0];
            let n1 = n - 1;
            arrows![
                (1, 3, 1),
                (1, 6, 1),
                (2, 3, &n1),
                (2, 1, &n1),
                (2, 4, &n1),
                (6, 5, &n1),
                (6, 2, n),
                (3, 4, b(2) * &n1),
                (3, 5, &n1),
                (5, 1, n),
                (4, 6, 1),
                (4, 5, &n1),
            ]
        },
        starred: None,
    },
    FamilyDef {
        key: "n6-b-right",
        theorem: Theorem::N6,
        index: 2,
        n: 6,
        shape: Shape::OneCycle,
        k: 5,
        params: &["m"],
        min: &[0],
        arrows: |p| {
            let m = &p[0];
            arrows![(2, 3, m), (2, 1, m), (6, 1, m), (6, 5, m), (3, 4, m), (4, 5, m)]
        },
        starred: None,
    },
];

/// Every valid instance of every family with parameters in `0..=max`.
pub fn regression_set(max: i64) -> Vec<FamilyInstance> {
    FAMILIES.iter().flat_map(|f| f.instances(max)).collect()
}
