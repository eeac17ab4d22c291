//! Forward mutation points of the period-2 orbit and the exponent rules
//! for T- and Y-systems evaluated from first principles.

use std::collections::BTreeMap;
use std::ops::Range;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::Result;
use crate::matrix::{ExchangeMatrix, Permutation};
use crate::period::{Period2Spec, Shape};

use super::spec::{Equation, Kind, Seq, Slot, SystemSpec};

/// B(u) for every integer u, read off B(0) and B(1) by periodicity:
/// b_{i,j}(2r + l) = b_{σ^r(i), σ^r(j)}(l).
#[derive(Clone, Debug)]
pub struct OrbitMatrices {
    spec: Period2Spec,
    b0: ExchangeMatrix,
    b1: ExchangeMatrix,
    sigma: Permutation,
    nu: Permutation,
}

impl OrbitMatrices {
    pub fn new(b: &ExchangeMatrix, spec: &Period2Spec) -> Result<Self> {
        Ok(OrbitMatrices {
            spec: *spec,
            b0: b.clone(),
            b1: b.mutate(1)?,
            sigma: spec.sigma(),
            nu: spec.nu(),
        })
    }

    pub fn spec(&self) -> &Period2Spec {
        &self.spec
    }

    pub fn b0(&self) -> &ExchangeMatrix {
        &self.b0
    }

    pub fn b1(&self) -> &ExchangeMatrix {
        &self.b1
    }

    pub fn b(&self, i: usize, j: usize, u: i64) -> &BigInt {
        let (r, l) = (u.div_euclid(2), u.rem_euclid(2));
        let s = self.sigma.pow(r);
        let m = if l == 0 { &self.b0 } else { &self.b1 };
        m.get(s.apply(i), s.apply(j))
    }

    /// The vertex mutated at time `u`.
    pub fn vertex(&self, u: i64) -> usize {
        let (r, l) = (u.div_euclid(2), u.rem_euclid(2));
        let v = if l == 0 { 1 } else { self.spec.k() };
        self.nu.pow(r).apply(v)
    }

    pub fn is_point(&self, i: usize, u: i64) -> bool {
        self.vertex(u) == i
    }

    fn gap(&self, i: usize, u: i64, dir: i64) -> u64 {
        let mut t = 1;
        while self.vertex(u + dir * t as i64) != i {
            t += 1;
        }
        t
    }

    pub fn lambda_plus(&self, i: usize, u: i64) -> u64 {
        self.gap(i, u, 1)
    }

    pub fn lambda_minus(&self, i: usize, u: i64) -> u64 {
        self.gap(i, u, -1)
    }
}

/// (H₊, H₋) for the pair of points (j,v), (i,u): ±b_ji(u) when
/// v − λ₋(j,v) < u < v and b_ji(u) has the matching sign.
pub fn h_exponent(m: &OrbitMatrices, j: usize, v: i64, i: usize, u: i64) -> (u64, u64) {
    let lm = m.lambda_minus(j, v) as i64;
    if !(v - lm < u && u < v) {
        return (0, 0);
    }
    split(m.b(j, i, u))
}

/// (G₊, G₋): −b_ji(v) when negative, b_ji(v) when positive, for
/// u < v < u + λ₊(i,u).
pub fn g_exponent(m: &OrbitMatrices, j: usize, v: i64, i: usize, u: i64) -> (u64, u64) {
    let lp = m.lambda_plus(i, u) as i64;
    if !(u < v && v < u + lp) {
        return (0, 0);
    }
    let (p, n) = split(m.b(j, i, v));
    (n, p)
}

fn split(b: &BigInt) -> (u64, u64) {
    let mag = b.abs().to_u64().expect("exchange matrix entry fits in u64");
    if b.is_positive() {
        (mag, 0)
    } else if b.is_negative() {
        (0, mag)
    } else {
        (0, 0)
    }
}

/// Point (i,u) of the table with its gaps to the neighbouring points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationPoint {
    pub vertex: usize,
    pub u: i64,
    pub lambda_plus: u64,
    pub lambda_minus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationPointTable {
    pub spec: Period2Spec,
    pub window: Range<i64>,
    pub points: Vec<MutationPoint>,
}

/// Every forward mutation point with time in `window`. λ± come from the
/// closed description: one cycle gives 2k−1 and 2N−2k+1; two cycles give
/// 2(k−1) on the orbit of 1 and 2(N−k+1) on the orbit of k.
pub fn forward_points(spec: &Period2Spec, window: Range<i64>) -> MutationPointTable {
    let (n, k) = (spec.n() as u64, spec.k() as u64);
    let nu = spec.nu();
    let mut points = Vec::new();
    for u in window.clone() {
        let (r, l) = (u.div_euclid(2), u.rem_euclid(2));
        let vertex = nu.pow(r).apply(if l == 0 { 1 } else { spec.k() });
        let (lp, lm) = match (spec.shape(), l) {
            (Shape::OneCycle, 0) => (2 * k - 1, 2 * n - 2 * k + 1),
            (Shape::OneCycle, _) => (2 * n - 2 * k + 1, 2 * k - 1),
            (Shape::TwoCycle, 0) => (2 * (k - 1), 2 * (k - 1)),
            (Shape::TwoCycle, _) => (2 * (n - k + 1), 2 * (n - k + 1)),
        };
        points.push(MutationPoint { vertex, u, lambda_plus: lp, lambda_minus: lm });
    }
    MutationPointTable { spec: *spec, window, points }
}

fn label(v: i64) -> Slot {
    Slot { seq: if v.rem_euclid(2) == 0 { Seq::Z } else { Seq::Y }, offset: v.div_euclid(2) }
}

fn bump(m: &mut BTreeMap<Slot, u64>, s: Slot, e: u64) {
    if e > 0 {
        *m.entry(s).or_insert(0) += e;
    }
}

/// The T- or Y-system tabulated point by point from the exponent rules,
/// for the equations at (1,0) and (k,1). Independent of the closed forms.
pub fn tabulate_system(b: &ExchangeMatrix, spec: &Period2Spec, kind: Kind) -> Result<SystemSpec> {
    let m = OrbitMatrices::new(b, spec)?;
    let span = 4 * spec.n() as i64 + 4;
    let mut equations = Vec::new();
    for (i, u) in [(1usize, 0i64), (spec.k(), 1)] {
        let lp = m.lambda_plus(i, u) as i64;
        let mut plus = BTreeMap::new();
        let mut minus = BTreeMap::new();
        for v in (u - span)..(u + span) {
            let j = m.vertex(v);
            let (p, q) = match kind {
                Kind::Y => g_exponent(&m, j, v, i, u),
                _ => h_exponent(&m, j, v, i, u),
            };
            bump(&mut plus, label(v), p);
            bump(&mut minus, label(v), q);
        }
        equations.push(Equation { lhs: [label(u), label(u + lp)], plus, minus });
    }
    let eq1 = equations.pop().unwrap();
    let eq0 = equations.pop().unwrap();
    Ok(SystemSpec { kind, spec: *spec, equations: [eq0, eq1] })
}
