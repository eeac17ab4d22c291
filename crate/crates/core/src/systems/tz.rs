//! T_Z-systems: the Z-product condition and the substitution that turns a
//! T_Z solution into a Y-system solution.

use std::collections::BTreeMap;


use crate::error::{Error, Result};
use crate::rational::Rational;

use super::field::Field;
use super::iterate::{evaluate_rhs, iterate_system, SeqTrace, ZSeqs};
use super::spec::{Kind, Slot, SystemSpec};

fn ratio_of(m_plus: &BTreeMap<Slot, u64>, m_minus: &BTreeMap<Slot, u64>, t: &SeqTrace<Rational>, q: i64) -> Option<Result<Rational>> {
    let mut num = Rational::one();
    for (s, &e) in m_plus {
        num *= Field::pow(t.get(*s, q)?, e);
    }
    let mut den = Rational::one();
    for (s, &e) in m_minus {
        den *= Field::pow(t.get(*s, q)?, e);
    }
    Some(Field::div(&num, &den).ok_or_else(|| Error::ZeroDivision(" in a Z product".into())))
}

/// Shifts q at which every term of the equation lies inside `t`.
fn shifts(sys: &SystemSpec, e: usize, t: &SeqTrace<Rational>) -> std::ops::Range<i64> {
    let eq = &sys.equations[e];
    let mut hi = i64::MAX;
    for s in eq.slots() {
        hi = hi.min(t.seqs[s.seq.index()].len() as i64 - s.offset);
    }
    0..hi.max(0)
}

/// Π Z^{H₊} / Π Z^{H₋} = 1 for both equations at every shift where all
/// needed Z values exist. Z_z pairs with vertex-1 points and Z_y with
/// vertex-k points.
pub fn check_tz_condition(z: &ZSeqs<Rational>, sys: &SystemSpec) -> Result<bool> {
    Ok(first_condition_failure(z, sys)?.is_none())
}

pub fn first_condition_failure(z: &ZSeqs<Rational>, sys: &SystemSpec) -> Result<Option<(usize, i64)>> {
    let zt = SeqTrace::new(Kind::T, z[0].clone(), z[1].clone());
    if let Some(v) = zt.seqs.iter().flatten().find(|v| **v <= Rational::from_integer(0.into())) {
        return Err(Error::Mismatch(format!("Z values must be positive, got {v}")));
    }
    for e in 0..2 {
        let eq = &sys.equations[e];
        let slots: Vec<&Slot> = eq.plus.keys().chain(eq.minus.keys()).collect();
        let hi = slots
            .iter()
            .map(|s| zt.seqs[s.seq.index()].len() as i64 - s.offset)
            .min()
            .unwrap_or(0);
        for q in 0..hi {
            let v = ratio_of(&eq.plus, &eq.minus, &zt, q).expect("in range")?;
            if v != Rational::one() {
                return Ok(Some((e, q)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TzReport {
    pub condition_holds: bool,
    pub condition_failure: Option<(usize, i64)>,
    /// Y-equation checks performed on the substituted sequences.
    pub checked: usize,
    pub substitution_failure: Option<(usize, i64)>,
}

impl TzReport {
    pub fn substitution_solves(&self) -> bool {
        self.checked > 0 && self.substitution_failure.is_none()
    }
}

/// Iterates the T_Z-system from `init`, forms ȳ = Π x^{H₊} / Π x^{H₋}
/// for each equation, and plugs the result into the Y-system `ysys`.
pub fn tz_substitution(
    tsys: &SystemSpec,
    ysys: &SystemSpec,
    init: &SeqTrace<Rational>,
    z: &ZSeqs<Rational>,
    steps: usize,
) -> Result<(SeqTrace<Rational>, TzReport)> {
    let tz = tsys.with_kind(Kind::Tz);
    let x = iterate_system(&tz, init, steps, Some(z))?;
    let mut bar: [Vec<Rational>; 2] = [Vec::new(), Vec::new()];
    for e in 0..2 {
        let eq = &tsys.equations[e];
        for q in shifts(tsys, e, &x) {
            match ratio_of(&eq.plus, &eq.minus, &x, q) {
                Some(v) => bar[e].push(v?),
                None => break,
            }
        }
    }
    let ybar = SeqTrace { kind: Kind::Y, seqs: bar };
    let mut checked = 0;
    let mut substitution_failure = None;
    'outer: for e in 0..2 {
        let eq = &ysys.equations[e];
        for q in shifts(ysys, e, &ybar) {
            let lhs = ybar.get(eq.lhs[0], q).unwrap() * ybar.get(eq.lhs[1], q).unwrap();
            let rhs = evaluate_rhs(Kind::Y, eq, &ybar, q, None).expect("in range")?;
            checked += 1;
            if lhs != rhs {
                substitution_failure = Some((e, q));
                break 'outer;
            }
        }
    }
    let condition_failure = first_condition_failure(z, tsys)?;
    Ok((
        ybar,
        TzReport { condition_holds: condition_failure.is_none(), condition_failure, checked, substitution_failure },
    ))
}
