//! Forward iteration of an extracted system from an initial window.

use crate::error::{Error, Result};
use crate::orbit::OrbitTrace;
use crate::rational::Rational;

use super::field::Field;
use super::spec::{Equation, Kind, Seq, Slot, SystemSpec};

/// The two sequences of a system (z, y for T; A, B for Y), indexed from 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SeqTrace<F> {
    pub kind: Kind,
    pub seqs: [Vec<F>; 2],
}

impl<F: Field> SeqTrace<F> {
    pub fn new(kind: Kind, z: Vec<F>, y: Vec<F>) -> Self {
        SeqTrace { kind, seqs: [z, y] }
    }

    pub fn z(&self) -> &[F] {
        &self.seqs[0]
    }

    pub fn y(&self) -> &[F] {
        &self.seqs[1]
    }

    pub fn get(&self, s: Slot, q: i64) -> Option<&F> {
        let i = q + s.offset;
        if i < 0 {
            return None;
        }
        self.seqs[s.seq.index()].get(i as usize)
    }

    pub fn truncate(&mut self, len: [usize; 2]) {
        self.seqs[0].truncate(len[0]);
        self.seqs[1].truncate(len[1]);
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<SeqTrace<G>> {
        let conv = |v: &Vec<F>| v.iter().map(&f).collect::<Option<Vec<G>>>();
        Some(SeqTrace { kind: self.kind, seqs: [conv(&self.seqs[0])?, conv(&self.seqs[1])?] })
    }
}

impl OrbitTrace<Rational> {
    /// The cluster-variable sequences z, y.
    pub fn t_sequences(&self) -> SeqTrace<Rational> {
        SeqTrace::new(Kind::T, self.z.clone(), self.y.clone())
    }

    /// The y-variable sequences A, B.
    pub fn y_sequences(&self) -> SeqTrace<Rational> {
        SeqTrace::new(Kind::Y, self.a.clone(), self.b.clone())
    }
}

/// Per-equation multipliers for T_Z iteration: Z[e][q] multiplies the
/// right-hand side of equation e at shift q.
pub type ZSeqs<F> = [Vec<F>; 2];

fn monomial<F: Field>(t: &SeqTrace<F>, m: &std::collections::BTreeMap<Slot, u64>, q: i64) -> Option<F> {
    let mut acc = F::one();
    for (s, &e) in m {
        acc = acc.mul(&t.get(*s, q)?.pow(e));
    }
    Some(acc)
}

/// Right-hand side of `eq` at shift q, or `None` if a needed term is not
/// yet known. `Err` on a zero denominator.
pub fn evaluate_rhs<F: Field>(kind: Kind, eq: &Equation, t: &SeqTrace<F>, q: i64, z: Option<&F>) -> Option<Result<F>> {
    match kind {
        Kind::T | Kind::Tz => {
            let s = monomial(t, &eq.plus, q)?.add(&monomial(t, &eq.minus, q)?);
            Some(Ok(match z {
                Some(z) => z.mul(&s),
                None => s,
            }))
        }
        Kind::Y => {
            let mut num = F::one();
            for (s, &e) in &eq.plus {
                num = num.mul(&F::one().add(t.get(*s, q)?).pow(e));
            }
            let mut den = F::one();
            for (s, &e) in &eq.minus {
                let v = t.get(*s, q)?;
                let Some(inv) = v.inv() else {
                    return Some(Err(Error::ZeroDivision(format!(" at {}", s.render(kind)))));
                };
                den = den.mul(&F::one().add(&inv).pow(e));
            }
            Some(num.div(&den).ok_or_else(|| Error::ZeroDivision(" in a Y-system denominator".into())))
        }
    }
}

/// Extends `init` by solving each equation at least `steps` times, in
/// whichever order the known terms allow.
pub fn iterate_system<F: Field>(
    sys: &SystemSpec,
    init: &SeqTrace<F>,
    steps: usize,
    z: Option<&ZSeqs<F>>,
) -> Result<SeqTrace<F>> {
    if sys.kind == Kind::Tz && z.is_none() {
        return Err(Error::Mismatch("a T_Z system needs Z sequences".into()));
    }
    let need = sys.required_window();
    for s in [Seq::Z, Seq::Y] {
        let got = init.seqs[s.index()].len();
        if got < need[s.index()] {
            return Err(Error::WindowTooSmall { seq: s.name(sys.kind).into(), needed: need[s.index()], got });
        }
    }
    if let Some(v) = init.seqs.iter().flatten().find(|v| v.is_zero()) {
        return Err(Error::ZeroDivision(format!(" (initial value {v:?})")));
    }
    let mut t = SeqTrace { kind: sys.kind, seqs: [init.seqs[0].clone(), init.seqs[1].clone()] };
    let mut done = [0usize; 2];
    // an equation that has finished may still run ahead to feed the other
    let mut extra = false;
    while done.iter().any(|&d| d < steps) {
        let mut progressed = false;
        for (e, eq) in sys.equations.iter().enumerate() {
            if done[e] >= steps && !extra {
                continue;
            }
            let u = eq.unknown();
            let q = t.seqs[u.seq.index()].len() as i64 - u.offset;
            let zq = match (sys.kind, z) {
                (Kind::Tz, Some(z)) => match z[e].get(q.max(0) as usize) {
                    Some(v) if q >= 0 => Some(v.clone()),
                    _ => {
                        return Err(Error::SequenceTooShort(format!(
                            "Z{} needs a value at q={q}",
                            Seq::from_index(e).name(sys.kind)
                        )))
                    }
                },
                _ => None,
            };
            let Some(rhs) = evaluate_rhs(sys.kind, eq, &t, q, zq.as_ref()) else { continue };
            let rhs = rhs?;
            let Some(known) = t.get(eq.lhs[0], q) else { continue };
            let v = rhs.div(known).ok_or_else(|| {
                Error::ZeroDivision(format!(" by {} at q={q}", eq.lhs[0].render(sys.kind)))
            })?;
            t.seqs[u.seq.index()].push(v);
            done[e] += 1;
            progressed = true;
        }
        if progressed {
            extra = false;
        } else if !extra && done.iter().any(|&d| d >= steps) {
            extra = true;
        } else {
            return Err(Error::WindowTooSmall {
                seq: "z/y".into(),
                needed: need.iter().sum(),
                got: init.seqs[0].len() + init.seqs[1].len(),
            });
        }
    }
    Ok(t)
}

/// Window of a seed orbit suitable for starting `iterate_system`.
pub fn window_of<F: Field>(full: &SeqTrace<F>, sys: &SystemSpec) -> Result<SeqTrace<F>> {
    let need = sys.required_window();
    for s in [Seq::Z, Seq::Y] {
        if full.seqs[s.index()].len() < need[s.index()] {
            return Err(Error::SequenceTooShort(format!("{} has fewer than {} terms", s.name(sys.kind), need[s.index()])));
        }
    }
    Ok(SeqTrace {
        kind: full.kind,
        seqs: [full.seqs[0][..need[0]].to_vec(), full.seqs[1][..need[1]].to_vec()],
    })
}
