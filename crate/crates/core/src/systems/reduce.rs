//! Single-recurrence reductions of T- and Y-systems that carry a periodic
//! quantity, checked term by term against the full system.

use std::fmt;
use std::str::FromStr;


use crate::error::{Error, Result};
use crate::families::FamilyDef;
use crate::rational::{format_rational, pow, Rational};

use super::expr::builtin;
use super::field::Field;
use super::iterate::{iterate_system, SeqTrace};
use super::spec::{extract_system, Kind, SystemSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SomosFamily {
    /// k=2 one-cycle N=5 quiver with parameter p; Somos-4 type in z.
    S82,
    /// k=3 one-cycle N=5 quiver with parameter l; same recurrence.
    S84,
    /// N=6 quiver with parameter n; Somos-5 type in y.
    S86,
}

impl SomosFamily {
    pub const ALL: [SomosFamily; 3] = [SomosFamily::S82, SomosFamily::S84, SomosFamily::S86];

    pub fn family(self) -> &'static FamilyDef {
        let key = match self {
            SomosFamily::S82 => "n5-k2c-left",
            SomosFamily::S84 => "n5-k3d-right",
            SomosFamily::S86 => "n6-b-left",
        };
        FamilyDef::by_key(key).expect("built-in family")
    }

    pub fn template(self) -> &'static str {
        match self {
            SomosFamily::S82 => "s82",
            SomosFamily::S84 => "s84",
            SomosFamily::S86 => "s86",
        }
    }

    pub fn name(self) -> &'static str {
        self.template()
    }
}

impl fmt::Display for SomosFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SomosFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s82" => Ok(SomosFamily::S82),
            "s84" => Ok(SomosFamily::S84),
            "s86" => Ok(SomosFamily::S86),
            _ => Err(Error::Parse(format!("unknown family {s:?} (expected s82, s84 or s86)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionReport {
    pub name: String,
    pub constants: Vec<Rational>,
    pub full: Vec<Rational>,
    pub reduced: Vec<Rational>,
    pub first_mismatch: Option<usize>,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none() && !self.reduced.is_empty()
    }

    pub fn terms(&self) -> usize {
        self.reduced.len()
    }

    fn compare(name: String, constants: Vec<Rational>, full: &[Rational], reduced: Vec<Rational>) -> Self {
        let full = full[..reduced.len().min(full.len())].to_vec();
        let first_mismatch = reduced.iter().zip(&full).position(|(a, b)| a != b).or(if full.len() < reduced.len() {
            Some(full.len())
        } else {
            None
        });
        ReductionReport { name, constants, full, reduced, first_mismatch }
    }
}

impl fmt::Display for ReductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.constants.iter().map(format_rational).collect();
        write!(
            f,
            "{} {}: constants [{}], {} terms",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            cs.join(", "),
            self.terms()
        )?;
        if let Some(i) = self.first_mismatch {
            write!(f, ", first mismatch at term {i}")?;
        }
        Ok(())
    }
}

fn div(a: Rational, b: &Rational) -> Result<Rational> {
    Field::div(&a, b).ok_or_else(|| Error::ZeroDivision(" in a reduced recurrence".into()))
}

fn ipow(a: &Rational, e: i64) -> Result<Rational> {
    pow(a, e)
}

/// z(q+4) z(q) = z(q+1) z(q+3) + C z(q+2)^p from z(0..4).
pub fn somos4(init: &[Rational], c: &Rational, p: i64, terms: usize) -> Result<Vec<Rational>> {
    let mut z = init[..4].to_vec();
    while z.len() < terms {
        let q = z.len() - 4;
        let v = &z[q + 1] * &z[q + 3] + c * ipow(&z[q + 2], p)?;
        z.push(div(v, &z[q])?);
    }
    z.truncate(terms);
    Ok(z)
}

/// y(q+5) y(q) = y(q+3) y(q+2) + C y(q+1)^e y(q+4)^e from y(0..5).
pub fn somos5(init: &[Rational], c: &Rational, e: i64, terms: usize) -> Result<Vec<Rational>> {
    let mut y = init[..5].to_vec();
    while y.len() < terms {
        let q = y.len() - 5;
        let v = &y[q + 3] * &y[q + 2] + c * ipow(&y[q + 1], e)? * ipow(&y[q + 4], e)?;
        y.push(div(v, &y[q])?);
    }
    y.truncate(terms);
    Ok(y)
}

pub fn family_system(fam: &FamilyDef, params: &[i64], kind: Kind) -> Result<SystemSpec> {
    let b = fam.generate(params)?;
    extract_system(&b, &fam.spec(), kind)
}

/// Iterates the full T-system of the family, evaluates the constant from
/// the start of the trace and compares the reduced recurrence over
/// `terms` terms. `init` defaults to an all-ones window.
pub fn somos_reduce(family: SomosFamily, param: i64, init: Option<&SeqTrace<Rational>>, terms: usize) -> Result<ReductionReport> {
    let sys = family_system(family.family(), &[param], Kind::T)?;
    let need = sys.required_window();
    let window = match init {
        Some(w) => {
            let got = [w.z().len(), w.y().len()];
            if got != need {
                return Err(Error::Mismatch(format!("initial window has {got:?} terms, the system needs {need:?}")));
            }
            if w.seqs.iter().flatten().any(|v| *v <= Rational::from_integer(0.into())) {
                return Err(Error::Mismatch("initial data must be positive".into()));
            }
            w.clone()
        }
        None => SeqTrace::new(Kind::T, vec![Rational::one(); need[0]], vec![Rational::one(); need[1]]),
    };
    // iterate only as far as the compared sequence needs; the next terms of a
    // high-exponent system are by far the most expensive
    let have = match family {
        SomosFamily::S82 | SomosFamily::S84 => need[0],
        SomosFamily::S86 => need[1],
    };
    let full = iterate_system(&sys, &window, terms.saturating_sub(have).max(8), None)?;
    let tmpl = builtin(family.template()).expect("built-in template");
    let c = tmpl.expr.eval(&full, 0)?;
    let (seq, reduced) = match family {
        SomosFamily::S82 | SomosFamily::S84 => (full.z(), somos4(full.z(), &c, param, terms)?),
        SomosFamily::S86 => (full.y(), somos5(full.y(), &c, param - 1, terms)?),
    };
    Ok(ReductionReport::compare(format!("{family} param {param}"), vec![c], seq, reduced))
}

/// C(q+1) z(q+2) z(q) = C(q)^n z(q+1)^{2n} + 1 with C(q) = y(q)/z(q+1) of
/// period 2, started from z(0), z(1).
pub fn reduce_first_t(full: &SeqTrace<Rational>, n: i64, terms: usize) -> Result<ReductionReport> {
    let tmpl = builtin("s81-t").expect("built-in");
    let c = [tmpl.expr.eval(full, 0)?, tmpl.expr.eval(full, 1)?];
    let mut z = full.z()[..2].to_vec();
    while z.len() < terms {
        let q = z.len() - 2;
        let v = ipow(&c[q % 2], n)? * ipow(&z[q + 1], 2 * n)? + Rational::one();
        z.push(div(v, &(&c[(q + 1) % 2] * &z[q]))?);
    }
    Ok(ReductionReport::compare(format!("first T reduction n={n}"), c.to_vec(), full.z(), z))
}

/// D̃(q+1) A(q+2) A(q) = (1+A(q+1))^n (1+D̃(q) A(q+1))^n with
/// D̃(q) = B(q)/A(q+1) of period 2, started from A(0), A(1).
pub fn reduce_first_y(full: &SeqTrace<Rational>, n: i64, terms: usize) -> Result<ReductionReport> {
    let at = |q: i64| -> Result<Rational> {
        let (b, a) = (full.get(super::spec::Slot::y(0), q), full.get(super::spec::Slot::z(1), q));
        match (b, a) {
            (Some(b), Some(a)) => div(b.clone(), a),
            _ => Err(Error::SequenceTooShort("Y trace".into())),
        }
    };
    let d = [at(0)?, at(1)?];
    let one = Rational::one();
    let mut a = full.z()[..2].to_vec();
    while a.len() < terms {
        let q = a.len() - 2;
        let v = ipow(&(&one + &a[q + 1]), n)? * ipow(&(&one + &d[q % 2] * &a[q + 1]), n)?;
        a.push(div(v, &(&d[(q + 1) % 2] * &a[q]))?);
    }
    Ok(ReductionReport::compare(format!("first Y reduction n={n}"), d.to_vec(), full.z(), a))
}

/// The same Y equation with D(q) = A(q+1)/B(q) substituted as printed;
/// returned so callers can show that it does not reproduce the trace.
pub fn reduce_first_y_literal(full: &SeqTrace<Rational>, n: i64, terms: usize) -> Result<ReductionReport> {
    let tmpl = builtin("s81-y").expect("built-in");
    let d = [tmpl.expr.eval(full, 0)?, tmpl.expr.eval(full, 1)?];
    let one = Rational::one();
    let mut a = full.z()[..2].to_vec();
    while a.len() < terms {
        let q = a.len() - 2;
        let v = ipow(&(&one + &a[q + 1]), n)? * ipow(&(&one + &d[q % 2] * &a[q + 1]), n)?;
        a.push(div(v, &(&d[(q + 1) % 2] * &a[q]))?);
    }
    Ok(ReductionReport::compare(format!("first Y reduction as printed n={n}"), d.to_vec(), full.z(), a))
}

/// The half-reduced pair
///   y(q+3) y(q) = C z(q+2)^2 y(q+1)^n y(q+2)^n + 1,
///   C z(q+2) z(q+1) = y(q) y(q+2) + y(q+1),
/// started from y(0..3) and z(1); returns reports for z and y.
pub fn reduce_half(full: &SeqTrace<Rational>, n: i64, terms: usize) -> Result<(ReductionReport, ReductionReport)> {
    let c = builtin("s83").expect("built-in").expr.eval(full, 0)?;
    let mut y = full.y()[..3].to_vec();
    let mut z = vec![full.z()[0].clone(), full.z()[1].clone()];
    while y.len() < terms || z.len() < terms {
        let q = z.len() - 2;
        let zv = &y[q] * &y[q + 2] + &y[q + 1];
        z.push(div(zv, &(&c * &z[q + 1]))?);
        let q = y.len() - 3;
        let yv = &c * ipow(&z[q + 2], 2)? * ipow(&y[q + 1], n)? * ipow(&y[q + 2], n)? + Rational::one();
        y.push(div(yv, &y[q])?);
    }
    z.truncate(terms);
    y.truncate(terms);
    Ok((
        ReductionReport::compare(format!("half reduction z n={n}"), vec![c.clone()], full.z(), z),
        ReductionReport::compare(format!("half reduction y n={n}"), vec![c], full.y(), y),
    ))
}

/// C(q) y(q+4) y(q+2) y(q) = (C(q+1) y(q+3) y(q+1) − 1)^m y(q+2) + y(q+4) + y(q)
/// with C(q) = (z(q)+1)/(y(q+2) y(q)) of period 2, from y(0..4).
pub fn reduce_period_two(full: &SeqTrace<Rational>, m: i64, terms: usize) -> Result<ReductionReport> {
    let tmpl = builtin("s85").expect("built-in");
    let c = [tmpl.expr.eval(full, 0)?, tmpl.expr.eval(full, 1)?];
    let one = Rational::one();
    let mut y = full.y()[..4].to_vec();
    while y.len() < terms {
        let q = y.len() - 4;
        let inner = &c[(q + 1) % 2] * &y[q + 3] * &y[q + 1] - &one;
        let num = ipow(&inner, m)? * &y[q + 2] + &y[q];
        // z(q) = C(q) y(q+2) y(q) − 1 multiplies y(q+4)
        let zq = &c[q % 2] * &y[q + 2] * &y[q] - &one;
        y.push(div(num, &zq)?);
    }
    Ok(ReductionReport::compare(format!("period-two reduction m={m}"), c.to_vec(), full.y(), y))
}

/// The reduced equation with the factor y(q+2) dropped, as printed.
pub fn reduce_period_two_literal(full: &SeqTrace<Rational>, m: i64, terms: usize) -> Result<ReductionReport> {
    let tmpl = builtin("s85").expect("built-in");
    let c = [tmpl.expr.eval(full, 0)?, tmpl.expr.eval(full, 1)?];
    let one = Rational::one();
    let mut y = full.y()[..4].to_vec();
    while y.len() < terms {
        let q = y.len() - 4;
        let inner = &c[(q + 1) % 2] * &y[q + 3] * &y[q + 1] - &one;
        let num = ipow(&inner, m)? + &y[q];
        let zq = &c[q % 2] * &y[q + 2] * &y[q] - &one;
        y.push(div(num, &zq)?);
    }
    Ok(ReductionReport::compare(format!("period-two reduction as printed m={m}"), c.to_vec(), full.y(), y))
}
