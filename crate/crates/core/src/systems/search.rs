//! Search for periodic quantities of the forms m1/m2 and (m1 + m2)/m3 over
//! monomials in a bounded window of sequence terms.
//!
//! Candidates are screened on the trace reduced mod p, confirmed exactly on
//! the rational trace, and re-checked on a long extension iterated over
//! F_p from a fresh random window. Hits are empirical, not proofs.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::expr::{verify_periodic, Expr, Period, PeriodicQuantityTemplate};
use super::field::{Field, Fp, P61};
use super::iterate::{iterate_system, SeqTrace};
use super::spec::{Kind, Seq, Slot, SystemSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateSearch {
    pub shift_bound: usize,
    pub exp_bound: u32,
    pub max_period: usize,
    pub extension_steps: usize,
    pub seed: u64,
}

impl Default for TemplateSearch {
    fn default() -> Self {
        TemplateSearch { shift_bound: 4, exp_bound: 1, max_period: 4, extension_steps: 200, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoundTemplate {
    pub template: PeriodicQuantityTemplate,
    /// Shifts checked exactly on the supplied trace.
    pub exact_shifts: usize,
    /// Shifts checked on the F_p extension.
    pub extension_shifts: usize,
}

struct Space {
    slots: Vec<Slot>,
    radix: usize,
    count: usize,
}

impl Space {
    fn new(shift_bound: usize, exp_bound: u32) -> Result<Self> {
        let mut slots = Vec::new();
        for seq in [Seq::Z, Seq::Y] {
            for o in 0..=shift_bound as i64 {
                slots.push(Slot { seq, offset: o });
            }
        }
        let radix = exp_bound as usize + 1;
        let count = (radix as u128).checked_pow(slots.len() as u32).filter(|&c| c <= 1 << 22);
        let count = count.ok_or_else(|| {
            Error::Mismatch(format!("template space too large (shift bound {shift_bound}, exponent bound {exp_bound})"))
        })? as usize;
        Ok(Space { slots, radix, count })
    }

    fn exps(&self, mut idx: usize) -> Vec<u32> {
        let mut e = vec![0; self.slots.len()];
        for v in e.iter_mut() {
            *v = (idx % self.radix) as u32;
            idx /= self.radix;
        }
        e
    }

    fn expr(&self, e: &[u32]) -> Expr {
        let mut out: Option<Expr> = None;
        for (s, &k) in self.slots.iter().zip(e) {
            if k == 0 {
                continue;
            }
            let t = Expr::Term(*s);
            let t = if k == 1 { t } else { Expr::Pow(Box::new(t), k as i64) };
            out = Some(match out {
                None => t,
                Some(o) => Expr::Mul(Box::new(o), Box::new(t)),
            });
        }
        out.unwrap_or_else(super::expr::one)
    }

    fn touches_zero_offset(&self, es: &[&[u32]]) -> bool {
        self.slots
            .iter()
            .enumerate()
            .any(|(i, s)| s.offset == 0 && es.iter().any(|e| e[i] > 0))
    }
}

/// Monomial values mono[idx][q] for every exponent vector.
fn monomial_table(space: &Space, t: &SeqTrace<Fp>, len: usize) -> Vec<Vec<Fp>> {
    let vals: Vec<Vec<Fp>> = space
        .slots
        .iter()
        .map(|s| (0..len).map(|q| *t.get(*s, q as i64).expect("window checked")).collect())
        .collect();
    let mut table: Vec<Vec<Fp>> = Vec::with_capacity(space.count);
    table.push(vec![Fp(1); len]);
    for idx in 1..space.count {
        // drop one unit of the lowest nonzero digit and multiply it back
        let mut i = 0;
        let mut r = idx;
        while r % space.radix == 0 {
            r /= space.radix;
            i += 1;
        }
        let prev = idx - space.radix.pow(i as u32);
        let row: Vec<Fp> = table[prev].iter().zip(&vals[i]).map(|(a, b)| a.mul(b)).collect();
        table.push(row);
    }
    table
}

fn periodic_ratio(num: &[Fp], den: &[Fp], p: usize, h: usize) -> bool {
    (0..h).all(|q| num[q + p].mul(&den[q]) == num[q].mul(&den[q + p]))
}

/// All templates in the space that are periodic with period ≤ max_period
/// along `trace`, each with its least period. Constants are reported as
/// period 1.
pub fn template_search(sys: &SystemSpec, trace: &SeqTrace<Rational>, opts: &TemplateSearch) -> Result<Vec<FoundTemplate>> {
    let space = Space::new(opts.shift_bound, opts.exp_bound)?;
    let modp = trace
        .map(Fp::from_rational)
        .ok_or_else(|| Error::Mismatch("trace value has a denominator divisible by p".into()))?;
    let shortest = trace.seqs.iter().map(|s| s.len()).min().unwrap_or(0);
    let maxp = opts.max_period.max(1);
    let h = shortest.saturating_sub(opts.shift_bound + maxp);
    if h < 4 {
        return Err(Error::SequenceTooShort(format!(
            "template search needs at least {} terms per sequence",
            opts.shift_bound + maxp + 4
        )));
    }
    let len = h + maxp;
    let table = monomial_table(&space, &modp, len);
    let n = space.slots.len();
    let mut seen: HashMap<String, ()> = HashMap::new();
    let mut hits: Vec<(PeriodicQuantityTemplate, String)> = Vec::new();

    // signed exponent vectors g: positive part over negative part
    let signed = (2 * opts.exp_bound as usize + 1).pow(n as u32);
    let e = opts.exp_bound as i64;
    let split = |mut idx: usize| -> (Vec<u32>, Vec<u32>) {
        let (mut pos, mut neg) = (vec![0; n], vec![0; n]);
        for i in 0..n {
            let d = (idx % (2 * e as usize + 1)) as i64 - e;
            idx /= 2 * e as usize + 1;
            if d > 0 {
                pos[i] = d as u32;
            } else if d < 0 {
                neg[i] = (-d) as u32;
            }
        }
        (pos, neg)
    };
    let index = |ex: &[u32]| ex.iter().rev().fold(0usize, |acc, &d| acc * space.radix + d as usize);
    let canonical = |pos: &[u32], neg: &[u32]| {
        // first nonzero digit must belong to the numerator
        (0..n).find(|&i| pos[i] > 0 || neg[i] > 0).is_some_and(|i| pos[i] > 0)
    };

    for p in 1..=maxp {
        // m1 / m2
        for g in 0..signed {
            let (pos, neg) = split(g);
            if !canonical(&pos, &neg) || !space.touches_zero_offset(&[&pos, &neg]) {
                continue;
            }
            let (a, b) = (&table[index(&pos)], &table[index(&neg)]);
            if periodic_ratio(a, b, p, h) {
                let expr = Expr::Div(Box::new(space.expr(&pos)), Box::new(space.expr(&neg)));
                record(&mut seen, &mut hits, expr, p);
            }
        }
        // (m1 + m2) / m3, keyed by m3(q+p)/m3(q) at q = 0
        let mut by_key: HashMap<Fp, Vec<usize>> = HashMap::new();
        for (idx, row) in table.iter().enumerate() {
            let key = row[p].div(&row[0]).expect("nonzero monomial");
            by_key.entry(key).or_default().push(idx);
        }
        for g in 0..signed {
            let (pos, neg) = split(g);
            if !canonical(&pos, &neg) {
                continue;
            }
            let (a, b) = (&table[index(&pos)], &table[index(&neg)]);
            let s: Vec<Fp> = a.iter().zip(b).map(|(x, y)| x.add(y)).collect();
            let Some(inv) = s[0].inv() else { continue };
            let Some(cands) = by_key.get(&s[p].mul(&inv)) else { continue };
            for &m3 in cands {
                let den = &table[m3];
                let e3 = space.exps(m3);
                if !space.touches_zero_offset(&[&pos, &neg, &e3]) {
                    continue;
                }
                if !periodic_ratio(&s, den, p, h) || periodic_ratio(a, den, p, h) {
                    continue;
                }
                let expr = Expr::Div(
                    Box::new(Expr::Add(Box::new(space.expr(&pos)), Box::new(space.expr(&neg)))),
                    Box::new(space.expr(&e3)),
                );
                record(&mut seen, &mut hits, expr, p);
            }
        }
    }

    let mut out = Vec::new();
    let names = [Seq::Z.name(trace.kind), Seq::Y.name(trace.kind)];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let ext = extension(sys, trace.kind, opts.extension_steps, &mut rng)?;
    for (mut tmpl, _) in hits {
        tmpl.name = tmpl.expr.render(names);
        let exact_shifts = tmpl.max_horizon(trace);
        if !verify_periodic(trace, &tmpl, exact_shifts)?.passed {
            continue;
        }
        let extension_shifts = tmpl.max_horizon(&ext);
        let pp = tmpl.period.shift();
        let ok = (0..extension_shifts as i64).all(|q| match (tmpl.expr.eval(&ext, q), tmpl.expr.eval(&ext, q + pp as i64)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        });
        if ok {
            out.push(FoundTemplate { template: tmpl, exact_shifts, extension_shifts });
        }
    }
    Ok(out)
}

fn record(seen: &mut HashMap<String, ()>, hits: &mut Vec<(PeriodicQuantityTemplate, String)>, expr: Expr, p: usize) {
    let key = expr.to_string();
    if seen.insert(key.clone(), ()).is_some() {
        return;
    }
    let period = if p == 1 { Period::Constant } else { Period::Every(p) };
    hits.push((PeriodicQuantityTemplate { name: key.clone(), expr, period }, key));
}

/// The system iterated over F_p from a random window.
pub fn extension<R: Rng>(sys: &SystemSpec, kind: Kind, steps: usize, rng: &mut R) -> Result<SeqTrace<Fp>> {
    let need = sys.required_window();
    let mut draw = |k: usize| (0..k).map(|_| Fp(rng.gen_range(1..P61))).collect::<Vec<_>>();
    let init = SeqTrace::new(kind, draw(need[0]), draw(need[1]));
    let z = if sys.kind == Kind::Tz { Some([vec![Fp(1); steps + 1], vec![Fp(1); steps + 1]]) } else { None };
    iterate_system(sys, &init, steps, z.as_ref())
}
