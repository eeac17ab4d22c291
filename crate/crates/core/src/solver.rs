//! The period-2 equations as pairwise residuals, and exhaustive bounded search.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::period::{is_period2, mu1_partner, Period2Spec};
use crate::small::bracket;

/// Largest admissible search bound; keeps every kernel value inside i64.
pub const MAX_BOUND: u64 = 1 << 20;

/// Which of the three pairwise equations applies to a pair.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Case {
    /// one index is 1, neither is k
    One = 1,
    /// one index is k, neither is 1
    Two = 2,
    /// everything else
    Three = 3,
}

impl Case {
    pub fn of(i: usize, j: usize, k: usize) -> Case {
        let has1 = i == 1 || j == 1;
        let hask = i == k || j == k;
        match (has1, hask) {
            (true, false) => Case::One,
            (false, true) => Case::Two,
            _ => Case::Three,
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub i: usize,
    pub j: usize,
    pub case: Case,
    pub value: BigInt,
}

/// LHS − RHS of the applicable equation for every pair i < j.
/// All zero exactly when `b` is period 2 for `spec`.
pub fn residual(b: &ExchangeMatrix, spec: &Period2Spec) -> Result<Vec<ResidualEntry>> {
    if b.n() != spec.n() {
        return Err(Error::DegreeMismatch { expected: spec.n(), found: b.n() });
    }
    let n = spec.n();
    let k = spec.k();
    let s = spec.sigma();
    let sk = s.apply(k);
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            let (si, sj) = (s.apply(i), s.apply(j));
            let bij = b.get(i, j);
            let bt = b.get(si, sj);
            let case = Case::of(i, j, k);
            let value = match case {
                Case::One => -bij - bt - b.epsilon(si, sk, sj)?,
                Case::Two => bij + b.epsilon(i, 1, j)? + bt,
                Case::Three => bij + b.epsilon(i, 1, j)? - bt - b.epsilon(si, sk, sj)?,
            };
            out.push(ResidualEntry { i, j, case, value });
        }
    }
    Ok(out)
}

pub fn residual_is_zero(b: &ExchangeMatrix, spec: &Period2Spec) -> Result<bool> {
    Ok(residual(b, spec)?.iter().all(|e| e.value.is_zero()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SearchJob {
    pub spec: Period2Spec,
    pub bound: u64,
    pub connected_only: bool,
    pub canonicalize: bool,
}

impl SearchJob {
    pub fn new(spec: Period2Spec, bound: u64) -> Self {
        SearchJob { spec, bound, connected_only: false, canonicalize: false }
    }

    pub fn connected(mut self) -> Self {
        self.connected_only = true;
        self
    }

    pub fn canonical(mut self) -> Self {
        self.canonicalize = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.bound == 0 || self.bound > MAX_BOUND {
            return Err(Error::InvalidJob(format!("bound must be in 1..={MAX_BOUND}, got {}", self.bound)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub solutions: u64,
    pub emitted: u64,
    pub interrupted: bool,
}

#[derive(Clone, Debug)]
struct Equation {
    i: usize,
    j: usize,
    si: usize,
    sj: usize,
    sk: usize,
    case: Case,
}

impl Equation {
    #[inline]
    fn eval(&self, m: &[i64], n: usize) -> Option<i64> {
        let at = |a: usize, b: usize| m[a * n + b];
        let bij = at(self.i, self.j);
        let bt = at(self.si, self.sj);
        let inner = || bracket(at(self.i, 0), at(0, self.j));
        let outer = || bracket(at(self.si, self.sk), at(self.sk, self.sj));
        match self.case {
            Case::One => 0i64.checked_sub(bij)?.checked_sub(bt)?.checked_sub(outer()?),
            Case::Two => bij.checked_add(inner()?)?.checked_add(bt),
            Case::Three => bij.checked_add(inner()?)?.checked_sub(bt)?.checked_sub(outer()?),
        }
    }

    /// Upper-triangle entries read by this equation.
    fn entries(&self) -> Vec<(usize, usize)> {
        let mut v = vec![(self.i, self.j), (self.si, self.sj)];
        if self.case != Case::One {
            v.push((self.i, 0));
            v.push((0, self.j));
        }
        if self.case != Case::Two {
            v.push((self.si, self.sk));
            v.push((self.sk, self.sj));
        }
        v.into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect()
    }
}

/// Compiled search plan: variable order and the equations checked at each depth.
struct Plan {
    n: usize,
    /// upper-triangle pairs in row-major order
    vars: Vec<(usize, usize)>,
    /// order[d] = index into `vars` assigned at depth d
    order: Vec<usize>,
    /// equations whose last variable is assigned at depth d
    checks: Vec<Vec<Equation>>,
    /// equations with no variables at all
    constant: Vec<Equation>,
    prefix: usize,
}

impl Plan {
    fn new(spec: &Period2Spec, prefix: usize) -> Plan {
        let n = spec.n();
        let s = spec.sigma();
        let k = spec.k();
        let sk = s.apply(k) - 1;
        let mut vars = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                vars.push((i, j));
            }
        }
        let var_of = |p: (usize, usize)| vars.iter().position(|&v| v == p).expect("pair");
        let mut eqs = Vec::new();
        for &(i, j) in &vars {
            eqs.push(Equation {
                i,
                j,
                si: s.apply(i + 1) - 1,
                sj: s.apply(j + 1) - 1,
                sk,
                case: Case::of(i + 1, j + 1, k),
            });
        }
        let eq_vars: Vec<Vec<usize>> = eqs
            .iter()
            .map(|e| {
                let mut v: Vec<usize> = e.entries().into_iter().map(var_of).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        let prefix = prefix.min(vars.len());
        let mut order: Vec<usize> = (0..prefix).collect();
        let mut placed = vec![false; vars.len()];
        for p in placed.iter_mut().take(prefix) {
            *p = true;
        }
        // greedily take the equation with fewest open variables, case 1/2 first
        loop {
            let best = eq_vars
                .iter()
                .enumerate()
                .filter_map(|(e, vs)| {
                    let open = vs.iter().filter(|&&v| !placed[v]).count();
                    (open > 0).then(|| (open, eqs[e].case == Case::Three, e))
                })
                .min();
            let Some((_, _, e)) = best else { break };
            for &v in &eq_vars[e] {
                if !placed[v] {
                    placed[v] = true;
                    order.push(v);
                }
            }
        }
        let depth_of: Vec<usize> = {
            let mut d = vec![0; vars.len()];
            for (depth, &v) in order.iter().enumerate() {
                d[v] = depth;
            }
            d
        };
        let mut checks = vec![Vec::new(); order.len()];
        let mut constant = Vec::new();
        for (e, vs) in eqs.into_iter().zip(&eq_vars) {
            match vs.iter().map(|&v| depth_of[v]).max() {
                Some(d) => checks[d].push(e),
                None => constant.push(e),
            }
        }
        Plan { n, vars, order, checks, constant, prefix }
    }
}

struct Worker<'a> {
    plan: &'a Plan,
    bound: i64,
    m: Vec<i64>,
    nodes: u64,
    found: Vec<Vec<i64>>,
    cancel: &'a AtomicBool,
}

impl Worker<'_> {
    fn set(&mut self, var: usize, v: i64) {
        let (i, j) = self.plan.vars[var];
        let n = self.plan.n;
        self.m[i * n + j] = v;
        self.m[j * n + i] = -v;
    }

    fn ok_at(&self, depth: usize) -> bool {
        self.plan.checks[depth].iter().all(|e| e.eval(&self.m, self.plan.n) == Some(0))
    }

    fn run(&mut self, depth: usize) {
        if depth == self.plan.order.len() {
            let n = self.plan.n;
            let flat = self.plan.vars.iter().map(|&(i, j)| self.m[i * n + j]).collect();
            self.found.push(flat);
            return;
        }
        self.nodes += 1;
        if self.nodes & 0xffff == 0 && self.cancel.load(Ordering::Relaxed) {
            return;
        }
        let var = self.plan.order[depth];
        for v in -self.bound..=self.bound {
            self.set(var, v);
            if self.ok_at(depth) {
                self.run(depth + 1);
            }
        }
    }
}

fn matrix_from_upper(n: usize, upper: &[i64]) -> ExchangeMatrix {
    let mut rows = vec![vec![BigInt::zero(); n]; n];
    let mut it = upper.iter();
    for i in 0..n {
        for j in i + 1..n {
            let v = BigInt::from(*it.next().expect("entry"));
            rows[j][i] = -&v;
            rows[i][j] = v;
        }
    }
    ExchangeMatrix::from_rows(rows).expect("skew-symmetric by construction")
}

fn keep(job: &SearchJob, b: &ExchangeMatrix) -> Result<bool> {
    if job.connected_only && !b.is_connected() {
        return Ok(false);
    }
    if job.canonicalize {
        let (p, s2) = mu1_partner(b, &job.spec)?;
        if s2 == job.spec
            && p != *b
            && p < *b
            && p.max_abs() <= BigInt::from(job.bound)
            && (!job.connected_only || p.is_connected())
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Streams every solution in lexicographic order of the flattened matrix.
///
/// The candidate space is split by the leading upper-triangle entries; chunks are
/// solved `workers` at a time and emitted in order. The sink may stop the search
/// by returning `Break`, and `cancel` interrupts it from outside.
pub fn search_streaming<F>(
    job: &SearchJob,
    workers: usize,
    cancel: Option<&AtomicBool>,
    mut sink: F,
) -> Result<SearchStats>
where
    F: FnMut(ExchangeMatrix) -> ControlFlow<()>,
{
    job.validate()?;
    let n = job.spec.n();
    let bound = job.bound as i64;
    let never = AtomicBool::new(false);
    let cancel = cancel.unwrap_or(&never);
    let mut stats = SearchStats::default();
    if n < 2 {
        return Ok(stats);
    }
    let width = 2 * job.bound + 1;
    let nvars = n * (n - 1) / 2;
    let mut prefix = 0;
    while prefix < nvars && prefix < 3 && width.pow(prefix as u32) < 64 {
        prefix += 1;
    }
    let plan = Plan::new(&job.spec, prefix);
    for e in &plan.constant {
        if e.eval(&vec![0; n * n], n) != Some(0) {
            return Ok(stats);
        }
    }
    let chunks: Vec<Vec<i64>> = (0..width.pow(plan.prefix as u32))
        .map(|mut c| {
            let mut p = vec![0; plan.prefix];
            for slot in p.iter_mut().rev() {
                *slot = (c % width) as i64 - bound;
                c /= width;
            }
            p
        })
        .collect();
    let solve = |prefix_vals: &Vec<i64>| -> (u64, Vec<Vec<i64>>) {
        let mut w = Worker {
            plan: &plan,
            bound,
            m: vec![0; n * n],
            nodes: 0,
            found: Vec::new(),
            cancel,
        };
        for (d, &v) in prefix_vals.iter().enumerate() {
            w.set(plan.order[d], v);
            if !w.ok_at(d) {
                return (w.nodes, Vec::new());
            }
        }
        w.run(plan.prefix);
        let mut found = w.found;
        found.sort_unstable();
        (w.nodes, found)
    };
    let workers = workers.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidJob(e.to_string()))?;
    for batch in chunks.chunks(workers * 4) {
        if cancel.load(Ordering::Relaxed) {
            stats.interrupted = true;
            return Ok(stats);
        }
        let results: Vec<(u64, Vec<Vec<i64>>)> =
            pool.install(|| batch.par_iter().map(solve).collect());
        for (nodes, found) in results {
            stats.nodes += nodes;
            for upper in found {
                stats.solutions += 1;
                let b = matrix_from_upper(n, &upper);
                debug_assert!(is_period2(&b, &job.spec).unwrap_or(false));
                if keep(job, &b)? {
                    stats.emitted += 1;
                    if sink(b).is_break() {
                        stats.interrupted = true;
                        return Ok(stats);
                    }
                }
            }
        }
    }
    if cancel.load(Ordering::Relaxed) {
        stats.interrupted = true;
    }
    Ok(stats)
}

/// Worker count from `QUIVERPERIOD_JOBS`, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var("QUIVERPERIOD_JOBS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&v: &usize| v > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

pub fn search_with_workers(job: &SearchJob, workers: usize) -> Result<Vec<ExchangeMatrix>> {
    let mut out = Vec::new();
    search_streaming(job, workers, None, |b| {
        out.push(b);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn search(job: &SearchJob) -> Result<Vec<ExchangeMatrix>> {
    search_with_workers(job, default_workers())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::Shape;

    fn markov() -> ExchangeMatrix {
        ExchangeMatrix::from_i64_rows(&[vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]).unwrap()
    }

    #[test]
    fn case_labels() {
        assert_eq!(Case::of(1, 3, 2), Case::One);
        assert_eq!(Case::of(2, 3, 2), Case::Two);
        assert_eq!(Case::of(1, 2, 2), Case::Three);
        assert_eq!(Case::of(3, 4, 2), Case::Three);
    }

    #[test]
    fn markov_residual_vanishes() {
        let spec = Period2Spec::new(3, Shape::OneCycle, 2).unwrap();
        assert!(residual_is_zero(&markov(), &spec).unwrap());
        assert!(residual_is_zero(&ExchangeMatrix::zero(3), &spec).unwrap());
        let single = ExchangeMatrix::from_arrows(3, &[(1, 2, 1)]).unwrap();
        assert!(!residual_is_zero(&single, &spec).unwrap());
    }

    #[test]
    fn small_search_is_sorted_and_sound() {
        let spec = Period2Spec::new(3, Shape::OneCycle, 2).unwrap();
        let hits = search_with_workers(&SearchJob::new(spec, 2), 2).unwrap();
        assert!(hits.windows(2).all(|w| w[0] < w[1]));
        assert!(hits.iter().all(|b| is_period2(b, &spec).unwrap()));
        assert!(hits.contains(&markov()));
        assert!(hits.contains(&ExchangeMatrix::zero(3)));
    }

    #[test]
    fn interrupt_from_sink() {
        let spec = Period2Spec::new(3, Shape::OneCycle, 2).unwrap();
        let mut seen = 0;
        let stats = search_streaming(&SearchJob::new(spec, 2), 1, None, |_| {
            seen += 1;
            ControlFlow::Break(())
        })
        .unwrap();
        assert_eq!(seen, 1);
        assert!(stats.interrupted);
    }

    #[test]
    fn rejects_zero_bound() {
        let spec = Period2Spec::new(3, Shape::OneCycle, 2).unwrap();
        assert!(search(&SearchJob::new(spec, 0)).is_err());
    }
}
