//! The mutation orbit of a period-2 quiver: mutate at ν^r(1) at time 2r
//! and at ν^r(k) at time 2r+1, with ν = σ⁻¹.

use crate::cluster::{lenient_seed, mutate_seed, ClusterValue, Seed, Symbolic};
use crate::error::{Error, Result};
use crate::matrix::{ExchangeMatrix, Permutation};
use crate::period::{is_period2, Period2Spec};
use crate::rational::Rational;

/// State of the seed at time `u`, before the mutation at `vertex`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame<V> {
    pub u: usize,
    pub vertex: usize,
    pub b: ExchangeMatrix,
    pub x: Vec<V>,
    pub y: Option<Vec<Rational>>,
}

/// Frames at u = 0..=steps in the original vertex labels, plus the
/// relabeled sequences z(q) = x_{ν^q(1)}(2q), y(q) = x_{ν^q(k)}(2q+1) and
/// the matching y-variable sequences a(q), b(q).
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitTrace<V> {
    pub spec: Period2Spec,
    pub frames: Vec<Frame<V>>,
    pub z: Vec<V>,
    pub y: Vec<V>,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl<V> OrbitTrace<V> {
    pub fn steps(&self) -> usize {
        self.frames.len() - 1
    }
}

/// The vertex mutated at time `u`.
pub fn schedule(spec: &Period2Spec, u: usize) -> usize {
    let nu = spec.nu().pow((u / 2) as i64);
    if u % 2 == 0 {
        nu.apply(1)
    } else {
        nu.apply(spec.k())
    }
}

pub fn run_orbit<V: ClusterValue>(s0: &Seed<V>, spec: &Period2Spec, steps: usize) -> Result<OrbitTrace<V>> {
    if s0.n() != spec.n() {
        return Err(Error::DegreeMismatch { expected: spec.n(), found: s0.n() });
    }
    if !is_period2(&s0.b, spec)? {
        return Err(Error::NotPeriod2(spec.to_string()));
    }
    let nu = spec.nu();
    let mut nu_r = Permutation::identity(spec.n());
    let mut seed = s0.clone();
    let mut trace = OrbitTrace { spec: *spec, frames: Vec::new(), z: Vec::new(), y: Vec::new(), a: Vec::new(), b: Vec::new() };
    for u in 0..=steps {
        let vertex = if u % 2 == 0 { nu_r.apply(1) } else { nu_r.apply(spec.k()) };
        let (xs, ys) = if u % 2 == 0 { (&mut trace.z, &mut trace.a) } else { (&mut trace.y, &mut trace.b) };
        xs.push(seed.x[vertex - 1].clone());
        if let Some(y) = &seed.y {
            ys.push(y[vertex - 1].clone());
        }
        trace.frames.push(Frame { u, vertex, b: seed.b.clone(), x: seed.x.clone(), y: seed.y.clone() });
        if u == steps {
            break;
        }
        seed = mutate_seed(&seed, vertex).map_err(|e| match e {
            Error::NotLaurent { vertex, .. } => Error::NotLaurent { step: u, vertex },
            e => e,
        })?;
        if u % 2 == 1 {
            nu_r = nu.compose(&nu_r)?;
        }
    }
    Ok(trace)
}

/// Runs `periods` full periods (2·periods mutations) and trims the trace so
/// that z and y have the same length.
pub fn run_periods<V: ClusterValue>(s0: &Seed<V>, spec: &Period2Spec, periods: usize) -> Result<OrbitTrace<V>> {
    run_orbit(s0, spec, 2 * periods.max(1) - 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentEntry {
    pub u: usize,
    pub vertex: usize,
    pub laurent: bool,
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentReport {
    pub spec: Period2Spec,
    pub depth: usize,
    pub entries: Vec<LaurentEntry>,
}

impl LaurentReport {
    pub fn all_laurent(&self) -> bool {
        self.entries.iter().all(|e| e.laurent)
    }
}

/// Runs `depth` mutations of the orbit over symbolic initial variables and
/// records whether each new variable is a Laurent polynomial.
pub fn laurent_check(b: &ExchangeMatrix, spec: &Period2Spec, depth: usize) -> Result<LaurentReport> {
    let trace = run_orbit(&lenient_seed(b), spec, depth)?;
    let mut entries = Vec::new();
    for w in trace.frames.windows(2) {
        let v = w[0].vertex;
        let new = &w[1].x[v - 1];
        let terms = match new {
            Symbolic::Laurent(p) => p.len(),
            Symbolic::Fraction(n, _) => n.len(),
        };
        entries.push(LaurentEntry { u: w[0].u, vertex: v, laurent: new.is_laurent(), terms });
    }
    Ok(LaurentReport { spec: *spec, depth, entries })
}

/// One-vertex mutation run without the period-2 schedule, for quivers
/// where any vertex sequence is wanted.
pub fn mutate_sequence<V: ClusterValue>(s0: &Seed<V>, vertices: &[usize]) -> Result<Vec<Seed<V>>> {
    let mut out = vec![s0.clone()];
    for &k in vertices {
        let next = mutate_seed(out.last().unwrap(), k)?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::Shape;
    use crate::rational::int;

    #[test]
    fn zero_steps_is_initial_seed() {
        let b = ExchangeMatrix::from_i64_rows(&[vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]).unwrap();
        let spec = Period2Spec::new(3, Shape::OneCycle, 2).unwrap();
        let s = Seed::new(b.clone(), vec![int(1); 3], Some(vec![int(1); 3])).unwrap();
        let t = run_orbit(&s, &spec, 0).unwrap();
        assert_eq!(t.frames.len(), 1);
        assert_eq!(t.frames[0].b, b);
        assert_eq!(t.z, vec![int(1)]);
        assert!(t.y.is_empty());
    }

    #[test]
    fn schedule_follows_nu() {
        let spec = Period2Spec::new(5, Shape::TwoCycle, 3).unwrap();
        let v: Vec<usize> = (0..8).map(|u| schedule(&spec, u)).collect();
        // ν maps 1->2->1 and 3->5->4->3
        assert_eq!(v, vec![1, 3, 2, 5, 1, 4, 2, 3]);
    }

    #[test]
    fn rejects_non_period_two() {
        let b = ExchangeMatrix::from_i64_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
        let spec = Period2Spec::new(3, Shape::OneCycle, 2).unwrap();
        let s = Seed::new(b, vec![int(1); 3], None).unwrap();
        assert!(matches!(run_orbit(&s, &spec, 3), Err(Error::NotPeriod2(_))));
    }

    #[test]
    fn single_vertex_round_trip() {
        let b = ExchangeMatrix::zero(1);
        let s = crate::cluster::symbolic_seed(&b);
        let seq = mutate_sequence(&s, &[1, 1]).unwrap();
        assert_eq!(seq[2].x, s.x);
    }
}
