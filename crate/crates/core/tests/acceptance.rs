//! Acceptance run: one PASS/FAIL line per criterion, every comparison exact.
//!
//! Oracles written here on purpose avoid the library code under test:
//! mutation by arrows, period 1/2 by direct relabeling, the reduced
//! recurrences and periodic quantities by hand on plain vectors.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use quiverperiod::families::{regression_set, FamilyDef, FamilyInstance, Theorem};
use quiverperiod::rational::{int, random_positive, Rational};
use quiverperiod::solver::{default_workers, residual_is_zero, search_with_workers, SearchJob};
use quiverperiod::suites::{closed_form_rows, horizon, laurent_rows, random_orbits};
use quiverperiod::systems::reduce::{
    family_system, reduce_first_t, reduce_first_y, reduce_half, reduce_period_two, somos_reduce,
};
use quiverperiod::systems::{extract_system, iterate_system, tz_substitution, Kind, SeqTrace, SomosFamily};
use quiverperiod::verify::{verify_theorem, CheckRow};
use quiverperiod::{is_period1, is_period2, period1_from_row, ExchangeMatrix, Period2Spec, Shape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240601;
/// Criteria whose failure is recorded in the decision log as unattainable.
const KNOWN_UNATTAINABLE: [usize; 1] = [6];

type Outcome = Result<(bool, String), String>;

fn main() -> ExitCode {
    let criteria: Vec<(usize, &str, fn() -> Outcome)> = vec![
        (1, "mutation correctness", c1),
        (2, "period-1 equivalence", c2),
        (3, "N=3 classification", c3),
        (4, "N=4 classification", c4),
        (5, "N=5 families and pairings", c5),
        (6, "N=6 families and completeness", c6),
        (7, "closed form vs tabulation", c7),
        (8, "first quiver T/Y reductions", c8),
        (9, "Somos-4 reductions", c9),
        (10, "half reduction constant", c10),
        (11, "period-2 quantity and Somos-5", c11),
        (12, "Laurent property", c12),
        (13, "T_Z systems", c13),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    println!("acceptance: seed {SEED}, {} workers", default_workers());
    let mut unexpected = Vec::new();
    for (id, name, f) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let t = Instant::now();
        let (ok, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        let secs = t.elapsed().as_secs_f64();
        println!("{} {id:>2} {name} ({secs:.1} s): {detail}", if ok { "PASS" } else { "FAIL" });
        if ok == KNOWN_UNATTAINABLE.contains(&id) {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---------------------------------------------------------------- matrices

type M = Vec<Vec<i64>>;

fn to_m(b: &ExchangeMatrix) -> M {
    b.rows().iter().map(|r| r.iter().map(|v| i64::try_from(v).expect("small entry")).collect()).collect()
}

fn from_m(m: &M) -> ExchangeMatrix {
    ExchangeMatrix::from_i64_rows(m).unwrap()
}

fn random_m(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> M {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-bound..=bound);
            m[i][j] = v;
            m[j][i] = -v;
        }
    }
    m
}

/// Quiver mutation by arrows: compose paths through k, reverse the arrows at
/// k, cancel 2-cycles.
fn arrow_mutate(b: &M, k: usize) -> M {
    let n = b.len();
    let mut a: Vec<Vec<i64>> = b.iter().map(|r| r.iter().map(|&v| v.max(0)).collect()).collect();
    let orig = a.clone();
    for i in 0..n {
        for j in 0..n {
            if i != k && j != k && i != j {
                a[i][j] += orig[i][k] * orig[k][j];
            }
        }
    }
    for i in 0..n {
        a[i][k] = orig[k][i];
        a[k][i] = orig[i][k];
    }
    (0..n).map(|i| (0..n).map(|j| a[i][j] - a[j][i]).collect()).collect()
}

/// b'_ij = -b_ij at k, else b_ij + (|b_ik| b_kj + b_ik |b_kj|)/2.
fn formula_mutate(b: &M, k: usize) -> M {
    let n = b.len();
    let mut out = b.clone();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k { -b[i][j] } else { b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2 };
        }
    }
    out
}

/// ρ μ_1 B = B with ρ the cyclic shift i -> i+1.
fn period1_oracle(b: &M) -> bool {
    let n = b.len();
    let m = formula_mutate(b, 0);
    (0..n).all(|i| (0..n).all(|j| m[(i + 1) % n][(j + 1) % n] == b[i][j]))
}

/// σ of the spec as a 0-based map: (1..N) or (1..k-1)(k..N).
fn sigma(n: usize, shape: Shape, k: usize) -> Vec<usize> {
    match shape {
        Shape::OneCycle => (0..n).map(|i| (i + 1) % n).collect(),
        Shape::TwoCycle => (0..n)
            .map(|i| {
                if i < k - 1 {
                    (i + 1) % (k - 1)
                } else {
                    k - 1 + (i + 1 - (k - 1)) % (n - k + 1)
                }
            })
            .collect(),
    }
}

/// Relabel μ_k μ_1 B by σ and compare with B.
fn period2_oracle(b: &M, shape: Shape, k: usize) -> bool {
    let n = b.len();
    let m = formula_mutate(&formula_mutate(b, 0), k - 1);
    let s = sigma(n, shape, k);
    (0..n).all(|i| (0..n).all(|j| b[s[i]][s[j]] == m[i][j]))
}

fn instances_pass_oracle(insts: &[FamilyInstance]) -> (usize, Vec<String>) {
    let bad: Vec<String> = insts
        .iter()
        .filter(|i| {
            let spec = i.spec();
            !period2_oracle(&to_m(&i.matrix), spec.shape(), spec.k())
        })
        .map(|i| i.label())
        .collect();
    (insts.len(), bad)
}

fn rows_summary(rows: &[CheckRow]) -> (bool, String) {
    let bad: Vec<&CheckRow> = rows.iter().filter(|r| !r.passed).collect();
    let mut kinds: Vec<(String, usize)> = Vec::new();
    for r in rows {
        match kinds.iter_mut().find(|(k, _)| *k == r.check) {
            Some(e) => e.1 += 1,
            None => kinds.push((r.check.clone(), 1)),
        }
    }
    let counts = kinds.iter().map(|(k, c)| format!("{c} {k}")).collect::<Vec<_>>().join(", ");
    if bad.is_empty() {
        (true, counts)
    } else {
        let first = bad.iter().take(2).map(|r| format!("{} {}: {}", r.check, r.subject, r.detail)).collect::<Vec<_>>();
        (false, format!("{} of {} rows fail; {}", bad.len(), rows.len(), first.join("; ")))
    }
}

// ---------------------------------------------------------------- 1 .. 7

fn c1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let m = random_m(&mut rng, n, 5);
        let k = rng.gen_range(1..=n);
        let b = from_m(&m);
        if b.mutate(k).map_err(err)?.mutate(k).map_err(err)? != b {
            bad.push(format!("involution {m:?} k={k}"));
        }
    }
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let m = random_m(&mut rng, n, 5);
        let k = rng.gen_range(1..=n);
        let lib = to_m(&from_m(&m).mutate(k).map_err(err)?);
        if lib != arrow_mutate(&m, k - 1) || lib != formula_mutate(&m, k - 1) {
            bad.push(format!("arrows {m:?} k={k}"));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "1000 involutions, 1000 arrow-oracle cases".into() } else { bad[0].clone() }))
}

fn c2() -> Outcome {
    let mut total = 0u64;
    let mut periodic = 0u64;
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut vals = vec![-2i64; pairs.len()];
        loop {
            let mut m = vec![vec![0; n]; n];
            for (&(i, j), &v) in pairs.iter().zip(&vals) {
                m[i][j] = v;
                m[j][i] = -v;
            }
            let b = from_m(&m);
            let lib = is_period1(&b);
            let direct = period1_oracle(&m);
            // first-row construction: palindrome b_1j = b_1,N+2-j and the rest forced
            let row: Vec<i64> = m[0][1..].to_vec();
            let palindrome = (0..row.len()).all(|t| row[t] == row[row.len() - 1 - t]);
            let fm = palindrome && {
                let big: Vec<BigInt> = row.iter().map(|&v| v.into()).collect();
                period1_from_row(&big).map_err(err)? == b
            };
            if lib != direct || lib != fm {
                return Ok((false, format!("disagree on {m:?}: library {lib}, direct {direct}, first-row {fm}")));
            }
            total += 1;
            periodic += lib as u64;
            // odometer over the upper triangle
            let mut p = 0;
            while p < vals.len() && vals[p] == 2 {
                vals[p] = -2;
                p += 1;
            }
            if p == vals.len() {
                break;
            }
            vals[p] += 1;
        }
    }
    Ok((true, format!("{total} matrices n<=5 |b|<=2, {periodic} period 1")))
}

fn c3() -> Outcome {
    // the theorem's quivers, transcribed: 1->2, 1->3, 2->3 each n; the
    // 2-2-2 oriented triangle 1->2->3->1; and their negatives
    let mut expected = BTreeSet::new();
    for n in 1..=3i64 {
        expected.insert(vec![vec![0, n, n], vec![-n, 0, n], vec![-n, -n, 0]]);
    }
    expected.insert(vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]);
    let expected: BTreeSet<M> = expected.iter().flat_map(|m| [m.clone(), neg(m)]).collect();
    let spec = Period2Spec::general(3, Shape::OneCycle, 2).map_err(err)?;
    let got: BTreeSet<M> = search_with_workers(&SearchJob::new(spec, 3).connected(), default_workers())
        .map_err(err)?
        .iter()
        .map(to_m)
        .collect();
    if got != expected {
        let extra: Vec<_> = got.difference(&expected).collect();
        let missing: Vec<_> = expected.difference(&got).collect();
        return Ok((false, format!("extra {extra:?}, missing {missing:?}")));
    }
    let two = Period2Spec::general(3, Shape::TwoCycle, 2).map_err(err)?;
    let two_found = search_with_workers(&SearchJob::new(two.clone(), 3).connected(), default_workers()).map_err(err)?;
    if !two_found.is_empty() {
        return Ok((false, format!("connected two-cycle solutions {}", two_found.len())));
    }
    let mut count = 0;
    for spec in [spec, two] {
        for a in -2..=2 {
            for b in -2..=2 {
                for c in -2..=2 {
                    let m = vec![vec![0, a, b], vec![-a, 0, c], vec![-b, -c, 0]];
                    let bm = from_m(&m);
                    let r = residual_is_zero(&bm, &spec).map_err(err)?;
                    let p = is_period2(&bm, &spec).map_err(err)?;
                    let d = period2_oracle(&m, spec.shape(), spec.k());
                    if r != p || p != d {
                        return Ok((false, format!("{m:?} {spec}: residual {r}, is_period2 {p}, direct {d}")));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok((true, format!("search bound 3 gives the {} displayed quivers; residual agrees on {count} matrices", expected.len())))
}

fn neg(m: &M) -> M {
    m.iter().map(|r| r.iter().map(|v| -v).collect()).collect()
}

fn theorem_check(theorem: Theorem, max_param: i64, bound: Option<u64>) -> Outcome {
    let rep = verify_theorem(theorem, max_param, bound, default_workers()).map_err(err)?;
    let insts: Vec<FamilyInstance> = theorem.families().into_iter().flat_map(|f| f.instances(max_param)).collect();
    let (n, bad) = instances_pass_oracle(&insts);
    let (ok, detail) = rows_summary(&rep.rows);
    if !bad.is_empty() {
        return Ok((false, format!("direct relabeling rejects {bad:?}")));
    }
    Ok((ok, format!("{detail}; {n} instances pass the direct check")))
}

fn c4() -> Outcome {
    theorem_check(Theorem::N4, 2, Some(2))
}

fn c5() -> Outcome {
    let (a, da) = theorem_check(Theorem::N5OneCycle, 3, None)?;
    let (b, db) = theorem_check(Theorem::N5Other, 3, None)?;
    Ok((a && b, format!("one-cycle: {da}. other: {db}")))
}

fn c6() -> Outcome {
    theorem_check(Theorem::N6, 3, Some(2))
}

fn c7() -> Outcome {
    let mut rows = Vec::new();
    for (t, max) in [(Theorem::N3, 3), (Theorem::N4, 2), (Theorem::N5OneCycle, 3), (Theorem::N5Other, 3), (Theorem::N6, 3)] {
        rows.extend(closed_form_rows(t, max).map_err(err)?);
    }
    Ok(rows_summary(&rows))
}

// ---------------------------------------------------------------- system text

/// An equation as (left factors, set of right monomials); a monomial is a
/// sorted list of (factor, exponent) with exponent-0 factors dropped.
type Eq = (Vec<String>, BTreeSet<Vec<(String, u64)>>);

fn parse_system(text: &str) -> Vec<Eq> {
    text.lines().map(parse_eq).collect()
}

fn parse_eq(line: &str) -> Eq {
    let line: String = line.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    let (lhs, rhs) = line.split_once('=').expect("equation");
    let mut l: Vec<String> = factors(lhs).into_iter().map(|(f, _)| f).collect();
    l.sort();
    let mut terms = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in rhs.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                terms.push(&rhs[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    terms.push(&rhs[start..]);
    let r = terms
        .into_iter()
        .map(|t| {
            let mut f: Vec<(String, u64)> = factors(t).into_iter().filter(|(n, e)| *e > 0 && n != "1").collect();
            f.sort();
            f
        })
        .collect();
    (l, r)
}

fn factors(s: &str) -> Vec<(String, u64)> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let start = i;
        if b[i] == b'(' || b[i].is_ascii_alphabetic() {
            if b[i].is_ascii_alphabetic() {
                i += 1;
            }
            let mut depth = 0;
            loop {
                match b[i] {
                    b'(' => depth += 1,
                    b')' => depth -= 1,
                    _ => {}
                }
                i += 1;
                if depth == 0 {
                    break;
                }
            }
        } else {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
        }
        let name = s[start..i].to_string();
        let mut e = 1;
        if i < b.len() && b[i] == b'^' {
            i += 1;
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            e = s[st..i].parse().unwrap();
        }
        out.push((name, e));
    }
    out
}

fn system_matches(key: &str, p: i64, kind: Kind, display: &str) -> Result<bool, String> {
    let f = FamilyDef::by_key(key).ok_or("family")?;
    let b = f.generate(&[p]).map_err(err)?;
    let sys = extract_system(&b, &f.spec(), kind).map_err(err)?;
    Ok(parse_system(&sys.text()) == parse_system(display))
}

// ---------------------------------------------------------------- orbits

fn q(v: i64) -> Rational {
    int(v)
}

fn powr(v: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= v;
    }
    acc
}

/// All q with f(q) and f(q+period) in range agree.
fn periodic_in(vals: &[Rational], period: usize) -> bool {
    vals.len() > period && (0..vals.len() - period).all(|i| vals[i] == vals[i + period])
}

struct OrbitData {
    z: Vec<Rational>,
    y: Vec<Rational>,
    a: Vec<Rational>,
    b: Vec<Rational>,
}

fn orbits(key: &str, p: i64, steps: usize) -> Result<Vec<OrbitData>, String> {
    Ok(random_orbits(key, &[p], SEED, 10, steps)
        .map_err(err)?
        .into_iter()
        .map(|o| {
            let t = o.t_sequences();
            let y = o.y_sequences();
            OrbitData { z: t.z().to_vec(), y: t.y().to_vec(), a: y.z().to_vec(), b: y.y().to_vec() }
        })
        .collect())
}

fn first_t(n: i64) -> String {
    format!("z(q)y(q+1) = z(q+1)^{n}y(q)^{n}+1\ny(q)z(q+3) = z(q+2)^{n}y(q+1)^{n}+1")
}

fn first_y(n: i64) -> String {
    format!("A(q)B(q+1) = (1+A(q+1))^{n}(1+B(q))^{n}\nB(q)A(q+3) = (1+A(q+2))^{n}(1+B(q+1))^{n}")
}

fn c8() -> Outcome {
    for n in 1..=3 {
        if !system_matches("n4-k2", n, Kind::T, &first_t(n))? || !system_matches("n4-k2", n, Kind::Y, &first_y(n))? {
            return Ok((false, format!("T or Y system differs at n={n}")));
        }
    }
    let mut notes = vec!["T and Y displays match for n=1..3".to_string()];
    let mut literal_fails = 0;
    let mut runs = 0;
    for n in [1i64, 2, 3] {
        let steps = horizon("n4-k2", n, 50);
        for o in orbits("n4-k2", n, steps)? {
            let c: Vec<Rational> = (0..o.y.len().min(o.z.len() - 1)).map(|i| &o.y[i] / &o.z[i + 1]).collect();
            let d: Vec<Rational> = (0..o.b.len().min(o.a.len() - 1)).map(|i| &o.a[i + 1] / &o.b[i]).collect();
            if !periodic_in(&c, 2) || !periodic_in(&d, 2) {
                return Ok((false, format!("C or D not period 2 at n={n}")));
            }
            // C(q+1) z(q+2) z(q) = C(q)^n z(q+1)^2n + 1
            let mut z = o.z[..2].to_vec();
            while z.len() < o.z.len() {
                let i = z.len() - 2;
                let v = powr(&c[i % 2], n) * powr(&z[i + 1], 2 * n) + q(1);
                z.push(v / (&c[(i + 1) % 2] * &z[i]));
            }
            if z != o.z {
                return Ok((false, format!("C reduction differs at n={n}")));
            }
            // the Y reduction holds with 1/D in place of D
            let dt = [q(1) / &d[0], q(1) / &d[1]];
            let ok = |dd: &[Rational; 2]| {
                (0..o.a.len() - 2).all(|i| {
                    &dd[(i + 1) % 2] * &o.a[i + 2] * &o.a[i]
                        == powr(&(q(1) + &o.a[i + 1]), n) * powr(&(q(1) + &dd[i % 2] * &o.a[i + 1]), n)
                })
            };
            if !ok(&dt) {
                return Ok((false, format!("Y reduction with 1/D differs at n={n}")));
            }
            literal_fails += !ok(&[d[0].clone(), d[1].clone()]) as usize;
            runs += 1;
            let t = SeqTrace::new(Kind::T, o.z.clone(), o.y.clone());
            let yt = SeqTrace::new(Kind::Y, o.a.clone(), o.b.clone());
            if !reduce_first_t(&t, n, o.z.len()).map_err(err)?.passed()
                || !reduce_first_y(&yt, n, o.a.len()).map_err(err)?.passed()
            {
                return Ok((false, format!("library reduction fails at n={n}")));
            }
        }
        notes.push(format!("n={n}: {steps} steps x 10 seeds"));
    }
    notes.push(format!("Y reduction holds with D(q) read as B(q)/A(q+1); as printed it fails on {literal_fails}/{runs} runs"));
    Ok((true, notes.join("; ")))
}

fn somos4_oracle(init: &[Rational], c: &Rational, p: i64, terms: usize) -> Vec<Rational> {
    let mut z = init[..4].to_vec();
    while z.len() < terms {
        let i = z.len() - 4;
        let v = &z[i + 1] * &z[i + 3] + c * powr(&z[i + 2], p);
        z.push(v / &z[i]);
    }
    z
}

fn somos5_oracle(init: &[Rational], c: &Rational, e: i64, terms: usize) -> Vec<Rational> {
    let mut y = init[..5].to_vec();
    while y.len() < terms {
        let i = y.len() - 5;
        let v = &y[i + 3] * &y[i + 2] + c * powr(&y[i + 1], e) * powr(&y[i + 4], e);
        y.push(v / &y[i]);
    }
    y
}

/// Iterates the full T-system until sequence `seq` has `terms` entries.
fn full_trace(fam: SomosFamily, p: i64, window: Option<SeqTrace<Rational>>, seq: usize, terms: usize) -> Result<SeqTrace<Rational>, String> {
    let sys = family_system(fam.family(), &[p], Kind::T).map_err(err)?;
    let need = sys.required_window();
    let w = window.unwrap_or_else(|| SeqTrace::new(Kind::T, vec![q(1); need[0]], vec![q(1); need[1]]));
    let mut t = iterate_system(&sys, &w, terms.saturating_sub(need[seq]), None).map_err(err)?;
    while t.seqs[seq].len() < terms {
        t = iterate_system(&sys, &t, 1, None).map_err(err)?;
    }
    Ok(t)
}

fn random_window(fam: SomosFamily, p: i64, rng: &mut ChaCha8Rng) -> Result<SeqTrace<Rational>, String> {
    let need = family_system(fam.family(), &[p], Kind::T).map_err(err)?.required_window();
    Ok(SeqTrace::new(
        Kind::T,
        (0..need[0]).map(|_| random_positive(rng, 5)).collect(),
        (0..need[1]).map(|_| random_positive(rng, 5)).collect(),
    ))
}

fn c9() -> Outcome {
    let display = |key: &str, p: i64| match key {
        "n5-k2c-left" => format!("z(q)y(q+1) = z(q+1)y(q)+z(q+2)^{p}\ny(q)z(q+4) = z(q+2)^{p}+z(q+3)y(q+1)"),
        _ => format!("z(q)y(q+2) = z(q+1)y(q+1)+z(q+2)^{p}\ny(q)z(q+3) = z(q+1)^{p}+z(q+2)y(q+1)"),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut notes = Vec::new();
    for (fam, yshift) in [(SomosFamily::S82, 0usize), (SomosFamily::S84, 1)] {
        let key = fam.family().key;
        for p in 1..=3 {
            if !system_matches(key, p, Kind::T, &display(key, p))? {
                return Ok((false, format!("{key} p={p}: T-system differs from the display")));
            }
            // all-ones at 30 terms; random windows where the numbers stay small
            let mut windows = vec![None];
            if p < 3 {
                for _ in 0..3 {
                    windows.push(Some(random_window(fam, p, &mut rng)?));
                }
            }
            for w in windows {
                let random = w.is_some();
                let need = family_system(fam.family(), &[p], Kind::T).map_err(err)?.required_window();
                let w = w.unwrap_or_else(|| SeqTrace::new(Kind::T, vec![q(1); need[0]], vec![q(1); need[1]]));
                let lib = somos_reduce(fam, p, Some(&w), 30).map_err(err)?;
                // the full system is rerun here only where it is cheap; at p=3
                // the recurrence below is checked against the library's full run
                let z = if p < 3 { full_trace(fam, p, Some(w.clone()), 0, 30)?.z()[..30].to_vec() } else { lib.full.clone() };
                if z.len() < 30 || z != lib.full {
                    return Ok((false, format!("{key} p={p} random={random}: full system differs")));
                }
                let c = (&z[0] + &z[3]) / &w.y()[yshift];
                let oracle = somos4_oracle(&z, &c, p, 30);
                if !lib.passed() || lib.terms() != 30 || lib.constants[0] != c || oracle != z || lib.reduced != oracle {
                    return Ok((false, format!("{key} p={p} random={random}: reduction differs")));
                }
                // only meaningful where the all-ones window seeds z(0..3)
                if p == 2 && !random && z[..4].iter().all(|v| v.is_one()) {
                    let ones = somos4_oracle(&[q(1), q(1), q(1), q(1)], &c, 2, 30);
                    if ones != z {
                        return Ok((false, format!("{key}: all-ones Somos-4 differs")));
                    }
                    notes.push(format!("{key} p=2 all-ones C={c}"));
                }
            }
        }
    }
    notes.push("30 terms for p in 1..3 from all-ones, plus 3 random windows for p<=2".into());
    Ok((true, notes.join("; ")))
}

fn c10() -> Outcome {
    let mut notes = Vec::new();
    for n in 0..=2i64 {
        let steps = horizon("n5-k3a-right", n, 50);
        for o in orbits("n5-k3a-right", n, steps)? {
            let (z, y) = (&o.z, &o.y);
            let m = (y.len() - 2).min(z.len() - 2);
            let c: Vec<Rational> = (0..m).map(|i| (&y[i] * &y[i + 2] + &y[i + 1]) / (&z[i + 1] * &z[i + 2])).collect();
            if !periodic_in(&c, 1) {
                return Ok((false, format!("C not constant at n={n}")));
            }
            // y(q+3)y(q) = C z(q+2)^2 y(q+1)^n y(q+2)^n + 1,  C z(q+2) z(q+1) = y(q)y(q+2) + y(q+1)
            let c = &c[0];
            let (mut zz, mut yy) = (z[..2].to_vec(), y[..3].to_vec());
            for i in 0.. {
                if zz.len() >= z.len() && yy.len() >= y.len() {
                    break;
                }
                let z2 = (&yy[i] * &yy[i + 2] + &yy[i + 1]) / (c * &zz[i + 1]);
                if zz.len() == i + 2 {
                    zz.push(z2);
                }
                let y3 = (c * powr(&zz[i + 2], 2) * powr(&yy[i + 1], n) * powr(&yy[i + 2], n) + q(1)) / &yy[i];
                yy.push(y3);
            }
            if zz[..z.len()] != z[..] || yy[..y.len()] != y[..] {
                return Ok((false, format!("half reduction differs at n={n}")));
            }
            let (a, b) = reduce_half(&SeqTrace::new(Kind::T, z.clone(), y.clone()), n, z.len().min(y.len())).map_err(err)?;
            if !a.passed() || !b.passed() {
                return Ok((false, format!("library half reduction fails at n={n}")));
            }
        }
        notes.push(format!("n={n}: {steps} steps x 10 seeds"));
    }
    Ok((true, notes.join("; ")))
}

fn c11() -> Outcome {
    let mut notes = Vec::new();
    for m in 1..=3i64 {
        if !system_matches(
            "n6-a",
            m,
            Kind::T,
            &format!("z(q)y(q+4) = z(q+1)^{m}y(q+2)+y(q)\ny(q)z(q+2) = z(q+1)^{m}y(q+2)+y(q+4)"),
        )? {
            return Ok((false, format!("n6-a m={m}: T-system differs from the display")));
        }
        let steps = horizon("n6-a", m, 50);
        let mut literal_fails = 0;
        for o in orbits("n6-a", m, steps)? {
            let (z, y) = (&o.z, &o.y);
            let k = z.len().min(y.len() - 2);
            let c: Vec<Rational> = (0..k).map(|i| (&z[i] + q(1)) / (&y[i + 2] * &y[i])).collect();
            if !periodic_in(&c, 2) {
                return Ok((false, format!("C not period 2 at m={m}")));
            }
            // C(q) y(q+4)y(q+2)y(q) = (C(q+1)y(q+3)y(q+1) - 1)^m y(q+2) + y(q+4) + y(q)
            let holds = |with_factor: bool| {
                (0..y.len() - 4).all(|i| {
                    let w = powr(&(&c[(i + 1) % 2] * &y[i + 3] * &y[i + 1] - q(1)), m);
                    let w = if with_factor { w * &y[i + 2] } else { w };
                    &c[i % 2] * &y[i + 4] * &y[i + 2] * &y[i] == w + &y[i + 4] + &y[i]
                })
            };
            if !holds(true) || !reduce_period_two(&SeqTrace::new(Kind::T, z.clone(), y.clone()), m, y.len()).map_err(err)?.passed() {
                return Ok((false, format!("period-2 reduction differs at m={m}")));
            }
            literal_fails += !holds(false) as usize;
        }
        notes.push(format!("m={m}: {steps} steps x 10 seeds (printed reduction without y(q+2) fails {literal_fails}/10)"));
    }
    for n in 1..=3i64 {
        if !system_matches(
            "n6-b-left",
            n,
            Kind::T,
            &format!(
                "z(q)y(q+4) = z(q+1)y(q+2)+y(q)^{n}y(q+3)^{}\ny(q)z(q+2) = z(q+1)y(q+2)+y(q+1)^{}y(q+4)^{n}",
                n - 1,
                n - 1
            ),
        )? {
            return Ok((false, format!("n6-b-left n={n}: T-system differs from the display")));
        }
        let steps = horizon("n6-b-left", n, 50);
        for o in orbits("n6-b-left", n, steps)? {
            let (z, y) = (&o.z, &o.y);
            let k = (y.len() - 4).min(z.len() - 1);
            let c: Vec<Rational> = (0..k).map(|i| (&y[i] * &y[i + 1] + &y[i + 3] * &y[i + 4]) / &z[i + 1]).collect();
            if !periodic_in(&c, 1) {
                return Ok((false, format!("C not constant at n={n}")));
            }
        }
        notes.push(format!("n={n}: {steps} steps x 10 seeds"));
    }
    // Somos-5 at n=2, 30 terms
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut windows = vec![None];
    for _ in 0..3 {
        windows.push(Some(random_window(SomosFamily::S86, 2, &mut rng)?));
    }
    for w in windows {
        let lib = somos_reduce(SomosFamily::S86, 2, w.as_ref(), 30).map_err(err)?;
        let full = full_trace(SomosFamily::S86, 2, w, 1, 30)?;
        let (z, y) = (full.z(), full.y());
        let c = (&y[0] * &y[1] + &y[3] * &y[4]) / &z[1];
        let oracle = somos5_oracle(y, &c, 1, 30);
        if !lib.passed() || lib.terms() != 30 || lib.constants[0] != c || oracle[..] != y[..30] {
            return Ok((false, "Somos-5 reduction differs".into()));
        }
    }
    notes.push("Somos-5 at n=2: 30 terms, all-ones and 3 random windows".into());
    Ok((true, notes.join("; ")))
}

fn c12() -> Outcome {
    let rows = laurent_rows(2, 6).map_err(err)?;
    let (ok, detail) = rows_summary(&rows);
    Ok((ok, format!("depth 6, {} instances (params <= 2): {detail}", regression_set(2).len())))
}

// ---------------------------------------------------------------- T_Z

/// Y-system of the first quiver checked on Ā(q) = z(q+1)^n y(q)^n,
/// B̄(q) = z(q+2)^n y(q+1)^n; the first q where it fails.
fn y_substitution_failure(z: &[Rational], y: &[Rational], n: i64) -> Option<usize> {
    let a = |i: usize| powr(&z[i + 1], n) * powr(&y[i], n);
    let b = |i: usize| powr(&z[i + 2], n) * powr(&y[i + 1], n);
    let last = (z.len() - 3).min(y.len() - 2);
    (0..last).find(|&i| {
        let first = a(i) * b(i + 1) != powr(&(q(1) + a(i + 1)), n) * powr(&(q(1) + b(i)), n);
        let second = i + 4 < z.len()
            && i + 3 < y.len()
            && b(i) * a(i + 3) != powr(&(q(1) + a(i + 2)), n) * powr(&(q(1) + b(i + 1)), n);
        first || second
    })
}

fn c13() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pos = |k: usize| -> Vec<Rational> { (0..k).map(|_| random_positive(&mut rng, 5)).collect() };
    let mut notes = Vec::new();
    for n in [1i64, 2] {
        let f = FamilyDef::by_key("n4-k2").ok_or("family")?;
        let b = f.generate(&[n]).map_err(err)?;
        let t = extract_system(&b, &f.spec(), Kind::T).map_err(err)?;
        let ysys = extract_system(&b, &f.spec(), Kind::Y).map_err(err)?;
        let tz = t.with_kind(Kind::Tz);
        let w = t.required_window();
        // unconstrained Z at n = 2 grows too fast for longer runs
        let steps = if n == 1 { 10 } else { 6 };
        let mut first_break = 0;
        for _ in 0..5 {
            let init = SeqTrace::new(Kind::T, pos(w[0]), pos(w[1]));
            let plain = iterate_system(&t, &init, steps, None).map_err(err)?;
            let ones = [vec![q(1); steps + 8], vec![q(1); steps + 8]];
            let unit = iterate_system(&tz, &init, steps, Some(&ones)).map_err(err)?;
            if plain.seqs != unit.seqs {
                return Ok((false, format!("Z = 1 differs from T at n={n}")));
            }
            // Z_z(q+1) = Z_y(q) keeps C(q) = y(q)/z(q+1) period 2
            let zy = pos(steps + 8);
            let mut zz = pos(1);
            zz.extend(zy.iter().cloned());
            let x = iterate_system(&tz, &init, steps, Some(&[zz, zy])).map_err(err)?;
            let c: Vec<Rational> = (0..x.y().len().min(x.z().len() - 1)).map(|i| &x.y()[i] / &x.z()[i + 1]).collect();
            if !periodic_in(&c, 2) {
                return Ok((false, format!("C not period 2 under the constraint at n={n}")));
            }
            // Z_z(q+1)^n Z_y(q)^n = 1 makes Ā, B̄ a Y-system solution
            let zy = pos(steps + 8);
            let mut zz = pos(1);
            zz.extend(zy.iter().map(|v| q(1) / v));
            let good = iterate_system(&tz, &init, steps, Some(&[zz.clone(), zy.clone()])).map_err(err)?;
            if let Some(i) = y_substitution_failure(good.z(), good.y(), n) {
                return Ok((false, format!("substitution fails at q={i} with the condition, n={n}")));
            }
            let (_, rep) = tz_substitution(&t, &ysys, &init, &[zz, zy], steps).map_err(err)?;
            if !rep.condition_holds || !rep.substitution_solves() {
                return Ok((false, format!("library substitution check fails at n={n}")));
            }
            // random Z violates it and breaks the substitution
            let bad = [pos(steps + 8), pos(steps + 8)];
            let x = iterate_system(&tz, &init, steps, Some(&bad)).map_err(err)?;
            match y_substitution_failure(x.z(), x.y(), n) {
                Some(i) if i <= 10 => first_break = first_break.max(i),
                _ => return Ok((false, format!("violating Z did not break the substitution at n={n}"))),
            }
            let (_, rep) = tz_substitution(&t, &ysys, &init, &bad, steps).map_err(err)?;
            if rep.condition_holds || rep.substitution_failure.is_none() {
                return Ok((false, format!("library missed the violation at n={n}")));
            }
        }
        notes.push(format!("n={n}: {steps} steps x 5 seeds, violations break by q={first_break}"));
    }
    Ok((true, notes.join("; ")))
}
