use quiverperiod::cluster::Seed;
use quiverperiod::families::{regression_set, FamilyDef};
use quiverperiod::orbit::run_orbit;
use quiverperiod::rational::{int, random_positive, Rational};
use quiverperiod::systems::reduce::{reduce_first_t, reduce_first_y, reduce_first_y_literal, reduce_half, reduce_period_two, reduce_period_two_literal};
use quiverperiod::systems::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fam(key: &str, p: &[i64]) -> (quiverperiod::ExchangeMatrix, quiverperiod::Period2Spec) {
    let f = FamilyDef::by_key(key).unwrap();
    (f.generate(p).unwrap(), f.spec())
}

fn orbit(key: &str, p: &[i64], seed: u64, periods: usize) -> quiverperiod::OrbitTrace<Rational> {
    let (b, spec) = fam(key, p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = b.n();
    let x = (0..n).map(|_| random_positive(&mut rng, 9)).collect();
    let y = (0..n).map(|_| random_positive(&mut rng, 9)).collect();
    let s = Seed::new(b, x, Some(y)).unwrap();
    run_orbit(&s, &spec, 2 * periods - 1).unwrap()
}

#[test]
fn worked_example_systems() {
    let (b, spec) = fam("n5-k2c-left", &[2]);
    let t = extract_system(&b, &spec, Kind::T).unwrap();
    assert_eq!(t.text(), "z(q)*y(q+1) = z(q+1)*y(q) + z(q+2)^2\ny(q)*z(q+4) = z(q+3)*y(q+1) + z(q+2)^2");
    let (b, spec) = fam("n5-k3a-right", &[2]);
    let t = extract_system(&b, &spec, Kind::T).unwrap();
    assert_eq!(
        t.text(),
        "z(q)*y(q+2) = z(q+1)*y(q)^2*y(q+1)^3 + z(q+2)\ny(q)*z(q+3) = z(q+2)*y(q+1)^3*y(q+2)^2 + z(q+1)"
    );
    let (b, spec) = fam("n5-k3d-right", &[3]);
    let t = extract_system(&b, &spec, Kind::T).unwrap();
    assert_eq!(t.text(), "z(q)*y(q+2) = z(q+2)^3 + z(q+1)*y(q+1)\ny(q)*z(q+3) = z(q+1)^3 + z(q+2)*y(q+1)");
    let (b, spec) = fam("n6-a", &[2]);
    let t = extract_system(&b, &spec, Kind::T).unwrap();
    assert_eq!(t.text(), "z(q)*y(q+4) = y(q) + z(q+1)^2*y(q+2)\ny(q)*z(q+2) = y(q+4) + z(q+1)^2*y(q+2)");
    let (b, spec) = fam("n6-b-left", &[3]);
    let t = extract_system(&b, &spec, Kind::T).unwrap();
    assert_eq!(t.text(), "z(q)*y(q+4) = y(q)^3*y(q+3)^2 + z(q+1)*y(q+2)\ny(q)*z(q+2) = y(q+1)^2*y(q+4)^3 + z(q+1)*y(q+2)");
}

#[test]
fn closed_form_matches_tabulation() {
    for inst in regression_set(2) {
        for kind in [Kind::T, Kind::Y] {
            let closed = extract_system(&inst.matrix, &inst.spec(), kind).unwrap();
            let tab = tabulate_system(&inst.matrix, &inst.spec(), kind).unwrap();
            assert_eq!(closed, tab, "{} {kind}", inst.label());
        }
    }
}

#[test]
fn iteration_matches_orbit() {
    for inst in regression_set(1) {
        let spec = inst.spec();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = spec.n();
        let x = (0..n).map(|_| int(rng.gen_range(1..=3))).collect();
        let y = (0..n).map(|_| random_positive(&mut rng, 3)).collect();
        let s = Seed::new(inst.matrix.clone(), x, Some(y)).unwrap();
        let tr = run_orbit(&s, &spec, 2 * (n + 4) - 1).unwrap();
        for (kind, full) in [(Kind::T, tr.t_sequences()), (Kind::Y, tr.y_sequences())] {
            let sys = extract_system(&inst.matrix, &spec, kind).unwrap();
            let w = window_of(&full, &sys).unwrap();
            let it = iterate_system(&sys, &w, 5, None).unwrap();
            let m = full.z().len().min(it.z().len());
            assert_eq!(&it.z()[..m], &full.z()[..m], "{} {kind}", inst.label());
            let m = full.y().len().min(it.y().len());
            assert_eq!(&it.y()[..m], &full.y()[..m], "{} {kind}", inst.label());
        }
    }
}

#[test]
fn first_quiver_reductions() {
    for n in [1, 2] {
        let tr = orbit("n4-k2", &[n], 11, 8);
        let r = reduce_first_t(&tr.t_sequences(), n, 8).unwrap();
        assert!(r.passed(), "{r} {:?}", tr.t_sequences().z());
        assert!(reduce_first_y(&tr.y_sequences(), n, 8).unwrap().passed());
        assert!(!reduce_first_y_literal(&tr.y_sequences(), n, 8).unwrap().passed());
        for name in ["s81-t"] {
            let r = verify_periodic(&tr.t_sequences(), &builtin(name).unwrap(), 5).unwrap();
            assert!(r.passed, "{r}");
        }
        let r = verify_periodic(&tr.y_sequences(), &builtin("s81-y").unwrap(), 5).unwrap();
        assert!(r.passed, "{r}");
    }
}

#[test]
fn half_and_period_two_reductions() {
    for n in [0, 1, 2] {
        let tr = orbit("n5-k3a-right", &[n], 3, 8);
        let r = verify_periodic(&tr.t_sequences(), &builtin("s83").unwrap(), 4).unwrap();
        assert!(r.passed, "{r}");
        let (a, b) = reduce_half(&tr.t_sequences(), n, 7).unwrap();
        assert!(a.passed() && b.passed(), "{a} {b}");
    }
    for m in [1, 2] {
        let tr = orbit("n6-a", &[m], 5, 9);
        let r = verify_periodic(&tr.t_sequences(), &builtin("s85").unwrap(), 3).unwrap();
        assert!(r.passed, "{r}");
        assert!(reduce_period_two(&tr.t_sequences(), m, 8).unwrap().passed());
        assert!(!reduce_period_two_literal(&tr.t_sequences(), m, 8).unwrap().passed());
    }
}

#[test]
fn somos_all_ones() {
    let r = somos_reduce(SomosFamily::S82, 2, None, 14).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.constants, vec![int(2)]);
    let head: Vec<Rational> = [1, 1, 1, 1, 3, 5, 23, 119, 551, 8199].iter().map(|&v| int(v)).collect();
    assert_eq!(&r.reduced[..10], &head[..]);
    let r = somos_reduce(SomosFamily::S86, 2, None, 14).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.constants, vec![int(3)]);
    for fam in SomosFamily::ALL {
        for p in 1..=3 {
            if fam == SomosFamily::S86 && p == 1 {
                continue;
            }
            let r = somos_reduce(fam, p, None, 12).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn template_search_rediscovers() {
    let (b, spec) = fam("n4-k2", &[1]);
    let sys = extract_system(&b, &spec, Kind::T).unwrap();
    let tr = orbit("n4-k2", &[1], 2, 16);
    let found = template_search(&sys, &tr.t_sequences(), &TemplateSearch { shift_bound: 2, ..Default::default() }).unwrap();
    let names: Vec<String> = found.iter().map(|f| format!("{} {}", f.template.name, f.template.period)).collect();
    assert!(names.iter().any(|n| n == "z(q+1)/y(q) period 2"), "{names:?}");

    let (b, spec) = fam("n6-b-left", &[2]);
    let sys = extract_system(&b, &spec, Kind::T).unwrap();
    let init = SeqTrace::new(Kind::T, vec![int(1); 2], vec![int(1); 4]);
    let full = iterate_system(&sys, &init, 24, None).unwrap();
    let found = template_search(&sys, &full, &TemplateSearch::default()).unwrap();
    let names: Vec<String> = found.iter().map(|f| format!("{} {}", f.template.name, f.template.period)).collect();
    assert!(names.iter().any(|n| n == "(y(q)*y(q+1) + y(q+3)*y(q+4))/z(q+1) constant"), "{names:?}");
}

fn first_quiver_systems(n: i64) -> (SystemSpec, SystemSpec) {
    let (b, spec) = fam("n4-k2", &[n]);
    (extract_system(&b, &spec, Kind::T).unwrap(), extract_system(&b, &spec, Kind::Y).unwrap())
}

fn positive(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
    (0..k).map(|_| random_positive(rng, 5)).collect()
}

#[test]
fn tz_with_unit_z_is_t() {
    let (t, _) = first_quiver_systems(2);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let w = t.required_window();
    let init = SeqTrace::new(Kind::T, positive(&mut rng, w[0]), positive(&mut rng, w[1]));
    let plain = iterate_system(&t, &init, 6, None).unwrap();
    let ones = [vec![int(1); 10], vec![int(1); 10]];
    let tz = iterate_system(&t.with_kind(Kind::Tz), &init, 6, Some(&ones)).unwrap();
    assert_eq!(plain, SeqTrace { kind: Kind::T, ..tz });
}

#[test]
fn tz_shifted_z_keeps_ratio_periodic() {
    let (t, _) = first_quiver_systems(1);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let zy = positive(&mut rng, 10);
    let mut zz = vec![random_positive(&mut rng, 5)];
    zz.extend(zy.iter().cloned());
    let w = t.required_window();
    let init = SeqTrace::new(Kind::T, positive(&mut rng, w[0]), positive(&mut rng, w[1]));
    let x = iterate_system(&t.with_kind(Kind::Tz), &init, 8, Some(&[zz, zy])).unwrap();
    let r = verify_periodic(&x, &builtin("s81-t").unwrap(), 5).unwrap();
    assert!(r.passed, "{r}");
}

#[test]
fn tz_substitution_needs_the_condition() {
    for n in [1, 2] {
        let (t, y) = first_quiver_systems(n);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = t.required_window();
        let init = SeqTrace::new(Kind::T, positive(&mut rng, w[0]), positive(&mut rng, w[1]));

        let zy = positive(&mut rng, 12);
        let mut zz = vec![random_positive(&mut rng, 5)];
        zz.extend(zy.iter().map(|v| int(1) / v));
        let good = [zz, zy];
        assert!(check_tz_condition(&good, &t).unwrap());
        let (_, rep) = tz_substitution(&t, &y, &init, &good, 6).unwrap();
        assert!(rep.condition_holds && rep.substitution_solves(), "{rep:?}");

        let bad = [positive(&mut rng, 12), positive(&mut rng, 12)];
        assert!(!check_tz_condition(&bad, &t).unwrap());
        let (_, rep) = tz_substitution(&t, &y, &init, &bad, 6).unwrap();
        assert!(!rep.condition_holds && rep.substitution_failure.is_some(), "{rep:?}");
    }
}

#[test]
fn y_systems_stay_positive() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for inst in regression_set(1) {
        let sys = extract_system(&inst.matrix, &inst.spec(), Kind::Y).unwrap();
        let w = sys.required_window();
        let init = SeqTrace::new(Kind::Y, positive(&mut rng, w[0]), positive(&mut rng, w[1]));
        let out = iterate_system(&sys, &init, 4, None).unwrap();
        assert!(out.seqs.iter().flatten().all(|v| *v > int(0)), "{}", inst.label());
    }
}
