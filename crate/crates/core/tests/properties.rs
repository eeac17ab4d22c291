use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use quiverperiod::cluster::{mutate_seed, mutate_y, Seed};
use quiverperiod::io::{parse_quiver, parse_seed, quiver_to_json, seed_to_json};
use quiverperiod::{is_period2, ExchangeMatrix, Period2Spec, Permutation, Rational};

fn matrix(n: usize, vals: &[i64]) -> ExchangeMatrix {
    let mut rows = vec![vec![BigInt::zero(); n]; n];
    let mut it = vals.iter().cycle();
    for i in 0..n {
        for j in i + 1..n {
            let v = BigInt::from(*it.next().unwrap());
            rows[j][i] = -v.clone();
            rows[i][j] = v;
        }
    }
    ExchangeMatrix::from_rows(rows).unwrap()
}

fn arb_matrix(max_n: usize, bound: i64) -> impl Strategy<Value = ExchangeMatrix> {
    (1..=max_n, prop::collection::vec(-bound..=bound, 1..=max_n * max_n)).prop_map(|(n, v)| matrix(n, &v))
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (1i64..50, 1i64..50).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn arb_seed(max_n: usize) -> impl Strategy<Value = Seed<Rational>> {
    arb_matrix(max_n, 3).prop_flat_map(|b| {
        let n = b.n();
        (
            Just(b),
            prop::collection::vec(arb_rational(), n),
            prop::collection::vec(arb_rational(), n),
        )
            .prop_map(|(b, x, y)| Seed::new(b, x, Some(y)).unwrap())
    })
}

fn is_skew(b: &ExchangeMatrix) -> bool {
    let n = b.n();
    (1..=n).all(|i| (1..=n).all(|j| *b.get(i, j) == -b.get(j, i)))
}

proptest! {
    #[test]
    fn mutation_is_an_involution(b in arb_matrix(8, 5), k in 1usize..=8) {
        let k = (k - 1) % b.n() + 1;
        prop_assert_eq!(b.mutate(k).unwrap().mutate(k).unwrap(), b);
    }

    #[test]
    fn mutation_keeps_skew_symmetry(b in arb_matrix(8, 5), ks in prop::collection::vec(1usize..=8, 1..6)) {
        let mut m = b.clone();
        for k in ks {
            m = m.mutate((k - 1) % b.n() + 1).unwrap();
            prop_assert!(is_skew(&m));
        }
    }

    #[test]
    fn permutations_act_as_a_group(
        (b, s, t) in arb_matrix(7, 4).prop_flat_map(|b| { let n = b.n(); (Just(b), arb_perm(n), arb_perm(n)) })
    ) {
        let two_step = b.permute(&s).unwrap().permute(&t).unwrap();
        prop_assert_eq!(two_step, b.permute(&t.compose(&s).unwrap()).unwrap());
        prop_assert_eq!(b.permute(&s).unwrap().permute(&s.inverse()).unwrap(), b.clone());
        prop_assert_eq!(b.permute(&Permutation::identity(b.n())).unwrap(), b);
    }

    #[test]
    fn mutation_commutes_with_relabelling(
        (b, s, k) in arb_matrix(7, 4).prop_flat_map(|b| { let n = b.n(); (Just(b), arb_perm(n), 1..=n) })
    ) {
        let lhs = b.mutate(k).unwrap().permute(&s).unwrap();
        let rhs = b.permute(&s).unwrap().mutate(s.apply(k)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn period2_predicate_matches_direct_evaluation(b in arb_matrix(6, 2), shape in 0usize..2, k in 2usize..=6) {
        let n = b.n();
        prop_assume!(n >= 3);
        let shape = if shape == 0 { quiverperiod::period::Shape::OneCycle } else { quiverperiod::period::Shape::TwoCycle };
        let k = 2 + (k - 2) % (n - 1);
        let spec = Period2Spec::general(n, shape, k).unwrap();
        let direct = b.mutate(1).unwrap().mutate(k).unwrap().permute(&spec.sigma()).unwrap() == b;
        prop_assert_eq!(is_period2(&b, &spec).unwrap(), direct);
    }

    #[test]
    fn seed_mutation_is_an_involution(s in arb_seed(6), k in 1usize..=6) {
        let k = (k - 1) % s.n() + 1;
        let back = mutate_seed(&mutate_seed(&s, k).unwrap(), k).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn y_mutation_keeps_positivity(s in arb_seed(4), ks in prop::collection::vec(1usize..=4, 1..5)) {
        let mut b = s.b.clone();
        let mut y = s.y.clone().unwrap();
        for k in ks {
            let k = (k - 1) % b.n() + 1;
            y = mutate_y(&b, &y, k).unwrap();
            b = b.mutate(k).unwrap();
            prop_assert!(y.iter().all(|v| *v > Rational::zero()));
        }
    }

    #[test]
    fn exchange_relation_holds(s in arb_seed(6), k in 1usize..=6) {
        let k = (k - 1) % s.n() + 1;
        let m = mutate_seed(&s, k).unwrap();
        let n = s.n();
        let (mut plus, mut minus) = (Rational::one(), Rational::one());
        for i in 1..=n {
            let e = s.b.get(i, k).clone();
            let e: i32 = (&e).try_into().unwrap();
            if e > 0 {
                plus *= s.x[i - 1].pow(e);
            } else if e < 0 {
                minus *= s.x[i - 1].pow(-e);
            }
        }
        prop_assert_eq!(&s.x[k - 1] * &m.x[k - 1], plus + minus);
        for i in (1..=n).filter(|&i| i != k) {
            prop_assert_eq!(&m.x[i - 1], &s.x[i - 1]);
        }
    }

    #[test]
    fn quiver_files_round_trip(b in arb_matrix(8, 1000)) {
        prop_assert_eq!(parse_quiver(&quiver_to_json(&b)).unwrap(), b);
    }

    #[test]
    fn seed_files_round_trip(s in arb_seed(6)) {
        prop_assert_eq!(parse_seed(&seed_to_json(&s)).unwrap(), s);
    }
}
