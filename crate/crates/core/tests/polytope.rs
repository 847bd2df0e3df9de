use std::collections::BTreeSet;

use border_basis::{
    enumerate_admissible, is_admissible, optimize, order_ideal_of_point, point_of_order_ideal,
    prepare, separation_oracle, Monomial, OrderIdeal, Preference, Prepared, SolveOptions,
    Violation,
};
use border_basis_oracles::{random_known_system, random_weights, KnownSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn systems(seed: u64, count: usize) -> Vec<(KnownSystem, Prepared)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let sys = random_known_system(&mut rng);
            let prep = prepare(&sys.generators, None).unwrap();
            (sys, prep)
        })
        .collect()
}

fn as_set(o: &OrderIdeal) -> BTreeSet<Monomial> {
    o.iter().cloned().collect()
}

#[test]
fn enumeration_matches_brute_force() {
    for (sys, prep) in systems(11, 30) {
        assert_eq!(prep.dimension(), sys.dimension);
        let inst = prep.instance();
        assert_eq!(inst.universe(), sys.universe().as_slice());
        let found: Vec<BTreeSet<Monomial>> =
            enumerate_admissible(inst).iter().map(as_set).collect();
        let expected: Vec<BTreeSet<Monomial>> = sys
            .brute_force_admissible()
            .into_iter()
            .map(|o| o.into_iter().collect())
            .collect();
        assert_eq!(found, expected, "system {:?}", sys.generators);
    }
}

#[test]
fn optimum_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (sys, prep) in systems(13, 20) {
        let inst = prep.instance();
        let all = sys.brute_force_admissible();
        for _ in 0..10 {
            let c = Preference::from_weights(random_weights(&mut rng, inst.universe()));
            let scores: Vec<i64> = all.iter().map(|o| c.score(o)).collect();
            let best = *scores.iter().max().unwrap();
            let first = scores.iter().position(|&s| s == best).unwrap();
            for threads in [1, 3] {
                let (z, score) = optimize(inst, &c, &SolveOptions { threads }).unwrap();
                assert_eq!(score, best);
                let o = order_ideal_of_point(&z, inst.arity()).unwrap();
                assert_eq!(as_set(&o), all[first].iter().cloned().collect());
            }
        }
    }
}

#[test]
fn points_and_order_ideals_correspond() {
    for (_, prep) in systems(14, 15) {
        let inst = prep.instance();
        for o in enumerate_admissible(inst) {
            let z = point_of_order_ideal(&o, inst.universe()).unwrap();
            assert_eq!(order_ideal_of_point(&z, inst.arity()).unwrap(), o);
            assert!(o.contains(&Monomial::one(inst.arity())));
            assert_eq!(o.len(), inst.target());
            assert!(is_admissible(&o, inst).unwrap());
            assert_eq!(separation_oracle(&z.to_f64(), inst).unwrap(), None);
        }
    }
}

#[test]
fn separation_rejects_every_other_subset() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for (sys, prep) in systems(16, 15) {
        let inst = prep.instance();
        let l = inst.universe();
        for _ in 0..40 {
            let z: Vec<f64> = (0..l.len())
                .map(|_| if rng.gen_bool(0.5) { 1.0 } else { 0.0 })
                .collect();
            let chosen: Vec<Monomial> = l
                .iter()
                .zip(&z)
                .filter(|(_, &v)| v == 1.0)
                .map(|(m, _)| m.clone())
                .collect();
            let verdict = separation_oracle(&z, inst).unwrap();
            assert_eq!(verdict.is_none(), sys.is_admissible(&chosen));
            match verdict {
                Some(Violation::Cardinality { target, .. }) => {
                    assert_eq!(target, sys.dimension);
                    assert_ne!(chosen.len(), sys.dimension);
                }
                Some(Violation::Independence {
                    circuit,
                    complement,
                    lhs,
                    rhs,
                }) => {
                    assert!(inst.quotient_rank(&circuit).unwrap() < circuit.len());
                    assert_eq!(inst.independence_rhs(&complement).unwrap(), rhs);
                    assert!(lhs < rhs as f64);
                }
                Some(Violation::DownClosure { divisor, multiple }) => {
                    assert!(divisor.divides(&multiple).unwrap());
                    assert!(chosen.contains(&multiple) && !chosen.contains(&divisor));
                }
                Some(Violation::OutOfBounds { .. }) => panic!("0/1 point out of bounds"),
                None => {}
            }
        }
    }
}

#[test]
fn out_of_range_coordinates_are_caught() {
    let (_, prep) = systems(17, 1).pop().unwrap();
    let inst = prep.instance();
    let mut z = vec![0.0; inst.universe().len()];
    z[0] = 1.5;
    assert!(matches!(
        separation_oracle(&z, inst).unwrap(),
        Some(Violation::OutOfBounds { .. })
    ));
    assert!(separation_oracle(&z[1..], inst).is_err());
}

#[test]
fn quotient_rank_and_matrix_rank_agree() {
    // dim <S ∪ M>/<M> = |S| + rk(M restricted to L \ S) - rk M, so a
    // d-set is independent modulo M exactly when the complement inequality
    // is tight at zero.
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for (_, prep) in systems(19, 20) {
        let inst = prep.instance();
        let l = inst.universe();
        let m = inst.canonical().row_count() as i64;
        for _ in 0..30 {
            let mask: Vec<bool> = (0..l.len()).map(|_| rng.gen_bool(0.4)).collect();
            let s: Vec<Monomial> = (0..l.len())
                .filter(|&i| mask[i])
                .map(|i| l[i].clone())
                .collect();
            let u: Vec<Monomial> = (0..l.len())
                .filter(|&i| !mask[i])
                .map(|i| l[i].clone())
                .collect();
            let rk_u = u.len() as i64 - inst.independence_rhs(&u).unwrap();
            assert_eq!(
                inst.quotient_rank(&s).unwrap() as i64,
                s.len() as i64 + rk_u - m
            );
            if s.len() == inst.target() {
                assert_eq!(
                    inst.quotient_rank(&s).unwrap() == s.len(),
                    inst.independence_rhs(&u).unwrap() == 0
                );
            }
        }
    }
}
