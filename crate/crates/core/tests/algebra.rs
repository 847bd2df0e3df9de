use std::collections::BTreeSet;

use border_basis::{
    is_order_ideal, parse_polynomial, Field, Monomial, MonomialOrder, OrderIdeal, OrderingKind,
    Polynomial, TermOrdering,
};
use proptest::prelude::*;

const N: usize = 3;

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u16..4, N).prop_map(Monomial::new)
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(), -6i64..=6, 1i64..=4), 0..6).prop_map(|terms| {
        Polynomial::from_terms(
            N,
            Field::Rational,
            terms.into_iter().map(|(m, a, b)| {
                let c = Field::Rational.from_ratio(&a.into(), &b.into()).unwrap();
                (m, c)
            }),
        )
        .unwrap()
    })
}

fn ordering() -> impl Strategy<Value = TermOrdering> {
    (
        prop_oneof![
            Just(OrderingKind::DegRevLex),
            Just(OrderingKind::DegLex),
            Just(OrderingKind::Lex)
        ],
        Just((0..N).collect::<Vec<_>>()).prop_shuffle(),
    )
        .prop_map(|(k, p)| TermOrdering::new(k, p).unwrap())
}

fn down_close(gens: &[Monomial]) -> OrderIdeal {
    let mut set = BTreeSet::new();
    let mut stack: Vec<Monomial> = gens.to_vec();
    while let Some(m) = stack.pop() {
        if set.insert(m.clone()) {
            stack.extend(m.immediate_divisors());
        }
    }
    OrderIdeal::new(N, set).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn divisibility_is_transitive(a in monomial(), b in monomial(), c in monomial()) {
        if a.divides(&b).unwrap() && b.divides(&c).unwrap() {
            prop_assert!(a.divides(&c).unwrap());
        }
        prop_assert!(a.divides(&a.mul(&b)).unwrap());
    }

    #[test]
    fn border_is_disjoint_and_closes(gens in prop::collection::vec(monomial(), 0..4)) {
        let o = down_close(&gens);
        let border = o.border();
        prop_assert!(border.iter().all(|b| !o.contains(b)));
        let union: Vec<Monomial> = o.iter().cloned().chain(border.iter().cloned()).collect();
        prop_assert!(is_order_ideal(&union));
        for b in &border {
            prop_assert!(b.immediate_divisors().any(|t| o.contains(&t)) || o.is_empty());
        }
    }

    #[test]
    fn leading_terms_are_multiplicative(p in polynomial(), s in monomial(), ord in ordering()) {
        prop_assume!(!p.is_zero());
        let lt = p.leading_term(&ord).unwrap();
        prop_assert_eq!(p.mul_monomial(&s).leading_term(&ord).unwrap(), lt.mul(&s));
        for t in p.support() {
            prop_assert_ne!(ord.compare(t, &lt), std::cmp::Ordering::Greater);
        }
    }

    #[test]
    fn ring_axioms(a in polynomial(), b in polynomial(), c in polynomial()) {
        let ab = a.try_add(&b).unwrap();
        prop_assert_eq!(&ab, &b.try_add(&a).unwrap());
        prop_assert_eq!(ab.try_add(&c).unwrap(), a.try_add(&b.try_add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(
            a.try_mul(&b.try_add(&c).unwrap()).unwrap(),
            a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.try_mul(&b).unwrap().try_mul(&c).unwrap(),
            a.try_mul(&b.try_mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
        let three = Field::Rational.from_i64(3);
        let third = three.inv().unwrap();
        prop_assert_eq!(a.scale(&three).scale(&third), a.clone());
        prop_assert!(a.terms().iter().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn printing_round_trips(p in polynomial()) {
        let text = p.to_string();
        prop_assert_eq!(parse_polynomial(&text, N, Field::Rational).unwrap(), p);
    }

    #[test]
    fn printing_round_trips_mod_p(p in polynomial()) {
        let f = Field::prime(101).unwrap();
        let text = p.to_string();
        let modp = parse_polynomial(&text, N, f).unwrap();
        prop_assert_eq!(parse_polynomial(&modp.to_string(), N, f).unwrap(), modp);
    }
}

#[test]
fn spec_leading_term_examples() {
    let ord = TermOrdering::new(OrderingKind::DegLex, vec![1, 0]).unwrap();
    let g = parse_polynomial("x2^2 + x1*x2 + x1^2", 2, Field::Rational).unwrap();
    assert_eq!(g.leading_term(&ord).unwrap().to_string(), "x2^2");
    assert_eq!(g.leading_form().unwrap(), g);
}

#[test]
fn example_order_ideal_is_degree_compatible() {
    // Filtration of <x2^2+x1x2+x1^2, x1x2^2, x2^4>: one relation in degree 2,
    // three in degree 3 (all but one cubic), and all five quartics.
    let o = OrderIdeal::new(
        2,
        border_basis::parse_monomial_list("1, x1, x2, x1*x2, x2^2, x2^3", 2).unwrap(),
    )
    .unwrap();
    assert!(border_basis::is_degree_compatible(&o, &[0, 0, 1, 3, 5]).unwrap());
}
