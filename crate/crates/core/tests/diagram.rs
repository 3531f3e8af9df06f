use betti_core::bounds::binomial;
use betti_core::diagram::{deg_seq_leq, pure_diagram};
use betti_core::rational::{from_int, Rational};
use betti_core::{BettiTable, DegreeSequence};
use num_bigint::BigInt;
use proptest::prelude::*;

fn seq(d: Vec<i64>) -> DegreeSequence {
    DegreeSequence::new(d).unwrap()
}

fn int(n: num_bigint::BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Strictly increasing sequences of length 1..=6 starting anywhere in [-5, 5].
fn degree_sequence() -> impl Strategy<Value = DegreeSequence> {
    (-5i64..=5, prop::collection::vec(1i64..=4, 0..=5)).prop_map(|(start, gaps)| {
        let mut d = vec![start];
        for g in gaps {
            d.push(d.last().unwrap() + g);
        }
        seq(d)
    })
}

fn table() -> impl Strategy<Value = BettiTable> {
    prop::collection::btree_map((0usize..5, -3i64..8), (1i64..50, 1i64..7), 0..12).prop_map(|m| {
        BettiTable::from_entries(
            m.into_iter()
                .map(|((i, j), (n, d))| (i, j, Rational::new(n.into(), d.into()))),
        )
        .unwrap()
    })
}

#[test]
fn koszul_identity() {
    for n in 0..=12u64 {
        let t = pure_diagram(&seq((0..=n as i64).collect()));
        for i in 0..=n {
            assert_eq!(t.total_betti(i as usize), int(binomial(n, i as i64)), "N={n} i={i}");
        }
    }
}

#[test]
fn last_column_identity() {
    for n in 1..=10i64 {
        for r in 0..=5i64 {
            let d: Vec<i64> = (0..=n).map(|j| if j == 0 { 0 } else { j + r }).collect();
            let t = pure_diagram(&seq(d));
            assert_eq!(
                t.total_betti(n as usize),
                int(binomial((n + r - 1) as u64, r)),
                "N={n} r={r}"
            );
        }
    }
}

#[test]
fn displayed_pure_diagrams() {
    let t = pure_diagram(&seq(vec![0, 2, 4, 5]));
    let want = [(0, 0, (1, 1)), (1, 2, (10, 3)), (2, 4, (5, 1)), (3, 5, (8, 3))];
    for (i, j, (n, d)) in want {
        assert_eq!(t.get(i, j), Some(&Rational::new(n.into(), d.into())));
    }
    assert_eq!(t.len(), 4);
}

proptest! {
    #[test]
    fn beta0_is_one(d in degree_sequence()) {
        let t = pure_diagram(&d);
        prop_assert_eq!(t.get(0, d.degrees()[0]), Some(&from_int(1)));
        prop_assert_eq!(t.len(), d.len());
        prop_assert_eq!(t.pdim(), Some(d.len() - 1));
    }

    #[test]
    fn translation_invariance(d in degree_sequence(), s in -20i64..20) {
        let base = pure_diagram(&d);
        let moved = pure_diagram(&d.shifted(s));
        let shifted: Vec<_> = base.iter().map(|(i, j, v)| (i, j + s, v.clone())).collect();
        let got: Vec<_> = moved.iter().map(|(i, j, v)| (i, j, v.clone())).collect();
        prop_assert_eq!(got, shifted);
    }

    #[test]
    fn order_is_reflexive_and_antisymmetric(a in degree_sequence(), b in degree_sequence()) {
        prop_assert!(deg_seq_leq(&a, &a));
        if deg_seq_leq(&a, &b) && deg_seq_leq(&b, &a) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn order_is_transitive(a in degree_sequence(), b in degree_sequence(), c in degree_sequence()) {
        if deg_seq_leq(&a, &b) && deg_seq_leq(&b, &c) {
            prop_assert!(deg_seq_leq(&a, &c));
        }
    }

    #[test]
    fn sub_of_unit_scale_is_empty(t in table()) {
        let same = t.scale(&from_int(1)).unwrap();
        prop_assert!(same.sub(&t).unwrap().is_empty());
    }

    #[test]
    fn add_then_sub_round_trips(a in table(), b in table()) {
        prop_assert_eq!(a.add(&b).sub(&b).unwrap(), a);
    }
}
