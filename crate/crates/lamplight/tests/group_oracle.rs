//! Group algebra against the BFS Cayley-graph oracle, plus randomized
//! algebraic laws.

mod common;

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;

use common::bfs_ball;
use lamplight::group::{
    canonical_word, classify, compose, elements_of_norm, evaluate, inverse, norm,
    word_distance, GroupElement, Word,
};
use lamplight::series::{ps_parry, series_l, series_lk, series_lk0, series_lk1, Series};
use num_traits::ToPrimitive;

#[test]
fn bfs_distance_equals_norm_radius_8() {
    for (x, d) in bfs_ball(8) {
        assert_eq!(norm(&x), d, "element {x:?}");
    }
}

#[test]
fn canonical_words_are_geodesics_radius_8() {
    for (x, d) in bfs_ball(8) {
        let w = canonical_word(&x);
        assert_eq!(w.len() as u64, d, "length for {x:?}");
        assert_eq!(evaluate(&w), x, "evaluation for {x:?}");
    }
}

#[test]
fn bfs_shells_match_series_and_parry() {
    let ball = bfs_ball(8);
    let mut shells = vec![0u64; 9];
    for d in ball.values() {
        shells[*d as usize] += 1;
    }
    let l = series_l(8);
    let parry = ps_parry(&Series::from_coeffs([1, 1], 8)).unwrap();
    assert_eq!(l, parry);
    for n in 0..=8 {
        assert_eq!(shells[n].to_string(), l.coeffs()[n].to_string(), "shell {n}");
    }
}

#[test]
fn elements_of_norm_equals_bfs_shells() {
    let ball = bfs_ball(8);
    for n in 0..=8u64 {
        let shell: BTreeSet<GroupElement> = ball
            .iter()
            .filter(|(_, d)| **d == n)
            .map(|(x, _)| x.clone())
            .collect();
        assert_eq!(elements_of_norm(n), shell, "norm {n}");
    }
}

#[test]
fn classify_partitions_match_lk_series() {
    for n in 0..=10u64 {
        let mut by_class: HashMap<(i64, bool), u64> = HashMap::new();
        for x in elements_of_norm(n) {
            *by_class.entry(classify(&x)).or_default() += 1;
        }
        for k in -(n as i64)..=(n as i64) {
            let c0 = by_class.get(&(k, false)).copied().unwrap_or(0);
            let c1 = by_class.get(&(k, true)).copied().unwrap_or(0);
            let n = n as usize;
            assert_eq!(
                Some(c0),
                series_lk0(k, n).coeffs()[n].to_u64(),
                "lk0 k={k} n={n}"
            );
            assert_eq!(
                Some(c1),
                series_lk1(k, n).coeffs()[n].to_u64(),
                "lk1 k={k} n={n}"
            );
            assert_eq!(
                Some(c0 + c1),
                series_lk(k, n).coeffs()[n].to_u64(),
                "lk k={k} n={n}"
            );
        }
    }
}

fn element_strategy() -> impl Strategy<Value = GroupElement> {
    (
        prop::collection::btree_set(-8i64..=8, 0..=6),
        -8i64..=8,
    )
        .prop_map(|(lamps, shift)| GroupElement::new(lamps, shift))
}

proptest! {
    #[test]
    fn associativity(a in element_strategy(), b in element_strategy(), c in element_strategy()) {
        prop_assert_eq!(
            compose(&compose(&a, &b), &c),
            compose(&a, &compose(&b, &c))
        );
    }

    #[test]
    fn inverse_laws(a in element_strategy()) {
        prop_assert_eq!(compose(&a, &inverse(&a)), GroupElement::identity());
        prop_assert_eq!(inverse(&inverse(&a)), a.clone());
        prop_assert_eq!(norm(&inverse(&a)), norm(&a));
    }

    #[test]
    fn triangle_inequality(a in element_strategy(), b in element_strategy()) {
        prop_assert!(norm(&compose(&a, &b)) <= norm(&a) + norm(&b));
        prop_assert_eq!(word_distance(&a, &b), norm(&compose(&inverse(&a), &b)));
    }

    #[test]
    fn conjugation_of_zero_shift(g in element_strategy(), h in element_strategy()) {
        // g (a, 0) g^-1 = (a translated by g.shift, 0).
        let h0 = GroupElement::new(h.lamps.iter(), 0);
        let conj = compose(&compose(&g, &h0), &inverse(&g));
        prop_assert_eq!(conj.shift, 0);
        let expected: BTreeSet<i64> = h0.lamps.iter().map(|p| p + g.shift).collect();
        let got: BTreeSet<i64> = conj.lamps.iter().collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn canonical_word_sound(a in element_strategy()) {
        let w = canonical_word(&a);
        prop_assert_eq!(evaluate(&w), a.clone());
        prop_assert_eq!(w.len() as u64, norm(&a));
    }

    #[test]
    fn word_evaluation_is_homomorphism(
        u in prop::collection::vec(prop::sample::select(vec!['t', 'r', 'l']), 0..20),
        v in prop::collection::vec(prop::sample::select(vec!['t', 'r', 'l']), 0..20),
    ) {
        let s: String = u.iter().chain(v.iter()).collect();
        let wu = Word::parse(&u.iter().collect::<String>()).unwrap();
        let wv = Word::parse(&v.iter().collect::<String>()).unwrap();
        let wuv = Word::parse(&s).unwrap();
        prop_assert_eq!(evaluate(&wuv), compose(&evaluate(&wu), &evaluate(&wv)));
    }

    #[test]
    fn element_json_round_trip(a in element_strategy()) {
        let json = serde_json::to_string(&a).unwrap();
        let back: GroupElement = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }
}
