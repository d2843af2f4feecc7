//! Shared test oracles: breadth-first search over the Cayley graph and
//! random-tape generation.
#![allow(dead_code)] // each test binary uses its own subset

use std::collections::{BTreeSet, HashMap, VecDeque};

use lamplight::group::{compose, Gen, GroupElement};
use lamplight::lang::Tape;

/// Distance from the identity for every element within `radius`, by BFS
/// over the generators {t, r, l}; the independent oracle for the norm.
pub fn bfs_ball(radius: u64) -> HashMap<GroupElement, u64> {
    let mut dist = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(GroupElement::identity(), 0);
    queue.push_back(GroupElement::identity());
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == radius {
            continue;
        }
        for g in [Gen::T, Gen::R, Gen::L] {
            let y = compose(&x, &g.element());
            dist.entry(y.clone()).or_insert_with(|| {
                queue.push_back(y.clone());
                d + 1
            });
        }
    }
    dist
}

/// Deterministic pseudo-random tape: ones drawn from `positions` with
/// density ~1/3, derived from `seed` by splitmix64.
pub fn random_tape(seed: u64, span: i64) -> Tape {
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    let ones: BTreeSet<i64> = (-span..=span).filter(|_| next() % 3 == 0).collect();
    Tape { ones, head: 0 }
}
