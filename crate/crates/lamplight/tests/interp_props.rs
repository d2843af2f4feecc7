//! Interpreter against the group action, and semantic tables against the
//! interpreter, on exhaustive small inventories and random inputs.

mod common;

use proptest::prelude::*;

use common::random_tape;
use lamplight::analysis::{bit_window, semantic_table, shift_class, ShiftClass};
use lamplight::enumerate::{Enumerator, PruneLevel};
use lamplight::group::evaluate;
use lamplight::group::Word;
use lamplight::lang::{parse, run, Outcome, Program, Tape};

fn fixed_shift_inventory(max_len: usize) -> Vec<Program> {
    let enumerator = Enumerator::new(PruneLevel::Naive, max_len);
    let mut out = Vec::new();
    for n in 0..=max_len {
        let mut programs = enumerator.programs(n);
        programs.retain(|p| matches!(shift_class(p), ShiftClass::Fixed(_)));
        out.extend(programs);
    }
    out
}

#[test]
fn semantic_table_matches_interpreter_exhaustively() {
    // Every fixed-shift program of length <= 6, every window assignment:
    // a Some entry must be reproduced by the interpreter, a None entry must
    // outlast a generous fuel budget.
    for p in fixed_shift_inventory(6) {
        let table = semantic_table(&p).unwrap();
        for mask in 0u64..(1 << table.window.len()) {
            let ones = table
                .window
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &pos)| pos);
            let input = Tape::new(ones, 0);
            match (run(&p, &input, 20_000), &table.map[mask as usize]) {
                (Outcome::Halted { tape, .. }, Some(out)) => {
                    assert_eq!(tape.head, table.shift, "{p} on {mask:b}");
                    let got: u64 = table
                        .window
                        .iter()
                        .enumerate()
                        .filter(|(_, &pos)| tape.bit(pos))
                        .map(|(i, _)| 1u64 << i)
                        .sum();
                    assert_eq!(got, *out, "{p} on {mask:b}");
                    let stray = tape.ones.iter().any(|b| !table.window.contains(b));
                    assert!(!stray, "{p} toggled outside its window");
                }
                (Outcome::FuelExhausted { .. }, None) => {}
                (outcome, entry) => {
                    panic!("{p} on {mask:b}: interpreter {outcome:?}, table {entry:?}")
                }
            }
        }
    }
}

#[test]
fn bit_window_soundness_exhaustive() {
    // Bits outside head+window are never read or toggled: adding ones
    // outside the window changes the result by exactly those ones.
    for p in fixed_shift_inventory(6) {
        let window = bit_window(&p).unwrap().0;
        let lo = window.iter().next().copied().unwrap_or(0) - 3;
        let hi = window.iter().last().copied().unwrap_or(0) + 3;
        let outside: Vec<i64> = (lo..=hi).filter(|b| !window.contains(b)).collect();
        let base = Tape::new(window.iter().copied(), 0);
        let mut extended = base.clone();
        for &b in &outside {
            extended.ones.insert(b);
        }
        match (run(&p, &base, 20_000), run(&p, &extended, 20_000)) {
            (Outcome::Halted { tape: a, steps: sa }, Outcome::Halted { tape: b, steps: sb }) => {
                assert_eq!(sa, sb, "{p}");
                assert_eq!(a.head, b.head, "{p}");
                let mut expected = a.ones.clone();
                for &o in &outside {
                    expected.insert(o);
                }
                assert_eq!(b.ones, expected, "{p}");
            }
            (Outcome::FuelExhausted { .. }, Outcome::FuelExhausted { .. }) => {}
            (a, b) => panic!("{p}: {a:?} vs {b:?}"),
        }
    }
}

proptest! {
    #[test]
    fn loop_free_run_is_group_action(
        letters in prop::collection::vec(prop::sample::select(vec!['t', 'r', 'l']), 0..40),
        seed in any::<u64>(),
    ) {
        let text: String = letters.iter().collect();
        let p = parse(&text).unwrap();
        let elem = evaluate(&Word::parse(&text).unwrap());
        let input = random_tape(seed, 12);
        let mut expected = input.clone();
        expected.apply_element(&elem);
        match run(&p, &input, 1_000) {
            Outcome::Halted { tape, steps } => {
                prop_assert_eq!(tape, expected);
                prop_assert_eq!(steps as usize, letters.len());
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn fuel_monotone_on_random_programs(seed in any::<u64>(), idx in 0usize..2949) {
        // 2949 = naive programs of length <= 6; index into that inventory.
        let enumerator = Enumerator::new(PruneLevel::Naive, 6);
        let mut programs = Vec::new();
        for n in 0..=6 {
            programs.extend(enumerator.programs(n));
        }
        let p = &programs[idx % programs.len()];
        let input = random_tape(seed, 8);
        if let Outcome::Halted { tape, steps } = run(p, &input, 5_000) {
            for extra in [0, 1, 17, 5_000] {
                match run(p, &input, steps + extra) {
                    Outcome::Halted { tape: t, steps: s } => {
                        prop_assert_eq!(&t, &tape);
                        prop_assert_eq!(s, steps);
                    }
                    other => prop_assert!(false, "{:?}", other),
                }
            }
            if steps > 0 {
                prop_assert!(!run(p, &input, steps - 1).is_halted());
            }
        }
    }
}
