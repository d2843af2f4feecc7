//! Enumerative synthesis: shortest program realizing a target semantic
//! table, and a census of the redundancy the pruning levels leave behind.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{semantic_table, SemanticTable, WINDOW_CAP};
use crate::enumerate::{Enumerator, PruneLevel};
use crate::lang::{run, Outcome, Program, Tape};
use crate::par;

/// Default cap on the target window: 2^16 table rows.
pub const SEARCH_WINDOW_CAP: usize = 16;

#[derive(Debug, Error, PartialEq)]
pub enum SearchError {
    #[error("target window of {0} bits exceeds the cap of {SEARCH_WINDOW_CAP}")]
    WindowTooLarge(usize),
}

pub struct SearchSpec {
    pub target: SemanticTable,
    pub max_length: usize,
    pub level: PruneLevel,
}

/// Shortest admissible program whose semantic table is equivalent to the
/// target, ties broken by shortlex order; `None` if nothing matches within
/// `max_length`.
///
/// Only fixed-shift candidates are tabulated — a candidate whose shift class
/// is `Unbounded` is skipped, so the search is complete only with respect to
/// fixed-shift realizations.
pub fn search_shortest(spec: &SearchSpec) -> Result<Option<Program>, SearchError> {
    if spec.target.window.len() > SEARCH_WINDOW_CAP {
        return Err(SearchError::WindowTooLarge(spec.target.window.len()));
    }
    for n in 0..=spec.max_length {
        let candidates = Enumerator::new(spec.level, n).programs(n);
        let target = &spec.target;
        let verdicts = par::map_collect(candidates, |p| {
            matches_target(&p, target).then_some(p)
        });
        if let Some(p) = verdicts.into_iter().flatten().next() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

fn matches_target(p: &Program, target: &SemanticTable) -> bool {
    let Ok(table) = semantic_table(p) else {
        return false;
    };
    if table.shift != target.shift {
        return false;
    }
    let union: HashSet<i64> = table
        .window
        .iter()
        .chain(target.window.iter())
        .copied()
        .collect();
    if union.len() > WINDOW_CAP {
        return false;
    }
    table.equivalent(target)
}

/// Independent confirmation of a search result: run the interpreter on every
/// assignment of the union window and compare with the target under identity
/// extension. Divergent entries must exhaust `fuel`.
pub fn verified_by_interpreter(p: &Program, target: &SemanticTable, fuel: u64) -> bool {
    let Ok(table) = semantic_table(p) else {
        return false;
    };
    let universe: Vec<i64> = {
        let mut u: Vec<i64> = table
            .window
            .iter()
            .chain(target.window.iter())
            .copied()
            .collect();
        u.sort_unstable();
        u.dedup();
        u
    };
    (0u64..(1 << universe.len())).all(|mask| {
        let ones = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &pos)| pos);
        let expected = target.eval_extended(&universe, mask);
        match run(p, &Tape::new(ones, 0), fuel) {
            Outcome::Halted { tape, .. } => {
                if tape.head != target.shift {
                    return false;
                }
                let out: u64 = universe
                    .iter()
                    .enumerate()
                    .filter(|(_, &pos)| tape.bit(pos))
                    .map(|(i, _)| 1u64 << i)
                    .sum();
                expected == Some(out)
            }
            _ => expected.is_none(),
        }
    })
}

/// One row of the equivalence census: all admissible fixed-shift programs of
/// length ≤ `length`, bucketed by reduced semantic table.
#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub length: usize,
    /// Fixed-shift programs of exactly this length.
    pub programs: u64,
    pub cumulative_programs: u64,
    /// Distinct reduced tables among programs of length ≤ `length`.
    pub cumulative_distinct: u64,
    /// `cumulative_programs - cumulative_distinct`.
    pub duplicate_mass: u64,
    pub duplicate_ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub level: String,
    pub rows: Vec<CensusRow>,
}

/// Bucket every admissible fixed-shift program of length ≤ `n` by reduced
/// semantic table; the duplicate ratio measures redundancy the prune level
/// does not remove. Cumulative (not per-length) counts make the ratio
/// comparable across levels: every pruned program has an equivalent shorter
/// survivor, so stronger levels cannot increase the ratio.
pub fn equivalence_census(n: usize, level: PruneLevel) -> CensusReport {
    let enumerator = Enumerator::new(level, n);
    let mut seen: HashSet<SemanticTable> = HashSet::new();
    let mut cumulative = 0u64;
    let mut rows = Vec::with_capacity(n + 1);
    for length in 0..=n {
        let programs = enumerator.programs(length);
        let tables = par::map_collect(programs, |p| {
            semantic_table(&p).ok().map(|t| t.reduced())
        });
        let mut here = 0u64;
        for table in tables.into_iter().flatten() {
            here += 1;
            seen.insert(table);
        }
        cumulative += here;
        let distinct = seen.len() as u64;
        rows.push(CensusRow {
            length,
            programs: here,
            cumulative_programs: cumulative,
            cumulative_distinct: distinct,
            duplicate_mass: cumulative - distinct,
            duplicate_ratio: (cumulative - distinct) as f64 / cumulative as f64,
        });
    }
    CensusReport {
        level: level.name().to_string(),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse;

    fn table_of(text: &str) -> SemanticTable {
        semantic_table(&parse(text).unwrap()).unwrap()
    }

    #[test]
    fn empty_target_finds_empty_program() {
        let spec = SearchSpec {
            target: SemanticTable::identity(0),
            max_length: 3,
            level: PruneLevel::Full,
        };
        assert_eq!(search_shortest(&spec).unwrap(), Some(Program::empty()));
    }

    #[test]
    fn set_bit_to_one() {
        // B = {0}; both inputs map to 1; shift 0.
        let target = SemanticTable {
            window: vec![0],
            shift: 0,
            map: vec![Some(1), Some(1)],
        };
        let spec = SearchSpec {
            target: target.clone(),
            max_length: 6,
            level: PruneLevel::Full,
        };
        let found = search_shortest(&spec).unwrap().unwrap();
        assert_eq!(found.to_string(), "[t]t");
        assert_eq!(found.len(), 4);
        assert!(verified_by_interpreter(&found, &target, 1_000));
        // Minimality oracle: nothing at lengths 0..3.
        let shorter = SearchSpec {
            target,
            max_length: 3,
            level: PruneLevel::Full,
        };
        assert_eq!(search_shortest(&shorter).unwrap(), None);
    }

    #[test]
    fn xor_swap_table_target() {
        let target = table_of("[rtl]r[ltr]l[rtl]");
        let spec = SearchSpec {
            target: target.clone(),
            max_length: 14,
            level: PruneLevel::Full,
        };
        let found = search_shortest(&spec).unwrap().unwrap();
        assert!(found.len() <= 14);
        assert!(semantic_table(&found).unwrap().equivalent(&target));
        assert!(verified_by_interpreter(&found, &target, 10_000));
        // Minimality: exhaustive re-search below the found length.
        if found.len() > 0 {
            let shorter = SearchSpec {
                target,
                max_length: found.len() - 1,
                level: PruneLevel::Full,
            };
            assert_eq!(search_shortest(&shorter).unwrap(), None);
        }
    }

    #[test]
    fn canonical_and_full_agree() {
        let target = table_of("t[t]");
        let mut results = Vec::new();
        for level in [PruneLevel::Canonical, PruneLevel::Full] {
            let spec = SearchSpec {
                target: target.clone(),
                max_length: 6,
                level,
            };
            results.push(search_shortest(&spec).unwrap().unwrap());
        }
        let a = semantic_table(&results[0]).unwrap();
        let b = semantic_table(&results[1]).unwrap();
        assert!(a.equivalent(&b));
        assert_eq!(results[0].len(), results[1].len());
    }

    #[test]
    fn oversized_target_rejected() {
        let bits = SEARCH_WINDOW_CAP + 1;
        let target = SemanticTable {
            window: (0..bits as i64).collect(),
            shift: 0,
            map: vec![Some(0); 1 << bits],
        };
        let spec = SearchSpec {
            target,
            max_length: 1,
            level: PruneLevel::Full,
        };
        assert_eq!(
            search_shortest(&spec).unwrap_err(),
            SearchError::WindowTooLarge(bits)
        );
    }

    #[test]
    fn census_trivial_lengths() {
        let report = equivalence_census(1, PruneLevel::Full);
        assert_eq!(report.rows[0].cumulative_programs, 1);
        assert_eq!(report.rows[0].cumulative_distinct, 1);
        assert_eq!(report.rows[0].duplicate_mass, 0);
        // "", t, r, l all have distinct tables (r and l differ in shift).
        assert_eq!(report.rows[1].cumulative_programs, 4);
        assert_eq!(report.rows[1].cumulative_distinct, 4);
    }

    #[test]
    fn census_ratio_monotone_across_levels() {
        let n = 5;
        let mut previous = f64::INFINITY;
        for level in PruneLevel::ALL {
            let report = equivalence_census(n, level);
            let ratio = report.rows[n].duplicate_ratio;
            assert!(
                ratio <= previous + 1e-12,
                "{level}: {ratio} > {previous}"
            );
            previous = ratio;
        }
    }

    #[test]
    fn table_json_round_trip() {
        let table = table_of("[]r[]l");
        let json = serde_json::to_string(&table).unwrap();
        assert!(json.contains("\"00\":\"00\""));
        assert!(json.contains('⊥'));
        let back: SemanticTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, table);
    }

    #[test]
    fn table_json_rejects_partial_map() {
        let bad = r#"{"window":[0],"shift":0,"map":{"0":"0"}}"#;
        assert!(serde_json::from_str::<SemanticTable>(bad).is_err());
    }
}
