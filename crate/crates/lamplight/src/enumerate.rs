//! Generation and counting of canonical programs at each pruning level.
//!
//! At `Canonical` and above, loop-free segments are canonical words of group
//! elements (one word per element), so enumeration and the series module
//! count the same objects; the counts must agree coefficient-for-coefficient
//! wherever a generating function exists. The `Full` level has no series and
//! is produced by post-filtering the `DeadInside` stream.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::group::{canonical_word, classify, elements_of_norm, evaluate, Gen, Word};
use crate::lang::{Node, Program};
use crate::par;

/// Pruning levels, ordered by strength; counts are monotone non-increasing
/// across this order at every length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PruneLevel {
    Naive,
    Canonical,
    DeadAfter,
    DeadInside,
    Full,
}

impl PruneLevel {
    pub const ALL: [PruneLevel; 5] = [
        PruneLevel::Naive,
        PruneLevel::Canonical,
        PruneLevel::DeadAfter,
        PruneLevel::DeadInside,
        PruneLevel::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PruneLevel::Naive => "naive",
            PruneLevel::Canonical => "canonical",
            PruneLevel::DeadAfter => "dead-after",
            PruneLevel::DeadInside => "dead-inside",
            PruneLevel::Full => "full",
        }
    }
}

impl fmt::Display for PruneLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PruneLevel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PruneLevel::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown prune level '{s}'"))
    }
}

/// Destination-bit class of a zero-shift segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SegClass {
    L00,
    L01,
    Other,
}

fn seg_class(shift: i64, toggles: bool) -> SegClass {
    match (shift, toggles) {
        (0, false) => SegClass::L00,
        (0, true) => SegClass::L01,
        _ => SegClass::Other,
    }
}

/// Canonical words of all group elements, indexed by norm, with their
/// segment classes; the backbone of every level above `Naive`.
struct SegmentTable {
    /// `segs[m]`: canonical words of the norm-`m` elements, sorted by text.
    segs: Vec<Vec<(Vec<Node>, SegClass)>>,
}

impl SegmentTable {
    fn new(max_len: usize) -> Self {
        let segs = (0..=max_len as u64)
            .map(|m| {
                let mut words: Vec<(String, Vec<Node>, SegClass)> = elements_of_norm(m)
                    .iter()
                    .map(|elem| {
                        let word = canonical_word(elem);
                        let nodes: Vec<Node> =
                            word.0.iter().map(|&g| Node::Prim(g)).collect();
                        let (shift, toggles) = classify(elem);
                        (word.to_string(), nodes, seg_class(shift, toggles))
                    })
                    .collect();
                words.sort_by(|a, b| a.0.cmp(&b.0));
                words.into_iter().map(|(_, n, c)| (n, c)).collect()
            })
            .collect();
        SegmentTable { segs }
    }

    fn counts(&self) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        let lam = self.segs.iter().map(|v| v.len() as u64).collect();
        let lam00 = self
            .segs
            .iter()
            .map(|v| v.iter().filter(|(_, c)| *c == SegClass::L00).count() as u64)
            .collect();
        let lam01 = self
            .segs
            .iter()
            .map(|v| v.iter().filter(|(_, c)| *c == SegClass::L01).count() as u64)
            .collect();
        (lam, lam00, lam01)
    }
}

/// Reusable program generator for one prune level.
pub struct Enumerator {
    level: PruneLevel,
    seg_table: Option<SegmentTable>,
}

impl Enumerator {
    pub fn new(level: PruneLevel, max_len: usize) -> Self {
        let seg_table = match level {
            PruneLevel::Naive => None,
            _ => Some(SegmentTable::new(max_len)),
        };
        Enumerator { level, seg_table }
    }

    /// Visit every admissible program of length exactly `n` once, in a
    /// deterministic generation order.
    pub fn for_each(&self, n: usize, f: &mut dyn FnMut(&[Node])) {
        let mut scratch = Vec::new();
        match self.level {
            PruneLevel::Naive => walk_naive(n, &mut scratch, f),
            PruneLevel::Full => {
                let table = self.seg_table.as_ref().unwrap();
                walk_expr(
                    table,
                    PruneLevel::DeadInside,
                    n,
                    false,
                    &mut scratch,
                    &mut |items| {
                        if !full_excluded(items) {
                            f(items);
                        }
                    },
                )
            }
            level => walk_expr(
                self.seg_table.as_ref().unwrap(),
                level,
                n,
                false,
                &mut scratch,
                f,
            ),
        }
    }

    /// Number of admissible programs of length `n`, by streaming the
    /// generator in parallel across top-level decompositions (when the
    /// `parallel` feature is on).
    pub fn count(&self, n: usize) -> u64 {
        match self.count_tasks(n) {
            Ok((pure, tasks)) => pure + par::map_sum(tasks, |t| self.run_count_task(n, t)),
            Err(count) => count,
        }
    }

    /// Sequential variant of [`Enumerator::count`], always compiled; exists
    /// so the benches can compare the two code paths.
    pub fn count_seq(&self, n: usize) -> u64 {
        match self.count_tasks(n) {
            Ok((pure, tasks)) => {
                pure + par::map_sum_seq(tasks, |t| self.run_count_task(n, t))
            }
            Err(count) => count,
        }
    }

    /// One task per (first segment, body length) split, plus the count of
    /// pure-segment programs. `Err` carries the already-final count for the
    /// `Naive` level, which has no segment table to split on.
    #[allow(clippy::type_complexity)]
    fn count_tasks(&self, n: usize) -> Result<(u64, Vec<(usize, usize, usize)>), u64> {
        let Some(table) = self.seg_table.as_ref() else {
            let mut count = 0u64;
            self.for_each(n, &mut |_| count += 1);
            return Err(count);
        };
        let mut tasks = Vec::new();
        if n >= 2 {
            for m in 0..=(n - 2) {
                for seg_idx in 0..table.segs[m].len() {
                    for b in 0..=(n - m - 2) {
                        tasks.push((m, seg_idx, b));
                    }
                }
            }
        }
        Ok((table.segs[n].len() as u64, tasks))
    }

    fn run_count_task(&self, n: usize, (m, seg_idx, b): (usize, usize, usize)) -> u64 {
        let table = self.seg_table.as_ref().unwrap();
        let walk_level = match self.level {
            PruneLevel::Full => PruneLevel::DeadInside,
            level => level,
        };
        let filter = self.level == PruneLevel::Full;
        let (seg, _) = &table.segs[m][seg_idx];
        let mut scratch = seg.clone();
        let mut count = 0u64;
        let rest = n - m - 2 - b;
        let mut body_scratch = Vec::new();
        walk_expr(table, walk_level, b, true, &mut body_scratch, &mut |body| {
            scratch.push(Node::Loop(Program::new(body.to_vec())));
            walk_tail(table, walk_level, rest, &mut scratch, &mut |items| {
                if !filter || !full_excluded(items) {
                    count += 1;
                }
            });
            scratch.pop();
        });
        count
    }

    /// All admissible programs of length `n`, sorted by printed text.
    pub fn programs(&self, n: usize) -> Vec<Program> {
        let mut out = Vec::new();
        self.for_each(n, &mut |items| out.push(Program::new(items.to_vec())));
        out.sort_by_key(|p| p.to_string());
        out
    }
}

fn walk_naive(n: usize, scratch: &mut Vec<Node>, f: &mut dyn FnMut(&[Node])) {
    if n == 0 {
        f(scratch);
        return;
    }
    for g in [Gen::T, Gen::R, Gen::L] {
        scratch.push(Node::Prim(g));
        walk_naive(n - 1, scratch, f);
        scratch.pop();
    }
    if n >= 2 {
        for b in 0..=(n - 2) {
            let mut body_scratch = Vec::new();
            walk_naive(b, &mut body_scratch, &mut |body: &[Node]| {
                scratch.push(Node::Loop(Program::new(body.to_vec())));
                walk_naive(n - 2 - b, scratch, f);
                scratch.pop();
            });
        }
    }
}

/// `E = L ([E] L)*` with the level's restrictions; `inside` marks loop
/// bodies, where `DeadInside` forbids an `L01` first segment before a loop.
fn walk_expr(
    table: &SegmentTable,
    level: PruneLevel,
    n: usize,
    inside: bool,
    scratch: &mut Vec<Node>,
    f: &mut dyn FnMut(&[Node]),
) {
    for (seg, _) in &table.segs[n] {
        scratch.extend_from_slice(seg);
        f(scratch);
        scratch.truncate(scratch.len() - seg.len());
    }
    if n < 2 {
        return;
    }
    for m in 0..=(n - 2) {
        for (seg, class) in &table.segs[m] {
            if inside && level >= PruneLevel::DeadInside && *class == SegClass::L01 {
                continue;
            }
            scratch.extend_from_slice(seg);
            for b in 0..=(n - m - 2) {
                let rest = n - m - 2 - b;
                let mut body_scratch = Vec::new();
                walk_expr(table, level, b, true, &mut body_scratch, &mut |body: &[Node]| {
                    scratch.push(Node::Loop(Program::new(body.to_vec())));
                    walk_tail(table, level, rest, scratch, f);
                    scratch.pop();
                });
            }
            scratch.truncate(scratch.len() - seg.len());
        }
    }
}

/// Continuation after a loop: `L` or `L [E] <tail>`; segments in the
/// between-loops position may not be `L00` from `DeadAfter` up.
fn walk_tail(
    table: &SegmentTable,
    level: PruneLevel,
    j: usize,
    scratch: &mut Vec<Node>,
    f: &mut dyn FnMut(&[Node]),
) {
    for (seg, _) in &table.segs[j] {
        scratch.extend_from_slice(seg);
        f(scratch);
        scratch.truncate(scratch.len() - seg.len());
    }
    if j < 2 {
        return;
    }
    for m in 0..=(j - 2) {
        for (seg, class) in &table.segs[m] {
            if level >= PruneLevel::DeadAfter && *class == SegClass::L00 {
                continue;
            }
            scratch.extend_from_slice(seg);
            for b in 0..=(j - m - 2) {
                let rest = j - m - 2 - b;
                let mut body_scratch = Vec::new();
                walk_expr(table, level, b, true, &mut body_scratch, &mut |body: &[Node]| {
                    scratch.push(Node::Loop(Program::new(body.to_vec())));
                    walk_tail(table, level, rest, scratch, f);
                    scratch.pop();
                });
            }
            scratch.truncate(scratch.len() - seg.len());
        }
    }
}

// ---------------------------------------------------------------------------
// Full-level exclusions.

fn run_class(items: &[Node]) -> Option<SegClass> {
    let letters: Option<Vec<Gen>> = items
        .iter()
        .map(|n| match n {
            Node::Prim(g) => Some(*g),
            Node::Loop(_) => None,
        })
        .collect();
    let elem = evaluate(&Word(letters?));
    let (shift, toggles) = classify(&elem);
    Some(seg_class(shift, toggles))
}

fn suffix_after_last_loop(items: &[Node]) -> Option<&[Node]> {
    let last = items.iter().rposition(|n| matches!(n, Node::Loop(_)))?;
    Some(&items[last + 1..])
}

/// Transient body shape `E [E] L00`: ends with a loop followed by an `L00`
/// segment (so the loop runs at most once when entered with the bit set).
fn body_transient_l00_tail(body: &[Node]) -> bool {
    match suffix_after_last_loop(body) {
        Some(suffix) => run_class(suffix) == Some(SegClass::L00),
        None => false,
    }
}

/// True iff the program (or any subprogram) matches one of the `Full`-level
/// exclusion schemata: `[[E]]`, the four transient forms, or an infinite
/// loop other than `[]`.
pub fn full_excluded(items: &[Node]) -> bool {
    for node in items {
        if let Node::Loop(body) = node {
            if loop_excluded(&body.items) || full_excluded(&body.items) {
                return true;
            }
        }
    }
    // After-a-loop transients: [E] L01 [L01] and [E] L01 [E[E]L00].
    let loops: Vec<usize> = items
        .iter()
        .enumerate()
        .filter(|(_, n)| matches!(n, Node::Loop(_)))
        .map(|(i, _)| i)
        .collect();
    for pair in loops.windows(2) {
        let (p, q) = (pair[0], pair[1]);
        if run_class(&items[p + 1..q]) != Some(SegClass::L01) {
            continue;
        }
        let Node::Loop(qbody) = &items[q] else {
            unreachable!()
        };
        if run_class(&qbody.items) == Some(SegClass::L01) {
            return true;
        }
        if body_transient_l00_tail(&qbody.items) {
            return true;
        }
    }
    false
}

fn loop_excluded(body: &[Node]) -> bool {
    // [[E]]
    if body.len() == 1 && matches!(body[0], Node::Loop(_)) {
        return true;
    }
    // Infinite loops: [L00] (nonempty) and [E[E]L01].
    if !body.is_empty() && run_class(body) == Some(SegClass::L00) {
        return true;
    }
    if let Some(suffix) = suffix_after_last_loop(body) {
        if run_class(suffix) == Some(SegClass::L01) {
            return true;
        }
    }
    // Inside-a-loop transients: [L00 [L01] E] and [L00 [E[E]L00] E].
    if let Some(first) = body.iter().position(|n| matches!(n, Node::Loop(_))) {
        if run_class(&body[..first]) == Some(SegClass::L00) {
            let Node::Loop(inner) = &body[first] else {
                unreachable!()
            };
            if run_class(&inner.items) == Some(SegClass::L01) {
                return true;
            }
            if body_transient_l00_tail(&inner.items) {
                return true;
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Counting.

/// Exact count of admissible programs of length `n`.
///
/// For the four series-backed levels this is a dynamic program over the
/// grammar using segment-class counts derived from the group enumerator
/// (independent of the series module, which serves as the cross-check);
/// `Full` has no grammar and is counted by streaming enumeration.
pub fn count_programs(n: usize, level: PruneLevel) -> BigUint {
    match level {
        PruneLevel::Naive => count_naive_dp(n),
        PruneLevel::Full => BigUint::from(Enumerator::new(level, n).count(n)),
        _ => count_grammar_dp(n, level),
    }
}

fn count_naive_dp(n: usize) -> BigUint {
    let mut e: Vec<BigUint> = vec![BigUint::from(1u32)];
    for len in 1..=n {
        let mut total = BigUint::from(3u32) * &e[len - 1];
        if len >= 2 {
            for b in 0..=(len - 2) {
                total += &e[b] * &e[len - 2 - b];
            }
        }
        e.push(total);
    }
    e[n].clone()
}

fn count_grammar_dp(n: usize, level: PruneLevel) -> BigUint {
    let table = SegmentTable::new(n);
    let (lam, lam00, lam01) = table.counts();
    let big = |v: u64| BigUint::from(v);
    // Segment counts allowed between loops / as the first segment of a
    // loop-containing body.
    let between: Vec<BigUint> = (0..=n)
        .map(|m| {
            if level >= PruneLevel::DeadAfter {
                big(lam[m] - lam00[m])
            } else {
                big(lam[m])
            }
        })
        .collect();
    let body_first: Vec<BigUint> = (0..=n)
        .map(|m| {
            if level >= PruneLevel::DeadInside {
                big(lam[m] - lam01[m])
            } else {
                big(lam[m])
            }
        })
        .collect();

    // tail[j]: continuations after a loop; win[j]: loop-body expressions.
    let mut tail: Vec<BigUint> = Vec::with_capacity(n + 1);
    let mut win: Vec<BigUint> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let loop_sum = |first: &[BigUint], tails: &[BigUint], wins: &[BigUint]| {
            let mut acc = BigUint::from(0u32);
            if j >= 2 {
                for m in 0..=(j - 2) {
                    for b in 0..=(j - m - 2) {
                        acc += &first[m] * &wins[b] * &tails[j - m - 2 - b];
                    }
                }
            }
            acc
        };
        let w = big(lam[j]) + loop_sum(&body_first, &tail, &win);
        let t = big(lam[j]) + loop_sum(&between, &tail, &win);
        win.push(w);
        tail.push(t);
    }
    let mut total = big(lam[n]);
    if n >= 2 {
        for m in 0..=(n - 2) {
            for b in 0..=(n - m - 2) {
                total += big(lam[m]) * &win[b] * &tail[n - m - 2 - b];
            }
        }
    }
    total
}

/// All admissible programs of length `n`, in shortlex (text) order.
pub fn enumerate_programs(n: usize, level: PruneLevel) -> Vec<Program> {
    Enumerator::new(level, n).programs(n)
}

/// Per-level counts for `n = 0..=max_n`, for external plotting.
pub fn growth_table(max_n: usize, levels: &[PruneLevel]) -> Vec<(usize, Vec<BigUint>)> {
    let full_enum = levels
        .contains(&PruneLevel::Full)
        .then(|| Enumerator::new(PruneLevel::Full, max_n));
    (0..=max_n)
        .map(|n| {
            let row = levels
                .iter()
                .map(|&level| match level {
                    PruneLevel::Full => {
                        BigUint::from(full_enum.as_ref().unwrap().count(n))
                    }
                    _ => count_programs(n, level),
                })
                .collect();
            (n, row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn naive_small_counts() {
        let e = Enumerator::new(PruneLevel::Naive, 4);
        assert_eq!(e.count(0), 1);
        assert_eq!(e.count(1), 3);
        assert_eq!(e.count(2), 10);
        assert_eq!(e.count(3), 36);
        assert_eq!(e.count(4), 137);
    }

    #[test]
    fn naive_length_two_listing() {
        let programs = enumerate_programs(2, PruneLevel::Naive);
        assert_eq!(programs.len(), 10);
        let texts: Vec<String> = programs.iter().map(|p| p.to_string()).collect();
        assert!(texts.contains(&"[]".to_string()));
        assert!(texts.contains(&"tt".to_string()));
    }

    #[test]
    fn canonical_small_counts() {
        let e = Enumerator::new(PruneLevel::Canonical, 5);
        assert_eq!(
            (0..=5).map(|n| e.count(n)).collect::<Vec<_>>(),
            vec![1, 3, 7, 21, 69, 241]
        );
    }

    #[test]
    fn dead_after_excludes_consecutive_empty_loops() {
        let e = Enumerator::new(PruneLevel::DeadAfter, 4);
        assert_eq!(e.count(4), 68);
        let texts: HashSet<String> = enumerate_programs(4, PruneLevel::DeadAfter)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert!(!texts.contains("[][]"));
        assert!(texts.contains("[[]]"));
    }

    #[test]
    fn full_excludes_nested_empty_loop() {
        let e = Enumerator::new(PruneLevel::Full, 4);
        assert_eq!(e.count(4), 67);
        let texts: HashSet<String> = enumerate_programs(4, PruneLevel::Full)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert!(!texts.contains("[[]]"));
        assert!(!texts.contains("[][]"));
    }

    #[test]
    fn level_zero_and_one() {
        for level in PruneLevel::ALL {
            assert_eq!(count_programs(0, level), BigUint::from(1u32));
            assert_eq!(count_programs(1, level), BigUint::from(3u32));
        }
    }

    #[test]
    fn dp_matches_enumeration() {
        for level in [
            PruneLevel::Naive,
            PruneLevel::Canonical,
            PruneLevel::DeadAfter,
            PruneLevel::DeadInside,
        ] {
            let e = Enumerator::new(level, 7);
            for n in 0..=7 {
                assert_eq!(
                    count_programs(n, level),
                    BigUint::from(e.count(n)),
                    "{level} at {n}"
                );
            }
        }
    }

    #[test]
    fn no_duplicates_in_stream() {
        for level in PruneLevel::ALL {
            let e = Enumerator::new(level, 6);
            for n in 0..=6 {
                let mut seen = HashSet::new();
                let mut total = 0u64;
                e.for_each(n, &mut |items| {
                    total += 1;
                    assert!(seen.insert(Program::new(items.to_vec()).to_string()));
                });
                assert_eq!(total, seen.len() as u64, "{level} at {n}");
            }
        }
    }

    #[test]
    fn stream_lengths_are_exact() {
        for level in PruneLevel::ALL {
            let e = Enumerator::new(level, 6);
            for n in 0..=6 {
                e.for_each(n, &mut |items| {
                    assert_eq!(Program::new(items.to_vec()).len(), n);
                });
            }
        }
    }

    #[test]
    fn growth_table_rows() {
        let rows = growth_table(2, &PruneLevel::ALL);
        assert_eq!(rows[0].1, vec![BigUint::from(1u32); 5]);
        assert_eq!(rows[1].1, vec![BigUint::from(3u32); 5]);
        assert_eq!(rows[2].1[0], BigUint::from(10u32));
        assert_eq!(rows[2].1[1], BigUint::from(7u32));
    }
}
