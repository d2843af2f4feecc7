//! Static analysis of programs: shift classification, touched-bit windows,
//! segment class tests, the dead/transient/infinite-loop rewrite system, and
//! exact semantic tabulation of fixed-shift programs with decidable
//! termination via configuration-repeat detection.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::group::{classify, Gen};
use crate::lang::{loop_free_segment_to_group, parse, Node, Program};

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("not a fixed-shift program")]
    NotFixedShift,
    #[error("segment contains a loop")]
    LoopInSegment,
    #[error("bit window of size {0} exceeds the tabulation cap")]
    WindowTooLarge(usize),
}

/// Net head displacement of a program, when it is the same on every
/// execution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftClass {
    Fixed(i64),
    Unbounded,
}

/// A program is `Fixed(i)` iff every loop body (recursively) has net shift 0
/// and the primitive shifts sum to `i`.
pub fn shift_class(p: &Program) -> ShiftClass {
    let mut total = 0i64;
    for node in &p.items {
        match node {
            Node::Prim(Gen::R) => total += 1,
            Node::Prim(Gen::L) => total -= 1,
            Node::Prim(Gen::T) => {}
            Node::Loop(body) => match shift_class(body) {
                ShiftClass::Fixed(0) => {}
                _ => return ShiftClass::Unbounded,
            },
        }
    }
    ShiftClass::Fixed(total)
}

/// Head-relative offsets a fixed-shift program can read or toggle.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BitWindow(pub BTreeSet<i64>);

pub fn bit_window(p: &Program) -> Result<BitWindow, AnalysisError> {
    match shift_class(p) {
        ShiftClass::Fixed(_) => {}
        ShiftClass::Unbounded => return Err(AnalysisError::NotFixedShift),
    }
    let mut window = BTreeSet::new();
    collect_window(&p.items, 0, &mut window);
    Ok(BitWindow(window))
}

fn collect_window(items: &[Node], mut offset: i64, window: &mut BTreeSet<i64>) {
    for node in items {
        match node {
            Node::Prim(Gen::T) => {
                window.insert(offset);
            }
            Node::Prim(Gen::R) => offset += 1,
            Node::Prim(Gen::L) => offset -= 1,
            Node::Loop(body) => {
                window.insert(offset);
                collect_window(&body.items, offset, window);
            }
        }
    }
}

/// Loop-free segment in `L_{0,0}`: zero shift, destination bit untouched.
pub fn is_l00(p: &Program) -> Result<bool, AnalysisError> {
    let elem = loop_free_segment_to_group(p).map_err(|_| AnalysisError::LoopInSegment)?;
    Ok(classify(&elem) == (0, false))
}

/// Loop-free segment in `L_{0,1}`: zero shift, destination bit toggled.
pub fn is_l01(p: &Program) -> Result<bool, AnalysisError> {
    let elem = loop_free_segment_to_group(p).map_err(|_| AnalysisError::LoopInSegment)?;
    Ok(classify(&elem) == (0, true))
}

/// Conservative membership in `E_0^(0)`: net shift 0 and no `t` ever at
/// offset 0, checked by a static walk through all loop bodies. Sound but
/// incomplete (an even number of offset-0 toggles is rejected).
pub fn is_e00(p: &Program) -> bool {
    shift_class(p) == ShiftClass::Fixed(0) && no_toggle_at_zero(&p.items, 0)
}

fn no_toggle_at_zero(items: &[Node], mut offset: i64) -> bool {
    for node in items {
        match node {
            Node::Prim(Gen::T) => {
                if offset == 0 {
                    return false;
                }
            }
            Node::Prim(Gen::R) => offset += 1,
            Node::Prim(Gen::L) => offset -= 1,
            Node::Loop(body) => {
                if !no_toggle_at_zero(&body.items, offset) {
                    return false;
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// The rewrite system.

/// Working node during normalization; `Bottom` marks a point that, if
/// reached, guarantees non-termination.
#[derive(Clone, Debug, PartialEq, Eq)]
enum ANode {
    Prim(Gen),
    Loop(Vec<ANode>),
    Bottom,
}

fn to_anodes(p: &Program) -> Vec<ANode> {
    p.items
        .iter()
        .map(|n| match n {
            Node::Prim(g) => ANode::Prim(*g),
            Node::Loop(body) => ANode::Loop(to_anodes(body)),
        })
        .collect()
}

fn is_bottom_loop(node: &ANode) -> bool {
    matches!(node, ANode::Loop(body) if body == &[ANode::Bottom])
}

fn slice_to_program(items: &[ANode]) -> Option<Program> {
    fn conv(items: &[ANode]) -> Option<Vec<Node>> {
        items
            .iter()
            .map(|n| match n {
                ANode::Prim(g) => Some(Node::Prim(*g)),
                ANode::Loop(body) => Some(Node::Loop(Program::new(conv(body)?))),
                ANode::Bottom => None,
            })
            .collect()
    }
    conv(items).map(Program::new)
}

fn slice_loop_free(items: &[ANode]) -> bool {
    items.iter().all(|n| matches!(n, ANode::Prim(_)))
}

/// `L_{0,0}` role: exact group classification for loop-free runs, the
/// conservative `E_0^(0)` test otherwise.
fn seg_l00(items: &[ANode]) -> bool {
    let Some(p) = slice_to_program(items) else {
        return false;
    };
    if slice_loop_free(items) {
        is_l00(&p).unwrap()
    } else {
        is_e00(&p)
    }
}

/// `L_{0,1}` role: loop-free runs only.
fn seg_l01(items: &[ANode]) -> bool {
    if !slice_loop_free(items) {
        return false;
    }
    let p = slice_to_program(items).unwrap();
    is_l01(&p).unwrap()
}

/// Loop-free suffix of `items` after its last loop, provided a loop exists.
fn suffix_after_last_loop(items: &[ANode]) -> Option<&[ANode]> {
    let last = items
        .iter()
        .rposition(|n| matches!(n, ANode::Loop(_)) || matches!(n, ANode::Bottom))?;
    if !matches!(items[last], ANode::Loop(_)) {
        return None;
    }
    Some(&items[last + 1..])
}

/// Loop-free prefix of `items` before its first loop, provided a loop exists.
/// Returns `(prefix, loop_index)`.
fn prefix_before_first_loop(items: &[ANode]) -> Option<(&[ANode], usize)> {
    let first = items
        .iter()
        .position(|n| matches!(n, ANode::Loop(_)) || matches!(n, ANode::Bottom))?;
    if !matches!(items[first], ANode::Loop(_)) {
        return None;
    }
    Some((&items[..first], first))
}

/// One innermost-level rewrite of a loop body; returns the replacement for
/// the whole `Loop(body)` node, or `None`.
fn rewrite_loop(body: &[ANode]) -> Option<ANode> {
    // [[a]] -> [a]
    if body.len() == 1 {
        if let ANode::Loop(inner) = &body[0] {
            if inner != &[ANode::Bottom] {
                return Some(ANode::Loop(inner.clone()));
            }
        }
    }
    // [a] with nonempty a in the L00 class -> [⊥]
    if !body.is_empty() && seg_l00(body) {
        return Some(ANode::Loop(vec![ANode::Bottom]));
    }
    // [a[b]c] with trailing segment c in L01 -> [⊥]
    if let Some(suffix) = suffix_after_last_loop(body) {
        if seg_l01(suffix) {
            return Some(ANode::Loop(vec![ANode::Bottom]));
        }
    }
    // [a[⊥]b] with prefix a in the L00 class -> [⊥]
    if let Some(split) = body.iter().position(is_bottom_loop) {
        if seg_l00(&body[..split]) {
            return Some(ANode::Loop(vec![ANode::Bottom]));
        }
    }
    if let Some((prefix, first)) = prefix_before_first_loop(body) {
        if let ANode::Loop(inner) = &body[first] {
            // [a[b]c] with a in L01 -> [ac]
            if seg_l01(prefix) {
                let mut next: Vec<ANode> = body[..first].to_vec();
                next.extend_from_slice(&body[first + 1..]);
                return Some(ANode::Loop(next));
            }
            if seg_l00(prefix) && slice_loop_free(prefix) {
                // [a[b]c] with a in L00, b in L01 -> [abc]
                if seg_l01(inner) {
                    let mut next: Vec<ANode> = prefix.to_vec();
                    next.extend_from_slice(inner);
                    next.extend_from_slice(&body[first + 1..]);
                    return Some(ANode::Loop(next));
                }
                // [a[b[c]d]e] with a, d in the L00 class -> [ab[c]de]
                if let Some(suffix) = suffix_after_last_loop(inner) {
                    if seg_l00(suffix) {
                        let mut next: Vec<ANode> = prefix.to_vec();
                        next.extend_from_slice(inner);
                        next.extend_from_slice(&body[first + 1..]);
                        return Some(ANode::Loop(next));
                    }
                }
            }
        }
    }
    None
}

/// One rewrite over a sequence (a program or loop body); returns the
/// replacement sequence, or `None`.
fn rewrite_seq(items: &[ANode]) -> Option<Vec<ANode>> {
    // a ⊥ b -> ⊥
    if items.contains(&ANode::Bottom) && items.len() > 1 {
        return Some(vec![ANode::Bottom]);
    }
    // Loop-node rules, leftmost first.
    for (idx, node) in items.iter().enumerate() {
        if let ANode::Loop(body) = node {
            if body == &[ANode::Bottom] {
                continue;
            }
            if let Some(replacement) = rewrite_loop(body) {
                let mut next = items.to_vec();
                next[idx] = replacement;
                return Some(next);
            }
        }
    }
    // Sequence rules over pairs of loops at this level.
    let loops: Vec<usize> = items
        .iter()
        .enumerate()
        .filter(|(_, n)| matches!(n, ANode::Loop(_)))
        .map(|(i, _)| i)
        .collect();
    for (pi, &p) in loops.iter().enumerate() {
        for &q in &loops[pi + 1..] {
            let run = &items[p + 1..q];
            if run.contains(&ANode::Bottom) {
                continue;
            }
            let run_loop_free = slice_loop_free(run);
            // [a]b[⊥] -> ⊥ when b in L01
            if is_bottom_loop(&items[q]) && run_loop_free && seg_l01(run) {
                return Some(vec![ANode::Bottom]);
            }
            // [a]b[c] -> [a]b when b in the L00 class (c may be [⊥])
            if seg_l00(run) {
                let mut next = items.to_vec();
                next.remove(q);
                return Some(next);
            }
            if run_loop_free && seg_l01(run) && !is_bottom_loop(&items[q]) {
                let ANode::Loop(qbody) = &items[q] else {
                    unreachable!()
                };
                // [a]b[c] -> [a]bc when b, c in L01
                if seg_l01(qbody) {
                    let mut next: Vec<ANode> = items[..q].to_vec();
                    next.extend_from_slice(qbody);
                    next.extend_from_slice(&items[q + 1..]);
                    return Some(next);
                }
                // [a]b[c[d]e] -> [a]bc[d]e when b in L01, e in the L00 class
                if let Some(suffix) = suffix_after_last_loop(qbody) {
                    if seg_l00(suffix) {
                        let mut next: Vec<ANode> = items[..q].to_vec();
                        next.extend_from_slice(qbody);
                        next.extend_from_slice(&items[q + 1..]);
                        return Some(next);
                    }
                }
            }
        }
    }
    None
}

fn normalize_seq(mut items: Vec<ANode>) -> Vec<ANode> {
    for _ in 0..100_000 {
        // Innermost first: normalize every loop body before this level.
        for node in &mut items {
            if let ANode::Loop(body) = node {
                let owned = std::mem::take(body);
                *body = normalize_seq(owned);
            }
        }
        match rewrite_seq(&items) {
            Some(next) => items = next,
            None => return items,
        }
    }
    panic!("rewrite system failed to reach a fixed point");
}

fn render(items: &[ANode]) -> Program {
    if items == [ANode::Bottom] {
        // Canonical unconditionally diverging program.
        return parse("[]t[]").unwrap();
    }
    fn conv(items: &[ANode]) -> Vec<Node> {
        items
            .iter()
            .map(|n| match n {
                ANode::Prim(g) => Node::Prim(*g),
                ANode::Loop(body) if body == &[ANode::Bottom] => {
                    // A loop proven non-terminating when entered renders as
                    // the canonical empty infinite loop.
                    Node::Loop(Program::empty())
                }
                ANode::Loop(body) => Node::Loop(Program::new(conv(body))),
                ANode::Bottom => unreachable!("stray bottom after normalization"),
            })
            .collect()
    }
    Program::new(conv(items))
}

/// Apply the dead-loop, nested-loop, transient-loop and infinite-loop
/// rewrites innermost-first to a fixed point.
pub fn normalize(p: &Program) -> Program {
    normalize_with_bottom(p).0
}

/// Like [`normalize`], also reporting whether the whole program was proven
/// to diverge on every input (top-level ⊥, rendered as `[]t[]`).
pub fn normalize_with_bottom(p: &Program) -> (Program, bool) {
    let items = normalize_seq(to_anodes(p));
    let bottom = items == [ANode::Bottom];
    (render(&items), bottom)
}

// ---------------------------------------------------------------------------
// Semantic tabulation.

/// Exact extensional behavior of a fixed-shift program: for every assignment
/// of the window bits, the resulting assignment or `None` for proven
/// divergence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemanticTable {
    /// Head-relative bit positions, sorted ascending.
    pub window: Vec<i64>,
    pub shift: i64,
    /// Indexed by input mask (bit `i` of the mask is the bit at
    /// `window[i]`); entries are output masks, `None` for divergence.
    pub map: Vec<Option<u64>>,
}

/// Hard cap on tabulated window size.
pub const WINDOW_CAP: usize = 24;

#[derive(Clone, Copy, Debug)]
enum Op {
    Toggle(usize),
    /// Jump to `target` when the window bit is 0; condition checks are the
    /// configuration-repeat detection points.
    Jz {
        target: usize,
        bit: usize,
    },
    Jmp(usize),
}

fn compile(items: &[Node], offset: &mut i64, bit_index: &impl Fn(i64) -> usize, code: &mut Vec<Op>) {
    for node in items {
        match node {
            Node::Prim(Gen::T) => code.push(Op::Toggle(bit_index(*offset))),
            Node::Prim(Gen::R) => *offset += 1,
            Node::Prim(Gen::L) => *offset -= 1,
            Node::Loop(body) => {
                let jz_at = code.len();
                code.push(Op::Jz {
                    target: usize::MAX,
                    bit: bit_index(*offset),
                });
                compile(&body.items, offset, bit_index, code);
                code.push(Op::Jmp(jz_at));
                let after = code.len();
                if let Op::Jz { target, .. } = &mut code[jz_at] {
                    *target = after;
                }
            }
        }
    }
}

/// Tabulate a fixed-shift program over all `2^|B|` window assignments.
/// Divergence is detected exactly: within one input the configuration space
/// `(program point, window bits)` is finite, so a repeat at a condition
/// check proves non-termination.
pub fn semantic_table(p: &Program) -> Result<SemanticTable, AnalysisError> {
    let shift = match shift_class(p) {
        ShiftClass::Fixed(i) => i,
        ShiftClass::Unbounded => return Err(AnalysisError::NotFixedShift),
    };
    let window: Vec<i64> = bit_window(p)?.0.into_iter().collect();
    if window.len() > WINDOW_CAP {
        return Err(AnalysisError::WindowTooLarge(window.len()));
    }
    let bit_index = |off: i64| window.binary_search(&off).expect("offset in window");
    let mut code = Vec::new();
    let mut offset = 0;
    compile(&p.items, &mut offset, &bit_index, &mut code);
    debug_assert_eq!(offset, shift);

    let map = (0u64..(1 << window.len()))
        .map(|input| run_compiled(&code, input))
        .collect();
    Ok(SemanticTable { window, shift, map })
}

fn run_compiled(code: &[Op], input: u64) -> Option<u64> {
    let mut bits = input;
    let mut pc = 0usize;
    let mut visited: HashSet<(usize, u64)> = HashSet::new();
    while pc < code.len() {
        match code[pc] {
            Op::Toggle(i) => {
                bits ^= 1 << i;
                pc += 1;
            }
            Op::Jz { target, bit } => {
                if !visited.insert((pc, bits)) {
                    return None;
                }
                if bits & (1 << bit) == 0 {
                    pc = target;
                } else {
                    pc += 1;
                }
            }
            Op::Jmp(target) => pc = target,
        }
    }
    Some(bits)
}

impl SemanticTable {
    /// Identity table on the empty window.
    pub fn identity(shift: i64) -> Self {
        SemanticTable {
            window: Vec::new(),
            shift,
            map: vec![Some(0)],
        }
    }

    /// Output for an assignment given over a superset window `universe`
    /// (sorted), extending by identity outside `self.window`.
    pub fn eval_extended(&self, universe: &[i64], mask: u64) -> Option<u64> {
        let mut own_mask = 0u64;
        for (j, pos) in self.window.iter().enumerate() {
            let i = universe.binary_search(pos).expect("window in universe");
            if mask & (1 << i) != 0 {
                own_mask |= 1 << j;
            }
        }
        let out = self.map[own_mask as usize]?;
        let mut result = mask;
        for (j, pos) in self.window.iter().enumerate() {
            let i = universe.binary_search(pos).expect("window in universe");
            if out & (1 << j) != 0 {
                result |= 1 << i;
            } else {
                result &= !(1 << i);
            }
        }
        Some(result)
    }

    /// Equivalence under identity extension to the union window. The shift
    /// is observable only on halting runs, so two tables that diverge on
    /// every input are equivalent regardless of their nominal shifts.
    pub fn equivalent(&self, other: &SemanticTable) -> bool {
        if self.shift != other.shift {
            return self.map.iter().all(Option::is_none)
                && other.map.iter().all(Option::is_none);
        }
        let universe: Vec<i64> = self
            .window
            .iter()
            .chain(other.window.iter())
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        assert!(universe.len() <= WINDOW_CAP, "union window too large");
        (0u64..(1 << universe.len()))
            .all(|mask| self.eval_extended(&universe, mask) == other.eval_extended(&universe, mask))
    }

    /// Canonical form: drop every window bit the table neither reads nor
    /// writes, so equivalent tables become identical.
    pub fn reduced(&self) -> SemanticTable {
        let mut table = self.clone();
        'outer: loop {
            for j in 0..table.window.len() {
                if table.bit_inert(j) {
                    table = table.without_bit(j);
                    continue 'outer;
                }
            }
            if table.map.iter().all(Option::is_none) {
                // All-divergent: the shift was never observed.
                table.shift = 0;
            }
            return table;
        }
    }

    /// Bit `j` is inert when every entry preserves it and no entry depends
    /// on it.
    fn bit_inert(&self, j: usize) -> bool {
        let bj = 1u64 << j;
        for (mask, entry) in self.map.iter().enumerate() {
            let mask = mask as u64;
            if let Some(out) = entry {
                if out & bj != mask & bj {
                    return false;
                }
            }
            let twin = &self.map[(mask ^ bj) as usize];
            match (entry, twin) {
                (None, None) => {}
                (Some(a), Some(b)) => {
                    if (a & !bj) != (b & !bj) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    fn without_bit(&self, j: usize) -> SemanticTable {
        let mut window = self.window.clone();
        window.remove(j);
        let drop = |mask: u64| -> u64 {
            let low = mask & ((1 << j) - 1);
            let high = (mask >> (j + 1)) << j;
            low | high
        };
        let insert = |mask: u64| -> u64 {
            let low = mask & ((1 << j) - 1);
            let high = (mask >> j) << (j + 1);
            low | high
        };
        let map = (0u64..(1 << window.len()))
            .map(|m| self.map[insert(m) as usize].map(drop))
            .collect();
        SemanticTable {
            window,
            shift: self.shift,
            map,
        }
    }
}

/// Extensional equality of two fixed-shift programs.
pub fn tables_equal(p: &Program, q: &Program) -> Result<bool, AnalysisError> {
    Ok(semantic_table(p)?.equivalent(&semantic_table(q)?))
}

// JSON form: `{"window":[0,1],"shift":0,"map":{"00":"00","01":"10",...}}` —
// assignment strings list bits by ascending window position, "⊥" marks
// divergence.
#[derive(serde::Serialize, serde::Deserialize)]
struct TableRepr {
    window: Vec<i64>,
    shift: i64,
    map: std::collections::BTreeMap<String, String>,
}

fn mask_string(mask: u64, width: usize) -> String {
    (0..width)
        .map(|i| if mask >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

impl serde::Serialize for SemanticTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let w = self.window.len();
        let map = self
            .map
            .iter()
            .enumerate()
            .map(|(input, out)| {
                let value = match out {
                    Some(m) => mask_string(*m, w),
                    None => "⊥".to_string(),
                };
                (mask_string(input as u64, w), value)
            })
            .collect();
        TableRepr {
            window: self.window.clone(),
            shift: self.shift,
            map,
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for SemanticTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = TableRepr::deserialize(d)?;
        let w = repr.window.len();
        if w > WINDOW_CAP {
            return Err(D::Error::custom(format!("window of {w} bits exceeds cap")));
        }
        if !repr.window.windows(2).all(|p| p[0] < p[1]) {
            return Err(D::Error::custom("window must be strictly ascending"));
        }
        let parse_mask = |s: &str| -> Result<u64, D::Error> {
            if s.len() != w {
                return Err(D::Error::custom(format!(
                    "assignment '{s}' has {} bits, window has {w}",
                    s.len()
                )));
            }
            let mut mask = 0u64;
            for (i, c) in s.chars().enumerate() {
                match c {
                    '1' => mask |= 1 << i,
                    '0' => {}
                    _ => return Err(D::Error::custom(format!("bad bit '{c}' in '{s}'"))),
                }
            }
            Ok(mask)
        };
        let mut map = vec![None; 1 << w];
        let mut filled = vec![false; 1 << w];
        for (key, value) in &repr.map {
            let input = parse_mask(key)? as usize;
            if std::mem::replace(&mut filled[input], true) {
                return Err(D::Error::custom(format!("duplicate assignment '{key}'")));
            }
            map[input] = match value.as_str() {
                "⊥" | "bottom" => None,
                out => Some(parse_mask(out)?),
            };
        }
        if let Some(missing) = filled.iter().position(|f| !f) {
            return Err(D::Error::custom(format!(
                "map must be total: assignment '{}' missing",
                mask_string(missing as u64, w)
            )));
        }
        Ok(SemanticTable {
            window: repr.window,
            shift: repr.shift,
            map,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse;

    fn prog(text: &str) -> Program {
        parse(text).unwrap()
    }

    #[test]
    fn shift_class_examples() {
        assert_eq!(shift_class(&Program::empty()), ShiftClass::Fixed(0));
        assert_eq!(shift_class(&prog("r[t]l")), ShiftClass::Fixed(0));
        assert_eq!(shift_class(&prog("rr[t]")), ShiftClass::Fixed(2));
        assert_eq!(shift_class(&prog("[r]")), ShiftClass::Unbounded);
        assert_eq!(shift_class(&prog("[tr[r]r[r]trt[l]l[l]r]")), ShiftClass::Unbounded);
    }

    #[test]
    fn bit_window_examples() {
        assert_eq!(bit_window(&Program::empty()).unwrap().0, BTreeSet::new());
        assert_eq!(
            bit_window(&prog("r[t]l")).unwrap().0,
            BTreeSet::from([1])
        );
        assert_eq!(
            bit_window(&prog("[rtl]")).unwrap().0,
            BTreeSet::from([0, 1])
        );
        assert_eq!(
            bit_window(&prog("[r]")).unwrap_err(),
            AnalysisError::NotFixedShift
        );
    }

    #[test]
    fn segment_classes() {
        assert!(is_l00(&Program::empty()).unwrap());
        assert!(is_l01(&prog("t")).unwrap());
        assert!(is_l00(&prog("rtl")).unwrap());
        assert!(!is_l00(&prog("t")).unwrap());
        assert_eq!(
            is_l00(&prog("[t]")).unwrap_err(),
            AnalysisError::LoopInSegment
        );
        assert!(is_e00(&prog("rr[t]ll")));
        assert!(!is_e00(&prog("r[t]l t")));
        assert!(!is_e00(&prog("[r]")));
        // Toggling bit 0 twice is rejected by the conservative test even
        // though the element is in L00.
        assert!(is_l00(&prog("trtlt")).unwrap());
        assert!(!is_e00(&prog("trtlt")));
    }

    #[test]
    fn normalize_dead_after() {
        assert_eq!(normalize(&prog("[t][r]")).to_string(), "[t]");
        assert_eq!(normalize(&prog("[t]rl[r]")).to_string(), "[t]rl");
        // Generalized via E00: the middle run contains a loop.
        assert_eq!(normalize(&prog("[t]rr[t]ll[r]")).to_string(), "[t]rr[t]ll");
    }

    #[test]
    fn normalize_nested() {
        assert_eq!(normalize(&prog("[[t]]")).to_string(), "[t]");
        assert_eq!(normalize(&prog("[[[t]]]")).to_string(), "[t]");
    }

    #[test]
    fn normalize_dead_inside() {
        // [a[b]c] with a in L01.
        assert_eq!(normalize(&prog("[t[r]rt]")).to_string(), "[trt]");
    }

    #[test]
    fn normalize_transients() {
        // [a]b[c] with b, c in L01 -> [a]bc.
        assert_eq!(normalize(&prog("[r]t[t]")).to_string(), "[r]tt");
        // [a]b[c[d]e] with b in L01, e in the L00 class -> [a]bc[d]e.
        assert_eq!(normalize(&prog("[r]t[rt[r]rl]")).to_string(), "[r]trt[r]rl");
        // [a[b]c] with a in L00, b in L01 -> [abc].
        assert_eq!(normalize(&prog("[rl[t]r]")).to_string(), "[rltr]");
    }

    #[test]
    fn normalize_infinite_loops() {
        assert_eq!(normalize(&prog("[rtl]")).to_string(), "[]");
        assert_eq!(normalize(&prog("[]")).to_string(), "[]");
        // [a[b]c] with trailing c in L01.
        assert_eq!(normalize(&prog("[r[l]t]")).to_string(), "[]");
        // Top-level bottom: [a]b[⊥] with b in L01.
        assert_eq!(normalize(&prog("[r]t[rtl]")).to_string(), "[]t[]");
    }

    #[test]
    fn normalize_idempotent_and_shrinking() {
        for text in [
            "[t][r]",
            "[[t]]",
            "[rtl]",
            "[r]t[rtl]",
            "[t[r]rt]",
            "t[rl[t]r]r",
            "[tr[r]r[r]trt[l]l[l]r]",
        ] {
            let p = prog(text);
            let n = normalize(&p);
            assert_eq!(normalize(&n), n, "idempotent on {text}");
            assert!(n.len() <= p.len(), "never longer on {text}");
        }
    }

    #[test]
    fn semantic_table_examples() {
        let t = semantic_table(&Program::empty()).unwrap();
        assert_eq!(t, SemanticTable::identity(0));

        let clear = semantic_table(&prog("[t]")).unwrap();
        assert_eq!(clear.window, vec![0]);
        assert_eq!(clear.map, vec![Some(0), Some(0)]);

        let empty_loop = semantic_table(&prog("[]")).unwrap();
        assert_eq!(empty_loop.map, vec![Some(0), None]);
    }

    #[test]
    fn tables_equal_examples() {
        // The dead [rtl] is never entered: the preceding [t] clears its bit.
        assert!(tables_equal(&prog("[t][rtl]"), &prog("[t]")).unwrap());
        assert!(!tables_equal(&prog("t"), &prog("r")).unwrap());
        assert!(tables_equal(&prog("[t]t"), &prog("t[t]t[t]t")).unwrap());
        assert_eq!(
            tables_equal(&prog("[r]"), &prog("t")).unwrap_err(),
            AnalysisError::NotFixedShift
        );
    }

    #[test]
    fn reduced_tables_identify_equivalents() {
        let pairs = [
            ("[t][rtl]", "[t]"),
            ("[t]t", "t[t]t[t]t"),
            ("[rtl]", "[]"),
            ("rl", ""),
        ];
        for (a, b) in pairs {
            let ta = semantic_table(&prog(a)).unwrap().reduced();
            let tb = semantic_table(&prog(b)).unwrap().reduced();
            assert_eq!(ta, tb, "{a} vs {b}");
        }
        let ta = semantic_table(&prog("t")).unwrap().reduced();
        let tb = semantic_table(&prog("rtl")).unwrap().reduced();
        assert_ne!(ta, tb);
    }
}
