//! Exact algebra for the lamplighter group `(Z/2Z) wr Z` under the
//! generating set `{t, r, l}`: composition, inverses, the Cleary word norm,
//! canonical minimal words, and constructive enumeration of elements by norm.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Finite set of lamp positions currently lit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LampState(BTreeSet<i64>);

impl LampState {
    pub fn new() -> Self {
        LampState(BTreeSet::new())
    }

    pub fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        LampState(iter.into_iter().collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, pos: i64) -> bool {
        self.0.contains(&pos)
    }

    pub fn toggle(&mut self, pos: i64) {
        if !self.0.remove(&pos) {
            self.0.insert(pos);
        }
    }

    /// Leftmost lit position, or 0 when no lamp is lit.
    pub fn support_min(&self) -> i64 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Rightmost lit position, or 0 when no lamp is lit.
    pub fn support_max(&self) -> i64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    /// Symmetric difference with `other` translated by `offset`.
    fn xor_translated(&self, other: &LampState, offset: i64) -> LampState {
        let mut out = self.0.clone();
        for p in other.iter() {
            let q = p + offset;
            if !out.remove(&q) {
                out.insert(q);
            }
        }
        LampState(out)
    }

    fn translated(&self, offset: i64) -> LampState {
        LampState(self.0.iter().map(|p| p + offset).collect())
    }
}

/// An element `(a, b)` of the lamplighter group: a finite lamp configuration
/// and the net displacement of the lamplighter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub lamps: LampState,
    pub shift: i64,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::default()
    }

    pub fn new<I: IntoIterator<Item = i64>>(lamps: I, shift: i64) -> Self {
        GroupElement {
            lamps: LampState::from_iter(lamps),
            shift,
        }
    }

    /// The generator `t = ({0}, 0)`.
    pub fn gen_t() -> Self {
        GroupElement::new([0], 0)
    }

    /// The generator `r = (∅, 1)`.
    pub fn gen_r() -> Self {
        GroupElement::new([], 1)
    }

    /// The generator `l = r⁻¹ = (∅, -1)`.
    pub fn gen_l() -> Self {
        GroupElement::new([], -1)
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.lamps.is_empty()
    }
}

/// `(a1, b1)(a2, b2) = (a1 + σ^{b1} a2, b1 + b2)`, with the shift translating
/// lamp position `p` of `y` to `p + x.shift`.
pub fn compose(x: &GroupElement, y: &GroupElement) -> GroupElement {
    GroupElement {
        lamps: x.lamps.xor_translated(&y.lamps, x.shift),
        shift: x.shift + y.shift,
    }
}

/// `(a, b)⁻¹ = (σ^{-b} a, -b)`; lamp negation is trivial over Z/2Z.
pub fn inverse(x: &GroupElement) -> GroupElement {
    GroupElement {
        lamps: x.lamps.translated(-x.shift),
        shift: -x.shift,
    }
}

/// Cleary word norm of `(a, b)` under `{t, r, l}`: one toggle per lit lamp
/// plus the length of the shortest lamplighter route that visits every lit
/// lamp and ends at `b`.
pub fn norm(x: &GroupElement) -> u64 {
    let toggles = x.lamps.len() as u64;
    let low = x.lamps.support_min();
    let high = x.lamps.support_max();
    let b = x.shift;
    let travel = (high - low)
        + if b >= 0 {
            low.abs() + (high - b).abs()
        } else {
            high.abs() + (low - b).abs()
        };
    toggles + travel as u64
}

/// `d(g, h) = |g⁻¹ h|`.
pub fn word_distance(g: &GroupElement, h: &GroupElement) -> u64 {
    norm(&compose(&inverse(g), h))
}

/// A generator letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    T,
    R,
    L,
}

impl Gen {
    pub fn element(self) -> GroupElement {
        match self {
            Gen::T => GroupElement::gen_t(),
            Gen::R => GroupElement::gen_r(),
            Gen::L => GroupElement::gen_l(),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Gen::T => 't',
            Gen::R => 'r',
            Gen::L => 'l',
        }
    }
}

/// A word over the generators `{t, r, l}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parse(text: &str) -> Option<Word> {
        text.chars()
            .map(|c| match c {
                't' => Some(Gen::T),
                'r' => Some(Gen::R),
                'l' => Some(Gen::L),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{}", g.as_char())?;
        }
        Ok(())
    }
}

/// Fold of [`compose`] over the letters of `w`.
pub fn evaluate(w: &Word) -> GroupElement {
    let mut acc = GroupElement::identity();
    for g in &w.0 {
        acc = compose(&acc, &g.element());
    }
    acc
}

/// Minimal word for `x` along the deterministic route: for `b >= 0` the
/// lamplighter visits the leftmost lit lamp, then the rightmost, then `b`;
/// for `b < 0` the mirror route. Toggles at the near extreme happen on the
/// return pass, so `|canonical_word(x)| = norm(x)`.
pub fn canonical_word(x: &GroupElement) -> Word {
    let mut out = Vec::new();
    let lit = |p: i64| x.lamps.contains(p);
    let low = x.lamps.support_min();
    let high = x.lamps.support_max();
    let b = x.shift;
    if b >= 0 {
        let i = (-low).max(0);
        let k = (high - b).max(0);
        if i > 0 {
            out.extend(std::iter::repeat(Gen::L).take(i as usize));
            out.push(Gen::T);
            out.push(Gen::R);
            for p in (-i + 1)..=-1 {
                if lit(p) {
                    out.push(Gen::T);
                }
                out.push(Gen::R);
            }
        }
        if lit(0) {
            out.push(Gen::T);
        }
        for p in 1..=b {
            out.push(Gen::R);
            if lit(p) {
                out.push(Gen::T);
            }
        }
        if k > 0 {
            out.extend(std::iter::repeat(Gen::R).take(k as usize));
            out.push(Gen::T);
            out.push(Gen::L);
            for p in ((b + 1)..=(b + k - 1)).rev() {
                if lit(p) {
                    out.push(Gen::T);
                }
                out.push(Gen::L);
            }
        }
    } else {
        let i = high.max(0);
        let k = (b - low).max(0);
        if i > 0 {
            out.extend(std::iter::repeat(Gen::R).take(i as usize));
            out.push(Gen::T);
            out.push(Gen::L);
            for p in (1..=(i - 1)).rev() {
                if lit(p) {
                    out.push(Gen::T);
                }
                out.push(Gen::L);
            }
        }
        if lit(0) {
            out.push(Gen::T);
        }
        for p in (b..=-1).rev() {
            out.push(Gen::L);
            if lit(p) {
                out.push(Gen::T);
            }
        }
        if k > 0 {
            out.extend(std::iter::repeat(Gen::L).take(k as usize));
            out.push(Gen::T);
            out.push(Gen::R);
            for p in (b - k + 1)..=(b - 1) {
                if lit(p) {
                    out.push(Gen::T);
                }
                out.push(Gen::R);
            }
        }
    }
    Word(out)
}

/// All group elements of norm exactly `n`, generated constructively from the
/// three-stage route decomposition (not by BFS).
///
/// For each route shape `(i, j, k)` the forced toggles at the far extremes
/// are fixed and the remaining lamp choices range over subsets of the
/// positions passed on the forward sweeps, so every element appears exactly
/// once; the result set is deduplicated anyway.
pub fn elements_of_norm(n: u64) -> BTreeSet<GroupElement> {
    let mut out = BTreeSet::new();
    // mirror = false: b = j >= 0; mirror = true: b = -j <= -1.
    for mirror in [false, true] {
        let j_min = if mirror { 1 } else { 0 };
        for i in 0..=(n / 2) {
            for k in 0..=(n / 2) {
                for j in j_min..=n {
                    let base = 2 * i + j + 2 * k + (i > 0) as u64 + (k > 0) as u64;
                    if base > n {
                        break;
                    }
                    let want = (n - base) as usize;
                    let slots = optional_positions(mirror, i as i64, j as i64, k as i64);
                    if want > slots.len() {
                        continue;
                    }
                    let shift = if mirror { -(j as i64) } else { j as i64 };
                    let mut forced = Vec::new();
                    if i > 0 {
                        forced.push(if mirror { i as i64 } else { -(i as i64) });
                    }
                    if k > 0 {
                        forced.push(if mirror {
                            shift - k as i64
                        } else {
                            shift + k as i64
                        });
                    }
                    for_each_subset(&slots, want, &mut |chosen| {
                        let lamps = forced.iter().chain(chosen.iter()).copied();
                        out.insert(GroupElement::new(lamps, shift));
                    });
                }
            }
        }
    }
    out
}

/// Optional toggle positions for route shape `(i, j, k)`.
fn optional_positions(mirror: bool, i: i64, j: i64, k: i64) -> Vec<i64> {
    let sign = if mirror { -1 } else { 1 };
    let mut slots = Vec::new();
    if i > 0 {
        for p in 1..i {
            slots.push(-sign * p);
        }
    }
    for p in 0..=j {
        slots.push(sign * p);
    }
    if k > 0 {
        for p in 1..k {
            slots.push(sign * (j + p));
        }
    }
    slots
}

fn for_each_subset(slots: &[i64], want: usize, f: &mut impl FnMut(&[i64])) {
    let mut chosen = Vec::with_capacity(want);
    fn rec(slots: &[i64], want: usize, chosen: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
        if want == 0 {
            f(chosen);
            return;
        }
        if slots.len() < want {
            return;
        }
        chosen.push(slots[0]);
        rec(&slots[1..], want - 1, chosen, f);
        chosen.pop();
        rec(&slots[1..], want, chosen, f);
    }
    rec(slots, want, &mut chosen, f);
}

/// Shift and final-position toggle of `x`: `x ∈ L_{k,c}` iff
/// `classify(x) = (k, c == 1)`.
pub fn classify(x: &GroupElement) -> (i64, bool) {
    (x.shift, x.lamps.contains(x.shift))
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            lamps: &'a [i64],
            shift: i64,
        }
        let lamps: Vec<i64> = self.lamps.iter().collect();
        Repr {
            lamps: &lamps,
            shift: self.shift,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            lamps: Vec<i64>,
            shift: i64,
        }
        let repr = Repr::deserialize(deserializer)?;
        let lamps = LampState::from_iter(repr.lamps.iter().copied());
        if lamps.len() != repr.lamps.len() {
            return Err(D::Error::custom("duplicate lamp position"));
        }
        Ok(GroupElement {
            lamps,
            shift: repr.shift,
        })
    }
}
