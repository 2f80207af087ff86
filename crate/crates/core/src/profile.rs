//! The class-profile checker.
//!
//! A colouring is checked through its *profile*: per-class colour
//! multiplicities. Edges only see how many vertices of each colour an edge
//! takes from each class, so admissibility is decidable from the profile
//! alone, without enumerating edges:
//!
//! * a monochromatic edge in colour `c` exists iff the per-class counts of
//!   `c`, sorted non-increasing, dominate the parts of `sigma` position by
//!   position (greedy exchange: matching the largest counts to the largest
//!   parts is optimal);
//! * the exact minimum and maximum number of distinct colours over all
//!   edges is computed by depth-first search over (class for each part,
//!   set of new colours taken from that class), with admissible bounds.
//!
//! The search never tracks which already-seen colours fill the remaining
//! slots of a class: taking `a` vertices from a class whose new-colour set
//! is `N` is feasible iff `|N| <= a <= cap(N) + cap(row ∩ union)`, and the
//! filler colours do not change the union. For the maximum, supersets of
//! feasible new-colour sets dominate, so only maximal ones are branched.
//!
//! Everything here is cross-checked against the explicit edge scan in the
//! test suite; the two checkers must agree on every status.

use crate::error::Error;
use crate::hypergraph::{
    violation_status, ColourBounds, Colouring, Edge, EdgeWitness, SigmaInstance, Verdict,
    VerdictStatus, VertexRef,
};
use crate::partition::Partition;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// Per-class colour multiplicities. Each row is sorted by colour and sums
/// to `q`; colours are the normalised `1..=max_colour` of the colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassProfile {
    rows: Vec<Row>,
    q: u32,
    max_colour: u32,
}

/// One class row: `(colour, multiplicity)` pairs, sorted by colour,
/// multiplicities >= 1.
pub(crate) type Row = Vec<(u32, u32)>;

impl ClassProfile {
    pub fn class_count(&self) -> usize {
        self.rows.len()
    }

    /// `(colour, multiplicity)` pairs of one class, sorted by colour.
    pub fn counts(&self, class: usize) -> &[(u32, u32)] {
        &self.rows[class]
    }

    pub(crate) fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

impl Serialize for ClassProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            counts: Vec<RowDoc<'a>>,
        }
        struct RowDoc<'a>(&'a Row);
        impl Serialize for RowDoc<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut m = serializer.serialize_map(Some(self.0.len()))?;
                for (colour, count) in self.0 {
                    m.serialize_entry(&colour.to_string(), count)?;
                }
                m.end()
            }
        }
        Doc {
            counts: self.rows.iter().map(RowDoc).collect(),
        }
        .serialize(serializer)
    }
}

/// Tallies a colouring into its class profile.
pub fn build_profile(inst: &SigmaInstance, col: &Colouring) -> Result<ClassProfile, Error> {
    col.check_shape(inst)?;
    let rows = col.classes().iter().map(|row| tally(row)).collect();
    Ok(ClassProfile {
        rows,
        q: inst.q(),
        max_colour: col.colours_used(),
    })
}

pub(crate) fn tally(class_row: &[u32]) -> Row {
    let mut sorted = class_row.to_vec();
    sorted.sort_unstable();
    let mut out: Row = Vec::new();
    for c in sorted {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

/// A monochromatic edge found from the profile: the colour and, for each
/// chosen class, the part it carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoWitness {
    pub colour: u32,
    /// `(class index, part)` pairs, one per part of sigma.
    pub assignment: Vec<(usize, u32)>,
}

/// Decides from the profile whether some edge is monochromatic. Colours
/// are tried in ascending order, so the witness is deterministic.
pub fn has_monochromatic_edge(profile: &ClassProfile, sigma: &Partition) -> Option<MonoWitness> {
    mono_witness(profile.rows(), sigma.parts())
}

pub(crate) fn mono_witness(rows: &[Row], parts: &[u32]) -> Option<MonoWitness> {
    let mut palette: Vec<u32> = rows.iter().flatten().map(|&(c, _)| c).collect();
    palette.sort_unstable();
    palette.dedup();
    for c in palette {
        if let Some(assignment) = mono_assignment(rows, parts, c) {
            return Some(MonoWitness {
                colour: c,
                assignment,
            });
        }
    }
    None
}

/// True iff colour `c` alone can fill every part: sort the per-class
/// counts of `c` non-increasing and require the j-th count to cover the
/// j-th largest part.
fn mono_assignment(rows: &[Row], parts: &[u32], c: u32) -> Option<Vec<(usize, u32)>> {
    let mut counts: Vec<(u32, usize)> = rows
        .iter()
        .enumerate()
        .filter_map(|(i, row)| count_of(row, c).map(|n| (n, i)))
        .collect();
    if counts.len() < parts.len() {
        return None;
    }
    // sort by count descending, ties by class ascending for determinism
    counts.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut assignment = Vec::with_capacity(parts.len());
    for (j, &p) in parts.iter().enumerate() {
        if counts[j].0 < p {
            return None;
        }
        assignment.push((counts[j].1, p));
    }
    Some(assignment)
}

fn count_of(row: &Row, c: u32) -> Option<u32> {
    row.binary_search_by_key(&c, |&(col, _)| col)
        .ok()
        .map(|i| row[i].1)
}

/// Exact minimum and maximum distinct-colour count over all edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DistinctRange {
    pub min: u32,
    pub max: u32,
}

/// Computes the exact distinct-colour range over all edges, `None` when
/// the instance has no edges (degenerate shape).
pub fn distinct_colour_range(profile: &ClassProfile, sigma: &Partition) -> Option<DistinctRange> {
    let parts = sigma.parts();
    if profile.rows().len() < parts.len() || sigma.delta_max() > profile.q() {
        return None;
    }
    let min = search(profile.rows(), parts, false, None, None)?.0;
    let max = search(profile.rows(), parts, true, None, None)?.0;
    Some(DistinctRange { min, max })
}

/// One class of a found edge: the class index, its part, and the exact
/// colour multiset taken from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Pick {
    pub class: usize,
    pub part: u32,
    /// (colour, how many vertices of it), every count >= 1
    pub colours: Vec<(u32, u32)>,
}

/// DFS over edges seen through the profile: assigns classes to parts in
/// non-increasing part order and branches over the set of not-yet-seen
/// colours each class contributes.
///
/// * `maximize` selects which extremum is searched.
/// * `stop_at`: early-exit existence mode. For `maximize`, returns the
///   first edge found with at least `stop_at` distinct colours; otherwise
///   the first with at most `stop_at`. `None` computes the exact extremum.
/// * `require_class` restricts the search to edges through that class.
///
/// Returns the extremum (or the found value) with one witnessing edge.
pub(crate) fn search(
    rows: &[Row],
    parts: &[u32],
    maximize: bool,
    stop_at: Option<u32>,
    require_class: Option<usize>,
) -> Option<(u32, Vec<Pick>)> {
    let s = parts.len();
    if rows.len() < s {
        return None;
    }
    let max_colour = rows
        .iter()
        .flatten()
        .map(|&(c, _)| c)
        .max()
        .unwrap_or(0);
    let mut st = SearchState {
        rows,
        parts,
        maximize,
        stop_at,
        require_class,
        used: vec![false; rows.len()],
        union: BitSet::new(max_colour as usize + 1),
        union_count: 0,
        picks: Vec::with_capacity(s),
        best: None,
        supports: rows
            .iter()
            .map(|r| r.iter().map(|&(c, _)| c).collect::<Vec<u32>>())
            .collect(),
    };
    st.dfs(0);
    st.best
}

struct SearchState<'a> {
    rows: &'a [Row],
    parts: &'a [u32],
    maximize: bool,
    stop_at: Option<u32>,
    require_class: Option<usize>,
    used: Vec<bool>,
    union: BitSet,
    union_count: u32,
    picks: Vec<Pick>,
    best: Option<(u32, Vec<Pick>)>,
    supports: Vec<Vec<u32>>,
}

impl SearchState<'_> {
    /// True means "stop the whole search" (existence satisfied).
    fn dfs(&mut self, part_idx: usize) -> bool {
        if let Some(t) = self.stop_at {
            if self.maximize && self.union_count >= t {
                // union only grows; complete with arbitrary feasible picks
                return self.complete_and_record(part_idx);
            }
            if !self.maximize && self.union_count > t {
                return false;
            }
        }
        if part_idx == self.parts.len() {
            if self.require_class.is_some_and(|rc| !self.used[rc]) {
                return false;
            }
            match self.stop_at {
                Some(t) => {
                    let hit = if self.maximize {
                        self.union_count >= t
                    } else {
                        self.union_count <= t
                    };
                    if hit {
                        self.best = Some((self.union_count, self.picks.clone()));
                        return true;
                    }
                    return false;
                }
                None => {
                    let better = match &self.best {
                        None => true,
                        Some((b, _)) => {
                            if self.maximize {
                                self.union_count > *b
                            } else {
                                self.union_count < *b
                            }
                        }
                    };
                    if better {
                        self.best = Some((self.union_count, self.picks.clone()));
                    }
                    return false;
                }
            }
        }
        if !self.viable(part_idx) {
            return false;
        }
        let a = self.parts[part_idx];
        // among runs of equal parts, class indices must increase
        let min_class = if part_idx > 0 && self.parts[part_idx - 1] == a {
            self.picks[part_idx - 1].class + 1
        } else {
            0
        };
        let mut tried_rows: Vec<usize> = Vec::new();
        for class in min_class..self.rows.len() {
            if self.used[class] {
                continue;
            }
            // identical unused rows are interchangeable (the required
            // class is always tried on its own)
            if Some(class) != self.require_class {
                if tried_rows
                    .iter()
                    .any(|&c| self.rows[c] == self.rows[class])
                {
                    continue;
                }
                tried_rows.push(class);
            }
            if self.try_class(part_idx, class, a) {
                return true;
            }
        }
        false
    }

    /// Admissibility bounds for the remaining parts.
    fn viable(&self, part_idx: usize) -> bool {
        let remaining = self.parts.len() - part_idx;
        let free = self.used.iter().filter(|&&u| !u).count();
        if free < remaining {
            return false;
        }
        if self.maximize {
            // optimistic: pair remaining parts (desc) with the largest
            // unseen-support sizes of unused classes (desc)
            let mut caps: Vec<u32> = self
                .used
                .iter()
                .enumerate()
                .filter(|&(_, &u)| !u)
                .map(|(c, _)| {
                    self.supports[c]
                        .iter()
                        .filter(|&&col| !self.union.get(col as usize))
                        .count() as u32
                })
                .collect();
            caps.sort_unstable_by(|x, y| y.cmp(x));
            let optimistic: u32 = self.union_count
                + self.parts[part_idx..]
                    .iter()
                    .zip(caps.iter())
                    .map(|(&p, &c)| p.min(c))
                    .sum::<u32>();
            match (self.stop_at, &self.best) {
                (Some(t), _) => optimistic >= t,
                (None, Some((b, _))) => optimistic > *b,
                (None, None) => true,
            }
        } else {
            match (self.stop_at, &self.best) {
                (Some(t), _) => self.union_count <= t,
                (None, Some((b, _))) => self.union_count < *b,
                (None, None) => true,
            }
        }
    }

    fn try_class(&mut self, part_idx: usize, class: usize, a: u32) -> bool {
        let row = &self.rows[class];
        let new: Vec<(u32, u32)> = row
            .iter()
            .copied()
            .filter(|&(c, _)| !self.union.get(c as usize))
            .collect();
        let cap_seen: u32 = row
            .iter()
            .filter(|&&(c, _)| self.union.get(c as usize))
            .map(|&(_, n)| n)
            .sum();
        self.used[class] = true;
        let stop = if self.maximize {
            // maximal new-sets dominate: all of `new` if it fits, else
            // every a-subset
            if new.len() as u32 <= a {
                self.apply(part_idx, class, a, &new, cap_seen)
            } else {
                let mut stop = false;
                let mut subset: Vec<(u32, u32)> = Vec::with_capacity(a as usize);
                stop |= choose_subsets(&new, a as usize, &mut subset, &mut |sub| {
                    self.apply(part_idx, class, a, sub, cap_seen)
                });
                stop
            }
        } else {
            // every feasible new-set: |N| <= a <= cap(N) + cap_seen
            let mut stop = false;
            let limit = (new.len() as u32).min(a);
            'mask: for mask in 0u32..(1 << new.len()) {
                if mask.count_ones() > limit {
                    continue;
                }
                let mut sub: Vec<(u32, u32)> = Vec::new();
                let mut cap_new = 0;
                for (i, &e) in new.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        sub.push(e);
                        cap_new += e.1;
                    }
                }
                if cap_new + cap_seen < a {
                    continue 'mask;
                }
                if self.apply(part_idx, class, a, &sub, cap_seen) {
                    stop = true;
                    break;
                }
            }
            stop
        };
        self.used[class] = false;
        stop
    }

    /// Commits one class choice (new-colour set `sub`) and recurses.
    fn apply(
        &mut self,
        part_idx: usize,
        class: usize,
        a: u32,
        sub: &[(u32, u32)],
        cap_seen: u32,
    ) -> bool {
        let cap_new: u32 = sub.iter().map(|&(_, n)| n).sum();
        if (sub.len() as u32) > a || cap_new + cap_seen < a {
            return false;
        }
        let colours = self.fill_colours(class, a, sub);
        let added: Vec<u32> = sub.iter().map(|&(c, _)| c).collect();
        for &c in &added {
            self.union.set(c as usize);
        }
        self.union_count += added.len() as u32;
        self.picks.push(Pick {
            class,
            part: a,
            colours,
        });
        let stop = self.dfs(part_idx + 1);
        self.picks.pop();
        for &c in &added {
            self.union.clear(c as usize);
        }
        self.union_count -= added.len() as u32;
        stop
    }

    /// Concrete colour multiset for a class: one of each new colour, the
    /// rest filled from already-seen colours of the row (ascending), then
    /// from the new colours' remaining capacity.
    fn fill_colours(&self, class: usize, a: u32, sub: &[(u32, u32)]) -> Vec<(u32, u32)> {
        let row = &self.rows[class];
        let mut take: Vec<(u32, u32)> = sub.iter().map(|&(c, _)| (c, 1)).collect();
        let mut need = a - sub.len() as u32;
        if need > 0 {
            for &(c, cnt) in row {
                if need == 0 {
                    break;
                }
                if self.union.get(c as usize) {
                    let t = cnt.min(need);
                    take.push((c, t));
                    need -= t;
                }
            }
        }
        if need > 0 {
            for slot in take.iter_mut() {
                if need == 0 {
                    break;
                }
                if let Some(&(_, cnt)) = sub.iter().find(|&&(c, _)| c == slot.0) {
                    let extra = (cnt - slot.1).min(need);
                    slot.1 += extra;
                    need -= extra;
                }
            }
        }
        debug_assert_eq!(need, 0);
        take.sort_unstable();
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(take.len());
        for (c, n) in take {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += n,
                _ => merged.push((c, n)),
            }
        }
        merged
    }

    /// Existence shortcut for the maximize mode: the threshold is already
    /// met, extend with arbitrary feasible picks to a full edge.
    fn complete_and_record(&mut self, part_idx: usize) -> bool {
        let mut extra: Vec<Pick> = Vec::new();
        let mut used = self.used.clone();
        let mut must = self
            .require_class
            .filter(|&rc| !used[rc])
            .into_iter()
            .collect::<Vec<_>>();
        for (j, &a) in self.parts.iter().enumerate().skip(part_idx) {
            let class = must
                .pop()
                .or_else(|| (0..self.rows.len()).find(|&c| !used[c]));
            let Some(class) = class else { return false };
            used[class] = true;
            // take the row's first colours up to a; union can only grow
            let row = &self.rows[class];
            let mut colours: Vec<(u32, u32)> = Vec::new();
            let mut need = a;
            for &(c, cnt) in row {
                if need == 0 {
                    break;
                }
                let t = cnt.min(need);
                colours.push((c, t));
                need -= t;
            }
            let _ = j;
            extra.push(Pick {
                class,
                part: a,
                colours,
            });
        }
        if !must.is_empty() {
            return false;
        }
        let mut picks = self.picks.clone();
        let mut union = self.union.clone();
        let mut count = self.union_count;
        for p in &extra {
            for &(c, _) in &p.colours {
                if !union.get(c as usize) {
                    union.set(c as usize);
                    count += 1;
                }
            }
        }
        picks.extend(extra);
        self.best = Some((count, picks));
        true
    }
}

/// All `k`-subsets of `items`, via callback; callback returning true stops.
fn choose_subsets(
    items: &[(u32, u32)],
    k: usize,
    current: &mut Vec<(u32, u32)>,
    f: &mut impl FnMut(&[(u32, u32)]) -> bool,
) -> bool {
    if current.len() == k {
        return f(current);
    }
    let start = current.len();
    let remaining = k - start;
    for i in 0..items.len() {
        if items.len() - i < remaining {
            break;
        }
        current.push(items[i]);
        if choose_subsets(&items[i + 1..], k, current, f) {
            current.pop();
            return true;
        }
        current.pop();
    }
    false
}

struct BitSet {
    blocks: Vec<u64>,
}

impl BitSet {
    fn new(capacity: usize) -> Self {
        BitSet {
            blocks: vec![0; capacity / 64 + 1],
        }
    }

    fn get(&self, i: usize) -> bool {
        self.blocks[i / 64] & (1 << (i % 64)) != 0
    }

    fn set(&mut self, i: usize) {
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.blocks[i / 64] &= !(1 << (i % 64));
    }
}

impl Clone for BitSet {
    fn clone(&self) -> Self {
        BitSet {
            blocks: self.blocks.clone(),
        }
    }
}

/// Materialises an edge from picks: per class, the lexicographically
/// smallest slots realising the chosen colour multiset.
pub(crate) fn materialize_edge(col: &Colouring, picks: &[Pick]) -> Edge {
    let mut edge: Edge = Vec::new();
    for pick in picks {
        let mut want: Vec<(u32, u32)> = pick.colours.clone();
        for (slot, &colour) in col.classes()[pick.class].iter().enumerate() {
            if let Some(w) = want.iter_mut().find(|w| w.0 == colour && w.1 > 0) {
                w.1 -= 1;
                edge.push(VertexRef {
                    class: pick.class as u32,
                    slot: slot as u32,
                });
            }
        }
        debug_assert!(want.iter().all(|w| w.1 == 0));
    }
    edge.sort_unstable();
    edge
}

fn mono_edge(col: &Colouring, w: &MonoWitness) -> Edge {
    let mut edge: Edge = Vec::new();
    for &(class, part) in &w.assignment {
        let mut left = part;
        for (slot, &colour) in col.classes()[class].iter().enumerate() {
            if left == 0 {
                break;
            }
            if colour == w.colour {
                edge.push(VertexRef {
                    class: class as u32,
                    slot: slot as u32,
                });
                left -= 1;
            }
        }
    }
    edge.sort_unstable();
    edge
}

/// Profile-based admissibility check. Agrees with [`check_explicit`]
/// (`crate::hypergraph`) on the status for every input: below-`alpha`
/// violations win over above-`beta` ones, and a monochromatic witness wins
/// within the low side.
///
/// [`check_explicit`]: crate::hypergraph::check_explicit
pub fn check_fast(
    inst: &SigmaInstance,
    col: &Colouring,
    bounds: ColourBounds,
) -> Result<Verdict, Error> {
    let profile = build_profile(inst, col)?;
    if inst.is_degenerate() {
        return Ok(Verdict {
            status: VerdictStatus::Valid,
            witness: None,
            degenerate: true,
        });
    }
    let parts = inst.sigma().parts();
    let rows = profile.rows();

    if bounds.alpha >= 2 {
        if let Some(w) = mono_witness(rows, parts) {
            return Ok(Verdict {
                status: VerdictStatus::MonochromaticEdge,
                witness: Some(EdgeWitness {
                    vertices: mono_edge(col, &w),
                    distinct_colours: 1,
                }),
                degenerate: false,
            });
        }
    }
    if bounds.alpha > 2 {
        // some edge strictly below alpha but not monochromatic
        if let Some((d, picks)) = search(rows, parts, false, Some(bounds.alpha - 1), None) {
            return Ok(Verdict {
                status: violation_status(d, inst.r(), bounds),
                witness: Some(EdgeWitness {
                    vertices: materialize_edge(col, &picks),
                    distinct_colours: d,
                }),
                degenerate: false,
            });
        }
    }
    if let Some((d, picks)) = search(rows, parts, true, Some(bounds.beta + 1), None) {
        return Ok(Verdict {
            status: violation_status(d, inst.r(), bounds),
            witness: Some(EdgeWitness {
                vertices: materialize_edge(col, &picks),
                distinct_colours: d,
            }),
            degenerate: false,
        });
    }
    Ok(Verdict {
        status: VerdictStatus::Valid,
        witness: None,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::check_explicit;
    use proptest::prelude::*;

    fn inst(n: u32, r: u32, q: u32, sigma: &[u32]) -> SigmaInstance {
        SigmaInstance::new(n, r, q, Partition::new(sigma).unwrap()).unwrap()
    }

    fn col(inst: &SigmaInstance, rows: &[&[u32]]) -> Colouring {
        Colouring::new(inst, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Brute-force distinct range by edge scan, for cross-checking.
    fn range_by_scan(h: &SigmaInstance, c: &Colouring) -> Option<DistinctRange> {
        let edges = crate::hypergraph::enumerate_edges(h, 10_000_000).unwrap();
        if edges.is_empty() {
            return None;
        }
        let counts: Vec<u32> = edges.iter().map(|e| c.distinct_on(e)).collect();
        Some(DistinctRange {
            min: *counts.iter().min().unwrap(),
            max: *counts.iter().max().unwrap(),
        })
    }

    #[test]
    fn profile_rows_and_json() {
        let h = inst(2, 3, 2, &[2, 1]);
        let c = col(&h, &[&[1, 2], &[1, 2]]);
        let p = build_profile(&h, &c).unwrap();
        assert_eq!(p.counts(0), &[(1, 1), (2, 1)]);
        assert_eq!(p.counts(1), &[(1, 1), (2, 1)]);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"counts":[{"1":1,"2":1},{"1":1,"2":1}]}"#
        );
    }

    #[test]
    fn mono_criterion_on_sorted_counts() {
        // sigma = (2,2); counts of colour 1 per class: 3, 2, 1
        let h = inst(3, 4, 3, &[2, 2]);
        let c = col(&h, &[&[1, 1, 1], &[1, 1, 2], &[1, 2, 2]]);
        let p = build_profile(&h, &c).unwrap();
        let w = has_monochromatic_edge(&p, h.sigma()).unwrap();
        assert_eq!(w.colour, 1);
        assert_eq!(w.assignment, vec![(0, 2), (1, 2)]);
        // oracle agrees
        let v = check_explicit(&h, &c, ColourBounds::nmnr(4), 10_000).unwrap();
        assert_eq!(v.status, VerdictStatus::MonochromaticEdge);

        // counts 3, 1, 1 cannot dominate (2, 2), and no other colour can
        let c = col(&h, &[&[1, 1, 1], &[1, 2, 3], &[1, 2, 3]]);
        let p = build_profile(&h, &c).unwrap();
        assert!(has_monochromatic_edge(&p, h.sigma()).is_none());
        let v = check_explicit(&h, &c, ColourBounds::nmnr(4), 10_000).unwrap();
        assert_ne!(v.status, VerdictStatus::MonochromaticEdge);
    }

    #[test]
    fn range_examples() {
        let h = inst(5, 3, 2, &[2, 1]);
        let c = Colouring::constant(&h);
        let p = build_profile(&h, &c).unwrap();
        assert_eq!(
            distinct_colour_range(&p, h.sigma()),
            Some(DistinctRange { min: 1, max: 1 })
        );

        let c = col(&h, &[&[1, 2], &[1, 2], &[1, 2], &[1, 2], &[1, 2]]);
        let p = build_profile(&h, &c).unwrap();
        assert_eq!(
            distinct_colour_range(&p, h.sigma()),
            Some(DistinctRange { min: 2, max: 2 })
        );

        let h = inst(3, 3, 2, &[2, 1]);
        let c = col(&h, &[&[1, 2], &[3, 3], &[4, 4]]);
        let p = build_profile(&h, &c).unwrap();
        assert_eq!(
            distinct_colour_range(&p, h.sigma()),
            Some(DistinctRange { min: 2, max: 3 })
        );
        assert_eq!(range_by_scan(&h, &c), distinct_colour_range(&p, h.sigma()));
    }

    #[test]
    fn range_is_none_for_degenerate() {
        let h = inst(1, 3, 2, &[2, 1]);
        let c = Colouring::constant(&h);
        let p = build_profile(&h, &c).unwrap();
        assert_eq!(distinct_colour_range(&p, h.sigma()), None);
    }

    #[test]
    fn fast_matches_explicit_on_named_cases() {
        let h = inst(4, 4, 2, &[2, 2]);
        let b = ColourBounds::new(2, 2).unwrap();

        let c = col(&h, &[&[1, 2], &[1, 2], &[3, 4], &[3, 4]]);
        let fast = check_fast(&h, &c, b).unwrap();
        assert_eq!(fast.status, VerdictStatus::BoundsViolation);
        assert_eq!(fast.witness.as_ref().unwrap().distinct_colours, 4);

        let c = col(&h, &[&[1, 1], &[2, 2], &[1, 1], &[2, 2]]);
        let fast = check_fast(&h, &c, b).unwrap();
        assert_eq!(fast.status, VerdictStatus::MonochromaticEdge);
        let w = fast.witness.unwrap();
        assert_eq!(w.distinct_colours, 1);
        // witness is a real monochromatic edge
        assert!(crate::hypergraph::edge_profile(&h, &w.vertices)
            .unwrap()
            .is_edge());
        assert_eq!(c.distinct_on(&w.vertices), 1);

        let h = inst(5, 3, 2, &[2, 1]);
        let c = col(&h, &[&[1, 2], &[3, 3], &[4, 4], &[5, 5], &[6, 6]]);
        let fast = check_fast(&h, &c, ColourBounds::nmnr(3)).unwrap();
        assert_eq!(fast.status, VerdictStatus::RainbowEdge);
        let w = fast.witness.unwrap();
        assert_eq!(w.distinct_colours, 3);
        assert!(crate::hypergraph::edge_profile(&h, &w.vertices)
            .unwrap()
            .is_edge());
        assert_eq!(c.distinct_on(&w.vertices), 3);
    }

    #[test]
    fn fast_witnesses_are_real_edges_with_reported_count() {
        let h = inst(4, 4, 3, &[2, 1, 1]);
        let cases: Vec<Vec<Vec<u32>>> = vec![
            vec![vec![1, 1, 1], vec![1, 1, 1], vec![2, 2, 2], vec![2, 2, 2]],
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9], vec![10, 11, 12]],
            vec![vec![1, 1, 2], vec![2, 2, 1], vec![1, 2, 1], vec![2, 1, 2]],
        ];
        for rows in cases {
            let c = Colouring::new(&h, rows).unwrap();
            for bounds in [
                ColourBounds::nmnr(4),
                ColourBounds::classical(4),
                ColourBounds::new(2, 2).unwrap(),
                ColourBounds::new(3, 3).unwrap(),
            ] {
                let fast = check_fast(&h, &c, bounds).unwrap();
                if let Some(w) = &fast.witness {
                    assert!(crate::hypergraph::edge_profile(&h, &w.vertices)
                        .unwrap()
                        .is_edge());
                    assert_eq!(c.distinct_on(&w.vertices), w.distinct_colours);
                }
            }
        }
    }

    /// Exhaustive agreement with the explicit checker on small shapes.
    #[test]
    fn fast_equals_explicit_exhaustively_small() {
        let shapes = [
            inst(3, 3, 2, &[2, 1]),
            inst(4, 3, 2, &[2, 1]),
            inst(3, 3, 2, &[1, 1, 1]),
            inst(4, 4, 2, &[2, 2]),
            inst(3, 4, 2, &[2, 1, 1]),
            inst(2, 4, 3, &[3, 1]),
        ];
        for h in &shapes {
            let nq = h.vertex_count();
            let k_cap = 3u32.min(nq);
            let bounds_list = [
                ColourBounds::nmnr(h.r()),
                ColourBounds::classical(h.r()),
                ColourBounds::new(2, 2).unwrap(),
            ];
            // all colourings with colours in 1..=k_cap
            let total = (k_cap as u64).pow(nq);
            for code in 0..total {
                let mut x = code;
                let mut rows = vec![vec![0u32; h.q() as usize]; h.n() as usize];
                for class in 0..h.n() as usize {
                    for slot in 0..h.q() as usize {
                        rows[class][slot] = (x % k_cap as u64) as u32 + 1;
                        x /= k_cap as u64;
                    }
                }
                let c = Colouring::new(h, rows).unwrap();
                for &b in &bounds_list {
                    let fast = check_fast(h, &c, b).unwrap();
                    let slow = check_explicit(h, &c, b, 1_000_000).unwrap();
                    assert_eq!(
                        fast.status, slow.status,
                        "status mismatch on {h} bounds {b:?} colouring {:?}",
                        c.classes()
                    );
                }
            }
        }
    }

    #[test]
    fn min_is_one_iff_monochromatic() {
        let h = inst(4, 4, 2, &[2, 1, 1]);
        let cases: Vec<Vec<Vec<u32>>> = vec![
            vec![vec![1, 1], vec![1, 1], vec![1, 2], vec![2, 2]],
            vec![vec![1, 2], vec![1, 2], vec![1, 2], vec![1, 2]],
            vec![vec![1, 1], vec![2, 2], vec![3, 3], vec![4, 4]],
        ];
        for rows in cases {
            let c = Colouring::new(&h, rows).unwrap();
            let p = build_profile(&h, &c).unwrap();
            let range = distinct_colour_range(&p, h.sigma()).unwrap();
            assert_eq!(
                range.min == 1,
                has_monochromatic_edge(&p, h.sigma()).is_some()
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Range agrees with the edge-scan oracle on random colourings.
        #[test]
        fn range_matches_scan(rows in prop::collection::vec(
            prop::collection::vec(1u32..5, 2), 4),
        ) {
            let h = inst(4, 4, 2, &[2, 1, 1]);
            let c = Colouring::new(&h, rows).unwrap();
            let p = build_profile(&h, &c).unwrap();
            prop_assert_eq!(distinct_colour_range(&p, h.sigma()), range_by_scan(&h, &c));
        }

        /// Relabelling colours by any permutation leaves the range alone.
        #[test]
        fn range_invariant_under_relabelling(
            rows in prop::collection::vec(prop::collection::vec(1u32..5, 2), 4),
            seed in 0u64..1000,
        ) {
            let h = inst(4, 4, 2, &[2, 1, 1]);
            let c = Colouring::new(&h, rows.clone()).unwrap();
            let k = c.colours_used();
            // seed-driven permutation of 1..=k
            let mut perm: Vec<u32> = (1..=k).collect();
            let mut s = seed;
            for i in (1..perm.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s % (i as u64 + 1)) as usize);
            }
            let relabelled: Vec<Vec<u32>> = c
                .classes()
                .iter()
                .map(|row| row.iter().map(|&x| perm[x as usize - 1]).collect())
                .collect();
            let c2 = Colouring::new(&h, relabelled).unwrap();
            let p1 = build_profile(&h, &c).unwrap();
            let p2 = build_profile(&h, &c2).unwrap();
            prop_assert_eq!(
                distinct_colour_range(&p1, h.sigma()),
                distinct_colour_range(&p2, h.sigma())
            );
        }

        /// Merging two colour classes never increases min or max.
        #[test]
        fn merge_never_increases_range(
            rows in prop::collection::vec(prop::collection::vec(1u32..6, 2), 4),
            pick in 0usize..16,
        ) {
            let h = inst(4, 4, 2, &[2, 1, 1]);
            let c = Colouring::new(&h, rows).unwrap();
            let k = c.colours_used();
            prop_assume!(k >= 2);
            let x = (pick % k as usize) as u32 + 1;
            let y = (pick / k as usize % k as usize) as u32 + 1;
            prop_assume!(x != y);
            let merged: Vec<Vec<u32>> = c
                .classes()
                .iter()
                .map(|row| row.iter().map(|&v| if v == y { x } else { v }).collect())
                .collect();
            let c2 = Colouring::new(&h, merged).unwrap();
            let p1 = build_profile(&h, &c).unwrap();
            let p2 = build_profile(&h, &c2).unwrap();
            let r1 = distinct_colour_range(&p1, h.sigma()).unwrap();
            let r2 = distinct_colour_range(&p2, h.sigma()).unwrap();
            prop_assert!(r2.min <= r1.min);
            prop_assert!(r2.max <= r1.max);
        }
    }
}
