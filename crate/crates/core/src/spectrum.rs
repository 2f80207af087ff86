//! Deciding k-colourability and assembling chromatic spectra.
//!
//! Validity of a colouring depends only on the per-class colour counts,
//! never on which slot holds which colour, and relabelling colours or
//! permuting classes preserves validity. The per-k decision therefore
//! searches count matrices (one row per class, one column per colour) in
//! a canonical form: rows non-increasing lexicographically and columns
//! non-increasing lexicographically. Every equivalence class of matrices
//! contains its doubly-lexicographic maximum, so enumerating all matrices
//! in that form visits every class at least once; duplicates cost time,
//! not correctness. The brute-force oracle in the tests guards this
//! argument.
//!
//! The column condition is enforced incrementally: columns equal on all
//! rows placed so far form groups, and a new row must be non-increasing
//! within each group. Unused colours stay grouped together, which forces
//! colours to be introduced in first-use order. A prefix of rows is cut
//! as soon as it forces a monochromatic edge or an edge outside the
//! bounds: any edge among placed classes survives every completion, so
//! pruning never removes a valid colouring.

use crate::constructions;
use crate::error::Error;
use crate::hypergraph::{ColourBounds, Colouring, SigmaInstance};
use crate::profile::{self, check_fast, Row};
use rayon::prelude::*;
use serde::Serialize;

/// Outcome of one `k` decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KStatus {
    Yes,
    No,
    Unknown,
}

/// The decision for one colour count, with the search witness and cost.
#[derive(Debug, Clone, Serialize)]
pub struct KVerdict {
    pub k: u32,
    pub status: KStatus,
    /// Present exactly for YES; uses exactly `k` colours and passes the
    /// profile checker.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Colouring>,
    #[serde(skip_serializing_if = "is_zero")]
    pub nodes_explored: u64,
    #[serde(skip_serializing_if = "is_false")]
    pub budget_exhausted: bool,
}

fn is_zero(v: &u64) -> bool {
    *v == 0
}

fn is_false(v: &bool) -> bool {
    !*v
}

/// Interval of k guaranteed colourable by class-monochromatic colourings:
/// `[ceil(n/(s-1)), n]` whenever the largest part repeats a colour inside
/// a class (`delta_max > 1`); `None` otherwise.
pub fn monochromatic_zone(inst: &SigmaInstance) -> Option<(u32, u32)> {
    let (delta_max, _, s) = inst.sigma().stats();
    if delta_max < 2 {
        return None;
    }
    Some((inst.n().div_ceil(s as u32 - 1), inst.n()))
}

/// Decides whether `inst` admits a valid colouring with exactly `k`
/// colours under `bounds`, by exhaustive symmetry-reduced search.
///
/// YES comes with a witness; NO means the reduced space was exhausted;
/// UNKNOWN means the node budget ran out first.
pub fn decide_k(
    inst: &SigmaInstance,
    k: u32,
    bounds: ColourBounds,
    budget: u64,
) -> Result<KVerdict, Error> {
    let nq = inst.vertex_count();
    if k < 1 || k > nq {
        return Err(Error::InvalidParameter(format!(
            "k must be in 1..={nq} for {inst}, got {k}"
        )));
    }
    if bounds.beta > inst.r() {
        return Err(Error::InvalidParameter(format!(
            "beta must be at most r = {}, got {}",
            inst.r(),
            bounds.beta
        )));
    }
    if inst.is_degenerate() {
        // no edges: every surjective assignment is valid
        return Ok(KVerdict {
            k,
            status: KStatus::Yes,
            witness: Some(canonical_surjective(inst, k)),
            nodes_explored: 0,
            budget_exhausted: false,
        });
    }
    let mut search = KSearch {
        inst,
        k,
        bounds,
        budget,
        nodes: 0,
        cnt_rows: Vec::with_capacity(inst.n() as usize),
        rows: Vec::with_capacity(inst.n() as usize),
        group_starts: Vec::with_capacity(inst.n() as usize + 1),
        used: 0,
        witness: None,
    };
    search.group_starts.push(vec![0]); // all colours equal before row one
    let outcome = search.place(0);
    let status = match outcome {
        Outcome::Found => KStatus::Yes,
        Outcome::Exhausted => KStatus::No,
        Outcome::Budget => KStatus::Unknown,
    };
    let witness = search.witness.map(|rows| {
        let col = Colouring::new(inst, rows).expect("witness has instance shape");
        let verdict = check_fast(inst, &col, bounds).expect("witness has instance shape");
        assert!(verdict.is_valid(), "search produced an invalid witness");
        assert_eq!(col.colours_used(), k, "witness must use exactly k colours");
        col
    });
    Ok(KVerdict {
        k,
        status,
        witness,
        nodes_explored: search.nodes,
        budget_exhausted: matches!(outcome, Outcome::Budget),
    })
}

/// Any surjective k-colouring; for edgeless instances this is a witness.
fn canonical_surjective(inst: &SigmaInstance, k: u32) -> Colouring {
    let q = inst.q();
    let rows = (0..inst.n())
        .map(|i| {
            (0..q)
                .map(|j| (i * q + j + 1).min(k))
                .collect::<Vec<u32>>()
        })
        .collect();
    Colouring::new(inst, rows).expect("shape by construction")
}

enum Outcome {
    Found,
    Exhausted,
    Budget,
}

struct KSearch<'a> {
    inst: &'a SigmaInstance,
    k: u32,
    bounds: ColourBounds,
    budget: u64,
    nodes: u64,
    /// per placed class: counts indexed by colour - 1
    cnt_rows: Vec<Vec<u32>>,
    /// the same rows in sparse (colour, count) form for the edge engine
    rows: Vec<Row>,
    /// stack of column-group boundaries, one entry per placed prefix
    group_starts: Vec<Vec<usize>>,
    /// colours used so far (a prefix of 1..=k)
    used: u32,
    witness: Option<Vec<Vec<u32>>>,
}

impl KSearch<'_> {
    fn place(&mut self, class: usize) -> Outcome {
        if class == self.inst.n() as usize {
            if self.used != self.k {
                return Outcome::Exhausted;
            }
            self.witness = Some(
                self.cnt_rows
                    .iter()
                    .map(|cnt| {
                        let mut row = Vec::with_capacity(self.inst.q() as usize);
                        for (idx, &c) in cnt.iter().enumerate() {
                            for _ in 0..c {
                                row.push(idx as u32 + 1);
                            }
                        }
                        row
                    })
                    .collect(),
            );
            return Outcome::Found;
        }
        let mut cnt = vec![0u32; self.k as usize];
        self.next_colour(class, 0, self.inst.q(), true, &mut cnt)
    }

    /// Builds one candidate row colour by colour. `tight` tracks whether
    /// the prefix still equals the previous row (the lexicographic
    /// constraint binds only while it does).
    fn next_colour(
        &mut self,
        class: usize,
        idx: usize,
        rem: u32,
        tight: bool,
        cnt: &mut Vec<u32>,
    ) -> Outcome {
        if idx == self.k as usize {
            debug_assert_eq!(rem, 0);
            return self.commit_row(class, cnt);
        }
        let groups = self.group_starts.last().expect("group stack nonempty");
        let same_group = idx > 0 && !groups.contains(&idx);
        let mut hi = if same_group { cnt[idx - 1] } else { self.inst.q() };
        if tight {
            if let Some(prev) = self.cnt_rows.last() {
                hi = hi.min(prev[idx]);
            }
        }
        hi = hi.min(rem);
        // the tail cannot absorb more than its own capacity
        let tail = (self.k as usize - idx - 1) as u32;
        let lo = rem.saturating_sub(tail * self.inst.q());
        if lo > hi {
            return Outcome::Exhausted;
        }
        for v in (lo..=hi).rev() {
            cnt[idx] = v;
            let still_tight = tight
                && self
                    .cnt_rows
                    .last()
                    .is_some_and(|prev| prev[idx] == v);
            match self.next_colour(class, idx + 1, rem - v, still_tight, cnt) {
                Outcome::Exhausted => {}
                stop => {
                    cnt[idx] = 0;
                    return stop;
                }
            }
        }
        cnt[idx] = 0;
        Outcome::Exhausted
    }

    fn commit_row(&mut self, class: usize, cnt: &[u32]) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::Budget;
        }
        let new_used = cnt
            .iter()
            .enumerate()
            .rev()
            .find(|&(_, &c)| c > 0)
            .map(|(idx, _)| idx as u32 + 1)
            .unwrap_or(0)
            .max(self.used);
        // enough classes left to reach all k colours?
        let left = (self.inst.n() as usize - class - 1) as u32;
        if new_used + left * self.inst.q() < self.k {
            return Outcome::Exhausted;
        }
        let row: Row = cnt
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(idx, &c)| (idx as u32 + 1, c))
            .collect();
        self.rows.push(row);
        let parts = self.inst.sigma().parts();
        let pruned = (self.bounds.alpha >= 2 && self.new_mono(cnt))
            || (self.bounds.alpha > 2
                && profile::search(
                    &self.rows,
                    parts,
                    false,
                    Some(self.bounds.alpha - 1),
                    Some(class),
                )
                .is_some())
            || profile::search(&self.rows, parts, true, Some(self.bounds.beta + 1), Some(class))
                .is_some();
        if pruned {
            self.rows.pop();
            return Outcome::Exhausted;
        }
        let old_used = self.used;
        self.used = new_used;
        self.cnt_rows.push(cnt.to_vec());
        self.group_starts.push(refine_groups(
            self.group_starts.last().expect("group stack nonempty"),
            cnt,
        ));
        let out = self.place(class + 1);
        self.group_starts.pop();
        self.cnt_rows.pop();
        self.rows.pop();
        self.used = old_used;
        out
    }

    /// A new monochromatic edge must use the class just placed, so only
    /// its colours need re-checking.
    fn new_mono(&self, cnt: &[u32]) -> bool {
        let parts = self.inst.sigma().parts();
        for (idx, &c) in cnt.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let colour = idx as u32 + 1;
            let mut counts: Vec<u32> = self
                .rows
                .iter()
                .filter_map(|row| {
                    row.binary_search_by_key(&colour, |&(col, _)| col)
                        .ok()
                        .map(|i| row[i].1)
                })
                .collect();
            if counts.len() < parts.len() {
                continue;
            }
            counts.sort_unstable_by(|a, b| b.cmp(a));
            if parts.iter().zip(counts.iter()).all(|(&p, &c)| c >= p) {
                return true;
            }
        }
        false
    }
}

/// Splits column groups wherever the new row's counts differ.
fn refine_groups(groups: &[usize], cnt: &[u32]) -> Vec<usize> {
    let mut out = Vec::with_capacity(groups.len());
    for (gi, &start) in groups.iter().enumerate() {
        let end = groups.get(gi + 1).copied().unwrap_or(cnt.len());
        out.push(start);
        for c in start + 1..end {
            if cnt[c] != cnt[c - 1] {
                out.push(c);
            }
        }
    }
    out
}

/// Full spectrum over `1..=k_max` with lower/upper chromatic numbers and
/// certified gaps.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub instance: SigmaInstance,
    pub bounds: ColourBounds,
    pub k_max: u32,
    #[serde(rename = "k_results")]
    pub verdicts: Vec<KVerdict>,
    pub chi: Option<u32>,
    pub chi_bar: Option<u32>,
    /// Maximal all-NO intervals strictly between `chi` and `chi_bar`;
    /// empty whenever an UNKNOWN verdict falls in that range.
    pub gaps: Vec<[u32; 2]>,
    pub complete: bool,
}

impl SpectrumReport {
    pub fn status(&self, k: u32) -> Option<KStatus> {
        self.verdicts
            .iter()
            .find(|v| v.k == k)
            .map(|v| v.status)
    }

    /// The YES values of k, ascending.
    pub fn spectrum(&self) -> Vec<u32> {
        self.verdicts
            .iter()
            .filter(|v| v.status == KStatus::Yes)
            .map(|v| v.k)
            .collect()
    }
}

/// Runs the k decision for every `k` in `1..=k_max`. Construction schemes
/// and the monochromatic zone are consulted first; any scheme output that
/// the profile checker accepts under `bounds` settles its k without
/// search. Decisions for different k run in parallel; results are
/// deterministic regardless of scheduling.
pub fn compute_spectrum(
    inst: &SigmaInstance,
    bounds: ColourBounds,
    k_max: u32,
    budget: u64,
) -> Result<SpectrumReport, Error> {
    let nq = inst.vertex_count();
    if k_max < 1 || k_max > nq {
        return Err(Error::InvalidParameter(format!(
            "k_max must be in 1..={nq} for {inst}, got {k_max}"
        )));
    }
    if bounds.beta > inst.r() {
        return Err(Error::InvalidParameter(format!(
            "beta must be at most r = {}, got {}",
            inst.r(),
            bounds.beta
        )));
    }
    let verdicts: Result<Vec<KVerdict>, Error> = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            if !inst.is_degenerate() {
                for (_, col) in constructions::yes_candidates(inst, k) {
                    let v = check_fast(inst, &col, bounds)?;
                    if v.is_valid() {
                        return Ok(KVerdict {
                            k,
                            status: KStatus::Yes,
                            witness: Some(col),
                            nodes_explored: 0,
                            budget_exhausted: false,
                        });
                    }
                }
            }
            decide_k(inst, k, bounds, budget)
        })
        .collect();
    let verdicts = verdicts?;
    let chi = verdicts
        .iter()
        .find(|v| v.status == KStatus::Yes)
        .map(|v| v.k);
    let chi_bar = verdicts
        .iter()
        .rev()
        .find(|v| v.status == KStatus::Yes)
        .map(|v| v.k);
    let gaps = match (chi, chi_bar) {
        (Some(lo), Some(hi)) if hi > lo + 1 => {
            let inner = &verdicts[lo as usize..hi as usize - 1];
            if inner.iter().any(|v| v.status == KStatus::Unknown) {
                Vec::new()
            } else {
                let mut gaps: Vec<[u32; 2]> = Vec::new();
                for v in inner {
                    if v.status == KStatus::No {
                        match gaps.last_mut() {
                            Some(g) if g[1] + 1 == v.k => g[1] = v.k,
                            _ => gaps.push([v.k, v.k]),
                        }
                    }
                }
                gaps
            }
        }
        _ => Vec::new(),
    };
    let complete = verdicts.iter().all(|v| v.status != KStatus::Unknown);
    Ok(SpectrumReport {
        instance: inst.clone(),
        bounds,
        k_max,
        verdicts,
        chi,
        chi_bar,
        gaps,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::check_explicit;
    use crate::partition::Partition;

    fn inst(n: u32, r: u32, q: u32, sigma: &[u32]) -> SigmaInstance {
        SigmaInstance::new(n, r, q, Partition::new(sigma).unwrap()).unwrap()
    }

    /// Naive decision: try every assignment of colours 1..=k, keep the
    /// surjective ones, and validate by explicit edge scan.
    fn naive_decide(h: &SigmaInstance, k: u32, bounds: ColourBounds) -> bool {
        let nq = h.vertex_count();
        let total = (k as u64).pow(nq);
        for code in 0..total {
            let mut x = code;
            let mut rows = vec![vec![0u32; h.q() as usize]; h.n() as usize];
            for class in 0..h.n() as usize {
                for slot in 0..h.q() as usize {
                    rows[class][slot] = (x % k as u64) as u32 + 1;
                    x /= k as u64;
                }
            }
            let c = Colouring::new(h, rows).unwrap();
            if c.colours_used() != k {
                continue;
            }
            if check_explicit(h, &c, bounds, 1_000_000).unwrap().is_valid() {
                return true;
            }
        }
        false
    }

    #[test]
    fn zone_examples() {
        assert_eq!(monochromatic_zone(&inst(5, 3, 2, &[2, 1])), Some((5, 5)));
        assert_eq!(
            monochromatic_zone(&inst(12, 4, 3, &[2, 1, 1])),
            Some((6, 12))
        );
        assert_eq!(monochromatic_zone(&inst(5, 3, 1, &[1, 1, 1])), None);
    }

    #[test]
    fn decide_matches_naive_oracle() {
        let shapes = [
            inst(3, 3, 2, &[2, 1]),
            inst(4, 3, 2, &[2, 1]),
            inst(3, 3, 2, &[1, 1, 1]),
            inst(4, 4, 2, &[2, 2]),
            inst(3, 4, 2, &[2, 1, 1]),
            inst(2, 4, 3, &[3, 1]),
            inst(3, 4, 3, &[2, 2]),
        ];
        for h in &shapes {
            for bounds in [ColourBounds::nmnr(h.r()), ColourBounds::classical(h.r())] {
                for k in 1..=4.min(h.vertex_count()) {
                    let v = decide_k(h, k, bounds, 1_000_000_000).unwrap();
                    assert_ne!(v.status, KStatus::Unknown);
                    assert_eq!(
                        v.status == KStatus::Yes,
                        naive_decide(h, k, bounds),
                        "oracle mismatch on {h} k={k} bounds {bounds:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn decide_named_cases() {
        let h = inst(5, 3, 2, &[2, 1]);
        let b = ColourBounds::nmnr(3);
        assert_eq!(decide_k(&h, 2, b, 1 << 30).unwrap().status, KStatus::Yes);
        assert_eq!(decide_k(&h, 3, b, 1 << 30).unwrap().status, KStatus::No);

        let h = inst(4, 4, 2, &[2, 2]);
        let b = ColourBounds::new(2, 2).unwrap();
        assert_eq!(decide_k(&h, 3, b, 1 << 30).unwrap().status, KStatus::No);
    }

    #[test]
    fn yes_witness_contract() {
        let h = inst(5, 3, 2, &[2, 1]);
        let b = ColourBounds::nmnr(3);
        let v = decide_k(&h, 2, b, 1 << 30).unwrap();
        let w = v.witness.expect("YES carries a witness");
        assert_eq!(w.colours_used(), 2);
        assert!(check_fast(&h, &w, b).unwrap().is_valid());
        assert!(check_explicit(&h, &w, b, 1000).unwrap().is_valid());

        let v = decide_k(&h, 3, b, 1 << 30).unwrap();
        assert!(v.witness.is_none());
        assert!(v.nodes_explored > 0);
    }

    #[test]
    fn budget_zero_yields_unknown() {
        let h = inst(5, 3, 2, &[2, 1]);
        let v = decide_k(&h, 2, ColourBounds::nmnr(3), 0).unwrap();
        assert_eq!(v.status, KStatus::Unknown);
        assert!(v.budget_exhausted);
        assert!(v.witness.is_none());
    }

    #[test]
    fn degenerate_instances_are_yes_everywhere() {
        let h = inst(2, 3, 2, &[1, 1, 1]); // 3 parts > 2 classes: no edges
        assert!(h.is_degenerate());
        for k in 1..=4 {
            let v = decide_k(&h, k, ColourBounds::nmnr(3), 10).unwrap();
            assert_eq!(v.status, KStatus::Yes);
            assert_eq!(v.witness.unwrap().colours_used(), k);
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let h = inst(5, 3, 2, &[2, 1]);
        assert!(decide_k(&h, 0, ColourBounds::nmnr(3), 10).is_err());
        assert!(decide_k(&h, 11, ColourBounds::nmnr(3), 10).is_err());
        assert!(decide_k(&h, 2, ColourBounds::new(2, 4).unwrap(), 10).is_err());
        assert!(compute_spectrum(&h, ColourBounds::nmnr(3), 11, 10).is_err());
    }

    #[test]
    fn pair_class_r3_spectrum() {
        let h = inst(5, 3, 2, &[2, 1]);
        let rep = compute_spectrum(&h, ColourBounds::nmnr(3), 10, 1 << 30).unwrap();
        assert_eq!(rep.spectrum(), vec![2, 5]);
        assert_eq!(rep.chi, Some(2));
        assert_eq!(rep.chi_bar, Some(5));
        assert_eq!(rep.gaps, vec![[3, 4]]);
        assert!(rep.complete);
    }

    #[test]
    fn single_part_classes_have_empty_spectrum() {
        // n = (r-1)^2 + 1 classes of size 1, all parts 1
        let h = inst(5, 3, 1, &[1, 1, 1]);
        let rep = compute_spectrum(&h, ColourBounds::nmnr(3), 5, 1 << 30).unwrap();
        assert!(rep.spectrum().is_empty());
        assert_eq!(rep.chi, None);
        assert_eq!(rep.chi_bar, None);
        assert!(rep.gaps.is_empty());
        assert!(rep.complete);
    }

    #[test]
    fn two_two_instance_has_contiguous_nmnr_spectrum() {
        let h = inst(4, 4, 2, &[2, 2]);
        let rep = compute_spectrum(&h, ColourBounds::nmnr(4), 8, 1 << 30).unwrap();
        assert_eq!(rep.spectrum(), vec![2, 3, 4, 5]);
        assert!(rep.gaps.is_empty());
        assert!(rep.complete);
        // cross-check each k against the naive oracle
        for k in 1..=6 {
            assert_eq!(
                rep.status(k) == Some(KStatus::Yes),
                naive_decide(&h, k, ColourBounds::nmnr(4)),
                "k={k}"
            );
        }
    }

    #[test]
    fn classical_bounds_spectrum_is_upward_closed() {
        for h in [inst(3, 3, 2, &[2, 1]), inst(4, 4, 2, &[2, 2])] {
            let b = ColourBounds::classical(h.r());
            let nq = h.vertex_count();
            let rep = compute_spectrum(&h, b, nq, 1 << 30).unwrap();
            assert!(rep.complete);
            for k in 1..nq {
                let yes_k = rep.status(k) == Some(KStatus::Yes);
                let yes_next = rep.status(k + 1) == Some(KStatus::Yes);
                // splitting one repeated colour of a witness lifts YES to k+1
                assert!(!yes_k || yes_next, "{h}: YES at {k} but not {}", k + 1);
            }
        }
    }

    #[test]
    fn report_serialises_with_documented_keys() {
        let h = inst(5, 3, 2, &[2, 1]);
        let rep = compute_spectrum(&h, ColourBounds::nmnr(3), 10, 1 << 30).unwrap();
        let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["chi"], serde_json::json!(2));
        assert_eq!(v["chi_bar"], serde_json::json!(5));
        assert_eq!(v["gaps"], serde_json::json!([[3, 4]]));
        assert_eq!(v["complete"], serde_json::json!(true));
        assert_eq!(v["k_results"][1]["k"], serde_json::json!(2));
        assert_eq!(v["k_results"][1]["status"], serde_json::json!("yes"));
        assert_eq!(v["k_results"][2]["status"], serde_json::json!("no"));
        assert!(v["k_results"][1]["witness"]["classes"].is_array());
        assert_eq!(v["instance"]["sigma"], serde_json::json!([2, 1]));
    }

    #[test]
    fn construction_fast_path_supplies_witnesses() {
        let h = inst(12, 4, 3, &[2, 1, 1]);
        let rep = compute_spectrum(&h, ColourBounds::nmnr(4), 3, 1 << 30).unwrap();
        // k=3 answered by the block scheme without search
        let v3 = &rep.verdicts[2];
        assert_eq!(v3.status, KStatus::Yes);
        assert_eq!(v3.nodes_explored, 0);
        assert_eq!(
            v3.witness.as_ref().unwrap().classes(),
            crate::constructions::block_colouring(&h).unwrap().classes()
        );
    }
}
