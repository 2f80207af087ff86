//! Instances, colourings and the explicit edge-scan checker.
//!
//! Edge enumeration is deterministic: classes are visited in ascending
//! order, the intersection size taken from a class is tried largest first,
//! and slot subsets within a class are generated in lexicographic order.
//! Witnesses therefore come out in a fixed order and tests can pin them.

use crate::error::Error;
use crate::partition::{validate_instance, Partition};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// One vertex: class index and slot index inside the class, both 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexRef {
    pub class: u32,
    pub slot: u32,
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.class, self.slot)
    }
}

/// An edge as a sorted list of vertices.
pub type Edge = Vec<VertexRef>;

/// A sigma-hypergraph instance: `n` classes of `q` vertices; an `r`-subset
/// is an edge iff its nonzero class-intersection sizes form `sigma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaInstance {
    n: u32,
    r: u32,
    q: u32,
    sigma: Partition,
    degenerate: bool,
}

impl SigmaInstance {
    /// Validates parameters and builds the instance. All violated
    /// conditions are reported together in the error.
    pub fn new(n: u32, r: u32, q: u32, sigma: Partition) -> Result<Self, Error> {
        let report = validate_instance(n, r, q, &sigma);
        if !report.is_valid() {
            return Err(Error::InvalidInstance(report));
        }
        Ok(SigmaInstance {
            n,
            r,
            q,
            sigma,
            degenerate: report.degenerate,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn sigma(&self) -> &Partition {
        &self.sigma
    }

    pub fn vertex_count(&self) -> u32 {
        self.n * self.q
    }

    /// True when no edge can exist (largest part exceeds `q`, or more
    /// parts than classes). Every colouring is then vacuously admissible.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }
}

impl fmt::Display for SigmaInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({}, {}, {} | {})", self.n, self.r, self.q, self.sigma)
    }
}

impl Serialize for SigmaInstance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SigmaInstance", 4)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("r", &self.r)?;
        s.serialize_field("q", &self.q)?;
        s.serialize_field("sigma", &self.sigma)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for SigmaInstance {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: u32,
            r: u32,
            q: u32,
            sigma: Partition,
        }
        let raw = Raw::deserialize(deserializer)?;
        SigmaInstance::new(raw.n, raw.r, raw.q, raw.sigma).map_err(serde::de::Error::custom)
    }
}

/// Admissibility bounds: every edge must see at least `alpha` and at most
/// `beta` distinct colours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColourBounds {
    pub alpha: u32,
    pub beta: u32,
}

impl ColourBounds {
    pub fn new(alpha: u32, beta: u32) -> Result<Self, Error> {
        if alpha < 1 || beta < alpha {
            return Err(Error::InvalidParameter(format!(
                "bounds require 1 <= alpha <= beta, got ({alpha}, {beta})"
            )));
        }
        Ok(ColourBounds { alpha, beta })
    }

    /// No monochromatic and no rainbow edge: `(2, r-1)`.
    pub fn nmnr(r: u32) -> Self {
        ColourBounds {
            alpha: 2,
            beta: r.saturating_sub(1).max(2),
        }
    }

    /// Only monochromatic edges forbidden: `(2, r)`.
    pub fn classical(r: u32) -> Self {
        ColourBounds { alpha: 2, beta: r }
    }
}

/// A colouring of the `n * q` vertices, stored per class and slot. Colours
/// are normalised on construction to the contiguous range `1..=k` by
/// order-preserving compaction; `colours_used` is that `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Colouring {
    classes: Vec<Vec<u32>>,
    #[serde(skip)]
    colours_used: u32,
}

impl Colouring {
    /// Builds a colouring shaped for `inst` (`n` rows of `q` entries).
    pub fn new(inst: &SigmaInstance, classes: Vec<Vec<u32>>) -> Result<Self, Error> {
        let col = Colouring::from_rows(classes)?;
        col.check_shape(inst)?;
        Ok(col)
    }

    /// Builds a colouring from raw rows (all rows the same length, entries
    /// positive); shape against an instance is checked at use sites.
    pub fn from_rows(classes: Vec<Vec<u32>>) -> Result<Self, Error> {
        if classes.is_empty() {
            return Err(Error::InvalidColouring("no classes".into()));
        }
        let q = classes[0].len();
        if q == 0 {
            return Err(Error::InvalidColouring("empty class".into()));
        }
        if classes.iter().any(|row| row.len() != q) {
            return Err(Error::InvalidColouring("ragged class rows".into()));
        }
        if classes.iter().flatten().any(|&c| c == 0) {
            return Err(Error::InvalidColouring("colour 0 (colours start at 1)".into()));
        }
        let palette: BTreeSet<u32> = classes.iter().flatten().copied().collect();
        let palette: Vec<u32> = palette.into_iter().collect();
        let mut classes = classes;
        for row in &mut classes {
            for c in row {
                *c = palette.binary_search(c).unwrap() as u32 + 1;
            }
        }
        Ok(Colouring {
            classes,
            colours_used: palette.len() as u32,
        })
    }

    /// All vertices colour 1.
    pub fn constant(inst: &SigmaInstance) -> Self {
        Colouring {
            classes: vec![vec![1; inst.q() as usize]; inst.n() as usize],
            colours_used: 1,
        }
    }

    pub fn check_shape(&self, inst: &SigmaInstance) -> Result<(), Error> {
        if self.classes.len() != inst.n() as usize
            || self.classes.iter().any(|r| r.len() != inst.q() as usize)
        {
            return Err(Error::InvalidColouring(format!(
                "shape mismatch: instance wants {} classes of {} slots",
                inst.n(),
                inst.q()
            )));
        }
        Ok(())
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn colour(&self, v: VertexRef) -> u32 {
        self.classes[v.class as usize][v.slot as usize]
    }

    /// Number of distinct colours; colours are exactly `1..=colours_used`.
    pub fn colours_used(&self) -> u32 {
        self.colours_used
    }

    /// Distinct colours on a vertex subset.
    pub fn distinct_on(&self, subset: &[VertexRef]) -> u32 {
        let mut seen: Vec<u32> = subset.iter().map(|&v| self.colour(v)).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len() as u32
    }
}

impl<'de> Deserialize<'de> for Colouring {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            classes: Vec<Vec<u32>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Colouring::from_rows(raw.classes).map_err(serde::de::Error::custom)
    }
}

/// Outcome of an admissibility check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Valid,
    MonochromaticEdge,
    RainbowEdge,
    BoundsViolation,
}

/// A violating edge with its distinct-colour count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeWitness {
    pub vertices: Edge,
    pub distinct_colours: u32,
}

/// Check result: a status, a witness exactly when the status is not
/// `Valid`, and the instance's degeneracy flag (degenerate instances are
/// vacuously valid).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub witness: Option<EdgeWitness>,
    pub degenerate: bool,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.status == VerdictStatus::Valid
    }
}

/// Status for a violating distinct-colour count `d`. Below `alpha` the
/// literally monochromatic case `d = 1` is named; above `beta` the rainbow
/// name is reserved for the no-rainbow bound `beta = r - 1`, any other
/// upper-bound breach is a plain bounds violation.
pub(crate) fn violation_status(d: u32, r: u32, bounds: ColourBounds) -> VerdictStatus {
    if d < bounds.alpha {
        if d == 1 {
            VerdictStatus::MonochromaticEdge
        } else {
            VerdictStatus::BoundsViolation
        }
    } else if d == r && bounds.beta == r - 1 {
        VerdictStatus::RainbowEdge
    } else {
        VerdictStatus::BoundsViolation
    }
}

/// Exact number of edges, by closed form: choose which classes carry which
/// parts (falling factorial over classes, divided by multiplicities of
/// equal parts), then slots within each chosen class.
pub fn edge_count(inst: &SigmaInstance) -> u128 {
    let n = inst.n() as u128;
    let s = inst.sigma().part_count() as u128;
    if s > n {
        return 0;
    }
    let mut ways: u128 = 1;
    for i in 0..s {
        ways *= n - i;
    }
    let parts = inst.sigma().parts();
    let mut run = 1u128;
    for (i, &p) in parts.iter().enumerate() {
        if i > 0 && parts[i - 1] == p {
            run += 1;
        } else {
            run = 1;
        }
        ways /= run;
        ways *= binomial(inst.q(), p);
    }
    ways
}

fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k as u128 {
        out = out * (n as u128 - i) / (i + 1);
    }
    out
}

/// Streams every edge in the deterministic order described in the module
/// docs. The callback returns `false` to stop early; the return value is
/// `false` iff the walk was stopped.
pub(crate) fn for_each_edge<F>(inst: &SigmaInstance, f: &mut F) -> bool
where
    F: FnMut(&[VertexRef]) -> bool,
{
    if inst.is_degenerate() {
        return true;
    }
    // distinct part sizes with multiplicities, descending
    let mut sizes: Vec<(u32, u32)> = Vec::new();
    for &p in inst.sigma().parts() {
        match sizes.last_mut() {
            Some(last) if last.0 == p => last.1 += 1,
            _ => sizes.push((p, 1)),
        }
    }
    let parts_left = inst.sigma().part_count() as u32;
    let mut buf: Vec<VertexRef> = Vec::with_capacity(inst.r() as usize);
    rec_classes(inst, 0, &mut sizes, parts_left, &mut buf, f)
}

fn rec_classes<F>(
    inst: &SigmaInstance,
    class: u32,
    sizes: &mut Vec<(u32, u32)>,
    parts_left: u32,
    buf: &mut Vec<VertexRef>,
    f: &mut F,
) -> bool
where
    F: FnMut(&[VertexRef]) -> bool,
{
    if parts_left == 0 {
        return f(buf);
    }
    if inst.n() - class < parts_left {
        return true;
    }
    for idx in 0..sizes.len() {
        if sizes[idx].1 == 0 {
            continue;
        }
        let a = sizes[idx].0;
        sizes[idx].1 -= 1;
        let go = rec_slots(inst, class, a, 0, sizes, parts_left - 1, buf, f);
        sizes[idx].1 += 1;
        if !go {
            return false;
        }
    }
    rec_classes(inst, class + 1, sizes, parts_left, buf, f)
}

#[allow(clippy::too_many_arguments)]
fn rec_slots<F>(
    inst: &SigmaInstance,
    class: u32,
    need: u32,
    from_slot: u32,
    sizes: &mut Vec<(u32, u32)>,
    parts_left: u32,
    buf: &mut Vec<VertexRef>,
    f: &mut F,
) -> bool
where
    F: FnMut(&[VertexRef]) -> bool,
{
    if need == 0 {
        return rec_classes(inst, class + 1, sizes, parts_left, buf, f);
    }
    if inst.q() - from_slot < need {
        return true;
    }
    for slot in from_slot..=inst.q() - need {
        buf.push(VertexRef { class, slot });
        let go = rec_slots(inst, class, need - 1, slot + 1, sizes, parts_left, buf, f);
        buf.pop();
        if !go {
            return false;
        }
    }
    true
}

/// Materialises every edge. Fails up front when the closed-form count
/// exceeds `cap`.
pub fn enumerate_edges(inst: &SigmaInstance, cap: u64) -> Result<Vec<Edge>, Error> {
    let count = edge_count(inst);
    if count > cap as u128 {
        return Err(Error::CapExceeded { cap, count });
    }
    let mut out = Vec::with_capacity(count as usize);
    for_each_edge(inst, &mut |e: &[VertexRef]| {
        out.push(e.to_vec());
        true
    });
    Ok(out)
}

/// Raw class-intersection profile of an `r`-subset, and whether it equals
/// `sigma` (i.e. the subset is an edge).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileCheck {
    Edge(Partition),
    NotAnEdge(Partition),
}

impl ProfileCheck {
    pub fn is_edge(&self) -> bool {
        matches!(self, ProfileCheck::Edge(_))
    }

    pub fn profile(&self) -> &Partition {
        match self {
            ProfileCheck::Edge(p) | ProfileCheck::NotAnEdge(p) => p,
        }
    }
}

/// Computes the nonzero class-intersection sizes of `subset` as a
/// partition. Errors on wrong subset size, duplicate vertices, or vertices
/// outside the instance.
pub fn edge_profile(inst: &SigmaInstance, subset: &[VertexRef]) -> Result<ProfileCheck, Error> {
    if subset.len() != inst.r() as usize {
        return Err(Error::WrongSubsetSize {
            expected: inst.r(),
            got: subset.len(),
        });
    }
    let mut seen: Vec<VertexRef> = subset.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("duplicate vertex in subset".into()));
    }
    if seen
        .iter()
        .any(|v| v.class >= inst.n() || v.slot >= inst.q())
    {
        return Err(Error::InvalidParameter("vertex outside instance".into()));
    }
    let mut counts = vec![0u32; inst.n() as usize];
    for v in &seen {
        counts[v.class as usize] += 1;
    }
    let nonzero: Vec<u32> = counts.into_iter().filter(|&c| c > 0).collect();
    let profile = Partition::new(&nonzero).expect("nonempty subset");
    if &profile == inst.sigma() {
        Ok(ProfileCheck::Edge(profile))
    } else {
        Ok(ProfileCheck::NotAnEdge(profile))
    }
}

/// Brute-force admissibility check: scans every edge and counts distinct
/// colours. Below-`alpha` violations take priority over above-`beta` ones,
/// and a monochromatic edge wins within the low side (so the status always
/// matches the profile checker); the witness is the first edge of the
/// winning kind in enumeration order. Fails with `CapExceeded` when the
/// instance has more than `cap` edges.
pub fn check_explicit(
    inst: &SigmaInstance,
    col: &Colouring,
    bounds: ColourBounds,
    cap: u64,
) -> Result<Verdict, Error> {
    col.check_shape(inst)?;
    let count = edge_count(inst);
    if count > cap as u128 {
        return Err(Error::CapExceeded { cap, count });
    }
    let mut mono: Option<EdgeWitness> = None;
    let mut low: Option<EdgeWitness> = None;
    let mut high: Option<EdgeWitness> = None;
    for_each_edge(inst, &mut |e: &[VertexRef]| {
        let d = col.distinct_on(e);
        if d < bounds.alpha {
            if d == 1 {
                mono = Some(EdgeWitness {
                    vertices: e.to_vec(),
                    distinct_colours: d,
                });
                return false; // nothing can outrank a monochromatic edge
            }
            if low.is_none() {
                low = Some(EdgeWitness {
                    vertices: e.to_vec(),
                    distinct_colours: d,
                });
            }
        }
        if d > bounds.beta && high.is_none() {
            high = Some(EdgeWitness {
                vertices: e.to_vec(),
                distinct_colours: d,
            });
        }
        true
    });
    let witness = mono.or(low).or(high);
    let status = match &witness {
        None => VerdictStatus::Valid,
        Some(w) => violation_status(w.distinct_colours, inst.r(), bounds),
    };
    Ok(Verdict {
        status,
        witness,
        degenerate: inst.is_degenerate(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: u32, r: u32, q: u32, sigma: &[u32]) -> SigmaInstance {
        SigmaInstance::new(n, r, q, Partition::new(sigma).unwrap()).unwrap()
    }

    fn v(class: u32, slot: u32) -> VertexRef {
        VertexRef { class, slot }
    }

    #[test]
    fn smallest_instance_edges() {
        let h = inst(2, 3, 2, &[2, 1]);
        let edges = enumerate_edges(&h, 100).unwrap();
        assert_eq!(
            edges,
            vec![
                vec![v(0, 0), v(0, 1), v(1, 0)],
                vec![v(0, 0), v(0, 1), v(1, 1)],
                vec![v(0, 0), v(1, 0), v(1, 1)],
                vec![v(0, 1), v(1, 0), v(1, 1)],
            ]
        );
        assert_eq!(edge_count(&h), 4);
    }

    #[test]
    fn degenerate_instance_has_no_edges() {
        let h = inst(1, 3, 2, &[2, 1]);
        assert!(h.is_degenerate());
        assert_eq!(edge_count(&h), 0);
        assert!(enumerate_edges(&h, 10).unwrap().is_empty());
    }

    #[test]
    fn edge_count_forty() {
        let h = inst(5, 3, 2, &[2, 1]);
        assert_eq!(edge_count(&h), 40);
        assert_eq!(enumerate_edges(&h, 100).unwrap().len(), 40);
    }

    #[test]
    fn cap_is_enforced_by_total_count() {
        let h = inst(5, 3, 2, &[2, 1]);
        match enumerate_edges(&h, 10) {
            Err(Error::CapExceeded { cap: 10, count: 40 }) => {}
            other => panic!("expected CapExceeded, got {other:?}"),
        }
    }

    /// Independent oracle: filter all r-subsets of the vertex set by their
    /// class profile.
    fn edges_by_subset_scan(h: &SigmaInstance) -> Vec<Edge> {
        let verts: Vec<VertexRef> = (0..h.n())
            .flat_map(|c| (0..h.q()).map(move |s| v(c, s)))
            .collect();
        let r = h.r() as usize;
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..r).collect();
        if r > verts.len() {
            return out;
        }
        loop {
            let subset: Edge = idx.iter().map(|&i| verts[i]).collect();
            if edge_profile(h, &subset).unwrap().is_edge() {
                out.push(subset);
            }
            // next combination
            let mut i = r;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] != i + verts.len() - r {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..r {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    #[test]
    fn enumeration_matches_subset_scan() {
        let cases = [
            inst(2, 3, 2, &[2, 1]),
            inst(5, 3, 2, &[2, 1]),
            inst(3, 3, 3, &[1, 1, 1]),
            inst(3, 4, 3, &[2, 2]),
            inst(4, 4, 2, &[2, 1, 1]),
            inst(2, 4, 4, &[3, 1]),
            inst(5, 3, 1, &[1, 1, 1]),
            inst(3, 5, 3, &[3, 1, 1]),
        ];
        for h in &cases {
            let mut fast = enumerate_edges(h, 1_000_000).unwrap();
            let mut slow = edges_by_subset_scan(h);
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "edge set mismatch for {h}");
            assert_eq!(fast.len() as u128, edge_count(h), "count mismatch for {h}");
        }
    }

    #[test]
    fn closed_form_matches_enumeration_everywhere_small() {
        // all valid instances with nq <= 12, r <= 6
        for n in 1..=6u32 {
            for q in 1..=6u32 {
                if n * q > 12 {
                    continue;
                }
                for r in 3..=6u32 {
                    for sigma in crate::partition::partitions_of(r) {
                        if sigma.part_count() < 2 {
                            continue;
                        }
                        let h = SigmaInstance::new(n, r, q, sigma).unwrap();
                        let edges = enumerate_edges(&h, 10_000_000).unwrap();
                        assert_eq!(edges.len() as u128, edge_count(&h), "{h}");
                    }
                }
            }
        }
    }

    #[test]
    fn edge_profile_examples() {
        let h = inst(5, 3, 2, &[2, 1]);
        let p = edge_profile(&h, &[v(0, 0), v(0, 1), v(2, 1)]).unwrap();
        assert!(p.is_edge());
        assert_eq!(p.profile(), &Partition::new(&[2, 1]).unwrap());

        let p = edge_profile(&h, &[v(0, 0), v(1, 0), v(2, 0)]).unwrap();
        assert!(!p.is_edge());
        assert_eq!(p.profile(), &Partition::new(&[1, 1, 1]).unwrap());

        match edge_profile(&h, &[v(0, 0), v(0, 1)]) {
            Err(Error::WrongSubsetSize {
                expected: 3,
                got: 2,
            }) => {}
            other => panic!("expected size error, got {other:?}"),
        }

        assert!(edge_profile(&h, &[v(0, 0), v(0, 0), v(1, 0)]).is_err());
        assert!(edge_profile(&h, &[v(9, 0), v(0, 1), v(1, 0)]).is_err());
    }

    #[test]
    fn colouring_normalisation_is_order_preserving() {
        let col = Colouring::from_rows(vec![vec![3, 9], vec![3, 5]]).unwrap();
        assert_eq!(col.classes(), &[vec![1, 3], vec![1, 2]]);
        assert_eq!(col.colours_used(), 3);
    }

    #[test]
    fn colouring_rejects_bad_rows() {
        assert!(Colouring::from_rows(vec![]).is_err());
        assert!(Colouring::from_rows(vec![vec![1, 2], vec![1]]).is_err());
        assert!(Colouring::from_rows(vec![vec![0, 1]]).is_err());
        let h = inst(2, 3, 2, &[2, 1]);
        assert!(Colouring::new(&h, vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn explicit_check_valid_two_colouring() {
        let h = inst(5, 3, 2, &[2, 1]);
        let col = Colouring::new(&h, vec![vec![1, 2]; 5]).unwrap();
        let verdict = check_explicit(&h, &col, ColourBounds::nmnr(3), 1_000).unwrap();
        assert!(verdict.is_valid());
        assert!(verdict.witness.is_none());
    }

    #[test]
    fn explicit_check_constant_is_monochromatic() {
        let h = inst(5, 3, 2, &[2, 1]);
        let col = Colouring::constant(&h);
        let verdict = check_explicit(&h, &col, ColourBounds::nmnr(3), 1_000).unwrap();
        assert_eq!(verdict.status, VerdictStatus::MonochromaticEdge);
        let w = verdict.witness.unwrap();
        assert_eq!(w.vertices, vec![v(0, 0), v(0, 1), v(1, 0)]);
        assert_eq!(w.distinct_colours, 1);
    }

    #[test]
    fn explicit_check_rainbow_witness_pinned() {
        let h = inst(5, 3, 2, &[2, 1]);
        let col = Colouring::new(
            &h,
            vec![vec![1, 2], vec![3, 3], vec![4, 4], vec![5, 5], vec![6, 6]],
        )
        .unwrap();
        let verdict = check_explicit(&h, &col, ColourBounds::nmnr(3), 1_000).unwrap();
        assert_eq!(verdict.status, VerdictStatus::RainbowEdge);
        let w = verdict.witness.unwrap();
        assert_eq!(w.vertices, vec![v(0, 0), v(0, 1), v(1, 0)]);
        assert_eq!(w.distinct_colours, 3);
    }

    #[test]
    fn tight_bounds_label_violations() {
        // four classes of pairs; edges take two full classes
        let h = inst(4, 4, 2, &[2, 2]);
        let bounds = ColourBounds::new(2, 2).unwrap();

        let col = Colouring::new(&h, vec![vec![1, 2], vec![1, 2], vec![3, 4], vec![3, 4]]).unwrap();
        let verdict = check_explicit(&h, &col, bounds, 1_000).unwrap();
        // d = 4 = r, but the violated bound is beta = 2, not a no-rainbow bound
        assert_eq!(verdict.status, VerdictStatus::BoundsViolation);
        assert_eq!(verdict.witness.unwrap().distinct_colours, 4);

        let col = Colouring::new(&h, vec![vec![1, 1], vec![2, 2], vec![1, 1], vec![2, 2]]).unwrap();
        let verdict = check_explicit(&h, &col, bounds, 1_000).unwrap();
        assert_eq!(verdict.status, VerdictStatus::MonochromaticEdge);
        let w = verdict.witness.unwrap();
        assert_eq!(w.vertices, vec![v(0, 0), v(0, 1), v(2, 0), v(2, 1)]);
    }

    #[test]
    fn degenerate_is_vacuously_valid() {
        let h = inst(1, 3, 2, &[2, 1]);
        let col = Colouring::constant(&h);
        let verdict = check_explicit(&h, &col, ColourBounds::nmnr(3), 1_000).unwrap();
        assert!(verdict.is_valid());
        assert!(verdict.degenerate);
    }

    #[test]
    fn instance_json_round_trip() {
        let h = inst(5, 3, 2, &[1, 2]);
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"n":5,"r":3,"q":2,"sigma":[2,1]}"#);
        let back: SigmaInstance = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        // rejected: sum(sigma) != r
        let bad = r#"{"n":5,"r":3,"q":2,"sigma":[2,2]}"#;
        assert!(serde_json::from_str::<SigmaInstance>(bad).is_err());
    }

    #[test]
    fn colouring_json_shape() {
        let h = inst(2, 3, 2, &[2, 1]);
        let col = Colouring::new(&h, vec![vec![1, 2], vec![1, 2]]).unwrap();
        assert_eq!(
            serde_json::to_string(&col).unwrap(),
            r#"{"classes":[[1,2],[1,2]]}"#
        );
        let back: Colouring = serde_json::from_str(r#"{"classes":[[1,2],[1,2]]}"#).unwrap();
        assert_eq!(back, col);
        // reading renormalises the palette the same way from_rows does
        let sparse: Colouring = serde_json::from_str(r#"{"classes":[[5,9],[5,9]]}"#).unwrap();
        assert_eq!(sparse, col);
        assert!(serde_json::from_str::<Colouring>(r#"{"classes":[[1,2],[1]]}"#).is_err());
    }
}
