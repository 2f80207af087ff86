//! Turns the known structural results about sigma-hypergraph spectra into
//! machine-checkable claims and tests them against computed spectra.
//!
//! A claim is never taken on trust: `verify_instance` recomputes the
//! spectrum with the search engine and grades each claim against it, so a
//! CONFIRMED status always rests on an independent witness colouring or an
//! exhausted search, never on the statement being checked.

use crate::error::Error;
use crate::hypergraph::{ColourBounds, SigmaInstance};
use crate::spectrum::{compute_spectrum, KStatus, SpectrumReport};
use serde::Serialize;
use std::fmt;

/// What a claim asserts about the colour counts in its `k_set`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimKind {
    /// Every k in the set admits an admissible surjective colouring.
    Colourable,
    /// No k in the set does.
    NotColourable,
    /// The set of colourable k values is a contiguous interval.
    NoGap,
    /// No k at all is colourable.
    EmptySpectrum,
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimKind::Colourable => "COLOURABLE",
            ClaimKind::NotColourable => "NOT_COLOURABLE",
            ClaimKind::NoGap => "NO_GAP",
            ClaimKind::EmptySpectrum => "EMPTY_SPECTRUM",
        })
    }
}

/// A closed interval of colour counts; `hi = None` means unbounded above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KInterval {
    pub lo: u32,
    pub hi: Option<u32>,
}

/// A union of disjoint intervals, kept sorted by `lo`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct KSet(pub Vec<KInterval>);

impl KSet {
    pub fn single(k: u32) -> Self {
        KSet(vec![KInterval { lo: k, hi: Some(k) }])
    }

    pub fn range(lo: u32, hi: u32) -> Self {
        KSet(vec![KInterval { lo, hi: Some(hi) }])
    }

    pub fn at_least(lo: u32) -> Self {
        KSet(vec![KInterval { lo, hi: None }])
    }

    pub fn contains(&self, k: u32) -> bool {
        self.0
            .iter()
            .any(|iv| k >= iv.lo && iv.hi.is_none_or(|hi| k <= hi))
    }

    /// The members that fall inside `1..=k_max`, ascending.
    pub fn members_up_to(&self, k_max: u32) -> Vec<u32> {
        let mut out = Vec::new();
        for iv in &self.0 {
            if iv.lo > k_max {
                continue;
            }
            out.extend(iv.lo.max(1)..=iv.hi.unwrap_or(k_max).min(k_max));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True when the set has members beyond `k_max`.
    pub fn extends_past(&self, k_max: u32) -> bool {
        self.0
            .iter()
            .any(|iv| iv.hi.is_none() || iv.hi.unwrap() > k_max)
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        for (i, iv) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∪ ")?;
            }
            match iv.hi {
                Some(hi) if hi == iv.lo => write!(f, "{{{}}}", iv.lo)?,
                Some(hi) => write!(f, "[{},{}]", iv.lo, hi)?,
                None => write!(f, "[{},∞)", iv.lo)?,
            }
        }
        Ok(())
    }
}

/// One hypothesis of a structural result, with its evaluation on the
/// instance at hand.
#[derive(Debug, Clone, Serialize)]
pub struct Precondition {
    pub name: String,
    pub satisfied: bool,
}

/// A single machine-checkable assertion about an instance's spectrum.
/// The claim is active, and worth grading, only when every precondition
/// holds.
#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    /// Stable tag for the result family the claim comes from.
    pub source: String,
    pub kind: ClaimKind,
    pub k_set: KSet,
    pub preconditions: Vec<Precondition>,
}

impl Claim {
    pub fn is_active(&self) -> bool {
        self.preconditions.iter().all(|p| p.satisfied)
    }
}

/// How a claim fared against the computed spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimStatus {
    Confirmed,
    Refuted,
    Undecided,
    Inactive,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Confirmed => "CONFIRMED",
            ClaimStatus::Refuted => "REFUTED",
            ClaimStatus::Undecided => "UNDECIDED",
            ClaimStatus::Inactive => "INACTIVE",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimResult {
    pub claim: Claim,
    pub status: ClaimStatus,
    pub detail: String,
}

/// The verdict on every claim plus the spectrum they were graded against.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub instance: SigmaInstance,
    pub bounds: ColourBounds,
    pub k_max: u32,
    pub claims: Vec<ClaimResult>,
    /// Colour counts in `1..=k_max` covered by no active per-k claim:
    /// there the spectrum is computed only, nothing is asserted.
    pub theorem_silent: Vec<[u32; 2]>,
    pub spectrum: SpectrumReport,
}

impl VerificationReport {
    pub fn refuted(&self) -> impl Iterator<Item = &ClaimResult> {
        self.claims
            .iter()
            .filter(|c| c.status == ClaimStatus::Refuted)
    }
}

fn pre(name: &str, satisfied: bool) -> Precondition {
    Precondition {
        name: name.to_string(),
        satisfied,
    }
}

fn claim(source: &str, kind: ClaimKind, k_set: KSet, preconditions: Vec<Precondition>) -> Claim {
    Claim {
        source: source.to_string(),
        kind,
        k_set,
        preconditions,
    }
}

/// Lists every known structural claim whose family matches the instance
/// and bounds, with precondition flags evaluated. Bounds other than
/// (2, r-1) and (2, 2) match no family. Total and side-effect free.
pub fn predict_claims(inst: &SigmaInstance, bounds: ColourBounds) -> Vec<Claim> {
    let sigma = inst.sigma();
    let (n, r, q) = (inst.n(), inst.r(), inst.q());
    let s = sigma.part_count() as u32;
    let dmax = sigma.delta_max();
    let dmin = sigma.delta_min();
    let mut out = Vec::new();

    if bounds == ColourBounds::nmnr(r) {
        if dmax == 1 {
            out.push(claim(
                "empty-spectrum-threshold",
                ClaimKind::EmptySpectrum,
                KSet::at_least(1),
                vec![pre("n >= (r-1)^2 + 1", n >= (r - 1) * (r - 1) + 1)],
            ));
        } else {
            // one colour per class, classes blocked into at most s-1 per
            // colour: no edge is monochromatic and none can be rainbow
            out.push(claim(
                "monochromatic-zone",
                ClaimKind::Colourable,
                KSet::range(n.div_ceil(s - 1), n),
                vec![pre("max part of sigma >= 2", true)],
            ));
        }

        if dmin == 1 && dmax >= 2 {
            let pcs = vec![
                pre("q = (r-1)(max part - 1)", q == (r - 1) * (dmax - 1)),
                pre("n > r(s-1) + s", n > r * (s - 1) + s),
            ];
            out.push(claim(
                "block-gap-family",
                ClaimKind::NotColourable,
                KSet::range(1, r - 2),
                pcs.clone(),
            ));
            out.push(claim(
                "block-gap-family",
                ClaimKind::Colourable,
                KSet::single(r - 1),
                pcs.clone(),
            ));
            out.push(claim(
                "block-gap-family",
                ClaimKind::NotColourable,
                KSet::single(r),
                pcs,
            ));
        }

        let pair_family = q == 2 && dmax == 2 && s == r - 1;
        if pair_family {
            let pcs = vec![pre("n >= 2(r-2)(r-1) + 1", n >= 2 * (r - 2) * (r - 1) + 1)];
            let zone_lo = n.div_ceil(r - 2);
            if r >= 6 {
                out.push(claim(
                    "pair-class-large-r",
                    ClaimKind::Colourable,
                    KSet::range(2, 2 * r - 6),
                    pcs.clone(),
                ));
                if 2 * r - 5 < zone_lo {
                    out.push(claim(
                        "pair-class-large-r",
                        ClaimKind::NotColourable,
                        KSet::range(2 * r - 5, zone_lo - 1),
                        pcs.clone(),
                    ));
                }
                out.push(claim(
                    "pair-class-large-r",
                    ClaimKind::NotColourable,
                    KSet::at_least(n + 1),
                    pcs,
                ));
            } else {
                out.push(claim(
                    "pair-class-small-r",
                    ClaimKind::Colourable,
                    KSet::range(2, r - 1),
                    pcs.clone(),
                ));
                if r < zone_lo {
                    out.push(claim(
                        "pair-class-small-r",
                        ClaimKind::NotColourable,
                        KSet::range(r, zone_lo - 1),
                        pcs.clone(),
                    ));
                }
                out.push(claim(
                    "pair-class-small-r",
                    ClaimKind::NotColourable,
                    KSet::at_least(n + 1),
                    pcs,
                ));
            }
        }

        if dmin >= 2 {
            out.push(claim(
                "no-gap-dense-parts",
                ClaimKind::NoGap,
                KSet::at_least(1),
                vec![pre("min part of sigma >= 2", true)],
            ));
        }
    }

    let two_two = (bounds.alpha, bounds.beta) == (2, 2);
    if two_two && r == 4 && q == 2 && sigma.parts() == [2, 2] {
        let pcs = vec![pre("n >= 4", n >= 4)];
        out.push(claim(
            "two-two-gap",
            ClaimKind::Colourable,
            KSet::single(2),
            pcs.clone(),
        ));
        out.push(claim(
            "two-two-gap",
            ClaimKind::Colourable,
            KSet::single(n),
            pcs.clone(),
        ));
        if n >= 4 {
            out.push(claim(
                "two-two-gap",
                ClaimKind::NotColourable,
                KSet::range(3, n - 1),
                pcs,
            ));
        }
    }

    out
}

fn grade_per_k(claim: &Claim, sp: &SpectrumReport, want: KStatus) -> (ClaimStatus, String) {
    let ks = claim.k_set.members_up_to(sp.k_max);
    if ks.is_empty() {
        return (
            ClaimStatus::Undecided,
            format!(
                "claimed set {} does not intersect the examined range 1..={}",
                claim.k_set, sp.k_max
            ),
        );
    }
    let mut unknown: Option<u32> = None;
    for &k in &ks {
        match sp.status(k) {
            Some(got) if got == want => {}
            Some(KStatus::Unknown) | None => {
                unknown.get_or_insert(k);
            }
            Some(got) => {
                let evidence = match got {
                    KStatus::Yes => "a witness colouring was found",
                    KStatus::No => "an exhausted search ruled it out",
                    KStatus::Unknown => unreachable!(),
                };
                return (
                    ClaimStatus::Refuted,
                    format!("k={k} computed {got:?}: {evidence}"),
                );
            }
        }
    }
    if let Some(k) = unknown {
        return (
            ClaimStatus::Undecided,
            format!("k={k} exhausted the search budget"),
        );
    }
    let mut detail = format!(
        "all {} examined k in {} computed {:?}",
        ks.len(),
        claim.k_set,
        want
    );
    if claim.k_set.extends_past(sp.k_max) {
        let nq = sp.instance.vertex_count();
        if want == KStatus::No && sp.k_max == nq {
            detail.push_str(&format!(
                "; k > {nq} needs more colours than vertices, impossible"
            ));
        } else {
            detail.push_str(&format!("; k > {} not examined", sp.k_max));
        }
    }
    (ClaimStatus::Confirmed, detail)
}

fn grade(claim: Claim, sp: &SpectrumReport) -> ClaimResult {
    if !claim.is_active() {
        let failed: Vec<&str> = claim
            .preconditions
            .iter()
            .filter(|p| !p.satisfied)
            .map(|p| p.name.as_str())
            .collect();
        let detail = format!("precondition failed: {}", failed.join(", "));
        return ClaimResult {
            claim,
            status: ClaimStatus::Inactive,
            detail,
        };
    }
    let (status, detail) = match claim.kind {
        ClaimKind::Colourable => grade_per_k(&claim, sp, KStatus::Yes),
        ClaimKind::NotColourable | ClaimKind::EmptySpectrum => grade_per_k(&claim, sp, KStatus::No),
        ClaimKind::NoGap => {
            if !sp.gaps.is_empty() {
                let gaps: Vec<String> = sp
                    .gaps
                    .iter()
                    .map(|g| format!("[{},{}]", g[0], g[1]))
                    .collect();
                (
                    ClaimStatus::Refuted,
                    format!("spectrum has gaps {}", gaps.join(", ")),
                )
            } else if sp.complete {
                (
                    ClaimStatus::Confirmed,
                    format!("spectrum over 1..={} is complete and contiguous", sp.k_max),
                )
            } else {
                (
                    ClaimStatus::Undecided,
                    "some k exhausted the search budget".to_string(),
                )
            }
        }
    };
    ClaimResult {
        claim,
        status,
        detail,
    }
}

fn silent_ranges(results: &[ClaimResult], k_max: u32) -> Vec<[u32; 2]> {
    let mut covered = vec![false; k_max as usize + 1];
    for res in results {
        if !res.claim.is_active() {
            continue;
        }
        match res.claim.kind {
            ClaimKind::EmptySpectrum => covered[1..].fill(true),
            ClaimKind::Colourable | ClaimKind::NotColourable => {
                for k in res.claim.k_set.members_up_to(k_max) {
                    covered[k as usize] = true;
                }
            }
            ClaimKind::NoGap => {}
        }
    }
    let mut out = Vec::new();
    let mut k = 1;
    while k <= k_max {
        if !covered[k as usize] {
            let start = k;
            while k <= k_max && !covered[k as usize] {
                k += 1;
            }
            out.push([start, k - 1]);
        } else {
            k += 1;
        }
    }
    out
}

/// Computes the spectrum up to `k_max` under `budget` nodes per k, then
/// grades every predicted claim against it.
pub fn verify_instance(
    inst: &SigmaInstance,
    bounds: ColourBounds,
    k_max: u32,
    budget: u64,
) -> Result<VerificationReport, Error> {
    let spectrum = compute_spectrum(inst, bounds, k_max, budget)?;
    let results: Vec<ClaimResult> = predict_claims(inst, bounds)
        .into_iter()
        .map(|c| grade(c, &spectrum))
        .collect();
    let theorem_silent = silent_ranges(&results, k_max);
    Ok(VerificationReport {
        instance: inst.clone(),
        bounds,
        k_max,
        claims: results,
        theorem_silent,
        spectrum,
    })
}
