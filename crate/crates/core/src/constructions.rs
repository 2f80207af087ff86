//! Explicit colouring schemes with guaranteed validity.
//!
//! Each scheme targets an instance family and a specific colour count and
//! produces a deterministic colouring. Validity under the scheme's bounds
//! is a hard post-condition: every constructor re-checks its output with
//! the profile checker and panics if the check fails, since that would be
//! a bug in the scheme, not bad input. Precondition violations, by
//! contrast, are ordinary errors.

use crate::error::Error;
use crate::hypergraph::{ColourBounds, Colouring, SigmaInstance};
use crate::profile::check_fast;

/// A colouring scheme together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeId {
    /// Class-monochromatic colouring, colours in balanced blocks of at
    /// most `s - 1` classes. Needs `ceil(n/(s-1)) <= k <= n`.
    Zone { k: u32 },
    /// Every class holds colours `1..r-1`, each repeated `delta_max - 1`
    /// times. Needs `delta_min = 1 < delta_max` and `q = (r-1)(delta_max-1)`.
    Block,
    /// On pair-class instances with `r >= 6`: `t` classes get fresh colour
    /// pairs, the rest are coloured `{1,2}`. Uses `2 + 2t` colours.
    TwoZone { t: u32 },
    /// Pair-class `r = 4`: all classes `{1,2}` except the last, which is
    /// monochromatic in colour 3.
    SmallR4K3,
    /// Pair-class `r = 5`, same shape as [`SchemeId::SmallR4K3`].
    SmallR5K3,
    /// Pair-class `r = 5`: all classes `{1,2}` except the last two, which
    /// are monochromatic in colours 3 and 4.
    SmallR5K4,
    /// `H(n,4,2|(2,2))`: every class coloured `{1,2}`.
    TwoTwoLow,
    /// `H(n,4,2|(2,2))`: class `i` monochromatic in colour `i + 1`.
    TwoTwoHigh,
}

impl std::fmt::Display for SchemeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SchemeId::Zone { k } => write!(f, "zone(k={k})"),
            SchemeId::Block => write!(f, "block"),
            SchemeId::TwoZone { t } => write!(f, "two-zone(t={t})"),
            SchemeId::SmallR4K3 => write!(f, "small-r4-k3"),
            SchemeId::SmallR5K3 => write!(f, "small-r5-k3"),
            SchemeId::SmallR5K4 => write!(f, "small-r5-k4"),
            SchemeId::TwoTwoLow => write!(f, "two-two-low"),
            SchemeId::TwoTwoHigh => write!(f, "two-two-high"),
        }
    }
}

/// Number of colours a scheme's output uses on `inst`, by contract.
pub fn advertised_colours(inst: &SigmaInstance, scheme: SchemeId) -> u32 {
    match scheme {
        SchemeId::Zone { k } => k,
        SchemeId::Block => inst.r() - 1,
        SchemeId::TwoZone { t } => 2 + 2 * t,
        SchemeId::SmallR4K3 | SchemeId::SmallR5K3 => 3,
        SchemeId::SmallR5K4 => 4,
        SchemeId::TwoTwoLow => 2,
        SchemeId::TwoTwoHigh => inst.n(),
    }
}

/// The bounds a scheme's output is valid under.
pub fn scheme_bounds(inst: &SigmaInstance, scheme: SchemeId) -> ColourBounds {
    match scheme {
        SchemeId::TwoTwoLow | SchemeId::TwoTwoHigh => {
            ColourBounds::new(2, 2).expect("constant bounds")
        }
        _ => ColourBounds::nmnr(inst.r()),
    }
}

/// Builds the scheme's colouring, dispatching on the scheme id.
pub fn build(inst: &SigmaInstance, scheme: SchemeId) -> Result<Colouring, Error> {
    match scheme {
        SchemeId::Zone { k } => zone_colouring(inst, k),
        SchemeId::Block => block_colouring(inst),
        SchemeId::TwoZone { t } => two_zone_colouring(inst, t),
        SchemeId::SmallR4K3 | SchemeId::SmallR5K3 | SchemeId::SmallR5K4 => {
            small_r_colouring(inst, scheme)
        }
        SchemeId::TwoTwoLow | SchemeId::TwoTwoHigh => two_two_colouring(inst, scheme),
    }
}

fn certify(inst: &SigmaInstance, scheme: SchemeId, col: Colouring) -> Colouring {
    let bounds = scheme_bounds(inst, scheme);
    let verdict = check_fast(inst, &col, bounds).expect("scheme output has instance shape");
    assert!(
        verdict.is_valid(),
        "scheme {scheme} produced an invalid colouring on {inst}: {:?}",
        verdict.status
    );
    assert_eq!(
        col.colours_used(),
        advertised_colours(inst, scheme),
        "scheme {scheme} colour count drifted on {inst}"
    );
    col
}

fn mono_rows(colour_of_class: impl Fn(usize) -> u32, n: usize, q: usize) -> Vec<Vec<u32>> {
    (0..n).map(|i| vec![colour_of_class(i); q]).collect()
}

/// Class-monochromatic colouring with colours in balanced blocks.
///
/// The `k` blocks partition the classes as evenly as possible; with
/// `k >= ceil(n/(s-1))` every block has at most `s - 1` classes, so no
/// colour can fill all `s` parts of an edge, and with `delta_max > 1`
/// class-monochromatic edges always repeat a colour.
pub fn zone_colouring(inst: &SigmaInstance, k: u32) -> Result<Colouring, Error> {
    let (delta_max, _, s) = inst.sigma().stats();
    if delta_max < 2 {
        return Err(Error::Precondition(
            "zone scheme needs a repeated part (largest part >= 2)".into(),
        ));
    }
    let n = inst.n();
    let lo = n.div_ceil(s as u32 - 1);
    if k < lo || k > n {
        return Err(Error::Precondition(format!(
            "zone scheme covers {lo} <= k <= {n}, got k={k}"
        )));
    }
    // block sizes n/k rounded: the first n % k blocks take one extra class
    let base = n / k;
    let extra = n % k;
    let colour_of = |i: usize| -> u32 {
        let i = i as u32;
        let cut = extra * (base + 1);
        if i < cut {
            i / (base + 1) + 1
        } else {
            extra + (i - cut) / base + 1
        }
    };
    let rows = mono_rows(colour_of, n as usize, inst.q() as usize);
    let col = Colouring::new(inst, rows)?;
    Ok(certify(inst, SchemeId::Zone { k }, col))
}

/// Every class gets colours `1..r-1`, each `delta_max - 1` times: no
/// colour reaches the largest part within a class, and `r - 1` colours
/// cannot fill `r` distinct slots.
pub fn block_colouring(inst: &SigmaInstance) -> Result<Colouring, Error> {
    let (delta_max, delta_min, _) = inst.sigma().stats();
    if delta_min != 1 || delta_max < 2 {
        return Err(Error::Precondition(
            "block scheme needs smallest part 1 and a repeated part".into(),
        ));
    }
    let want_q = (inst.r() - 1) * (delta_max - 1);
    if inst.q() != want_q {
        return Err(Error::Precondition(format!(
            "block scheme needs q = (r-1)(largest part - 1) = {want_q}, got q={}",
            inst.q()
        )));
    }
    let mut row = Vec::with_capacity(inst.q() as usize);
    for colour in 1..inst.r() {
        for _ in 0..delta_max - 1 {
            row.push(colour);
        }
    }
    let rows = vec![row; inst.n() as usize];
    let col = Colouring::new(inst, rows)?;
    Ok(certify(inst, SchemeId::Block, col))
}

fn is_pair_family(inst: &SigmaInstance) -> bool {
    let parts = inst.sigma().parts();
    inst.q() == 2 && parts[0] == 2 && parts[1..].iter().all(|&p| p == 1)
}

/// Pair-class scheme for `r >= 6`: classes `0..t` get fresh colour pairs
/// `{3+2i, 4+2i}`, all remaining classes are coloured `{1,2}`.
pub fn two_zone_colouring(inst: &SigmaInstance, t: u32) -> Result<Colouring, Error> {
    if !is_pair_family(inst) || inst.r() < 6 {
        return Err(Error::FamilyMismatch(format!(
            "two-zone scheme needs pair classes (q=2, one part 2) with r >= 6, got {inst}"
        )));
    }
    if t > inst.r() - 4 {
        return Err(Error::Precondition(format!(
            "two-zone scheme needs t <= r-4 = {}, got t={t}",
            inst.r() - 4
        )));
    }
    if t >= inst.n() {
        return Err(Error::Precondition(format!(
            "two-zone scheme needs n > t, got n={}, t={t}",
            inst.n()
        )));
    }
    let rows = (0..inst.n())
        .map(|i| {
            if i < t {
                vec![3 + 2 * i, 4 + 2 * i]
            } else {
                vec![1, 2]
            }
        })
        .collect();
    let col = Colouring::new(inst, rows)?;
    Ok(certify(inst, SchemeId::TwoZone { t }, col))
}

/// Pair-class schemes for `r = 4` and `r = 5`: all classes `{1,2}` except
/// the last one (or two), which are monochromatic in fresh colours.
pub fn small_r_colouring(inst: &SigmaInstance, scheme: SchemeId) -> Result<Colouring, Error> {
    let (want_r, mono_tail) = match scheme {
        SchemeId::SmallR4K3 => (4, 1u32),
        SchemeId::SmallR5K3 => (5, 1),
        SchemeId::SmallR5K4 => (5, 2),
        other => {
            return Err(Error::InvalidParameter(format!(
                "{other} is not a small-r scheme"
            )))
        }
    };
    if !is_pair_family(inst) || inst.r() != want_r {
        return Err(Error::FamilyMismatch(format!(
            "{scheme} needs pair classes with r = {want_r}, got {inst}"
        )));
    }
    let n_min = 2 * (inst.r() - 2) * (inst.r() - 1) + 1;
    if inst.n() < n_min {
        return Err(Error::Precondition(format!(
            "{scheme} is claimed for n >= {n_min}, got n={}",
            inst.n()
        )));
    }
    let rows = (0..inst.n())
        .map(|i| {
            if i + mono_tail >= inst.n() {
                let fresh = 3 + i + mono_tail - inst.n();
                vec![fresh, fresh]
            } else {
                vec![1, 2]
            }
        })
        .collect();
    let col = Colouring::new(inst, rows)?;
    Ok(certify(inst, scheme, col))
}

fn is_two_two(inst: &SigmaInstance) -> bool {
    inst.r() == 4 && inst.q() == 2 && inst.sigma().parts() == [2, 2] && inst.n() >= 4
}

/// The `H(n,4,2|(2,2))` schemes: every edge takes two full classes, so
/// both all-classes-`{1,2}` and all-classes-monochromatic-distinct give
/// every edge exactly two colours.
pub fn two_two_colouring(inst: &SigmaInstance, scheme: SchemeId) -> Result<Colouring, Error> {
    if !matches!(scheme, SchemeId::TwoTwoLow | SchemeId::TwoTwoHigh) {
        return Err(Error::InvalidParameter(format!(
            "{scheme} is not a two-two scheme"
        )));
    }
    if !is_two_two(inst) {
        return Err(Error::FamilyMismatch(format!(
            "{scheme} needs H(n,4,2|(2,2)) with n >= 4, got {inst}"
        )));
    }
    let rows = match scheme {
        SchemeId::TwoTwoLow => vec![vec![1, 2]; inst.n() as usize],
        _ => mono_rows(|i| i as u32 + 1, inst.n() as usize, 2),
    };
    let col = Colouring::new(inst, rows)?;
    Ok(certify(inst, scheme, col))
}

/// All schemes that produce exactly `k` colours on `inst` and whose
/// preconditions hold; the spectrum search consults these first.
pub(crate) fn yes_candidates(inst: &SigmaInstance, k: u32) -> Vec<(SchemeId, Colouring)> {
    let mut out = Vec::new();
    let mut push = |scheme: SchemeId| {
        if advertised_colours(inst, scheme) == k {
            if let Ok(col) = build(inst, scheme) {
                out.push((scheme, col));
            }
        }
    };
    push(SchemeId::Zone { k });
    push(SchemeId::Block);
    if k >= 2 && k % 2 == 0 {
        push(SchemeId::TwoZone { t: (k - 2) / 2 });
    }
    push(SchemeId::SmallR4K3);
    push(SchemeId::SmallR5K3);
    push(SchemeId::SmallR5K4);
    push(SchemeId::TwoTwoLow);
    push(SchemeId::TwoTwoHigh);
    out
}
