//! Recolouring transformations for instances whose smallest part is at
//! least 2, and a heuristic walk over colour counts built on them.
//!
//! With `delta_min >= 2`, every edge that touches a class takes at least
//! two vertices from it, so making a class monochromatic in a fresh
//! colour can produce neither a monochromatic edge (the fresh colour is
//! absent elsewhere and `s >= 2`) nor a rainbow edge (the fresh colour
//! repeats). The same holds for merging two colours private to one class.
//! Both transformations therefore preserve admissibility under the
//! no-monochromatic/no-rainbow bounds, and both re-check their output as
//! a hard post-condition.

use crate::error::Error;
use crate::hypergraph::{ColourBounds, Colouring, SigmaInstance};
use crate::profile::check_fast;
use serde::Serialize;

/// Which way a walk is asked to move the colour count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Direction {
    Down,
    Up,
}

/// The transformation applied in one walk step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkRule {
    Collapse,
    MergePrivate,
}

/// One applied transformation with its inputs and resulting state.
#[derive(Debug, Clone, Serialize)]
pub struct WalkStep {
    pub rule: WalkRule,
    pub class: usize,
    /// The colours consumed, as labelled before the step.
    pub colours: Vec<u32>,
    /// Colour count after the step (post renormalisation).
    pub k: u32,
    pub colouring: Colouring,
}

/// Why the walk stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TerminalReason {
    TargetReached,
    NoRuleApplies,
    Limit,
}

/// A finished walk: the steps in order and the reason it stopped. Every
/// colouring in the trace is admissible.
#[derive(Debug, Clone, Serialize)]
pub struct WalkTrace {
    pub steps: Vec<WalkStep>,
    pub terminal: TerminalReason,
    /// The colouring the walk ended on (the start if no step applied).
    pub end: Colouring,
}

fn nmnr(inst: &SigmaInstance) -> ColourBounds {
    ColourBounds::nmnr(inst.r())
}

fn require_transform_preconditions(
    inst: &SigmaInstance,
    col: &Colouring,
    class: usize,
) -> Result<(), Error> {
    if inst.sigma().delta_min() < 2 {
        return Err(Error::Precondition(
            "recolouring needs every part of sigma to be at least 2".into(),
        ));
    }
    if class >= inst.n() as usize {
        return Err(Error::InvalidParameter(format!(
            "class index {class} out of range for {inst}"
        )));
    }
    let verdict = check_fast(inst, col, nmnr(inst))?;
    if !verdict.is_valid() {
        return Err(Error::Precondition(format!(
            "start colouring is not admissible: {:?}",
            verdict.status
        )));
    }
    Ok(())
}

fn certify(inst: &SigmaInstance, col: Colouring, what: &str) -> Colouring {
    let verdict = check_fast(inst, &col, nmnr(inst)).expect("transform preserves shape");
    assert!(
        verdict.is_valid(),
        "{what} broke admissibility: {:?}",
        verdict.status
    );
    col
}

/// Colours appearing in `class` and nowhere else, ascending.
pub fn private_colours(col: &Colouring, class: usize) -> Vec<u32> {
    let mut mine: Vec<u32> = col.classes()[class].to_vec();
    mine.sort_unstable();
    mine.dedup();
    mine.retain(|&c| {
        col.classes()
            .iter()
            .enumerate()
            .all(|(i, row)| i == class || !row.contains(&c))
    });
    mine
}

/// Recolours one whole class with a fresh colour. Valid input stays
/// valid; the colour count becomes `k - (private colours of the class) + 1`.
pub fn collapse_class(
    inst: &SigmaInstance,
    col: &Colouring,
    class: usize,
) -> Result<Colouring, Error> {
    require_transform_preconditions(inst, col, class)?;
    let fresh = col.colours_used() + 1;
    let mut rows: Vec<Vec<u32>> = col.classes().to_vec();
    let privates = private_colours(col, class).len() as u32;
    rows[class] = vec![fresh; inst.q() as usize];
    let out = Colouring::new(inst, rows)?;
    debug_assert_eq!(out.colours_used(), col.colours_used() - privates + 1);
    Ok(certify(inst, out, "collapse"))
}

/// Replaces two colours private to one class with a single fresh colour.
/// Valid input stays valid; the colour count drops by exactly one.
pub fn merge_private_colours(
    inst: &SigmaInstance,
    col: &Colouring,
    class: usize,
    x: u32,
    y: u32,
) -> Result<Colouring, Error> {
    require_transform_preconditions(inst, col, class)?;
    if x == y {
        return Err(Error::Precondition(
            "merge needs two different colours".into(),
        ));
    }
    for c in [x, y] {
        if !col.classes()[class].contains(&c) {
            return Err(Error::Precondition(format!(
                "colour {c} does not appear in class {class}"
            )));
        }
        for (i, row) in col.classes().iter().enumerate() {
            if i != class && row.contains(&c) {
                return Err(Error::Precondition(format!(
                    "colour {c} is not private to class {class}: it also appears in class {i}"
                )));
            }
        }
    }
    let fresh = col.colours_used() + 1;
    let mut rows: Vec<Vec<u32>> = col.classes().to_vec();
    for v in rows[class].iter_mut() {
        if *v == x || *v == y {
            *v = fresh;
        }
    }
    let out = Colouring::new(inst, rows)?;
    assert_eq!(
        out.colours_used(),
        col.colours_used() - 1,
        "merge must drop the colour count by one"
    );
    Ok(certify(inst, out, "merge"))
}

/// Greedy walk over colour counts: repeatedly picks the lowest-index
/// non-monochromatic class and recolours it by its private-colour count
/// `p`: `p >= 2` merges the two smallest privates (k - 1), `p <= 1`
/// collapses the class (k unchanged for `p = 1`, k + 1 for `p = 0`).
///
/// The rule set does not depend on `direction`; the direction only
/// states which side of the start the target lies on and is validated
/// against `target_k`. The walk is a best-effort explorer: reaching the
/// target is not guaranteed, and stopping short proves nothing about the
/// spectrum.
pub fn spectrum_walk(
    inst: &SigmaInstance,
    col: &Colouring,
    direction: Direction,
    target_k: u32,
    step_limit: usize,
) -> Result<WalkTrace, Error> {
    require_transform_preconditions(inst, col, 0)?;
    let nq = inst.vertex_count();
    if target_k < 1 || target_k > nq {
        return Err(Error::InvalidParameter(format!(
            "target_k must be in 1..={nq}, got {target_k}"
        )));
    }
    let start_k = col.colours_used();
    let direction_ok = match direction {
        Direction::Down => target_k <= start_k,
        Direction::Up => target_k >= start_k,
    };
    if !direction_ok {
        return Err(Error::InvalidParameter(format!(
            "direction {direction:?} does not point from k={start_k} to target_k={target_k}"
        )));
    }
    let mut current = col.clone();
    let mut steps: Vec<WalkStep> = Vec::new();
    let terminal = loop {
        if current.colours_used() == target_k {
            break TerminalReason::TargetReached;
        }
        if steps.len() >= step_limit {
            break TerminalReason::Limit;
        }
        let Some(class) = current
            .classes()
            .iter()
            .position(|row| row.iter().any(|&c| c != row[0]))
        else {
            break TerminalReason::NoRuleApplies;
        };
        let privates = private_colours(&current, class);
        let (rule, colours, next) = if privates.len() >= 2 {
            let (x, y) = (privates[0], privates[1]);
            (
                WalkRule::MergePrivate,
                vec![x, y],
                merge_private_colours(inst, &current, class, x, y)?,
            )
        } else {
            let mut involved: Vec<u32> = current.classes()[class].to_vec();
            involved.sort_unstable();
            involved.dedup();
            (
                WalkRule::Collapse,
                involved,
                collapse_class(inst, &current, class)?,
            )
        };
        steps.push(WalkStep {
            rule,
            class,
            colours,
            k: next.colours_used(),
            colouring: next.clone(),
        });
        current = next;
    };
    Ok(WalkTrace {
        steps,
        terminal,
        end: current,
    })
}
