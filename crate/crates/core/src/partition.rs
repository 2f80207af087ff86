//! Integer partitions and instance parameter validation.
//!
//! A partition is stored with its parts sorted non-increasing; all other
//! modules rely on that canonical order (largest part first) when matching
//! edge profiles or assigning parts to classes.

use crate::error::Error;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Partition of a positive integer, parts non-increasing, every part >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order. Rejects an empty list
    /// and zero parts.
    pub fn new(parts: &[u32]) -> Result<Self, Error> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        let mut parts = parts.to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Parts, non-increasing.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Largest part.
    pub fn delta_max(&self) -> u32 {
        self.parts[0]
    }

    /// Smallest part.
    pub fn delta_min(&self) -> u32 {
        *self.parts.last().unwrap()
    }

    /// Number of parts.
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// (largest part, smallest part, number of parts).
    pub fn stats(&self) -> (u32, u32, usize) {
        (self.delta_max(), self.delta_min(), self.part_count())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(&parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `r`, each in canonical non-increasing order. The list
/// itself is ordered lexicographically descending: (r), (r-1, 1), ...
pub fn partitions_of(r: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        let mut p = remaining.min(max_part);
        while p >= 1 {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
            p -= 1;
        }
    }
    if r >= 1 {
        rec(r, r, &mut current, &mut out);
    }
    out
}

/// One violated acceptance condition, named.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationIssue {
    pub condition: &'static str,
    pub message: String,
}

/// Outcome of instance parameter validation. `degenerate` is set on
/// accepted instances that cannot have any edge (largest part exceeds the
/// class size, or more parts than classes); colourings of those are
/// vacuously admissible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
    pub degenerate: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")?;
            if self.degenerate {
                write!(f, " (degenerate: no edge can exist)")?;
            }
            return Ok(());
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} ({})", issue.condition, issue.message)?;
        }
        Ok(())
    }
}

/// Checks instance parameters: `n >= 1`, `q >= 1`, `r >= 3`,
/// `sum(sigma) = r`, `sigma` has at least two parts. Every violated
/// condition is reported individually.
pub fn validate_instance(n: u32, r: u32, q: u32, sigma: &Partition) -> ValidationReport {
    let mut issues = Vec::new();
    if n < 1 {
        issues.push(ValidationIssue {
            condition: "n >= 1",
            message: format!("n = {n}"),
        });
    }
    if q < 1 {
        issues.push(ValidationIssue {
            condition: "q >= 1",
            message: format!("q = {q}"),
        });
    }
    if r < 3 {
        issues.push(ValidationIssue {
            condition: "r >= 3",
            message: format!("r = {r}"),
        });
    }
    if sigma.sum() != r {
        issues.push(ValidationIssue {
            condition: "sum(sigma) = r",
            message: format!("sum{} = {}, r = {}", sigma, sigma.sum(), r),
        });
    }
    if sigma.part_count() < 2 {
        issues.push(ValidationIssue {
            condition: "parts(sigma) >= 2",
            message: format!("sigma = {sigma} has {} part", sigma.part_count()),
        });
    }
    let degenerate =
        issues.is_empty() && (sigma.delta_max() > q || sigma.part_count() as u32 > n);
    ValidationReport { issues, degenerate }
}
