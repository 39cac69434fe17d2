//! `P²`, with `c1` read as an integer.
//!
//! `c2 ≥ c1 - 1`, with equality exactly for `O(1) ⊕ O(t)`. Above that line
//! `c2 ≥ 2c1 - 4`, so each offset `k = c2 - c1` leaves finitely many `c1`.

use alloc::vec::Vec;

use super::{label, ClassificationEntry, Constraint, FamilyDescriptor, ListId, Stability};
use crate::bundle::{Bundle, Existence, Splitting};
use crate::error::Result;
use crate::surface::{Divisor, Surface};

const EXAMPLE_3_9: &str = "Fujisawa, Example (3.9)";
const EXAMPLE_3_11: &str = "Fujisawa, Example (3.11)";

fn o(n: i64) -> Divisor {
    Divisor::plane(n)
}

/// `O(1) ⊕ O(t)` for `t ≥ 1`: the bundles with `c2 = c1 - 1`.
pub(super) fn linear_family() -> FamilyDescriptor {
    FamilyDescriptor {
        fixed: o(1),
        offset: o(0),
        step: o(1),
        t_min: 1,
        t_max: None,
        curve_choice: None,
    }
}

fn with_stability(mut e: ClassificationEntry, s: Stability) -> ClassificationEntry {
    e.stability = Some(s);
    e
}

/// `O(a) ⊕ O(b)` with `a ≤ b`; `O(b) ⊂ E` destabilizes unless `a = b`.
fn split(a: i64, b: i64) -> ClassificationEntry {
    let stability = if a == b {
        Stability::SemistableNotStable
    } else {
        Stability::NotSemistable
    };
    let b = Bundle::direct_sum(o(a), o(b)).expect("same surface");
    with_stability(
        ClassificationEntry::bundle(b, Existence::ExactCriterion),
        stability,
    )
}

fn nonsplit(
    sub: i64,
    quot: i64,
    deg_z: i64,
    cite: &'static str,
    s: Stability,
) -> ClassificationEntry {
    let b =
        Bundle::extension(o(sub), o(quot), deg_z, Splitting::NonSplit).expect("valid extension");
    with_stability(ClassificationEntry::bundle(b, Existence::Cited(cite)), s)
}

fn tangent(k: i64) -> ClassificationEntry {
    let b = if k == 0 {
        Bundle::tangent()
    } else {
        Bundle::tangent_twist(k)
    };
    with_stability(
        ClassificationEntry::bundle(b, Existence::Proved),
        Stability::Stable,
    )
}

/// The bundles with `c1 = c1` and `c2 = c1 + k`, for `0 ≤ k ≤ 2`.
fn offset_cases(c1: i64, k: i64) -> Vec<ClassificationEntry> {
    match (k, c1) {
        (0, 3) => alloc::vec![tangent(0)],
        (0, 4) => alloc::vec![split(2, 2)],
        (1, 4) => alloc::vec![nonsplit(
            2,
            2,
            1,
            EXAMPLE_3_9,
            Stability::SemistableNotStable
        )],
        (1, 5) => alloc::vec![split(2, 3)],
        (2, 4) => alloc::vec![nonsplit(1, 3, 3, EXAMPLE_3_11, Stability::Stable)],
        (2, 5) => alloc::vec![
            nonsplit(3, 2, 1, EXAMPLE_3_9, Stability::NotSemistable),
            tangent(1),
        ],
        (2, 6) => alloc::vec![split(2, 4)],
        _ => Vec::new(),
    }
}

/// All cases with `c2 ≤ n` (`n ≤ 6`), by `(c2, c1)`.
fn c2_cases(n: i64) -> Vec<ClassificationEntry> {
    let mut out = Vec::new();
    for c2 in 1..=n {
        // c1 - 1 ≤ c2, and c2 ≤ c1 + 2 once c2 ≤ 6
        for c1 in (c2 - 2).max(2)..=c2 + 1 {
            match c2 - c1 {
                -1 => out.push(split(1, c2)),
                k => out.extend(offset_cases(c1, k)),
            }
        }
    }
    out
}

fn delta_cases(n: i64) -> Vec<ClassificationEntry> {
    // no single label: O(1)² is semistable, O(1) ⊕ O(t) for t ≥ 2 is not
    let mut out = alloc::vec![ClassificationEntry::family(
        linear_family(),
        Existence::ExactCriterion
    )];
    // δ > 0 forces c1 ≤ 5 and c2 ≤ 6
    let mut rest: Vec<ClassificationEntry> = c2_cases(6)
        .into_iter()
        .filter(|e| e.chern.delta() > 0 && e.chern.delta() <= n)
        .collect();
    rest.sort_by_key(|e| e.chern.delta());
    out.extend(rest);
    out
}

pub fn classify_p2(c: Constraint) -> Result<Vec<ClassificationEntry>> {
    let mut entries = match c {
        Constraint::MaxC1(n) => {
            if n > 3 {
                return Err(c.out_of_range(3));
            }
            c2_cases(3)
                .into_iter()
                .filter(|e| e.chern.c1().coeffs()[0] <= n)
                .collect()
        }
        Constraint::MaxC2(n) => {
            if n > 6 {
                return Err(c.out_of_range(6));
            }
            c2_cases(n)
        }
        Constraint::C2Offset(k) => match k {
            ..=-2 => Vec::new(),
            -1 => delta_cases(0),
            0..=2 => (2..=6).flat_map(|c1| offset_cases(c1, k)).collect(),
            _ => return Err(c.out_of_range(2)),
        },
        Constraint::MaxDelta(n) => {
            if n > 24 {
                return Err(c.out_of_range(24));
            }
            if n < 0 {
                Vec::new()
            } else {
                delta_cases(n)
            }
        }
        Constraint::MaxC1Sq(_) => return Err(c.unsupported_on(Surface::ProjectivePlane)),
    };
    label(Surface::ProjectivePlane, c, &mut entries);
    Ok(entries)
}

pub(super) fn list(id: ListId) -> Vec<ClassificationEntry> {
    match id {
        ListId::PlaneC2 => c2_cases(6),
        ListId::PlaneDelta => delta_cases(24),
        _ => unreachable!("plane list"),
    }
}
