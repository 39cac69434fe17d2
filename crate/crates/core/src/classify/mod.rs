//! Finite lists and one-parameter families of rank-2 ample bundles with small
//! invariants on Hirzebruch surfaces, Del Pezzo surfaces and `P²`.
//!
//! Each surface module runs the case analysis that proves its list complete
//! and returns the surviving cases in a fixed order. Queries beyond the range
//! where that analysis is complete fail with [`Error::UnsupportedRange`].

mod del_pezzo;
mod hirzebruch;
mod plane;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use crate::bundle::{chern, Bundle, ChernData, Existence, Shape};
use crate::error::{Error, Result};
use crate::surface::{Divisor, Surface};

pub use del_pezzo::classify_delpezzo;
pub use hirzebruch::classify_hirzebruch;
pub use plane::classify_p2;

/// Upper bound on one invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    MaxC2(i64),
    MaxC1Sq(i64),
    MaxDelta(i64),
    /// `P²` only: `c1 ≤ n`.
    MaxC1(i64),
    /// `P²` only: bundles with `c2 = c1 + k`.
    C2Offset(i64),
}

impl Constraint {
    pub fn name(&self) -> &'static str {
        match self {
            Constraint::MaxC2(_) => "max_c2",
            Constraint::MaxC1Sq(_) => "max_c1sq",
            Constraint::MaxDelta(_) => "max_delta",
            Constraint::MaxC1(_) => "max_c1",
            Constraint::C2Offset(_) => "c2_offset",
        }
    }

    pub fn value(&self) -> i64 {
        match *self {
            Constraint::MaxC2(n)
            | Constraint::MaxC1Sq(n)
            | Constraint::MaxDelta(n)
            | Constraint::MaxC1(n)
            | Constraint::C2Offset(n) => n,
        }
    }

    fn unsupported_on(&self, surface: Surface) -> Error {
        Error::UnsupportedConstraint {
            constraint: self.name(),
            surface,
        }
    }

    fn out_of_range(&self, limit: i64) -> Error {
        Error::UnsupportedRange {
            constraint: self.name(),
            requested: self.value(),
            limit,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveKind {
    MinusOne,
    Zero,
    /// `C + C'` for disjoint `(-1)`-curves.
    DisjointMinusOnePair,
}

/// A bundle that depends on a choice of curve: `representative` is the first
/// admissible class in lexicographic order and `count` the number of
/// distinct admissible classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurveChoice {
    pub kind: CurveKind,
    pub representative: Divisor,
    pub count: usize,
}

/// The direct sums `fixed ⊕ (offset + t·step)` for `t_min ≤ t ≤ t_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyDescriptor {
    pub fixed: Divisor,
    pub offset: Divisor,
    pub step: Divisor,
    pub t_min: i64,
    pub t_max: Option<i64>,
    /// Present when `offset` is one representative of a curve choice.
    pub curve_choice: Option<CurveChoice>,
}

impl FamilyDescriptor {
    pub fn surface(&self) -> Surface {
        self.fixed.surface()
    }

    pub fn contains_parameter(&self, t: i64) -> bool {
        t >= self.t_min && self.t_max.is_none_or(|m| t <= m)
    }

    pub fn instance(&self, t: i64) -> Result<Bundle> {
        if !self.contains_parameter(t) {
            return Err(Error::FamilyRange {
                t,
                min: self.t_min,
                max: self.t_max,
            });
        }
        Bundle::direct_sum(self.fixed, self.offset + t * self.step)
    }

    /// Whether `b` is an instance, for any admissible curve choice.
    pub fn contains(&self, b: &Bundle) -> bool {
        let Shape::DirectSum(l, m) = *b.canonical().shape() else {
            return false;
        };
        if l.surface() != self.surface() {
            return false;
        }
        [(l, m), (m, l)].into_iter().any(|(fixed, other)| {
            if fixed != self.fixed {
                return false;
            }
            // other = offset' + t·step with offset' an admissible choice
            let step_sq = self.step.square();
            let t_num = (other - self.offset).dot(&self.step);
            if step_sq == 0 || t_num % step_sq != 0 {
                return false;
            }
            let t = t_num / step_sq;
            if !self.contains_parameter(t) {
                return false;
            }
            let rest = other - t * self.step;
            match &self.curve_choice {
                None => rest == self.offset,
                Some(choice) => is_choice(choice.kind, &rest),
            }
        })
    }
}

fn is_choice(kind: CurveKind, x: &Divisor) -> bool {
    let Surface::DelPezzo(d) = x.surface() else {
        return false;
    };
    match kind {
        CurveKind::MinusOne => crate::curves::minus_one_classes(d).binary_search(x).is_ok(),
        CurveKind::Zero => crate::curves::zero_classes(d).binary_search(x).is_ok(),
        CurveKind::DisjointMinusOnePair => del_pezzo::is_disjoint_pair_sum(d, x),
    }
}

pub fn expand_family(f: &FamilyDescriptor, t_range: RangeInclusive<i64>) -> Result<Vec<Bundle>> {
    if t_range.is_empty() {
        return Ok(Vec::new());
    }
    for t in [*t_range.start(), *t_range.end()] {
        if !f.contains_parameter(t) {
            return Err(Error::FamilyRange {
                t,
                min: f.t_min,
                max: f.t_max,
            });
        }
    }
    t_range.map(|t| f.instance(t)).collect()
}

/// Stability on `P²`: `O(t) ⊂ E` forces `c1 > 2t` (stable) or `c1 ≥ 2t`
/// (semistable).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stability {
    Stable,
    SemistableNotStable,
    NotSemistable,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Stable => "stable",
            Stability::SemistableNotStable => "semistable-not-stable",
            Stability::NotSemistable => "not-semistable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Bundle {
        bundle: Bundle,
        curve_choice: Option<CurveChoice>,
    },
    Family(FamilyDescriptor),
    /// Only the Chern data is constrained; whether such a bundle exists is
    /// not known, so no descriptor is claimed.
    OpenCase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationEntry {
    pub surface: Surface,
    pub case_label: String,
    pub item: Item,
    /// For families, the data at `t_min`.
    pub chern: ChernData,
    pub existence: Existence,
    /// Only on `P²`.
    pub stability: Option<Stability>,
}

impl ClassificationEntry {
    fn bundle(b: Bundle, existence: Existence) -> ClassificationEntry {
        ClassificationEntry::choice(b, None, existence)
    }

    fn choice(
        b: Bundle,
        curve_choice: Option<CurveChoice>,
        existence: Existence,
    ) -> ClassificationEntry {
        ClassificationEntry {
            surface: b.surface(),
            case_label: String::new(),
            chern: chern(&b),
            item: Item::Bundle {
                bundle: b,
                curve_choice,
            },
            existence,
            stability: None,
        }
    }

    fn family(f: FamilyDescriptor, existence: Existence) -> ClassificationEntry {
        let first = f.instance(f.t_min).expect("t_min is admissible");
        ClassificationEntry {
            surface: f.surface(),
            case_label: String::new(),
            chern: chern(&first),
            item: Item::Family(f),
            existence,
            stability: None,
        }
    }

    fn open(chern: ChernData, why: &'static str) -> ClassificationEntry {
        ClassificationEntry {
            surface: chern.c1().surface(),
            case_label: String::new(),
            chern,
            item: Item::OpenCase,
            existence: Existence::Open(why),
            stability: None,
        }
    }

    /// The concrete bundle, or the first member of a family.
    pub fn representative(&self) -> Option<Bundle> {
        match &self.item {
            Item::Bundle { bundle, .. } => Some(*bundle),
            Item::Family(f) => f.instance(f.t_min).ok(),
            Item::OpenCase => None,
        }
    }

    /// Whether `b` is this entry's bundle, one of its curve choices, or a
    /// member of its family.
    pub fn covers(&self, b: &Bundle) -> bool {
        match &self.item {
            Item::Bundle {
                bundle,
                curve_choice: None,
            } => bundle.canonical() == b.canonical(),
            Item::Bundle {
                bundle,
                curve_choice: Some(choice),
            } => {
                let Shape::DirectSum(fixed, other) = *bundle.shape() else {
                    return false;
                };
                let Shape::DirectSum(l, m) = *b.shape() else {
                    return false;
                };
                if l.surface() != fixed.surface() {
                    return false;
                }
                let base = other - choice.representative;
                [(l, m), (m, l)]
                    .into_iter()
                    .any(|(f, o)| f == fixed && is_choice(choice.kind, &(o - base)))
            }
            Item::Family(f) => f.contains(b),
            Item::OpenCase => false,
        }
    }

    /// Label text that does not depend on the query: the bundle itself.
    fn structural_label(&self) -> String {
        match &self.item {
            Item::Bundle { bundle, .. } => format!("{bundle}"),
            Item::Family(f) => format!("{}+t", f.instance(f.t_min).expect("admissible")),
            Item::OpenCase => format!("open(c1={}, c2={})", self.chern.c1(), self.chern.c2()),
        }
    }

    fn same_case(&self, other: &ClassificationEntry) -> bool {
        self.surface == other.surface
            && match (&self.item, &other.item) {
                (Item::Bundle { bundle: a, .. }, Item::Bundle { bundle: b, .. }) => {
                    a.canonical() == b.canonical()
                }
                (Item::Family(a), Item::Family(b)) => a == b,
                (Item::OpenCase, Item::OpenCase) => self.chern == other.chern,
                _ => false,
            }
    }
}

/// The classified lists, each the union over all surfaces of one type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ListId {
    /// Hirzebruch surfaces, `c2 ≤ 6`.
    HirzebruchC2,
    /// Hirzebruch surfaces, `c1² ≤ 16`.
    HirzebruchC1Sq,
    /// Hirzebruch surfaces, `δ ≤ 16`.
    HirzebruchDelta,
    /// Del Pezzo surfaces, `c2 ≤ 3`.
    DelPezzoC2,
    /// Del Pezzo surfaces, `δ ≤ 6`.
    DelPezzoDelta,
    /// `P²`, `c2 ≤ 6`.
    PlaneC2,
    /// `P²`, `δ ≤ 24`.
    PlaneDelta,
}

impl ListId {
    pub const ALL: [ListId; 7] = [
        ListId::HirzebruchC1Sq,
        ListId::HirzebruchC2,
        ListId::HirzebruchDelta,
        ListId::DelPezzoC2,
        ListId::DelPezzoDelta,
        ListId::PlaneC2,
        ListId::PlaneDelta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ListId::HirzebruchC2 => "hirzebruch-c2",
            ListId::HirzebruchC1Sq => "hirzebruch-c1sq",
            ListId::HirzebruchDelta => "hirzebruch-delta",
            ListId::DelPezzoC2 => "dp-c2",
            ListId::DelPezzoDelta => "dp-delta",
            ListId::PlaneC2 => "p2-c2",
            ListId::PlaneDelta => "p2-delta",
        }
    }

    pub fn from_name(name: &str) -> Result<ListId> {
        ListId::ALL
            .into_iter()
            .find(|l| l.name() == name)
            .ok_or(Error::UnknownList)
    }

    /// The surfaces the list ranges over; every other surface of the same
    /// type contributes nothing.
    pub fn surfaces(self) -> Vec<Surface> {
        match self {
            ListId::HirzebruchC2 => (0..=4).map(Surface::Hirzebruch).collect(),
            ListId::HirzebruchC1Sq => (0..=2).map(Surface::Hirzebruch).collect(),
            ListId::HirzebruchDelta => (0..=3).map(Surface::Hirzebruch).collect(),
            ListId::DelPezzoC2 | ListId::DelPezzoDelta => (1..=7).map(Surface::DelPezzo).collect(),
            ListId::PlaneC2 | ListId::PlaneDelta => alloc::vec![Surface::ProjectivePlane],
        }
    }

    pub fn constraint(self) -> Constraint {
        match self {
            ListId::HirzebruchC2 => Constraint::MaxC2(6),
            ListId::HirzebruchC1Sq => Constraint::MaxC1Sq(16),
            ListId::HirzebruchDelta => Constraint::MaxDelta(16),
            ListId::DelPezzoC2 => Constraint::MaxC2(3),
            ListId::DelPezzoDelta => Constraint::MaxDelta(6),
            ListId::PlaneC2 => Constraint::MaxC2(6),
            ListId::PlaneDelta => Constraint::MaxDelta(24),
        }
    }

    /// The full list in its standard order, labelled `<name>/<position>`.
    pub fn entries(self) -> Vec<ClassificationEntry> {
        let mut all = self.unlabelled();
        for (i, e) in all.iter_mut().enumerate() {
            e.case_label = format!("{}/{}", self.name(), i + 1);
        }
        all
    }

    fn unlabelled(self) -> Vec<ClassificationEntry> {
        match self {
            ListId::HirzebruchC2 | ListId::HirzebruchC1Sq | ListId::HirzebruchDelta => {
                hirzebruch::list(self)
            }
            ListId::DelPezzoC2 | ListId::DelPezzoDelta => del_pezzo::list(self),
            ListId::PlaneC2 | ListId::PlaneDelta => plane::list(self),
        }
    }

    fn for_query(surface: Surface, c: Constraint) -> Option<ListId> {
        Some(match (surface, c) {
            (Surface::Hirzebruch(_), Constraint::MaxC2(_)) => ListId::HirzebruchC2,
            (Surface::Hirzebruch(_), Constraint::MaxC1Sq(_)) => ListId::HirzebruchC1Sq,
            (Surface::Hirzebruch(_), Constraint::MaxDelta(_)) => ListId::HirzebruchDelta,
            (Surface::DelPezzo(_), Constraint::MaxC2(_)) => ListId::DelPezzoC2,
            (Surface::DelPezzo(_), Constraint::MaxDelta(_)) => ListId::DelPezzoDelta,
            (Surface::ProjectivePlane, Constraint::MaxDelta(_)) => ListId::PlaneDelta,
            (Surface::ProjectivePlane, _) => ListId::PlaneC2,
            _ => return None,
        })
    }
}

/// Dispatches on the surface type.
pub fn classify(surface: Surface, c: Constraint) -> Result<Vec<ClassificationEntry>> {
    match surface.validate()? {
        Surface::Hirzebruch(e) => classify_hirzebruch(e, c),
        Surface::DelPezzo(d) => classify_delpezzo(d, c),
        Surface::ProjectivePlane => classify_p2(c),
    }
}

/// Labels entries by their position in the matching standard list, falling
/// back to `<name>:<bundle>` for cases outside it.
fn label(surface: Surface, c: Constraint, entries: &mut [ClassificationEntry]) {
    let Some(list) = ListId::for_query(surface, c) else {
        return;
    };
    let reference = list.entries();
    for e in entries.iter_mut() {
        e.case_label = match reference.iter().find(|r| r.same_case(e)) {
            Some(r) => r.case_label.clone(),
            None => format!("{}:{}", list.name(), e.structural_label()),
        };
    }
}
