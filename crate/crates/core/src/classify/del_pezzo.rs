//! Del Pezzo surfaces of degree `d`, with `M = -K` the reference ample class.
//!
//! For `c2 ≤ d + 2` either `c1² > 4c2`, and then `E = [-K] ⊕ L` with `L`
//! ample and `-K·L = c2`, or `c1 ∈ {-2K, -2K + C0}` for a 0-curve `C0`.
//!
//! For `δ ≤ 6` the bundles are `[-K] ⊕ [-tK + Y]` on degree 1, where
//! `Y = X - jK` with `X ⊥ K` and `δ = -X²`, plus `[-K]²` on degrees 2 and 3.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use super::{
    label, ClassificationEntry, Constraint, CurveChoice, CurveKind, FamilyDescriptor, ListId,
};
use crate::bundle::{Bundle, ChernData, Existence};
use crate::curves::{fill, minus_one_classes, zero_classes};
use crate::error::Result;
use crate::surface::{canonical_class, is_ample, Divisor, Surface};

const EXAMPLE_3_11: &str = "Fujisawa, Example (3.11)";
const FUJITA_2_8: &str = "Fujita, (2.8)";

/// Sort key inside one `(c2, d)` group: `c1 = -2K`, then `c1 = -2K + C0`,
/// then the split Bogomolov cases by `c1²` and the second summand.
type Key = (i64, u8, i64, Divisor);
/// Cross-degree order: leading field of the case key, then degree, then the whole key.
type ListKey = (i64, u8, (i64, Key));

fn anti(d: u8) -> Divisor {
    -canonical_class(Surface::DelPezzo(d))
}

/// `x = C + C'` for distinct disjoint `(-1)`-curves.
pub(super) fn is_disjoint_pair_sum(d: u8, x: &Divisor) -> bool {
    if x.surface() != Surface::DelPezzo(d) || x.anticanonical_degree() != 2 || x.square() != -2 {
        return false;
    }
    // (C + C')² = -2 forces C·C' = 0
    let curves = minus_one_classes(d);
    curves
        .iter()
        .any(|c| curves.binary_search(&(*x - *c)).is_ok())
}

/// `None` for `y = 0`; `Some(kind)` when `y` is a class of that kind.
fn kind_of(d: u8, y: &Divisor) -> Option<Option<CurveKind>> {
    if y.is_zero() {
        Some(None)
    } else if minus_one_classes(d).binary_search(y).is_ok() {
        Some(Some(CurveKind::MinusOne))
    } else if zero_classes(d).binary_search(y).is_ok() {
        Some(Some(CurveKind::Zero))
    } else if is_disjoint_pair_sum(d, y) {
        Some(Some(CurveKind::DisjointMinusOnePair))
    } else {
        None
    }
}

/// Classes `a0·H - Σ a_i·E_i` with `-K·L = k_deg` and `L² = square`.
fn classes_with(
    d: u8,
    k_deg: i64,
    square: i64,
    a0_range: core::ops::RangeInclusive<i64>,
) -> Vec<Divisor> {
    let s = Surface::DelPezzo(d);
    let r = s.rank() - 1;
    let mut out = Vec::new();
    for a0 in a0_range {
        let mut prefix = Vec::with_capacity(r);
        fill(
            &mut prefix,
            r,
            3 * a0 - k_deg,
            a0 * a0 - square,
            &mut |tail: &[i64]| {
                let mut coeffs = Vec::with_capacity(r + 1);
                coeffs.push(a0);
                coeffs.extend(tail.iter().map(|&x| -x));
                out.push(Divisor::new(s, &coeffs).expect("rank matches"));
            },
        );
    }
    out
}

fn sum_entry(l: Divisor, m: Divisor, choice: Option<CurveChoice>) -> ClassificationEntry {
    ClassificationEntry::choice(
        Bundle::direct_sum(l, m).expect("same surface"),
        choice,
        Existence::ExactCriterion,
    )
}

/// Cases with `c1 ∈ {-2K, -2K + C0}`, where `c1² ≤ 4c2`.
fn adjoint_cases(d: u8, c2: i64) -> Vec<(Key, ClassificationEntry)> {
    let s = Surface::DelPezzo(d);
    let m = anti(d);
    let d64 = i64::from(d);
    let zero = Divisor::zero(s);
    let mut out = Vec::new();
    let ext = match c2 - d64 {
        0 => Some(sum_entry(m, m, None)),
        1 if d >= 2 => Some(ClassificationEntry::bundle(
            Bundle::blow_up_extension(m, m, 1).expect("valid"),
            Existence::Cited(EXAMPLE_3_11),
        )),
        2 if d == 1 => Some(ClassificationEntry::bundle(
            Bundle::blow_up_extension(zero, 2 * m, 3).expect("valid"),
            Existence::Cited(FUJITA_2_8),
        )),
        2 => Some(ClassificationEntry::open(
            ChernData::new(2 * m, c2),
            "c1 = -2K, c2 = d + 2 on degree d ≥ 2",
        )),
        _ => None,
    };
    out.extend(ext.map(|x| ((c2, 0, 4 * d64, zero), x)));
    if c2 == d64 + 2 {
        let curves = zero_classes(d);
        let choice = CurveChoice {
            kind: CurveKind::Zero,
            representative: curves[0],
            count: curves.len(),
        };
        out.push((
            (c2, 1, 4 * d64 + 8, curves[0]),
            sum_entry(m, m + curves[0], Some(choice)),
        ));
    }
    out
}

/// `[-K] ⊕ L` with `L` ample, `-K·L = c2` and `c1² > 4c2`, one entry per
/// curve choice: `L = -tK + Y` with `t` maximal.
fn bogomolov_cases(d: u8, c2: i64) -> Vec<(Key, ClassificationEntry)> {
    let s = Surface::DelPezzo(d);
    let m = anti(d);
    let d64 = i64::from(d);
    let mut groups: BTreeMap<(i64, Option<CurveKind>), Vec<Divisor>> = BTreeMap::new();
    let mut loose = Vec::new();
    // Hodge index: L²·d ≤ (−K·L)²
    for square in 1..=c2 * c2 / d64 {
        for l in classes_with(d, c2, square, 0..=6 * c2 / d64 + 1) {
            if !is_ample(s, &l) || (m + l).square() <= 4 * c2 {
                continue;
            }
            let found = (0..=c2 / d64)
                .rev()
                .find_map(|t| kind_of(d, &(l - t * m)).map(|k| (t, k)));
            match found {
                Some((t, kind)) => groups.entry((t, kind)).or_default().push(l - t * m),
                None => loose.push(l),
            }
        }
    }
    let mut out: Vec<(Key, ClassificationEntry)> = groups
        .into_iter()
        .map(|((t, kind), mut ys)| {
            ys.sort_unstable();
            let l = t * m + ys[0];
            let choice = kind.map(|kind| CurveChoice {
                kind,
                representative: ys[0],
                count: ys.len(),
            });
            ((c2, 2, (m + l).square(), l), sum_entry(m, l, choice))
        })
        .collect();
    out.extend(
        loose
            .into_iter()
            .map(|l| ((c2, 2, (m + l).square(), l), sum_entry(m, l, None))),
    );
    out
}

fn c2_cases(d: u8, n: i64) -> Vec<(Key, ClassificationEntry)> {
    let mut out: Vec<_> = (i64::from(d)..=n)
        .flat_map(|c2| {
            let mut v = adjoint_cases(d, c2);
            v.extend(bogomolov_cases(d, c2));
            v
        })
        .collect();
    out.sort_by_key(|(k, _)| *k);
    out
}

/// The degree-1 families `[-K] ⊕ [-tK + Y]`, one per `δ ∈ {0, 2, 4, 6}`.
fn degree_one_families() -> &'static [FamilyDescriptor] {
    static CACHE: OnceBox<Vec<FamilyDescriptor>> = OnceBox::new();
    CACHE.get_or_init(|| {
        let m = anti(1);
        let mut out = Vec::new();
        for norm in 0..=6 {
            // X ⊥ K with -X² = norm; Cauchy–Schwarz gives a0² ≤ 8·norm
            let xs = classes_with(1, 0, -norm, -7..=7);
            if xs.is_empty() {
                continue;
            }
            let (kind, mut ys) = (0..=3)
                .find_map(|j| {
                    let ys: Vec<Divisor> = xs.iter().map(|x| *x + j * m).collect();
                    let first = kind_of(1, &ys[0])?;
                    ys.iter()
                        .all(|y| kind_of(1, y) == Some(first))
                        .then_some((first, ys))
                })
                .expect("every root-lattice shell of norm ≤ 6 is a curve offset");
            ys.sort_unstable();
            let t_min = (1..)
                .find(|&t| {
                    ys.iter()
                        .all(|y| is_ample(Surface::DelPezzo(1), &(t * m + *y)))
                })
                .expect("-tK + Y is ample for large t");
            out.push(FamilyDescriptor {
                fixed: m,
                offset: ys[0],
                step: m,
                t_min,
                t_max: None,
                curve_choice: kind.map(|kind| CurveChoice {
                    kind,
                    representative: ys[0],
                    count: ys.len(),
                }),
            });
        }
        Box::new(out)
    })
}

/// Sorted by `δ`, families before single bundles.
fn delta_cases(d: u8, n: i64) -> Vec<((i64, Key), ClassificationEntry)> {
    let mut out = Vec::new();
    if d == 1 {
        for f in degree_one_families() {
            let e = ClassificationEntry::family(*f, Existence::ExactCriterion);
            if e.chern.delta() <= n {
                out.push(((e.chern.delta(), (0, 0, 0, f.offset)), e));
            }
        }
    }
    let families = degree_one_families();
    for (k, e) in c2_cases(d, (i64::from(d) + 2).min(3)) {
        let covered = e
            .representative()
            .is_some_and(|b| families.iter().any(|f| f.contains(&b)));
        if e.chern.delta() <= n && !covered {
            out.push(((e.chern.delta(), k), e));
        }
    }
    out.sort_by_key(|(k, _)| *k);
    out
}

pub fn classify_delpezzo(d: u8, c: Constraint) -> Result<Vec<ClassificationEntry>> {
    let s = Surface::del_pezzo(d)?;
    let mut entries: Vec<ClassificationEntry> = match c {
        Constraint::MaxC2(n) => {
            let limit = i64::from(d) + 2;
            if n > limit {
                return Err(c.out_of_range(limit));
            }
            c2_cases(d, n).into_iter().map(|(_, x)| x).collect()
        }
        Constraint::MaxDelta(n) => {
            if n > 6 {
                return Err(c.out_of_range(6));
            }
            delta_cases(d, n).into_iter().map(|(_, x)| x).collect()
        }
        _ => return Err(c.unsupported_on(s)),
    };
    label(s, c, &mut entries);
    Ok(entries)
}

pub(super) fn list(id: ListId) -> Vec<ClassificationEntry> {
    let mut v: Vec<(ListKey, ClassificationEntry)> = Vec::new();
    for d in 1..=7u8 {
        match id {
            ListId::DelPezzoC2 if d <= 3 => v.extend(
                c2_cases(d, 3)
                    .into_iter()
                    .map(|(k, x)| ((k.0, d, (0, k)), x)),
            ),
            ListId::DelPezzoDelta => {
                v.extend(delta_cases(d, 6).into_iter().map(|(k, x)| ((k.0, d, k), x)))
            }
            ListId::DelPezzoC2 => {}
            _ => unreachable!("Del Pezzo list"),
        }
    }
    v.sort_by_key(|(k, _)| *k);
    v.into_iter().map(|(_, x)| x).collect()
}
