//! Hirzebruch surfaces `Σ_e`, with `c1 = aH + bF`.
//!
//! When `2K + c1` is not nef, `c1·F ∈ {2, 3}`:
//! * `c1·F = 2`: `E = [H+t1F] ⊕ [H+t2F]` with `e < t1 ≤ t2`, `c2 = t1+t2-e`.
//! * `c1·F = 3`: `0 → [2H+tF] → E → [H+(b-t)F] → 0` with `b ≥ 3e+2`,
//!   `b - t > e`, `c2 = 2b - t - 2e`; it splits when `2H+tF` is ample.
//!
//! When `2K + c1` is nef, `E` destabilizes as `0 → L → E → M → 0` with
//! `M = H+tF`, and `c2 ≥ e+6`.

use alloc::vec::Vec;

use super::{label, ClassificationEntry, Constraint, ListId};
use crate::bundle::{Bundle, Existence, Splitting};
use crate::error::Result;
use crate::surface::{is_ample, is_nef, Divisor, Surface};

const EXAMPLE_3_7: &str = "Fujisawa, Example 3.7";
const EXAMPLE_3_7_SIMILAR: &str = "Fujisawa, Example 3.7 (same construction)";

/// Sort key inside one `(c2, e)` group: sums with `c1·F = 2` by `t1`, then
/// split `c1·F = 3` cases by decreasing `b`, then the nef case, then the
/// non-split extensions.
type Key = (i64, u8, i64);

fn hz(e: u32, a: i64, b: i64) -> Divisor {
    Divisor::from_pair(Surface::Hirzebruch(e), a, b)
}

fn sum_entry(l: Divisor, m: Divisor) -> ClassificationEntry {
    ClassificationEntry::bundle(
        Bundle::direct_sum(l, m).expect("same surface"),
        Existence::ExactCriterion,
    )
}

/// `c1·F = 2` sums with `c2 = c2`.
fn fiber_degree_two(e: u32, c2: i64) -> Vec<(Key, ClassificationEntry)> {
    let e64 = i64::from(e);
    (e64 + 1..)
        .take_while(|&t1| 2 * t1 <= c2 + e64)
        .map(|t1| {
            let t2 = c2 + e64 - t1;
            ((c2, 0, t1), sum_entry(hz(e, 1, t1), hz(e, 1, t2)))
        })
        .collect()
}

fn nonsplit_existence(e: u32, c2: i64) -> Existence {
    match (e, c2) {
        (1, 6) | (2, 8) => Existence::Cited(EXAMPLE_3_7),
        (0, 6) => Existence::Cited(EXAMPLE_3_7_SIMILAR),
        // Nakai on P(E): the section cut out by the quotient and the fiber
        // over the minimal section carry ample restrictions.
        (1, 7) => Existence::Proved,
        _ => Existence::NecessaryOnly,
    }
}

/// `c1·F = 3` extensions with `c2 = c2`.
fn fiber_degree_three(e: u32, c2: i64) -> Vec<(Key, ClassificationEntry)> {
    let e64 = i64::from(e);
    // On Σ_0, c1 = 3H+2F is the ruling swap of 2H+3F, already covered.
    let b_min = if e == 0 { 3 } else { 3 * e64 + 2 };
    let mut out = Vec::new();
    // c2 > b - e bounds b from above
    for b in (b_min..c2 + e64).rev() {
        let t = 2 * b - 2 * e64 - c2;
        let sub = hz(e, 2, t);
        let quot = hz(e, 1, b - t);
        debug_assert!(b - t > e64);
        if t > 2 * e64 {
            // Ext¹(quot, sub) = H¹(H + (2t-b)F), and H¹(H + kF) = 0 iff k ≥ e - 1
            debug_assert!(2 * t - b >= e64 - 1);
            out.push(((c2, 1, -b), sum_entry(quot, sub)));
        } else {
            let bundle =
                Bundle::extension(sub, quot, 0, Splitting::NonSplit).expect("same surface");
            out.push((
                (c2, 3, -b),
                ClassificationEntry::bundle(bundle, nonsplit_existence(e, c2)),
            ));
        }
    }
    out
}

/// Cases with `2K + c1` nef: `M = H+tF`, `L = (a-1)H + (b-t)F`,
/// `L·M = (b - ae) + e + (a-2)t` is increasing in each of `b - ae`, `t`, `a`,
/// which bounds the search.
fn adjoint_nef(e: u32, c2: i64) -> Vec<(Key, ClassificationEntry)> {
    let s = Surface::Hirzebruch(e);
    let e64 = i64::from(e);
    let k2 = crate::surface::canonical_class(s);
    let lm = |a: i64, r: i64, t: i64| r + e64 + (a - 2) * t;
    let mut out = Vec::new();
    let r_min = 4 - 2 * e64;
    for a in 4.. {
        if lm(a, r_min, e64 + 1) > c2 {
            break;
        }
        for t in e64 + 1.. {
            if lm(a, r_min, t) > c2 {
                break;
            }
            for r in r_min.. {
                if lm(a, r, t) > c2 {
                    break;
                }
                let b = r + a * e64;
                let c1 = hz(e, a, b);
                let m = hz(e, 1, t);
                let l = c1 - m;
                let z = c2 - l.dot(&m);
                let diff = l - m;
                let ok = is_ample(s, &c1)
                    && is_nef(s, &(2 * k2 + c1))
                    && c1.square() > 4 * c2
                    && diff.square() > 4 * z
                    && m.square() > z
                    && is_ample(s, &l);
                if ok {
                    // L·M = e+6 is the only value reachable in range, forcing Z = ∅;
                    // Ext¹(M, L) = H¹(L - M) vanishes for these L - M.
                    debug_assert_eq!(z, 0);
                    out.push(((c2, 2, t), sum_entry(m, l)));
                }
            }
        }
    }
    out
}

fn cases(e: u32, c2_max: i64) -> Vec<(Key, ClassificationEntry)> {
    let mut out = Vec::new();
    for c2 in i64::from(e) + 2..=c2_max {
        out.extend(fiber_degree_two(e, c2));
        out.extend(fiber_degree_three(e, c2));
        out.extend(adjoint_nef(e, c2));
    }
    out.sort_by_key(|(k, _)| *k);
    out
}

fn delta_cases(e: u32, n: i64) -> Vec<((i64, Key), ClassificationEntry)> {
    // δ ≤ 16 forces c2 ≤ 5
    cases(e, 5.min(i64::from(e) + 6))
        .into_iter()
        .filter(|(_, x)| x.chern.delta() <= n)
        .map(|(k, x)| ((x.chern.delta(), k), x))
        .collect()
}

fn c1sq_cases(e: u32, n: i64) -> Vec<((i64, i64), ClassificationEntry)> {
    // c1² = 4c2 for c1·F = 2, the only shape below the limit
    let mut out: Vec<_> = (i64::from(e) + 2..=n.div_euclid(4))
        .flat_map(|c2| fiber_degree_two(e, c2))
        .map(|((c2, _, t1), x)| ((4 * c2, t1), x))
        .filter(|(_, x)| x.chern.c1_sq() <= n)
        .collect();
    out.sort_by_key(|(k, _)| *k);
    out
}

pub fn classify_hirzebruch(e: u32, c: Constraint) -> Result<Vec<ClassificationEntry>> {
    let s = Surface::Hirzebruch(e);
    let e64 = i64::from(e);
    let mut entries: Vec<ClassificationEntry> = match c {
        Constraint::MaxC2(n) => {
            if n > e64 + 6 {
                return Err(c.out_of_range(e64 + 6));
            }
            cases(e, n).into_iter().map(|(_, x)| x).collect()
        }
        Constraint::MaxC1Sq(n) => {
            let limit = (8 * e64 + 12).max(16);
            if n > limit {
                return Err(c.out_of_range(limit));
            }
            c1sq_cases(e, n).into_iter().map(|(_, x)| x).collect()
        }
        Constraint::MaxDelta(n) => {
            if n > 16 {
                return Err(c.out_of_range(16));
            }
            let mut v = delta_cases(e, n);
            v.sort_by_key(|(k, _)| *k);
            v.into_iter().map(|(_, x)| x).collect()
        }
        Constraint::MaxC1(_) | Constraint::C2Offset(_) => return Err(c.unsupported_on(s)),
    };
    label(s, c, &mut entries);
    Ok(entries)
}

pub(super) fn list(id: ListId) -> Vec<ClassificationEntry> {
    let es = id.surfaces().into_iter().map(|s| match s {
        Surface::Hirzebruch(e) => e,
        _ => unreachable!("Hirzebruch list"),
    });
    match id {
        ListId::HirzebruchC2 => {
            let mut v: Vec<_> = es
                .flat_map(|e| cases(e, 6).into_iter().map(move |(k, x)| ((k.0, e, k), x)))
                .collect();
            v.sort_by_key(|(k, _)| *k);
            v.into_iter().map(|(_, x)| x).collect()
        }
        ListId::HirzebruchC1Sq => {
            let mut v: Vec<_> = es
                .flat_map(|e| {
                    c1sq_cases(e, 16)
                        .into_iter()
                        .map(move |(k, x)| ((k.0, e, k.1), x))
                })
                .collect();
            v.sort_by_key(|(k, _)| *k);
            v.into_iter().map(|(_, x)| x).collect()
        }
        ListId::HirzebruchDelta => {
            let mut v: Vec<_> = es
                .flat_map(|e| {
                    delta_cases(e, 16)
                        .into_iter()
                        .map(move |(k, x)| ((k.0, e, k.1), x))
                })
                .collect();
            v.sort_by_key(|(k, _)| *k);
            v.into_iter().map(|(_, x)| x).collect()
        }
        _ => unreachable!("Hirzebruch list"),
    }
}

/// `c2`, `c1²` and `δ` of `[H+t1F] ⊕ [H+t2F]`, for independent checks.
#[cfg(test)]
fn split_pair_data(e: i64, t1: i64, t2: i64) -> (i64, i64, i64) {
    let c2 = t1 + t2 - e;
    let c1sq = 4 * (t1 + t2) - 4 * e;
    (c2, c1sq, (c2 + 1) * (c2 + 1) - c1sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{chern, Shape};
    use crate::classify::Item;
    use crate::error::Error;
    use alloc::string::ToString;

    fn bundles(v: &[ClassificationEntry]) -> Vec<alloc::string::String> {
        v.iter()
            .map(|x| x.representative().unwrap().canonical().to_string())
            .collect()
    }

    #[test]
    fn query_examples() {
        let v = classify_hirzebruch(0, Constraint::MaxC2(2)).unwrap();
        assert_eq!(bundles(&v), ["[H+F]⊕[H+F]"]);
        let v = classify_hirzebruch(4, Constraint::MaxC2(6)).unwrap();
        assert_eq!(bundles(&v), ["[H+5F]⊕[H+5F]"]);
        let v = classify_hirzebruch(1, Constraint::MaxC2(6)).unwrap();
        assert_eq!(v.len(), 9);
        let labels: Vec<_> = v.iter().map(|x| x.case_label.as_str()).collect();
        assert_eq!(
            labels,
            ["3", "7", "13", "14", "15", "25", "26", "27", "28"]
                .map(|k| alloc::format!("hirzebruch-c2/{k}"))
        );
        let last = v.last().unwrap().representative().unwrap();
        assert!(matches!(
            last.shape(),
            Shape::Extension {
                split: Splitting::NonSplit,
                ..
            }
        ));
        assert_eq!(
            classify_hirzebruch(0, Constraint::MaxC2(6)).unwrap().len(),
            16
        );
    }

    #[test]
    fn ranges() {
        for e in 0..7u32 {
            assert!(classify_hirzebruch(e, Constraint::MaxC2(i64::from(e) + 1))
                .unwrap()
                .is_empty());
            let min = classify_hirzebruch(e, Constraint::MaxC2(i64::from(e) + 2)).unwrap();
            let f = hz(e, 1, i64::from(e) + 1);
            assert_eq!(min.len(), 1);
            assert_eq!(
                min[0].representative().unwrap(),
                Bundle::direct_sum(f, f).unwrap()
            );
            assert!(matches!(
                classify_hirzebruch(e, Constraint::MaxC2(i64::from(e) + 7)),
                Err(Error::UnsupportedRange { limit, .. }) if limit == i64::from(e) + 6
            ));
        }
        assert!(classify_hirzebruch(0, Constraint::MaxDelta(17)).is_err());
        assert!(classify_hirzebruch(0, Constraint::MaxC1Sq(17)).is_err());
        assert!(classify_hirzebruch(1, Constraint::MaxC1Sq(20)).is_ok());
        assert!(classify_hirzebruch(0, Constraint::MaxC1(3)).is_err());
    }

    #[test]
    fn beyond_listed_range() {
        // e = 1, c2 = 7: the Nakai-certified extension and the nef-branch sum
        let v = classify_hirzebruch(1, Constraint::MaxC2(7)).unwrap();
        let sevens: Vec<_> = v.iter().filter(|x| x.chern.c2() == 7).collect();
        let text: Vec<_> = sevens
            .iter()
            .map(|x| x.representative().unwrap().to_string())
            .collect();
        assert_eq!(
            text,
            [
                "[H+2F]⊕[H+6F]",
                "[H+3F]⊕[H+5F]",
                "[H+4F]⊕[H+4F]",
                "[H+2F]⊕[2H+5F]",
                "[H+3F]⊕[2H+3F]",
                "[H+2F]⊕[3H+4F]",
                "ext(2H+F, H+4F; degZ=0; nonsplit)",
            ]
        );
        assert_eq!(sevens.last().unwrap().existence, Existence::Proved);
        let mut labels: Vec<_> = v.iter().map(|x| x.case_label.clone()).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), v.len());

        // e = 3, c2 = 9 has the single c1·F = 3 sum [H+4F]⊕[2H+7F]
        let v = classify_hirzebruch(3, Constraint::MaxC2(9)).unwrap();
        assert!(v
            .iter()
            .any(|x| x.representative().unwrap().to_string() == "[H+4F]⊕[2H+7F]"));
        // e = 2, c2 = 8 contains the non-split [2H+4F] → [H+4F]
        let v = classify_hirzebruch(2, Constraint::MaxC2(8)).unwrap();
        assert!(v
            .iter()
            .any(|x| x.existence == Existence::Cited(EXAMPLE_3_7)));
    }

    #[test]
    fn split_pairs_match_closed_form() {
        for e in 0..5u32 {
            for x in classify_hirzebruch(e, Constraint::MaxC2(i64::from(e) + 6)).unwrap() {
                let Item::Bundle { bundle, .. } = x.item else {
                    panic!()
                };
                if let Shape::DirectSum(l, m) = *bundle.shape() {
                    if l.coeffs()[0] == 1 && m.coeffs()[0] == 1 {
                        let (c2, c1sq, delta) =
                            split_pair_data(i64::from(e), l.coeffs()[1], m.coeffs()[1]);
                        let c = chern(&bundle);
                        assert_eq!((c.c2(), c.c1_sq(), c.delta()), (c2, c1sq, delta));
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_in_bound() {
        for e in 0..4u32 {
            let mut prev: Vec<ClassificationEntry> = Vec::new();
            for n in 0..=i64::from(e) + 6 {
                let cur = classify_hirzebruch(e, Constraint::MaxC2(n)).unwrap();
                assert!(prev.iter().all(|p| cur.contains(p)));
                prev = cur;
            }
        }
    }

    #[test]
    fn c1sq_is_subset_of_c2_list() {
        let c2 = ListId::HirzebruchC2.entries();
        let c1sq = ListId::HirzebruchC1Sq.entries();
        let filtered: Vec<_> = c2.iter().filter(|x| x.chern.c1_sq() <= 16).collect();
        assert_eq!(filtered.len(), c1sq.len());
        for x in &c1sq {
            assert!(filtered.iter().any(|y| y.same_case(x)));
        }
    }
}
