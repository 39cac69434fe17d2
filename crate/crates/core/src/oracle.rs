//! Brute-force searches that check the classified lists from outside.
//!
//! Candidates are presentations `0 → L → E → I_Z ⊗ M → 0` with `M` ample
//! (every quotient of an ample bundle is ample), kept when they pass the
//! numerical necessary conditions. On Hirzebruch surfaces and `P²` the classes
//! range over a coefficient box. On Del Pezzo surfaces `c1` is enumerated
//! first (`c1 + 2K` is nef), `M` solves `c1·M - M² = c2 - deg Z` inside the
//! box, and the search runs modulo permutations of `E1..Er`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bundle::{
    bogomolov_unstable, numeric_ample_necessary, Bundle, ChernData, Shape, Splitting,
};
use crate::classify::{ClassificationEntry, Item, ListId};
use crate::curves::{fill, minus_one_classes, zero_classes};
use crate::error::{Error, Result};
use crate::surface::{canonical_class, is_ample, is_nef, Divisor, Surface};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest absolute coefficient of `L` and `M`.
    pub coefficient_cap: i64,
    pub deg_z_cap: i64,
}

impl Default for SearchBounds {
    fn default() -> SearchBounds {
        SearchBounds {
            coefficient_cap: 12,
            deg_z_cap: 8,
        }
    }
}

/// The invariant a search matches exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    C2(i64),
    C1Sq(i64),
    Delta(i64),
}

impl Target {
    fn matches(self, c: &ChernData) -> bool {
        match self {
            Target::C2(n) => c.c2() == n,
            Target::C1Sq(n) => c.c1_sq() == n,
            Target::Delta(n) => c.delta() == n,
        }
    }
}

/// `h¹(O(n))` on `P¹`.
fn h1_line(n: i64) -> i64 {
    (-n - 1).max(0)
}

/// `h¹(aH + bF)` on `Σ_e`, from `π_*O(aH) = Sym^a(O ⊕ O(-e))` and Serre
/// duality.
fn h1_hirzebruch(e: i64, a: i64, b: i64) -> i64 {
    match a {
        0.. => (0..=a).map(|j| h1_line(b - j * e)).sum(),
        -1 => 0,
        _ => h1_hirzebruch(e, -2 - a, -(e + 2) - b),
    }
}

/// `Some(true)` when `H¹(D) = 0` is certain, `None` when undecided.
fn h1_vanishes(s: Surface, d: &Divisor) -> Option<bool> {
    match s {
        Surface::ProjectivePlane => Some(true),
        Surface::Hirzebruch(e) => {
            let c = d.coeffs();
            Some(h1_hirzebruch(i64::from(e), c[0], c[1]) == 0)
        }
        Surface::DelPezzo(deg) => {
            // ±C for a smooth rational curve C with C² ≥ -1: restrict to C
            let curve = |x: &Divisor| {
                minus_one_classes(deg).binary_search(x).is_ok()
                    || zero_classes(deg).binary_search(x).is_ok()
            };
            // Kodaira vanishing, applied to D and to K - D by Serre duality
            let k = canonical_class(s);
            let rule = |x: Divisor| x.is_zero() || is_ample(s, &(x - k)) || curve(&x) || curve(&-x);
            (rule(*d) || rule(k - *d)).then_some(true)
        }
    }
}

fn pick(n: usize, f: impl Fn(usize) -> i64) -> Vec<i64> {
    (0..n).map(f).collect()
}

/// Applies one permutation of `E1..Er` to both classes, chosen so that the
/// pairs `(x_i, y_i)` are sorted.
fn sort_exceptional(x: Divisor, y: Divisor) -> (Divisor, Divisor) {
    let s = x.surface();
    let (cx, cy) = (x.coeffs(), y.coeffs());
    let mut idx: Vec<usize> = (1..cx.len()).collect();
    idx.sort_by_key(|&i| (cx[i], cy[i]));
    let apply = |c: &[i64]| {
        let mut v = vec![c[0]];
        v.extend(idx.iter().map(|&i| c[i]));
        Divisor::new(s, &v).expect("same rank")
    };
    (apply(cx), apply(cy))
}

/// Canonical form modulo the ruling swap on `Σ0` and permutations of the
/// exceptional classes on Del Pezzo surfaces.
pub fn normal_form(b: &Bundle) -> Bundle {
    let b = b.canonical();
    if !matches!(b.surface(), Surface::DelPezzo(_)) {
        return b;
    }
    match *b.shape() {
        Shape::DirectSum(l, m) => {
            let (l1, m1) = sort_exceptional(l, m);
            let (m2, l2) = sort_exceptional(m, l);
            let a = Bundle::direct_sum(l1, m1).expect("valid").canonical();
            let c = Bundle::direct_sum(l2, m2).expect("valid").canonical();
            a.min(c)
        }
        Shape::Extension {
            sub,
            quot,
            deg_z,
            split,
        } => {
            let (sub, quot) = sort_exceptional(sub, quot);
            Bundle::extension(sub, quot, deg_z, split).expect("valid")
        }
        Shape::BlowUpExtension { sub, quot, points } => {
            let (sub, quot) = sort_exceptional(sub, quot);
            Bundle::blow_up_extension(sub, quot, points).expect("valid")
        }
        Shape::Tangent | Shape::TangentTwist(_) => b,
    }
}

/// Adds the candidates presented by `(l, m, deg_z)`: the direct sum when both
/// classes are ample and `Z = ∅`, and the extension unless it must split
/// into that sum.
fn push_candidates(s: Surface, l: Divisor, m: Divisor, deg_z: i64, out: &mut BTreeSet<Bundle>) {
    if !is_ample(s, &m) || m.square() <= deg_z {
        return;
    }
    let l_ample = is_ample(s, &l);
    let mut keep = |b: Bundle| {
        if numeric_ample_necessary(&b).passes() {
            out.insert(normal_form(&b));
        }
    };
    if deg_z == 0 && l_ample {
        keep(Bundle::direct_sum(l, m).expect("same surface"));
        if h1_vanishes(s, &(l - m)) == Some(true) {
            return;
        }
    }
    keep(Bundle::extension(l, m, deg_z, Splitting::Unknown).expect("valid extension"));
}

/// Hirzebruch surfaces and `P²`: every `(L, M)` in the box.
fn box_search(
    s: Surface,
    bounds: SearchBounds,
    keep: &dyn Fn(&ChernData) -> bool,
    out: &mut BTreeSet<Bundle>,
) {
    let cap = bounds.coefficient_cap;
    let classes: Vec<Divisor> = match s {
        Surface::ProjectivePlane => (-cap..=cap).map(Divisor::plane).collect(),
        _ => (-cap..=cap)
            .flat_map(|a| (-cap..=cap).map(move |b| Divisor::from_pair(s, a, b)))
            .collect(),
    };
    let ample: Vec<Divisor> = classes.iter().copied().filter(|m| is_ample(s, m)).collect();
    for l in &classes {
        for m in &ample {
            let c1 = *l + *m;
            let lm = l.dot(m);
            for deg_z in 0..=bounds.deg_z_cap {
                if keep(&ChernData::new(c1, lm + deg_z)) {
                    push_candidates(s, *l, *m, deg_z, out);
                }
            }
        }
    }
}

/// Possible `c1` with `c2 < c1² ≤ (c2 + 1)²` and `c1·C ≥ 2` on every
/// `(-1)`-curve, that is `c1 + 2K` nef; one per orbit of permutations of the
/// exceptional classes.
fn del_pezzo_first_classes(d: u8, c2: i64) -> Vec<Divisor> {
    let s = Surface::DelPezzo(d);
    let r = s.rank() - 1;
    let d64 = i64::from(d);
    let two_k = 2 * canonical_class(s);
    let mut out = Vec::new();
    // c1 = -2K + N with N nef, k = -K·N, q = N², c1² = 4d + 4k + q
    let k_max = ((c2 + 1) * (c2 + 1) - 4 * d64).div_euclid(4);
    for k in 0..=k_max {
        for q in 0..=k * k / d64 {
            let c1_sq = 4 * d64 + 4 * k + q;
            if c1_sq <= c2 || c1_sq > (c2 + 1) * (c2 + 1) {
                continue;
            }
            for a0 in 0..=6 * k / d64 + 1 {
                let mut prefix = Vec::with_capacity(r);
                fill(
                    &mut prefix,
                    r,
                    3 * a0 - k,
                    a0 * a0 - q,
                    &mut |tail: &[i64]| {
                        let mut coeffs = vec![a0];
                        coeffs.extend(tail.iter().map(|&x| -x));
                        let n = Divisor::new(s, &coeffs).expect("rank matches");
                        let c1 = n - two_k;
                        if c1.coeffs()[1..].windows(2).all(|w| w[0] <= w[1]) && is_nef(s, &n) {
                            out.push(c1);
                        }
                    },
                );
            }
        }
    }
    out.sort_unstable();
    out
}

/// Ample `M = m0·H - Σ m_i·E_i` inside the box with `c1·M - M² = t` and
/// `M² > deg_z`, sorted inside each block of equal `c1` coefficients.
fn del_pezzo_quotients(c1: &Divisor, t: i64, deg_z: i64, cap: i64, emit: &mut dyn FnMut(Divisor)) {
    let s = c1.surface();
    let r = s.rank() - 1;
    let c0 = c1.coeffs()[0];
    let n = pick(r, |i| -c1.coeffs()[i + 1]);
    let f = |i: usize, x: i64| x * x - n[i] * x;
    for m0 in (c0 - cap).max(1)..=cap.min(c0 + cap) {
        // Σ (m_i² - n_i·m_i) = t - c0·m0 + m0²
        let target = t - c0 * m0 + m0 * m0;
        let lo = pick(r, |i| (n[i] - cap).max(1));
        let hi = pick(r, |i| (n[i] + cap).min(cap).min(m0 - 1));
        if (0..r).any(|i| lo[i] > hi[i]) {
            continue;
        }
        let fmin = pick(r, |i| {
            let v = (n[i].div_euclid(2)).clamp(lo[i], hi[i]);
            f(i, v).min(f(i, (v + 1).min(hi[i])))
        });
        let fmax = pick(r, |i| f(i, lo[i]).max(f(i, hi[i])));
        let mut rest_min = vec![0; r + 1];
        let mut rest_max = vec![0; r + 1];
        for i in (0..r).rev() {
            rest_min[i] = rest_min[i + 1] + fmin[i];
            rest_max[i] = rest_max[i + 1] + fmax[i];
        }
        let mut m = vec![0i64; r];
        descend(
            0,
            target,
            &mut m,
            &Ctx {
                n: &n,
                lo: &lo,
                hi: &hi,
                rest_min: &rest_min,
                rest_max: &rest_max,
            },
            &mut |m| {
                let mut coeffs = vec![m0];
                coeffs.extend(m.iter().map(|&x| -x));
                let q = Divisor::new(s, &coeffs).expect("rank matches");
                if q.square() > deg_z && is_ample(s, &q) {
                    emit(q);
                }
            },
        );
    }
}

struct Ctx<'a> {
    n: &'a [i64],
    lo: &'a [i64],
    hi: &'a [i64],
    rest_min: &'a [i64],
    rest_max: &'a [i64],
}

fn descend(i: usize, left: i64, m: &mut Vec<i64>, cx: &Ctx<'_>, emit: &mut dyn FnMut(&[i64])) {
    if i == m.len() {
        if left == 0 {
            emit(m);
        }
        return;
    }
    if left < cx.rest_min[i] || left > cx.rest_max[i] {
        return;
    }
    let top = if i > 0 && cx.n[i] == cx.n[i - 1] {
        cx.hi[i].min(m[i - 1])
    } else {
        cx.hi[i]
    };
    for x in cx.lo[i]..=top {
        m[i] = x;
        descend(i + 1, left - (x * x - cx.n[i] * x), m, cx, emit);
    }
}

fn del_pezzo_search(d: u8, c2: i64, bounds: SearchBounds, out: &mut BTreeSet<Bundle>) {
    let s = Surface::DelPezzo(d);
    for c1 in del_pezzo_first_classes(d, c2) {
        for deg_z in 0..=bounds.deg_z_cap {
            del_pezzo_quotients(&c1, c2 - deg_z, deg_z, bounds.coefficient_cap, &mut |m| {
                push_candidates(s, c1 - m, m, deg_z, out)
            });
        }
    }
}

/// Every candidate matching `target`, deduplicated in [`normal_form`] and
/// sorted. On Del Pezzo surfaces only `c2` and `c1²` targets have a finite
/// candidate space.
pub fn search_candidates(
    surface: Surface,
    target: Target,
    bounds: SearchBounds,
) -> Result<Vec<Bundle>> {
    let surface = surface.validate()?;
    let mut out = BTreeSet::new();
    match surface {
        Surface::DelPezzo(d) => {
            let c2s = match target {
                Target::C2(n) => n..=n,
                Target::C1Sq(n) => 1..=n - 1,
                Target::Delta(_) => {
                    return Err(Error::NoOracle {
                        target: "delta",
                        surface,
                    })
                }
            };
            for c2 in c2s {
                del_pezzo_search(d, c2, bounds, &mut out);
            }
            out.retain(|b| target.matches(&crate::bundle::chern(b)));
        }
        _ => box_search(surface, bounds, &|c| target.matches(c), &mut out),
    }
    Ok(out.into_iter().collect())
}

/// A destabilizing presentation `(L, M, deg Z)` of Chern data with
/// `c1² > 4c2`: `L + M = c1`, `L·M + deg Z = c2`, `(L - M)² > 4 deg Z` and
/// `(L - M)·A > 0` for every ample `A`.
///
/// The last condition is certified by `(L - M)² > 0` together with
/// `(L - M)·A0 > 0` for the reference ample class `A0`: both classes then lie
/// in the same half of the positive cone. Searching ample `M` with
/// `M·A0 < c1·A0 / 2` is therefore exhaustive.
pub fn find_bogomolov_pair(
    surface: Surface,
    c: &ChernData,
    bounds: SearchBounds,
) -> Option<(Divisor, Divisor, i64)> {
    if !bogomolov_unstable(c) || c.c1().surface() != surface {
        return None;
    }
    let a0 = surface.reference_ample();
    let c1 = c.c1();
    let top = (c1.dot(&a0) - 1).div_euclid(2);
    for m in ample_classes_up_to(surface, top) {
        let l = c1 - m;
        let diff = l - m;
        for deg_z in 0..=bounds.deg_z_cap {
            if l.dot(&m) + deg_z == c.c2() && diff.square() > 4 * deg_z && diff.dot(&a0) > 0 {
                return Some((l, m, deg_z));
            }
        }
    }
    None
}

/// Ample classes with `A0`-degree in `1..=top`, by degree and then
/// coefficients.
fn ample_classes_up_to(s: Surface, top: i64) -> Vec<Divisor> {
    let mut out = Vec::new();
    match s {
        Surface::ProjectivePlane => out.extend((1..=top).map(Divisor::plane)),
        Surface::Hirzebruch(_) => {
            // A0·(aH + bF) = a + b
            for deg in 1..=top {
                for a in 1..deg {
                    let m = Divisor::from_pair(s, a, deg - a);
                    if is_ample(s, &m) {
                        out.push(m);
                    }
                }
            }
        }
        Surface::DelPezzo(d) => {
            let r = s.rank() - 1;
            let d64 = i64::from(d);
            for k in 1..=top {
                let mut level = Vec::new();
                for q in 1..=k * k / d64 {
                    for a0 in 1..=6 * k / d64 + 1 {
                        let mut prefix = Vec::with_capacity(r);
                        fill(
                            &mut prefix,
                            r,
                            3 * a0 - k,
                            a0 * a0 - q,
                            &mut |tail: &[i64]| {
                                let mut coeffs = vec![a0];
                                coeffs.extend(tail.iter().map(|&x| -x));
                                let m = Divisor::new(s, &coeffs).expect("rank matches");
                                if is_ample(s, &m) {
                                    level.push(m);
                                }
                            },
                        );
                    }
                }
                level.sort_unstable();
                out.extend(level);
            }
        }
    }
    out
}

/// Why a candidate found only by the search is absent from a list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exclusion {
    /// `deg Z = 0` and `Ext¹(M, L) = H¹(L - M) = 0`: the bundle is `L ⊕ M`,
    /// which is not ample because `L` is not.
    SplitsNonAmple,
    /// The list has an entry with the same Chern classes, and the
    /// classification identifies every ample bundle with these classes
    /// among its entries.
    ListedChernData { label: String },
    /// No entry has these Chern classes, so no ample bundle does.
    ChernDataExcluded { rule: &'static str },
    /// Certainly ample yet not listed: a genuine discrepancy.
    Unexplained,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub list: ListId,
    pub bounds: SearchBounds,
    /// Labels of entries realized by at least one candidate.
    pub agreed: Vec<String>,
    /// Labels of entries no candidate realizes.
    pub classifier_only: Vec<String>,
    pub oracle_only: Vec<(Bundle, Exclusion)>,
    pub candidates: usize,
}

impl CrossCheckReport {
    pub fn success(&self) -> bool {
        self.classifier_only.is_empty()
            && self
                .oracle_only
                .iter()
                .all(|(_, why)| *why != Exclusion::Unexplained)
    }
}

fn realizes(entry: &ClassificationEntry, candidate: &Bundle) -> bool {
    match &entry.item {
        Item::Bundle {
            curve_choice: Some(_),
            ..
        }
        | Item::Family(_) => entry.covers(candidate),
        Item::Bundle { bundle, .. } => {
            if normal_form(bundle) == *candidate {
                return true;
            }
            let (sub, quot, deg_z) = bundle.presentation();
            !matches!(bundle.shape(), Shape::DirectSum(..))
                && Bundle::extension(sub, quot, deg_z, Splitting::Unknown)
                    .is_ok_and(|e| normal_form(&e) == *candidate)
        }
        Item::OpenCase => crate::bundle::chern(candidate) == entry.chern,
    }
}

fn same_chern(entry: &ClassificationEntry, c: &ChernData) -> bool {
    match &entry.item {
        Item::Family(f) => (f.t_min..=f.t_min + 64)
            .filter_map(|t| f.instance(t).ok())
            .any(|b| crate::bundle::chern(&b) == *c),
        _ => entry.surface == c.c1().surface() && entry.chern == *c,
    }
}

fn excluded_rule(c: &ChernData) -> &'static str {
    let s = c.c1().surface();
    let c2 = c.c2();
    match s {
        Surface::Hirzebruch(e) if c2 < i64::from(e) + 2 => "c2 ≥ e + 2 for ample bundles on Σ_e",
        Surface::DelPezzo(d) if c2 < i64::from(d) => "c2 ≥ d for ample bundles on degree d",
        Surface::ProjectivePlane => {
            let c1 = c.c1().coeffs()[0];
            if c2 < c1 - 1 {
                "c2 ≥ c1 - 1 on P²"
            } else if c2 != c1 - 1 && c2 < 2 * c1 - 4 {
                "c2 ≥ 2c1 - 4 off the line c2 = c1 - 1 on P²"
            } else {
                "no case of the classification has these Chern classes"
            }
        }
        _ => "no case of the classification has these Chern classes",
    }
}

fn annotate(entries: &[ClassificationEntry], b: &Bundle) -> Exclusion {
    let c = crate::bundle::chern(b);
    let (sub, quot, deg_z) = b.presentation();
    let s = b.surface();
    // sums of ample classes and extensions of one ample class by another are ample
    let certified = match b.shape() {
        Shape::DirectSum(..) => true,
        _ => deg_z == 0 && is_ample(s, &sub) && is_ample(s, &quot),
    };
    if matches!(b.shape(), Shape::DirectSum(..)) {
        return Exclusion::Unexplained;
    }
    if deg_z == 0 && !is_ample(s, &sub) && h1_vanishes(s, &(sub - quot)) == Some(true) {
        return Exclusion::SplitsNonAmple;
    }
    if let Some(e) = entries.iter().find(|e| same_chern(e, &c)) {
        return Exclusion::ListedChernData {
            label: e.case_label.clone(),
        };
    }
    if certified {
        return Exclusion::Unexplained;
    }
    Exclusion::ChernDataExcluded {
        rule: excluded_rule(&c),
    }
}

/// Candidates for one whole list, over all of its surfaces.
fn list_candidates(list: ListId, bounds: SearchBounds) -> Result<Vec<Bundle>> {
    let mut out = BTreeSet::new();
    for s in list.surfaces() {
        match (list, s) {
            (ListId::DelPezzoC2, Surface::DelPezzo(d)) => {
                for c2 in 1..=3 {
                    del_pezzo_search(d, c2, bounds, &mut out);
                }
            }
            (ListId::DelPezzoDelta, _) => {
                return Err(Error::NoOracle {
                    target: "delta",
                    surface: s,
                })
            }
            _ => {
                let keep: &dyn Fn(&ChernData) -> bool = match list {
                    ListId::HirzebruchC2 => &|c| c.c2() <= 6,
                    ListId::HirzebruchC1Sq => &|c| c.c1_sq() <= 16,
                    ListId::HirzebruchDelta => &|c| c.delta() <= 16,
                    ListId::PlaneC2 => &|c| c.c2() <= 6,
                    ListId::PlaneDelta => &|c| c.delta() <= 24,
                    ListId::DelPezzoC2 | ListId::DelPezzoDelta => unreachable!("handled above"),
                };
                box_search(s, bounds, keep, &mut out);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Compares a list with the brute-force candidates for the same bound.
pub fn cross_check(list: ListId, bounds: SearchBounds) -> Result<CrossCheckReport> {
    let entries = list.entries();
    let candidates = list_candidates(list, bounds)?;
    let mut found = vec![false; entries.len()];
    let mut oracle_only = Vec::new();
    for b in &candidates {
        let mut hit = false;
        for (i, e) in entries.iter().enumerate() {
            if realizes(e, b) {
                found[i] = true;
                hit = true;
            }
        }
        if !hit {
            oracle_only.push((*b, annotate(&entries, b)));
        }
    }
    let (agreed, classifier_only) =
        entries
            .iter()
            .zip(&found)
            .fold((Vec::new(), Vec::new()), |(mut a, mut c), (e, &f)| {
                if f {
                    a.push(e.case_label.clone())
                } else {
                    c.push(e.case_label.clone())
                }
                (a, c)
            });
    Ok(CrossCheckReport {
        list,
        bounds,
        agreed,
        classifier_only,
        oracle_only,
        candidates: candidates.len(),
    })
}
