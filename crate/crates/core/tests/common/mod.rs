//! Hand transcriptions of every classification list, shared by the golden and
//! acceptance targets. Each check compares entries in order and panics on the
//! first mismatch. Chern numbers are recomputed from closed formulas rather
//! than through the lattice code.

use chern_lattice_core::bundle::{Bundle, Existence, Splitting};
use chern_lattice_core::classify::{ClassificationEntry, CurveKind, Item, ListId, Stability};
use chern_lattice_core::surface::{canonical_class, Divisor, Surface};

/// `(e, sub, quot)` with `aH + bF` written `(a, b)`; `split` marks a direct sum.
struct Hz {
    e: u32,
    l: (i64, i64),
    m: (i64, i64),
    split: bool,
}

const fn s(e: u32, l: (i64, i64), m: (i64, i64)) -> Hz {
    Hz {
        e,
        l,
        m,
        split: true,
    }
}

const fn n(e: u32, l: (i64, i64), m: (i64, i64)) -> Hz {
    Hz {
        e,
        l,
        m,
        split: false,
    }
}

/// `(aH + bF)(cH + dF)` with `H² = -e`, `HF = 1`, `F² = 0`.
fn hz_dot(e: u32, (a, b): (i64, i64), (c, d): (i64, i64)) -> i64 {
    -(e as i64) * a * c + a * d + b * c
}

fn hz_bundle(r: &Hz) -> Bundle {
    let surface = Surface::hirzebruch(r.e);
    let l = Divisor::from_pair(surface, r.l.0, r.l.1);
    let m = Divisor::from_pair(surface, r.m.0, r.m.1);
    if r.split {
        Bundle::direct_sum(l, m).unwrap()
    } else {
        Bundle::extension(l, m, 0, Splitting::NonSplit).unwrap()
    }
}

fn bundle_of(e: &ClassificationEntry) -> &Bundle {
    match &e.item {
        Item::Bundle { bundle, .. } => bundle,
        other => panic!("{} is not a single bundle: {other:?}", e.case_label),
    }
}

fn check_hirzebruch(list: ListId, expected: &[Hz]) {
    let got = list.entries();
    assert_eq!(got.len(), expected.len(), "{}", list.name());
    for (i, (entry, row)) in got.iter().zip(expected).enumerate() {
        assert_eq!(entry.case_label, format!("{}/{}", list.name(), i + 1));
        assert_eq!(
            entry.surface,
            Surface::hirzebruch(row.e),
            "{}",
            entry.case_label
        );
        assert_eq!(bundle_of(entry), &hz_bundle(row), "{}", entry.case_label);
        let c1 = (row.l.0 + row.m.0, row.l.1 + row.m.1);
        assert_eq!(
            entry.chern.c2(),
            hz_dot(row.e, row.l, row.m),
            "{}",
            entry.case_label
        );
        assert_eq!(
            entry.chern.c1_sq(),
            hz_dot(row.e, c1, c1),
            "{}",
            entry.case_label
        );
        let existence_ok = if row.split {
            entry.existence == Existence::ExactCriterion
        } else {
            matches!(entry.existence, Existence::Cited(_))
        };
        assert!(existence_ok, "{}: {:?}", entry.case_label, entry.existence);
        assert_eq!(entry.stability, None);
    }
}

pub fn hirzebruch_c1_squared_list() {
    check_hirzebruch(
        ListId::HirzebruchC1Sq,
        &[
            s(0, (1, 1), (1, 1)),
            s(0, (1, 1), (1, 2)),
            s(1, (1, 2), (1, 2)),
            s(0, (1, 1), (1, 3)),
            s(0, (1, 2), (1, 2)),
            s(1, (1, 2), (1, 3)),
            s(2, (1, 3), (1, 3)),
        ],
    );
}

pub fn hirzebruch_c2_list() {
    check_hirzebruch(
        ListId::HirzebruchC2,
        &[
            s(0, (1, 1), (1, 1)),
            s(0, (1, 1), (1, 2)),
            s(1, (1, 2), (1, 2)),
            s(0, (1, 1), (1, 3)),
            s(0, (1, 2), (1, 2)),
            s(0, (1, 1), (2, 2)),
            s(1, (1, 2), (1, 3)),
            s(2, (1, 3), (1, 3)),
            s(0, (1, 1), (1, 4)),
            s(0, (1, 2), (1, 3)),
            s(0, (1, 1), (2, 3)),
            s(0, (1, 2), (2, 1)),
            s(1, (1, 2), (1, 4)),
            s(1, (1, 3), (1, 3)),
            s(1, (1, 2), (2, 3)),
            s(2, (1, 3), (1, 4)),
            s(3, (1, 4), (1, 4)),
            s(0, (1, 1), (1, 5)),
            s(0, (1, 2), (1, 4)),
            s(0, (1, 3), (1, 3)),
            s(0, (1, 1), (2, 4)),
            s(0, (1, 2), (2, 2)),
            s(0, (1, 1), (3, 3)),
            n(0, (2, 0), (1, 3)),
            s(1, (1, 2), (1, 5)),
            s(1, (1, 3), (1, 4)),
            s(1, (1, 2), (2, 4)),
            n(1, (2, 2), (1, 3)),
            s(2, (1, 3), (1, 5)),
            s(2, (1, 4), (1, 4)),
            s(3, (1, 4), (1, 5)),
            s(4, (1, 5), (1, 5)),
        ],
    );
}

pub fn hirzebruch_delta_list() {
    check_hirzebruch(
        ListId::HirzebruchDelta,
        &[
            s(0, (1, 1), (1, 1)),
            s(0, (1, 1), (1, 2)),
            s(1, (1, 2), (1, 2)),
            s(0, (1, 1), (2, 2)),
            s(0, (1, 1), (1, 3)),
            s(0, (1, 2), (1, 2)),
            s(1, (1, 2), (1, 3)),
            s(2, (1, 3), (1, 3)),
            s(0, (1, 1), (2, 3)),
            s(1, (1, 2), (2, 3)),
            s(0, (1, 1), (1, 4)),
            s(0, (1, 2), (1, 3)),
            s(1, (1, 2), (1, 4)),
            s(1, (1, 3), (1, 3)),
            s(2, (1, 3), (1, 4)),
            s(3, (1, 4), (1, 4)),
        ],
    );
    let deltas: Vec<i64> = ListId::HirzebruchDelta
        .entries()
        .iter()
        .map(|e| e.chern.delta())
        .collect();
    assert_eq!(
        deltas,
        [1, 4, 4, 7, 9, 9, 9, 9, 12, 15, 16, 16, 16, 16, 16, 16]
    );
}

fn dp(d: u8) -> Surface {
    Surface::del_pezzo(d).unwrap()
}

/// `-tK + extra` on a del Pezzo surface.
fn anti(d: u8, t: i64, extra: &[i64]) -> Divisor {
    let k = canonical_class(dp(d));
    let mut c: Vec<i64> = k.coeffs().iter().map(|x| -t * x).collect();
    for (x, y) in c.iter_mut().zip(extra) {
        *x += y;
    }
    Divisor::new(dp(d), &c).unwrap()
}

fn e_class(i: usize) -> Vec<i64> {
    let mut v = vec![0; 9];
    v[i] = 1;
    v
}

pub fn del_pezzo_c2_list() {
    let got = ListId::DelPezzoC2.entries();
    let chern: Vec<(u8, i64, i64)> = got
        .iter()
        .map(|e| match e.surface {
            Surface::DelPezzo(d) => (d, e.chern.c2(), e.chern.c1_sq()),
            other => panic!("{other}"),
        })
        .collect();
    // c1 = -aK + C with C² = s, -K·C = k: c1² = a²d + 2ak + s
    let c1sq = |d: i64, a: i64, k: i64, s: i64| a * a * d + 2 * a * k + s;
    assert_eq!(
        chern,
        [
            (1, 1, c1sq(1, 2, 0, 0)),
            (1, 2, c1sq(1, 3, 0, 0)),
            (2, 2, c1sq(2, 2, 0, 0)),
            (1, 3, c1sq(1, 2, 0, 0)),
            (1, 3, c1sq(1, 2, 2, 0)),
            (1, 3, c1sq(1, 3, 1, -1)),
            (1, 3, c1sq(1, 4, 0, 0)),
            (2, 3, c1sq(2, 2, 0, 0)),
            (3, 3, c1sq(3, 2, 0, 0)),
        ]
    );

    let sum = |d: u8, l: Divisor, m: Divisor| (d, Bundle::direct_sum(l, m).unwrap());
    let k1 = anti(1, 1, &[]);
    for (entry, (d, b)) in got.iter().zip([
        sum(1, k1, k1),
        sum(1, k1, anti(1, 2, &[])),
        sum(2, anti(2, 1, &[]), anti(2, 1, &[])),
    ]) {
        assert_eq!(entry.surface, dp(d));
        assert_eq!(bundle_of(entry), &b);
    }

    assert_eq!(
        bundle_of(&got[3]),
        &Bundle::blow_up_extension(Divisor::zero(dp(1)), anti(1, 2, &[]), 3).unwrap()
    );
    assert!(matches!(got[3].existence, Existence::Cited(_)));
    assert_eq!(
        bundle_of(&got[7]),
        &Bundle::blow_up_extension(anti(2, 1, &[]), anti(2, 1, &[]), 1).unwrap()
    );
    assert!(matches!(got[7].existence, Existence::Cited(_)));

    // any 0-curve or (-1)-curve may be chosen, not just the stored one
    let zero_curve = [1, -1, 0, 0, 0, 0, 0, 0, 0];
    assert!(got[4].covers(&Bundle::direct_sum(k1, anti(1, 1, &zero_curve)).unwrap()));
    assert!(got[5].covers(&Bundle::direct_sum(k1, anti(1, 2, &e_class(3))).unwrap()));
    assert!(!got[5].covers(&Bundle::direct_sum(k1, anti(1, 1, &e_class(3))).unwrap()));
    let kinds: Vec<Option<(CurveKind, usize)>> = got
        .iter()
        .map(|e| match &e.item {
            Item::Bundle { curve_choice, .. } => curve_choice.map(|c| (c.kind, c.count)),
            _ => None,
        })
        .collect();
    assert_eq!(kinds[4], Some((CurveKind::Zero, 2160)));
    assert_eq!(kinds[5], Some((CurveKind::MinusOne, 240)));

    assert_eq!(
        bundle_of(&got[6]),
        &Bundle::direct_sum(k1, anti(1, 3, &[])).unwrap()
    );
    assert_eq!(
        bundle_of(&got[8]),
        &Bundle::direct_sum(anti(3, 1, &[]), anti(3, 1, &[])).unwrap()
    );
}

pub fn del_pezzo_delta_list() {
    let got = ListId::DelPezzoDelta.entries();
    assert_eq!(got.len(), 6);
    let deltas: Vec<i64> = got.iter().map(|e| e.chern.delta()).collect();
    assert_eq!(deltas, [0, 1, 2, 4, 4, 6]);

    let k1 = anti(1, 1, &[]);
    let pair = {
        let mut v = e_class(7);
        v[8] = 1;
        v
    };
    // (family index, t_min, curve kind, an alternative curve, first t that it covers)
    let families: [(usize, i64, Option<CurveKind>, Vec<i64>); 4] = [
        (0, 1, None, vec![0; 9]),
        (2, 2, Some(CurveKind::MinusOne), e_class(1)),
        (
            3,
            1,
            Some(CurveKind::Zero),
            vec![1, 0, -1, 0, 0, 0, 0, 0, 0],
        ),
        (5, 2, Some(CurveKind::DisjointMinusOnePair), pair),
    ];
    for (i, t_min, kind, curve) in families {
        let Item::Family(f) = &got[i].item else {
            panic!("{} is not a family", got[i].case_label)
        };
        assert_eq!(f.t_min, t_min, "{}", got[i].case_label);
        assert_eq!(f.t_max, None);
        assert_eq!(f.curve_choice.map(|c| c.kind), kind);
        for t in t_min..t_min + 4 {
            let b = Bundle::direct_sum(k1, anti(1, t, &curve)).unwrap();
            assert!(got[i].covers(&b), "{} t={t}", got[i].case_label);
        }
        let below = Bundle::direct_sum(k1, anti(1, t_min - 1, &curve)).unwrap();
        assert!(!got[i].covers(&below), "{} below t_min", got[i].case_label);
    }
    assert_eq!(got[1].surface, dp(2));
    assert_eq!(
        bundle_of(&got[1]),
        &Bundle::direct_sum(anti(2, 1, &[]), anti(2, 1, &[])).unwrap()
    );
    assert_eq!(got[4].surface, dp(3));
    assert_eq!(
        bundle_of(&got[4]),
        &Bundle::direct_sum(anti(3, 1, &[]), anti(3, 1, &[])).unwrap()
    );
}

fn o(n: i64) -> Divisor {
    Divisor::plane(n)
}

fn p2_sum(a: i64, b: i64) -> Bundle {
    Bundle::direct_sum(o(a), o(b)).unwrap()
}

fn p2_ext(a: i64, b: i64, z: i64) -> Bundle {
    Bundle::extension(o(a), o(b), z, Splitting::NonSplit).unwrap()
}

pub fn plane_c2_list() {
    use Stability::*;
    let expected = [
        (p2_sum(1, 1), 1, SemistableNotStable),
        (p2_sum(1, 2), 2, NotSemistable),
        (Bundle::tangent(), 3, Stable),
        (p2_sum(1, 3), 3, NotSemistable),
        (p2_sum(2, 2), 4, SemistableNotStable),
        (p2_sum(1, 4), 4, NotSemistable),
        (p2_ext(2, 2, 1), 5, SemistableNotStable),
        (p2_sum(1, 5), 5, NotSemistable),
        (p2_ext(1, 3, 3), 6, Stable),
        (p2_sum(2, 3), 6, NotSemistable),
        (p2_sum(1, 6), 6, NotSemistable),
    ];
    let got = ListId::PlaneC2.entries();
    assert_eq!(got.len(), expected.len());
    for (entry, (b, c2, st)) in got.iter().zip(expected) {
        assert_eq!(bundle_of(entry), &b, "{}", entry.case_label);
        assert_eq!(entry.chern.c2(), c2, "{}", entry.case_label);
        assert_eq!(entry.stability, Some(st), "{}", entry.case_label);
    }
}

pub fn plane_delta_list() {
    let got = ListId::PlaneDelta.entries();
    assert_eq!(got.len(), 5);
    let Item::Family(f) = &got[0].item else {
        panic!("first entry is the δ = 0 family")
    };
    for t in 1..=6 {
        assert_eq!(f.instance(t).unwrap(), p2_sum(1, t));
        assert!(got[0].covers(&p2_sum(1, t)));
    }
    let rest: Vec<(Bundle, i64)> = got[1..]
        .iter()
        .map(|e| (*bundle_of(e), e.chern.delta()))
        .collect();
    // δ = (c2 + 1)² - c1² by hand: T (9, 3) → 7; O(2)² → 25 - 16; ext(2,2;1) → 36 - 16; O(2)⊕O(3) → 49 - 25
    assert_eq!(
        rest,
        [
            (Bundle::tangent(), 16 - 9),
            (p2_sum(2, 2), 25 - 16),
            (p2_ext(2, 2, 1), 36 - 16),
            (p2_sum(2, 3), 49 - 25),
        ]
    );
}
