//! Exhaustive enumeration of `(-1)`-curve and `0`-curve (conic fiber) classes
//! on Del Pezzo lattices.
//!
//! A class is written `a_0 H - Σ a_i E_i`. Writing `r = 9 - d`, a
//! `(-1)`-curve satisfies `Σ a_i = 3a_0 - 1` and `Σ a_i² = a_0² + 1`, a
//! `0`-curve `Σ a_i = 3a_0 - 2` and `Σ a_i² = a_0²`. Cauchy-Schwarz
//! (`(Σ a_i)² ≤ r Σ a_i²`) bounds `a_0`, and the quadratic constraint bounds
//! every `|a_i|`, so the search below is finite and complete.
//!
//! Membership is purely numerical: a class is reported when its numbers
//! match (and, for `0`-curves, it is nef). Irreducibility is not checked.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::error::Result;
use crate::surface::{canonical_class, Divisor, Surface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveType {
    MinusOne,
    Zero,
}

/// Type tuple `(a_0; a_1^{n_1}, …)` of a class `a_0 H - Σ a_i E_i`, keeping
/// only the nonzero `a_i`, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub a0: i64,
    /// `(value, multiplicity)` pairs with distinct nonzero values, descending.
    pub parts: Vec<(i64, usize)>,
}

impl Signature {
    pub fn of(class: &Divisor) -> Signature {
        let c = class.coeffs();
        let mut a: Vec<i64> = c[1..].iter().map(|&x| -x).filter(|&x| x != 0).collect();
        a.sort_unstable_by(|x, y| y.cmp(x));
        let mut parts: Vec<(i64, usize)> = Vec::new();
        for v in a {
            match parts.last_mut() {
                Some((last, n)) if *last == v => *n += 1,
                _ => parts.push((v, 1)),
            }
        }
        Signature { a0: c[0], parts }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.a0)?;
        for (i, (v, n)) in self.parts.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { "," })?;
            if *n == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{n}")?;
            }
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveClass {
    pub class: Divisor,
    pub curve_type: CurveType,
    pub signature: Signature,
}

impl CurveClass {
    fn new(class: Divisor, curve_type: CurveType) -> CurveClass {
        CurveClass {
            signature: Signature::of(&class),
            class,
            curve_type,
        }
    }
}

fn check_degree(d: u8) -> Result<Surface> {
    Surface::del_pezzo(d)
}

/// All `(-1)`-curve classes, sorted lexicographically by coefficients.
/// Panics when `d` is outside `1..=7`.
pub fn minus_one_classes(d: u8) -> &'static [Divisor] {
    static CACHE: [OnceBox<Vec<Divisor>>; 7] = [const { OnceBox::new() }; 7];
    let s = check_degree(d).expect("Del Pezzo degree in 1..=7");
    CACHE[d as usize - 1]
        .get_or_init(|| Box::new(search(s, 1, 1)))
        .as_slice()
}

/// All nef classes with `C² = 0`, `-K·C = 2`, sorted lexicographically.
/// Panics when `d` is outside `1..=7`.
pub fn zero_classes(d: u8) -> &'static [Divisor] {
    static CACHE: [OnceBox<Vec<Divisor>>; 7] = [const { OnceBox::new() }; 7];
    let s = check_degree(d).expect("Del Pezzo degree in 1..=7");
    CACHE[d as usize - 1]
        .get_or_init(|| {
            let minus_one = minus_one_classes(d);
            let mut v = search(s, 2, 0);
            v.retain(|c| minus_one.iter().all(|e| e.dot(c) >= 0));
            Box::new(v)
        })
        .as_slice()
}

pub fn enumerate_minus_one_curves(d: u8) -> Result<Vec<CurveClass>> {
    check_degree(d)?;
    Ok(minus_one_classes(d)
        .iter()
        .map(|&c| CurveClass::new(c, CurveType::MinusOne))
        .collect())
}

pub fn enumerate_zero_curves(d: u8) -> Result<Vec<CurveClass>> {
    check_degree(d)?;
    Ok(zero_classes(d)
        .iter()
        .map(|&c| CurveClass::new(c, CurveType::Zero))
        .collect())
}

pub fn signature_histogram(d: u8) -> Result<BTreeMap<Signature, usize>> {
    let mut map = BTreeMap::new();
    for c in enumerate_minus_one_curves(d)? {
        *map.entry(c.signature).or_insert(0) += 1;
    }
    Ok(map)
}

/// Sum of all `(-1)`-curve classes with its multiplier: the sum is `-m_d K`
/// for `d ≤ 6`, and `H` (reported with multiplier 1) for `d = 7`.
pub fn union_class(d: u8) -> Result<(Divisor, i64)> {
    let s = check_degree(d)?;
    let sum = minus_one_classes(d)
        .iter()
        .fold(Divisor::zero(s), |acc, &c| acc + c);
    if d == 7 {
        assert_eq!(sum, Divisor::basis(s, 0), "degree 7 union must be H");
        return Ok((sum, 1));
    }
    let anti = -canonical_class(s);
    let m = sum.coeffs()[0] / 3;
    assert_eq!(
        sum,
        m * anti,
        "union of (-1)-curves is not a multiple of -K"
    );
    Ok((sum, m))
}

/// Classes with `C² = k_deg - 2` (so `-1` or `0`) and `-K·C = k_deg`.
fn search(s: Surface, k_deg: i64, neg_square: i64) -> Vec<Divisor> {
    let r = s.rank() as i64 - 1;
    let mut out = Vec::new();
    let mut a0 = 0i64;
    loop {
        let sum = 3 * a0 - k_deg;
        let sq = a0 * a0 + neg_square;
        if sum * sum > r * sq {
            if a0 > k_deg {
                break;
            }
        } else {
            let mut a = Vec::with_capacity(r as usize);
            fill(&mut a, r as usize, sum, sq, &mut |tail: &[i64]| {
                let mut coeffs = Vec::with_capacity(r as usize + 1);
                coeffs.push(a0);
                coeffs.extend(tail.iter().map(|&x| -x));
                out.push(Divisor::new(s, &coeffs).expect("rank matches"));
            });
        }
        a0 += 1;
    }
    out.sort_unstable();
    out
}

/// All integer vectors of length `n` with the given sum and sum of squares.
pub(crate) fn fill(
    prefix: &mut Vec<i64>,
    n: usize,
    sum: i64,
    sq: i64,
    emit: &mut impl FnMut(&[i64]),
) {
    let left = (n - prefix.len()) as i64;
    if left == 0 {
        if sum == 0 && sq == 0 {
            emit(prefix);
        }
        return;
    }
    // remaining vector must satisfy sum² ≤ left·sq
    if sq < 0 || sum * sum > left * sq {
        return;
    }
    let bound = isqrt(sq);
    for v in -bound..=bound {
        prefix.push(v);
        fill(prefix, n, sum - v, sq - v * v, emit);
        prefix.pop();
    }
}

fn isqrt(n: i64) -> i64 {
    let mut x = 0;
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{is_nef, sectional_genus};
    use alloc::string::ToString;

    fn dp(d: u8, coeffs: &[i64]) -> Divisor {
        Divisor::new(Surface::DelPezzo(d), coeffs).unwrap()
    }

    #[test]
    fn counts() {
        let got: Vec<usize> = (1..=7).map(|d| minus_one_classes(d).len()).collect();
        assert_eq!(got, [240, 56, 27, 16, 10, 6, 3]);
        let zero: Vec<usize> = (1..=7).map(|d| zero_classes(d).len()).collect();
        assert_eq!(zero, [2160, 126, 27, 10, 5, 3, 2]);
    }

    #[test]
    fn degree_seven_lists() {
        assert_eq!(
            minus_one_classes(7),
            [dp(7, &[0, 0, 1]), dp(7, &[0, 1, 0]), dp(7, &[1, -1, -1])]
        );
        assert_eq!(zero_classes(7), [dp(7, &[1, -1, 0]), dp(7, &[1, 0, -1])]);
        let [e2, e1, c12] = minus_one_classes(7) else {
            panic!()
        };
        assert_eq!(e1.dot(c12), 1);
        assert_eq!(e2.dot(c12), 1);
        assert_eq!(e1.dot(e2), 0);
    }

    #[test]
    fn invariants_hold() {
        for d in 1..=7 {
            let s = Surface::DelPezzo(d);
            for c in minus_one_classes(d) {
                assert_eq!((c.square(), c.anticanonical_degree()), (-1, 1));
                assert_eq!(sectional_genus(s, c).unwrap(), 0);
                assert!(!is_nef(s, c));
            }
            for c in zero_classes(d) {
                assert_eq!((c.square(), c.anticanonical_degree()), (0, 2));
                assert_eq!(sectional_genus(s, c).unwrap(), 0);
                assert!(is_nef(s, c));
            }
        }
    }

    #[test]
    fn union_multipliers() {
        let m: Vec<i64> = (1..=7).map(|d| union_class(d).unwrap().1).collect();
        assert_eq!(m, [240, 28, 9, 4, 2, 1, 1]);
        for d in 1..=6u8 {
            let (sum, m) = union_class(d).unwrap();
            assert_eq!(sum.anticanonical_degree(), m * i64::from(d));
            assert_eq!(
                sum.anticanonical_degree(),
                minus_one_classes(d).len() as i64
            );
        }
        let (h, _) = union_class(7).unwrap();
        assert_eq!(h, Divisor::basis(Surface::DelPezzo(7), 0));
    }

    #[test]
    fn degree_six_union_by_hand() {
        let e = |i| Divisor::basis(Surface::DelPezzo(6), i);
        let h = e(0);
        let sum = e(1) + e(2) + e(3) + (h - e(1) - e(2)) + (h - e(1) - e(3)) + (h - e(2) - e(3));
        assert_eq!(sum, -canonical_class(Surface::DelPezzo(6)));
        assert_eq!(union_class(6).unwrap().0, sum);
    }

    #[test]
    fn signatures() {
        let s = Signature::of(&dp(7, &[0, 1, 0]));
        assert_eq!(s.to_string(), "(0; -1)");
        let s = Signature::of(&dp(1, &[3, -2, -1, -1, -1, -1, -1, -1, 0]));
        assert_eq!(s.to_string(), "(3; 2,1^6)");

        let h1 = signature_histogram(1).unwrap();
        let find = |h: &BTreeMap<Signature, usize>, a0, parts: &[(i64, usize)]| {
            h[&Signature {
                a0,
                parts: parts.to_vec(),
            }]
        };
        assert_eq!(find(&h1, 3, &[(2, 1), (1, 6)]), 56);
        assert_eq!(find(&h1, 2, &[(1, 5)]), 56);
        let h2 = signature_histogram(2).unwrap();
        assert_eq!(find(&h2, 3, &[(2, 1), (1, 6)]), 7);
        let h4 = signature_histogram(4).unwrap();
        assert_eq!(find(&h4, 2, &[(1, 5)]), 1);
        let h7 = signature_histogram(7).unwrap();
        assert_eq!(find(&h7, 1, &[(1, 2)]), 1);
    }

    #[test]
    fn zero_curves_match_independent_box_search() {
        // unconstrained box search with no Cauchy-Schwarz pruning
        for d in 4..=7u8 {
            let s = Surface::DelPezzo(d);
            let r = s.rank();
            let minus_one = minus_one_classes(d);
            let mut found = Vec::new();
            let mut v = alloc::vec![-4i64; r];
            'outer: loop {
                let c = Divisor::new(s, &v).unwrap();
                if c.square() == 0
                    && c.anticanonical_degree() == 2
                    && minus_one.iter().all(|e| e.dot(&c) >= 0)
                {
                    found.push(c);
                }
                for x in v.iter_mut() {
                    *x += 1;
                    if *x <= 4 {
                        continue 'outer;
                    }
                    *x = -4;
                }
                break;
            }
            found.sort();
            assert_eq!(found, zero_classes(d), "d = {d}");
        }
    }

    #[test]
    fn bad_degree() {
        assert!(enumerate_minus_one_curves(8).is_err());
        assert!(enumerate_zero_curves(8).is_err());
        assert!(enumerate_zero_curves(0).is_err());
    }
}
