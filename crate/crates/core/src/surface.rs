//! Picard lattices of Hirzebruch surfaces, Del Pezzo surfaces of degree at
//! most 7, and the projective plane.
//!
//! Basis conventions:
//!
//! * `Σ_e`: `(H, F)` with `H` the tautological class of `O ⊕ O(-e)` (the
//!   minimal section), so `H² = -e`, `H·F = 1`, `F² = 0` and
//!   `K = -2H - (e+2)F`.
//! * degree `d` Del Pezzo: `(H, E_1, …, E_{9-d})`, the pullback of a line and
//!   the exceptional curves of a blow-up of `P²`; `H² = 1`, `E_i² = -1`, all
//!   mixed products vanish and `K = -3H + ΣE_i`.
//! * `P²`: the single class of a line.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::curves;
use crate::error::{Error, Result};

/// Largest Picard rank handled (degree 1 Del Pezzo surface).
pub const MAX_RANK: usize = 9;

/// Which surface a class lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Surface {
    /// The Hirzebruch surface `Σ_e = P(O ⊕ O(-e))`.
    Hirzebruch(u32),
    /// Del Pezzo surface of degree `d`, `1 ≤ d ≤ 7`.
    DelPezzo(u8),
    ProjectivePlane,
}

impl Surface {
    pub fn hirzebruch(e: u32) -> Surface {
        Surface::Hirzebruch(e)
    }

    pub fn del_pezzo(d: u8) -> Result<Surface> {
        if (1..=7).contains(&d) {
            Ok(Surface::DelPezzo(d))
        } else {
            Err(Error::InvalidSurface {
                reason: "Del Pezzo degree must lie in 1..=7",
            })
        }
    }

    /// Re-checks the invariants of a value built directly from the enum.
    pub fn validate(self) -> Result<Surface> {
        match self {
            Surface::DelPezzo(d) => Surface::del_pezzo(d),
            other => Ok(other),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Surface::Hirzebruch(_) => 2,
            Surface::DelPezzo(d) => 10 - d as usize,
            Surface::ProjectivePlane => 1,
        }
    }

    /// `K²`: 8 on every Hirzebruch surface, `d` on a Del Pezzo surface, 9 on `P²`.
    pub fn canonical_degree(self) -> i64 {
        match self {
            Surface::Hirzebruch(_) => 8,
            Surface::DelPezzo(d) => i64::from(d),
            Surface::ProjectivePlane => 9,
        }
    }

    /// Names of the basis elements, in coefficient order.
    pub fn basis_names(self) -> Vec<&'static str> {
        const E: [&str; 8] = ["E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8"];
        match self {
            Surface::Hirzebruch(_) => alloc::vec!["H", "F"],
            Surface::DelPezzo(d) => {
                let mut names = alloc::vec!["H"];
                names.extend_from_slice(&E[..9 - d as usize]);
                names
            }
            Surface::ProjectivePlane => alloc::vec!["H"],
        }
    }

    /// The finitely many curves whose classes generate the cone of curves:
    /// `F` and the minimal section on `Σ_e`, the `(-1)`-curves on a Del Pezzo
    /// surface, a line on `P²`.
    pub fn curve_generators(self) -> &'static [Divisor] {
        match self {
            Surface::Hirzebruch(e) => hirzebruch_generators(e),
            Surface::DelPezzo(d) => curves::minus_one_classes(d),
            Surface::ProjectivePlane => &PLANE_LINE,
        }
    }

    /// A fixed class in the interior of the ample cone.
    pub fn reference_ample(self) -> Divisor {
        match self {
            Surface::Hirzebruch(e) => Divisor::from_pair(self, 1, i64::from(e) + 1),
            Surface::DelPezzo(_) => -canonical_class(self),
            Surface::ProjectivePlane => Divisor::line(),
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::Hirzebruch(e) => write!(f, "hirzebruch:{e}"),
            Surface::DelPezzo(d) => write!(f, "dp:{d}"),
            Surface::ProjectivePlane => f.write_str("p2"),
        }
    }
}

static PLANE_LINE: [Divisor; 1] = [Divisor {
    surface: Surface::ProjectivePlane,
    coeffs: [1, 0, 0, 0, 0, 0, 0, 0, 0],
}];

fn hirzebruch_generators(e: u32) -> &'static [Divisor] {
    use once_cell::race::OnceBox;
    // Σ_e for small e is all that ever gets queried in practice; larger e
    // fall back to a leaked pair, which is bounded by the number of distinct e.
    const CACHED: usize = 64;
    static SMALL: [OnceBox<[Divisor; 2]>; CACHED] = [const { OnceBox::new() }; CACHED];
    let make = || {
        let s = Surface::Hirzebruch(e);
        alloc::boxed::Box::new([Divisor::from_pair(s, 0, 1), Divisor::from_pair(s, 1, 0)])
    };
    if (e as usize) < CACHED {
        SMALL[e as usize].get_or_init(make).as_slice()
    } else {
        alloc::boxed::Box::leak(make()).as_slice()
    }
}

/// An integral divisor class, stored as coefficients in the surface basis.
///
/// Unused trailing slots are always zero so that derived equality, ordering
/// and hashing only see the meaningful coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    surface: Surface,
    coeffs: [i64; MAX_RANK],
}

impl Divisor {
    pub fn new(surface: Surface, coeffs: &[i64]) -> Result<Divisor> {
        let surface = surface.validate()?;
        if coeffs.len() != surface.rank() {
            return Err(Error::RankMismatch {
                expected: surface.rank(),
                found: coeffs.len(),
            });
        }
        let mut c = [0; MAX_RANK];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(Divisor { surface, coeffs: c })
    }

    pub fn zero(surface: Surface) -> Divisor {
        Divisor {
            surface,
            coeffs: [0; MAX_RANK],
        }
    }

    /// The `i`-th basis class.
    pub fn basis(surface: Surface, i: usize) -> Divisor {
        assert!(
            i < surface.rank(),
            "basis index {i} out of range for {surface}"
        );
        let mut d = Divisor::zero(surface);
        d.coeffs[i] = 1;
        d
    }

    /// `aH + bF` on a Hirzebruch surface.
    pub fn from_pair(surface: Surface, a: i64, b: i64) -> Divisor {
        debug_assert!(matches!(surface, Surface::Hirzebruch(_)));
        let mut d = Divisor::zero(surface);
        d.coeffs[0] = a;
        d.coeffs[1] = b;
        d
    }

    /// `O(n)` on `P²`.
    pub fn plane(n: i64) -> Divisor {
        let mut d = Divisor::zero(Surface::ProjectivePlane);
        d.coeffs[0] = n;
        d
    }

    pub fn line() -> Divisor {
        Divisor::plane(1)
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs[..self.surface.rank()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Intersection product. Panics when the surfaces differ; use
    /// [`intersect`] for a fallible version.
    pub fn dot(&self, other: &Divisor) -> i64 {
        assert_eq!(self.surface, other.surface, "intersection across surfaces");
        let (a, b) = (&self.coeffs, &other.coeffs);
        match self.surface {
            Surface::Hirzebruch(e) => -i64::from(e) * a[0] * b[0] + a[0] * b[1] + a[1] * b[0],
            Surface::DelPezzo(d) => {
                let n = 10 - d as usize;
                a[0] * b[0] - (1..n).map(|i| a[i] * b[i]).sum::<i64>()
            }
            Surface::ProjectivePlane => a[0] * b[0],
        }
    }

    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    /// `-K·D`, the anticanonical degree.
    pub fn anticanonical_degree(&self) -> i64 {
        -canonical_class(self.surface).dot(self)
    }

    pub fn checked_add(&self, other: &Divisor) -> Result<Divisor> {
        same_surface(self, other)?;
        Ok(*self + *other)
    }

    fn zip(self, other: Divisor, f: impl Fn(i64, i64) -> i64) -> Divisor {
        assert_eq!(self.surface, other.surface, "arithmetic across surfaces");
        let mut out = self;
        for (o, b) in out.coeffs.iter_mut().zip(other.coeffs) {
            *o = f(*o, b);
        }
        out
    }
}

impl Add for Divisor {
    type Output = Divisor;
    fn add(self, rhs: Divisor) -> Divisor {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for Divisor {
    type Output = Divisor;
    fn sub(self, rhs: Divisor) -> Divisor {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for Divisor {
    type Output = Divisor;
    fn neg(mut self) -> Divisor {
        self.coeffs.iter_mut().for_each(|c| *c = -*c);
        self
    }
}

impl Mul<Divisor> for i64 {
    type Output = Divisor;
    fn mul(self, mut rhs: Divisor) -> Divisor {
        rhs.coeffs.iter_mut().for_each(|c| *c *= self);
        rhs
    }
}

/// Renders `aH+bF`, `3H-E1-E2`, or `mK` when the class is a multiple of the
/// canonical class on a Del Pezzo surface. On `P²` a class is written `O(n)`.
impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surface == Surface::ProjectivePlane {
            return write!(f, "O({})", self.coeffs[0]);
        }
        if let Surface::DelPezzo(_) = self.surface {
            let k = canonical_class(self.surface);
            let m = self.coeffs[0] / -3;
            if !self.is_zero() && *self == m * k {
                return match m {
                    1 => f.write_str("K"),
                    -1 => f.write_str("-K"),
                    _ => write!(f, "{m}K"),
                };
            }
        }
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (c, name) in self.coeffs().iter().zip(self.surface.basis_names()) {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{mag}{name}")?;
            }
            first = false;
        }
        Ok(())
    }
}

pub(crate) fn same_surface(a: &Divisor, b: &Divisor) -> Result<()> {
    if a.surface == b.surface {
        Ok(())
    } else {
        Err(Error::SurfaceMismatch {
            left: a.surface,
            right: b.surface,
        })
    }
}

/// Symmetric integer Gram matrix of the Picard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    rank: usize,
    entries: [[i64; MAX_RANK]; MAX_RANK],
}

impl GramMatrix {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!(i < self.rank && j < self.rank);
        self.entries[i][j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| self.entries[i][..self.rank].to_vec())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i64 {
        let n = self.rank;
        let mut m = self.entries;
        let mut sign = 1;
        let mut prev = 1;
        for k in 0..n {
            if m[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                    return 0;
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }
}

pub fn gram_matrix(surface: Surface) -> GramMatrix {
    let rank = surface.rank();
    let mut entries = [[0; MAX_RANK]; MAX_RANK];
    for (i, row) in entries.iter_mut().enumerate().take(rank) {
        for (j, v) in row.iter_mut().enumerate().take(rank) {
            *v = Divisor::basis(surface, i).dot(&Divisor::basis(surface, j));
        }
    }
    GramMatrix { rank, entries }
}

pub fn intersect(d1: &Divisor, d2: &Divisor) -> Result<i64> {
    same_surface(d1, d2)?;
    Ok(d1.dot(d2))
}

pub fn canonical_class(surface: Surface) -> Divisor {
    let mut k = Divisor::zero(surface);
    match surface {
        Surface::Hirzebruch(e) => {
            k.coeffs[0] = -2;
            k.coeffs[1] = -(i64::from(e) + 2);
        }
        Surface::DelPezzo(_) => {
            k.coeffs[0] = -3;
            for c in &mut k.coeffs[1..surface.rank()] {
                *c = 1;
            }
        }
        Surface::ProjectivePlane => k.coeffs[0] = -3,
    }
    k
}

fn check_surface(surface: Surface, d: &Divisor) -> Result<()> {
    if d.surface == surface {
        Ok(())
    } else {
        Err(Error::SurfaceMismatch {
            left: surface,
            right: d.surface,
        })
    }
}

fn even_half(value: i64) -> Result<i64> {
    if value % 2 == 0 {
        Ok(value / 2)
    } else {
        Err(Error::ParityViolation { value })
    }
}

/// Genus `g` with `2g - 2 = (K + A)·A`.
pub fn sectional_genus(surface: Surface, a: &Divisor) -> Result<i64> {
    check_surface(surface, a)?;
    let k = canonical_class(surface);
    Ok(1 + even_half((k + *a).dot(a))?)
}

/// Riemann-Roch on a rational surface: `χ(O(D)) = 1 + (D² - D·K)/2`.
pub fn chi_line(surface: Surface, d: &Divisor) -> Result<i64> {
    check_surface(surface, d)?;
    let k = canonical_class(surface);
    Ok(1 + even_half(d.square() - d.dot(&k))?)
}

pub fn is_nef(surface: Surface, d: &Divisor) -> bool {
    d.surface == surface && surface.curve_generators().iter().all(|c| c.dot(d) >= 0)
}

/// Strict positivity on the (finitely generated) cone of curves.
pub fn is_ample(surface: Surface, d: &Divisor) -> bool {
    d.surface == surface && surface.curve_generators().iter().all(|c| c.dot(d) > 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hz(e: u32, a: i64, b: i64) -> Divisor {
        Divisor::from_pair(Surface::Hirzebruch(e), a, b)
    }

    #[test]
    fn gram_examples() {
        assert_eq!(
            gram_matrix(Surface::Hirzebruch(1)).rows(),
            [[-1, 1], [1, 0]]
        );
        assert_eq!(
            gram_matrix(Surface::DelPezzo(7)).rows(),
            [[1, 0, 0], [0, -1, 0], [0, 0, -1]]
        );
        assert_eq!(gram_matrix(Surface::ProjectivePlane).rows(), [[1]]);
    }

    #[test]
    fn unimodular() {
        let mut surfaces: Vec<Surface> = (0..8).map(Surface::Hirzebruch).collect();
        surfaces.extend((1..=7).map(Surface::DelPezzo));
        surfaces.push(Surface::ProjectivePlane);
        for s in surfaces {
            assert_eq!(gram_matrix(s).determinant().abs(), 1, "{s}");
        }
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(hz(1, 2, 4).square(), 12);
        assert_eq!(hz(0, 2, 0).dot(&hz(0, 1, 3)), 6);
        let k3 = canonical_class(Surface::DelPezzo(3));
        assert_eq!(k3.square(), 3);
        let err = intersect(&hz(0, 1, 0), &Divisor::line()).unwrap_err();
        assert!(matches!(err, Error::SurfaceMismatch { .. }));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_class(Surface::Hirzebruch(2)).coeffs(), [-2, -4]);
        for d in 1..=7 {
            let k = canonical_class(Surface::DelPezzo(d));
            assert_eq!(k.square(), i64::from(d));
        }
        assert_eq!(canonical_class(Surface::ProjectivePlane).coeffs(), [-3]);
        for e in 0..6 {
            assert_eq!(canonical_class(Surface::Hirzebruch(e)).square(), 8);
        }
    }

    #[test]
    fn genus_and_chi() {
        let p2 = Surface::ProjectivePlane;
        assert_eq!(sectional_genus(p2, &Divisor::line()).unwrap(), 0);
        assert_eq!(
            sectional_genus(Surface::Hirzebruch(0), &hz(0, 1, 1)).unwrap(),
            0
        );
        let dp1 = Surface::DelPezzo(1);
        let k = canonical_class(dp1);
        assert_eq!(sectional_genus(dp1, &-k).unwrap(), 1);

        assert_eq!(chi_line(p2, &Divisor::zero(p2)).unwrap(), 1);
        assert_eq!(chi_line(dp1, &-k).unwrap(), 2);
        // a conic-fibration fiber moves in a pencil: χ(O(C)) = 2, χ(O(-C)) = 0
        let c = Divisor::new(dp1, &[1, -1, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(chi_line(dp1, &c).unwrap(), 2);
        assert_eq!(chi_line(dp1, &-c).unwrap(), 0);
    }

    #[test]
    fn nef_and_ample_examples() {
        let s1 = Surface::Hirzebruch(1);
        assert!(is_nef(s1, &hz(1, 1, 1)));
        assert!(!is_ample(s1, &hz(1, 1, 1)));
        assert!(!is_nef(Surface::Hirzebruch(0), &hz(0, -2, -1)));
        assert!(!is_ample(s1, &hz(1, 2, 2)));
        for e in 0..5u32 {
            for t in 0..8 {
                assert_eq!(
                    is_ample(Surface::Hirzebruch(e), &hz(e, 1, t)),
                    t > i64::from(e)
                );
            }
        }
        for d in 1..=7 {
            let s = Surface::DelPezzo(d);
            assert!(is_nef(s, &-canonical_class(s)));
            assert!(is_ample(s, &-canonical_class(s)));
        }
    }

    #[test]
    fn display() {
        use alloc::string::ToString;
        assert_eq!(hz(1, 1, 2).to_string(), "H+2F");
        assert_eq!(hz(0, -2, 0).to_string(), "-2H");
        let dp3 = Surface::DelPezzo(3);
        assert_eq!(
            Divisor::new(dp3, &[3, -1, -1, -1, 0, 0, 0])
                .unwrap()
                .to_string(),
            "3H-E1-E2-E3"
        );
        assert_eq!((-2 * canonical_class(dp3)).to_string(), "-2K");
        assert_eq!(canonical_class(dp3).to_string(), "K");
        assert_eq!(Divisor::zero(dp3).to_string(), "0");
        assert_eq!(Divisor::plane(3).to_string(), "O(3)");
    }

    #[test]
    fn rank_and_domain_errors() {
        assert!(Surface::del_pezzo(8).is_err());
        assert!(Surface::del_pezzo(0).is_err());
        assert!(matches!(
            Divisor::new(Surface::Hirzebruch(0), &[1]),
            Err(Error::RankMismatch {
                expected: 2,
                found: 1
            })
        ));
    }
}
