//! Rank-2 bundle descriptors and their Chern-class calculus.
//!
//! An extension `0 → L → E → I_Z ⊗ M → 0` has `c1 = L + M` and
//! `c2 = L·M + deg Z`. Twisting by `D` sends `c1 ↦ c1 + 2D` and
//! `c2 ↦ c2 + c1·D + D²`.

use core::fmt;

use crate::error::{Error, Result};
use crate::surface::{canonical_class, is_ample, same_surface, Divisor, Surface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Splitting {
    Split,
    NonSplit,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    DirectSum(Divisor, Divisor),
    /// `0 → sub → E → I_Z ⊗ quot → 0` with `deg Z = deg_z`.
    Extension {
        sub: Divisor,
        quot: Divisor,
        deg_z: i64,
        split: Splitting,
    },
    /// A bundle known only through its pullback to the blow-up `S'` of
    /// `points` points with total exceptional divisor `F`:
    /// `0 → π*sub + F → π*E → π*quot - F → 0`, always non-split.
    /// Numerically it behaves as an extension with `deg Z = points`.
    BlowUpExtension {
        sub: Divisor,
        quot: Divisor,
        points: i64,
    },
    /// Tangent bundle of `P²`.
    Tangent,
    /// `T_{P²}(k)`.
    TangentTwist(i64),
}

/// A validated rank-2 bundle descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bundle {
    surface: Surface,
    shape: Shape,
}

impl Bundle {
    /// Validates `shape` against `surface`. An extension with `deg Z = 0`
    /// labelled split becomes a direct sum.
    pub fn new(surface: Surface, shape: Shape) -> Result<Bundle> {
        let surface = surface.validate()?;
        let on = |d: &Divisor| same_surface(&Divisor::zero(surface), d);
        let shape = match shape {
            Shape::DirectSum(l, m) => {
                on(&l)?;
                on(&m)?;
                shape
            }
            Shape::Extension {
                sub,
                quot,
                deg_z,
                split,
            } => {
                on(&sub)?;
                on(&quot)?;
                if deg_z < 0 {
                    return Err(Error::Malformed {
                        reason: "deg Z must be non-negative",
                    });
                }
                if deg_z > 0 && split == Splitting::Split {
                    return Err(Error::Malformed {
                        reason: "an extension by a nonempty I_Z cannot split",
                    });
                }
                if deg_z == 0 && split == Splitting::Split {
                    Shape::DirectSum(sub, quot)
                } else {
                    shape
                }
            }
            Shape::BlowUpExtension { sub, quot, points } => {
                on(&sub)?;
                on(&quot)?;
                if points < 1 {
                    return Err(Error::Malformed {
                        reason: "a blow-up needs at least one center",
                    });
                }
                shape
            }
            Shape::Tangent | Shape::TangentTwist(_) => {
                if surface != Surface::ProjectivePlane {
                    return Err(Error::TangentOffPlane { surface });
                }
                if shape == Shape::TangentTwist(0) {
                    Shape::Tangent
                } else {
                    shape
                }
            }
        };
        Ok(Bundle { surface, shape })
    }

    pub fn direct_sum(l: Divisor, m: Divisor) -> Result<Bundle> {
        same_surface(&l, &m)?;
        Bundle::new(l.surface(), Shape::DirectSum(l, m))
    }

    pub fn extension(sub: Divisor, quot: Divisor, deg_z: i64, split: Splitting) -> Result<Bundle> {
        same_surface(&sub, &quot)?;
        Bundle::new(
            sub.surface(),
            Shape::Extension {
                sub,
                quot,
                deg_z,
                split,
            },
        )
    }

    pub fn blow_up_extension(sub: Divisor, quot: Divisor, points: i64) -> Result<Bundle> {
        same_surface(&sub, &quot)?;
        Bundle::new(sub.surface(), Shape::BlowUpExtension { sub, quot, points })
    }

    pub fn tangent() -> Bundle {
        Bundle {
            surface: Surface::ProjectivePlane,
            shape: Shape::Tangent,
        }
    }

    pub fn tangent_twist(k: i64) -> Bundle {
        let shape = if k == 0 {
            Shape::Tangent
        } else {
            Shape::TangentTwist(k)
        };
        Bundle {
            surface: Surface::ProjectivePlane,
            shape,
        }
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// The `(sub, quot, deg Z)` data of an extension presentation whose
    /// numbers agree with this bundle. Tangent bundles use
    /// `0 → O(1+k) → T(k) → I_p(2+k) → 0`.
    pub fn presentation(&self) -> (Divisor, Divisor, i64) {
        match self.shape {
            Shape::DirectSum(l, m) => (l, m, 0),
            Shape::Extension {
                sub, quot, deg_z, ..
            } => (sub, quot, deg_z),
            Shape::BlowUpExtension { sub, quot, points } => (sub, quot, points),
            Shape::Tangent => (Divisor::plane(1), Divisor::plane(2), 1),
            Shape::TangentTwist(k) => (Divisor::plane(1 + k), Divisor::plane(2 + k), 1),
        }
    }

    /// The non-split extension with the same presentation data, for shapes
    /// that are not themselves sums or extensions.
    pub fn shadow(&self) -> Option<Bundle> {
        match self.shape {
            Shape::DirectSum(..) | Shape::Extension { .. } => None,
            _ => {
                let (sub, quot, deg_z) = self.presentation();
                Some(Bundle {
                    surface: self.surface,
                    shape: Shape::Extension {
                        sub,
                        quot,
                        deg_z,
                        split: Splitting::NonSplit,
                    },
                })
            }
        }
    }

    /// Canonical representative: direct-sum summands sorted, and on `Σ_0`
    /// the two rulings swapped so that `c1 = aH + bF` has `a ≤ b` (ties
    /// broken by the larger descriptor, which keeps `H` coefficients leading).
    pub fn canonical(&self) -> Bundle {
        let sorted = self.sorted();
        if self.surface != Surface::Hirzebruch(0) {
            return sorted;
        }
        let swapped = self.map_classes(swap_rulings).sorted();
        let c1 = chern(self).c1;
        let (a, b) = (c1.coeffs()[0], c1.coeffs()[1]);
        match a.cmp(&b) {
            core::cmp::Ordering::Less => sorted,
            core::cmp::Ordering::Greater => swapped,
            core::cmp::Ordering::Equal => sorted.max(swapped),
        }
    }

    fn sorted(&self) -> Bundle {
        match self.shape {
            Shape::DirectSum(l, m) if m < l => Bundle {
                surface: self.surface,
                shape: Shape::DirectSum(m, l),
            },
            _ => *self,
        }
    }

    fn map_classes(&self, f: impl Fn(Divisor) -> Divisor) -> Bundle {
        let shape = match self.shape {
            Shape::DirectSum(l, m) => Shape::DirectSum(f(l), f(m)),
            Shape::Extension {
                sub,
                quot,
                deg_z,
                split,
            } => Shape::Extension {
                sub: f(sub),
                quot: f(quot),
                deg_z,
                split,
            },
            Shape::BlowUpExtension { sub, quot, points } => Shape::BlowUpExtension {
                sub: f(sub),
                quot: f(quot),
                points,
            },
            other => other,
        };
        Bundle {
            surface: self.surface,
            shape,
        }
    }
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Splitting::Split => "split",
            Splitting::NonSplit => "nonsplit",
            Splitting::Unknown => "unknown",
        })
    }
}

/// Bracket notation for sums (`[H+F]⊕[2H+2F]`, `O(1)⊕O(3)` on `P²`) and the
/// functional text syntax for the other shapes.
impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            Shape::DirectSum(l, m) if self.surface == Surface::ProjectivePlane => {
                write!(f, "{l}⊕{m}")
            }
            Shape::DirectSum(l, m) => write!(f, "[{l}]⊕[{m}]"),
            Shape::Extension {
                sub,
                quot,
                deg_z,
                split,
            } => write!(f, "ext({sub}, {quot}; degZ={deg_z}; {split})"),
            Shape::BlowUpExtension { sub, quot, points } => {
                write!(f, "blowup({sub}, {quot}; points={points})")
            }
            Shape::Tangent => f.write_str("tangent"),
            Shape::TangentTwist(k) => write!(f, "tangent({k})"),
        }
    }
}

fn swap_rulings(d: Divisor) -> Divisor {
    let c = d.coeffs();
    Divisor::from_pair(d.surface(), c[1], c[0])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChernData {
    c1: Divisor,
    c2: i64,
    c1_sq: i64,
    delta: i64,
}

impl ChernData {
    pub fn new(c1: Divisor, c2: i64) -> ChernData {
        let c1_sq = c1.square();
        ChernData {
            c1,
            c2,
            c1_sq,
            delta: (c2 + 1) * (c2 + 1) - c1_sq,
        }
    }

    pub fn c1(&self) -> Divisor {
        self.c1
    }

    pub fn c2(&self) -> i64 {
        self.c2
    }

    pub fn c1_sq(&self) -> i64 {
        self.c1_sq
    }

    /// `(c2 + 1)² - c1²`, non-negative for ample bundles.
    pub fn delta(&self) -> i64 {
        self.delta
    }
}

pub fn chern(b: &Bundle) -> ChernData {
    match b.shape {
        Shape::Tangent => ChernData::new(Divisor::plane(3), 3),
        Shape::TangentTwist(k) => {
            twist_chern(&ChernData::new(Divisor::plane(3), 3), &Divisor::plane(k))
                .expect("both classes on P2")
        }
        _ => {
            let (sub, quot, deg_z) = b.presentation();
            ChernData::new(sub + quot, sub.dot(&quot) + deg_z)
        }
    }
}

pub fn twist(b: &Bundle, d: &Divisor) -> Result<Bundle> {
    same_surface(&Divisor::zero(b.surface), d)?;
    Ok(match b.shape {
        Shape::Tangent | Shape::TangentTwist(_) => {
            let k = match b.shape {
                Shape::TangentTwist(k) => k,
                _ => 0,
            };
            Bundle::tangent_twist(k + d.coeffs()[0])
        }
        _ => b.map_classes(|c| c + *d),
    })
}

pub fn twist_chern(c: &ChernData, d: &Divisor) -> Result<ChernData> {
    same_surface(&c.c1, d)?;
    Ok(ChernData::new(
        c.c1 + 2 * *d,
        c.c2 + c.c1.dot(d) + d.square(),
    ))
}

/// Riemann-Roch for a rank-2 bundle on a rational surface:
/// `χ(E) = 2 + (c1² - 2c2 - c1·K)/2`.
pub fn rank2_chi(surface: Surface, c: &ChernData) -> Result<i64> {
    same_surface(&Divisor::zero(surface), &c.c1)?;
    let k = canonical_class(surface);
    let value = c.c1_sq - 2 * c.c2 - c.c1.dot(&k);
    if value % 2 != 0 {
        return Err(Error::ParityViolation { value });
    }
    Ok(2 + value / 2)
}

/// `0 < c2 < c1²`.
pub fn kleiman_ok(c: &ChernData) -> bool {
    0 < c.c2 && c.c2 < c.c1_sq
}

/// `c1² ≤ (c2 + 1)²`.
pub fn ballico_ok(c: &ChernData) -> bool {
    c.delta >= 0
}

/// `c1² > 4 c2`: some sub-line-bundle destabilizes.
pub fn bogomolov_unstable(c: &ChernData) -> bool {
    c.c1_sq > 4 * c.c2
}

/// Per-condition outcome of the numerical ampleness tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmpleReport {
    /// `c1·C ≥ 2` on every cone-generator curve.
    pub curve_degrees: bool,
    /// Both summands ample; only for direct sums, where it decides ampleness.
    pub summands_ample: Option<bool>,
    /// For extensions: `quot` ample and `quot² > deg Z` when `Z ≠ ∅`.
    pub quotient: Option<bool>,
    pub kleiman: bool,
    pub ballico: bool,
}

impl AmpleReport {
    pub fn passes(&self) -> bool {
        self.curve_degrees
            && self.summands_ample != Some(false)
            && self.quotient != Some(false)
            && self.kleiman
            && self.ballico
    }

    /// True when passing the report proves ampleness.
    pub fn is_exact(&self) -> bool {
        self.summands_ample.is_some()
    }
}

pub fn numeric_ample_necessary(b: &Bundle) -> AmpleReport {
    let s = b.surface;
    let c = chern(b);
    let curve_degrees = s.curve_generators().iter().all(|g| g.dot(&c.c1) >= 2);
    let (summands_ample, quotient) = match b.shape {
        Shape::DirectSum(l, m) => (Some(is_ample(s, &l) && is_ample(s, &m)), None),
        _ => {
            let (_, quot, deg_z) = b.presentation();
            (None, Some(is_ample(s, &quot) && quot.square() > deg_z))
        }
    };
    AmpleReport {
        curve_degrees,
        summands_ample,
        quotient,
        kleiman: kleiman_ok(&c),
        ballico: ballico_ok(&c),
    }
}

/// How the existence (as an ample bundle) of a listed entry is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Existence {
    /// Ampleness follows from an exact numerical criterion (direct sums).
    ExactCriterion,
    /// Established by a direct argument (e.g. Nakai on the projectivization).
    Proved,
    /// Established in the cited literature.
    Cited(&'static str),
    /// Only the necessary numerical conditions are known to hold.
    NecessaryOnly,
    /// Existence is an open problem; no concrete bundle is claimed.
    Open(&'static str),
}
