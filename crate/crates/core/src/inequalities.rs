//! Quadratic inequalities satisfied by semistable classes.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chern::ChernCharacter;
use crate::rational::{int, Rational};
use crate::slopes::TiltPoint;

/// `ch1^2 - 2 ch0 ch2`; does not depend on the twist.
pub fn q_tilt(v: &ChernCharacter) -> Rational {
    let [c0, c1, c2, _] = &v.ch;
    c1 * c1 - int(2) * c0 * c2
}

/// `alpha^2 Q + 4 (ch2^beta)^2 - 6 ch1^beta ch3^beta`.
pub fn bmt_value(v: &ChernCharacter, p: &TiltPoint) -> Rational {
    let t = v.twist(p.beta());
    let [_, c1, c2, c3] = &t.ch;
    p.alpha_sq() * q_tilt(v) + int(4) * c2 * c2 - int(6) * c1 * c3
}

/// The BMT form rewritten as `q (alpha^2 + beta^2) + x beta + y`.
///
/// The quartic and cubic terms in `beta` cancel, which is why the region
/// is bounded by a circle centred on the `beta`-axis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmtRegion {
    #[serde(with = "crate::rational::serde_str")]
    pub q: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub x: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub y: Rational,
}

/// Where the form is nonnegative in the `(beta, alpha)` plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegionShape {
    /// `q > 0`: outside an open disc.
    ComplementOfDisc { center: Rational, radius_sq: Rational },
    /// `q < 0`: a closed disc.
    ClosedDisc { center: Rational, radius_sq: Rational },
    /// `q = 0, x > 0`: `beta >= boundary`.
    RightOf { boundary: Rational },
    /// `q = 0, x < 0`: `beta <= boundary`.
    LeftOf { boundary: Rational },
    Everything,
    Empty,
}

pub fn bmt_region(v: &ChernCharacter) -> BmtRegion {
    let [c0, c1, c2, c3] = &v.ch;
    BmtRegion {
        q: q_tilt(v),
        x: int(6) * c0 * c3 - int(2) * c1 * c2,
        y: int(4) * c2 * c2 - int(6) * c1 * c3,
    }
}

impl BmtRegion {
    pub fn evaluate(&self, alpha_sq: &Rational, beta: &Rational) -> Rational {
        &self.q * (alpha_sq + beta * beta) + &self.x * beta + &self.y
    }

    /// Classifies the nonnegativity set in the open upper half-plane.
    pub fn shape(&self) -> RegionShape {
        if self.q.is_zero() {
            return if self.x.is_zero() {
                if self.y.is_negative() {
                    RegionShape::Empty
                } else {
                    RegionShape::Everything
                }
            } else {
                let boundary = -&self.y / &self.x;
                if self.x.is_positive() {
                    RegionShape::RightOf { boundary }
                } else {
                    RegionShape::LeftOf { boundary }
                }
            };
        }
        let center = -&self.x / (int(2) * &self.q);
        let radius_sq = &center * &center - &self.y / &self.q;
        if self.q.is_positive() {
            if radius_sq.is_positive() {
                RegionShape::ComplementOfDisc { center, radius_sq }
            } else {
                RegionShape::Everything
            }
        } else if radius_sq.is_positive() {
            RegionShape::ClosedDisc { center, radius_sq }
        } else {
            // At best a single point on the beta-axis, which has alpha = 0.
            RegionShape::Empty
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::{line_bundle, plane_sheaf, point};
    use crate::rational::q;

    fn v() -> ChernCharacter {
        ChernCharacter::from_ints(1, 0, -4, 8)
    }

    fn pt(a2: Rational, b: Rational) -> TiltPoint {
        TiltPoint::new(a2, b).unwrap()
    }

    #[test]
    fn q_tilt_values() {
        assert_eq!(q_tilt(&v()), int(8));
        for k in -5..6 {
            assert_eq!(q_tilt(&line_bundle(k)), int(0));
        }
        for b in [q(-7, 3), int(0), q(5, 2)] {
            assert_eq!(q_tilt(&v().twist(&b)), int(8));
        }
    }

    #[test]
    fn line_bundles_saturate() {
        for b in [q(-7, 3), int(-1), q(5, 2)] {
            for a2 in [q(1, 4), int(3)] {
                assert_eq!(bmt_value(&line_bundle(0), &pt(a2, b.clone())), int(0));
            }
        }
    }

    #[test]
    fn region_matches_value() {
        let classes = [v(), plane_sheaf(-3), line_bundle(2), point(), ChernCharacter::from_ints(-2, 3, 1, -5)];
        for c in classes {
            let region = bmt_region(&c);
            for i in 0..20i64 {
                let a2 = q(i * i + 1, 7);
                let b = q(3 * i - 29, 5);
                assert_eq!(region.evaluate(&a2, &b), bmt_value(&c, &pt(a2.clone(), b.clone())));
            }
        }
    }

    #[test]
    fn elliptic_quartic_region_is_smallest_wall() {
        // 8 (alpha^2 + (beta + 3)^2 - 1)
        let region = bmt_region(&v());
        assert_eq!(region, BmtRegion { q: int(8), x: int(48), y: int(64) });
        assert_eq!(
            region.shape(),
            RegionShape::ComplementOfDisc { center: int(-3), radius_sq: int(1) }
        );
    }

    #[test]
    fn elliptic_quartic_nonnegative_outside_largest_wall() {
        // Grid over the chamber beyond alpha^2 + (beta + 9/2)^2 = 49/4, beta < 0.
        for i in 1..40i64 {
            for j in -60..0i64 {
                let a2 = q(i * i, 16);
                let b = q(j, 4);
                let d = &a2 + (&b + q(9, 2)) * (&b + q(9, 2));
                if d > q(49, 4) {
                    assert!(bmt_value(&v(), &pt(a2, b)) >= int(0));
                }
            }
        }
    }

    #[test]
    fn degenerate_shapes() {
        // Rank 0, ch1 = 0: q = 0 and x = 6 ch0 ch3 - 2 ch1 ch2 = 0.
        let c = ChernCharacter::from_ints(0, 0, 1, 3);
        assert_eq!(bmt_region(&c).shape(), RegionShape::Everything);
        assert_eq!(bmt_region(&point()).shape(), RegionShape::Everything);
        let r = BmtRegion { q: int(0), x: int(2), y: int(-6) };
        assert_eq!(r.shape(), RegionShape::RightOf { boundary: int(3) });
        let r = BmtRegion { q: int(0), x: int(-2), y: int(-6) };
        assert_eq!(r.shape(), RegionShape::LeftOf { boundary: int(-3) });
        let r = BmtRegion { q: int(0), x: int(0), y: int(-1) };
        assert_eq!(r.shape(), RegionShape::Empty);
        let r = BmtRegion { q: int(-1), x: int(0), y: int(4) };
        assert_eq!(r.shape(), RegionShape::ClosedDisc { center: int(0), radius_sq: int(4) });
        let r = BmtRegion { q: int(1), x: int(0), y: int(4) };
        assert_eq!(r.shape(), RegionShape::Everything);
    }
}
