//! Numerical walls in tilt stability.
//!
//! For a class `v` and a potential destabilizer `w = (r, c, d)`, the locus
//! `nu(v) = nu(w)` is `x (alpha^2 + beta^2) + y beta + z = 0` with
//! `x = v0 c - v1 r`, `y = 2 (v2 r - v0 d)`, `z = 2 (v1 d - v2 c)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chern::TruncatedChern;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::slopes::TiltPoint;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WallKind {
    Semicircle {
        #[serde(with = "crate::rational::serde_str")]
        center: Rational,
        #[serde(with = "crate::rational::serde_str")]
        radius_sq: Rational,
    },
    Vertical {
        #[serde(with = "crate::rational::serde_str")]
        beta0: Rational,
    },
    /// Either `x = y = 0`, or a circle that misses the upper half-plane.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumericalWall {
    #[serde(with = "crate::rational::serde_str")]
    pub x: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub y: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub z: Rational,
    #[serde(flatten)]
    pub kind: WallKind,
}

pub fn numerical_wall(v: &TruncatedChern, w: &TruncatedChern) -> NumericalWall {
    let [v0, v1, v2] = &v.ch;
    let [r, c, d] = &w.ch;
    let x = v0 * c - v1 * r;
    let y = int(2) * (v2 * r - v0 * d);
    let z = int(2) * (v1 * d - v2 * c);
    NumericalWall::from_coefficients(x, y, z)
}

impl NumericalWall {
    pub fn from_coefficients(x: Rational, y: Rational, z: Rational) -> Self {
        let kind = if !x.is_zero() {
            let center = -&y / (int(2) * &x);
            let radius_sq = &center * &center - &z / &x;
            if radius_sq.is_positive() {
                WallKind::Semicircle { center, radius_sq }
            } else {
                WallKind::Degenerate
            }
        } else if !y.is_zero() {
            WallKind::Vertical { beta0: -&z / &y }
        } else {
            WallKind::Degenerate
        };
        Self { x, y, z, kind }
    }

    pub fn is_semicircle(&self) -> bool {
        matches!(self.kind, WallKind::Semicircle { .. })
    }

    pub fn center(&self) -> Option<&Rational> {
        match &self.kind {
            WallKind::Semicircle { center, .. } => Some(center),
            _ => None,
        }
    }

    pub fn radius_sq(&self) -> Option<&Rational> {
        match &self.kind {
            WallKind::Semicircle { radius_sq, .. } => Some(radius_sq),
            _ => None,
        }
    }

    /// `x (alpha^2 + beta^2) + y beta + z`.
    pub fn evaluate(&self, alpha_sq: &Rational, beta: &Rational) -> Rational {
        &self.x * (alpha_sq + beta * beta) + &self.y * beta + &self.z
    }

    /// `(x, y, z)` scaled to coprime integers with the first nonzero entry positive.
    pub fn primitive(&self) -> [BigInt; 3] {
        primitive_vector(&[self.x.clone(), self.y.clone(), self.z.clone()])
    }

    /// Both endpoints `center -+ radius` of a semicircle, in floating point.
    pub fn intercepts_f64(&self) -> Option<(f64, f64)> {
        match &self.kind {
            WallKind::Semicircle { center, radius_sq } => {
                let c = crate::rational::to_f64(center);
                let r = crate::rational::to_f64(radius_sq).sqrt();
                Some((c - r, c + r))
            }
            _ => None,
        }
    }

    /// Same locus, regardless of scaling of the coefficients.
    pub fn same_locus(&self, other: &Self) -> bool {
        self.primitive() == other.primitive()
    }
}

fn primitive_vector(xs: &[Rational]) -> [BigInt; 3] {
    let lcm = xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = xs.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut ints {
            *x = -&*x;
        }
    }
    [ints[0].clone(), ints[1].clone(), ints[2].clone()]
}

/// Outermost first: `radius_sq` descending, then the primitive coefficients.
/// Non-semicircular walls sort after every semicircle.
pub fn cmp_outermost_first(a: &NumericalWall, b: &NumericalWall) -> Ordering {
    match (a.radius_sq(), b.radius_sq()) {
        (Some(ra), Some(rb)) => rb.cmp(ra),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
    .then_with(|| a.primitive().cmp(&b.primitive()))
}

/// The curve `nu(v) = 0`: `v0 alpha^2 - v0 beta^2 + 2 v1 beta - 2 v2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperbola {
    /// Coefficient of `alpha^2`.
    #[serde(with = "crate::rational::serde_str")]
    pub a: Rational,
    /// Coefficient of `beta^2`.
    #[serde(with = "crate::rational::serde_str")]
    pub b: Rational,
    /// Coefficient of `beta`.
    #[serde(with = "crate::rational::serde_str")]
    pub c: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub d: Rational,
}

pub fn hyperbola(v: &TruncatedChern) -> Hyperbola {
    let [v0, v1, v2] = &v.ch;
    Hyperbola {
        a: v0.clone(),
        b: -v0,
        c: int(2) * v1,
        d: int(-2) * v2,
    }
}

impl Hyperbola {
    pub fn evaluate(&self, alpha_sq: &Rational, beta: &Rational) -> Rational {
        &self.a * alpha_sq + &self.b * beta * beta + &self.c * beta + &self.d
    }

    /// A straight line when the class has rank zero.
    pub fn is_line(&self) -> bool {
        self.a.is_zero()
    }

    /// `beta` on the branch left of `v1/v0` at height `alpha`, in floating point.
    pub fn left_branch_f64(&self, alpha_sq: f64) -> Option<f64> {
        let a = crate::rational::to_f64(&self.a);
        let c = crate::rational::to_f64(&self.c);
        let d = crate::rational::to_f64(&self.d);
        if a == 0.0 {
            return (c != 0.0).then(|| -d / c);
        }
        // -a beta^2 + c beta + (a alpha^2 + d) = 0, smaller root for a > 0.
        let disc = c * c + 4.0 * a * (a * alpha_sq + d);
        (disc >= 0.0).then(|| (c - disc.sqrt().copysign(a)) / (2.0 * a))
    }
}

/// The numerical wall of `v` through the axis point `(beta, 0)`, if any.
///
/// Wall coefficients of `v` satisfy `2 v2 x + v1 y + v0 z = 0`; normalizing
/// `x = 1` and asking for `beta^2 + y beta + z = 0` fixes `y` and `z`.
pub fn wall_through(v: &TruncatedChern, beta: &Rational) -> Option<NumericalWall> {
    let [v0, v1, v2] = &v.ch;
    let det = beta * v0 - v1;
    if det.is_zero() {
        return None;
    }
    let y = (int(2) * v2 - beta * beta * v0) / &det;
    let z = (v1 * beta * beta - int(2) * v2 * beta) / &det;
    Some(NumericalWall::from_coefficients(int(1), y, z))
}

pub fn vertical_wall(v: &TruncatedChern) -> Option<Rational> {
    let [v0, v1, _] = &v.ch;
    (!v0.is_zero()).then(|| v1 / v0)
}

pub fn wall_top(w: &NumericalWall) -> Result<TiltPoint> {
    match &w.kind {
        WallKind::Semicircle { center, radius_sq } => TiltPoint::new(radius_sq.clone(), center.clone()),
        _ => Err(Error::NotSemicircle),
    }
}

/// `det(v, w1, w2) = 0`.
pub fn walls_identical(v: &TruncatedChern, w1: &TruncatedChern, w2: &TruncatedChern) -> bool {
    let [a0, a1, a2] = &v.ch;
    let [b0, b1, b2] = &w1.ch;
    let [c0, c1, c2] = &w2.ch;
    let det = a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
    det.is_zero()
}

/// How two semicircles centred on the `beta`-axis sit relative to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircleRelation {
    Identical,
    Nested,
    Separated,
    /// Touching or crossing.
    Meeting,
}

/// Exact classification using only `center` and `radius_sq`.
///
/// With `D = (c1 - c2)^2`, the circles are disjoint iff
/// `(R1 + R2 - D)^2 > 4 R1 R2`; the sign of `R1 + R2 - D` then tells nested
/// from separated.
pub fn circle_relation(w1: &NumericalWall, w2: &NumericalWall) -> Result<CircleRelation> {
    let (WallKind::Semicircle { center: c1, radius_sq: r1 }, WallKind::Semicircle { center: c2, radius_sq: r2 }) =
        (&w1.kind, &w2.kind)
    else {
        return Err(Error::NotSemicircle);
    };
    if c1 == c2 && r1 == r2 {
        return Ok(CircleRelation::Identical);
    }
    let dist = (c1 - c2) * (c1 - c2);
    let s = r1 + r2 - &dist;
    let gap = &s * &s - int(4) * r1 * r2;
    Ok(if !gap.is_positive() {
        CircleRelation::Meeting
    } else if s.is_positive() {
        CircleRelation::Nested
    } else {
        CircleRelation::Separated
    })
}

pub fn semicircles_disjoint(w1: &NumericalWall, w2: &NumericalWall) -> Result<bool> {
    Ok(matches!(
        circle_relation(w1, w2)?,
        CircleRelation::Nested | CircleRelation::Separated
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn t(a: i64, b: Rational, c: Rational) -> TruncatedChern {
        TruncatedChern::new(int(a), b, c)
    }

    fn v() -> TruncatedChern {
        t(1, int(0), int(-4))
    }

    fn semicircle(center: Rational, radius_sq: Rational) -> WallKind {
        WallKind::Semicircle { center, radius_sq }
    }

    #[test]
    fn elliptic_quartic_walls() {
        let w = numerical_wall(&v(), &t(2, int(-4), int(4)));
        assert_eq!(w.kind, semicircle(int(-3), int(1)));
        let w = numerical_wall(&v(), &t(1, int(-1), q(-1, 2)));
        assert_eq!(w.kind, semicircle(q(-7, 2), q(17, 4)));
        let w = numerical_wall(&v(), &t(1, int(-1), q(1, 2)));
        assert_eq!(w.kind, semicircle(q(-9, 2), q(49, 4)));
        assert_eq!(numerical_wall(&v(), &v()).kind, WallKind::Degenerate);
    }

    #[test]
    fn wall_invariants_hold() {
        let w = numerical_wall(&v(), &t(1, int(-1), q(1, 2)));
        let c = w.center().unwrap().clone();
        assert_eq!(c, -&w.y / (int(2) * &w.x));
        assert_eq!(w.radius_sq().unwrap(), &(&c * &c - &w.z / &w.x));
        let top = wall_top(&w).unwrap();
        assert_eq!(w.evaluate(top.alpha_sq(), top.beta()), int(0));
    }

    #[test]
    fn vertical_and_degenerate() {
        // O against I_C: same mu, so x = 0 and the wall is beta = v1/v0.
        let w = numerical_wall(&v(), &t(1, int(0), int(0)));
        assert_eq!(w.kind, WallKind::Vertical { beta0: int(0) });
        assert!(wall_top(&w).is_err());
        assert!(wall_top(&numerical_wall(&v(), &v())).is_err());
        let w = NumericalWall::from_coefficients(int(0), int(2), int(-6));
        assert_eq!(w.kind, WallKind::Vertical { beta0: int(3) });
        let w = NumericalWall::from_coefficients(int(1), int(0), int(1));
        assert_eq!(w.kind, WallKind::Degenerate);
    }

    #[test]
    fn hyperbola_through_wall_tops() {
        let h = hyperbola(&v());
        assert_eq!(h, Hyperbola { a: int(1), b: int(-1), c: int(0), d: int(8) });
        for (c, r) in [(int(-3), int(1)), (q(-7, 2), q(17, 4)), (q(-9, 2), q(49, 4))] {
            assert_eq!(h.evaluate(&r, &c), int(0));
        }
        let line = hyperbola(&t(0, int(1), q(-3, 2)));
        assert!(line.is_line());
        assert_eq!(line.evaluate(&int(5), &q(-3, 2)), int(0));
        let b = h.left_branch_f64(1.0).unwrap();
        assert!((b + 3.0).abs() < 1e-12);
    }

    #[test]
    fn vertical_walls() {
        assert_eq!(vertical_wall(&v()), Some(int(0)));
        assert_eq!(vertical_wall(&t(0, int(1), q(-3, 2))), None);
        assert_eq!(vertical_wall(&t(2, int(-4), int(4))), Some(int(-2)));
    }

    #[test]
    fn identical_walls() {
        assert!(walls_identical(&v(), &t(2, int(-4), int(4)), &t(1, int(-2), int(2))));
        let w = t(1, int(-1), q(-1, 2));
        let sum = TruncatedChern::new(&v().ch[0] + &w.ch[0], &v().ch[1] + &w.ch[1], &v().ch[2] + &w.ch[2]);
        assert!(walls_identical(&v(), &w, &sum));
        assert!(!walls_identical(&v(), &t(1, int(-1), q(-1, 2)), &t(1, int(-1), q(1, 2))));
    }

    #[test]
    fn relations() {
        let w1 = numerical_wall(&v(), &t(2, int(-4), int(4)));
        let w2 = numerical_wall(&v(), &t(1, int(-1), q(-1, 2)));
        let w3 = numerical_wall(&v(), &t(1, int(-1), q(1, 2)));
        assert_eq!(circle_relation(&w1, &w2).unwrap(), CircleRelation::Nested);
        assert_eq!(circle_relation(&w3, &w2).unwrap(), CircleRelation::Nested);
        assert_eq!(circle_relation(&w1, &w1).unwrap(), CircleRelation::Identical);
        let far = NumericalWall::from_coefficients(int(1), int(-20), int(99));
        assert_eq!(circle_relation(&w1, &far).unwrap(), CircleRelation::Separated);
        let touching = NumericalWall::from_coefficients(int(1), int(8), int(15)); // center -4, radius 1
        assert_eq!(circle_relation(&w1, &touching).unwrap(), CircleRelation::Meeting);
        assert!(semicircles_disjoint(&w1, &w3).unwrap());
    }

    #[test]
    fn canonical_order() {
        let mut walls = vec![
            numerical_wall(&v(), &t(2, int(-4), int(4))),
            numerical_wall(&v(), &t(1, int(-1), q(1, 2))),
            numerical_wall(&v(), &t(1, int(-1), q(-1, 2))),
        ];
        walls.sort_by(cmp_outermost_first);
        let radii: Vec<_> = walls.iter().map(|w| w.radius_sq().unwrap().clone()).collect();
        assert_eq!(radii, vec![q(49, 4), q(17, 4), int(1)]);
        assert_eq!(walls[2].primitive(), [1, 6, 8].map(BigInt::from));
    }

    #[test]
    fn wall_through_axis_point() {
        let v = TruncatedChern::new(int(1), int(0), int(-3));
        let w = wall_through(&v, &int(-3)).unwrap();
        // The BMT boundary of the twisted cubic class.
        assert_eq!(w.center(), Some(&q(-5, 2)));
        assert_eq!(w.radius_sq(), Some(&q(1, 4)));
        assert_eq!(w.evaluate(&int(0), &int(-2)), int(0));
        assert!(wall_through(&v, &int(0)).is_none());
        let e = TruncatedChern::new(int(1), int(0), int(-4));
        let w = wall_through(&e, &int(-4)).unwrap();
        assert_eq!((w.center().unwrap().clone(), w.radius_sq().unwrap().clone()), (int(-3), int(1)));
    }
}
