//! Destabilizing subobjects: enumeration on integer rays, the walls they
//! span, third Chern characters and geometric names.
//!
//! Fix a ray `beta = beta0` and write `v^{beta0} = (R, C, D)` with `C > 0`.
//! A destabilizer is `(r, c, d)` with `0 < c < C` whose tilt slope agrees
//! with that of `v` at some `alpha > 0` on the ray. Splitting
//! `(r, c, d) = k (R, C, D) + (r', 0, d')` with `k = c/C`, slope equality
//! reads `alpha^2 = 2 d' / r'`, and adding `(1 - k) Q(sub) + k Q(quotient) >= 0`
//! gives
//!
//! ```text
//! 0 < r' d' <= k (1 - k) Q(v) / 2.
//! ```
//!
//! Since `d'` lives in a translate of `Z` that avoids zero (or hits it, in
//! which case the next value has size one), this bounds `|r'|`, and then
//! `|d'|`, so every ray has finitely many candidates and the search below
//! is exhaustive.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::chern::{line_bundle, line_ideal, points_ideal, points_in_plane_ideal, ChernCharacter, TruncatedChern};
use crate::error::{Error, Result};
use crate::inequalities::{bmt_region, q_tilt, RegionShape};
use crate::rational::{ceil, floor, format_rational, int, is_integer, q, rational_sqrt, to_f64, Rational};
use crate::walls::{cmp_outermost_first, numerical_wall, wall_through, walls_identical, NumericalWall, WallKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DestabilizerCandidate {
    /// `(r, c, d)` of the subobject in `beta0`-twisted coordinates.
    pub sub: TruncatedChern,
    pub quotient: TruncatedChern,
    pub beta0: i64,
    /// The ray the split was found on: `beta0`, or the top of a wall that
    /// meets no integer ray.
    #[serde(with = "crate::rational::serde_str")]
    pub ray: Rational,
    /// Where the two slopes agree on `ray`.
    #[serde(with = "crate::rational::serde_str")]
    pub alpha_sq: Rational,
    /// The split is of `-v` (the shift of an object of class `v`), which
    /// happens on rays where `ch1^{beta0}(v) < 0`.
    pub flipped: bool,
}

impl DestabilizerCandidate {
    /// The subobject's truncated class in untwisted coordinates.
    pub fn sub_untwisted(&self) -> TruncatedChern {
        self.sub.twist(&int(-self.beta0))
    }

    pub fn quotient_untwisted(&self) -> TruncatedChern {
        self.quotient.twist(&int(-self.beta0))
    }

    pub fn wall(&self, v: &ChernCharacter) -> NumericalWall {
        numerical_wall(&v.truncate(), &self.sub_untwisted())
    }
}

fn truncated_q(t: &TruncatedChern) -> Rational {
    let [r, c, d] = &t.ch;
    c * c - int(2) * r * d
}

/// `ch2 - ch1^2/2` is an integer for every class of a coherent sheaf.
fn in_lattice(t: &TruncatedChern) -> bool {
    let [r, c, d] = &t.ch;
    is_integer(r) && is_integer(c) && is_integer(&(d - c * c / int(2)))
}

/// Smallest nonzero `|t + n|` over integers `n`.
fn min_nonzero_offset(t: &Rational) -> Rational {
    let f = t - Rational::from_integer(floor(t));
    if f.is_zero() {
        int(1)
    } else {
        let g = int(1) - &f;
        if f < g {
            f
        } else {
            g
        }
    }
}

/// Result of scanning one ray, possibly with a rank cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayScan {
    pub candidates: Vec<DestabilizerCandidate>,
    /// `false` when the rank cap cut the provable search range.
    pub complete: bool,
}

/// Every destabilizer candidate for `v` on the ray `beta = beta0`.
pub fn candidates_on_ray(v: &ChernCharacter, beta0: i64) -> Result<Vec<DestabilizerCandidate>> {
    Ok(scan_ray(v, beta0, None)?.candidates)
}

/// As [`candidates_on_ray`], optionally restricting to `|r| <= r_max`.
pub fn scan_ray(v: &ChernCharacter, beta0: i64, r_max: Option<u64>) -> Result<RayScan> {
    let total = v.truncate().twist(&int(beta0));
    let [big_r, big_c, big_d] = total.ch.clone();
    if !big_c.is_positive() {
        return Err(Error::NonPositiveDegree {
            beta: beta0.to_string(),
            degree: format_rational(&big_c),
        });
    }
    let qv = q_tilt(v);
    let mut out = Vec::new();
    let mut complete = true;
    if !qv.is_positive() {
        return Ok(RayScan { candidates: out, complete });
    }
    let cap = r_max.map(BigInt::from);
    let c_hi = ceil(&big_c) - 1;
    let mut c = BigInt::one();
    while c <= c_hi {
        let cq = Rational::from_integer(c.clone());
        let k = &cq / &big_c;
        let p = &k * (int(1) - &k) * &qv / int(2);
        let r_center = &cq * &big_r / &big_c;
        let d_center = &cq * &big_d / &big_c;
        let half_c_sq = &cq * &cq / int(2);
        let delta = min_nonzero_offset(&(&half_c_sq - &d_center));
        let r_bound = &p / &delta;
        let mut r_lo = ceil(&(&r_center - &r_bound));
        let mut r_hi = floor(&(&r_center + &r_bound));
        if let Some(cap) = &cap {
            if r_lo < -cap {
                r_lo = -cap.clone();
                complete = false;
            }
            if r_hi > *cap {
                r_hi = cap.clone();
                complete = false;
            }
        }
        let mut r = r_lo;
        while r <= r_hi {
            let rq = Rational::from_integer(r.clone());
            let r_prime = &rq - &r_center;
            if !r_prime.is_zero() {
                let d_bound = &p / r_prime.abs();
                // d = c^2/2 + n with d' = d - d_center of the sign of r'.
                let (n_lo, n_hi) = if r_prime.is_positive() {
                    (
                        floor(&(&d_center - &half_c_sq)) + 1,
                        floor(&(&d_center + &d_bound - &half_c_sq)),
                    )
                } else {
                    (
                        ceil(&(&d_center - &d_bound - &half_c_sq)),
                        ceil(&(&d_center - &half_c_sq)) - 1,
                    )
                };
                let mut n = n_lo;
                while n <= n_hi {
                    let d = &half_c_sq + Rational::from_integer(n.clone());
                    let sub = TruncatedChern::new(rq.clone(), cq.clone(), d);
                    if let Some(cand) = admit(&total, sub, beta0) {
                        out.push(cand);
                    }
                    n += 1;
                }
            }
            r += 1;
        }
        c += 1;
    }
    out.sort_by(|a, b| a.sub.cmp(&b.sub));
    Ok(RayScan { candidates: out, complete })
}

/// The filters shared by the bounded search and brute force checks.
///
/// `total` is `v^{beta0}` truncated; `sub` any class on the ray.
pub fn admit(total: &TruncatedChern, sub: TruncatedChern, beta0: i64) -> Option<DestabilizerCandidate> {
    let ray = int(beta0);
    let (quotient, alpha_sq) = admit_at(total, &sub, &ray)?;
    Some(DestabilizerCandidate {
        sub,
        quotient,
        beta0,
        ray,
        alpha_sq,
        flipped: false,
    })
}

/// As [`admit`] on the ray `beta = ray`, with `total` and `sub` twisted by
/// `ray`; returns the quotient and `alpha^2`.
fn admit_at(total: &TruncatedChern, sub: &TruncatedChern, ray: &Rational) -> Option<(TruncatedChern, Rational)> {
    let quotient = total - sub;
    let [big_r, big_c, big_d] = &total.ch;
    let [r, c, d] = &sub.ch;
    if !c.is_positive() || c >= big_c {
        return None;
    }
    let back = -ray;
    if !in_lattice(&sub.twist(&back)) || !in_lattice(&quotient.twist(&back)) {
        return None;
    }
    let r_prime = r - c * big_r / big_c;
    let d_prime = d - c * big_d / big_c;
    if r_prime.is_zero() {
        return None;
    }
    let alpha_sq = int(2) * &d_prime / &r_prime;
    if !alpha_sq.is_positive() {
        return None;
    }
    if truncated_q(sub).is_negative() || truncated_q(&quotient).is_negative() {
        return None;
    }
    // Each split appears twice (sub and quotient swapped); keep one.
    let keep = match r.cmp(&quotient.ch[0]) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => (&sub.ch[1], &sub.ch[2]) <= (&quotient.ch[1], &quotient.ch[2]),
    };
    keep.then_some((quotient, alpha_sq))
}

/// Every destabilizer candidate on a ray `beta = ray` with `ray` rational,
/// reported in the coordinates of the integer frame `floor(ray)`.
///
/// The same bound as on integer rays applies, with `d'` now confined to
/// `(1/L) Z` for `L` the common denominator of the twisted lattice and of
/// `c D / C`.
pub fn scan_rational_ray(v: &ChernCharacter, ray: &Rational, r_max: Option<u64>) -> Result<RayScan> {
    let total = v.truncate().twist(ray);
    let [big_r, big_c, big_d] = total.ch.clone();
    if !big_c.is_positive() {
        return Err(Error::NonPositiveDegree {
            beta: format_rational(ray),
            degree: format_rational(&big_c),
        });
    }
    let frame_big = floor(ray);
    let frame = to_i64(&frame_big)?;
    let to_frame = Rational::from_integer(frame_big) - ray;
    let qv = q_tilt(v);
    let mut out = Vec::new();
    let mut complete = true;
    if !qv.is_positive() {
        return Ok(RayScan { candidates: out, complete });
    }
    let m = ray.denom().clone();
    let cap = r_max.map(BigInt::from);
    let mut c_num = BigInt::one();
    loop {
        let cq = Rational::new(c_num.clone(), m.clone());
        if cq >= big_c {
            break;
        }
        let k = &cq / &big_c;
        let p = &k * (int(1) - &k) * &qv / int(2);
        let r_center = &cq * &big_r / &big_c;
        let d_center = &cq * &big_d / &big_c;
        let lattice_den = BigInt::from(2) * &m * &m;
        let l = Rational::from_integer(lattice_den.lcm(d_center.denom()));
        let r_bound = &p * &l;
        let mut r_lo = ceil(&(&r_center - &r_bound));
        let mut r_hi = floor(&(&r_center + &r_bound));
        if let Some(cap) = &cap {
            if r_lo < -cap {
                r_lo = -cap.clone();
                complete = false;
            }
            if r_hi > *cap {
                r_hi = cap.clone();
                complete = false;
            }
        }
        let mut r = r_lo;
        while r <= r_hi {
            let rq = Rational::from_integer(r.clone());
            let c_untwisted = &cq + ray * &rq;
            let r_prime = &rq - &r_center;
            if is_integer(&c_untwisted) && !r_prime.is_zero() {
                // Twisted ch2 of (r, c_untwisted, c_untwisted^2 / 2); the lattice adds integers.
                let d0 = &c_untwisted * &c_untwisted / int(2) - ray * &c_untwisted + ray * ray * &rq / int(2);
                let d_bound = &p / r_prime.abs();
                let (n_lo, n_hi) = if r_prime.is_positive() {
                    (floor(&(&d_center - &d0)) + 1, floor(&(&d_center + &d_bound - &d0)))
                } else {
                    (ceil(&(&d_center - &d_bound - &d0)), ceil(&(&d_center - &d0)) - 1)
                };
                let mut n = n_lo;
                while n <= n_hi {
                    let sub = TruncatedChern::new(rq.clone(), cq.clone(), &d0 + Rational::from_integer(n.clone()));
                    if let Some((quotient, alpha_sq)) = admit_at(&total, &sub, ray) {
                        out.push(DestabilizerCandidate {
                            sub: sub.twist(&to_frame),
                            quotient: quotient.twist(&to_frame),
                            beta0: frame,
                            ray: ray.clone(),
                            alpha_sq,
                            flipped: false,
                        });
                    }
                    n += 1;
                }
            }
            r += 1;
        }
        c_num += 1;
    }
    out.sort_by(|a, b| a.sub.cmp(&b.sub));
    Ok(RayScan { candidates: out, complete })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TiltWallOptions {
    pub side: Option<Side>,
    /// Cap on `|r|` in each ray search.
    pub r_max: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltWall {
    pub wall: NumericalWall,
    pub candidates: Vec<DestabilizerCandidate>,
}

/// Why the list of walls is (or is not) known to be complete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Coverage {
    /// `Q(v) <= 0`: no class splits off.
    NoSplitting,
    /// The hyperbola meets the axis at an integer, so every wall crosses that ray.
    IntegerRay { beta0: i64 },
    /// A wall missing every integer ray would sit between two consecutive
    /// integers around the hyperbola's foot, hence inside the BMT disc where
    /// no object of class `v` is semistable.
    BmtDisc,
    /// Walls meeting no integer ray contain the BMT disc; they were searched
    /// on the rational ray through the disc's center.
    BmtBoundary {
        #[serde(with = "crate::rational::serde_str")]
        ray: Rational,
    },
    /// Walls confined between the two integers around the foot of the
    /// hyperbola may be missing.
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltWalls {
    pub v: ChernCharacter,
    pub side: Side,
    /// Outermost first.
    pub walls: Vec<TiltWall>,
    pub rays: Vec<i64>,
    pub coverage: Coverage,
    /// The rank cap cut some ray search short.
    pub truncated: bool,
    /// The region inside the innermost wall lies in the BMT disc, so it
    /// contains no semistable objects of class `v`.
    pub innermost_empty: Option<bool>,
}

impl TiltWalls {
    pub fn certified(&self) -> bool {
        !self.truncated && self.coverage != Coverage::Incomplete
    }
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::InvalidArgument(format!("integer {x} out of range")))
}

/// `x <= sign * sqrt(s)` for rationals `x`, `s >= 0`.
fn le_signed_sqrt(x: &Rational, sign: i32, s: &Rational) -> bool {
    if sign >= 0 {
        !x.is_positive() || x * x <= *s
    } else {
        !x.is_positive() && x * x >= *s
    }
}

/// Largest integer `n` with `n <= m + sign * sqrt(s)`.
fn floor_shifted_sqrt(m: &Rational, sign: i32, s: &Rational) -> BigInt {
    let guess = m.to_f64().unwrap_or(0.0) + sign as f64 * to_f64(s).sqrt();
    let mut n = BigInt::from(guess.floor() as i64);
    let ok = |n: &BigInt| le_signed_sqrt(&(Rational::from_integer(n.clone()) - m), sign, s);
    while !ok(&n) {
        n -= 1;
    }
    while ok(&(&n + 1)) {
        n += 1;
    }
    n
}

/// Every numerical wall for `v` on one side of the vertical wall, each with
/// its destabilizer candidates.
pub fn tilt_walls(v: &ChernCharacter, options: &TiltWallOptions) -> Result<TiltWalls> {
    let side = options.side.unwrap_or(Side::Left);
    let v0 = v.ch0().clone();
    if v0.is_zero() {
        return Err(Error::InvalidArgument("tilt_walls needs ch0 != 0".into()));
    }
    let vt = v.truncate();
    let vertical = v.ch1() / &v0;
    let qv = q_tilt(v);
    let mut result = TiltWalls {
        v: v.clone(),
        side,
        walls: Vec::new(),
        rays: Vec::new(),
        coverage: Coverage::NoSplitting,
        truncated: false,
        innermost_empty: None,
    };
    if !qv.is_positive() {
        return Ok(result);
    }
    let sign = match side {
        Side::Left => -1,
        Side::Right => 1,
    };
    let on_side = |n: &BigInt| {
        let n = Rational::from_integer(n.clone());
        match side {
            Side::Left => n < vertical,
            Side::Right => n > vertical,
        }
    };
    let on_side_q = |b: &Rational| match side {
        Side::Left => *b < vertical,
        Side::Right => *b > vertical,
    };
    // Foot of the hyperbola: vertical + sign * sqrt(Q) / |v0|.
    let s = &qv / (&v0 * &v0);
    let foot_floor = floor_shifted_sqrt(&vertical, sign, &s);
    let foot_exact = rational_sqrt(&s)
        .map(|root| &vertical + int(sign as i64) * root)
        .filter(is_integer);
    let foot_ceil = if foot_exact.is_some() { foot_floor.clone() } else { &foot_floor + 1 };

    let mut pending: BTreeSet<BigInt> = [foot_floor.clone(), foot_ceil.clone()].into_iter().filter(|n| on_side(n)).collect();
    let mut scanned: BTreeSet<BigInt> = BTreeSet::new();
    let mut seen_subs: HashSet<TruncatedChern> = HashSet::new();
    let mut groups: Vec<TiltWall> = Vec::new();

    while !pending.is_empty() {
        for n in std::mem::take(&mut pending) {
            let beta0 = to_i64(&n)?;
            let degree = v.ch1() - int(beta0) * &v0;
            let (oriented, flipped) = if degree.is_positive() { (v.clone(), false) } else { (-v, true) };
            let scan = scan_ray(&oriented, beta0, options.r_max)?;
            result.truncated |= !scan.complete;
            absorb(&mut groups, &mut seen_subs, &vt, scan.candidates, flipped);
            scanned.insert(n);
        }
        // Every integer ray between the far intercept of the outermost wall
        // and the vertical wall.
        let Some(outer) = groups.iter().map(|g| &g.wall).min_by(|a, b| cmp_outermost_first(a, b)) else {
            break;
        };
        let WallKind::Semicircle { center, radius_sq } = &outer.kind else {
            break;
        };
        let reach = radius_sq.to_f64().unwrap_or(0.0).sqrt() + 2.0;
        let c = center.to_f64().unwrap_or(0.0);
        let mut n = BigInt::from((c - reach).floor() as i64);
        let hi = BigInt::from((c + reach).ceil() as i64).max(ceil(&vertical) + 1);
        while n <= hi {
            if on_side(&n) && beyond_far_intercept(&n, center, radius_sq, side) && !scanned.contains(&n) {
                pending.insert(n.clone());
            }
            n += 1;
        }
    }

    result.rays = scanned.iter().map(to_i64).collect::<Result<_>>()?;

    result.coverage = if let Some(foot) = &foot_exact {
        Coverage::IntegerRay { beta0: to_i64(&floor(foot))? }
    } else {
        // Walls meeting neither ray next to the foot lie under the smaller of
        // the two walls through those integers.
        let limit = [&foot_floor, &foot_ceil]
            .into_iter()
            .filter(|n| on_side(n))
            .filter_map(|n| wall_through(&vt, &Rational::from_integer(n.clone())))
            .filter(NumericalWall::is_semicircle)
            .min_by(|a, b| cmp_outermost_first(b, a));
        let boundary = bmt_boundary(v).filter(|b| b.center().is_some_and(|c| on_side_q(c)));
        match (limit, boundary) {
            (Some(limit), Some(boundary)) if inside_bmt_disc(v, &limit) && !limit.same_locus(&boundary) => {
                Coverage::BmtDisc
            }
            // Any wall left out contains the BMT disc, so it crosses the ray
            // through the disc's center.
            (Some(_), Some(boundary)) => {
                let ray = boundary.center().cloned().unwrap_or_default();
                let degree = v.ch1() - &ray * &v0;
                let (oriented, flipped) = if degree.is_positive() { (v.clone(), false) } else { (-v, true) };
                let scan = scan_rational_ray(&oriented, &ray, options.r_max)?;
                result.truncated |= !scan.complete;
                absorb(&mut groups, &mut seen_subs, &vt, scan.candidates, flipped);
                Coverage::BmtBoundary { ray }
            }
            _ => Coverage::Incomplete,
        }
    };
    // No object of class v is semistable strictly inside the BMT disc, so a
    // numerical wall there is never an actual wall.
    if let Some(boundary) = bmt_boundary(v) {
        groups.retain(|g| g.wall.same_locus(&boundary) || !inside_bmt_disc(v, &g.wall));
    }
    for g in &mut groups {
        g.candidates.sort_by(|a, b| (a.beta0, &a.sub).cmp(&(b.beta0, &b.sub)));
    }
    groups.sort_by(|a, b| cmp_outermost_first(&a.wall, &b.wall));
    result.innermost_empty = groups.last().map(|g| inside_bmt_disc(v, &g.wall));
    result.walls = groups;
    Ok(result)
}

/// `n` lies on the inner side of the wall's intercept away from the vertical wall.
fn beyond_far_intercept(n: &BigInt, center: &Rational, radius_sq: &Rational, side: Side) -> bool {
    let d = Rational::from_integer(n.clone()) - center;
    let inward = match side {
        Side::Left => !d.is_negative(),
        Side::Right => !d.is_positive(),
    };
    inward || &d * &d < *radius_sq
}

/// Merge a ray's candidates into the wall groups, skipping splits already seen.
fn absorb(
    groups: &mut Vec<TiltWall>,
    seen_subs: &mut HashSet<TruncatedChern>,
    vt: &TruncatedChern,
    candidates: Vec<DestabilizerCandidate>,
    flipped: bool,
) {
    for mut cand in candidates {
        cand.flipped = flipped;
        let sub = cand.sub_untwisted();
        if !seen_subs.insert(if flipped { -&sub } else { sub.clone() }) {
            continue;
        }
        match groups.iter_mut().find(|g| walls_identical(vt, &g.candidates[0].sub_untwisted(), &sub)) {
            Some(group) => group.candidates.push(cand),
            None => groups.push(TiltWall {
                wall: numerical_wall(vt, &sub),
                candidates: vec![cand],
            }),
        }
    }
}

/// The circle bounding the BMT disc, as a wall equation.
fn bmt_boundary(v: &ChernCharacter) -> Option<NumericalWall> {
    let region = bmt_region(v);
    matches!(region.shape(), RegionShape::ComplementOfDisc { .. })
        .then(|| NumericalWall::from_coefficients(region.q, region.x, region.y))
}

/// The closed semidisc under `wall` lies within the closed BMT semidisc.
pub fn inside_bmt_disc(v: &ChernCharacter, wall: &NumericalWall) -> bool {
    let (RegionShape::ComplementOfDisc { center: cb, radius_sq: rb }, WallKind::Semicircle { center, radius_sq }) =
        (bmt_region(v).shape(), &wall.kind)
    else {
        return false;
    };
    if *radius_sq > rb {
        return false;
    }
    let dist = (&cb - center) * (&cb - center);
    let s = &rb + radius_sq - dist;
    !s.is_negative() && int(4) * &rb * radius_sq <= &s * &s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    IdealOfLinePlusPoints,
    IdealOfPoints,
    PlaneSheafWithPoints,
    LineBundle,
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeometricLabel {
    pub family: Family,
    pub twist: i64,
    pub point_count: i64,
    /// Number of copies of a line bundle; 1 otherwise.
    pub multiplicity: i64,
    /// Shifted by one (the class is negated).
    pub shifted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

/// What the truncated class alone determines: the family, its twist and the
/// value of the twisted `ch3` with no points.
#[derive(Clone, Debug)]
struct Shape {
    family: Family,
    twist: i64,
    multiplicity: i64,
    shifted: bool,
    offset: Rational,
    /// Whether points may be added (ch3 decreased by integers).
    free: bool,
}

fn shape(t: &TruncatedChern, beta0: i64) -> Option<Shape> {
    let [r, c, d] = &t.ch;
    if !is_integer(r) || !is_integer(c) {
        return None;
    }
    let rank = r.to_integer().to_i64()?;
    let cube = |j: &Rational| j * j * j / int(6);
    match rank {
        1 => {
            let j = c.clone();
            let twist = beta0 + j.to_integer().to_i64()?;
            let base = &j * &j / int(2);
            if *d == base {
                Some(Shape { family: Family::IdealOfPoints, twist, multiplicity: 1, shifted: false, offset: cube(&j), free: true })
            } else if *d == base - int(1) {
                Some(Shape {
                    family: Family::IdealOfLinePlusPoints,
                    twist,
                    multiplicity: 1,
                    shifted: false,
                    offset: cube(&j) - &j + int(1),
                    free: true,
                })
            } else {
                None
            }
        }
        0 => {
            if *c != int(1) {
                return None;
            }
            let m = d + q(1, 2);
            if !is_integer(&m) {
                return None;
            }
            Some(Shape {
                family: Family::PlaneSheafWithPoints,
                twist: beta0 + m.to_integer().to_i64()?,
                multiplicity: 1,
                shifted: false,
                offset: d * d / int(2) + q(1, 24),
                free: true,
            })
        }
        n => {
            let j = c / r;
            if !is_integer(&j) || *d != r * &j * &j / int(2) {
                return None;
            }
            Some(Shape {
                family: Family::LineBundle,
                twist: beta0 + j.to_integer().to_i64()?,
                multiplicity: n.abs(),
                shifted: n < 0,
                offset: r * cube(&j),
                free: false,
            })
        }
    }
}

impl GeometricLabel {
    fn unclassified(diagnostic: String) -> Self {
        Self {
            family: Family::Unclassified,
            twist: 0,
            point_count: 0,
            multiplicity: 1,
            shifted: false,
            diagnostic: Some(diagnostic),
        }
    }

    fn from_shape(s: &Shape, points: i64) -> Self {
        let family = if s.family == Family::IdealOfPoints && points == 0 { Family::LineBundle } else { s.family };
        Self {
            family,
            twist: s.twist,
            point_count: points,
            multiplicity: s.multiplicity,
            shifted: s.shifted,
            diagnostic: None,
        }
    }

    pub fn is_classified(&self) -> bool {
        self.family != Family::Unclassified
    }

    /// Class in untwisted coordinates, rebuilt from the constructors.
    pub fn chern(&self) -> Option<ChernCharacter> {
        let k = self.twist;
        let n = self.point_count;
        let class = match self.family {
            Family::LineBundle => line_bundle(k).scale(&int(self.multiplicity)),
            Family::IdealOfPoints => points_ideal(k, n).ok()?,
            Family::IdealOfLinePlusPoints => line_ideal(k, n).ok()?,
            Family::PlaneSheafWithPoints => points_in_plane_ideal(k, n).ok()?,
            Family::Unclassified => return None,
        };
        Some(if self.shifted { -class } else { class })
    }

    /// Display name; `primed` picks fresh letters for the points, so the two
    /// sides of a pair read `I_P(k), I_{Q/V}(l)` rather than reusing `P`.
    pub fn name(&self, primed: bool) -> String {
        let twist = if self.twist == 0 { String::new() } else { format!("({})", self.twist) };
        let points = match (self.point_count, primed) {
            (1, false) => "P",
            (1, true) => "Q",
            (_, false) => "Z",
            (_, true) => "Z'",
        };
        match self.family {
            Family::LineBundle => {
                let sum = if self.multiplicity > 1 { format!("^⊕{}", self.multiplicity) } else { String::new() };
                let shift = if self.shifted { "[1]" } else { "" };
                format!("O{twist}{sum}{shift}")
            }
            Family::IdealOfPoints => format!("I_{points}{twist}"),
            Family::IdealOfLinePlusPoints if self.point_count == 0 => format!("I_L{twist}"),
            Family::IdealOfLinePlusPoints => format!("I_{{L∪{points}}}{twist}"),
            Family::PlaneSheafWithPoints if self.point_count == 0 => format!("O_V{twist}"),
            Family::PlaneSheafWithPoints => format!("I_{{{points}/V}}{twist}"),
            Family::Unclassified => "unclassified".to_string(),
        }
    }
}

impl fmt::Display for GeometricLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name(false))
    }
}

/// Names a class given in `beta0`-twisted coordinates.
pub fn classify(ch_twisted: &ChernCharacter, beta0: i64) -> GeometricLabel {
    let Some(s) = shape(&ch_twisted.truncate(), beta0) else {
        return GeometricLabel::unclassified(format!("no family has truncated class {}", ch_twisted.truncate()));
    };
    let points = &s.offset - ch_twisted.ch3();
    if !is_integer(&points) || points.is_negative() {
        return GeometricLabel::unclassified(format!(
            "point count {} is not a nonnegative integer",
            format_rational(&points)
        ));
    }
    if !s.free && !points.is_zero() {
        return GeometricLabel::unclassified(format!(
            "a sum of line bundles has no points, got {}",
            format_rational(&points)
        ));
    }
    match points.to_integer().to_i64() {
        Some(n) => GeometricLabel::from_shape(&s, n),
        None => GeometricLabel::unclassified("point count out of range".into()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvedPair {
    /// Untwisted classes; they add up to `v` (to `-v` for flipped candidates).
    pub sub: ChernCharacter,
    pub quotient: ChernCharacter,
    pub sub_label: GeometricLabel,
    pub quotient_label: GeometricLabel,
    /// `ch3` of the subobject in `beta0`-twisted coordinates.
    #[serde(with = "crate::rational::serde_str")]
    pub e: Rational,
    pub beta0: i64,
}

impl ResolvedPair {
    pub fn names(&self) -> (String, String) {
        (self.sub_label.name(false), self.quotient_label.name(true))
    }
}

/// All values of the free `ch3` for which both sides get valid labels.
pub fn resolve_ch3(cand: &DestabilizerCandidate, v: &ChernCharacter) -> Vec<ResolvedPair> {
    let total = if cand.flipped { -v } else { v.clone() }.twist(&int(cand.beta0));
    let (Some(s_sub), Some(s_quot)) = (shape(&cand.sub, cand.beta0), shape(&cand.quotient, cand.beta0)) else {
        return Vec::new();
    };
    // n_sub + n_quot = off_sub + off_quot - ch3(total)
    let budget = &s_sub.offset + &s_quot.offset - total.ch3();
    if !is_integer(&budget) || budget.is_negative() {
        return Vec::new();
    }
    let Some(budget) = budget.to_integer().to_i64() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    // e ascending means n_sub descending.
    for n_sub in (0..=budget).rev() {
        let n_quot = budget - n_sub;
        if (!s_sub.free && n_sub != 0) || (!s_quot.free && n_quot != 0) {
            continue;
        }
        let e = &s_sub.offset - int(n_sub);
        let sub_t = cand.sub.with_ch3(e.clone());
        let quot_t = cand.quotient.with_ch3(total.ch3() - &e);
        let back = int(-cand.beta0);
        out.push(ResolvedPair {
            sub: sub_t.twist(&back),
            quotient: quot_t.twist(&back),
            sub_label: GeometricLabel::from_shape(&s_sub, n_sub),
            quotient_label: GeometricLabel::from_shape(&s_quot, n_quot),
            e,
            beta0: cand.beta0,
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallPair {
    pub wall: NumericalWall,
    pub pair: ResolvedPair,
}

/// Labeled destabilizing pairs across all left walls, innermost wall first
/// and by increasing `e` within a wall.
pub fn corollary_pairs(v: &ChernCharacter) -> Result<Vec<WallPair>> {
    let walls = tilt_walls(v, &TiltWallOptions::default())?;
    Ok(pairs_of(&walls, v))
}

pub fn pairs_of(walls: &TiltWalls, v: &ChernCharacter) -> Vec<WallPair> {
    let mut out = Vec::new();
    for tw in walls.walls.iter().rev() {
        let mut pairs: Vec<ResolvedPair> = tw.candidates.iter().flat_map(|c| resolve_ch3(c, v)).collect();
        pairs.sort_by(|a, b| a.e.cmp(&b.e).then_with(|| a.sub.cmp(&b.sub)));
        out.extend(pairs.into_iter().map(|pair| WallPair {
            wall: tw.wall.clone(),
            pair,
        }));
    }
    out
}
