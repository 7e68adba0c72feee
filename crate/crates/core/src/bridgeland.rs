//! Bridgeland walls: loci where `lambda_{alpha,beta,s}` of two classes agree,
//! and the order in which a path meets them.
//!
//! The locus is the zero set of `Re Z_F Im Z_G - Re Z_G Im Z_F`, a polynomial
//! in `a = alpha^2` and `beta`. It is exact; only the path tracing below uses
//! floating point.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chern::ChernCharacter;
use crate::error::{Error, Result};
use crate::inequalities::bmt_region;
use crate::poly::Poly2;
use crate::rational::{format_rational, int, q, to_f64, Rational};
use crate::walls::{numerical_wall, WallKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgelandWallCurve {
    pub s: Rational,
    pub poly: Poly2,
}

impl BridgelandWallCurve {
    pub fn eval(&self, alpha_sq: &Rational, beta: &Rational) -> Rational {
        self.poly.eval(alpha_sq, beta)
    }

    pub fn eval_f64(&self, alpha_sq: f64, beta: f64) -> f64 {
        self.poly.eval_f64(alpha_sq, beta)
    }
}

/// `ch^beta` with `beta` left symbolic.
fn twisted_polys(v: &ChernCharacter) -> [Poly2; 4] {
    let [c0, c1, c2, c3] = &v.ch;
    let b = Poly2::b();
    let b2 = &b * &b;
    let b3 = &b2 * &b;
    let k = |c: &Rational| Poly2::constant(c.clone());
    let half = q(1, 2);
    let sixth = q(1, 6);
    [
        k(c0),
        &k(c1) - &b.scale(c0),
        &(&k(c2) - &b.scale(c1)) + &b2.scale(&(&half * c0)),
        &(&(&k(c3) - &b.scale(c2)) + &b2.scale(&(&half * c1))) - &b3.scale(&(&sixth * c0)),
    ]
}

/// `(Re Z, Im Z)` as polynomials in `(alpha^2, beta)`.
pub fn central_charge_polys(v: &ChernCharacter, s: &Rational) -> (Poly2, Poly2) {
    let [t0, t1, t2, t3] = twisted_polys(v);
    let a = Poly2::a();
    let re = &(-&t3) + &(&a * &t1).scale(&(s + q(1, 6)));
    let im = &t2 - &(&a * &t0).scale(&q(1, 2));
    (re, im)
}

pub fn bridgeland_wall(f: &ChernCharacter, g: &ChernCharacter, s: &Rational) -> Result<BridgelandWallCurve> {
    if !s.is_positive() {
        return Err(Error::InvalidArgument(format!("s must be positive, got {}", format_rational(s))));
    }
    let (re_f, im_f) = central_charge_polys(f, s);
    let (re_g, im_g) = central_charge_polys(g, s);
    Ok(BridgelandWallCurve {
        s: s.clone(),
        poly: &(&re_f * &im_g) - &(&re_g * &im_f),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathDirection {
    /// From the BMT boundary towards large `alpha`.
    Outward,
    /// From large `alpha` down to the BMT boundary.
    Inward,
}

/// The curve `nu_{alpha,beta}(v) = epsilon` on the side `beta < v1/v0`.
///
/// It starts where it leaves the BMT disc of `v`: inside the disc no object
/// of class `v` is semistable, and the wall curves there can vanish for
/// reasons unrelated to destabilizing.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSpec {
    pub v: ChernCharacter,
    pub epsilon: Rational,
    pub direction: PathDirection,
    /// Upper end of the `alpha` range; picked from the pairs when absent.
    pub alpha_max: Option<f64>,
    pub samples: usize,
}

pub const DEFAULT_SAMPLES: usize = 1 << 10;
pub const BISECTION_TOL: f64 = 1e-12;
pub const MERGE_TOL: f64 = 1e-9;

impl PathSpec {
    pub fn new(v: ChernCharacter) -> Self {
        Self {
            v,
            epsilon: q(1, 100),
            direction: PathDirection::Outward,
            alpha_max: None,
            samples: DEFAULT_SAMPLES,
        }
    }

    pub fn with_epsilon(mut self, epsilon: Rational) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_direction(mut self, direction: PathDirection) -> Self {
        self.direction = direction;
        self
    }

    fn oriented(&self) -> [f64; 4] {
        let mut v = self.v.ch.clone().map(|c| to_f64(&c));
        if v[0] < 0.0 || (v[0] == 0.0 && v[1] < 0.0) {
            v = v.map(|c| -c);
        }
        v
    }

    /// `beta` on the path at height `alpha`, or `None` if the path does not reach it.
    pub fn beta_at(&self, alpha: f64) -> Option<f64> {
        let [v0, v1, v2, _] = self.oriented();
        let eps = to_f64(&self.epsilon);
        if v0 == 0.0 {
            return (v1 != 0.0).then(|| v2 / v1 - eps);
        }
        let a2 = alpha * alpha;
        let b = eps * v0 - v1;
        let c = v2 - eps * v1 - v0 * a2 / 2.0;
        let disc = b * b - 2.0 * v0 * c;
        (disc >= 0.0).then(|| (-b - disc.sqrt()) / v0)
    }

    /// Smallest `alpha` where the path is outside the open BMT disc of `v`.
    pub fn alpha_start(&self, alpha_hi: f64) -> f64 {
        let region = bmt_region(&self.v);
        let (q, x, y) = (to_f64(&region.q), to_f64(&region.x), to_f64(&region.y));
        let bmt = |alpha: f64| -> Option<f64> {
            let b = self.beta_at(alpha)?;
            Some(q * (alpha * alpha + b * b) + x * b + y)
        };
        let floor = 1e-6;
        match bmt(floor) {
            Some(val) if val >= 0.0 => return floor,
            None => return floor,
            _ => {}
        }
        // Outside eventually: q > 0 makes the form grow like alpha^2.
        let (mut lo, mut hi) = (floor, alpha_hi);
        if bmt(hi).is_none_or(|val| val < 0.0) {
            return floor;
        }
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if bmt(mid).is_some_and(|val| val >= 0.0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    /// Index into the input pair list.
    pub pair: usize,
    pub alpha: f64,
    pub beta: f64,
    /// All roots of this pair's curve on the path, in path order.
    pub roots: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingOrder {
    /// Pairs that change sign on the path, by first crossing.
    pub order: Vec<Crossing>,
    /// Pairs whose curve never changes sign on the path.
    pub never_crossed: Vec<usize>,
    pub alpha_range: (f64, f64),
}

impl CrossingOrder {
    pub fn indices(&self) -> Vec<usize> {
        self.order.iter().map(|c| c.pair).collect()
    }
}

fn default_alpha_max(v: &ChernCharacter, pairs: &[(ChernCharacter, ChernCharacter)]) -> f64 {
    let vt = v.truncate();
    let top = pairs
        .iter()
        .filter_map(|(f, _)| match numerical_wall(&vt, &f.truncate()).kind {
            WallKind::Semicircle { radius_sq, .. } => Some(to_f64(&radius_sq).sqrt()),
            _ => None,
        })
        .fold(0.0, f64::max);
    if top > 0.0 {
        2.0 * top + 1.0
    } else {
        10.0
    }
}

/// Sign-change roots of `f` on `[lo, hi]`, ascending.
fn roots_on(f: &dyn Fn(f64) -> Option<f64>, lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let n = samples.max(2);
    let xs: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let vals: Vec<Option<f64>> = xs.iter().map(|&x| f(x)).collect();
    let mut roots = Vec::new();
    for i in 0..n {
        let (Some(fa), Some(fb)) = (vals[i], vals[i + 1]) else { continue };
        if fa == 0.0 {
            roots.push(xs[i]);
            continue;
        }
        if fa * fb > 0.0 || fb == 0.0 {
            continue;
        }
        let (mut a, mut b, mut sa) = (xs[i], xs[i + 1], fa.signum());
        while b - a > BISECTION_TOL {
            let m = 0.5 * (a + b);
            match f(m) {
                Some(fm) if fm == 0.0 => {
                    a = m;
                    b = m;
                }
                Some(fm) if fm.signum() == sa => {
                    a = m;
                    sa = fm.signum();
                }
                _ => b = m,
            }
        }
        roots.push(0.5 * (a + b));
    }
    if let (Some(Some(last)), Some(&x)) = (vals.last(), xs.last()) {
        if *last == 0.0 {
            roots.push(x);
        }
    }
    roots.dedup_by(|b, a| (*b - *a).abs() < MERGE_TOL);
    roots
}

/// Order in which the Bridgeland walls of `pairs` are met along `path`.
pub fn crossing_order(
    pairs: &[(ChernCharacter, ChernCharacter)],
    path: &PathSpec,
    s: &Rational,
) -> Result<CrossingOrder> {
    if !path.epsilon.is_positive() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    if path.v.ch[0].is_zero() && path.v.ch[1].is_zero() {
        return Err(Error::InvalidArgument("path needs ch0 or ch1 nonzero".into()));
    }
    let alpha_hi = path.alpha_max.unwrap_or_else(|| default_alpha_max(&path.v, pairs));
    let alpha_lo = path.alpha_start(alpha_hi);
    let mut order = Vec::new();
    let mut never_crossed = Vec::new();
    for (i, (f, g)) in pairs.iter().enumerate() {
        let curve = bridgeland_wall(f, g, s)?;
        let eval = |alpha: f64| path.beta_at(alpha).map(|b| curve.eval_f64(alpha * alpha, b));
        let mut roots = roots_on(&eval, alpha_lo, alpha_hi, path.samples);
        if path.direction == PathDirection::Inward {
            roots.reverse();
        }
        match roots.first() {
            Some(&alpha) => order.push(Crossing {
                pair: i,
                alpha,
                beta: path.beta_at(alpha).unwrap_or(f64::NAN),
                roots,
            }),
            None => never_crossed.push(i),
        }
    }
    order.sort_by(|a, b| {
        let key = |c: &Crossing| match path.direction {
            PathDirection::Outward => c.alpha,
            PathDirection::Inward => -c.alpha,
        };
        key(a).total_cmp(&key(b)).then(a.pair.cmp(&b.pair))
    });
    Ok(CrossingOrder {
        order,
        never_crossed,
        alpha_range: (alpha_lo, alpha_hi),
    })
}

/// `true` when both imaginary parts vanish at the point, so the curve must too.
pub fn common_real_point(f: &ChernCharacter, g: &ChernCharacter, alpha_sq: &Rational, beta: &Rational) -> bool {
    let (_, im_f) = central_charge_polys(f, &int(1));
    let (_, im_g) = central_charge_polys(g, &int(1));
    im_f.eval(alpha_sq, beta).is_zero() && im_g.eval(alpha_sq, beta).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slopes::{central_charge, TiltPoint};

    fn v() -> ChernCharacter {
        ChernCharacter::from_ints(1, 0, -4, 8)
    }

    fn pair1() -> (ChernCharacter, ChernCharacter) {
        (
            ChernCharacter::new(int(2), int(-4), int(4), q(-8, 3)),
            ChernCharacter::new(int(-1), int(4), int(-8), q(32, 3)),
        )
    }

    #[test]
    fn polys_match_central_charge() {
        let s = q(1, 3);
        let (re, im) = central_charge_polys(&v(), &s);
        for (a2, b) in [(int(1), int(-3)), (q(5, 3), q(-7, 2)), (q(1, 9), int(2))] {
            let z = central_charge(&v(), &TiltPoint::new(a2.clone(), b.clone()).unwrap(), &s).unwrap();
            assert_eq!(re.eval(&a2, &b), z.re);
            assert_eq!(im.eval(&a2, &b), z.im);
        }
    }

    #[test]
    fn trivial_curves() {
        let (f, g) = pair1();
        let s = q(1, 3);
        assert!(bridgeland_wall(&f, &f, &s).unwrap().poly.is_zero());
        let fg = bridgeland_wall(&f, &g, &s).unwrap();
        let gf = bridgeland_wall(&g, &f, &s).unwrap();
        assert_eq!(fg.poly, -&gf.poly);
        assert!(bridgeland_wall(&f, &g, &int(0)).is_err());
    }

    #[test]
    fn vanishes_at_smallest_wall_top() {
        let (f, g) = pair1();
        let curve = bridgeland_wall(&f, &g, &q(1, 3)).unwrap();
        assert!(common_real_point(&f, &g, &int(1), &int(-3)));
        assert_eq!(curve.eval(&int(1), &int(-3)), int(0));
        assert!(curve.eval_f64(1.0, -3.0).abs() < 1e-9);
    }

    #[test]
    fn path_stays_on_offset_curve() {
        let path = PathSpec::new(v());
        for alpha in [0.5, 1.0, 3.0] {
            let b = path.beta_at(alpha).unwrap();
            let nu = crate::slopes::nu_f64(&[1.0, 0.0, -4.0, 8.0], alpha * alpha, b).unwrap();
            assert!((nu - 0.01).abs() < 1e-9);
            assert!(b < 0.0);
        }
        // The path leaves the BMT disc just before the smallest wall top.
        let start = path.alpha_start(10.0);
        assert!(start > 0.9 && start < 1.0, "{start}");
    }

    #[test]
    fn single_pair_order() {
        let order = crossing_order(&[pair1()], &PathSpec::new(v()), &q(1, 3)).unwrap();
        assert_eq!(order.indices(), vec![0]);
        assert!(order.never_crossed.is_empty());
        assert!((order.order[0].alpha - 1.0).abs() < 1e-3);
    }

    #[test]
    fn root_finder() {
        let f = |x: f64| Some((x - 0.5) * (x - 1.5));
        let r = roots_on(&f, 0.0, 2.0, 64);
        assert_eq!(r.len(), 2);
        assert!((r[0] - 0.5).abs() < 1e-11 && (r[1] - 1.5).abs() < 1e-11);
        assert!(roots_on(&|x: f64| Some(x * x + 1.0), -1.0, 1.0, 64).is_empty());
    }
}
