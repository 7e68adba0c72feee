//! Slope functions and the central charge.
//!
//! `alpha` only ever appears squared, so a [`TiltPoint`] stores `alpha^2`
//! exactly and the square root is taken only when plotting.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chern::ChernCharacter;
use crate::error::{Error, Result};
use crate::rational::{format_rational, int, q, Rational};

/// A slope value: a rational or `+inf` (division by zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedRational {
    Finite(Rational),
    PosInfinity,
}

impl ExtendedRational {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::PosInfinity)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(x) => Some(x),
            ExtendedRational::PosInfinity => None,
        }
    }

    /// Ordering that refuses to compare `+inf` with `+inf`.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        use ExtendedRational::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Ok(a.cmp(b)),
            (Finite(_), PosInfinity) => Ok(Ordering::Less),
            (PosInfinity, Finite(_)) => Ok(Ordering::Greater),
            (PosInfinity, PosInfinity) => Err(Error::InfiniteComparison),
        }
    }

    /// Difference of two slopes; rejects any infinite operand.
    pub fn checked_sub(&self, other: &Self) -> Result<Rational> {
        match (self, other) {
            (ExtendedRational::Finite(a), ExtendedRational::Finite(b)) => Ok(a - b),
            _ => Err(Error::InfiniteArithmetic),
        }
    }

    fn quotient(num: Rational, den: &Rational) -> Self {
        if den.is_zero() {
            ExtendedRational::PosInfinity
        } else {
            ExtendedRational::Finite(num / den)
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(x) => f.write_str(&format_rational(x)),
            ExtendedRational::PosInfinity => f.write_str("+inf"),
        }
    }
}

/// A point `(alpha, beta)` of the upper half-plane, with `alpha^2` exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TiltPoint {
    #[serde(with = "crate::rational::serde_str")]
    alpha_sq: Rational,
    #[serde(with = "crate::rational::serde_str")]
    beta: Rational,
}

impl TiltPoint {
    pub fn new(alpha_sq: Rational, beta: Rational) -> Result<Self> {
        if !alpha_sq.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "alpha^2 must be positive, got {}",
                format_rational(&alpha_sq)
            )));
        }
        Ok(Self { alpha_sq, beta })
    }

    pub fn from_alpha(alpha: &Rational, beta: Rational) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "alpha must be positive, got {}",
                format_rational(alpha)
            )));
        }
        Self::new(alpha * alpha, beta)
    }

    pub fn alpha_sq(&self) -> &Rational {
        &self.alpha_sq
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn alpha_f64(&self) -> f64 {
        crate::rational::to_f64(&self.alpha_sq).sqrt()
    }
}

/// `Z_{alpha,beta,s}(v)` evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralChargeValue {
    pub re: Rational,
    pub im: Rational,
}

/// `mu_beta = ch1^beta / ch0^beta`.
pub fn mu(v: &ChernCharacter, beta: &Rational) -> ExtendedRational {
    let t = v.twist(beta);
    ExtendedRational::quotient(t.ch[1].clone(), &t.ch[0])
}

/// Numerator of the tilt slope, `ch2^beta - alpha^2/2 ch0^beta`.
pub fn tilt_numerator(v: &ChernCharacter, p: &TiltPoint) -> Rational {
    let t = v.twist(p.beta());
    &t.ch[2] - p.alpha_sq() / int(2) * &t.ch[0]
}

/// `nu_{alpha,beta} = (ch2^beta - alpha^2/2 ch0^beta) / ch1^beta`.
pub fn nu(v: &ChernCharacter, p: &TiltPoint) -> ExtendedRational {
    let t = v.twist(p.beta());
    ExtendedRational::quotient(&t.ch[2] - p.alpha_sq() / int(2) * &t.ch[0], &t.ch[1])
}

fn check_s(s: &Rational) -> Result<()> {
    if s.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "s must be positive, got {}",
            format_rational(s)
        )))
    }
}

/// `Z = -ch3^beta + (s + 1/6) alpha^2 ch1^beta + i (ch2^beta - alpha^2/2 ch0^beta)`.
pub fn central_charge(v: &ChernCharacter, p: &TiltPoint, s: &Rational) -> Result<CentralChargeValue> {
    check_s(s)?;
    let t = v.twist(p.beta());
    let re = -&t.ch[3] + (s + q(1, 6)) * p.alpha_sq() * &t.ch[1];
    let im = &t.ch[2] - p.alpha_sq() / int(2) * &t.ch[0];
    Ok(CentralChargeValue { re, im })
}

/// `lambda = -Re Z / Im Z`, `+inf` where `Im Z = 0`.
pub fn lambda(v: &ChernCharacter, p: &TiltPoint, s: &Rational) -> Result<ExtendedRational> {
    let z = central_charge(v, p, s)?;
    Ok(ExtendedRational::quotient(-z.re, &z.im))
}

/// Membership in `P_v = { nu_{alpha,beta}(v) > 0 }`.
pub fn in_pv(v: &ChernCharacter, p: &TiltPoint) -> bool {
    match nu(v, p) {
        ExtendedRational::PosInfinity => true,
        ExtendedRational::Finite(x) => x.is_positive(),
    }
}

/// Floating point `nu` for plotting and path tracing; `None` where `ch1^beta = 0`.
pub fn nu_f64(v: &[f64; 4], alpha_sq: f64, beta: f64) -> Option<f64> {
    let t = twist_f64(v, beta);
    (t[1] != 0.0).then(|| (t[2] - alpha_sq / 2.0 * t[0]) / t[1])
}

/// `(Re Z, Im Z)` in floating point.
pub fn central_charge_f64(v: &[f64; 4], alpha_sq: f64, beta: f64, s: f64) -> (f64, f64) {
    let t = twist_f64(v, beta);
    (
        -t[3] + (s + 1.0 / 6.0) * alpha_sq * t[1],
        t[2] - alpha_sq / 2.0 * t[0],
    )
}

pub fn twist_f64(v: &[f64; 4], beta: f64) -> [f64; 4] {
    let b2 = beta * beta / 2.0;
    let b3 = beta * beta * beta / 6.0;
    [
        v[0],
        v[1] - beta * v[0],
        v[2] - beta * v[1] + b2 * v[0],
        v[3] - beta * v[2] + b2 * v[1] - b3 * v[0],
    ]
}

pub fn to_f64_class(v: &ChernCharacter) -> [f64; 4] {
    v.ch.clone().map(|c| crate::rational::to_f64(&c))
}
