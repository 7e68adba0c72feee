//! Chern characters of objects on projective three-space.
//!
//! A class is stored as `(ch0, ch1, ch2, ch3)` where `ch_i` is the degree of
//! the `i`-th component against `H^(3-i)`, so `H^3 = 1` and everything is a
//! plain rational number.
//!
//! Constructors for the sheaves that show up in wall computations:
//!
//! * `O(k)`: `e^{kH} = (1, k, k^2/2, k^3/6)`.
//! * `O_V(k)` for a plane `V`: `O(k) - O(k-1)`.
//! * `I_C` for a curve of degree `d` and arithmetic genus `g`:
//!   Riemann-Roch gives `chi(O_C(m)) = dm + 1 - g`, and integrating
//!   `ch(O_C) = (0, 0, d, e)` against the Todd class `(1, 2, 11/6, 1)` gives
//!   `e + 2d = 1 - g`. Hence `ch(I_C) = (1, 0, -d, 2d + g - 1)`.
//! * A point has class `(0, 0, 0, 1)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, is_integer, parse_rational_list, q, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChernCharacter {
    pub ch: [Rational; 4],
}

/// `ch_{<=2}`: the part of the class seen by tilt stability.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncatedChern {
    pub ch: [Rational; 3],
}

impl ChernCharacter {
    pub fn new(ch0: Rational, ch1: Rational, ch2: Rational, ch3: Rational) -> Self {
        Self { ch: [ch0, ch1, ch2, ch3] }
    }

    pub fn from_ints(ch0: i64, ch1: i64, ch2: i64, ch3: i64) -> Self {
        Self::new(int(ch0), int(ch1), int(ch2), int(ch3))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }

    /// Parses `a,b,c,d`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts = parse_rational_list(text)?;
        let parts: [Rational; 4] = parts.try_into().map_err(|v: Vec<Rational>| {
            Error::Parse(format!(
                "expected four comma separated rationals, got {}",
                v.len()
            ))
        })?;
        Ok(Self { ch: parts })
    }

    pub fn ch0(&self) -> &Rational {
        &self.ch[0]
    }
    pub fn ch1(&self) -> &Rational {
        &self.ch[1]
    }
    pub fn ch2(&self) -> &Rational {
        &self.ch[2]
    }
    pub fn ch3(&self) -> &Rational {
        &self.ch[3]
    }

    pub fn truncate(&self) -> TruncatedChern {
        TruncatedChern {
            ch: [self.ch[0].clone(), self.ch[1].clone(), self.ch[2].clone()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ch.iter().all(Zero::is_zero)
    }

    /// `ch0, ch1 in Z`, `2 ch2 in Z`, `6 ch3 in Z`.
    pub fn is_integral(&self) -> bool {
        is_integer(&self.ch[0])
            && is_integer(&self.ch[1])
            && is_integer(&(&self.ch[2] * int(2)))
            && is_integer(&(&self.ch[3] * int(6)))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            ch: self.ch.clone().map(|c| c * factor),
        }
    }

    /// `ch^beta = e^{-beta H} ch`.
    pub fn twist(&self, beta: &Rational) -> Self {
        let [c0, c1, c2, c3] = &self.ch;
        let b2 = beta * beta / int(2);
        let b3 = beta * beta * beta / int(6);
        Self::new(
            c0.clone(),
            c1 - beta * c0,
            c2 - beta * c1 + &b2 * c0,
            c3 - beta * c2 + &b2 * c1 - &b3 * c0,
        )
    }

    /// Class of the derived dual: odd components change sign.
    pub fn dual(&self) -> Self {
        let [c0, c1, c2, c3] = &self.ch;
        Self::new(c0.clone(), -c1, c2.clone(), -c3)
    }

    /// Cup product in `Q[H]/H^4`.
    pub fn product(&self, other: &Self) -> Self {
        let a = &self.ch;
        let b = &other.ch;
        let mut out: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
        for i in 0..4 {
            for j in 0..4 - i {
                out[i + j] += &a[i] * &b[j];
            }
        }
        Self { ch: out }
    }
}

impl TruncatedChern {
    pub fn new(ch0: Rational, ch1: Rational, ch2: Rational) -> Self {
        Self { ch: [ch0, ch1, ch2] }
    }

    pub fn twist(&self, beta: &Rational) -> Self {
        let [c0, c1, c2] = &self.ch;
        Self::new(
            c0.clone(),
            c1 - beta * c0,
            c2 - beta * c1 + beta * beta / int(2) * c0,
        )
    }

    pub fn with_ch3(&self, ch3: Rational) -> ChernCharacter {
        let [c0, c1, c2] = self.ch.clone();
        ChernCharacter::new(c0, c1, c2, ch3)
    }

    pub fn is_zero(&self) -> bool {
        self.ch.iter().all(Zero::is_zero)
    }
}

/// `O(k)`.
pub fn line_bundle(k: i64) -> ChernCharacter {
    let k = int(k);
    ChernCharacter::new(
        Rational::one(),
        k.clone(),
        &k * &k / int(2),
        &k * &k * &k / int(6),
    )
}

/// Class of a single point.
pub fn point() -> ChernCharacter {
    ChernCharacter::from_ints(0, 0, 0, 1)
}

/// Ideal sheaf of a curve of degree `d` and arithmetic genus `g`.
pub fn curve_ideal(d: i64, g: i64) -> Result<ChernCharacter> {
    if d <= 0 {
        return Err(Error::InvalidArgument(format!(
            "curve degree must be positive, got {d}"
        )));
    }
    Ok(ChernCharacter::new(
        int(1),
        int(0),
        int(-d),
        int(2 * d + g - 1),
    ))
}

/// `O_V(k)` for a plane `V`.
pub fn plane_sheaf(k: i64) -> ChernCharacter {
    ChernCharacter::new(q(0, 1), q(1, 1), q(2 * k - 1, 2), q(3 * k * k - 3 * k + 1, 6))
}

/// `I_{Z/V}(k)` for a length `n` subscheme `Z` of a plane `V`.
pub fn points_in_plane_ideal(k: i64, n: i64) -> Result<ChernCharacter> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!(
            "point count must be nonnegative, got {n}"
        )));
    }
    Ok(plane_sheaf(k) - point().scale(&int(n)))
}

/// `I_Z(k)` for a zero dimensional `Z` of length `n`.
pub fn points_ideal(k: i64, n: i64) -> Result<ChernCharacter> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!(
            "point count must be nonnegative, got {n}"
        )));
    }
    Ok(line_bundle(k) - point().scale(&int(n)))
}

/// `I_{L u Z}(k)` for a line `L` plus `n` further (possibly embedded) points.
pub fn line_ideal(k: i64, n: i64) -> Result<ChernCharacter> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!(
            "point count must be nonnegative, got {n}"
        )));
    }
    // O_L(k) = (0, 0, 1, k - 1).
    let structure_sheaf_of_line = ChernCharacter::from_ints(0, 0, 1, k - 1);
    Ok(line_bundle(k) - structure_sheaf_of_line - point().scale(&int(n)))
}

impl Add for ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a> Add<&'a ChernCharacter> for &'a ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, rhs: &ChernCharacter) -> ChernCharacter {
        ChernCharacter {
            ch: std::array::from_fn(|i| &self.ch[i] + &rhs.ch[i]),
        }
    }
}

impl AddAssign<&ChernCharacter> for ChernCharacter {
    fn add_assign(&mut self, rhs: &ChernCharacter) {
        for (a, b) in self.ch.iter_mut().zip(&rhs.ch) {
            *a += b;
        }
    }
}

impl Sub for ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<'a> Sub<&'a ChernCharacter> for &'a ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, rhs: &ChernCharacter) -> ChernCharacter {
        ChernCharacter {
            ch: std::array::from_fn(|i| &self.ch[i] - &rhs.ch[i]),
        }
    }
}

impl Neg for ChernCharacter {
    type Output = ChernCharacter;
    fn neg(self) -> Self {
        Self { ch: self.ch.map(|c| -c) }
    }
}

impl Neg for &ChernCharacter {
    type Output = ChernCharacter;
    fn neg(self) -> ChernCharacter {
        self.clone().neg()
    }
}

impl Mul<ChernCharacter> for i64 {
    type Output = ChernCharacter;
    fn mul(self, rhs: ChernCharacter) -> ChernCharacter {
        rhs.scale(&int(self))
    }
}

impl Add for TruncatedChern {
    type Output = TruncatedChern;
    fn add(self, rhs: Self) -> Self {
        TruncatedChern {
            ch: std::array::from_fn(|i| &self.ch[i] + &rhs.ch[i]),
        }
    }
}

impl Sub for &TruncatedChern {
    type Output = TruncatedChern;
    fn sub(self, rhs: &TruncatedChern) -> TruncatedChern {
        TruncatedChern {
            ch: std::array::from_fn(|i| &self.ch[i] - &rhs.ch[i]),
        }
    }
}

impl Neg for &TruncatedChern {
    type Output = TruncatedChern;
    fn neg(self) -> TruncatedChern {
        TruncatedChern {
            ch: self.ch.clone().map(|c| -c),
        }
    }
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ch.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Display for TruncatedChern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ch.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for ChernCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::rational::serde_vec_str::serialize(&self.ch, s)
    }
}

impl<'de> Deserialize<'de> for ChernCharacter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = crate::rational::serde_vec_str::deserialize(d)?;
        let ch: [Rational; 4] = v
            .try_into()
            .map_err(|_| serde::de::Error::custom("a Chern character has four components"))?;
        Ok(Self { ch })
    }
}

impl Serialize for TruncatedChern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::rational::serde_vec_str::serialize(&self.ch, s)
    }
}

impl<'de> Deserialize<'de> for TruncatedChern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = crate::rational::serde_vec_str::deserialize(d)?;
        let ch: [Rational; 3] = v
            .try_into()
            .map_err(|_| serde::de::Error::custom("a truncated class has three components"))?;
        Ok(Self { ch })
    }
}
