//! Sparse polynomials in `(a, b) = (alpha^2, beta)` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::rational::{format_rational, to_f64, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly2 {
    /// `(deg_a, deg_b) -> coefficient`, zero coefficients never stored.
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, deg_a: u32, deg_b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_a, deg_b), c);
        }
        Self { terms }
    }

    /// The variable `a = alpha^2`.
    pub fn a() -> Self {
        Self::monomial(Rational::from_integer(1.into()), 1, 0)
    }

    /// The variable `b = beta`.
    pub fn b() -> Self {
        Self::monomial(Rational::from_integer(1.into()), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        let mut sum = Rational::zero();
        for (&(i, j), c) in &self.terms {
            sum += c * num_traits::pow(a.clone(), i as usize) * num_traits::pow(b.clone(), j as usize);
        }
        sum
    }

    pub fn eval_f64(&self, a: f64, b: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| to_f64(c) * a.powi(i as i32) * b.powi(j as i32))
            .sum()
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        self + &(-rhs)
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({})", format_rational(c))?;
            match i {
                0 => {}
                1 => f.write_str("*a")?,
                _ => write!(f, "*a^{i}")?,
            }
            match j {
                0 => {}
                1 => f.write_str("*b")?,
                _ => write!(f, "*b^{j}")?,
            }
        }
        Ok(())
    }
}
