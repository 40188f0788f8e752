//! Numeric values a set function can hold: exact rationals or floats.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num::rational::Ratio;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact probability and rank values.
pub type Rational = BigRational;

/// Default tolerance for deciding that a float Δ-expression vanishes.
pub const FLOAT_TOL: f64 = 1e-9;

pub trait Scalar:
    Clone
    + PartialOrd
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Whether arithmetic on this type is exact.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn is_integer(&self) -> bool;

    /// `|self| <= tol`. Exact types ignore `tol` only when it is zero.
    fn within(&self, tol: f64) -> bool;

    /// Tolerance used when the caller gives none: 0 for exact types.
    fn default_tol() -> f64 {
        if Self::EXACT {
            0.0
        } else {
            FLOAT_TOL
        }
    }

    /// Parses `"p/q"`, an integer, or a decimal string.
    fn parse(text: &str) -> Result<Self>;

    /// Canonical text form used in JSON files.
    fn render(&self) -> String;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_integer(&self) -> bool {
        self.fract() == 0.0
    }

    fn within(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some((p, q)) = text.split_once('/') {
            let p: f64 = p.trim().parse().map_err(|_| bad_number(text))?;
            let q: f64 = q.trim().parse().map_err(|_| bad_number(text))?;
            if q == 0.0 {
                return Err(bad_number(text));
            }
            return Ok(p / q);
        }
        text.parse().map_err(|_| bad_number(text))
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn within(&self, tol: f64) -> bool {
        if tol == 0.0 {
            self.is_zero()
        } else {
            ToPrimitive::to_f64(&self.abs()).is_some_and(|v| v <= tol)
        }
    }

    fn parse(text: &str) -> Result<Self> {
        parse_rational(text)
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn within(&self, tol: f64) -> bool {
        if tol == 0.0 {
            self.is_zero()
        } else {
            Scalar::to_f64(&self.abs()) <= tol
        }
    }

    fn parse(text: &str) -> Result<Self> {
        let r = parse_rational(text)?;
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(p), Some(q)) => Ok(Ratio::new(p, q)),
            _ => Err(bad_number(text)),
        }
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

fn bad_number(text: &str) -> Error {
    Error::Parse(format!("not a number: `{text}`"))
}

/// Parses `"p/q"`, `"-3"`, or a finite decimal such as `"0.125"` exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad_number(text))?;
        let q: BigInt = q.trim().parse().map_err(|_| bad_number(text))?;
        if q.is_zero() {
            return Err(bad_number(text));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad_number(text));
        }
        let int_part: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            s => s.parse().map_err(|_| bad_number(text))?,
        };
        let frac_part: BigInt = frac.parse().map_err(|_| bad_number(text))?;
        let scale = num::pow(BigInt::from(10), frac.len());
        let magnitude = BigRational::new(int_part * &scale + frac_part, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let v: BigInt = t.parse().map_err(|_| bad_number(text))?;
    Ok(BigRational::from_integer(v))
}

/// `p/q` as a rational.
pub fn ratio(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
