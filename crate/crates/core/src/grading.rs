//! Λ×ℤ₂ degrees and the Koszul sign rule.
//!
//! Λ is fixed to ℤ^k; `k` (the arity) is declared per problem instance and
//! every [`Degree`] carries its own weight vector so mismatches are caught
//! at the point of use.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// The ℤ₂ component of a degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn from_int(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn as_int(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl AddAssign for Parity {
    fn add_assign(&mut self, rhs: Parity) {
        *self = *self + rhs;
    }
}

/// ℤ₂ multiplication, the exponent arithmetic of `(-1)^{pq}`.
impl Mul for Parity {
    type Output = Parity;

    fn mul(self, rhs: Parity) -> Parity {
        if self.is_odd() && rhs.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" | "0" => Ok(Parity::Even),
            "odd" | "1" => Ok(Parity::Odd),
            _ => Err(Error::Rejected(format!("unknown parity `{s}`"))),
        }
    }
}

/// A sign `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^p`.
    pub fn of(p: Parity) -> Sign {
        match p {
            Parity::Even => Sign::Plus,
            Parity::Odd => Sign::Minus,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_scalar(self) -> Scalar {
        Scalar::from_integer(self.to_i64().into())
    }

    pub fn apply(self, x: Scalar) -> Scalar {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// `(-1)^{pq}`: negative exactly when both parities are odd.
pub fn koszul_sign(p: Parity, q: Parity) -> Sign {
    Sign::of(p * q)
}

/// A homogeneous degree `(λ, π) ∈ ℤ^k × ℤ₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree {
    weight: Vec<i64>,
    parity: Parity,
}

impl Degree {
    pub fn new(weight: Vec<i64>, parity: Parity) -> Self {
        Degree { weight, parity }
    }

    /// The neutral degree `((0,…,0), even)`.
    pub fn zero(arity: usize) -> Self {
        Degree {
            weight: vec![0; arity],
            parity: Parity::Even,
        }
    }

    pub fn arity(&self) -> usize {
        self.weight.len()
    }

    pub fn weight(&self) -> &[i64] {
        &self.weight
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.parity == Parity::Even && self.weight.iter().all(|&w| w == 0)
    }

    fn check_arity(&self, other: &Degree) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: other.arity(),
            });
        }
        Ok(())
    }

    /// Componentwise weight sum, ℤ₂ parity sum.
    pub fn add(&self, other: &Degree) -> Result<Degree> {
        self.check_arity(other)?;
        Ok(Degree {
            weight: self
                .weight
                .iter()
                .zip(&other.weight)
                .map(|(a, b)| a + b)
                .collect(),
            parity: self.parity + other.parity,
        })
    }

    /// `self - other`; parity subtraction coincides with addition in ℤ₂.
    pub fn sub(&self, other: &Degree) -> Result<Degree> {
        self.add(&other.negate())
    }

    /// Negates the weight; parity is its own inverse.
    pub fn negate(&self) -> Degree {
        Degree {
            weight: self.weight.iter().map(|w| -w).collect(),
            parity: self.parity,
        }
    }
}

/// Free-function form of [`Degree::add`].
pub fn degree_add(d1: &Degree, d2: &Degree) -> Result<Degree> {
    d1.add(d2)
}

/// Free-function form of [`Degree::negate`].
pub fn degree_negate(d: &Degree) -> Degree {
    d.negate()
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, w) in self.weight.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "|{})", self.parity)
    }
}

/// Parses `(w1,...,wk | even)` with arbitrary interior whitespace.
impl FromStr for Degree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Rejected(format!("malformed degree `{s}`"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (weights, parity) = inner.split_once('|').ok_or_else(bad)?;
        let parity: Parity = parity.trim().parse().map_err(|_| bad())?;
        let weights = weights.trim();
        let weight = if weights.is_empty() {
            Vec::new()
        } else {
            weights
                .split(',')
                .map(|w| w.trim().parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Degree { weight, parity })
    }
}
