use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// An angle `(p/q)·π` normalized into `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalAngle(Rational);

impl RationalAngle {
    pub fn new(numer: i64, denom: i64) -> Self {
        Self::from_turns_pi(Rational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Self(Rational::zero())
    }

    pub fn pi() -> Self {
        Self(Rational::one())
    }

    /// Normalize `r·π` into `[0, 2π)`.
    pub fn from_turns_pi(r: Rational) -> Self {
        Self::wrap(r).0
    }

    /// Split `r·π` as `angle + 2π·k`, returning `(angle, k)`.
    pub fn wrap(r: Rational) -> (Self, i64) {
        let two_d = 2 * r.denom();
        let (k, rem) = r.numer().div_mod_floor(&two_d);
        (Self(Rational::new(rem, *r.denom())), k)
    }

    /// The multiple of π, in `[0, 2)`.
    pub fn pi_multiple(&self) -> Rational {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn radians(&self) -> f64 {
        PI * self.numer() as f64 / self.denom() as f64
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn neg(&self) -> Self {
        Self::from_turns_pi(-self.0)
    }

    /// Half of the angle, in `[0, π)`.
    pub fn half(&self) -> Self {
        Self(self.0 / Rational::from_integer(2))
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

/// Parse `"p/q"` or `"p"` as a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected \"p/q\", got {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for RationalAngle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Self::from_turns_pi(parse_rational(s)?))
    }
}
