//! Exact coefficient fields.
//!
//! Every algebraic object in the crate is generic over a [`Scalar`]. The
//! trait is implemented for `num_rational::Ratio<T>` over any signed machine
//! or big integer, so `Ratio<BigInt>` (the default [`crate::Rational`]) and
//! `Ratio<i128>` both work. Floating point types are deliberately excluded:
//! they are neither `Ord` nor `Hash`.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// An exact field of characteristic zero.
pub trait Scalar: Clone + Ord + Hash + Debug + Display + Send + Sync + 'static + Num + Signed + Zero + One {
    /// Embeds a machine integer.
    fn from_int(v: i64) -> Self;

    /// Returns the value as `i64` when it is an integer that fits.
    fn to_int(&self) -> Option<i64>;

    /// Parses the `p/q` (or `p`) form.
    fn parse_scalar(s: &str) -> Option<Self>;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + Hash
        + Debug
        + Display
        + ToPrimitive
        + From<i64>
        + std::str::FromStr
        + Send
        + Sync
        + 'static,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(T::from(v))
    }

    fn to_int(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn parse_scalar(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: T = p.trim().parse().ok()?;
                let q: T = q.trim().parse().ok()?;
                if q.is_zero() {
                    None
                } else {
                    Some(Ratio::new(p, q))
                }
            }
            None => Some(Ratio::from_integer(s.parse().ok()?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn parse_and_integer() {
        let x = Rational::parse_scalar("-6/4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(x.to_int(), None);
        assert_eq!(Rational::parse_scalar("7").unwrap().to_int(), Some(7));
        assert!(Rational::parse_scalar("1/0").is_none());
        let y: Ratio<i128> = Scalar::from_int(5);
        assert_eq!(y.inv(), Ratio::new(1, 5));
    }
}
