//! Exact endpoint arithmetic.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An exact rational in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p` or `p/q`. Rejects zero denominators.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Formats as an integer when the denominator is one, else as `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// The rational with the smallest denominator strictly between `a < b`.
/// Repeated calls against a fixed right end grow denominators slowly,
/// unlike repeated midpoints.
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a < b);
    let fl = a.floor();
    let up = &fl + int(1);
    if &up < b {
        return up;
    }
    // Both ends in [fl, fl + 1]; recurse on reciprocals of the fractional parts.
    let (fa, fb) = (a - &fl, b - &fl);
    let inner = if fa.is_zero() { fb.recip().floor() + int(1) } else { simplest_between(&fb.recip(), &fa.recip()) };
    fl + inner.recip()
}

/// The real line closed off by two infinite points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    NegInf,
    Fin(Rational),
    PosInf,
}

impl ExtRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Fin(q) => Some(q),
            _ => None,
        }
    }

    pub fn neg(&self) -> ExtRational {
        match self {
            ExtRational::NegInf => ExtRational::PosInf,
            ExtRational::PosInf => ExtRational::NegInf,
            ExtRational::Fin(q) => ExtRational::Fin(-q),
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(q: Rational) -> Self {
        ExtRational::Fin(q)
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRational::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Fin(a), Fin(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::NegInf => write!(f, "-inf"),
            ExtRational::PosInf => write!(f, "+inf"),
            ExtRational::Fin(q) => write!(f, "{}", fmt_rational(q)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_between_is_inside_and_small() {
        assert_eq!(simplest_between(&frac(1, 3), &frac(1, 2)), frac(2, 5));
        assert_eq!(simplest_between(&int(2), &int(5)), int(3));
        assert_eq!(simplest_between(&int(-3), &frac(-5, 2)), frac(-8, 3));
        let mut x = int(0);
        for k in 2..200 {
            let y = simplest_between(&x, &int(1));
            assert!(x < y && y < int(1));
            assert_eq!(*y.denom(), BigInt::from(k));
            x = y;
        }
    }

    #[test]
    fn parse_and_format_round_trip() {
        assert_eq!(parse_rational("6/4"), Some(frac(3, 2)));
        assert_eq!(parse_rational("-7"), Some(int(-7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(fmt_rational(&frac(6, 4)), "3/2");
        assert_eq!(fmt_rational(&frac(-4, 2)), "-2");
        assert_eq!(fmt_rational(&frac(1, -2)), "-1/2");
    }

    #[test]
    fn ext_order() {
        let xs = [ExtRational::NegInf, ExtRational::Fin(int(-3)), ExtRational::Fin(frac(1, 2)), ExtRational::PosInf];
        for i in 0..xs.len() {
            for j in 0..xs.len() {
                assert_eq!(xs[i].cmp(&xs[j]), i.cmp(&j));
            }
        }
        assert_eq!(ExtRational::NegInf.neg(), ExtRational::PosInf);
    }
}
