use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A slope `m/n` on a boundary torus: `gcd(|m|, |n|) = 1`, `n ≥ 0`, and
/// `∞ = 1/0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slope {
    m: BigInt,
    n: BigInt,
}

impl Slope {
    /// Reduces and sign-normalizes `m/n`. Fails only for `0/0`.
    pub fn new(m: impl Into<BigInt>, n: impl Into<BigInt>) -> Result<Self> {
        let (mut m, mut n) = (m.into(), n.into());
        if m.is_zero() && n.is_zero() {
            return Err(Error::input("0/0 is not a slope"));
        }
        let g = m.gcd(&n);
        m /= &g;
        n /= &g;
        if n.is_negative() || (n.is_zero() && m.is_negative()) {
            m = -m;
            n = -n;
        }
        Ok(Slope { m, n })
    }

    pub fn infinity() -> Self {
        Slope {
            m: BigInt::one(),
            n: BigInt::zero(),
        }
    }

    pub fn integer(m: impl Into<BigInt>) -> Self {
        Slope {
            m: m.into(),
            n: BigInt::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Slope::new(r.numer().clone(), r.denom().clone()).expect("denominator is nonzero")
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn is_infinite(&self) -> bool {
        self.n.is_zero()
    }

    /// The finite value, or `None` for `∞`.
    pub fn to_rational(&self) -> Option<BigRational> {
        (!self.is_infinite()).then(|| BigRational::new(self.m.clone(), self.n.clone()))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::input(format!("bad slope {s:?}"));
        match s.trim().split_once('/') {
            Some((m, n)) => Slope::new(
                m.trim().parse::<BigInt>().map_err(|_| bad())?,
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => Ok(Slope::integer(s.trim().parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

/// A point of the extended line `[−∞, +∞]`, used for interval endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtQ {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl ExtQ {
    pub fn int(v: i64) -> Self {
        ExtQ::Finite(BigRational::from_integer(v.into()))
    }

    fn rank(&self) -> u8 {
        match self {
            ExtQ::NegInf => 0,
            ExtQ::Finite(_) => 1,
            ExtQ::PosInf => 2,
        }
    }
}

impl PartialOrd for ExtQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtQ {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtQ::Finite(a), ExtQ::Finite(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl fmt::Display for ExtQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtQ::NegInf => write!(f, "-inf"),
            ExtQ::PosInf => write!(f, "inf"),
            ExtQ::Finite(r) => write!(f, "{}", fmt_rational(r)),
        }
    }
}

/// An open interval `(lo, hi)` of the extended line. The point `∞ = 1/0`
/// never belongs to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalQ {
    lo: ExtQ,
    hi: ExtQ,
}

impl IntervalQ {
    pub fn new(lo: ExtQ, hi: ExtQ) -> Result<Self> {
        if lo >= hi {
            return Err(Error::input(format!("empty interval ({lo}, {hi})")));
        }
        Ok(IntervalQ { lo, hi })
    }

    pub fn lo(&self) -> &ExtQ {
        &self.lo
    }

    pub fn hi(&self) -> &ExtQ {
        &self.hi
    }

    pub fn contains_rational(&self, x: &BigRational) -> bool {
        let x = ExtQ::Finite(x.clone());
        self.lo < x && x < self.hi
    }

    pub fn contains(&self, s: &Slope) -> bool {
        s.to_rational().is_some_and(|r| self.contains_rational(&r))
    }

    /// True when the closed interval `[lo, hi]` lies inside this open one.
    pub fn contains_closed(&self, closed: &ClosedInterval) -> bool {
        self.contains_rational(&closed.lo) && self.contains_rational(&closed.hi)
    }
}

impl fmt::Display for IntervalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// A bounded closed interval `[lo, hi]` of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl ClosedInterval {
    pub fn spanning(a: BigRational, b: BigRational) -> Self {
        if a <= b {
            ClosedInterval { lo: a, hi: b }
        } else {
            ClosedInterval { lo: b, hi: a }
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl fmt::Display for ClosedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_rational(&self.lo), fmt_rational(&self.hi))
    }
}
