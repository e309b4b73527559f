use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

use super::{h1_order, seifert_group};

/// A rational tangle `q/p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tangle {
    pub q: i64,
    pub p: u32,
}

impl Tangle {
    pub fn new(q: i64, p: u32) -> Self {
        Tangle { q, p }
    }

    fn check(self) -> Result<()> {
        if self.p < 2 {
            return Err(Error::BadTangle(format!("{self}: denominator must be at least 2")));
        }
        if self.q.unsigned_abs().gcd(&u64::from(self.p)) != 1 {
            return Err(Error::BadTangle(format!(
                "{self}: numerator and denominator are not coprime"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.q, self.p)
    }
}

impl FromStr for Tangle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (q, p) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::input(format!("tangle {s:?} is not of the form q/p")))?;
        let q: i64 = q
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("bad numerator in {s:?}")))?;
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("bad denominator in {s:?}")))?;
        // a negative denominator moves onto the numerator
        let (q, p) = if p < 0 { (-q, -p) } else { (q, p) };
        let p = u32::try_from(p).map_err(|_| Error::input(format!("denominator out of range in {s:?}")))?;
        Ok(Tangle { q, p })
    }
}

/// A Montesinos knot `K(q₁/p₁, …, qₙ/pₙ)` with the twist parameter folded
/// into the tangles. Only constructed through [`montesinos_validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MontesinosKnot {
    tangles: Vec<Tangle>,
}

impl MontesinosKnot {
    pub fn tangles(&self) -> &[Tangle] {
        &self.tangles
    }

    pub fn len(&self) -> usize {
        self.tangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tangles.is_empty()
    }

    pub fn orders(&self) -> Vec<u32> {
        self.tangles.iter().map(|t| t.p).collect()
    }

    /// `|H₁(Σ₂(K))|`, the knot determinant.
    pub fn determinant(&self) -> u128 {
        h1_order(&seifert_group(self))
    }

    /// Tangle structure checks only (no parity or homology checks).
    pub(crate) fn structural(tangles: Vec<Tangle>) -> Result<Self> {
        if tangles.is_empty() {
            return Err(Error::input("at least one tangle is required"));
        }
        for t in &tangles {
            t.check()?;
        }
        Ok(MontesinosKnot { tangles })
    }
}

impl fmt::Display for MontesinosKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tangles.iter().map(Tangle::to_string).collect();
        write!(f, "K({})", parts.join(","))
    }
}

/// Validates a tangle list as a Montesinos *knot*: well-formed tangles, at
/// most one even denominator, and an odd nonzero determinant.
pub fn montesinos_validate(tangles: &[Tangle]) -> Result<MontesinosKnot> {
    let knot = MontesinosKnot::structural(tangles.to_vec())?;
    let evens = tangles.iter().filter(|t| t.p % 2 == 0).count();
    if evens > 1 {
        return Err(Error::LinkNotKnot(format!("{evens} tangles have even denominator")));
    }
    let det = knot.determinant();
    if det == 0 || det % 2 == 0 {
        return Err(Error::LinkNotKnot(format!("double branched cover has |H1| = {det}")));
    }
    Ok(knot)
}

/// Parses `q1/p1,q2/p2,...`.
pub fn parse_tangles(s: &str) -> Result<Vec<Tangle>> {
    s.split(',').map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(q: i64, p: u32) -> Tangle {
        Tangle::new(q, p)
    }

    #[test]
    fn validation_examples() {
        let k = montesinos_validate(&[t(1, 3), t(1, 5), t(1, 7)]).unwrap();
        assert_eq!(k.len(), 3);
        assert_eq!(k.determinant(), 71);

        let link = montesinos_validate(&[t(1, 3), t(1, 5), t(1, 7), t(1, 9)]);
        assert!(matches!(link, Err(Error::LinkNotKnot(_))));

        let bad = montesinos_validate(&[t(2, 4), t(1, 3), t(1, 5)]);
        assert!(matches!(bad, Err(Error::BadTangle(_))));
    }

    #[test]
    fn two_even_denominators_is_a_link() {
        let r = montesinos_validate(&[t(1, 2), t(1, 4), t(1, 3)]);
        assert!(matches!(r, Err(Error::LinkNotKnot(_))));
    }

    #[test]
    fn small_denominator_rejected() {
        assert!(matches!(montesinos_validate(&[t(1, 1)]), Err(Error::BadTangle(_))));
        assert!(matches!(montesinos_validate(&[t(0, 3)]), Err(Error::BadTangle(_))));
    }

    #[test]
    fn parses_tangle_lists() {
        let ts = parse_tangles("1/3, -2/5,1/-7").unwrap();
        assert_eq!(ts, vec![t(1, 3), t(-2, 5), t(-1, 7)]);
        assert!(parse_tangles("1/3,x").is_err());
        assert!(parse_tangles("13").is_err());
    }
}
