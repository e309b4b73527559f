//! Exact slope calculus for splices of two torus knot exteriors.
//!
//! The exteriors `M₁`, `M₂` of `T(p₁,q₁)` and `T(p₂,q₂)` are glued so that
//! the meridian of each goes to the Seifert fibre slope `sᵢ = pᵢqᵢ` of the
//! other. The splice is an L-space when every slope outside the L-space
//! filling interval of `M₂` pulls back into the interval of `M₁`; this module
//! checks that with exact rational arithmetic only.

mod slope;

pub use slope::{ClosedInterval, ExtQ, IntervalQ, Slope};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Torus knot `T(p, q)` normalized to `gcd(p,q) = 1`, `|p| ≥ 2`, `q ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusKnotParams {
    p: i64,
    q: i64,
}

impl TorusKnotParams {
    /// Moves a negative `q` onto `p` (`T(p,q) = T(−p,−q)`) and validates.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        if p.unsigned_abs() < 2 || q < 2 {
            return Err(Error::input(format!("torus knot T({p},{q}) needs |p| >= 2 and q >= 2")));
        }
        if p.unsigned_abs().gcd(&q.unsigned_abs()) != 1 {
            return Err(Error::input(format!("torus knot T({p},{q}) needs gcd(p, q) = 1")));
        }
        Ok(TorusKnotParams { p, q })
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }

    /// Seifert fibre slope `pq`.
    pub fn seifert_slope(self) -> i64 {
        self.p * self.q
    }
}

impl fmt::Display for TorusKnotParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.p, self.q)
    }
}

/// Interior of the L-space filling slopes: `(pq−p−q, ∞)` for `p > 0`,
/// `(−∞, pq−p+q)` for `p < 0`.
pub fn lspace_interval(k: TorusKnotParams) -> IntervalQ {
    let s = k.seifert_slope();
    let (lo, hi) = if k.p > 0 {
        (ExtQ::int(s - k.p - k.q), ExtQ::PosInf)
    } else {
        (ExtQ::NegInf, ExtQ::int(s - k.p + k.q))
    };
    IntervalQ::new(lo, hi).expect("finite endpoint against an infinite one")
}

/// Integer 2×2 matrix acting on column vectors `(m, n)` in `(μ, λ)` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingMatrix {
    entries: [[BigInt; 2]; 2],
}

impl GluingMatrix {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        GluingMatrix {
            entries: [[a.into(), b.into()], [c.into(), d.into()]],
        }
    }

    pub fn identity() -> Self {
        GluingMatrix::new(1, 0, 0, 1)
    }

    pub fn entries(&self) -> &[[BigInt; 2]; 2] {
        &self.entries
    }

    pub fn determinant(&self) -> BigInt {
        let [[a, b], [c, d]] = &self.entries;
        a * d - b * c
    }

    /// Inverse over the integers; requires determinant `±1`.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.determinant();
        if det.abs() != BigInt::one() {
            return Err(Error::input(format!("determinant {det} is not a unit")));
        }
        let [[a, b], [c, d]] = &self.entries;
        Ok(GluingMatrix::new(d * &det, -(b * &det), -(c * &det), a * &det))
    }
}

impl fmt::Display for GluingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.entries;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// With `s₁ = p₁q₁`, `s₂ = p₂q₂`: `[[s₂, 1−s₁s₂], [1, −s₁]]`, so that
/// `h(μ₁) = μ₂^{s₂}λ₂` and `h(μ₁^{s₁}λ₁) = μ₂`.
pub fn gluing_matrix(k1: TorusKnotParams, k2: TorusKnotParams) -> GluingMatrix {
    let (s1, s2) = (BigInt::from(k1.seifert_slope()), BigInt::from(k2.seifert_slope()));
    GluingMatrix::new(s2.clone(), BigInt::one() - &s1 * &s2, 1, -s1)
}

/// Image of a slope under the matrix, reduced.
pub fn transform_slope(m: &GluingMatrix, s: &Slope) -> Slope {
    let [[a, b], [c, d]] = m.entries();
    let top = a * s.m() + b * s.n();
    let bottom = c * s.m() + d * s.n();
    Slope::new(top, bottom).expect("an invertible matrix never sends a slope to 0/0")
}

/// Pull-back `m/n = s₁ + 1/(a/b − s₂)` with `n = a − s₂b`,
/// `m = s₁(a − s₂b) + b`. The meridian `1/0` pulls back to `s₁`; the Seifert
/// slope `s₂` itself pulls back to `∞` and is flagged.
pub fn eq2_pullback(a_over_b: &Slope, s1: i64, s2: i64) -> Result<Slope> {
    if a_over_b.is_infinite() {
        return Ok(Slope::integer(s1));
    }
    let (a, b) = (a_over_b.m(), a_over_b.n());
    let n = a - BigInt::from(s2) * b;
    if n.is_zero() {
        return Err(Error::MapsToMeridian);
    }
    let m = BigInt::from(s1) * &n + b;
    Slope::new(m, n)
}

/// `x ↦ s₁ + 1/(x − s₂)` on finite `x ≠ s₂`.
fn pullback_map(x: &BigRational, s1: &BigRational, s2: &BigRational) -> BigRational {
    s1 + (x - s2).recip()
}

/// `(ℚ ∪ {∞}) ∖ L°(M₂)`: a closed ray from a finite endpoint out to infinity,
/// together with the point `∞ = 1/0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplementArc {
    /// `(−∞, c] ∪ {∞}`
    AtMost(BigRational),
    /// `[c, +∞) ∪ {∞}`
    AtLeast(BigRational),
}

impl ComplementArc {
    pub fn of(interval: &IntervalQ) -> Self {
        match (interval.lo(), interval.hi()) {
            (ExtQ::Finite(c), ExtQ::PosInf) => ComplementArc::AtMost(c.clone()),
            (ExtQ::NegInf, ExtQ::Finite(c)) => ComplementArc::AtLeast(c.clone()),
            _ => unreachable!("L-space intervals of torus knots have one finite endpoint"),
        }
    }

    pub fn endpoint(&self) -> &BigRational {
        match self {
            ComplementArc::AtMost(c) | ComplementArc::AtLeast(c) => c,
        }
    }

    pub fn contains(&self, s: &Slope) -> bool {
        match (s.to_rational(), self) {
            (None, _) => true,
            (Some(x), ComplementArc::AtMost(c)) => &x <= c,
            (Some(x), ComplementArc::AtLeast(c)) => &x >= c,
        }
    }
}

impl fmt::Display for ComplementArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplementArc::AtMost(c) => write!(f, "(-inf, {}] u {{1/0}}", slope::fmt_rational(c)),
            ComplementArc::AtLeast(c) => write!(f, "[{}, inf) u {{1/0}}", slope::fmt_rational(c)),
        }
    }
}

/// Sign case of `(p₁, p₂)`: 1 = (+,+), 2 = (+,−), 3 = (−,+), 4 = (−,−).
pub fn sign_case(k1: TorusKnotParams, k2: TorusKnotParams) -> u8 {
    match (k1.p > 0, k2.p > 0) {
        (true, true) => 1,
        (true, false) => 2,
        (false, true) => 3,
        (false, false) => 4,
    }
}

/// Exact record of the covering check for one splice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LSpaceCertificate {
    pub params: (TorusKnotParams, TorusKnotParams),
    pub case_tag: u8,
    pub gluing: GluingMatrix,
    pub interval_m1: IntervalQ,
    pub interval_m2: IntervalQ,
    pub complement: ComplementArc,
    pub image: ClosedInterval,
    pub containment: bool,
    pub spot_checks: usize,
    pub spot_check_failures: usize,
}

/// Maps the complement of `L°(M₂)` back through the gluing and checks that
/// it lands inside `L°(M₁)`. The pull-back map is decreasing on each side of
/// its pole `s₂`, which lies outside the complement, so the image of the arc
/// is the closed interval spanned by the images of its finite endpoint and of
/// `∞` (which is `s₁`). `spot_checks` random slopes of the complement are
/// also pulled back through the inverse matrix and checked individually.
pub fn verify_gluing_covers(
    k1: TorusKnotParams,
    k2: TorusKnotParams,
    spot_checks: usize,
    seed: u64,
) -> LSpaceCertificate {
    let (s1, s2) = (k1.seifert_slope(), k2.seifert_slope());
    let (s1q, s2q) = (
        BigRational::from_integer(s1.into()),
        BigRational::from_integer(s2.into()),
    );
    let interval_m1 = lspace_interval(k1);
    let interval_m2 = lspace_interval(k2);
    let complement = ComplementArc::of(&interval_m2);
    assert!(
        !complement.contains(&Slope::integer(s2)),
        "pole s2 = {s2} lies in the complement of the L-space interval"
    );

    let image = ClosedInterval::spanning(pullback_map(complement.endpoint(), &s1q, &s2q), s1q.clone());
    let mut containment = interval_m1.contains_closed(&image);

    let gluing = gluing_matrix(k1, k2);
    let inverse = gluing.inverse().expect("gluing matrices have determinant -1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..spot_checks {
        let x = random_complement_slope(&complement, &mut rng);
        let pulled = transform_slope(&inverse, &x);
        let ok = interval_m1.contains(&pulled)
            && pulled.to_rational().is_some_and(|r| image.contains(&r))
            && transform_slope(&gluing, &pulled) == x;
        if !ok {
            failures += 1;
        }
    }
    if failures > 0 {
        containment = false;
    }

    LSpaceCertificate {
        params: (k1, k2),
        case_tag: sign_case(k1, k2),
        gluing,
        interval_m1,
        interval_m2,
        complement,
        image,
        containment,
        spot_checks,
        spot_check_failures: failures,
    }
}

/// A random slope of the complement arc: usually `c ∓ u/v` with small
/// random `u ≥ 0`, `v ≥ 1`, occasionally `∞` or a large value.
pub fn random_complement_slope(arc: &ComplementArc, rng: &mut impl Rng) -> Slope {
    if rng.random_ratio(1, 50) {
        return Slope::infinity();
    }
    let scale: i64 = if rng.random_ratio(1, 10) { 1_000_000 } else { 100 };
    let offset = BigRational::new(rng.random_range(0..=scale).into(), rng.random_range(1..=97i64).into());
    let x = match arc {
        ComplementArc::AtMost(c) => c - offset,
        ComplementArc::AtLeast(c) => c + offset,
    };
    Slope::from_rational(&x)
}

/// Everything known about a splice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceReport {
    pub certificate: LSpaceCertificate,
    pub l_space: bool,
    /// Only cyclic SU(2) representations; taken from the literature, not computed.
    pub su2_cyclic: bool,
    /// `s₁s₂ − 1` odd: the splice is the double branched cover of an alternating knot.
    pub alternating_dbc: bool,
    /// L-space and SU(2)-cyclic, an instance supporting the conjecture.
    pub conjecture_instance: bool,
}

pub fn classify_splice(k1: TorusKnotParams, k2: TorusKnotParams, spot_checks: usize, seed: u64) -> SpliceReport {
    let certificate = verify_gluing_covers(k1, k2, spot_checks, seed);
    let l_space = certificate.containment;
    let su2_cyclic = true;
    let product = BigInt::from(k1.seifert_slope()) * BigInt::from(k2.seifert_slope()) - BigInt::one();
    SpliceReport {
        certificate,
        l_space,
        su2_cyclic,
        alternating_dbc: product.is_odd(),
        conjecture_instance: l_space && su2_cyclic,
    }
}

/// All normalized torus knots with `|p| ∈ [2, max]`, `q ∈ [2, max]`.
pub fn torus_knots_up_to(max: i64) -> Vec<TorusKnotParams> {
    let mut out = Vec::new();
    for p in (-max..=max).filter(|p| p.abs() >= 2) {
        for q in 2..=max {
            if let Ok(k) = TorusKnotParams::new(p, q) {
                out.push(k);
            }
        }
    }
    out
}
