//! SU(2) as unit quaternions, the PSU(2) quotient, trace functions and the
//! structural tests (irreducibility, cyclic and binary dihedral images) used
//! throughout the crate.
//!
//! A quaternion `w + x i + y j + z k` of unit norm corresponds to the SU(2)
//! matrix with trace `2w`. Its image in PSU(2) ≅ SO(3) is the rotation by
//! `2·acos(w)` about the vector part.

use std::f64::consts::PI;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};

/// Default tolerance for the structural tests.
pub const DEFAULT_TOL: f64 = 1e-6;

/// Vector-part norm below which an element is treated as `±1`.
pub const CENTRAL_EPS: f64 = 1e-9;

/// Number of multiplications after which [`product`] renormalizes.
pub const RENORMALIZE_EVERY: usize = 16;

const CANONICAL_EPS: f64 = 1e-9;

pub type Vec3 = [f64; 3];

pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn norm3(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// A unit quaternion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU2Element {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SU2Element {
    pub const IDENTITY: SU2Element = SU2Element {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    /// Builds an element from raw coordinates, projecting onto the unit sphere.
    ///
    /// Panics if all four coordinates are zero.
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        SU2Element { w, x, y, z }.normalized()
    }

    pub fn i() -> Self {
        SU2Element {
            w: 0.0,
            x: 1.0,
            y: 0.0,
            z: 0.0,
        }
    }

    pub fn j() -> Self {
        SU2Element {
            w: 0.0,
            x: 0.0,
            y: 1.0,
            z: 0.0,
        }
    }

    pub fn k() -> Self {
        SU2Element {
            w: 0.0,
            x: 0.0,
            y: 0.0,
            z: 1.0,
        }
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn vector(self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    /// Matrix trace, `2w`.
    pub fn trace(self) -> f64 {
        2.0 * self.w
    }

    pub fn norm(self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        assert!(n > 0.0, "cannot normalize the zero quaternion");
        SU2Element {
            w: self.w / n,
            x: self.x / n,
            y: self.y / n,
            z: self.z / n,
        }
    }

    /// The inverse, which for unit quaternions is the conjugate.
    pub fn inverse(self) -> Self {
        SU2Element {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    pub fn pow(self, exp: i64) -> Self {
        let base = if exp < 0 { self.inverse() } else { self };
        product(std::iter::repeat_n(base, exp.unsigned_abs() as usize))
    }

    pub fn is_central(self) -> bool {
        norm3(self.vector()) < CENTRAL_EPS
    }

    /// Unit rotation axis, or `None` for `±1`.
    pub fn axis(self) -> Option<Vec3> {
        let v = self.vector();
        let n = norm3(v);
        (n >= CENTRAL_EPS).then(|| [v[0] / n, v[1] / n, v[2] / n])
    }

    /// Euclidean distance in R⁴.
    pub fn distance(self, other: Self) -> f64 {
        let d = [self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z];
        d.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Distance in PSU(2): the smaller of the distances to `other` and `-other`.
    pub fn projective_distance(self, other: Self) -> f64 {
        self.distance(other).min(self.distance(-other))
    }

    /// `g h g⁻¹`
    pub fn conjugate_by(self, g: Self) -> Self {
        g * self * g.inverse()
    }

    /// `g h g⁻¹ h⁻¹`
    pub fn commutator(self, h: Self) -> Self {
        self * h * self.inverse() * h.inverse()
    }

    /// Rotates a 3-vector by the SO(3) image of this element.
    pub fn rotate(self, v: Vec3) -> Vec3 {
        let p =
            self * SU2Element {
                w: 0.0,
                x: v[0],
                y: v[1],
                z: v[2],
            } * self.inverse();
        p.vector()
    }
}

impl Mul for SU2Element {
    type Output = SU2Element;

    fn mul(self, rhs: SU2Element) -> SU2Element {
        let (a, b, c, d) = (self.w, self.x, self.y, self.z);
        let (e, f, g, h) = (rhs.w, rhs.x, rhs.y, rhs.z);
        SU2Element {
            w: a * e - b * f - c * g - d * h,
            x: a * f + b * e + c * h - d * g,
            y: a * g - b * h + c * e + d * f,
            z: a * h + b * g - c * f + d * e,
        }
    }
}

impl Neg for SU2Element {
    type Output = SU2Element;

    fn neg(self) -> SU2Element {
        SU2Element {
            w: -self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

/// Ordered product of a sequence, renormalizing after every
/// [`RENORMALIZE_EVERY`] multiplications. The empty product is the identity.
pub fn product<I: IntoIterator<Item = SU2Element>>(factors: I) -> SU2Element {
    let mut acc = SU2Element::IDENTITY;
    for (n, f) in factors.into_iter().enumerate() {
        acc = acc * f;
        if (n + 1) % RENORMALIZE_EVERY == 0 {
            acc = acc.normalized();
        }
    }
    acc
}

/// Image of an element in PSU(2), stored through a canonical lift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PSU2Element {
    rep: SU2Element,
}

impl PSU2Element {
    /// The first coordinate of `(w, x, y, z)` with magnitude above `1e-9` is
    /// made positive.
    pub fn canonicalize(g: SU2Element) -> Self {
        let c = g.to_array();
        let flip = c.iter().find(|v| v.abs() > CANONICAL_EPS).is_some_and(|v| *v < 0.0);
        PSU2Element {
            rep: if flip { -g } else { g },
        }
    }

    pub fn rep(self) -> SU2Element {
        self.rep
    }

    pub fn tr2(self) -> f64 {
        tr2(self)
    }
}

impl From<SU2Element> for PSU2Element {
    fn from(g: SU2Element) -> Self {
        PSU2Element::canonicalize(g)
    }
}

/// `tr²` on PSU(2): the squared trace of either lift.
pub fn tr2(g: PSU2Element) -> f64 {
    let t = g.rep.trace();
    t * t
}

/// Axis and SO(3) rotation angle of a non-central element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle {
    pub axis: Vec3,
    pub angle: f64,
}

/// `cos(angle/2) + sin(angle/2)·(axis · (i, j, k))`.
pub fn from_axis_angle(axis: Vec3, angle: f64) -> Result<SU2Element> {
    let n = norm3(axis);
    if (n - 1.0).abs() > 1e-12 {
        return Err(Error::input(format!("axis has norm {n}, expected 1")));
    }
    let (s, c) = (angle / 2.0).sin_cos();
    Ok(SU2Element {
        w: c,
        x: s * axis[0],
        y: s * axis[1],
        z: s * axis[2],
    }
    .normalized())
}

/// Inverse of [`from_axis_angle`]; the angle lies in `(0, 2π)`.
pub fn axis_angle(g: SU2Element) -> Result<AxisAngle> {
    let axis = g.axis().ok_or(Error::Central)?;
    let s = norm3(g.vector());
    Ok(AxisAngle {
        axis,
        angle: 2.0 * s.atan2(g.w),
    })
}

/// `(tr A, tr B, tr AB)`, which determines the character of `⟨A, B⟩`.
pub fn char_triple(a: SU2Element, b: SU2Element) -> (f64, f64, f64) {
    (a.trace(), b.trace(), (a * b).trace())
}

/// Both measures used by [`is_irreducible_pair`]: the cross product of the
/// rotation axes (zero when either input is central) and `|tr[A,B] − 2|`.
pub fn irreducibility_margins(a: SU2Element, b: SU2Element) -> (f64, f64) {
    let axis_cross = match (a.axis(), b.axis()) {
        (Some(u), Some(v)) => norm3(cross(u, v)),
        _ => 0.0,
    };
    let comm = (a.commutator(b).trace() - 2.0).abs();
    (axis_cross, comm)
}

/// True when neither element is central and the axes are not parallel. The
/// commutator-trace test `|tr[A,B] − 2| > tol²` must agree.
pub fn is_irreducible_pair(a: SU2Element, b: SU2Element, tol: f64) -> bool {
    if a.is_central() || b.is_central() {
        return false;
    }
    let (axis_cross, comm) = irreducibility_margins(a, b);
    axis_cross > tol && comm > tol * tol
}

/// True when all non-central elements share one rotation axis up to sign.
pub fn is_cyclic_image(gens: &[SU2Element], tol: f64) -> bool {
    let axes: Vec<Vec3> = gens.iter().filter_map(|g| g.axis()).collect();
    axes.iter()
        .enumerate()
        .all(|(n, u)| axes[n + 1..].iter().all(|v| norm3(cross(*u, *v)) < tol))
}

/// True when some axis `n` exists such that every generator is central, a
/// rotation about `n`, or a half-turn about an axis perpendicular to `n`.
///
/// Candidate axes are the generator axes and the axes of pairwise products.
/// Images lying entirely on one axis are accepted as the degenerate case.
pub fn is_binary_dihedral_image(gens: &[SU2Element], tol: f64) -> bool {
    let mut candidates: Vec<Vec3> = gens.iter().filter_map(|g| g.axis()).collect();
    for (n, a) in gens.iter().enumerate() {
        for b in &gens[n + 1..] {
            candidates.extend((*a * *b).axis());
        }
    }
    if candidates.is_empty() {
        // every generator is ±1
        return true;
    }
    candidates.iter().any(|n| {
        gens.iter().all(|g| match g.axis() {
            None => true,
            Some(u) => norm3(cross(u, *n)) < tol || (g.w.abs() < tol && dot(u, *n).abs() < tol),
        })
    })
}

/// SO(3) rotation angle of `g` reduced to `[0, π]`, as the PSU(2) image sees it.
pub fn rotation_angle(g: SU2Element) -> f64 {
    let a = 2.0 * g.w.abs().min(1.0).acos();
    a.min(2.0 * PI - a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const X: Vec3 = [1.0, 0.0, 0.0];
    const Z: Vec3 = [0.0, 0.0, 1.0];

    fn close(a: SU2Element, b: SU2Element, eps: f64) -> bool {
        a.distance(b) < eps
    }

    fn arb_su2() -> impl Strategy<Value = SU2Element> {
        (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
            .prop_filter("nonzero", |(w, x, y, z)| w * w + x * x + y * y + z * z > 1e-3)
            .prop_map(|(w, x, y, z)| SU2Element::new(w, x, y, z))
    }

    #[test]
    fn axis_angle_constructor_examples() {
        let half_turn = from_axis_angle(Z, PI).unwrap();
        assert!(close(half_turn, SU2Element::k(), 1e-15));
        let zero = from_axis_angle(X, 0.0).unwrap();
        assert!(close(zero, SU2Element::IDENTITY, 1e-15));
        let third = from_axis_angle(Z, 2.0 * PI / 3.0).unwrap();
        assert!(close(third, SU2Element::new(0.5, 0.0, 0.0, 3f64.sqrt() / 2.0), 1e-15));
        assert!((third.trace() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn non_unit_axis_is_rejected() {
        assert!(matches!(
            from_axis_angle([1.0, 1.0, 0.0], 1.0),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn axis_angle_examples() {
        let aa = axis_angle(SU2Element::i()).unwrap();
        assert!(norm3(cross(aa.axis, X)) < 1e-15 && aa.axis[0] > 0.0);
        assert!((aa.angle - PI).abs() < 1e-15);

        let aa = axis_angle(SU2Element::new(0.5, 0.0, 0.0, 3f64.sqrt() / 2.0)).unwrap();
        assert!((aa.axis[2] - 1.0).abs() < 1e-15);
        assert!((aa.angle - 2.0 * PI / 3.0).abs() < 1e-15);

        assert_eq!(axis_angle(-SU2Element::IDENTITY), Err(Error::Central));
    }

    #[test]
    fn tr2_examples() {
        assert_eq!(tr2(SU2Element::IDENTITY.into()), 4.0);
        assert_eq!(tr2(SU2Element::new(0.0, 0.6, 0.0, 0.8).into()), 0.0);
    }

    #[test]
    fn canonical_representative() {
        let g = SU2Element::new(-0.3, 0.1, 0.5, -0.2);
        assert_eq!(PSU2Element::canonicalize(g), PSU2Element::canonicalize(-g));
        assert!(PSU2Element::canonicalize(g).rep().w > 0.0);
        // w ≈ 0: the sign is decided by x
        let h = SU2Element::new(0.0, -0.6, 0.8, 0.0);
        assert!(PSU2Element::canonicalize(h).rep().x > 0.0);
    }

    #[test]
    fn char_triple_examples() {
        let id = SU2Element::IDENTITY;
        assert_eq!(char_triple(id, id), (2.0, 2.0, 2.0));
        assert_eq!(char_triple(SU2Element::i(), SU2Element::j()), (0.0, 0.0, 0.0));
    }

    #[test]
    fn irreducible_pair_examples() {
        assert!(is_irreducible_pair(SU2Element::i(), SU2Element::j(), DEFAULT_TOL));
        let rx = from_axis_angle(X, 0.7).unwrap();
        assert!(!is_irreducible_pair(SU2Element::i(), rx, DEFAULT_TOL));
        assert!(!is_irreducible_pair(
            -SU2Element::IDENTITY,
            SU2Element::j(),
            DEFAULT_TOL
        ));
    }

    #[test]
    fn cyclic_image_examples() {
        let (i, j) = (SU2Element::i(), SU2Element::j());
        assert!(is_cyclic_image(&[i, -i, SU2Element::IDENTITY], DEFAULT_TOL));
        assert!(!is_cyclic_image(&[i, j], DEFAULT_TOL));
    }

    #[test]
    fn binary_dihedral_examples() {
        let (i, j) = (SU2Element::i(), SU2Element::j());
        assert!(is_binary_dihedral_image(&[i, j], DEFAULT_TOL));
        // i is a half-turn perpendicular to z, so with a rotation about z it
        // generates the binary dihedral group of order 12.
        let rz = SU2Element::new(0.5, 0.0, 0.0, 3f64.sqrt() / 2.0);
        assert!(is_binary_dihedral_image(&[i, rz], DEFAULT_TOL));
        // a third-turn about (1,1,1) together with i generates the binary
        // tetrahedral group
        let d = 1.0 / 3f64.sqrt();
        let tet = from_axis_angle([d, d, d], 2.0 * PI / 3.0).unwrap();
        assert!(!is_binary_dihedral_image(&[i, tet], DEFAULT_TOL));
        // trace-free pair in the two-bridge normal form
        let t = 0.9f64;
        let b = SU2Element::new(0.0, t.cos(), t.sin(), 0.0);
        assert!(is_binary_dihedral_image(&[i, b], DEFAULT_TOL));
    }

    #[test]
    fn pow_and_inverse() {
        let i = SU2Element::i();
        assert!(close(i.pow(2), -SU2Element::IDENTITY, 1e-15));
        assert!(close(i.pow(-1), -i, 1e-15));
        assert_eq!(i.pow(0), SU2Element::IDENTITY);
    }

    #[test]
    fn long_products_stay_unit() {
        let g = SU2Element::new(0.3, -0.2, 0.9, 0.1);
        let p = product(std::iter::repeat_n(g, 10_000));
        assert!((p.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn irreducibility_tests_agree_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut rand_unit = || {
            SU2Element::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            )
        };
        let tol = DEFAULT_TOL;
        let mut checked = 0;
        for _ in 0..10_000 {
            let (a, b) = (rand_unit(), rand_unit());
            let (axis_cross, comm) = irreducibility_margins(a, b);
            if (axis_cross - tol).abs() > 10.0 * tol && (comm - tol * tol).abs() > 10.0 * tol * tol {
                assert_eq!(axis_cross > tol, comm > tol * tol);
                checked += 1;
            }
        }
        assert!(checked > 9_000);
        // near-parallel pairs: both tests must flip together
        let a = from_axis_angle(X, 1.0).unwrap();
        let tilted = |e: f64| {
            let n = norm3([1.0, e, 0.0]);
            from_axis_angle([1.0 / n, e / n, 0.0], 2.0).unwrap()
        };
        assert!(!is_irreducible_pair(a, tilted(1e-9), tol));
        assert!(is_irreducible_pair(a, tilted(1e-3), tol));
    }

    proptest! {
        #[test]
        fn products_stay_unit(gs in prop::collection::vec(arb_su2(), 1..64)) {
            prop_assert!((product(gs).norm() - 1.0).abs() < 1e-10);
        }

        #[test]
        fn tr2_is_sign_independent(g in arb_su2()) {
            prop_assert_eq!(tr2(PSU2Element::canonicalize(g)), tr2(PSU2Element::canonicalize(-g)));
            prop_assert_eq!(PSU2Element::canonicalize(g), PSU2Element::canonicalize(-g));
        }

        #[test]
        fn char_triple_is_conjugation_invariant(a in arb_su2(), b in arb_su2(), g in arb_su2()) {
            let (t1, t2, t3) = char_triple(a, b);
            let (u1, u2, u3) = char_triple(a.conjugate_by(g), b.conjugate_by(g));
            prop_assert!((t1 - u1).abs() < 1e-12);
            prop_assert!((t2 - u2).abs() < 1e-12);
            prop_assert!((t3 - u3).abs() < 1e-12);
        }

        #[test]
        fn char_triple_matches_involution_images(a in arb_su2(), b in arb_su2()) {
            let (t1, t2, t3) = char_triple(a, b);
            let (u1, u2, u3) = char_triple(a.inverse(), a * b.inverse() * a.inverse());
            prop_assert!((t1 - u1).abs() < 1e-12);
            prop_assert!((t2 - u2).abs() < 1e-12);
            prop_assert!((t3 - u3).abs() < 1e-12);
        }

        #[test]
        fn axis_angle_round_trip(g in arb_su2()) {
            prop_assume!(!g.is_central());
            let aa = axis_angle(g).unwrap();
            prop_assert!(aa.angle > 0.0 && aa.angle < 2.0 * PI);
            let back = from_axis_angle(aa.axis, aa.angle).unwrap();
            prop_assert!(back.projective_distance(g) < 1e-10);
        }
    }
}
