//! Witness construction for Montesinos knots with at least three tangles.
//!
//! An irreducible PSU(2) representation of the triangle group `Δ(p₁,p₂,p₃)`
//! is built from explicit rotations. The involution `τ` of the base orbifold
//! acts on it by a conjugation `X`, found as the nullspace of a linear system;
//! sending the meridian to `X` gives a trace-free representation of the
//! extension `E(p₁,p₂,p₃)` whose restriction to the triangle group is
//! irreducible, hence not binary dihedral.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_integer::Integer;

use crate::algebra::{
    axis_angle, char_triple, cross, from_axis_angle, irreducibility_margins, is_cyclic_image, is_irreducible_pair,
    norm3, SU2Element, DEFAULT_TOL,
};
use crate::error::{Error, Result};
use crate::groups::{
    delta_quotient, evaluate_word, max_relator_residual, pi_orbifold_extension, tau_star_images, MontesinosKnot,
};

/// Minimum distance of `|cos d|` from 1; keeps the axes off the reducible boundary.
pub const FEASIBILITY_MARGIN: f64 = 1e-9;

/// Singular values below this count towards the conjugator nullity.
pub const NULLSPACE_TOL: f64 = 1e-7;

/// Explicit irreducible representation of `Δ(p₁,p₂,p₃)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleRep {
    pub p: (u32, u32, u32),
    pub k: (u32, u32, u32),
    pub a1: SU2Element,
    pub a2: SU2Element,
    pub a3: SU2Element,
    /// Angle between the rotation axes of `a1` and `a2`.
    pub d: f64,
    /// Sign `s` with `tr(a1 a2) = 2s·cos(k₃π/p₃)`.
    pub lift_sign: i8,
}

impl TriangleRep {
    pub fn generators(&self) -> [SU2Element; 3] {
        [self.a1, self.a2, self.a3]
    }

    pub fn orders(&self) -> [u32; 3] {
        [self.p.0, self.p.1, self.p.2]
    }
}

fn try_selector(p: (u32, u32, u32), k: (u32, u32, u32)) -> Option<TriangleRep> {
    let half = |k: u32, p: u32| f64::from(k) * PI / f64::from(p);
    let (t1, t2, t3) = (half(k.0, p.0), half(k.1, p.1), half(k.2, p.2));
    let denom = t1.sin() * t2.sin();
    for s in [1i8, -1] {
        let cos_d = (t1.cos() * t2.cos() - f64::from(s) * t3.cos()) / denom;
        if cos_d.abs() > 1.0 - FEASIBILITY_MARGIN {
            continue;
        }
        let d = cos_d.acos();
        let a1 = from_axis_angle([0.0, 0.0, 1.0], 2.0 * t1).ok()?;
        let a2 = from_axis_angle([d.sin(), 0.0, d.cos()], 2.0 * t2).ok()?;
        let a3 = (a1 * a2).inverse();
        return Some(TriangleRep {
            p,
            k,
            a1,
            a2,
            a3,
            d,
            lift_sign: s,
        });
    }
    None
}

fn check_selector(p: (u32, u32, u32), k: (u32, u32, u32)) -> Result<()> {
    for (ki, pi) in [(k.0, p.0), (k.1, p.1), (k.2, p.2)] {
        if ki == 0 || ki >= pi || ki.gcd(&pi) != 1 {
            return Err(Error::input(format!("selector {ki} is not a unit modulo {pi}")));
        }
    }
    Ok(())
}

/// Angle selectors `(k₁,k₂,k₃)` with `1 ≤ kᵢ < pᵢ`, `gcd(kᵢ,pᵢ) = 1`, in
/// lexicographic order.
pub fn selectors(p: (u32, u32, u32)) -> impl Iterator<Item = (u32, u32, u32)> {
    let units = |n: u32| (1..n).filter(move |k| k.gcd(&n) == 1);
    units(p.0).flat_map(move |a| units(p.1).flat_map(move |b| units(p.2).map(move |c| (a, b, c))))
}

/// All feasible representations, one per selector that admits a lift sign.
pub fn all_triangle_reps(p1: u32, p2: u32, p3: u32) -> Vec<TriangleRep> {
    selectors((p1, p2, p3))
        .filter_map(|k| try_selector((p1, p2, p3), k))
        .collect()
}

/// Irreducible representation of `Δ(p₁,p₂,p₃)`: `a1` rotates by `2θ₁` about
/// z, `a2` by `2θ₂` about `(sin d, 0, cos d)`, and `a3 = (a1 a2)⁻¹`, where
/// `θᵢ = kᵢπ/pᵢ`. Without a selector the first feasible one is used.
pub fn triangle_rep(p1: u32, p2: u32, p3: u32, k_select: Option<(u32, u32, u32)>) -> Result<TriangleRep> {
    let p = (p1, p2, p3);
    if [p1, p2, p3].iter().any(|&x| x < 2) {
        return Err(Error::input("cone orders must be at least 2"));
    }
    match k_select {
        Some(k) => {
            check_selector(p, k)?;
            try_selector(p, k).ok_or(Error::Infeasible(k))
        }
        None => selectors(p)
            .find_map(|k| try_selector(p, k))
            .ok_or(Error::NoIrreducibleRep(p)),
    }
}

/// Result of [`conjugator_solver`].
#[derive(Debug, Clone, PartialEq)]
pub struct Conjugator {
    pub x: SU2Element,
    pub nullity: usize,
    /// Signs `εᵢ` with `X·currentᵢ = εᵢ·targetᵢ·X`.
    pub signs: Vec<i8>,
    /// `min(|X² − 1|, |X² + 1|)`.
    pub involution_residual: f64,
    /// `max |X currentᵢ X⁻¹ − εᵢ targetᵢ|`.
    pub residual: f64,
}

/// Matrix of `X ↦ q·X` on quaternion coordinates.
fn left_mul_matrix(q: SU2Element) -> [[f64; 4]; 4] {
    let (a, b, c, d) = (q.w, q.x, q.y, q.z);
    [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]
}

/// Matrix of `X ↦ X·q` on quaternion coordinates.
fn right_mul_matrix(q: SU2Element) -> [[f64; 4]; 4] {
    let (a, b, c, d) = (q.w, q.x, q.y, q.z);
    [[a, -b, -c, -d], [b, a, d, -c], [c, -d, a, b], [d, c, -b, a]]
}

/// Finds a unit quaternion `X` with `X·currentᵢ = εᵢ·targetᵢ·X` for some sign
/// vector `ε`, trying sign vectors in order (all `+` first). Each attempt is a
/// real nullspace computation on the stacked `4g × 4` system.
pub fn conjugator_solver(current: &[SU2Element], target: &[SU2Element]) -> Result<Conjugator> {
    let g = current.len();
    if g < 2 || target.len() != g {
        return Err(Error::input(
            "conjugator needs two equal-length lists of at least two elements",
        ));
    }
    for mask in 0u32..(1 << g) {
        let signs: Vec<i8> = (0..g).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        let mut m = DMatrix::<f64>::zeros(4 * g, 4);
        for i in 0..g {
            let r = right_mul_matrix(current[i]);
            let l = left_mul_matrix(target[i]);
            let e = f64::from(signs[i]);
            for row in 0..4 {
                for col in 0..4 {
                    m[(4 * i + row, col)] = r[row][col] - e * l[row][col];
                }
            }
        }
        let svd = m.svd(false, true);
        let v_t = svd
            .v_t
            .ok_or_else(|| Error::Numerical("SVD did not produce V".into()))?;
        let nullity = svd.singular_values.iter().filter(|&&s| s < NULLSPACE_TOL).count();
        if nullity == 0 {
            continue;
        }
        if nullity > 1 {
            return Err(Error::NonUnique(nullity));
        }
        let (idx, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("four singular values");
        let x = SU2Element::new(v_t[(idx, 0)], v_t[(idx, 1)], v_t[(idx, 2)], v_t[(idx, 3)]);
        let sq = x * x;
        let involution_residual = sq.projective_distance(SU2Element::IDENTITY);
        let residual = (0..g)
            .map(|i| {
                let t = if signs[i] < 0 { -target[i] } else { target[i] };
                current[i].conjugate_by(x).distance(t)
            })
            .fold(0.0, f64::max);
        return Ok(Conjugator {
            x,
            nullity,
            signs,
            involution_residual,
            residual,
        });
    }
    Err(Error::NotConjugate)
}

/// Images of the generators `a1, a2, a3, t` of `E(p₁,p₂,p₃)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedRep {
    pub images: [SU2Element; 4],
    pub conjugator: Conjugator,
    /// Largest projective deviation of an `E(p₁,p₂,p₃)` relator from the identity.
    pub residual: f64,
}

/// Tolerance for the relator and trace postconditions of [`extend_rep`].
pub const EXTENSION_TOL: f64 = 1e-10;

/// Extends a triangle representation to `E(p₁,p₂,p₃)` by sending `t` to the
/// conjugator taking `(A1, A2)` to `(A1⁻¹, A1 A2⁻¹ A1⁻¹)`.
pub fn extend_rep(tri: &TriangleRep) -> Result<ExtendedRep> {
    let current = [tri.a1, tri.a2];
    let target = [tri.a1.inverse(), tri.a1 * tri.a2.inverse() * tri.a1.inverse()];
    let conjugator = conjugator_solver(&current, &target)?;
    let images = [tri.a1, tri.a2, tri.a3, conjugator.x];
    let ext = pi_orbifold_extension(tri.p.0, tri.p.1, tri.p.2)?;
    let residual = max_relator_residual(&ext, &images, true)?;
    if residual > EXTENSION_TOL {
        return Err(Error::Numerical(format!("extension relator residual {residual:e}")));
    }
    if conjugator.x.trace().abs() > EXTENSION_TOL {
        return Err(Error::Numerical(format!(
            "meridian trace {:e} is not zero",
            conjugator.x.trace()
        )));
    }
    Ok(ExtendedRep {
        images,
        conjugator,
        residual,
    })
}

/// Machine-checked witness that a Montesinos knot is not SU(2)-simple.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessCertificate {
    pub knot: MontesinosKnot,
    pub determinant: u128,
    /// Cone orders of the triangle group quotient.
    pub p: (u32, u32, u32),
    pub k: (u32, u32, u32),
    pub lift_sign: i8,
    pub axis_separation: f64,
    /// Images of `a1, a2, a3, t`.
    pub generator_images: [SU2Element; 4],
    /// Worst relator or involution-compatibility deviation over `E(p₁,p₂,p₃)`
    /// and the pulled-back representation of `Δ(p₁,…,pₙ)`.
    pub residuals: f64,
    pub meridian_trace: f64,
    pub delta_image_cyclic: bool,
    /// `‖axis(A1) × axis(A2)‖`
    pub axis_cross: f64,
    pub conjugator_nullity: usize,
    pub conjugator_signs: Vec<i8>,
    /// `max |char_triple(A1,A2) − char_triple(A1⁻¹, A1A2⁻¹A1⁻¹)|`
    pub character_gap: f64,
}

/// Tolerances a certificate must meet.
pub const WITNESS_TOL: f64 = 1e-9;
pub const AXIS_CROSS_MARGIN: f64 = 0.01;

impl WitnessCertificate {
    /// Named checks with their margins, in a fixed order.
    pub fn checks(&self) -> Vec<(&'static str, bool, f64)> {
        vec![
            ("relator-residual", self.residuals < WITNESS_TOL, self.residuals),
            (
                "meridian-trace-zero",
                self.meridian_trace.abs() < WITNESS_TOL,
                self.meridian_trace.abs(),
            ),
            ("delta-image-not-cyclic", !self.delta_image_cyclic, self.axis_cross),
            (
                "axis-cross-margin",
                self.axis_cross > AXIS_CROSS_MARGIN,
                self.axis_cross,
            ),
            (
                "conjugator-unique",
                self.conjugator_nullity == 1,
                self.conjugator_nullity as f64,
            ),
            ("character-agreement", self.character_gap < 1e-12, self.character_gap),
        ]
    }

    pub fn is_valid(&self) -> bool {
        self.checks().iter().all(|c| c.1)
    }
}

/// Builds and checks the witness for `K`: kill `a₄,…,aₙ`, represent the
/// triangle group irreducibly, extend over the involution, and record the
/// checks.
pub fn witness_montesinos(knot: &MontesinosKnot, k_select: Option<(u32, u32, u32)>) -> Result<WitnessCertificate> {
    if knot.len() < 3 {
        return Err(Error::TwoBridgeRegime);
    }
    let orders = knot.orders();
    let tri = triangle_rep(orders[0], orders[1], orders[2], k_select)?;
    let ext = extend_rep(&tri)?;
    let [a1, a2, a3, x] = ext.images;

    // pull back along Δ(p₁,…,pₙ) → Δ(p₁,p₂,p₃) and check both the relators
    // and the involution compatibility X ρ(aᵢ) X⁻¹ = ρ(τ(aᵢ))
    let quotient = delta_quotient(&orders)?;
    let pulled = quotient.pull_back(&[a1, a2, a3])?;
    let mut residuals = ext.residual.max(max_relator_residual(&quotient.domain, &pulled, true)?);
    let tau = tau_star_images(&orders)?;
    for (i, image) in tau.images.iter().enumerate() {
        let lhs = pulled[i].conjugate_by(x);
        let rhs = evaluate_word(&pulled, image)?;
        residuals = residuals.max(lhs.projective_distance(rhs));
    }

    let (t1, t2, t3) = char_triple(a1, a2);
    let (u1, u2, u3) = char_triple(a1.inverse(), a1 * a2.inverse() * a1.inverse());
    let character_gap = (t1 - u1).abs().max((t2 - u2).abs()).max((t3 - u3).abs());

    let (axis_cross, _) = irreducibility_margins(a1, a2);
    debug_assert!(is_irreducible_pair(a1, a2, DEFAULT_TOL));

    Ok(WitnessCertificate {
        knot: knot.clone(),
        determinant: knot.determinant(),
        p: tri.p,
        k: tri.k,
        lift_sign: tri.lift_sign,
        axis_separation: tri.d,
        generator_images: ext.images,
        residuals,
        meridian_trace: x.trace(),
        delta_image_cyclic: is_cyclic_image(&[a1, a2, a3], DEFAULT_TOL),
        axis_cross,
        conjugator_nullity: ext.conjugator.nullity,
        conjugator_signs: ext.conjugator.signs,
        character_gap,
    })
}

/// Axis of the expected conjugator: the horizontal half-turn at angle
/// `(α₁ + π)/2`, where `α₁` is the rotation angle of `A1`.
pub fn expected_conjugator_axis(tri: &TriangleRep) -> [f64; 3] {
    let alpha1 = 2.0 * f64::from(tri.k.0) * PI / f64::from(tri.p.0);
    let psi = (alpha1 + PI) / 2.0;
    [psi.cos(), psi.sin(), 0.0]
}

/// `‖axis(X) × axis‖`, used to compare a conjugator with its closed form.
pub fn axis_deviation(x: SU2Element, axis: [f64; 3]) -> Result<f64> {
    let aa = axis_angle(x)?;
    Ok(norm3(cross(aa.axis, axis)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{tr2, PSU2Element};
    use crate::groups::{montesinos_validate, Tangle};

    fn knot(v: &[(i64, u32)]) -> MontesinosKnot {
        montesinos_validate(&v.iter().map(|&(q, p)| Tangle::new(q, p)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn triangle_235() {
        let tri = triangle_rep(2, 3, 5, Some((1, 1, 1))).unwrap();
        let expected = (PI / 5.0).cos() / (PI / 3.0).sin();
        assert!((expected - 0.934172).abs() < 1e-6);
        assert!((tri.d.cos() + expected).abs() < 1e-12, "cos d = {}", tri.d.cos());
        assert_eq!(tri.lift_sign, 1);
        assert!(tr2(PSU2Element::from(tri.a1)) < 1e-30);
    }

    #[test]
    fn triangle_357_feasible() {
        let tri = triangle_rep(3, 5, 7, Some((1, 1, 1))).unwrap();
        let (t1, t2, t3) = (PI / 3.0, PI / 5.0, PI / 7.0);
        let lhs = (t1.cos() * t2.cos() - f64::from(tri.lift_sign) * t3.cos()).abs();
        assert!(lhs <= t1.sin() * t2.sin());
        assert!(tri.d > 0.0 && tri.d < PI);
    }

    #[test]
    fn infeasible_selector() {
        assert_eq!(
            triangle_rep(7, 7, 2, Some((1, 1, 1))),
            Err(Error::Infeasible((1, 1, 1)))
        );
        assert!(matches!(
            triangle_rep(7, 7, 2, Some((7, 1, 1))),
            Err(Error::InvalidInput(_))
        ));
        // enumeration moves on to a feasible selector
        let tri = triangle_rep(7, 7, 2, None).unwrap();
        assert_ne!(tri.k, (1, 1, 1));
    }

    #[test]
    fn triangle_rep_invariants() {
        for p in [(2, 3, 5), (3, 5, 7), (2, 3, 7), (3, 3, 3), (2, 5, 9), (5, 7, 9)] {
            for tri in all_triangle_reps(p.0, p.1, p.2) {
                let prod = tri.a1 * tri.a2 * tri.a3;
                assert!(prod.projective_distance(SU2Element::IDENTITY) < 1e-12);
                assert!(is_irreducible_pair(tri.a1, tri.a2, DEFAULT_TOL));
                assert!(tri.d > 0.0 && tri.d < PI);
                for (g, order) in tri.generators().into_iter().zip(tri.orders()) {
                    assert!(g.pow(order.into()).projective_distance(SU2Element::IDENTITY) < 1e-9);
                    for m in 1..order {
                        assert!(g.pow(m.into()).projective_distance(SU2Element::IDENTITY) > 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn conjugator_self() {
        let (i, j) = (SU2Element::i(), SU2Element::j());
        let c = conjugator_solver(&[i, j], &[i, j]).unwrap();
        assert_eq!(c.nullity, 1);
        assert_eq!(c.signs, vec![1, 1]);
        assert!(c.x.projective_distance(SU2Element::IDENTITY) < 1e-12);
    }

    #[test]
    fn conjugator_not_conjugate() {
        let (i, j) = (SU2Element::i(), SU2Element::j());
        let r = from_axis_angle([0.0, 0.0, 1.0], 1.0).unwrap();
        assert_eq!(conjugator_solver(&[i, j], &[r, j]), Err(Error::NotConjugate));
    }

    #[test]
    fn conjugator_reducible_is_non_unique() {
        let a = from_axis_angle([1.0, 0.0, 0.0], 1.0).unwrap();
        let b = from_axis_angle([1.0, 0.0, 0.0], 2.0).unwrap();
        assert!(matches!(conjugator_solver(&[a, b], &[a, b]), Err(Error::NonUnique(2))));
    }

    #[test]
    fn conjugator_closed_form() {
        for p in [(2, 3, 5), (3, 5, 7), (2, 3, 7), (3, 5, 9)] {
            for tri in all_triangle_reps(p.0, p.1, p.2) {
                let ext = extend_rep(&tri).unwrap();
                let x = ext.conjugator.x;
                assert!(ext.conjugator.residual < 1e-10);
                assert!(x.w.abs() < 1e-10, "conjugator is a half-turn");
                assert!(axis_deviation(x, expected_conjugator_axis(&tri)).unwrap() < 1e-10);
            }
        }
        // Δ(2,3,5), k = (1,1,1): ψ = π, the x-axis
        let tri = triangle_rep(2, 3, 5, Some((1, 1, 1))).unwrap();
        let x = extend_rep(&tri).unwrap().conjugator.x;
        assert!(axis_deviation(x, [-1.0, 0.0, 0.0]).unwrap() < 1e-10);
    }

    #[test]
    fn extension_examples() {
        let tri = triangle_rep(2, 3, 5, None).unwrap();
        let ext = extend_rep(&tri).unwrap();
        assert!(ext.images[3].trace().abs() < 1e-12);
        let t_sq = ext.images[3] * ext.images[3];
        assert!(t_sq.distance(-SU2Element::IDENTITY) < 1e-12);

        let tri = triangle_rep(3, 5, 7, Some((1, 1, 1))).unwrap();
        assert!(extend_rep(&tri).unwrap().residual < 1e-10);
    }

    #[test]
    fn witness_pretzel() {
        let cert = witness_montesinos(&knot(&[(1, 3), (1, 5), (1, 7)]), None).unwrap();
        assert!(cert.is_valid(), "{:?}", cert.checks());
        assert_eq!(cert.determinant, 71);
        assert!(!cert.delta_image_cyclic);
        assert_eq!(cert.conjugator_nullity, 1);
    }

    #[test]
    fn witness_four_tangles() {
        let k = knot(&[(1, 3), (1, 5), (1, 7), (2, 9)]);
        assert_eq!(k.determinant(), 849);
        let cert = witness_montesinos(&k, None).unwrap();
        assert!(cert.is_valid(), "{:?}", cert.checks());
        assert_eq!(cert.p, (3, 5, 7));
    }

    #[test]
    fn witness_two_bridge_regime() {
        let k = knot(&[(1, 2), (1, 3)]);
        assert_eq!(witness_montesinos(&k, None), Err(Error::TwoBridgeRegime));
    }

    #[test]
    fn realness_of_short_words() {
        let cert = witness_montesinos(&knot(&[(1, 3), (1, 5), (1, 7)]), None).unwrap();
        let g = cert.generator_images;
        for a in g {
            for b in g {
                for c in g {
                    let v = tr2(PSU2Element::from(a * b * c));
                    assert!(v.is_finite() && (0.0..=4.0 + 1e-12).contains(&v));
                }
            }
        }
    }
}
