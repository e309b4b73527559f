//! Trace-free characters of two-bridge knot groups and the SU(2)-simplicity
//! classification.
//!
//! Up to conjugation a trace-free representation of `⟨a, b | w a w⁻¹ b⁻¹⟩`
//! sends `a ↦ i` and `b ↦ cos t·i + sin t·j` with `t ∈ [0, π]`; the census
//! scans `t` and refines the roots of the relator.

use std::f64::consts::PI;

use crate::algebra::{is_binary_dihedral_image, is_cyclic_image, is_irreducible_pair, SU2Element, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::groups::{evaluate_word, two_bridge_group, two_bridge_word, MontesinosKnot, Presentation, Word};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceFreeCharacter {
    pub t: f64,
    pub trace_ab: f64,
    pub residual: f64,
}

impl TraceFreeCharacter {
    pub fn images(&self) -> [SU2Element; 2] {
        normal_form(self.t)
    }
}

/// `(ρ(a), ρ(b)) = (i, cos t·i + sin t·j)`.
pub fn normal_form(t: f64) -> [SU2Element; 2] {
    [SU2Element::i(), SU2Element::new(0.0, t.cos(), t.sin(), 0.0)]
}

/// Result of a census run, including sign changes that did not refine to a
/// genuine root.
#[derive(Debug, Clone, PartialEq)]
pub struct Census {
    pub characters: Vec<TraceFreeCharacter>,
    pub warnings: Vec<String>,
}

struct Relator {
    group: Presentation,
    w: Word,
}

impl Relator {
    fn new(p: u64, q: u64) -> Result<Self> {
        Ok(Relator {
            group: two_bridge_group(p, q)?,
            w: two_bridge_word(p, q)?,
        })
    }

    /// `‖ρ(w a w⁻¹ b⁻¹) − 1‖`
    fn residual(&self, t: f64) -> f64 {
        let rep = normal_form(t);
        evaluate_word(&rep, &self.group.relators()[0])
            .expect("two generators assigned")
            .distance(SU2Element::IDENTITY)
    }

    /// Component of the axis of `ρ(w) i ρ(w)⁻¹` orthogonal to the axis of
    /// `ρ(b)` within the equatorial plane. Vanishes at every root and changes
    /// sign across it.
    fn surrogate(&self, t: f64) -> f64 {
        let rep = normal_form(t);
        let w = evaluate_word(&rep, &self.w).expect("two generators assigned");
        let v = SU2Element::i().conjugate_by(w);
        -v.x * t.sin() + v.y * t.cos()
    }
}

/// Enumerates the irreducible trace-free characters of the two-bridge knot
/// group `(p, q)` on a midpoint grid of `grid` cells over `(0, π)`.
pub fn trace_free_census(p: u64, q: u64, grid: usize, tol: f64) -> Result<Census> {
    if grid < 256 {
        return Err(Error::input(format!("grid must be at least 256, got {grid}")));
    }
    if tol <= 0.0 {
        return Err(Error::input("tolerance must be positive"));
    }
    let rel = Relator::new(p, q)?;
    let ts: Vec<f64> = (0..grid).map(|i| PI * (i as f64 + 0.5) / grid as f64).collect();
    let hs: Vec<f64> = ts.iter().map(|&t| rel.surrogate(t)).collect();

    let mut characters: Vec<TraceFreeCharacter> = Vec::new();
    let mut warnings = Vec::new();
    let dedup = PI / (4.0 * grid as f64);
    for n in 0..grid - 1 {
        let (h0, h1) = (hs[n], hs[n + 1]);
        let root = if h0 == 0.0 {
            ts[n]
        } else if h0.signum() != h1.signum() && h1 != 0.0 {
            bisect(|t| rel.surrogate(t), ts[n], ts[n + 1], h0)
        } else {
            continue;
        };
        let residual = rel.residual(root);
        if residual >= tol {
            // the surrogate also vanishes where ρ(w) i ρ(w)⁻¹ = −ρ(b)
            if residual < 1e-3 {
                warnings.push(format!("near-root at t = {root:.15e} with residual {residual:.3e}"));
            }
            continue;
        }
        if characters.last().is_some_and(|c| (c.t - root).abs() < dedup) {
            continue;
        }
        let [a, b] = normal_form(root);
        characters.push(TraceFreeCharacter {
            t: root,
            trace_ab: (a * b).trace(),
            residual,
        });
    }
    Ok(Census { characters, warnings })
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Number of binary dihedral trace-free characters of a knot with odd
/// determinant `det`: `(det − 1)/2`.
pub fn expected_binary_dihedral_count(det: u128) -> Result<u128> {
    if det.is_multiple_of(2) {
        return Err(Error::input(format!("determinant {det} is not odd")));
    }
    Ok((det - 1) / 2)
}

/// Checks the census postconditions on one character.
pub fn character_structure(c: &TraceFreeCharacter) -> CharacterStructure {
    let [a, b] = c.images();
    let ab = a * b;
    // even-length words generate the index-two image, which must be cyclic
    let even = [ab, b * a, a * a, b * b, ab * ab];
    CharacterStructure {
        irreducible: is_irreducible_pair(a, b, DEFAULT_TOL),
        binary_dihedral: is_binary_dihedral_image(&[a, b], DEFAULT_TOL),
        even_part_cyclic: is_cyclic_image(&even, DEFAULT_TOL),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterStructure {
    pub irreducible: bool,
    pub binary_dihedral: bool,
    pub even_part_cyclic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnotKind {
    TwoBridge,
    MontesinosThreePlus,
    Other,
}

impl KnotKind {
    pub fn as_str(self) -> &'static str {
        match self {
            KnotKind::TwoBridge => "two-bridge",
            KnotKind::MontesinosThreePlus => "montesinos-n>=3",
            KnotKind::Other => "other",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Su2Simple,
    NotSu2Simple,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Su2Simple => "SU2-simple",
            Verdict::NotSu2Simple => "not-SU2-simple",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityReport {
    pub kind: KnotKind,
    pub verdict: Verdict,
    pub reason: String,
    pub determinant: u128,
}

/// Inputs accepted by [`classify_knot`].
#[derive(Debug, Clone, PartialEq)]
pub enum KnotInput {
    Montesinos(MontesinosKnot),
    TwoBridge {
        p: u64,
        q: u64,
    },
    /// A nontrivial knot known only through its determinant.
    Determinant(u128),
}

/// Applies, in order: Montesinos with three or more tangles is not
/// SU(2)-simple; Montesinos with at most two tangles, or two-bridge, is
/// SU(2)-simple; any nontrivial knot with determinant 1 is not SU(2)-simple.
pub fn classify_knot(input: &KnotInput) -> Result<SimplicityReport> {
    let report = match input {
        KnotInput::Montesinos(k) if k.len() >= 3 => SimplicityReport {
            kind: KnotKind::MontesinosThreePlus,
            verdict: Verdict::NotSu2Simple,
            reason: "Montesinos n≥3".into(),
            determinant: k.determinant(),
        },
        KnotInput::Montesinos(k) => SimplicityReport {
            kind: KnotKind::TwoBridge,
            verdict: Verdict::Su2Simple,
            reason: "two-bridge regime (fewer than three tangles)".into(),
            determinant: k.determinant(),
        },
        KnotInput::TwoBridge { p, q } => {
            two_bridge_group(*p, *q)?;
            SimplicityReport {
                kind: KnotKind::TwoBridge,
                verdict: Verdict::Su2Simple,
                reason: "two-bridge: double branched cover is a lens space".into(),
                determinant: u128::from(*p),
            }
        }
        KnotInput::Determinant(det) => {
            let (verdict, reason) = if *det == 1 {
                (
                    Verdict::NotSu2Simple,
                    "determinant 1: irreducible trace-free representation is not binary dihedral",
                )
            } else {
                (Verdict::Unknown, "no rule applies")
            };
            SimplicityReport {
                kind: KnotKind::Other,
                verdict,
                reason: reason.into(),
                determinant: *det,
            }
        }
    };
    Ok(report)
}
