//! Random-restart least-squares search for SU(2) representations of a finite
//! presentation, optionally with trace constraints. Independent of the
//! explicit constructions; used to cross-check them.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::algebra::{is_irreducible_pair, PSU2Element, SU2Element, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::groups::{evaluate_word, Presentation};

/// Finite-difference step for Jacobians and gradients.
pub const FD_STEP: f64 = 1e-7;

const MAX_ITERATIONS: usize = 400;
const KEY_DECIMALS: f64 = 1e6;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveProblem {
    pub presentation: Presentation,
    /// `(generator, target trace)`
    pub trace_constraints: Vec<(usize, f64)>,
    /// Relators may evaluate to `−1` as well as `+1` (PSU(2)-level problems).
    pub projective: bool,
    pub seed: u64,
    pub restarts: usize,
    pub tol: f64,
}

impl SolveProblem {
    pub fn new(presentation: Presentation) -> Self {
        SolveProblem {
            presentation,
            trace_constraints: Vec::new(),
            projective: false,
            seed: 0,
            restarts: 100,
            tol: 1e-10,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::input("restarts must be at least 1"));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::input("tol must be positive"));
        }
        let n = self.presentation.num_generators();
        if let Some((g, _)) = self.trace_constraints.iter().find(|(g, _)| *g >= n) {
            return Err(Error::input(format!("trace constraint on unknown generator {g}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub assignments: Vec<SU2Element>,
    pub residual: f64,
    /// Traces (squared traces in projective mode) of every generator and every
    /// pairwise product, rounded to six decimals.
    pub character_key: Vec<f64>,
}

impl SolveResult {
    /// True when some pair of generator images is irreducible.
    pub fn is_irreducible(&self) -> bool {
        is_irreducible_assignment(&self.assignments)
    }
}

pub fn is_irreducible_assignment(gens: &[SU2Element]) -> bool {
    gens.iter()
        .enumerate()
        .any(|(i, a)| gens[i + 1..].iter().any(|b| is_irreducible_pair(*a, *b, DEFAULT_TOL)))
}

fn round_key(v: f64) -> f64 {
    // adding 0.0 folds -0.0 into 0.0
    (v * KEY_DECIMALS).round() / KEY_DECIMALS + 0.0
}

/// Conjugation-invariant key: traces of generators and pairwise products,
/// squared in projective mode, rounded to six decimals.
pub fn character_key(gens: &[SU2Element], projective: bool) -> Vec<f64> {
    let f = |g: SU2Element| {
        if projective {
            PSU2Element::from(g).tr2()
        } else {
            g.trace()
        }
    };
    let mut key: Vec<f64> = gens.iter().map(|&g| f(g)).collect();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            key.push(f(a * b));
        }
    }
    key.into_iter().map(round_key).collect()
}

fn check_assignment(assign: &[SU2Element], problem: &SolveProblem) -> Result<()> {
    let n = problem.presentation.num_generators();
    if assign.len() != n {
        return Err(Error::input(format!(
            "assignment has {} images for {n} generators",
            assign.len()
        )));
    }
    Ok(())
}

/// Signs `±1` the relators are compared against: `+1` in strict mode, the
/// nearer of `±1` in projective mode.
fn relator_targets(assign: &[SU2Element], problem: &SolveProblem) -> Vec<f64> {
    problem
        .presentation
        .relators()
        .iter()
        .map(|r| {
            let v = evaluate_word(assign, r).expect("assignment checked");
            if problem.projective && v.w < 0.0 {
                -1.0
            } else {
                1.0
            }
        })
        .collect()
}

fn residual_vector(assign: &[SU2Element], problem: &SolveProblem, targets: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(4 * targets.len() + problem.trace_constraints.len());
    for (r, &s) in problem.presentation.relators().iter().zip(targets) {
        let v = evaluate_word(assign, r).expect("assignment checked");
        out.extend([v.w - s, v.x, v.y, v.z]);
    }
    for &(g, target) in &problem.trace_constraints {
        out.push(assign[g].trace() - target);
    }
    out
}

/// `sqrt(Σ_r min‖ρ(r) ∓ 1‖² + Σ (tr ρ(g) − target)²)`, where the minimum over
/// signs applies only in projective mode.
pub fn residual(assign: &[SU2Element], problem: &SolveProblem) -> Result<f64> {
    check_assignment(assign, problem)?;
    let targets = relator_targets(assign, problem);
    Ok(residual_vector(assign, problem, &targets)
        .iter()
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt())
}

/// `g ↦ g·exp(δ)` for a tangent vector `δ ∈ R³`.
fn perturb(g: SU2Element, delta: [f64; 3]) -> SU2Element {
    let a = (delta[0] * delta[0] + delta[1] * delta[1] + delta[2] * delta[2]).sqrt();
    if a == 0.0 {
        return g;
    }
    let s = a.sin() / a;
    (g * SU2Element {
        w: a.cos(),
        x: s * delta[0],
        y: s * delta[1],
        z: s * delta[2],
    })
    .normalized()
}

fn perturbed(assign: &[SU2Element], coord: usize, h: f64) -> Vec<SU2Element> {
    let mut out = assign.to_vec();
    let mut delta = [0.0; 3];
    delta[coord % 3] = h;
    out[coord / 3] = perturb(out[coord / 3], delta);
    out
}

/// Central-difference gradient of `residual²` in the tangent chart, three
/// coordinates per generator.
pub fn gradient(assign: &[SU2Element], problem: &SolveProblem, step: f64) -> Result<Vec<f64>> {
    check_assignment(assign, problem)?;
    let targets = relator_targets(assign, problem);
    let f = |a: &[SU2Element]| residual_vector(a, problem, &targets).iter().map(|v| v * v).sum::<f64>();
    Ok((0..3 * assign.len())
        .map(|c| (f(&perturbed(assign, c, step)) - f(&perturbed(assign, c, -step))) / (2.0 * step))
        .collect())
}

fn jacobian(assign: &[SU2Element], problem: &SolveProblem, targets: &[f64], rows: usize) -> DMatrix<f64> {
    let cols = 3 * assign.len();
    let mut j = DMatrix::zeros(rows, cols);
    for c in 0..cols {
        let plus = residual_vector(&perturbed(assign, c, FD_STEP), problem, targets);
        let minus = residual_vector(&perturbed(assign, c, -FD_STEP), problem, targets);
        for r in 0..rows {
            j[(r, c)] = (plus[r] - minus[r]) / (2.0 * FD_STEP);
        }
    }
    j
}

/// Damped Gauss–Newton descent in the tangent chart with finite-difference
/// Jacobians. Rejected steps double the damping, which halves the step
/// length; every accepted step is renormalized onto the sphere.
fn minimize(mut assign: Vec<SU2Element>, problem: &SolveProblem) -> (Vec<SU2Element>, f64) {
    let mut targets = relator_targets(&assign, problem);
    let mut r = residual_vector(&assign, problem, &targets);
    let mut cost: f64 = r.iter().map(|v| v * v).sum();
    let mut damping = 1e-3;
    let stop = (problem.tol * 1e-3).powi(2);
    for _ in 0..MAX_ITERATIONS {
        if cost < stop {
            break;
        }
        let j = jacobian(&assign, problem, &targets, r.len());
        let rv = DVector::from_vec(r.clone());
        let jt = j.transpose();
        let jtj = &jt * &j;
        let grad = &jt * &rv;
        let mut accepted = false;
        while damping < 1e12 {
            let mut lhs = jtj.clone();
            for d in 0..lhs.nrows() {
                lhs[(d, d)] += damping * (1.0 + jtj[(d, d)]);
            }
            let Some(step) = lhs.cholesky().map(|c| c.solve(&(-&grad))) else {
                damping *= 2.0;
                continue;
            };
            let candidate: Vec<SU2Element> = assign
                .iter()
                .enumerate()
                .map(|(g, &x)| perturb(x, [step[3 * g], step[3 * g + 1], step[3 * g + 2]]))
                .collect();
            let cand_targets = relator_targets(&candidate, problem);
            let cand_r = residual_vector(&candidate, problem, &cand_targets);
            let cand_cost: f64 = cand_r.iter().map(|v| v * v).sum();
            if cand_cost < cost {
                assign = candidate;
                targets = cand_targets;
                r = cand_r;
                cost = cand_cost;
                damping = (damping / 3.0).max(1e-15);
                accepted = true;
                break;
            }
            damping *= 2.0;
        }
        if !accepted {
            break;
        }
    }
    (assign, cost.sqrt())
}

fn random_unit(rng: &mut ChaCha8Rng) -> SU2Element {
    loop {
        let c: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let n = c.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 1e-6 {
            return SU2Element::new(c[0], c[1], c[2], c[3]);
        }
    }
}

/// Runs every restart from a start point drawn from the stream
/// `(seed, restart)`, keeps converged results and deduplicates them by
/// character key. Deterministic in `(problem, seed, restarts)`.
pub fn solve(problem: &SolveProblem) -> Result<Vec<SolveResult>> {
    problem.validate()?;
    let n = problem.presentation.num_generators();
    let mut found = Vec::new();
    for restart in 0..problem.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(problem.seed);
        rng.set_stream(restart as u64);
        let start: Vec<SU2Element> = (0..n).map(|_| random_unit(&mut rng)).collect();
        let (assign, _) = minimize(start, problem);
        let res = residual(&assign, problem)?;
        if res < problem.tol {
            let character_key = character_key(&assign, problem.projective);
            found.push(SolveResult {
                assignments: assign,
                residual: res,
                character_key,
            });
        }
    }
    Ok(dedupe_characters(found))
}

/// One representative per character key, ordered by residual then key.
pub fn dedupe_characters(mut results: Vec<SolveResult>) -> Vec<SolveResult> {
    results.sort_by(|a, b| {
        a.residual
            .total_cmp(&b.residual)
            .then_with(|| cmp_keys(&a.character_key, &b.character_key))
    });
    let mut out: Vec<SolveResult> = Vec::new();
    for r in results {
        if !out.iter().any(|o| o.character_key == r.character_key) {
            out.push(r);
        }
    }
    out
}

fn cmp_keys(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{pi_orbifold_extension, Word};

    fn cyclic(n: i64) -> Presentation {
        Presentation::new(vec!["a".into()], vec![Word::power_of(0, n)]).unwrap()
    }

    #[test]
    fn residual_examples() {
        let p = SolveProblem::new(cyclic(3));
        assert_eq!(residual(&[SU2Element::IDENTITY], &p).unwrap(), 0.0);
        // i³ = −i, and ‖−i − 1‖ = √2
        let r = residual(&[SU2Element::i()], &p).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15, "{r}");
        assert!(residual(&[], &p).is_err());
    }

    #[test]
    fn projective_residual_of_witness() {
        use crate::construct::{extend_rep, triangle_rep};
        let tri = triangle_rep(3, 5, 7, None).unwrap();
        let ext = extend_rep(&tri).unwrap();
        let mut p = SolveProblem::new(pi_orbifold_extension(3, 5, 7).unwrap());
        p.projective = true;
        assert!(residual(&ext.images, &p).unwrap() < 1e-10);
    }

    #[test]
    fn trivial_group_has_only_trivial_solution() {
        let p = SolveProblem {
            restarts: 20,
            ..SolveProblem::new(cyclic(1))
        };
        let out = solve(&p).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].character_key, vec![2.0]);
        assert!(out[0].residual < 1e-10);
    }

    #[test]
    fn gradient_agrees_with_coarser_differences() {
        let mut p = SolveProblem::new(pi_orbifold_extension(2, 3, 5).unwrap());
        p.trace_constraints = vec![(3, 0.0)];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let assign: Vec<SU2Element> = (0..4).map(|_| random_unit(&mut rng)).collect();
        let fine = gradient(&assign, &p, FD_STEP).unwrap();
        let coarse = gradient(&assign, &p, 1e-5).unwrap();
        let scale = coarse.iter().map(|v| v.abs()).fold(0.0, f64::max);
        for (a, b) in fine.iter().zip(&coarse) {
            assert!((a - b).abs() <= 1e-3 * scale, "{a} vs {b}");
        }
    }

    #[test]
    fn dedupe_keeps_best_per_key() {
        let mk = |res: f64, key: Vec<f64>| SolveResult {
            assignments: vec![],
            residual: res,
            character_key: key,
        };
        let out = dedupe_characters(vec![mk(3e-11, vec![2.0]), mk(1e-12, vec![2.0]), mk(2e-12, vec![0.5])]);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].residual, 1e-12);
        assert_eq!(out[1].character_key, vec![0.5]);
    }

    #[test]
    fn conjugated_copies_share_a_key() {
        let g = SU2Element::new(0.3, -0.4, 0.1, 0.8);
        let gens = [
            SU2Element::new(0.2, 0.5, -0.1, 0.3),
            SU2Element::new(-0.6, 0.1, 0.7, 0.2),
        ];
        let conj: Vec<SU2Element> = gens.iter().map(|x| x.conjugate_by(g)).collect();
        assert_eq!(character_key(&gens, false), character_key(&conj, false));
        let neg: Vec<SU2Element> = gens.iter().map(|&x| -x).collect();
        assert_eq!(character_key(&gens, true), character_key(&neg, true));
    }

    #[test]
    fn determinism() {
        let mut p = SolveProblem::new(crate::groups::two_bridge_group(3, 1).unwrap());
        p.trace_constraints = vec![(0, 0.0), (1, 0.0)];
        p.restarts = 30;
        p.seed = 42;
        assert_eq!(solve(&p).unwrap(), solve(&p).unwrap());
    }
}
