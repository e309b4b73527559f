//! Finitely presented groups: orbifold and triangle groups, the involution
//! extension the witness representations live on, Seifert presentations of
//! double branched covers, two-bridge knot groups, and first homology.

mod homology;
mod montesinos;
mod presentation;
mod word;

pub use homology::{diagonalize, h1_order, h1_rank, relation_matrix};
pub use montesinos::{montesinos_validate, parse_tangles, MontesinosKnot, Tangle};
pub use presentation::{evaluate_word, max_relator_residual, GroupMap, Presentation};
pub use word::Word;

use num_integer::Integer;

use crate::error::{Error, Result};

fn check_orders(p: &[u32], min_len: usize) -> Result<()> {
    if p.len() < min_len {
        return Err(Error::input(format!(
            "need at least {min_len} cone orders, got {}",
            p.len()
        )));
    }
    if let Some(bad) = p.iter().find(|&&x| x < 2) {
        return Err(Error::input(format!("cone order {bad} is below 2")));
    }
    Ok(())
}

/// `a₁ a₂ ⋯ a_k` on generators `0..k`.
fn prefix_product(k: usize) -> Word {
    Word::new((0..k).map(|g| (g, 1)))
}

/// `Δ(p₁,…,pₙ) = ⟨a₁,…,aₙ | aᵢ^{pᵢ}, a₁a₂⋯aₙ⟩`.
pub fn orbifold_group(p: &[u32]) -> Result<Presentation> {
    check_orders(p, 3)?;
    let generators = (1..=p.len()).map(|i| format!("a{i}"));
    let mut relators: Vec<Word> = p
        .iter()
        .enumerate()
        .map(|(g, &o)| Word::power_of(g, o.into()))
        .collect();
    relators.push(prefix_product(p.len()));
    Ok(Presentation::from_parts(generators, relators))
}

/// Images of `a₁,…,aₙ` under the involution reversing every `bᵢ = a₁⋯aᵢ`:
/// `a₁ ↦ a₁⁻¹`, `aᵢ ↦ (a₁⋯aᵢ₋₁) aᵢ⁻¹ (a₁⋯aᵢ₋₁)⁻¹`, `aₙ ↦ aₙ⁻¹`.
pub fn tau_star_words(n: usize) -> Result<Vec<Word>> {
    if n < 3 {
        return Err(Error::input("the involution needs at least 3 cone points"));
    }
    Ok((0..n)
        .map(|i| {
            if i == 0 || i == n - 1 {
                Word::power_of(i, -1)
            } else {
                prefix_product(i).conjugate(&Word::power_of(i, -1))
            }
        })
        .collect())
}

/// The involution of `Δ(p₁,…,pₙ)` as a self-map.
pub fn tau_star_images(p: &[u32]) -> Result<GroupMap> {
    let delta = orbifold_group(p)?;
    let images = tau_star_words(p.len())?;
    GroupMap::new(delta.clone(), delta, images)
}

/// The quotient `Δ(p₁,…,pₙ) → Δ(p₁,p₂,p₃)` killing `a₄,…,aₙ`.
pub fn delta_quotient(p: &[u32]) -> Result<GroupMap> {
    let domain = orbifold_group(p)?;
    let codomain = orbifold_group(&p[..3])?;
    let images = (0..p.len())
        .map(|i| if i < 3 { Word::generator(i) } else { Word::empty() })
        .collect();
    GroupMap::new(domain, codomain, images)
}

/// Index of the extending generator `t` in [`pi_orbifold_extension`].
pub const EXTENSION_T: usize = 3;

/// `E(p₁,p₂,p₃) = ⟨a₁,a₂,a₃,t | aᵢ^{pᵢ}, a₁a₂a₃, t², t aᵢ t⁻¹ τ(aᵢ)⁻¹⟩`, the
/// extension of the triangle group by the involution `τ`.
pub fn pi_orbifold_extension(p1: u32, p2: u32, p3: u32) -> Result<Presentation> {
    let delta = orbifold_group(&[p1, p2, p3])?;
    let tau = tau_star_words(3)?;
    let t = Word::generator(EXTENSION_T);
    let mut relators = delta.relators().to_vec();
    relators.push(Word::power_of(EXTENSION_T, 2));
    for (i, image) in tau.iter().enumerate() {
        relators.push(t.conjugate(&Word::generator(i)).concat(&image.inverse()));
    }
    Ok(Presentation::from_parts(["a1", "a2", "a3", "t"], relators))
}

/// Seifert presentation of the double branched cover `Σ₂(K)`:
/// `⟨x₁,…,xₙ,h | [xᵢ,h], xᵢ^{pᵢ}h^{qᵢ}, x₁⋯xₙ⟩`, with `h` last.
pub fn seifert_group(k: &MontesinosKnot) -> Presentation {
    let n = k.len();
    let h = Word::generator(n);
    let mut generators: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    generators.push("h".into());
    let mut relators: Vec<Word> = (0..n)
        .map(|i| {
            let x = Word::generator(i);
            x.concat(&h).concat(&x.inverse()).concat(&h.inverse())
        })
        .collect();
    for (i, t) in k.tangles().iter().enumerate() {
        relators.push(Word::new([(i, i64::from(t.p)), (n, t.q)]));
    }
    relators.push(prefix_product(n));
    Presentation::from_parts(generators, relators)
}

fn check_two_bridge(p: u64, q: u64) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::input(format!(
            "two-bridge p must be odd and at least 3, got {p}"
        )));
    }
    if q == 0 || q >= p || p.gcd(&q) != 1 {
        return Err(Error::input(format!(
            "two-bridge q must satisfy 0 < q < p and gcd(p, q) = 1, got q = {q}"
        )));
    }
    Ok(())
}

/// Exponents `εᵢ = (−1)^{⌊iq/p⌋}` for `i = 1,…,p−1`.
pub fn two_bridge_signs(p: u64, q: u64) -> Result<Vec<i64>> {
    check_two_bridge(p, q)?;
    Ok((1..p)
        .map(|i| if (i * q / p).is_multiple_of(2) { 1 } else { -1 })
        .collect())
}

/// The word `w = a^{ε₁} b^{ε₂} a^{ε₃} ⋯` of the two-bridge normal form.
pub fn two_bridge_word(p: u64, q: u64) -> Result<Word> {
    let signs = two_bridge_signs(p, q)?;
    Ok(Word::new(signs.iter().enumerate().map(|(i, &e)| (i % 2, e))))
}

/// `⟨a, b | w a w⁻¹ b⁻¹⟩`.
pub fn two_bridge_group(p: u64, q: u64) -> Result<Presentation> {
    let w = two_bridge_word(p, q)?;
    let rel = w.conjugate(&Word::generator(0)).concat(&Word::power_of(1, -1));
    Ok(Presentation::from_parts(["a", "b"], vec![rel]))
}
