use std::fmt;

use crate::algebra::{product, SU2Element};
use crate::error::{Error, Result};

use super::Word;

/// A finite presentation `⟨generators | relators⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = generators.len();
        if let Some(bad) = relators.iter().find(|r| r.max_generator().is_some_and(|g| g >= n)) {
            return Err(Error::input(format!(
                "relator uses generator {} but only {n} generators exist",
                bad.max_generator().unwrap_or_default()
            )));
        }
        Ok(Presentation { generators, relators })
    }

    pub(crate) fn from_parts<S: Into<String>>(generators: impl IntoIterator<Item = S>, relators: Vec<Word>) -> Self {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        Presentation::new(generators, relators).expect("library presentations are well formed")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Sets the listed generators to 1, drops relators that become empty and
    /// renumbers the remaining generators in order.
    pub fn kill_generators(&self, kill: &[usize]) -> Presentation {
        let is_killed = |g: usize| kill.contains(&g);
        let mut renumber = vec![usize::MAX; self.generators.len()];
        let mut generators = Vec::new();
        for (g, name) in self.generators.iter().enumerate() {
            if !is_killed(g) {
                renumber[g] = generators.len();
                generators.push(name.clone());
            }
        }
        let relators = self
            .relators
            .iter()
            .map(|r| r.kill_and_renumber(is_killed, &renumber))
            .filter(|r| !r.is_empty())
            .collect();
        Presentation { generators, relators }
    }

    /// Parses the text format
    ///
    /// ```text
    /// gens: a b t
    /// rel: a^3 b^-1 t^2
    /// ```
    ///
    /// Letters are whitespace separated with an optional integer exponent;
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut generators: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            if let Some(rest) = line.strip_prefix("gens:") {
                if generators.is_some() {
                    return Err(err("duplicate gens line".into()));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if names.is_empty() {
                    return Err(err("no generators".into()));
                }
                for (k, name) in names.iter().enumerate() {
                    if name.contains('^') {
                        return Err(err(format!("bad generator name {name:?}")));
                    }
                    if names[..k].contains(name) {
                        return Err(err(format!("duplicate generator {name:?}")));
                    }
                }
                generators = Some(names);
            } else if let Some(rest) = line.strip_prefix("rel:") {
                let gens = generators.as_ref().ok_or_else(|| err("rel before gens".into()))?;
                let mut letters = Vec::new();
                for token in rest.split_whitespace() {
                    let (name, exp) = match token.split_once('^') {
                        Some((name, e)) => {
                            let e: i64 = e.parse().map_err(|_| err(format!("bad exponent in {token:?}")))?;
                            (name, e)
                        }
                        None => (token, 1),
                    };
                    let g = gens
                        .iter()
                        .position(|x| x == name)
                        .ok_or_else(|| err(format!("unknown generator {name:?}")))?;
                    letters.push((g, exp));
                }
                relators.push(Word::new(letters));
            } else {
                return Err(err(format!("expected 'gens:' or 'rel:', found {line:?}")));
            }
        }
        let generators = generators.ok_or(Error::Parse {
            line: 0,
            msg: "missing gens line".into(),
        })?;
        Presentation::new(generators, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" "))?;
        for r in &self.relators {
            if r.is_empty() {
                writeln!(f, "rel:")?;
            } else {
                writeln!(f, "rel: {}", r.display_with(&self.generators))?;
            }
        }
        Ok(())
    }
}

/// A homomorphism given by the image word of each domain generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupMap {
    pub domain: Presentation,
    pub codomain: Presentation,
    pub images: Vec<Word>,
}

impl GroupMap {
    pub fn new(domain: Presentation, codomain: Presentation, images: Vec<Word>) -> Result<Self> {
        if images.len() != domain.num_generators() {
            return Err(Error::input("one image word per domain generator is required"));
        }
        let n = codomain.num_generators();
        if images.iter().any(|w| w.max_generator().is_some_and(|g| g >= n)) {
            return Err(Error::input("image word uses a generator outside the codomain"));
        }
        Ok(GroupMap {
            domain,
            codomain,
            images,
        })
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupMap) -> GroupMap {
        GroupMap {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            images: self.images.iter().map(|w| other.apply(w)).collect(),
        }
    }

    /// Images of the domain relators.
    pub fn relator_images(&self) -> Vec<Word> {
        self.domain.relators().iter().map(|r| self.apply(r)).collect()
    }

    /// Pulls a codomain representation back to the domain.
    pub fn pull_back(&self, rep: &[SU2Element]) -> Result<Vec<SU2Element>> {
        self.images.iter().map(|w| evaluate_word(rep, w)).collect()
    }
}

/// Ordered product of generator images raised to their exponents.
pub fn evaluate_word(rep: &[SU2Element], w: &Word) -> Result<SU2Element> {
    if let Some(g) = w.max_generator().filter(|&g| g >= rep.len()) {
        return Err(Error::input(format!("generator {g} has no assigned image")));
    }
    let factors = w.letters().iter().flat_map(|&(g, e)| {
        let base = if e < 0 { rep[g].inverse() } else { rep[g] };
        std::iter::repeat_n(base, e.unsigned_abs() as usize)
    });
    Ok(product(factors))
}

/// Largest deviation of any relator image from `±1` (projective) or `+1` (strict).
pub fn max_relator_residual(p: &Presentation, rep: &[SU2Element], projective: bool) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for r in p.relators() {
        let g = evaluate_word(rep, r)?;
        let d = if projective {
            g.projective_distance(SU2Element::IDENTITY)
        } else {
            g.distance(SU2Element::IDENTITY)
        };
        worst = worst.max(d);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_examples() {
        let i = SU2Element::i();
        assert_eq!(evaluate_word(&[i], &Word::empty()).unwrap(), SU2Element::IDENTITY);
        let sq = evaluate_word(&[i], &Word::power_of(0, 2)).unwrap();
        assert!(sq.distance(-SU2Element::IDENTITY) < 1e-15);
        assert!(matches!(
            evaluate_word(&[i], &Word::generator(1)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn parse_and_print() {
        let text = "# a test\ngens: a b t\nrel: a^3 b^-1 t^2  # trailing\n\nrel: a b a^-1 b^-1\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.generators(), &["a", "b", "t"]);
        assert_eq!(p.relators()[0].letters(), &[(0, 3), (1, -1), (2, 2)]);
        assert_eq!(p.relators().len(), 2);
        let printed = p.to_string();
        assert_eq!(printed, "gens: a b t\nrel: a^3 b^-1 t^2\nrel: a b a^-1 b^-1\n");
        assert_eq!(Presentation::parse(&printed).unwrap(), p);
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "rel: a\n",
            "gens: a\nrel: b\n",
            "gens: a\nrel: a^x\n",
            "gens: a a\n",
            "gens:\n",
            "generators: a\n",
            "",
        ] {
            assert!(matches!(Presentation::parse(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn rejects_out_of_range_relator() {
        let r = Presentation::new(vec!["a".into()], vec![Word::generator(1)]);
        assert!(r.is_err());
    }
}
