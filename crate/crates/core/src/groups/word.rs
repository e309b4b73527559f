use std::fmt;
use std::ops::Mul;

/// A word in the generators of a finitely presented group, stored as
/// `(generator, exponent)` letters. Adjacent letters always have distinct
/// generators; exponents are nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn new<I: IntoIterator<Item = (usize, i64)>>(letters: I) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in letters {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == g => {
                    last.1 += e;
                    if last.1 == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Word { letters: out }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(g: usize) -> Self {
        Word { letters: vec![(g, 1)] }
    }

    pub fn power_of(g: usize, e: i64) -> Self {
        Word::new([(g, e)])
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Word::empty(), |acc, _| acc.concat(&base))
    }

    /// `self · other · self⁻¹`
    pub fn conjugate(&self, other: &Word) -> Self {
        self.concat(other).concat(&self.inverse())
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.0).max()
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.letters.iter().filter(|l| l.0 == g).map(|l| l.1).sum()
    }

    /// Replaces each generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        self.letters
            .iter()
            .fold(Word::empty(), |acc, &(g, e)| acc.concat(&images[g].pow(e)))
    }

    /// Deletes every letter whose generator satisfies `kill`, then renumbers the
    /// surviving generators through `renumber`.
    pub(crate) fn kill_and_renumber(&self, kill: impl Fn(usize) -> bool, renumber: &[usize]) -> Word {
        Word::new(
            self.letters
                .iter()
                .filter(|l| !kill(l.0))
                .map(|&(g, e)| (renumber[g], e)),
        )
    }

    /// Formats with the given generator names in the presentation text syntax.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        self.concat(&rhs)
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (n, &(g, e)) in self.word.letters.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            let name = self.names.get(g).map(String::as_str).unwrap_or("?");
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn merges_adjacent_letters() {
        let w = Word::new([(0, 1), (0, 2), (1, -1), (1, 1), (0, -3), (2, 1)]);
        // a a^2 b^-1 b a^-3 c -> a^3 a^-3 c -> c
        assert_eq!(w.letters(), &[(2, 1)]);
        assert_eq!(Word::new([(0, 0), (1, 2)]).letters(), &[(1, 2)]);
    }

    #[test]
    fn inverse_and_pow() {
        let w = Word::new([(0, 1), (1, -2)]);
        assert_eq!(w.inverse().letters(), &[(1, 2), (0, -1)]);
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!(w.pow(2).letters(), &[(0, 1), (1, -2), (0, 1), (1, -2)]);
        assert_eq!(w.pow(-1), w.inverse());
    }

    #[test]
    fn substitution() {
        // a -> b a, b -> a^-1
        let images = [Word::new([(1, 1), (0, 1)]), Word::power_of(0, -1)];
        let w = Word::new([(0, 1), (1, 2)]);
        assert_eq!(w.substitute(&images).letters(), &[(1, 1), (0, -1)]);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..3, -3i64..=3), 0..12).prop_map(Word::new)
    }

    proptest! {
        #[test]
        fn normal_form_invariant(w in arb_word()) {
            for pair in w.letters().windows(2) {
                prop_assert_ne!(pair[0].0, pair[1].0);
            }
            prop_assert!(w.letters().iter().all(|l| l.1 != 0));
        }

        #[test]
        fn word_times_inverse_is_empty(w in arb_word()) {
            prop_assert!(w.concat(&w.inverse()).is_empty());
        }
    }
}
