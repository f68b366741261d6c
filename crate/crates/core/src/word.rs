//! Freely reduced words in a free group, stored as syllables `g^k`.
//!
//! Generators are small integer ids; print names live with the
//! [`Presentation`](crate::presentation::Presentation) that owns them.
//! Every `Word` is freely reduced: adjacent syllables never share a
//! generator and no syllable has exponent zero.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type GenId = u16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Syllable {
    pub gen: GenId,
    pub exp: i32,
}

impl Syllable {
    pub fn new(gen: GenId, exp: i32) -> Self {
        Syllable { gen, exp }
    }
}

/// A unit letter `g` or `g^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: GenId,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: GenId, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    /// Shortlex key: generator id first, positive before negative.
    pub fn key(self) -> u32 {
        2 * self.gen as u32 + self.inverse as u32
    }

    /// Nonzero signed code `±(gen + 1)`, used by the search internals.
    pub fn code(self) -> i32 {
        let g = self.gen as i32 + 1;
        if self.inverse {
            -g
        } else {
            g
        }
    }

    pub fn from_code(code: i32) -> Self {
        debug_assert!(code != 0);
        Letter { gen: (code.unsigned_abs() - 1) as GenId, inverse: code < 0 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word { syllables: Vec::new() }
    }

    pub fn gen(g: GenId) -> Self {
        Word { syllables: vec![Syllable::new(g, 1)] }
    }

    pub fn gen_pow(g: GenId, k: i32) -> Self {
        Word::reduce([Syllable::new(g, k)])
    }

    /// Freely reduces an arbitrary syllable sequence. Idempotent.
    pub fn reduce<I: IntoIterator<Item = Syllable>>(raw: I) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for s in raw {
            if s.exp == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.gen == s.gen => {
                    last.exp += s.exp;
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(s),
            }
        }
        Word { syllables: out }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Word::reduce(
            letters
                .into_iter()
                .map(|l| Syllable::new(l.gen, if l.inverse { -1 } else { 1 })),
        )
    }

    pub fn from_codes(codes: &[i32]) -> Self {
        Word::from_letters(codes.iter().map(|&c| Letter::from_code(c)))
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.syllables
            .iter()
            .flat_map(|s| std::iter::repeat_n(Letter::new(s.gen, s.exp < 0), s.exp.unsigned_abs() as usize))
    }

    pub fn codes(&self) -> Vec<i32> {
        self.letters().map(Letter::code).collect()
    }

    /// Length in unit letters.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn max_gen(&self) -> Option<GenId> {
        self.syllables.iter().map(|s| s.gen).max()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        Word::reduce(self.syllables.iter().chain(other.syllables.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|s| Syllable::new(s.gen, -s.exp)).collect(),
        }
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate(&self, g: &Word) -> Word {
        g.multiply(self).multiply(&g.inverse())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for s in &self.syllables {
            if let Some(slot) = v.get_mut(s.gen as usize) {
                *slot += s.exp as i64;
            }
        }
        v
    }

    /// Image under the homomorphism sending generator `g` to `images[g]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for s in &self.syllables {
            let img = &images[s.gen as usize];
            out = out.multiply(&img.pow(s.exp as i64));
        }
        out
    }

    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters().map(Letter::key).cmp(other.letters().map(Letter::key)))
    }

    /// Parses whitespace-separated `NAME` / `NAME^k` tokens.
    pub fn parse<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Word> {
        let mut raw = Vec::new();
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let k: i32 = e.parse().map_err(|_| Error::BadToken(tok.to_string()))?;
                    if k == 0 {
                        return Err(Error::BadToken(tok.to_string()));
                    }
                    (n, k)
                }
                None => (tok, 1),
            };
            let gen = names
                .iter()
                .position(|n| n.as_ref() == name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            raw.push(Syllable::new(gen as GenId, exp));
        }
        Ok(Word::reduce(raw))
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> WordDisplay<'a, S> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a, S> {
    word: &'a Word,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        for (i, s) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = self.names.get(s.gen as usize).map(|n| n.as_ref()).unwrap_or("?");
            if s.exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

/// Freely reduces a sequence of signed letter codes.
pub(crate) fn reduce_codes(raw: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for c in raw {
        if out.last() == Some(&-c) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out
}

pub(crate) fn invert_codes(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|c| -c).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: GenId = 0;
    const B: GenId = 1;

    #[test]
    fn reduce_cancels_and_merges() {
        let w = Word::reduce([Syllable::new(A, 1), Syllable::new(A, -1), Syllable::new(B, 1)]);
        assert_eq!(w, Word::gen(B));
        assert_eq!(Word::reduce([]), Word::identity());
        let w = Word::reduce([Syllable::new(A, 2), Syllable::new(A, 3)]);
        assert_eq!(w.syllables(), &[Syllable::new(A, 5)]);
    }

    #[test]
    fn reduce_cascades() {
        let w = Word::from_codes(&[1, 2, -2, -1, 2]);
        assert_eq!(w, Word::gen(B));
    }

    #[test]
    fn group_ops() {
        let a = Word::gen(A);
        assert!(a.multiply(&a.inverse()).is_identity());
        let ab = Word::from_codes(&[1, -2]);
        assert_eq!(ab.inverse(), Word::from_codes(&[2, -1]));
        let c = Word::gen(B).conjugate(&a);
        assert_eq!(c, Word::from_codes(&[1, 2, -1]));
    }

    #[test]
    fn parse_and_print() {
        let names = ["A1", "A3", "B", "V"];
        let w = Word::parse("A1 B^-1 V^2 V^-2 A3", &names).unwrap();
        assert_eq!(w.display(&names).to_string(), "A1 B^-1 A3");
        assert_eq!(Word::parse("", &names).unwrap(), Word::identity());
        assert!(matches!(Word::parse("Q", &names), Err(Error::UnknownGenerator(_))));
        assert!(matches!(Word::parse("A1^0", &names), Err(Error::BadToken(_))));
        assert!(matches!(Word::parse("A1^x", &names), Err(Error::BadToken(_))));
    }

    #[test]
    fn shortlex_orders_by_length_then_letters() {
        let a = Word::gen(A);
        let ai = a.inverse();
        let b = Word::gen(B);
        assert_eq!(a.shortlex_cmp(&ai), Ordering::Less);
        assert_eq!(ai.shortlex_cmp(&b), Ordering::Less);
        assert_eq!(b.shortlex_cmp(&Word::from_codes(&[1, 1])), Ordering::Less);
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let images = vec![Word::from_codes(&[1, 2]), Word::from_codes(&[-1])];
        let w = Word::from_codes(&[1, 2, -1]);
        let expected = Word::from_codes(&[1, 2, -1, -2, -1]);
        assert_eq!(w.substitute(&images), expected);
    }
}
