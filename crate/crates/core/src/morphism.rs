//! Maps from the generators of one presentation to words of another.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMap {
    /// `images[g]` is the image of source generator `g`.
    images: Vec<Word>,
}

impl GeneratorMap {
    pub fn identity(p: &Presentation) -> Self {
        GeneratorMap { images: (0..p.rank()).map(|g| Word::gen(g as u16)).collect() }
    }

    pub fn new(source: &Presentation, target: &Presentation, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::DimensionMismatch { expected: source.rank(), got: images.len() });
        }
        for w in &images {
            target.check_word(w)?;
        }
        Ok(GeneratorMap { images })
    }

    /// Builds from `name -> word text`; every source generator needs
    /// exactly one entry.
    pub fn from_named<K: AsRef<str>, V: AsRef<str>>(
        source: &Presentation,
        target: &Presentation,
        entries: &[(K, V)],
    ) -> Result<Self> {
        let mut found: BTreeMap<usize, Word> = BTreeMap::new();
        for (k, v) in entries {
            let g = source.gen_id(k.as_ref()).ok_or_else(|| Error::UnknownGenerator(k.as_ref().to_string()))?;
            let w = target.parse_word(v.as_ref())?;
            if found.insert(g as usize, w).is_some() {
                return Err(Error::InvalidPresentation(format!("generator `{}` mapped twice", k.as_ref())));
            }
        }
        let images = (0..source.rank())
            .map(|g| found.remove(&g).ok_or_else(|| Error::MissingImage(source.generators()[g].clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratorMap { images })
    }

    /// Parses lines `GEN -> word`; blank lines and `#` comments are skipped.
    pub fn parse_map_file(source: &Presentation, target: &Presentation, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse { line: i + 1, msg: format!("expected `GEN -> word`, got `{line}`") })?;
            entries.push((k.trim().to_string(), v.trim().to_string()));
        }
        GeneratorMap::from_named(source, target, &entries)
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image_of(&self, g: u16) -> &Word {
        &self.images[g as usize]
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GeneratorMap) -> GeneratorMap {
        GeneratorMap { images: other.images.iter().map(|w| self.apply(w)).collect() }
    }

    pub fn to_text(&self, source: &Presentation, target: &Presentation) -> String {
        source
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, w)| format!("{g} -> {}\n", target.show(w)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_file_round_trip() {
        let p = Presentation::from_strs("f", &["a", "b"], &[]).unwrap();
        let m = GeneratorMap::parse_map_file(&p, &p, "# swap\na -> b\nb -> a^-1\n").unwrap();
        assert_eq!(m.apply(&p.parse_word("a b").unwrap()), p.parse_word("b a^-1").unwrap());
        assert_eq!(GeneratorMap::parse_map_file(&p, &p, &m.to_text(&p, &p)).unwrap(), m);
        assert!(matches!(GeneratorMap::parse_map_file(&p, &p, "a -> b"), Err(Error::MissingImage(_))));
        assert!(GeneratorMap::parse_map_file(&p, &p, "a b").is_err());
    }
}
