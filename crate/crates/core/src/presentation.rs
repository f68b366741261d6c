//! Finite presentations and their line-oriented text format.
//!
//! ```text
//! generators: A1 A3 B V
//! relator: A1 A3 A1^-1 A3^-1
//! relator: V^2 A3 V^-2 A3^-1
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{GenId, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    name: String,
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Self> {
        let p = Presentation { name: name.into(), generators, relators };
        p.validate()?;
        Ok(p)
    }

    /// Builds a presentation from generator names and relator strings in
    /// word syntax.
    pub fn from_strs(name: &str, generators: &[&str], relators: &[&str]) -> Result<Self> {
        let generators: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let relators = relators
            .iter()
            .map(|r| Word::parse(r, &generators))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(name, generators, relators)
    }

    fn validate(&self) -> Result<()> {
        for (i, g) in self.generators.iter().enumerate() {
            if g.is_empty() || g.contains(char::is_whitespace) || g.contains('^') {
                return Err(Error::InvalidPresentation(format!("bad generator name `{g}`")));
            }
            if self.generators[..i].contains(g) {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{g}`")));
            }
        }
        for (i, r) in self.relators.iter().enumerate() {
            if r.is_identity() {
                return Err(Error::InvalidPresentation(format!("relator {i} is empty")));
            }
            self.check_word(r)?;
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn gen_id(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g == name).map(|i| i as GenId)
    }

    /// Generator word by name; panics on unknown names, so only use with
    /// names known to exist (catalog code, tests).
    pub fn g(&self, name: &str) -> Word {
        Word::gen(self.gen_id(name).unwrap_or_else(|| panic!("no generator {name}")))
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_gen() {
            Some(g) if g as usize >= self.rank() => Err(Error::GeneratorOutOfRange(g)),
            _ => Ok(()),
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.generators)
    }

    pub fn show(&self, w: &Word) -> String {
        w.display(&self.generators).to_string()
    }

    /// Same generators, different relator list.
    pub fn with_relators(&self, name: impl Into<String>, relators: Vec<Word>) -> Result<Self> {
        Presentation::new(name, self.generators.clone(), relators)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "generators: {}", self.generators.join(" "));
        for r in &self.relators {
            let _ = writeln!(out, "relator: {}", self.show(r));
        }
        out
    }

    pub fn from_text(name: &str, text: &str) -> Result<Self> {
        let mut generators: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or_else(|| Error::Parse {
                line: line_no,
                msg: format!("expected `key: value`, got `{line}`"),
            })?;
            match key.trim() {
                "generators" => {
                    if generators.is_some() {
                        return Err(Error::Parse { line: line_no, msg: "duplicate generators line".into() });
                    }
                    generators = Some(rest.split_whitespace().map(str::to_string).collect());
                }
                "relator" => {
                    let gens = generators.as_ref().ok_or_else(|| Error::Parse {
                        line: line_no,
                        msg: "relator before generators line".into(),
                    })?;
                    let w = Word::parse(rest, gens)
                        .map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?;
                    relators.push(w);
                }
                other => {
                    return Err(Error::Parse { line: line_no, msg: format!("unknown key `{other}`") })
                }
            }
        }
        let generators =
            generators.ok_or_else(|| Error::Parse { line: 0, msg: "missing generators line".into() })?;
        Presentation::new(name, generators, relators)
    }
}
