//! Catalog of the presentations used throughout the crate.
//!
//! Relators are stored as printed in their `LHS = RHS` form, turned into
//! the single word `LHS · RHS⁻¹`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

pub const REDUNDANT_TAG: &str = "redundant";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub presentation: Presentation,
    pub provenance: String,
    /// Printed labels of the relators, in relator order.
    pub relator_labels: Vec<String>,
    /// Named words such as `C` or `W`.
    pub distinguished: Vec<(String, Word)>,
    /// `(relator index, tag)` annotations.
    pub tags: Vec<(usize, String)>,
}

impl CatalogEntry {
    fn build(
        name: &str,
        provenance: &str,
        generators: &[&str],
        relators: &[(&str, &str)],
        distinguished: &[(&str, &str)],
    ) -> Self {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let parse = |s: &str| Word::parse(s, &gens).expect("catalog word");
        let words = relators.iter().map(|(_, r)| parse(r)).collect();
        let presentation = Presentation::new(name, gens.clone(), words).expect("catalog presentation");
        let entry = CatalogEntry {
            presentation,
            provenance: provenance.to_string(),
            relator_labels: relators.iter().map(|(l, _)| l.to_string()).collect(),
            distinguished: distinguished.iter().map(|(n, w)| (n.to_string(), parse(w))).collect(),
            tags: Vec::new(),
        };
        debug_assert!(entry.distinguished.iter().all(|(_, w)| entry.presentation.check_word(w).is_ok()));
        entry
    }

    pub fn name(&self) -> &str {
        self.presentation.name()
    }

    pub fn word(&self, name: &str) -> Option<&Word> {
        self.distinguished.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }

    pub fn relator_index(&self, label: &str) -> Option<usize> {
        self.relator_labels.iter().position(|l| l == label)
    }

    pub fn is_tagged(&self, relator: usize, tag: &str) -> bool {
        self.tags.iter().any(|(i, t)| *i == relator && t == tag)
    }

    /// Presentation with the listed relators removed.
    pub fn without_relators(&self, drop: &[usize]) -> Result<Presentation> {
        let kept = self
            .presentation
            .relators()
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, r)| r.clone())
            .collect();
        self.presentation.with_relators(format!("{}-reduced", self.name()), kept)
    }
}

/// `Z/2 x Z/2` on generators `x`, `u`.
pub fn mod_n2() -> CatalogEntry {
    CatalogEntry::build(
        "n2",
        "Mod(N_2), the Klein bottle: Z/2 x Z/2",
        &["x", "u"],
        &[("x^2", "x^2"), ("u^2", "u^2"), ("(xu)^2", "x u x u")],
        &[],
    )
}

/// `<y, t | y t y⁻¹ = t⁻¹>`, the one-holed Klein bottle.
pub fn mod_n21() -> CatalogEntry {
    CatalogEntry::build(
        "n21",
        "Mod(N_{2,1}) = <y, t_a | y t_a y^-1 = t_a^-1>, t_b = y^2",
        &["y", "t"],
        &[("y t y^-1 = t^-1", "y t y^-1 t")],
        &[("t_a", "t"), ("t_b", "y^2")],
    )
}

const C_N31: &str = "A1^2 A3 B A1^2 A3 B A1^2 A3 B";
const C_INV_N31: &str = "B^-1 A3^-1 A1^-2 B^-1 A3^-1 A1^-2 B^-1 A3^-1 A1^-2";

/// `Mod(N_{3,1})` on twists `A1, A3, B` and the extra generator `U`.
pub fn mod_n31_u() -> CatalogEntry {
    let r5a = format!("A3 U A3 U {C_INV_N31}");
    let r5b = format!("U A3 U A3 {C_INV_N31}");
    CatalogEntry::build(
        "n31u",
        "Mod(N_{3,1}), generators A1 A3 B U",
        &["A1", "A3", "B", "U"],
        &[
            ("1", "A1 A3 A1^-1 A3^-1"),
            ("2a", "A1 B A1 B^-1 A1^-1 B^-1"),
            ("2b", "A3 B A3 B^-1 A3^-1 B^-1"),
            ("3", "U A1 U^-1 A1"),
            ("4", "U B U^-1 A3^-1 B A3"),
            ("5a", &r5a),
            ("5b", &r5b),
        ],
        &[("C", C_N31)],
    )
}

/// `Mod(N_{3,1})` after the substitution `V = A3 U`.
pub fn mod_n31_v() -> CatalogEntry {
    let r6 = format!("V^2 {C_INV_N31}");
    let mut e = CatalogEntry::build(
        "n31v",
        "Mod(N_{3,1}), generators A1 A3 B V with V = A3 U",
        &["A1", "A3", "B", "V"],
        &[
            ("1'", "A1 A3 A1^-1 A3^-1"),
            ("2'a", "A1 B A1 B^-1 A1^-1 B^-1"),
            ("2'b", "A3 B A3 B^-1 A3^-1 B^-1"),
            ("3'", "V A1 V^-1 A1"),
            ("4", "V B V^-1 B"),
            ("5'", "V^2 A3 V^-2 A3^-1"),
            ("6'", &r6),
        ],
        &[("C", C_N31), ("W", "V^-1 A3 V"), ("A1B", "A1 B")],
    );
    e.tags.push((5, REDUNDANT_TAG.to_string()));
    e
}

/// The 3-strand braid group; plumbing for centrality lemmas.
pub fn braid3() -> CatalogEntry {
    CatalogEntry::build(
        "braid3",
        "braid relation a b a = b a b",
        &["a", "b"],
        &[("aba=bab", "a b a b^-1 a^-1 b^-1")],
        &[("delta2", "a b a b a b")],
    )
}

/// `Mod(Σ_{0,4})`: interior twists `B`, `C` generate a free group, the
/// four boundary twists `D1..D4` are central.
pub fn mod_s04() -> CatalogEntry {
    let gens = ["B", "C", "D1", "D2", "D3", "D4"];
    let mut rels: Vec<(String, String)> = Vec::new();
    for i in 2..6 {
        for j in 0..i {
            let (a, b) = (gens[i], gens[j]);
            rels.push((format!("[{a},{b}]"), format!("{a} {b} {a}^-1 {b}^-1")));
        }
    }
    let rel_refs: Vec<(&str, &str)> = rels.iter().map(|(l, r)| (l.as_str(), r.as_str())).collect();
    CatalogEntry::build(
        "s04",
        "Mod(Sigma_{0,4}) = F(B, C) x Z^4 (boundary twists central)",
        &gens,
        &rel_refs,
        &[],
    )
}

/// Parametric relator `(U3 B)^2 = (A1')^k1 (A1'')^k2`; the exponents
/// are not fixed by the source, so the template stays symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorTemplate {
    pub generators: Vec<String>,
    pub text: String,
}

impl RelatorTemplate {
    pub fn instantiate(&self, k1: i32, k2: i32) -> Result<Word> {
        let lhs = Word::parse("U3 B U3 B", &self.generators)?;
        let rhs = Word::parse("A1'", &self.generators)?
            .pow(k1 as i64)
            .multiply(&Word::parse("A1''", &self.generators)?.pow(k2 as i64));
        Ok(lhs.multiply(&rhs.inverse()))
    }
}

pub fn n4_boundary_template() -> RelatorTemplate {
    RelatorTemplate {
        generators: ["U3", "B", "A1'", "A1''"].iter().map(|s| s.to_string()).collect(),
        text: "(U3 B)^2 = (A1')^k1 (A1'')^k2".to_string(),
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![mod_n2(), mod_n21(), mod_n31_u(), mod_n31_v(), braid3(), mod_s04()]
}

pub fn by_name(name: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.name() == name)
        .ok_or_else(|| Error::InvalidPresentation(format!("no catalog entry named `{name}`")))
}

/// Subgroup of a catalog group given by generating words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupSpec {
    pub ambient: CatalogEntry,
    pub generators: Vec<Word>,
}

impl SubgroupSpec {
    pub fn new(ambient: CatalogEntry, generators: Vec<Word>) -> Result<Self> {
        for w in &generators {
            ambient.presentation.check_word(w)?;
        }
        Ok(SubgroupSpec { ambient, generators })
    }

    /// `L = <A1, A3, B, W>` inside the V-form of `Mod(N_{3,1})`.
    pub fn twist_subgroup_l() -> Self {
        let e = mod_n31_v();
        let p = &e.presentation;
        let gens = vec![p.g("A1"), p.g("A3"), p.g("B"), e.word("W").unwrap().clone()];
        SubgroupSpec { ambient: e, generators: gens }
    }
}
