//! Checking candidate endomorphisms of catalog groups and extracting the
//! invariants that separate their outer classes.

use serde::{Deserialize, Serialize};

use crate::catalog::{mod_n31_v, mod_s04, CatalogEntry};
use crate::consequence::{ConsequenceVerdict, Prover, Refuter};
use crate::error::{Error, Result};
use crate::freeaut::NontrivialityDetector;
use crate::homology::{find_assignment, n31_twist_classes, MatrixRefuter};
use crate::morphism::GeneratorMap;
use crate::presentation::Presentation;
use crate::word::{GenId, Word};

pub const DEFAULT_WINDOW: i64 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndomorphismSpec {
    pub entry: CatalogEntry,
    pub map: GeneratorMap,
}

impl EndomorphismSpec {
    pub fn new(entry: CatalogEntry, images: Vec<Word>) -> Result<Self> {
        let p = &entry.presentation;
        let map = GeneratorMap::new(p, p, images)?;
        Ok(EndomorphismSpec { entry, map })
    }

    pub fn from_named(entry: CatalogEntry, images: &[(&str, &str)]) -> Result<Self> {
        let p = &entry.presentation;
        let map = GeneratorMap::from_named(p, p, images)?;
        Ok(EndomorphismSpec { entry, map })
    }

    pub fn from_map_file(entry: CatalogEntry, text: &str) -> Result<Self> {
        let p = &entry.presentation;
        let map = GeneratorMap::parse_map_file(p, p, text)?;
        Ok(EndomorphismSpec { entry, map })
    }

    pub fn identity(entry: CatalogEntry) -> Self {
        let map = GeneratorMap::identity(&entry.presentation);
        EndomorphismSpec { entry, map }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.entry.presentation
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &EndomorphismSpec) -> Result<EndomorphismSpec> {
        if self.entry.name() != other.entry.name() {
            return Err(Error::InvalidPresentation(format!(
                "cannot compose maps of {} and {}",
                self.entry.name(),
                other.entry.name()
            )));
        }
        Ok(EndomorphismSpec { entry: self.entry.clone(), map: self.map.compose(&other.map) })
    }

    pub fn to_map_text(&self) -> String {
        self.map.to_text(self.presentation(), self.presentation())
    }
}

/// `V ↦ (A1 B)^{3m} V` on the V-form, fixing the twists.
pub fn phi(m: i64) -> EndomorphismSpec {
    let e = mod_n31_v();
    let p = e.presentation.clone();
    let a1b = p.parse_word("A1 B").unwrap();
    let mut images: Vec<Word> = (0..p.rank()).map(|g| Word::gen(g as GenId)).collect();
    let v = p.gen_id("V").unwrap() as usize;
    images[v] = a1b.pow(3 * m).multiply(&p.g("V"));
    EndomorphismSpec::new(e, images).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Overall {
    Certified,
    Refuted,
    Unknown,
}

impl Overall {
    pub fn label(&self) -> &'static str {
        match self {
            Overall::Certified => "CERTIFIED",
            Overall::Refuted => "REFUTED",
            Overall::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelatorCheck {
    pub relator: String,
    pub image: Word,
    pub verdict: ConsequenceVerdict,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EndomorphismCheck {
    pub per_relator: Vec<RelatorCheck>,
    pub overall: Overall,
}

/// Every relator image must be a consequence. `prover` must be built over
/// the spec's presentation; any refuters it carries take part.
pub fn check_endomorphism(e: &EndomorphismSpec, prover: &Prover, budget: usize) -> Result<EndomorphismCheck> {
    if prover.presentation() != e.presentation() {
        return Err(Error::InvalidPresentation("prover and spec use different presentations".into()));
    }
    let mut per_relator = Vec::new();
    for (i, r) in e.presentation().relators().iter().enumerate() {
        let image = e.map.apply(r);
        let verdict = prover.decide(&image, budget)?;
        per_relator.push(RelatorCheck { relator: e.entry.relator_labels[i].clone(), image, verdict });
    }
    let overall = if per_relator.iter().any(|c| c.verdict.is_refuted()) {
        Overall::Refuted
    } else if per_relator.iter().all(|c| c.verdict.is_certified()) {
        Overall::Certified
    } else {
        Overall::Unknown
    };
    Ok(EndomorphismCheck { per_relator, overall })
}

/// Prover for the V-form carrying the mod-2 matrix refuter.
pub fn n31v_prover() -> Result<Prover> {
    let e = mod_n31_v();
    let p = &e.presentation;
    let mut prover = Prover::new(p);
    let assignment = find_assignment(p, &n31_twist_classes(), 3)?
        .ok_or_else(|| Error::RepresentationInvalid("no mod-2 assignment for the V-form".into()))?;
    prover.add_refuter(Box::new(MatrixRefuter::new(assignment, p)?));
    Ok(prover)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutInvariant {
    Odd { m: i64 },
    Even { n1: i64, n1p: i64, n2: i64, n2p: i64, w: Word },
}

impl OutInvariant {
    /// Invariant of a composition: exponents add, words concatenate.
    pub fn compose(&self, other: &OutInvariant) -> Result<OutInvariant> {
        match (self, other) {
            (OutInvariant::Odd { m: a }, OutInvariant::Odd { m: b }) => Ok(OutInvariant::Odd { m: a + b }),
            (
                OutInvariant::Even { n1, n1p, n2, n2p, w },
                OutInvariant::Even { n1: b1, n1p: b1p, n2: b2, n2p: b2p, w: bw },
            ) => Ok(OutInvariant::Even {
                n1: n1 + b1,
                n1p: n1p + b1p,
                n2: n2 + b2,
                n2p: n2p + b2p,
                w: w.multiply(bw),
            }),
            _ => Err(Error::OutOfRange("cannot compose odd and even invariants".into())),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OddExtraction {
    pub n: i64,
    pub m: i64,
    pub d: Word,
    /// Verdict for `D (C^n (A1 B)^{3m})^{-1}`.
    pub match_verdict: ConsequenceVerdict,
    /// Verdict for `V D V^-1 D`.
    pub inversion_verdict: ConsequenceVerdict,
}

impl OddExtraction {
    pub fn invariant(&self) -> OutInvariant {
        OutInvariant::Odd { m: self.m }
    }
}

/// For a certified spec fixing `A1, A3, B` with `E(V) = D V`, finds
/// `D = C^n (A1 B)^{3m}` in the window `|n|, |m| <= window`, checks
/// `V D V^-1 = D^-1`, and asserts `n = 0`.
pub fn extract_out_invariant(
    e: &EndomorphismSpec,
    prover: &Prover,
    budget: usize,
    window: i64,
) -> Result<OddExtraction> {
    let check = check_endomorphism(e, prover, budget)?;
    if check.overall != Overall::Certified {
        return Err(Error::NotCertified(format!("overall verdict {}", check.overall.label())));
    }
    let entry = &e.entry;
    let p = e.presentation();
    let v = p.gen_id("V").ok_or_else(|| Error::UnknownGenerator("V".into()))?;
    for name in ["A1", "A3", "B"] {
        let g = p.gen_id(name).ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        if e.map.image_of(g) != &Word::gen(g) {
            return Err(Error::OutOfRange(format!("spec does not fix {name}")));
        }
    }
    let vw = p.g("V");
    let d = e.map.image_of(v).multiply(&vw.inverse());
    if d.syllables().iter().any(|s| s.gen == v) {
        return Err(Error::NotInCanonicalForm(window));
    }
    let c = entry.word("C").expect("V-form defines C").clone();
    let a1b3 = p.parse_word("A1 B").unwrap().pow(3);
    let mut window_pairs: Vec<(i64, i64)> =
        (-window..=window).flat_map(|n| (-window..=window).map(move |m| (n, m))).collect();
    window_pairs.sort_by_key(|&(n, m)| (n.abs() + m.abs(), n.abs(), n, m));
    let target = |n: i64, m: i64| c.pow(n).multiply(&a1b3.pow(m));
    // literal matches first, then the bounded search
    let found = window_pairs.iter().copied().find(|&(n, m)| target(n, m) == d);
    let (n, m, match_verdict) = match found {
        Some((n, m)) => {
            let verdict = prover.decide(&d.multiply(&target(n, m).inverse()), budget)?;
            (n, m, verdict)
        }
        None => {
            let mut hit = None;
            for &(n, m) in &window_pairs {
                let verdict = prover.decide(&d.multiply(&target(n, m).inverse()), budget)?;
                if verdict.is_certified() {
                    hit = Some((n, m, verdict));
                    break;
                }
            }
            hit.ok_or(Error::NotInCanonicalForm(window))?
        }
    };
    let inversion_verdict = prover.decide(&vw.multiply(&d).multiply(&vw.inverse()).multiply(&d), budget)?;
    if !inversion_verdict.is_certified() {
        return Err(Error::NotCertified(format!("V D V^-1 D: {}", inversion_verdict.label())));
    }
    if n != 0 {
        return Err(Error::OutOfRange(format!("extracted C-exponent n = {n}, expected 0")));
    }
    Ok(OddExtraction { n, m, d, match_verdict, inversion_verdict })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonInnerReport {
    pub m: i64,
    pub detector_nontrivial: bool,
    pub c_commutes_with_v: ConsequenceVerdict,
    pub non_inner: bool,
}

/// `m ≠ 0`, `(A1 B)^{3m} ≠ 1` by the free-group detector, and
/// `C^-1 V C V^-1` certified trivial.
pub fn check_non_inner(e: &EndomorphismSpec, prover: &Prover, budget: usize) -> Result<NonInnerReport> {
    let ex = extract_out_invariant(e, prover, budget, DEFAULT_WINDOW)?;
    let p = e.presentation();
    let a1b3m = p.parse_word("A1 B").unwrap().pow(3 * ex.m);
    let detector_nontrivial = NontrivialityDetector::new()?.detects(&a1b3m)?;
    let c = e.entry.word("C").expect("V-form defines C");
    let vw = p.g("V");
    let w = c.inverse().multiply(&vw).multiply(c).multiply(&vw.inverse());
    let c_commutes_with_v = prover.decide(&w, budget)?;
    let non_inner = ex.m != 0 && detector_nontrivial && c_commutes_with_v.is_certified();
    Ok(NonInnerReport { m: ex.m, detector_nontrivial, c_commutes_with_v, non_inner })
}

/// Refutes words whose image in a free quotient is nontrivial. The
/// quotient keeps the listed generators and kills the rest; construction
/// checks that every relator dies.
pub struct FreeQuotientRefuter {
    keep: Vec<bool>,
}

impl FreeQuotientRefuter {
    pub fn new(p: &Presentation, keep: &[&str]) -> Result<Self> {
        let mut mask = vec![false; p.rank()];
        for k in keep {
            let g = p.gen_id(k).ok_or_else(|| Error::UnknownGenerator(k.to_string()))?;
            mask[g as usize] = true;
        }
        let r = FreeQuotientRefuter { keep: mask };
        for (i, rel) in p.relators().iter().enumerate() {
            if !r.project(rel).is_identity() {
                return Err(Error::RepresentationInvalid(format!("relator {i} survives the free quotient")));
            }
        }
        Ok(r)
    }

    pub fn project(&self, w: &Word) -> Word {
        Word::reduce(w.syllables().iter().copied().filter(|s| self.keep.get(s.gen as usize) == Some(&true)))
    }
}

impl Refuter for FreeQuotientRefuter {
    fn label(&self) -> String {
        "free-quotient".into()
    }

    fn refutes(&self, w: &Word) -> bool {
        !self.project(w).is_identity()
    }
}

/// Prover over the four-holed-sphere plumbing presentation with the
/// `F(B, C)` quotient as refuter.
pub fn s04_prover() -> Result<Prover> {
    let p = mod_s04().presentation;
    let mut prover = Prover::new(&p);
    prover.add_refuter(Box::new(FreeQuotientRefuter::new(&p, &["B", "C"])?));
    Ok(prover)
}

/// Packages the even-genus tuple; `w` is parsed over `B, C`.
pub fn extract_even_invariant(n1: i64, n1p: i64, n2: i64, n2p: i64, w: &str) -> Result<OutInvariant> {
    let p = mod_s04().presentation;
    let word = p.parse_word(w)?;
    let (b, c) = (p.gen_id("B").unwrap(), p.gen_id("C").unwrap());
    if word.syllables().iter().any(|s| s.gen != b && s.gen != c) {
        return Err(Error::OutOfRange(format!("`{w}` is not a word in B and C")));
    }
    Ok(OutInvariant::Even { n1, n1p, n2, n2p, w: word })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvenComparison {
    pub exponents_equal: bool,
    /// Verdict for `w_a w_b^-1` being trivial.
    pub words: ConsequenceVerdict,
}

impl EvenComparison {
    pub fn equal(&self) -> bool {
        self.exponents_equal && self.words.is_certified()
    }

    pub fn different(&self) -> bool {
        !self.exponents_equal || self.words.is_refuted()
    }
}

/// Compares two even invariants: exponents directly, words through the
/// consequence search in the four-holed-sphere presentation.
pub fn compare_even_invariants(a: &OutInvariant, b: &OutInvariant, budget: usize) -> Result<EvenComparison> {
    match (a, b) {
        (
            OutInvariant::Even { n1, n1p, n2, n2p, w },
            OutInvariant::Even { n1: b1, n1p: b1p, n2: b2, n2p: b2p, w: bw },
        ) => {
            let words = s04_prover()?.decide(&w.multiply(&bw.inverse()), budget)?;
            Ok(EvenComparison { exponents_equal: (n1, n1p, n2, n2p) == (b1, b1p, b2, b2p), words })
        }
        _ => Err(Error::OutOfRange("even invariants expected".into())),
    }
}
