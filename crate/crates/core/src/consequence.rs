//! Bounded certification that a word lies in the normal closure of a
//! relator set, with refutation through abelianization and through
//! caller-supplied representations.
//!
//! The search works on cyclic words: a word is trivial iff any cyclic
//! conjugate is, so states are cyclically reduced and stored in their
//! shortlex-least rotation. A move picks a rotation of the state, a cyclic
//! conjugate `R` of some relator (or its inverse) sharing a nonempty prefix
//! with it, and replaces that prefix by the inverse of the rest of `R`.
//! States are expanded in shortlex order, so the search is deterministic
//! and complete up to the length cap. Each move is one insertion of a
//! conjugated relator, which is what the certificate records.

use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianImage, Abelianization};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{invert_codes, reduce_codes, Letter, Word};

pub const DEFAULT_LENGTH_CAP: usize = 64;

/// One insertion of `conjugator · r^{±1} · conjugator⁻¹` at `position`
/// (counted in unit letters of the current word).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertStep {
    pub position: usize,
    pub relator: usize,
    pub conjugator: Word,
    pub inverted: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub steps: Vec<CertStep>,
}

impl Certificate {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the insertions starting from the empty word.
    pub fn replay(&self, relators: &[Word]) -> Result<Word> {
        let mut cur: Vec<i32> = Vec::new();
        for (i, step) in self.steps.iter().enumerate() {
            let r = relators.get(step.relator).ok_or_else(|| {
                Error::OutOfRange(format!("step {i} names relator {}", step.relator))
            })?;
            if step.position > cur.len() {
                return Err(Error::OutOfRange(format!(
                    "step {i} inserts at {} into a word of length {}",
                    step.position,
                    cur.len()
                )));
            }
            let r = if step.inverted { r.inverse() } else { r.clone() };
            let piece = r.conjugate(&step.conjugator).codes();
            let mut next = Vec::with_capacity(cur.len() + piece.len());
            next.extend_from_slice(&cur[..step.position]);
            next.extend_from_slice(&piece);
            next.extend_from_slice(&cur[step.position..]);
            cur = reduce_codes(next);
        }
        Ok(Word::from_codes(&cur))
    }

    /// True iff replaying over `relators` yields exactly `w`.
    pub fn certifies(&self, w: &Word, relators: &[Word]) -> bool {
        matches!(self.replay(relators), Ok(ref r) if r == w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConsequenceVerdict {
    Certified(Certificate),
    RefutedByAbelianization(AbelianImage),
    RefutedByMatrixRep(String),
    Unknown { spent: usize },
}

impl ConsequenceVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, ConsequenceVerdict::Certified(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(
            self,
            ConsequenceVerdict::RefutedByAbelianization(_) | ConsequenceVerdict::RefutedByMatrixRep(_)
        )
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            ConsequenceVerdict::Certified(c) => Some(c),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ConsequenceVerdict::Certified(_) => "CERTIFIED",
            ConsequenceVerdict::RefutedByAbelianization(_) => "REFUTED_ABELIANIZATION",
            ConsequenceVerdict::RefutedByMatrixRep(_) => "REFUTED_MATRIX_REP",
            ConsequenceVerdict::Unknown { .. } => "UNKNOWN",
        }
    }
}

/// A homomorphism from the presented group into some concrete group.
/// `refutes(w)` must only return true when the image of `w` is not the
/// identity, and implementors must have checked that every relator maps
/// to the identity.
pub trait Refuter: Send + Sync {
    fn label(&self) -> String;
    fn refutes(&self, w: &Word) -> bool;
}

/// A certified consequence reused as an extra relator during search.
#[derive(Clone, Debug)]
pub struct Lemma {
    pub word: Word,
    pub certificate: Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Source {
    Relator(usize),
    Lemma(usize),
}

#[derive(Clone, Debug)]
struct Piece {
    codes: Vec<i32>,
    source: Source,
    inverted: bool,
    /// `codes = conj · r^{±1} · conj⁻¹` in the free group.
    conj: Vec<i32>,
}

#[derive(Clone, Debug)]
struct Node {
    word: Vec<i32>,
    parent: usize,
    rotation: usize,
    piece: usize,
    prefix: usize,
}

pub struct Prover {
    presentation: Presentation,
    abelian: Abelianization,
    lemmas: Vec<Lemma>,
    refuters: Vec<Box<dyn Refuter>>,
    length_cap: usize,
    pieces: Vec<Piece>,
    by_first: HashMap<i32, Vec<usize>>,
}

impl Prover {
    pub fn new(presentation: &Presentation) -> Self {
        let mut p = Prover {
            abelian: Abelianization::of(presentation),
            presentation: presentation.clone(),
            lemmas: Vec::new(),
            refuters: Vec::new(),
            length_cap: DEFAULT_LENGTH_CAP,
            pieces: Vec::new(),
            by_first: HashMap::new(),
        };
        p.rebuild_pieces();
        p
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn with_length_cap(mut self, cap: usize) -> Self {
        self.length_cap = cap;
        self
    }

    pub fn length_cap(&self) -> usize {
        self.length_cap
    }

    pub fn add_refuter(&mut self, r: Box<dyn Refuter>) {
        self.refuters.push(r);
    }

    pub fn lemmas(&self) -> &[Lemma] {
        &self.lemmas
    }

    /// Certifies `w` and, on success, makes it available as an extra
    /// relator for later searches.
    pub fn prove_lemma(&mut self, w: &Word, budget: usize) -> Result<ConsequenceVerdict> {
        let verdict = self.decide(w, budget)?;
        if let ConsequenceVerdict::Certified(cert) = &verdict {
            if !w.is_identity() {
                self.lemmas.push(Lemma { word: w.clone(), certificate: cert.clone() });
                self.rebuild_pieces();
            }
        }
        Ok(verdict)
    }

    pub fn abelian_image(&self, w: &Word) -> AbelianImage {
        self.abelian.image(w)
    }

    fn rebuild_pieces(&mut self) {
        let mut seen: HashMap<Vec<i32>, ()> = HashMap::new();
        let mut pieces = Vec::new();
        let sources = self
            .presentation
            .relators()
            .iter()
            .enumerate()
            .map(|(i, r)| (Source::Relator(i), r))
            .chain(self.lemmas.iter().enumerate().map(|(j, l)| (Source::Lemma(j), &l.word)));
        for (source, word) in sources {
            for inverted in [false, true] {
                let r = if inverted { word.inverse() } else { word.clone() };
                let (d, core) = cyclic_reduce(&r.codes());
                // core = d⁻¹ r d
                let d_inv = invert_codes(&d);
                for j in 0..core.len() {
                    let mut rot = core[j..].to_vec();
                    rot.extend_from_slice(&core[..j]);
                    if seen.insert(rot.clone(), ()).is_some() {
                        continue;
                    }
                    // rot = a⁻¹ core a with a = core[..j]
                    let a_inv = invert_codes(&core[..j]);
                    let conj = reduce_codes(a_inv.iter().chain(d_inv.iter()).copied());
                    pieces.push(Piece { codes: rot, source, inverted, conj });
                }
            }
        }
        let mut by_first: HashMap<i32, Vec<usize>> = HashMap::new();
        for (i, p) in pieces.iter().enumerate() {
            by_first.entry(p.codes[0]).or_default().push(i);
        }
        self.pieces = pieces;
        self.by_first = by_first;
    }

    /// Decides whether `w` is a consequence of the relators, within
    /// `budget` expanded search states.
    pub fn decide(&self, w: &Word, budget: usize) -> Result<ConsequenceVerdict> {
        if budget == 0 {
            return Err(Error::NonPositiveBudget);
        }
        self.presentation.check_word(w)?;
        let image = self.abelian.image(w);
        if !image.is_zero() {
            return Ok(ConsequenceVerdict::RefutedByAbelianization(image));
        }
        for r in &self.refuters {
            if r.refutes(w) {
                return Ok(ConsequenceVerdict::RefutedByMatrixRep(r.label()));
            }
        }
        Ok(match self.search(w, budget) {
            Ok(cert) => ConsequenceVerdict::Certified(cert),
            Err(spent) => ConsequenceVerdict::Unknown { spent },
        })
    }

    fn search(&self, w: &Word, budget: usize) -> std::result::Result<Certificate, usize> {
        let (d, core) = cyclic_reduce(&w.codes());
        let (a, start) = canonical_rotation(&core);
        let root_conj = reduce_codes(d.iter().chain(a.iter()).copied());
        if start.is_empty() {
            return Ok(Certificate::default());
        }
        let mut nodes = vec![Node { word: start.clone(), parent: usize::MAX, rotation: 0, piece: 0, prefix: 0 }];
        let mut index: HashMap<Vec<i32>, usize> = HashMap::new();
        index.insert(start.clone(), 0);
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((start.len(), keys(&start), 0usize)));
        let mut expanded = 0usize;

        while let Some(Reverse((_, _, id))) = heap.pop() {
            if expanded >= budget {
                return Err(expanded);
            }
            expanded += 1;
            let state = nodes[id].word.clone();
            let n = state.len();
            for rotation in 0..n {
                let first = state[rotation];
                let Some(cands) = self.by_first.get(&first) else { continue };
                for &pi in cands {
                    let piece = &self.pieces[pi];
                    let common = (0..piece.codes.len().min(n))
                        .take_while(|&i| piece.codes[i] == state[(rotation + i) % n])
                        .count();
                    for prefix in 1..=common {
                        let rest = &piece.codes[prefix..];
                        let raw = rest
                            .iter()
                            .rev()
                            .map(|c| -c)
                            .chain((prefix..n).map(|i| state[(rotation + i) % n]));
                        let (_, core) = cyclic_reduce(&reduce_codes(raw));
                        let (_, child) = canonical_rotation(&core);
                        if child.len() > self.length_cap {
                            continue;
                        }
                        let next_id = nodes.len();
                        match index.entry(child) {
                            Entry::Occupied(_) => continue,
                            Entry::Vacant(v) => {
                                let child = v.key().clone();
                                v.insert(next_id);
                                let done = child.is_empty();
                                heap.push(Reverse((child.len(), keys(&child), next_id)));
                                nodes.push(Node { word: child, parent: id, rotation, piece: pi, prefix });
                                if done {
                                    return Ok(self.reconstruct(w, &nodes, next_id, root_conj));
                                }
                            }
                        }
                    }
                }
            }
        }
        Err(expanded)
    }

    fn reconstruct(&self, w: &Word, nodes: &[Node], goal: usize, root_conj: Vec<i32>) -> Certificate {
        let mut path = vec![goal];
        while nodes[*path.last().unwrap()].parent != usize::MAX {
            path.push(nodes[*path.last().unwrap()].parent);
        }
        path.reverse();

        // w = (product of factors) · G s G⁻¹, maintained along the path.
        let mut factors: Vec<(Vec<i32>, Source, bool)> = Vec::new();
        let mut g = root_conj;
        for pair in path.windows(2) {
            let state = &nodes[pair[0]].word;
            let node = &nodes[pair[1]];
            let piece = &self.pieces[node.piece];
            let n = state.len();
            let c = &state[..node.rotation];
            let raw = piece.codes[node.prefix..]
                .iter()
                .rev()
                .map(|x| -x)
                .chain((node.prefix..n).map(|i| state[(node.rotation + i) % n]));
            let (d, core) = cyclic_reduce(&reduce_codes(raw));
            let (a, child) = canonical_rotation(&core);
            debug_assert_eq!(child, node.word);
            let conj = reduce_codes(g.iter().chain(c).chain(piece.conj.iter()).copied());
            factors.push((conj, piece.source, piece.inverted));
            g = reduce_codes(g.iter().chain(c).chain(d.iter()).chain(a.iter()).copied());
        }

        let mut raw_steps: Vec<(Word, usize, bool)> = Vec::new();
        for (conj, source, inverted) in factors {
            let conj = Word::from_codes(&conj);
            match source {
                Source::Relator(i) => raw_steps.push((conj, i, inverted)),
                Source::Lemma(j) => {
                    let steps = &self.lemmas[j].certificate.steps;
                    let lemma_factors = lemma_factors(steps, self.presentation.relators());
                    if inverted {
                        for (h, i, s) in lemma_factors.into_iter().rev() {
                            raw_steps.push((conj.multiply(&h), i, !s));
                        }
                    } else {
                        for (h, i, s) in lemma_factors {
                            raw_steps.push((conj.multiply(&h), i, s));
                        }
                    }
                }
            }
        }

        // Everything is appended on the right, so each position is the
        // current length of the partial product.
        let relators = self.presentation.relators();
        let mut cur = Word::identity();
        let mut steps = Vec::with_capacity(raw_steps.len());
        for (conj, relator, inverted) in raw_steps {
            let r = if inverted { relators[relator].inverse() } else { relators[relator].clone() };
            steps.push(CertStep { position: cur.len(), relator, conjugator: conj.clone(), inverted });
            cur = cur.multiply(&r.conjugate(&conj));
        }
        debug_assert_eq!(&cur, w);
        Certificate { steps }
    }
}

/// Rewrites a certificate as an ordered product of conjugated relators,
/// whatever insertion positions it used.
fn lemma_factors(steps: &[CertStep], relators: &[Word]) -> Vec<(Word, usize, bool)> {
    // Inserting x at position p of u = u1 u2 gives u1 x u2 = (u1 x u1⁻¹) u,
    // a left multiplication; collect those and reverse into a right product.
    let mut cur: Vec<i32> = Vec::new();
    let mut lefts: Vec<(Word, usize, bool)> = Vec::with_capacity(steps.len());
    for s in steps {
        let prefix = Word::from_codes(&cur[..s.position]);
        lefts.push((prefix.multiply(&s.conjugator), s.relator, s.inverted));
        let r = if s.inverted { relators[s.relator].inverse() } else { relators[s.relator].clone() };
        let piece = r.conjugate(&s.conjugator).codes();
        let raw: Vec<i32> =
            cur[..s.position].iter().chain(piece.iter()).chain(cur[s.position..].iter()).copied().collect();
        cur = reduce_codes(raw);
    }
    lefts.reverse();
    lefts
}

fn keys(w: &[i32]) -> Vec<u32> {
    w.iter().map(|&c| Letter::from_code(c).key()).collect()
}

/// Splits a reduced word as `d · core · d⁻¹` with `core` cyclically reduced.
fn cyclic_reduce(w: &[i32]) -> (Vec<i32>, Vec<i32>) {
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    (w[..lo].to_vec(), w[lo..hi].to_vec())
}

/// Returns `(a, t')` with `t = a · t' · a⁻¹` and `t'` the shortlex-least
/// rotation of the cyclically reduced word `t`.
fn canonical_rotation(t: &[i32]) -> (Vec<i32>, Vec<i32>) {
    if t.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let best = least_rotation(&keys(t));
    let mut rot = t[best..].to_vec();
    rot.extend_from_slice(&t[..best]);
    (t[..best].to_vec(), rot)
}

/// Booth's algorithm: start index of the lexicographically least rotation.
fn least_rotation(s: &[u32]) -> usize {
    let n = s.len();
    let mut f = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = s[j % n];
        let mut i = f[j - k - 1];
        while i != -1 && sj != s[(k + i as usize + 1) % n] {
            if sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != s[k % n] {
            if sj < s[k % n] {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

/// One-shot convenience wrapper around [`Prover`].
pub fn is_consequence(w: &Word, p: &Presentation, budget: usize) -> Result<ConsequenceVerdict> {
    Prover::new(p).decide(w, budget)
}
