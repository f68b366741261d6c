//! A representation of `Mod(N_{3,1})` by automorphisms of the free group
//! `F_3 = π_1(N_{3,1})`, used as a sound nontriviality detector.
//!
//! Automorphisms are stored by the images of `x1, x2, x3` as signed letter
//! codes (`±1, ±2, ±3`). A word `g1 g2 ... gk` acts as `φ(g1) ∘ ... ∘ φ(gk)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{mod_n31_u, mod_n31_v};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{invert_codes, reduce_codes, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeAut {
    images: Vec<Vec<i32>>,
}

impl FreeAut {
    pub fn identity(rank: usize) -> Self {
        FreeAut { images: (1..=rank as i32).map(|i| vec![i]).collect() }
    }

    pub fn from_images(images: Vec<Vec<i32>>) -> Result<Self> {
        let rank = images.len() as i32;
        for img in &images {
            if img.iter().any(|&c| c == 0 || c.abs() > rank) {
                return Err(Error::RepresentationInvalid(format!("letter out of range in {img:?}")));
            }
        }
        Ok(FreeAut { images: images.into_iter().map(reduce_codes).collect() })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Vec<i32>] {
        &self.images
    }

    /// Image of a reduced word of the free group.
    pub fn apply(&self, w: &[i32]) -> Vec<i32> {
        reduce_codes(w.iter().flat_map(|&c| {
            let img = &self.images[c.unsigned_abs() as usize - 1];
            if c > 0 {
                img.clone()
            } else {
                invert_codes(img)
            }
        }))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeAut) -> FreeAut {
        FreeAut { images: other.images.iter().map(|img| self.apply(img)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, img)| img.as_slice() == [i as i32 + 1])
    }

    /// Total length of the images, a crude size measure.
    pub fn size(&self) -> usize {
        self.images.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for FreeAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &[i32]| -> String {
            if w.is_empty() {
                return "1".into();
            }
            w.iter()
                .map(|&c| if c > 0 { format!("x{c}") } else { format!("x{}^-1", -c) })
                .collect::<Vec<_>>()
                .join(" ")
        };
        let parts: Vec<String> =
            self.images.iter().enumerate().map(|(i, w)| format!("x{} -> {}", i + 1, show(w))).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Generator-wise images together with their inverses.
#[derive(Clone, Debug)]
pub struct FreeRep {
    generators: Vec<String>,
    forward: Vec<FreeAut>,
    backward: Vec<FreeAut>,
}

impl FreeRep {
    /// Checks that every stored inverse is an inverse and that every
    /// relator of `p` acts trivially.
    pub fn validated(p: &Presentation, forward: Vec<FreeAut>, backward: Vec<FreeAut>) -> Result<Self> {
        if forward.len() != p.rank() || backward.len() != p.rank() {
            return Err(Error::DimensionMismatch { expected: p.rank(), got: forward.len().min(backward.len()) });
        }
        for (i, (f, b)) in forward.iter().zip(&backward).enumerate() {
            if !f.compose(b).is_identity() || !b.compose(f).is_identity() {
                return Err(Error::RepresentationInvalid(format!(
                    "stored inverse of {} is wrong",
                    p.generators()[i]
                )));
            }
        }
        let rep = FreeRep { generators: p.generators().to_vec(), forward, backward };
        for (i, r) in p.relators().iter().enumerate() {
            if !rep.image(r).is_identity() {
                return Err(Error::RepresentationInvalid(format!("relator {i} of {} acts nontrivially", p.name())));
            }
        }
        Ok(rep)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn image(&self, w: &Word) -> FreeAut {
        let rank = self.forward[0].rank();
        let mut acc = FreeAut::identity(rank);
        for s in w.syllables() {
            let g = s.gen as usize;
            let step = if s.exp > 0 { &self.forward[g] } else { &self.backward[g] };
            for _ in 0..s.exp.unsigned_abs() {
                acc = acc.compose(step);
            }
        }
        acc
    }
}

fn aut(images: &[&[i32]]) -> FreeAut {
    FreeAut::from_images(images.iter().map(|w| w.to_vec()).collect()).expect("static images")
}

fn twist_a1() -> (FreeAut, FreeAut) {
    (aut(&[&[1, 1, 2], &[-2, -1, 2], &[3]]), aut(&[&[1, -2, -1], &[1, 2, 2], &[3]]))
}

fn twist_b() -> (FreeAut, FreeAut) {
    (aut(&[&[1], &[2, 2, 3], &[-3, -2, 3]]), aut(&[&[1], &[2, -3, -2], &[2, 3, 3]]))
}

fn twist_a3() -> (FreeAut, FreeAut) {
    (
        aut(&[&[1, -3, -3, -2, -1], &[1, 2, 3, 3, 2, 3, 3, 1, 2, -3, -3, -2, -1], &[1, 2, 3, -2, -1]]),
        aut(&[&[1, 1, 2, 3, 3], &[-3, -3, -2, -1, -1, -3, -3, 1, 2, 3, 3], &[-3, -3, -2, -1, 3, 1, 2, 3, 3]]),
    )
}

fn slide_u() -> (FreeAut, FreeAut) {
    (aut(&[&[1, 1, 2, -1, -1], &[1], &[3]]), aut(&[&[2], &[-2, -2, 1, 2, 2], &[3]]))
}

fn slide_v() -> (FreeAut, FreeAut) {
    (
        aut(&[&[1, 1, 2, 2, 3, 3, -1], &[1, -3, -3, -2, -1], &[1, 2, 3, -2, -1]]),
        aut(&[
            &[1, 2, 2, 3, 3],
            &[-3, -3, -2, -2, -1, -3, -3, -2, 1, 2, 2, 3, 3],
            &[-3, -3, -2, -2, -1, 2, 3, -2, 1, 2, 2, 3, 3],
        ]),
    )
}

/// Representation of the V-form presentation, validated against all of
/// its relators.
pub fn n31_v_representation() -> Result<FreeRep> {
    let p = mod_n31_v().presentation;
    let gens = [twist_a1(), twist_a3(), twist_b(), slide_v()];
    FreeRep::validated(&p, gens.iter().map(|g| g.0.clone()).collect(), gens.iter().map(|g| g.1.clone()).collect())
}

/// Same action in the U-form generators.
pub fn n31_u_representation() -> Result<FreeRep> {
    let p = mod_n31_u().presentation;
    let gens = [twist_a1(), twist_a3(), twist_b(), slide_u()];
    FreeRep::validated(&p, gens.iter().map(|g| g.0.clone()).collect(), gens.iter().map(|g| g.1.clone()).collect())
}

/// Sound test that a word in the twists `A1, A3, B` of the V-form is
/// nontrivial: true means the element acts nontrivially on `π_1`.
#[derive(Clone, Debug)]
pub struct NontrivialityDetector {
    rep: FreeRep,
    v: u16,
}

impl NontrivialityDetector {
    pub fn new() -> Result<Self> {
        let rep = n31_v_representation()?;
        let v = rep.generators().iter().position(|g| g == "V").expect("V-form has V") as u16;
        Ok(NontrivialityDetector { rep, v })
    }

    pub fn image(&self, w: &Word) -> Result<FreeAut> {
        if w.max_gen().is_some_and(|g| g as usize >= self.rep.generators().len()) {
            return Err(Error::GeneratorOutOfRange(w.max_gen().unwrap()));
        }
        if w.syllables().iter().any(|s| s.gen == self.v) {
            return Err(Error::OutOfRange("the detector covers twist words in A1, A3, B only".into()));
        }
        Ok(self.rep.image(w))
    }

    pub fn detects(&self, w: &Word) -> Result<bool> {
        Ok(!self.image(w)?.is_identity())
    }
}

/// Convenience wrapper over [`NontrivialityDetector`].
pub fn nontriviality_detector(w: &Word) -> Result<bool> {
    NontrivialityDetector::new()?.detects(w)
}
