//! Arithmetic in `Mod(N_{2,1}) = <y, t | y t y^-1 = t^-1>`, the group
//! `Z ⋊ Z` with normal form `y^m t^n`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

/// `y^m t^n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KleinElement {
    pub m: i64,
    pub n: i64,
}

pub const Y: KleinElement = KleinElement { m: 1, n: 0 };
pub const T: KleinElement = KleinElement { m: 0, n: 1 };
pub const IDENTITY: KleinElement = KleinElement { m: 0, n: 0 };

fn sign(p: i64) -> i64 {
    if p.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl KleinElement {
    pub const fn new(m: i64, n: i64) -> Self {
        KleinElement { m, n }
    }

    /// Membership in the twist subgroup `T = <t_a, t_b>`, i.e. `m` even.
    pub fn in_twist_subgroup(self) -> bool {
        self.m.rem_euclid(2) == 0
    }

    /// Normal-form word over generators `y = 0`, `t = 1`.
    pub fn to_word(self) -> Word {
        Word::gen_pow(0, self.m as i32).multiply(&Word::gen_pow(1, self.n as i32))
    }
}

impl fmt::Display for KleinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// `(m,n)·(p,q) = (m+p, (-1)^p n + q)`.
pub fn k_multiply(u: KleinElement, v: KleinElement) -> KleinElement {
    KleinElement { m: u.m + v.m, n: sign(v.m) * u.n + v.n }
}

pub fn k_inverse(u: KleinElement) -> KleinElement {
    KleinElement { m: -u.m, n: -sign(u.m) * u.n }
}

pub fn k_pow(u: KleinElement, e: i64) -> KleinElement {
    let base = if e < 0 { k_inverse(u) } else { u };
    let mut acc = IDENTITY;
    let mut b = base;
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = k_multiply(acc, b);
        }
        b = k_multiply(b, b);
        k >>= 1;
    }
    acc
}

/// `g u g^-1`.
pub fn k_conjugate(u: KleinElement, g: KleinElement) -> KleinElement {
    k_multiply(k_multiply(g, u), k_inverse(g))
}

/// Closed form of `u^2`.
pub fn k_square(u: KleinElement) -> KleinElement {
    if u.m.rem_euclid(2) == 0 {
        KleinElement::new(2 * u.m, 2 * u.n)
    } else {
        KleinElement::new(2 * u.m, 0)
    }
}

/// Generator of the center, `t_b = y^2`.
pub fn k_center() -> KleinElement {
    KleinElement::new(2, 0)
}

pub fn commutes(u: KleinElement, v: KleinElement) -> bool {
    k_multiply(u, v) == k_multiply(v, u)
}

pub fn is_central(u: KleinElement) -> bool {
    commutes(u, Y) && commutes(u, T)
}

/// Y-homeomorphism test: outside `T`, square equal to `t_b^{±1}`.
pub fn k_is_y(u: KleinElement) -> bool {
    let sq = k_square(u);
    !u.in_twist_subgroup() && sq.n == 0 && sq.m.abs() == 2
}

/// Collects a word over `y = 0`, `t = 1` into normal form.
pub fn collect(w: &Word) -> Result<KleinElement> {
    let mut acc = IDENTITY;
    for s in w.syllables() {
        let g = match s.gen {
            0 => Y,
            1 => T,
            other => return Err(Error::GeneratorOutOfRange(other)),
        };
        acc = k_multiply(acc, k_pow(g, s.exp as i64));
    }
    Ok(acc)
}

fn class_key(u: KleinElement) -> (i64, i64, i64, i64) {
    (u.m.abs(), u.n.abs(), -u.m, -u.n)
}

/// Representatives of the conjugacy classes of Y-elements with
/// coordinates bounded by `bound`. Conjugators range over the same box.
pub fn k_y_conjugacy_classes(bound: i64) -> Result<Vec<KleinElement>> {
    if bound < 1 {
        return Err(Error::OutOfRange(format!("class bound must be at least 1, got {bound}")));
    }
    let elems: Vec<KleinElement> = (-bound..=bound)
        .flat_map(|m| (-bound..=bound).map(move |n| KleinElement::new(m, n)))
        .filter(|&u| k_is_y(u))
        .collect();
    let index: BTreeMap<KleinElement, usize> = elems.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for (i, &u) in elems.iter().enumerate() {
        for p in -bound..=bound {
            for q in -bound..=bound {
                let c = k_conjugate(u, KleinElement::new(p, q));
                if let Some(&j) = index.get(&c) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, KleinElement> = BTreeMap::new();
    for (i, &u) in elems.iter().enumerate() {
        let r = find(&mut parent, i);
        let slot = classes.entry(r).or_insert(u);
        if class_key(u) < class_key(*slot) {
            *slot = u;
        }
    }
    let mut reps: Vec<KleinElement> = classes.into_values().collect();
    reps.sort_by_key(|&u| class_key(u));
    Ok(reps)
}

/// Endomorphism given by the images of `y` and `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KleinAutomorphism {
    pub y: KleinElement,
    pub t: KleinElement,
}

impl KleinAutomorphism {
    pub const IDENTITY: KleinAutomorphism = KleinAutomorphism { y: Y, t: T };

    pub fn apply(&self, u: KleinElement) -> KleinElement {
        k_multiply(k_pow(self.y, u.m), k_pow(self.t, u.n))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &KleinAutomorphism) -> KleinAutomorphism {
        KleinAutomorphism { y: self.apply(other.y), t: self.apply(other.t) }
    }

    /// The defining relator `y t y^-1 t` maps to the identity.
    pub fn respects_relator(&self) -> bool {
        let r = k_multiply(k_multiply(k_multiply(self.y, self.t), k_inverse(self.y)), self.t);
        r == IDENTITY
    }

    /// Conjugation by `g`.
    pub fn inner(g: KleinElement) -> KleinAutomorphism {
        KleinAutomorphism { y: k_conjugate(Y, g), t: k_conjugate(T, g) }
    }

    /// Solves for a conjugator: inner automorphisms send `t ↦ t^{(-1)^p}`
    /// and `y ↦ y t^{-2 (-1)^p q}`, so `(p mod 2, q)` is forced.
    pub fn inner_witness(&self) -> Option<KleinElement> {
        for p in 0..2 {
            if self.y.n % 2 != 0 {
                return None;
            }
            let q = -sign(p) * self.y.n / 2;
            let g = KleinElement::new(p, q);
            if KleinAutomorphism::inner(g) == *self {
                return Some(g);
            }
        }
        None
    }

    pub fn is_inner(&self) -> bool {
        self.inner_witness().is_some()
    }

    fn key(&self) -> (i64, KleinAutomorphism) {
        (self.y.m.abs() + self.y.n.abs() + self.t.m.abs() + self.t.n.abs(), *self)
    }
}

/// Outer automorphism classes found in a bounded search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutTable {
    pub bound: i64,
    /// Automorphisms found in the box, with verified inverses.
    pub automorphisms: usize,
    /// Minimal representative of each class; index 0 is the inner class.
    pub representatives: Vec<KleinAutomorphism>,
    /// `table[i][j]` is the class of `rep_i ∘ rep_j`.
    pub table: Vec<Vec<usize>>,
}

impl OutTable {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.table[x][i];
            k += 1;
            if k > self.order() + 1 {
                break;
            }
        }
        k
    }

    pub fn is_klein_four(&self) -> bool {
        self.order() == 4 && (1..4).all(|i| self.element_order(i) == 2)
    }
}

fn box_elements(bound: i64) -> Vec<KleinElement> {
    (-bound..=bound)
        .flat_map(|m| (-bound..=bound).map(move |n| KleinElement::new(m, n)))
        .collect()
}

/// Enumerates automorphisms with image coordinates in `[-bound, bound]`
/// and returns `Out` as a multiplication table over class representatives.
pub fn k_out(bound: i64) -> Result<OutTable> {
    if bound < 2 {
        return Err(Error::OutOfRange(format!("out-klein needs bound >= 2, got {bound}")));
    }
    let elems = box_elements(bound);
    let endos: Vec<KleinAutomorphism> = elems
        .iter()
        .flat_map(|&y| elems.iter().map(move |&t| KleinAutomorphism { y, t }))
        .filter(KleinAutomorphism::respects_relator)
        .collect();
    let mut autos: Vec<(KleinAutomorphism, KleinAutomorphism)> = Vec::new();
    for a in &endos {
        let inv = endos.iter().find(|b| {
            a.compose(b) == KleinAutomorphism::IDENTITY && b.compose(a) == KleinAutomorphism::IDENTITY
        });
        if let Some(b) = inv {
            autos.push((*a, *b));
        }
    }
    // a ~ b iff a ∘ b^-1 is inner
    let id = KleinAutomorphism::IDENTITY;
    let mut reps: Vec<(KleinAutomorphism, KleinAutomorphism)> = vec![(id, id)];
    let mut sorted = autos.clone();
    sorted.sort_by_key(|(a, _)| a.key());
    for (a, ainv) in sorted {
        if !reps.iter().any(|(_, binv)| a.compose(binv).is_inner()) {
            reps.push((a, ainv));
        }
    }
    let classify = |x: &KleinAutomorphism| -> usize {
        reps.iter()
            .position(|(_, binv)| x.compose(binv).is_inner())
            .expect("composition of automorphisms lands in a found class")
    };
    let table = reps
        .iter()
        .map(|(a, _)| reps.iter().map(|(b, _)| classify(&a.compose(b))).collect())
        .collect();
    Ok(OutTable {
        bound,
        automorphisms: autos.len(),
        representatives: reps.into_iter().map(|(a, _)| a).collect(),
        table,
    })
}
