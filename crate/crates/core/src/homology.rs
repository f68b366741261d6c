//! Action on `H_1(N_g; Z/2)` in the crosscap basis `μ_1..μ_g`, where the
//! intersection pairing is the dot product.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::consequence::Refuter;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

pub const MAX_GENUS: usize = 16;

/// Bit `i` is the coefficient of `μ_{i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mod2Class {
    pub genus: usize,
    pub bits: u32,
}

impl Mod2Class {
    pub fn new(genus: usize, bits: u32) -> Result<Self> {
        if genus == 0 || genus > MAX_GENUS {
            return Err(Error::OutOfRange(format!("genus {genus} outside 1..={MAX_GENUS}")));
        }
        if bits >> genus != 0 {
            return Err(Error::DimensionMismatch { expected: genus, got: 32 - bits.leading_zeros() as usize });
        }
        Ok(Mod2Class { genus, bits })
    }

    /// `μ_{i_1} + μ_{i_2} + ...` with 1-based indices.
    pub fn from_indices(genus: usize, indices: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &i in indices {
            if i == 0 || i > genus {
                return Err(Error::DimensionMismatch { expected: genus, got: i });
            }
            bits ^= 1 << (i - 1);
        }
        Mod2Class::new(genus, bits)
    }

    pub fn pair(&self, other: &Mod2Class) -> bool {
        (self.bits & other.bits).count_ones() % 2 == 1
    }

    pub fn is_one_sided(&self) -> bool {
        self.pair(self)
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }
}

impl fmt::Display for Mod2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return write!(f, "0");
        }
        let terms: Vec<String> =
            (0..self.genus).filter(|i| self.bits >> i & 1 == 1).map(|i| format!("μ{}", i + 1)).collect();
        write!(f, "{}", terms.join("+"))
    }
}

/// `g × g` matrix over `Z/2`, stored by columns: `cols[j]` is the image of
/// `μ_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mod2Matrix {
    genus: usize,
    cols: Vec<u32>,
}

impl Mod2Matrix {
    pub fn identity(genus: usize) -> Self {
        Mod2Matrix { genus, cols: (0..genus).map(|j| 1 << j).collect() }
    }

    pub fn from_columns(genus: usize, cols: Vec<u32>) -> Result<Self> {
        if cols.len() != genus {
            return Err(Error::DimensionMismatch { expected: genus, got: cols.len() });
        }
        Ok(Mod2Matrix { genus, cols })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn apply_bits(&self, x: u32) -> u32 {
        let mut y = 0;
        for (j, c) in self.cols.iter().enumerate() {
            if x >> j & 1 == 1 {
                y ^= c;
            }
        }
        y
    }

    pub fn apply(&self, x: &Mod2Class) -> Mod2Class {
        Mod2Class { genus: self.genus, bits: self.apply_bits(x.bits) }
    }

    /// `self · other`, acting as `other` first.
    pub fn mul(&self, other: &Mod2Matrix) -> Mod2Matrix {
        Mod2Matrix { genus: self.genus, cols: other.cols.iter().map(|&c| self.apply_bits(c)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Mod2Matrix::identity(self.genus)
    }

    pub fn rank(&self) -> usize {
        let mut basis: Vec<u32> = Vec::new();
        for &c in &self.cols {
            let mut v = c;
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        basis.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.genus
    }

    pub fn inverse(&self) -> Option<Mod2Matrix> {
        // the group is finite, but Gauss-Jordan is simpler than powering
        let g = self.genus;
        let mut rows: Vec<(u32, u32)> = (0..g)
            .map(|i| {
                let r = (0..g).fold(0u32, |acc, j| acc | ((self.cols[j] >> i & 1) << j));
                (r, 1u32 << i)
            })
            .collect();
        for col in 0..g {
            let piv = (col..g).find(|&r| rows[r].0 >> col & 1 == 1)?;
            rows.swap(col, piv);
            for r in 0..g {
                if r != col && rows[r].0 >> col & 1 == 1 {
                    rows[r].0 ^= rows[col].0;
                    rows[r].1 ^= rows[col].1;
                }
            }
        }
        // rows[i].1 is row i of the inverse
        let cols = (0..g).map(|j| (0..g).fold(0u32, |acc, i| acc | ((rows[i].1 >> j & 1) << i))).collect();
        Some(Mod2Matrix { genus: g, cols })
    }

    pub fn preserves_pairing(&self) -> bool {
        (0..self.genus).all(|i| {
            (0..self.genus).all(|j| ((self.cols[i] & self.cols[j]).count_ones() % 2 == 1) == (i == j))
        })
    }

    /// Bit rows, most significant column last, e.g. `["110", "110", "001"]`.
    pub fn bit_rows(&self) -> Vec<String> {
        (0..self.genus)
            .map(|i| (0..self.genus).map(|j| if self.cols[j] >> i & 1 == 1 { '1' } else { '0' }).collect())
            .collect()
    }
}

/// `x ↦ x + <x,a> a`.
pub fn transvection(a: &Mod2Class) -> Result<Mod2Matrix> {
    if a.is_zero() || a.is_one_sided() {
        return Err(Error::NotTwoSided(a.to_string()));
    }
    let cols = (0..a.genus)
        .map(|j| {
            let e = 1u32 << j;
            if a.bits & e != 0 {
                e ^ a.bits
            } else {
                e
            }
        })
        .collect();
    Ok(Mod2Matrix { genus: a.genus, cols })
}

/// `c_i = μ_i + μ_{i+1}` for `i = 1..k`.
pub fn chain_classes(g: usize, k: usize) -> Result<Vec<Mod2Class>> {
    if k == 0 || k >= g {
        return Err(Error::ChainTooLong { g, k });
    }
    (1..=k).map(|i| Mod2Class::from_indices(g, &[i, i + 1])).collect()
}

/// All pairing-preserving invertible matrices of the given genus.
pub fn isometries(genus: usize) -> Vec<Mod2Matrix> {
    let odd: Vec<u32> = (1u32..1 << genus).filter(|v| v.count_ones() % 2 == 1).collect();
    let mut out = Vec::new();
    let mut cols = Vec::with_capacity(genus);
    fn rec(genus: usize, odd: &[u32], cols: &mut Vec<u32>, out: &mut Vec<Mod2Matrix>) {
        if cols.len() == genus {
            let m = Mod2Matrix { genus, cols: cols.clone() };
            if m.is_invertible() {
                out.push(m);
            }
            return;
        }
        for &v in odd {
            if cols.iter().all(|&c| (c & v).count_ones() % 2 == 0) {
                cols.push(v);
                rec(genus, odd, cols, out);
                cols.pop();
            }
        }
    }
    rec(genus, &odd, &mut cols, &mut out);
    out
}

/// Generator → matrix map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub genus: usize,
    pub generators: Vec<String>,
    pub matrices: Vec<Option<Mod2Matrix>>,
}

impl Assignment {
    pub fn image(&self, w: &Word) -> Result<Mod2Matrix> {
        let mut acc = Mod2Matrix::identity(self.genus);
        for s in w.syllables() {
            let m = self
                .matrices
                .get(s.gen as usize)
                .and_then(|m| m.as_ref())
                .ok_or_else(|| {
                    let name = self.generators.get(s.gen as usize).cloned().unwrap_or(format!("#{}", s.gen));
                    Error::UncoveredGenerator(name)
                })?;
            let p = if s.exp < 0 { m.inverse().expect("assignment matrices are invertible") } else { m.clone() };
            for _ in 0..s.exp.unsigned_abs() {
                acc = acc.mul(&p);
            }
        }
        Ok(acc)
    }

    pub fn satisfies(&self, p: &Presentation) -> Result<bool> {
        for r in p.relators() {
            if !self.image(r)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Short id for reports, e.g. `g3:A1=110.110.001;...`.
    pub fn id(&self) -> String {
        let parts: Vec<String> = self
            .generators
            .iter()
            .zip(&self.matrices)
            .map(|(g, m)| match m {
                Some(m) => format!("{g}={}", m.bit_rows().join(".")),
                None => format!("{g}=?"),
            })
            .collect();
        format!("g{}:{}", self.genus, parts.join(";"))
    }
}

/// Search options for [`find_assignment`].
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions {
    pub seed: u64,
    /// Cap on candidate tuples tried; `None` means exhaustive.
    pub max_tries: Option<u64>,
}

/// Twists get transvections, the rest are searched over isometries so that
/// every relator maps to the identity.
pub fn find_assignment(
    p: &Presentation,
    twist_classes: &BTreeMap<String, Mod2Class>,
    g: usize,
) -> Result<Option<Assignment>> {
    find_assignment_with(p, twist_classes, g, SearchOptions::default())
}

pub fn find_assignment_with(
    p: &Presentation,
    twist_classes: &BTreeMap<String, Mod2Class>,
    g: usize,
    opts: SearchOptions,
) -> Result<Option<Assignment>> {
    if g == 0 || g > 5 {
        return Err(Error::OutOfRange(format!("matrix search supports genus 1..=5, got {g}")));
    }
    let mut matrices: Vec<Option<Mod2Matrix>> = vec![None; p.rank()];
    for (name, class) in twist_classes {
        let id = p.gen_id(name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
        if class.genus != g {
            return Err(Error::DimensionMismatch { expected: g, got: class.genus });
        }
        matrices[id as usize] = Some(transvection(class)?);
    }
    let free: Vec<usize> = (0..p.rank()).filter(|&i| matrices[i].is_none()).collect();
    let mut candidates = isometries(g);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    candidates.shuffle(&mut rng);

    // relators become checkable once their generators are all assigned
    let relators = p.relators();
    let ready_at: Vec<Vec<usize>> = {
        let mut v = vec![Vec::new(); free.len() + 1];
        for (ri, r) in relators.iter().enumerate() {
            let last = r
                .syllables()
                .iter()
                .filter_map(|s| free.iter().position(|&f| f == s.gen as usize))
                .max()
                .map_or(0, |i| i + 1);
            v[last].push(ri);
        }
        v
    };
    let mut a = Assignment { genus: g, generators: p.generators().to_vec(), matrices };
    let ok_at = |a: &Assignment, depth: usize| -> bool {
        ready_at[depth].iter().all(|&ri| a.image(&relators[ri]).map(|m| m.is_identity()).unwrap_or(false))
    };
    if !ok_at(&a, 0) {
        return Ok(None);
    }
    let mut tries = 0u64;
    fn rec(
        a: &mut Assignment,
        depth: usize,
        free: &[usize],
        candidates: &[Mod2Matrix],
        ok_at: &dyn Fn(&Assignment, usize) -> bool,
        tries: &mut u64,
        cap: Option<u64>,
    ) -> bool {
        if depth == free.len() {
            return true;
        }
        for c in candidates {
            if cap.is_some_and(|cap| *tries >= cap) {
                return false;
            }
            *tries += 1;
            a.matrices[free[depth]] = Some(c.clone());
            if ok_at(a, depth + 1) && rec(a, depth + 1, free, candidates, ok_at, tries, cap) {
                return true;
            }
        }
        a.matrices[free[depth]] = None;
        false
    }
    if rec(&mut a, 0, &free, &candidates, &ok_at, &mut tries, opts.max_tries) {
        debug_assert!(a.matrices.iter().flatten().all(Mod2Matrix::preserves_pairing));
        if !a.satisfies(p)? {
            return Err(Error::RepresentationInvalid("search returned a non-solution".into()));
        }
        Ok(Some(a))
    } else {
        Ok(None)
    }
}

/// True iff the image of `w` is not the identity matrix. Sound only when
/// the assignment satisfies the relators of the group in question.
pub fn refute_by_rep(w: &Word, assignment: &Assignment) -> Result<bool> {
    Ok(!assignment.image(w)?.is_identity())
}

/// Matrix refuter for a [`Prover`](crate::consequence::Prover); construction
/// checks the relators so refutations are sound.
#[derive(Clone, Debug)]
pub struct MatrixRefuter {
    assignment: Assignment,
}

impl MatrixRefuter {
    pub fn new(assignment: Assignment, p: &Presentation) -> Result<Self> {
        if !assignment.satisfies(p)? {
            return Err(Error::RepresentationInvalid(format!(
                "assignment {} violates a relator of {}",
                assignment.id(),
                p.name()
            )));
        }
        Ok(MatrixRefuter { assignment })
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }
}

impl Refuter for MatrixRefuter {
    fn label(&self) -> String {
        self.assignment.id()
    }

    fn refutes(&self, w: &Word) -> bool {
        refute_by_rep(w, &self.assignment).unwrap_or(false)
    }
}

/// Twist classes used for the `N_{3,1}` entries: `A1` and `A3` are
/// disjoint, so their classes must pair to zero, while `B` meets both once.
/// In genus 3 two distinct nonzero two-sided classes always pair to one,
/// so `A1` and `A3` share the class `μ1+μ2`.
pub fn n31_twist_classes() -> BTreeMap<String, Mod2Class> {
    let a = Mod2Class::from_indices(3, &[1, 2]).unwrap();
    let b = Mod2Class::from_indices(3, &[2, 3]).unwrap();
    [("A1", a), ("A3", a), ("B", b)].into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        for m in isometries(4) {
            let inv = m.inverse().unwrap();
            assert!(m.mul(&inv).is_identity());
        }
        let singular = Mod2Matrix::from_columns(2, vec![0b11, 0b11]).unwrap();
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn isometry_counts() {
        assert_eq!(isometries(1).len(), 1);
        assert_eq!(isometries(2).len(), 2);
        assert_eq!(isometries(3).len(), 6);
        assert!(isometries(3).iter().all(Mod2Matrix::preserves_pairing));
    }

    #[test]
    fn class_parsing() {
        let c = Mod2Class::from_indices(3, &[1, 3]).unwrap();
        assert_eq!(c.to_string(), "μ1+μ3");
        assert!(Mod2Class::from_indices(3, &[4]).is_err());
        assert!(Mod2Class::new(2, 0b100).is_err());
    }
}
