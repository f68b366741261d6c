//! Abelianization of a finitely presented group via Smith normal form of
//! the relator exponent matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::presentation::Presentation;
use crate::word::Word;

/// A cyclic factor of the quotient: `Z` (order 0) or `Z/d` with `d > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicFactor(pub BigInt);

impl CyclicFactor {
    pub fn is_free(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for CyclicFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_free() {
            write!(f, "Z")
        } else {
            write!(f, "Z/{}", self.0)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants(pub Vec<CyclicFactor>);

impl Invariants {
    pub fn torsion(&self) -> Vec<BigInt> {
        self.0.iter().filter(|c| !c.is_free()).map(|c| c.0.clone()).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.0.iter().filter(|c| c.is_free()).count()
    }

    /// Short form like `[0, 2]` for `Z x Z/2`; handy in tests.
    pub fn orders(&self) -> Vec<i64> {
        self.0.iter().map(|c| i64::try_from(&c.0).unwrap_or(i64::MAX)).collect()
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Smith form data: invariant factors plus the column transform needed to
/// express classes in the diagonal basis.
#[derive(Clone, Debug)]
pub struct Abelianization {
    rank: usize,
    diagonal: Vec<BigInt>,
    column_transform: Vec<Vec<BigInt>>,
}

/// Class of a word in `Z^n / L` in the coordinates of the invariant
/// factor decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianImage {
    pub invariants: Invariants,
    pub class: Vec<BigInt>,
}

impl AbelianImage {
    pub fn is_zero(&self) -> bool {
        self.class.iter().all(Zero::is_zero)
    }
}

impl Abelianization {
    pub fn of(p: &Presentation) -> Self {
        let n = p.rank();
        let rows: Vec<Vec<BigInt>> = p
            .relators()
            .iter()
            .map(|r| r.exponent_sums(n).into_iter().map(BigInt::from).collect())
            .collect();
        Abelianization::from_matrix(rows, n)
    }

    pub fn from_matrix(mut a: Vec<Vec<BigInt>>, n: usize) -> Self {
        let m = a.len();
        let mut v: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let mut t = 0;
        while t < m.min(n) {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..n {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                add_col_multiple(&mut a, j, t, &-&q);
                add_col_multiple(&mut v, j, t, &-&q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let mut fixed = true;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        for k in t..n {
                            let x = a[i][k].clone();
                            a[t][k] += x;
                        }
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                if a[t][t].is_negative() {
                    for k in t..n {
                        a[t][k] = -&a[t][k];
                    }
                }
                t += 1;
            }
        }
        let diagonal = (0..n)
            .map(|i| if i < m { a[i][i].clone() } else { BigInt::zero() })
            .collect();
        Abelianization { rank: n, diagonal, column_transform: v }
    }

    pub fn invariants(&self) -> Invariants {
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for d in &self.diagonal {
            if d.is_zero() {
                free.push(CyclicFactor(BigInt::zero()));
            } else if !d.abs().is_one() {
                torsion.push(CyclicFactor(d.abs()));
            }
        }
        torsion.extend(free);
        Invariants(torsion)
    }

    pub fn image(&self, w: &Word) -> AbelianImage {
        let x: Vec<BigInt> = w.exponent_sums(self.rank).into_iter().map(BigInt::from).collect();
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (j, d) in self.diagonal.iter().enumerate() {
            let y: BigInt = (0..self.rank).map(|i| &x[i] * &self.column_transform[i][j]).sum();
            if d.is_zero() {
                free.push(y);
            } else if !d.abs().is_one() {
                torsion.push(y.mod_floor(&d.abs()));
            }
        }
        torsion.extend(free);
        AbelianImage { invariants: self.invariants(), class: torsion }
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// column[dst] += q * column[src]
fn add_col_multiple(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let d = q * &row[src];
        row[dst] += d;
    }
}

/// Class of `w` in the abelianization of `p`, with the invariant factors.
pub fn abelianization_image(w: &Word, p: &Presentation) -> AbelianImage {
    Abelianization::of(p).image(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn smith_of_small_matrices() {
        let ab = Abelianization::from_matrix(mat(&[&[0, 2]]), 2);
        assert_eq!(ab.invariants().orders(), vec![2, 0]);
        let ab = Abelianization::from_matrix(mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3);
        // classic example with invariant factors 2, 6, 12
        assert_eq!(ab.invariants().orders(), vec![2, 6, 12]);
        let ab = Abelianization::from_matrix(vec![], 3);
        assert_eq!(ab.invariants().orders(), vec![0, 0, 0]);
    }

    #[test]
    fn identity_has_zero_class() {
        let p = Presentation::from_strs("k", &["y", "t"], &["y t y^-1 t"]).unwrap();
        assert!(abelianization_image(&Word::identity(), &p).is_zero());
        assert!(!abelianization_image(&p.g("t"), &p).is_zero());
        assert!(abelianization_image(&p.g("t").pow(2), &p).is_zero());
        assert!(!abelianization_image(&p.g("y"), &p).is_zero());
    }

    #[test]
    fn relators_always_map_to_zero() {
        let p = Presentation::from_strs(
            "x",
            &["a", "b", "c"],
            &["a^4 b^-6", "b^10 c^3", "a^2 b^2 c^2 a^2"],
        )
        .unwrap();
        let ab = Abelianization::of(&p);
        for r in p.relators() {
            assert!(ab.image(r).is_zero());
        }
    }
}
