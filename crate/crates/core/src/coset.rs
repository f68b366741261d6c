//! Todd–Coxeter coset enumeration, HLT strategy with coincidence handling.

use serde::{Deserialize, Serialize};

use crate::catalog::SubgroupSpec;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

const NONE: usize = usize::MAX;

/// Closed coset table. Columns are `g0, g0^-1, g1, g1^-1, ...`; coset 0 is
/// the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    pub index: usize,
    pub table: Vec<Vec<usize>>,
    /// Cosets defined during the run, including ones later merged.
    pub defined: usize,
}

impl CosetTable {
    fn trace(&self, start: usize, w: &Word) -> usize {
        w.letters().fold(start, |c, l| self.table[c][column(l.gen as usize, l.inverse)])
    }

    /// Re-checks closure: complete rows, inverse columns consistent, every
    /// relator loops at every coset, every subgroup generator loops at 0.
    pub fn verify(&self, p: &Presentation, subgroup: &[Word]) -> bool {
        let cols = 2 * p.rank();
        for (c, row) in self.table.iter().enumerate() {
            if row.len() != cols {
                return false;
            }
            for (x, &d) in row.iter().enumerate() {
                if d >= self.index || self.table[d][x ^ 1] != c {
                    return false;
                }
            }
        }
        (0..self.index).all(|c| p.relators().iter().all(|r| self.trace(c, r) == c))
            && subgroup.iter().all(|h| self.trace(0, h) == 0)
    }
}

fn column(gen: usize, inverse: bool) -> usize {
    2 * gen + inverse as usize
}

fn word_columns(w: &Word) -> Vec<usize> {
    w.letters().map(|l| column(l.gen as usize, l.inverse)).collect()
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    max: usize,
}

impl Enumerator {
    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.table.len() >= self.max {
            return Err(Error::CosetOverflow(self.max));
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                self.table[f][x ^ 1] = NONE;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][x ^ 1] != NONE {
                    let t = self.table[f1][x ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        let (mut f, mut i) = (c, 0isize);
        let (mut b, mut j) = (c, w.len() as isize - 1);
        loop {
            while i <= j && self.table[f][w[i as usize]] != NONE {
                f = self.table[f][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][w[j as usize] ^ 1] != NONE {
                b = self.table[b][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.table[f][x] = b;
                self.table[b][x ^ 1] = f;
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }
}

/// Index of the subgroup generated by `subgroup` in the group presented by
/// `p`, or [`Error::CosetOverflow`] once more than `max_cosets` cosets would
/// be defined.
pub fn enumerate_cosets(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::OutOfRange("max-cosets must be at least 1".into()));
    }
    for h in subgroup {
        p.check_word(h)?;
    }
    let cols = 2 * p.rank();
    let mut en = Enumerator { cols, table: vec![vec![NONE; cols]], parent: vec![0], max: max_cosets };
    let rels: Vec<Vec<usize>> = p.relators().iter().map(word_columns).collect();
    let gens: Vec<Vec<usize>> = subgroup.iter().map(word_columns).collect();
    for h in &gens {
        en.scan_and_fill(0, h)?;
    }
    let mut c = 0;
    while c < en.table.len() {
        for r in &rels {
            if !en.alive(c) {
                break;
            }
            en.scan_and_fill(c, r)?;
        }
        for x in 0..cols {
            if !en.alive(c) {
                break;
            }
            if en.table[c][x] == NONE {
                en.define(c, x)?;
            }
        }
        c += 1;
    }
    let defined = en.table.len();
    let live: Vec<usize> = (0..defined).filter(|&c| en.alive(c)).collect();
    let mut renumber = vec![NONE; defined];
    for (k, &c) in live.iter().enumerate() {
        renumber[c] = k;
    }
    let table: Vec<Vec<usize>> =
        live.iter().map(|&c| en.table[c].iter().map(|&d| renumber[d]).collect()).collect();
    let out = CosetTable { index: live.len(), table, defined };
    if !out.verify(p, subgroup) {
        return Err(Error::RepresentationInvalid("coset table failed closure verification".into()));
    }
    Ok(out)
}

pub fn coset_enumerate(s: &SubgroupSpec, max_cosets: usize) -> Result<CosetTable> {
    enumerate_cosets(&s.ambient.presentation, &s.generators, max_cosets)
}
