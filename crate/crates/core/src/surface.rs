//! Euler characteristic calculus for compact surfaces: double covers,
//! chain neighborhoods, and cut-and-glue searches over decompositions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceType {
    orientable: bool,
    genus: u32,
    boundary: u32,
}

impl SurfaceType {
    pub fn new(orientable: bool, genus: u32, boundary: u32) -> Result<Self> {
        if !orientable && genus == 0 {
            return Err(Error::InvalidSurface("a nonorientable surface has genus at least 1".into()));
        }
        Ok(SurfaceType { orientable, genus, boundary })
    }

    /// `Σ_{g,b}`.
    pub fn orientable(genus: u32, boundary: u32) -> Self {
        SurfaceType { orientable: true, genus, boundary }
    }

    /// `N_{g,b}`; panics on genus 0.
    pub fn nonorientable(genus: u32, boundary: u32) -> Self {
        SurfaceType::new(false, genus, boundary).expect("nonorientable genus >= 1")
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary(&self) -> u32 {
        self.boundary
    }

    pub fn euler(&self) -> i64 {
        let g = self.genus as i64;
        let b = self.boundary as i64;
        if self.orientable {
            2 - 2 * g - b
        } else {
            2 - g - b
        }
    }

    /// Orientation double cover, `N_{g,n} ↦ Σ_{g-1,2n}`.
    pub fn double_cover(&self) -> Result<SurfaceType> {
        if self.orientable {
            return Err(Error::InvalidSurface(format!("{self} is orientable and has no orientation cover")));
        }
        Ok(SurfaceType::orientable(self.genus - 1, 2 * self.boundary))
    }

    /// Sphere, projective plane or Klein bottle.
    pub fn is_sporadic(&self) -> bool {
        self.boundary == 0 && self.euler() >= 0 && !(self.orientable && self.genus == 1)
    }

    pub fn is_disc(&self) -> bool {
        self.orientable && self.genus == 0 && self.boundary == 1
    }

    pub fn is_annulus(&self) -> bool {
        self.orientable && self.genus == 0 && self.boundary == 2
    }

    pub fn is_pants(&self) -> bool {
        self.orientable && self.genus == 0 && self.boundary == 3
    }

    /// All surfaces with the given boundary count and Euler characteristic.
    pub fn with_euler(boundary: u32, chi: i64) -> Vec<SurfaceType> {
        let mut out = Vec::new();
        let twice_h = 2 - boundary as i64 - chi;
        if twice_h >= 0 && twice_h % 2 == 0 {
            out.push(SurfaceType::orientable((twice_h / 2) as u32, boundary));
        }
        let k = 2 - boundary as i64 - chi;
        if k >= 1 {
            out.push(SurfaceType::nonorientable(k as u32, boundary));
        }
        out
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = if self.orientable { 'S' } else { 'N' };
        if self.boundary == 0 {
            write!(f, "{letter}{}", self.genus)
        } else {
            write!(f, "{letter}{},{}", self.genus, self.boundary)
        }
    }
}

impl FromStr for SurfaceType {
    type Err = Error;

    /// `N7`, `N3,1`, `S2,2`, `S0,3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSurface(format!("bad surface literal `{s}`"));
        let s = s.trim();
        let orientable = match s.chars().next() {
            Some('N') => false,
            Some('S') => true,
            _ => return Err(bad()),
        };
        let rest = &s[1..];
        let (g, b) = match rest.split_once(',') {
            Some((g, b)) => (g, b),
            None => (rest, "0"),
        };
        let genus: u32 = g.parse().map_err(|_| bad())?;
        let boundary: u32 = b.parse().map_err(|_| bad())?;
        SurfaceType::new(orientable, genus, boundary)
    }
}

pub fn euler(s: &SurfaceType) -> i64 {
    s.euler()
}

pub fn double_cover(s: &SurfaceType) -> Result<SurfaceType> {
    s.double_cover()
}

/// Regular neighborhood of a chain of `k` circles: `Σ_{(k-1)/2,2}` for odd
/// `k`, `Σ_{k/2,1}` for even `k`.
pub fn chain_neighborhood(k: u32) -> Result<SurfaceType> {
    if k == 0 {
        return Err(Error::OutOfRange("chain length must be positive".into()));
    }
    Ok(if k % 2 == 1 { SurfaceType::orientable((k - 1) / 2, 2) } else { SurfaceType::orientable(k / 2, 1) })
}

/// Boundary circle `index` of piece `piece`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cuff {
    pub piece: usize,
    pub index: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub a: Cuff,
    pub b: Cuff,
    /// Glued so that orientations of the two sides disagree.
    pub reversing: bool,
}

/// Pieces glued along pairs of boundary circles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub pieces: Vec<SurfaceType>,
    pub gluings: Vec<Gluing>,
}

impl Decomposition {
    pub fn euler(&self) -> i64 {
        self.pieces.iter().map(SurfaceType::euler).sum()
    }

    pub fn free_cuffs(&self) -> u32 {
        let total: u32 = self.pieces.iter().map(|p| p.boundary).sum();
        total - 2 * self.gluings.len() as u32
    }

    pub fn is_connected(&self) -> bool {
        if self.pieces.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.pieces.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for g in &self.gluings {
                for (x, y) in [(g.a.piece, g.b.piece), (g.b.piece, g.a.piece)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Orientable iff every piece is and the pieces admit orientations
    /// `s_i` with `s_a + s_b = reversing` on every gluing (a 2-colouring).
    pub fn is_orientable(&self) -> bool {
        if self.pieces.iter().any(|p| !p.orientable) {
            return false;
        }
        let n = self.pieces.len();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let cv = colour[v].unwrap();
                for g in &self.gluings {
                    let other = if g.a.piece == v {
                        g.b.piece
                    } else if g.b.piece == v {
                        g.a.piece
                    } else {
                        continue;
                    };
                    let want = cv ^ g.reversing;
                    match colour[other] {
                        None => {
                            colour[other] = Some(want);
                            stack.push(other);
                        }
                        Some(c) if c != want => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// The glued surface, assuming connectivity.
    pub fn result(&self) -> Result<SurfaceType> {
        let b = self.free_cuffs();
        let chi = self.euler();
        let orientable = self.is_orientable();
        SurfaceType::with_euler(b, chi)
            .into_iter()
            .find(|s| s.orientable == orientable)
            .ok_or_else(|| Error::InvalidSurface(format!("no surface with χ = {chi}, {b} boundary circles")))
    }

    /// Independent checks: cuffs in range and used once, connectivity, χ
    /// additivity, orientability and boundary count matching `ambient`.
    pub fn validate(&self, ambient: &SurfaceType) -> Result<()> {
        let mut used = std::collections::BTreeSet::new();
        for g in &self.gluings {
            for c in [g.a, g.b] {
                let piece = self
                    .pieces
                    .get(c.piece)
                    .ok_or_else(|| Error::InvalidSurface(format!("gluing names piece {}", c.piece)))?;
                if c.index >= piece.boundary {
                    return Err(Error::InvalidSurface(format!("piece {} has no cuff {}", c.piece, c.index)));
                }
                if !used.insert(c) {
                    return Err(Error::InvalidSurface(format!("cuff {c:?} glued twice")));
                }
            }
        }
        if !self.is_connected() {
            return Err(Error::InvalidSurface("gluing graph is disconnected".into()));
        }
        if self.euler() != ambient.euler() {
            return Err(Error::InvalidSurface(format!("χ {} != {}", self.euler(), ambient.euler())));
        }
        if self.free_cuffs() != ambient.boundary {
            return Err(Error::InvalidSurface("boundary count mismatch".into()));
        }
        if self.is_orientable() != ambient.orientable {
            return Err(Error::InvalidSurface("orientability mismatch".into()));
        }
        Ok(())
    }
}

/// Extra condition on a chain's complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainConstraint {
    None,
    /// Chains commuting with a Y-homeomorphism: the complement holds a
    /// nonorientable piece of genus at least 2 and has no disc piece.
    MustContainKleinBottlePiece,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub genus: u32,
    pub length: u32,
    pub feasible: bool,
    /// Piece 0 is the chain neighborhood.
    pub witness: Option<Decomposition>,
    /// Complement candidates examined.
    pub enumerated: usize,
}

fn closed_nonorientable(g: u32) -> Result<SurfaceType> {
    let s = SurfaceType::new(false, g, 0)?;
    if s.is_sporadic() {
        return Err(Error::InvalidSurface(format!("{s} is sporadic; searches need genus >= 3")));
    }
    Ok(s)
}

/// Can a chain of length `k` sit in closed `N_G` with the given complement
/// constraint? Enumerates complements of the chain neighborhood.
pub fn chain_feasible(g: u32, k: u32, constraint: ChainConstraint) -> Result<ChainReport> {
    let ambient = closed_nonorientable(g)?;
    let nu = chain_neighborhood(k)?;
    let target = ambient.euler() - nu.euler();
    let mut candidates: Vec<Vec<SurfaceType>> = Vec::new();
    if nu.boundary == 1 {
        candidates.extend(SurfaceType::with_euler(1, target).into_iter().map(|s| vec![s]));
    } else {
        candidates.extend(SurfaceType::with_euler(2, target).into_iter().map(|s| vec![s]));
        // two pieces with one boundary circle each have χ <= 1
        for c1 in (target - 1)..=1 {
            let c2 = target - c1;
            if c2 > 1 || c1 > c2 {
                continue;
            }
            for a in SurfaceType::with_euler(1, c1) {
                for b in SurfaceType::with_euler(1, c2) {
                    if c1 < c2 || a <= b {
                        candidates.push(vec![a, b]);
                    }
                }
            }
        }
    }
    let enumerated = candidates.len();
    for comp in candidates {
        if constraint == ChainConstraint::MustContainKleinBottlePiece
            && (comp.iter().any(SurfaceType::is_disc) || !comp.iter().any(|s| !s.orientable && s.genus >= 2))
        {
            continue;
        }
        let mut pieces = vec![nu];
        pieces.extend(comp.iter().copied());
        let mut gluings = Vec::new();
        let mut next = 0;
        for (i, s) in comp.iter().enumerate() {
            for j in 0..s.boundary {
                gluings.push(Gluing { a: Cuff { piece: 0, index: next }, b: Cuff { piece: i + 1, index: j }, reversing: false });
                next += 1;
            }
        }
        let mut d = Decomposition { pieces, gluings };
        if d.is_orientable() && d.gluings.len() >= 2 && d.gluings[0].b.piece == d.gluings[1].b.piece {
            d.gluings[1].reversing = true;
        }
        if d.validate(&ambient).is_ok() {
            return Ok(ChainReport { genus: g, length: k, feasible: true, witness: Some(d), enumerated });
        }
    }
    Ok(ChainReport { genus: g, length: k, feasible: false, witness: None, enumerated })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxChain {
    pub genus: u32,
    pub constraint: ChainConstraint,
    /// Longest chain of odd length, the length of a longest maximal chain.
    pub length: u32,
    pub witness: Decomposition,
}

/// Longest maximal chain. Maximal chains have odd length; without a
/// constraint the longest chain of any length is checked to be odd too.
pub fn max_chain(g: u32, constraint: ChainConstraint) -> Result<MaxChain> {
    closed_nonorientable(g)?;
    // complement χ = 1 - G + k is at most 2 (two discs)
    let top = g + 1;
    let mut best_any = None;
    let mut best_odd = None;
    for k in (1..=top).rev() {
        let r = chain_feasible(g, k, constraint)?;
        if r.feasible {
            if best_any.is_none() {
                best_any = Some(k);
            }
            if k % 2 == 1 {
                best_odd = Some((k, r.witness.unwrap()));
                break;
            }
        }
    }
    let (length, witness) =
        best_odd.ok_or_else(|| Error::InvalidSurface(format!("no chain fits in N{g} under {constraint:?}")))?;
    if constraint == ChainConstraint::None && best_any != Some(length) {
        return Err(Error::InvalidSurface(format!("longest chain in N{g} has even length {best_any:?}")));
    }
    Ok(MaxChain { genus: g, constraint, length, witness })
}

/// Shape restriction for disjoint circle systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SystemShape {
    /// Any pieces from the allowed list.
    Unrestricted,
    /// Every complementary piece but one is a pair of pants.
    AllButOnePants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleSystem {
    pub circles: usize,
    pub witness: Decomposition,
    /// Piece multisets examined.
    pub enumerated: usize,
}

/// Pieces allowed in complements of maximal systems of disjoint two-sided
/// circles: `Σ_{0,3}, Σ_{0,4}, Σ_{1,1}, N_{1,2}, N_{1,3}`.
pub fn system_pieces() -> [SurfaceType; 5] {
    [
        SurfaceType::orientable(0, 3),
        SurfaceType::orientable(0, 4),
        SurfaceType::orientable(1, 1),
        SurfaceType::nonorientable(1, 2),
        SurfaceType::nonorientable(1, 3),
    ]
}

/// Glues pieces into one connected surface if the cuff counts allow it:
/// a spanning tree first (largest pieces first), then remaining cuffs in
/// pairs, then one reversed non-tree gluing if nothing else makes the
/// result nonorientable.
pub fn glue_closed_nonorientable(pieces: &[SurfaceType]) -> Option<Decomposition> {
    let total: u32 = pieces.iter().map(|p| p.boundary).sum();
    if pieces.is_empty() || total % 2 == 1 || pieces.iter().any(|p| p.boundary == 0) {
        return None;
    }
    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(pieces[i].boundary));
    let ordered: Vec<SurfaceType> = order.iter().map(|&i| pieces[i]).collect();
    let mut next_cuff = vec![0u32; ordered.len()];
    let mut open: Vec<usize> = vec![0];
    let mut gluings = Vec::new();
    let take = |next: &mut Vec<u32>, p: usize| -> Cuff {
        let c = Cuff { piece: p, index: next[p] };
        next[p] += 1;
        c
    };
    for i in 1..ordered.len() {
        let host = *open.iter().find(|&&p| next_cuff[p] < ordered[p].boundary)?;
        let a = take(&mut next_cuff, host);
        let b = take(&mut next_cuff, i);
        gluings.push(Gluing { a, b, reversing: false });
        open.push(i);
    }
    let tree = gluings.len();
    let mut free: Vec<Cuff> = Vec::new();
    for (p, s) in ordered.iter().enumerate() {
        for j in next_cuff[p]..s.boundary {
            free.push(Cuff { piece: p, index: j });
        }
    }
    for pair in free.chunks(2) {
        gluings.push(Gluing { a: pair[0], b: pair[1], reversing: false });
    }
    let mut d = Decomposition { pieces: ordered, gluings };
    if d.is_orientable() {
        if d.gluings.len() == tree {
            return None;
        }
        d.gluings[tree].reversing = true;
    }
    Some(d)
}

fn multisets(n: usize, chi_left: i64, costs: &[i64], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == n {
        if chi_left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let c = costs[cur.len()];
    for k in 0..=(chi_left / c) as usize {
        cur.push(k);
        multisets(n, chi_left - k as i64 * c, costs, cur, out);
        cur.pop();
    }
}

/// Largest system of disjoint, pairwise nonisotopic two-sided circles in
/// closed `N_G` whose complement uses the allowed pieces and shape.
pub fn circle_system(g: u32, shape: SystemShape) -> Result<CircleSystem> {
    let ambient = closed_nonorientable(g)?;
    let kinds = system_pieces();
    let costs: Vec<i64> = kinds.iter().map(|s| -s.euler()).collect();
    let mut counts = Vec::new();
    multisets(kinds.len(), -ambient.euler(), &costs, &mut Vec::new(), &mut counts);
    let enumerated = counts.len();
    let mut best: Option<(usize, Decomposition)> = None;
    for c in counts {
        if shape == SystemShape::AllButOnePants && c[1..].iter().sum::<usize>() != 1 {
            continue;
        }
        let pieces: Vec<SurfaceType> =
            c.iter().zip(&kinds).flat_map(|(&k, s)| std::iter::repeat_n(*s, k)).collect();
        let cuffs: u32 = pieces.iter().map(|p| p.boundary).sum();
        let circles = cuffs as usize / 2;
        if best.as_ref().is_some_and(|(b, _)| *b >= circles) {
            continue;
        }
        if let Some(d) = glue_closed_nonorientable(&pieces) {
            d.validate(&ambient)?;
            best = Some((circles, d));
        }
    }
    let (circles, witness) =
        best.ok_or_else(|| Error::InvalidSurface(format!("no circle system of shape {shape:?} in N{g}")))?;
    Ok(CircleSystem { circles, witness, enumerated })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointSystem {
    pub genus: u32,
    /// Size of the largest system whose complement is all pants but one
    /// piece.
    pub count: usize,
    pub witness: Decomposition,
    /// Size of the largest system with no shape restriction.
    pub max_circles: usize,
    pub max_witness: Decomposition,
}

impl DisjointSystem {
    pub fn exceptional_piece(&self) -> Option<SurfaceType> {
        self.witness.pieces.iter().copied().find(|p| !p.is_pants())
    }
}

/// Maximal disjoint circle systems for `G >= 5`: the shape-restricted
/// count together with the unrestricted maximum.
pub fn max_disjoint_system(g: u32) -> Result<DisjointSystem> {
    if g < 5 {
        return Err(Error::OutOfRange(format!("disjoint systems are computed for genus >= 5, got {g}")));
    }
    let shaped = circle_system(g, SystemShape::AllButOnePants)?;
    let free = circle_system(g, SystemShape::Unrestricted)?;
    Ok(DisjointSystem {
        genus: g,
        count: shaped.circles,
        witness: shaped.witness,
        max_circles: free.circles,
        max_witness: free.witness,
    })
}

/// `(3G - r)/2 - 3` with `r = G mod 2`, checked against the largest
/// unrestricted circle system.
pub fn abelian_rank(g: u32) -> Result<usize> {
    if g < 3 {
        return Err(Error::OutOfRange(format!("rank formula needs genus >= 3, got {g}")));
    }
    let r = g % 2;
    let formula = ((3 * g - r) / 2 - 3) as usize;
    let counted = circle_system(g, SystemShape::Unrestricted)?.circles;
    if counted != formula {
        return Err(Error::InvalidSurface(format!("rank formula {formula} disagrees with circle count {counted}")));
    }
    Ok(formula)
}
