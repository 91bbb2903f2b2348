//! Rational associahedra `Ass(a,b)` and their flag completions `Âss(a,b)`, both
//! realised as complexes on diagonals of the polygon with `b+1` vertices.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dyck::{enumerate, DyckPath, Point};
use crate::error::{Error, Result};
use crate::numbers::{derived_catalan, kirkman, narayana, rational_catalan, CoprimePair};
use crate::verdict::Verdict;
use crate::scomplex::{
    CollapseOutcome, ElementaryCollapse, FHVector, ReducedBetti, ShellingCertificate,
    SimplicialComplex,
};

/// Unordered vertex pair `u < v` of the polygon, vertices labelled `1..=n` clockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[u32; 2]", from = "[u32; 2]")]
pub struct Diagonal {
    u: u32,
    v: u32,
}

impl Diagonal {
    /// Checks the pair against a polygon with `n` vertices.
    pub fn new(x: u32, y: u32, n: u32) -> Result<Self> {
        let (u, v) = (x.min(y), x.max(y));
        if u < 1 || v > n || v - u < 2 || v - u == n - 1 {
            return Err(Error::InvalidDiagonal(format!("({x},{y}) in a {n}-gon")));
        }
        Ok(Diagonal { u, v })
    }

    pub fn endpoints(self) -> (u32, u32) {
        (self.u, self.v)
    }

    /// Polygon vertices strictly on the side between `u` and `v`.
    pub fn inner_count(self) -> u32 {
        self.v - self.u - 1
    }
}

impl From<[u32; 2]> for Diagonal {
    fn from([x, y]: [u32; 2]) -> Self {
        Diagonal {
            u: x.min(y),
            v: x.max(y),
        }
    }
}

impl From<Diagonal> for [u32; 2] {
    fn from(d: Diagonal) -> Self {
        [d.u, d.v]
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// Endpoints do not strictly interleave around the polygon.
pub fn noncrossing(d1: Diagonal, d2: Diagonal) -> bool {
    let (a, b) = d1.endpoints();
    let (c, d) = d2.endpoints();
    !((a < c && c < b && b < d) || (c < a && a < d && d < b))
}

/// `S(a,b) = { ⌊ib/a⌋ : 1 ≤ i < a }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleSet {
    pair: CoprimePair,
    separations: BTreeSet<u32>,
}

impl AdmissibleSet {
    pub fn new(pair: CoprimePair) -> Result<Self> {
        let pair = pair.require_ascending()?;
        let separations = (1..pair.a()).map(|i| i * pair.b() / pair.a()).collect();
        Ok(AdmissibleSet { pair, separations })
    }

    pub fn separations(&self) -> &BTreeSet<u32> {
        &self.separations
    }

    /// A diagonal splits the other `b-1` vertices into `i` and `b-1-i`; either side may match.
    pub fn admits(&self, d: Diagonal) -> bool {
        let i = d.inner_count();
        let j = self.pair.b() - 1 - i;
        self.separations.contains(&i) || self.separations.contains(&j)
    }

    /// Admissible diagonals of the `(b+1)`-gon, sorted.
    pub fn diagonals(&self) -> Vec<Diagonal> {
        all_diagonals(self.pair.b() + 1)
            .into_iter()
            .filter(|&d| self.admits(d))
            .collect()
    }
}

pub fn admissible_set(pair: CoprimePair) -> Result<AdmissibleSet> {
    AdmissibleSet::new(pair)
}

pub fn all_diagonals(n: u32) -> Vec<Diagonal> {
    let mut out = Vec::new();
    for u in 1..=n {
        for v in u + 2..=n {
            if v - u != n - 1 {
                out.push(Diagonal { u, v });
            }
        }
    }
    out
}

/// `e(P)`: the diagonal `(P.x + 1, Q.x + 1)` of the laser fired from `P`.
pub fn diagonal_of_laser(path: &DyckPath, source: Point) -> Result<Diagonal> {
    let laser = path.fire_laser(source)?;
    Diagonal::new(source.x + 1, laser.hit.x + 1, path.pair().b() + 1)
}

/// `F(D)`: diagonals of the lasers from all non-origin north-step bottoms.
pub fn facet(path: &DyckPath) -> Result<Vec<Diagonal>> {
    path.pair().require_ascending()?;
    laser_diagonals(path, &path.north_bottoms())
}

/// `V(D)`: diagonals of the valley lasers.
pub fn valley_face(path: &DyckPath) -> Result<Vec<Diagonal>> {
    path.pair().require_ascending()?;
    laser_diagonals(path, &path.valleys())
}

fn laser_diagonals(path: &DyckPath, sources: &[Point]) -> Result<Vec<Diagonal>> {
    let set: BTreeSet<Diagonal> = sources
        .iter()
        .map(|&p| diagonal_of_laser(path, p))
        .collect::<Result<_>>()?;
    if set.len() != sources.len() {
        return Err(Error::Internal(format!("repeated laser diagonal on {path}")));
    }
    Ok(set.into_iter().collect())
}

pub type Complex = SimplicialComplex<Diagonal>;

pub fn build_ass(pair: CoprimePair) -> Result<Complex> {
    let adm = AdmissibleSet::new(pair)?;
    let facets = enumerate(pair)
        .map(|d| facet(&d))
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::build(adm.diagonals(), facets)
}

/// Flag complex of pairwise noncrossing admissible diagonals.
pub fn build_ass_hat(pair: CoprimePair) -> Result<Complex> {
    let adm = AdmissibleSet::new(pair)?;
    Ok(SimplicialComplex::flag(adm.diagonals(), |&x, &y| noncrossing(x, y)))
}

#[derive(Debug, Clone, Serialize)]
pub struct ShellingOrder {
    pub paths: Vec<DyckPath>,
    pub facets: Vec<Vec<Diagonal>>,
    pub valley_faces: Vec<Vec<Diagonal>>,
}

/// Facets of `Ass(a,b)` in lexicographic order of `λ(D)`, with valley faces.
pub fn shelling_order(pair: CoprimePair) -> Result<ShellingOrder> {
    pair.require_ascending()?;
    let paths: Vec<DyckPath> = enumerate(pair).collect();
    let facets = paths.iter().map(facet).collect::<Result<_>>()?;
    let valley_faces = paths.iter().map(valley_face).collect::<Result<_>>()?;
    Ok(ShellingOrder {
        paths,
        facets,
        valley_faces,
    })
}

/// Certifies the lex order as a shelling whose minimal new faces are the valley faces.
pub fn certify_shelling(pair: CoprimePair) -> Result<ShellingCertificate<Diagonal>> {
    let order = shelling_order(pair)?;
    let cert = build_ass(pair)?.verify_shelling(&order.facets)?;
    if let Some(k) = (0..cert.minimal_faces.len()).find(|&k| cert.minimal_faces[k] != order.valley_faces[k]) {
        return Err(Error::IdentityMismatch(format!(
            "{pair}: minimal face of facet {k} is {:?}, valley face is {:?}",
            cert.minimal_faces[k], order.valley_faces[k]
        )));
    }
    Ok(cert)
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub pair: CoprimePair,
    pub fh: FHVector,
    pub reduced_euler: i64,
    pub betti: ReducedBetti,
    pub derived_catalan: u64,
}

fn to_u64(c: crate::numbers::Count) -> Result<u64> {
    u64::try_from(c).map_err(|_| Error::Internal("count exceeds u64".into()))
}

/// f = Kirkman, h = Narayana, reduced Euler characteristic and Betti numbers
/// governed by the derived Catalan number.
pub fn check_identities(pair: CoprimePair) -> Result<IdentityReport> {
    pair.require_ascending()?;
    let ass = build_ass(pair)?;
    let fh = ass.f_h_vectors();
    let a = pair.a();
    let fail = |msg: String| Err(Error::IdentityMismatch(format!("{pair}: {msg}")));
    if ass.num_facets() as u64 != to_u64(rational_catalan(pair))? {
        return fail(format!("{} facets", ass.num_facets()));
    }
    if fh.f.len() != a as usize {
        return fail(format!("dimension {}", fh.dim));
    }
    for i in 1..=a {
        let k = to_u64(kirkman(pair, i)?)?;
        if fh.f[i as usize - 1] != k {
            return fail(format!("f_{} = {} but Kirk = {k}", i as i64 - 2, fh.f[i as usize - 1]));
        }
        let n = to_u64(narayana(pair, i)?)? as i64;
        if fh.h[i as usize - 1] != n {
            return fail(format!("h_{} = {} but Nar = {n}", i as i64 - 2, fh.h[i as usize - 1]));
        }
    }
    let derived = to_u64(derived_catalan(pair))?;
    // Σ(-1)^i f_i is (-1)^a Cat'; the opposite sign convention gives (-1)^(a+1) Cat'.
    let chi = fh.reduced_euler();
    let expected = if a.is_multiple_of(2) { derived as i64 } else { -(derived as i64) };
    if chi != expected {
        return fail(format!("reduced Euler characteristic {chi}, expected {expected}"));
    }
    let betti = ass.betti_numbers();
    let top = a as isize - 2;
    for d in -1..top {
        if betti.degree(d) != 0 {
            return fail(format!("reduced Betti in degree {d} is {}", betti.degree(d)));
        }
    }
    if betti.degree(top) as u64 != derived {
        return fail(format!("top Betti {} != Cat' {derived}", betti.degree(top)));
    }
    Ok(IdentityReport {
        pair,
        fh,
        reduced_euler: chi,
        betti,
        derived_catalan: derived,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CollapseWitness {
    Sequence(Vec<ElementaryCollapse<Diagonal>>),
    Explored { explored: u64 },
}

/// Searches for elementary collapses from `Âss(a,b)` onto `Ass(a,b)`.
pub fn check_collapse_conjecture(pair: CoprimePair, budget: u64) -> Result<Verdict<CollapseWitness>> {
    let hat = build_ass_hat(pair)?;
    let ass = build_ass(pair)?;
    Ok(match hat.collapse_to(&ass, budget)? {
        CollapseOutcome::Collapsed(seq) => Verdict::Verified(CollapseWitness::Sequence(seq)),
        CollapseOutcome::ProvedImpossible { explored } => {
            Verdict::Refuted(CollapseWitness::Explored { explored })
        }
        CollapseOutcome::BudgetExhausted { explored } => {
            Verdict::Inconclusive(CollapseWitness::Explored { explored })
        }
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AlexanderReport {
    pub pair: CoprimePair,
    pub dual: CoprimePair,
    /// Reduced Betti numbers from degree -1 upward.
    pub betti: Vec<usize>,
    pub dual_betti: Vec<usize>,
    pub vertices: usize,
    pub dual_vertices: usize,
    pub total_diagonals: usize,
}

/// `Âss(a,b)` and `Âss(b-a,b)` inside the `(b-3)`-sphere `Ass(b-1,b)`:
/// `β̃_i` of one equals `β̃_{b-4-i}` of the other, and their vertex sets partition
/// the diagonals.
pub fn check_alexander_duality(pair: CoprimePair) -> Result<AlexanderReport> {
    let pair = pair.require_ascending()?;
    let b = pair.b();
    let dual = CoprimePair::new(b - pair.a(), b)?;
    let (x, y) = (build_ass_hat(pair)?, build_ass_hat(dual)?);
    let all = all_diagonals(b + 1);
    let (sx, sy): (BTreeSet<_>, BTreeSet<_>) =
        (x.vertices().iter().collect(), y.vertices().iter().collect());
    let fail = |msg: String| Err(Error::IdentityMismatch(format!("{pair}: {msg}")));
    if pair != dual {
        if let Some(d) = sx.intersection(&sy).next() {
            return fail(format!("{d} admissible for both"));
        }
        if sx.len() + sy.len() != all.len() {
            return fail(format!(
                "{} + {} admissible diagonals, polygon has {}",
                sx.len(),
                sy.len(),
                all.len()
            ));
        }
    }
    let sphere_dim = b as isize - 3;
    let (bx, by) = (x.betti_numbers(), y.betti_numbers());
    for i in -1..=sphere_dim {
        let j = sphere_dim - 1 - i;
        if bx.degree(i) != by.degree(j) {
            return fail(format!(
                "β̃_{i} = {} but dual β̃_{j} = {}",
                bx.degree(i),
                by.degree(j)
            ));
        }
    }
    let pad = |r: &ReducedBetti| -> Vec<usize> { (-1..=sphere_dim).map(|d| r.degree(d)).collect() };
    Ok(AlexanderReport {
        pair,
        dual,
        betti: pad(&bx),
        dual_betti: pad(&by),
        vertices: sx.len(),
        dual_vertices: sy.len(),
        total_diagonals: all.len(),
    })
}
