//! Finite simplicial complexes given by their facets.
//!
//! Vertices carry arbitrary ordered labels; internally faces are sorted lists of
//! indices into the sorted vertex list, so lexicographic order on indices agrees
//! with lexicographic order on labels.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

type Face = Vec<usize>;

pub const DEFAULT_COLLAPSE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex<V> {
    vertices: Vec<V>,
    facets: Vec<Face>,
}

impl<V: Ord + Clone> SimplicialComplex<V> {
    /// Keeps the inclusion-maximal members of `facets`. An empty family gives the
    /// complex whose only face is the empty face.
    pub fn build<I, F>(vertices: impl IntoIterator<Item = V>, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = V>,
    {
        let mut vertices: Vec<V> = vertices.into_iter().collect();
        vertices.sort();
        vertices.dedup();
        let mut family = Vec::new();
        for facet in facets {
            let labels: Vec<V> = facet.into_iter().collect();
            if vertices.is_empty() && !labels.is_empty() {
                return Err(Error::EmptyGroundSet);
            }
            let mut idx = labels
                .iter()
                .map(|v| vertices.binary_search(v).map_err(|_| Error::UnknownVertex))
                .collect::<Result<Face>>()?;
            idx.sort_unstable();
            idx.dedup();
            family.push(idx);
        }
        Ok(SimplicialComplex {
            vertices,
            facets: maximal_members(family),
        })
    }

    /// Clique complex of the graph on `vertices` with edges where `adjacent` holds.
    pub fn flag(vertices: impl IntoIterator<Item = V>, adjacent: impl Fn(&V, &V) -> bool) -> Self {
        let mut vertices: Vec<V> = vertices.into_iter().collect();
        vertices.sort();
        vertices.dedup();
        let n = vertices.len();
        let nbrs: Vec<HashSet<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && adjacent(&vertices[i], &vertices[j]))
                    .collect()
            })
            .collect();
        let mut cliques = Vec::new();
        bron_kerbosch(
            &nbrs,
            &mut Vec::new(),
            (0..n).collect(),
            HashSet::new(),
            &mut cliques,
        );
        for c in &mut cliques {
            c.sort_unstable();
        }
        SimplicialComplex {
            vertices,
            facets: maximal_members(cliques),
        }
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    fn labels(&self, face: &[usize]) -> Vec<V> {
        face.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    fn indices(&self, face: &[V]) -> Option<Face> {
        let mut idx = face
            .iter()
            .map(|v| self.vertices.binary_search(v).ok())
            .collect::<Option<Face>>()?;
        idx.sort_unstable();
        idx.dedup();
        Some(idx)
    }

    /// Facets as sorted label lists, in lexicographic order.
    pub fn facets(&self) -> Vec<Vec<V>> {
        self.facets.iter().map(|f| self.labels(f)).collect()
    }

    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn contains_face(&self, face: &[V]) -> bool {
        self.indices(face)
            .is_some_and(|f| self.facets.iter().any(|g| is_subset(&f, g)))
    }

    pub fn is_facet(&self, face: &[V]) -> bool {
        self.indices(face)
            .is_some_and(|f| self.facets.binary_search(&f).is_ok())
    }

    /// Every face of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex<V>) -> bool {
        self.facets
            .iter()
            .all(|f| other.contains_face(&self.labels(f)))
    }

    fn face_indices(&self) -> Vec<Face> {
        let mut seen: HashSet<Face> = HashSet::new();
        for f in &self.facets {
            assert!(f.len() < 64, "facet with {} vertices", f.len());
            for mask in 0u64..(1u64 << f.len()) {
                let sub: Face = f
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                seen.insert(sub);
            }
        }
        let mut faces: Vec<Face> = seen.into_iter().collect();
        faces.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        faces
    }

    /// All faces including the empty face, by size then lexicographically.
    pub fn faces(&self) -> Vec<Vec<V>> {
        self.face_indices().iter().map(|f| self.labels(f)).collect()
    }

    pub fn f_h_vectors(&self) -> FHVector {
        let dim = self.dimension();
        let mut f = vec![0u64; (dim + 2) as usize];
        for face in self.face_indices() {
            f[face.len()] += 1;
        }
        FHVector::from_f(f)
    }

    /// `Σ_{i ≥ -1} (-1)^i f_i`.
    pub fn reduced_euler(&self) -> i64 {
        self.f_h_vectors().reduced_euler()
    }

    /// Checks that `order` is a shelling via unique minimal new faces.
    pub fn verify_shelling(&self, order: &[Vec<V>]) -> Result<ShellingCertificate<V>> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let order_idx: Vec<Face> = order
            .iter()
            .map(|f| {
                self.indices(f)
                    .filter(|g| g.len() == f.len() && self.facets.binary_search(g).is_ok())
                    .ok_or(Error::NotAFacetOrder)
            })
            .collect::<Result<_>>()?;
        let size = self.facets[0].len();
        if size >= 24 {
            return Err(Error::FacetTooLarge(size));
        }
        let full = (1usize << size) - 1;
        let mut minimal_faces = Vec::with_capacity(order_idx.len());
        for (k, facet) in order_idx.iter().enumerate() {
            let mut shared: Vec<usize> = order_idx[..k]
                .iter()
                .map(|g| {
                    facet
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| g.binary_search(v).is_ok())
                        .fold(0usize, |m, (pos, _)| m | 1 << pos)
                })
                .collect();
            shared.sort_unstable();
            shared.dedup();
            let is_new = |mask: usize| shared.iter().all(|&s| mask & !s != 0);
            let mut minimal = Vec::new();
            for mask in 0..=full {
                if is_new(mask) && (0..size).all(|b| mask >> b & 1 == 0 || !is_new(mask & !(1 << b))) {
                    minimal.push(mask);
                }
            }
            match minimal.len() {
                0 => return Err(Error::NoNewFace(k)),
                1 => {}
                _ => return Err(Error::MultipleMinimalNewFaces(k)),
            }
            let m = minimal[0];
            let face: Face = (0..size).filter(|b| m >> b & 1 == 1).map(|b| facet[b]).collect();
            minimal_faces.push(self.labels(&face));
        }
        if order_idx.len() != self.facets.len() {
            return Err(Error::NotAFacetOrder);
        }
        let h = self.f_h_vectors().h;
        let mut census = vec![0i64; h.len()];
        for m in &minimal_faces {
            census[m.len()] += 1;
        }
        if census != h {
            return Err(Error::Internal(format!(
                "minimal face census {census:?} differs from h-vector {h:?}"
            )));
        }
        Ok(ShellingCertificate {
            order: order.to_vec(),
            minimal_faces,
        })
    }

    /// Depth-first search for a sequence of elementary collapses reaching `target`.
    pub fn collapse_to(&self, target: &SimplicialComplex<V>, budget: u64) -> Result<CollapseOutcome<V>> {
        if !target.is_subcomplex_of(self) {
            return Err(Error::NotASubcomplex);
        }
        let faces = self.face_indices();
        let index: HashMap<&Face, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut cofaces = vec![Vec::new(); faces.len()];
        let mut boundary = vec![Vec::new(); faces.len()];
        for (gi, g) in faces.iter().enumerate() {
            for skip in 0..g.len() {
                let mut sub = g.clone();
                sub.remove(skip);
                let fi = index[&sub];
                cofaces[fi].push(gi);
                boundary[gi].push(fi);
            }
        }
        let mut in_target = vec![false; faces.len()];
        for tf in target.face_indices() {
            let f = self.indices(&target.labels(&tf)).expect("checked subcomplex");
            in_target[index[&f]] = true;
        }
        let removable = in_target.iter().filter(|&&t| !t).count();
        let euler_gap: i64 = faces
            .iter()
            .zip(&in_target)
            .filter(|(_, &t)| !t)
            .map(|(f, _)| if f.len() % 2 == 0 { 1 } else { -1 })
            .sum();
        if removable % 2 == 1 || euler_gap != 0 {
            return Ok(CollapseOutcome::ProvedImpossible { explored: 0 });
        }
        let mut search = CollapseSearch {
            cofaces: &cofaces,
            boundary: &boundary,
            in_target: &in_target,
            faces: &faces,
            alive: vec![true; faces.len()],
            remaining: removable,
            visited: HashSet::new(),
            explored: 0,
            budget,
            exhausted: false,
            path: Vec::new(),
        };
        if search.dfs() {
            let steps = search
                .path
                .iter()
                .map(|&(f, g)| ElementaryCollapse {
                    face: self.labels(&faces[f]),
                    free_face: self.labels(&faces[g]),
                })
                .collect();
            Ok(CollapseOutcome::Collapsed(steps))
        } else if search.exhausted {
            Ok(CollapseOutcome::BudgetExhausted {
                explored: search.explored,
            })
        } else {
            Ok(CollapseOutcome::ProvedImpossible {
                explored: search.explored,
            })
        }
    }

    /// Reduced Betti numbers over the rationals.
    pub fn betti_numbers(&self) -> ReducedBetti {
        let faces = self.face_indices();
        let dim = self.dimension();
        let mut by_size: Vec<Vec<&Face>> = vec![Vec::new(); (dim + 2) as usize];
        for f in &faces {
            by_size[f.len()].push(f);
        }
        let positions: Vec<HashMap<&Face, usize>> = by_size
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect())
            .collect();
        // rank[s] = rank of the boundary map from faces of size s to size s-1.
        let mut rank = vec![0usize; by_size.len() + 1];
        for s in 1..by_size.len() {
            let rows: Vec<SparseRow> = by_size[s]
                .iter()
                .map(|f| {
                    let mut row: SparseRow = (0..f.len())
                        .map(|skip| {
                            let mut sub = (*f).clone();
                            sub.remove(skip);
                            let sign = if skip % 2 == 0 { 1 } else { -1 };
                            (positions[s - 1][&sub], BigInt::from(sign))
                        })
                        .collect();
                    row.sort_by_key(|e| e.0);
                    row
                })
                .collect();
            rank[s] = integer_rank(rows);
        }
        let values = (0..by_size.len())
            .map(|s| by_size[s].len() - rank[s] - rank[s + 1])
            .collect();
        ReducedBetti { values }
    }
}

struct CollapseSearch<'a> {
    cofaces: &'a [Vec<usize>],
    boundary: &'a [Vec<usize>],
    in_target: &'a [bool],
    faces: &'a [Face],
    alive: Vec<bool>,
    remaining: usize,
    visited: HashSet<Vec<u64>>,
    explored: u64,
    budget: u64,
    exhausted: bool,
    path: Vec<(usize, usize)>,
}

impl CollapseSearch<'_> {
    fn key(&self) -> Vec<u64> {
        let mut words = vec![0u64; self.alive.len().div_ceil(64)];
        for (i, &a) in self.alive.iter().enumerate() {
            if a {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        words
    }

    fn free_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for (fi, face) in self.faces.iter().enumerate() {
            if !self.alive[fi] || self.in_target[fi] || face.is_empty() {
                continue;
            }
            if self.cofaces[fi].iter().any(|&g| self.alive[g]) {
                continue;
            }
            for &sub in &self.boundary[fi] {
                if self.faces[sub].is_empty() || self.in_target[sub] || !self.alive[sub] {
                    continue;
                }
                let others = self.cofaces[sub].iter().filter(|&&g| self.alive[g]).count();
                if others == 1 {
                    pairs.push((fi, sub));
                }
            }
        }
        pairs.sort_by(|x, y| {
            self.faces[x.1]
                .cmp(&self.faces[y.1])
                .then_with(|| self.faces[x.0].cmp(&self.faces[y.0]))
        });
        pairs
    }

    fn dfs(&mut self) -> bool {
        if self.remaining == 0 {
            return true;
        }
        if self.explored >= self.budget {
            self.exhausted = true;
            return false;
        }
        if !self.visited.insert(self.key()) {
            return false;
        }
        self.explored += 1;
        for (f, g) in self.free_pairs() {
            self.alive[f] = false;
            self.alive[g] = false;
            self.remaining -= 2;
            self.path.push((f, g));
            if self.dfs() {
                return true;
            }
            self.path.pop();
            self.remaining += 2;
            self.alive[f] = true;
            self.alive[g] = true;
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

fn maximal_members(mut family: Vec<Face>) -> Vec<Face> {
    family.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
    family.dedup();
    let mut kept: Vec<Face> = Vec::new();
    for f in family {
        if !kept.iter().any(|g| is_subset(&f, g)) {
            kept.push(f);
        }
    }
    if kept.is_empty() {
        kept.push(Vec::new());
    }
    kept.sort();
    kept
}

fn bron_kerbosch(
    nbrs: &[HashSet<usize>],
    clique: &mut Vec<usize>,
    mut candidates: HashSet<usize>,
    mut excluded: HashSet<usize>,
    out: &mut Vec<Face>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(clique.clone());
        }
        return;
    }
    let pivot = *candidates
        .union(&excluded)
        .max_by_key(|&&u| (candidates.intersection(&nbrs[u]).count(), std::cmp::Reverse(u)))
        .expect("nonempty");
    let mut branch: Vec<usize> = candidates.difference(&nbrs[pivot]).copied().collect();
    branch.sort_unstable();
    for v in branch {
        clique.push(v);
        bron_kerbosch(
            nbrs,
            clique,
            candidates.intersection(&nbrs[v]).copied().collect(),
            excluded.intersection(&nbrs[v]).copied().collect(),
            out,
        );
        clique.pop();
        candidates.remove(&v);
        excluded.insert(v);
    }
}

type SparseRow = Vec<(usize, BigInt)>;

/// Rank over Q by fraction-free row reduction on leading columns.
fn integer_rank(mut rows: Vec<SparseRow>) -> usize {
    rows.sort_by_key(|r| r.len());
    let mut pivots: HashMap<usize, SparseRow> = HashMap::new();
    for mut row in rows {
        while let Some((col, lead)) = row.first().cloned() {
            let Some(piv) = pivots.get(&col) else {
                pivots.insert(col, row);
                break;
            };
            let plead = &piv[0].1;
            let g = lead.gcd(plead);
            let (ms, mp) = (plead / &g, &lead / &g);
            row = combine(&row, &ms, piv, &mp);
            normalize(&mut row);
        }
    }
    pivots.len()
}

/// `x·s - y·t`, dropping zero entries.
fn combine(x: &SparseRow, s: &BigInt, y: &SparseRow, t: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let entry = match (x.get(i), y.get(j)) {
            (Some(a), Some(b)) if a.0 == b.0 => {
                i += 1;
                j += 1;
                (a.0, &a.1 * s - &b.1 * t)
            }
            (Some(a), Some(b)) if a.0 < b.0 => {
                i += 1;
                (a.0, &a.1 * s)
            }
            (Some(a), None) => {
                i += 1;
                (a.0, &a.1 * s)
            }
            (_, Some(b)) => {
                j += 1;
                (b.0, -(&b.1 * t))
            }
            (None, None) => unreachable!(),
        };
        if !entry.1.is_zero() {
            out.push(entry);
        }
    }
    out
}

fn normalize(row: &mut SparseRow) {
    let g = row
        .iter()
        .fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && g.abs() != BigInt::from(1) {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `f = (f_{-1}, ..., f_d)` and `h = (h_{-1}, ..., h_d)`, related by
/// `Σ f_i (t-1)^{d-i} = Σ h_k t^{d-k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FHVector {
    pub dim: isize,
    pub f: Vec<u64>,
    pub h: Vec<i64>,
}

fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

impl FHVector {
    pub fn from_f(f: Vec<u64>) -> Self {
        let top = f.len() - 1;
        let h = (0..f.len())
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                        sign * binom(top - i, j - i) * f[i] as i64
                    })
                    .sum()
            })
            .collect();
        FHVector {
            dim: top as isize - 1,
            f,
            h,
        }
    }

    /// Inverse transform: `f_{j-1} = Σ_{k ≤ j} C(d+1-k, j-k) h_{k-1}`.
    pub fn f_from_h(h: &[i64]) -> Vec<i64> {
        let top = h.len() - 1;
        (0..h.len())
            .map(|j| (0..=j).map(|k| binom(top - k, j - k) * h[k]).sum())
            .collect()
    }

    pub fn reduced_euler(&self) -> i64 {
        self.f
            .iter()
            .enumerate()
            .map(|(s, &n)| if s % 2 == 1 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// `values[k]` is the reduced Betti number in degree `k - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedBetti {
    values: Vec<usize>,
}

impl ReducedBetti {
    pub fn degree(&self, d: isize) -> usize {
        usize::try_from(d + 1)
            .ok()
            .and_then(|i| self.values.get(i).copied())
            .unwrap_or(0)
    }

    /// Degrees `0..=dim`.
    pub fn nonnegative(&self) -> &[usize] {
        &self.values[1..]
    }

    /// Degrees `-1..=dim`.
    pub fn with_empty_degree(&self) -> &[usize] {
        &self.values
    }

    pub fn top_degree(&self) -> isize {
        self.values.len() as isize - 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShellingCertificate<V> {
    pub order: Vec<Vec<V>>,
    pub minimal_faces: Vec<Vec<V>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementaryCollapse<V> {
    pub face: Vec<V>,
    pub free_face: Vec<V>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CollapseOutcome<V> {
    Collapsed(Vec<ElementaryCollapse<V>>),
    /// The whole search space was exhausted (or an invariant rules the target out).
    ProvedImpossible { explored: u64 },
    BudgetExhausted { explored: u64 },
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr<V> {
    vertices: Vec<V>,
    facets: Vec<Vec<V>>,
}

impl<V: Serialize + Ord + Clone> Serialize for SimplicialComplex<V> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexRepr {
            vertices: self.vertices.clone(),
            facets: self.facets(),
        }
        .serialize(s)
    }
}

impl<'de, V: Deserialize<'de> + Ord + Clone> Deserialize<'de> for SimplicialComplex<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ComplexRepr::<V>::deserialize(d)?;
        SimplicialComplex::build(repr.vertices, repr.facets).map_err(D::Error::custom)
    }
}
