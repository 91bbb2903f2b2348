//! Rational noncrossing partitions from laser decompositions of Dyck paths.
//!
//! Lasers are parallel chords with both ends on the path, so every region between
//! the path and the diagonal has a unique lower boundary: either one laser or the
//! diagonal itself. A label at lattice point `(x, y)` sits at `(x + ε, y - ε)`; its
//! region is identified by the highest laser passing strictly below that spot.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::dyck::{enumerate, DyckPath, Laser, Point, Step};
use crate::error::{Error, Result};
use crate::numbers::{eval_at_root_of_unity, q_rational_catalan, CoprimePair, RootValue};
use crate::verdict::Verdict;

/// Partition of `{1, ..., size}`; blocks sorted internally and by minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    size: u32,
    blocks: Vec<Vec<u32>>,
}

impl SetPartition {
    pub fn new(size: u32, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = vec![false; size as usize + 1];
        for &e in blocks.iter().flatten() {
            if e == 0 || e > size {
                return Err(Error::InvalidSetPartition(format!("{e} not in 1..={size}")));
            }
            if std::mem::replace(&mut seen[e as usize], true) {
                return Err(Error::InvalidSetPartition(format!("{e} repeated")));
            }
        }
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::InvalidSetPartition("empty block".into()));
        }
        if let Some(missing) = (1..=size).find(|&e| !seen[e as usize]) {
            return Err(Error::InvalidSetPartition(format!("{missing} missing")));
        }
        Ok(Self::canonical(size, blocks))
    }

    fn canonical(size: u32, mut blocks: Vec<Vec<u32>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { size, blocks }
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_minima(&self) -> Vec<u32> {
        self.blocks.iter().map(|b| b[0]).collect()
    }

    fn block_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.size as usize + 1];
        for (k, b) in self.blocks.iter().enumerate() {
            for &e in b {
                owner[e as usize] = k;
            }
        }
        owner
    }

    /// No `i < j < k < l` with `i ~ k`, `j ~ l` and `i ≁ j`.
    pub fn is_noncrossing(&self) -> bool {
        let owner = self.block_of();
        // Scan left to right with a stack of open blocks; a crossing shows up as
        // returning to a block that is not on top of the stack.
        let last: HashMap<usize, u32> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(k, b)| (k, *b.last().unwrap()))
            .collect();
        let mut stack: Vec<usize> = Vec::new();
        for e in 1..=self.size {
            let k = owner[e as usize];
            if self.blocks[k][0] == e {
                stack.push(k);
            } else if stack.last() != Some(&k) {
                return false;
            }
            if last[&k] == e {
                stack.pop();
            }
        }
        true
    }

    /// Relabels `i ↦ i - 1`, with `1 ↦ size`.
    pub fn rotate(&self) -> SetPartition {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&e| if e == 1 { self.size } else { e - 1 }).collect())
            .collect();
        Self::canonical(self.size, blocks)
    }

    pub fn merge(&self, i: usize, j: usize) -> SetPartition {
        let mut blocks: Vec<Vec<u32>> = self
            .blocks
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, b)| b.clone())
            .collect();
        let mut joined = self.blocks[i].clone();
        joined.extend(&self.blocks[j]);
        blocks.push(joined);
        Self::canonical(self.size, blocks)
    }

    /// Partitions covering `self` in the refinement order on noncrossing partitions.
    pub fn nc_covers(&self) -> Result<Vec<SetPartition>> {
        if !self.is_noncrossing() {
            return Err(Error::Crossing);
        }
        let mut out = Vec::new();
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                let merged = self.merge(i, j);
                if merged.is_noncrossing() {
                    out.push(merged);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Every set partition of `{1..m}`, via restricted growth strings.
    pub fn all(m: u32) -> Vec<SetPartition> {
        fn rec(m: u32, word: &mut Vec<usize>, max: usize, out: &mut Vec<SetPartition>) {
            if word.len() == m as usize {
                let mut blocks = vec![Vec::new(); max];
                for (i, &k) in word.iter().enumerate() {
                    blocks[k].push(i as u32 + 1);
                }
                out.push(SetPartition::canonical(m, blocks));
                return;
            }
            for k in 0..=max {
                word.push(k);
                rec(m, word, max.max(k + 1), out);
                word.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, &mut Vec::new(), 0, &mut out);
        out
    }

    pub fn all_noncrossing(m: u32) -> Vec<SetPartition> {
        Self::all(m).into_iter().filter(|p| p.is_noncrossing()).collect()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", parts.join(" | "))
    }
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundary {
    Diagonal,
    /// Index into [`RegionAssignment::lasers`].
    Laser(usize),
}

#[derive(Debug, Clone)]
pub struct RegionAssignment {
    pub lasers: Vec<Laser>,
    pub labels: Vec<Point>,
    /// Parallel to `labels`.
    pub lower: Vec<LowerBoundary>,
}

impl RegionAssignment {
    pub fn blocks(&self) -> SetPartition {
        let mut classes: BTreeMap<LowerBoundary, Vec<u32>> = BTreeMap::new();
        for (i, &lb) in self.lower.iter().enumerate() {
            classes.entry(lb).or_default().push(i as u32 + 1);
        }
        SetPartition::canonical(self.labels.len() as u32, classes.into_values().collect())
    }
}

pub fn region_assignment(
    path: &DyckPath,
    sources: &[Point],
    labels: &[Point],
) -> Result<RegionAssignment> {
    let lasers = sources
        .iter()
        .map(|&p| path.fire_laser(p))
        .collect::<Result<Vec<_>>>()?;
    let lower = labels
        .iter()
        .map(|&pt| {
            lasers
                .iter()
                .enumerate()
                .filter(|(_, l)| l.lies_below_label(pt))
                .max_by_key(|(_, l)| l.intercept())
                .map_or(LowerBoundary::Diagonal, |(k, _)| LowerBoundary::Laser(k))
        })
        .collect();
    Ok(RegionAssignment {
        lasers,
        labels: labels.to_vec(),
        lower,
    })
}

/// Labels numbered `1..` in the order given, grouped by the region they lie in.
pub fn region_blocks(path: &DyckPath, sources: &[Point], labels: &[Point]) -> Result<SetPartition> {
    Ok(region_assignment(path, sources, labels)?.blocks())
}

/// `μ(D)`, a partition of `[a+b-1]`: lasers from every non-origin north-step bottom,
/// labels on the internal lattice points.
pub fn homogeneous(path: &DyckPath) -> Result<SetPartition> {
    path.pair().require_ascending()?;
    region_blocks(path, &path.north_bottoms(), &path.internal_points())
}

/// `π(D)`, a partition of `[b-1]`: lasers from valleys only, labels on the right
/// ends of east steps other than the terminal point.
pub fn inhomogeneous(path: &DyckPath) -> Result<SetPartition> {
    path.pair().require_ascending()?;
    region_blocks(path, &path.valleys(), &path.east_step_ends())
}

/// Labels (positions among internal points) of the tops of the north steps.
pub fn north_top_labels(path: &DyckPath) -> Vec<u32> {
    path.steps()
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == Step::North)
        .map(|(i, _)| i as u32 + 1)
        .collect()
}

/// Promotion as a permutation of the lex-ordered enumeration.
pub fn promotion_permutation(pair: CoprimePair) -> (Vec<DyckPath>, Vec<usize>) {
    let paths: Vec<DyckPath> = enumerate(pair).collect();
    let index: HashMap<&DyckPath, usize> = paths.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let perm = paths.iter().map(|d| index[&d.promote()]).collect();
    (paths, perm)
}

fn orbit_sizes(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut sizes = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        sizes.push(len);
    }
    sizes.sort_unstable();
    sizes
}

#[derive(Debug, Clone, Serialize)]
pub struct PromotionReport {
    pub pair: CoprimePair,
    pub paths: usize,
    /// Sorted multiset of orbit sizes.
    pub orbit_sizes: Vec<usize>,
}

/// `μ(ρ(D)) = rotate(μ(D))` for every path, and `ρ^{a+b-1} = id`.
pub fn verify_promotion_rotation(pair: CoprimePair) -> Result<PromotionReport> {
    pair.require_ascending()?;
    let (paths, perm) = promotion_permutation(pair);
    for (i, d) in paths.iter().enumerate() {
        let lhs = homogeneous(&paths[perm[i]])?;
        let rhs = homogeneous(d)?.rotate();
        if lhs != rhs {
            return Err(Error::IdentityMismatch(format!(
                "{pair}: μ(ρ({d})) = {lhs} but rotation of μ({d}) is {rhs}"
            )));
        }
    }
    let order = (pair.a() + pair.b() - 1) as usize;
    let sizes = orbit_sizes(&perm);
    if let Some(s) = sizes.iter().find(|&&s| !order.is_multiple_of(s)) {
        return Err(Error::IdentityMismatch(format!(
            "{pair}: promotion orbit of size {s} does not divide {order}"
        )));
    }
    Ok(PromotionReport {
        pair,
        paths: paths.len(),
        orbit_sizes: sizes,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CspRow {
    pub d: u32,
    pub fixed_points: usize,
    pub predicted: RootValue,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CspReport {
    pub pair: CoprimePair,
    pub order: u32,
    pub rows: Vec<CspRow>,
    pub holds: bool,
}

/// Compares fixed points of `ρ^d` with the q-Catalan number at `ω^d`, `0 ≤ d < a+b-1`.
pub fn csp_check(pair: CoprimePair) -> Result<CspReport> {
    pair.require_ascending()?;
    let m = pair.a() + pair.b() - 1;
    let x = q_rational_catalan(pair)?;
    let (_, perm) = promotion_permutation(pair);
    let sizes = orbit_sizes(&perm);
    let rows = (0..m)
        .map(|d| {
            let fixed_points: usize = sizes.iter().filter(|&&s| (d as usize).is_multiple_of(s)).sum();
            let predicted = eval_at_root_of_unity(&x, m, d)?;
            let holds = predicted == RootValue::Integer(fixed_points.into());
            Ok(CspRow {
                d,
                fixed_points,
                predicted,
                holds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CspReport {
        pair,
        order: m,
        holds: rows.iter().all(|r| r.holds),
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderFilterReport {
    pub pair: CoprimePair,
    pub image_size: usize,
    pub covers_checked: usize,
}

/// Every noncrossing cover of an inhomogeneous partition is again inhomogeneous.
pub fn verify_order_filter(pair: CoprimePair) -> Result<OrderFilterReport> {
    pair.require_ascending()?;
    let image: HashSet<SetPartition> = enumerate(pair)
        .map(|d| inhomogeneous(&d))
        .collect::<Result<_>>()?;
    let mut covers_checked = 0;
    let mut sorted: Vec<&SetPartition> = image.iter().collect();
    sorted.sort();
    for pi in sorted {
        for cover in pi.nc_covers()? {
            covers_checked += 1;
            if !image.contains(&cover) {
                return Err(Error::IdentityMismatch(format!(
                    "{pair}: {cover} covers {pi} but is not inhomogeneous"
                )));
            }
        }
    }
    Ok(OrderFilterReport {
        pair,
        image_size: image.len(),
        covers_checked,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum RotationWitness {
    /// `permutation[i] = j`: rotating the partition of path `i` gives that of path `j`,
    /// paths indexed in lexicographic order of `λ`.
    Permutation { permutation: Vec<usize>, orbit_sizes: Vec<usize> },
    Escape {
        path: String,
        partition: SetPartition,
        rotated: SetPartition,
    },
}

/// Whether rotation of `[b-1]` preserves the set of inhomogeneous partitions.
pub fn probe_inhomogeneous_rotation(pair: CoprimePair) -> Result<Verdict<RotationWitness>> {
    pair.require_ascending()?;
    let paths: Vec<DyckPath> = enumerate(pair).collect();
    let parts = paths.iter().map(inhomogeneous).collect::<Result<Vec<_>>>()?;
    let index: HashMap<&SetPartition, usize> = parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut permutation = Vec::with_capacity(parts.len());
    for (d, p) in paths.iter().zip(&parts) {
        let rotated = p.rotate();
        match index.get(&rotated) {
            Some(&j) => permutation.push(j),
            None => {
                return Ok(Verdict::Refuted(RotationWitness::Escape {
                    path: d.word(),
                    partition: p.clone(),
                    rotated,
                }))
            }
        }
    }
    let orbit_sizes = orbit_sizes(&permutation);
    Ok(Verdict::Verified(RotationWitness::Permutation {
        permutation,
        orbit_sizes,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: u32, b: u32) -> CoprimePair {
        CoprimePair::new(a, b).unwrap()
    }

    fn sp(size: u32, blocks: &[&[u32]]) -> SetPartition {
        SetPartition::new(size, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn running_example() -> DyckPath {
        DyckPath::parse(pair(5, 8), "NNEENNEEENEEE").unwrap()
    }

    /// Direct definition: look for a crossing quadruple.
    fn crossing_by_quadruples(p: &SetPartition) -> bool {
        let owner = p.block_of();
        let m = p.size() as usize;
        for i in 1..=m {
            for j in i + 1..=m {
                for k in j + 1..=m {
                    for l in k + 1..=m {
                        if owner[i] == owner[k] && owner[j] == owner[l] && owner[i] != owner[j] {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn set_partition_validation() {
        assert!(SetPartition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2, 4], vec![3]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2, 3], vec![]]).is_err());
        assert_eq!(sp(4, &[&[4, 2], &[3], &[1]]).blocks(), &[vec![1], vec![2, 4], vec![3]]);
        assert_eq!(sp(4, &[&[4, 1], &[2, 3]]).to_string(), "{1,4 | 2,3}");
        assert_eq!(
            serde_json::to_string(&sp(7, &[&[1, 2, 7], &[3, 4, 5], &[6]])).unwrap(),
            "[[1,2,7],[3,4,5],[6]]"
        );
    }

    #[test]
    fn noncrossing_predicate() {
        assert!(!sp(4, &[&[1, 3], &[2, 4]]).is_noncrossing());
        assert!(sp(4, &[&[1, 4], &[2, 3]]).is_noncrossing());
        for m in 0..=7 {
            for p in SetPartition::all(m) {
                assert_eq!(p.is_noncrossing(), !crossing_by_quadruples(&p), "{p}");
            }
        }
        // Catalan numbers.
        let counts: Vec<usize> = (1..=7).map(|m| SetPartition::all_noncrossing(m).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn rotation() {
        assert_eq!(sp(4, &[&[1, 4], &[2, 3]]).rotate(), sp(4, &[&[1, 2], &[3, 4]]));
        let p = sp(7, &[&[1, 2, 7], &[3, 4, 5], &[6]]);
        let mut q = p.clone();
        for _ in 0..7 {
            q = q.rotate();
        }
        assert_eq!(q, p);
        let singles = sp(5, &[&[1], &[2], &[3], &[4], &[5]]);
        assert_eq!(singles.rotate(), singles);
    }

    #[test]
    fn covers() {
        let p = sp(7, &[&[1, 2, 7], &[3, 4, 5], &[6]]);
        assert!(p.nc_covers().unwrap().contains(&sp(7, &[&[1, 2, 6, 7], &[3, 4, 5]])));
        assert_eq!(sp(3, &[&[1], &[2], &[3]]).nc_covers().unwrap().len(), 3);
        assert!(sp(4, &[&[1, 2, 3, 4]]).nc_covers().unwrap().is_empty());
        assert_eq!(sp(4, &[&[1, 3], &[2, 4]]).nc_covers(), Err(Error::Crossing));
    }

    #[test]
    fn region_examples() {
        let d = running_example();
        let all = region_blocks(&d, &d.north_bottoms(), &d.internal_points()).unwrap();
        assert_eq!(
            all,
            sp(12, &[&[1, 4, 12], &[2, 3], &[5, 8, 9], &[6, 7], &[10, 11]])
        );
        let valleys = region_blocks(&d, &d.valleys(), &d.east_step_ends()).unwrap();
        assert_eq!(valleys, sp(7, &[&[1, 2, 7], &[3, 4, 5], &[6]]));
        let bad = region_blocks(&d, &[Point::new(1, 2)], &d.internal_points());
        assert_eq!(bad, Err(Error::NotALaserSource(Point::new(1, 2))));
    }

    #[test]
    fn highest_path_is_nested() {
        // All lasers leave the left edge, so the blocks nest around the base block.
        for p in CoprimePair::ascending_up_to_sum(12) {
            let d = DyckPath::highest(p);
            let mu = homogeneous(&d).unwrap();
            assert!(mu.is_noncrossing());
            assert_eq!(mu.blocks()[0][0], 1);
            assert_eq!(mu.blocks().len(), p.a() as usize);
        }
        let mu = homogeneous(&DyckPath::highest(pair(3, 4))).unwrap();
        assert_eq!(mu, sp(6, &[&[1, 6], &[2, 5], &[3, 4]]));
    }

    #[test]
    fn homogeneous_examples() {
        let p = pair(2, 3);
        let top = DyckPath::parse(p, "NNEEE").unwrap();
        let other = DyckPath::parse(p, "NENEE").unwrap();
        assert_eq!(homogeneous(&top).unwrap(), sp(4, &[&[1, 4], &[2, 3]]));
        assert_eq!(homogeneous(&other).unwrap(), sp(4, &[&[1, 2], &[3, 4]]));
        assert_eq!(
            homogeneous(&running_example()).unwrap(),
            sp(12, &[&[1, 4, 12], &[2, 3], &[5, 8, 9], &[6, 7], &[10, 11]])
        );
        for (a, b, k) in [(2, 5, 2), (2, 7, 3), (3, 7, 2)] {
            for d in enumerate(pair(a, b)) {
                let mu = homogeneous(&d).unwrap();
                assert!(mu.blocks().iter().all(|bl| bl.len() == k + 1), "{d}: {mu}");
            }
        }
    }

    #[test]
    fn inhomogeneous_examples() {
        assert_eq!(
            inhomogeneous(&running_example()).unwrap(),
            sp(7, &[&[1, 2, 7], &[3, 4, 5], &[6]])
        );
        let d2 = DyckPath::parse(pair(5, 8), "NNNEENNEEEEEE").unwrap();
        assert_eq!(inhomogeneous(&d2).unwrap(), sp(7, &[&[1, 2, 6, 7], &[3, 4, 5]]));
        for n in 1..=5 {
            let image: HashSet<SetPartition> = enumerate(pair(n, n + 1))
                .map(|d| inhomogeneous(&d).unwrap())
                .collect();
            let all: HashSet<SetPartition> = SetPartition::all_noncrossing(n).into_iter().collect();
            assert_eq!(image, all, "n = {n}");
        }
    }

    #[test]
    fn block_minima_are_north_tops() {
        for p in CoprimePair::ascending_up_to_sum(11) {
            for d in enumerate(p) {
                assert_eq!(homogeneous(&d).unwrap().block_minima(), north_top_labels(&d), "{d}");
            }
        }
    }

    #[test]
    fn promotion_rotation_small() {
        let r = verify_promotion_rotation(pair(2, 3)).unwrap();
        assert_eq!(r.orbit_sizes, vec![2]);
        let r = verify_promotion_rotation(pair(3, 4)).unwrap();
        assert_eq!(r.paths, 5);
        // Rotation classes of the 5 noncrossing matchings of [6]: sizes 2 and 3.
        assert_eq!(r.orbit_sizes, vec![2, 3]);
    }

    #[test]
    fn csp_small() {
        let r = csp_check(pair(2, 3)).unwrap();
        let fixed: Vec<usize> = r.rows.iter().map(|row| row.fixed_points).collect();
        assert_eq!(fixed, vec![2, 0, 2, 0]);
        assert!(r.holds);
        let r = csp_check(pair(1, 5)).unwrap();
        assert!(r.rows.iter().all(|row| row.fixed_points == 1));
        assert!(r.holds);
        assert!(csp_check(pair(3, 4)).unwrap().holds);
    }

    #[test]
    fn order_filter_small() {
        let r = verify_order_filter(pair(3, 5)).unwrap();
        assert_eq!(r.image_size, 7);
        for n in 1..=4 {
            let r = verify_order_filter(pair(n, n + 1)).unwrap();
            assert_eq!(r.image_size, SetPartition::all_noncrossing(n).len());
        }
    }

    #[test]
    fn rotation_probe_classical_and_fuss() {
        for (a, b) in [(1, 2), (2, 3), (3, 4), (4, 5), (2, 5), (2, 7), (3, 7)] {
            let v = probe_inhomogeneous_rotation(pair(a, b)).unwrap();
            assert_eq!(v.status(), "verified", "({a},{b})");
        }
    }
}
