//! Rational Dyck paths: lattice paths from `(0,0)` to `(b,a)` with `a` north and
//! `b` east unit steps whose interior lattice points satisfy `b·y > a·x`.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numbers::{CoprimePair, RunTypeVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct Point {
    pub x: u32,
    pub y: u32,
}

impl Point {
    pub const fn new(x: u32, y: u32) -> Self {
        Point { x, y }
    }
}

impl From<(u32, u32)> for Point {
    fn from((x, y): (u32, u32)) -> Self {
        Point { x, y }
    }
}

impl From<Point> for (u32, u32) {
    fn from(p: Point) -> Self {
        (p.x, p.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    North,
    East,
}

impl Step {
    pub fn symbol(self) -> char {
        match self {
            Step::North => 'N',
            Step::East => 'E',
        }
    }
}

/// Parses a word over `{N, E}`.
pub fn parse_steps(word: &str) -> Result<Vec<Step>> {
    word.chars()
        .map(|c| match c {
            'N' | 'n' => Ok(Step::North),
            'E' | 'e' => Ok(Step::East),
            other => Err(Error::BadStepSymbol(other)),
        })
        .collect()
}

/// Strictly above the diagonal `y = (a/b) x`.
fn above_diagonal(pair: CoprimePair, p: Point) -> bool {
    u64::from(pair.b()) * u64::from(p.y) > u64::from(pair.a()) * u64::from(p.x)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    pair: CoprimePair,
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn validate(pair: CoprimePair, steps: Vec<Step>) -> Result<Self> {
        let north = steps.iter().filter(|&&s| s == Step::North).count() as u32;
        let east = steps.len() as u32 - north;
        if north != pair.a() || east != pair.b() {
            return Err(Error::WrongStepCounts {
                expected_north: pair.a(),
                expected_east: pair.b(),
                north,
                east,
            });
        }
        let mut p = Point::new(0, 0);
        for &s in &steps[..steps.len() - 1] {
            match s {
                Step::North => p.y += 1,
                Step::East => p.x += 1,
            }
            if !above_diagonal(pair, p) {
                return Err(Error::BelowDiagonal(p));
            }
        }
        Ok(DyckPath { pair, steps })
    }

    pub fn parse(pair: CoprimePair, word: &str) -> Result<Self> {
        Self::validate(pair, parse_steps(word)?)
    }

    /// `N^a E^b`, the first path in lexicographic order.
    pub fn highest(pair: CoprimePair) -> Self {
        let mut steps = vec![Step::North; pair.a() as usize];
        steps.extend(std::iter::repeat_n(Step::East, pair.b() as usize));
        DyckPath { pair, steps }
    }

    pub fn pair(&self) -> CoprimePair {
        self.pair
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn word(&self) -> String {
        self.steps.iter().map(|s| s.symbol()).collect()
    }

    /// All `a+b+1` lattice points, from the origin to `(b,a)`.
    pub fn points(&self) -> Vec<Point> {
        let mut p = Point::new(0, 0);
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(p);
        for &s in &self.steps {
            match s {
                Step::North => p.y += 1,
                Step::East => p.x += 1,
            }
            out.push(p);
        }
        out
    }

    /// The `a+b-1` lattice points other than the two endpoints, in path order.
    pub fn internal_points(&self) -> Vec<Point> {
        let pts = self.points();
        pts[1..pts.len() - 1].to_vec()
    }

    /// `north_x[h]` is the x-coordinate of the north step from height `h` to `h+1`.
    pub fn north_x(&self) -> Vec<u32> {
        let mut x = 0;
        let mut out = Vec::with_capacity(self.pair.a() as usize);
        for &s in &self.steps {
            match s {
                Step::North => out.push(x),
                Step::East => x += 1,
            }
        }
        out
    }

    fn from_north_x(pair: CoprimePair, north_x: &[u32]) -> Self {
        let mut steps = Vec::with_capacity((pair.a() + pair.b()) as usize);
        let mut x = 0;
        for &nx in north_x {
            steps.extend(std::iter::repeat_n(Step::East, (nx - x) as usize));
            steps.push(Step::North);
            x = nx;
        }
        steps.extend(std::iter::repeat_n(Step::East, (pair.b() - x) as usize));
        DyckPath { pair, steps }
    }

    /// `λ(D)`: row lengths of the region northwest of the path, top row first.
    pub fn to_partition(&self) -> PathPartition {
        let nx = self.north_x();
        PathPartition(nx[1..].iter().rev().copied().collect())
    }

    pub fn from_partition(pair: CoprimePair, lambda: &PathPartition) -> Result<Self> {
        lambda.check(pair)?;
        let mut nx = vec![0];
        nx.extend(lambda.0.iter().rev().copied());
        Ok(Self::from_north_x(pair, &nx))
    }

    pub fn run_word(&self, kind: RunKind) -> RunWord {
        let letters = match kind {
            RunKind::Vertical => {
                let mut run = 0;
                let mut out = Vec::with_capacity(self.pair.b() as usize);
                for &s in &self.steps {
                    match s {
                        Step::North => run += 1,
                        Step::East => {
                            out.push(run);
                            run = 0;
                        }
                    }
                }
                out
            }
            RunKind::Horizontal => {
                let mut out = Vec::with_capacity(self.pair.a() as usize);
                for &s in &self.steps {
                    match s {
                        Step::North => out.push(0),
                        Step::East => *out.last_mut().expect("paths start north") += 1,
                    }
                }
                out.reverse();
                out
            }
        };
        RunWord { kind, letters }
    }

    pub fn from_run_word(pair: CoprimePair, word: &RunWord) -> Result<Self> {
        word.check(pair)?;
        Self::validate(pair, word.steps())
    }

    pub fn statistics(&self) -> PathStatistics {
        let pts = self.points();
        let mut valleys = Vec::new();
        let mut north_bottoms = Vec::new();
        for (i, w) in self.steps.iter().enumerate() {
            if *w != Step::North {
                continue;
            }
            if i > 0 {
                north_bottoms.push(pts[i]);
                if self.steps[i - 1] == Step::East {
                    valleys.push(pts[i]);
                }
            }
        }
        let mut r = vec![0u32; self.pair.a() as usize + 1];
        for &len in &self.run_word(RunKind::Vertical).letters {
            r[len as usize] += 1;
        }
        let run_type = RunTypeVector::new(self.pair, r).expect("vertical runs of a path form a run type");
        PathStatistics {
            nontrivial_runs: valleys.len() as u32 + 1,
            valleys,
            north_bottoms,
            run_type,
        }
    }

    pub fn valleys(&self) -> Vec<Point> {
        self.statistics().valleys
    }

    /// Bottoms of north steps other than the origin.
    pub fn north_bottoms(&self) -> Vec<Point> {
        self.statistics().north_bottoms
    }

    /// Right ends of the east steps, excluding the terminal point `(b,a)`.
    pub fn east_step_ends(&self) -> Vec<Point> {
        let pts = self.points();
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Step::East)
            .map(|(i, _)| pts[i + 1])
            .filter(|&p| p != Point::new(self.pair.b(), self.pair.a()))
            .collect()
    }

    /// Fires the slope `a/b` laser northeast from `source` until it meets the path.
    pub fn fire_laser(&self, source: Point) -> Result<Laser> {
        let (a, b) = (self.pair.a(), self.pair.b());
        let nx = self.north_x();
        let is_source = source.y >= 1
            && source.y < a
            && nx[source.y as usize] == source.x;
        if !is_source {
            return Err(Error::NotALaserSource(source));
        }
        // x at height h is (a·sx + b·(h - sy)) / a; compare numerators against a·x.
        let ua = u64::from(a);
        for h in source.y + 1..=a {
            let num = ua * u64::from(source.x) + u64::from(b) * u64::from(h - source.y);
            let leave = if h == a { b } else { nx[h as usize] };
            if num < ua * u64::from(leave) {
                let arrive = nx[h as usize - 1];
                if num <= ua * u64::from(arrive) || num % ua == 0 {
                    return Err(Error::InternalGeometry(source));
                }
                let end_x = Ratio::new(num, ua);
                let hit = Point::new(end_x.to_integer() as u32 + 1, h);
                return Ok(Laser {
                    source,
                    end_x,
                    end_height: h,
                    hit,
                    pair: self.pair,
                });
            }
        }
        Err(Error::InternalGeometry(source))
    }

    /// One pass of corner toggles along the path, southwest to northeast.
    pub fn promote(&self) -> DyckPath {
        let mut steps = self.steps.clone();
        let n = steps.len();
        // Prefix point before toggling at position i is maintained incrementally.
        let mut before = Point::new(0, 0);
        for i in 1..n {
            let (s, t) = (steps[i - 1], steps[i]);
            if s != t {
                // Swapping only moves the i-th point, to before + t.
                let moved = match t {
                    Step::North => Point::new(before.x, before.y + 1),
                    Step::East => Point::new(before.x + 1, before.y),
                };
                if above_diagonal(self.pair, moved) {
                    steps.swap(i - 1, i);
                }
            }
            match steps[i - 1] {
                Step::North => before.y += 1,
                Step::East => before.x += 1,
            }
        }
        DyckPath {
            pair: self.pair,
            steps,
        }
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl Serialize for DyckPath {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.word())
    }
}

/// `λ_1 ≥ ... ≥ λ_{a-1} ≥ 0`, bounded by `λ_i ≤ ⌊(a-i)b/a⌋`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PathPartition(pub Vec<u32>);

impl PathPartition {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn bound(pair: CoprimePair, i: u32) -> u32 {
        ((pair.a() - i) * pair.b()) / pair.a()
    }

    fn check(&self, pair: CoprimePair) -> Result<()> {
        let a = pair.a();
        if self.0.len() != a as usize - 1 {
            return Err(Error::InvalidPartition(format!(
                "expected {} parts, got {}",
                a - 1,
                self.0.len()
            )));
        }
        for (k, &part) in self.0.iter().enumerate() {
            let i = k as u32 + 1;
            if k > 0 && part > self.0[k - 1] {
                return Err(Error::InvalidPartition("parts must be weakly decreasing".into()));
            }
            if part > Self::bound(pair, i) {
                return Err(Error::InvalidPartition(format!(
                    "λ_{i} = {part} exceeds {}",
                    Self::bound(pair, i)
                )));
            }
        }
        Ok(())
    }
}

impl FromStr for PathPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(PathPartition(Vec::new()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::InvalidPartition(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(PathPartition)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunKind {
    /// One letter per east step: the length of the north run just before it.
    Vertical,
    /// One letter per north step, read northeast to southwest: the east run just after it.
    Horizontal,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RunWord {
    pub kind: RunKind,
    pub letters: Vec<u32>,
}

impl RunWord {
    pub fn new(kind: RunKind, letters: Vec<u32>) -> Self {
        RunWord { kind, letters }
    }

    fn check(&self, pair: CoprimePair) -> Result<()> {
        let (len, sum) = match self.kind {
            RunKind::Vertical => (pair.b(), pair.a()),
            RunKind::Horizontal => (pair.a(), pair.b()),
        };
        let total: u32 = self.letters.iter().sum();
        if self.letters.len() != len as usize || total != sum {
            return Err(Error::InvalidRunWord(format!(
                "{:?} word needs length {len} and sum {sum}, got length {} and sum {total}",
                self.kind,
                self.letters.len()
            )));
        }
        Ok(())
    }

    /// The step sequence spelled by the word, whether or not it is a Dyck path.
    pub fn steps(&self) -> Vec<Step> {
        let mut steps = Vec::new();
        match self.kind {
            RunKind::Vertical => {
                for &x in &self.letters {
                    steps.extend(std::iter::repeat_n(Step::North, x as usize));
                    steps.push(Step::East);
                }
            }
            RunKind::Horizontal => {
                for &y in self.letters.iter().rev() {
                    steps.push(Step::North);
                    steps.extend(std::iter::repeat_n(Step::East, y as usize));
                }
            }
        }
        steps
    }

    pub fn rotated(&self, offset: usize) -> RunWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(offset % self.letters.len());
        }
        RunWord {
            kind: self.kind,
            letters,
        }
    }
}

/// Finds the unique cyclic conjugate of a vertical run word that spells a Dyck path.
/// Returns the path and the left rotation applied.
pub fn cycle_rectify(pair: CoprimePair, word: &RunWord) -> Result<(DyckPath, usize)> {
    if word.kind != RunKind::Vertical {
        return Err(Error::InvalidRunWord("cycle_rectify takes a vertical word".into()));
    }
    word.check(pair)?;
    let mut found = None;
    for offset in 0..word.letters.len() {
        if let Ok(path) = DyckPath::validate(pair, word.rotated(offset).steps()) {
            if found.is_some() {
                return Err(Error::Internal(format!(
                    "two Dyck conjugates of {:?}",
                    word.letters
                )));
            }
            found = Some((path, offset));
        }
    }
    found.ok_or_else(|| Error::Internal(format!("no Dyck conjugate of {:?}", word.letters)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathStatistics {
    pub valleys: Vec<Point>,
    pub north_bottoms: Vec<Point>,
    pub run_type: RunTypeVector,
    pub nontrivial_runs: u32,
}

/// Segment of slope `a/b` from `source` to the point where it first meets the path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Laser {
    pub source: Point,
    /// Never an integer.
    pub end_x: Ratio<u64>,
    pub end_height: u32,
    /// Right end of the east step containing the endpoint.
    pub hit: Point,
    pair: CoprimePair,
}

impl Laser {
    /// `b·y - a·x` along the laser's line; larger means higher.
    pub fn intercept(&self) -> i64 {
        i64::from(self.pair.b()) * i64::from(self.source.y)
            - i64::from(self.pair.a()) * i64::from(self.source.x)
    }

    /// Whether the point `(x + ε, y - ε)` sits above this laser.
    pub fn lies_below_label(&self, p: Point) -> bool {
        let (a, b) = (i64::from(self.pair.a()), i64::from(self.pair.b()));
        p.x >= self.source.x
            && Ratio::from_integer(u64::from(p.x)) < self.end_x
            && b * i64::from(self.source.y) + a * (i64::from(p.x) - i64::from(self.source.x))
                < b * i64::from(p.y)
    }

    pub fn end_x_f64(&self) -> f64 {
        *self.end_x.numer() as f64 / *self.end_x.denom() as f64
    }

    pub fn end_y_f64(&self) -> f64 {
        f64::from(self.end_height)
    }
}

/// All `(a,b)`-Dyck paths in lexicographic order of `λ(D)`.
pub fn enumerate(pair: CoprimePair) -> DyckPaths {
    DyckPaths {
        pair,
        lambda: Some(vec![0; pair.a() as usize - 1]),
    }
}

pub struct DyckPaths {
    pair: CoprimePair,
    lambda: Option<Vec<u32>>,
}

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        let lambda = self.lambda.take()?;
        let mut nx = vec![0];
        nx.extend(lambda.iter().rev().copied());
        let path = DyckPath::from_north_x(self.pair, &nx);

        let mut succ = lambda;
        let mut advanced = false;
        for k in (0..succ.len()).rev() {
            let cap = PathPartition::bound(self.pair, k as u32 + 1);
            let cap = if k == 0 { cap } else { cap.min(succ[k - 1]) };
            if succ[k] < cap {
                succ[k] += 1;
                succ[k + 1..].iter_mut().for_each(|p| *p = 0);
                advanced = true;
                break;
            }
        }
        if advanced {
            self.lambda = Some(succ);
        }
        Some(path)
    }
}
