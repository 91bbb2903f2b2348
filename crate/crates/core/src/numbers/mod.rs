//! Closed-form counts attached to a coprime pair `(a, b)`.
//!
//! Every formula here is an integer identity. Numerators are built with
//! arbitrary-precision integers and divided once at the end; a nonzero
//! remainder is reported as [`Error::InexactDivision`].

mod poly;

pub use poly::{cyclotomic, eval_at_root_of_unity, q_binomial, q_integer, IntPolynomial, RootValue};

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Count = BigUint;

/// A pair of distinct coprime positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(u32, u32)", into = "(u32, u32)")]
pub struct CoprimePair {
    a: u32,
    b: u32,
}

impl CoprimePair {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 || b == 0 || a.gcd(&b) != 1 {
            return Err(Error::NotCoprime { a, b });
        }
        if a == b {
            return Err(Error::EqualEntries { a, b });
        }
        Ok(CoprimePair { a, b })
    }

    /// Number of north steps.
    pub fn a(self) -> u32 {
        self.a
    }

    /// Number of east steps.
    pub fn b(self) -> u32 {
        self.b
    }

    pub fn swapped(self) -> Self {
        CoprimePair { a: self.b, b: self.a }
    }

    pub fn is_ascending(self) -> bool {
        self.a < self.b
    }

    pub fn require_ascending(self) -> Result<Self> {
        if self.is_ascending() {
            Ok(self)
        } else {
            Err(Error::RequiresAscending { a: self.a, b: self.b })
        }
    }

    /// `b ≡ 1 (mod a)`.
    pub fn is_fuss(self) -> bool {
        self.b % self.a == 1 % self.a
    }

    /// All ascending coprime pairs with `a + b <= max_sum`, ordered by sum then `a`.
    pub fn ascending_up_to_sum(max_sum: u32) -> Vec<CoprimePair> {
        let mut out = Vec::new();
        for sum in 3..=max_sum {
            for a in 1..sum {
                let b = sum - a;
                if a < b {
                    if let Ok(p) = CoprimePair::new(a, b) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }
}

impl TryFrom<(u32, u32)> for CoprimePair {
    type Error = Error;

    fn try_from((a, b): (u32, u32)) -> Result<Self> {
        CoprimePair::new(a, b)
    }
}

impl From<CoprimePair> for (u32, u32) {
    fn from(p: CoprimePair) -> Self {
        (p.a, p.b)
    }
}

impl fmt::Display for CoprimePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// `r = (r_0, ..., r_a)`: `r_j` east steps are preceded by a north run of length `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RunTypeVector(Vec<u32>);

impl RunTypeVector {
    pub fn new(pair: CoprimePair, counts: Vec<u32>) -> Result<Self> {
        if counts.len() != pair.a() as usize + 1 {
            return Err(Error::InvalidRunType(format!(
                "expected {} entries, got {}",
                pair.a() + 1,
                counts.len()
            )));
        }
        let total: u64 = counts.iter().map(|&r| u64::from(r)).sum();
        let weighted: u64 = counts
            .iter()
            .enumerate()
            .map(|(j, &r)| j as u64 * u64::from(r))
            .sum();
        if total != u64::from(pair.b()) || weighted != u64::from(pair.a()) {
            return Err(Error::InvalidRunType(format!(
                "sum r_j = {total} (want {}), sum j*r_j = {weighted} (want {})",
                pair.b(),
                pair.a()
            )));
        }
        Ok(RunTypeVector(counts))
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    /// Every valid run type for `pair`, in lexicographic order of the counts.
    pub fn all(pair: CoprimePair) -> Vec<RunTypeVector> {
        // r_1..r_a is the multiplicity vector of a partition of a into at most b parts.
        fn rec(
            remaining: u32,
            max_part: u32,
            parts_left: u32,
            mult: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
        ) {
            if remaining == 0 {
                out.push(mult.clone());
                return;
            }
            if parts_left == 0 {
                return;
            }
            for part in (1..=max_part.min(remaining)).rev() {
                mult[part as usize] += 1;
                rec(remaining - part, part, parts_left - 1, mult, out);
                mult[part as usize] -= 1;
            }
        }
        let (a, b) = (pair.a(), pair.b());
        let mut raw = Vec::new();
        rec(a, a, b, &mut vec![0; a as usize + 1], &mut raw);
        let mut out: Vec<RunTypeVector> = raw
            .into_iter()
            .map(|mut r| {
                let parts: u32 = r[1..].iter().sum();
                r[0] = b - parts;
                RunTypeVector(r)
            })
            .collect();
        out.sort();
        out
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub(crate) fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn exact_div(num: BigUint, den: BigUint, context: &'static str) -> Result<BigUint> {
    let (q, r) = num.div_rem(&den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InexactDivision(context))
    }
}

fn check_index(i: u32, a: u32) -> Result<()> {
    if i < 1 || i > a {
        return Err(Error::OutOfRange {
            what: "i",
            value: i64::from(i),
            lo: 1,
            hi: i64::from(a),
        });
    }
    Ok(())
}

/// `Cat(a,b) = (a+b-1)! / (a! b!)`.
pub fn rational_catalan(pair: CoprimePair) -> Count {
    let (a, b) = (pair.a(), pair.b());
    exact_div(
        factorial(a + b - 1),
        factorial(a) * factorial(b),
        "rational_catalan",
    )
    .expect("(a+b-1)!/(a!b!) is an integer for coprime a, b")
}

/// `Cat'(a,b) = C(b,a)/b` for `a < b` (and `C(a,b)/a` otherwise).
pub fn derived_catalan(pair: CoprimePair) -> Count {
    let (lo, hi) = if pair.is_ascending() {
        (pair.a(), pair.b())
    } else {
        (pair.b(), pair.a())
    };
    exact_div(binomial(hi, lo), BigUint::from(hi), "derived_catalan")
        .expect("C(b,a)/b is an integer for coprime a < b")
}

/// `(a,b) -> sort(b-a, a)` until the smaller entry is 1, each pair with its Catalan number.
pub fn derivation_chain(pair: CoprimePair) -> Result<Vec<(CoprimePair, Count)>> {
    let mut current = pair.require_ascending()?;
    let mut chain = vec![(current, rational_catalan(current))];
    while current.a() > 1 {
        let (x, y) = (current.b() - current.a(), current.a());
        current = CoprimePair::new(x.min(y), x.max(y))?;
        chain.push((current, rational_catalan(current)));
    }
    Ok(chain)
}

/// `Nar(a,b;i) = C(a,i) C(b-1,i-1) / a`.
pub fn narayana(pair: CoprimePair, i: u32) -> Result<Count> {
    let (a, b) = (pair.a(), pair.b());
    check_index(i, a)?;
    exact_div(
        binomial(a, i) * binomial(b - 1, i - 1),
        BigUint::from(a),
        "narayana",
    )
}

/// `Krew(a,b;r) = (b-1)! / (r_0! r_1! ... r_a!)`.
pub fn kreweras(pair: CoprimePair, r: &RunTypeVector) -> Result<Count> {
    // Revalidate: the vector may have been built for a different pair.
    let r = RunTypeVector::new(pair, r.counts().to_vec())?;
    let den = r
        .counts()
        .iter()
        .fold(BigUint::one(), |acc, &k| acc * factorial(k));
    exact_div(factorial(pair.b() - 1), den, "kreweras")
}

/// `Kirk(a,b;i) = C(a,i) C(b+i-1,i-1) / a`.
pub fn kirkman(pair: CoprimePair, i: u32) -> Result<Count> {
    let (a, b) = (pair.a(), pair.b());
    check_index(i, a)?;
    exact_div(
        binomial(a, i) * binomial(b + i - 1, i - 1),
        BigUint::from(a),
        "kirkman",
    )
}

/// `X(q) = [a+b choose a]_q / [a+b]_q`.
pub fn q_rational_catalan(pair: CoprimePair) -> Result<IntPolynomial> {
    let n = pair.a() + pair.b();
    let numerator = q_binomial(n, pair.a())?;
    let (quotient, remainder) = numerator.div_rem(&q_integer(n))?;
    if !remainder.is_zero() {
        return Err(Error::InexactDivision("q_rational_catalan"));
    }
    Ok(quotient)
}
