use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

fn decimal<S: serde::Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

fn decimal_seq<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Polynomial in `q` with integer coefficients; index = exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct IntPolynomial {
    #[serde(serialize_with = "decimal_seq")]
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = BigInt::one();
        IntPolynomial { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, exp: usize) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    /// Long division over the integers. Fails if some step needs a non-integer quotient
    /// coefficient, which cannot happen for a divisor with leading coefficient ±1.
    pub fn div_rem(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        let dd = divisor
            .degree()
            .ok_or(Error::InexactDivision("polynomial division by zero"))?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Ok((IntPolynomial::zero(), self.clone()));
        };
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision("polynomial long division"));
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &c * d;
            }
            quot[shift] = c;
        }
        Ok((IntPolynomial::new(quot), IntPolynomial::new(rem)))
    }

    /// Remainder modulo `q^m - 1`: exponents folded mod `m`.
    pub fn fold_exponents(&self, m: usize) -> IntPolynomial {
        assert!(m > 0);
        let mut coeffs = vec![BigInt::zero(); m.min(self.coeffs.len())];
        for (e, c) in self.coeffs.iter().enumerate() {
            coeffs[e % m] += c;
        }
        IntPolynomial::new(coeffs)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

/// `[m]_q = 1 + q + ... + q^{m-1}`.
pub fn q_integer(m: u32) -> IntPolynomial {
    IntPolynomial::new(vec![BigInt::one(); m as usize])
}

fn q_factorial(m: u32) -> IntPolynomial {
    (1..=m).fold(IntPolynomial::one(), |acc, k| &acc * &q_integer(k))
}

/// Gaussian binomial `[m choose k]_q = [m]_q! / ([k]_q! [m-k]_q!)`.
pub fn q_binomial(m: u32, k: u32) -> Result<IntPolynomial> {
    if k > m {
        return Err(Error::OutOfRange {
            what: "k",
            value: i64::from(k),
            lo: 0,
            hi: i64::from(m),
        });
    }
    let den = &q_factorial(k) * &q_factorial(m - k);
    let (quot, rem) = q_factorial(m).div_rem(&den)?;
    if !rem.is_zero() {
        return Err(Error::InexactDivision("q_binomial"));
    }
    Ok(quot)
}

/// `Φ_k(q)`, via `q^k - 1 = Π_{d | k} Φ_d(q)`.
pub fn cyclotomic(k: u32) -> IntPolynomial {
    assert!(k > 0);
    let mut p = &IntPolynomial::monomial(k as usize) - &IntPolynomial::one();
    for d in 1..k {
        if k.is_multiple_of(d) {
            let (q, r) = p
                .div_rem(&cyclotomic(d))
                .expect("cyclotomic polynomials are monic");
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootValue {
    Integer(#[serde(serialize_with = "decimal")] BigInt),
    NonInteger,
}

/// `f(ω^d)` for `ω` a primitive `m`-th root of unity, exactly.
///
/// `ω^d` is a primitive `k`-th root with `k = m / gcd(m, d)`, so the value is the
/// remainder of `f` modulo `Φ_k`; it is an integer iff that remainder is constant.
pub fn eval_at_root_of_unity(f: &IntPolynomial, m: u32, d: u32) -> Result<RootValue> {
    if m == 0 || d >= m {
        return Err(Error::OutOfRange {
            what: "d",
            value: i64::from(d),
            lo: 0,
            hi: i64::from(m) - 1,
        });
    }
    let k = m / m.gcd(&d);
    let folded = f.fold_exponents(m as usize);
    let (_, rem) = folded.div_rem(&cyclotomic(k))?;
    Ok(match rem.degree() {
        None => RootValue::Integer(BigInt::zero()),
        Some(0) => RootValue::Integer(rem.coeff(0)),
        Some(_) => RootValue::NonInteger,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    // Independent route: q-Pascal recursion [m,k] = [m-1,k-1] + q^k [m-1,k].
    fn q_pascal(m: u32, k: u32) -> IntPolynomial {
        if k == 0 || k == m {
            return IntPolynomial::one();
        }
        let shifted = &IntPolynomial::monomial(k as usize) * &q_pascal(m - 1, k);
        &q_pascal(m - 1, k - 1) + &shifted
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(2, 1).unwrap(), p(&[1, 1]));
        assert_eq!(q_binomial(4, 2).unwrap(), p(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(5, 0).unwrap(), p(&[1]));
        assert!(q_binomial(3, 4).is_err());
    }

    #[test]
    fn q_binomial_matches_pascal_recursion() {
        for m in 0..=14 {
            for k in 0..=m {
                assert_eq!(q_binomial(m, k).unwrap(), q_pascal(m, k), "[{m} {k}]");
            }
        }
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn root_of_unity_examples() {
        let f = p(&[1, 0, 1]);
        assert_eq!(
            eval_at_root_of_unity(&f, 4, 1).unwrap(),
            RootValue::Integer(0.into())
        );
        assert_eq!(
            eval_at_root_of_unity(&f, 4, 2).unwrap(),
            RootValue::Integer(2.into())
        );
        assert_eq!(
            eval_at_root_of_unity(&f, 4, 0).unwrap(),
            RootValue::Integer(2.into())
        );
        // 1 + q at a primitive cube root of unity is -ω², not an integer.
        assert_eq!(
            eval_at_root_of_unity(&p(&[1, 1]), 3, 1).unwrap(),
            RootValue::NonInteger
        );
        assert!(eval_at_root_of_unity(&f, 4, 4).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 0, 3]).to_string(), "1 - 2q + 3q^3");
        assert_eq!(p(&[0, 1]).to_string(), "q");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn at_d_zero_gives_value_at_one(c in proptest::collection::vec(-20i64..20, 0..12), m in 1u32..10) {
            let f = p(&c);
            let expected = RootValue::Integer(f.eval_at_one());
            prop_assert_eq!(eval_at_root_of_unity(&f, m, 0).unwrap(), expected);
        }

        #[test]
        fn division_roundtrip(a in proptest::collection::vec(-9i64..9, 0..8), b in proptest::collection::vec(-9i64..9, 0..5)) {
            let mut b = b;
            b.push(1);
            let (fa, fb) = (p(&a), p(&b));
            let (q, r) = fa.div_rem(&fb).unwrap();
            prop_assert_eq!(&(&q * &fb) + &r, fa);
            prop_assert!(r.degree().is_none_or(|d| d < fb.degree().unwrap()));
        }

        #[test]
        fn at_minus_one_matches_direct_evaluation(c in proptest::collection::vec(-20i64..20, 0..12)) {
            let f = p(&c);
            let direct = f.eval(&BigInt::from(-1));
            prop_assert_eq!(eval_at_root_of_unity(&f, 2, 1).unwrap(), RootValue::Integer(direct));
        }
    }
}
