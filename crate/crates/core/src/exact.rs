//! Exact integers and rationals, factorials, binomials, derangements and
//! rencontres numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type ExactInt = BigInt;
/// Always in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

pub fn factorial(n: usize) -> ExactInt {
    (1..=n).fold(ExactInt::one(), |acc, k| acc * k)
}

/// `x (x−1) ⋯ (x−t+1)`; equal to 1 when `t = 0`.
pub fn falling_factorial(x: &ExactInt, t: usize) -> ExactInt {
    (0..t).fold(ExactInt::one(), |acc, j| acc * (x - j))
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> ExactInt {
    if k > n {
        return ExactInt::zero();
    }
    let k = k.min(n - k);
    // Each partial product is C(n−k+i, i)·… and divides exactly.
    (1..=k).fold(ExactInt::one(), |acc, i| acc * (n - k + i) / i)
}

/// Derangement numbers via `D_m = m·D_{m−1} + (−1)^m`, `D_0 = 1`.
pub fn derangements(m: usize) -> ExactInt {
    let mut d = ExactInt::one();
    for k in 1..=m {
        d = d * k + if k % 2 == 0 { 1 } else { -1 };
    }
    d
}

/// Counts of permutations of `n` letters by number of fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RencontresTable {
    n: usize,
    w: Vec<ExactInt>,
}

impl RencontresTable {
    pub fn degree(&self) -> usize {
        self.n
    }

    /// `w[k]` = number of permutations with exactly `k` fixed points.
    pub fn counts(&self) -> &[ExactInt] {
        &self.w
    }

    pub fn w(&self, k: usize) -> &ExactInt {
        &self.w[k]
    }

    /// Valency of distance class `i`, i.e. `w[n − i]`.
    pub fn valency(&self, i: usize) -> Result<&ExactInt> {
        if i > self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.n,
            });
        }
        Ok(&self.w[self.n - i])
    }
}

/// `w[k] = C(n, k)·D_{n−k}`.
pub fn rencontres(n: usize) -> RencontresTable {
    let w = (0..=n)
        .map(|k| binomial(n, k) * derangements(n - k))
        .collect();
    RencontresTable { n, w }
}

/// Second route: coefficients of `n!·Σ_{j=0}^{n} (u−1)^j / j!`, expanded as
/// integer polynomials in `u`. Each term `n!/j!·(u−1)^j` is integral.
pub fn rencontres_from_generating_function(n: usize) -> RencontresTable {
    let mut total = vec![ExactInt::zero(); n + 1];
    // power = (u − 1)^j, low-to-high coefficients
    let mut power = vec![ExactInt::one()];
    let n_fact = factorial(n);
    for j in 0..=n {
        if j > 0 {
            let mut next = vec![ExactInt::zero(); power.len() + 1];
            for (i, c) in power.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c;
            }
            power = next;
        }
        let scale = &n_fact / factorial(j);
        for (i, c) in power.iter().enumerate() {
            total[i] += c * &scale;
        }
    }
    RencontresTable { n, w: total }
}

/// Canonical `p/q` form, always with an explicit denominator.
pub fn format_rational(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`. Normalizes to lowest terms.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let bad = || Error::InvalidRational {
        text: text.to_string(),
    };
    let text = text.trim();
    let parse_int = |s: &str| -> Result<ExactInt> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<ExactInt>().map_err(|_| bad())
    };
    match text.split_once('/') {
        None => Ok(ExactRational::from_integer(parse_int(text)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(ExactRational::new(num, den))
        }
    }
}

/// Serializes a rational as its `p/q` string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalString(pub ExactRational);

impl Serialize for RationalString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

pub fn rational(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n.into(), d.into())
}
