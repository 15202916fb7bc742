//! Charlier polynomials, their reversals `Ĉ_k(x) = C_k(n − x)`, and the two
//! weighted inner products induced by the rencontres numbers.
//!
//! The normalization is
//! `C_k(x) = (−1)^k + Σ_{i=1}^{k} (−1)^{k−i} C(k,i) x(x−1)⋯(x−i+1)`,
//! giving `C_1 = x − 1` and `C_2 = x² − 3x + 1`. This family is the
//! coefficient of `t^k/k!` in `e^{−t}(1+t)^x`; the series `e^t(1−t)^x` yields
//! `(−1)^k C_k`. Signs never affect orthogonality or any design criterion.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::{binomial, factorial, rencontres, ExactInt, ExactRational};

/// Dense integer polynomial, coefficients low-to-high with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<ExactInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<ExactInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<ExactInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> ExactInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &ExactInt) -> ExactInt {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_usize(&self, x: usize) -> ExactInt {
        self.eval(&ExactInt::from(x))
    }

    pub fn scale(&self, c: &ExactInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `self(n − x)`, expanded by Horner's scheme in the polynomial ring.
    pub fn reflect(&self, n: usize) -> Self {
        let shift = IntPolynomial::from_i64(&[n as i64, -1]);
        self.coeffs
            .iter()
            .rev()
            .fold(IntPolynomial::zero(), |acc, c| {
                &(&acc * &shift) + &IntPolynomial::constant(c.clone())
            })
    }

    /// Coefficients as decimal strings, low-to-high.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        )
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = ExactInt::zero();
        IntPolynomial::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &rhs.scale(&-ExactInt::one())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![ExactInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    /// Human form, highest power first: `x^2 - 3x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            let show_coeff = power == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{power}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// `x (x−1) ⋯ (x−i+1)` as a polynomial.
pub fn falling_factorial_poly(i: usize) -> IntPolynomial {
    (0..i).fold(IntPolynomial::constant(1), |acc, j| {
        &acc * &IntPolynomial::from_i64(&[-(j as i64), 1])
    })
}

/// `C_k` from its closed form.
pub fn charlier(k: usize) -> IntPolynomial {
    let sign = |e: usize| {
        if e.is_multiple_of(2) {
            ExactInt::one()
        } else {
            -ExactInt::one()
        }
    };
    let mut acc = IntPolynomial::constant(sign(k));
    for i in 1..=k {
        let term = falling_factorial_poly(i).scale(&(sign(k - i) * binomial(k, i)));
        acc = &acc + &term;
    }
    acc
}

/// `Ĉ_k(x) = C_k(n − x)`.
pub fn reversed_charlier(k: usize, n: usize) -> IntPolynomial {
    charlier(k).reflect(n)
}

/// Rational-coefficient polynomial, used only for the series expansion.
type RatPoly = Vec<ExactRational>;

fn rat_poly_normalize(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// `k!·[t^k] e^t(1−t)^x`, as a polynomial in `x` with rational coefficients.
///
/// `(1−t)^x = Σ_j binom(x, j)(−t)^j` with `binom(x, j) = x^{(j)}/j!`, and
/// `e^t = Σ_i t^i/i!`.
pub fn generating_function_coefficient(k: usize) -> Vec<ExactRational> {
    let mut acc: RatPoly = Vec::new();
    for j in 0..=k {
        let falling = falling_factorial_poly(j);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let weight = ExactRational::new(
            ExactInt::from(sign) * factorial(k),
            factorial(j) * factorial(k - j),
        );
        if acc.len() < falling.coeffs().len() {
            acc.resize(falling.coeffs().len(), ExactRational::zero());
        }
        for (slot, c) in acc.iter_mut().zip(falling.coeffs()) {
            *slot += &weight * ExactRational::from_integer(c.clone());
        }
    }
    rat_poly_normalize(acc)
}

/// Checks that `k!·[t^k] e^t(1−t)^x = (−1)^k C_k(x)` for every `k ≤ k_max`,
/// both coefficientwise and by evaluation at `x ∈ [0..n_eval]`.
pub fn charlier_genfunc_check(k_max: usize, n_eval: usize) -> bool {
    (0..=k_max).all(|k| {
        let series = generating_function_coefficient(k);
        let mut expected = charlier(k);
        if k % 2 == 1 {
            expected = expected.scale(&-ExactInt::one());
        }
        let expected_rat: RatPoly = expected
            .coeffs()
            .iter()
            .map(|c| ExactRational::from_integer(c.clone()))
            .collect();
        let coefficients_match = series == expected_rat;
        let evaluations_match = (0..=n_eval).all(|x| {
            let x_rat = ExactRational::from_integer(x.into());
            let lhs = series
                .iter()
                .rev()
                .fold(ExactRational::zero(), |acc, c| acc * &x_rat + c);
            lhs == ExactRational::from_integer(expected.eval_usize(x))
        });
        coefficients_match && evaluations_match
    })
}

fn weighted_product(
    f: &IntPolynomial,
    g: &IntPolynomial,
    n: usize,
    weight_index: impl Fn(usize) -> usize,
) -> ExactRational {
    let table = rencontres(n);
    let total: ExactInt = (0..=n)
        .map(|k| table.w(weight_index(k)) * f.eval_usize(k) * g.eval_usize(k))
        .sum();
    ExactRational::new(total, factorial(n))
}

/// `⟨f, g⟩_n = (1/n!) Σ_k w_{n−k} f(k) g(k)`: the inner product of the whole
/// space, weighting distance `k` by its valency.
pub fn inner_product_space(f: &IntPolynomial, g: &IntPolynomial, n: usize) -> ExactRational {
    weighted_product(f, g, n, |k| n - k)
}

/// `(f, g)_n = (1/n!) Σ_k w_k f(k) g(k)`: weights by fixed-point count.
pub fn inner_product_tarnanen(f: &IntPolynomial, g: &IntPolynomial, n: usize) -> ExactRational {
    weighted_product(f, g, n, |k| k)
}

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityEntry {
    pub r: usize,
    pub s: usize,
    #[serde(serialize_with = "ser_rational")]
    pub value: ExactRational,
    #[serde(serialize_with = "ser_rational")]
    pub expected: ExactRational,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityReport {
    pub n: usize,
    pub entries: Vec<OrthogonalityEntry>,
}

impl OrthogonalityReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

fn ser_rational<S: serde::Serializer>(
    r: &ExactRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exact::format_rational(r))
}

/// Evaluates `⟨Ĉ_r, Ĉ_s⟩_n` against `r!·δ_rs` for all `r, s ≤ ⌊n/2⌋`.
pub fn verify_orthogonality(n: usize) -> OrthogonalityReport {
    let half = n / 2;
    let polys: Vec<IntPolynomial> = (0..=half).map(|k| reversed_charlier(k, n)).collect();
    let mut entries = Vec::with_capacity((half + 1) * (half + 1));
    for r in 0..=half {
        for s in 0..=half {
            let value = inner_product_space(&polys[r], &polys[s], n);
            let expected = if r == s {
                ExactRational::from_integer(factorial(r))
            } else {
                ExactRational::zero()
            };
            entries.push(OrthogonalityEntry {
                r,
                s,
                pass: value == expected,
                value,
                expected,
            });
        }
    }
    OrthogonalityReport { n, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use proptest::prelude::*;

    #[test]
    fn closed_forms() {
        assert_eq!(charlier(0), IntPolynomial::from_i64(&[1]));
        assert_eq!(charlier(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(charlier(2), IntPolynomial::from_i64(&[1, -3, 1]));
        assert_eq!(charlier(3), IntPolynomial::from_i64(&[-1, 8, -6, 1]));
        assert_eq!(charlier(2).to_string(), "x^2 - 3x + 1");
        assert_eq!(charlier(1).to_string(), "x - 1");
        assert_eq!(charlier(3).to_string(), "x^3 - 6x^2 + 8x - 1");
        for k in 0..12 {
            let c = charlier(k);
            assert_eq!(c.degree(), Some(k));
            assert!(c.leading_coefficient().is_one());
            let expected = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(c.eval_usize(0), expected.into());
        }
    }

    #[test]
    fn series_sign_relation() {
        // e^t(1−t)^x gives 1 − x at order one, the negative of C_1.
        assert_eq!(
            generating_function_coefficient(1),
            vec![rational(1, 1), rational(-1, 1)]
        );
        assert_eq!(
            generating_function_coefficient(2),
            vec![rational(1, 1), rational(-3, 1), rational(1, 1)]
        );
        assert!(charlier_genfunc_check(0, 5));
        assert!(charlier_genfunc_check(2, 5));
        assert!(charlier_genfunc_check(8, 10));
    }

    #[test]
    fn reversals() {
        assert_eq!(reversed_charlier(1, 4), IntPolynomial::from_i64(&[3, -1]));
        assert_eq!(reversed_charlier(0, 9), IntPolynomial::from_i64(&[1]));
        assert_eq!(
            reversed_charlier(2, 4),
            IntPolynomial::from_i64(&[5, -5, 1])
        );
        for k in 0..8 {
            let lead = reversed_charlier(k, 10).leading_coefficient();
            assert_eq!(lead, if k % 2 == 0 { 1.into() } else { (-1).into() });
        }
    }

    #[test]
    fn inner_product_examples() {
        let c1 = reversed_charlier(1, 4);
        let c2 = reversed_charlier(2, 4);
        assert_eq!(inner_product_space(&c1, &c1, 4), rational(1, 1));
        assert_eq!(inner_product_space(&c2, &c2, 4), rational(2, 1));
        assert_eq!(inner_product_space(&c1, &c2, 4), rational(0, 1));
        assert_eq!(
            inner_product_tarnanen(&charlier(1), &charlier(1), 4),
            rational(1, 1)
        );
        let one = IntPolynomial::constant(1);
        for n in 0..8 {
            assert_eq!(inner_product_tarnanen(&one, &one, n), rational(1, 1));
        }
        assert_eq!(
            inner_product_tarnanen(&charlier(1), &charlier(2), 6),
            rational(0, 1)
        );
    }

    #[test]
    fn orthogonality_reports() {
        assert!(verify_orthogonality(4).all_pass());
        let r12 = verify_orthogonality(12);
        assert_eq!(r12.entries.len(), 49);
        assert!(r12.all_pass());
        let r5 = verify_orthogonality(5);
        let e00 = r5.entries.iter().find(|e| e.r == 0 && e.s == 0).unwrap();
        assert_eq!(e00.value, rational(1, 1));
    }

    #[test]
    fn orthogonality_up_to_16() {
        for n in 0..=16 {
            assert!(verify_orthogonality(n).all_pass(), "n={n}");
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(IntPolynomial::from_i64(&[3, -1]).to_string(), "-x + 3");
        assert_eq!(IntPolynomial::from_i64(&[0, 0, -2]).to_string(), "-2x^2");
        assert_eq!(charlier(2).to_json(), serde_json::json!(["1", "-3", "1"]));
    }

    proptest! {
        #[test]
        fn reversal_identity(
            n in 0usize..10,
            f in proptest::collection::vec(-20i64..20, 0..8),
            g in proptest::collection::vec(-20i64..20, 0..8),
        ) {
            let f = IntPolynomial::from_i64(&f[..f.len().min(n + 1)]);
            let g = IntPolynomial::from_i64(&g[..g.len().min(n + 1)]);
            prop_assert_eq!(
                inner_product_tarnanen(&f, &g, n),
                inner_product_space(&f.reflect(n), &g.reflect(n), n)
            );
            prop_assert_eq!(f.reflect(n).reflect(n), f);
        }
    }
}
