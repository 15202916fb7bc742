//! Table-driven arithmetic in GF(p^m) for orders up to [`FIELD_ORDER_CAP`].
//!
//! An element is a coefficient vector `(c_0, …, c_{m−1})` over GF(p), read as
//! `c_0 + c_1 t + ⋯` modulo the field's irreducible polynomial. Its index is
//! `Σ c_i p^i`, and the canonical enumeration lists elements by index, so a
//! prime field enumerates `0, 1, …, p−1` and GF(4) enumerates `0, 1, t, t+1`.
//! Index `i` corresponds to the point `i + 1` when field maps are realized as
//! permutations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub const FIELD_ORDER_CAP: u64 = 256;

#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    m: u32,
    q: usize,
    /// Monic modulus, low-to-high, length `m + 1`.
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Returns `(p, m)` with `q = p^m`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn digits(mut index: usize, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (index % p as usize) as u32;
            index /= p as usize;
            d
        })
        .collect()
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        for low in 0..(p as usize).pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `m` over GF(p) in
/// lexicographic order of `(c_0, c_1, …, c_{m−1})`.
fn first_irreducible(p: u32, m: u32) -> Vec<u32> {
    let m = m as usize;
    for rank in 0..(p as usize).pow(m as u32) {
        // c_0 is the most significant digit of `rank`.
        let mut f: Vec<u32> = digits(rank, p, m).into_iter().rev().collect();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower { q })?;
        if q > FIELD_ORDER_CAP {
            return Err(Error::FieldTooLarge {
                q,
                cap: FIELD_ORDER_CAP,
            });
        }
        let q = q as usize;
        let modulus = first_irreducible(p, m);
        let vecs: Vec<Vec<u32>> = (0..q).map(|i| digits(i, p, m as usize)).collect();
        let index_of = |v: &[u32]| {
            v.iter()
                .rev()
                .fold(0usize, |acc, &c| acc * p as usize + c as usize)
        };

        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u32> = vecs[a]
                    .iter()
                    .zip(&vecs[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * q + b] = index_of(&sum) as u16;

                let mut prod = vec![0u32; 2 * m as usize - 1];
                for (i, x) in vecs[a].iter().enumerate() {
                    for (j, y) in vecs[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut red = poly_rem(&prod, &modulus, p);
                red.resize(m as usize, 0);
                mul[a * q + b] = index_of(&red) as u16;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u16
                }
            })
            .collect();

        Ok(FiniteField {
            p,
            m,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.m
    }

    /// Monic modulus, coefficients low-to-high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, index: usize) -> FieldElement<'_> {
        assert!(index < self.q, "element index {index} out of range");
        FieldElement {
            field: self,
            index: index as u16,
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement<'_> {
        let index = coeffs.iter().rev().fold(0usize, |acc, &c| {
            acc * self.p as usize + (c % self.p) as usize
        });
        self.element(index)
    }

    pub fn zero(&self) -> FieldElement<'_> {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement<'_> {
        self.element(1)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> + '_ {
        (0..self.q).map(move |i| self.element(i))
    }

    /// Smallest-index element of multiplicative order `q − 1`.
    pub fn primitive_element(&self) -> FieldElement<'_> {
        self.elements()
            .skip(1)
            .find(|g| {
                let mut x = *g;
                let mut order = 1;
                while x.index != 1 {
                    x = x * *g;
                    order += 1;
                }
                order == self.q - 1
            })
            .expect("multiplicative group is cyclic")
    }
}

/// Canonical field of order `q`.
pub fn make_field(q: u64) -> Result<FiniteField> {
    FiniteField::new(q)
}

#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f FiniteField,
    index: u16,
}

impl<'f> FieldElement<'f> {
    pub fn index(&self) -> usize {
        self.index as usize
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    pub fn coeffs(&self) -> Vec<u32> {
        digits(self.index(), self.field.p, self.field.m as usize)
    }

    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.with(self.field.inv[self.index()]))
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn with(&self, index: u16) -> Self {
        FieldElement {
            field: self.field,
            index,
        }
    }

    fn pair(&self, rhs: &Self) -> usize {
        assert!(
            std::ptr::eq(self.field, rhs.field),
            "operands belong to different fields"
        );
        self.index() * self.field.q + rhs.index()
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) && self.index == other.index
    }
}

impl Eq for FieldElement<'_> {}

impl<'f> Add for FieldElement<'f> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.with(self.field.add[self.pair(&rhs)])
    }
}

impl<'f> Sub for FieldElement<'f> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<'f> Mul for FieldElement<'f> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.with(self.field.mul[self.pair(&rhs)])
    }
}

impl<'f> Neg for FieldElement<'f> {
    type Output = Self;
    fn neg(self) -> Self {
        self.with(self.field.neg[self.index()])
    }
}

impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        let gf9 = make_field(9).unwrap();
        assert_eq!(gf9.modulus(), &[1, 0, 1]);
        let gf5 = make_field(5).unwrap();
        assert_eq!(gf5.extension_degree(), 1);
        assert_eq!(gf5.modulus(), &[0, 1]);
        assert_eq!(make_field(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(8).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(make_field(256).unwrap().order(), 256);
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(make_field(6).unwrap_err(), Error::NotPrimePower { q: 6 });
        assert_eq!(make_field(1).unwrap_err(), Error::NotPrimePower { q: 1 });
        assert_eq!(make_field(0).unwrap_err(), Error::NotPrimePower { q: 0 });
        assert_eq!(
            make_field(257).unwrap_err(),
            Error::FieldTooLarge { q: 257, cap: 256 }
        );
    }

    #[test]
    fn gf9_generator_squares_to_minus_one() {
        let f = make_field(9).unwrap();
        let t = f.from_coeffs(&[0, 1]);
        assert_eq!(t * t, f.from_coeffs(&[2]));
        assert_eq!(t * t, -f.one());
    }

    #[test]
    fn enumeration_order() {
        let gf3 = make_field(3).unwrap();
        let names: Vec<String> = gf3.elements().map(|e| e.to_string()).collect();
        assert_eq!(names, ["0", "1", "2"]);
        let gf4 = make_field(4).unwrap();
        let names: Vec<String> = gf4.elements().map(|e| e.to_string()).collect();
        assert_eq!(names, ["0", "1", "t", "t+1"]);
        assert_eq!(make_field(9).unwrap().elements().count(), 9);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25] {
            let f = make_field(q).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(a + (-a), f.zero());
                assert_eq!(a + f.zero(), a);
                assert_eq!(a * f.one(), a);
                if !a.is_zero() {
                    assert_eq!(a.inv().unwrap() * a, f.one());
                    assert_eq!(a.pow(q - 1), f.one());
                }
                for &b in &els {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for &c in &els {
                        assert_eq!((a + b) + c, a + (b + c));
                        assert_eq!((a * b) * c, a * (b * c));
                        assert_eq!(a * (b + c), a * b + a * c);
                    }
                }
            }
            assert_eq!(f.zero().inv(), Err(Error::ZeroInverse));
        }
    }

    #[test]
    fn cube_map_is_bijective_on_gf9() {
        let f = make_field(9).unwrap();
        let mut seen = [false; 9];
        for x in f.elements() {
            let y = x.pow(3);
            assert!(!std::mem::replace(&mut seen[y.index()], true));
        }
    }

    #[test]
    fn primitive_elements() {
        for q in [3u64, 4, 5, 7, 8, 9, 16] {
            let f = make_field(q).unwrap();
            let g = f.primitive_element();
            let powers: std::collections::BTreeSet<usize> =
                (0..q - 1).map(|e| g.pow(e).index()).collect();
            assert_eq!(powers.len() as u64, q - 1);
        }
    }
}
