//! Permutations in one-line notation and the fixed-point metric.
//!
//! A [`Permutation`] of degree `n` is stored as its one-line image vector.
//! Points are 1-based at every public boundary and 0-based internally.
//! Composition follows `(σ∘τ)(x) = σ(τ(x))`: the right factor acts first, so
//! `24153 ∘ 35421 = 13542`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A bijection of `[1..n]`, ordered lexicographically by its one-line form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(Permutation {
            images: (0..n as u32).collect(),
        })
    }

    /// Builds a permutation from 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n {
                return Err(Error::OutOfRange { value: v as i64, n });
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::DuplicateImage { value: v });
            }
            out.push((v - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// Builds a permutation from 0-based images. The caller guarantees a bijection.
    pub(crate) fn from_zero_based_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(is_bijection(&images));
        Permutation { images }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_zero_based(images: Vec<u32>) -> Result<Self> {
        let one_based: Vec<usize> = images.iter().map(|&v| v as usize + 1).collect();
        Self::from_images(&one_based)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    /// 0-based image vector.
    pub fn zero_based(&self) -> &[u32] {
        &self.images
    }

    /// 1-based image vector.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    /// `self ∘ tau`, with `tau` applied first.
    pub fn compose(&self, tau: &Permutation) -> Result<Permutation> {
        self.check_degree(tau)?;
        Ok(self.compose_unchecked(tau))
    }

    pub(crate) fn compose_unchecked(&self, tau: &Permutation) -> Permutation {
        Permutation {
            images: tau
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation { images: inv }
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x as u32 == y)
            .count()
    }

    pub fn is_identity(&self) -> bool {
        self.fixed_points() == self.degree()
    }

    /// The fixed-point metric `n − F(σ∘τ⁻¹)`.
    ///
    /// `σ∘τ⁻¹` fixes `τ(y)` exactly when `σ(y) = τ(y)`, so this is the Hamming
    /// distance between the one-line forms.
    pub fn distance(&self, tau: &Permutation) -> Result<usize> {
        self.check_degree(tau)?;
        Ok(self.distance_unchecked(tau))
    }

    #[inline]
    pub(crate) fn distance_unchecked(&self, tau: &Permutation) -> usize {
        self.images
            .iter()
            .zip(&tau.images)
            .filter(|(a, b)| a != b)
            .count()
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = Permutation>> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok((0..n as u32)
            .permutations(n)
            .map(|images| Permutation { images }))
    }
}

fn is_bijection(images: &[u32]) -> bool {
    let mut seen = vec![false; images.len()];
    images
        .iter()
        .all(|&v| (v as usize) < seen.len() && !std::mem::replace(&mut seen[v as usize], true))
}

/// Parses `n` images separated by spaces or commas. For `n ≤ 9` a contiguous
/// digit string such as `24153` is also accepted.
pub fn parse_one_line(text: &str, n: usize) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let text = text.trim();
    let tokens: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();

    let values: Vec<i64> = if tokens.len() == 1 && n > 1 && n <= 9 && tokens[0].len() > 1 {
        let token = tokens[0];
        token
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(i64::from)
                    .ok_or_else(|| Error::InvalidToken {
                        token: token.to_string(),
                    })
            })
            .collect::<Result<_>>()?
    } else {
        tokens
            .iter()
            .map(|t| {
                t.parse::<i64>().map_err(|_| Error::InvalidToken {
                    token: t.to_string(),
                })
            })
            .collect::<Result<_>>()?
    };

    if values.len() != n {
        return Err(Error::WrongLength {
            expected: n,
            found: values.len(),
        });
    }
    if let Some(&bad) = values.iter().find(|&&v| v < 1 || v > n as i64) {
        return Err(Error::OutOfRange { value: bad, n });
    }
    let images: Vec<usize> = values.into_iter().map(|v| v as usize).collect();
    Permutation::from_images(&images)
}

/// One-line form: contiguous digits for `n ≤ 9`, space separated otherwise.
pub fn format_one_line(sigma: &Permutation) -> String {
    let n = sigma.degree();
    let digits = sigma.images.iter().map(|&v| (v + 1).to_string());
    if n <= 9 {
        digits.collect()
    } else {
        digits.collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_one_line(self))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", format_one_line(self))
    }
}
