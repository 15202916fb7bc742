//! Example families: cyclic groups, the order-5 non-group Latin square,
//! affine and twisted-affine maps over finite fields, `PGL(2, q)` on the
//! projective line, and composition closure of generator sets.
//!
//! Field maps act on `[1..q]` through the canonical field enumeration
//! (element index `i` is point `i + 1`). For `PGL(2, q)` the point at
//! infinity is `q + 1`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{make_field, FieldElement, FiniteField};
use crate::perm::{parse_one_line, Permutation};
use crate::permset::PermSet;

/// `10!`
pub const DEFAULT_CLOSURE_CAP: usize = 3_628_800;

/// The `n` powers of the cycle `(1 2 … n)`.
pub fn cyclic_group(n: usize) -> Result<PermSet> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let els = (0..n)
        .map(|k| {
            Permutation::from_zero_based_unchecked((0..n).map(|x| ((x + k) % n) as u32).collect())
        })
        .collect();
    PermSet::new(els)
}

/// Five permutations from the smallest Latin square that is not a group table.
pub fn latin_square_example_n5() -> PermSet {
    let els = ["12345", "24153", "35421", "41532", "53214"]
        .iter()
        .map(|s| parse_one_line(s, 5).expect("valid literal"))
        .collect();
    PermSet::new(els).expect("distinct literals")
}

/// Rows of an `n×n` Latin square over `[1..n]` become permutations
/// `c ↦ rows[r][c]`.
pub fn from_latin_square(rows: &[Vec<usize>]) -> Result<PermSet> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::NotLatinSquare {
            reason: "empty array".into(),
        });
    }
    let mut perms = Vec::with_capacity(n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotLatinSquare {
                reason: format!("row {} has {} entries, expected {n}", r + 1, row.len()),
            });
        }
        let perm = Permutation::from_images(row).map_err(|e| Error::NotLatinSquare {
            reason: format!("row {}: {e}", r + 1),
        })?;
        perms.push(perm);
    }
    for c in 0..n {
        let mut seen = vec![false; n];
        for row in rows {
            if std::mem::replace(&mut seen[row[c] - 1], true) {
                return Err(Error::NotLatinSquare {
                    reason: format!("column {} repeats {}", c + 1, row[c]),
                });
            }
        }
    }
    PermSet::new(perms)
}

/// Inverse of [`from_latin_square`], rows in lexicographic order. Requires
/// `|D| = n` with all pairwise distances equal to `n`.
pub fn to_latin_square(d: &PermSet) -> Result<Vec<Vec<usize>>> {
    let n = d.degree();
    if d.len() != n {
        return Err(Error::NotLatinSquare {
            reason: format!("set has {} permutations, need {n}", d.len()),
        });
    }
    let els = d.elements();
    for (i, a) in els.iter().enumerate() {
        for b in &els[i + 1..] {
            if a.distance_unchecked(b) != n {
                return Err(Error::NotLatinSquare {
                    reason: format!("{a} and {b} agree somewhere"),
                });
            }
        }
    }
    Ok(els.iter().map(Permutation::images).collect())
}

/// `{x ↦ map(a, b, x) : a ≠ 0, b ∈ GF(q)}` as permutations of `[1..q]`.
fn field_map_set<'f>(
    field: &'f FiniteField,
    map: impl Fn(FieldElement<'f>, FieldElement<'f>, FieldElement<'f>) -> FieldElement<'f>,
) -> Result<PermSet> {
    let points: Vec<FieldElement<'f>> = field.elements().collect();
    let mut perms = Vec::with_capacity(points.len() * (points.len() - 1));
    for &a in &points[1..] {
        for &b in &points {
            let images = points
                .iter()
                .map(|&x| map(a, b, x).index() as u32)
                .collect();
            perms.push(Permutation::from_zero_based(images)?);
        }
    }
    PermSet::new(perms)
}

/// `{x ↦ a·x + b : a ≠ 0}` over GF(q).
pub fn affine_group(q: u64) -> Result<PermSet> {
    let field = make_field(q)?;
    field_map_set(&field, |a, b, x| a * x + b)
}

/// `{x ↦ a·x³ + b : a ≠ 0}` over GF(9): a 2-design that is not a group.
pub fn twisted_affine_9() -> PermSet {
    let field = make_field(9).expect("9 is a prime power");
    field_map_set(&field, |a, b, x| a * x.pow(3) + b).expect("x^3 is a bijection of GF(9)")
}

/// Möbius maps `x ↦ (a·x + b)/(c·x + d)`, `ad − bc ≠ 0`, on the `q + 1`
/// points of the projective line. Matrices are normalized to `c = 1`, or
/// `c = 0, d = 1`, so each map appears once.
pub fn pgl2(q: u64) -> Result<PermSet> {
    let field = make_field(q)?;
    let qn = field.order();
    let infinity = qn as u32;
    let els: Vec<FieldElement<'_>> = field.elements().collect();
    let zero = field.zero();
    let one = field.one();

    let act = |a: FieldElement<'_>, b, c: FieldElement<'_>, d| -> Result<Vec<u32>> {
        let mut images = Vec::with_capacity(qn + 1);
        for &x in &els {
            let den = c * x + d;
            images.push(if den.is_zero() {
                infinity
            } else {
                ((a * x + b) * den.inv()?).index() as u32
            });
        }
        images.push(if c.is_zero() {
            infinity
        } else {
            (a * c.inv()?).index() as u32
        });
        Ok(images)
    };

    let mut perms = Vec::with_capacity((qn + 1) * qn * (qn - 1));
    for &a in &els[1..] {
        for &b in &els {
            perms.push(Permutation::from_zero_based(act(a, b, zero, one)?)?);
        }
    }
    for &a in &els {
        for &b in &els {
            for &d in &els {
                if a * d == b {
                    continue;
                }
                perms.push(Permutation::from_zero_based(act(a, b, one, d)?)?);
            }
        }
    }
    PermSet::new(perms)
}

/// Smallest composition-closed superset of `generators`, by breadth-first
/// search over right multiplication.
pub fn group_closure(generators: &PermSet, cap: usize) -> Result<PermSet> {
    let gens = generators.elements();
    let mut seen: HashSet<Permutation> = gens.iter().cloned().collect();
    let mut frontier: Vec<Permutation> = gens.to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = x.compose_unchecked(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::ClosureTooLarge { cap });
                    }
                    seen.insert(y.clone());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut els: Vec<_> = seen.into_iter().collect();
    els.sort_unstable();
    Ok(PermSet::from_sorted_unique(generators.degree(), els))
}
