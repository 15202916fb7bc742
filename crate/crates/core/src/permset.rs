use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A nonempty set of distinct permutations of a common degree, kept sorted
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermSet {
    n: usize,
    elements: Vec<Permutation>,
}

impl PermSet {
    /// Sorts the input and rejects duplicates, mixed degrees and the empty set.
    pub fn new(mut elements: Vec<Permutation>) -> Result<Self> {
        let n = elements.first().ok_or(Error::EmptySet)?.degree();
        if let Some(bad) = elements.iter().find(|s| s.degree() != n) {
            return Err(Error::DegreeMismatch {
                left: n,
                right: bad.degree(),
            });
        }
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePermutation {
                perm: w[0].to_string(),
            });
        }
        Ok(PermSet { n, elements })
    }

    /// Wraps an already sorted, duplicate-free vector.
    pub(crate) fn from_sorted_unique(n: usize, elements: Vec<Permutation>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        PermSet { n, elements }
    }

    pub fn symmetric_group(n: usize) -> Result<Self> {
        let elements: Vec<_> = Permutation::all(n)?.collect();
        Ok(PermSet::from_sorted_unique(n, elements))
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.elements.iter()
    }

    pub fn contains(&self, sigma: &Permutation) -> bool {
        self.elements.binary_search(sigma).is_ok()
    }

    /// `{g∘σ : σ ∈ D}`
    pub fn left_translate(&self, g: &Permutation) -> Result<PermSet> {
        let els = self
            .elements
            .iter()
            .map(|s| g.compose(s))
            .collect::<Result<Vec<_>>>()?;
        PermSet::new(els)
    }

    /// `{σ∘g : σ ∈ D}`
    pub fn right_translate(&self, g: &Permutation) -> Result<PermSet> {
        let els = self
            .elements
            .iter()
            .map(|s| s.compose(g))
            .collect::<Result<Vec<_>>>()?;
        PermSet::new(els)
    }
}

impl<'a> IntoIterator for &'a PermSet {
    type Item = &'a Permutation;
    type IntoIter = std::slice::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_one_line;

    #[test]
    fn invariants_enforced() {
        assert_eq!(PermSet::new(vec![]), Err(Error::EmptySet));
        let a = parse_one_line("213", 3).unwrap();
        let b = parse_one_line("2134", 4).unwrap();
        assert!(matches!(
            PermSet::new(vec![a.clone(), b]),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            PermSet::new(vec![a.clone(), a.clone()]),
            Err(Error::DuplicatePermutation { .. })
        ));
        let set = PermSet::new(vec![a.clone(), Permutation::identity(3).unwrap()]).unwrap();
        assert_eq!(set.elements()[0], Permutation::identity(3).unwrap());
        assert!(set.contains(&a));
        assert_eq!(PermSet::symmetric_group(4).unwrap().len(), 24);
    }
}
