//! Sparse exact linear algebra: incremental row echelon form over the
//! rationals, enough for ranks and canonical quotient representatives.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Scalar;

/// Sparse vector: index to nonzero entry.
pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn axpy(target: &mut SparseVec, c: &Scalar, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, a) in v {
        let entry = target.entry(*k).or_insert_with(Scalar::zero);
        *entry += c * a;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

/// Rows with distinct pivots; each row is zero before its pivot and has a
/// one at the pivot. Reduced vectors vanish at every pivot, which makes
/// them canonical representatives modulo the row span.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, k: usize) -> bool {
        self.rows.contains_key(&k)
    }

    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0;
        loop {
            let hit = v
                .range(cursor..)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = hit else { break };
            axpy(&mut v, &-c, &self.rows[&k]);
            cursor = k + 1;
        }
        v
    }

    /// Add `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next() else {
            return false;
        };
        let inv = Scalar::one() / lead;
        let row = r.into_iter().map(|(k, a)| (k, a * &inv)).collect();
        self.rows.insert(pivot, row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }
}

/// Rank of a list of vectors.
pub fn rank(vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(k, a)| (k, a.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, a)| (k, int(a))).collect()
    }

    #[test]
    fn rank_and_reduction() {
        let mut e = Echelon::new();
        assert!(e.insert(sv(&[(0, 2), (1, 4)])));
        assert!(e.insert(sv(&[(1, 1), (2, 1)])));
        assert!(!e.insert(sv(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(e.rank(), 2);
        let r = e.reduce(sv(&[(0, 1)]));
        assert!(!r.contains_key(&0) && !r.contains_key(&1));
        assert_eq!(r.get(&2), Some(&int(2)));
    }
}
