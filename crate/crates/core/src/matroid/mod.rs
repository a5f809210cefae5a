//! Linear matroids represented by exact matrices.
//!
//! A matroid here is a matrix plus a ground set of element ids, one per
//! column. Ids are arbitrary u32s (vertex ids of a framework); deletion
//! removes columns and leaves the remaining ids untouched.

mod repfam;
mod truncate;

pub use repfam::{representative_family, representative_family_padded};
pub use truncate::{truncate, TruncationMode};

use crate::error::Error;
use crate::exact::{mat_basis_columns, mat_rank, Domain, ExactMatrix};
use crate::{GroundSubset, Result, VertexId};
use std::collections::{BTreeMap, BTreeSet};

/// A linear matroid: ground element ids in ascending order, one matrix column
/// per element.
#[derive(Debug, Clone)]
pub struct LinearMatroid {
    ground: Vec<VertexId>,
    matrix: ExactMatrix,
    col_of: BTreeMap<VertexId, usize>,
    cached_rank: usize,
}

impl LinearMatroid {
    /// Build from a ground list and a matrix with one column per element.
    /// The ground list must be strictly ascending.
    pub fn new(ground: Vec<VertexId>, matrix: ExactMatrix) -> Result<Self> {
        if matrix.cols() != ground.len() {
            return Err(Error::Dimension(format!(
                "matroid has {} ground elements but matrix has {} columns",
                ground.len(),
                matrix.cols()
            )));
        }
        for w in ground.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidInstance(
                    "matroid ground set must be strictly ascending".into(),
                ));
            }
        }
        let col_of = ground.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let cached_rank = mat_basis_columns(&matrix).len();
        Ok(LinearMatroid { ground, matrix, col_of, cached_rank })
    }

    pub fn ground(&self) -> &[VertexId] {
        &self.ground
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn domain(&self) -> Domain {
        self.matrix.domain()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.col_of.contains_key(&v)
    }

    /// Rank of the whole ground set (cached at construction).
    pub fn full_rank(&self) -> usize {
        self.cached_rank
    }

    fn cols_for(&self, set: &[VertexId]) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &v in set {
            let c = *self
                .col_of
                .get(&v)
                .unwrap_or_else(|| panic!("element {v} not in matroid ground set"));
            out.insert(c);
        }
        out
    }

    /// Rank of a subset of the ground set. Elements must belong to the
    /// matroid; duplicates are collapsed.
    pub fn rank(&self, set: &[VertexId]) -> usize {
        mat_rank(&self.matrix, &self.cols_for(set))
    }

    /// Whether `set` (duplicate-free) is independent.
    pub fn is_independent(&self, set: &[VertexId]) -> bool {
        let cols = self.cols_for(set);
        cols.len() == set.len() && mat_rank(&self.matrix, &cols) == set.len()
    }

    /// Delete one element.
    pub fn delete(&self, v: VertexId) -> Self {
        self.delete_many(&[v])
    }

    /// Delete a set of elements.
    pub fn delete_many(&self, set: &[VertexId]) -> Self {
        let drop: BTreeSet<VertexId> = set.iter().copied().collect();
        let keep_cols: Vec<usize> = self
            .ground
            .iter()
            .enumerate()
            .filter(|(_, v)| !drop.contains(v))
            .map(|(i, _)| i)
            .collect();
        let ground: Vec<VertexId> =
            self.ground.iter().copied().filter(|v| !drop.contains(v)).collect();
        let matrix = self.matrix.select_columns(&keep_cols);
        LinearMatroid::new(ground, matrix).expect("deletion preserves invariants")
    }

    /// Smallest element of `candidates` that extends the independent set
    /// `indep` to a larger independent set, if any.
    pub fn extend_independent(
        &self,
        indep: &GroundSubset,
        candidates: &[VertexId],
    ) -> Option<VertexId> {
        debug_assert!(self.is_independent(indep));
        let base_cols = self.cols_for(indep);
        let base_rank = mat_rank(&self.matrix, &base_cols);
        let mut sorted: Vec<VertexId> = candidates.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for v in sorted {
            if indep.contains(&v) {
                continue;
            }
            let mut cols = base_cols.clone();
            cols.insert(*self.col_of.get(&v).expect("candidate in ground set"));
            if mat_rank(&self.matrix, &cols) > base_rank {
                return Some(v);
            }
        }
        None
    }

    /// Enumerate every independent subset of size at most `k`, in ascending
    /// lexicographic order, invoking `visit`; `visit` returning false aborts.
    pub fn for_each_independent_upto<F: FnMut(&GroundSubset) -> bool>(
        &self,
        k: usize,
        visit: &mut F,
    ) -> bool {
        fn rec<F: FnMut(&GroundSubset) -> bool>(
            m: &LinearMatroid,
            k: usize,
            start: usize,
            cur: &mut GroundSubset,
            visit: &mut F,
        ) -> bool {
            if !visit(cur) {
                return false;
            }
            if cur.len() == k {
                return true;
            }
            for i in start..m.ground.len() {
                cur.push(m.ground[i]);
                // A dependent prefix cannot become independent again.
                if m.is_independent(cur) {
                    if !rec(m, k, i + 1, cur, visit) {
                        cur.pop();
                        return false;
                    }
                }
                cur.pop();
            }
            true
        }
        let mut cur = Vec::new();
        rec(self, k, 0, &mut cur, visit)
    }
}

/// Check the matroid axioms for an explicitly listed family of independent
/// sets over a ground set of at most 5 elements:
///
/// 1. the empty set is independent;
/// 2. subsets of independent sets are independent;
/// 3. exchange: if |A| < |B| are both independent, some element of B \ A
///    extends A.
pub fn validate_axioms(ground: &[VertexId], family: &BTreeSet<GroundSubset>) -> bool {
    assert!(ground.len() <= 5, "axiom check limited to ground sets of size 5");
    let ground_set: BTreeSet<VertexId> = ground.iter().copied().collect();
    // Members must be sorted, duplicate-free subsets of the ground set.
    for s in family {
        for w in s.windows(2) {
            if w[0] >= w[1] {
                return false;
            }
        }
        if !s.iter().all(|v| ground_set.contains(v)) {
            return false;
        }
    }
    if !family.contains(&vec![]) {
        return false;
    }
    for s in family {
        for drop in 0..s.len() {
            let mut sub = s.clone();
            sub.remove(drop);
            if !family.contains(&sub) {
                return false;
            }
        }
    }
    for a in family {
        for b in family {
            if a.len() < b.len() {
                let a_set: BTreeSet<VertexId> = a.iter().copied().collect();
                let extends = b.iter().any(|&x| {
                    if a_set.contains(&x) {
                        return false;
                    }
                    let mut bigger: GroundSubset = a.clone();
                    let pos = bigger.binary_search(&x).unwrap_err();
                    bigger.insert(pos, x);
                    family.contains(&bigger)
                });
                if !extends {
                    return false;
                }
            }
        }
    }
    true
}

/// The family of independent sets of a linear matroid with a small ground
/// set, for feeding `validate_axioms`.
pub fn independent_family(m: &LinearMatroid) -> BTreeSet<GroundSubset> {
    assert!(m.ground().len() <= 16, "family enumeration limited to small grounds");
    let mut out = BTreeSet::new();
    m.for_each_independent_upto(m.ground().len(), &mut |s| {
        out.insert(s.clone());
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;

    fn identity3() -> LinearMatroid {
        let m = ExactMatrix::identity(3, Domain::Gfp(5));
        LinearMatroid::new(vec![10, 20, 30], m).unwrap()
    }

    #[test]
    fn rank_examples() {
        let m = identity3();
        assert_eq!(m.rank(&[10, 20, 30]), 3);
        assert_eq!(m.rank(&[]), 0);
        assert_eq!(m.full_rank(), 3);

        // A zero column is a loop: {loop, e1} has rank 1.
        let mat = ExactMatrix::from_i64_rows(Domain::Rat, &[&[0, 1], &[0, 0]]);
        let m2 = LinearMatroid::new(vec![1, 2], mat).unwrap();
        assert_eq!(m2.rank(&[1, 2]), 1);
        assert!(!m2.is_independent(&[1]));
        assert!(m2.is_independent(&[2]));
    }

    #[test]
    fn independence_examples() {
        let m = identity3();
        assert!(m.is_independent(&[10, 20]));
        assert!(m.is_independent(&[]));

        let mat =
            ExactMatrix::from_i64_rows(Domain::Rat, &[&[1, 0, 1], &[0, 1, 1]]);
        let m2 = LinearMatroid::new(vec![0, 1, 2], mat).unwrap();
        assert!(!m2.is_independent(&[0, 1, 2]));
        assert!(m2.is_independent(&[0, 1]));
    }

    #[test]
    fn deletion_keeps_other_columns() {
        let m = identity3();
        let d = m.delete(20);
        assert_eq!(d.ground(), &[10, 30]);
        assert_eq!(d.full_rank(), 2);
        assert!(d.is_independent(&[10, 30]));
        let d2 = d.delete_many(&[10, 30]);
        assert_eq!(d2.ground(), &[] as &[VertexId]);
        assert_eq!(d2.full_rank(), 0);
    }

    #[test]
    fn extend_independent_examples() {
        let m = identity3();
        // From the empty set, the smallest non-loop extends.
        assert_eq!(m.extend_independent(&vec![], &[10, 20, 30]), Some(10));
        // A basis cannot be extended.
        assert_eq!(m.extend_independent(&vec![10, 20, 30], &[10, 20, 30]), None);

        // Rank-2 uniform matroid on {a=1, b=2, c=3}: from {1}, tie-break by id.
        let mat = ExactMatrix::from_i64_rows(Domain::Gfp(5), &[&[1, 1, 1], &[1, 2, 3]]);
        let u23 = LinearMatroid::new(vec![1, 2, 3], mat).unwrap();
        assert_eq!(u23.extend_independent(&vec![1], &[2, 3]), Some(2));
    }

    #[test]
    fn axioms_on_small_families() {
        // Independent sets of the rank-1 matroid on {a=1, b=2}.
        let fam: BTreeSet<GroundSubset> =
            [vec![], vec![1], vec![2]].into_iter().collect();
        assert!(validate_axioms(&[1, 2], &fam));

        // Missing singleton breaks heredity: {} and {a,b} alone.
        let broken: BTreeSet<GroundSubset> = [vec![], vec![1, 2]].into_iter().collect();
        assert!(!validate_axioms(&[1, 2], &broken));

        // Exchange failure: {}, {a}, {b}, {a,b}, {c} but c never pairs.
        let no_exchange: BTreeSet<GroundSubset> =
            [vec![], vec![1], vec![2], vec![1, 2], vec![3]].into_iter().collect();
        assert!(!validate_axioms(&[1, 2, 3], &no_exchange));

        // Not sorted / not a subset.
        let junk: BTreeSet<GroundSubset> = [vec![], vec![9]].into_iter().collect();
        assert!(!validate_axioms(&[1, 2], &junk));
    }

    #[test]
    fn linear_matroids_satisfy_axioms() {
        for domain in [Domain::Gfp(2), Domain::Gfp(5), Domain::Rat] {
            let mat = ExactMatrix::from_i64_rows(
                domain,
                &[&[1, 0, 1, 1, 0], &[0, 1, 1, 0, 0]],
            );
            let m = LinearMatroid::new(vec![0, 1, 2, 3, 4], mat).unwrap();
            let fam = independent_family(&m);
            assert!(validate_axioms(m.ground(), &fam));
        }
    }

    #[test]
    fn independent_enumeration_is_sorted_and_complete() {
        let mat = ExactMatrix::from_i64_rows(Domain::Gfp(5), &[&[1, 1, 0], &[0, 1, 0]]);
        let m = LinearMatroid::new(vec![1, 2, 3], mat).unwrap();
        let mut seen = Vec::new();
        m.for_each_independent_upto(2, &mut |s| {
            seen.push(s.clone());
            true
        });
        // Element 3 is a loop; independents: {}, {1}, {1,2}, {2}.
        assert_eq!(seen, vec![vec![], vec![1], vec![1, 2], vec![2]]);
        let mut prefix = seen.clone();
        prefix.sort();
        assert_eq!(prefix, seen, "enumeration is lexicographic");
    }

    #[test]
    fn ground_matrix_dimension_mismatch_rejected() {
        let rows = vec![vec![Scalar::gfp(1, 5)], vec![Scalar::gfp(0, 5)]];
        let m = ExactMatrix::from_rows(Domain::Gfp(5), rows);
        assert!(LinearMatroid::new(vec![1, 2], m).is_err());
    }
}
