//! Representative families via the determinant (wedge) embedding.
//!
//! Given a matroid of rank exactly p + q and a family of independent p-sets,
//! each member X is mapped to the vector of p × p minors det(B[R, X]) over
//! all p-subsets R of the p + q basis rows, taken in lexicographic order. A
//! maximal independent set of these vectors — chosen by the fixed elimination
//! pivot rule, so lexicographically first — indexes a q-representative
//! subfamily: for every Y with |Y| ≤ q, if some X in the family has X ∩ Y = ∅
//! and X ∪ Y independent, then some kept X' does too.

use super::LinearMatroid;
use crate::error::Error;
use crate::exact::{mat_basis_columns, ExactMatrix, Scalar};
use crate::{GroundSubset, Result, VertexId};
use itertools::Itertools;

/// Compute a q-representative subfamily. Requires the matroid rank to equal
/// p + q exactly; see [`representative_family_padded`] for the general entry
/// point used by the dynamic program.
///
/// The family is canonicalised (members sorted internally, family sorted
/// lexicographically, duplicates removed) before processing, and the output
/// is the lexicographically first representative subfamily, of size at most
/// C(p + q, p).
pub fn representative_family(
    mt: &LinearMatroid,
    family: &[GroundSubset],
    p: usize,
    q: usize,
) -> Result<Vec<GroundSubset>> {
    if mt.full_rank() != p + q {
        return Err(Error::RankMismatch(format!(
            "representative family needs rank exactly {} (p={p} + q={q}), got {}",
            p + q,
            mt.full_rank()
        )));
    }
    let mut fam: Vec<GroundSubset> = family.to_vec();
    for x in &fam {
        if x.len() != p {
            return Err(Error::InvalidInstance(format!(
                "family member {x:?} has size {} but p = {p}",
                x.len()
            )));
        }
        for w in x.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidInstance(format!(
                    "family member {x:?} is not strictly ascending"
                )));
            }
        }
        if !x.iter().all(|&v| mt.contains(v)) {
            return Err(Error::InvalidInstance(format!(
                "family member {x:?} leaves the ground set"
            )));
        }
        if !mt.is_independent(x) {
            return Err(Error::RankMismatch(format!(
                "family member {x:?} is not independent"
            )));
        }
    }
    fam.sort();
    fam.dedup();
    if fam.is_empty() {
        return Ok(vec![]);
    }

    let basis = mt.matrix().row_basis(); // (p+q) × n
    let domain = basis.domain();
    let row_subsets: Vec<Vec<usize>> = (0..p + q).combinations(p).collect();
    let mut wedge = ExactMatrix::zero(row_subsets.len(), fam.len(), domain);
    for (xi, x) in fam.iter().enumerate() {
        let col_ids: Vec<usize> = x
            .iter()
            .map(|&v| {
                mt.ground()
                    .binary_search(&v)
                    .expect("validated membership")
            })
            .collect();
        let sub = basis.select_columns(&col_ids);
        for (ri, rows) in row_subsets.iter().enumerate() {
            let minor = if rows.is_empty() {
                Scalar::one(domain)
            } else {
                sub.select_rows(rows).det()
            };
            wedge.set(ri, xi, minor);
        }
    }
    let kept = mat_basis_columns(&wedge);
    Ok(kept.into_iter().map(|i| fam[i].clone()).collect())
}

/// General entry point: if the matroid rank is below p + q, pad with fresh
/// dummy elements (one new identity row and column each) until the rank is
/// exactly p + q, then compute the representative family. Dummy elements are
/// invisible to the result: original columns are zero on dummy rows, so any
/// set of original elements has the same rank in the padded matroid.
pub fn representative_family_padded(
    mt: &LinearMatroid,
    family: &[GroundSubset],
    p: usize,
    q: usize,
) -> Result<Vec<GroundSubset>> {
    let r = mt.full_rank();
    if r == p + q {
        return representative_family(mt, family, p, q);
    }
    if r > p + q {
        return Err(Error::RankMismatch(format!(
            "matroid rank {r} exceeds p + q = {}; truncate first",
            p + q
        )));
    }
    let d = p + q - r;
    let basis = mt.matrix().row_basis(); // r × n
    let n = mt.ground().len();
    let domain = basis.domain();
    let mut padded = ExactMatrix::zero(r + d, n + d, domain);
    for i in 0..r {
        for j in 0..n {
            padded.set(i, j, basis.at(i, j).clone());
        }
    }
    for e in 0..d {
        padded.set(r + e, n + e, Scalar::one(domain));
    }
    let next_id = mt.ground().last().map_or(0, |&v| v + 1);
    let fresh: Vec<VertexId> = (0..d as u32)
        .map(|e| {
            next_id
                .checked_add(e)
                .expect("ground ids stay within u32")
        })
        .collect();
    let mut ground = mt.ground().to_vec();
    ground.extend_from_slice(&fresh);
    let padded_mt = LinearMatroid::new(ground, padded)?;
    representative_family(&padded_mt, family, p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Domain;

    /// Rank-2 uniform matroid on 4 elements: 2 × 4 Vandermonde over GF(5).
    fn u24() -> LinearMatroid {
        let mat = ExactMatrix::from_i64_rows(
            Domain::Gfp(5),
            &[&[1, 1, 1, 1], &[1, 2, 3, 4]],
        );
        LinearMatroid::new(vec![0, 1, 2, 3], mat).unwrap()
    }

    /// Definition check, brute force: every member X and extension Y with
    /// |Y| ≤ q, X ∩ Y = ∅, X ∪ Y independent must be matched by a kept X'.
    fn is_representative(
        mt: &LinearMatroid,
        family: &[GroundSubset],
        kept: &[GroundSubset],
        q: usize,
    ) -> bool {
        let ground = mt.ground().to_vec();
        let n = ground.len();
        for x in family {
            for mask in 0u32..(1 << n) {
                let y: GroundSubset = (0..n)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| ground[i])
                    .collect();
                if y.len() > q || y.iter().any(|v| x.contains(v)) {
                    continue;
                }
                let mut xy = x.clone();
                xy.extend(&y);
                xy.sort_unstable();
                if !mt.is_independent(&xy) {
                    continue;
                }
                let matched = kept.iter().any(|xp| {
                    if y.iter().any(|v| xp.contains(v)) {
                        return false;
                    }
                    let mut xpy = xp.clone();
                    xpy.extend(&y);
                    xpy.sort_unstable();
                    mt.is_independent(&xpy)
                });
                if !matched {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn uniform_2_4_singletons() {
        let m = u24();
        let family: Vec<GroundSubset> = vec![vec![0], vec![1], vec![2], vec![3]];
        let kept = representative_family(&m, &family, 1, 1).unwrap();
        assert!(kept.len() <= 2, "C(2,1) = 2 bounds the output");
        assert!(is_representative(&m, &family, &kept, 1));
        // Deterministic: lexicographically first independent wedge columns.
        let again = representative_family(&m, &family, 1, 1).unwrap();
        assert_eq!(kept, again);
    }

    #[test]
    fn empty_family() {
        let m = u24();
        assert_eq!(representative_family(&m, &[], 1, 1).unwrap(), Vec::<GroundSubset>::new());
    }

    #[test]
    fn q_zero_keeps_single_member() {
        let m = u24();
        let family: Vec<GroundSubset> = vec![vec![1, 3], vec![0, 2], vec![2, 3]];
        let kept = representative_family(&m, &family, 2, 0).unwrap();
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0], vec![0, 2], "lex-first member is kept");
    }

    #[test]
    fn p_zero_keeps_empty_set() {
        // Truncate U(2,4) to rank 1 so that p + q = 0 + 1 matches.
        let m = u24();
        let t = crate::matroid::truncate(&m, 1, crate::matroid::TruncationMode::Auto).unwrap();
        let family: Vec<GroundSubset> = vec![vec![]];
        let kept = representative_family(&t, &family, 0, 1).unwrap();
        assert_eq!(kept, vec![Vec::<VertexId>::new()]);
    }

    #[test]
    fn rank_must_match() {
        let m = u24();
        assert!(representative_family(&m, &[vec![0]], 1, 3).is_err());
        assert!(representative_family(&m, &[vec![0]], 1, 0).is_err());
    }

    #[test]
    fn dependent_member_rejected() {
        let mat = ExactMatrix::from_i64_rows(Domain::Rat, &[&[0, 1], &[0, 0]]);
        let m = LinearMatroid::new(vec![0, 1], mat).unwrap();
        // Element 0 is a loop.
        assert!(representative_family_padded(&m, &[vec![0]], 1, 0).is_err());
    }

    #[test]
    fn padded_wrapper_handles_low_rank() {
        // Rank-1 matroid, p = 1, q = 1 requires padding to rank 2.
        let mat = ExactMatrix::from_i64_rows(Domain::Gfp(7), &[&[1, 2, 3]]);
        let m = LinearMatroid::new(vec![0, 1, 2], mat).unwrap();
        let family: Vec<GroundSubset> = vec![vec![0], vec![1], vec![2]];
        let kept = representative_family_padded(&m, &family, 1, 1).unwrap();
        assert!(!kept.is_empty());
        assert!(kept.iter().all(|x| x.len() == 1));
        assert!(is_representative(&m, &family, &kept, 1));
    }

    #[test]
    fn representative_over_symbolic_truncation() {
        // Exercise the wedge over rational-function entries: GF(2) identity
        // truncated to rank 2 is symbolic.
        let m = LinearMatroid::new(
            vec![0, 1, 2, 3],
            ExactMatrix::identity(4, Domain::Gfp(2)),
        )
        .unwrap();
        let t = crate::matroid::truncate(&m, 2, crate::matroid::TruncationMode::Auto).unwrap();
        let family: Vec<GroundSubset> = vec![vec![0], vec![1], vec![2], vec![3]];
        let kept = representative_family(&t, &family, 1, 1).unwrap();
        assert!(kept.len() <= 2);
        assert!(is_representative(&t, &family, &kept, 1));
    }

    #[test]
    fn family_canonicalised_before_processing() {
        let m = u24();
        // Duplicates and shuffled order collapse to the same result.
        let fam1: Vec<GroundSubset> = vec![vec![3], vec![0], vec![3], vec![1], vec![2]];
        let fam2: Vec<GroundSubset> = vec![vec![0], vec![1], vec![2], vec![3]];
        let k1 = representative_family(&m, &fam1, 1, 1).unwrap();
        let k2 = representative_family(&m, &fam2, 1, 1).unwrap();
        assert_eq!(k1, k2);
    }
}
