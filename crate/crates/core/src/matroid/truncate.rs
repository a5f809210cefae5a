//! Certified rank truncation of linear matroids.
//!
//! `truncate(M, k)` returns a matroid `Mt` on the same ground set with
//! `rank_Mt(S) = min(rank_M(S), k)` for every subset S, represented by a
//! matrix with `min(k, rank(M))` rows.
//!
//! Construction: let B be the canonical row basis of M's matrix (r rows), and
//! view column e as the polynomial v_e(y) = Σ_l B[l][e] · y^l of degree < r.
//! Pick γ in the base field of multiplicative order ≥ r, and build the k × n
//! matrix Mt[i][e] = v_e(γ^i · t) over the rational-function field in t; for
//! evaluation, substitute a concrete point t = α. A set S of at most k
//! columns that is independent in M stays independent here for all but
//! finitely many α (the folding by γ-powers keeps the k evaluation nodes
//! distinct as polynomials in t), and dependence is always preserved because
//! every row of Mt is a linear combination of rows of B.
//!
//! Correctness never rests on the algebra alone: every produced matrix is
//! certified by exhaustively checking independence preservation over all
//! independent sets of size ≤ k, which suffices for the full postcondition
//! (take a basis of S, restrict or extend to size ≤ k). Failing candidates
//! are discarded; if the base field has no γ of order ≥ r (tiny fields), a
//! fallback with exponent weights l · r^i is used, whose Cauchy–Binet leading
//! terms cannot collide because digit sums in base r are injective.

use super::LinearMatroid;
use crate::error::Error;
use crate::exact::scalar::mulp;
use crate::exact::{Domain, ExactMatrix, Scalar};
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// How to realise the truncation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationMode {
    /// Evaluation over the base field when possible, otherwise symbolic.
    Auto,
    /// Require a base-field evaluation point; error if none certifies.
    Evaluate,
    /// Keep rational-function entries.
    Symbolic,
    /// Seeded random coefficient matrix, certified, with bounded retries.
    Randomized { seed: u64 },
}

/// Smallest γ ≥ 2 in the base field with multiplicative order ≥ `r`, if one
/// exists. Order ≥ r is equivalent to γ^d ≠ 1 for d = 1..r, so only r − 1
/// powers are checked per candidate.
fn find_gamma(domain: Domain, r: usize) -> Option<Scalar> {
    match domain {
        Domain::Rat => Some(Scalar::rat_int(2)),
        Domain::Gfp(p) => {
            if (p - 1) < r as u64 {
                return None; // group order bounds element order
            }
            'cand: for g in 2..p {
                let mut x = g % p;
                for _ in 1..r {
                    if x == 1 {
                        continue 'cand;
                    }
                    x = mulp(x, g, p);
                }
                return Some(Scalar::gfp(g as i64, p));
            }
            None
        }
        _ => unreachable!("truncation works over base domains"),
    }
}

/// The symbolic k × r coefficient matrix V[i][l] = (γ^i · t)^l over the
/// lifted domain.
fn folded_coeffs(domain: Domain, gamma: &Scalar, k: usize, r: usize) -> ExactMatrix {
    let lifted = domain.lifted();
    let t = Scalar::var_t(domain);
    let mut v = ExactMatrix::zero(k, r, lifted);
    let mut gpow = Scalar::one(domain); // γ^i
    for i in 0..k {
        let node = gpow.lift().mul(&t); // γ^i · t
        let mut cell = Scalar::one(lifted);
        for l in 0..r {
            v.set(i, l, cell.clone());
            cell = cell.mul(&node);
        }
        gpow = gpow.mul(gamma);
    }
    v
}

/// Fallback coefficient matrix for fields with no usable γ: V[i][l] = t^(l·r^i).
/// Degrees grow as r^k, so this path is gated to small exponents — which is
/// exactly where it is needed (GF(2), GF(3)).
fn weighted_coeffs(domain: Domain, k: usize, r: usize) -> Result<ExactMatrix> {
    let lifted = domain.lifted();
    let t = Scalar::var_t(domain);
    // max exponent (r-1) * r^(k-1)
    let mut max_exp: u64 = (r as u64).saturating_sub(1);
    for _ in 1..k {
        max_exp = max_exp.saturating_mul(r as u64);
    }
    if max_exp > 1_000_000 {
        return Err(Error::TruncationDefect(format!(
            "fallback truncation degree {max_exp} too large"
        )));
    }
    let mut v = ExactMatrix::zero(k, r, lifted);
    let mut weight: u64 = 1; // r^i
    for i in 0..k {
        for l in 0..r {
            // t^(l·weight)
            let mut cell = Scalar::one(lifted);
            let e = l as u64 * weight;
            let mut b = t.clone();
            let mut rem = e;
            while rem > 0 {
                if rem & 1 == 1 {
                    cell = cell.mul(&b);
                }
                b = b.mul(&b);
                rem >>= 1;
            }
            v.set(i, l, cell);
        }
        weight = weight.saturating_mul(r as u64);
    }
    Ok(v)
}

/// Exhaustive certificate: every independent set of size ≤ k in `orig` is
/// independent under `cand` (columns aligned with `orig.ground()`).
fn preserves_independence(orig: &LinearMatroid, cand: &ExactMatrix, k: usize) -> bool {
    let trunc =
        LinearMatroid::new(orig.ground().to_vec(), cand.clone()).expect("aligned candidate");
    orig.for_each_independent_upto(k, &mut |s| trunc.is_independent(s))
}

/// Count independent sets of size ≤ k (for the evaluation-candidate budget).
fn count_independent(orig: &LinearMatroid, k: usize) -> u64 {
    let mut n = 0u64;
    orig.for_each_independent_upto(k, &mut |_| {
        n += 1;
        true
    });
    n
}

/// Rank-`k` truncation. See module docs; every returned matroid is certified
/// against the original by exhaustive independence checks.
pub fn truncate(m: &LinearMatroid, k: usize, mode: TruncationMode) -> Result<LinearMatroid> {
    let domain = m.domain();
    if domain.is_lifted() {
        return Err(Error::Unsupported(
            "truncation of an already-lifted matroid".into(),
        ));
    }
    let r = m.full_rank();
    let n = m.ground().len();
    if k >= r {
        // Truncation at or above the rank changes nothing; reshape to the
        // canonical r-row representation.
        let basis = m.matrix().row_basis();
        return LinearMatroid::new(m.ground().to_vec(), basis);
    }
    if k == 0 {
        let zero = ExactMatrix::zero(0, n, domain);
        return LinearMatroid::new(m.ground().to_vec(), zero);
    }
    let b = m.matrix().row_basis(); // r × n

    if let TruncationMode::Randomized { seed } = mode {
        return randomized_truncate(m, &b, k, r, seed);
    }

    let gamma = find_gamma(domain, r);
    // Symbolic candidates in preference order: the γ-folded construction
    // (low degrees) when γ exists, then the weighted-exponent fallback.
    let mut symbolic_candidates: Vec<ExactMatrix> = Vec::new();
    if let Some(g) = &gamma {
        symbolic_candidates.push(folded_coeffs(domain, g, k, r).mat_mul(&b.lift()));
    }
    match weighted_coeffs(domain, k, r) {
        Ok(w) => symbolic_candidates.push(w.mat_mul(&b.lift())),
        Err(e) => {
            if symbolic_candidates.is_empty() {
                return Err(e);
            }
        }
    }
    let symbolic = symbolic_candidates[0].clone();

    let try_evaluate = |budget_note: &mut String| -> Option<LinearMatroid> {
        gamma.as_ref()?;
        // Any candidate failure consumes at least one root of a nonzero
        // defect polynomial of degree < k·r per independent set, so this
        // budget cannot be exhausted unless the construction is defective.
        let budget = count_independent(m, k) * (k as u64) * (r as u64) + 1;
        let max_alpha: i64 = match domain {
            Domain::Gfp(p) => (p as i64 - 1).min(budget as i64),
            _ => budget as i64,
        };
        for alpha in 1..=max_alpha {
            let cand = symbolic.eval_at(alpha).expect("polynomial entries have no poles");
            if preserves_independence(m, &cand, k) {
                return Some(
                    LinearMatroid::new(m.ground().to_vec(), cand)
                        .expect("aligned candidate"),
                );
            }
        }
        *budget_note = format!("exhausted {max_alpha} evaluation points");
        None
    };

    let finish_symbolic = || -> Result<LinearMatroid> {
        for cand in &symbolic_candidates {
            if preserves_independence(m, cand, k) {
                return LinearMatroid::new(m.ground().to_vec(), cand.clone());
            }
        }
        Err(Error::TruncationDefect(
            "symbolic truncation failed certification".into(),
        ))
    };

    match mode {
        TruncationMode::Evaluate => {
            let mut note = String::new();
            match try_evaluate(&mut note) {
                Some(t) => Ok(t),
                None => Err(Error::TruncationDefect(if note.is_empty() {
                    "no evaluation point available in this field".into()
                } else {
                    note
                })),
            }
        }
        TruncationMode::Symbolic => finish_symbolic(),
        TruncationMode::Auto => {
            let mut note = String::new();
            match try_evaluate(&mut note) {
                Some(t) => Ok(t),
                None => finish_symbolic(),
            }
        }
        TruncationMode::Randomized { .. } => unreachable!(),
    }
}

fn randomized_truncate(
    m: &LinearMatroid,
    b: &ExactMatrix,
    k: usize,
    r: usize,
    seed: u64,
) -> Result<LinearMatroid> {
    let domain = m.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let mut t = ExactMatrix::zero(k, r, domain);
        for i in 0..k {
            for l in 0..r {
                let v = match domain {
                    Domain::Gfp(p) => Scalar::gfp(rng.gen_range(0..p) as i64, p),
                    Domain::Rat => Scalar::rat_int(rng.gen_range(0..1_000_003i64)),
                    _ => unreachable!(),
                };
                t.set(i, l, v);
            }
        }
        let cand = t.mat_mul(b);
        if preserves_independence(m, &cand, k) {
            return LinearMatroid::new(m.ground().to_vec(), cand);
        }
    }
    Err(Error::TruncationDefect(
        "randomized truncation failed certification after 20 attempts".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::mat_rank;
    use std::collections::BTreeSet;

    fn exhaustive_check(orig: &LinearMatroid, trunc: &LinearMatroid, k: usize) {
        assert_eq!(orig.ground(), trunc.ground());
        assert_eq!(trunc.matrix().rows(), k.min(orig.full_rank()));
        let n = orig.ground().len();
        assert!(n <= 12);
        for mask in 0u32..(1 << n) {
            let s: Vec<u32> = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| orig.ground()[i])
                .collect();
            assert_eq!(
                trunc.rank(&s),
                orig.rank(&s).min(k),
                "rank mismatch on {s:?}"
            );
        }
    }

    #[test]
    fn identity_truncations() {
        let m = LinearMatroid::new(
            vec![0, 1, 2],
            ExactMatrix::identity(3, Domain::Gfp(101)),
        )
        .unwrap();
        for k in 0..=3 {
            let t = truncate(&m, k, TruncationMode::Auto).unwrap();
            exhaustive_check(&m, &t, k);
        }
    }

    #[test]
    fn truncate_identity_k2_has_uniform_ranks() {
        let m = LinearMatroid::new(
            vec![1, 2, 3],
            ExactMatrix::identity(3, Domain::Rat),
        )
        .unwrap();
        let t = truncate(&m, 2, TruncationMode::Auto).unwrap();
        // Every pair independent, every triple rank 2.
        assert!(t.is_independent(&[1, 2]));
        assert!(t.is_independent(&[1, 3]));
        assert!(t.is_independent(&[2, 3]));
        assert_eq!(t.rank(&[1, 2, 3]), 2);
    }

    #[test]
    fn random_4x8_gfp101_k3() {
        // Deterministic "random-looking" rows over GF(101).
        let mut rows = Vec::new();
        for r in 0..4u64 {
            let row: Vec<i64> =
                (0..8).map(|c| ((r * 37 + c * 53 + 11) % 101) as i64).collect();
            rows.push(row);
        }
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let mat = ExactMatrix::from_i64_rows(Domain::Gfp(101), &refs);
        let m = LinearMatroid::new((0..8).collect(), mat).unwrap();
        let t = truncate(&m, 3, TruncationMode::Auto).unwrap();
        exhaustive_check(&m, &t, 3);
    }

    #[test]
    fn gf2_uses_symbolic_fallback() {
        let m = LinearMatroid::new(
            vec![0, 1, 2, 3],
            ExactMatrix::identity(4, Domain::Gfp(2)),
        )
        .unwrap();
        let t = truncate(&m, 2, TruncationMode::Auto).unwrap();
        assert_eq!(t.domain(), Domain::PolyGfp(2));
        exhaustive_check(&m, &t, 2);
        // Evaluate mode cannot work here: GF(2)* has order 1.
        assert!(truncate(&m, 2, TruncationMode::Evaluate).is_err());
    }

    #[test]
    fn gf3_small_rank_evaluates() {
        // r = 2 ≤ |GF(3)*|, so γ = 2 works and evaluation should succeed.
        let m = LinearMatroid::new(
            vec![0, 1, 2],
            ExactMatrix::from_i64_rows(Domain::Gfp(3), &[&[1, 0, 1], &[0, 1, 1]]),
        )
        .unwrap();
        let t = truncate(&m, 1, TruncationMode::Evaluate).unwrap();
        assert_eq!(t.domain(), Domain::Gfp(3));
        exhaustive_check(&m, &t, 1);
    }

    #[test]
    fn rational_truncation_evaluates() {
        let m = LinearMatroid::new(
            vec![0, 1, 2, 3, 4],
            ExactMatrix::from_i64_rows(
                Domain::Rat,
                &[&[1, 1, 0, 2, 3], &[0, 1, 1, 1, 0], &[1, 0, 1, 0, 1], &[0, 0, 0, 1, 1]],
            ),
        )
        .unwrap();
        let t = truncate(&m, 2, TruncationMode::Auto).unwrap();
        assert_eq!(t.domain(), Domain::Rat, "rationals always evaluate");
        exhaustive_check(&m, &t, 2);
    }

    #[test]
    fn symbolic_mode_matches_auto_ranks() {
        let m = LinearMatroid::new(
            vec![0, 1, 2, 3],
            ExactMatrix::from_i64_rows(Domain::Gfp(5), &[&[1, 1, 0, 1], &[0, 1, 1, 1], &[1, 0, 0, 1]]),
        )
        .unwrap();
        let sym = truncate(&m, 2, TruncationMode::Symbolic).unwrap();
        assert!(sym.domain().is_lifted());
        exhaustive_check(&m, &sym, 2);
    }

    #[test]
    fn randomized_mode_certifies() {
        let m = LinearMatroid::new(
            vec![0, 1, 2],
            ExactMatrix::identity(3, Domain::Gfp(101)),
        )
        .unwrap();
        let t = truncate(&m, 2, TruncationMode::Randomized { seed: 7 }).unwrap();
        exhaustive_check(&m, &t, 2);
        let t2 = truncate(&m, 2, TruncationMode::Randomized { seed: 7 }).unwrap();
        assert_eq!(t.matrix(), t2.matrix(), "same seed, same matrix");
    }

    #[test]
    fn truncation_with_loops_and_duplicates() {
        // Ground: loop, e1, e1 again, e2 over GF(2) — worst-case tiny field.
        let mat = ExactMatrix::from_i64_rows(
            Domain::Gfp(2),
            &[&[0, 1, 1, 0], &[0, 0, 0, 1]],
        );
        let m = LinearMatroid::new(vec![0, 1, 2, 3], mat).unwrap();
        let t = truncate(&m, 1, TruncationMode::Auto).unwrap();
        exhaustive_check(&m, &t, 1);
    }

    #[test]
    fn zero_truncation_kills_everything() {
        let m = LinearMatroid::new(
            vec![0, 1],
            ExactMatrix::identity(2, Domain::Rat),
        )
        .unwrap();
        let t = truncate(&m, 0, TruncationMode::Auto).unwrap();
        assert_eq!(t.full_rank(), 0);
        assert_eq!(t.rank(&[0, 1]), 0);
    }

    #[test]
    fn gamma_search() {
        // GF(5): order of 2 is 4 ≥ 3.
        assert_eq!(find_gamma(Domain::Gfp(5), 3), Some(Scalar::gfp(2, 5)));
        // GF(7): 2 has order 3; for r = 4 we need γ = 3 (order 6).
        assert_eq!(find_gamma(Domain::Gfp(7), 4), Some(Scalar::gfp(3, 7)));
        // GF(3): no element of order ≥ 3.
        assert_eq!(find_gamma(Domain::Gfp(3), 3), None);
        assert_eq!(find_gamma(Domain::Rat, 100), Some(Scalar::rat_int(2)));
    }

    #[test]
    fn certification_rejects_bad_matrix() {
        let m = LinearMatroid::new(
            vec![0, 1],
            ExactMatrix::identity(2, Domain::Rat),
        )
        .unwrap();
        // k = 1: a zero column kills an independent singleton.
        let bad1 = ExactMatrix::from_i64_rows(Domain::Rat, &[&[1, 0]]);
        assert!(!preserves_independence(&m, &bad1, 1));
        // k = 2: equal rows collapse the independent pair to rank 1.
        let bad2 = ExactMatrix::from_i64_rows(Domain::Rat, &[&[1, 1], &[1, 1]]);
        assert!(!preserves_independence(&m, &bad2, 2));
        // Sanity: collapsing both columns to the same nonzero vector is a
        // perfectly good rank-1 truncation and must be accepted.
        let ok1 = ExactMatrix::from_i64_rows(Domain::Rat, &[&[1, 1]]);
        assert!(preserves_independence(&m, &ok1, 1));
        let cols: BTreeSet<usize> = (0..2).collect();
        assert_eq!(mat_rank(&ok1, &cols), 1);
    }
}
