//! Dense univariate polynomial arithmetic, generic over the coefficient
//! field. Polynomials are little-endian coefficient vectors with no trailing
//! zero (so the zero polynomial is the empty vector).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::scalar::{addp, invp, mulp, subp};

/// Minimal field interface the polynomial engine needs.
pub trait FieldOps {
    type El: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Self::El;
}

/// GF(p) with u64 residues.
pub struct GfpField {
    pub p: u64,
}

impl FieldOps for GfpField {
    type El = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        addp(*a, *b, self.p)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        subp(*a, *b, self.p)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulp(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> u64 {
        invp(*a, self.p)
    }
}

/// The rationals with arbitrary precision.
pub struct RatField;

impl FieldOps for RatField {
    type El = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
}

pub fn ptrim<F: FieldOps>(f: &F, mut v: Vec<F::El>) -> Vec<F::El> {
    while v.last().map_or(false, |c| f.is_zero(c)) {
        v.pop();
    }
    v
}

pub fn pneg<F: FieldOps>(f: &F, a: &[F::El]) -> Vec<F::El> {
    a.iter().map(|c| f.sub(&f.zero(), c)).collect()
}

pub fn padd<F: FieldOps>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
        out.push(f.add(&x, &y));
    }
    ptrim(f, out)
}

pub fn psub<F: FieldOps>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    padd(f, a, &pneg(f, b))
}

pub fn pmul<F: FieldOps>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    ptrim(f, out)
}

/// Multiply by a field element.
pub fn pscale<F: FieldOps>(f: &F, a: &[F::El], c: &F::El) -> Vec<F::El> {
    if f.is_zero(c) {
        return vec![];
    }
    ptrim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

/// Euclidean division: returns (quotient, remainder). `b` must be nonzero.
pub fn pdivrem<F: FieldOps>(f: &F, a: &[F::El], b: &[F::El]) -> (Vec<F::El>, Vec<F::El>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem: Vec<F::El> = a.to_vec();
    if rem.len() < b.len() {
        return (vec![], ptrim(f, rem));
    }
    let lead_inv = f.inv(b.last().unwrap());
    let qlen = rem.len() - b.len() + 1;
    let mut quot = vec![f.zero(); qlen];
    for k in (0..qlen).rev() {
        let top = rem[k + b.len() - 1].clone();
        if f.is_zero(&top) {
            continue;
        }
        let c = f.mul(&top, &lead_inv);
        quot[k] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            rem[k + i] = f.sub(&rem[k + i], &f.mul(&c, bc));
        }
    }
    (ptrim(f, quot), ptrim(f, rem))
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn pgcd<F: FieldOps>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    let mut x = ptrim(f, a.to_vec());
    let mut y = ptrim(f, b.to_vec());
    while !y.is_empty() {
        let (_, r) = pdivrem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, x)
}

pub fn make_monic<F: FieldOps>(f: &F, a: Vec<F::El>) -> Vec<F::El> {
    match a.last() {
        None => a,
        Some(lead) => {
            let inv = f.inv(lead);
            pscale(f, &a, &inv)
        }
    }
}

/// Reduce a fraction num/den to canonical form: coprime parts, monic
/// denominator, and zero represented as [] / [1].
pub fn normalize_fraction<F: FieldOps>(
    f: &F,
    num: Vec<F::El>,
    den: Vec<F::El>,
) -> (Vec<F::El>, Vec<F::El>) {
    let num = ptrim(f, num);
    let den = ptrim(f, den);
    assert!(!den.is_empty(), "zero denominator in rational function");
    if num.is_empty() {
        return (vec![], vec![f.one()]);
    }
    let g = pgcd(f, &num, &den);
    let (num, den) = if g.len() > 1 {
        let (qn, rn) = pdivrem(f, &num, &g);
        let (qd, rd) = pdivrem(f, &den, &g);
        debug_assert!(rn.is_empty() && rd.is_empty());
        (qn, qd)
    } else {
        (num, den)
    };
    let lead_inv = f.inv(den.last().unwrap());
    (pscale(f, &num, &lead_inv), pscale(f, &den, &lead_inv))
}

pub fn frac_add<F: FieldOps>(
    f: &F,
    n1: &[F::El],
    d1: &[F::El],
    n2: &[F::El],
    d2: &[F::El],
) -> (Vec<F::El>, Vec<F::El>) {
    let num = padd(f, &pmul(f, n1, d2), &pmul(f, n2, d1));
    let den = pmul(f, d1, d2);
    normalize_fraction(f, num, den)
}

pub fn frac_mul<F: FieldOps>(
    f: &F,
    n1: &[F::El],
    d1: &[F::El],
    n2: &[F::El],
    d2: &[F::El],
) -> (Vec<F::El>, Vec<F::El>) {
    let num = pmul(f, n1, n2);
    let den = pmul(f, d1, d2);
    assert!(!den.is_empty(), "division by zero rational function");
    normalize_fraction(f, num, den)
}

/// Horner evaluation.
pub fn peval<F: FieldOps>(f: &F, a: &[F::El], x: &F::El) -> F::El {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

/// Convenience: build a rational coefficient vector from integers.
pub fn rat_poly(coeffs: &[i64]) -> Vec<BigRational> {
    let f = RatField;
    ptrim(
        &f,
        coeffs
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_divrem_gfp() {
        let f = GfpField { p: 7 };
        // (t+1)(t+2) = t^2 + 3t + 2
        let a = vec![1, 1];
        let b = vec![2, 1];
        let prod = pmul(&f, &a, &b);
        assert_eq!(prod, vec![2, 3, 1]);
        let (q, r) = pdivrem(&f, &prod, &a);
        assert_eq!(q, b);
        assert!(r.is_empty());
        let (q2, r2) = pdivrem(&f, &prod, &vec![1, 0, 0, 1]);
        assert!(q2.is_empty());
        assert_eq!(r2, prod);
    }

    #[test]
    fn gcd_is_monic() {
        let f = GfpField { p: 5 };
        // gcd(2(t+1)(t+2), 3(t+1)) = t+1
        let a = pscale(&f, &pmul(&f, &[1, 1], &[2, 1]), &2);
        let b = pscale(&f, &[1u64, 1], &3);
        assert_eq!(pgcd(&f, &a, &b), vec![1, 1]);
        assert!(pgcd(&f, &[], &[]).is_empty());
    }

    #[test]
    fn fraction_normalisation() {
        let f = RatField;
        // (t^2 - 1) / (2t - 2) reduces to (t + 1)/2, stored with a monic
        // denominator as (t/2 + 1/2) / 1.
        let num = rat_poly(&[-1, 0, 1]);
        let den = rat_poly(&[-2, 2]);
        let (n, d) = normalize_fraction(&f, num, den);
        assert_eq!(d, rat_poly(&[1]));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(n, vec![half.clone(), half]);
    }

    #[test]
    fn fraction_normalisation_monic_den() {
        let f = GfpField { p: 7 };
        // t / (3t + 3) -> (5 t) / (t + 1)  since 3^{-1} = 5 mod 7
        let (n, d) = normalize_fraction(&f, vec![0, 1], vec![3, 3]);
        assert_eq!(d, vec![1, 1]);
        assert_eq!(n, vec![0, 5]);
    }

    #[test]
    fn eval_horner() {
        let f = GfpField { p: 11 };
        // 3 + 2t + t^3 at t=2: 3 + 4 + 8 = 15 = 4 mod 11
        assert_eq!(peval(&f, &[3, 2, 0, 1], &2), 4);
    }
}
