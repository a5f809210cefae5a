//! Scalar values over the supported exact domains.
//!
//! Base domains are GF(p) for a u64 prime p and the rationals. Each base
//! domain has a lifted domain of univariate rational functions in one
//! indeterminate `t`, used internally by symbolic matroid truncation.
//! Lifted values never appear in instance files.

use crate::error::Error;
use crate::exact::poly::{self, GfpField, RatField};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Field selector as it appears in instance files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FieldTag {
    /// GF(p); `p` must be prime (validated at parse time).
    Prime(u64),
    /// The rational numbers.
    Rational,
}

impl FieldTag {
    pub fn domain(self) -> Domain {
        match self {
            FieldTag::Prime(p) => Domain::Gfp(p),
            FieldTag::Rational => Domain::Rat,
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Prime(p) => write!(f, "gfp {p}"),
            FieldTag::Rational => write!(f, "rational"),
        }
    }
}

/// Domain of a scalar or matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Domain {
    Gfp(u64),
    Rat,
    /// Rational functions in `t` over GF(p).
    PolyGfp(u64),
    /// Rational functions in `t` over the rationals.
    PolyRat,
}

impl Domain {
    /// The base field underlying this domain.
    pub fn base(self) -> Domain {
        match self {
            Domain::Gfp(p) | Domain::PolyGfp(p) => Domain::Gfp(p),
            Domain::Rat | Domain::PolyRat => Domain::Rat,
        }
    }

    /// The rational-function domain over this domain's base field.
    pub fn lifted(self) -> Domain {
        match self.base() {
            Domain::Gfp(p) => Domain::PolyGfp(p),
            _ => Domain::PolyRat,
        }
    }

    pub fn is_lifted(self) -> bool {
        matches!(self, Domain::PolyGfp(_) | Domain::PolyRat)
    }
}

/// Deterministic primality test by trial division; instance fields are small.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_above(n: u64) -> u64 {
    let mut c = n + 1;
    loop {
        if is_prime_u64(c) {
            return c;
        }
        c += 1;
    }
}

// ---- GF(p) helpers on u64 residues (u128 intermediates) ----

pub fn addp(a: u64, b: u64, p: u64) -> u64 {
    let s = (a as u128 + b as u128) % p as u128;
    s as u64
}

pub fn subp(a: u64, b: u64, p: u64) -> u64 {
    let s = (a as u128 + p as u128 - b as u128 % p as u128) % p as u128;
    s as u64
}

pub fn mulp(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powp(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulp(acc, base, p);
        }
        base = mulp(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` mod prime `p` via the extended Euclidean algorithm.
/// Panics if `a ≡ 0`; callers check first.
pub fn invp(a: u64, p: u64) -> u64 {
    let a = a % p;
    assert!(a != 0, "inverse of zero in GF({p})");
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "modulus not prime or value not invertible");
    (t0.rem_euclid(p as i128)) as u64
}

/// Multiplicative order of `g` in GF(p)*, by direct iteration (small fields
/// only reach this path; callers cap the search).
pub fn mult_order(g: u64, p: u64) -> u64 {
    assert!(g % p != 0);
    let mut x = g % p;
    let mut ord = 1;
    while x != 1 {
        x = mulp(x, g, p);
        ord += 1;
    }
    ord
}

/// An exact scalar. Canonical forms are maintained by every constructor and
/// operation, so derived equality is semantic equality:
/// * `Gfp`: residue in `0..p`;
/// * `Rat`: lowest terms, positive denominator (via `BigRational`);
/// * `PolyGfp`/`PolyRat`: numerator/denominator trimmed (no leading zero
///   coefficient), coprime, denominator monic; zero is `[] / [1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Gfp { v: u64, p: u64 },
    Rat(BigRational),
    PolyGfp { num: Vec<u64>, den: Vec<u64>, p: u64 },
    PolyRat { num: Vec<BigRational>, den: Vec<BigRational> },
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Gfp { p, .. } => Domain::Gfp(*p),
            Scalar::Rat(_) => Domain::Rat,
            Scalar::PolyGfp { p, .. } => Domain::PolyGfp(*p),
            Scalar::PolyRat { .. } => Domain::PolyRat,
        }
    }

    pub fn zero(domain: Domain) -> Scalar {
        match domain {
            Domain::Gfp(p) => Scalar::Gfp { v: 0, p },
            Domain::Rat => Scalar::Rat(BigRational::zero()),
            Domain::PolyGfp(p) => Scalar::PolyGfp { num: vec![], den: vec![1 % p], p },
            Domain::PolyRat => Scalar::PolyRat { num: vec![], den: vec![BigRational::one()] },
        }
    }

    pub fn one(domain: Domain) -> Scalar {
        match domain {
            Domain::Gfp(p) => Scalar::Gfp { v: 1 % p, p },
            Domain::Rat => Scalar::Rat(BigRational::one()),
            Domain::PolyGfp(p) => Scalar::PolyGfp { num: vec![1 % p], den: vec![1 % p], p },
            Domain::PolyRat => {
                Scalar::PolyRat { num: vec![BigRational::one()], den: vec![BigRational::one()] }
            }
        }
    }

    pub fn gfp(v: i64, p: u64) -> Scalar {
        let r = (v % p as i64 + p as i64) as u64 % p;
        Scalar::Gfp { v: r, p }
    }

    pub fn rat_int(n: i64) -> Scalar {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rat(n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Integer-valued scalar in the given base domain.
    pub fn from_i64(v: i64, domain: Domain) -> Scalar {
        match domain {
            Domain::Gfp(p) => Scalar::gfp(v, p),
            Domain::Rat => Scalar::rat_int(v),
            Domain::PolyGfp(_) | Domain::PolyRat => {
                Scalar::from_i64(v, domain.base()).lift()
            }
        }
    }

    /// The monomial `t` in the lifted domain over `base`.
    pub fn var_t(base: Domain) -> Scalar {
        match base.base() {
            Domain::Gfp(p) => Scalar::PolyGfp { num: vec![0, 1 % p], den: vec![1 % p], p },
            _ => Scalar::PolyRat {
                num: vec![BigRational::zero(), BigRational::one()],
                den: vec![BigRational::one()],
            },
        }
    }

    /// Embed a base-field scalar as a constant rational function. Lifted
    /// values pass through unchanged.
    pub fn lift(&self) -> Scalar {
        match self {
            Scalar::Gfp { v, p } => {
                let num = if *v == 0 { vec![] } else { vec![*v] };
                Scalar::PolyGfp { num, den: vec![1 % p], p: *p }
            }
            Scalar::Rat(r) => {
                let num = if r.is_zero() { vec![] } else { vec![r.clone()] };
                Scalar::PolyRat { num, den: vec![BigRational::one()] }
            }
            other => other.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Gfp { v, .. } => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
            Scalar::PolyGfp { num, .. } => num.is_empty(),
            Scalar::PolyRat { num, .. } => num.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.domain())
    }

    fn check_domain(&self, other: &Scalar) {
        assert!(
            self.domain() == other.domain(),
            "mixed scalar domains: {:?} vs {:?}",
            self.domain(),
            other.domain()
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_domain(other);
        match (self, other) {
            (Scalar::Gfp { v: a, p }, Scalar::Gfp { v: b, .. }) => {
                Scalar::Gfp { v: addp(*a, *b, *p), p: *p }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::PolyGfp { num: n1, den: d1, p }, Scalar::PolyGfp { num: n2, den: d2, .. }) => {
                let f = GfpField { p: *p };
                let (num, den) = poly::frac_add(&f, n1, d1, n2, d2);
                Scalar::PolyGfp { num, den, p: *p }
            }
            (Scalar::PolyRat { num: n1, den: d1 }, Scalar::PolyRat { num: n2, den: d2 }) => {
                let f = RatField;
                let (num, den) = poly::frac_add(&f, n1, d1, n2, d2);
                Scalar::PolyRat { num, den }
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Gfp { v, p } => Scalar::Gfp { v: subp(0, *v, *p), p: *p },
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::PolyGfp { num, den, p } => {
                let f = GfpField { p: *p };
                Scalar::PolyGfp { num: poly::pneg(&f, num), den: den.clone(), p: *p }
            }
            Scalar::PolyRat { num, den } => {
                let f = RatField;
                Scalar::PolyRat { num: poly::pneg(&f, num), den: den.clone() }
            }
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_domain(other);
        match (self, other) {
            (Scalar::Gfp { v: a, p }, Scalar::Gfp { v: b, .. }) => {
                Scalar::Gfp { v: mulp(*a, *b, *p), p: *p }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::PolyGfp { num: n1, den: d1, p }, Scalar::PolyGfp { num: n2, den: d2, .. }) => {
                let f = GfpField { p: *p };
                let (num, den) = poly::frac_mul(&f, n1, d1, n2, d2);
                Scalar::PolyGfp { num, den, p: *p }
            }
            (Scalar::PolyRat { num: n1, den: d1 }, Scalar::PolyRat { num: n2, den: d2 }) => {
                let f = RatField;
                let (num, den) = poly::frac_mul(&f, n1, d1, n2, d2);
                Scalar::PolyRat { num, den }
            }
            _ => unreachable!(),
        }
    }

    /// Division; `Err` on division by zero.
    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.check_domain(other);
        if other.is_zero() {
            return Err(Error::Dimension("division by zero scalar".into()));
        }
        Ok(match (self, other) {
            (Scalar::Gfp { v: a, p }, Scalar::Gfp { v: b, .. }) => {
                Scalar::Gfp { v: mulp(*a, invp(*b, *p), *p), p: *p }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a / b),
            (Scalar::PolyGfp { num: n1, den: d1, p }, Scalar::PolyGfp { num: n2, den: d2, .. }) => {
                let f = GfpField { p: *p };
                let (num, den) = poly::frac_mul(&f, n1, d1, d2, n2);
                Scalar::PolyGfp { num, den, p: *p }
            }
            (Scalar::PolyRat { num: n1, den: d1 }, Scalar::PolyRat { num: n2, den: d2 }) => {
                let f = RatField;
                let (num, den) = poly::frac_mul(&f, n1, d1, d2, n2);
                Scalar::PolyRat { num, den }
            }
            _ => unreachable!(),
        })
    }

    /// Division where the caller has already excluded a zero divisor.
    pub fn div(&self, other: &Scalar) -> Scalar {
        self.try_div(other).expect("nonzero divisor")
    }

    /// Evaluate a lifted scalar at `t = alpha` (an integer point), returning a
    /// base-domain scalar. `Err` if the denominator vanishes at the point.
    pub fn eval_at(&self, alpha: i64) -> Result<Scalar, Error> {
        match self {
            Scalar::PolyGfp { num, den, p } => {
                let f = GfpField { p: *p };
                let x = Scalar::gfp(alpha, *p);
                let xv = match x {
                    Scalar::Gfp { v, .. } => v,
                    _ => unreachable!(),
                };
                let dv = poly::peval(&f, den, &xv);
                if dv == 0 {
                    return Err(Error::TruncationDefect(format!(
                        "denominator vanishes at t={alpha}"
                    )));
                }
                let nv = poly::peval(&f, num, &xv);
                Ok(Scalar::Gfp { v: mulp(nv, invp(dv, *p), *p), p: *p })
            }
            Scalar::PolyRat { num, den } => {
                let f = RatField;
                let x = BigRational::from_integer(BigInt::from(alpha));
                let dv = poly::peval(&f, den, &x);
                if dv.is_zero() {
                    return Err(Error::TruncationDefect(format!(
                        "denominator vanishes at t={alpha}"
                    )));
                }
                let nv = poly::peval(&f, num, &x);
                Ok(Scalar::Rat(nv / dv))
            }
            other => Ok(other.clone()),
        }
    }

    /// Render in instance-file syntax. Lifted domains are internal-only and
    /// refuse to serialize.
    pub fn render(&self) -> Result<String, Error> {
        match self {
            Scalar::Gfp { v, .. } => Ok(v.to_string()),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    Ok(r.numer().to_string())
                } else {
                    Ok(format!("{}/{}", r.numer(), r.denom()))
                }
            }
            _ => Err(Error::Unsupported(
                "rational-function scalars have no file syntax".into(),
            )),
        }
    }

    /// Parse instance-file syntax for the given base field.
    ///
    /// GF(p): an optionally signed decimal integer, reduced mod p.
    /// Rationals: `a` or `a/b` with b > 0 after sign normalization; the value
    /// is reduced, so non-canonical inputs like `3/6` are accepted.
    pub fn parse(text: &str, tag: FieldTag) -> Result<Scalar, Error> {
        let bad = |msg: String| Error::Parse { line: 0, col: 0, msg };
        match tag {
            FieldTag::Prime(p) => {
                let v: i128 = text
                    .parse()
                    .map_err(|_| bad(format!("expected integer residue, got `{text}`")))?;
                let r = v.rem_euclid(p as i128) as u64;
                Ok(Scalar::Gfp { v: r, p })
            }
            FieldTag::Rational => {
                if let Some((ns, ds)) = text.split_once('/') {
                    let n: BigInt = ns
                        .parse()
                        .map_err(|_| bad(format!("expected integer numerator, got `{ns}`")))?;
                    let d: BigInt = ds
                        .parse()
                        .map_err(|_| bad(format!("expected integer denominator, got `{ds}`")))?;
                    if d.is_zero() {
                        return Err(bad("zero denominator".into()));
                    }
                    Ok(Scalar::Rat(BigRational::new(n, d)))
                } else {
                    let n: BigInt = text
                        .parse()
                        .map_err(|_| bad(format!("expected integer or a/b, got `{text}`")))?;
                    Ok(Scalar::Rat(BigRational::from_integer(n)))
                }
            }
        }
    }
}
