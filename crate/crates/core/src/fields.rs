//! Pure prime-degree fields `Q(m^(1/p))` parametrized by strongly carefree
//! tuples `(a_1, ..., a_{p-1})` with `m = prod a_i^i`.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{factor_u128, gcd, is_squarefree, mod_inverse, mod_pow, require_odd_prime};
use crate::radical::{RadicalBase, RadicalMonomial, RadicalSum};
use crate::{Error, Result};

/// Default trial-division bound for [`factor_radicand`].
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ramification {
    Wild,
    Tame,
}

impl fmt::Display for Ramification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Wild => "Wild",
            Self::Tame => "Tame",
        })
    }
}

/// A validated strongly carefree tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScTuple {
    p: u64,
    a: Vec<u64>,
}

/// Checks the strongly carefree conditions. Indices in errors are 1-based.
pub fn validate(p: u64, a: &[u64]) -> Result<ScTuple> {
    require_odd_prime(p)?;
    if a.len() as u64 != p - 1 {
        return Err(Error::BadLength { expected: (p - 1) as usize, got: a.len() });
    }
    if let Some(i) = a.iter().position(|&x| x == 0) {
        return Err(Error::NonPositiveEntry(i + 1));
    }
    if let Some(i) = a.iter().position(|&x| !is_squarefree(x)) {
        return Err(Error::NotSquarefree(i + 1));
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if gcd(a[i], a[j]) != 1 {
                return Err(Error::NotCoprime(i + 1, j + 1));
            }
        }
    }
    if a.iter().all(|&x| x == 1) {
        return Err(Error::DegenerateUnit);
    }
    Ok(ScTuple { p, a: a.to_vec() })
}

/// Splits a p-th-power-free radicand into its strongly carefree tuple.
pub fn factor_radicand(p: u64, m: u128) -> Result<ScTuple> {
    factor_radicand_with_bound(p, m, DEFAULT_FACTOR_BOUND)
}

pub fn factor_radicand_with_bound(p: u64, m: u128, bound: u64) -> Result<ScTuple> {
    require_odd_prime(p)?;
    if m < 2 {
        return Err(Error::RadicandTooSmall);
    }
    let mut a = vec![1u64; (p - 1) as usize];
    for (q, e) in factor_u128(m, bound)? {
        if e as u64 >= p {
            return Err(Error::NotPPowerFree);
        }
        let slot = &mut a[(e - 1) as usize];
        *slot = slot.checked_mul(u64::try_from(q).map_err(|_| Error::FactorizationTooLarge(bound))?)
            .ok_or(Error::FactorizationTooLarge(bound))?;
    }
    validate(p, &a)
}

impl ScTuple {
    /// Builds a tuple without checking; callers must guarantee validity.
    pub(crate) fn new_unchecked(p: u64, a: Vec<u64>) -> Self {
        Self { p, a }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn ell(&self) -> usize {
        ((self.p - 1) / 2) as usize
    }

    /// `m = prod a_i^i`.
    pub fn m(&self) -> BigUint {
        self.a.iter().enumerate().fold(BigUint::one(), |acc, (i, &x)| {
            acc * num_traits::pow(BigUint::from(x), i + 1)
        })
    }

    pub fn m_mod(&self, modulus: u64) -> u64 {
        self.a.iter().enumerate().fold(1 % modulus, |acc, (i, &x)| {
            ((acc as u128 * mod_pow(x, i as u64 + 1, modulus) as u128) % modulus as u128) as u64
        })
    }

    /// `prod a_i`, the height used by the census.
    pub fn product(&self) -> u128 {
        self.a.iter().map(|&x| x as u128).product()
    }

    pub fn ramification(&self) -> Ramification {
        let p2 = self.p * self.p;
        let m = self.m_mod(p2);
        if m % self.p != 0 && mod_pow(m, self.p - 1, p2) == 1 {
            Ramification::Tame
        } else {
            Ramification::Wild
        }
    }

    /// `|Delta_K| = p^p prod a_i^(p-1)` (wild) or `p^(p-2) prod a_i^(p-1)` (tame).
    pub fn abs_discriminant(&self) -> BigUint {
        let e = match self.ramification() {
            Ramification::Wild => self.p,
            Ramification::Tame => self.p - 2,
        };
        let rad = num_traits::pow(BigUint::from(self.product()), (self.p - 1) as usize);
        num_traits::pow(BigUint::from(self.p), e as usize) * rad
    }

    pub fn discriminant(&self) -> BigInt {
        let d = BigInt::from(self.abs_discriminant());
        if self.ell() % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// The tuple of `m^k` (reduced to p-th-power-free form), `k` coprime to `p`.
    pub fn act(&self, k: u64) -> ScTuple {
        let kinv = mod_inverse(k % self.p, self.p).expect("k must be a unit mod p");
        let a = (1..self.p)
            .map(|i| self.a[((i * kinv) % self.p - 1) as usize])
            .collect();
        ScTuple { p: self.p, a }
    }

    /// Distinct tuples in the C_{p-1}-orbit, sorted lexicographically.
    pub fn orbit(&self) -> Vec<ScTuple> {
        let mut out: Vec<ScTuple> = (1..self.p).map(|k| self.act(k)).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn canonical_tuple(&self) -> ScTuple {
        (1..self.p).map(|k| self.act(k)).min().expect("nonempty orbit")
    }

    /// Whether this tuple is the lexicographically least in its orbit.
    pub fn is_canonical(&self) -> bool {
        (2..self.p).all(|k| self.act_cmp(k) != std::cmp::Ordering::Less)
    }

    // Compares act(k) against self without allocating.
    fn act_cmp(&self, k: u64) -> std::cmp::Ordering {
        let kinv = mod_inverse(k, self.p).expect("k must be a unit mod p");
        for i in 1..self.p {
            let x = self.a[((i * kinv) % self.p - 1) as usize];
            match x.cmp(&self.a[(i - 1) as usize]) {
                std::cmp::Ordering::Equal => continue,
                o => return o,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl fmt::Display for ScTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.a.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A pure field together with its integral-basis data.
///
/// `m`, `b_j`, `eps` and the basis all refer to the generating tuple
/// [`tuple`](Self::tuple); [`canonicalize`] picks the orbit representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureField {
    tuple: ScTuple,
    m: BigUint,
    ramification: Ramification,
    disc: BigInt,
    b: Vec<BigUint>,
    eps: Option<u64>,
    base: Arc<RadicalBase>,
}

/// The field of the canonical representative of `t`'s orbit.
pub fn canonicalize(t: &ScTuple) -> PureField {
    PureField::from_generator(t.canonical_tuple())
}

impl PureField {
    /// Field data with `t` itself as the generating radicand.
    pub fn from_generator(t: ScTuple) -> Self {
        let p = t.p;
        let ramification = t.ramification();
        let b = (0..p)
            .map(|j| {
                t.a.iter().enumerate().fold(BigUint::one(), |acc, (i, &x)| {
                    acc * num_traits::pow(BigUint::from(x), (((i as u64 + 1) * j) / p) as usize)
                })
            })
            .collect();
        let eps = match ramification {
            Ramification::Tame => mod_inverse(t.m_mod(p * p), p * p),
            Ramification::Wild => None,
        };
        let base = RadicalBase::new(p, t.a.clone()).expect("validated tuple");
        Self { m: t.m(), disc: t.discriminant(), tuple: t, ramification, b, eps, base }
    }

    pub fn tuple(&self) -> &ScTuple {
        &self.tuple
    }

    pub fn p(&self) -> u64 {
        self.tuple.p
    }

    pub fn ell(&self) -> usize {
        self.tuple.ell()
    }

    pub fn m(&self) -> &BigUint {
        &self.m
    }

    pub fn ramification(&self) -> Ramification {
        self.ramification
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// `b_j = prod a_i^floor(ij/p)` for `j = 1..p-1`.
    pub fn b(&self, j: usize) -> &BigUint {
        &self.b[j]
    }

    pub fn bs(&self) -> &[BigUint] {
        &self.b[1..]
    }

    /// Least positive `eps` with `m * eps = 1 mod p^2`; tame fields only.
    pub fn eps(&self) -> Option<u64> {
        self.eps
    }

    pub fn base(&self) -> &Arc<RadicalBase> {
        &self.base
    }

    /// `alpha^j` in canonical form, `alpha = m^(1/p)`.
    pub fn alpha_pow(&self, j: i64) -> RadicalMonomial {
        let exps = (1..self.p() as i64).map(|i| i * j).collect();
        RadicalMonomial::new(self.base.clone(), BigRational::one(), exps).normalize()
    }

    /// `gamma_j = alpha^j / b_j`: coefficient 1, exponents `ij mod p`.
    pub fn gamma(&self, j: usize) -> RadicalMonomial {
        let p = self.p() as i64;
        let exps = (1..p).map(|i| (i * j as i64) % p).collect();
        RadicalMonomial::new(self.base.clone(), BigRational::one(), exps).normalize()
    }

    /// `nu = (m + alpha + eps alpha^2 + ... + eps^(p-2) alpha^(p-1)) / p`.
    pub fn nu(&self) -> Option<RadicalSum> {
        let eps = BigInt::from(self.eps?);
        let p = self.p();
        let mut s = RadicalSum::rational(self.base.clone(), BigRational::from_integer(self.m.clone().into()));
        let mut e = BigInt::one();
        for k in 1..p {
            let term = self.alpha_pow(k as i64).scale(&BigRational::from_integer(e.clone()));
            s = &s + &RadicalSum::from(term);
            e *= &eps;
        }
        Some(s.scale(&BigRational::new(BigInt::one(), BigInt::from(p))))
    }

    /// Wild: `{1, gamma_1, ..., gamma_{p-1}}`; tame: `{1, nu, gamma_2, ...}`.
    pub fn integral_basis(&self) -> Vec<RadicalSum> {
        let mut out: Vec<RadicalSum> =
            (0..self.p() as usize).map(|j| self.gamma(j).into()).collect();
        if let Some(nu) = self.nu() {
            out[1] = nu;
        }
        out
    }

    /// The rational basis `{1, gamma_1, ..., gamma_{p-1}}` for either type.
    pub fn gamma_basis(&self) -> Vec<RadicalSum> {
        (0..self.p() as usize).map(|j| self.gamma(j).into()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(validate(3, &[2, 1]).is_ok());
        assert_eq!(validate(3, &[4, 1]), Err(Error::NotSquarefree(1)));
        assert_eq!(validate(5, &[2, 1, 2, 1]), Err(Error::NotCoprime(1, 3)));
        assert_eq!(validate(3, &[1, 1]), Err(Error::DegenerateUnit));
        assert_eq!(validate(3, &[2]), Err(Error::BadLength { expected: 2, got: 1 }));
        assert_eq!(validate(4, &[2, 1, 1]), Err(Error::NotOddPrime(4)));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor_radicand(3, 12).unwrap().a(), &[3, 2]);
        assert_eq!(factor_radicand(3, 2).unwrap().a(), &[2, 1]);
        assert_eq!(factor_radicand(5, 72).unwrap().a(), &[1, 3, 2, 1]);
        assert_eq!(factor_radicand(3, 8), Err(Error::NotPPowerFree));
        assert_eq!(factor_radicand(3, 1), Err(Error::RadicandTooSmall));
    }

    #[test]
    fn ramification_examples() {
        assert_eq!(factor_radicand(3, 10).unwrap().ramification(), Ramification::Tame);
        assert_eq!(factor_radicand(3, 2).unwrap().ramification(), Ramification::Wild);
        assert_eq!(factor_radicand(5, 7).unwrap().ramification(), Ramification::Tame);
        assert_eq!(factor_radicand(3, 3).unwrap().ramification(), Ramification::Wild);
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(validate(3, &[2, 1]).unwrap().discriminant(), BigInt::from(-108));
        assert_eq!(validate(3, &[10, 1]).unwrap().discriminant(), BigInt::from(-300));
        assert_eq!(validate(5, &[2, 1, 1, 1]).unwrap().discriminant(), BigInt::from(50000));
    }

    #[test]
    fn orbit_examples() {
        // distinct primes as symbolic a_1..a_4
        let t = validate(5, &[2, 3, 5, 7]).unwrap();
        let orbit = t.orbit();
        let expect = [[2, 3, 5, 7], [3, 7, 2, 5], [7, 5, 3, 2], [5, 2, 7, 3]];
        assert_eq!(orbit.len(), 4);
        for e in expect {
            assert!(orbit.iter().any(|o| o.a() == e), "{e:?}");
        }
        let t = validate(3, &[2, 1]).unwrap();
        assert_eq!(t.orbit().iter().map(|o| o.a().to_vec()).collect::<Vec<_>>(), vec![vec![1, 2], vec![2, 1]]);
    }

    #[test]
    fn canonicalize_examples() {
        let f = canonicalize(&validate(3, &[1, 2]).unwrap());
        assert_eq!(f.tuple().a(), &[1, 2]);
        let f = canonicalize(&validate(5, &[2, 1, 1, 1]).unwrap());
        assert_eq!(f.tuple().a(), &[1, 1, 1, 2]);
        let g = canonicalize(f.tuple());
        assert_eq!(f, g);
        assert!(f.tuple().is_canonical());
        assert!(!validate(5, &[2, 1, 1, 1]).unwrap().is_canonical());
    }

    #[test]
    fn basis_examples() {
        let f = PureField::from_generator(validate(3, &[2, 1]).unwrap());
        let basis = f.integral_basis();
        let v: Vec<f64> = basis.iter().map(|x| x.eval(53).to_f64()).collect();
        assert!((v[1] - 2f64.cbrt()).abs() < 1e-15 && (v[2] - 4f64.cbrt()).abs() < 1e-15);

        let f = PureField::from_generator(validate(3, &[10, 1]).unwrap());
        assert_eq!(f.eps(), Some(1));
        let basis = f.integral_basis();
        let a = 10f64.cbrt();
        assert!((basis[1].eval(53).to_f64() - (10.0 + a + a * a) / 3.0).abs() < 1e-12);
        assert!((basis[2].eval(53).to_f64() - a * a).abs() < 1e-12);
    }

    #[test]
    fn gamma_p_power_is_integer() {
        let f = PureField::from_generator(validate(7, &[2, 3, 5, 1, 7, 11]).unwrap());
        for j in 0..7 {
            assert!(f.gamma(j).pow_p().is_integer());
        }
    }

    #[test]
    fn round_trip_radicands() {
        for p in [3u64, 5] {
            for m in 2u128..=10_000 {
                match factor_radicand(p, m) {
                    Ok(t) => assert_eq!(t.m(), BigUint::from(m)),
                    Err(e) => assert_eq!(e, Error::NotPPowerFree),
                }
            }
        }
    }
}
