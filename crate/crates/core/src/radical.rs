//! Exact arithmetic with monomials `c * prod a_i^(e_i/p)` and finite sums of
//! them over a fixed set of generators `a_1, ..., a_{p-1}`.
//!
//! A monomial is in canonical form when `0 <= e_i < p` for every `i` and
//! `e_i = 0` whenever `a_i = 1`. Canonical monomials over squarefree,
//! pairwise coprime generators are linearly independent over `Q`, so a
//! [`RadicalSum`] in normal form is zero iff it has no terms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Real, Result};

/// The degree `p` and the generators `a_1, ..., a_{p-1}` of a radical tower.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalBase {
    p: u64,
    gens: Vec<u64>,
}

impl RadicalBase {
    /// Generators must be positive; their number fixes the exponent length.
    pub fn new(p: u64, gens: Vec<u64>) -> Result<Arc<Self>> {
        if let Some(i) = gens.iter().position(|&a| a == 0) {
            return Err(Error::NonPositiveEntry(i + 1));
        }
        if p < 2 {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Arc::new(Self { p, gens }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

fn same_base(a: &Arc<RadicalBase>, b: &Arc<RadicalBase>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `a^e` as an exact rational, `e` of any sign.
fn rat_pow(a: u64, e: i64) -> BigRational {
    let mag = num_traits::pow(BigInt::from(a), e.unsigned_abs() as usize);
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalMonomial {
    base: Arc<RadicalBase>,
    coef: BigRational,
    exps: Vec<i64>,
}

impl RadicalMonomial {
    /// Raw monomial; call [`normalize`](Self::normalize) for canonical form.
    pub fn new(base: Arc<RadicalBase>, coef: BigRational, exps: Vec<i64>) -> Self {
        assert_eq!(exps.len(), base.len(), "exponent vector length");
        Self { base, coef, exps }
    }

    pub fn rational(base: Arc<RadicalBase>, coef: BigRational) -> Self {
        let n = base.len();
        Self { base, coef, exps: vec![0; n] }
    }

    pub fn one(base: Arc<RadicalBase>) -> Self {
        Self::rational(base, BigRational::one())
    }

    pub fn base(&self) -> &Arc<RadicalBase> {
        &self.base
    }

    pub fn coef(&self) -> &BigRational {
        &self.coef
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    /// Moves integer parts of every exponent into the coefficient.
    pub fn normalize(&self) -> Self {
        let p = self.base.p as i64;
        if self.coef.is_zero() {
            return Self::rational(self.base.clone(), BigRational::zero());
        }
        let mut coef = self.coef.clone();
        let mut exps = Vec::with_capacity(self.exps.len());
        for (&e, &a) in self.exps.iter().zip(&self.base.gens) {
            if a == 1 {
                exps.push(0);
                continue;
            }
            let (q, r) = (e.div_euclid(p), e.rem_euclid(p));
            if q != 0 {
                coef *= rat_pow(a, q);
            }
            exps.push(r);
        }
        Self { base: self.base.clone(), coef, exps }
    }

    fn is_canonical(&self) -> bool {
        let p = self.base.p as i64;
        self.exps
            .iter()
            .zip(&self.base.gens)
            .all(|(&e, &a)| (0..p).contains(&e) && (a != 1 || e == 0))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if !same_base(&self.base, &other.base) {
            return Err(Error::BaseMismatch);
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Ok(Self { base: self.base.clone(), coef: &self.coef * &other.coef, exps }.normalize())
    }

    /// Multiplicative inverse; `None` for the zero monomial.
    pub fn inv(&self) -> Option<Self> {
        if self.coef.is_zero() {
            return None;
        }
        let exps = self.exps.iter().map(|e| -e).collect();
        Some(Self { base: self.base.clone(), coef: self.coef.recip(), exps }.normalize())
    }

    pub fn pow(&self, k: u32) -> Self {
        let exps = self.exps.iter().map(|e| e * k as i64).collect();
        Self { base: self.base.clone(), coef: num_traits::pow(self.coef.clone(), k as usize), exps }
            .normalize()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self { base: self.base.clone(), coef: &self.coef * q, exps: self.exps.clone() }
    }

    /// The integer `prod a_i^(e_i)` of the canonical form, whose p-th root is
    /// the irrational part of the value.
    pub fn radicand(&self) -> BigUint {
        let m = if self.is_canonical() { self.clone() } else { self.normalize() };
        m.exps.iter().zip(&m.base.gens).fold(BigUint::one(), |acc, (&e, &a)| {
            acc * num_traits::pow(BigUint::from(a), e as usize)
        })
    }

    /// The exact rational `value^p`.
    pub fn pow_p(&self) -> BigRational {
        let m = self.normalize();
        let c = num_traits::pow(m.coef.clone(), m.base.p as usize);
        c * BigRational::from_integer(BigInt::from(m.radicand()))
    }

    /// Exact comparison of two positive monomials through their p-th powers.
    pub fn cmp_value(&self, other: &Self) -> Result<Ordering> {
        if !same_base(&self.base, &other.base) {
            return Err(Error::BaseMismatch);
        }
        if !self.coef.is_positive() || !other.coef.is_positive() {
            return Err(Error::NonPositive);
        }
        Ok(self.pow_p().cmp(&other.pow_p()))
    }

    /// The `j` in `0..p` with `e_i = i*j mod p` for every non-trivial
    /// generator, i.e. the power of `alpha = (prod a_i^i)^(1/p)` this
    /// monomial is a rational multiple of.
    pub fn field_power(&self) -> Option<u64> {
        let m = self.normalize();
        let p = m.base.p;
        (0..p).find(|&j| {
            m.exps.iter().zip(&m.base.gens).enumerate().all(|(idx, (&e, &a))| {
                a == 1 || e as u64 == ((idx as u64 + 1) * j) % p
            })
        })
    }

    pub fn eval(&self, precision: u32) -> RealApprox {
        RadicalSum::from(self.clone()).eval(precision)
    }
}

impl fmt::Display for RadicalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.normalize();
        write!(f, "{}", m.coef)?;
        let p = m.base.p;
        for (i, (&e, &a)) in m.exps.iter().zip(&m.base.gens).enumerate() {
            if e != 0 {
                write!(f, "*a{}[{}]^({}/{})", i + 1, a, e, p)?;
            }
        }
        Ok(())
    }
}

/// A finite sum of canonical monomials keyed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalSum {
    base: Arc<RadicalBase>,
    terms: BTreeMap<Vec<i64>, BigRational>,
}

impl RadicalSum {
    pub fn zero(base: Arc<RadicalBase>) -> Self {
        Self { base, terms: BTreeMap::new() }
    }

    pub fn rational(base: Arc<RadicalBase>, q: BigRational) -> Self {
        RadicalMonomial::rational(base, q).into()
    }

    pub fn integer(base: Arc<RadicalBase>, n: impl Into<BigInt>) -> Self {
        Self::rational(base, rat(n))
    }

    pub fn base(&self) -> &Arc<RadicalBase> {
        &self.base
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = RadicalMonomial> + '_ {
        self.terms.iter().map(|(e, c)| RadicalMonomial {
            base: self.base.clone(),
            coef: c.clone(),
            exps: e.clone(),
        })
    }

    /// The rational value if the sum has no irrational terms.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single monomial, if the sum has exactly one term.
    pub fn as_monomial(&self) -> Option<RadicalMonomial> {
        (self.terms.len() == 1).then(|| self.terms().next().unwrap())
    }

    fn push(&mut self, m: RadicalMonomial) {
        let m = if m.is_canonical() { m } else { m.normalize() };
        if m.coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.exps).or_insert_with(BigRational::zero);
        *slot += m.coef;
        if slot.is_zero() {
            let key: Vec<i64> =
                self.terms.iter().find(|(_, c)| c.is_zero()).map(|(k, _)| k.clone()).unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !same_base(&self.base, &other.base) {
            return Err(Error::BaseMismatch);
        }
        let mut out = self.clone();
        for t in other.terms() {
            out.push(t);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if !same_base(&self.base, &other.base) {
            return Err(Error::BaseMismatch);
        }
        let mut out = Self::zero(self.base.clone());
        for x in self.terms() {
            for y in other.terms() {
                out.push(x.checked_mul(&y)?);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(self.base.clone());
        }
        Self {
            base: self.base.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect(),
        }
    }

    /// Approximation with relative error at most `2^(1 - precision)`.
    ///
    /// Each term is evaluated as `coef * floor(2^k * R^(1/p)) / 2^k` with an
    /// exact integer root; `k` grows until the accumulated truncation error
    /// is small relative to the sum.
    pub fn eval(&self, precision: u32) -> RealApprox {
        let precision = precision.max(24);
        if self.terms.is_empty() {
            return RealApprox { mantissa: BigInt::zero(), shift: 0, precision };
        }
        let p = self.base.p;
        let monos: Vec<RadicalMonomial> = self.terms().collect();
        // Error budget per term: |coef| + 1 units in the last place.
        let budget: BigInt = monos
            .iter()
            .map(|m| {
                let c = m.coef.abs();
                c.ceil().to_integer() + BigInt::one()
            })
            .sum();
        let mut k = precision + 16 + budget.bits() as u32;
        loop {
            let mut sum = BigInt::zero();
            for m in &monos {
                let r = BigUint::from(m.radicand()) << (p as usize * k as usize);
                let root = BigInt::from(r.nth_root(p as u32));
                let scaled = m.coef.numer() * root;
                sum += scaled.div_floor(m.coef.denom());
            }
            // accept when budget <= 2^(1-prec) (|sum| - budget)
            let lhs = &budget * (BigInt::one() + (BigInt::one() << (precision - 1) as usize));
            if sum.abs() >= lhs {
                return RealApprox { mantissa: sum, shift: k, precision };
            }
            k += 64;
            assert!(k < 1 << 20, "nonzero radical sum failed to separate from zero");
        }
    }

    /// Convenience evaluation into a floating point type.
    pub fn to_real<T: Real>(&self) -> T {
        self.eval(64).to_real()
    }
}

impl From<RadicalMonomial> for RadicalSum {
    fn from(m: RadicalMonomial) -> Self {
        let mut s = Self::zero(m.base.clone());
        s.push(m);
        s
    }
}

impl Add for &RadicalSum {
    type Output = RadicalSum;

    fn add(self, rhs: &RadicalSum) -> RadicalSum {
        self.checked_add(rhs).expect("radical sums over different bases")
    }
}

impl Sub for &RadicalSum {
    type Output = RadicalSum;

    fn sub(self, rhs: &RadicalSum) -> RadicalSum {
        self + &(-rhs)
    }
}

impl Mul for &RadicalSum {
    type Output = RadicalSum;

    fn mul(self, rhs: &RadicalSum) -> RadicalSum {
        self.checked_mul(rhs).expect("radical sums over different bases")
    }
}

impl Neg for &RadicalSum {
    type Output = RadicalSum;

    fn neg(self) -> RadicalSum {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// A dyadic approximation `mantissa / 2^shift` together with the relative
/// precision it was computed to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealApprox {
    mantissa: BigInt,
    shift: u32,
    precision: u32,
}

impl RealApprox {
    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mantissa.sign()
    }

    /// Upper bound on the relative error.
    pub fn relative_error(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            2f64.powi(1 - self.precision as i32)
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), BigInt::one() << self.shift as usize)
    }

    pub fn to_f64(&self) -> f64 {
        if self.mantissa.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let drop = (bits - 64).max(0);
        let top = (&self.mantissa >> drop as usize).to_f64().unwrap_or(f64::NAN);
        let exp = drop - self.shift as i64;
        top * 2f64.powi(exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    pub fn to_real<T: Real>(&self) -> T {
        T::of(self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(p: u64, gens: &[u64]) -> Arc<RadicalBase> {
        RadicalBase::new(p, gens.to_vec()).unwrap()
    }

    fn mono(b: &Arc<RadicalBase>, c: i64, exps: &[i64]) -> RadicalMonomial {
        RadicalMonomial::new(b.clone(), rat(c), exps.to_vec())
    }

    #[test]
    fn normalize_examples() {
        let b = base(3, &[2, 1]);
        let m = mono(&b, 1, &[3, 0]).normalize();
        assert_eq!((m.coef().clone(), m.exps().to_vec()), (rat(2), vec![0, 0]));
        let m = mono(&b, 1, &[1, 2]).normalize();
        // a_2 = 1 so its exponent is dropped
        assert_eq!((m.coef().clone(), m.exps().to_vec()), (rat(1), vec![1, 0]));
        let m = mono(&b, 1, &[4, 0]).normalize();
        assert_eq!((m.coef().clone(), m.exps().to_vec()), (rat(2), vec![1, 0]));
        let m = mono(&b, 1, &[-1, 0]).normalize();
        assert_eq!((m.coef().clone(), m.exps().to_vec()), (BigRational::new(1.into(), 2.into()), vec![2, 0]));
    }

    #[test]
    fn mul_examples() {
        let b = base(3, &[2, 1]);
        let g1 = mono(&b, 1, &[1, 0]);
        let g2 = mono(&b, 1, &[2, 0]);
        let prod = g1.checked_mul(&g2).unwrap();
        assert_eq!((prod.coef().clone(), prod.exps().to_vec()), (rat(2), vec![0, 0]));
        let sq = g1.checked_mul(&g1).unwrap();
        assert_eq!(sq, g2.normalize());
        assert_eq!(g1.checked_mul(&RadicalMonomial::one(b.clone())).unwrap(), g1.normalize());
        let other = base(3, &[3, 1]);
        assert_eq!(g1.checked_mul(&mono(&other, 1, &[1, 0])), Err(Error::BaseMismatch));
    }

    #[test]
    fn cmp_examples() {
        let b = base(3, &[2, 1]);
        let g1 = mono(&b, 1, &[1, 0]);
        let g2 = mono(&b, 1, &[2, 0]);
        assert_eq!(g1.cmp_value(&g2), Ok(Ordering::Less));
        assert_eq!(g1.cmp_value(&g1), Ok(Ordering::Equal));
        let b = base(3, &[2, 3]);
        let x = mono(&b, 3, &[1, 0]);
        let y = mono(&b, 2, &[0, 1]);
        assert_eq!(x.cmp_value(&y), Ok(Ordering::Greater));
        assert_eq!(mono(&b, -1, &[1, 0]).cmp_value(&y), Err(Error::NonPositive));
    }

    #[test]
    fn eval_examples() {
        let b = base(3, &[2, 1]);
        let v = mono(&b, 1, &[1, 0]).eval(53).to_f64();
        assert!((v - 2f64.cbrt()).abs() < 1e-15);
        assert_eq!(RadicalSum::zero(b).eval(53).to_f64(), 0.0);

        // (100 + 10^(2/3) + 10^(4/3)) / 3
        let b = base(3, &[10, 1]);
        let third = BigRational::new(1.into(), 3.into());
        let nu = [mono(&b, 100, &[0, 0]), mono(&b, 1, &[2, 0]), mono(&b, 1, &[4, 0])]
            .into_iter()
            .fold(RadicalSum::zero(b.clone()), |acc, m| &acc + &RadicalSum::from(m))
            .scale(&third);
        let expect = (100.0 + 10f64.powf(2.0 / 3.0) + 10f64.powf(4.0 / 3.0)) / 3.0;
        assert!((nu.eval(53).to_f64() - expect).abs() < 1e-12 * expect);
        assert!((expect - 42.062).abs() < 1e-3);
    }

    #[test]
    fn cancellation_is_exact() {
        let b = base(5, &[2, 3, 1, 1]);
        let x: RadicalSum = mono(&b, 7, &[1, 2, 0, 0]).into();
        assert!((&x - &x).is_zero());
        // 2^(1/5) - 1 is small but positive; the evaluation must keep its sign
        let s = &RadicalSum::from(mono(&b, 1, &[1, 0, 0, 0])) - &RadicalSum::integer(b.clone(), 1);
        let v = s.eval(80);
        assert_eq!(v.sign(), Sign::Plus);
        assert!((v.to_f64() - (2f64.powf(0.2) - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn field_power_identifies_alpha_powers() {
        // m = 2 * 3^2: alpha^2 has exponents (2, 4)
        let b = base(3, &[2, 3]);
        assert_eq!(mono(&b, 1, &[2, 4]).field_power(), Some(2));
        assert_eq!(mono(&b, 5, &[0, 0]).field_power(), Some(0));
        assert_eq!(mono(&b, 1, &[1, 0]).field_power(), None);
    }

    proptest::proptest! {
        #[test]
        fn normalize_idempotent_and_value_preserving(
            e in proptest::collection::vec(-7i64..12, 4),
            c in 1i64..50,
        ) {
            let b = base(5, &[2, 3, 5, 7]);
            let m = mono(&b, c, &e);
            let n = m.normalize();
            proptest::prop_assert_eq!(n.normalize(), n.clone());
            let direct: f64 = c as f64 * e.iter().zip([2.0f64, 3.0, 5.0, 7.0])
                .map(|(&k, a)| a.powf(k as f64 / 5.0)).product::<f64>();
            proptest::prop_assert!((n.eval(53).to_f64() - direct).abs() <= 1e-12 * direct);
        }

        #[test]
        fn eval_is_multiplicative(
            e in proptest::collection::vec(0i64..5, 4),
            f in proptest::collection::vec(0i64..5, 4),
        ) {
            let b = base(5, &[2, 3, 5, 7]);
            let x = mono(&b, 3, &e);
            let y = mono(&b, 2, &f);
            let xy = x.checked_mul(&y).unwrap().eval(60).to_f64();
            let prod = x.eval(60).to_f64() * y.eval(60).to_f64();
            proptest::prop_assert!((xy - prod).abs() <= 1e-14 * prod);
        }
    }
}
