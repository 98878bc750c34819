//! Binary fixed-point complex arithmetic on big integers.
//!
//! A value `v` with `bits` fractional bits stands for `v / 2^bits`.
//! Products truncate toward negative infinity, so each operation loses at
//! most one unit in the last place.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FixedComplex {
    pub re: BigInt,
    pub im: BigInt,
    pub bits: usize,
}

impl FixedComplex {
    pub fn zero(bits: usize) -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero(), bits }
    }

    pub fn from_int(n: i64, bits: usize) -> Self {
        Self { re: BigInt::from(n) << bits, im: BigInt::zero(), bits }
    }

    /// `e^(i theta)` where `theta` is a fixed-point real.
    pub fn cis(theta: &BigInt, bits: usize) -> Self {
        let guard = bits + 32;
        let th = theta.clone() << 32;
        let one = BigInt::one() << guard;
        let (mut re, mut im) = (one.clone(), BigInt::zero());
        // term = (i theta)^k / k!
        let (mut tre, mut tim) = (one, BigInt::zero());
        let mut k = 1u32;
        loop {
            let prod_im: BigInt = &tim * &th;
            let prod_re: BigInt = &tre * &th;
            let nre: BigInt = -(prod_im >> guard) / k;
            let nim: BigInt = (prod_re >> guard) / k;
            tre = nre;
            tim = nim;
            if tre.is_zero() && tim.is_zero() {
                break;
            }
            re += &tre;
            im += &tim;
            k += 1;
        }
        Self { re: re >> 32, im: im >> 32, bits }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        Self { re: &self.re * n, im: &self.im * n, bits: self.bits }
    }

    #[cfg(test)]
    /// Real and imaginary parts as `(numerator, 2^bits)` rounded to f64.
    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.re, self.bits), to_f64(&self.im, self.bits))
    }
}

#[cfg(test)]
pub(crate) fn to_f64(v: &BigInt, bits: usize) -> f64 {
    let drop = (v.bits() as i64 - 64).max(0) as usize;
    let top = num_traits::ToPrimitive::to_f64(&(v >> drop)).unwrap_or(f64::NAN);
    top * 2f64.powi(drop as i32 - bits as i32)
}

/// `pi * 2^bits` by Machin's formula.
pub(crate) fn pi(bits: usize) -> BigInt {
    let guard = bits + 32;
    let v = atan_inv(5, guard) * 16 - atan_inv(239, guard) * 4;
    v >> 32
}

// atan(1/x) * 2^bits
fn atan_inv(x: u32, bits: usize) -> BigInt {
    let x2 = BigInt::from(x) * x;
    let mut power = (BigInt::one() << bits) / x;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power = power.div_floor(&x2);
        k += 1;
    }
    sum
}

impl Add for &FixedComplex {
    type Output = FixedComplex;

    fn add(self, o: &FixedComplex) -> FixedComplex {
        FixedComplex { re: &self.re + &o.re, im: &self.im + &o.im, bits: self.bits }
    }
}

impl Sub for &FixedComplex {
    type Output = FixedComplex;

    fn sub(self, o: &FixedComplex) -> FixedComplex {
        FixedComplex { re: &self.re - &o.re, im: &self.im - &o.im, bits: self.bits }
    }
}

impl Neg for &FixedComplex {
    type Output = FixedComplex;

    fn neg(self) -> FixedComplex {
        FixedComplex { re: -&self.re, im: -&self.im, bits: self.bits }
    }
}

impl Mul for &FixedComplex {
    type Output = FixedComplex;

    fn mul(self, o: &FixedComplex) -> FixedComplex {
        let re = (&self.re * &o.re - &self.im * &o.im) >> self.bits;
        let im = (&self.re * &o.im + &self.im * &o.re) >> self.bits;
        FixedComplex { re, im, bits: self.bits }
    }
}
