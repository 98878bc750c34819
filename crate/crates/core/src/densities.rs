//! Local densities of the strongly carefree sieve, their Euler product and
//! the predicted leading constants of the field counts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{is_prime, primes_up_to, require_odd_prime};
use crate::determinants::maillet_class_number;
use crate::fields::Ramification;
use crate::{Error, Result};

/// Default truncation point of the Euler product.
pub const DEFAULT_EULER_Y: u64 = 1_000_000;

/// Limits accepted by [`delta_q_bruteforce`].
pub const BRUTEFORCE_MAX_Q: u64 = 13;
pub const BRUTEFORCE_MAX_N: u32 = 6;

/// Above this many tuples the brute-force count switches from literal
/// enumeration to a coordinate-by-coordinate transfer count.
const LITERAL_LIMIT: u128 = 1_000_000;

/// `delta_q = (q-1)^n (q+n) / q^(n+1)`.
pub fn delta_q(q: u64, n: u32) -> BigRational {
    let q = BigInt::from(q);
    let num = num_traits::pow(&q - 1u32, n as usize) * (&q + n);
    BigRational::new(num, num_traits::pow(q, n as usize + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Residue {
    Unit,
    ZeroModQ,
    ZeroModQ2,
}

fn classify(x: u64, q: u64) -> Residue {
    if x == 0 {
        Residue::ZeroModQ2
    } else if x % q == 0 {
        Residue::ZeroModQ
    } else {
        Residue::Unit
    }
}

/// Fraction of `(Z/q^2)^n` with no coordinate `0 mod q^2` and at most one
/// coordinate `0 mod q`, by counting residues.
pub fn delta_q_bruteforce(q: u64, n: u32) -> Result<BigRational> {
    if !is_prime(q) {
        return Err(Error::OutOfRange(q));
    }
    let total = (q as u128).checked_pow(2 * n).unwrap_or(u128::MAX);
    if q > BRUTEFORCE_MAX_Q || n > BRUTEFORCE_MAX_N || n < 1 {
        return Err(Error::TooLarge(total));
    }
    let count = if total <= LITERAL_LIMIT { count_literal(q, n) } else { count_transfer(q, n) };
    Ok(BigRational::new(BigInt::from(count), BigInt::from(total)))
}

// Walks every tuple of residues.
fn count_literal(q: u64, n: u32) -> u128 {
    let q2 = q * q;
    let mut digits = vec![0u64; n as usize];
    let mut count = 0u128;
    loop {
        let mut zeros = 0;
        let mut dead = false;
        for &d in &digits {
            match classify(d, q) {
                Residue::Unit => {}
                Residue::ZeroModQ => zeros += 1,
                Residue::ZeroModQ2 => dead = true,
            }
        }
        if !dead && zeros <= 1 {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return count;
            }
            digits[k] += 1;
            if digits[k] < q2 {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

// Counts by state {no zero mod q, one zero mod q}, one coordinate at a time.
fn count_transfer(q: u64, n: u32) -> u128 {
    let mut state = [1u128, 0u128];
    for _ in 0..n {
        let mut next = [0u128; 2];
        for x in 0..q * q {
            match classify(x, q) {
                Residue::Unit => {
                    next[0] += state[0];
                    next[1] += state[1];
                }
                Residue::ZeroModQ => next[1] += state[0],
                Residue::ZeroModQ2 => {}
            }
        }
        state = next;
    }
    state[0] + state[1]
}

/// Coefficients `c_k` with `delta_q = sum_k c_k q^(-k)`, i.e. the expansion
/// of `(1 - t)^n (1 + n t)`.
pub fn delta_expansion(n: u32) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for _ in 0..n {
        poly = mul_poly(&poly, &[BigInt::one(), -BigInt::one()]);
    }
    mul_poly(&poly, &[BigInt::one(), BigInt::from(n)])
}

fn mul_poly(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerProduct {
    pub n: u32,
    pub truncation_y: u64,
    pub value: f64,
    /// Bound on `sum_{q > Y} n^2 / q^2`.
    pub tail_bound: f64,
}

/// `prod_{q <= Y} delta_q(q, p - 1)`.
pub fn euler_product(p: u64, y: u64) -> Result<EulerProduct> {
    require_odd_prime(p)?;
    if y < 2 {
        return Err(Error::OutOfRange(y));
    }
    Ok(euler_product_n((p - 1) as u32, y))
}

/// Product of the local densities for tuples of length `n`, accumulated as
/// a compensated sum of logarithms.
pub fn euler_product_n(n: u32, y: u64) -> EulerProduct {
    let nf = n as f64;
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for q in primes_up_to(y) {
        let t = 1.0 / q as f64;
        let term = nf * (-t).ln_1p() + (nf * t).ln_1p();
        // Neumaier summation
        let s = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - s) + term } else { (term - s) + sum };
        sum = s;
    }
    EulerProduct { n, truncation_y: y, value: (sum + comp).exp(), tail_bound: nf * nf / y as f64 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Normalization {
    /// `C / ((2p-1) 2^(p-2) p^(l-1) h)` times `mu(W)`.
    #[serde(rename = "theorem_c")]
    Constant,
    /// The final count display: carries fractional powers of `p` and
    /// multiplies `H = l! mu(W)`.
    #[serde(rename = "section6")]
    FinalCount,
}

impl Normalization {
    pub const ALL: [Normalization; 2] = [Normalization::Constant, Normalization::FinalCount];

    /// Report key.
    pub fn key(self) -> &'static str {
        match self {
            Self::Constant => "theorem_c",
            Self::FinalCount => "section6",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PredictedConstants {
    pub p: u64,
    pub normalization: Normalization,
    pub h_minus: f64,
    pub euler_product: f64,
    pub tail_bound: f64,
    pub truncation_y: u64,
    /// Constants without the Euler product.
    pub wild_coefficient: f64,
    pub tame_coefficient: f64,
    /// Constants including the Euler product.
    pub c_wild: f64,
    pub c_tame: f64,
}

pub fn predicted_constants(p: u64, y: u64, normalization: Normalization) -> Result<PredictedConstants> {
    let euler = euler_product(p, y)?;
    let h = maillet_class_number(p)?.h_minus.to_f64().unwrap_or(f64::INFINITY);
    Ok(constants_from(p, &euler, h, normalization))
}

/// Assembles the constants from a precomputed Euler product and `h_p^-`.
pub fn constants_from(p: u64, euler: &EulerProduct, h: f64, normalization: Normalization) -> PredictedConstants {
    let pf = p as f64;
    let ell = ((p - 1) / 2) as i32;
    let base = (2.0 * pf - 1.0) * 2f64.powi(p as i32 - 2) * h;
    let (wild, tame) = match normalization {
        Normalization::Constant => {
            let d = base * pf.powi(ell - 1);
            (1.0 / d, (2.0 * pf - 2.0) / d)
        }
        Normalization::FinalCount => {
            let e = 1.0 / (pf - 1.0);
            let wild = (2.0 * pf - 2.0) / (base * pf.powi(ell) * pf.powf(e));
            let tame = 1.0 / (base * pf.powi(ell - 1) * pf.powf((pf - 2.0) * e));
            (wild, tame)
        }
    };
    PredictedConstants {
        p,
        normalization,
        h_minus: h,
        euler_product: euler.value,
        tail_bound: euler.tail_bound,
        truncation_y: euler.truncation_y,
        wild_coefficient: wild,
        tame_coefficient: tame,
        c_wild: wild * euler.value,
        c_tame: tame * euler.value,
    }
}

impl PredictedConstants {
    pub fn constant(&self, ramification: Ramification) -> f64 {
        match ramification {
            Ramification::Wild => self.c_wild,
            Ramification::Tame => self.c_tame,
        }
    }

    /// Factor applied to `mu(W)`: 1, or `l!` for the display that uses `H`.
    pub fn measure_factor(&self) -> f64 {
        match self.normalization {
            Normalization::Constant => 1.0,
            Normalization::FinalCount => (1..=(self.p - 1) / 2).map(|k| k as f64).product(),
        }
    }

    /// `C X^(1/(p-1)) log(X)^(l-1) mu(W)` (times `l!` where applicable).
    pub fn predict(&self, ramification: Ramification, x: f64, mu: f64) -> f64 {
        if mu == 0.0 || x <= 1.0 {
            return 0.0;
        }
        let pf = self.p as f64;
        let ell = ((self.p - 1) / 2) as i32;
        self.constant(ramification) * x.powf(1.0 / (pf - 1.0)) * x.ln().powi(ell - 1) * mu * self.measure_factor()
    }
}
