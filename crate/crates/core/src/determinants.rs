//! Exact determinants behind the volume computation: the Jacobian of the
//! change of variables to shape coordinates, the Maillet determinant and the
//! minus class number `h_p^-`, and the shadow Jacobian.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{is_prime, mod_inverse, primitive_root, require_odd_prime};
use crate::fixed::{self, FixedComplex};
use crate::{Error, IntMatrix, Integer, Result};

/// Integer exponent or coefficient matrix.
pub type ExponentMatrix = IntMatrix;

/// Largest prime accepted by the class number routines.
pub const DEFAULT_PRIME_BOUND: u64 = 199;

/// Default working precision of [`h_minus_analytic`], in fractional bits.
pub const DEFAULT_ANALYTIC_BITS: usize = 256;

/// `2ij - p - 2p floor(ij/p)`, the exponent of `a_i / a_{p-i}` in `lambda_j^p`.
pub fn shape_exponent(p: i64, i: i64, j: i64) -> i64 {
    2 * i * j - p - 2 * p * num_integer::Integer::div_floor(&(i * j), &p)
}

fn int(x: i64) -> Integer {
    Integer::from(x)
}

/// Exponents of `a_1, ..., a_{p-1}` in `x_1, ..., x_{p-1}`.
///
/// Rows `1..l` are the `lambda_i^p`, rows `l+1..p-2` the products
/// `a_k a_{p-k}` for `k = 1..l-1`, and the last row makes every column sum 1.
pub fn jacobian_exponent_matrix(p: u64) -> Result<ExponentMatrix> {
    require_odd_prime(p)?;
    let p = p as i64;
    let n = (p - 1) as usize;
    let ell = (p - 1) / 2;
    let mut c = vec![vec![0i64; n]; n];
    for i in 1..=ell {
        for k in 1..=ell {
            let e = shape_exponent(p, k, i);
            c[(i - 1) as usize][(k - 1) as usize] = e;
            c[(i - 1) as usize][(p - k - 1) as usize] = -e;
        }
    }
    for i in ell + 1..=p - 2 {
        c[(i - 1) as usize][(i - ell - 1) as usize] = 1;
        c[(i - 1) as usize][(p - i + ell - 1) as usize] = 1;
    }
    for j in 0..n {
        let s: i64 = (0..n - 1).map(|i| c[i][j]).sum();
        c[n - 1][j] = 1 - s;
    }
    Ok(crate::linalg::Matrix::<i64>::from_rows(c).map(|&x| int(x)))
}

pub fn jacobian_det(p: u64) -> Result<Integer> {
    Ok(jacobian_exponent_matrix(p)?.det_bareiss())
}

/// `C_p -> C_p' -> C_p''`: replace the last row by the sum of all rows, then
/// subtract column `j` from column `p - j` for `j = 1..l`.
pub fn jacobian_reduction(p: u64) -> Result<[ExponentMatrix; 3]> {
    let c = jacobian_exponent_matrix(p)?;
    let n = c.rows();
    let ell = n / 2;
    let mut c1 = c.clone();
    for j in 0..n {
        c1[(n - 1, j)] = (0..n).map(|i| c[(i, j)].clone()).sum();
    }
    let mut c2 = c1.clone();
    for j in 1..=ell {
        for i in 0..n {
            let v = &c2[(i, n - j)] - &c2[(i, j - 1)];
            c2[(i, n - j)] = v;
        }
    }
    Ok([c, c1, c2])
}

/// The `l x l` matrix `(2ij - p - 2p floor(ij/p))`.
pub fn reduced_matrix(p: u64) -> Result<ExponentMatrix> {
    require_odd_prime(p)?;
    let ell = ((p - 1) / 2) as usize;
    let p = p as i64;
    Ok(IntMatrix::from_fn(ell, ell, |i, j| int(shape_exponent(p, i as i64 + 1, j as i64 + 1))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassNumberData {
    pub p: u64,
    /// Maillet's determinant `det(R(r s'))`.
    #[serde(serialize_with = "ser_display")]
    pub d_p: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub h_minus: BigUint,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    x: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// The matrix `R(r s')`, `1 <= r, s <= l`, of least positive residues.
pub fn maillet_matrix(p: u64) -> Result<ExponentMatrix> {
    require_odd_prime(p)?;
    let ell = ((p - 1) / 2) as usize;
    Ok(IntMatrix::from_fn(ell, ell, |r, s| {
        let sinv = mod_inverse(s as u64 + 1, p).expect("p prime");
        int((((r as u64 + 1) * sinv) % p) as i64)
    }))
}

pub fn maillet_class_number(p: u64) -> Result<ClassNumberData> {
    maillet_class_number_with_bound(p, DEFAULT_PRIME_BOUND)
}

/// `h_p^- = |D_p| / p^((p-3)/2)`.
pub fn maillet_class_number_with_bound(p: u64, bound: u64) -> Result<ClassNumberData> {
    require_odd_prime(p)?;
    if p > bound {
        return Err(Error::OutOfRange(p));
    }
    let d_p = maillet_matrix(p)?.det_bareiss();
    let pow = num_traits::pow(BigInt::from(p), ((p - 3) / 2) as usize);
    let (q, r) = d_p.abs().div_rem(&pow);
    if !r.is_zero() || q.is_zero() {
        return Err(Error::DivisibilityFailure);
    }
    Ok(ClassNumberData { p, d_p, h_minus: q.to_biguint().expect("positive") })
}

pub fn h_minus_analytic(p: u64) -> Result<BigUint> {
    h_minus_analytic_with_bits(p, DEFAULT_ANALYTIC_BITS)
}

/// `h_p^- = 2p prod_{chi odd} (-B_{1,chi} / 2)` with `B_{1,chi} = (1/p) sum chi(a) a`,
/// evaluated in fixed-point complex arithmetic.
///
/// The precision is raised automatically when the result is too large for
/// `bits` to resolve its units digit.
pub fn h_minus_analytic_with_bits(p: u64, bits: usize) -> Result<BigUint> {
    require_odd_prime(p)?;
    if p > DEFAULT_PRIME_BOUND {
        return Err(Error::OutOfRange(p));
    }
    let slack = 64 + 4 * (64 - p.leading_zeros() as usize);
    let (mut value, mut dist) = analytic_at(p, bits);
    let need = value.bits() as usize + slack;
    if need > bits {
        (value, dist) = analytic_at(p, need + 64);
    }
    if dist > 1e-6 || value.sign() != Sign::Plus {
        return Err(Error::PrecisionLoss(dist));
    }
    Ok(value.to_biguint().expect("positive"))
}

// Rounded value and its distance from the computed complex number.
fn analytic_at(p: u64, bits: usize) -> (BigInt, f64) {
    let n = p - 1;
    let ell = (n / 2) as usize;
    let g = primitive_root(p);
    let mut ind = vec![0u64; p as usize];
    let mut x = 1u64;
    for k in 0..n {
        ind[x as usize] = k;
        x = x * g % p;
    }
    let theta = fixed::pi(bits) * 2 / n;
    let zeta = FixedComplex::cis(&theta, bits);
    let mut roots = Vec::with_capacity(n as usize);
    let mut z = FixedComplex::from_int(1, bits);
    for _ in 0..n {
        roots.push(z.clone());
        z = &z * &zeta;
    }
    let mut prod = FixedComplex::from_int(1, bits);
    for j in (1..n).step_by(2) {
        let mut s = FixedComplex::zero(bits);
        for a in 1..p {
            let t = (j * ind[a as usize]) % n;
            s = &s + &roots[t as usize].scale_int(a as i64);
        }
        prod = &prod * &s;
    }
    // h = 2p prod(-S_j / (2p)) = (-1)^l prod S_j / (2p)^(l-1)
    let den = (BigInt::one() << bits) * num_traits::pow(BigInt::from(2 * p), ell - 1);
    let num = if ell % 2 == 1 { -prod.re } else { prod.re };
    let twice_den: BigInt = &den * 2u32;
    let shifted: BigInt = &num * 2u32 + &den;
    let rounded = shifted.div_floor(&twice_den);
    let err_re = BigRational::new(&num - &rounded * &den, den.clone());
    let err_im = BigRational::new(prod.im, den);
    let dist = err_re.abs().to_f64().unwrap_or(f64::INFINITY)
        + err_im.abs().to_f64().unwrap_or(f64::INFINITY);
    (rounded, dist)
}

/// The recursive coefficient matrix of the shadow change of variables.
pub fn shadow_matrix(d: u64) -> Result<ExponentMatrix> {
    if d < 2 || d % 2 == 1 || d > 64 {
        return Err(Error::OutOfRange(d));
    }
    let n = d as usize;
    if n == 2 {
        return Ok(IntMatrix::from_rows(vec![vec![int(1), int(-1)], vec![int(0), int(2)]]));
    }
    let inner = shadow_matrix(d - 2)?;
    let mut c = IntMatrix::zeros(n, n);
    c[(0, 0)] = int(1);
    c[(0, 1)] = int(-1);
    c[(1, 0)] = int(1);
    c[(n - 1, 0)] = int(-1);
    c[(n - 1, 1)] = int(2);
    for i in 0..n - 2 {
        for j in 0..n - 2 {
            c[(i + 2, j + 2)] = inner[(i, j)].clone();
        }
    }
    Ok(c)
}

pub fn shadow_jacobian_det(d: u64) -> Result<Integer> {
    Ok(shadow_matrix(d)?.det_bareiss())
}

/// `(2ij - nj - n floor(ij/n) + n floor((n-i)j/n))`, `1 <= i, j <= (n-1)/2`.
pub fn composite_formula_matrix(n: u64) -> Result<ExponentMatrix> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::OutOfRange(n));
    }
    let ell = ((n - 1) / 2) as usize;
    let n = n as i64;
    Ok(IntMatrix::from_fn(ell, ell, |i, j| {
        let (i, j) = (i as i64 + 1, j as i64 + 1);
        int(2 * i * j - n * j - n * ((i * j) / n) + n * (((n - i) * j) / n))
    }))
}

/// `2^l det(...)` of [`composite_formula_matrix`] for odd composite `n`.
pub fn composite_jacobian_det(n: u64) -> Result<Integer> {
    if n < 9 || n % 2 == 0 || is_prime(n) {
        return Err(Error::OutOfRange(n));
    }
    formula_det(n)
}

/// `2^l det(...)` for any odd `n >= 3`; prime `n` recovers [`jacobian_det`].
pub fn formula_det(n: u64) -> Result<Integer> {
    let m = composite_formula_matrix(n)?;
    let ell = m.rows();
    Ok((Integer::one() << ell) * m.det_bareiss())
}
