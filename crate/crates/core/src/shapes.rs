//! Gram matrices of the Minkowski lattice, the shape of its trace-zero part,
//! the exact shape parameters and shape windows.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::fields::{PureField, Ramification};
use crate::linalg::Matrix;
use crate::radical::{RadicalMonomial, RadicalSum};
use crate::{Error, RationalMatrix, Real, Result};

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Symmetric matrix with exact radical entries.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    p: u64,
    entries: Matrix<RadicalSum>,
}

impl GramMatrix {
    pub fn new(p: u64, entries: Matrix<RadicalSum>) -> Self {
        assert!(entries.is_square(), "Gram matrices are square");
        Self { p, entries }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> &RadicalSum {
        &self.entries[(i, j)]
    }

    pub fn entries(&self) -> &Matrix<RadicalSum> {
        &self.entries
    }

    /// Exact symmetry test.
    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.entries[(i, j)] == self.entries[(j, i)]))
    }

    /// Exact test that every off-diagonal entry is zero.
    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.entries[(i, j)].is_zero()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self { p: self.p, entries: self.entries.map(|x| x.scale(q)) }
    }

    /// Entries evaluated to `precision` bits and rounded into `T`.
    pub fn to_real<T: Real>(&self, precision: u32) -> Matrix<T> {
        self.entries.map(|x| x.eval(precision).to_real())
    }

    /// `C G C^T` for a rational change-of-basis matrix `C`.
    pub fn conjugate(&self, c: &RationalMatrix) -> Self {
        let n = self.dim();
        assert_eq!((c.rows(), c.cols()), (n, n), "dimension mismatch");
        let base = self.entries[(0, 0)].base().clone();
        let cg = Matrix::from_fn(n, n, |i, j| {
            (0..n).fold(RadicalSum::zero(base.clone()), |acc, k| {
                if c[(i, k)].is_zero() {
                    acc
                } else {
                    &acc + &self.entries[(k, j)].scale(&c[(i, k)])
                }
            })
        });
        let out = Matrix::from_fn(n, n, |i, j| {
            (0..n).fold(RadicalSum::zero(base.clone()), |acc, k| {
                if c[(j, k)].is_zero() {
                    acc
                } else {
                    &acc + &cg[(i, k)].scale(&c[(j, k)])
                }
            })
        });
        Self { p: self.p, entries: out }
    }

    /// Gram of the projections onto the orthogonal complement of basis
    /// vector 0: `G'_ij = G_ij - G_i0 G_0j / G_00` for `i, j >= 1`.
    pub fn perp_projection(&self) -> Self {
        let g00 = self.entries[(0, 0)].as_rational().expect("rational (0,0) entry");
        let inv = g00.recip();
        let n = self.dim() - 1;
        let entries = Matrix::from_fn(n, n, |i, j| {
            let corr = (&self.entries[(i + 1, 0)] * &self.entries[(0, j + 1)]).scale(&inv);
            &self.entries[(i + 1, j + 1)] - &corr
        });
        Self { p: self.p, entries }
    }
}

/// `diag(p, p gamma_1^2, ..., p gamma_{p-1}^2)`, the Gram of `{1, gamma_j}`.
pub fn gram_wild(f: &PureField) -> GramMatrix {
    let p = f.p();
    let base = f.base().clone();
    let n = p as usize;
    let pq = rat(p);
    let diag: Vec<RadicalSum> = (0..n)
        .map(|j| {
            let g = f.gamma(j);
            RadicalSum::from(g.checked_mul(&g).expect("same base").scale(&pq))
        })
        .collect();
    let entries = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            diag[i].clone()
        } else {
            RadicalSum::zero(base.clone())
        }
    });
    GramMatrix::new(p, entries)
}

/// Change of basis from `{1, gamma_1, ..., gamma_{p-1}}` to the tame basis
/// `{1, nu, gamma_2, ..., gamma_{p-1}}`.
pub fn tame_change_matrix(f: &PureField) -> Result<RationalMatrix> {
    let eps = f.eps().ok_or(Error::WrongType)?;
    let p = f.p();
    let n = p as usize;
    let inv_p = BigRational::new(BigInt::one(), BigInt::from(p));
    let mut c = RationalMatrix::identity(n);
    c[(1, 0)] = rat(f.m().clone()) * &inv_p;
    c[(1, 1)] = inv_p.clone();
    let mut e = BigInt::from(eps);
    for j in 2..n {
        c[(1, j)] = rat(&e * BigInt::from(f.b(j).clone())) * &inv_p;
        e *= eps;
    }
    Ok(c)
}

/// Gram of the tame basis as `C_t G C_t^T`.
pub fn gram_tame(f: &PureField) -> Result<GramMatrix> {
    let c = tame_change_matrix(f)?;
    Ok(gram_wild(f).conjugate(&c))
}

/// The tame Gram assembled entry by entry from its closed form:
/// `p`, `m`, `nu'`, `eps^(j-1) gamma_j gamma_1^j` and `p gamma_j^2`.
pub fn gram_tame_closed_form(f: &PureField) -> Result<GramMatrix> {
    let eps = BigInt::from(f.eps().ok_or(Error::WrongType)?);
    let p = f.p();
    let n = p as usize;
    let base = f.base().clone();
    let pq = rat(p);
    let zero = RadicalSum::zero(base.clone());
    let mut g = Matrix::from_fn(n, n, |_, _| zero.clone());
    g[(0, 0)] = RadicalSum::rational(base.clone(), pq.clone());
    g[(0, 1)] = RadicalSum::rational(base.clone(), rat(f.m().clone()));
    g[(1, 0)] = g[(0, 1)].clone();
    g[(1, 1)] = nu_prime(f)?;
    let g1 = f.gamma(1);
    for j in 2..n {
        let gj = f.gamma(j);
        let coef = rat(num_traits::pow(eps.clone(), j - 1));
        let off = gj.checked_mul(&g1.pow(j as u32)).expect("same base").scale(&coef);
        g[(1, j)] = off.clone().into();
        g[(j, 1)] = off.into();
        g[(j, j)] = gj.checked_mul(&gj).expect("same base").scale(&pq).into();
    }
    Ok(GramMatrix::new(p, g))
}

/// `nu' = m^2/p + (1/p) sum_k eps^(2k-2) alpha^(2k)`, the squared length of `nu`.
pub fn nu_prime(f: &PureField) -> Result<RadicalSum> {
    let eps = BigInt::from(f.eps().ok_or(Error::WrongType)?);
    let p = f.p();
    let m = BigInt::from(f.m().clone());
    let mut s = RadicalSum::rational(f.base().clone(), rat(&m * &m));
    for k in 1..p as i64 {
        let c = rat(num_traits::pow(eps.clone(), (2 * k - 2) as usize));
        s = &s + &RadicalSum::from(f.alpha_pow(2 * k).scale(&c));
    }
    Ok(s.scale(&BigRational::new(BigInt::one(), BigInt::from(p))))
}

/// The Gram matrix of the field's integral basis.
pub fn gram_full(f: &PureField) -> GramMatrix {
    match f.ramification() {
        Ramification::Wild => gram_wild(f),
        Ramification::Tame => gram_tame(f).expect("tame field"),
    }
}

/// Gram of the trace-zero projection of the integral basis.
///
/// The wild projection is divided by `p`, giving `diag(gamma_j^2)`; the tame
/// projection is returned unscaled.
pub fn shape_gram(f: &PureField) -> GramMatrix {
    let perp = gram_full(f).perp_projection();
    match f.ramification() {
        Ramification::Wild => perp.scale(&BigRational::new(BigInt::one(), BigInt::from(f.p()))),
        Ramification::Tame => perp,
    }
}

/// [`shape_gram`] divided by `gamma_l gamma_{l+1} = prod a_i`.
pub fn normalized_shape_gram(f: &PureField) -> GramMatrix {
    let prod = rat(BigInt::from(f.tuple().product()));
    shape_gram(f).scale(&prod.recip())
}

/// Numeric Gram of `basis` under the Minkowski embedding, computed from the
/// complex embeddings `alpha -> zeta^r alpha` rather than closed forms.
pub fn minkowski_gram<T: Real>(f: &PureField, basis: &[RadicalSum], precision: u32) -> Matrix<T> {
    let p = f.p() as usize;
    let emb: Vec<Vec<Complex<T>>> = basis.iter().map(|x| embed(f, x, precision)).collect();
    debug_assert!(emb.iter().all(|v| v.len() == p));
    Matrix::from_fn(basis.len(), basis.len(), |i, j| {
        (0..p).fold(T::zero(), |acc, r| acc + (emb[i][r] * emb[j][r].conj()).re)
    })
}

/// The `p` complex embeddings of a field element.
pub fn embed<T: Real>(f: &PureField, x: &RadicalSum, precision: u32) -> Vec<Complex<T>> {
    let p = f.p();
    let mut out = vec![Complex::new(T::zero(), T::zero()); p as usize];
    for term in x.terms() {
        let j = term.field_power().expect("element of the field");
        let v: T = term.eval(precision).to_real();
        for (r, slot) in out.iter_mut().enumerate() {
            let k = (r as u64 * j) % p;
            let theta = T::of(2.0) * T::PI() * T::of(k as f64) / T::of(p as f64);
            *slot = *slot + Complex::from_polar(v, theta);
        }
    }
    out
}

/// `lambda_j^p` for `j = 1..l` from the closed product formula, in index order.
pub fn lambda_p_raw(f: &PureField) -> Vec<BigRational> {
    lambda_p_of(f.p(), f.tuple().a())
}

/// [`lambda_p_raw`] for a bare tuple `a` of length `p - 1` (entries need not
/// be carefree).
pub fn lambda_p_of(p: u64, a: &[u64]) -> Vec<BigRational> {
    let p = p as i64;
    let ell = (p - 1) / 2;
    (1..=ell)
        .map(|j| {
            (1..=ell).fold(BigRational::one(), |acc, i| {
                let e = 2 * i * j - p - 2 * p * ((i * j) / p);
                let ratio = BigRational::new(
                    BigInt::from(a[(i - 1) as usize]),
                    BigInt::from(a[(p - i - 1) as usize]),
                );
                acc * pow_signed(&ratio, e)
            })
        })
        .collect()
}

fn pow_signed(x: &BigRational, e: i64) -> BigRational {
    let r = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e >= 0 {
        r
    } else {
        r.recip()
    }
}

/// `(gamma_j^2 / (gamma_l gamma_{l+1}))^p` computed by radical arithmetic.
pub fn lambda_p_from_basis(f: &PureField) -> Vec<BigRational> {
    let ell = f.ell();
    let denom = f.gamma(ell).checked_mul(&f.gamma(ell + 1)).expect("same base");
    let inv = denom.inv().expect("nonzero");
    (1..=ell)
        .map(|j| {
            let g = f.gamma(j);
            let lam: RadicalMonomial =
                g.checked_mul(&g).and_then(|x| x.checked_mul(&inv)).expect("same base");
            lam.pow_p()
        })
        .collect()
}

/// Canonical shape: the `l` values `max(lambda, 1/lambda)^p` sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShapeVector {
    p: u64,
    lambdas_p: Vec<BigRational>,
}

impl ShapeVector {
    /// Folds and sorts raw `lambda^p` values.
    pub fn from_raw(p: u64, raw: &[BigRational]) -> Result<Self> {
        if raw.iter().any(|x| !x.is_positive()) {
            return Err(Error::NonPositive);
        }
        let mut v: Vec<BigRational> =
            raw.iter().map(|x| if *x < BigRational::one() { x.recip() } else { x.clone() }).collect();
        v.sort();
        Ok(Self { p, lambdas_p: v })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn lambdas_p(&self) -> &[BigRational] {
        &self.lambdas_p
    }

    /// Numeric `lambda` values (the p-th roots).
    pub fn lambdas<T: Real>(&self) -> Vec<T> {
        let inv = T::one() / T::of(self.p as f64);
        self.lambdas_p.iter().map(|x| T::of(rational_to_f64(x)).powf(inv)).collect()
    }

    /// The full diagonal `(lambda_1, ..., lambda_l, lambda_l^-1, ..., lambda_1^-1)`
    /// as p-th powers; its product is 1.
    pub fn full_diagonal_p(&self) -> Vec<BigRational> {
        let mut out = self.lambdas_p.clone();
        out.extend(self.lambdas_p.iter().rev().map(|x| x.recip()));
        out
    }
}

impl fmt::Display for ShapeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.lambdas_p.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

pub fn shape_params(f: &PureField) -> ShapeVector {
    ShapeVector::from_raw(f.p(), &lambda_p_raw(f)).expect("shape parameters are positive")
}

/// Exact shape comparison. Fields of different ramification type never
/// share a shape.
pub fn shapes_equal(f: &PureField, g: &PureField) -> Result<bool> {
    if f.p() != g.p() {
        return Err(Error::PrimeMismatch(f.p(), g.p()));
    }
    if f.ramification() != g.ramification() {
        return Ok(false);
    }
    Ok(shape_params(f) == shape_params(g))
}

pub(crate) fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Bounds `R_1 < ... < R_l` and an optional `R_{l+1}` on sorted `lambda^p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShapeWindow {
    p: u64,
    lower: Vec<BigRational>,
    upper: Option<BigRational>,
}

impl ShapeWindow {
    /// `bounds` holds `R_1, ..., R_{l+1}`; `None` marks an infinite last bound.
    pub fn new(p: u64, lower: Vec<BigRational>, upper: Option<BigRational>) -> Result<Self> {
        let ell = ((p - 1) / 2) as usize;
        if lower.len() != ell {
            return Err(Error::InvalidWindow(format!(
                "expected {} bounds, got {}",
                ell + 1,
                lower.len() + 1
            )));
        }
        if lower[0] < BigRational::one() {
            return Err(Error::InvalidWindow("R_1 must be at least 1".into()));
        }
        let mut all: Vec<&BigRational> = lower.iter().collect();
        all.extend(upper.iter());
        if all.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidWindow("bounds must be strictly increasing".into()));
        }
        Ok(Self { p, lower, upper })
    }

    /// Parses `R_1,...,R_{l+1}`; entries are integers, fractions `a/b`,
    /// decimals, or `inf` for the last one.
    pub fn parse(p: u64, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() < 2 {
            return Err(Error::InvalidWindow(format!("need at least two bounds in {s:?}")));
        }
        let (last, init) = parts.split_last().unwrap();
        let lower = init.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>()?;
        let upper = match last.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "oo" => None,
            other => Some(parse_rational(other)?),
        };
        Self::new(p, lower, upper)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ell(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[BigRational] {
        &self.lower
    }

    pub fn upper(&self) -> Option<&BigRational> {
        self.upper.as_ref()
    }

    pub fn is_bounded(&self) -> bool {
        self.upper.is_some()
    }

    /// `R_1 <= x_1`, `R_i < x_i` for `i >= 2`, `x_1 < ... < x_l`, `x_l <= R_{l+1}`.
    pub fn contains_values(&self, xs: &[BigRational]) -> bool {
        if xs.len() != self.lower.len() {
            return false;
        }
        if xs[0] < self.lower[0] {
            return false;
        }
        if xs.iter().zip(&self.lower).skip(1).any(|(x, r)| x <= r) {
            return false;
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        match &self.upper {
            Some(u) => xs.last().unwrap() <= u,
            None => true,
        }
    }
}

impl fmt::Display for ShapeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.lower {
            write!(f, "{x},")?;
        }
        match &self.upper {
            Some(u) => write!(f, "{u}"),
            None => write!(f, "inf"),
        }
    }
}

impl Serialize for ShapeWindow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `7`, `7/3` or `2.5` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidWindow(format!("cannot parse {s:?} as a rational"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(n, d));
    }
    BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad())
}

pub fn window_contains(w: &ShapeWindow, s: &ShapeVector) -> Result<bool> {
    if w.p != s.p {
        return Err(Error::PrimeMismatch(w.p, s.p));
    }
    Ok(w.contains_values(&s.lambdas_p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{canonicalize, validate};

    fn field(p: u64, a: &[u64]) -> PureField {
        PureField::from_generator(validate(p, a).unwrap())
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn wild_gram_examples() {
        let f = field(3, &[2, 1]);
        let g = gram_wild(&f).to_real::<f64>(64);
        let expect = [3.0, 3.0 * 4f64.cbrt(), 3.0 * 16f64.cbrt()];
        for i in 0..3 {
            assert!((g[(i, i)] - expect[i]).abs() < 1e-12);
        }
        assert!(gram_wild(&f).is_diagonal());
        let f = field(5, &[2, 1, 1, 1]);
        let det = gram_wild(&f).to_real::<f64>(64).det_lu();
        assert!((det - 50000.0).abs() < 1e-8);
    }

    #[test]
    fn tame_gram_examples() {
        let f = field(3, &[10, 1]);
        assert_eq!(tame_change_matrix(&f).unwrap().det_bareiss(), r(1, 3));
        let g = gram_tame(&f).unwrap();
        assert_eq!(g.entry(0, 1).as_rational(), Some(r(10, 1)));
        let a = 10f64.cbrt();
        let nu = (100.0 + a * a + a.powi(4)) / 3.0;
        assert!((g.entry(1, 1).eval(64).to_f64() - nu).abs() < 1e-12);
        let det = g.to_real::<f64>(64).det_lu();
        assert!((det - 300.0).abs() < 1e-9);
        assert_eq!(g, gram_tame_closed_form(&f).unwrap());
        assert_eq!(gram_tame(&field(3, &[2, 1])), Err(Error::WrongType));
    }

    #[test]
    fn shape_gram_examples() {
        let s = shape_gram(&field(3, &[2, 1])).to_real::<f64>(64);
        assert!((s[(0, 0)] - 4f64.cbrt()).abs() < 1e-14);
        assert!((s[(1, 1)] - 16f64.cbrt()).abs() < 1e-14);
        assert!(s[(0, 1)] == 0.0);

        let s = shape_gram(&field(5, &[1, 1, 1, 2])).to_real::<f64>(64);
        for (i, e) in [8.0, 6.0, 4.0, 2.0].iter().enumerate() {
            assert!((s[(i, i)] - 2f64.powf(e / 5.0)).abs() < 1e-13);
        }

        let f = field(3, &[10, 1]);
        let s = shape_gram(&f);
        let full = gram_tame(&f).unwrap();
        let expect = full.entry(1, 1) - &RadicalSum::rational(f.base().clone(), r(100, 3));
        assert_eq!(s.entry(0, 0), &expect);
    }

    #[test]
    fn shape_param_examples() {
        let f = field(3, &[2, 1]);
        assert_eq!(lambda_p_raw(&f), vec![r(1, 2)]);
        assert_eq!(shape_params(&f).lambdas_p(), &[r(2, 1)]);
        let f = field(5, &[1, 1, 1, 2]);
        assert_eq!(lambda_p_raw(&f), vec![r(8, 1), r(2, 1)]);
        assert_eq!(shape_params(&f).lambdas_p(), &[r(2, 1), r(8, 1)]);
        // symbolic p = 5 display with distinct primes
        let f = field(5, &[2, 3, 5, 7]);
        let (a1, a2, a3, a4) = (2i64, 3i64, 5i64, 7i64);
        assert_eq!(
            lambda_p_raw(&f),
            vec![r(a4.pow(3) * a3, a1.pow(3) * a2), r(a4 * a2.pow(3), a1 * a3.pow(3))]
        );
        assert_eq!(lambda_p_raw(&f), lambda_p_from_basis(&f));
    }

    #[test]
    fn shapes_equal_examples() {
        let f = canonicalize(&validate(3, &[2, 1]).unwrap());
        let g = canonicalize(&validate(3, &[1, 2]).unwrap());
        let h = canonicalize(&validate(3, &[3, 1]).unwrap());
        assert_eq!(shapes_equal(&f, &f), Ok(true));
        assert_eq!(shapes_equal(&f, &g), Ok(true));
        assert_eq!(shapes_equal(&f, &h), Ok(false));
        assert_eq!(shapes_equal(&f, &field(5, &[2, 1, 1, 1])), Err(Error::PrimeMismatch(3, 5)));
    }

    #[test]
    fn window_examples() {
        let s = ShapeVector::from_raw(5, &[r(2, 1), r(8, 1)]).unwrap();
        assert_eq!(window_contains(&ShapeWindow::parse(5, "1,4,9").unwrap(), &s), Ok(true));
        assert_eq!(window_contains(&ShapeWindow::parse(5, "3,4,9").unwrap(), &s), Ok(false));
        assert_eq!(window_contains(&ShapeWindow::parse(5, "2,4,9").unwrap(), &s), Ok(true));
        assert_eq!(window_contains(&ShapeWindow::parse(5, "1,4,inf").unwrap(), &s), Ok(true));
        assert_eq!(window_contains(&ShapeWindow::parse(5, "1,4,7.5").unwrap(), &s), Ok(false));
        assert!(ShapeWindow::parse(5, "1,4").is_err());
        assert!(ShapeWindow::parse(3, "2,2").is_err());
        assert!(ShapeWindow::parse(3, "1/2,2").is_err());
        assert_eq!(ShapeWindow::parse(3, "1,5/2").unwrap().to_string(), "1,5/2");
    }

    #[test]
    fn minkowski_matches_closed_form() {
        for a in [[2u64, 1], [10, 1], [6, 5]] {
            let f = field(3, &a);
            let num = minkowski_gram::<f64>(&f, &f.integral_basis(), 64);
            let exact = gram_full(&f).to_real::<f64>(64);
            for i in 0..3 {
                for j in 0..3 {
                    assert!((num[(i, j)] - exact[(i, j)]).abs() < 1e-9 * (1.0 + exact[(i, j)].abs()));
                }
            }
        }
    }

    #[test]
    fn f32_gram_is_usable() {
        let f = field(3, &[2, 1]);
        let g = gram_wild(&f).to_real::<f32>(64);
        assert!((g.det_lu() - 108.0).abs() < 1e-3);
    }
}
