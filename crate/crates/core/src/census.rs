//! Enumeration of strongly carefree tuples and counts of pure fields by
//! discriminant bound and shape window.

use std::cmp::Ordering;

use num_integer::Roots;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd, mod_inverse, mod_pow, require_odd_prime, squarefree_table};
use crate::densities::{constants_from, euler_product, Normalization, PredictedConstants, DEFAULT_EULER_Y};
use crate::determinants::{jacobian_det, maillet_class_number, shape_exponent};
use crate::fields::{Ramification, ScTuple};
use crate::measure::measure_window;
use crate::shapes::{lambda_p_of, ShapeVector, ShapeWindow};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeFilter {
    Wild,
    Tame,
    Both,
}

impl TypeFilter {
    pub fn admits(self, r: Ramification) -> bool {
        matches!(
            (self, r),
            (Self::Both, _) | (Self::Wild, Ramification::Wild) | (Self::Tame, Ramification::Tame)
        )
    }
}

/// Tuples with `prod a_i <= n_bound`, optionally restricted by shape and type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSpec {
    pub p: u64,
    pub n_bound: u64,
    pub window: Option<ShapeWindow>,
    pub type_filter: TypeFilter,
}

/// Lexicographic iterator over strongly carefree tuples with `prod a_i <= N`,
/// excluding the all-ones tuple.
pub struct TupleIter {
    p: u64,
    bound: u64,
    squarefree: Vec<bool>,
    a: Vec<u64>,
    // prefix[k] = a_1 ... a_k
    prefix: Vec<u64>,
    done: bool,
}

pub fn enumerate_tuples(p: u64, n: u64) -> Result<TupleIter> {
    require_odd_prime(p)?;
    let len = (p - 1) as usize;
    Ok(TupleIter {
        p,
        bound: n,
        squarefree: squarefree_table(n.max(1)),
        a: vec![1; len],
        prefix: vec![1; len + 1],
        done: n < 2,
    })
}

impl Iterator for TupleIter {
    type Item = ScTuple;

    fn next(&mut self) -> Option<ScTuple> {
        if self.done {
            return None;
        }
        let len = self.a.len();
        for k in (0..len).rev() {
            let pre = self.prefix[k];
            let mut v = self.a[k] + 1;
            while pre.saturating_mul(v) <= self.bound {
                if self.squarefree[v as usize] && gcd(v, pre) == 1 {
                    self.a[k] = v;
                    for t in k + 1..len {
                        self.a[t] = 1;
                    }
                    for t in k..len {
                        self.prefix[t + 1] = self.prefix[t] * self.a[t];
                    }
                    return Some(ScTuple::new_unchecked(self.p, self.a.clone()));
                }
                v += 1;
            }
        }
        self.done = true;
        None
    }
}

/// Largest `N` with `p^e N^(p-1) <= X`, where `e = p` (wild) or `p - 2` (tame).
pub fn radicand_bound(p: u64, x: u128, r: Ramification) -> u64 {
    let e = match r {
        Ramification::Wild => p,
        Ramification::Tame => p - 2,
    };
    let pe = (p as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
    let q = x / pe;
    let n = q.nth_root((p - 1) as u32);
    u64::try_from(n).unwrap_or(u64::MAX)
}

/// Real radicand bound `(X / p^e)^(1/(p-1))`.
pub fn disc_bound_to_radicand_bound(p: u64, x: f64, r: Ramification) -> Result<f64> {
    require_odd_prime(p)?;
    let pf = p as f64;
    if x < pf.powi(p as i32 - 2) {
        return Err(Error::BoundTooSmall);
    }
    let e = match r {
        Ramification::Wild => p as i32,
        Ramification::Tame => p as i32 - 2,
    };
    Ok((x / pf.powi(e)).powf(1.0 / (pf - 1.0)))
}

/// Default largest radicand bound for a census at degree `p`.
pub fn default_feasibility_limit(p: u64) -> u64 {
    let drop = ((p.saturating_sub(3)) / 2).min(4) as u32;
    10u64.pow(7 - drop)
}

#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    /// Worker threads; `None` uses the rayon default.
    pub workers: Option<usize>,
    /// Largest admissible radicand bound; `None` uses [`default_feasibility_limit`].
    pub feasibility_limit: Option<u64>,
    /// Euler product truncation; `None` uses the module default.
    pub euler_y: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub tuples_wild: u64,
    pub tuples_tame: u64,
    pub fields_wild: u64,
    pub fields_tame: u64,
}

impl Counts {
    fn add(&mut self, o: &Counts) {
        self.tuples_wild += o.tuples_wild;
        self.tuples_tame += o.tuples_tame;
        self.fields_wild += o.fields_wild;
        self.fields_tame += o.fields_tame;
    }

    fn bump(&mut self, r: Ramification, canonical: bool) {
        match r {
            Ramification::Wild => {
                self.tuples_wild += 1;
                self.fields_wild += canonical as u64;
            }
            Ramification::Tame => {
                self.tuples_tame += 1;
                self.fields_tame += canonical as u64;
            }
        }
    }
}

type Frac = (u128, u128);

fn frac_cmp(x: Frac, y: Frac) -> Option<Ordering> {
    Some(x.0.checked_mul(y.1)?.cmp(&y.0.checked_mul(x.1)?))
}

fn frac_of(q: &BigRational) -> Option<Frac> {
    Some((q.numer().to_u128()?, q.denom().to_u128()?))
}

#[derive(Clone, Debug)]
struct FastWindow {
    lower: Vec<Frac>,
    upper: Option<Frac>,
}

impl FastWindow {
    fn new(w: &ShapeWindow) -> Option<Self> {
        let lower = w.lower().iter().map(frac_of).collect::<Option<Vec<_>>>()?;
        let upper = match w.upper() {
            Some(u) => Some(frac_of(u)?),
            None => None,
        };
        Some(Self { lower, upper })
    }

    // Same conventions as ShapeWindow::contains_values.
    fn contains(&self, xs: &[Frac]) -> Option<bool> {
        if frac_cmp(xs[0], self.lower[0])? == Ordering::Less {
            return Some(false);
        }
        for (x, r) in xs.iter().zip(&self.lower).skip(1) {
            if frac_cmp(*x, *r)? != Ordering::Greater {
                return Some(false);
            }
        }
        for w in xs.windows(2) {
            if frac_cmp(w[0], w[1])? != Ordering::Less {
                return Some(false);
            }
        }
        match self.upper {
            Some(u) => Some(frac_cmp(*xs.last().unwrap(), u)? != Ordering::Greater),
            None => Some(true),
        }
    }
}

/// Shape parameters in machine integers, with an exact big-rational fallback.
struct ShapeEval {
    p: u64,
    // exps[j][i] = exponent of a_{i+1} / a_{p-i-1} in lambda_{j+1}^p
    exps: Vec<Vec<i64>>,
}

impl ShapeEval {
    fn new(p: u64) -> Self {
        let ell = ((p - 1) / 2) as i64;
        let exps = (1..=ell)
            .map(|j| (1..=ell).map(|i| shape_exponent(p as i64, i, j)).collect())
            .collect();
        Self { p, exps }
    }

    fn raw(&self, a: &[u64]) -> Option<Vec<Frac>> {
        let n = a.len();
        self.exps
            .iter()
            .map(|row| {
                let (mut num, mut den) = (1u128, 1u128);
                for (i, &e) in row.iter().enumerate() {
                    let (x, y) = if e > 0 { (a[i], a[n - 1 - i]) } else { (a[n - 1 - i], a[i]) };
                    let k = e.unsigned_abs() as u32;
                    num = num.checked_mul((x as u128).checked_pow(k)?)?;
                    den = den.checked_mul((y as u128).checked_pow(k)?)?;
                }
                Some((num, den))
            })
            .collect()
    }

    fn folded(&self, a: &[u64]) -> Option<Vec<Frac>> {
        let mut v: Vec<Frac> =
            self.raw(a)?.into_iter().map(|(n, d)| if n < d { (d, n) } else { (n, d) }).collect();
        for i in 1..v.len() {
            let mut k = i;
            while k > 0 && frac_cmp(v[k - 1], v[k])? == Ordering::Greater {
                v.swap(k - 1, k);
                k -= 1;
            }
        }
        Some(v)
    }

    /// Whether the folded shape of `a` lies in each window.
    fn in_windows(&self, a: &[u64], windows: &[Option<(ShapeWindow, Option<FastWindow>)>], out: &mut Vec<bool>) {
        out.clear();
        let fast = self.folded(a);
        let mut slow: Option<ShapeVector> = None;
        for w in windows {
            let hit = match w {
                None => true,
                Some((sw, fw)) => {
                    let quick = match (&fast, fw) {
                        (Some(xs), Some(fw)) => fw.contains(xs),
                        _ => None,
                    };
                    quick.unwrap_or_else(|| {
                        let s = slow.get_or_insert_with(|| {
                            ShapeVector::from_raw(self.p, &lambda_p_of(self.p, a)).expect("positive")
                        });
                        sw.contains_values(s.lambdas_p())
                    })
                }
            };
            out.push(hit);
        }
    }
}

struct Ctx<'a> {
    p: u64,
    p2: u64,
    bound_wild: u64,
    bound_tame: u64,
    bound: u64,
    filter: TypeFilter,
    squarefree: &'a [bool],
    kinv: Vec<u64>,
    shape: ShapeEval,
    windows: Vec<Option<(ShapeWindow, Option<FastWindow>)>>,
}

impl Ctx<'_> {
    fn ramification(&self, a: &[u64]) -> Ramification {
        let mut m = 1u64;
        for (i, &x) in a.iter().enumerate() {
            m = ((m as u128 * mod_pow(x, i as u64 + 1, self.p2) as u128) % self.p2 as u128) as u64;
        }
        if m % self.p != 0 && mod_pow(m, self.p - 1, self.p2) == 1 {
            Ramification::Tame
        } else {
            Ramification::Wild
        }
    }

    fn is_canonical(&self, a: &[u64]) -> bool {
        let p = self.p;
        for &kinv in &self.kinv[2..] {
            for i in 1..p {
                let x = a[((i * kinv) % p - 1) as usize];
                match x.cmp(&a[(i - 1) as usize]) {
                    Ordering::Equal => continue,
                    Ordering::Less => return false,
                    Ordering::Greater => break,
                }
            }
        }
        true
    }

    fn process(&self, a: &[u64], product: u64, acc: &mut [Counts], scratch: &mut Vec<bool>) {
        if product == 1 {
            return;
        }
        let r = self.ramification(a);
        let limit = match r {
            Ramification::Wild => self.bound_wild,
            Ramification::Tame => self.bound_tame,
        };
        if product > limit || !self.filter.admits(r) {
            return;
        }
        let canonical = self.is_canonical(a);
        self.shape.in_windows(a, &self.windows, scratch);
        for (hit, c) in scratch.iter().zip(acc.iter_mut()) {
            if *hit {
                c.bump(r, canonical);
            }
        }
    }

    fn visit(&self, a: &mut [u64], k: usize, prefix: u64, acc: &mut [Counts], scratch: &mut Vec<bool>) {
        if k == a.len() {
            self.process(a, prefix, acc, scratch);
            return;
        }
        let max = self.bound / prefix;
        for v in 1..=max {
            if self.squarefree[v as usize] && (v == 1 || gcd(v, prefix) == 1) {
                a[k] = v;
                self.visit(a, k + 1, prefix * v, acc, scratch);
            }
        }
        a[k] = 1;
    }
}

fn run_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        _ => f(),
    }
}

/// Counts per window; `None` counts every shape.
fn census_counts(
    p: u64,
    bound_wild: u64,
    bound_tame: u64,
    filter: TypeFilter,
    windows: &[Option<ShapeWindow>],
    opts: &CensusOptions,
) -> Result<Vec<Counts>> {
    require_odd_prime(p)?;
    for w in windows.iter().flatten() {
        if w.p() != p {
            return Err(Error::PrimeMismatch(p, w.p()));
        }
    }
    let bound = match filter {
        TypeFilter::Wild => bound_wild,
        TypeFilter::Tame => bound_tame,
        TypeFilter::Both => bound_wild.max(bound_tame),
    };
    let limit = opts.feasibility_limit.unwrap_or_else(|| default_feasibility_limit(p));
    if bound > limit {
        return Err(Error::InfeasibleBound(bound, limit));
    }
    if bound < 2 {
        return Ok(vec![Counts::default(); windows.len()]);
    }
    let squarefree = squarefree_table(bound);
    let ctx = Ctx {
        p,
        p2: p * p,
        bound_wild,
        bound_tame,
        bound,
        filter,
        squarefree: &squarefree,
        kinv: (0..p).map(|k| if k == 0 { 0 } else { mod_inverse(k, p).unwrap() }).collect(),
        shape: ShapeEval::new(p),
        windows: windows.iter().map(|w| w.as_ref().map(|w| (w.clone(), FastWindow::new(w)))).collect(),
    };
    let len = (p - 1) as usize;
    let zero = vec![Counts::default(); windows.len()];
    let merge = |mut x: Vec<Counts>, y: Vec<Counts>| {
        x.iter_mut().zip(&y).for_each(|(a, b)| a.add(b));
        x
    };
    let counts = run_pool(opts.workers, || {
        (1..=bound)
            .into_par_iter()
            .filter(|&a1| squarefree[a1 as usize])
            .fold(
                || (zero.clone(), vec![1u64; len], Vec::new()),
                |(mut acc, mut a, mut scratch), a1| {
                    a[0] = a1;
                    ctx.visit(&mut a, 1, a1, &mut acc, &mut scratch);
                    (acc, a, scratch)
                },
            )
            .map(|(acc, _, _)| acc)
            .reduce(|| zero.clone(), merge)
    });
    Ok(counts)
}

/// Counts for a region given directly by its radicand bound.
pub fn count_region(spec: &RegionSpec, opts: &CensusOptions) -> Result<Counts> {
    let w = [spec.window.clone()];
    Ok(census_counts(spec.p, spec.n_bound, spec.n_bound, spec.type_filter, &w, opts)?[0])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypePair {
    pub wild: Option<f64>,
    pub tame: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ByNormalization {
    #[serde(rename = "theorem_c")]
    pub constant: TypePair,
    #[serde(rename = "section6")]
    pub final_count: TypePair,
}

/// Counts of fields with `|Delta| <= X` and shape in a window, alongside
/// the predicted main terms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub p: u64,
    #[serde(rename = "X")]
    pub x: f64,
    pub window: Option<ShapeWindow>,
    pub radicand_bound_wild: u64,
    pub radicand_bound_tame: u64,
    pub tuple_count_wild: u64,
    pub tuple_count_tame: u64,
    pub field_count_wild: u64,
    pub field_count_tame: u64,
    /// `mu(W)`; absent for unbounded windows.
    pub measure: Option<f64>,
    pub predicted: ByNormalization,
    /// Field count over predicted value.
    pub ratios: ByNormalization,
    pub euler_truncation_y: u64,
    pub euler_tail_bound: f64,
}

/// Empirical and predicted count ratios between two windows of a scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairwiseRatio {
    pub first: usize,
    pub second: usize,
    /// `mu(W_first) / mu(W_second)`.
    pub predicted: Option<f64>,
    pub empirical_wild: Option<f64>,
    pub empirical_tame: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Scan {
    pub reports: Vec<CensusReport>,
    pub pairwise: Vec<PairwiseRatio>,
}

/// Floors a real discriminant bound to an integer.
fn x_floor(x: f64) -> u128 {
    if !(x >= 0.0) {
        0
    } else if x >= u128::MAX as f64 {
        u128::MAX
    } else {
        x.floor() as u128
    }
}

pub fn count(p: u64, x: f64, window: Option<ShapeWindow>, opts: &CensusOptions) -> Result<CensusReport> {
    Ok(equidistribution_scan(p, x, &[window], opts)?.reports.remove(0))
}

/// One pass over the tuples, counted against every window.
pub fn equidistribution_scan(
    p: u64,
    x: f64,
    windows: &[Option<ShapeWindow>],
    opts: &CensusOptions,
) -> Result<Scan> {
    require_odd_prime(p)?;
    let xi = x_floor(x);
    let bw = radicand_bound(p, xi, Ramification::Wild);
    let bt = radicand_bound(p, xi, Ramification::Tame);
    let counts = census_counts(p, bw, bt, TypeFilter::Both, windows, opts)?;

    let euler = euler_product(p, opts.euler_y.unwrap_or(DEFAULT_EULER_Y))?;
    let h = maillet_class_number(p)?.h_minus.to_f64().unwrap_or(f64::INFINITY);
    let consts: Vec<PredictedConstants> =
        Normalization::ALL.iter().map(|&n| constants_from(p, &euler, h, n)).collect();

    let measures: Vec<Option<f64>> = windows
        .iter()
        .map(|w| w.as_ref().filter(|w| w.is_bounded()).map(measure_window))
        .collect();

    let reports = windows
        .iter()
        .zip(&counts)
        .zip(&measures)
        .map(|((w, c), mu)| {
            let pred = |k: usize| TypePair {
                wild: mu.map(|m| consts[k].predict(Ramification::Wild, x, m)),
                tame: mu.map(|m| consts[k].predict(Ramification::Tame, x, m)),
            };
            let ratio = |t: &TypePair| TypePair {
                wild: t.wild.filter(|v| *v > 0.0).map(|v| c.fields_wild as f64 / v),
                tame: t.tame.filter(|v| *v > 0.0).map(|v| c.fields_tame as f64 / v),
            };
            let predicted = ByNormalization { constant: pred(0), final_count: pred(1) };
            let ratios = ByNormalization {
                constant: ratio(&predicted.constant),
                final_count: ratio(&predicted.final_count),
            };
            CensusReport {
                p,
                x,
                window: w.clone(),
                radicand_bound_wild: bw,
                radicand_bound_tame: bt,
                tuple_count_wild: c.tuples_wild,
                tuple_count_tame: c.tuples_tame,
                field_count_wild: c.fields_wild,
                field_count_tame: c.fields_tame,
                measure: *mu,
                predicted,
                ratios,
                euler_truncation_y: euler.truncation_y,
                euler_tail_bound: euler.tail_bound,
            }
        })
        .collect::<Vec<_>>();

    let div = |a: u64, b: u64| (b > 0).then(|| a as f64 / b as f64);
    let mut pairwise = Vec::new();
    for i in 0..reports.len() {
        for j in i + 1..reports.len() {
            pairwise.push(PairwiseRatio {
                first: i,
                second: j,
                predicted: match (measures[i], measures[j]) {
                    (Some(a), Some(b)) if b > 0.0 => Some(a / b),
                    _ => None,
                },
                empirical_wild: div(reports[i].field_count_wild, reports[j].field_count_wild),
                empirical_tame: div(reports[i].field_count_tame, reports[j].field_count_tame),
            });
        }
    }
    Ok(Scan { reports, pairwise })
}

/// `(N - 1) log^(l-1)(N) mu(W) / |det J_p|`, the volume of the real region
/// `{a_i >= 1, prod a_i <= N}` with unsorted `lambda^p` in the window.
pub fn region_volume_prediction(p: u64, n: f64, w: &ShapeWindow) -> Result<f64> {
    require_odd_prime(p)?;
    if w.p() != p {
        return Err(Error::PrimeMismatch(p, w.p()));
    }
    if n <= 1.0 {
        return Ok(0.0);
    }
    let c = jacobian_det(p)?.to_f64().unwrap_or(f64::INFINITY).abs();
    let ell = ((p - 1) / 2) as i32;
    Ok((n - 1.0) * n.ln().powi(ell - 1) * measure_window(w) / c)
}

/// Integer points of the same region: every tuple of positive integers with
/// `prod a_i <= N` whose `lambda^p`, taken in index order, satisfy the window
/// inequalities. No carefree condition is imposed.
pub fn region_lattice_count(p: u64, n: u64, w: &ShapeWindow) -> Result<u64> {
    require_odd_prime(p)?;
    let shape = ShapeEval::new(p);
    let fast = FastWindow::new(w);
    let mut a = vec![1u64; (p - 1) as usize];
    let mut count = 0u64;
    fn rec(
        a: &mut [u64],
        k: usize,
        prefix: u64,
        n: u64,
        f: &mut dyn FnMut(&[u64]),
    ) {
        if k == a.len() {
            f(a);
            return;
        }
        for v in 1..=n / prefix {
            a[k] = v;
            rec(a, k + 1, prefix * v, n, f);
        }
        a[k] = 1;
    }
    let p_ = p;
    rec(&mut a, 0, 1, n, &mut |t: &[u64]| {
        let hit = match (shape.raw(t), &fast) {
            (Some(xs), Some(fw)) => fw.contains(&xs),
            _ => None,
        }
        .unwrap_or_else(|| w.contains_values(&lambda_p_of(p_, t)));
        count += hit as u64;
    });
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{canonicalize, validate};
    use crate::shapes::{shape_params, window_contains};
    use std::collections::HashSet;

    fn tuples(p: u64, n: u64) -> Vec<Vec<u64>> {
        enumerate_tuples(p, n).unwrap().map(|t| t.a().to_vec()).collect()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            tuples(3, 5),
            vec![vec![1, 2], vec![1, 3], vec![1, 5], vec![2, 1], vec![3, 1], vec![5, 1]]
        );
        assert!(tuples(3, 1).is_empty());
        assert_eq!(
            tuples(5, 2),
            vec![vec![1, 1, 1, 2], vec![1, 1, 2, 1], vec![1, 2, 1, 1], vec![2, 1, 1, 1]]
        );
    }

    #[test]
    fn enumeration_is_valid_and_unique() {
        for (p, n) in [(3u64, 300u64), (5, 60), (7, 30)] {
            let all = tuples(p, n);
            let set: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
            let mut sorted = all.clone();
            sorted.sort();
            assert_eq!(sorted, all, "lexicographic order");
            for t in &all {
                assert!(validate(p, t).is_ok());
                assert!(t.iter().product::<u64>() <= n);
            }
            // oracle: filter the full box
            let mut brute = 0;
            let len = (p - 1) as usize;
            let mut a = vec![1u64; len];
            loop {
                if a.iter().product::<u64>() <= n && validate(p, &a).is_ok() {
                    brute += 1;
                }
                let mut k = 0;
                while k < len {
                    a[k] += 1;
                    if a[k] <= n {
                        break;
                    }
                    a[k] = 1;
                    k += 1;
                }
                if k == len {
                    break;
                }
            }
            assert_eq!(brute, all.len(), "p={p} n={n}");
        }
    }

    #[test]
    fn radicand_bounds() {
        assert_eq!(radicand_bound(3, 10_000, Ramification::Wild), 19);
        assert_eq!(radicand_bound(3, 10_000, Ramification::Tame), 57);
        assert_eq!(radicand_bound(3, 27, Ramification::Wild), 1);
        let x = disc_bound_to_radicand_bound(3, 1e4, Ramification::Wild).unwrap();
        assert!((x - 19.245).abs() < 1e-3);
        let x = disc_bound_to_radicand_bound(3, 1e4, Ramification::Tame).unwrap();
        assert!((x - 57.735).abs() < 1e-3);
        assert_eq!(disc_bound_to_radicand_bound(3, 27.0, Ramification::Wild).unwrap(), 1.0);
        assert_eq!(disc_bound_to_radicand_bound(3, 2.0, Ramification::Wild), Err(Error::BoundTooSmall));
    }

    #[test]
    fn small_census_against_oracle() {
        // every tuple checked through the field API
        for (p, x) in [(3u64, 1e6), (5, 1e9)] {
            let w = if p == 3 { ShapeWindow::parse(3, "1,4").unwrap() } else { ShapeWindow::parse(5, "1,3,50").unwrap() };
            let c = count(p, x, Some(w.clone()), &CensusOptions::default()).unwrap();
            let mut oracle = Counts::default();
            let xi = x as u128;
            let nmax = radicand_bound(p, xi, Ramification::Tame);
            for t in enumerate_tuples(p, nmax).unwrap() {
                if t.abs_discriminant() > num_bigint::BigUint::from(xi) {
                    continue;
                }
                let f = canonicalize(&t);
                if !window_contains(&w, &shape_params(&f)).unwrap() {
                    continue;
                }
                oracle.bump(t.ramification(), f.tuple() == &t);
            }
            assert_eq!(
                (c.tuple_count_wild, c.tuple_count_tame, c.field_count_wild, c.field_count_tame),
                (oracle.tuples_wild, oracle.tuples_tame, oracle.fields_wild, oracle.fields_tame),
                "p = {p}"
            );
        }
    }

    #[test]
    fn thread_count_does_not_matter() {
        let w = vec![None, Some(ShapeWindow::parse(3, "1,2").unwrap())];
        let one = equidistribution_scan(3, 1e8, &w, &CensusOptions { workers: Some(1), ..Default::default() }).unwrap();
        let four = equidistribution_scan(3, 1e8, &w, &CensusOptions { workers: Some(4), ..Default::default() }).unwrap();
        assert_eq!(one, four);
        for r in &one.reports {
            assert_eq!(r.tuple_count_wild, 2 * r.field_count_wild);
            assert_eq!(r.tuple_count_tame, 2 * r.field_count_tame);
        }
    }

    #[test]
    fn tiny_bounds() {
        let c = count(3, 1.0, None, &CensusOptions::default()).unwrap();
        assert_eq!((c.tuple_count_wild, c.tuple_count_tame), (0, 0));
        let err = count(3, 1e20, None, &CensusOptions::default()).unwrap_err();
        assert!(matches!(err, Error::InfeasibleBound(_, _)));
    }

    #[test]
    fn volume_prediction_p3() {
        let w = ShapeWindow::parse(3, "1,4").unwrap();
        let v = region_volume_prediction(3, 1e4, &w).unwrap();
        assert!((v - (1e4 - 1.0) * 4f64.ln() / 2.0).abs() < 1e-9);
        assert_eq!(region_volume_prediction(3, 1.0, &w).unwrap(), 0.0);
        let n = region_lattice_count(3, 10_000, &w).unwrap() as f64;
        assert!((n - v).abs() < 3.0 * 1e4f64.sqrt(), "{n} vs {v}");
    }
}
