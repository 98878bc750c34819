//! Self-checks of the exact identities, runnable from the command line.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::arith::primes_up_to;
use crate::census::enumerate_tuples;
use crate::densities::{delta_expansion, delta_q, delta_q_bruteforce};
use crate::determinants::{
    h_minus_analytic, jacobian_det, jacobian_reduction, maillet_class_number, shadow_jacobian_det,
};
use crate::fields::{canonicalize, PureField, Ramification};
use crate::linalg::Matrix;
use crate::shapes::{gram_tame, gram_tame_closed_form, lambda_p_from_basis, lambda_p_raw, shape_params, tame_change_matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Determinants,
    Densities,
    Shapes,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub identity: String,
    pub passed: bool,
    pub detail: String,
}

fn check(suite: &'static str, identity: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { suite, identity: identity.into(), passed, detail: detail.into() }
}

pub fn run(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Determinants => determinants(),
        Suite::Densities => densities(),
        Suite::Shapes => shapes(),
        Suite::All => {
            let mut v = determinants();
            v.extend(densities());
            v.extend(shapes());
            v
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

pub fn determinants() -> Vec<Check> {
    const S: &str = "determinants";
    let mut out = Vec::new();
    for p in primes_up_to(23).into_iter().filter(|&p| p > 2) {
        let det = jacobian_det(p).map(|d| d.abs());
        let h = maillet_class_number(p).map(|c| c.h_minus);
        let (passed, detail) = match (&det, &h) {
            (Ok(d), Ok(h)) => {
                let rhs = (BigInt::one() << (p - 2))
                    * num_traits::pow(BigInt::from(p), ((p - 3) / 2) as usize)
                    * BigInt::from(h.clone());
                (*d == rhs, format!("|det| = {d}, h- = {h}"))
            }
            _ => (false, format!("{det:?} {h:?}")),
        };
        out.push(check(S, format!("p = {p}: |det J| = 2^(p-2) p^((p-3)/2) h-"), passed, detail));
        let an = h_minus_analytic(p);
        let ok = matches!((&h, &an), (Ok(a), Ok(b)) if a == b);
        out.push(check(S, format!("p = {p}: Maillet h- equals analytic h-"), ok, format!("{an:?}")));
    }
    let h23 = maillet_class_number(23).map(|c| c.h_minus);
    out.push(check(S, "h-(23) = 3", h23 == Ok(BigUint::from(3u32)), format!("{h23:?}")));

    let five = jacobian_reduction(5).map(|[_, _, c]| {
        let block = Matrix::from_fn(2, 2, |i, j| c[(i, j + 2)].clone());
        (c.det_bareiss().abs(), block.det_bareiss().abs())
    });
    let ok = five == Ok((BigInt::from(40), BigInt::from(40)));
    out.push(check(S, "p = 5: |det| = 40 = 2^2 |det [[1,3],[-3,1]]|", ok, format!("{five:?}")));

    let bad: Vec<u64> = (2..=32)
        .step_by(2)
        .filter(|&d| shadow_jacobian_det(d) != Ok(BigInt::from(2)))
        .collect();
    out.push(check(S, "shadow determinant = 2 for even d <= 32", bad.is_empty(), format!("failures: {bad:?}")));
    out
}

pub fn densities() -> Vec<Check> {
    const S: &str = "densities";
    let mut out = Vec::new();
    for q in [2u64, 3, 5, 7] {
        for n in [2u32, 4, 6] {
            let bf = delta_q_bruteforce(q, n);
            let cf = delta_q(q, n);
            let ok = bf.as_ref() == Ok(&cf);
            out.push(check(S, format!("q = {q}, n = {n}: counted density = (q-1)^n (q+n) / q^(n+1)"), ok, format!("{cf}")));
        }
    }
    let e2 = delta_expansion(2);
    let e4 = delta_expansion(4);
    let want2: Vec<BigInt> = [1, 0, -3, 2].into_iter().map(BigInt::from).collect();
    let want4: Vec<BigInt> = [1, 0, -10, 20, -15, 4].into_iter().map(BigInt::from).collect();
    out.push(check(S, "n = 2: 1 - 3/q^2 + 2/q^3", e2 == want2, format!("{e2:?}")));
    out.push(check(S, "n = 4: 1 - 10/q^2 + 20/q^3 - 15/q^4 + 4/q^5", e4 == want4, format!("{e4:?}")));
    out
}

pub fn shapes() -> Vec<Check> {
    const S: &str = "shapes";
    let mut out = Vec::new();
    for (p, n) in [(3u64, 200u64), (5, 60), (7, 20)] {
        let mut bad = 0usize;
        let mut total = 0usize;
        let mut seen: HashMap<_, Vec<u64>> = HashMap::new();
        let mut collisions = 0usize;
        for t in enumerate_tuples(p, n).expect("odd prime") {
            total += 1;
            let f = PureField::from_generator(t.clone());
            if lambda_p_raw(&f) != lambda_p_from_basis(&f) {
                bad += 1;
            }
            let canon = canonicalize(&t);
            if shape_params(&f) != shape_params(&canon) {
                collisions += 1;
            }
            if t.is_canonical() {
                let key = (canon.ramification(), shape_params(&canon));
                if seen.insert(key, t.a().to_vec()).is_some() {
                    collisions += 1;
                }
            }
            if f.ramification() == Ramification::Tame {
                let direct = gram_tame(&f);
                let closed = gram_tame_closed_form(&f);
                let det_ok = tame_change_matrix(&f)
                    .map(|c| c.det_bareiss() == BigRational::new(1.into(), BigInt::from(p)))
                    .unwrap_or(false);
                if direct.is_err() || direct != closed || !det_ok {
                    bad += 1;
                }
            }
        }
        out.push(check(
            S,
            format!("p = {p}, prod a_i <= {n}: shape parameters from the basis agree with the closed form"),
            bad == 0,
            format!("{total} tuples, {bad} failures"),
        ));
        out.push(check(
            S,
            format!("p = {p}, prod a_i <= {n}: shapes constant on orbits and distinct across orbits"),
            collisions == 0,
            format!("{} fields, {collisions} collisions", seen.len()),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass() {
        for c in run(Suite::All) {
            assert!(c.passed, "{}: {} ({})", c.suite, c.identity, c.detail);
        }
    }
}
