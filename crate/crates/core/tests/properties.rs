use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use pure_shapes::arith::is_squarefree;
use pure_shapes::census::{
    count, enumerate_tuples, equidistribution_scan, region_lattice_count, region_volume_prediction, CensusOptions,
};
use pure_shapes::densities::euler_product;
use pure_shapes::determinants::{jacobian_exponent_matrix, jacobian_reduction};
use pure_shapes::fields::{canonicalize, factor_radicand, validate};
use pure_shapes::linalg::Matrix;
use pure_shapes::measure::{measure_closed_form, measure_quadrature, measure_window};
use pure_shapes::shapes::{
    gram_tame, gram_wild, normalized_shape_gram, shape_params, shapes_equal, tame_change_matrix,
};
use pure_shapes::{PureField, RadicalMonomial, Ramification, ScTuple, ShapeWindow};

fn tuple_strategy(p: u64) -> impl Strategy<Value = ScTuple> {
    let slot = prop_oneof![Just(1u64), 2u64..40];
    proptest::collection::vec(slot, (p - 1) as usize)
        .prop_filter_map("not strongly carefree", move |a| validate(p, &a).ok())
}

fn any_tuple() -> impl Strategy<Value = ScTuple> {
    prop_oneof![tuple_strategy(3), tuple_strategy(5), tuple_strategy(7)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn discriminant_sign_and_power(t in any_tuple()) {
        let p = t.p();
        let d = t.discriminant();
        let sign = if (p - 1) / 2 % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(d.signum(), BigInt::from(sign));
        let abs = d.abs();
        let pp2 = num_traits::pow(BigInt::from(p), (p - 2) as usize);
        let pp = num_traits::pow(BigInt::from(p), p as usize);
        prop_assert!((&abs % &pp2).is_zero());
        let wild = t.ramification() == Ramification::Wild;
        prop_assert_eq!((&abs % &pp).is_zero(), wild);
        // and not by a higher power of p than the type allows
        let (e, _) = (0..).map(|k| (k, num_traits::pow(BigInt::from(p), k))).take_while(|(_, q)| (&abs % q).is_zero()).last().unwrap();
        let in_a = t.a().iter().any(|&x| x % p == 0) as usize;
        prop_assert_eq!(e, if wild { p as usize } else { p as usize - 2 } + in_a * (p as usize - 1));
    }

    #[test]
    fn orbit_structure(t in any_tuple()) {
        let p = t.p();
        let orbit = t.orbit();
        prop_assert_eq!((p - 1) as usize % orbit.len(), 0);
        let stabilizer = (1..p).filter(|&k| t.act(k) == t).count();
        prop_assert_eq!(orbit.len() * stabilizer, (p - 1) as usize);
        let canon = canonicalize(&t);
        for u in &orbit {
            prop_assert_eq!(canonicalize(u).tuple().clone(), canon.tuple().clone());
            prop_assert_eq!(u.ramification(), t.ramification());
            prop_assert_eq!(u.abs_discriminant(), t.abs_discriminant());
        }
    }

    #[test]
    fn shape_is_orbit_invariant(t in any_tuple(), k in 1u64..7) {
        let k = 1 + (k - 1) % (t.p() - 1);
        let f = PureField::from_generator(t.clone());
        let g = PureField::from_generator(t.act(k));
        prop_assert_eq!(shape_params(&f), shape_params(&g));
        prop_assert!(shapes_equal(&f, &g).unwrap());
    }

    #[test]
    fn gamma_powers_are_integers(t in any_tuple()) {
        let f = PureField::from_generator(t);
        for j in 1..f.p() as usize {
            let g: RadicalMonomial = f.gamma(j);
            let gp = g.pow_p();
            prop_assert!(gp.is_integer());
            prop_assert!(gp.is_positive());
        }
    }

    #[test]
    fn radicand_round_trip(t in any_tuple()) {
        let m = t.m().to_u128();
        prop_assume!(m.is_some());
        prop_assert_eq!(factor_radicand(t.p(), m.unwrap()).unwrap(), t);
    }

    #[test]
    fn wild_shape_has_unit_determinant(t in any_tuple()) {
        let f = PureField::from_generator(t);
        let s = shape_params(&f);
        let prod = s.full_diagonal_p().iter().fold(BigRational::one(), |a, x| a * x);
        prop_assert!(prod.is_one());
        if f.ramification() == Ramification::Wild {
            let g = normalized_shape_gram(&f);
            prop_assert!(g.is_diagonal());
            let diag = (0..g.dim()).map(|i| g.entry(i, i).as_monomial().unwrap().pow_p());
            prop_assert!(diag.fold(BigRational::one(), |a, x| a * x).is_one());
        }
    }

    #[test]
    fn tame_gram_numeric(t in any_tuple().prop_filter("tame", |t| t.ramification() == Ramification::Tame)) {
        let f = PureField::from_generator(t);
        let c = tame_change_matrix(&f).unwrap().map(|x| x.to_f64().unwrap());
        let w = gram_wild(&f).to_real::<f64>(53);
        let direct = c.mul(&w).mul(&c.transpose());
        let exact = gram_tame(&f).unwrap().to_real::<f64>(53);
        for i in 0..direct.rows() {
            for j in 0..direct.cols() {
                let (x, y) = (direct[(i, j)], exact[(i, j)]);
                prop_assert!((x - y).abs() <= 1e-12 * y.abs().max(1.0), "{} {} {} {}", i, j, x, y);
            }
        }
    }

    #[test]
    fn measure_agrees_with_quadrature(
        pts in proptest::collection::btree_set(100u32..10_000, 4),
        ell in 1usize..4,
    ) {
        let v: Vec<BigRational> = pts.into_iter().map(|x| BigRational::new(x.into(), 100.into())).collect();
        let p = 2 * ell as u64 + 1;
        let w = ShapeWindow::new(p, v[..ell].to_vec(), Some(v[ell].clone())).unwrap();
        let c = measure_closed_form(&w).unwrap();
        let q = measure_quadrature(&w, 1e-12);
        prop_assert!((c - q).abs() <= 1e-6 * c.max(1e-12), "{} vs {}", c, q);
    }
}

#[test]
fn canonicalization_constant_on_orbits_exhaustive() {
    for p in [3u64, 5, 7] {
        for t in enumerate_tuples(p, 200).unwrap() {
            let canon = canonicalize(&t);
            assert!(canon.tuple().is_canonical());
            for u in t.orbit() {
                assert_eq!(canonicalize(&u).tuple(), canon.tuple());
            }
        }
    }
}

#[test]
fn radicand_round_trip_exhaustive() {
    for p in [3u64, 5] {
        for m in 2u128..=10_000 {
            let free = (2..).take_while(|d: &u128| d.pow(p as u32) <= m).all(|d| m % d.pow(p as u32) != 0);
            match factor_radicand(p, m) {
                Ok(t) => {
                    assert!(free);
                    assert_eq!(t.m(), BigUint::from(m));
                }
                Err(_) => assert!(!free, "p={p} m={m}"),
            }
        }
    }
}

#[test]
fn shapes_equal_iff_same_field() {
    for p in [3u64, 5] {
        let fields: Vec<PureField> = enumerate_tuples(p, 300)
            .unwrap()
            .filter(|t| t.is_canonical())
            .map(PureField::from_generator)
            .collect();
        let keys: Vec<_> = fields.iter().map(|f| (f.ramification(), shape_params(f))).collect();
        let distinct: HashSet<_> = keys.iter().collect();
        assert_eq!(distinct.len(), fields.len(), "p = {p}");
        // spot the equality predicate on neighbours in shape order
        let mut order: Vec<usize> = (0..fields.len()).collect();
        order.sort_by(|&i, &j| keys[i].1.cmp(&keys[j].1));
        for w in order.windows(2) {
            assert!(!shapes_equal(&fields[w[0]], &fields[w[1]]).unwrap());
        }
        for f in &fields {
            assert!(shapes_equal(f, f).unwrap());
        }
    }
}

#[test]
fn jacobian_columns_and_reduction() {
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
        let c = jacobian_exponent_matrix(p).unwrap();
        let n = c.rows();
        for j in 0..n {
            let s: BigInt = (0..n).map(|i| c[(i, j)].clone()).sum();
            assert!(s.is_one(), "p = {p}, column {j}");
        }
        if p <= 13 {
            let [a, b, d] = jacobian_reduction(p).unwrap();
            let (x, y, z) = (a.det_bareiss(), b.det_bareiss(), d.det_bareiss());
            assert!(x == y && y == z, "p = {p}");
        }
    }
}

#[test]
fn euler_product_converges() {
    for p in [3u64, 5, 7] {
        for y in [100u64, 1000, 10_000] {
            let a = euler_product(p, y).unwrap().value;
            let b = euler_product(p, 2 * y).unwrap().value;
            let n2 = ((p - 1) * (p - 1)) as f64;
            let bound: f64 = (y + 1..=2 * y)
                .filter(|&q| pure_shapes::arith::is_prime(q))
                .map(|q| n2 / (q * q) as f64)
                .sum();
            assert!((a - b).abs() <= bound, "p={p} Y={y}");
        }
    }
}

#[test]
fn enumeration_respects_bounds() {
    for (p, n) in [(3u64, 2000u64), (5, 200), (7, 60)] {
        let mut seen = HashSet::new();
        for t in enumerate_tuples(p, n).unwrap() {
            assert!(t.a().iter().all(|&x| is_squarefree(x)));
            assert!(t.product() <= n as u128);
            assert!(validate(p, t.a()).is_ok());
            assert!(seen.insert(t));
        }
    }
}

#[test]
fn census_tuple_field_relations() {
    for x in [1e3, 1e5, 1e7, 1e9] {
        let r = count(3, x, None, &CensusOptions::default()).unwrap();
        assert_eq!(r.tuple_count_wild, 2 * r.field_count_wild);
        assert_eq!(r.tuple_count_tame, 2 * r.field_count_tame);
    }
    for (p, x) in [(5u64, 1e10), (7, 1e14)] {
        let r = count(p, x, None, &CensusOptions::default()).unwrap();
        for (t, f) in [(r.tuple_count_wild, r.field_count_wild), (r.tuple_count_tame, r.field_count_tame)] {
            assert!(f <= t && t <= (p - 1) * f, "p={p}: {t} tuples, {f} fields");
        }
    }
}

#[test]
fn census_below_threshold_is_empty() {
    let r = count(3, 26.0, None, &CensusOptions::default()).unwrap();
    assert_eq!([r.tuple_count_wild, r.tuple_count_tame, r.field_count_wild, r.field_count_tame], [0; 4]);
}

#[test]
fn census_micro_example_wild() {
    let w = ShapeWindow::parse(3, "1,inf").unwrap();
    let r = count(3, 675.0, Some(w), &CensusOptions::default()).unwrap();
    assert_eq!((r.tuple_count_wild, r.field_count_wild), (6, 3));
    // (10,1), (1,10), (2,7), (7,2): |Delta| = 300 and 588
    assert_eq!((r.tuple_count_tame, r.field_count_tame), (4, 2));
    for m in [10u128, 98] {
        let f = canonicalize(&factor_radicand(3, m).unwrap());
        assert_eq!(f.ramification(), Ramification::Tame);
        assert!(f.disc().abs() <= BigInt::from(675));
    }
}

#[test]
fn census_thread_count_independent() {
    let w: Vec<_> = ["1,2", "1,3,inf"]
        .iter()
        .map(|s| ShapeWindow::parse(5, s).ok())
        .collect();
    let base = equidistribution_scan(5, 1e12, &w, &CensusOptions { workers: Some(1), ..Default::default() }).unwrap();
    for n in [2, 3, 8] {
        let other =
            equidistribution_scan(5, 1e12, &w, &CensusOptions { workers: Some(n), ..Default::default() }).unwrap();
        assert_eq!(base, other);
    }
}

#[test]
fn scan_pairwise_ratios() {
    let w: Vec<_> = ["1,2", "1,4", "1,2"].iter().map(|s| ShapeWindow::parse(3, s).ok()).collect();
    let scan = equidistribution_scan(3, 1e8, &w, &CensusOptions::default()).unwrap();
    let first = &scan.pairwise[0];
    assert!((first.predicted.unwrap() - 0.5).abs() < 1e-15);
    let same = scan.pairwise.iter().find(|r| r.first == 0 && r.second == 2).unwrap();
    assert_eq!(same.predicted, Some(1.0));
    assert_eq!(same.empirical_wild, Some(1.0));
    assert_eq!(same.empirical_tame, Some(1.0));
}

#[test]
fn lattice_count_approaches_volume() {
    let w = ShapeWindow::parse(3, "1,4").unwrap();
    let mut errs = Vec::new();
    for n in [1_000u64, 10_000, 100_000] {
        let lattice = region_lattice_count(3, n, &w).unwrap() as f64;
        let vol = region_volume_prediction(3, n as f64, &w).unwrap();
        let ratio = lattice / vol;
        assert!((lattice - vol).abs() <= 3.0 * (n as f64).sqrt(), "N={n}: {lattice} vs {vol}");
        errs.push((ratio - 1.0).abs());
    }
    assert!(errs[2] <= errs[0], "{errs:?}");
}

#[test]
fn measure_limits() {
    let w = ShapeWindow::parse(3, "1,inf").unwrap();
    assert_eq!(measure_window(&w), f64::INFINITY);
    let a = measure_window(&ShapeWindow::parse(3, "1,2").unwrap());
    let b = measure_window(&ShapeWindow::parse(3, "2,6").unwrap());
    let c = measure_window(&ShapeWindow::parse(3, "1,6").unwrap());
    assert!((a + b - c).abs() < 1e-15);
}

#[test]
fn matrices_generic_over_scalar() {
    let m32: Matrix<f32> = Matrix::from_fn(3, 3, |i, j| if i == j { 2.0 } else { 0.5 });
    let m64: Matrix<f64> = m32.map(|&x| x as f64);
    assert!((m32.det_lu() as f64 - m64.det_lu()).abs() < 1e-5);
    let t = validate(3, &[2, 1]).unwrap();
    let f = PureField::from_generator(t);
    let g32 = gram_wild(&f).to_real::<f32>(24);
    let g64 = gram_wild(&f).to_real::<f64>(53);
    assert!((g32.det_lu() as f64 - g64.det_lu()).abs() / g64.det_lu() < 1e-5);
    assert!((g64.det_lu() - 108.0).abs() < 1e-10);
}
