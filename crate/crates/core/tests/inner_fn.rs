mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use shiftlab_core::inner_fn::{
    blaschke_eval, clark_inner_from_measure, clark_measure_from_blaschke, frostman_bound, frostman_shift, model_basis,
    AtomicMeasure, BlaschkeProduct,
};
use shiftlab_core::linalg::{max_abs, orthonormal_basis, projector, CMatrix};

use common::{bisection_atoms, c, derivative_weight, nearest};

fn random_blaschke_at_origin() -> impl Strategy<Value = BlaschkeProduct> {
    prop::collection::vec((0.0f64..0.85, 0.0f64..(2.0 * PI)), 0..6).prop_map(|zs| {
        let mut zeros = vec![(c(0.0, 0.0), 1)];
        zeros.extend(zs.into_iter().map(|(r, a)| (Complex64::from_polar(r.max(0.01), a), 1)));
        BlaschkeProduct::new(zeros).unwrap()
    })
}

fn random_blaschke() -> impl Strategy<Value = BlaschkeProduct> {
    prop::collection::vec((0.0f64..0.8, 0.0f64..(2.0 * PI)), 1..5).prop_map(|zs| {
        BlaschkeProduct::new(zs.into_iter().map(|(r, a)| (Complex64::from_polar(r, a), 1)).collect()).unwrap()
    })
}

fn random_measure() -> impl Strategy<Value = AtomicMeasure> {
    (1usize..=8)
        .prop_flat_map(|k| {
            (
                0.0f64..(2.0 * PI),
                prop::collection::vec(0.3f64..1.0, k),
                prop::collection::vec(0.05f64..1.0, k),
            )
        })
        .prop_map(|(start, gaps, weights)| {
            let gsum: f64 = gaps.iter().sum();
            let wsum: f64 = weights.iter().sum();
            let mut t = start;
            let mut atoms = Vec::new();
            for (g, w) in gaps.iter().zip(weights.iter()) {
                atoms.push((t / PI, w / wsum));
                t += 2.0 * PI * g / gsum;
            }
            AtomicMeasure::from_angles(&atoms).unwrap()
        })
}

#[test]
fn evaluation_examples() {
    let z = BlaschkeProduct::monomial(1);
    assert_eq!(blaschke_eval(&z, c(0.3, 0.2)), c(0.3, 0.2));
    let half = BlaschkeProduct::from_points(&[c(0.5, 0.0)]).unwrap();
    assert!((half.eval(c(0.0, 0.0)) - c(0.5, 0.0)).norm() < 1e-16);
    assert!((BlaschkeProduct::monomial(2).eval(c(0.0, 1.0)) - c(-1.0, 0.0)).norm() < 1e-16);
}

#[test]
fn frostman_examples() {
    let shifted = frostman_shift(|z| z, c(0.5, 0.0)).unwrap();
    assert!((shifted(c(1.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
    let a = c(0.3, 0.0);
    let sq = BlaschkeProduct::monomial(2);
    let th = frostman_shift(|z| sq.eval(z), a).unwrap();
    let sup = (0..2048)
        .map(|k| {
            let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 2048.0);
            (sq.eval(z) - th(z)).norm()
        })
        .fold(0.0, f64::max);
    assert!((frostman_bound(a) - 6.0 / 7.0).abs() < 1e-15);
    assert!(sup <= frostman_bound(a) + 1e-12);
    assert!(frostman_shift(|z| z, c(1.0, 0.0)).is_err());
}

#[test]
fn model_basis_examples() {
    let sq = model_basis(&BlaschkeProduct::monomial(2)).vector_coeffs(4);
    assert_eq!(sq[0], vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    assert_eq!(sq[1], vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let half = model_basis(&BlaschkeProduct::from_points(&[c(0.5, 0.0)]).unwrap()).vector_coeffs(12);
    for (k, v) in half[0].iter().enumerate() {
        let expect = 0.5f64.powi(k as i32) * 3f64.sqrt() / 2.0;
        assert!((v - c(expect, 0.0)).norm() < 1e-15);
    }
    // Gram-Schmidt of the kernels at 0 and 1/2 spans the same space
    let len = 80;
    let mixed = BlaschkeProduct::from_points(&[c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
    let basis = model_basis(&mixed).vector_coeffs(len);
    let got = CMatrix::from_fn(len, 2, |i, j| basis[j][i]);
    assert!(max_abs(&(got.adjoint() * &got - shiftlab_core::linalg::identity(2))) < 1e-12);
    let kernels = CMatrix::from_fn(len, 2, |i, j| if j == 0 { c((i == 0) as u8 as f64, 0.0) } else { c(0.5f64.powi(i as i32), 0.0) });
    let oracle = orthonormal_basis(&kernels, 1e-12);
    assert!(max_abs(&(projector(&oracle) - projector(&got))) < 1e-12);
}

#[test]
fn clark_inner_examples() {
    let cases: [(&[(f64, f64)], u32); 3] =
        [(&[(0.0, 1.0)], 1), (&[(0.0, 0.5), (1.0, 0.5)], 2), (&[(0.0, 1.0 / 3.0), (2.0 / 3.0, 1.0 / 3.0), (4.0 / 3.0, 1.0 / 3.0)], 3)];
    for (atoms, k) in cases {
        let nu = AtomicMeasure::from_angles(atoms).unwrap();
        let th = clark_inner_from_measure(&nu).unwrap();
        for z in [c(0.3, 0.1), c(-0.5, 0.4), c(0.0, -0.9)] {
            assert!((th.eval(z) - z.powu(k)).norm() < 1e-12);
            assert!((th.blaschke().eval(z) - z.powu(k)).norm() < 1e-12);
        }
    }
    assert!(clark_inner_from_measure(&AtomicMeasure::from_angles(&[(0.0, 0.6)]).unwrap()).is_err());
}

#[test]
fn clark_measure_examples() {
    let one = clark_measure_from_blaschke(&BlaschkeProduct::monomial(1)).unwrap();
    assert_eq!(one.atoms().len(), 1);
    assert!((one.atoms()[0].point - c(1.0, 0.0)).norm() < 1e-14 && (one.atoms()[0].weight - 1.0).abs() < 1e-14);
    let two = clark_measure_from_blaschke(&BlaschkeProduct::monomial(2)).unwrap();
    let pts: Vec<Complex64> = two.atoms().iter().map(|a| a.point).collect();
    assert!((pts[0] - c(1.0, 0.0)).norm() < 1e-14 && (pts[1] - c(-1.0, 0.0)).norm() < 1e-14);
    let zb = BlaschkeProduct::from_points(&[c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
    let nu = clark_measure_from_blaschke(&zb).unwrap();
    let oracle = bisection_atoms(&zb);
    assert_eq!(nu.atoms().len(), 2);
    for &t in &oracle {
        let a = nearest(&nu, t);
        assert!((a.point - Complex64::from_polar(1.0, t)).norm() < 1e-12);
        assert!((a.weight - derivative_weight(&zb, t)).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn unimodular_with_origin_value(b in random_blaschke()) {
        for k in 0..2048 {
            let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 2048.0);
            prop_assert!((b.eval(z).norm() - 1.0).abs() <= 1e-12);
        }
        let expect: f64 = b.expanded_zeros().iter().map(|z| z.norm()).product();
        prop_assert!((b.eval(c(0.0, 0.0)) - c(expect, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn frostman_bound_and_coprimality(b in random_blaschke(), r in 0.01f64..0.7, ang in 0.0f64..(2.0 * PI)) {
        let a = Complex64::from_polar(r, ang);
        let th = frostman_shift(|z| b.eval(z), a).unwrap();
        let sup = (0..2048)
            .map(|k| {
                let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 2048.0);
                (b.eval(z) - th(z)).norm()
            })
            .fold(0.0, f64::max);
        prop_assert!(sup <= frostman_bound(a) + 1e-10);
        for z in b.expanded_zeros() {
            prop_assert!((th(z).norm() - r).abs() < 1e-12);
        }
        let as_blaschke = b.frostman(a).unwrap();
        for k in 0..64 {
            let z = Complex64::from_polar(0.9, 2.0 * PI * k as f64 / 64.0);
            prop_assert!((as_blaschke.eval(z) - th(z)).norm() < 1e-9);
        }
    }

    #[test]
    fn clark_atoms_match_independent_oracle(b in random_blaschke_at_origin()) {
        let nu = clark_measure_from_blaschke(&b).unwrap();
        prop_assert!((nu.total_mass() - 1.0).abs() < 1e-10);
        let oracle = bisection_atoms(&b);
        prop_assert_eq!(oracle.len(), b.degree());
        for &t in &oracle {
            let a = nearest(&nu, t);
            prop_assert!((a.point - Complex64::from_polar(1.0, t)).norm() < 1e-10);
            prop_assert!((a.weight - derivative_weight(&b, t)).abs() < 1e-8);
        }
        // Herglotz identity at interior points
        for z in [c(0.2, 0.1), c(-0.6, 0.3), c(0.1, -0.8)] {
            let herglotz: Complex64 = nu.atoms().iter().map(|a| a.weight / (c(1.0, 0.0) - z * a.point.conj())).sum();
            prop_assert!((herglotz * (c(1.0, 0.0) - b.eval(z)) - c(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn clark_round_trip(nu in random_measure()) {
        let th = clark_inner_from_measure(&nu).unwrap();
        let back = clark_measure_from_blaschke(th.blaschke()).unwrap();
        prop_assert!(nu.distance(&back) <= 1e-8, "distance {}", nu.distance(&back));
        for k in 0..1024 {
            let z = Complex64::from_polar(0.95, 2.0 * PI * k as f64 / 1024.0);
            prop_assert!((th.eval(z) - th.blaschke().eval(z)).norm() < 1e-8);
        }
    }

    #[test]
    fn model_vectors_are_orthogonal_to_b_h2(b in random_blaschke(), m in 0usize..6) {
        let len = 256;
        let basis = model_basis(&b).vector_coeffs(len);
        let bm: Vec<Complex64> = {
            let t = b.taylor(len);
            (0..len).map(|i| if i >= m { t[i - m] } else { c(0.0, 0.0) }).collect()
        };
        prop_assert_eq!(basis.len(), b.degree());
        for e in &basis {
            let ip: Complex64 = e.iter().zip(bm.iter()).map(|(x, y)| x * y.conj()).sum();
            prop_assert!(ip.norm() < 1e-10);
        }
    }

    #[test]
    fn product_model_space_splits(th in random_blaschke(), be in random_blaschke()) {
        let len = 400;
        let tt = th.taylor(len);
        let kb = model_basis(&be).vector_coeffs(len);
        let kt = model_basis(&th).vector_coeffs(len);
        let shifted: Vec<Vec<Complex64>> = kb
            .iter()
            .map(|e| (0..len).map(|i| (0..=i).map(|j| tt[j] * e[i - j]).sum()).collect())
            .collect();
        let all: Vec<&Vec<Complex64>> = shifted.iter().chain(kt.iter()).collect();
        let g = CMatrix::from_fn(all.len(), all.len(), |i, j| all[i].iter().zip(all[j].iter()).map(|(x, y)| x * y.conj()).sum());
        prop_assert_eq!(all.len(), th.degree() + be.degree());
        prop_assert!(max_abs(&(g - shiftlab_core::linalg::identity(all.len()))) < 1e-10);
    }
}
