//! Test-side oracles shared by the integration suites.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use shiftlab_core::inner_fn::{Atom, AtomicMeasure, BlaschkeProduct};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Roots of `B(e^{it}) = 1` by scanning for upward crossings of `Im B` with
/// `Re B > 0`, refined by bisection. Sorted in `[0, 2π)`.
pub fn bisection_atoms(b: &BlaschkeProduct) -> Vec<f64> {
    let steps = 8192 * b.degree().max(1);
    let f = |t: f64| b.eval(Complex64::from_polar(1.0, t));
    let mut out = Vec::new();
    for k in 0..steps {
        let (t0, t1) = (2.0 * PI * (k as f64 + 0.5) / steps as f64, 2.0 * PI * (k as f64 + 1.5) / steps as f64);
        let (v0, v1) = (f(t0), f(t1));
        if v0.im < 0.0 && v1.im >= 0.0 && v0.re > 0.0 && v1.re > 0.0 {
            let (mut lo, mut hi) = (t0, t1);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if f(mid).im < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push((0.5 * (lo + hi)).rem_euclid(2.0 * PI));
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// `1/|B'(ζ)|` from a fourth-order radial difference quotient.
pub fn derivative_weight(b: &BlaschkeProduct, t: f64) -> f64 {
    let z = Complex64::from_polar(1.0, t);
    let h = 1e-3;
    let at = |s: f64| b.eval(z * (1.0 + s));
    let d = (-at(2.0 * h) + at(h) * 8.0 - at(-h) * 8.0 + at(-2.0 * h)) / (12.0 * h) / z;
    1.0 / d.norm()
}

pub fn nearest(nu: &AtomicMeasure, t: f64) -> Atom {
    let z = Complex64::from_polar(1.0, t);
    *nu.atoms().iter().min_by(|a, b| (a.point - z).norm().partial_cmp(&(b.point - z).norm()).unwrap()).unwrap()
}

/// Largest distance in a greedy one-to-one matching of two multisets.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut left: Vec<Complex64> = b.to_vec();
    let mut worst: f64 = 0.0;
    for x in a {
        let (i, d) = left
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
            .unwrap();
        worst = worst.max(d);
        left.swap_remove(i);
    }
    worst
}

/// Blaschke products with a simple zero at the origin and up to five
/// further simple zeros of modulus below 0.85.
pub fn blaschke_at_origin(max_extra: usize) -> impl Strategy<Value = BlaschkeProduct> {
    prop::collection::vec((0.05f64..0.85, 0.0f64..(2.0 * PI)), 0..=max_extra).prop_map(|zs| {
        let mut zeros = vec![(c(0.0, 0.0), 1)];
        zeros.extend(zs.into_iter().map(|(r, a)| (Complex64::from_polar(r, a), 1)));
        BlaschkeProduct::new(zeros).unwrap()
    })
}

/// Blaschke products with between `lo` and `hi` simple zeros off the origin.
pub fn blaschke(lo: usize, hi: usize, radius: f64) -> impl Strategy<Value = BlaschkeProduct> {
    prop::collection::vec((0.05f64..radius, 0.0f64..(2.0 * PI)), lo..=hi).prop_map(|zs| {
        BlaschkeProduct::new(zs.into_iter().map(|(r, a)| (Complex64::from_polar(r, a), 1)).collect()).unwrap()
    })
}
