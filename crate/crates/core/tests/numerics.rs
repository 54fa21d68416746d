mod common;

use std::f64::consts::PI;

use common::*;
use hzeta::float::pi;
use hzeta::zeros::{
    find_zero, zero_fixed_point_1b, zero_list, zero_seed_c64, zeta_truncated, Branch,
};
use hzeta::zeta::zeta_linear;
use hzeta::{Cf, FloatCfg, Params};
use num_complex::Complex64;
use rug::ops::Pow;
use rug::Float;

#[test]
fn classical_zeros_at_full_precision() {
    let cfg = FloatCfg::default();
    let zeros = zero_list(&Params::ints(1, 1), 10, &cfg).unwrap();
    let digits = -(cfg.precision_bits as f64) * 0.3 + 2.0;
    let tol = Float::with_val(256, 10f64).pow(digits);
    for (k, z) in zeros.iter().enumerate() {
        let exact = Cf::imag(pi(256) * Float::with_val(256, 2 * (k + 1)));
        assert!((&z.value - &exact).abs() < tol, "zero {}", k + 1);
        assert!(z.residual < 1e-25);
        assert_eq!(z.index, k + 1);
    }
}

#[test]
fn first_two_zeros_of_phi_1_2() {
    let cfg = FloatCfg::default();
    let zeros = zero_list(&Params::ints(1, 2), 2, &cfg).unwrap();
    let (_, oracle) = first_zero_12_oracle();
    assert!((zeros[0].value.to_c64() - oracle).norm() < 1e-8);
    let (count, second) = zero_12_oracle(1.0, 5.0, 12.0, 16.0);
    assert!((count - 1.0).abs() < 1e-9);
    assert!((zeros[1].value.to_c64() - second).norm() < 1e-8);
    for z in &zeros {
        assert!(phi_1b_closed(2, z.value.to_c64()).norm() < 1e-12);
    }
}

#[test]
fn fixed_point_family_agrees_with_newton() {
    let cfg = FloatCfg::default();
    for b in 2..=4u32 {
        let zeros = zero_list(&Params::ints(1, b as i64), 4, &cfg).unwrap();
        for z in &zeros {
            let v = z.value.to_c64();
            let partial: Complex64 = (0..b)
                .scan(Complex64::new(1.0, 0.0), |t, k| {
                    let cur = *t;
                    *t = *t * v / (k + 1) as f64;
                    Some(cur)
                })
                .sum();
            let m = ((v.im - partial.arg()) / (2.0 * PI)).round() as i64;
            let fp = zero_fixed_point_1b(b, m, &z.value, &cfg).unwrap();
            assert!((&fp - &z.value).abs() < 1e-60, "b={b} zero {}", z.index);
        }
    }
}

#[test]
fn low_zeros_missed_by_seeds_are_found() {
    let cfg = FloatCfg::new(128, 1e-20, 100).unwrap();
    let z = zero_list(&Params::ints(5, 3), 2, &cfg).unwrap();
    assert!((z[0].value.to_c64() - Complex64::new(-3.0498, 13.6937)).norm() < 1e-3);
    let swapped = zero_list(&Params::ints(3, 5), 2, &cfg).unwrap();
    for (x, y) in z.iter().zip(&swapped) {
        assert!((x.value.to_c64() + y.value.to_c64().conj()).norm() < 1e-20);
    }
}

#[test]
fn seed_error_shrinks_with_index() {
    let cfg = FloatCfg::new(128, 1e-20, 100).unwrap();
    let p = Params::ints(1, 2);
    let zeros = zero_list(&p, 60, &cfg).unwrap();
    // the n-th seed on the + branch targets the n-th zero for these parameters
    let errors: Vec<f64> = zeros
        .iter()
        .map(|z| (z.value.to_c64() - zero_seed_c64(&p, z.index as u64, Branch::Plus)).norm())
        .collect();
    let medians: Vec<f64> = errors
        .chunks(15)
        .map(|c| {
            let mut c = c.to_vec();
            c.sort_by(|x, y| x.partial_cmp(y).unwrap());
            c[c.len() / 2]
        })
        .collect();
    for w in medians.windows(2) {
        assert!(w[1] <= w[0], "{medians:?}");
    }
}

#[test]
fn conjugate_symmetry_of_newton() {
    let cfg = FloatCfg::default();
    let p = Params::ints(2, 7);
    let seed = Cf::from_f64(256, 7.0, 14.0);
    let up = find_zero(&p, &seed, &cfg).unwrap();
    let down = find_zero(&p, &seed.conj(), &cfg).unwrap();
    assert!((&up.value.conj() - &down.value).abs() < 1e-70);
}

#[test]
fn truncated_sums() {
    let cfg = FloatCfg::new(128, 1e-20, 100).unwrap();
    let p = Params::ints(1, 1);
    let t = zeta_truncated(&p, 3, 50, None, &cfg).unwrap();
    assert!(t.value.abs() < 1e-8);

    let p = Params::ints(1, 2);
    let exact = zeta_linear(&p, 2).unwrap().get(2).to_f64();
    let e1 = (zeta_truncated(&p, 2, 50, None, &cfg).unwrap().value - exact).abs();
    let e2 = (zeta_truncated(&p, 2, 100, None, &cfg).unwrap().value - exact).abs();
    assert!(e1 >= 1.5 * e2, "{e1} vs {e2}");
    let t = zeta_truncated(&p, 2, 100, None, &cfg).unwrap();
    assert!((t.value - exact).abs() <= 1.1 * t.remainder_bound);
}

#[test]
fn precision_from_environment() {
    // a single test owns the variable to avoid races
    std::env::set_var("HZETA_PRECISION_BITS", "96");
    let cfg = FloatCfg::from_env().unwrap();
    std::env::set_var("HZETA_PRECISION_BITS", "12");
    let bad = FloatCfg::from_env();
    std::env::remove_var("HZETA_PRECISION_BITS");
    assert_eq!(cfg.precision_bits, 96);
    assert!(bad.is_err());
}
