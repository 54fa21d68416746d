//! Independent reference computations shared by the integration tests.
//! Nothing here calls into the library's arithmetic.

#![allow(dead_code)]

use hzeta::Params;
use num_complex::Complex64;
use rug::{Integer, Rational};

pub fn r(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

/// 20 rational parameter pairs.
pub fn grid() -> Vec<Params> {
    let a_vals = [r(1, 3), r(1, 2), r(1, 1), r(2, 1), r(7, 2)];
    let b_vals = [r(1, 4), r(1, 1), r(3, 1), r(5, 2)];
    let mut out = Vec::new();
    for a in &a_vals {
        for b in &b_vals {
            out.push(Params::new(a.clone(), b.clone()).unwrap());
        }
    }
    out
}

fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

/// Classical Bernoulli numbers from `Σ_{k=0}^{m} C(m+1, k) B_k = 0`.
pub fn classical_bernoulli(nmax: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![r(1, 1)];
    for m in 1..=nmax as u32 {
        let mut acc = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from(bk * binomial(m + 1, k as u32));
        }
        b.push(-acc / Integer::from(m + 1));
    }
    b
}

/// Taylor coefficients of `Φ_{a,b}` straight from the definition.
pub fn phi_coeffs(a: &Rational, b: &Rational, order: usize) -> Vec<Rational> {
    let c = Rational::from(a + b);
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order as u32 {
        let mut num = Rational::from(1);
        let mut den = Rational::from(1);
        for j in 0..k {
            num *= Rational::from(a + j);
            den *= Rational::from(&c + j) * (j + 1);
        }
        out.push(num / den);
    }
    out
}

/// `ζ(p) = −p·[z^p] log Φ(z)`, from the product over zeros.
pub fn zeta_from_log(a: &Rational, b: &Rational, pmax: usize) -> Vec<Rational> {
    let f = phi_coeffs(a, b, pmax);
    // log f via f·L' = f'
    let mut l = vec![Rational::new(); pmax + 1];
    for n in 1..=pmax {
        let mut acc = Rational::from(&f[n] * n as u32);
        for k in 1..n {
            acc -= Rational::from(&l[k] * k as u32) * &f[n - k];
        }
        l[n] = acc / n as u32;
    }
    (0..=pmax)
        .map(|p| {
            if p < 2 {
                Rational::new()
            } else {
                -Rational::from(&l[p] * p as u32)
            }
        })
        .collect()
}

/// `n!·[z^n] (1/Φ)` through undetermined coefficients of `Φ·g = 1`.
pub fn bernoulli_oracle(a: &Rational, b: &Rational, nmax: usize) -> Vec<Rational> {
    let f = phi_coeffs(a, b, nmax);
    let mut g: Vec<Rational> = vec![r(1, 1)];
    for n in 1..=nmax {
        let mut acc = Rational::new();
        for k in 1..=n {
            acc += Rational::from(&f[k] * &g[n - k]);
        }
        g.push(-acc);
    }
    let mut fact = Integer::from(1);
    g.into_iter()
        .enumerate()
        .map(|(n, x)| {
            if n > 0 {
                fact *= n as u32;
            }
            x * &fact
        })
        .collect()
}

pub fn primes_upto(n: usize) -> Vec<u64> {
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// `∏ p` over primes with `(p−1) | m`.
pub fn staudt_denominator(m: u64) -> Integer {
    primes_upto(m as usize + 1)
        .into_iter()
        .filter(|p| m.is_multiple_of(p - 1))
        .fold(Integer::from(1), |acc, p| acc * p)
}

/// `e^z − 1 − z`, whose zeros off the origin are those of `Φ_{1,2}`.
fn g12(z: Complex64) -> Complex64 {
    z.exp() - 1.0 - z
}

fn g12_prime(z: Complex64) -> Complex64 {
    z.exp() - 1.0
}

fn rectangle(x0: f64, x1: f64, y0: f64, y1: f64) -> [Complex64; 5] {
    [
        Complex64::new(x0, y0),
        Complex64::new(x1, y0),
        Complex64::new(x1, y1),
        Complex64::new(x0, y1),
        Complex64::new(x0, y0),
    ]
}

/// Simpson's rule for `∮ h(z) dz` along the rectangle boundary.
fn contour_integral<F: Fn(Complex64) -> Complex64>(
    corners: &[Complex64; 5],
    h: F,
    panels: usize,
) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for w in corners.windows(2) {
        let (p, q) = (w[0], w[1]);
        let step = (q - p) / (2 * panels) as f64;
        let mut acc = h(p) + h(q);
        for i in 1..(2 * panels) {
            let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += h(p + step * i as f64) * weight;
        }
        total += acc * step / 3.0;
    }
    total
}

/// Zero count and location of `e^z = 1 + z` in `[0,4]×[6,9]`.
pub fn first_zero_12_oracle() -> (f64, Complex64) {
    zero_12_oracle(0.0, 4.0, 6.0, 9.0)
}

/// Zero count of `e^z = 1 + z` inside a rectangle by a dense
/// argument-principle scan, and `(1/2πi)∮ z g'/g`, which is the zero itself
/// when the count is one.
pub fn zero_12_oracle(x0: f64, x1: f64, y0: f64, y1: f64) -> (f64, Complex64) {
    let corners = rectangle(x0, x1, y0, y1);
    let i2pi = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let count = contour_integral(&corners, |z| g12_prime(z) / g12(z), 20_000) / i2pi;
    let moment = contour_integral(&corners, |z| z * g12_prime(z) / g12(z), 20_000) / i2pi;
    (count.re, moment)
}

/// `Φ_{1,b}(z) = b!/z^b · (e^z − Σ_{k<b} z^k/k!)` in double precision.
pub fn phi_1b_closed(b: u32, z: Complex64) -> Complex64 {
    let mut partial = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut fact = 1.0;
    for k in 0..b {
        partial += term;
        term = term * z / (k + 1) as f64;
        fact *= (k + 1) as f64;
    }
    (z.exp() - partial) * fact / z.powu(b)
}
