//! Complex evaluation of `Φ_{a,b}(z) = ₁F₁(a; a+b; z)` at configurable precision.
//!
//! Three routes are used. For `Re z < 0` the Kummer transformation
//! `Φ_{a,b}(z) = e^z Φ_{b,a}(−z)` moves the argument to the right half-plane.
//! For large `|z|` the two-term asymptotic expansion is tried first; it is
//! exact whenever both of its series terminate (integer `a` and `b`). The
//! Taylor series is the fallback, summed with enough guard bits to absorb the
//! cancellation between terms of size `e^{|z|}`.

use rug::Float;

use crate::error::{Error, Result};
use crate::exact::{Params, Rat};
use crate::float::{gamma, log2_abs, pi, Cf, FloatCfg};

const LOG2_E: f64 = std::f64::consts::LOG2_E;

/// Below this modulus the asymptotic expansion is not attempted.
const ASYMPTOTIC_MIN_ABS: f64 = 4.0;

/// A value together with a bound on its absolute error, as `log₂`.
#[derive(Clone, Debug)]
pub struct PhiValue {
    pub value: Cf,
    pub noise_log2: f64,
}

/// `Φ_{a,b}(z)`.
///
/// The absolute error is at most `max(2^{−p}|Φ(z)|, 2^{−p−16})` with
/// `p = precision_bits`, so values near a zero are absolutely accurate.
/// Fails with [`Error::PrecisionInsufficient`] when the largest Taylor term
/// exceeds `2^{wp−20}·max(|Φ(z)|, 2^{−p−16})` at working precision `wp`.
pub fn phi_eval(params: &Params, z: &Cf, cfg: &FloatCfg) -> Result<Cf> {
    Ok(phi_eval_detailed(params, z, cfg)?
        .value
        .with_prec(cfg.precision_bits))
}

/// `Φ'_{a,b}(z) = a/(a+b) · Φ_{a+1,b}(z)`.
pub fn phi_deriv(params: &Params, z: &Cf, cfg: &FloatCfg) -> Result<Cf> {
    Ok(phi_deriv_detailed(params, z, cfg)?
        .value
        .with_prec(cfg.precision_bits))
}

pub fn phi_deriv_detailed(params: &Params, z: &Cf, cfg: &FloatCfg) -> Result<PhiValue> {
    let inner = phi_eval_detailed(&params.shift_a(), z, cfg)?;
    let ratio = Float::with_val(inner.value.prec(), params.a() / params.c());
    Ok(PhiValue {
        value: inner.value.scale(&ratio),
        noise_log2: inner.noise_log2 + log2_abs(&ratio),
    })
}

pub fn phi_eval_detailed(params: &Params, z: &Cf, cfg: &FloatCfg) -> Result<PhiValue> {
    eval(
        params,
        z,
        cfg.precision_bits,
        -(cfg.precision_bits as f64) - 16.0,
    )
}

/// `floor_log2` is the absolute error that is always acceptable.
fn eval(params: &Params, z: &Cf, bits: u32, floor_log2: f64) -> Result<PhiValue> {
    if z.is_zero() {
        return Ok(PhiValue {
            value: Cf::one(bits),
            noise_log2: f64::NEG_INFINITY,
        });
    }
    if z.re.is_sign_negative() && !z.re.is_zero() {
        let re = z.re.to_f64();
        let inner = eval(&params.swapped(), &-z, bits, floor_log2 - re * LOG2_E)?;
        let p = inner.value.prec();
        let factor = z.with_prec(p).exp();
        return Ok(PhiValue {
            value: &factor * &inner.value,
            noise_log2: inner.noise_log2 + re * LOG2_E,
        });
    }
    if z.to_c64().norm() >= ASYMPTOTIC_MIN_ABS {
        if let Some(v) = asymptotic(params, z, bits, floor_log2) {
            return Ok(v);
        }
    }
    taylor(params, z, bits, floor_log2)
}

/// Largest acceptable absolute error: `max(2^{−bits}|value|, 2^floor)`.
fn target_log2(value: &Cf, bits: u32, floor_log2: f64) -> f64 {
    (log2_abs(&value.abs()) - bits as f64).max(floor_log2)
}

fn taylor(params: &Params, z: &Cf, bits: u32, floor_log2: f64) -> Result<PhiValue> {
    let modulus = z.to_c64().norm();
    let extra = (-floor_log2 - bits as f64 - 16.0).max(0.0);
    let wp = bits + (1.5 * modulus * LOG2_E).ceil() as u32 + 64 + extra.ceil() as u32;
    taylor_at(params, z, wp, floor_log2)
}

fn taylor_at(params: &Params, z: &Cf, wp: u32, floor_log2: f64) -> Result<PhiValue> {
    let modulus = z.to_c64().norm();
    let zw = z.with_prec(wp);
    let a = params.a();
    let c = params.c();

    let mut term = Cf::one(wp);
    let mut sum = Cf::one(wp);
    let mut max_term_log2 = 0.0f64;
    let mut k: u32 = 0;
    loop {
        // t_{k+1} = t_k · (a+k)/((c+k)(k+1)) · z
        let coef = Rat::from(a + k) / (Rat::from(&c + k) * (k + 1));
        term = (&term * &zw).scale(&Float::with_val(wp, &coef));
        k += 1;
        sum = &sum + &term;
        let t = log2_abs(&term.abs());
        max_term_log2 = max_term_log2.max(t);
        if k as f64 > 2.0 * modulus + 2.0 && t < max_term_log2 - wp as f64 {
            break;
        }
    }
    let noise_log2 = max_term_log2 + (k as f64 + 2.0).log2() - wp as f64;
    let value_log2 = log2_abs(&sum.abs());
    if max_term_log2 > wp as f64 - 20.0 + value_log2.max(floor_log2) {
        return Err(Error::PrecisionInsufficient {
            z: z.to_string(),
            bits: wp,
            max_term_log2,
            value_log2,
        });
    }
    Ok(PhiValue {
        value: sum,
        noise_log2,
    })
}

/// Sums `Σ_s (p)_s (q)_s / s! · w^s` until it terminates, converges to the
/// working precision, or starts to diverge. Returns the sum and the
/// magnitude (`log₂`) of the first omitted term.
fn asymptotic_series(p: &Rat, q: &Rat, w: &Cf, wp: u32) -> (Cf, f64) {
    let mut term = Cf::one(wp);
    let mut sum = Cf::one(wp);
    let mut last = 0.0f64;
    for s in 0..(4 * wp) {
        let coef = Rat::from(p + s) * Rat::from(q + s) / (s + 1);
        if coef == 0 {
            return (sum, f64::NEG_INFINITY);
        }
        let next = (&term * w).scale(&Float::with_val(wp, &coef));
        let t = log2_abs(&next.abs());
        if t >= last {
            return (sum, last);
        }
        sum = &sum + &next;
        term = next;
        last = t;
        if t < -(wp as f64) {
            break;
        }
    }
    (sum, last)
}

/// `Φ ≈ Γ(c)/Γ(b) e^{±iπa} z^{−a} Σ (a)_s(1−b)_s/s! (−z)^{−s}
///    + Γ(c)/Γ(a) e^z z^{−b} Σ (b)_s(1−a)_s/s! z^{−s}`, for `Re z ≥ 0`.
fn asymptotic(params: &Params, z: &Cf, bits: u32, floor_log2: f64) -> Option<PhiValue> {
    let extra = (-floor_log2 - bits as f64 - 16.0).max(0.0);
    let wp = bits + 48 + extra.ceil() as u32;
    let zw = z.with_prec(wp);
    let (a, b, c) = (params.a(), params.b(), params.c());
    let one = Rat::from(1);

    let inv = zw.recip();
    let (s1, omit1) = asymptotic_series(a, &Rat::from(&one - b), &-&inv, wp);
    let (s2, omit2) = asymptotic_series(b, &Rat::from(&one - a), &inv, wp);

    let gc = gamma(wp, &c);
    let ln_z = zw.ln();
    let upper = !zw.im.is_sign_negative();
    let pa = Float::with_val(wp, a) * pi(wp);
    let phase = Cf::imag(if upper { pa } else { -pa }).exp();
    let za = ln_z.scale(&-Float::with_val(wp, a)).exp();
    let pre1 = (&phase * &za).scale(&(Float::with_val(wp, &gc) / gamma(wp, b)));
    let zb = (&zw - &ln_z.scale(&Float::with_val(wp, b))).exp();
    let pre2 = zb.scale(&(gc / gamma(wp, a)));

    let t1 = &pre1 * &s1;
    let t2 = &pre2 * &s2;
    let value = &t1 + &t2;

    let p1 = log2_abs(&pre1.abs());
    let p2 = log2_abs(&pre2.abs());
    let mut noise: Vec<f64> = vec![p1 + omit1, p2 + omit2, p1.max(p2) + 8.0 - wp as f64];
    // On and near the positive real axis the subdominant term is ambiguous
    // unless its multiplier e^{±iπa} is real.
    let near_real = zw.im.to_f64().abs() < zw.re.to_f64();
    if near_real && !a.is_integer() {
        noise.push(log2_abs(&t1.abs()));
    }
    let noise_log2 = log2_sum(&noise);
    if noise_log2 <= target_log2(&value, bits, floor_log2) {
        Some(PhiValue { value, noise_log2 })
    } else {
        None
    }
}

fn log2_sum(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp2()).sum::<f64>().log2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn cfg(bits: u32) -> FloatCfg {
        FloatCfg::new(bits, 1e-30, 100).unwrap()
    }

    #[test]
    fn trivial_values() {
        let c = cfg(128);
        let one = phi_eval(&Params::ints(3, 4), &Cf::zero(128), &c).unwrap();
        assert_eq!(one, Cf::one(128));
        let d = phi_deriv(&Params::ints(1, 1), &Cf::zero(128), &c).unwrap();
        assert!((d.to_c64().re - 0.5).abs() < 1e-30);
        let d = phi_deriv(&Params::ints(5, 3), &Cf::zero(128), &c).unwrap();
        assert!((d.to_c64().re - 0.625).abs() < 1e-30);
    }

    #[test]
    fn classical_case() {
        let c = cfg(128);
        let p = Params::ints(1, 1);
        let v = phi_eval(&p, &Cf::from_f64(128, 1.0, 0.0), &c).unwrap();
        assert!((v.to_c64().re - (std::f64::consts::E - 1.0)).abs() < 1e-14);
        let two_pi_i = Cf::imag(pi(128) * 2u32);
        let v = phi_eval(&p, &two_pi_i, &c).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn routes_agree() {
        // Taylor with forced high precision against the transformed and
        // asymptotic routes.
        let c = cfg(200);
        let p = Params::new(rat(2, 3), rat(7, 4)).unwrap();
        for (re, im) in [(-12.0, 3.0), (30.0, 40.0), (2.0, 55.0), (-3.0, -70.0)] {
            let z = Cf::from_f64(200, re, im);
            let direct = taylor(&p, &z, 200, -200.0).unwrap().value;
            let routed = phi_eval(&p, &z, &c).unwrap();
            let scale = direct.abs().to_f64().max(1e-60);
            assert!(
                (&direct - &routed).abs().to_f64() / scale < 1e-50,
                "z = {re} + {im}i: {direct} vs {routed}"
            );
        }
    }

    #[test]
    fn precision_guard() {
        let p = Params::ints(1, 1);
        let z = Cf::from_f64(128, 0.0, 40.0);
        let err = taylor_at(&p, &z, 53, -53.0).unwrap_err();
        assert!(matches!(err, Error::PrecisionInsufficient { .. }));
    }
}
