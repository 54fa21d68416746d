//! Zeros of `Φ_{a,b}` in the upper half-plane and truncated zeta sums.
//!
//! Zeros come in conjugate pairs and none is real, so only `Im z > 0` is
//! stored. Seeds follow the large-zero asymptotics
//! `z_n ≈ ±(2n+a)πi + ln(−Γ(a)/Γ(b)·(±2nπi)^{b−a})` (principal logarithm);
//! each is refined by Newton's method with `Φ' = a/(a+b)·Φ_{a+1,b}`.

use num_complex::Complex64;
use rug::Float;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{rat_to_string, Params, Rat};
use crate::float::{decimal_string, log2_abs, pi, Cf, FloatCfg};
use crate::kummer::{phi_deriv_detailed, phi_eval, phi_eval_detailed};

use std::f64::consts::PI;

/// Zeros below this index are always covered by an argument-principle count.
const AUDIT_MIN: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ZeroRecord {
    /// 1-based rank by imaginary part; 0 until assigned by [`zero_list`].
    pub index: usize,
    pub value: Cf,
    pub seed: Cf,
    /// `|Φ(value)|`.
    pub residual: f64,
    pub iterations: u32,
}

/// Reduces an angle into `(−π, π]`.
fn wrap_angle(x: f64) -> f64 {
    x - 2.0 * PI * ((x - PI) / (2.0 * PI)).ceil()
}

fn b_minus_a(params: &Params) -> Rat {
    Rat::from(params.b() - params.a())
}

fn ln_gamma_ratio(params: &Params, prec: u32) -> Float {
    let la = Float::with_val(prec, params.a()).ln_gamma();
    let lb = Float::with_val(prec, params.b()).ln_gamma();
    la - lb
}

/// Asymptotic seed for the `n`-th zero on the given branch, at the
/// configured precision.
pub fn zero_seed(params: &Params, n: u64, branch: Branch, cfg: &FloatCfg) -> Cf {
    assert!(n >= 1, "zero seeds are indexed from 1");
    let p = cfg.precision_bits + 16;
    let sign = branch.sign();
    let pi = pi(p);
    let bma = Float::with_val(p, &b_minus_a(params));
    let two_n_pi = Float::with_val(p, &pi * (2 * n));
    // ln|u| and arg u for u = −Γ(a)/Γ(b)·(±2nπi)^{b−a}
    let ln_abs = ln_gamma_ratio(params, p) + Float::with_val(p, &bma * two_n_pi.ln());
    let half_turns = Float::with_val(p, &bma * sign) / 2u32 + 1u32;
    let arg = wrap_pi_multiple(half_turns, &pi);
    let a = Float::with_val(p, params.a());
    let im = (Float::with_val(p, 2 * n) + a) * &pi * sign + arg;
    Cf::new(ln_abs, im).with_prec(cfg.precision_bits)
}

/// `π·t` reduced into `(−π, π]`, reducing `t` exactly first.
fn wrap_pi_multiple(t: Float, pi: &Float) -> Float {
    // t ∈ (−1, 1]
    let shift = Float::with_val(
        t.prec(),
        (Float::with_val(t.prec(), &t - 1u32) / 2u32).ceil_ref(),
    );
    let reduced = t - shift * 2u32;
    reduced * pi
}

/// Double-precision seed, used for the tail of truncated sums.
pub fn zero_seed_c64(params: &Params, n: u64, branch: Branch) -> Complex64 {
    let sign = branch.sign();
    let bma = b_minus_a(params).to_f64();
    let ln_abs = ln_gamma_ratio(params, 64).to_f64() + bma * (2.0 * PI * n as f64).ln();
    let arg = wrap_angle(PI + sign * bma * PI / 2.0);
    let im = sign * (2.0 * n as f64 + params.a().to_f64()) * PI + arg;
    Complex64::new(ln_abs, im)
}

/// Improves an upper half-plane seed by iterating the leading-order zero
/// equation `z = s + (b−a)(Log z − Log(2nπi))`.
fn polish_seed(params: &Params, n: u64, seed: Complex64) -> Complex64 {
    let bma = b_minus_a(params).to_f64();
    if bma == 0.0 {
        return seed;
    }
    let anchor = Complex64::new(0.0, 2.0 * PI * n as f64).ln();
    let mut z = seed;
    for _ in 0..50 {
        let next = seed + bma * (z.ln() - anchor);
        if !(next.re.is_finite() && next.im.is_finite()) || next.im <= 0.0 {
            return seed;
        }
        let done = (next - z).norm() < 1e-12 * z.norm();
        z = next;
        if done {
            break;
        }
    }
    z
}

/// Newton refinement, certified by `|Φ(z)| < newton_tol`.
///
/// The iteration runs on `e^{−z/2}Φ(z)`, i.e. `z ← z − Φ/(Φ' − Φ/2)`. Plain
/// Newton on `Φ` drifts to the left, where `Φ` decays algebraically; the
/// rescaled function grows on both sides of the zero strip.
pub fn find_zero(params: &Params, seed: &Cf, cfg: &FloatCfg) -> Result<ZeroRecord> {
    let bits = cfg.precision_bits;
    let mut z = seed.with_prec(bits + 32);
    let work = FloatCfg {
        precision_bits: bits + 32,
        ..cfg.clone()
    };
    let step_floor = -(bits as f64) + 4.0;
    let mut iterations = 0;
    for it in 1..=cfg.max_iter {
        iterations = it;
        let f = phi_eval_detailed(params, &z, &work)?;
        let d = phi_deriv_detailed(params, &z, &work)?;
        let half = Cf::from_f64(bits + 32, 0.5, 0.0);
        let denom = &d.value - &(&f.value * &half);
        if denom.is_zero() {
            break;
        }
        let mut step = f.value.div(&denom);
        let size = step.abs().to_f64();
        if !size.is_finite() {
            break;
        }
        // keep steps below half the typical zero spacing
        if size > PI {
            step = step.scale(&Float::with_val(bits, PI / size));
        }
        z = &z - &step;
        let zmag = z.abs().to_f64().max(1.0);
        if f.value.is_zero() || log2_abs(&step.abs()) < step_floor + zmag.log2() {
            break;
        }
    }
    let value = z.with_prec(bits);
    let residual = phi_eval(params, &value, cfg)?.abs().to_f64();
    if residual.is_nan() || residual >= cfg.newton_tol {
        return Err(Error::NoConvergence {
            seed: seed.to_string(),
            iterations: iterations as usize,
            residual,
        });
    }
    Ok(ZeroRecord {
        index: 0,
        value,
        seed: seed.with_prec(bits),
        residual,
        iterations,
    })
}

/// Zero of `Φ_{1,b}` by the fixed point `z ← Log(Σ_{k<b} z^k/k!) + 2πim`,
/// i.e. a root of `e^z = Σ_{k<b} z^k/k!` on branch `m`.
pub fn zero_fixed_point_1b(b: u32, m: i64, seed: &Cf, cfg: &FloatCfg) -> Result<Cf> {
    assert!(b >= 1);
    let p = cfg.precision_bits + 32;
    let shift = Cf::imag(pi(p) * Float::with_val(p, 2 * m));
    let mut z = seed.with_prec(p);
    for _ in 0..(cfg.max_iter * 4) {
        let mut sum = Cf::one(p);
        let mut term = Cf::one(p);
        for k in 1..b {
            term = (&term * &z).scale(&Float::with_val(p, k).recip());
            sum = &sum + &term;
        }
        let next = &sum.ln() + &shift;
        let delta = (&next - &z).abs();
        z = next;
        let zmag = z.abs().to_f64().max(1.0);
        if log2_abs(&delta) < -(cfg.precision_bits as f64) + zmag.log2() {
            return Ok(z.with_prec(cfg.precision_bits));
        }
    }
    Err(Error::NoConvergence {
        seed: seed.to_string(),
        iterations: (cfg.max_iter * 4) as usize,
        residual: f64::NAN,
    })
}

fn same_zero(x: &Cf, y: &Cf) -> bool {
    let (x, y) = (x.to_c64(), y.to_c64());
    (x - y).norm() < 1e-8 * x.norm().max(1.0)
}

fn upper(mut rec: ZeroRecord) -> ZeroRecord {
    if rec.value.im.is_sign_negative() {
        rec.value = rec.value.conj();
    }
    rec
}

fn insert(found: &mut Vec<ZeroRecord>, rec: ZeroRecord) -> bool {
    if found.iter().any(|f| same_zero(&f.value, &rec.value)) {
        return false;
    }
    found.push(rec);
    true
}

/// Candidate seeds for index `n`, mapped to the upper half-plane.
fn seeds_for(params: &Params, n: u64, cfg: &FloatCfg) -> Vec<Cf> {
    let plus = zero_seed(params, n, Branch::Plus, cfg);
    let minus = zero_seed(params, n, Branch::Minus, cfg).conj();
    let mut out = vec![plus];
    if !same_zero(&out[0], &minus) {
        out.push(minus);
    }
    out.into_iter()
        .map(|s| Cf::from_c64(cfg.precision_bits, polish_seed(params, n, s.to_c64())))
        .collect()
}

/// Solutions of the leading-order zero equation
/// `z = ln(Γ(a)/Γ(b)) + (2m+a+1)πi + (b−a) Log z` for the branches `m` whose
/// imaginary part lies below the first indexed seed.
fn low_seeds(params: &Params, cfg: &FloatCfg) -> Vec<Cf> {
    let a = params.a().to_f64();
    let bma = b_minus_a(params).to_f64();
    let lg = ln_gamma_ratio(params, 64).to_f64();
    let first = zero_seed_c64(params, 1, Branch::Plus).im;
    let mut out = Vec::new();
    let mut m = -((a + 1.0) / 2.0).floor() as i64;
    loop {
        let shift = Complex64::new(lg, (2.0 * m as f64 + a + 1.0) * PI);
        m += 1;
        if shift.im <= 0.0 {
            continue;
        }
        if shift.im > first + PI {
            break;
        }
        let mut z = Complex64::new(shift.re.max(1.0), shift.im);
        for _ in 0..50 {
            z = shift + bma * z.ln();
            if !(z.re.is_finite() && z.im > 0.0) {
                break;
            }
        }
        if z.re.is_finite() && z.im > 0.0 {
            out.push(Cf::from_c64(cfg.precision_bits, z));
        }
    }
    out
}

/// The first `count` zeros in the upper half-plane, ordered by imaginary part.
pub fn zero_list(params: &Params, count: usize, cfg: &FloatCfg) -> Result<Vec<ZeroRecord>> {
    if count == 0 {
        return Err(Error::InvalidParams(
            "at least one zero must be requested".into(),
        ));
    }
    cfg.validate()?;
    let mut found: Vec<ZeroRecord> = Vec::new();
    // Low zeros that the indexed seeds overshoot; failures here are
    // expected and harmless, the audit below decides completeness.
    for seed in low_seeds(params, cfg) {
        if let Ok(rec) = find_zero(params, &seed, cfg) {
            insert(&mut found, upper(rec));
        }
    }
    let mut n: u64 = 0;
    while n < count as u64 + 2 || found.len() < count + 1 {
        n += 1;
        if n > 2 * count as u64 + 20 {
            break;
        }
        for seed in seeds_for(params, n, cfg) {
            let rec = find_zero(params, &seed, cfg).map_err(|e| Error::ZeroIndex {
                index: n as usize,
                source: Box::new(e),
            })?;
            insert(&mut found, upper(rec));
        }
    }
    sort_by_im(&mut found);

    // Audit the low band, and beyond it any stretch where the spacing
    // suggests a zero was skipped.
    let start = AUDIT_MIN.min(count);
    let band = (start..found.len().saturating_sub(1).min(count))
        .filter(|&j| found[j + 1].value.im.to_f64() - found[j].value.im.to_f64() > 3.2 * PI)
        .map(|j| j + 1)
        .fold(start, usize::max);
    audit(params, &mut found, band, cfg)?;

    if found.len() < count {
        return Err(Error::MissingZeros {
            found: found.len(),
            wanted: count,
        });
    }
    found.truncate(count);
    for (i, rec) in found.iter_mut().enumerate() {
        rec.index = i + 1;
    }
    Ok(found)
}

fn sort_by_im(found: &mut [ZeroRecord]) {
    found.sort_by(|x, y| x.value.im.partial_cmp(&y.value.im).expect("finite zeros"));
}

/// Checks by the argument principle that the zeros found below the
/// midpoint between zeros `band` and `band + 1` are all of them, and
/// searches a grid for missing ones otherwise.
fn audit(params: &Params, found: &mut Vec<ZeroRecord>, band: usize, cfg: &FloatCfg) -> Result<()> {
    if band == 0 || found.len() < band {
        return Ok(());
    }
    for attempt in 0..2 {
        let (x, t) = audit_box(found, band);
        let expected = count_zeros(params, x, t)?;
        let inside = found
            .iter()
            .filter(|r| {
                let z = r.value.to_c64();
                z.im < t && z.re.abs() < x
            })
            .count();
        if expected == inside {
            return Ok(());
        }
        if attempt == 1 || expected < inside {
            return Err(Error::Inconclusive(format!(
                "argument principle counts {expected} zeros with |Re z| < {x:.1}, 0 < Im z < {t:.1}; {inside} located"
            )));
        }
        grid_search(params, found, x, t, cfg)?;
        sort_by_im(found);
    }
    Ok(())
}

fn audit_box(found: &[ZeroRecord], band: usize) -> (f64, f64) {
    let last = found[band - 1].value.to_c64();
    let t = match found.get(band) {
        Some(next) => (last.im + next.value.to_c64().im) / 2.0,
        None => last.im + PI,
    };
    let x = found
        .iter()
        .take(band + 1)
        .map(|r| r.value.to_c64().re.abs())
        .fold(0.0, f64::max)
        + 6.0;
    (x, t)
}

fn grid_search(
    params: &Params,
    found: &mut Vec<ZeroRecord>,
    x: f64,
    t: f64,
    cfg: &FloatCfg,
) -> Result<()> {
    // coarse Newton at low precision, then refinement of the new zeros
    let coarse = FloatCfg::new(64, 1e-8, 40)?;
    let step = 1.5;
    let nx = (2.0 * x / step).ceil() as usize;
    let ny = (t / step).ceil() as usize;
    for i in 0..=nx {
        for j in 1..=ny {
            let seed = Cf::from_f64(64, -x + i as f64 * step, j as f64 * step);
            let Ok(rough) = find_zero(params, &seed, &coarse) else {
                continue;
            };
            let rough = upper(rough);
            if found.iter().any(|f| same_zero(&f.value, &rough.value)) {
                continue;
            }
            let mut rec = find_zero(params, &rough.value.with_prec(cfg.precision_bits), cfg)?;
            rec.seed = seed.with_prec(cfg.precision_bits);
            insert(found, upper(rec));
        }
    }
    Ok(())
}

/// Number of zeros in `[−x, x] × (0, t)`. `Φ` is positive on the real axis,
/// so the bottom edge contributes no change of argument.
pub fn count_zeros(params: &Params, x: f64, t: f64) -> Result<usize> {
    let cfg = FloatCfg::new(64, 1e-10, 1)?;
    let eval = |z: Complex64| -> Result<Complex64> {
        Ok(phi_eval(params, &Cf::from_c64(64, z), &cfg)?.to_c64())
    };
    let corners = [
        Complex64::new(-x, 0.0),
        Complex64::new(x, 0.0),
        Complex64::new(x, t),
        Complex64::new(-x, t),
    ];
    // arg Φ turns at roughly unit rate along vertical edges; short pieces
    // keep the endpoint comparison from aliasing
    let mut total = 0.0;
    for k in 0..4 {
        let (from, to) = (corners[k], corners[(k + 1) % 4]);
        let pieces = ((to - from).norm() / 0.25).ceil().max(1.0) as usize;
        for i in 0..pieces {
            let u = from + (to - from) * (i as f64 / pieces as f64);
            let v = from + (to - from) * ((i + 1) as f64 / pieces as f64);
            total += arg_change(&eval, u, v, 0)?;
        }
    }
    let winding = total / (2.0 * PI);
    let rounded = winding.round();
    if (winding - rounded).abs() > 0.1 || rounded < 0.0 {
        return Err(Error::Inconclusive(format!(
            "winding number {winding:.3} is not an integer"
        )));
    }
    Ok(rounded as usize)
}

fn arg_change<F>(eval: &F, from: Complex64, to: Complex64, depth: u32) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let (fa, fb) = (eval(from)?, eval(to)?);
    let delta = (fb / fa).arg();
    if delta.abs() < 0.5 || depth > 40 {
        return Ok(delta);
    }
    let mid = (from + to) / 2.0;
    Ok(arg_change(eval, from, mid, depth + 1)? + arg_change(eval, mid, to, depth + 1)?)
}

/// A truncated zeta sum with its error accounting.
#[derive(Clone, Debug)]
pub struct TruncatedZeta {
    pub s: u32,
    pub refined: usize,
    pub tail_end: u64,
    /// Sum over refined zeros and tail seeds.
    pub value: f64,
    pub refined_part: f64,
    pub tail_part: f64,
    /// Bound for the omitted terms beyond `tail_end`.
    pub remainder_bound: f64,
}

/// Default tail length `max(10⁴, 200·N)`.
pub fn default_tail(refined: usize) -> u64 {
    (200 * refined as u64).max(10_000)
}

/// `Σ_{k≤N} 2Re(z_k^{−s}) + Σ_{N<k≤M} 2Re(seed_k^{−s})`, with the remainder
/// beyond `M` bounded by `2(2π)^{−s} M^{1−s}/(s−1)`.
pub fn zeta_truncated(
    params: &Params,
    s: u32,
    refined: usize,
    tail_end: Option<u64>,
    cfg: &FloatCfg,
) -> Result<TruncatedZeta> {
    if s < 2 {
        return Err(Error::InvalidParams(format!(
            "s must be at least 2, got {s}"
        )));
    }
    let zeros = zero_list(params, refined, cfg)?;
    let m = tail_end.unwrap_or_else(|| default_tail(refined));
    if m < refined as u64 {
        return Err(Error::InvalidParams(format!(
            "tail end {m} is below the refined count {refined}"
        )));
    }
    let p = cfg.precision_bits;
    let mut acc = Float::new(p);
    for z in &zeros {
        let w = z.value.recip();
        let mut pw = w.clone();
        for _ in 1..s {
            pw = &pw * &w;
        }
        acc += &pw.re;
    }
    let refined_part = acc.to_f64() * 2.0;

    // align tail seed indices with the last refined zero
    let last = zeros.last().expect("nonempty").value.to_c64();
    let n = refined as i64;
    let best = ((n - 5).max(1)..=n + 5)
        .min_by(|&i, &j| {
            let di = (zero_seed_c64(params, i as u64, Branch::Plus) - last).norm();
            let dj = (zero_seed_c64(params, j as u64, Branch::Plus) - last).norm();
            di.partial_cmp(&dj).expect("finite")
        })
        .expect("nonempty range");
    let offset = best - n;
    let mut tail = 0.0f64;
    let mut comp = 0.0f64;
    for k in (refined as u64 + 1)..=m {
        let z = zero_seed_c64(params, (k as i64 + offset) as u64, Branch::Plus);
        let term = 2.0 * z.powi(-(s as i32)).re;
        // Kahan summation
        let y = term - comp;
        let t = tail + y;
        comp = (t - tail) - y;
        tail = t;
    }
    let sf = s as f64;
    let remainder_bound = 2.0 * (2.0 * PI).powf(-sf) * (m as f64).powf(1.0 - sf) / (sf - 1.0);
    Ok(TruncatedZeta {
        s,
        refined,
        tail_end: m,
        value: refined_part + tail,
        refined_part,
        tail_part: tail,
        remainder_bound,
    })
}

/// `{"a", "b", "precision_bits", "zeros": [{"n", "re", "im", "residual"}]}`
/// with decimal strings carrying the supported number of digits.
pub fn zeros_json(params: &Params, zeros: &[ZeroRecord], cfg: &FloatCfg) -> serde_json::Value {
    let digits = cfg.decimal_digits();
    let list: Vec<_> = zeros
        .iter()
        .map(|r| {
            json!({
                "n": r.index,
                "re": decimal_string(&r.value.re, digits),
                "im": decimal_string(&r.value.im, digits),
                "residual": format!("{:.3e}", r.residual),
            })
        })
        .collect();
    json!({
        "a": rat_to_string(params.a()),
        "b": rat_to_string(params.b()),
        "precision_bits": cfg.precision_bits,
        "digits": digits,
        "zeros": list,
    })
}
