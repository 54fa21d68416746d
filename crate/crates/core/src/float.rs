//! Multiprecision complex numbers over MPFR floats, and the precision
//! configuration shared by the numerical routines.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};
use crate::exact::Rat;

pub const PRECISION_ENV: &str = "HZETA_PRECISION_BITS";

/// Precision and Newton settings for the numerical routines.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatCfg {
    pub precision_bits: u32,
    pub newton_tol: f64,
    pub max_iter: u32,
}

impl Default for FloatCfg {
    fn default() -> Self {
        FloatCfg {
            precision_bits: 256,
            newton_tol: 1e-30,
            max_iter: 100,
        }
    }
}

impl FloatCfg {
    pub fn new(precision_bits: u32, newton_tol: f64, max_iter: u32) -> Result<Self> {
        let cfg = FloatCfg {
            precision_bits,
            newton_tol,
            max_iter,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Given precision with the default tolerance scaled to it: `1e-30` at
    /// 256 bits, proportionally looser or tighter elsewhere.
    pub fn with_precision(precision_bits: u32) -> Result<Self> {
        let tol = 10f64.powf(-30.0 * precision_bits as f64 / 256.0);
        FloatCfg::new(precision_bits, tol.max(f64::MIN_POSITIVE), 100)
    }

    /// Defaults, with the precision taken from `HZETA_PRECISION_BITS` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(PRECISION_ENV) {
            Ok(raw) => {
                let bits = raw.trim().parse().map_err(|_| {
                    Error::InvalidConfig(format!("{PRECISION_ENV}={raw:?} is not an integer"))
                })?;
                FloatCfg::with_precision(bits)
            }
            Err(_) => Ok(FloatCfg::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < 53 {
            return Err(Error::InvalidConfig(format!(
                "precision_bits must be at least 53, got {}",
                self.precision_bits
            )));
        }
        if !(self.newton_tol > 0.0 && self.newton_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "newton_tol must be positive, got {}",
                self.newton_tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be positive".into()));
        }
        Ok(())
    }

    /// Decimal digits that the configured precision supports.
    pub fn decimal_digits(&self) -> usize {
        (self.precision_bits as f64 * std::f64::consts::LOG10_2).floor() as usize
    }
}

/// `re + i·im` at a fixed binary precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Cf {
    pub re: Float,
    pub im: Float,
}

impl Cf {
    pub fn new(re: Float, im: Float) -> Self {
        Cf { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Cf::from_f64(prec, 0.0, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        Cf::from_f64(prec, 1.0, 0.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Cf {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_c64(prec: u32, z: Complex64) -> Self {
        Cf::from_f64(prec, z.re, z.im)
    }

    pub fn real(x: Float) -> Self {
        let im = Float::new(x.prec());
        Cf { re: x, im }
    }

    pub fn from_rat(prec: u32, x: &Rat) -> Self {
        Cf::real(Float::with_val(prec, x))
    }

    /// `i·x`.
    pub fn imag(x: Float) -> Self {
        let re = Float::new(x.prec());
        Cf { re, im: x }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Cf {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(&self) -> Self {
        Cf {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, x: &Float) -> Self {
        let p = self.prec();
        Cf {
            re: Float::with_val(p, &self.re * x),
            im: Float::with_val(p, &self.im * x),
        }
    }

    pub fn div(&self, other: &Cf) -> Self {
        let p = self.prec().max(other.prec());
        let den =
            Float::with_val(p, other.re.square_ref()) + Float::with_val(p, other.im.square_ref());
        let re =
            Float::with_val(p, &self.re * &other.re) + Float::with_val(p, &self.im * &other.im);
        let im =
            Float::with_val(p, &self.im * &other.re) - Float::with_val(p, &self.re * &other.im);
        Cf {
            re: re / &den,
            im: im / &den,
        }
    }

    pub fn recip(&self) -> Self {
        Cf::one(self.prec()).div(self)
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        Cf {
            re: Float::with_val(p, &m * &c),
            im: m * s,
        }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        Cf {
            re: Float::with_val(p, self.abs().ln_ref()),
            im: self.arg(),
        }
    }

    /// `z^w` for real `w`, principal branch.
    pub fn pow_real(&self, w: &Float) -> Self {
        self.ln().scale(w).exp()
    }
}

impl Add for &Cf {
    type Output = Cf;
    fn add(self, other: &Cf) -> Cf {
        let p = self.prec().max(other.prec());
        Cf {
            re: Float::with_val(p, &self.re + &other.re),
            im: Float::with_val(p, &self.im + &other.im),
        }
    }
}

impl Sub for &Cf {
    type Output = Cf;
    fn sub(self, other: &Cf) -> Cf {
        let p = self.prec().max(other.prec());
        Cf {
            re: Float::with_val(p, &self.re - &other.re),
            im: Float::with_val(p, &self.im - &other.im),
        }
    }
}

impl Mul for &Cf {
    type Output = Cf;
    fn mul(self, other: &Cf) -> Cf {
        let p = self.prec().max(other.prec());
        let re =
            Float::with_val(p, &self.re * &other.re) - Float::with_val(p, &self.im * &other.im);
        let im =
            Float::with_val(p, &self.re * &other.im) + Float::with_val(p, &self.im * &other.re);
        Cf { re, im }
    }
}

impl Neg for &Cf {
    type Output = Cf;
    fn neg(self) -> Cf {
        Cf {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }
}

impl fmt::Display for Cf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.to_c64();
        let part = |x: f64| {
            if x != 0.0 && x.abs() < 1e-6 {
                format!("{x:e}")
            } else {
                format!("{x}")
            }
        };
        let sign = if z.im.is_sign_negative() { '-' } else { '+' };
        write!(f, "{} {sign} {}i", part(z.re), part(z.im.abs()))
    }
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `Γ(x)` for rational `x > 0`.
pub fn gamma(prec: u32, x: &Rat) -> Float {
    Float::with_val(prec, x).gamma()
}

/// `log₂ |x|`, `-∞` for zero.
pub fn log2_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    Float::with_val(64, x.abs_ref()).log2().to_f64()
}

/// Fixed-point decimal text with `digits` significant digits.
pub fn decimal_string(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let sci = x.to_string_radix(10, Some(digits.max(1)));
    let (mantissa, exp) = match sci.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().expect("exponent")),
        None => (sci.as_str(), 0),
    };
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits_all: String = format!("{int_part}{frac_part}");
    // position of the decimal point within digits_all
    let point = int_part.len() as i64 + exp;
    let mut out = String::from(sign);
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-point) as usize));
        out.push_str(&digits_all);
    } else if point as usize >= digits_all.len() {
        out.push_str(&digits_all);
        out.extend(std::iter::repeat_n('0', point as usize - digits_all.len()));
    } else {
        out.push_str(&digits_all[..point as usize]);
        out.push('.');
        out.push_str(&digits_all[point as usize..]);
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(FloatCfg::new(52, 1e-10, 10).is_err());
        assert!(FloatCfg::new(64, 0.0, 10).is_err());
        assert!(FloatCfg::new(64, 1e-10, 10).is_ok());
        assert_eq!(FloatCfg::default().decimal_digits(), 77);
    }

    #[test]
    fn complex_arithmetic() {
        let p = 128;
        let a = Cf::from_f64(p, 1.0, 2.0);
        let b = Cf::from_f64(p, -3.0, 0.5);
        let q = (&a * &b).div(&b);
        assert!((&q - &a).abs() < 1e-35);
        let z = Cf::from_f64(p, 0.3, -1.7);
        assert!((&z.ln().exp() - &z).abs() < 1e-35);
        let e = Cf::imag(pi(p)).exp();
        assert!((&e + &Cf::one(p)).abs() < 1e-35);
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn decimal_text() {
        let p = 128;
        assert_eq!(decimal_string(&Float::with_val(p, 1.5), 10), "1.5");
        assert_eq!(decimal_string(&Float::with_val(p, -0.00125), 5), "-0.00125");
        assert_eq!(decimal_string(&Float::with_val(p, 1200), 6), "1200");
        assert_eq!(decimal_string(&Float::with_val(p, 0), 6), "0");
        assert!(decimal_string(&pi(p), 20).starts_with("3.141592653589793238"));
    }
}
