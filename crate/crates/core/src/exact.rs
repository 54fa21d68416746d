//! Exact scalars shared by every table in the crate.
//!
//! [`Rat`] is GMP's reduced rational. It is normalized after every
//! operation, so equality is structural and the printed form `num/den`
//! (or bare `n` for integers, `0` for zero) is canonical.

use std::fmt;
use std::str::FromStr;

use rug::integer::IsPrime;
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision reduced rational.
pub type Rat = Rational;

/// Parses `p/q`, `-p/q` or a bare integer into a reduced rational.
pub fn parse_rat(input: &str) -> Result<Rat> {
    let err = |reason: &str| Error::ParseRational {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let (num, den) = match input.split_once('/') {
        Some((n, d)) => (n, d),
        None => (input, "1"),
    };
    let digits = |s: &str, signed: bool| {
        let body = if signed {
            s.strip_prefix(['-', '+']).unwrap_or(s)
        } else {
            s
        };
        !body.is_empty() && body.bytes().all(|c| c.is_ascii_digit())
    };
    if !digits(num, true) {
        return Err(err(
            "numerator must be an optionally signed decimal integer",
        ));
    }
    if !digits(den, false) {
        return Err(err("denominator must be an unsigned decimal integer"));
    }
    let num = Integer::from_str(num).map_err(|e| err(&e.to_string()))?;
    let den = Integer::from_str(den).map_err(|e| err(&e.to_string()))?;
    if den == 0 {
        return Err(err("zero denominator"));
    }
    Ok(Rational::from((num, den)))
}

/// Canonical text form: `num/den` in lowest terms, integers bare.
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rational::from((num, den))
}

/// Serde adapter writing a [`Rat`] as its canonical string.
pub mod rat_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of rationals.
pub mod rat_vec_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rat_to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// The positive parameter pair `(a, b)` indexing `Φ_{a,b}(z) = ₁F₁(a; a+b; z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    a: Rat,
    b: Rat,
}

impl Params {
    pub fn new(a: Rat, b: Rat) -> Result<Self> {
        if a <= 0 || b <= 0 {
            return Err(Error::InvalidParams(format!(
                "a and b must be positive, got a = {a}, b = {b}"
            )));
        }
        Ok(Params { a, b })
    }

    /// Convenience constructor for integer parameters.
    ///
    /// Panics if either value is not positive.
    pub fn ints(a: i64, b: i64) -> Self {
        Params::new(Rat::from(a), Rat::from(b)).expect("positive integer parameters")
    }

    pub fn parse(a: &str, b: &str) -> Result<Self> {
        Params::new(parse_rat(a)?, parse_rat(b)?)
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    /// `a + b`, the lower Kummer parameter.
    pub fn c(&self) -> Rat {
        Rat::from(&self.a + &self.b)
    }

    /// `(b, a)`.
    pub fn swapped(&self) -> Self {
        Params {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// `(a + 1, b)`, the parameters of `Φ'` up to the factor `a/(a+b)`.
    pub fn shift_a(&self) -> Self {
        Params {
            a: Rat::from(&self.a + 1u32),
            b: self.b.clone(),
        }
    }

    /// `(a, b + 1)`.
    pub fn shift_b(&self) -> Self {
        Params {
            a: self.a.clone(),
            b: Rat::from(&self.b + 1u32),
        }
    }

    /// `b` as an integer when `a = 1` and `b` is a positive integer.
    pub fn howard_b(&self) -> Option<u32> {
        if self.a == 1 {
            as_small_int(&self.b)
        } else {
            None
        }
    }

    /// Both parameters as positive integers, when they are.
    pub fn as_ints(&self) -> Option<(u32, u32)> {
        Some((as_small_int(&self.a)?, as_small_int(&self.b)?))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={})", self.a, self.b)
    }
}

fn as_small_int(r: &Rat) -> Option<u32> {
    if *r.denom() == 1 {
        r.numer().to_u32()
    } else {
        None
    }
}

/// `(a)_r / (a+b)_r = ∏_{k<r} (a+k)/(a+b+k)`, the `r`-th moment of a
/// Beta(a, b) variable and the ratio `B(a+r, b)/B(a, b)`.
pub fn pochhammer_ratio(params: &Params, r: u32) -> Rat {
    let mut acc = Rat::from(1);
    let c = params.c();
    for k in 0..r {
        acc *= Rat::from(params.a() + k) / Rat::from(&c + k);
    }
    acc
}

/// `[pochhammer_ratio(params, 0), …, pochhammer_ratio(params, n)]`.
pub fn pochhammer_ratios(params: &Params, n: usize) -> Vec<Rat> {
    let c = params.c();
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rat::from(1));
    for k in 0..n {
        let step = Rat::from(params.a() + k as u32) / Rat::from(&c + k as u32);
        let next = Rat::from(&out[k] * &step);
        out.push(next);
    }
    out
}

/// Binomial coefficient, zero when `k > n`.
pub fn binom(n: u32, k: u32) -> Rat {
    Rat::from(binom_int(n, k))
}

pub fn binom_int(n: u32, k: u32) -> Integer {
    if k > n {
        Integer::new()
    } else {
        Integer::from(Integer::binomial_u(n, k))
    }
}

/// Generalized binomial `u (u-1) ⋯ (u-k+1) / k!` with rational top.
pub fn gen_binom(u: &Rat, k: u32) -> Rat {
    let mut acc = Rat::from(1);
    for j in 0..k {
        acc *= Rat::from(u - j);
        acc /= j + 1;
    }
    acc
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Exponent of 2 in `n`.
pub fn nu2(n: u64) -> u32 {
    assert!(n >= 1, "nu2 is defined for positive integers");
    n.trailing_zeros()
}

/// Prime factorization, primes ascending.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Factorization {
    pub pairs: Vec<(Integer, u32)>,
}

impl Factorization {
    pub fn product(&self) -> Integer {
        self.pairs.iter().fold(Integer::from(1), |acc, (p, e)| {
            acc * Integer::from(p.pow(*e))
        })
    }

    pub fn primes(&self) -> impl Iterator<Item = &Integer> {
        self.pairs.iter().map(|(p, _)| p)
    }

    pub fn is_square_free(&self) -> bool {
        self.pairs.iter().all(|(_, e)| *e == 1)
    }

    pub fn largest_prime(&self) -> Option<&Integer> {
        self.pairs.last().map(|(p, _)| p)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Largest trial divisor tried before giving up on a composite cofactor.
pub const TRIAL_DIVISION_LIMIT: u64 = u32::MAX as u64 - 64;

/// Trial division with a mod-30 wheel. A cofactor that passes a strong
/// probable-prime test is accepted as prime without dividing further.
pub fn factorize(n: &Integer) -> Result<Factorization> {
    if *n < 1 {
        return Err(Error::InvalidParams(format!(
            "factorize expects a positive integer, got {n}"
        )));
    }
    fn strip(rest: &mut Integer, p: u32) -> u32 {
        let mut e = 0;
        while rest.is_divisible_u(p) {
            *rest /= p;
            e += 1;
        }
        e
    }

    let mut rest = n.clone();
    let mut pairs = Vec::new();
    for p in [2u32, 3, 5] {
        let e = strip(&mut rest, p);
        if e > 0 {
            pairs.push((Integer::from(p), e));
        }
    }
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut d = 7u64;
    let mut w = 0;
    let mut recheck = true;
    while rest > 1 {
        if Integer::from(d) * d > rest {
            break;
        }
        if recheck {
            if rest.is_probably_prime(30) != IsPrime::No {
                break;
            }
            recheck = false;
        }
        if d > TRIAL_DIVISION_LIMIT {
            return Err(Error::FactorizationBudget {
                bits: n.significant_bits(),
            });
        }
        let e = strip(&mut rest, d as u32);
        if e > 0 {
            pairs.push((Integer::from(d), e));
            recheck = true;
        }
        d += WHEEL[w];
        w = (w + 1) % WHEEL.len();
    }
    if rest > 1 {
        pairs.push((rest, 1));
    }
    pairs.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(Factorization { pairs })
}
