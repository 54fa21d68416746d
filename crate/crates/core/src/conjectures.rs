//! Denominator scans for the one-parameter family `B_n^{(b)} = B_n^{(1,b)}`.
//!
//! Two observations are tested over ranges of `b` and `n`: the number `α(b)`
//! of odd denominators at the start of the sequence equals `ν₂(b)+1` when
//! `4 ∤ b` and `2^{ν₂(b)}` otherwise, and every prime dividing
//! `den B_n^{(b)}` is at most `n + b`. The classical von Staudt–Clausen
//! denominators serve as an end-to-end oracle at `b = 1`.

use rug::integer::IsPrime;
use rug::Integer;
use serde::Serialize;

use crate::bernoulli::{bern_numbers, BernoulliStream};
use crate::error::{Error, Result};
use crate::exact::{factorize, nu2, Factorization, Params};

/// Reduced denominators of `B_0^{(b)} … B_nmax^{(b)}`; a zero value has denominator 1.
pub fn denom_seq(b: u32, nmax: usize) -> Vec<Integer> {
    assert!(b >= 1, "b must be a positive integer");
    bern_numbers(&Params::ints(1, b as i64), nmax)
        .numbers
        .iter()
        .map(|x| x.denom().clone())
        .collect()
}

/// `ν₂(b)+1` if `4 ∤ b`, else `2^{ν₂(b)}`.
pub fn alpha_predicted(b: u32) -> u64 {
    let v = nu2(b as u64);
    if b.is_multiple_of(4) {
        1u64 << v
    } else {
        v as u64 + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaResult {
    pub b: u32,
    pub observed: u64,
    pub predicted: u64,
    pub agree: bool,
}

/// Length of the initial run of odd denominators, compared with the
/// predicted value. Inconclusive when no even denominator appears by `nmax`.
pub fn alpha_check(b: u32, nmax: usize) -> Result<AlphaResult> {
    if b == 0 {
        return Err(Error::InvalidParams("b must be a positive integer".into()));
    }
    let stream = BernoulliStream::new(&Params::ints(1, b as i64));
    for (n, x) in stream.take(nmax + 1).enumerate() {
        if x.denom().is_even() {
            let observed = n as u64;
            let predicted = alpha_predicted(b);
            return Ok(AlphaResult {
                b,
                observed,
                predicted,
                agree: observed == predicted,
            });
        }
    }
    Err(Error::Inconclusive(format!(
        "no even denominator among B_0..B_{nmax} for b = {b}"
    )))
}

/// A prime above `n + b` dividing `den B_n^{(b)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeViolation {
    pub b: u32,
    pub n: u32,
    #[serde(serialize_with = "integer_string")]
    pub prime: Integer,
}

fn integer_string<S: serde::Serializer>(x: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Records every `n ≤ nmax` whose denominator has a prime factor above `n + b`
/// (the smallest such prime is reported).
pub fn prime_bound_check(b: u32, nmax: usize) -> Result<Vec<PrimeViolation>> {
    let dens = denom_seq(b, nmax);
    let mut out = Vec::new();
    for (n, den) in dens.iter().enumerate() {
        let bound = n as u32 + b;
        let mut rest = den.clone();
        let mut p = Integer::from(2);
        while p <= bound {
            while rest.is_divisible(&p) {
                rest /= &p;
            }
            p.next_prime_mut();
        }
        if rest != 1 {
            let f = factorize(&rest)?;
            let prime = f.primes().next().expect("cofactor above 1").clone();
            out.push(PrimeViolation {
                b,
                n: n as u32,
                prime,
            });
        }
    }
    Ok(out)
}

/// `∏ p` over primes `p` with `(p − 1) | m`.
pub fn staudt_product(m: u64) -> Integer {
    let mut prod = Integer::from(1);
    for d in 1..=m {
        if m.is_multiple_of(d) {
            let p = Integer::from(d + 1);
            if p.is_probably_prime(30) != IsPrime::No {
                prod *= p;
            }
        }
    }
    prod
}

/// Indices `n ≤ nmax` where `den B_{2n}` differs from `∏_{(p−1)|2n} p`.
pub fn vsc_check(nmax: usize) -> Vec<u32> {
    let dens = denom_seq(1, 2 * nmax);
    (1..=nmax)
        .filter(|&n| dens[2 * n] != staudt_product(2 * n as u64))
        .map(|n| n as u32)
        .collect()
}

/// Indices `n ≤ nmax` whose denominator is not square-free, with its factorization.
pub fn non_square_free(b: u32, nmax: usize) -> Result<Vec<(u32, Factorization)>> {
    let mut out = Vec::new();
    for (n, den) in denom_seq(b, nmax).iter().enumerate() {
        let f = factorize(den)?;
        if !f.is_square_free() {
            out.push((n as u32, f));
        }
    }
    Ok(out)
}

/// Scan range used for `α(b)`: at least `4b + 64` terms.
pub fn alpha_nmax(b: u32, nmax: usize) -> usize {
    nmax.max(4 * b as usize + 64)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjReport {
    pub b_range: [u32; 2],
    pub n_max: usize,
    pub alpha: Vec<AlphaResult>,
    pub alpha_disagreements: Vec<u32>,
    pub alpha_inconclusive: Vec<u32>,
    pub violations: Vec<PrimeViolation>,
    pub vsc_failures: Vec<u32>,
}

impl ConjReport {
    /// True when every list of failures is empty.
    pub fn is_clean(&self) -> bool {
        self.alpha_disagreements.is_empty()
            && self.alpha_inconclusive.is_empty()
            && self.violations.is_empty()
            && self.vsc_failures.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Both scans for `1 ≤ b ≤ bmax`, `n ≤ nmax`, and the classical oracle for `n ≤ nmax`.
pub fn conjecture_scan(bmax: u32, nmax: usize) -> Result<ConjReport> {
    if bmax == 0 {
        return Err(Error::InvalidParams("bmax must be at least 1".into()));
    }
    let mut report = ConjReport {
        b_range: [1, bmax],
        n_max: nmax,
        alpha: Vec::new(),
        alpha_disagreements: Vec::new(),
        alpha_inconclusive: Vec::new(),
        violations: Vec::new(),
        vsc_failures: vsc_check(nmax.max(1)),
    };
    for b in 1..=bmax {
        match alpha_check(b, alpha_nmax(b, nmax)) {
            Ok(r) => {
                if !r.agree {
                    report.alpha_disagreements.push(b);
                }
                report.alpha.push(r);
            }
            Err(Error::Inconclusive(_)) => report.alpha_inconclusive.push(b),
            Err(e) => return Err(e),
        }
        report.violations.extend(prime_bound_check(b, nmax)?);
    }
    Ok(report)
}
