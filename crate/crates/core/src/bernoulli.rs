//! Hypergeometric Bernoulli numbers and polynomials.
//!
//! `B_n^{(a,b)}` are the exponential generating coefficients of
//! `1/Φ_{a,b}(z)`; they are the moments of the zero-built variable `ℨ_{a,b}`,
//! while `(a)_n/(a+b)_n` are the moments of the Beta(a, b) variable `𝔅_{a,b}`.
//! Both variables are handled only through these exact moment sequences.
//! `B_n^{(a,b)}(x) = Σ_k C(n,k) B_k x^{n−k}` and the companion family
//! `C_n^{(a,b)}(x) = Σ_k C(n,k) (a)_k/(a+b)_k · x^{n−k}` are the Appell
//! sequences built on them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    binom, binom_int, factorial, gen_binom, pochhammer_ratios, rat_to_string, rat_vec_serde,
    Params, Rat,
};
use crate::poly::Poly;
use crate::report::CheckReport;
use crate::series::phi_series;
use crate::zeta::zeta_linear;

/// `B_0 … B_nmax` for one parameter pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernTable {
    pub params: Params,
    pub numbers: Vec<Rat>,
}

impl BernTable {
    pub fn nmax(&self) -> usize {
        self.numbers.len() - 1
    }

    pub fn get(&self, n: usize) -> &Rat {
        &self.numbers[n]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(BernTableJson {
            a: rat_to_string(self.params.a()),
            b: rat_to_string(self.params.b()),
            bernoulli: self.numbers.clone(),
        })
        .expect("table serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: BernTableJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidParams(format!("malformed Bernoulli table: {e}")))?;
        if raw.bernoulli.is_empty() {
            return Err(Error::InvalidParams("empty Bernoulli table".into()));
        }
        Ok(BernTable {
            params: Params::parse(&raw.a, &raw.b)?,
            numbers: raw.bernoulli,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value\n");
        for (n, v) in self.numbers.iter().enumerate() {
            out.push_str(&format!("{n},{v}\n"));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct BernTableJson {
    a: String,
    b: String,
    #[serde(with = "rat_vec_serde")]
    bernoulli: Vec<Rat>,
}

/// `B_n = n! · [z^n] (1/Φ_{a,b})` via exact series inversion.
pub fn bern_numbers(params: &Params, nmax: usize) -> BernTable {
    let inv = phi_series(params, nmax)
        .inv()
        .expect("Φ has constant term 1");
    BernTable {
        params: params.clone(),
        numbers: (0..=nmax).map(|n| inv.egf_coeff(n)).collect(),
    }
}

/// Streams `B_0, B_1, …` through the conjugacy relation
/// `Σ_k C(n,k) (a)_{n−k}/(a+b)_{n−k} · B_k = δ_n`, one number per step.
/// Used by scans that stop as soon as a condition is met.
#[derive(Clone, Debug)]
pub struct BernoulliStream {
    a: Rat,
    c: Rat,
    moments: Vec<Rat>,
    numbers: Vec<Rat>,
}

impl BernoulliStream {
    pub fn new(params: &Params) -> Self {
        BernoulliStream {
            a: params.a().clone(),
            c: params.c(),
            moments: vec![Rat::from(1)],
            numbers: Vec::new(),
        }
    }
}

impl Iterator for BernoulliStream {
    type Item = Rat;

    fn next(&mut self) -> Option<Rat> {
        let n = self.numbers.len();
        if n == 0 {
            self.numbers.push(Rat::from(1));
            return Some(Rat::from(1));
        }
        let k = (n - 1) as u32;
        let step = Rat::from(&self.a + k) / Rat::from(&self.c + k);
        let next = Rat::from(&self.moments[n - 1] * &step);
        self.moments.push(next);
        let mut acc = Rat::new();
        for (k, bk) in self.numbers.iter().enumerate() {
            acc += Rat::from(bk * &self.moments[n - k]) * binom_int(n as u32, k as u32);
        }
        let bn = -acc;
        self.numbers.push(bn.clone());
        Some(bn)
    }
}

/// Howard's numbers `A_{b,n}` from `Σ_{r=0}^{n} C(n+b, r) A_{b,r} = 0` (`n > 0`),
/// `A_{b,0} = 1`. These coincide with `B_n^{(1,b)}`.
pub fn bern_howard(b: u32, nmax: usize) -> BernTable {
    assert!(b >= 1, "Howard's recurrence needs an integer b ≥ 1");
    let mut numbers: Vec<Rat> = vec![Rat::from(1)];
    for n in 1..=nmax as u32 {
        let mut acc = Rat::new();
        for (r, ar) in numbers.iter().enumerate() {
            acc += Rat::from(ar * binom_int(n + b, r as u32));
        }
        numbers.push(-acc / binom_int(n + b, n));
    }
    BernTable {
        params: Params::ints(1, b as i64),
        numbers,
    }
}

/// Checks `B_0 = 1`, `B_1 = −1/(1+b)` and `B_n^{(1,b)} = −n! ζ_{1,b}(n)/b` for `2 ≤ n ≤ nmax`.
pub fn bern_zeta_relation_check(b: u32, nmax: u32) -> Result<CheckReport> {
    if nmax < 2 {
        return Err(Error::InvalidParams(format!(
            "nmax must be at least 2, got {nmax}"
        )));
    }
    let params = Params::ints(1, b as i64);
    let bern = bern_numbers(&params, nmax as usize);
    let zeta = zeta_linear(&params, nmax)?;
    let mut report = CheckReport::new(format!("bernoulli-zeta relation b={b}"));
    report.record(0, *bern.get(0) == 1);
    report.record(1, *bern.get(1) == (-1, b + 1));
    for n in 2..=nmax {
        let expect = -Rat::from(zeta.get(n) * factorial(n)) / b;
        report.record(n, *bern.get(n as usize) == expect);
    }
    Ok(report)
}

fn appell(moments: &[Rat], n: usize) -> Poly {
    // Σ_k C(n,k) m_k x^{n−k}
    let coeffs = (0..=n)
        .map(|j| Rat::from(&moments[n - j] * binom_int(n as u32, j as u32)))
        .collect();
    Poly::new(coeffs)
}

/// `B_n^{(a,b)}(x) = Σ_k C(n,k) B_k x^{n−k}`.
pub fn bern_poly(params: &Params, n: usize) -> Poly {
    appell(&bern_numbers(params, n).numbers, n)
}

/// `B_0(x) … B_nmax(x)`.
pub fn bern_polys(params: &Params, nmax: usize) -> Vec<Poly> {
    let numbers = bern_numbers(params, nmax).numbers;
    (0..=nmax).map(|n| appell(&numbers, n)).collect()
}

/// `C_n^{(a,b)}(z) = E(z + 𝔅_{a,b})^n`.
pub fn companion_poly(params: &Params, n: usize) -> Poly {
    appell(&pochhammer_ratios(params, n), n)
}

pub fn companion_polys(params: &Params, nmax: usize) -> Vec<Poly> {
    let moments = pochhammer_ratios(params, nmax);
    (0..=nmax).map(|n| appell(&moments, n)).collect()
}

/// Cumulants `κ(1), κ(2), …` of a moment sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CumulantSeq {
    #[serde(with = "rat_vec_serde")]
    pub kappas: Vec<Rat>,
}

impl CumulantSeq {
    /// `κ(n)`, one-based.
    pub fn kappa(&self, n: usize) -> &Rat {
        &self.kappas[n - 1]
    }

    pub fn len(&self) -> usize {
        self.kappas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kappas.is_empty()
    }

    pub fn negated(&self) -> CumulantSeq {
        CumulantSeq {
            kappas: self.kappas.iter().map(|k| Rat::from(-k)).collect(),
        }
    }

    /// Moments `1, m_1, …, m_N` recovered from the cumulants.
    pub fn to_moments(&self) -> Vec<Rat> {
        let mut m = vec![Rat::from(1)];
        for n in 1..=self.kappas.len() {
            let mut acc = self.kappa(n).clone();
            for j in 1..n {
                acc += Rat::from(self.kappa(j) * &m[n - j]) * binom_int(n as u32 - 1, j as u32 - 1);
            }
            m.push(acc);
        }
        m
    }
}

/// `κ(n) = m_n − Σ_{j=1}^{n−1} C(n−1, j−1) κ(j) m_{n−j}`, for moments starting at `m_0 = 1`.
pub fn moments_to_cumulants(moments: &[Rat]) -> Result<CumulantSeq> {
    if moments.first().is_none_or(|m0| *m0 != 1) {
        return Err(Error::InvalidParams(
            "moment sequences must start with m_0 = 1".into(),
        ));
    }
    let mut kappas: Vec<Rat> = Vec::with_capacity(moments.len().saturating_sub(1));
    for n in 1..moments.len() {
        let mut acc = moments[n].clone();
        for j in 1..n {
            acc -=
                Rat::from(&kappas[j - 1] * &moments[n - j]) * binom_int(n as u32 - 1, j as u32 - 1);
        }
        kappas.push(acc);
    }
    Ok(CumulantSeq { kappas })
}

/// Cumulants of `ℨ_{a,b}` from a zeta table:
/// `κ(1) = −a/(a+b)`, `κ(j) = (j−1)! ζ(j)` for `j ≥ 2`.
fn zeta_cumulants(params: &Params, count: u32) -> Result<Vec<Rat>> {
    let mut kappas = vec![-Rat::from(params.a() / params.c())];
    if count >= 2 {
        let zeta = zeta_linear(params, count)?;
        for j in 2..=count {
            kappas.push(Rat::from(zeta.get(j) * factorial(j - 1)));
        }
    }
    Ok(kappas)
}

/// Beta-cumulant and conjugate-negation identities through `pmax`.
pub fn cumulant_checks(params: &Params, pmax: u32) -> Result<Vec<CheckReport>> {
    if pmax < 2 {
        return Err(Error::InvalidParams(format!(
            "pmax must be at least 2, got {pmax}"
        )));
    }
    let zeta = zeta_linear(params, pmax)?;
    let beta = moments_to_cumulants(&pochhammer_ratios(params, pmax as usize))?;
    let bern = moments_to_cumulants(&bern_numbers(params, pmax as usize).numbers)?;

    let mut beta_report = CheckReport::new("beta cumulants vs zeta");
    beta_report.record(1, beta.kappa(1) == &Rat::from(params.a() / params.c()));
    for p in 2..=pmax {
        let expect = -Rat::from(zeta.get(p) * factorial(p - 1));
        beta_report.record(p, *beta.kappa(p as usize) == expect);
    }

    let mut neg_report = CheckReport::new("bernoulli cumulants = -beta");
    for p in 1..=pmax {
        neg_report.record(
            p,
            *bern.kappa(p as usize) == Rat::from(-beta.kappa(p as usize)),
        );
    }
    Ok(vec![beta_report, neg_report])
}

/// `Σ_k C(n,k) B_k (a)_{n−k}/(a+b)_{n−k} = δ_n`.
pub fn conjugacy_check(params: &Params, nmax: u32) -> CheckReport {
    let bern = bern_numbers(params, nmax as usize);
    let moments = pochhammer_ratios(params, nmax as usize);
    let mut report = CheckReport::new("conjugacy E(B+Z)^n = delta");
    for n in 0..=nmax as usize {
        let mut acc = Rat::new();
        for k in 0..=n {
            acc += Rat::from(bern.get(k) * &moments[n - k]) * binom_int(n as u32, k as u32);
        }
        report.record(n as u32, acc == if n == 0 { 1 } else { 0 });
    }
    report
}

/// Appell property `B_n'(x) = n B_{n−1}(x)` for both families.
pub fn appell_check(params: &Params, nmax: u32) -> CheckReport {
    let bs = bern_polys(params, nmax as usize);
    let cs = companion_polys(params, nmax as usize);
    let mut report = CheckReport::new("appell derivative property");
    for n in 1..=nmax as usize {
        let k = Rat::from(n as u32);
        let ok_b = bs[n].derivative() == bs[n - 1].scale(&k);
        let ok_c = cs[n].derivative() == cs[n - 1].scale(&k);
        let monic =
            bs[n].leading() == Some(&Rat::from(1)) && cs[n].leading() == Some(&Rat::from(1));
        report.record(n as u32, ok_b && ok_c && monic);
    }
    report
}

/// Both polynomial recurrences driven by the cumulants of `ℨ_{a,b}`:
///
/// `B_{n+1}(z) − z B_n(z) = Σ_{j=0}^{n} C(n,j) κ(j+1) B_{n−j}(z)` and
/// `C_{n+1}(z) − z C_n(z) = −Σ_{j=0}^{n} C(n,j) κ(j+1) C_{n−j}(z)`,
/// for `0 ≤ n < nmax`.
pub fn conjugate_recurrence_check(params: &Params, nmax: u32) -> Result<Vec<CheckReport>> {
    if nmax < 1 {
        return Err(Error::InvalidParams("nmax must be at least 1".into()));
    }
    let kappas = zeta_cumulants(params, nmax)?;
    let bs = bern_polys(params, nmax as usize);
    let cs = companion_polys(params, nmax as usize);
    let mut b_report = CheckReport::new("B-family conjugate recurrence");
    let mut c_report = CheckReport::new("C-family conjugate recurrence");
    for n in 0..nmax as usize {
        let mut sum_b = Poly::zero();
        let mut sum_c = Poly::zero();
        for j in 0..=n {
            let w = Rat::from(&kappas[j] * binom_int(n as u32, j as u32));
            sum_b = sum_b.add(&bs[n - j].scale(&w));
            sum_c = sum_c.add(&cs[n - j].scale(&w));
        }
        let lhs_b = bs[n + 1].sub(&bs[n].mul_x());
        let lhs_c = cs[n + 1].sub(&cs[n].mul_x());
        b_report.record(n as u32, lhs_b == sum_b);
        c_report.record(n as u32, lhs_c.add(&sum_c).is_zero());
    }
    Ok(vec![b_report, c_report])
}

/// `B_k(x+1) = Σ_{p=0}^{b−1} C(k,p) B_{k−p}(x) + C(k,b) x^{k−b}` for the
/// one-parameter family `B_k^{(b)} = B_k^{(1,b)}`, `0 ≤ k ≤ kmax`.
pub fn dilcher_check(b: u32, kmax: u32) -> CheckReport {
    assert!(b >= 1, "the difference recursion needs an integer b ≥ 1");
    let params = Params::ints(1, b as i64);
    let bs = bern_polys(&params, kmax as usize);
    let one = Rat::from(1);
    let mut report = CheckReport::new(format!("difference recursion b={b}"));
    for k in 0..=kmax {
        let lhs = bs[k as usize].shift(&one);
        let mut rhs = Poly::zero();
        for p in 0..b.min(k + 1) {
            rhs = rhs.add(&bs[(k - p) as usize].scale(&binom(k, p)));
        }
        if k >= b {
            rhs = rhs.add(&Poly::monomial(binom(k, b), (k - b) as usize));
        }
        report.record(k, lhs == rhs);
    }
    report
}

/// `B_n^{(a,b)}(1−x) = (−1)^n B_n^{(b,a)}(x)`.
pub fn symmetry_check(params: &Params, nmax: u32) -> CheckReport {
    let here = bern_polys(params, nmax as usize);
    let there = bern_polys(&params.swapped(), nmax as usize);
    let one = Rat::from(1);
    let minus_one = Rat::from(-1);
    let mut report = CheckReport::new("reflection symmetry");
    for n in 0..=nmax as usize {
        let lhs = here[n].compose_affine(&one, &minus_one);
        let rhs = if n % 2 == 0 {
            there[n].clone()
        } else {
            there[n].scale(&minus_one)
        };
        report.record(n as u32, lhs == rhs);
    }
    report
}

/// `Σ_k C(n,k) (a)_{n−k}/(a+b)_{n−k} · B_k(x) = x^n`. For integer `a, b`
/// also checks the binomial-coefficient form
/// `Σ_k C(a+b+n−1, k) C(a−1+n−k, a−1) B_k(x) = (a+b)_n x^n / n!`.
pub fn change_of_basis_check(params: &Params, nmax: u32) -> CheckReport {
    let bs = bern_polys(params, nmax as usize);
    let moments = pochhammer_ratios(params, nmax as usize);
    let ints = params.as_ints();
    let mut report = CheckReport::new("change of basis");
    for n in 0..=nmax {
        let mut lhs = Poly::zero();
        for k in 0..=n {
            let w = Rat::from(&moments[(n - k) as usize] * binom_int(n, k));
            lhs = lhs.add(&bs[k as usize].scale(&w));
        }
        let mut pass = lhs == Poly::monomial(Rat::from(1), n as usize);
        let mut detail = None;
        if let Some((a, b)) = ints {
            let top = Rat::from(a + b + n) - 1u32;
            let mut lhs2 = Poly::zero();
            for k in 0..=n {
                let w = gen_binom(&top, k) * gen_binom(&Rat::from(a - 1 + n - k), a - 1);
                lhs2 = lhs2.add(&bs[k as usize].scale(&w));
            }
            // (a+b)_n / n!
            let rising = gen_binom(&top, n);
            let ok2 = lhs2 == Poly::monomial(rising, n as usize);
            if !ok2 {
                detail = Some("binomial-coefficient form failed".to_string());
            }
            pass &= ok2;
        }
        match detail {
            Some(d) => report.record_with(n, pass, d),
            None => report.record(n, pass),
        }
    }
    report
}
