//! Exact values `ζ^H_{a,b}(p)` at integers `p ≥ 2`.
//!
//! Four independent routes produce the same table:
//!
//! * [`zeta_linear`]: the Beta-ratio linear recurrence, in solved form
//!   `ζ(p) = −b·R(p−1) / ((a+b)(a+b+p−1)(p−2)!) − Σ_{r=1}^{p−2} R(r)/r! · ζ(p−r)`
//!   where `R(r) = (a)_r/(a+b)_r = B(a+r, b)/B(a, b)`;
//! * [`zeta_quadratic`]: `(a+b+p+1) ζ(p+2) = Σ_{k=1}^{p−1} ζ(k+1) ζ(p−k+1) − (a−b)/(a+b) · ζ(p+1)`,
//!   seeded with `ζ(2)`;
//! * [`zeta_series_ratio`]: coefficients of `Φ_{a,b+1}/Φ_{a,b} = 1 + (a+b)/b · Σ ζ(k+1) z^k`;
//! * [`zeta_from_bernoulli`]: cumulants of the hypergeometric Bernoulli
//!   moments, `κ(p) = (p−1)! ζ(p)`.
//!
//! `ζ(1)` is never stored; see [`zeta_1b_at_one`].

use std::collections::BTreeMap;
use std::fmt;

use rug::ops::Pow;
use serde::{Deserialize, Serialize};

use crate::bernoulli::{bern_numbers, moments_to_cumulants};
use crate::error::{Error, Result};
use crate::exact::{factorial, parse_rat, pochhammer_ratios, rat_to_string, Params, Rat};
use crate::report::CheckReport;
use crate::series::phi_series;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Linear,
    Quadratic,
    SeriesRatio,
    Bernoulli,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Linear => "linear",
            Method::Quadratic => "quadratic",
            Method::SeriesRatio => "series-ratio",
            Method::Bernoulli => "bernoulli",
        })
    }
}

/// `ζ^H_{a,b}(p)` for `2 ≤ p ≤ pmax`, tagged with the route that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaTable {
    pub params: Params,
    pub pmax: u32,
    pub method: Method,
    values: Vec<Rat>,
}

impl ZetaTable {
    fn from_values(params: &Params, method: Method, values: Vec<Rat>) -> Self {
        ZetaTable {
            params: params.clone(),
            pmax: values.len() as u32 + 1,
            method,
            values,
        }
    }

    /// `ζ(p)`; panics outside `2..=pmax`.
    pub fn get(&self, p: u32) -> &Rat {
        assert!(
            (2..=self.pmax).contains(&p),
            "ζ({p}) outside table range 2..={}",
            self.pmax
        );
        &self.values[(p - 2) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Rat)> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (i as u32 + 2, v))
    }

    /// Same values regardless of which route computed them.
    pub fn same_values(&self, other: &ZetaTable) -> bool {
        self.params == other.params && self.values == other.values
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ZetaTableJson::from(self)).expect("table serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: ZetaTableJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidParams(format!("malformed zeta table: {e}")))?;
        let params = Params::parse(&raw.a, &raw.b)?;
        let mut values = Vec::with_capacity(raw.values.len());
        for (expect, (p, v)) in (2u32..).zip(&raw.values) {
            if *p != expect {
                return Err(Error::InvalidParams(format!(
                    "zeta table keys must run 2, 3, …; found {p} where {expect} was expected"
                )));
            }
            values.push(parse_rat(v)?);
        }
        if values.is_empty() {
            return Err(Error::InvalidParams("empty zeta table".into()));
        }
        Ok(ZetaTable::from_values(&params, raw.method, values))
    }

    /// `p,value` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,value\n");
        for (p, v) in self.iter() {
            out.push_str(&format!("{p},{v}\n"));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct ZetaTableJson {
    a: String,
    b: String,
    method: Method,
    values: BTreeMap<u32, String>,
}

impl From<&ZetaTable> for ZetaTableJson {
    fn from(t: &ZetaTable) -> Self {
        ZetaTableJson {
            a: rat_to_string(t.params.a()),
            b: rat_to_string(t.params.b()),
            method: t.method,
            values: t.iter().map(|(p, v)| (p, rat_to_string(v))).collect(),
        }
    }
}

fn check_pmax(pmax: u32) -> Result<()> {
    if pmax < 2 {
        return Err(Error::InvalidParams(format!(
            "pmax must be at least 2, got {pmax}"
        )));
    }
    Ok(())
}

/// Closed forms of `ζ(2)`, `ζ(3)`, `ζ(4)` as rational functions of `(a, b)`.
pub fn zeta_closed_small(params: &Params) -> (Rat, Rat, Rat) {
    let a = params.a().clone();
    let b = params.b().clone();
    let ab = Rat::from(&a * &b);
    let c = params.c();
    let c1 = Rat::from(&c + 1u32);
    let c2 = Rat::from(&c + 2u32);
    let c3 = Rat::from(&c + 3u32);
    let pow = |x: &Rat, k: i32| Rat::from(x.pow(k));

    let z2 = -Rat::from(&ab / (pow(&c, 2) * &c1));
    let z3 = Rat::from(&ab * Rat::from(&a - &b)) / (pow(&c, 3) * &c1 * &c2);

    // P₄(a,b) = a² + a³ − 4ab − 2a²b + b² − 2ab² + b³
    let p4 = pow(&a, 2) + pow(&a, 3) - Rat::from(&ab * 4u32) - pow(&a, 2) * &b * 2u32 + pow(&b, 2)
        - Rat::from(&a * pow(&b, 2)) * 2u32
        + pow(&b, 3);
    let z4 = -(ab * p4) / (pow(&c, 4) * pow(&c1, 2) * &c2 * &c3);
    (z2, z3, z4)
}

/// Linear recurrence in Beta-function ratios.
pub fn zeta_linear(params: &Params, pmax: u32) -> Result<ZetaTable> {
    check_pmax(pmax)?;
    let ratios = pochhammer_ratios(params, pmax as usize);
    let inv_fact: Vec<Rat> = (0..=pmax).map(|r| Rat::from((1, factorial(r)))).collect();
    let b = params.b();
    let c = params.c();
    let mut values: Vec<Rat> = Vec::with_capacity(pmax as usize - 1);
    for p in 2..=pmax {
        let lead_den = Rat::from(&c * Rat::from(&c + (p - 1))) * factorial(p - 2);
        let mut v = -Rat::from(b * &ratios[(p - 1) as usize]) / lead_den;
        for r in 1..=(p - 2) {
            let prev = &values[(p - r - 2) as usize];
            v -= Rat::from(&ratios[r as usize] * &inv_fact[r as usize]) * prev;
        }
        values.push(v);
    }
    Ok(ZetaTable::from_values(params, Method::Linear, values))
}

/// Quadratic recurrence started from `seed2 = ζ(2)`.
///
/// The convolution runs over `k = 1..p−1` only: both factors of every
/// term are values `ζ(j)` with `j ≥ 2`.
pub fn zeta_quadratic(params: &Params, pmax: u32, seed2: &Rat) -> Result<ZetaTable> {
    check_pmax(pmax)?;
    let c = params.c();
    let skew = Rat::from(params.a() - params.b()) / &c;
    let mut z: Vec<Rat> = vec![seed2.clone()];
    // z[j] holds ζ(j + 2)
    for p in 1..=(pmax - 2) {
        let mut conv = Rat::new();
        for k in 1..p {
            conv += Rat::from(&z[(k - 1) as usize] * &z[(p - k - 1) as usize]);
        }
        let rhs = conv - Rat::from(&skew * &z[(p - 1) as usize]);
        z.push(rhs / Rat::from(&c + (p + 1)));
    }
    Ok(ZetaTable::from_values(params, Method::Quadratic, z))
}

/// Reads `ζ(k+1) = b/(a+b) · [z^k] Φ_{a,b+1}/Φ_{a,b}`.
pub fn zeta_series_ratio(params: &Params, pmax: u32) -> Result<ZetaTable> {
    check_pmax(pmax)?;
    let order = (pmax - 1) as usize;
    let ratio = phi_series(&params.shift_b(), order).div(&phi_series(params, order))?;
    let scale = Rat::from(params.b() / params.c());
    let values = (1..=order)
        .map(|k| Rat::from(ratio.coeff(k) * &scale))
        .collect();
    Ok(ZetaTable::from_values(params, Method::SeriesRatio, values))
}

/// `ζ(p) = κ_ℨ(p)/(p−1)!` from the cumulants of the Bernoulli moments.
pub fn zeta_from_bernoulli(params: &Params, pmax: u32) -> Result<ZetaTable> {
    check_pmax(pmax)?;
    let bern = bern_numbers(params, pmax as usize);
    let kappas = moments_to_cumulants(&bern.numbers)?;
    let values = (2..=pmax)
        .map(|p| Rat::from(kappas.kappa(p as usize) / factorial(p - 1)))
        .collect();
    Ok(ZetaTable::from_values(params, Method::Bernoulli, values))
}

pub fn zeta_table(params: &Params, pmax: u32, method: Method) -> Result<ZetaTable> {
    match method {
        Method::Linear => zeta_linear(params, pmax),
        Method::Quadratic => zeta_quadratic(params, pmax, &zeta_closed_small(params).0),
        Method::SeriesRatio => zeta_series_ratio(params, pmax),
        Method::Bernoulli => zeta_from_bernoulli(params, pmax),
    }
}

/// The value `ζ_{1,b}(1) = b/(1+b)` suggested by extending the
/// Bernoulli–zeta relation to `n = 1`. It is a convention only and is
/// not consumed by any recurrence.
pub fn zeta_1b_at_one(b: &Rat) -> Rat {
    Rat::from(b / Rat::from(b + 1u32))
}

/// Checks `(n−1)! Σ_{j=2}^{n} B_{n−j}/(n−j)! · ζ(j) = a/(a+b)·B_{n−1} + B_n`
/// for `2 ≤ n ≤ nmax`.
pub fn zeta_from_bernoulli_check(params: &Params, nmax: u32) -> Result<CheckReport> {
    check_pmax(nmax)?;
    let zeta = zeta_linear(params, nmax)?;
    let bern = bern_numbers(params, nmax as usize);
    let mean = Rat::from(params.a() / params.c());
    let mut report = CheckReport::new("bernoulli-zeta linear identity");
    for n in 2..=nmax {
        let mut lhs = Rat::new();
        for j in 2..=n {
            let k = n - j;
            lhs += Rat::from(bern.get(k as usize) / factorial(k)) * zeta.get(j);
        }
        lhs *= factorial(n - 1);
        let rhs = Rat::from(&mean * bern.get(n as usize - 1)) + bern.get(n as usize);
        let pass = lhs == rhs;
        if pass {
            report.record(n, true);
        } else {
            report.record_with(n, false, format!("lhs {lhs} != rhs {rhs}"));
        }
    }
    Ok(report)
}

/// Checks the Beta-moment form
/// `(n−1)! Σ_{j=2}^{n} R(n−j)/(n−j)! · ζ(j) = a/(a+b)·R(n−1) − R(n)`
/// with `R(r) = B(a+r, b)/B(a, b)`.
pub fn beta_moment_linear_check(params: &Params, nmax: u32) -> Result<CheckReport> {
    check_pmax(nmax)?;
    let zeta = zeta_linear(params, nmax)?;
    let ratios = pochhammer_ratios(params, nmax as usize);
    let mean = Rat::from(params.a() / params.c());
    let mut report = CheckReport::new("beta-moment linear identity");
    for n in 2..=nmax {
        let mut lhs = Rat::new();
        for j in 2..=n {
            let k = n - j;
            lhs += Rat::from(&ratios[k as usize] / factorial(k)) * zeta.get(j);
        }
        lhs *= factorial(n - 1);
        let rhs = Rat::from(&mean * &ratios[n as usize - 1]) - &ratios[n as usize];
        report.record(n, lhs == rhs);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn closed_forms() {
        let (z2, z3, z4) = zeta_closed_small(&Params::ints(1, 1));
        assert_eq!((z2, z3, z4), (rat(-1, 12), rat(0, 1), rat(1, 720)));
        let (_, z3, _) = zeta_closed_small(&Params::new(rat(7, 3), rat(7, 3)).unwrap());
        assert_eq!(z3, 0);
        let (z2, z3, _) = zeta_closed_small(&Params::ints(5, 3));
        assert_eq!(z2, rat(-5, 192));
        assert_eq!(z3, rat(1, 1536));
    }

    #[test]
    fn linear_examples() {
        let t = zeta_linear(&Params::ints(1, 1), 4).unwrap();
        assert_eq!(t.get(2), &rat(-1, 12));
        assert_eq!(t.get(3), &rat(0, 1));
        assert_eq!(t.get(4), &rat(1, 720));
        let t = zeta_linear(&Params::ints(1, 2), 3).unwrap();
        assert_eq!(t.get(2), &rat(-1, 18));
        assert_eq!(t.get(3), &rat(-1, 270));
        let t = zeta_linear(&Params::ints(5, 3), 3).unwrap();
        let rel = Rat::from(t.get(3) * 2u32) + Rat::from(t.get(2) * rat(5, 4)) + rat(1, 32);
        assert_eq!(rel, 0);
        assert!(zeta_linear(&Params::ints(1, 1), 1).is_err());
    }

    #[test]
    fn quadratic_examples() {
        let p = Params::ints(1, 1);
        let t = zeta_quadratic(&p, 4, &rat(-1, 12)).unwrap();
        assert_eq!(t.get(4), &rat(1, 720));
        let p = Params::new(rat(3, 2), rat(3, 2)).unwrap();
        let t = zeta_quadratic(&p, 15, &zeta_closed_small(&p).0).unwrap();
        for q in (3..=15).step_by(2) {
            assert_eq!(*t.get(q), 0, "odd index {q}");
        }
        let p = Params::ints(5, 3);
        let q = zeta_quadratic(&p, 10, &zeta_closed_small(&p).0).unwrap();
        assert!(q.same_values(&zeta_linear(&p, 10).unwrap()));
    }

    #[test]
    fn series_ratio_examples() {
        assert_eq!(
            zeta_series_ratio(&Params::ints(1, 1), 2).unwrap().get(2),
            &rat(-1, 12)
        );
        assert_eq!(
            zeta_series_ratio(&Params::ints(5, 3), 2).unwrap().get(2),
            &rat(-5, 192)
        );
    }

    #[test]
    fn bernoulli_identity_examples() {
        let r = zeta_from_bernoulli_check(&Params::ints(1, 1), 2).unwrap();
        assert!(r.all_pass());
        let p = Params::ints(5, 3);
        let t = zeta_linear(&p, 3).unwrap();
        let lhs = Rat::from(t.get(3) * 2u32) - Rat::from(t.get(2) * rat(5, 4));
        assert_eq!(lhs, rat(13, 384));
        assert_eq!(lhs, Rat::from(rat(5, 8) * rat(35, 96)) + rat(-149, 768));
        assert!(zeta_from_bernoulli_check(&p, 12).unwrap().all_pass());
        assert!(beta_moment_linear_check(&p, 12).unwrap().all_pass());
    }

    #[test]
    fn bernoulli_route_agrees() {
        let p = Params::new(rat(2, 3), rat(5, 7)).unwrap();
        assert!(zeta_from_bernoulli(&p, 12)
            .unwrap()
            .same_values(&zeta_linear(&p, 12).unwrap()));
    }

    #[test]
    fn json_and_csv() {
        let t = zeta_linear(&Params::ints(5, 3), 3).unwrap();
        let json = t.to_json();
        assert_eq!(
            json,
            serde_json::json!({"a": "5", "b": "3", "method": "linear",
                               "values": {"2": "-5/192", "3": "1/1536"}})
        );
        assert_eq!(ZetaTable::from_json(&json).unwrap(), t);
        assert_eq!(t.to_csv(), "p,value\n2,-5/192\n3,1/1536\n");
        assert_eq!(zeta_1b_at_one(&Rat::from(2)), rat(2, 3));
    }
}
