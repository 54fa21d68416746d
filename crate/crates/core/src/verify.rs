//! The cross-check battery behind `hzeta verify`.

use crate::bernoulli::{
    appell_check, bern_howard, bern_numbers, bern_zeta_relation_check, change_of_basis_check,
    conjugacy_check, conjugate_recurrence_check, cumulant_checks, dilcher_check, symmetry_check,
};
use crate::error::{Error, Result};
use crate::exact::Params;
use crate::report::CheckReport;
use crate::zeta::{beta_moment_linear_check, zeta_from_bernoulli_check, zeta_table, Method};

/// Every exact identity that applies to `params`, through index `pmax`.
/// Checks specific to `a = 1` and integer `b` run only for those parameters.
pub fn verify_battery(params: &Params, pmax: u32) -> Result<Vec<CheckReport>> {
    if pmax < 2 {
        return Err(Error::InvalidParams(format!(
            "pmax must be at least 2, got {pmax}"
        )));
    }
    let mut out = Vec::new();

    let routes = [
        Method::Linear,
        Method::Quadratic,
        Method::SeriesRatio,
        Method::Bernoulli,
    ]
    .iter()
    .map(|&m| zeta_table(params, pmax, m))
    .collect::<Result<Vec<_>>>()?;
    let mut agree = CheckReport::new("zeta routes agree");
    for p in 2..=pmax {
        let first = routes[0].get(p);
        let bad: Vec<String> = routes[1..]
            .iter()
            .filter(|t| t.get(p) != first)
            .map(|t| t.method.to_string())
            .collect();
        if bad.is_empty() {
            agree.record(p, true);
        } else {
            agree.record_with(p, false, format!("{} differ from linear", bad.join(", ")));
        }
    }
    out.push(agree);

    out.push(zeta_from_bernoulli_check(params, pmax)?);
    out.push(beta_moment_linear_check(params, pmax)?);
    out.push(conjugacy_check(params, pmax));
    out.push(appell_check(params, pmax));
    out.push(change_of_basis_check(params, pmax));
    out.push(symmetry_check(params, pmax));
    out.extend(conjugate_recurrence_check(params, pmax)?);
    out.extend(cumulant_checks(params, pmax)?);

    if let Some(b) = params.howard_b() {
        let mut howard = CheckReport::new("howard recurrence");
        let direct = bern_numbers(params, pmax as usize);
        let rec = bern_howard(b, pmax as usize);
        for n in 0..=pmax as usize {
            howard.record(n as u32, direct.get(n) == rec.get(n));
        }
        out.push(howard);
        out.push(bern_zeta_relation_check(b, pmax)?);
        out.push(dilcher_check(b, pmax));
    }
    Ok(out)
}
