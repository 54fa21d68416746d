//! Truncated power series with exact rational coefficients.
//!
//! Coefficients are stored plainly: `coeffs[k]` is the coefficient of
//! `z^k`. Exponential generating coefficients (`n!·[z^n]`) are produced
//! only at the boundary, see [`Series::egf_coeff`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, pochhammer_ratios, rat_vec_serde, Params, Rat};

pub const DEFAULT_ORDER: usize = 64;

/// `Σ_{k≤N} c_k z^k`, exact through degree `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Series {
    #[serde(with = "rat_vec_serde")]
    coeffs: Vec<Rat>,
}

impl Series {
    /// Builds a series of order `order`, zero-padding `coeffs`.
    ///
    /// Panics if more than `order + 1` coefficients are supplied.
    pub fn new(mut coeffs: Vec<Rat>, order: usize) -> Self {
        assert!(
            coeffs.len() <= order + 1,
            "{} coefficients do not fit order {order}",
            coeffs.len()
        );
        coeffs.resize(order + 1, Rat::new());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::new(vec![Rat::from(1)], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    /// `k! · [z^k]`.
    pub fn egf_coeff(&self, k: usize) -> Rat {
        Rat::from(&self.coeffs[k] * factorial(k as u32))
    }

    /// Builds a series from exponential generating coefficients.
    pub fn from_egf(egf: &[Rat]) -> Self {
        let coeffs = egf
            .iter()
            .enumerate()
            .map(|(k, c)| Rat::from(c / factorial(k as u32)))
            .collect::<Vec<_>>();
        let order = coeffs.len().saturating_sub(1);
        Series::new(coeffs, order)
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| Rat::from(x + y))
            .collect();
        Ok(Series { coeffs })
    }

    pub fn scale(&self, c: &Rat) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|x| Rat::from(x * c)).collect(),
        }
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let n = self.order();
        let mut coeffs = vec![Rat::new(); n + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in other.coeffs[..=n - i].iter().enumerate() {
                coeffs[i + j] += Rat::from(x * y);
            }
        }
        Ok(Series { coeffs })
    }

    /// Multiplicative inverse through the same order.
    pub fn inv(&self) -> Result<Series> {
        let f0 = &self.coeffs[0];
        if *f0 == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = Rat::from(f0.recip_ref());
        let n = self.order();
        let mut g: Vec<Rat> = Vec::with_capacity(n + 1);
        g.push(inv0.clone());
        for m in 1..=n {
            let mut acc = Rat::new();
            for k in 1..=m {
                if self.coeffs[k] != 0 {
                    acc += Rat::from(&self.coeffs[k] * &g[m - k]);
                }
            }
            g.push(-acc * &inv0);
        }
        Ok(Series { coeffs: g })
    }

    pub fn div(&self, denom: &Series) -> Result<Series> {
        self.check_order(denom)?;
        self.mul(&denom.inv()?)
    }

    /// Logarithm of a series with constant term 1, via `L' = f'/f`.
    pub fn log(&self) -> Result<Series> {
        if self.coeffs[0] != 1 {
            return Err(Error::LogConstantTerm(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let mut l = vec![Rat::new(); n + 1];
        for m in 1..=n {
            let mut acc = Rat::new();
            for (k, lk) in l.iter().enumerate().take(m).skip(1) {
                if self.coeffs[m - k] != 0 {
                    acc += Rat::from(lk * &self.coeffs[m - k]) * k as u32;
                }
            }
            l[m] = Rat::from(&self.coeffs[m] - acc / m as u32);
        }
        Ok(Series { coeffs: l })
    }

    /// Term-wise derivative, one order lower.
    pub fn derivative(&self) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| Rat::from(c * k as u32))
            .collect::<Vec<_>>();
        if coeffs.is_empty() {
            return Series::zero(0);
        }
        Series { coeffs }
    }

    /// `f(-z)`.
    pub fn negate_argument(&self) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { Rat::from(-c) } else { c.clone() })
            .collect();
        Series { coeffs }
    }

    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order());
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }
}

/// `e^z` through `order`.
pub fn exp_series(order: usize) -> Series {
    let coeffs = (0..=order)
        .map(|k| Rat::from((1, factorial(k as u32))))
        .collect();
    Series { coeffs }
}

/// `Φ_{a,b}(z) = Σ (a)_k/(a+b)_k · z^k/k!` through `order`.
pub fn phi_series(params: &Params, order: usize) -> Series {
    let coeffs = pochhammer_ratios(params, order)
        .into_iter()
        .enumerate()
        .map(|(k, r)| r / factorial(k as u32))
        .collect();
    Series { coeffs }
}
