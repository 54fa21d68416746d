use std::fmt;

use rug::ops::Pow;
use serde::{Deserialize, Serialize};

use crate::exact::{binom, rat_vec_serde, Rat};

/// Dense polynomial in one variable with exact coefficients, lowest
/// degree first. Trailing zeros are trimmed so equality is canonical;
/// the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Poly {
    #[serde(with = "rat_vec_serde")]
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::new(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| *c == 0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| Rat::from(x * c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] += Rat::from(x * y);
            }
        }
        Poly::new(out)
    }

    /// `x · p(x)`.
    pub fn mul_x(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rat::new());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| Rat::from(c * k as u32))
                .collect(),
        )
    }

    /// `p(α + β x)`.
    pub fn compose_affine(&self, alpha: &Rat, beta: &Rat) -> Poly {
        let n = self.coeffs.len();
        let mut out = vec![Rat::new(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            // (α + βx)^k = Σ_j C(k,j) α^{k−j} β^j x^j
            for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
                let term = binom(k as u32, j as u32)
                    * Rat::from(alpha.pow((k - j) as i32))
                    * Rat::from(beta.pow(j as i32));
                *slot += term * c;
            }
        }
        Poly::new(out)
    }

    /// `p(x + shift)`.
    pub fn shift(&self, shift: &Rat) -> Poly {
        self.compose_affine(shift, &Rat::from(1))
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let mag = Rat::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = mag != 1 || k == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn p(v: &[(i64, i64)]) -> Poly {
        Poly::new(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn canonical_zero() {
        assert_eq!(p(&[(0, 1), (0, 1)]), Poly::zero());
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[(1, 6), (-1, 1), (1, 1)]).degree(), Some(2));
    }

    #[test]
    fn shifting_and_reflection() {
        // (x² − x + 1/6)(x + 1) ↦ x² + x + 1/6
        let b2 = p(&[(1, 6), (-1, 1), (1, 1)]);
        assert_eq!(b2.shift(&Rat::from(1)), p(&[(1, 6), (1, 1), (1, 1)]));
        // reflection x ↦ 1 − x leaves B₂ fixed
        assert_eq!(b2.compose_affine(&Rat::from(1), &Rat::from(-1)), b2);
        assert_eq!(b2.eval(&rat(1, 2)), rat(-1, 12));
    }

    #[test]
    fn arithmetic() {
        let a = p(&[(1, 1), (1, 1)]);
        let b = p(&[(1, 1), (-1, 1)]);
        assert_eq!(a.mul(&b), p(&[(1, 1), (0, 1), (-1, 1)]));
        assert_eq!(a.sub(&a), Poly::zero());
        assert_eq!(a.mul_x(), p(&[(0, 1), (1, 1), (1, 1)]));
        assert_eq!(
            p(&[(5, 1), (3, 1), (2, 1)]).derivative(),
            p(&[(3, 1), (4, 1)])
        );
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(1, 6), (-1, 1), (1, 1)]).to_string(), "x^2 - x + 1/6");
        assert_eq!(p(&[(-1, 3), (1, 1)]).to_string(), "x - 1/3");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
