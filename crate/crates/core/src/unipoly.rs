use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactnum::ExactInt;

/// Dense univariate polynomial with exact integer coefficients; `coeffs[i]`
/// multiplies `t^i`. Trailing zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<ExactInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<ExactInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![ExactInt::one()])
    }

    /// `c * t^k`
    pub fn monomial(c: ExactInt, k: usize) -> Self {
        let mut coeffs = vec![ExactInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| ExactInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient list, lowest degree first, as JSON numbers.
    pub fn to_json(&self) -> serde_json::Value {
        self.coeffs.iter().map(crate::big_to_json).collect()
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExactInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &ExactInt) -> ExactInt {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactInt::zero(), |acc, c| acc * t + c)
    }

    /// `t * self`
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ExactInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: &ExactInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    /// Pretty form in the variable `var`, highest degree first: `t^3 + 3t`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            if k == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => {
                    out.push_str(var);
                    out.push('^');
                    out.push_str(&k.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_prints() {
        let p = UniPoly::from_i64s(&[0, 3, 0, 1, 0, 0]);
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.to_string(), "t^3 + 3t");
        assert_eq!(UniPoly::from_i64s(&[3, 0, -6, 0, 1]).to_string(), "t^4 - 6t^2 + 3");
        assert_eq!(UniPoly::from_i64s(&[-1, -1]).display_in("x"), "-x - 1");
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(UniPoly::from_i64s(&[0, 0]), UniPoly::zero());
    }

    #[test]
    fn arithmetic() {
        let p = UniPoly::from_i64s(&[1, 2]);
        assert_eq!(p.eval(&ExactInt::from(3)), ExactInt::from(7));
        assert_eq!(p.shift(), UniPoly::from_i64s(&[0, 1, 2]));
        assert_eq!(p.add(&UniPoly::from_i64s(&[-1, -2])), UniPoly::zero());
        assert_eq!(p.scale(&ExactInt::from(-2)), UniPoly::from_i64s(&[-2, -4]));
        assert_eq!(
            UniPoly::monomial(ExactInt::from(5), 2),
            UniPoly::from_i64s(&[0, 0, 5])
        );
    }
}
