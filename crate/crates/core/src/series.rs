//! Truncated power series over exact rationals, read as exponential generating
//! functions: coefficient `c_n` of `x^n` stands for the sequence value `n! c_n`.

use std::fmt;

use num_traits::{One, Zero};

use crate::cyclecount::restricted_counts;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, ExactInt, ExactRat};
use crate::involution::{involution_table, umbral_derivative_coeffs};
use crate::partialsum::partial_sum_table;
use crate::unipoly::UniPoly;

/// Default order for the identity checks.
pub const DEFAULT_ORDER: usize = 30;

/// `c_0 + c_1 x + ... + c_N x^N`, exact through order `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedEGF {
    coeffs: Vec<ExactRat>,
}

fn rat(v: i64) -> ExactRat {
    ExactRat::from_integer(ExactInt::from(v))
}

impl TruncatedEGF {
    /// Pads with zeros or truncates so the result has exactly `order + 1` coefficients.
    pub fn new(mut coeffs: Vec<ExactRat>, order: usize) -> Self {
        coeffs.resize(order + 1, ExactRat::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![ExactRat::one()], order)
    }

    /// The polynomial `sum c_i x^i` with integer coefficients.
    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    /// The series whose EGF values are `values`: `c_n = values[n] / n!`.
    pub fn from_egf_values(values: &[ExactInt], order: usize) -> Self {
        let coeffs = values
            .iter()
            .take(order + 1)
            .enumerate()
            .map(|(n, v)| ExactRat::new(v.clone(), factorial(n as u64)))
            .collect();
        Self::new(coeffs, order)
    }

    /// `e^{x}`
    pub fn exp_x(order: usize) -> Self {
        Self::from_egf_values(&vec![ExactInt::one(); order + 1], order)
    }

    /// `e^{-x}`
    pub fn exp_neg_x(order: usize) -> Self {
        let v = (0..=order)
            .map(|n| ExactInt::from(if n % 2 == 0 { 1 } else { -1 }))
            .collect::<Vec<_>>();
        Self::from_egf_values(&v, order)
    }

    /// `x + x^2/2 + ... + x^l/l`
    pub fn cycle_sum(l: usize, order: usize) -> Self {
        let mut coeffs = vec![ExactRat::zero()];
        coeffs.extend((1..=l).map(|j| ExactRat::new(ExactInt::one(), ExactInt::from(j))));
        Self::new(coeffs, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &ExactRat {
        &self.coeffs[n]
    }

    /// `n! c_n` for every `n`.
    pub fn egf_values(&self) -> Vec<ExactRat> {
        let mut fact = ExactInt::one();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact *= n;
                }
                c * &fact
            })
            .collect()
    }

    /// Drops coefficients above `order`; never extends.
    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order.min(self.order()))
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order().min(o.order());
        Self::new(
            (0..=order).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(),
            order,
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order().min(o.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .filter(|&k| !self.coeffs[k].is_zero() && !o.coeffs[n - k].is_zero())
                    .fold(ExactRat::zero(), |acc, k| acc + &self.coeffs[k] * &o.coeffs[n - k])
            })
            .collect();
        Self { coeffs }
    }

    /// Termwise derivative; the order drops by one (an order-0 series differentiates to zero at order 0).
    pub fn derive(&self) -> Self {
        let order = self.order().saturating_sub(1);
        Self::new(
            (1..self.coeffs.len())
                .map(|n| &self.coeffs[n] * ExactInt::from(n))
                .collect(),
            order,
        )
    }

    /// Termwise antiderivative with zero constant term; exact through one order higher.
    pub fn integrate(&self) -> Self {
        let mut coeffs = vec![ExactRat::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c / ExactInt::from(n + 1)),
        );
        Self { coeffs }
    }

    /// `exp(self)` by the ODE `E' = s' E`, i.e. `n e_n = sum_{k=1}^{n} k s_k e_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut e = vec![ExactRat::one()];
        for n in 1..=self.order() {
            let sum = (1..=n)
                .filter(|&k| !self.coeffs[k].is_zero())
                .fold(ExactRat::zero(), |acc, k| {
                    acc + &self.coeffs[k] * ExactInt::from(k) * &e[n - k]
                });
            e.push(sum / ExactInt::from(n));
        }
        Ok(Self { coeffs: e })
    }

    /// `self^alpha` for a series with constant term 1, by the generalized binomial series
    /// `sum_j C(alpha, j) (self - 1)^j`.
    pub fn pow_rational(&self, alpha: &ExactRat) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Precondition(
                "rational powers need constant term 1".into(),
            ));
        }
        let order = self.order();
        let mut d = self.clone();
        d.coeffs[0] = ExactRat::zero();
        let mut out = Self::one(order);
        let mut d_pow = Self::one(order);
        let mut binom = ExactRat::one();
        // (self - 1)^j starts at x^j, so j <= order suffices
        for j in 1..=order {
            binom = binom * (alpha - rat(j as i64 - 1)) / ExactInt::from(j);
            d_pow = d_pow.mul(&d);
            out = out.add(&d_pow.scale(&binom));
        }
        Ok(out)
    }

    /// Value at `x = 0`.
    pub fn constant_term(&self) -> &ExactRat {
        &self.coeffs[0]
    }
}

impl fmt::Display for TruncatedEGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c}) x")?,
                _ => write!(f, "({c}) x^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// Free-function forms of the ring operations.
pub fn series_exp(s: &TruncatedEGF) -> Result<TruncatedEGF> {
    s.exp()
}

pub fn series_mul(a: &TruncatedEGF, b: &TruncatedEGF) -> TruncatedEGF {
    a.mul(b)
}

pub fn series_derive(a: &TruncatedEGF) -> TruncatedEGF {
    a.derive()
}

pub fn series_integrate(a: &TruncatedEGF) -> TruncatedEGF {
    a.integrate()
}

/// `exp(x + x^2/2)`
pub fn involution_egf(order: usize) -> TruncatedEGF {
    TruncatedEGF::cycle_sum(2, order).exp().expect("zero constant term")
}

/// `exp(x + x^2/2 + ... + x^l/l)`
pub fn restricted_egf(l: usize, order: usize) -> TruncatedEGF {
    TruncatedEGF::cycle_sum(l, order).exp().expect("zero constant term")
}

fn matches_sequence(s: &TruncatedEGF, values: &[ExactInt]) -> bool {
    s.egf_values()
        .iter()
        .zip(values)
        .all(|(a, b)| a.is_integer() && a.numer() == b)
}

/// `n! [x^n] exp(x + x^2/2) = I(n)` for `n <= order`.
pub fn involution_egf_check(order: usize) -> bool {
    involution_table().with_prefix(order as u64, |table| {
        matches_sequence(&involution_egf(order), table)
    })
}

/// `n! [x^n] exp(x + ... + x^l/l) = d(n, l)` for `n <= order`.
pub fn restricted_egf_check(l: usize, order: usize) -> bool {
    matches_sequence(&restricted_egf(l, order), &restricted_counts(order as u64, l))
}

/// `w + e^x * integral_0^x e^{-t} w(t) dt`, the EGF of the partial sums of the sequence with EGF `w`.
pub fn partial_sum_transform(w: &TruncatedEGF) -> TruncatedEGF {
    let order = w.order();
    let inner = TruncatedEGF::exp_neg_x(order).mul(w).integrate();
    w.add(&TruncatedEGF::exp_x(order).mul(&inner))
}

/// Whether `exp(x + x^2/2) + e^x * integral_0^x e^{t^2/2} dt` has EGF values `a(0..=order)`.
pub fn partial_sum_egf_check(order: usize) -> bool {
    let gauss = TruncatedEGF::new(vec![ExactRat::zero(), ExactRat::zero(), rat(1) / rat(2)], order)
        .exp()
        .expect("zero constant term");
    let s = involution_egf(order).add(&TruncatedEGF::exp_x(order).mul(&gauss.integrate()));
    partial_sum_table().with_prefix(order as u64, |table| matches_sequence(&s, table))
}

/// Whether [`partial_sum_transform`] of `sample` has EGF values `u_n = sum_{k<=n} c_k`,
/// where `c_k` are the EGF values of `sample`, through `order`.
pub fn lemma_partial_sums_check(sample: &TruncatedEGF, order: usize) -> bool {
    let w = sample.truncate(order);
    let got = partial_sum_transform(&w).egf_values();
    let mut running = ExactRat::zero();
    w.egf_values()
        .iter()
        .zip(got)
        .all(|(c, g)| {
            running += c;
            running == g
        })
}

/// Whether `d^m/dx^m exp(x + x^2/2) = exp(x + x^2/2) * sum_k C(m,k) I(m-k) x^k`
/// through order `order - m`.
pub fn umbral_check(m: usize, order: usize) -> bool {
    if m > order {
        return false;
    }
    let f = involution_egf(order);
    let mut lhs = f.clone();
    for _ in 0..m {
        lhs = lhs.derive();
    }
    let factor = poly_series(&umbral_derivative_coeffs(m as u64), order);
    let rhs = f.mul(&factor).truncate(order - m);
    lhs == rhs
}

fn poly_series(p: &UniPoly, order: usize) -> TruncatedEGF {
    TruncatedEGF::new(
        p.coeffs().iter().map(|c| ExactRat::from_integer(c.clone())).collect(),
        order,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactRat {
        ExactRat::new(ExactInt::from(n), ExactInt::from(d))
    }

    /// `s^alpha` by the power recurrence `p_n = (1/n) sum_{k=1}^{n} ((alpha+1)k - n) s_k p_{n-k}`.
    fn pow_by_recurrence(s: &TruncatedEGF, alpha: &ExactRat) -> TruncatedEGF {
        let mut p = vec![ExactRat::one()];
        for n in 1..=s.order() {
            let sum = (1..=n).fold(ExactRat::zero(), |acc, k| {
                let w = (alpha + rat(1)) * ExactInt::from(k) - rat(n as i64);
                acc + w * s.coeff(k) * &p[n - k]
            });
            p.push(sum / ExactInt::from(n));
        }
        TruncatedEGF::new(p, s.order())
    }

    #[test]
    fn exp_examples() {
        let e = TruncatedEGF::from_ints(&[0, 1], 12).exp().unwrap();
        assert_eq!(e, TruncatedEGF::exp_x(12));
        assert!(involution_egf_check(30));
        for l in 1..=5 {
            assert!(restricted_egf_check(l, 30));
        }
        assert_eq!(
            TruncatedEGF::from_ints(&[1, 1], 5).exp(),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn ring_operations() {
        let n = 15;
        assert_eq!(
            TruncatedEGF::exp_x(n).mul(&TruncatedEGF::exp_neg_x(n)),
            TruncatedEGF::one(n)
        );
        let f = involution_egf(n);
        assert_eq!(
            f.derive(),
            TruncatedEGF::from_ints(&[1, 1], n).mul(&f).truncate(n - 1)
        );
        let g = TruncatedEGF::new(vec![rat(0), rat(0), r(1, 2)], n).exp().unwrap();
        let gi = g.integrate();
        assert_eq!(gi.order(), n + 1);
        for k in (0..=n + 1).step_by(2) {
            assert!(gi.coeff(k).is_zero());
        }
        assert_eq!(gi.derive(), g);
        // mixed orders truncate to the smaller one
        assert_eq!(TruncatedEGF::exp_x(4).mul(&f).order(), 4);
    }

    #[test]
    fn partial_sum_identities() {
        for n in [3, 10, 30] {
            assert!(partial_sum_egf_check(n));
        }
        assert!(lemma_partial_sums_check(&TruncatedEGF::exp_x(20), 20));
        assert!(lemma_partial_sums_check(&TruncatedEGF::one(20), 20));
        assert!(lemma_partial_sums_check(&involution_egf(25), 25));
        let ones = partial_sum_transform(&TruncatedEGF::exp_x(8)).egf_values();
        assert_eq!(ones[5], rat(6));
    }

    #[test]
    fn umbral_identity() {
        for m in 0..=6 {
            assert!(umbral_check(m, DEFAULT_ORDER));
        }
    }

    #[test]
    fn binomial_series_powers() {
        let s = TruncatedEGF::from_ints(&[1, 1, 1, 1], 10);
        for alpha in [r(1, 2), r(2, 3), r(-1, 4), r(3, 1)] {
            assert_eq!(s.pow_rational(&alpha).unwrap(), pow_by_recurrence(&s, &alpha));
        }
        let sq = TruncatedEGF::from_ints(&[1, 1], 8).pow_rational(&r(1, 2)).unwrap();
        assert_eq!(sq.mul(&sq), TruncatedEGF::from_ints(&[1, 1], 8));
        assert!(TruncatedEGF::from_ints(&[2, 1], 4).pow_rational(&r(1, 2)).is_err());
    }
}
