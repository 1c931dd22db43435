//! Permutations whose cycles all have length at most `l`: the counts
//! `d(n, l)`, the cycle-index polynomial in `Y_1..Y_l` that refines them by
//! cycle type, and a determinant representation used as an independent check.

mod toeplitz;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactnum::{falling_factorial, ExactInt, Partition};
use crate::unipoly::UniPoly;

pub use toeplitz::{
    gaussian_determinant, toeplitz_determinant, toeplitz_determinant_with, toeplitz_matrix,
    DeterminantMethod, Gaussian, GaussianPoly, TOEPLITZ_MAX_N,
};

/// `d(0..=n_max, l)` from `d(m+1) = sum_{j=1}^{l} m!/(m-j+1)! d(m+1-j)`, `d(0) = 1`.
pub fn restricted_counts(n_max: u64, l: usize) -> Vec<ExactInt> {
    let mut d = vec![ExactInt::one()];
    for m in 0..n_max {
        let next = (1..=l.min(m as usize + 1)).fold(ExactInt::zero(), |acc, j| {
            acc + falling_factorial(m, j as u64 - 1) * &d[m as usize + 1 - j]
        });
        d.push(next);
    }
    d
}

/// `d(n, l)`: permutations of `n` points with no cycle longer than `l`.
pub fn restricted_count(n: u64, l: usize) -> ExactInt {
    restricted_counts(n, l).pop().expect("nonempty")
}

/// Exponent vector `(e_1, ..., e_l)` of a monomial `Y_1^{e_1} ... Y_l^{e_l}`.
pub type Exponents = Vec<u32>;

/// Multivariate polynomial in `Y_1..Y_l` with exact integer coefficients.
/// Each monomial records a cycle type; its coefficient counts the permutations of that type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleIndexPoly {
    l: usize,
    terms: BTreeMap<Exponents, ExactInt>,
}

impl CycleIndexPoly {
    pub fn zero(l: usize) -> Self {
        Self {
            l,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(l: usize) -> Self {
        let mut p = Self::zero(l);
        p.add_term(vec![0; l], ExactInt::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(l: usize, terms: impl IntoIterator<Item = (Exponents, ExactInt)>) -> Self {
        let mut p = Self::zero(l);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, mut e: Exponents, c: ExactInt) {
        e.resize(self.l, 0);
        let slot = self.terms.entry(e).or_insert_with(ExactInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn num_vars(&self) -> usize {
        self.l
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> ExactInt {
        let mut key = e.to_vec();
        key.resize(self.l, 0);
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    /// Terms in graded-lexicographic order, highest total degree first.
    pub fn terms(&self) -> Vec<(&Exponents, &ExactInt)> {
        let mut out: Vec<_> = self.terms.iter().collect();
        out.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        out
    }

    /// Value at `Y_1 = ... = Y_l = 1`.
    pub fn sum_of_coefficients(&self) -> ExactInt {
        self.terms.values().sum()
    }

    /// Whether every monomial has weight `sum_t t * e_t = n`.
    pub fn is_homogeneous_of_weight(&self, n: u64) -> bool {
        self.terms.keys().all(|e| {
            e.iter()
                .enumerate()
                .map(|(i, &et)| (i as u64 + 1) * et as u64)
                .sum::<u64>()
                == n
        })
    }

    /// Substitutes `Y_1 = t` and `Y_2 = ... = Y_l = 1`.
    pub fn fixed_point_polynomial(&self) -> UniPoly {
        let deg = self.terms.keys().map(|e| e[0] as usize).max().unwrap_or(0);
        let mut coeffs = vec![ExactInt::zero(); deg + 1];
        for (e, c) in &self.terms {
            coeffs[e[0] as usize] += c;
        }
        UniPoly::new(coeffs)
    }

    /// `Y_j * self`
    fn times_var(&self, j: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e[j - 1] += 1;
                (e, c.clone())
            })
            .collect();
        Self { l: self.l, terms }
    }

    fn scaled(mut self, c: &ExactInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.l);
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
        self
    }

    fn add_assign(&mut self, other: Self) {
        for (e, c) in other.terms {
            self.add_term(e, c);
        }
    }

    /// JSON form: `{"schema", "l", "terms": [{"exponents": [...], "coefficient": n}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms()
            .into_iter()
            .map(|(e, c)| json!({ "exponents": e, "coefficient": crate::big_to_json(c) }))
            .collect();
        json!({ "schema": "involutions.cycle-index/1", "l": self.l, "terms": terms })
    }
}

impl fmt::Display for CycleIndexPoly {
    /// `Y1^5 + 10 Y1^3 Y2 + 20 Y1^2 Y3 + ...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().into_iter().enumerate() {
            let mut c = c.clone();
            if i > 0 {
                f.write_str(if c < ExactInt::zero() { " - " } else { " + " })?;
                if c < ExactInt::zero() {
                    c = -c;
                }
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &et)| et > 0)
                .map(|(t, &et)| {
                    if et == 1 {
                        format!("Y{}", t + 1)
                    } else {
                        format!("Y{}^{}", t + 1, et)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else {
                if !c.is_one() {
                    write!(f, "{c} ")?;
                }
                f.write_str(&vars.join(" "))?;
            }
        }
        Ok(())
    }
}

/// The cycle-index polynomial of permutations of `n` points with cycles of length `<= l`,
/// from `g(n) = sum_{j=1}^{l} (n-1)(n-2)...(n-j+1) Y_j g(n-j)`, `g(0) = 1`.
pub fn cycle_index_poly(n: u64, l: usize) -> CycleIndexPoly {
    cycle_index_polys(n, l).pop().expect("nonempty")
}

/// `g(0..=n_max)` for fixed `l`.
pub fn cycle_index_polys(n_max: u64, l: usize) -> Vec<CycleIndexPoly> {
    let mut g = vec![CycleIndexPoly::one(l)];
    for m in 1..=n_max as usize {
        let mut next = CycleIndexPoly::zero(l);
        for j in 1..=l.min(m) {
            let weight = falling_factorial(m as u64 - 1, j as u64 - 1);
            next.add_assign(g[m - j].times_var(j).scaled(&weight));
        }
        g.push(next);
    }
    g
}

/// Number of permutations of `n` points with the given cycle type, read off the cycle index.
pub fn statistic_lookup(n: u64, l: usize, cycle_type: &Partition) -> Result<ExactInt> {
    if cycle_type.total() != n {
        return Err(Error::PartitionMismatch {
            n,
            partition: cycle_type.to_string(),
        });
    }
    if cycle_type.largest() as usize > l {
        return Err(Error::CycleTooLong {
            cycle_type: cycle_type.to_string(),
            max_len: l,
        });
    }
    Ok(cycle_index_poly(n, l).coefficient(&cycle_type.multiplicities(l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::involution_poly;

    fn int(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    pub(super) fn example_5_4() -> CycleIndexPoly {
        CycleIndexPoly::from_terms(
            4,
            [
                (vec![5, 0, 0, 0], 1),
                (vec![3, 1, 0, 0], 10),
                (vec![2, 0, 1, 0], 20),
                (vec![1, 2, 0, 0], 15),
                (vec![1, 0, 0, 1], 30),
                (vec![0, 1, 1, 0], 20),
            ]
            .map(|(e, c)| (e, int(c))),
        )
    }

    #[test]
    fn counts() {
        assert_eq!(restricted_count(5, 4), int(96));
        for n in 0..10 {
            assert_eq!(restricted_count(n, 1), int(1));
        }
        assert_eq!(restricted_count(4, 2), int(10));
        assert_eq!(restricted_count(0, 3), int(1));
        assert_eq!(restricted_count(6, 6), int(720));
    }

    #[test]
    fn cycle_index_examples() {
        let p = cycle_index_poly(5, 4);
        assert_eq!(p, example_5_4());
        assert_eq!(
            p.to_string(),
            "Y1^5 + 10 Y1^3 Y2 + 20 Y1^2 Y3 + 15 Y1 Y2^2 + 30 Y1 Y4 + 20 Y2 Y3"
        );
        assert_eq!(p.sum_of_coefficients(), int(96));
        assert_eq!(cycle_index_poly(2, 2).to_string(), "Y1^2 + Y2");
        assert_eq!(cycle_index_poly(0, 3), CycleIndexPoly::one(3));
        assert_eq!(cycle_index_poly(0, 3).to_string(), "1");
    }

    #[test]
    fn specializations() {
        for n in 0..=20 {
            let p = cycle_index_poly(n, 2);
            assert!(p.is_homogeneous_of_weight(n));
            assert_eq!(p.fixed_point_polynomial(), involution_poly(n));
        }
    }

    #[test]
    fn lookups() {
        let t = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(statistic_lookup(5, 4, &t("3+2")).unwrap(), int(20));
        assert_eq!(statistic_lookup(5, 4, &t("1+1+1+1+1")).unwrap(), int(1));
        assert_eq!(statistic_lookup(5, 4, &t("4+1")).unwrap(), int(30));
        assert_eq!(statistic_lookup(5, 4, &t("3+2")).unwrap(), t("3+2").class_size());
        assert!(matches!(
            statistic_lookup(5, 4, &t("5")),
            Err(Error::CycleTooLong { .. })
        ));
        assert!(matches!(
            statistic_lookup(5, 4, &t("3+1")),
            Err(Error::PartitionMismatch { .. })
        ));
    }

    #[test]
    fn json_form() {
        let j = cycle_index_poly(2, 2).to_json();
        assert_eq!(j["l"], 2);
        assert_eq!(j["terms"][0]["exponents"], json!([2, 0]));
        assert_eq!(j["terms"][1]["coefficient"], json!(1));
    }
}
