//! Involution numbers `I(n)` (OEIS A000085), the involution polynomials
//! `I(n; t)` counting involutions by fixed points, and the identities that
//! tie them to Hermite polynomials and to derivatives of `exp(x + x^2/2)`.
//!
//! The memoized recurrence is the single shared cache. The closed-form and
//! split variants recompute from scratch so that comparing them against the
//! cache is a genuine cross-check.

use std::sync::LazyLock;

use num_traits::{One, Zero};

use crate::exactnum::{binomial, factorial, ExactInt};
use crate::memo::Memo;
use crate::unipoly::UniPoly;

/// Growable cache of `I(0..=N)` built from `I(n) = I(n-1) + (n-1) I(n-2)`.
pub struct InvolutionTable {
    memo: Memo,
}

fn involution_step(prefix: &[ExactInt]) -> ExactInt {
    let n = prefix.len();
    &prefix[n - 1] + &prefix[n - 2] * (n - 1)
}

impl InvolutionTable {
    pub fn new() -> Self {
        Self {
            memo: Memo::new(vec![ExactInt::one(), ExactInt::one()], involution_step),
        }
    }

    pub fn get(&self, n: u64) -> ExactInt {
        self.memo.get(n as usize)
    }

    /// Calls `f` with `I(0..=n)`.
    pub fn with_prefix<R>(&self, n: u64, f: impl FnOnce(&[ExactInt]) -> R) -> R {
        self.memo.with_prefix(n as usize, f)
    }

    /// Number of cached values.
    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl Default for InvolutionTable {
    fn default() -> Self {
        Self::new()
    }
}

static TABLE: LazyLock<InvolutionTable> = LazyLock::new(InvolutionTable::new);

/// The process-wide involution cache.
pub fn involution_table() -> &'static InvolutionTable {
    &TABLE
}

/// `I(n)`, from the shared memoized recurrence.
pub fn involution_number(n: u64) -> ExactInt {
    TABLE.get(n)
}

/// `I(n) = sum_j C(n, 2j) (2j-1)!!`, evaluated term by term without the cache.
pub fn involution_number_by_sum(n: u64) -> ExactInt {
    // term_j = C(n, 2j) * (2j)! / (j! 2^j); term_{j+1} = term_j (n-2j)(n-2j-1) / (2j+2)
    let mut term = ExactInt::one();
    let mut total = ExactInt::zero();
    let mut j = 0u64;
    while 2 * j <= n {
        total += &term;
        if 2 * j + 2 > n {
            break;
        }
        term = term * ((n - 2 * j) * (n - 2 * j - 1)) / (2 * j + 2);
        j += 1;
    }
    total
}

/// `(2j)! / (j! 2^j)`, the number of perfect matchings on `2j` points.
pub fn double_factorial_odd(j: u64) -> ExactInt {
    factorial(2 * j) / (factorial(j) << j)
}

/// `sum_k k! C(n,k) C(m,k) I(n-k) I(m-k)`, which equals `I(n+m)`.
/// The smaller involution numbers come from a private recurrence, not the shared cache.
pub fn involution_number_bisplit(n: u64, m: u64) -> ExactInt {
    let top = n.max(m) as usize;
    let mut local = vec![ExactInt::one(), ExactInt::one()];
    while local.len() <= top {
        let next = involution_step(&local);
        local.push(next);
    }
    let mut k_fact = ExactInt::one();
    let mut total = ExactInt::zero();
    for k in 0..=n.min(m) {
        if k > 0 {
            k_fact *= k;
        }
        total += &k_fact
            * binomial(n, k as i64)
            * binomial(m, k as i64)
            * &local[(n - k) as usize]
            * &local[(m - k) as usize];
    }
    total
}

/// `I(n; t) = sum_j C(n, 2j) (2j)!/(2^j j!) t^{n-2j}`.
pub fn involution_poly(n: u64) -> UniPoly {
    let mut coeffs = vec![ExactInt::zero(); n as usize + 1];
    for j in 0..=n / 2 {
        coeffs[(n - 2 * j) as usize] = binomial(n, 2 * j as i64) * double_factorial_odd(j);
    }
    UniPoly::new(coeffs)
}

/// `I(n; t)` from `I(n; t) = t I(n-1; t) + (n-1) I(n-2; t)` with `I(0;t) = 1`, `I(1;t) = t`.
pub fn involution_poly_by_recurrence(n: u64) -> UniPoly {
    let mut prev = UniPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = UniPoly::monomial(ExactInt::one(), 1);
    for k in 2..=n {
        let next = cur.shift().add(&prev.scale(&ExactInt::from(k - 1)));
        prev = cur;
        cur = next;
    }
    cur
}

/// Probabilists' Hermite polynomial
/// `H_n(t) = n! sum_j (-1)^j t^{n-2j} / (j! (n-2j)! 2^j)`, with integer coefficients.
pub fn hermite_poly(n: u64) -> UniPoly {
    let n_fact = factorial(n);
    let mut coeffs = vec![ExactInt::zero(); n as usize + 1];
    for j in 0..=n / 2 {
        let denom = (factorial(j) * factorial(n - 2 * j)) << j;
        let c = &n_fact / denom;
        coeffs[(n - 2 * j) as usize] = if j % 2 == 0 { c } else { -c };
    }
    UniPoly::new(coeffs)
}

/// Whether `I(n; t) = i^n H_n(-i t)`: the coefficient of `t^{n-2j}` in `I(n;t)`
/// must be `(-1)^j` times the same coefficient of `H_n`.
pub fn hermite_relation_check(n: u64) -> bool {
    let inv = involution_poly(n);
    let her = hermite_poly(n);
    if inv.degree() != her.degree() {
        return false;
    }
    (0..=n as usize).all(|k| {
        let h = her.coeff(k);
        let signed = if (n as usize - k).is_multiple_of(4) { h } else { -h };
        // terms with n - k odd are zero on both sides
        inv.coeff(k) == signed
    })
}

/// `sum_k C(m,k) I(m-k) x^k`, the factor with `d^m/dx^m e^{x+x^2/2} = e^{x+x^2/2} * (this)`.
pub fn umbral_derivative_coeffs(m: u64) -> UniPoly {
    UniPoly::new(
        (0..=m)
            .map(|k| binomial(m, k as i64) * involution_number(m - k))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    const TABLE_0_10: [i64; 11] = [1, 1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496];

    #[test]
    fn tabulated_values() {
        for (n, &v) in TABLE_0_10.iter().enumerate() {
            assert_eq!(involution_number(n as u64), int(v));
        }
        // I(11) = 9496 + 10*2620, I(12) = I(11) + 11*9496
        assert_eq!(involution_number(11), int(35696));
        assert_eq!(involution_number(12), int(140152));
    }

    #[test]
    fn finite_sum() {
        assert_eq!(involution_number_by_sum(4), int(10));
        assert_eq!(involution_number_by_sum(1), int(1));
        assert_eq!(involution_number_by_sum(6), int(76));
        assert_eq!(involution_number_by_sum(0), int(1));
        for n in 0..=200 {
            assert_eq!(involution_number_by_sum(n), involution_number(n));
        }
    }

    #[test]
    fn odd_double_factorials() {
        assert_eq!(double_factorial_odd(0), int(1));
        assert_eq!(double_factorial_odd(3), int(15));
        assert_eq!(double_factorial_odd(5), int(945));
    }

    #[test]
    fn bisplit() {
        assert_eq!(involution_number_bisplit(2, 2), int(10));
        assert_eq!(involution_number_bisplit(0, 5), int(26));
        assert_eq!(involution_number_bisplit(3, 4), int(232));
        assert_eq!(involution_number_bisplit(0, 0), int(1));
    }

    #[test]
    fn polynomials() {
        assert_eq!(involution_poly(3), UniPoly::from_i64s(&[0, 3, 0, 1]));
        assert_eq!(involution_poly(0), UniPoly::one());
        assert_eq!(involution_poly(4), UniPoly::from_i64s(&[3, 0, 6, 0, 1]));
        for n in 0..=60 {
            assert_eq!(involution_poly(n), involution_poly_by_recurrence(n));
        }
    }

    #[test]
    fn hermite() {
        assert_eq!(hermite_poly(2), UniPoly::from_i64s(&[-1, 0, 1]));
        assert_eq!(hermite_poly(0), UniPoly::one());
        assert_eq!(hermite_poly(4), UniPoly::from_i64s(&[3, 0, -6, 0, 1]));
        for n in [0, 4, 15] {
            assert!(hermite_relation_check(n));
        }
    }

    #[test]
    fn umbral() {
        assert_eq!(umbral_derivative_coeffs(1), UniPoly::from_i64s(&[1, 1]));
        assert_eq!(umbral_derivative_coeffs(0), UniPoly::one());
        assert_eq!(umbral_derivative_coeffs(2), UniPoly::from_i64s(&[2, 2, 1]));
    }

    #[test]
    fn table_shared_across_threads() {
        let table = InvolutionTable::new();
        std::thread::scope(|s| {
            for n in [50u64, 120, 80, 200] {
                let table = &table;
                s.spawn(move || assert_eq!(table.get(n), involution_number_by_sum(n)));
            }
        });
        assert!(table.len() > 200);
    }
}
