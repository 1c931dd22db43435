//! Partial sums `a(n) = I(0) + ... + I(n)` of the involution numbers, the
//! identities they satisfy, and the auxiliary sums `F(alpha, beta, k)` and
//! `b(k)` used to pin down the 2-adic valuation of `a(4k-1)`.

use std::sync::LazyLock;

use num_traits::{One, Zero};

use crate::exactnum::{binomial, ExactInt, ExactRat};
use crate::involution::double_factorial_odd;
use crate::memo::Memo;

/// Growable cache of `a(0..=N)` built from
/// `a(n) = 2a(n-1) + (n-2)a(n-2) - (n-1)a(n-3)`.
pub struct PartialSumTable {
    memo: Memo,
}

fn partial_sum_step(prefix: &[ExactInt]) -> ExactInt {
    let n = prefix.len();
    (&prefix[n - 1] << 1usize) + &prefix[n - 2] * (n - 2) - &prefix[n - 3] * (n - 1)
}

impl PartialSumTable {
    pub fn new() -> Self {
        let seed = [1, 2, 4].map(ExactInt::from).to_vec();
        Self {
            memo: Memo::new(seed, partial_sum_step),
        }
    }

    pub fn get(&self, n: u64) -> ExactInt {
        self.memo.get(n as usize)
    }

    pub fn with_prefix<R>(&self, n: u64, f: impl FnOnce(&[ExactInt]) -> R) -> R {
        self.memo.with_prefix(n as usize, f)
    }
}

impl Default for PartialSumTable {
    fn default() -> Self {
        Self::new()
    }
}

static TABLE: LazyLock<PartialSumTable> = LazyLock::new(PartialSumTable::new);

pub fn partial_sum_table() -> &'static PartialSumTable {
    &TABLE
}

/// `a(n)` from the three-term recurrence.
pub fn partial_sum(n: u64) -> ExactInt {
    TABLE.get(n)
}

/// `a(n) = sum_k (2k-1)!! C(n+1, 2k+1)`, computed term by term.
pub fn partial_sum_by_binomial(n: u64) -> ExactInt {
    let top = n + 1;
    let mut total = ExactInt::zero();
    let mut dfo = ExactInt::one(); // (2k-1)!!
    let mut binom = ExactInt::from(top); // C(n+1, 2k+1)
    let mut k = 0u64;
    while 2 * k < top {
        total += &dfo * &binom;
        let r = 2 * k + 1;
        if r + 2 > top {
            break;
        }
        binom = binom * ((top - r) * (top - r - 1)) / ((r + 1) * (r + 2));
        dfo *= 2 * k + 1;
        k += 1;
    }
    total
}

/// `sum_{k=1}^{n} (-1)^{n-k} C(n,k) a(k-1)`; this is `(2m-1)!!` for `n = 2m+1` and zero for even `n`.
pub fn cauchy_alternating_sum(n: u64) -> ExactInt {
    (1..=n).fold(ExactInt::zero(), |acc, k| {
        let term = binomial(n, k as i64) * partial_sum(k - 1);
        if (n - k).is_multiple_of(2) {
            acc + term
        } else {
            acc - term
        }
    })
}

/// The value `cauchy_alternating_sum(n)` must take.
pub fn cauchy_alternating_expected(n: u64) -> ExactInt {
    if n % 2 == 1 {
        double_factorial_odd((n - 1) / 2)
    } else {
        ExactInt::zero()
    }
}

/// `sum_j C(2m,2j) a(2j-1) == sum_j C(2m,2j-1) a(2j-2)` for `j = 1..=m`.
pub fn cauchy_even_identity_check(m: u64) -> bool {
    let (lhs, rhs) = (1..=m).fold((ExactInt::zero(), ExactInt::zero()), |(l, r), j| {
        (
            l + binomial(2 * m, 2 * j as i64) * partial_sum(2 * j - 1),
            r + binomial(2 * m, 2 * j as i64 - 1) * partial_sum(2 * j - 2),
        )
    });
    lhs == rhs
}

/// Iterator over `(j, (2j-1)!! * C(4k-1, 2j))` for `j = 0..=2k-1`.
fn weighted_terms(k: u64) -> impl Iterator<Item = (u64, ExactInt)> {
    let top = 4 * k - 1;
    (0..2 * k).scan((ExactInt::one(), ExactInt::one()), move |(dfo, binom), j| {
        let item = (j, &*dfo * &*binom);
        // advance to j + 1
        *dfo *= 2 * j + 1;
        let r = 2 * j;
        if r + 2 <= top {
            *binom = &*binom * ((top - r) * (top - r - 1)) / ((r + 1) * (r + 2));
        }
        Some(item)
    })
}

/// `F(alpha, beta, k) = sum_{j=0}^{2k-1} (2j + alpha)^beta (2j)!/(j! 2^j) C(4k-1, 2j)`.
///
/// # Panics
/// If `k == 0`.
pub fn f_sum(alpha: i64, beta: u32, k: u64) -> ExactInt {
    assert!(k >= 1, "F(alpha, beta, k) needs k >= 1");
    weighted_terms(k).fold(ExactInt::zero(), |acc, (j, w)| {
        acc + ExactInt::from(2 * j as i64 + alpha).pow(beta) * w
    })
}

/// `b(k) = sum_{j=0}^{2k-1} (2j)!/(j! 2^j) C(4k-1, 2j) / (2j+1)`, exactly. Satisfies `4k b(k) = a(4k-1)`.
///
/// # Panics
/// If `k == 0`.
pub fn b_k(k: u64) -> ExactRat {
    assert!(k >= 1, "b(k) needs k >= 1");
    weighted_terms(k).fold(ExactRat::zero(), |acc, (j, w)| {
        acc + ExactRat::new(w, ExactInt::from(2 * j + 1))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::involution_number;

    fn int(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    const TABLE_0_10: [i64; 11] = [1, 2, 4, 8, 18, 44, 120, 352, 1116, 3736, 13232];

    #[test]
    fn tabulated_values() {
        for (n, &v) in TABLE_0_10.iter().enumerate() {
            assert_eq!(partial_sum(n as u64), int(v));
        }
        // a(11) = a(10) + I(11)
        assert_eq!(partial_sum(11), int(13232) + involution_number(11));
        assert_eq!(partial_sum(11), int(48928));
    }

    #[test]
    fn binomial_form() {
        assert_eq!(partial_sum_by_binomial(4), int(18));
        assert_eq!(partial_sum_by_binomial(1), int(2));
        assert_eq!(partial_sum_by_binomial(7), int(352));
        assert_eq!(partial_sum_by_binomial(0), int(1));
        for n in 0..=150 {
            assert_eq!(partial_sum_by_binomial(n), partial_sum(n));
        }
    }

    #[test]
    fn cauchy_identities() {
        assert_eq!(cauchy_alternating_sum(3), int(1));
        assert_eq!(cauchy_alternating_sum(2), int(0));
        assert_eq!(cauchy_alternating_sum(5), int(3));
        assert_eq!(cauchy_alternating_sum(1), int(1));
        for m in [1, 2, 10] {
            assert!(cauchy_even_identity_check(m));
        }
    }

    #[test]
    fn f_sum_values() {
        assert_eq!(f_sum(1, 0, 1), int(4));
        assert_eq!(f_sum(1, 1, 1), int(10));
        assert_eq!(f_sum(1, 2, 1), int(28));
        // alpha need not be odd or positive
        assert_eq!(f_sum(-4, 0, 2), involution_number(7));
    }

    #[test]
    fn b_k_values() {
        assert_eq!(b_k(1), ExactRat::from_integer(int(2)));
        assert_eq!(b_k(2), ExactRat::from_integer(int(44)));
        assert_eq!(b_k(3), ExactRat::new(int(12232), int(3)));
        assert_eq!(b_k(3), ExactRat::new(partial_sum(11), int(12)));
    }

    #[test]
    #[should_panic]
    fn b_k_rejects_zero() {
        let _ = b_k(0);
    }
}
