//! Exact integers and rationals plus the number-theoretic primitives the
//! rest of the crate is built on: factorials, binomials, base-p digit sums
//! and p-adic valuations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type ExactRat = BigRational;

/// Deterministic trial division. Adequate for every prime this crate touches (well below 10^6).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// All primes `<= bound`, ascending.
pub fn primes_upto(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| is_prime(p)).collect()
}

/// `n!`
pub fn factorial(n: u64) -> ExactInt {
    (2..=n).fold(ExactInt::one(), |acc, j| acc * j)
}

/// Falling factorial `n (n-1) ... (n-k+1)`; empty product for `k = 0`.
pub fn falling_factorial(n: u64, k: u64) -> ExactInt {
    if k > n {
        return ExactInt::zero();
    }
    ((n - k + 1)..=n).fold(ExactInt::one(), |acc, j| acc * j)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> ExactInt {
    if k < 0 || k as u64 > n {
        return ExactInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = ExactInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `n! / prod(lambda_i!)`.
pub fn multinomial(n: u64, lambda: &Partition) -> Result<ExactInt> {
    if lambda.total() != n {
        return Err(Error::PartitionMismatch {
            n,
            partition: lambda.to_string(),
        });
    }
    let denom = lambda
        .parts()
        .iter()
        .fold(ExactInt::one(), |acc, &part| acc * factorial(part));
    Ok(factorial(n) / denom)
}

/// Sum of the base-`p` digits of `n`.
pub fn digit_sum(n: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    let mut n = n;
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    Ok(s)
}

/// `nu_p(n!)` by Legendre's formula `(n - s_p(n)) / (p - 1)`.
pub fn nu_factorial(n: u64, p: u64) -> Result<u64> {
    Ok((n - digit_sum(n, p)?) / (p - 1))
}

/// Largest `e` with `p^e | x`.
pub fn nu_int(x: &ExactInt, p: u64) -> Result<u64> {
    require_prime(p)?;
    if x.is_zero() {
        return Err(Error::ZeroValuation(p));
    }
    if p == 2 {
        return Ok(x.trailing_zeros().unwrap_or(0));
    }
    let p_big = ExactInt::from(p);
    let mut rest = x.abs();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(&p_big);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// `nu_p(numerator) - nu_p(denominator)`; negative when `p` divides the denominator.
pub fn nu_rat(x: &ExactRat, p: u64) -> Result<i64> {
    let num = nu_int(x.numer(), p)?;
    let den = nu_int(x.denom(), p)?;
    Ok(num as i64 - den as i64)
}

/// Valuation of a machine integer.
pub fn nu_u64(x: u64, p: u64) -> Result<u64> {
    nu_int(&ExactInt::from(x), p)
}

/// Least nonnegative residue of `x` modulo `m`.
pub fn residue(x: &ExactInt, m: u64) -> u64 {
    x.mod_floor(&ExactInt::from(m))
        .to_u64()
        .expect("residue is below the modulus")
}

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    /// The partition `(1, 1, ..., 1)` of `n`.
    pub fn ones(n: u64) -> Self {
        Self {
            parts: vec![1; n as usize],
        }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> u64 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `e[t-1]` = number of parts equal to `t`, for `t = 1..=len`.
    pub fn multiplicities(&self, len: usize) -> Vec<u32> {
        let mut e = vec![0u32; len];
        for &part in &self.parts {
            e[part as usize - 1] += 1;
        }
        e
    }

    /// Inverse of [`Partition::multiplicities`].
    pub fn from_multiplicities(e: &[u32]) -> Self {
        let mut parts = Vec::new();
        for (t, &count) in e.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(t as u64 + 1, count as usize));
        }
        Self { parts }
    }

    /// Number of permutations of `n = self.total()` with this cycle type,
    /// `n! / prod_t (t^{e_t} e_t!)`.
    pub fn class_size(&self) -> ExactInt {
        let e = self.multiplicities(self.largest() as usize);
        let denom = e.iter().enumerate().fold(ExactInt::one(), |acc, (i, &et)| {
            acc * ExactInt::from(i as u64 + 1).pow(et) * factorial(et as u64)
        });
        factorial(self.total()) / denom
    }
}

impl fmt::Display for Partition {
    /// `3+2+1`; the empty partition prints as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(['+', ','])
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidPartition(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Iterator over the partitions of `n` in reverse-lexicographic order,
/// starting at `(n)` and ending at `(1^n)`.
pub struct Partitions {
    next: Option<Vec<u64>>,
}

/// All partitions of `n`, reverse-lexicographic.
pub fn partitions(n: u64) -> Partitions {
    Partitions {
        next: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // rightmost part > 1
        if let Some(i) = current.iter().rposition(|&x| x > 1) {
            let ones = (current.len() - i - 1) as u64;
            let x = current[i] - 1;
            let mut rem = ones + 1;
            let mut succ = current[..i].to_vec();
            succ.push(x);
            while rem > x {
                succ.push(x);
                rem -= x;
            }
            if rem > 0 {
                succ.push(rem);
            }
            self.next = Some(succ);
        }
        Some(Partition { parts: current })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        let iterated = (1..=12i64).product::<i64>();
        assert_eq!(factorial(12), int(iterated));
        assert_eq!(factorial(12), int(479001600));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(4, 5), int(0));
        assert_eq!(binomial(4, -1), int(0));
        // Pascal triangle oracle
        let mut row = vec![int(1)];
        for n in 1..=40u64 {
            let mut next = vec![int(1); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
        assert_eq!(row[20], int(137846528820));
        assert_eq!(binomial(40, 20), row[20]);
    }

    #[test]
    fn multinomial_values() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(multinomial(2, &p("1+1")).unwrap(), int(2));
        assert_eq!(multinomial(6, &p("3+3")).unwrap(), int(20));
        assert_eq!(multinomial(4, &p("2+1+1")).unwrap(), int(12));
        assert!(matches!(
            multinomial(5, &p("2+2")),
            Err(Error::PartitionMismatch { .. })
        ));
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(10, 2).unwrap(), 2);
        assert_eq!(digit_sum(0, 5).unwrap(), 0);
        assert_eq!(digit_sum(24, 5).unwrap(), 8);
        assert_eq!(digit_sum(24, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn legendre() {
        assert_eq!(nu_factorial(4, 2).unwrap(), 3);
        assert_eq!(nu_factorial(0, 3).unwrap(), 0);
        assert_eq!(nu_factorial(25, 5).unwrap(), 6);
        assert!(nu_factorial(25, 1).is_err());
    }

    #[test]
    fn legendre_against_direct_division() {
        for p in [2, 3, 5, 7] {
            let mut fact = ExactInt::one();
            for n in 0..=300u64 {
                if n > 0 {
                    fact *= n;
                }
                assert_eq!(nu_factorial(n, p).unwrap(), nu_int(&fact, p).unwrap());
            }
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(nu_int(&int(232), 2).unwrap(), 3);
        assert_eq!(nu_int(&int(1), 7).unwrap(), 0);
        assert_eq!(nu_int(&int(-45), 3).unwrap(), 2);
        assert_eq!(nu_int(&int(0), 3), Err(Error::ZeroValuation(3)));
        let two_thirds = ExactRat::new(int(2), int(3));
        assert_eq!(nu_rat(&two_thirds, 3).unwrap(), -1);
        assert_eq!(nu_rat(&two_thirds, 2).unwrap(), 1);
        assert!(nu_rat(&ExactRat::zero(), 2).is_err());
    }

    #[test]
    fn primality() {
        assert_eq!(primes_upto(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(561));
        assert!(is_prime(541));
    }

    #[test]
    fn partition_basics() {
        let p: Partition = "2+3+1".parse().unwrap();
        assert_eq!(p.parts(), &[3, 2, 1]);
        assert_eq!(p.to_string(), "3+2+1");
        assert_eq!(p.total(), 6);
        assert_eq!(p.multiplicities(4), vec![1, 1, 1, 0]);
        assert_eq!(Partition::from_multiplicities(&[1, 1, 1, 0]), p);
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
    }

    #[test]
    fn partitions_in_reverse_lex_order() {
        let got: Vec<String> = partitions(5).map(|p| p.to_string()).collect();
        assert_eq!(
            got,
            ["5", "4+1", "3+2", "3+1+1", "2+2+1", "2+1+1+1", "1+1+1+1+1"]
        );
        assert_eq!(partitions(0).count(), 1);
        // p(n) for n = 0..=12
        let counts: Vec<usize> = (0..=12).map(|n| partitions(n).count()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }

    #[test]
    fn class_sizes() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(p("3+2").class_size(), int(20));
        assert_eq!(p("2+2+2+2").class_size(), int(105));
        assert_eq!(Partition::ones(7).class_size(), int(1));
        assert_eq!(Partition::empty().class_size(), int(1));
    }
}
