//! p-adic behaviour of `I(n)` and `a(n)`: closed-form 2-adic valuations,
//! efficient/inefficient primes, periodicity modulo `p^r`, the valuation
//! tree of residue classes, and the multinomial congruences.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{
    factorial, is_prime, multinomial, nu_int, nu_u64, primes_upto, require_prime, ExactInt,
    Partition,
};
use crate::partialsum::partial_sum_table;

/// Piecewise `nu_2(I(n))`: `k, k, k+1, k+2` for `n = 4k, 4k+1, 4k+2, 4k+3`.
pub fn nu2_involution(n: u64) -> u64 {
    let k = n / 4;
    match n % 4 {
        0 | 1 => k,
        2 => k + 1,
        _ => k + 2,
    }
}

/// The same valuation as `floor(n/2) - 2 floor(n/4) + floor((n+1)/4)`.
pub fn nu2_involution_floor_form(n: u64) -> u64 {
    n / 2 + (n + 1) / 4 - 2 * (n / 4)
}

/// Piecewise `nu_2(a(n))`: `k` for `n = 4k-3`, `k+1` for `n = 4k-2`,
/// `nu_2(k)+k+2` for `n = 4k-1` and `k` for `n = 4k`.
/// `n = 0` lies outside the four classes and returns `nu_2(a(0)) = 0`.
pub fn nu2_partial_sum(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    match n % 4 {
        1 => n.div_ceil(4),
        2 => (n + 2) / 4 + 1,
        3 => {
            let k = (n + 1) / 4;
            k.trailing_zeros() as u64 + k + 2
        }
        _ => n / 4,
    }
}

/// `I(0..count)` reduced modulo `modulus`.
pub fn involution_residues(modulus: u64, count: usize) -> Vec<u64> {
    let m = modulus as u128;
    let mut out = Vec::with_capacity(count);
    let (mut prev, mut cur) = (1u128 % m, 1u128 % m);
    for n in 0..count {
        match n {
            0 => out.push(prev as u64),
            1 => out.push(cur as u64),
            _ => {
                let next = (cur + (n as u128 - 1) % m * prev) % m;
                prev = cur;
                cur = next;
                out.push(cur as u64);
            }
        }
    }
    out
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p != 2 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

/// An odd prime is efficient when it divides none of `I(0), ..., I(p-1)`.
pub fn is_efficient(p: u64) -> Result<bool> {
    require_odd_prime(p)?;
    Ok(involution_residues(p, p as usize).iter().all(|&r| r != 0))
}

/// Inefficient odd primes up to `bound`, ascending.
pub fn inefficient_primes_upto(bound: u64) -> Vec<u64> {
    let odd: Vec<u64> = primes_upto(bound).into_iter().filter(|&p| p > 2).collect();
    odd.into_par_iter()
        .filter(|&p| !is_efficient(p).expect("odd prime"))
        .collect()
}

/// Efficient odd primes up to `bound`, ascending.
pub fn efficient_primes_upto(bound: u64) -> Vec<u64> {
    let odd: Vec<u64> = primes_upto(bound).into_iter().filter(|&p| p > 2).collect();
    odd.into_par_iter()
        .filter(|&p| is_efficient(p).expect("odd prime"))
        .collect()
}

/// First `n <= n_max` with `I(n + p^r) != I(n) mod p^r`, if any.
pub fn periodicity_counterexample(p: u64, r: u32, n_max: u64) -> Result<Option<u64>> {
    require_prime(p)?;
    let modulus = p
        .checked_pow(r)
        .ok_or_else(|| Error::Precondition(format!("{p}^{r} overflows")))?;
    let res = involution_residues(modulus, (n_max + modulus + 1) as usize);
    Ok((0..=n_max).find(|&n| res[n as usize] != res[(n + modulus) as usize]))
}

/// Whether `I(n + p^r) == I(n) mod p^r` for every `n <= n_max`.
pub fn periodicity_check(p: u64, r: u32, n_max: u64) -> Result<bool> {
    Ok(periodicity_counterexample(p, r, n_max)?.is_none())
}

/// Status of a residue class in the valuation tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexStatus {
    /// `nu_p(I(n))` equals `valuation` for every `n` in the class.
    Terminal { valuation: u64 },
    /// `nu_p(I(n)) >= lower_bound` on the class, and the class is split further.
    NonTerminal { lower_bound: u64 },
}

/// The class `{ n : n == residue mod p^level }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeVertex {
    pub level: u32,
    pub residue: u64,
    pub modulus: u64,
    pub status: VertexStatus,
    /// Members of the class on which the terminal valuation was recomputed exactly.
    pub certified: u32,
}

impl TreeVertex {
    pub fn is_terminal(&self) -> bool {
        matches!(self.status, VertexStatus::Terminal { .. })
    }

    pub fn valuation_or_bound(&self) -> u64 {
        match self.status {
            VertexStatus::Terminal { valuation } => valuation,
            VertexStatus::NonTerminal { lower_bound } => lower_bound,
        }
    }
}

/// Leveled tree of residue classes classifying `nu_p(I(n))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationTree {
    pub prime: u64,
    pub max_level: u32,
    pub levels: Vec<Vec<TreeVertex>>,
}

#[derive(Serialize)]
struct VertexJson {
    residue: u64,
    modulus: u64,
    status: &'static str,
    valuation_or_bound: u64,
}

#[derive(Serialize)]
struct TreeJson {
    schema: &'static str,
    prime: u64,
    levels: Vec<Vec<VertexJson>>,
}

impl ValuationTree {
    pub fn level(&self, level: u32) -> &[TreeVertex] {
        self.levels
            .get(level as usize - 1)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// The valuation of `I(n)` if the tree resolves the class of `n`.
    pub fn lookup(&self, n: u64) -> Option<u64> {
        self.levels.iter().flatten().find_map(|v| match v.status {
            VertexStatus::Terminal { valuation } if n % v.modulus == v.residue => Some(valuation),
            _ => None,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let levels = self
            .levels
            .iter()
            .map(|lvl| {
                lvl.iter()
                    .map(|v| VertexJson {
                        residue: v.residue,
                        modulus: v.modulus,
                        status: if v.is_terminal() {
                            "terminal"
                        } else {
                            "nonterminal"
                        },
                        valuation_or_bound: v.valuation_or_bound(),
                    })
                    .collect()
            })
            .collect();
        serde_json::to_value(TreeJson {
            schema: "involutions.valuation-tree/1",
            prime: self.prime,
            levels,
        })
        .expect("tree serializes")
    }
}

impl fmt::Display for ValuationTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "valuation tree for p = {}", self.prime)?;
        for (i, lvl) in self.levels.iter().enumerate() {
            write!(f, "level {}:", i + 1)?;
            for v in lvl {
                match v.status {
                    VertexStatus::Terminal { valuation } => {
                        write!(f, " {} mod {} -> {}", v.residue, v.modulus, valuation)?
                    }
                    VertexStatus::NonTerminal { lower_bound } => {
                        write!(f, " {} mod {} -> >={}", v.residue, v.modulus, lower_bound)?
                    }
                }
                write!(f, ";")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Upper limit on `p^max_level`, the number of modular recurrence steps.
pub const TREE_STEP_BUDGET: u64 = 400_000_000;
/// Largest index at which an exact `I(n)` is computed for certification.
pub const CERTIFY_INDEX_BUDGET: u64 = 40_000;

/// Streams `I(n) mod m`, remembering the values at requested indices.
struct ResidueStream {
    modulus: u128,
    pos: u64,
    prev: u128,
    cur: u128,
    seen: HashMap<u64, u64>,
}

impl ResidueStream {
    fn new(modulus: u64) -> Self {
        let m = modulus as u128;
        Self {
            modulus: m,
            pos: 1,
            prev: 1 % m,
            cur: 1 % m,
            seen: HashMap::from([(0, (1 % m) as u64), (1, (1 % m) as u64)]),
        }
    }

    fn capture(&mut self, wanted: &[u64]) {
        let want: HashSet<u64> = wanted.iter().copied().collect();
        let target = wanted.iter().copied().max().unwrap_or(0);
        while self.pos < target {
            self.pos += 1;
            let next = (self.cur + (self.pos as u128 - 1) % self.modulus * self.prev) % self.modulus;
            self.prev = self.cur;
            self.cur = next;
            if want.contains(&self.pos) {
                self.seen.insert(self.pos, self.cur as u64);
            }
        }
    }
}

/// Builds the valuation tree of `nu_p(I(n))` to depth `max_level`.
///
/// A class `c mod p^l` is terminal exactly when `I(c) mod p^l != 0`; by periodicity
/// of `I mod p^l` the valuation is then constant on the class. Terminal vertices are
/// additionally checked on `certify_n` explicit members using exact arithmetic.
pub fn build_valuation_tree(p: u64, max_level: u32, certify_n: u32) -> Result<ValuationTree> {
    require_odd_prime(p)?;
    if max_level == 0 {
        return Err(Error::Precondition("max_level must be at least 1".into()));
    }
    let top = p
        .checked_pow(max_level)
        .filter(|&m| m <= TREE_STEP_BUDGET)
        .ok_or_else(|| {
            Error::BudgetExceeded(format!(
                "{p}^{max_level} exceeds the {TREE_STEP_BUDGET}-step budget"
            ))
        })?;
    let mut stream = ResidueStream::new(top);
    let mut levels: Vec<Vec<TreeVertex>> = Vec::new();
    let mut candidates: Vec<u64> = (0..p).collect();
    for level in 1..=max_level {
        if candidates.is_empty() {
            break;
        }
        let modulus = p.pow(level);
        stream.capture(&candidates);
        let vertices = candidates
            .iter()
            .map(|&c| {
                let r = stream.seen[&c] % modulus;
                let status = if r != 0 {
                    VertexStatus::Terminal {
                        valuation: nu_u64(r, p).expect("nonzero residue"),
                    }
                } else {
                    VertexStatus::NonTerminal {
                        lower_bound: level as u64,
                    }
                };
                TreeVertex {
                    level,
                    residue: c,
                    modulus,
                    status,
                    certified: 0,
                }
            })
            .collect::<Vec<_>>();
        candidates = vertices
            .iter()
            .filter(|v| !v.is_terminal())
            .flat_map(|v| (0..p).map(move |k| v.residue + k * modulus))
            .collect();
        levels.push(vertices);
    }
    let mut tree = ValuationTree {
        prime: p,
        max_level,
        levels,
    };
    if certify_n > 0 {
        certify(&mut tree, certify_n)?;
    }
    Ok(tree)
}

/// Recomputes `nu_p(I(n))` exactly at the first `count` members of every terminal class.
fn certify(tree: &mut ValuationTree, count: u32) -> Result<()> {
    let p = tree.prime;
    let mut samples: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
    let mut last = 0;
    for (li, lvl) in tree.levels.iter().enumerate() {
        for (vi, v) in lvl.iter().enumerate().filter(|(_, v)| v.is_terminal()) {
            for i in 0..count as u64 {
                let n = v.residue + i * v.modulus;
                last = last.max(n);
                samples.entry(n).or_default().push((li, vi));
            }
        }
    }
    if last > CERTIFY_INDEX_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "certification needs I({last}), above {CERTIFY_INDEX_BUDGET}"
        )));
    }
    let (mut prev, mut cur) = (ExactInt::one(), ExactInt::one());
    for n in 0..=last {
        if n >= 2 {
            let next = &cur + &prev * (n - 1);
            prev = std::mem::replace(&mut cur, next);
        }
        let Some(owners) = samples.get(&n) else {
            continue;
        };
        let actual = nu_int(&cur, p)?;
        for &(li, vi) in owners {
            let v = &mut tree.levels[li][vi];
            if v.valuation_or_bound() != actual {
                return Err(Error::Precondition(format!(
                    "certification failed: nu_{p}(I({n})) = {actual}, class {} mod {} claims {}",
                    v.residue,
                    v.modulus,
                    v.valuation_or_bound()
                )));
            }
            v.certified += 1;
        }
    }
    Ok(())
}

/// Per-level counts checked against the single-non-terminal-vertex conjecture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelFinding {
    pub level: u32,
    /// Terminal vertices whose valuation is `level - 1`.
    pub terminal_expected: usize,
    /// Terminal vertices with any other valuation.
    pub terminal_other: usize,
    pub nonterminal: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub prime: u64,
    pub levels: Vec<LevelFinding>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.levels.iter().all(|l| l.holds)
    }

    /// First level at which the counts deviate from `(p-1, 1)`.
    pub fn first_failure(&self) -> Option<u32> {
        self.levels.iter().find(|l| !l.holds).map(|l| l.level)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["schema"] = "involutions.conjecture-report/1".into();
        v
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "p = {}\nlevel  terminal(v=level-1)  terminal(other)  nonterminal  holds\n",
            self.prime
        );
        for l in &self.levels {
            out.push_str(&format!(
                "{:>5}  {:>20}  {:>15}  {:>11}  {}\n",
                l.level, l.terminal_expected, l.terminal_other, l.nonterminal, l.holds
            ));
        }
        out
    }
}

/// Checks, level by level, whether the tree has `p-1` terminal vertices of valuation
/// `level-1` and exactly one non-terminal vertex. The outcome is a finding; a level
/// with no vertices (the tree closed earlier) counts as not holding.
pub fn conjecture_check(p: u64, max_level: u32) -> Result<ConjectureReport> {
    let tree = build_valuation_tree(p, max_level, 0)?;
    let levels = (1..=max_level)
        .map(|level| {
            let vs = tree.level(level);
            let terminal_expected = vs
                .iter()
                .filter(|v| v.status == VertexStatus::Terminal { valuation: level as u64 - 1 })
                .count();
            let nonterminal = vs.iter().filter(|v| !v.is_terminal()).count();
            let terminal_other = vs.len() - terminal_expected - nonterminal;
            LevelFinding {
                level,
                terminal_expected,
                terminal_other,
                nonterminal,
                holds: terminal_expected as u64 == p - 1 && nonterminal == 1 && terminal_other == 0,
            }
        })
        .collect();
    Ok(ConjectureReport { prime: p, levels })
}

/// `nu_3(a(n))` as predicted by the three-case rule for `a(9m+8)`:
/// zero off `n == 8 mod 9`, and `0, 0, nu_3(m+1)` for `m == 0, 1, 2 mod 3`.
pub fn nu3_partial_sum_stated(n: u64) -> u64 {
    if n % 9 != 8 {
        return 0;
    }
    let m = (n - 8) / 9;
    if m % 3 == 2 {
        nu_u64(m + 1, 3).expect("m + 1 > 0")
    } else {
        0
    }
}

/// `nu_3(a(n))` as observed: `2` for `n == 4 mod 9`, `1` for `n == 6 mod 9`,
/// `2 + nu_3((n+1)/9)` for `n == 8 mod 9`, and `0` otherwise.
pub fn nu3_partial_sum_observed(n: u64) -> u64 {
    match n % 9 {
        4 => 2,
        6 => 1,
        8 => 2 + nu_u64((n + 1) / 9, 3).expect("n + 1 > 0"),
        _ => 0,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Nu3Report {
    pub n_max: u64,
    /// First `(n, stated, actual)` where the three-case rule fails.
    pub stated_counterexample: Option<(u64, u64, u64)>,
    /// First `(n, observed, actual)` where the observed rule fails.
    pub observed_counterexample: Option<(u64, u64, u64)>,
}

impl fmt::Display for Nu3Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |c: Option<(u64, u64, u64)>| match c {
            None => "holds".to_string(),
            Some((n, rule, actual)) => format!("fails at n = {n} (rule {rule}, actual {actual})"),
        };
        writeln!(f, "n <= {}", self.n_max)?;
        writeln!(f, "three-case rule: {}", line(self.stated_counterexample))?;
        write!(f, "mod-9 rule: {}", line(self.observed_counterexample))
    }
}

/// Sweeps `n <= n_max` comparing both rules with the exact `nu_3(a(n))`.
pub fn nu3_partial_sum_report(n_max: u64) -> Nu3Report {
    partial_sum_table().with_prefix(n_max, |a| {
        let mut stated = None;
        let mut observed = None;
        for (n, value) in a.iter().enumerate() {
            let n = n as u64;
            let actual = nu_int(value, 3).expect("a(n) > 0");
            if stated.is_none() && nu3_partial_sum_stated(n) != actual {
                stated = Some((n, nu3_partial_sum_stated(n), actual));
            }
            if observed.is_none() && nu3_partial_sum_observed(n) != actual {
                observed = Some((n, nu3_partial_sum_observed(n), actual));
            }
        }
        Nu3Report {
            n_max,
            stated_counterexample: stated,
            observed_counterexample: observed,
        }
    })
}

/// Whether the three-case rule for `nu_3(a(n))` holds for every `n <= n_max`.
pub fn nu3_partial_sum_pattern_check(n_max: u64) -> bool {
    nu3_partial_sum_report(n_max).stated_counterexample.is_none()
}

/// `C(pn; p*lambda) == C(n; lambda)` modulo `p^2`, and modulo `p^3` as well when `p >= 5`.
pub fn multinomial_congruence_check(p: u64, n: u64, lambda: &Partition) -> Result<bool> {
    require_odd_prime(p)?;
    let small = multinomial(n, lambda)?;
    let scaled_parts: Vec<u64> = lambda.parts().iter().map(|&x| x * p).collect();
    let big = multinomial(p * n, &Partition::new(scaled_parts)?)?;
    let exponent = if p >= 5 { 3 } else { 2 };
    let modulus = ExactInt::from(p).pow(exponent);
    let diff = big - small;
    Ok((diff % modulus).is_zero())
}

/// `nu_p(n!)` by dividing the exact factorial, for cross-checking Legendre's formula.
pub fn nu_factorial_direct(n: u64, p: u64) -> Result<u64> {
    nu_int(&factorial(n), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::involution_number;
    use crate::partialsum::partial_sum;

    #[test]
    fn nu2_of_involutions() {
        assert_eq!(nu2_involution(7), 3);
        assert_eq!(nu2_involution(0), 0);
        assert_eq!(nu2_involution(10), 3);
        for n in 0..=300 {
            assert_eq!(nu2_involution(n), nu2_involution_floor_form(n));
            assert_eq!(nu2_involution(n), nu_int(&involution_number(n), 2).unwrap());
        }
    }

    #[test]
    fn nu2_of_partial_sums() {
        assert_eq!(nu2_partial_sum(7), 5);
        assert_eq!(nu2_partial_sum(4), 1);
        assert_eq!(nu2_partial_sum(6), 3);
        assert_eq!(nu2_partial_sum(0), 0);
        for n in 0..=300 {
            assert_eq!(nu2_partial_sum(n), nu_int(&partial_sum(n), 2).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn efficiency() {
        assert!(is_efficient(3).unwrap());
        assert!(!is_efficient(5).unwrap());
        assert!(is_efficient(7).unwrap());
        assert_eq!(is_efficient(2), Err(Error::NotOddPrime(2)));
        assert_eq!(is_efficient(9), Err(Error::NotOddPrime(9)));
        assert_eq!(inefficient_primes_upto(50), vec![5, 13, 19, 23, 29, 31, 43]);
        assert!(inefficient_primes_upto(3).is_empty());
    }

    #[test]
    fn periodicity() {
        assert!(periodicity_check(5, 1, 100).unwrap());
        assert!(periodicity_check(5, 2, 200).unwrap());
        assert!(periodicity_check(3, 3, 100).unwrap());
        // I mod 2 runs 1, 1, 0, 0, ...: not periodic with period 2
        assert_eq!(periodicity_counterexample(2, 1, 50).unwrap(), Some(0));
        assert!(periodicity_check(4, 1, 10).is_err());
    }

    #[test]
    fn tree_for_five() {
        let tree = build_valuation_tree(5, 2, 3).unwrap();
        let l1 = tree.level(1);
        assert_eq!(l1.len(), 5);
        for v in &l1[..4] {
            assert_eq!(v.status, VertexStatus::Terminal { valuation: 0 });
            assert_eq!(v.certified, 3);
        }
        assert_eq!(l1[4].status, VertexStatus::NonTerminal { lower_bound: 1 });
        let l2 = tree.level(2);
        let residues: Vec<u64> = l2.iter().map(|v| v.residue).collect();
        assert_eq!(residues, vec![4, 9, 14, 19, 24]);
        for v in &l2[..4] {
            assert_eq!(v.status, VertexStatus::Terminal { valuation: 1 });
        }
        assert_eq!(l2[4].status, VertexStatus::NonTerminal { lower_bound: 2 });
        assert_eq!(tree.lookup(9), Some(1));
        assert_eq!(tree.lookup(24), None);
    }

    #[test]
    fn tree_for_thirteen() {
        let tree = build_valuation_tree(13, 1, 2).unwrap();
        let nonterminal: Vec<u64> = tree
            .level(1)
            .iter()
            .filter(|v| !v.is_terminal())
            .map(|v| v.residue)
            .collect();
        assert_eq!(nonterminal, vec![5]);
    }

    #[test]
    fn tree_errors() {
        assert!(matches!(
            build_valuation_tree(5, 20, 0),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(build_valuation_tree(4, 2, 0).is_err());
        assert!(build_valuation_tree(5, 0, 0).is_err());
        assert!(matches!(
            build_valuation_tree(5, 6, 20),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn tree_json_shape() {
        let json = build_valuation_tree(5, 2, 0).unwrap().to_json();
        assert_eq!(json["prime"], 5);
        assert_eq!(json["levels"][1][4]["residue"], 24);
        assert_eq!(json["levels"][1][4]["modulus"], 25);
        assert_eq!(json["levels"][1][4]["status"], "nonterminal");
        assert_eq!(json["levels"][1][0]["valuation_or_bound"], 1);
    }

    #[test]
    fn conjecture_findings() {
        let r = conjecture_check(5, 2).unwrap();
        assert!(r.holds());
        assert!(conjecture_check(5, 4).unwrap().holds());
        // 19 closes at level 2: every class mod 361 is terminal
        let r19 = conjecture_check(19, 2).unwrap();
        assert_eq!(r19.first_failure(), Some(2));
        assert_eq!(r19.levels[1].nonterminal, 0);
    }

    #[test]
    fn nu3_rules() {
        // a(4) = 18 already breaks the stated rule
        let report = nu3_partial_sum_report(100);
        assert_eq!(report.stated_counterexample, Some((4, 0, 2)));
        assert_eq!(report.observed_counterexample, None);
        assert!(!nu3_partial_sum_pattern_check(9));
    }

    #[test]
    fn congruences() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert!(multinomial_congruence_check(3, 2, &p("1+1")).unwrap());
        assert!(multinomial_congruence_check(5, 2, &p("1+1")).unwrap());
        assert!(multinomial_congruence_check(3, 1, &p("1")).unwrap());
        assert!(multinomial_congruence_check(3, 3, &p("2+2")).is_err());
    }
}
