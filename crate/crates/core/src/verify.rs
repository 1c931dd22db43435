//! Named sweeps that check identities and invariants over a range, stopping at the first
//! counterexample. Each suite takes a single size bound `max` whose meaning is suite-specific
//! (a largest `n`, `k`, order, or level) and has a default.

use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::asymptotic::{
    beta_closed_form, beta_series_extraction, compare_saddle, estimate_closed_form,
    estimate_saddle, fit_beta_default, solve_saddle, BetaSource,
};
use crate::cyclecount::{cycle_index_poly, restricted_count, restricted_counts, toeplitz_determinant};
use crate::exactnum::{
    binomial, digit_sum, factorial, nu_factorial, nu_int, nu_rat, partitions, ExactInt, ExactRat,
};
use crate::involution::{
    double_factorial_odd, hermite_relation_check, involution_number, involution_number_bisplit,
    involution_number_by_sum, involution_poly,
};
use crate::oracle::{census, enumerate_census, partition_census};
use crate::partialsum::{
    b_k, cauchy_alternating_expected, cauchy_alternating_sum, cauchy_even_identity_check, f_sum,
    partial_sum, partial_sum_by_binomial,
};
use crate::series::{
    involution_egf, lemma_partial_sums_check, partial_sum_egf_check, restricted_egf_check,
    umbral_check, TruncatedEGF,
};
use crate::valuation::{
    build_valuation_tree, efficient_primes_upto, inefficient_primes_upto, is_efficient,
    multinomial_congruence_check, nu2_involution, nu2_involution_floor_form, nu2_partial_sum,
    periodicity_counterexample, VertexStatus,
};

/// The odd primes up to 541 for which some `I(j)`, `j < p`, vanishes mod `p`.
pub const INEFFICIENT_PRIMES_TO_541: [u64; 62] = [
    5, 13, 19, 23, 29, 31, 43, 53, 59, 61, 67, 73, 79, 83, 89, 97, 103, 131, 137, 151, 157, 163,
    173, 179, 181, 191, 197, 199, 211, 229, 233, 239, 241, 281, 293, 307, 317, 347, 359, 367, 373,
    379, 389, 397, 409, 419, 421, 431, 433, 443, 449, 457, 461, 463, 479, 487, 491, 499, 509, 521,
    523, 541,
];

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub suite: &'static str,
    pub max: u64,
    /// Number of individual cases checked.
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "involutions.verify/1",
            "suite": self.suite,
            "max": self.max,
            "checked": self.checked,
            "passed": self.passed(),
            "counterexample": self.counterexample,
        })
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.counterexample {
            None => write!(f, "PASS {} (max {}, {} cases)", self.suite, self.max, self.checked),
            Some(c) => write!(
                f,
                "FAIL {} (max {}, after {} cases): {c}",
                self.suite, self.max, self.checked
            ),
        }
    }
}

/// Unwraps a result inside a check closure, reporting an error as the counterexample.
macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Some(e.to_string()),
        }
    };
}

/// Cases checked and the first failure, if any.
type Outcome = (u64, Option<String>);

/// Runs `check` over `items` in order and stops at the first failure.
fn sweep<T>(items: impl IntoIterator<Item = T>, mut check: impl FnMut(T) -> Option<String>) -> Outcome {
    let mut checked = 0;
    for item in items {
        checked += 1;
        if let Some(msg) = check(item) {
            return (checked, Some(msg));
        }
    }
    (checked, None)
}

/// Like [`sweep`] but in parallel; the reported failure is the one with the smallest index.
fn par_sweep<T: Send + Sync>(items: Vec<T>, check: impl Fn(&T) -> Option<String> + Sync) -> Outcome {
    let failures: Vec<(usize, String)> = items
        .par_iter()
        .enumerate()
        .filter_map(|(i, t)| check(t).map(|m| (i, m)))
        .collect();
    match failures.into_iter().min_by_key(|(i, _)| *i) {
        Some((i, m)) => (i as u64 + 1, Some(m)),
        None => (items.len() as u64, None),
    }
}

fn fail_if(bad: bool, msg: impl FnOnce() -> String) -> Option<String> {
    bad.then(msg)
}

/// A named invariant sweep.
pub struct Suite {
    pub name: &'static str,
    pub description: &'static str,
    pub default_max: u64,
    run: fn(u64) -> Outcome,
}

impl Suite {
    pub fn run(&self, max: Option<u64>) -> Verdict {
        let max = max.unwrap_or(self.default_max);
        let (checked, counterexample) = (self.run)(max);
        Verdict {
            suite: self.name,
            max,
            checked,
            counterexample,
        }
    }
}

const SMALL_PRIMES: [u64; 4] = [2, 3, 5, 7];

fn legendre(max: u64) -> Outcome {
    sweep(SMALL_PRIMES.iter().flat_map(|&p| (0..=max).map(move |n| (p, n))), |(p, n)| {
        let lhs = tri!(nu_factorial(n, p));
        let rhs = (n - tri!(digit_sum(n, p))) / (p - 1);
        let direct = tri!(nu_int(&factorial(n), p));
        fail_if(lhs != rhs || lhs != direct, || {
            format!("n = {n}, p = {p}: Legendre {lhs}, digit form {rhs}, direct {direct}")
        })
    })
}

fn pascal(max: u64) -> Outcome {
    sweep((1..=max).flat_map(|n| (-1..=n as i64 + 1).map(move |k| (n, k))), |(n, k)| {
        let lhs = binomial(n, k);
        let rhs = binomial(n - 1, k - 1) + binomial(n - 1, k);
        fail_if(lhs != rhs, || format!("C({n}, {k}) = {lhs} but Pascal gives {rhs}"))
    })
}

fn rational_inverse(max: u64) -> Outcome {
    let m = max as i64;
    let pairs = (-m..=m).flat_map(move |a| (-m..=m).map(move |b| (a, b)));
    sweep(pairs.filter(|&(a, b)| a != 0 && b != 0), |(a, b)| {
        let x = ExactRat::new(ExactInt::from(a), ExactInt::from(b));
        let y = ExactRat::new(ExactInt::from(b), ExactInt::from(a));
        let renorm = ExactRat::new(x.numer().clone(), x.denom().clone());
        fail_if(!(&x * &y).is_one() || renorm != x, || format!("a/b = {a}/{b}"))
    })
}

fn valuation_additive(max: u64) -> Outcome {
    let triples = [2u64, 3, 5]
        .into_iter()
        .flat_map(move |p| (1..=max).flat_map(move |x| (1..=max).map(move |y| (p, x, y))));
    sweep(triples, |(p, x, y)| {
        let (bx, by) = (ExactInt::from(x), ExactInt::from(y));
        let lhs = tri!(nu_int(&(&bx * &by), p));
        let rhs = tri!(nu_int(&bx, p)) + tri!(nu_int(&by, p));
        fail_if(lhs != rhs, || format!("p = {p}, x = {x}, y = {y}: {lhs} != {rhs}"))
    })
}

fn involution_sum(max: u64) -> Outcome {
    par_sweep((0..=max).collect(), |&n| {
        fail_if(involution_number(n) != involution_number_by_sum(n), || {
            format!("I({n}) differs from the finite sum")
        })
    })
}

fn involution_bisplit(max: u64) -> Outcome {
    let pairs: Vec<(u64, u64)> = (0..=max)
        .flat_map(|s| (0..=s).map(move |n| (n, s - n)))
        .collect();
    par_sweep(pairs, |&(n, m)| {
        fail_if(involution_number_bisplit(n, m) != involution_number(n + m), || {
            format!("split ({n}, {m}) does not give I({})", n + m)
        })
    })
}

fn double_factorial_parity(max: u64) -> Outcome {
    sweep(0..=max, |j| {
        let v = tri!(nu_int(&double_factorial_odd(j), 2));
        fail_if(v != 0, || format!("(2*{j}-1)!! has 2-adic valuation {v}"))
    })
}

fn involution_poly_values(max: u64) -> Outcome {
    par_sweep((0..=max).collect(), |&n| {
        let p = involution_poly(n);
        let at_zero = if n % 2 == 0 {
            double_factorial_odd(n / 2)
        } else {
            ExactInt::zero()
        };
        fail_if(
            p.eval(&ExactInt::one()) != involution_number(n) || p.eval(&ExactInt::zero()) != at_zero,
            || format!("I({n}; t) has the wrong value at t = 0 or t = 1"),
        )
    })
}

fn hermite(max: u64) -> Outcome {
    par_sweep((0..=max).collect(), |&n| {
        fail_if(!hermite_relation_check(n), || format!("Hermite relation fails at n = {n}"))
    })
}

fn involution_oracle(max: u64) -> Outcome {
    sweep(0..=max.min(crate::oracle::ENUMERATION_MAX_N), |n| {
        let c = tri!(enumerate_census(n));
        fail_if(
            c.involution_count() != involution_number(n) || c.fixed_point_poly() != involution_poly(n),
            || format!("enumeration disagrees with I({n}) or I({n}; t)"),
        )
    })
}

fn partial_sums(max: u64) -> Outcome {
    let mut running = ExactInt::zero();
    sweep(0..=max, |n| {
        running += involution_number(n);
        let a = partial_sum(n);
        fail_if(a != partial_sum_by_binomial(n) || a != running, || {
            format!("a({n}): recurrence, binomial form and running sum disagree")
        })
    })
}

fn cauchy(max: u64) -> Outcome {
    sweep(1..=2 * max + 1, |n| {
        let got = cauchy_alternating_sum(n);
        let want = cauchy_alternating_expected(n);
        fail_if(got != want, || format!("alternating sum at n = {n} is {got}, expected {want}"))
    })
    .and_then_sweep(1..=max, |m| {
        fail_if(!cauchy_even_identity_check(m), || format!("even-index identity fails at m = {m}"))
    })
}

fn f_sum_alpha_free(max: u64) -> Outcome {
    let cases = (1..=max).flat_map(|k| (-5..=9i64).map(move |a| (k, a)));
    sweep(cases, |(k, alpha)| {
        fail_if(f_sum(alpha, 0, k) != involution_number(4 * k - 1), || {
            format!("F({alpha}, 0, {k}) != I({})", 4 * k - 1)
        })
    })
}

fn f_sum_linear(max: u64) -> Outcome {
    let cases = (1..=max).flat_map(|k| (1..=9i64).step_by(2).map(move |a| (k, a)));
    sweep(cases, |(k, alpha)| {
        let tail = if k >= 1 && 4 * k >= 3 {
            ExactInt::from(2 * (4 * k - 1) * (2 * k - 1)) * involution_number(4 * k - 3)
        } else {
            ExactInt::zero()
        };
        let rhs = ExactInt::from(alpha) * involution_number(4 * k - 1) + tail;
        fail_if(f_sum(alpha, 1, k) != rhs, || format!("F({alpha}, 1, {k}) != {rhs}"))
    })
}

fn b_k_suite(max: u64) -> Outcome {
    sweep(1..=max, |k| {
        let b = b_k(k);
        if b * ExactInt::from(4 * k) != ExactRat::from_integer(partial_sum(4 * k - 1)) {
            return Some(format!("4k b(k) != a(4k-1) at k = {k}"));
        }
        let v = tri!(nu_rat(&b_k(k), 2));
        fail_if(k <= 20 && v != k as i64, || format!("nu_2(b({k})) = {v}"))
    })
}

fn f_sum_valuation(max: u64) -> Outcome {
    let cases: Vec<(u64, u32, i64)> = (1..=max)
        .flat_map(|k| (1..=6u32).flat_map(move |b| [1i64, 3, 5, 7, 9].map(|a| (k, b, a))))
        .collect();
    par_sweep(cases, |&(k, beta, alpha)| {
        let v = tri!(nu_int(&f_sum(alpha, beta, k), 2));
        let want = if beta % 2 == 0 { k + 1 } else { k };
        fail_if(v != want, || format!("nu_2(F({alpha}, {beta}, {k})) = {v}, expected {want}"))
    })
}

fn nu2_involution_suite(max: u64) -> Outcome {
    par_sweep((0..=max).collect(), |&n| {
        let exact = tri!(nu_int(&involution_number(n), 2));
        let (a, b) = (nu2_involution(n), nu2_involution_floor_form(n));
        fail_if(a != exact || b != exact, || {
            format!("n = {n}: formula {a}, floor form {b}, exact {exact}")
        })
    })
}

fn nu2_partial_sum_suite(max: u64) -> Outcome {
    par_sweep((1..=max).collect(), |&n| {
        let exact = tri!(nu_int(&partial_sum(n), 2));
        let f = nu2_partial_sum(n);
        fail_if(f != exact, || format!("n = {n}: formula {f}, exact {exact}"))
    })
}

fn efficient_primes_suite(max: u64) -> Outcome {
    let bound = max.min(541);
    let table: Vec<u64> = INEFFICIENT_PRIMES_TO_541
        .iter()
        .copied()
        .filter(|&p| p <= bound)
        .collect();
    let got = inefficient_primes_upto(bound);
    if got != table {
        return (1, Some(format!("scan gives {got:?}")));
    }
    let mut all: Vec<u64> = efficient_primes_upto(bound);
    all.extend(&got);
    all.sort_unstable();
    let odd_primes: Vec<u64> = crate::exactnum::primes_upto(bound)
        .into_iter()
        .filter(|&p| p > 2)
        .collect();
    (
        2,
        fail_if(all != odd_primes, || "efficient and inefficient primes do not partition the odd primes".into()),
    )
}

fn efficient_nonvanishing(max: u64) -> Outcome {
    let primes = [3u64, 7, 11, 17, 37, 41, 47, 71, 101];
    sweep(primes, |p| {
        if !tri!(is_efficient(p)) {
            return Some(format!("{p} is not efficient"));
        }
        let residues = crate::valuation::involution_residues(p, max as usize + 1);
        residues
            .iter()
            .position(|&r| r == 0)
            .map(|n| format!("p = {p} divides I({n})"))
    })
}

fn periodicity(max: u64) -> Outcome {
    let cases = SMALL_PRIMES.iter().flat_map(|&p| (1..=3u32).map(move |r| (p, r)));
    sweep(cases, |(p, r)| {
        tri!(periodicity_counterexample(p, r, max))
            .map(|n| format!("I({n} + {p}^{r}) != I({n}) mod {p}^{r}"))
    })
}

fn tree_certify(max: u64) -> Outcome {
    // depth and sample count per prime keep the certified members under the exact-value budget
    let cases = [(5u64, max.clamp(1, 6) as u32, 2), (13, max.clamp(1, 3) as u32, 3)];
    sweep(cases, |(p, level, certify)| match build_valuation_tree(p, level, certify) {
        Err(e) => Some(format!("p = {p}: {e}")),
        Ok(tree) => tree
            .levels
            .iter()
            .flatten()
            .find(|v| v.is_terminal() && v.certified == 0)
            .map(|v| format!("p = {p}: class {} mod {} not certified", v.residue, v.modulus)),
    })
}

fn tree_five(max: u64) -> Outcome {
    let level = max.clamp(2, 8) as u32;
    let tree = match build_valuation_tree(5, level, 3) {
        Ok(t) => t,
        Err(e) => return (0, Some(e.to_string())),
    };
    let expect = [(1u32, 4u64, 0u64), (2, 24, 1)];
    sweep(expect, |(lvl, open, val)| {
        let vs = tree.level(lvl);
        let terminal_ok = vs
            .iter()
            .filter(|v| v.is_terminal())
            .all(|v| v.status == VertexStatus::Terminal { valuation: val });
        let open_classes: Vec<u64> = vs.iter().filter(|v| !v.is_terminal()).map(|v| v.residue).collect();
        let terminal_count = vs.iter().filter(|v| v.is_terminal()).count();
        fail_if(!terminal_ok || terminal_count != 4 || open_classes != [open], || {
            format!("level {lvl}: {terminal_count} terminal, open classes {open_classes:?}")
        })
    })
}

fn multinomial_congruences(max: u64) -> Outcome {
    let cases = [3u64, 5, 7]
        .into_iter()
        .flat_map(move |p| (1..=max).flat_map(move |n| partitions(n).map(move |l| (p, n, l))));
    sweep(cases, |(p, n, lambda)| {
        fail_if(!tri!(multinomial_congruence_check(p, n, &lambda)), || {
            format!("p = {p}, n = {n}, lambda = {lambda}")
        })
    })
}

fn cycle_index_sums(max: u64) -> Outcome {
    let cases: Vec<(u64, usize)> = (0..=max)
        .flat_map(|n| (1..=n.max(1) as usize).map(move |l| (n, l)))
        .collect();
    par_sweep(cases, |&(n, l)| {
        let g = cycle_index_poly(n, l);
        let bad_sum = g.sum_of_coefficients() != restricted_count(n, l);
        let bad_poly = l == 2 && g.fixed_point_polynomial() != involution_poly(n);
        fail_if(bad_sum || bad_poly, || format!("n = {n}, l = {l}"))
    })
}

fn homogeneity(max: u64) -> Outcome {
    let cases: Vec<(u64, usize)> = (0..=max)
        .flat_map(|n| (1..=n.max(1) as usize).map(move |l| (n, l)))
        .collect();
    par_sweep(cases, |&(n, l)| {
        fail_if(!cycle_index_poly(n, l).is_homogeneous_of_weight(n), || {
            format!("g({n}, {l}) has a monomial of the wrong weight")
        })
    })
}

fn toeplitz_suite(max: u64) -> Outcome {
    let cases: Vec<(u64, usize)> = (0..=max.min(crate::cyclecount::TOEPLITZ_MAX_N))
        .flat_map(|n| (1..=n.max(1) as usize).map(move |l| (n, l)))
        .collect();
    par_sweep(cases, |&(n, l)| match toeplitz_determinant(n, l) {
        Err(e) => Some(format!("n = {n}, l = {l}: {e}")),
        Ok(d) => fail_if(d != cycle_index_poly(n, l), || {
            format!("determinant differs from the cycle index at n = {n}, l = {l}")
        }),
    })
}

fn cycle_index_oracle(max: u64) -> Outcome {
    sweep(0..=max.min(crate::oracle::ENUMERATION_MAX_N), |n| {
        let c = tri!(enumerate_census(n));
        let l = n.max(1) as usize;
        fail_if(
            c.cycle_index(l) != cycle_index_poly(n, l) || restricted_count(n, l) != factorial(n),
            || format!("full cycle index differs from enumeration at n = {n}"),
        )
    })
}

fn restricted_involutions(max: u64) -> Outcome {
    let d = restricted_counts(max, 2);
    sweep(0..=max, |n| {
        fail_if(d[n as usize] != involution_number(n), || format!("d({n}, 2) != I({n})"))
    })
}

fn restricted_egf(max: u64) -> Outcome {
    sweep(2..=5usize, |l| {
        fail_if(!restricted_egf_check(l, max as usize), || {
            format!("EGF of d(n, {l}) disagrees through order {max}")
        })
    })
}

fn series_roundtrip(max: u64) -> Outcome {
    let order = max as usize;
    let samples = [
        involution_egf(order),
        TruncatedEGF::exp_x(order),
        TruncatedEGF::from_ints(&[3, -1, 4, 1, -5, 9], order),
    ];
    sweep(samples.iter().enumerate(), |(i, s)| {
        fail_if(&s.integrate().derive() != s, || format!("sample {i}"))
    })
}

fn series_exp_additive(max: u64) -> Outcome {
    let order = max as usize;
    let pieces = [
        TruncatedEGF::cycle_sum(1, order),
        TruncatedEGF::cycle_sum(2, order).sub(&TruncatedEGF::cycle_sum(1, order)),
        TruncatedEGF::from_ints(&[0, 2, 0, -1], order),
        TruncatedEGF::from_ints(&[0, 0, 0, 0, 1], order),
    ];
    let pairs = (0..pieces.len()).flat_map(|i| (0..pieces.len()).map(move |j| (i, j)));
    sweep(pairs, |(i, j)| {
        let lhs = tri!(pieces[i].add(&pieces[j]).exp());
        let rhs = tri!(pieces[i].exp()).mul(&tri!(pieces[j].exp()));
        fail_if(lhs != rhs, || format!("exp(a + b) != exp(a) exp(b) for pieces {i}, {j}"))
    })
}

fn umbral(max: u64) -> Outcome {
    sweep(0..=max as usize, |m| {
        fail_if(!umbral_check(m, crate::series::DEFAULT_ORDER), || format!("m = {m}"))
    })
}

fn partial_sum_egf(max: u64) -> Outcome {
    let order = max.max(3) as usize;
    let samples = [
        TruncatedEGF::one(order),
        TruncatedEGF::exp_x(order),
        involution_egf(order),
    ];
    sweep(3..=order, |n| fail_if(!partial_sum_egf_check(n), || format!("order {n}"))).and_then_sweep(
        samples.iter().enumerate(),
        |(i, s)| fail_if(!lemma_partial_sums_check(s, order), || format!("transform sample {i}")),
    )
}

fn saddle_residual(max: u64) -> Outcome {
    let mut ns: Vec<u64> = (1..=20).collect();
    let mut n = 32u64;
    while n <= max {
        ns.push(n);
        n = n * 3 / 2;
    }
    ns.push(max.max(1));
    let cases: Vec<(u64, usize)> = ns.iter().flat_map(|&n| (1..=6).map(move |l| (n, l))).collect();
    par_sweep(cases, |&(n, l)| match solve_saddle(n, l, 1e-10) {
        Err(e) => Some(e.to_string()),
        Ok(s) => {
            let r = s.r();
            fail_if(!(s.residual < 1e-10 && r > 0.0 && r <= n as f64), || {
                format!("n = {n}, l = {l}: r = {r}, residual {:e}", s.residual)
            })
        }
    })
}

fn beta_one(max: u64) -> Outcome {
    if beta_series_extraction(2, 1, 10).ok() != Some(ExactRat::one()) {
        return (1, Some("extracted beta_1 for l = 2 is not 1".into()));
    }
    let ns: Vec<u64> = (200..=max.max(200)).step_by(100).collect();
    par_sweep(ns, |&n| {
        let s = tri!(estimate_saddle(n, 2));
        let c = tri!(estimate_closed_form(n, 2, BetaSource::Extracted));
        let rel = (c.ln_stirling - s.ln_estimate).exp_m1().abs();
        fail_if(rel >= 0.02, || format!("n = {n}: closed form off by {rel:.4}"))
    })
}

fn log_error_trend(max: u64) -> Outcome {
    let hi = max.max(200);
    sweep([2usize, 3], |l| {
        let small = tri!(compare_saddle(100, l)).log_error.abs();
        let large = tri!(compare_saddle(hi, l)).log_error.abs();
        fail_if(large >= small, || format!("l = {l}: |log error| {large:e} at n = {hi} vs {small:e} at n = 100"))
    })
}

fn beta_fit(max: u64) -> Outcome {
    sweep(2..=max.max(2) as usize, |l| {
        let fit = tri!(fit_beta_default(l));
        let b0 = tri!(beta_closed_form(l, 0)).to_f64().unwrap_or(f64::NAN);
        let bl = tri!(beta_closed_form(l, l)).to_f64().unwrap_or(f64::NAN);
        let (e0, el) = ((fit.beta(0) - b0).abs(), (fit.beta(l) - bl).abs());
        fail_if(!(e0 < 1e-3 && el < 1e-3), || {
            format!("l = {l}: fitted beta_0 off by {e0:e}, beta_l off by {el:e}")
        })
    })
}

fn census_agreement(max: u64) -> Outcome {
    sweep(0..=max.min(crate::oracle::ENUMERATION_MAX_N), |n| {
        fail_if(tri!(enumerate_census(n)) != tri!(partition_census(n)), || {
            format!("censuses differ at n = {n}")
        })
    })
}

fn census_aggregations(max: u64) -> Outcome {
    par_sweep((0..=max.min(crate::oracle::PARTITION_CENSUS_MAX_N)).collect(), |&n| {
        let c = tri!(census(n));
        if c.involution_count() != involution_number(n) || c.fixed_point_poly() != involution_poly(n) {
            return Some(format!("involution aggregates differ at n = {n}"));
        }
        (1..=n.max(1) as usize).find_map(|l| {
            fail_if(
                c.restricted_count(l) != restricted_count(n, l) || c.cycle_index(l) != cycle_index_poly(n, l),
                || format!("restricted aggregates differ at n = {n}, l = {l}"),
            )
        })
    })
}

trait AndThen {
    fn and_then_sweep<T>(
        self,
        items: impl IntoIterator<Item = T>,
        check: impl FnMut(T) -> Option<String>,
    ) -> Outcome;
}

impl AndThen for Outcome {
    fn and_then_sweep<T>(
        self,
        items: impl IntoIterator<Item = T>,
        check: impl FnMut(T) -> Option<String>,
    ) -> Outcome {
        if self.1.is_some() {
            return self;
        }
        let (more, fail) = sweep(items, check);
        (self.0 + more, fail)
    }
}

macro_rules! suite {
    ($name:literal, $max:expr, $f:ident, $desc:literal) => {
        Suite {
            name: $name,
            description: $desc,
            default_max: $max,
            run: $f,
        }
    };
}

static SUITES: &[Suite] = &[
    suite!("legendre", 300, legendre, "nu_p(n!) by Legendre, digit sums and direct division, p in {2,3,5,7}"),
    suite!("pascal", 60, pascal, "Pascal's rule for C(n,k) including edges"),
    suite!("rational-inverse", 30, rational_inverse, "(a/b)(b/a) = 1 and normalization is idempotent"),
    suite!("valuation-additive", 120, valuation_additive, "nu_p(xy) = nu_p(x) + nu_p(y)"),
    suite!("involution-sum", 500, involution_sum, "I(n) recurrence equals the finite binomial sum"),
    suite!("involution-bisplit", 200, involution_bisplit, "I(n+m) from the split sum, every split of every n + m <= max"),
    suite!("double-factorial-odd", 200, double_factorial_parity, "(2j-1)!! is odd"),
    suite!("involution-poly", 200, involution_poly_values, "I(n; 1) = I(n) and I(n; 0) counts perfect matchings"),
    suite!("hermite", 100, hermite, "I(n; t) = i^n He_n(-i t)"),
    suite!("involution-oracle", 9, involution_oracle, "I(n) and I(n; t) match exhaustive enumeration"),
    suite!("partial-sums", 500, partial_sums, "a(n) by recurrence, binomial form and running sum"),
    suite!("cauchy", 40, cauchy, "alternating binomial sums of a(n) and the even-index identity"),
    suite!("f-sum-alpha", 25, f_sum_alpha_free, "F(alpha, 0, k) = I(4k-1) for every alpha"),
    suite!("f-sum-linear", 25, f_sum_linear, "F(alpha, 1, k) = alpha I(4k-1) + 2(4k-1)(2k-1) I(4k-3)"),
    suite!("b-k", 25, b_k_suite, "4k b(k) = a(4k-1), and nu_2(b(k)) = k for k <= 20"),
    suite!("f-sum-valuation", 12, f_sum_valuation, "nu_2(F(alpha, beta, k)) = k + [beta even], alpha odd, beta <= 6"),
    suite!("nu2-involution", 2000, nu2_involution_suite, "closed forms for nu_2(I(n))"),
    suite!("nu2-partial-sum", 2000, nu2_partial_sum_suite, "closed form for nu_2(a(n))"),
    suite!("efficient-primes", 541, efficient_primes_suite, "inefficient primes up to max match the reference table"),
    suite!("efficient-nonvanishing", 3000, efficient_nonvanishing, "efficient primes never divide I(n), n <= max"),
    suite!("periodicity", 500, periodicity, "I(n + p^r) = I(n) mod p^r for p in {2,3,5,7}, r <= 3"),
    suite!("tree-certify", 4, tree_certify, "terminal tree vertices for p = 5, 13 hold on explicit members"),
    suite!("tree-five", 2, tree_five, "first two levels of the p = 5 valuation tree"),
    suite!("multinomial-congruence", 6, multinomial_congruences, "C(pn; p lambda) = C(n; lambda) mod p^2 or p^3"),
    suite!("cycle-index-sums", 30, cycle_index_sums, "cycle index sums to d(n, l); l = 2 specializes to I(n; t)"),
    suite!("homogeneity", 30, homogeneity, "every monomial of the cycle index has weight n"),
    suite!("toeplitz", 8, toeplitz_suite, "determinant representation equals the cycle index"),
    suite!("cycle-index-oracle", 8, cycle_index_oracle, "full cycle index matches enumeration; d(n, n) = n!"),
    suite!("restricted-involutions", 200, restricted_involutions, "d(n, 2) = I(n)"),
    suite!("restricted-egf", 25, restricted_egf, "exp(x + ... + x^l/l) generates d(n, l), l in 2..=5"),
    suite!("series-roundtrip", 30, series_roundtrip, "derive(integrate(s)) = s"),
    suite!("series-exp-additive", 20, series_exp_additive, "exp(a + b) = exp(a) exp(b)"),
    suite!("umbral", 6, umbral, "derivatives of exp(x + x^2/2) through the umbral factor"),
    suite!("partial-sum-egf", 30, partial_sum_egf, "integral forms of the partial-sum EGF"),
    suite!("saddle-residual", 1_000_000, saddle_residual, "saddle equation residual below 1e-10 with root in (0, n]"),
    suite!("beta-one", 1000, beta_one, "extracted beta_1 = 1 at l = 2; closed form within 2% of the saddle estimate"),
    suite!("log-error-trend", 1000, log_error_trend, "|log error| of the saddle estimate shrinks from n = 100 to max"),
    suite!("beta-fit", 5, beta_fit, "least-squares fit recovers beta_0 and beta_l within 1e-3"),
    suite!("census-agreement", 9, census_agreement, "exhaustive and formula censuses agree"),
    suite!("census-aggregations", 20, census_aggregations, "census aggregates reproduce I, I(n; t), d(n, l) and the cycle index"),
];

/// Every suite, in a fixed order.
pub fn suites() -> &'static [Suite] {
    SUITES
}

pub fn find_suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

/// Runs one suite by name.
pub fn run_suite(name: &str, max: Option<u64>) -> Option<Verdict> {
    find_suite(name).map(|s| s.run(max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = suites().iter().map(|s| s.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), suites().len());
    }

    #[test]
    fn small_runs_pass() {
        for (name, max) in [
            ("legendre", 40),
            ("pascal", 12),
            ("involution-bisplit", 30),
            ("nu2-involution", 200),
            ("toeplitz", 5),
            ("cauchy", 6),
            ("tree-five", 2),
        ] {
            let v = run_suite(name, Some(max)).unwrap();
            assert!(v.passed(), "{v}");
            assert!(v.checked > 0);
        }
    }

    #[test]
    fn periodicity_reports_first_failure() {
        let v = run_suite("periodicity", Some(20)).unwrap();
        assert_eq!(
            v.counterexample.as_deref(),
            Some("I(0 + 2^1) != I(0) mod 2^1")
        );
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("no-such-suite", None).is_none());
    }
}
