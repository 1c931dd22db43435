use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use involutions::asymptotic::solve_saddle;
use involutions::cyclecount::{cycle_index_poly, restricted_count};
use involutions::exactnum::{
    binomial, digit_sum, factorial, nu_factorial, nu_int, partitions, Partition,
};
use involutions::involution::{
    double_factorial_odd, involution_number, involution_number_bisplit, involution_poly,
};
use involutions::partialsum::{f_sum, partial_sum};
use involutions::series::{series_exp, TruncatedEGF};
use involutions::valuation::{nu2_involution, nu2_partial_sum};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
}

fn nonzero_int() -> impl Strategy<Value = BigInt> {
    prop_oneof![1i64..1_000_000, -1_000_000i64..-1].prop_map(BigInt::from)
}

/// A series with zero constant term and small integer coefficients.
fn series(order: usize) -> impl Strategy<Value = TruncatedEGF> {
    prop::collection::vec(-5i64..=5, order).prop_map(move |mut c| {
        c.insert(0, 0);
        TruncatedEGF::from_ints(&c, order)
    })
}

fn saddle_poly_value(r: f64, l: usize) -> f64 {
    (1..=l as i32).map(|j| r.powi(j)).sum()
}

proptest! {
    #[test]
    fn legendre_matches_digit_sum(n in 0u64..=300, p in prime()) {
        let v = nu_factorial(n, p).unwrap();
        prop_assert_eq!(v, (n - digit_sum(n, p).unwrap()) / (p - 1));
        prop_assert_eq!(v, nu_int(&factorial(n), p).unwrap());
    }

    #[test]
    fn pascal(n in 1u64..=80, k in -2i64..=82) {
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }

    #[test]
    fn rational_inverse(a in nonzero_int(), b in nonzero_int()) {
        let x = BigRational::new(a.clone(), b.clone());
        prop_assert!((&x * BigRational::new(b, a)).is_one());
        prop_assert_eq!(BigRational::new(x.numer().clone(), x.denom().clone()), x);
    }

    #[test]
    fn valuation_is_additive(x in nonzero_int(), y in nonzero_int(), p in prime()) {
        let lhs = nu_int(&(&x * &y), p).unwrap();
        prop_assert_eq!(lhs, nu_int(&x, p).unwrap() + nu_int(&y, p).unwrap());
    }

    #[test]
    fn bisplit_any_split(n in 0u64..=120, m in 0u64..=80) {
        prop_assert_eq!(involution_number_bisplit(n, m), involution_number(n + m));
    }

    #[test]
    fn fixed_point_polynomial_values(n in 0u64..=200) {
        let p = involution_poly(n);
        prop_assert_eq!(p.eval(&BigInt::one()), involution_number(n));
        let at_zero = if n % 2 == 0 { double_factorial_odd(n / 2) } else { BigInt::zero() };
        prop_assert_eq!(p.eval(&BigInt::zero()), at_zero);
        prop_assert_eq!(nu_int(&double_factorial_odd(n), 2).unwrap(), 0);
    }

    #[test]
    fn two_adic_formulas(n in 1u64..=2000) {
        prop_assert_eq!(nu2_involution(n), nu_int(&involution_number(n), 2).unwrap());
        prop_assert_eq!(nu2_partial_sum(n), nu_int(&partial_sum(n), 2).unwrap());
    }

    #[test]
    fn f_sum_free_of_alpha_at_beta_zero(alpha in -20i64..=20, k in 1u64..=25) {
        prop_assert_eq!(f_sum(alpha, 0, k), involution_number(4 * k - 1));
    }

    #[test]
    fn f_sum_two_adic(alpha in prop::sample::select(vec![1i64, 3, 5, 7, 9]), beta in 1u32..=6, k in 1u64..=12) {
        let want = if beta % 2 == 0 { k + 1 } else { k };
        prop_assert_eq!(nu_int(&f_sum(alpha, beta, k), 2).unwrap(), want);
    }

    #[test]
    fn cycle_index_sums_and_weights(n in 0u64..=22, l in 1usize..=8) {
        let g = cycle_index_poly(n, l);
        prop_assert_eq!(g.sum_of_coefficients(), restricted_count(n, l));
        prop_assert!(g.is_homogeneous_of_weight(n));
        if l == 2 {
            prop_assert_eq!(g.fixed_point_polynomial(), involution_poly(n));
        }
    }

    #[test]
    fn class_sizes_sum_to_factorial(n in 0u64..=18) {
        let total: BigInt = partitions(n).map(|t: Partition| t.class_size()).sum();
        prop_assert_eq!(total, factorial(n));
    }

    #[test]
    fn integrate_then_derive(s in series(12)) {
        prop_assert_eq!(s.integrate().derive(), s);
    }

    #[test]
    fn exp_turns_sums_into_products(a in series(10), b in series(10)) {
        let lhs = series_exp(&a.add(&b)).unwrap();
        let rhs = series_exp(&a).unwrap().mul(&series_exp(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn saddle_root_is_bracketed(n in 1u64..=1_000_000, l in 1usize..=6) {
        let s = solve_saddle(n, l, 1e-12).unwrap();
        prop_assert!(s.residual < 1e-10);
        let r = s.r();
        prop_assert!(r > 0.0 && r <= n as f64);
        // the polynomial is increasing, so it changes sign exactly once around r
        prop_assert!(saddle_poly_value(r * (1.0 - 1e-9), l) < n as f64);
        prop_assert!(saddle_poly_value(r * (1.0 + 1e-9), l) > n as f64);
    }
}
