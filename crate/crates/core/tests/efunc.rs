use std::time::Instant;

use epade_core::arith::{binomial, rat, Rational};
use epade_core::efunc::{self, algebraic_relation_check, eval_ball, HypergeometricSpec};
use epade_core::ESeries;
use num_traits::Zero;
use proptest::prelude::*;

fn apery_oracle(n: u64) -> Rational {
    let s = (0..=n).fold(num_bigint::BigInt::zero(), |acc, k| {
        let a = binomial(n, k);
        let b = binomial(n + k, k);
        acc + &a * &a * &b * &b
    });
    Rational::from_integer(s)
}

#[test]
fn apery_numbers_match_double_sum() {
    let a = efunc::apery().coefficients(12).unwrap();
    assert_eq!(&a[..4], &[rat(1, 1), rat(5, 1), rat(73, 1), rat(1445, 1)]);
    for (n, x) in a.iter().enumerate() {
        assert_eq!(*x, apery_oracle(n as u64), "n = {n}");
    }
}

#[test]
fn apery_evaluates_with_hint() {
    let b = eval_ball(&efunc::apery(), &rat(1, 2), 96).unwrap();
    // direct summation oracle in f64
    let mut f = 0.0;
    let mut fact = 1.0;
    for n in 0..60u64 {
        if n > 0 {
            fact *= n as f64;
        }
        let an: f64 = apery_oracle(n).to_string().parse().unwrap();
        f += an * 0.5f64.powi(n as i32) / fact;
    }
    assert!((b.to_f64() - f).abs() < 1e-9 * f);
}

#[test]
fn exotic_values_are_enclosed() {
    for (series, x, value) in efunc::exotic_1f1() {
        let t = Instant::now();
        let b = eval_ball(&series, &x, 256).unwrap();
        assert!(b.contains_rational(&value), "{b}");
        assert!(b.rad_log2() < -100.0);
        assert!(t.elapsed().as_secs_f64() < 1.0);
    }
}

#[test]
fn g_satisfies_ode_and_relation() {
    let g = &efunc::g_1f2().series[0];
    let r = efunc::g_operator().residual(g, 60).unwrap();
    assert!(r.iter().all(Zero::is_zero));
    assert!(algebraic_relation_check(g, 60).unwrap());
    assert!(algebraic_relation_check(g, 0).unwrap());
}

#[test]
fn bundled_systems_have_zero_residual() {
    for b in [
        efunc::exp(),
        efunc::j0(),
        efunc::g_1f2(),
        efunc::hyp1f1_system(rat(5, 1), rat(7, 3)).unwrap(),
    ] {
        for r in b.system.residual(&b.series, 40).unwrap() {
            assert!(r.is_zero(), "{r}");
        }
    }
}

#[test]
fn g_operator_reduction_outcome() {
    // exact search over the window; either outcome is legitimate, but a
    // returned reduction must integrate back and give a constant on g
    let op = efunc::g_operator();
    if let Some(red) = op.inhomogeneous_reduction((-3, 3)) {
        let g = &efunc::g_1f2().series[0];
        assert!(red.constant_for(g, 30).unwrap().is_some());
    }
}

#[test]
fn j0_values() {
    let b = efunc::j0();
    let v = eval_ball(&b.series[0], &rat(1, 1), 128).unwrap();
    let d = eval_ball(&b.series[1], &rat(1, 1), 128).unwrap();
    assert!((v.to_f64() - 0.765_197_686_557_966_6).abs() < 1e-15);
    assert!((d.to_f64() + 0.440_050_585_744_933_5).abs() < 1e-15);
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..8).prop_map(|(n, d)| rat(n, d))
}

fn lower_param() -> impl Strategy<Value = Rational> {
    small_rat().prop_filter("not a nonpositive integer", |q| {
        !(q.is_integer() && *q <= rat(0, 1))
    })
}

proptest! {
    #[test]
    fn product_formula_matches_recurrence(
        upper in proptest::collection::vec(small_rat(), 0..2),
        extra in proptest::collection::vec(lower_param(), 0..2),
        c in small_rat(),
        k in 1u32..3,
    ) {
        let mut lower = extra.clone();
        while lower.len() < upper.len() {
            lower.push(rat(3, 2));
        }
        let spec = HypergeometricSpec::new(upper, lower, c, k).unwrap();
        let s = ESeries::hypergeometric(spec.clone());
        let a = s.coefficients(14).unwrap();
        for (n, an) in a.iter().enumerate() {
            prop_assert_eq!(an, &spec.coefficient(n));
        }
    }

    #[test]
    fn polynomial_eval_contains_horner(
        coeffs in proptest::collection::vec(small_rat(), 1..8),
        x in small_rat(),
    ) {
        let mut exact = Rational::zero();
        let mut fact = Rational::from_integer(1.into());
        let mut pw = Rational::from_integer(1.into());
        for (n, c) in coeffs.iter().enumerate() {
            if n > 0 {
                fact *= Rational::from_integer(n.into());
                pw *= &x;
            }
            exact += c * &pw / &fact;
        }
        let b = eval_ball(&ESeries::closed(coeffs), &x, 80).unwrap();
        prop_assert!(b.contains_rational(&exact));
    }

    #[test]
    fn adjoint_is_involution(
        c in proptest::collection::vec(proptest::collection::vec(-4i64..5, 1..4), 2..4),
        shifts in proptest::collection::vec(-2i64..2, 4),
    ) {
        use epade_core::arith::LaurentPoly;
        let mut coeffs: Vec<LaurentPoly> = c.iter().zip(&shifts)
            .map(|(v, &s)| LaurentPoly::new(s, v.iter().map(|&x| rat(x, 1)).collect()))
            .collect();
        if coeffs.last().unwrap().is_zero() {
            *coeffs.last_mut().unwrap() = LaurentPoly::one();
        }
        let op = epade_core::DiffOperator::from_laurent(&coeffs).unwrap();
        prop_assert_eq!(op.adjoint().adjoint(), op);
    }
}
