use proptest::prelude::*;
use superdyn::expr::{format_expr, parse_expr, ExprError, RatExpr, Rational, Var};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// A polynomial in `l1, l2, l3, g` with small integer coefficients.
fn poly() -> impl Strategy<Value = RatExpr> {
    prop::collection::vec((-5i64..=5, 0u32..=2, 0u32..=1, 0u32..=1, 0u32..=1), 1..4).prop_map(|terms| {
        terms.into_iter().fold(RatExpr::zero(), |acc, (c, a, b, d, e)| {
            let mono = [(1, a), (2, b), (3, d)].into_iter().fold(RatExpr::int(c), |m, (k, p)| &m * &RatExpr::l(k).pow(p as i32).unwrap());
            &acc + &(&mono * &RatExpr::g().pow(e as i32).unwrap())
        })
    })
}

fn nonzero_poly() -> impl Strategy<Value = RatExpr> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratexpr() -> impl Strategy<Value = RatExpr> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| n.checked_div(&d).unwrap())
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-50i64..=50, 1i64..=9).prop_map(|(n, d)| Rational::new(n.into(), d.into())), 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn equality_matches_cross_multiplication(a in ratexpr(), b in ratexpr()) {
        let cross = a.num().clone() * b.den().clone() == b.num().clone() * a.den().clone();
        prop_assert_eq!(a == b, cross);
    }

    #[test]
    fn common_factors_cancel(n in poly(), d in nonzero_poly(), h in nonzero_poly()) {
        let reduced = n.checked_div(&d).unwrap();
        let padded = (&n * &h).checked_div(&(&d * &h)).unwrap();
        prop_assert_eq!(reduced, padded);
    }

    #[test]
    fn zero_shift_is_identity(a in ratexpr(), k in 1usize..=3) {
        prop_assert_eq!(a.shift_var(k, &RatExpr::zero()), a);
    }

    #[test]
    fn shifts_commute_on_distinct_coordinates(a in ratexpr(), s in -4i64..=4, t in -4i64..=4) {
        let (s, t) = (RatExpr::int(s), RatExpr::g().scale(&q(t)));
        prop_assert_eq!(a.shift_var(1, &s).shift_var(2, &t), a.shift_var(2, &t).shift_var(1, &s));
    }

    #[test]
    fn shifts_compose_additively(a in ratexpr(), s in -4i64..=4, t in -4i64..=4) {
        let (s, t) = (RatExpr::int(s), RatExpr::int(t));
        prop_assert_eq!(a.shift_var(3, &s).shift_var(3, &t), a.shift_var(3, &(&s + &t)));
    }

    #[test]
    fn product_rule(a in ratexpr(), b in ratexpr(), k in 1usize..=3) {
        let lhs = (&a * &b).partial_deriv(k);
        let rhs = &(&a.partial_deriv(k) * &b) + &(&a * &b.partial_deriv(k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_is_the_difference_quotient_limit(a in ratexpr(), k in 1usize..=3) {
        // (a(l_k + h) − a) / h at h = 0, with a fresh coordinate l4 as h.
        let h = RatExpr::l(4);
        let quotient = (&a.substitute(Var::l(k), &(&RatExpr::l(k) + &h)) - &a).checked_div(&h).unwrap();
        let limit = quotient.substitute(Var::l(4), &RatExpr::zero());
        prop_assert_eq!(limit, a.partial_deriv(k));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratexpr(), b in ratexpr(), p in point()) {
        if let (Ok(x), Ok(y)) = (a.eval_at(&p), b.eval_at(&p)) {
            prop_assert_eq!((&a + &b).eval_at(&p).unwrap(), &x + &y);
            prop_assert_eq!((&a - &b).eval_at(&p).unwrap(), &x - &y);
            prop_assert_eq!((&a * &b).eval_at(&p).unwrap(), &x * &y);
            if y != q(0) {
                match a.checked_div(&b).unwrap().eval_at(&p) {
                    Ok(v) => prop_assert_eq!(v, &x / &y),
                    Err(e) => prop_assert_eq!(e, ExprError::PoleAtPoint),
                }
            }
        }
    }

    #[test]
    fn taylor_remainder_has_high_valuation(a in ratexpr(), order in 0usize..=3) {
        if let Ok(coeffs) = a.taylor_gamma(order) {
            prop_assert_eq!(coeffs.len(), order + 1);
            let partial = coeffs.iter().enumerate().fold(RatExpr::zero(), |acc, (k, c)| {
                &acc + &(c * &RatExpr::g().pow(k as i32).unwrap())
            });
            let remainder = &a - &partial;
            if let Some(v) = remainder.gamma_valuation() {
                prop_assert!(v as usize > order);
            }
            for c in &coeffs {
                prop_assert!(!c.contains_var(Var::G));
            }
        }
    }

    #[test]
    fn format_then_parse_round_trips(a in ratexpr()) {
        let text = format_expr(&a);
        prop_assert_eq!(parse_expr(&text).unwrap(), a, "{}", text);
    }
}
