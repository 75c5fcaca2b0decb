use proptest::prelude::*;
use superdyn::dynamical::{
    delta_i, gauge_quantum, r_canonical, r_prime_rat, r_rat, r_rat_gamma, r_x, r_x_with_step, IntervalPartition, MultForm, QuantumGauge,
    QuasiConstant, SignTable, TwoForm,
};
use superdyn::expr::{RatExpr, Rational};
use superdyn::graded::GradedSpace;
use superdyn::verify::{check_zero_weight, hecke_check, HeckeMode, HeckeParams};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn partition(max_dim: usize) -> impl Strategy<Value = IntervalPartition> {
    prop::collection::vec(0u8..=1, 1..=max_dim).prop_flat_map(|p| {
        let s = GradedSpace::from_parities(&p).unwrap();
        let all = IntervalPartition::enumerate(&s);
        (0..all.len()).prop_map(move |k| all[k].clone())
    })
}

fn rationals(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-20i64..=20, 1i64..=5).prop_map(|(a, b)| Rational::new(a.into(), b.into())), n)
}

fn with_mu(max_dim: usize) -> impl Strategy<Value = (IntervalPartition, Vec<Rational>)> {
    partition(max_dim).prop_flat_map(|x| {
        let n = x.space().dim();
        (Just(x), rationals(n))
    })
}

/// A random nonzero function of `l1..l3` and `g`, affine in each.
fn factor() -> impl Strategy<Value = RatExpr> {
    (prop::collection::vec(-3i64..=3, 5), 1i64..=3).prop_map(|(c, k)| {
        let mut e = RatExpr::int(k);
        for (i, ci) in c.iter().enumerate().take(3) {
            e = &e + &(&RatExpr::int(*ci) * &RatExpr::l(i + 1));
        }
        e = &e + &(&RatExpr::int(c[3]) * &RatExpr::g());
        if e.is_zero() {
            RatExpr::int(c[4].max(1))
        } else {
            e
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn r_rat_is_the_canonical_form_at_zero(x in partition(4)) {
        let n = x.space().dim();
        prop_assert_eq!(r_canonical(&x, &TwoForm::zero(n), &vec![q(0); n]).unwrap(), r_rat(&x));
    }

    #[test]
    fn constructors_have_zero_weight((x, mu) in with_mu(4)) {
        let ops = [
            r_rat(&x),
            r_prime_rat(&x),
            r_rat_gamma(&x),
            r_x(&x, &QuasiConstant::from_rationals(&mu)).unwrap(),
            r_x_with_step(&x, &QuasiConstant::from_rationals(&mu), &RatExpr::g()).unwrap(),
        ];
        for op in &ops {
            let h = op.to_homop();
            prop_assert!(h.is_even());
            prop_assert!(check_zero_weight(&h).passes());
        }
    }

    #[test]
    fn sign_table_symmetry(p in prop::collection::vec(0u8..=1, 2..=6)) {
        let s = GradedSpace::from_parities(&p).unwrap();
        let a = SignTable::new(&s);
        for i in 1..=s.dim() {
            for j in 1..=s.dim() {
                if i != j {
                    prop_assert_eq!(a.a(j, i), s.eps(i) * s.eps(j) * a.a(i, j));
                }
            }
        }
    }

    #[test]
    fn d_gamma_squares_to_trivial(p in prop::collection::vec(0u8..=1, 3), comps in prop::collection::vec(factor(), 3)) {
        let s = GradedSpace::from_parities(&p).unwrap();
        let f = MultForm::new(&s, 1, &RatExpr::g(), comps.into_iter().enumerate().map(|(i, c)| (vec![i + 1], c))).unwrap();
        prop_assert!(f.d_gamma().d_gamma().is_trivial());
    }

    #[test]
    fn delta_is_multiplicative(a in factor(), b in factor(), i in 1usize..=3) {
        let s = GradedSpace::new(2, 1).unwrap();
        let g = RatExpr::g();
        let lhs = delta_i(&s, &(&a * &b), i, &g).unwrap();
        let rhs = &delta_i(&s, &a, i, &g).unwrap() * &delta_i(&s, &b, i, &g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn strong_hecke_implies_weak((x, mu) in with_mu(3), c in 1i64..=4) {
        let r = r_x(&x, &QuasiConstant::from_rationals(&mu)).unwrap();
        let params = HeckeParams::new(q(1), q(1)).unwrap();
        for op in [r.clone(), r.scale(&RatExpr::int(c))] {
            if hecke_check(&op, &params, HeckeMode::Strong).passes() {
                prop_assert!(hecke_check(&op, &params, HeckeMode::Weak).passes());
            }
        }
    }

    #[test]
    fn reciprocal_phi_gauge_gives_alpha_beta_relation((x, mu) in with_mu(3)) {
        let r = r_x(&x, &QuasiConstant::from_rationals(&mu)).unwrap();
        let s = x.space();
        let n = s.dim();
        let phi = superdyn::dynamical::phi_from_hecke(&r, &RatExpr::one(), &RatExpr::one()).unwrap();
        let recip = MultForm::new(
            s,
            2,
            &RatExpr::one(),
            (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).map(|(i, j)| (vec![i, j], phi.get(&[j, i]))),
        )
        .unwrap();
        let (out, _) = gauge_quantum(&r, &RatExpr::one(), &QuantumGauge::MultiplyForm(recip)).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    let want = &out.beta(i, j).scale(&q(s.eps(i))) + &RatExpr::int(s.eps(i) * s.eps(j));
                    prop_assert_eq!(out.alpha(i, j), &want);
                }
            }
        }
    }
}
