use proptest::prelude::*;
use superdyn::expr::RatExpr;
use superdyn::graded::{GradedSpace, HomOp};

fn space(max_dim: usize) -> impl Strategy<Value = GradedSpace> {
    prop::collection::vec(0u8..=1, 1..=max_dim).prop_map(|p| GradedSpace::from_parities(&p).unwrap())
}

fn matrix(space: GradedSpace) -> impl Strategy<Value = HomOp> {
    let n = space.dim();
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |entries| {
        let mut m = HomOp::zero(&space, 1).unwrap();
        for (k, c) in entries.into_iter().enumerate() {
            m.set(k / n, k % n, RatExpr::int(c));
        }
        m
    })
}

fn triple() -> impl Strategy<Value = (HomOp, HomOp, HomOp)> {
    space(3).prop_flat_map(|s| (matrix(s.clone()), matrix(s.clone()), matrix(s)))
}

/// A homogeneous unit `E_ij` with its parity.
fn unit(space: &GradedSpace, i: usize, j: usize) -> (HomOp, u8) {
    (HomOp::basis_e(space, i, j).unwrap(), space.sigma(i) ^ space.sigma(j))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative((a, b, c) in triple()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identity_is_neutral((a, _, _) in triple()) {
        let id = HomOp::identity(a.space(), 1).unwrap();
        prop_assert_eq!(&id.compose(&a).unwrap(), &a);
        prop_assert_eq!(&a.compose(&id).unwrap(), &a);
    }

    #[test]
    fn mixed_product_rule_on_units(s in space(4), idx in prop::collection::vec(1usize..=4, 8)) {
        let n = s.dim();
        let k: Vec<usize> = idx.iter().map(|&i| (i - 1) % n + 1).collect();
        let (a, pa) = unit(&s, k[0], k[1]);
        let (b, pb) = unit(&s, k[2], k[3]);
        let (c, pc) = unit(&s, k[4], k[5]);
        let (d, _) = unit(&s, k[6], k[7]);
        let _ = pa;
        let lhs = a.super_kron(&b).unwrap().compose(&c.super_kron(&d).unwrap()).unwrap();
        let sign = if pb & pc == 1 { -1 } else { 1 };
        let rhs = a.compose(&c).unwrap().super_kron(&b.compose(&d).unwrap()).unwrap().scale(&RatExpr::int(sign));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn super_twist_is_an_involution(s in space(3), i in 1usize..=3, j in 1usize..=3, k in 1usize..=3, l in 1usize..=3) {
        let n = s.dim();
        let clamp = |x: usize| (x - 1) % n + 1;
        let (a, _) = unit(&s, clamp(i), clamp(j));
        let (b, _) = unit(&s, clamp(k), clamp(l));
        let t = a.super_kron(&b).unwrap();
        prop_assert_eq!(t.super_twist().unwrap().super_twist().unwrap(), t);
    }
}
