//! Helpers shared by the integration tests.

#![allow(dead_code)]

pub mod unsigned;

use superdyn::dynamical::{IntervalPartition, TwoForm, ZeroWeightOp};
use superdyn::expr::{PointSampler, RatExpr, Rational};
use superdyn::graded::GradedSpace;

pub fn q(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

pub fn zero() -> Rational {
    q(0)
}

/// Every `(m, n)` with `1 ≤ m + n ≤ max_dim`.
pub fn spaces(max_dim: usize) -> Vec<GradedSpace> {
    let mut out = Vec::new();
    for dim in 1..=max_dim {
        for m in (0..=dim).rev() {
            out.push(GradedSpace::new(m, dim - m).unwrap());
        }
    }
    out
}

/// Every `(space, partition)` pair with `N ≤ max_dim`.
pub fn all_partitions(max_dim: usize) -> Vec<IntervalPartition> {
    spaces(max_dim).iter().flat_map(IntervalPartition::enumerate).collect()
}

/// Deterministic source of random test data.
pub struct Gen {
    s: PointSampler,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { s: PointSampler::new(seed) }
    }

    /// Random rational `n/d` with `|n| ≤ 10⁴`, `1 ≤ d ≤ 100`.
    pub fn rational(&mut self) -> Rational {
        self.s.rational()
    }

    pub fn nonzero(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != zero() {
                return r;
            }
        }
    }

    /// Random integer in `[0, k)`.
    pub fn below(&mut self, k: usize) -> usize {
        let n = i64::try_from(self.rational().numer()).expect("numerators are small");
        n.unsigned_abs() as usize % k
    }

    pub fn rationals(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| self.rational()).collect()
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() {
            let j = self.below(i + 1);
            v.swap(i, j);
        }
        v
    }

    /// A random closed 2-form: a random constant antisymmetric part plus
    /// the exact form of random quadratic potentials.
    pub fn closed_form(&mut self, space: &GradedSpace) -> TwoForm {
        let n = space.dim();
        let potentials: Vec<RatExpr> = (1..=n)
            .map(|k| {
                let next = k % n + 1;
                let a = RatExpr::from_rational(self.rational());
                let b = RatExpr::from_rational(self.rational());
                &(&a * &(&RatExpr::l(k) * &RatExpr::l(next))) + &(&b * &(&RatExpr::l(k) * &RatExpr::l(k)))
            })
            .collect();
        let exact = TwoForm::exact(space, &potentials);
        let constant = TwoForm::from_upper(
            n,
            (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .map(|p| (p, RatExpr::from_rational(self.rational())))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        exact.add(&constant)
    }

    /// Random integer in `[-k, k]`.
    pub fn small(&mut self, k: usize) -> RatExpr {
        RatExpr::int(self.below(2 * k + 1) as i64 - k as i64)
    }

    /// A random rational function of degree ≤ 1 over degree ≤ 1 in the
    /// coordinates, with small integer coefficients.
    pub fn rational_function(&mut self, n: usize) -> RatExpr {
        let lin = |g: &mut Gen| -> RatExpr {
            let mut e = g.small(3);
            for k in 1..=n {
                if g.below(2) == 0 {
                    e = &e + &(&g.small(3) * &RatExpr::l(k));
                }
            }
            e
        };
        let num = lin(self);
        let mut den = lin(self);
        if den.is_zero() {
            den = RatExpr::one();
        }
        num.checked_div(&den).unwrap_or(num)
    }
}

/// The operator with one coefficient changed.
#[derive(Clone, Copy, Debug)]
pub enum Mutation {
    FlipBeta,
    DoubleAlpha,
    DoubleBeta,
    ShiftBeta,
}

pub const MUTATIONS: [Mutation; 4] = [Mutation::FlipBeta, Mutation::DoubleAlpha, Mutation::DoubleBeta, Mutation::ShiftBeta];

pub fn mutate(r: &ZeroWeightOp, i: usize, j: usize, m: Mutation) -> ZeroWeightOp {
    let mut out = r.clone();
    match m {
        Mutation::FlipBeta => out.set_beta(i, j, -r.beta(i, j)),
        Mutation::DoubleAlpha => out.set_alpha(i, j, r.alpha(i, j) * &RatExpr::int(2)),
        Mutation::DoubleBeta => out.set_beta(i, j, r.beta(i, j) * &RatExpr::int(2)),
        Mutation::ShiftBeta => out.set_beta(i, j, r.beta(i, j).shift_var(i, &RatExpr::int(-1))),
    }
    out
}
