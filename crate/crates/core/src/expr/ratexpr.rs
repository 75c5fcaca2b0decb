//! Exact rational functions in `l1..lN` and `g`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::{integer_content, MultiPoly, Rational, Var};
use super::ExprError;

/// A rational function `num / den` in canonical form.
///
/// Canonical form: `gcd(num, den) = 1`, both have integer coefficients with
/// no common integer factor, and the leading coefficient of `den` is
/// positive. Two expressions are equal as rational functions exactly when
/// they are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatExpr {
    num: MultiPoly,
    den: MultiPoly,
}

impl Default for RatExpr {
    fn default() -> Self {
        RatExpr::zero()
    }
}

impl RatExpr {
    pub fn zero() -> Self {
        RatExpr { num: MultiPoly::zero(), den: MultiPoly::one() }
    }

    pub fn one() -> Self {
        RatExpr::int(1)
    }

    pub fn int(c: i64) -> Self {
        RatExpr::from_rational(Rational::from_integer(BigInt::from(c)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        RatExpr::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(c: Rational) -> Self {
        let num = MultiPoly::constant(Rational::from_integer(c.numer().clone()));
        let den = MultiPoly::constant(Rational::from_integer(c.denom().clone()));
        if num.is_zero() {
            return RatExpr::zero();
        }
        RatExpr { num, den }
    }

    /// The coordinate `l_k`, 1-based.
    pub fn l(k: usize) -> Self {
        RatExpr::from_poly(MultiPoly::var(Var::l(k)))
    }

    /// The step variable `g`.
    pub fn g() -> Self {
        RatExpr::from_poly(MultiPoly::var(Var::G))
    }

    /// `l_i - l_j`.
    pub fn lambda(i: usize, j: usize) -> Self {
        &RatExpr::l(i) - &RatExpr::l(j)
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatExpr::new(p, MultiPoly::one()).expect("nonzero denominator")
    }

    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ExprError> {
        if den.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RatExpr::zero();
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Self::scaled(num, den)
        } else {
            let n = num.div_exact(&g).expect("gcd divides numerator");
            let d = den.div_exact(&g).expect("gcd divides denominator");
            Self::scaled(n, d)
        }
    }

    // Fixes the scalar: integer coefficients with joint content 1, lc(den) > 0.
    // Callers guarantee `gcd(num, den) = 1`.
    fn scaled(num: MultiPoly, den: MultiPoly) -> Self {
        let (g, l) = integer_content(num.terms().map(|(_, c)| c).chain(den.terms().map(|(_, c)| c)));
        let mut factor = Rational::new(l, g);
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            factor = -factor;
        }
        if factor.is_one() {
            RatExpr { num, den }
        } else {
            RatExpr { num: num.scale(&factor), den: den.scale(&factor) }
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True iff the expression is the zero rational function.
    pub fn is_identically_zero(&self) -> bool {
        self.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The value if the expression is a constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    /// True when no coordinate `l_k` occurs (the expression depends on `g` at most).
    pub fn is_free_of_coordinates(&self) -> bool {
        self.num.vars().iter().chain(self.den.vars().iter()).all(|v| !v.is_coordinate())
    }

    /// Largest `k` such that `l_k` occurs, 0 if none.
    pub fn max_coordinate(&self) -> usize {
        self.num
            .vars()
            .into_iter()
            .chain(self.den.vars())
            .filter_map(|v| match v {
                Var::L(k) => Some(k as usize),
                Var::G => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn checked_div(&self, rhs: &RatExpr) -> Result<RatExpr, ExprError> {
        if rhs.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(self * &rhs.inverse_unchecked())
    }

    pub fn inverse(&self) -> Result<RatExpr, ExprError> {
        if self.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(self.inverse_unchecked())
    }

    fn inverse_unchecked(&self) -> RatExpr {
        Self::scaled(self.den.clone(), self.num.clone())
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Result<RatExpr, ExprError> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let e = e as u32;
        Ok(RatExpr { num: self.num.pow(e), den: self.den.pow(e) }.rescaled())
    }

    // Re-fixes the scalar of an expression whose num/den are already coprime.
    fn rescaled(self) -> RatExpr {
        if self.num.is_zero() {
            return RatExpr::zero();
        }
        Self::scaled(self.num, self.den)
    }

    pub fn scale(&self, c: &Rational) -> RatExpr {
        if c.is_zero() {
            return RatExpr::zero();
        }
        Self::scaled(self.num.scale(c), self.den.clone())
    }

    /// Substitutes the expression `r` for the variable `v`.
    pub fn substitute(&self, v: Var, r: &RatExpr) -> RatExpr {
        if !self.contains_var(v) {
            return self.clone();
        }
        if r.is_polynomial() {
            let rp = r.num.scale(&r.den.as_constant().expect("constant").recip());
            return Self::normalized(self.num.substitute(v, &rp), self.den.substitute(v, &rp));
        }
        let n = horner(&self.num, v, r);
        let d = horner(&self.den, v, r);
        n.checked_div(&d).expect("substitution produced a zero denominator")
    }

    /// `l_k ↦ l_k − amount`.
    ///
    /// # Panics
    /// If `amount` depends on a coordinate.
    pub fn shift_var(&self, k: usize, amount: &RatExpr) -> RatExpr {
        assert!(amount.is_free_of_coordinates(), "shift amount must not depend on l-variables");
        if amount.is_zero() {
            return self.clone();
        }
        let v = Var::l(k);
        self.substitute(v, &(&RatExpr::l(k) - amount))
    }

    pub fn partial_deriv_var(&self, v: Var) -> RatExpr {
        if !self.contains_var(v) {
            return RatExpr::zero();
        }
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(top, &self.den * &self.den)
    }

    /// `∂/∂l_k`.
    pub fn partial_deriv(&self, k: usize) -> RatExpr {
        self.partial_deriv_var(Var::l(k))
    }

    /// Exact value at a point `(l1, …, lN, g)`: `point[k-1]` is `l_k` and the
    /// last entry is `g`.
    pub fn eval_at(&self, point: &[Rational]) -> Result<Rational, ExprError> {
        if point.is_empty() {
            return Err(ExprError::PointArity { needed: self.max_coordinate() + 1, got: 0 });
        }
        let n = point.len() - 1;
        let value = |v: Var| match v {
            Var::G => Ok(point[n].clone()),
            Var::L(k) if (k as usize) <= n => Ok(point[k as usize - 1].clone()),
            Var::L(_) => Err(ExprError::PointArity { needed: self.max_coordinate() + 1, got: point.len() }),
        };
        let d = self.den.eval_with(value)?;
        if d.is_zero() {
            return Err(ExprError::PoleAtPoint);
        }
        let n = self.num.eval_with(value)?;
        Ok(n / d)
    }

    /// Substitutes a constant for `g`.
    pub fn at_step(&self, g: &Rational) -> Result<RatExpr, ExprError> {
        let d = self.den.eval_var(Var::G, g);
        if d.is_zero() {
            return Err(ExprError::PoleAtPoint);
        }
        RatExpr::new(self.num.eval_var(Var::G, g), d)
    }

    /// Taylor coefficients `c_0..c_order` in `g` about `g = 0`; each is free of `g`.
    pub fn taylor_gamma(&self, order: usize) -> Result<Vec<RatExpr>, ExprError> {
        let dc = self.den.coefficients_in(Var::G);
        let d0 = dc.first().cloned().unwrap_or_default();
        if d0.is_zero() {
            return Err(ExprError::PoleAtGammaZero);
        }
        let nc = self.num.coefficients_in(Var::G);
        let d0 = RatExpr::from_poly(d0);
        let at = |v: &[MultiPoly], i: usize| v.get(i).cloned().map(RatExpr::from_poly).unwrap_or_default();
        let mut out: Vec<RatExpr> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = at(&nc, k);
            for j in 1..=k.min(dc.len().saturating_sub(1)) {
                acc = &acc - &(&at(&dc, j) * &out[k - j]);
            }
            out.push(acc.checked_div(&d0)?);
        }
        Ok(out)
    }

    /// Largest `v` such that `g^v` divides the numerator (`None` for zero).
    pub fn gamma_valuation(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        self.num.terms().map(|(m, _)| m.exponent(Var::G)).min()
    }

    /// Renames coordinates: `l_k ↦ l_{perm(k)}` (1-based).
    pub fn permute_coordinates(&self, perm: impl Fn(usize) -> usize + Copy) -> RatExpr {
        let f = move |v: Var| match v {
            Var::L(k) => Var::l(perm(k as usize)),
            Var::G => Var::G,
        };
        RatExpr { num: self.num.rename(f), den: self.den.rename(f) }.renormalized_order()
    }

    // Renaming keeps coprimality but can move the leading term.
    fn renormalized_order(self) -> RatExpr {
        Self::scaled(self.num, self.den)
    }

    /// `l_k ↦ c·l_k` for every coordinate.
    pub fn scale_coordinates(&self, c: &Rational) -> RatExpr {
        assert!(!c.is_zero(), "coordinate scale must be nonzero");
        Self::normalized(self.num.scale_coordinates(c), self.den.scale_coordinates(c))
    }

    /// `l_k ↦ l_k + shift[k-1]` for every coordinate, `shift` constant.
    pub fn translate(&self, shift: &[Rational]) -> RatExpr {
        let mut out = self.clone();
        for (i, s) in shift.iter().enumerate() {
            if !s.is_zero() {
                out = out.shift_var(i + 1, &RatExpr::from_rational(-s));
            }
        }
        out
    }
}

fn horner(p: &MultiPoly, v: Var, r: &RatExpr) -> RatExpr {
    let mut acc = RatExpr::zero();
    for c in p.coefficients_in(v).iter().rev() {
        acc = &(&acc * r) + &RatExpr::from_poly(c.clone());
    }
    acc
}

impl Add for &RatExpr {
    type Output = RatExpr;
    fn add(self, rhs: &RatExpr) -> RatExpr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let n = &self.num + &rhs.num;
            if self.den.is_constant() {
                return RatExpr::scaled_or_zero(n, self.den.clone());
            }
            return RatExpr::normalized(n, self.den.clone());
        }
        if self.den.is_constant() || rhs.den.is_constant() {
            let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let d = &self.den * &rhs.den;
            // gcd(n, d) divides the non-constant denominator; n is coprime to it
            return RatExpr::scaled_or_zero(n, d);
        }
        let g = gcd(&self.den, &rhs.den);
        let (a_den, b_den) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (self.den.div_exact(&g).expect("gcd divides"), rhs.den.div_exact(&g).expect("gcd divides"))
        };
        let n = &(&self.num * &b_den) + &(&rhs.num * &a_den);
        if n.is_zero() {
            return RatExpr::zero();
        }
        let d = &(&a_den * &b_den) * &g;
        if g.is_one() {
            return RatExpr::scaled(n, d);
        }
        let h = gcd(&n, &g);
        if h.is_one() {
            RatExpr::scaled(n, d)
        } else {
            RatExpr::scaled(n.div_exact(&h).expect("gcd divides"), d.div_exact(&h).expect("gcd divides"))
        }
    }
}

impl RatExpr {
    fn scaled_or_zero(n: MultiPoly, d: MultiPoly) -> RatExpr {
        if n.is_zero() {
            RatExpr::zero()
        } else {
            RatExpr::scaled(n, d)
        }
    }
}

impl Sub for &RatExpr {
    type Output = RatExpr;
    fn sub(self, rhs: &RatExpr) -> RatExpr {
        self + &(-rhs)
    }
}

impl Mul for &RatExpr {
    type Output = RatExpr;
    fn mul(self, rhs: &RatExpr) -> RatExpr {
        if self.is_zero() || rhs.is_zero() {
            return RatExpr::zero();
        }
        if let Some(c) = self.as_rational() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_rational() {
            return self.scale(&c);
        }
        // cross-cancel: gcd(a, d) and gcd(c, b) for (a/b)(c/d)
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let div = |p: &MultiPoly, g: &MultiPoly| if g.is_one() { p.clone() } else { p.div_exact(g).expect("gcd divides") };
        let n = &div(&self.num, &g1) * &div(&rhs.num, &g2);
        let d = &div(&self.den, &g2) * &div(&rhs.den, &g1);
        RatExpr::scaled(n, d)
    }
}

impl Div for &RatExpr {
    type Output = RatExpr;
    /// # Panics
    /// On division by the zero expression; use [`RatExpr::checked_div`] to handle it.
    fn div(self, rhs: &RatExpr) -> RatExpr {
        self.checked_div(rhs).expect("division by the zero expression")
    }
}

impl Neg for &RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        RatExpr { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatExpr {
            type Output = RatExpr;
            fn $m(self, rhs: RatExpr) -> RatExpr { (&self).$m(&rhs) }
        }
        impl $tr<&RatExpr> for RatExpr {
            type Output = RatExpr;
            fn $m(self, rhs: &RatExpr) -> RatExpr { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        -&self
    }
}

impl std::iter::Sum for RatExpr {
    fn sum<I: Iterator<Item = RatExpr>>(iter: I) -> RatExpr {
        iter.fold(RatExpr::zero(), |a, b| &a + &b)
    }
}

impl From<i64> for RatExpr {
    fn from(c: i64) -> Self {
        RatExpr::int(c)
    }
}

impl From<Rational> for RatExpr {
    fn from(c: Rational) -> Self {
        RatExpr::from_rational(c)
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::format_expr(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(k: usize) -> RatExpr {
        RatExpr::l(k)
    }

    #[test]
    fn antisymmetric_sum_vanishes() {
        let a = RatExpr::one() / RatExpr::lambda(1, 2);
        let b = RatExpr::one() / RatExpr::lambda(2, 1);
        assert!((&a + &b).is_identically_zero());
    }

    #[test]
    fn inverse_cancels() {
        let x = RatExpr::lambda(1, 2);
        assert!((&x * &(RatExpr::one() / x.clone())).is_one());
    }

    #[test]
    fn canonical_sign_and_scale() {
        let a = RatExpr::int(2) / (RatExpr::lambda(2, 1) * RatExpr::int(4));
        assert_eq!(a.num(), &MultiPoly::from_int(-1));
        assert_eq!(a.den().leading_coeff().unwrap(), &Rational::from_integer(2.into()));
        assert_eq!(a, RatExpr::ratio(-1, 2) / RatExpr::lambda(1, 2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(RatExpr::one().checked_div(&RatExpr::zero()), Err(ExprError::DivisionByZero));
        assert!(RatExpr::zero().inverse().is_err());
        assert!(RatExpr::new(MultiPoly::one(), MultiPoly::zero()).is_err());
    }

    #[test]
    fn shift_examples() {
        let e = RatExpr::one() / RatExpr::lambda(1, 2);
        let s = e.shift_var(1, &RatExpr::g());
        assert_eq!(s, RatExpr::one() / (RatExpr::lambda(1, 2) - RatExpr::g()));
        assert_eq!(l(3).shift_var(1, &RatExpr::g()), l(3));
        assert_eq!(s.shift_var(1, &-RatExpr::g()), e);
    }

    #[test]
    #[should_panic]
    fn shift_by_coordinate_panics() {
        let _ = l(1).shift_var(1, &l(2));
    }

    #[test]
    fn derivative_examples() {
        let e = RatExpr::one() / RatExpr::lambda(1, 2);
        let want = -(RatExpr::one() / RatExpr::lambda(1, 2).pow(2).unwrap());
        assert_eq!(e.partial_deriv(1), want);
        assert!((RatExpr::g() * l(2)).partial_deriv(1).is_zero());
    }

    #[test]
    fn eval_examples() {
        let e = RatExpr::one() / RatExpr::lambda(1, 2);
        let p = |v: [i64; 3]| v.map(|x| Rational::from_integer(x.into())).to_vec();
        assert_eq!(e.eval_at(&p([3, 1, 0])).unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(e.eval_at(&p([1, 1, 0])), Err(ExprError::PoleAtPoint));
        assert!(matches!(l(3).eval_at(&p([1, 1, 0])), Err(ExprError::PointArity { .. })));
    }

    #[test]
    fn taylor_examples() {
        let lam = RatExpr::lambda(1, 2);
        let e = RatExpr::one() / (&lam - &RatExpr::g());
        let c = e.taylor_gamma(1).unwrap();
        assert_eq!(c, vec![RatExpr::one() / lam.clone(), RatExpr::one() / lam.pow(2).unwrap()]);

        let e = RatExpr::one() + RatExpr::g() / lam.clone();
        assert_eq!(e.taylor_gamma(2).unwrap(), vec![RatExpr::one(), RatExpr::one() / lam, RatExpr::zero()]);

        let bad = RatExpr::one() / RatExpr::g();
        assert_eq!(bad.taylor_gamma(1), Err(ExprError::PoleAtGammaZero));
    }

    #[test]
    fn permute_and_scale_coordinates() {
        let e = RatExpr::one() / RatExpr::lambda(1, 2);
        let swapped = e.permute_coordinates(|k| {
            if k == 1 {
                2
            } else if k == 2 {
                1
            } else {
                k
            }
        });
        assert_eq!(swapped, RatExpr::one() / RatExpr::lambda(2, 1));
        let scaled = e.scale_coordinates(&Rational::from_integer(3.into()));
        assert_eq!(scaled, RatExpr::ratio(1, 3) / RatExpr::lambda(1, 2));
    }
}
