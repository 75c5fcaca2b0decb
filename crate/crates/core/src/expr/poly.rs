//! Sparse multivariate polynomials over Q in the dynamical coordinates
//! `l1..lN` and the step variable `g`.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`] under a graded
//! lexicographic order in which `l1` has the highest priority, then `l2`, and
//! so on, with `g` last. The leading term is therefore the last map entry.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// A polynomial variable: the coordinate `l_k` (1-based) or the step `g`.
///
/// The derived order is the variable priority used by the monomial order:
/// `l1` first, `g` last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    L(u16),
    G,
}

impl Var {
    pub fn l(k: usize) -> Var {
        assert!(k >= 1 && k <= u16::MAX as usize, "coordinate index out of range: {k}");
        Var::L(k as u16)
    }

    pub fn is_coordinate(self) -> bool {
        matches!(self, Var::L(_))
    }
}

impl std::fmt::Display for Var {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Var::L(k) => write!(f, "l{k}"),
            Var::G => f.write_str("g"),
        }
    }
}

/// A power product, stored sparsely as `(variable, exponent)` pairs sorted by
/// variable with no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.binary_search_by(|&(w, _)| w.cmp(&v)).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for &(v, e) in &self.0 {
            let f = other.exponent(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Monomial(out)
    }

    /// Splits off the exponent of `v`.
    pub fn split(&self, v: Var) -> (u32, Monomial) {
        let mut rest = Vec::with_capacity(self.0.len());
        let mut e = 0;
        for &(w, f) in &self.0 {
            if w == v {
                e = f;
            } else {
                rest.push((w, f));
            }
        }
        (e, Monomial(rest))
    }

    fn from_unsorted(mut factors: Vec<(Var, u32)>) -> Monomial {
        factors.retain(|&(_, e)| e > 0);
        factors.sort_by_key(|a| a.0);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return Ordering::Greater;
                    }
                    if va > vb {
                        return Ordering::Less;
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with rational coefficients. No zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn from_int(c: i64) -> Self {
        MultiPoly::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<&Rational> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&Monomial::one()),
            _ => None,
        }
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.as_constant().is_some()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.leading().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|&(v, _)| v)).collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            if e > 0 {
                let mut f = rest.0;
                f.push((v, e - 1));
                out.add_term(Monomial::from_unsorted(f), c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Coefficients with respect to `v`: entry `d` is the coefficient of `v^d`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![MultiPoly::zero(); deg + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            out[e as usize].terms.insert(rest, c.clone());
        }
        out
    }

    pub fn from_coefficients(v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (d, c) in coeffs.iter().enumerate() {
            let vm = Monomial::var_pow(v, d as u32);
            for (m, a) in &c.terms {
                out.add_term(m.mul(&vm), a.clone());
            }
        }
        out
    }

    /// Substitutes the polynomial `r` for the variable `v`.
    pub fn substitute(&self, v: Var, r: &MultiPoly) -> MultiPoly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let coeffs = self.coefficients_in(v);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * r) + c;
        }
        acc
    }

    /// Applies `f` to every variable. `f` must be injective.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let factors = m.0.iter().map(|&(v, e)| (f(v), e)).collect();
            out.add_term(Monomial::from_unsorted(factors), c.clone());
        }
        out
    }

    /// Multiplies each term by `c^k` where `k` is its total degree in the
    /// coordinates `l_*` (the substitution `l_k ↦ c·l_k` for all `k`).
    pub fn scale_coordinates(&self, c: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, a) in &self.terms {
            let k: u32 = m.0.iter().filter(|(v, _)| v.is_coordinate()).map(|&(_, e)| e).sum();
            out.add_term(m.clone(), a * num_traits::pow(c.clone(), k as usize));
        }
        out
    }

    /// Evaluates the polynomial, asking `value` for each variable that occurs.
    pub fn eval_with<E>(&self, value: impl Fn(Var) -> Result<Rational, E>) -> Result<Rational, E> {
        let mut cache: BTreeMap<Var, Rational> = BTreeMap::new();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let x = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = value(v)?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                t *= num_traits::pow(x, e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Partial evaluation: replaces `v` by the constant `x`.
    pub fn eval_var(&self, v: Var, x: &Rational) -> MultiPoly {
        self.substitute(v, &MultiPoly::constant(x.clone()))
    }

    /// Exact division. Returns `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.div(&lm)?;
            let qc = rc / &lc;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Integer content and sign normalisation.
    ///
    /// Returns `(c, p)` with `self = c * p`, `p` having coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn primitive(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::one(), MultiPoly::zero());
        }
        let (num_gcd, den_lcm) = integer_content(self.terms.values());
        let mut c = Rational::new(num_gcd, den_lcm);
        if self.leading_coeff().is_some_and(|lc| lc.is_negative()) {
            c = -c;
        }
        let inv = c.recip();
        (c, self.scale(&inv))
    }

    pub fn primitive_part(&self) -> MultiPoly {
        self.primitive().1
    }
}

/// gcd of the numerators and lcm of the denominators of a set of rationals.
pub(crate) fn integer_content<'a>(coeffs: impl Iterator<Item = &'a Rational>) -> (BigInt, BigInt) {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for c in coeffs {
        g = g.gcd(c.numer());
        l = l.lcm(c.denom());
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    (g, l)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(c);
        }
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
