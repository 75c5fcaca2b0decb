//! Multivariate polynomial gcd over Q.
//!
//! After cheap fast paths, the heuristic integer gcd is tried: evaluate one
//! variable at a large integer, take the gcd one level down, rebuild a
//! candidate from its ξ-adic digits and accept it only if it divides both
//! inputs. When that fails, a primitive pseudo-remainder sequence over the
//! content-split polynomials is the fallback. The PRS alone suffers heavy
//! intermediate degree growth in the non-main variables, which the heuristic
//! avoids on the inputs seen here.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::poly::{Monomial, MultiPoly, Rational, Var};

/// Evaluation points tried by the heuristic gcd before falling back.
const HEURISTIC_ATTEMPTS: usize = 6;

/// Greatest common divisor, normalised to a primitive integer polynomial with
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    gcd_nonzero(&a.primitive_part(), &b.primitive_part())
}

// Both arguments nonzero and primitive.
fn gcd_nonzero(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a == b {
        return a.clone();
    }
    if a.is_monomial() {
        return monomial_gcd(a, b);
    }
    if b.is_monomial() {
        return monomial_gcd(b, a);
    }

    let va = a.vars();
    let vb = b.vars();
    if let Some(&v) = va.difference(&vb).next() {
        return gcd_with_coefficients(a, v, b);
    }
    if let Some(&v) = vb.difference(&va).next() {
        return gcd_with_coefficients(b, v, a);
    }

    // Same variable set. Cheap divisibility probes first.
    if a.total_degree() <= b.total_degree() {
        if b.div_exact(a).is_some() {
            return a.clone();
        }
    } else if a.div_exact(b).is_some() {
        return b.clone();
    }

    let v = main_variable(a, b, &va);
    if let Some(h) = heuristic_gcd(a, b, v) {
        return h;
    }
    let (ca, pa) = split_content(a, v);
    let (cb, pb) = split_content(b, v);
    let content = gcd_nonzero(&ca, &cb);
    let prim = prs_gcd(pa, pb, v);
    (&content * &prim).primitive_part()
}

/// Heuristic gcd of two primitive integer polynomials in the variable `v`.
/// A returned value is always the true gcd: with `ξ > 2·min(‖a‖, ‖b‖) + 1`,
/// a primitive candidate dividing both inputs cannot be a proper divisor of
/// the gcd.
fn heuristic_gcd(a: &MultiPoly, b: &MultiPoly, v: Var) -> Option<MultiPoly> {
    let bound = a.degree_in(v).min(b.degree_in(v)) as usize;
    let mut xi: BigInt = max_norm(a).min(max_norm(b)) * 2u32 + 29u32;
    for _ in 0..HEURISTIC_ATTEMPTS {
        let x = Rational::from_integer(xi.clone());
        let (ea, eb) = (evaluate(a, v, &x), evaluate(b, v, &x));
        if !ea.is_zero() && !eb.is_zero() {
            let gamma = full_gcd(&ea, &eb);
            if let Some(candidate) = reconstruct(gamma, v, &xi, bound) {
                let candidate = candidate.primitive_part();
                if !candidate.is_zero() && a.div_exact(&candidate).is_some() && b.div_exact(&candidate).is_some() {
                    return Some(candidate);
                }
            }
        }
        xi = xi * 73_794u32 / 27_011u32 + 1u32;
    }
    None
}

/// Largest absolute value among the (integer) coefficients.
fn max_norm(p: &MultiPoly) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

/// `p` with `v = x`, computed term by term.
fn evaluate(p: &MultiPoly, v: Var, x: &Rational) -> MultiPoly {
    MultiPoly::from_terms(p.terms().map(|(m, c)| {
        let (e, rest) = m.split(v);
        (rest, c * &num_traits::pow(x.clone(), e as usize))
    }))
}

/// gcd in `Z[vars]`, keeping the integer content.
fn full_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let (ca, pa) = a.primitive();
    let (cb, pb) = b.primitive();
    let content = ca.numer().abs().gcd(&cb.numer().abs());
    let g = if pa.is_constant() || pb.is_constant() { MultiPoly::one() } else { gcd_nonzero(&pa, &pb) };
    g.scale(&Rational::from_integer(content))
}

/// Rebuilds `Σ g_i v^i` from the symmetric ξ-adic digits of `gamma`.
fn reconstruct(mut gamma: MultiPoly, v: Var, xi: &BigInt, bound: usize) -> Option<MultiPoly> {
    let half = xi / 2;
    let mut out = MultiPoly::zero();
    let mut i = 0u32;
    while !gamma.is_zero() {
        if i as usize > bound {
            return None;
        }
        let digit = MultiPoly::from_terms(gamma.terms().map(|(m, c)| {
            let mut r = c.numer().mod_floor(xi);
            if r > half {
                r -= xi;
            }
            (m.clone(), Rational::from_integer(r))
        }));
        let vi = Monomial::var_pow(v, i);
        for (m, c) in digit.terms() {
            out.add_term(m.mul(&vi), c.clone());
        }
        let rest = &gamma - &digit;
        gamma = rest.scale(&Rational::new(BigInt::one(), xi.clone()));
        if gamma.terms().any(|(_, c)| !c.is_integer()) {
            return None;
        }
        i += 1;
    }
    Some(out)
}

/// gcd(a, b) when `v` occurs in `a` but not in `b`: any common factor divides
/// every coefficient of `a` with respect to `v`.
fn gcd_with_coefficients(a: &MultiPoly, v: Var, b: &MultiPoly) -> MultiPoly {
    let mut g = b.clone();
    for c in a.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_nonzero(&c.primitive_part(), &g);
        if g.is_one() {
            break;
        }
    }
    g
}

fn monomial_gcd(m: &MultiPoly, p: &MultiPoly) -> MultiPoly {
    let (mm, _) = m.leading().expect("nonzero");
    let mut g = mm.clone();
    for (t, _) in p.terms() {
        g = g.gcd(t);
        if g.is_one() {
            break;
        }
    }
    MultiPoly::term(Rational::one(), g)
}

fn main_variable(a: &MultiPoly, b: &MultiPoly, vars: &BTreeSet<Var>) -> Var {
    *vars
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), a.degree_in(v) + b.degree_in(v)))
        .expect("non-constant polynomials have variables")
}

/// Content with respect to `v` (a polynomial free of `v`) and the primitive
/// part, both integer-primitive.
fn split_content(p: &MultiPoly, v: Var) -> (MultiPoly, MultiPoly) {
    let coeffs = p.coefficients_in(v);
    let mut content: Option<MultiPoly> = None;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        let c = c.primitive_part();
        content = Some(match content {
            None => c,
            Some(g) => gcd_nonzero(&g, &c),
        });
        if content.as_ref().is_some_and(MultiPoly::is_one) {
            break;
        }
    }
    let content = content.unwrap_or_else(MultiPoly::one);
    if content.is_one() {
        return (content, p.primitive_part());
    }
    let prim = p.div_exact(&content).expect("content divides polynomial").primitive_part();
    (content, prim)
}

fn primitive_in(p: &MultiPoly, v: Var) -> MultiPoly {
    split_content(p, v).1
}

/// Primitive PRS on polynomials that are primitive with respect to `v`.
fn prs_gcd(a: MultiPoly, b: MultiPoly, v: Var) -> MultiPoly {
    let (mut p, mut q) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        if q.is_zero() {
            return primitive_in(&p, v);
        }
        if q.degree_in(v) == 0 {
            return MultiPoly::one();
        }
        let r = pseudo_remainder(&p, &q, v);
        p = q;
        q = if r.is_zero() { r } else { primitive_in(&r, v) };
    }
}

/// A nonzero multiple of the remainder of `p` by `q` in `K[v]`, computed
/// without division in the coefficient ring.
pub(crate) fn pseudo_remainder(p: &MultiPoly, q: &MultiPoly, v: Var) -> MultiPoly {
    let qc = q.coefficients_in(v);
    let dq = qc.len() - 1;
    let lq = &qc[dq];
    let mut r = p.coefficients_in(v);
    trim(&mut r);
    while r.len() > dq && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dq;
        for c in r.iter_mut() {
            *c = &*c * lq;
        }
        for (i, qi) in qc.iter().enumerate() {
            let t = qi * &lr;
            r[i + shift] = &r[i + shift] - &t;
        }
        trim(&mut r);
    }
    MultiPoly::from_coefficients(v, &r)
}

fn trim(c: &mut Vec<MultiPoly>) {
    while c.last().is_some_and(MultiPoly::is_zero) {
        c.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(k: usize) -> MultiPoly {
        MultiPoly::var(Var::l(k))
    }
    fn g() -> MultiPoly {
        MultiPoly::var(Var::G)
    }
    fn c(k: i64) -> MultiPoly {
        MultiPoly::from_int(k)
    }

    #[test]
    fn common_linear_factor() {
        let f = &l(1) - &l(2);
        let a = &f * &(&l(3) + &g());
        let b = &f * &(&l(1) + &c(2));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn coprime_gives_one() {
        let a = &l(1) - &l(2);
        let b = &l(1) - &l(3);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn squared_factors_and_scalars() {
        let f = &(&l(1) - &l(2)) - &g();
        let h = &l(2) + &l(3);
        let a = (&(&f * &f) * &h).scale(&Rational::new(3.into(), 2.into()));
        let b = (&f * &(&h * &h)).scale(&Rational::from_integer((-4).into()));
        assert_eq!(gcd(&a, &b), (&f * &h).primitive_part());
    }

    #[test]
    fn monomial_case() {
        let a = &(&l(1) * &l(1)) * &g();
        let b = &(&l(1) * &g()) + &(&l(1) * &l(2));
        assert_eq!(gcd(&a, &b), l(1));
    }

    #[test]
    fn zero_arguments() {
        let a = (&l(1) - &l(2)).scale(&Rational::from_integer((-3).into()));
        assert_eq!(gcd(&a, &MultiPoly::zero()), &l(1) - &l(2));
        assert!(gcd(&MultiPoly::zero(), &MultiPoly::zero()).is_zero());
    }

    #[test]
    fn heuristic_handles_product_denominators() {
        // Denominators from the derivative of a product of two rational
        // functions; the plain PRS stalls on this pair.
        let x = l(1);
        let y = l(2);
        let z = l(3);
        let p = &(&(&x * &y).scale(&Rational::from_integer(5.into())) + &(&y * &g()).scale(&Rational::from_integer(4.into())))
            + &(&z * &g()).scale(&Rational::from_integer(3.into()));
        let q =
            &(&(&x * &g()).scale(&Rational::from_integer(4.into())) + &(&y * &g())) + &(&z * &g()).scale(&Rational::from_integer(3.into()));
        let a = &(&p * &p) * &q;
        let b = &(&p * &q) * &(&(&x * &y) + &z);
        assert_eq!(gcd(&a, &b), (&p * &q).primitive_part());
        let c = &(&x * &z) - &(&y * &y);
        assert_eq!(gcd(&(&a * &c), &(&b * &c)), (&(&p * &q) * &c).primitive_part());
    }

    #[test]
    fn prs_fallback_agrees_with_heuristic() {
        let x = l(1);
        let y = l(2);
        let common = &(&x * &x) + &y;
        let a = &common * &(&x - &y);
        let b = &common * &(&x + &c(3));
        let (ca, pa) = split_content(&a.primitive_part(), Var::l(1));
        let (cb, pb) = split_content(&b.primitive_part(), Var::l(1));
        let prs = (&gcd_nonzero(&ca, &cb) * &prs_gcd(pa, pb, Var::l(1))).primitive_part();
        assert_eq!(prs, gcd(&a, &b));
    }

    #[test]
    fn nontrivial_prs() {
        // (x^2 + y)(x - y + 1) and (x^2 + y)(x + 2y)
        let x = l(1);
        let y = l(2);
        let common = &(&x * &x) + &y;
        let a = &common * &(&(&x - &y) + &c(1));
        let b = &common * &(&x + &y.scale(&Rational::from_integer(2.into())));
        assert_eq!(gcd(&a, &b), common);
    }
}
