//! Deterministic text rendering, inverse to [`parse_expr`](super::parse_expr).

use num_traits::{One, Signed};

use super::{Monomial, MultiPoly, RatExpr, Rational};

/// Renders `e` with terms in descending monomial order and no spaces.
pub fn format_expr(e: &RatExpr) -> String {
    let num = format_poly(e.num());
    if e.den().is_one() {
        return num;
    }
    let num = if e.num().num_terms() > 1 { format!("({num})") } else { num };
    let den = format_poly(e.den());
    if is_atomic(e.den()) {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}

// A denominator that reads back correctly without parentheses.
fn is_atomic(p: &MultiPoly) -> bool {
    match p.leading() {
        Some((m, c)) if p.num_terms() == 1 => {
            if m.is_one() {
                c.is_positive()
            } else {
                c.is_one() && m.factors().len() == 1
            }
        }
        _ => false,
    }
}

fn format_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let t = format_term(m, c);
        if i > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(&t);
    }
    out
}

fn format_term(m: &Monomial, c: &Rational) -> String {
    let coeff = if c.is_integer() { c.numer().to_string() } else { format!("{}/{}", c.numer(), c.denom()) };
    if m.is_one() {
        return coeff;
    }
    let mono = m.factors().iter().map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") }).collect::<Vec<_>>().join("*");
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{coeff}*{mono}")
    }
}
