//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' natural)?
//! atom   := natural | 'l' natural | 'g' | '(' expr ')'
//! ```
//!
//! Unary minus binds looser than `^`, so `-l1^2` is `-(l1^2)`.

use num_bigint::BigInt;

use super::{ExprError, RatExpr, Rational};

/// Largest accepted exponent; larger powers are rejected as an [`ExprError::Exponent`].
pub const MAX_EXPONENT: u32 = 256;
/// Largest accepted coordinate index `k` in `l<k>`.
pub const MAX_COORDINATE: usize = 4096;

/// Parses `text` into a normalised [`RatExpr`].
pub fn parse_expr(text: &str) -> Result<RatExpr, ExprError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn syntax(&self, msg: &str) -> ExprError {
        ExprError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatExpr, ExprError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatExpr, ExprError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs).map_err(|_| ExprError::Syntax { pos: at, msg: "division by zero".into() })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatExpr, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatExpr, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let exp_err = |msg: &str| ExprError::Exponent { pos: at, msg: msg.to_string() };
        let digits = self.digits();
        if digits.is_empty() {
            return Err(exp_err("exponent must be a nonnegative integer literal"));
        }
        let e: u32 = digits.parse().ok().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| exp_err("exponent too large"))?;
        base.pow(e as i32).map_err(|_| exp_err("zero raised to a power"))
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn atom(&mut self) -> Result<RatExpr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'g') => {
                self.pos += 1;
                Ok(RatExpr::g())
            }
            Some(b'l') => {
                let at = self.pos;
                self.pos += 1;
                let d = self.digits();
                let k: usize = d.parse().map_err(|_| ExprError::Syntax { pos: at, msg: "expected coordinate index after 'l'".into() })?;
                if k == 0 || k > MAX_COORDINATE {
                    return Err(ExprError::Syntax { pos: at, msg: format!("coordinate index {k} out of range") });
                }
                Ok(RatExpr::l(k))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let v: BigInt = d.parse().expect("digit string");
                Ok(RatExpr::from_rational(Rational::from_integer(v)))
            }
            Some(_) => Err(self.syntax("unexpected character")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reciprocal() {
        let e = parse_expr("1/(l1-l2)").unwrap();
        assert_eq!(e, RatExpr::one() / RatExpr::lambda(1, 2));
    }

    #[test]
    fn normalises_on_parse() {
        assert_eq!(parse_expr("(l1-l2)^2/(l1-l2)").unwrap(), RatExpr::lambda(1, 2));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_expr("-l1^2").unwrap(), -(RatExpr::l(1) * RatExpr::l(1)));
        assert_eq!(parse_expr("2*l1 + 3 * g").unwrap(), RatExpr::int(2) * RatExpr::l(1) + RatExpr::int(3) * RatExpr::g());
        assert_eq!(parse_expr("1/l1*l2").unwrap(), RatExpr::l(2) / RatExpr::l(1));
        assert_eq!(parse_expr("--3").unwrap(), RatExpr::int(3));
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert!(matches!(parse_expr("l1 +"), Err(ExprError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_expr("(l1"), Err(ExprError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expr("l1 $"), Err(ExprError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expr("l0"), Err(ExprError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_expr("1/(l1-l1)"), Err(ExprError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_expr(""), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn exponent_errors() {
        assert!(matches!(parse_expr("l1^-1"), Err(ExprError::Exponent { pos: 3, .. })));
        assert!(matches!(parse_expr("l1^g"), Err(ExprError::Exponent { .. })));
        assert!(matches!(parse_expr("l1^99999999999"), Err(ExprError::Exponent { .. })));
        assert_eq!(parse_expr("l1^0").unwrap(), RatExpr::one());
    }
}
