//! Literal grammar for rational functions, surface functions and places.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*        left associative
//! factor := '-' factor | atom ['^' ['-'] int]
//! atom   := int | variable | '(' expr ')'
//! ```
//!
//! Rendering any canonical function with `Display` and parsing it back
//! gives the same function.

use num_bigint::BigInt;

use crate::arith::{Field, FieldDescriptor, FieldScalar};
use crate::error::{Error, Result};
use crate::function_field::{Place, Rf};
use crate::surface::{surface_s, surface_t, SurfaceFunction, CURVE_VAR, NORMAL_VAR};

/// Largest accepted exponent magnitude.
pub const MAX_EXPONENT: i64 = 1000;

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

struct Parser<'a, F: Field> {
    src: &'a [u8],
    pos: usize,
    lit: &'a dyn Fn(&BigInt) -> F,
    var: &'a dyn Fn(char) -> Option<F>,
}

impl<F: Field> Parser<'_, F> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }

    fn expr(&mut self) -> Result<F> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<F> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.factor()?;
                acc = acc.div(&d).ok_or_else(|| err(at, "division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<F> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let negative = self.eat(b'-');
        let e: i64 = self
            .integer()?
            .try_into()
            .ok()
            .filter(|e: &i64| *e <= MAX_EXPONENT)
            .ok_or_else(|| err(at, format!("exponent exceeds {MAX_EXPONENT}")))?;
        let e = if negative { -e } else { e };
        base.pow(e).ok_or_else(|| err(at, "negative power of zero"))
    }

    fn atom(&mut self) -> Result<F> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok((self.lit)(&n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
                    return Err(err(at, "variables are single letters"));
                }
                (self.var)(c as char).ok_or_else(|| err(at, format!("variable {:?} is not allowed here", c as char)))
            }
            Some(c) => Err(err(self.pos, format!("unexpected {:?}", c as char))),
            None => Err(err(self.pos, "unexpected end of input")),
        }
    }
}

fn parse_with<F: Field>(text: &str, lit: &dyn Fn(&BigInt) -> F, var: &dyn Fn(char) -> Option<F>) -> Result<F> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, lit, var };
    let value = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(err(p.pos, format!("unexpected {:?}", c as char)));
    }
    Ok(value)
}

/// An element of `k(var)`.
pub fn parse_rational_function(text: &str, field: FieldDescriptor, var: char) -> Result<Rf> {
    let lit = move |n: &BigInt| Rf::constant(FieldScalar::from_bigint(n, field), var);
    let v = move |c: char| (c == var).then(|| Rf::variable(&field, var));
    parse_with(text, &lit, &v)
}

/// An element of `k(s, t)`.
pub fn parse_surface_function(text: &str, field: FieldDescriptor) -> Result<SurfaceFunction> {
    let lit = move |n: &BigInt| {
        SurfaceFunction::constant(Rf::constant(FieldScalar::from_bigint(n, field), CURVE_VAR), NORMAL_VAR)
    };
    let v = move |c: char| match c {
        NORMAL_VAR => Some(surface_t(field)),
        CURVE_VAR => Some(surface_s(field)),
        _ => None,
    };
    parse_with(text, &lit, &v)
}

/// A function on the line (variable `t` only) or on the surface.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expression {
    Curve(Rf),
    Surface(SurfaceFunction),
}

/// Parses over `k(t)` when only `t` occurs and over `k(s, t)` when `s` does.
pub fn parse_expression(text: &str, field: FieldDescriptor) -> Result<Expression> {
    if text.contains(CURVE_VAR) {
        parse_surface_function(text, field).map(Expression::Surface)
    } else {
        parse_rational_function(text, field, NORMAL_VAR).map(Expression::Curve)
    }
}

/// `inf`, or a monic irreducible polynomial in `var`.
pub fn parse_place(text: &str, field: FieldDescriptor, var: char) -> Result<Place> {
    if text.trim() == "inf" {
        return Ok(Place::Infinity);
    }
    let f = parse_rational_function(text, field, var)?;
    if !f.den().is_constant() || f.num().is_constant() {
        return Err(err(0, format!("a place is `inf` or a nonconstant polynomial in {var}, got {text:?}")));
    }
    Place::finite(f.num())
}

/// A field descriptor; an unsupported modulus is reported as a parse error.
pub fn parse_field(text: &str) -> Result<FieldDescriptor> {
    text.parse().map_err(|e| match e {
        Error::Parse { .. } => e,
        other => err(0, other.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldDescriptor = FieldDescriptor::Rational;

    #[test]
    fn basic_forms() {
        let f3 = FieldDescriptor::Prime(3);
        let f = parse_rational_function("(t^2+1)/t", f3, 't').unwrap();
        assert_eq!(f.to_string(), "(t^2+1)/t");
        assert_eq!(parse_rational_function("-t^2", Q, 't').unwrap().to_string(), "-t^2");
        assert_eq!(parse_rational_function("1 - t", Q, 't').unwrap().to_string(), "-t+1");
        assert_eq!(parse_rational_function("2/4/t", Q, 't').unwrap().to_string(), "1/2/t");
        assert_eq!(parse_rational_function("t^-2", Q, 't').unwrap().to_string(), "1/t^2");
        let s = parse_surface_function("s*t + 1", Q).unwrap();
        assert_eq!(s.to_string(), "s*t+1");
        assert!(matches!(parse_expression("s*t + 1", Q), Ok(Expression::Surface(_))));
        assert!(matches!(parse_expression("t^2", Q), Ok(Expression::Curve(_))));
    }

    #[test]
    fn errors() {
        for bad in ["1/0", "t/(t-t)", "(t+1", "t+", "t**2", "x", "0^-1", "t^100000", "tt", "3 4"] {
            assert!(
                matches!(parse_rational_function(bad, Q, 't'), Err(Error::Parse { .. })),
                "{bad} should not parse"
            );
        }
        assert!(matches!(parse_rational_function("s", Q, 't'), Err(Error::Parse { .. })));
    }

    #[test]
    fn places() {
        let f3 = FieldDescriptor::Prime(3);
        assert_eq!(parse_place("inf", f3, 't'), Ok(Place::Infinity));
        assert_eq!(parse_place("t^2+1", f3, 't').unwrap().degree(), 2);
        assert!(parse_place("t^2-1", f3, 't').is_err());
        assert!(parse_place("1/t", f3, 't').is_err());
    }

    #[test]
    fn fields() {
        assert_eq!(parse_field("Fp:7"), Ok(FieldDescriptor::Prime(7)));
        assert_eq!(parse_field("Q"), Ok(Q));
        for bad in ["Fp:4", "Fp:x", "R", "Fp:"] {
            assert!(matches!(parse_field(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    fn small_poly() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-6i64..=6, 1..5)
    }

    fn build(field: FieldDescriptor, num: &[i64], den: &[i64], c: FieldScalar) -> Option<Rf> {
        let n = Rf::from_poly(crate::arith::Polynomial::from_ints(num, &field, 't'));
        let d = Rf::from_poly(crate::arith::Polynomial::from_ints(den, &field, 't'));
        n.div(&d).map(|f| f.mul(&Rf::constant(c, 't')))
    }

    proptest! {
        #[test]
        fn curve_round_trip(num in small_poly(), den in small_poly(), field in prop_oneof![Just(Q), Just(FieldDescriptor::Prime(5))]) {
            if let Some(f) = build(field, &num, &den, FieldScalar::one(&field)) {
                prop_assert_eq!(parse_rational_function(&f.to_string(), field, 't').unwrap(), f);
            }
        }

        #[test]
        fn rational_coefficients_round_trip(num in small_poly(), den in small_poly(), c in 1i64..20) {
            if let Some(f) = build(Q, &num, &den, FieldScalar::rational(c, 7)) {
                prop_assert_eq!(parse_rational_function(&f.to_string(), Q, 't').unwrap(), f);
            }
        }

        #[test]
        fn surface_round_trip(a in small_poly(), b in small_poly(), c in small_poly(), d in small_poly(), e in 0i64..3) {
            let field = Q;
            let poly_s = |cs: &[i64]| crate::arith::Polynomial::from_ints(cs, &field, CURVE_VAR);
            let coef = |x: &[i64], y: &[i64]| Rf::from_poly(poly_s(x)).div(&Rf::from_poly(poly_s(y)));
            if let (Some(c0), Some(c1)) = (coef(&a, &b), coef(&c, &d)) {
                let t = surface_t(field);
                let f = SurfaceFunction::constant(c0, NORMAL_VAR)
                    .add(&SurfaceFunction::constant(c1, NORMAL_VAR).mul(&t.powi(e).unwrap()));
                if let Some(g) = f.div(&t.add(&surface_s(field))) {
                    prop_assert_eq!(parse_surface_function(&g.to_string(), field).unwrap(), g);
                }
            }
        }
    }
}
