use std::fmt;

use crate::arith::{has_top_level_sum, Field, FieldScalar, Polynomial};
use crate::error::{Error, Result};

/// A quotient of coprime polynomials with monic denominator.
///
/// The normal form is canonical, so structural equality is equality of
/// functions. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction<F: Field> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

/// Elements of `k(t)` (or `k(s)`) over the ground field.
pub type Rf = RationalFunction<FieldScalar>;

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self> {
        num.check_compatible(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial<F>, den: Polynomial<F>) -> Self {
        if num.is_zero() {
            let one = Polynomial::one(den.ctx(), den.var());
            return RationalFunction { num, den: one };
        }
        let (num, den) = if num.is_constant() || den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd_unchecked(&den);
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Self::monic_den(num, den)
    }

    /// Scales a coprime pair so the denominator is monic.
    fn monic_den(num: Polynomial<F>, den: Polynomial<F>) -> Self {
        let lc_inv = den.leading().expect("nonzero").inv().expect("nonzero");
        RationalFunction {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        }
    }

    pub fn from_poly(p: Polynomial<F>) -> Self {
        let one = Polynomial::one(p.ctx(), p.var());
        RationalFunction { num: p, den: one }
    }

    pub fn constant(c: F, var: char) -> Self {
        Self::from_poly(Polynomial::constant(c, var))
    }

    pub fn variable(ctx: &F::Ctx, var: char) -> Self {
        Self::from_poly(Polynomial::identity(ctx, var))
    }

    pub fn num(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<F> {
        &self.den
    }

    pub fn var(&self) -> char {
        self.num.var()
    }

    pub fn coeff_ctx(&self) -> &F::Ctx {
        self.num.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value if the function is constant.
    pub fn as_constant(&self) -> Option<F> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        self.num.check_compatible(&other.num)
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Field::div(self, other)
    }

    /// Integer power; `None` for a negative power of zero.
    pub fn powi(&self, e: i64) -> Option<Self> {
        Field::pow(self, e)
    }

    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::normalized(n, self.den.mul(&self.den))
    }

    /// Value at a point of the coefficient field; `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        self.num.eval(x).div(&self.den.eval(x))
    }

    /// Same function, variable renamed.
    pub fn with_var(self, var: char) -> Self {
        RationalFunction {
            num: self.num.with_var(var),
            den: self.den.with_var(var),
        }
    }
}

impl<F: Field> Field for RationalFunction<F> {
    type Ctx = (F::Ctx, char);

    fn ctx(&self) -> Self::Ctx {
        (self.num.ctx().clone(), self.var())
    }

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_poly(Polynomial::zero(&ctx.0, ctx.1))
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_poly(Polynomial::one(&ctx.0, ctx.1))
    }

    fn from_int(n: i64, ctx: &Self::Ctx) -> Self {
        Self::constant(F::from_int(n, &ctx.0), ctx.1)
    }

    fn characteristic(ctx: &Self::Ctx) -> u64 {
        F::characteristic(&ctx.0)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        let n = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::normalized(n, self.den.mul(&other.den))
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx());
        }
        // both operands are reduced, so only cross cancellation can occur
        let cancel = |n: &Polynomial<F>, d: &Polynomial<F>| {
            if n.is_constant() || d.is_constant() {
                (n.clone(), d.clone())
            } else {
                let g = n.gcd_unchecked(d);
                (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
            }
        };
        let (n1, d2) = cancel(&self.num, &other.den);
        let (n2, d1) = cancel(&other.num, &self.den);
        Self::monic_den(n1.mul(&n2), d1.mul(&d2))
    }

    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::monic_den(self.den.clone(), self.num.clone()))
    }
}

/// True when a printed polynomial is a single factor that can follow `/`
/// without parentheses.
fn is_atomic(s: &str) -> bool {
    !has_top_level_sum(s) && !s.starts_with('-') && !s.contains(['*', '/'])
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.to_string();
        if self.den.is_one() {
            return write!(f, "{num}");
        }
        let den = self.den.to_string();
        let num = if has_top_level_sum(&num) { format!("({num})") } else { num };
        let den = if is_atomic(&den) { den } else { format!("({den})") };
        write!(f, "{num}/{den}")
    }
}

impl<F: Field> Polynomial<F> {
    fn is_one(&self) -> bool {
        self.degree() == Some(0) && self.coeff(0).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldDescriptor;

    fn poly(cs: &[i64], field: FieldDescriptor) -> Polynomial<FieldScalar> {
        Polynomial::from_ints(cs, &field, 't')
    }

    #[test]
    fn normal_form_is_canonical() {
        let q = FieldDescriptor::Rational;
        // (2t^2 - 2) / (4t - 4) = (t + 1)/2
        let f = Rf::new(poly(&[-2, 0, 2], q), poly(&[-4, 4], q)).unwrap();
        assert!(f.den().is_one());
        assert_eq!(f.num(), &poly(&[1, 1], q).scale(&FieldScalar::rational(1, 2)));
        let zero = Rf::new(Polynomial::zero(&q, 't'), poly(&[3, 1], q)).unwrap();
        assert_eq!(zero, Rf::zero(&(q, 't')));
    }

    #[test]
    fn rejects_zero_denominator_and_mixed_fields() {
        let q = FieldDescriptor::Rational;
        assert_eq!(
            Rf::new(poly(&[1], q), Polynomial::zero(&q, 't')),
            Err(Error::DivisionByZero)
        );
        assert!(matches!(
            Rf::new(poly(&[1], q), poly(&[1], FieldDescriptor::Prime(5))),
            Err(Error::MixedField(..))
        ));
    }

    #[test]
    fn arithmetic_and_derivative() {
        let f5 = FieldDescriptor::Prime(5);
        let t = Rf::variable(&f5, 't');
        let one = Rf::one(&(f5, 't'));
        let f = one.div(&t.sub(&one)).unwrap();
        // d/dt 1/(t-1) = -1/(t-1)^2
        let expect = f.mul(&f).neg();
        assert_eq!(f.derivative(), expect);
        assert_eq!(f.mul(&f.inv().unwrap()), one);
    }

    #[test]
    fn display() {
        let q = FieldDescriptor::Rational;
        let f = Rf::new(poly(&[1, 0, 1], q), poly(&[0, 1], q)).unwrap();
        assert_eq!(f.to_string(), "(t^2+1)/t");
        let g = Rf::new(poly(&[0, -1], q), poly(&[1, 2], q)).unwrap();
        assert_eq!(g.to_string(), "-1/2*t/(t+1/2)");
        let h = Rf::new(poly(&[3], q), poly(&[0, 0, 1], q)).unwrap();
        assert_eq!(h.to_string(), "3/t^2");
    }
}
