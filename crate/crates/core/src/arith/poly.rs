use std::cmp::Ordering;
use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

/// Dense univariate polynomial over a [`Field`].
///
/// Coefficients are stored in ascending order of degree with no trailing
/// zeros, so the zero polynomial is the empty sequence and equality is
/// coefficient equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<F: Field> {
    coeffs: Vec<F>,
    ctx: F::Ctx,
    var: char,
}

impl<F: Field> Polynomial<F> {
    pub fn new(coeffs: Vec<F>, ctx: F::Ctx, var: char) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.ctx() == ctx));
        let mut p = Polynomial { coeffs, ctx, var };
        p.normalize();
        p
    }

    pub fn zero(ctx: &F::Ctx, var: char) -> Self {
        Polynomial {
            coeffs: Vec::new(),
            ctx: ctx.clone(),
            var,
        }
    }

    pub fn one(ctx: &F::Ctx, var: char) -> Self {
        Self::constant(F::one(ctx), var)
    }

    pub fn constant(c: F, var: char) -> Self {
        let ctx = c.ctx();
        Self::new(vec![c], ctx, var)
    }

    /// `c * var^e`.
    pub fn monomial(c: F, e: usize, var: char) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![F::zero(&ctx); e];
        coeffs.push(c);
        Self::new(coeffs, ctx, var)
    }

    /// The polynomial `var` itself.
    pub fn identity(ctx: &F::Ctx, var: char) -> Self {
        Self::monomial(F::one(ctx), 1, var)
    }

    pub fn from_ints(coeffs: &[i64], ctx: &F::Ctx, var: char) -> Self {
        let cs = coeffs.iter().map(|&c| F::from_int(c, ctx)).collect();
        Self::new(cs, ctx.clone(), var)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn var(&self) -> char {
        self.var
    }

    /// Same coefficients, renamed variable.
    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Exponent of the lowest nonzero term.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::MixedField(format!("{:?}", self.ctx), format!("{:?}", other.ctx)));
        }
        if self.var != other.var {
            return Err(Error::MixedVariable(self.var, other.var));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let cs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Self::new(cs, self.ctx.clone(), self.var)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let cs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        Self::new(cs, self.ctx.clone(), self.var)
    }

    pub fn neg(&self) -> Self {
        let cs = self.coeffs.iter().map(F::neg).collect();
        Self::new(cs, self.ctx.clone(), self.var)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx, self.var);
        }
        let mut cs = vec![F::zero(&self.ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                cs[i + j] = cs[i + j].add(&a.mul(b));
            }
        }
        Self::new(cs, self.ctx.clone(), self.var)
    }

    pub fn scale(&self, c: &F) -> Self {
        let cs = self.coeffs.iter().map(|a| a.mul(c)).collect();
        Self::new(cs, self.ctx.clone(), self.var)
    }

    /// Multiply by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut cs = vec![F::zero(&self.ctx); k];
        cs.extend(self.coeffs.iter().cloned());
        Self::new(cs, self.ctx.clone(), self.var)
    }

    /// Exact division by `var^k`; the low `k` coefficients are discarded.
    pub fn shift_down(&self, k: usize) -> Self {
        let cs = self.coeffs.iter().skip(k).cloned().collect();
        Self::new(cs, self.ctx.clone(), self.var)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx, self.var);
        let mut sq = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead_inv = divisor.leading()?.inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(&self.ctx, self.var), self.clone()));
        }
        let mut quot = vec![F::zero(&self.ctx); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].mul(&lead_inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = rem[idx].sub(&q.mul(d));
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Some((
            Self::new(quot, self.ctx.clone(), self.var),
            Self::new(rem, self.ctx.clone(), self.var),
        ))
    }

    pub fn rem(&self, divisor: &Self) -> Option<Self> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Exact quotient, `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.gcd_unchecked(other))
    }

    pub(crate) fn gcd_unchecked(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let zero = Self::zero(&self.ctx, self.var);
        let one = Self::one(&self.ctx, self.var);
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&F::from_int(i as i64, &self.ctx)))
            .collect();
        Self::new(cs, self.ctx.clone(), self.var)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(&self.ctx), |acc, c| acc.mul(x).add(c))
    }

    /// Substitutes another polynomial (possibly over the same field in a
    /// different variable) for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(&inner.ctx, inner.var), |acc, c| {
                acc.mul(inner).add(&Self::constant(c.clone(), inner.var))
            })
    }

    /// Coefficient-wise change of field.
    pub fn map_coeffs<G: Field>(&self, ctx: &G::Ctx, var: char, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::new(self.coeffs.iter().map(f).collect(), ctx.clone(), var)
    }

    /// Coefficients reversed with respect to degree `n >= deg`:
    /// `var^n * p(1/var)`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut cs: Vec<F> = (0..=n).map(|i| self.coeff(i)).collect();
        cs.reverse();
        Self::new(cs, self.ctx.clone(), self.var)
    }

    /// `self^e mod m` by square-and-multiply over the bits of `e` (big-endian).
    pub fn pow_mod_bits(&self, bits: impl DoubleEndedIterator<Item = bool>, m: &Self) -> Self {
        let mut acc = Self::one(&self.ctx, self.var).rem(m).expect("nonzero modulus");
        let base = self.rem(m).expect("nonzero modulus");
        for bit in bits {
            acc = acc.mul(&acc).rem(m).expect("nonzero modulus");
            if bit {
                acc = acc.mul(&base).rem(m).expect("nonzero modulus");
            }
        }
        acc
    }

    pub fn pow_mod(&self, e: u64, m: &Self) -> Self {
        let bits = (0..64).rev().map(move |i| (e >> i) & 1 == 1);
        self.pow_mod_bits(bits, m)
    }

    /// Resultant `Res(self, other)` by the Euclidean recurrence.
    pub fn resultant(&self, other: &Self) -> F {
        let zero = F::zero(&self.ctx);
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return zero;
        };
        if n == 0 {
            return other.coeffs[0].pow(m as i64).expect("nonnegative power");
        }
        if m == 0 {
            return self.coeffs[0].pow(n as i64).expect("nonnegative power");
        }
        let r = self.rem(other).expect("nonzero divisor");
        let Some(dr) = r.degree() else {
            return zero;
        };
        // res(a, b) = (-1)^{mn} lc(b)^{m - deg r} res(b, r)
        let lc = other.leading().expect("nonzero").pow((m - dr) as i64).expect("power");
        let mut val = lc.mul(&other.resultant(&r));
        if (m * n) % 2 == 1 {
            val = val.neg();
        }
        val
    }

    /// Lexicographic order on coefficients from the top degree down, after
    /// comparing degrees. Used for deterministic sorting of factors.
    pub fn cmp_by_degree_then_coeffs(&self, other: &Self) -> Ordering
    where
        F: Ord,
    {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (negative, body) = match s.strip_prefix('-') {
                Some(rest) if !has_top_level_sum(rest) => (true, rest.to_string()),
                _ => (false, s),
            };
            if negative {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let body = if has_top_level_sum(&body) { format!("({body})") } else { body };
            if i == 0 {
                write!(f, "{body}")?;
                continue;
            }
            if body != "1" {
                write!(f, "{body}*")?;
            }
            write!(f, "{}", self.var)?;
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        Ok(())
    }
}

/// True when a printed coefficient contains a top-level `+` or binary `-`,
/// so it must be parenthesized as a factor.
pub(crate) fn has_top_level_sum(s: &str) -> bool {
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => return true,
            '-' if depth == 0 && prev.is_some_and(|p| p != '(' && p != '^' && p != '*' && p != '/') => {
                return true
            }
            _ => {}
        }
        prev = Some(ch);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FieldDescriptor, FieldScalar};

    fn poly(cs: &[i64], field: FieldDescriptor) -> Polynomial<FieldScalar> {
        Polynomial::from_ints(cs, &field, 't')
    }

    #[test]
    fn gcd_examples() {
        let q = FieldDescriptor::Rational;
        // gcd(t^2 - 1, t - 1) = t - 1
        let g = poly(&[-1, 0, 1], q).gcd(&poly(&[-1, 1], q)).unwrap();
        assert_eq!(g, poly(&[-1, 1], q));
        // gcd(f, 0) = monic(f)
        let f = poly(&[2, 4], q);
        assert_eq!(f.gcd(&Polynomial::zero(&q, 't')).unwrap(), f.monic());
        // gcd(0, 0) = 0
        assert!(Polynomial::<FieldScalar>::zero(&q, 't')
            .gcd(&Polynomial::zero(&q, 't'))
            .unwrap()
            .is_zero());
        // gcd(t^2 + 1, t^3 + t) over F_3 = t^2 + 1
        let f3 = FieldDescriptor::Prime(3);
        let g = poly(&[1, 0, 1], f3).gcd(&poly(&[0, 1, 0, 1], f3)).unwrap();
        assert_eq!(g, poly(&[1, 0, 1], f3));
    }

    #[test]
    fn gcd_rejects_mixed_fields() {
        let a = poly(&[1, 1], FieldDescriptor::Prime(5));
        let b = poly(&[1, 1], FieldDescriptor::Prime(7));
        assert!(matches!(a.gcd(&b), Err(Error::MixedField(..))));
        let c = poly(&[1, 1], FieldDescriptor::Prime(5)).with_var('s');
        assert!(matches!(a.gcd(&c), Err(Error::MixedVariable('t', 's'))));
    }

    #[test]
    fn division_and_xgcd() {
        let q = FieldDescriptor::Rational;
        let a = poly(&[1, 2, 3, 4], q);
        let b = poly(&[5, 0, 1], q);
        let (qq, r) = a.div_rem(&b).unwrap();
        assert_eq!(qq.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert!(g.is_monic());
    }

    #[test]
    fn resultant_matches_root_product() {
        let q = FieldDescriptor::Rational;
        // Res((t-1)(t-2), t-3) = (1-3)(2-3) = 2
        let a = poly(&[2, -3, 1], q);
        let b = poly(&[-3, 1], q);
        assert_eq!(a.resultant(&b), FieldScalar::rational(2, 1));
        // symmetric up to sign (-1)^{2*1}
        assert_eq!(b.resultant(&a), FieldScalar::rational(2, 1));
    }

    #[test]
    fn display_forms() {
        let q = FieldDescriptor::Rational;
        assert_eq!(poly(&[1, 0, 1], q).to_string(), "t^2+1");
        assert_eq!(poly(&[1, -1], q).to_string(), "-t+1");
        assert_eq!(poly(&[0, 0, 0, 2], q).to_string(), "2*t^3");
        let half = Polynomial::constant(FieldScalar::rational(-1, 2), 't').mul(&poly(&[0, 1], q));
        assert_eq!(half.to_string(), "-1/2*t");
        assert_eq!(Polynomial::<FieldScalar>::zero(&q, 't').to_string(), "0");
    }
}
