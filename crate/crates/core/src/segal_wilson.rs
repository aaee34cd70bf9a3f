//! The algebraic Segal–Wilson cocycle `c(f, g) = exp_{z²}(½ res(f dg))` with
//! values in `Q[[z]]` truncated at a fixed order.

use std::fmt;

use crate::arith::{Field, FieldDescriptor, FieldScalar};
use crate::error::{Error, Result};
use crate::function_field::{joint_support, Place, Rf};
use crate::group::GroupValue;
use crate::report::{SymbolKind, Verification};
use crate::tate::{classical_residue, residue_on_set, MonomialSet};

/// `c_0 + c_1 z + ... + c_N z^N` over `Q`, arithmetic modulo `z^{N+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedPowerSeries {
    coeffs: Vec<FieldScalar>,
}

impl TruncatedPowerSeries {
    /// Coefficients `c_0..c_N`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<FieldScalar>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        debug_assert!(coeffs.iter().all(|c| c.descriptor() == FieldDescriptor::Rational));
        TruncatedPowerSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![FieldScalar::rational(0, 1); order + 1];
        coeffs[0] = FieldScalar::rational(1, 1);
        Self::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldScalar] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.order())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(FieldScalar::rational(0, 1), |acc, i| acc.add(&self.coeffs[i].mul(&other.coeffs[k - i])))
            })
            .collect();
        Self::new(coeffs)
    }

    /// Multiplicative inverse; `None` unless `c_0 ≠ 0`.
    pub fn inverse(&self) -> Option<Self> {
        let c0_inv = self.coeffs[0].inv()?;
        let mut out: Vec<FieldScalar> = Vec::with_capacity(self.coeffs.len());
        for k in 0..self.coeffs.len() {
            let mut acc = if k == 0 { FieldScalar::rational(1, 1) } else { FieldScalar::rational(0, 1) };
            for j in 1..=k {
                acc = acc.sub(&self.coeffs[j].mul(&out[k - j]));
            }
            out.push(acc.mul(&c0_inv));
        }
        Some(Self::new(out))
    }
}

impl fmt::Display for TruncatedPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                1 if c.is_one() => "z".to_string(),
                1 => format!("{c}*z"),
                _ if c.is_one() => format!("z^{i}"),
                _ => format!("{c}*z^{i}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} + O(z^{})", terms.join(" + "), self.order() + 1)
    }
}

/// `Σ_{2n ≤ N} a^n z^{2n} / n!`.
pub fn exp_z2(a: &FieldScalar, order: usize) -> Result<TruncatedPowerSeries> {
    if a.descriptor() != FieldDescriptor::Rational {
        return Err(Error::domain("exp_z2 needs a characteristic-zero ground field"));
    }
    let mut coeffs = vec![FieldScalar::rational(0, 1); order + 1];
    let mut term = FieldScalar::rational(1, 1);
    for n in 0..=order / 2 {
        if n > 0 {
            term = term.mul(a).mul(&FieldScalar::rational(1, n as i64));
        }
        coeffs[2 * n] = term.clone();
    }
    Ok(TruncatedPowerSeries::new(coeffs))
}

fn half(a: &FieldScalar) -> FieldScalar {
    a.mul(&FieldScalar::rational(1, 2))
}

/// `c_{A_x}(f, g) = exp_{z²}(½ res_x(f dg))`.
pub fn cocycle_c(f: &Rf, g: &Rf, x: &Place, order: usize) -> Result<TruncatedPowerSeries> {
    if *f.coeff_ctx() != FieldDescriptor::Rational {
        return Err(Error::domain("the Segal-Wilson cocycle needs a characteristic-zero ground field"));
    }
    exp_z2(&half(&classical_residue(f, g, x)?), order)
}

/// The cocycle for the monomial lattice `S` at `x` in place of `A_x`.
pub fn cocycle_on_set(f: &Rf, g: &Rf, x: &Place, s: &MonomialSet, order: usize) -> Result<TruncatedPowerSeries> {
    if *f.coeff_ctx() != FieldDescriptor::Rational {
        return Err(Error::domain("the Segal-Wilson cocycle needs a characteristic-zero ground field"));
    }
    exp_z2(&half(&residue_on_set(f, g, x, s)?), order)
}

/// `Π_x c_x(f, g) = 1` over the joint support and infinity.
pub fn sw_verify(f: &Rf, g: &Rf, order: usize, seed: u64) -> Result<Verification> {
    let mut places = joint_support(&[f, g], seed)?;
    if !places.contains(&Place::Infinity) {
        places.push(Place::Infinity);
    }
    let mut values = Vec::new();
    for x in places {
        let c = cocycle_c(f, g, &x, order)?;
        values.push((x, GroupValue::Series(c)));
    }
    Ok(Verification::from_values(
        SymbolKind::SegalWilson,
        FieldDescriptor::Rational,
        values,
        GroupValue::Series(TruncatedPowerSeries::one(order)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> FieldScalar {
        FieldScalar::rational(n, d)
    }

    #[test]
    fn exp_examples() {
        assert!(exp_z2(&q(0, 1), 8).unwrap().is_one());
        assert_eq!(
            exp_z2(&q(1, 2), 4).unwrap().coeffs(),
            &[q(1, 1), q(0, 1), q(1, 2), q(0, 1), q(1, 8)]
        );
        assert_eq!(
            exp_z2(&q(1, 1), 6).unwrap().coeffs(),
            &[q(1, 1), q(0, 1), q(1, 1), q(0, 1), q(1, 2), q(0, 1), q(1, 6)]
        );
        assert!(exp_z2(&FieldScalar::modular(1, 5), 4).is_err());
    }

    #[test]
    fn group_law() {
        let a = q(3, 7);
        let b = q(-5, 2);
        let lhs = exp_z2(&a, 12).unwrap().mul(&exp_z2(&b, 12).unwrap());
        assert_eq!(lhs, exp_z2(&a.add(&b), 12).unwrap());
        let s = exp_z2(&a, 12).unwrap();
        assert!(s.mul(&s.inverse().unwrap()).is_one());
    }

    #[test]
    fn display() {
        assert_eq!(exp_z2(&q(1, 2), 4).unwrap().to_string(), "1 + 1/2*z^2 + 1/8*z^4 + O(z^5)");
    }
}
