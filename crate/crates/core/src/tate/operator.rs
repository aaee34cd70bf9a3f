use std::fmt;

use crate::arith::{Field, FieldScalar};
use crate::error::{Error, Result};

use super::lattice::{MonomialLattice, MonomialSet};

/// `u^i ↦ c·u^{i+m}`: multiplication by `c·u^m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOperator {
    c: FieldScalar,
    m: i64,
}

impl MonomialOperator {
    pub fn new(c: FieldScalar, m: i64) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroInput("monomial operator scalar"));
        }
        Ok(MonomialOperator { c, m })
    }

    /// Pure shift `u^m` with unit scalar.
    pub fn shift(m: i64, field: crate::arith::FieldDescriptor) -> Self {
        MonomialOperator {
            c: FieldScalar::one(&field),
            m,
        }
    }

    pub fn scalar(&self) -> &FieldScalar {
        &self.c
    }

    pub fn exponent(&self) -> i64 {
        self.m
    }

    pub fn compose(&self, other: &Self) -> Self {
        MonomialOperator {
            c: self.c.mul(&other.c),
            m: self.m + other.m,
        }
    }

    /// Image of a monomial set.
    pub fn apply(&self, s: &MonomialSet) -> MonomialSet {
        s.shift(self.m)
    }
}

impl fmt::Display for MonomialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*u^{}", self.c, self.m)
    }
}

/// `i(σ, S) = |S \ σS| - |σS \ S|`, defined when `σS ∼ S`.
pub fn set_index(m: i64, s: &MonomialSet) -> Result<i64> {
    let image = s.shift(m);
    let lost = s.difference(&image).count();
    let gained = image.difference(s).count();
    match (lost, gained) {
        (Some(a), Some(b)) => Ok(a as i64 - b as i64),
        _ => Err(Error::NotStabilized(s.to_string())),
    }
}

/// Index of a single monomial operator on a one-slot lattice, or of the
/// same operator acting diagonally on every slot.
pub fn lattice_index(sigma: &MonomialOperator, a: &MonomialLattice) -> Result<i64> {
    a.slots().iter().map(|s| set_index(sigma.m, s)).sum()
}

/// A monomial operator per slot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagonalOperator {
    parts: Vec<MonomialOperator>,
}

impl DiagonalOperator {
    pub fn new(parts: Vec<MonomialOperator>) -> Self {
        assert!(!parts.is_empty(), "a diagonal operator has at least one slot");
        DiagonalOperator { parts }
    }

    pub fn parts(&self) -> &[MonomialOperator] {
        &self.parts
    }

    pub fn index(&self, a: &MonomialLattice) -> Result<i64> {
        if a.n_slots() != self.parts.len() {
            return Err(Error::domain(format!(
                "operator has {} slots, lattice has {}",
                self.parts.len(),
                a.n_slots()
            )));
        }
        self.parts.iter().zip(a.slots()).map(|(op, s)| set_index(op.m, s)).sum()
    }
}

/// Both sides of `i(σ,A) + i(σ,B) = i(σ,A+B) + i(σ,A∩B)`.
pub fn index_additivity_sides(sigma: &MonomialOperator, a: &MonomialLattice, b: &MonomialLattice) -> Result<(i64, i64)> {
    let lhs = lattice_index(sigma, a)? + lattice_index(sigma, b)?;
    let rhs = lattice_index(sigma, &a.sum(b))? + lattice_index(sigma, &a.intersect(b))?;
    Ok((lhs, rhs))
}

pub fn index_additivity_check(sigma: &MonomialOperator, a: &MonomialLattice, b: &MonomialLattice) -> Result<bool> {
    let (l, r) = index_additivity_sides(sigma, a, b)?;
    Ok(l == r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldDescriptor;

    fn lat(s: &str) -> MonomialLattice {
        s.parse().unwrap()
    }

    fn shift(m: i64) -> MonomialOperator {
        MonomialOperator::shift(m, FieldDescriptor::Rational)
    }

    #[test]
    fn index_examples() {
        assert_eq!(lattice_index(&shift(3), &lat("ray:0")), Ok(3));
        assert_eq!(lattice_index(&shift(0), &lat("ray:4;add:-1")), Ok(0));
        assert_eq!(lattice_index(&shift(1), &lat("ray:0;add:-2")), Ok(1));
        assert_eq!(lattice_index(&shift(-2), &lat("down:0")), Ok(2));
    }

    #[test]
    fn additivity_examples() {
        assert_eq!(index_additivity_sides(&shift(2), &lat("ray:0"), &lat("ray:1")), Ok((4, 4)));
        assert_eq!(
            index_additivity_sides(&shift(-1), &lat("ray:0"), &lat("ray:0;del:4")),
            Ok((-2, -2))
        );
    }

    #[test]
    fn periodic_sets_need_compatible_shift() {
        let evens = lat("mod:2:0;from:0");
        assert_eq!(lattice_index(&shift(2), &evens), Ok(1));
        assert!(matches!(lattice_index(&shift(1), &evens), Err(Error::NotStabilized(_))));
    }

    #[test]
    fn rejects_zero_scalar() {
        let zero = FieldScalar::rational(0, 1);
        assert!(MonomialOperator::new(zero, 1).is_err());
    }
}
