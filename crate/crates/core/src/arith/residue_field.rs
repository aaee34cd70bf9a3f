use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::poly::Polynomial;
use super::scalar::{FieldDescriptor, FieldScalar};

type Poly = Polynomial<FieldScalar>;

/// Variable used for representatives of residue classes.
pub const RESIDUE_VAR: char = 'T';

/// A class in `k[T]/(π)` for a monic irreducible `π`.
///
/// The representative always has degree below `deg π`. The modulus is shared
/// between all elements of one residue field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResidueFieldElem {
    rep: Poly,
    modulus: Arc<Poly>,
}

impl ResidueFieldElem {
    pub fn new(rep: &Poly, modulus: &Arc<Poly>) -> Self {
        debug_assert!(modulus.is_monic());
        let rep = rep.clone().with_var(RESIDUE_VAR).rem(modulus).expect("nonzero modulus");
        ResidueFieldElem {
            rep,
            modulus: Arc::clone(modulus),
        }
    }

    pub fn from_scalar(c: FieldScalar, modulus: &Arc<Poly>) -> Self {
        Self::new(&Poly::constant(c, RESIDUE_VAR), modulus)
    }

    /// The class of `T` itself.
    pub fn generator(modulus: &Arc<Poly>) -> Self {
        Self::new(&Poly::identity(modulus.ctx(), RESIDUE_VAR), modulus)
    }

    /// Residue-field context for a monic modulus, renamed to `T`.
    pub fn context(pi: &Poly) -> Arc<Poly> {
        Arc::new(pi.monic().with_var(RESIDUE_VAR))
    }

    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    pub fn modulus(&self) -> &Arc<Poly> {
        &self.modulus
    }

    pub fn field(&self) -> FieldDescriptor {
        *self.modulus.ctx()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("nonzero modulus")
    }

    /// The element as a ground-field scalar, if it is constant.
    pub fn as_scalar(&self) -> Option<FieldScalar> {
        self.rep
            .is_constant()
            .then(|| self.rep.coeff(0))
    }
}

impl fmt::Display for ResidueFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl Field for ResidueFieldElem {
    type Ctx = Arc<Poly>;

    fn ctx(&self) -> Arc<Poly> {
        Arc::clone(&self.modulus)
    }

    fn zero(ctx: &Arc<Poly>) -> Self {
        ResidueFieldElem {
            rep: Poly::zero(ctx.ctx(), RESIDUE_VAR),
            modulus: Arc::clone(ctx),
        }
    }

    fn one(ctx: &Arc<Poly>) -> Self {
        Self::from_scalar(FieldScalar::one(ctx.ctx()), ctx)
    }

    fn from_int(n: i64, ctx: &Arc<Poly>) -> Self {
        Self::from_scalar(FieldScalar::from_int(n, ctx.ctx()), ctx)
    }

    fn characteristic(ctx: &Arc<Poly>) -> u64 {
        ctx.ctx().characteristic()
    }

    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "mixed residue fields");
        ResidueFieldElem {
            rep: self.rep.add(&other.rep),
            modulus: Arc::clone(&self.modulus),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "mixed residue fields");
        ResidueFieldElem {
            rep: self.rep.sub(&other.rep),
            modulus: Arc::clone(&self.modulus),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "mixed residue fields");
        Self::new(&self.rep.mul(&other.rep), &self.modulus)
    }

    fn neg(&self) -> Self {
        ResidueFieldElem {
            rep: self.rep.neg(),
            modulus: Arc::clone(&self.modulus),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = self.rep.xgcd(&self.modulus);
        g.is_constant().then(|| Self::new(&s, &self.modulus))
    }
}

/// Norm `N_{k(x)/k}`: the determinant of multiplication by `a`, computed as
/// `Res(π, a)` for monic `π`.
pub fn rf_norm(a: &ResidueFieldElem) -> FieldScalar {
    a.modulus.resultant(&a.rep)
}

/// Trace `tr_{k(x)/k}`: `Σ a_j p_j` where `p_j` are the power sums of the
/// roots of `π`, obtained from Newton's identities.
pub fn rf_trace(a: &ResidueFieldElem) -> FieldScalar {
    let field = a.field();
    let sums = power_sums(&a.modulus);
    a.rep
        .coeffs()
        .iter()
        .zip(&sums)
        .fold(FieldScalar::zero(&field), |acc, (c, p)| acc.add(&c.mul(p)))
}

/// `p_0 .. p_{d-1}` for monic `π` of degree `d`.
fn power_sums(pi: &Poly) -> Vec<FieldScalar> {
    let field = *pi.ctx();
    let d = pi.degree().expect("nonzero modulus");
    // c(i) is the coefficient of T^{d-i}
    let c = |i: usize| pi.coeff(d - i);
    let mut p = vec![FieldScalar::from_int(d as i64, &field)];
    for k in 1..d {
        // p_k = -(c_1 p_{k-1} + ... + c_{k-1} p_1 + k c_k)
        let mut acc = c(k).mul(&FieldScalar::from_int(k as i64, &field));
        for i in 1..k {
            acc = acc.add(&c(i).mul(&p[k - i]));
        }
        p.push(acc.neg());
    }
    p
}
