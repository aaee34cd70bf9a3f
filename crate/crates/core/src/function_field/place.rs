use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::arith::{factor, Field, FieldDescriptor, FieldScalar, Poly, Polynomial, ResidueFieldElem, DEFAULT_SEED};
use crate::error::{Error, Result};

use super::rational::Rf;

/// A closed point of the projective line over the ground field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Place {
    /// Zero locus of a monic irreducible polynomial.
    Finite(Poly),
    Infinity,
}

impl Place {
    /// A finite place, after checking that `pi` is irreducible. The
    /// polynomial is made monic.
    pub fn finite(pi: &Poly) -> Result<Self> {
        let pi = pi.monic();
        let fac = factor(&pi, DEFAULT_SEED)?;
        match fac.factors.as_slice() {
            [one] if one.multiplicity == 1 && one.certified => Ok(Place::Finite(pi)),
            [one] if one.multiplicity == 1 => Err(Error::UncertifiedFactor(pi.to_string())),
            _ => Err(Error::domain(format!("{pi} is not irreducible"))),
        }
    }

    /// The rational place `var = a`.
    pub fn rational(a: FieldScalar, var: char) -> Self {
        let field = a.descriptor();
        Place::Finite(Polynomial::new(vec![a.neg(), FieldScalar::one(&field)], field, var))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(pi) => pi.degree().expect("nonzero"),
            Place::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// Modulus of the residue field `k(x)`: `π`, or `T` at infinity.
    pub fn residue_context(&self, field: FieldDescriptor) -> Arc<Poly> {
        match self {
            Place::Finite(pi) => ResidueFieldElem::context(pi),
            Place::Infinity => ResidueFieldElem::context(&Poly::identity(&field, 'T')),
        }
    }

    fn check_var(&self, f: &Rf) -> Result<()> {
        match self {
            Place::Finite(pi) if pi.var() != f.var() => Err(Error::MixedVariable(f.var(), pi.var())),
            Place::Finite(pi) if pi.ctx() != f.coeff_ctx() => {
                Err(Error::MixedField(f.coeff_ctx().to_string(), pi.ctx().to_string()))
            }
            _ => Ok(()),
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, _) => Ordering::Greater,
            (_, Place::Infinity) => Ordering::Less,
            (Place::Finite(a), Place::Finite(b)) => a.cmp_by_degree_then_coeffs(b),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(pi) => write!(f, "{pi}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// Multiplicity of `pi` in a nonzero polynomial.
fn multiplicity(p: &Poly, pi: &Poly) -> i64 {
    let mut p = p.clone();
    let mut k = 0;
    while let Some(q) = p.div_exact(pi) {
        p = q;
        k += 1;
    }
    k
}

/// `v_x(f)`; zero has no finite valuation and is rejected.
pub fn valuation(f: &Rf, x: &Place) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroInput("valuation"));
    }
    x.check_var(f)?;
    Ok(match x {
        Place::Finite(pi) => multiplicity(f.num(), pi) - multiplicity(f.den(), pi),
        Place::Infinity => deg(f.den()) - deg(f.num()),
    })
}

fn deg(p: &Poly) -> i64 {
    p.degree().expect("nonzero") as i64
}

/// The class of a unit `f` in the residue field `k(x)`.
pub fn evaluate(f: &Rf, x: &Place) -> Result<ResidueFieldElem> {
    if valuation(f, x)? != 0 {
        return Err(Error::NotAUnit(f.to_string(), x.to_string()));
    }
    let field = *f.coeff_ctx();
    let ctx = x.residue_context(field);
    Ok(match x {
        Place::Finite(_) => {
            let n = ResidueFieldElem::new(f.num(), &ctx);
            let d = ResidueFieldElem::new(f.den(), &ctx);
            n.mul(&d.inv().expect("unit denominator"))
        }
        Place::Infinity => {
            let ratio = f.num().leading().expect("nonzero").div(f.den().leading().expect("nonzero")).expect("nonzero");
            ResidueFieldElem::from_scalar(ratio, &ctx)
        }
    })
}

/// All places where `f` has nonzero valuation, in place order.
pub fn support(f: &Rf) -> Result<Vec<(Place, i64)>> {
    support_seeded(f, DEFAULT_SEED)
}

pub fn support_seeded(f: &Rf, seed: u64) -> Result<Vec<(Place, i64)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("support"));
    }
    let mut out = Vec::new();
    for (p, sign) in [(f.num(), 1i64), (f.den(), -1i64)] {
        if p.is_constant() {
            continue;
        }
        for fac in factor(p, seed)?.factors {
            if !fac.certified {
                return Err(Error::UncertifiedFactor(fac.poly.to_string()));
            }
            out.push((Place::Finite(fac.poly), sign * fac.multiplicity as i64));
        }
    }
    let v_inf = deg(f.den()) - deg(f.num());
    if v_inf != 0 {
        out.push((Place::Infinity, v_inf));
    }
    out.sort();
    Ok(out)
}

/// Union of the supports of several functions, in place order.
pub fn joint_support(fs: &[&Rf], seed: u64) -> Result<Vec<Place>> {
    let mut places = Vec::new();
    for f in fs {
        places.extend(support_seeded(f, seed)?.into_iter().map(|(x, _)| x));
    }
    places.sort();
    places.dedup();
    Ok(places)
}
