//! Symbols on the surface with function field `k(s, t)` along the curve
//! `C = {t = 0}`, whose function field is `k(s)`.
//!
//! A `SurfaceFunction` is a rational function in `t` with coefficients in
//! `k(s)`. Places of `C` are places of `k(s)`, so they use the variable `s`.

use crate::arith::{Field, FieldDescriptor, FieldScalar};
use crate::curve::tame_symbol;
use crate::error::{Error, Result};
use crate::function_field::{evaluate, joint_support, valuation, Place, RationalFunction, Rf};
use crate::group::GroupValue;
use crate::report::{SymbolKind, Verification};

pub type SurfaceFunction = RationalFunction<Rf>;

/// Variable of the curve `C`.
pub const CURVE_VAR: char = 's';
/// Local equation of `C`.
pub const NORMAL_VAR: char = 't';

pub fn surface_t(field: FieldDescriptor) -> SurfaceFunction {
    SurfaceFunction::variable(&(field, CURVE_VAR), NORMAL_VAR)
}

pub fn surface_s(field: FieldDescriptor) -> SurfaceFunction {
    SurfaceFunction::constant(Rf::variable(&field, CURVE_VAR), NORMAL_VAR)
}

pub fn surface_field(f: &SurfaceFunction) -> FieldDescriptor {
    f.coeff_ctx().0
}

fn nonzero(fs: &[&SurfaceFunction], what: &'static str) -> Result<()> {
    if fs.iter().any(|f| f.is_zero()) {
        return Err(Error::ZeroInput(what));
    }
    for w in fs.windows(2) {
        w[0].check_compatible(w[1])?;
    }
    Ok(())
}

fn low(p: &crate::arith::Polynomial<Rf>) -> usize {
    p.low_degree().expect("nonzero")
}

/// `v_C(f)`: the `t`-adic valuation.
pub fn v_c(f: &SurfaceFunction) -> Result<i64> {
    nonzero(&[f], "v_C")?;
    Ok(low(f.num()) as i64 - low(f.den()) as i64)
}

/// Restriction to `C` of `f·t^{-v_C(f)}`: the ratio of lowest `t`-coefficients.
pub fn phi_t(f: &SurfaceFunction) -> Result<Rf> {
    nonzero(&[f], "phi_t")?;
    let n = f.num().coeff(low(f.num()));
    let d = f.den().coeff(low(f.den()));
    Ok(n.div(&d).expect("lowest coefficient is nonzero"))
}

fn check_parameter(z: &SurfaceFunction) -> Result<()> {
    if v_c(z)? != 1 {
        return Err(Error::domain(format!("{z} is not a local parameter of C: v_C = {}", v_c(z)?)));
    }
    Ok(())
}

/// `φ_z(f) = [f·z^{-v_C(f)}]|_C` for a local parameter `z` of `C`.
pub fn phi_z(f: &SurfaceFunction, z: &SurfaceFunction) -> Result<Rf> {
    nonzero(&[f, z], "phi_z")?;
    check_parameter(z)?;
    let shifted = f.mul(&z.powi(-v_c(f)?).expect("z is nonzero"));
    debug_assert_eq!(v_c(&shifted), Ok(0));
    phi_t(&shifted)
}

/// `v̄_x^z(f) = v_x(φ_z(f))`.
pub fn vbar(f: &SurfaceFunction, x: &Place, z: &SurfaceFunction) -> Result<i64> {
    valuation(&phi_z(f, z)?, x)
}

/// `ν_{x,C}(f, g) = v̄(f) v_C(g) - v̄(g) v_C(f)`.
pub fn nu(f: &SurfaceFunction, g: &SurfaceFunction, x: &Place, z: &SurfaceFunction) -> Result<i64> {
    nonzero(&[f, g], "nu")?;
    Ok(vbar(f, x, z)? * v_c(g)? - vbar(g, x, z)? * v_c(f)?)
}

fn require_degree_one(x: &Place, what: &str) -> Result<()> {
    if x.degree() != 1 {
        return Err(Error::domain(format!(
            "the {what} symbol is only defined here at degree-1 places; {x} has degree {}",
            x.degree()
        )));
    }
    Ok(())
}

fn minus_one(field: FieldDescriptor) -> Rf {
    Rf::constant(FieldScalar::one(&field).neg(), CURVE_VAR)
}

fn pow(a: &FieldScalar, e: i64) -> FieldScalar {
    a.pow(e).expect("symbol values are units")
}

/// `(f,g,h)^z_{C,x} = <φ_z f, φ_z h>_x^{v_C(g)} · <φ_z g, -1>_x^{v_C(f) v_C(h)}`.
pub fn horozov3(
    f: &SurfaceFunction,
    g: &SurfaceFunction,
    h: &SurfaceFunction,
    x: &Place,
    z: &SurfaceFunction,
) -> Result<FieldScalar> {
    nonzero(&[f, g, h], "horozov3")?;
    require_degree_one(x, "Horozov")?;
    let (pf, pg, ph) = (phi_z(f, z)?, phi_z(g, z)?, phi_z(h, z)?);
    let first = pow(&tame_symbol(&pf, &ph, x)?, v_c(g)?);
    let second = pow(&tame_symbol(&pg, &minus_one(surface_field(f)), x)?, v_c(f)? * v_c(h)?);
    Ok(first.mul(&second))
}

/// The Parshin symbol: `(-1)^α` times the restriction to `C` of the monomial
/// `f^{e_f} g^{e_g} h^{e_h}` (which has `v_C = 0`), evaluated at `x`.
/// With `a = v_C` and `b = v̄_x^z`, the exponents are the 2×2 minors of the
/// matrix with columns `(a, b)` and
/// `α = a_f a_g b_h + a_f a_h b_g + a_g a_h b_f + a_f b_g b_h + a_g b_f b_h + a_h b_f b_g`.
pub fn parshin3(
    f: &SurfaceFunction,
    g: &SurfaceFunction,
    h: &SurfaceFunction,
    x: &Place,
    z: &SurfaceFunction,
) -> Result<FieldScalar> {
    nonzero(&[f, g, h], "parshin3")?;
    require_degree_one(x, "Parshin")?;
    let (af, ag, ah) = (v_c(f)?, v_c(g)?, v_c(h)?);
    let (bf, bg, bh) = (vbar(f, x, z)?, vbar(g, x, z)?, vbar(h, x, z)?);
    let ef = ag * bh - ah * bg;
    let eg = ah * bf - af * bh;
    let eh = af * bg - ag * bf;
    let alpha = af * ag * bh + af * ah * bg + ag * ah * bf + af * bg * bh + ag * bf * bh + ah * bf * bg;
    let restricted = [(f, ef), (g, eg), (h, eh)]
        .into_iter()
        .try_fold(Rf::one(&(surface_field(f), CURVE_VAR)), |acc, (u, e)| {
            Ok::<_, Error>(acc.mul(&phi_z(u, z)?.powi(e).expect("nonzero")))
        })?;
    let value = evaluate(&restricted, x)?.as_scalar().expect("degree-one residue field");
    let sign = if alpha.rem_euclid(2) == 1 { value.neg() } else { value };
    Ok(sign)
}

/// `<f, g>_C = (-1)^{v_C(f) v_C(g)} (f^{v_C(g)} / g^{v_C(f)})|_C ∈ k(s)×`.
pub fn curve_tame(f: &SurfaceFunction, g: &SurfaceFunction) -> Result<Rf> {
    nonzero(&[f, g], "curve_tame")?;
    let (af, ag) = (v_c(f)?, v_c(g)?);
    let ratio = phi_t(f)?.powi(ag).expect("nonzero").div(&phi_t(g)?.powi(af).expect("nonzero")).expect("nonzero");
    Ok(if (af * ag).rem_euclid(2) == 1 { ratio.neg() } else { ratio })
}

/// The Horozov–Kerr symbol
/// `Π_i <φ_z f_i, -1>_x^{Π_{j≠i} v_C(f_j)} · <<f_1,f_2>_C, <f_3,f_4>_C>_x`.
pub fn hk4(fs: &[SurfaceFunction; 4], x: &Place, z: &SurfaceFunction) -> Result<FieldScalar> {
    let refs: Vec<&SurfaceFunction> = fs.iter().collect();
    nonzero(&refs, "hk4")?;
    let field = surface_field(&fs[0]);
    let a = fs.iter().map(v_c).collect::<Result<Vec<_>>>()?;
    let mut value = FieldScalar::one(&field);
    for (i, f) in fs.iter().enumerate() {
        let e: i64 = (0..4).filter(|&j| j != i).map(|j| a[j]).product();
        value = value.mul(&pow(&tame_symbol(&phi_z(f, z)?, &minus_one(field), x)?, e));
    }
    let left = curve_tame(&fs[0], &fs[1])?;
    let right = curve_tame(&fs[2], &fs[3])?;
    Ok(value.mul(&tame_symbol(&left, &right, x)?))
}

/// Which surface reciprocity law to verify.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SurfaceLaw {
    Horozov,
    Parshin,
    HorozovKerr,
}

/// Places of `C` where any of the restrictions `φ_z f_i` or `φ_t f_i` has a
/// zero or pole; every local factor is trivial elsewhere.
fn curve_places(fs: &[SurfaceFunction], z: &SurfaceFunction, seed: u64) -> Result<Vec<Place>> {
    let mut restrictions = Vec::with_capacity(2 * fs.len());
    for f in fs {
        restrictions.push(phi_z(f, z)?);
        restrictions.push(phi_t(f)?);
    }
    let refs: Vec<&Rf> = restrictions.iter().collect();
    joint_support(&refs, seed)
}

/// `Σ_x deg(x) ν_{x,C}(f, g) = 0`.
pub fn nu_verify(f: &SurfaceFunction, g: &SurfaceFunction, z: &SurfaceFunction, seed: u64) -> Result<Verification> {
    nonzero(&[f, g], "nu_verify")?;
    let mut values = Vec::new();
    for x in curve_places(&[f.clone(), g.clone()], z, seed)? {
        let d = x.degree() as i64;
        let v = nu(f, g, &x, z)?;
        values.push((x, GroupValue::Int(d * v)));
    }
    Ok(Verification::from_values(SymbolKind::Nu, surface_field(f), values, GroupValue::Int(0)))
}

/// Product over the places of `C` of the Horozov, Parshin (three functions)
/// or Horozov–Kerr (four functions) symbol.
pub fn reciprocity_verify_2d(
    law: SurfaceLaw,
    fs: &[SurfaceFunction],
    z: &SurfaceFunction,
    seed: u64,
) -> Result<Verification> {
    let expected = match law {
        SurfaceLaw::Horozov | SurfaceLaw::Parshin => 3,
        SurfaceLaw::HorozovKerr => 4,
    };
    if fs.len() != expected {
        return Err(Error::domain(format!("{law:?} takes {expected} functions, got {}", fs.len())));
    }
    let refs: Vec<&SurfaceFunction> = fs.iter().collect();
    nonzero(&refs, "reciprocity_verify_2d")?;
    let field = surface_field(&fs[0]);
    let mut values = Vec::new();
    for x in curve_places(fs, z, seed)? {
        let v = match law {
            SurfaceLaw::Horozov => horozov3(&fs[0], &fs[1], &fs[2], &x, z)?,
            SurfaceLaw::Parshin => parshin3(&fs[0], &fs[1], &fs[2], &x, z)?,
            SurfaceLaw::HorozovKerr => {
                let four: &[SurfaceFunction; 4] = fs.try_into().expect("length checked");
                hk4(four, &x, z)?
            }
        };
        values.push((x, GroupValue::Multiplicative(v)));
    }
    let kind = match law {
        SurfaceLaw::Horozov => SymbolKind::Horozov,
        SurfaceLaw::Parshin => SymbolKind::Parshin,
        SurfaceLaw::HorozovKerr => SymbolKind::HorozovKerr,
    };
    Ok(Verification::from_values(kind, field, values, GroupValue::Multiplicative(FieldScalar::one(&field))))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rational;

    fn t() -> SurfaceFunction {
        surface_t(Q)
    }

    fn s() -> SurfaceFunction {
        surface_s(Q)
    }

    fn c(n: i64) -> SurfaceFunction {
        SurfaceFunction::from_int(n, &((Q, CURVE_VAR), NORMAL_VAR))
    }

    fn at_s0() -> Place {
        Place::rational(FieldScalar::rational(0, 1), CURVE_VAR)
    }

    fn rs(f: &SurfaceFunction) -> String {
        phi_t(f).unwrap().to_string()
    }

    #[test]
    fn valuation_and_restriction_examples() {
        let st = s().mul(&t());
        assert_eq!(v_c(&st), Ok(1));
        assert_eq!(v_c(&s()), Ok(0));
        let f = t().mul(&t()).add(&s()).div(&t().powi(3).unwrap()).unwrap();
        assert_eq!(v_c(&f), Ok(-3));
        assert_eq!(rs(&st), "s");
        let g = c(1).add(&st).div(&s().sub(&t())).unwrap();
        assert_eq!(rs(&g), "1/s");
        assert_eq!(vbar(&s().add(&t()), &at_s0(), &t()), Ok(1));
        assert_eq!(vbar(&c(1).add(&st), &at_s0(), &t()), Ok(0));
    }

    #[test]
    fn nu_examples() {
        let x = at_s0();
        assert_eq!(nu(&s().mul(&t()), &s(), &x, &t()), Ok(-1));
        assert_eq!(nu(&t(), &s(), &x, &t()), Ok(-1));
        let v = nu_verify(&s().mul(&t()), &s(), &t(), 1).unwrap();
        assert!(v.ok);
        assert_eq!(v.contributions.len(), 2);
    }

    #[test]
    fn horozov_examples() {
        let x = at_s0();
        let one = FieldScalar::rational(1, 1);
        assert_eq!(horozov3(&t(), &s(), &s(), &x, &t()), Ok(one.clone()));
        assert_eq!(horozov3(&s(), &t(), &c(1).sub(&s()), &x, &t()), Ok(one));
    }

    #[test]
    fn parshin_is_cyclic_horozov_product() {
        let fs = [t(), s(), c(1).sub(&s())];
        let x = at_s0();
        let p = parshin3(&fs[0], &fs[1], &fs[2], &x, &t()).unwrap();
        let h = horozov3(&fs[0], &fs[1], &fs[2], &x, &t())
            .unwrap()
            .mul(&horozov3(&fs[2], &fs[0], &fs[1], &x, &t()).unwrap())
            .mul(&horozov3(&fs[1], &fs[2], &fs[0], &x, &t()).unwrap());
        assert_eq!(p, h);
        let v = reciprocity_verify_2d(SurfaceLaw::Parshin, &fs, &t(), 1).unwrap();
        assert!(v.ok, "{v:?}");
    }

    #[test]
    fn hk4_example_and_law() {
        let fs = [t(), t(), s(), s()];
        assert_eq!(curve_tame(&t(), &t()).unwrap().to_string(), "-1");
        hk4(&fs, &at_s0(), &t()).unwrap();
        assert!(reciprocity_verify_2d(SurfaceLaw::HorozovKerr, &fs, &t(), 1).unwrap().ok);
        let consts = [c(2), c(3), c(5), c(7)];
        let v = reciprocity_verify_2d(SurfaceLaw::HorozovKerr, &consts, &t(), 1).unwrap();
        assert!(v.ok && v.contributions.is_empty());
    }

    #[test]
    fn parameter_must_have_valuation_one() {
        assert!(matches!(phi_z(&s(), &s()), Err(Error::Domain(_))));
    }

    #[test]
    fn higher_degree_places_rejected_for_parshin() {
        let f3 = FieldDescriptor::Prime(3);
        let pi = crate::arith::Polynomial::from_ints(&[1, 0, 1], &f3, CURVE_VAR);
        let x = Place::Finite(pi);
        let t3 = surface_t(f3);
        let s3 = surface_s(f3);
        assert!(matches!(parshin3(&t3, &s3, &s3, &x, &t3), Err(Error::Domain(_))));
    }
}
