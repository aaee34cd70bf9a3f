//! Local symbols on `k(t)` and the reciprocity laws they satisfy over the
//! places of the projective line.

use crate::arith::{rf_norm, Field, FieldDescriptor, FieldScalar, ResidueFieldElem};
use crate::error::{Error, Result};
use crate::function_field::{evaluate, joint_support, support_seeded, valuation, Place, Rf};
use crate::group::GroupValue;
use crate::report::{Contribution, SymbolKind, Verification};
use crate::tate::{abstract_residue_trace, classical_residue, residue_window_bound};

fn nonzero(fs: &[&Rf], what: &'static str) -> Result<()> {
    if fs.iter().any(|f| f.is_zero()) {
        return Err(Error::ZeroInput(what));
    }
    for w in fs.windows(2) {
        w[0].check_compatible(w[1])?;
    }
    Ok(())
}

/// `f·z^{-v}` where `z` is the uniformizer at `x`: a unit at `x`.
fn unit_part(f: &Rf, x: &Place, v: i64) -> Rf {
    let z = match x {
        Place::Finite(pi) => Rf::from_poly(pi.clone()),
        Place::Infinity => Rf::variable(f.coeff_ctx(), f.var()).inv().expect("t is nonzero"),
    };
    f.mul(&z.powi(-v).expect("uniformizer is nonzero"))
}

/// `(f^{v(g)} / g^{v(f)})(x) ∈ k(x)`, computed from the unit parts.
fn tame_unit_value(f: &Rf, g: &Rf, x: &Place) -> Result<(ResidueFieldElem, i64, i64)> {
    let vf = valuation(f, x)?;
    let vg = valuation(g, x)?;
    let f0 = evaluate(&unit_part(f, x, vf), x)?;
    let g0 = evaluate(&unit_part(g, x, vg), x)?;
    let u = f0
        .pow(vg)
        .expect("unit")
        .mul(&g0.pow(-vf).expect("unit"));
    Ok((u, vf, vg))
}

fn sign(field: &FieldDescriptor, odd: bool) -> FieldScalar {
    let one = FieldScalar::one(field);
    if odd {
        one.neg()
    } else {
        one
    }
}

/// `<f,g>_x = (-1)^{deg(x) v(f) v(g)} N_{k(x)/k}[(f^{v(g)}/g^{v(f)})(x)]`.
pub fn tame_symbol(f: &Rf, g: &Rf, x: &Place) -> Result<FieldScalar> {
    nonzero(&[f, g], "tame_symbol")?;
    let (u, vf, vg) = tame_unit_value(f, g, x)?;
    let odd = (x.degree() as i64 * vf * vg).rem_euclid(2) == 1;
    Ok(sign(f.coeff_ctx(), odd).mul(&rf_norm(&u)))
}

/// `(-1)^{v(f)v(g)} (f^{v(g)}/g^{v(f)})(x)` formed as a rational function and
/// then evaluated; only defined at degree-one places.
pub fn tame_symbol_milnor(f: &Rf, g: &Rf, x: &Place) -> Result<FieldScalar> {
    nonzero(&[f, g], "tame_symbol_milnor")?;
    if x.degree() != 1 {
        return Err(Error::domain(format!("the Milnor form needs a degree-1 place, got {x}")));
    }
    let vf = valuation(f, x)?;
    let vg = valuation(g, x)?;
    let u = f.powi(vg).expect("nonzero").div(&g.powi(vf).expect("nonzero")).expect("nonzero");
    let value = evaluate(&u, x)?.as_scalar().expect("degree-one residue field");
    Ok(sign(f.coeff_ctx(), (vf * vg).rem_euclid(2) == 1).mul(&value))
}

/// `Π_x <f,g>_x = 1` over the joint support.
pub fn weil_verify(f: &Rf, g: &Rf, seed: u64) -> Result<Verification> {
    nonzero(&[f, g], "weil_verify")?;
    let field = *f.coeff_ctx();
    let places = joint_support(&[f, g], seed)?;
    let values = places
        .into_iter()
        .map(|x| Ok((x.clone(), GroupValue::Multiplicative(tame_symbol(f, g, &x)?))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Verification::from_values(SymbolKind::Weil, field, values, GroupValue::Multiplicative(FieldScalar::one(&field))))
}

/// `Σ_x deg(x) v_x(f) = 0`.
pub fn sum_of_valuations_verify(f: &Rf, seed: u64) -> Result<Verification> {
    nonzero(&[f], "sum_of_valuations_verify")?;
    let values = support_seeded(f, seed)?
        .into_iter()
        .map(|(x, v)| {
            let d = x.degree() as i64;
            (x, GroupValue::Int(d * v))
        })
        .collect();
    Ok(Verification::from_values(SymbolKind::SumOfValuations, *f.coeff_ctx(), values, GroupValue::Int(0)))
}

/// Residue at `x`, optionally checked against the commutator-trace oracle at
/// the minimal admissible window.
pub fn residue_with_oracle(f: &Rf, g: &Rf, x: &Place) -> Result<(FieldScalar, FieldScalar)> {
    let classical = classical_residue(f, g, x)?;
    let oracle = abstract_residue_trace(f, g, x, residue_window_bound(f, g, x)?)?;
    if classical != oracle {
        return Err(Error::OracleMismatch {
            place: x.to_string(),
            classical: classical.to_string(),
            oracle: oracle.to_string(),
        });
    }
    Ok((classical, oracle))
}

/// `Σ_x tr_{k(x)/k} res_x(f dg) = 0` over the joint support and infinity.
pub fn residue_theorem_verify(f: &Rf, g: &Rf, oracle: bool, seed: u64) -> Result<Verification> {
    nonzero(&[f, g], "residue_theorem_verify")?;
    let field = *f.coeff_ctx();
    let mut places = joint_support(&[f, g], seed)?;
    if !places.contains(&Place::Infinity) {
        places.push(Place::Infinity);
    }
    let mut terms = Vec::with_capacity(places.len());
    for x in places {
        let (value, checked) = if oracle {
            let (c, o) = residue_with_oracle(f, g, &x)?;
            (c, Some(GroupValue::Additive(o)))
        } else {
            (classical_residue(f, g, &x)?, None)
        };
        terms.push(Contribution { place: x, value: GroupValue::Additive(value), oracle: checked });
    }
    Ok(Verification::from_contributions(
        SymbolKind::ResidueTheorem,
        field,
        terms,
        GroupValue::Additive(FieldScalar::zero(&field)),
    ))
}

/// `(q-1)/m` for the ground field `F_q`, or a domain error.
fn hilbert_exponent(field: &FieldDescriptor, m: u64) -> Result<u64> {
    let q = field
        .order()
        .ok_or_else(|| Error::domain("the Hilbert symbol needs a finite ground field"))?;
    if m == 0 || (q - 1) % m != 0 {
        return Err(Error::domain(format!("m = {m} does not divide q - 1 = {}", q - 1)));
    }
    Ok((q - 1) / m)
}

/// `N_{k(x)/k}[(-1)^{v(f)v(g)} f^{v(g)}/g^{v(f)}(x)]^{(q-1)/m}`, a value in `μ_m ⊂ F_q×`.
pub fn hilbert_symbol(f: &Rf, g: &Rf, x: &Place, m: u64) -> Result<FieldScalar> {
    nonzero(&[f, g], "hilbert_symbol")?;
    let e = hilbert_exponent(f.coeff_ctx(), m)?;
    let (u, vf, vg) = tame_unit_value(f, g, x)?;
    let inside = if (vf * vg).rem_euclid(2) == 1 { u.neg() } else { u };
    Ok(rf_norm(&inside).pow_u64(e))
}

/// `Π_x {f,g}_x = 1` in `μ_m`.
pub fn hilbert_verify(f: &Rf, g: &Rf, m: u64, seed: u64) -> Result<Verification> {
    nonzero(&[f, g], "hilbert_verify")?;
    let field = *f.coeff_ctx();
    hilbert_exponent(&field, m)?;
    let values = joint_support(&[f, g], seed)?
        .into_iter()
        .map(|x| Ok((x.clone(), GroupValue::Multiplicative(hilbert_symbol(f, g, &x, m)?))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Verification::from_values(SymbolKind::Hilbert, field, values, GroupValue::Multiplicative(FieldScalar::one(&field))))
}
