//! Algebraic invariants of the library, as property tests.

mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use reciprocity_core::arith::{factor_over_fp, rf_norm, rf_trace, Field, FieldDescriptor, ResidueFieldElem};
use reciprocity_core::curve::tame_symbol;
use reciprocity_core::function_field::{evaluate, local_expansion, valuation, Place, Rf};
use reciprocity_core::segal_wilson::{cocycle_c, cocycle_on_set};
use reciprocity_core::surface::{phi_t, surface_s, surface_t, v_c, vbar, SurfaceFunction};
use reciprocity_core::tate::MonomialSet;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

/// An irreducible factor of degree at least two of a random polynomial
/// over `F_p`, when there is one.
fn irreducible(rng: &mut rand_chacha::ChaCha8Rng, p: u64) -> Poly {
    loop {
        let d = rng.gen_range(2..=6);
        let a = fp_poly(rng, p, d);
        let fac = factor_over_fp(&a, 1).unwrap();
        if let Some(f) = fac.factors.into_iter().filter(|f| f.poly.degree() >= Some(2)).last() {
            return f.poly;
        }
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn norm_is_multiplicative_and_trace_additive(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let mut rng = rng(seed);
        let pi = irreducible(&mut rng, p);
        let ctx = ResidueFieldElem::context(&pi);
        let d = pi.degree().unwrap();
        let a = ResidueFieldElem::new(&fp_poly(&mut rng, p, d - 1), &ctx);
        let b = ResidueFieldElem::new(&fp_poly(&mut rng, p, d - 1), &ctx);
        prop_assert_eq!(rf_norm(&a.mul(&b)), rf_norm(&a).mul(&rf_norm(&b)));
        prop_assert_eq!(rf_trace(&a.add(&b)), rf_trace(&a).add(&rf_trace(&b)));
    }

    #[test]
    fn gcd_divides_both(seed in any::<u64>(), field in prop::sample::select(vec![Q, fp(5), fp(101)])) {
        let mut rng = rng(seed);
        let common_factor = random_poly(&mut rng, field, 3);
        let a = random_poly(&mut rng, field, 4).mul(&common_factor);
        let b = random_poly(&mut rng, field, 4).mul(&common_factor);
        let g = a.gcd(&b).unwrap();
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
        prop_assert!(common_factor.monic().rem(&g).is_some());
        prop_assert!(g.rem(&common_factor).unwrap().is_zero());
    }

    #[test]
    fn valuation_is_a_valuation(seed in any::<u64>(), field in prop::sample::select(vec![Q, fp(5), fp(7)])) {
        let mut rng = rng(seed);
        let f = random_rf(&mut rng, field, 4);
        let g = random_rf(&mut rng, field, 4);
        let x = match rng.gen_range(0..3) {
            0 => support_place(&mut rng, &f),
            1 => support_place(&mut rng, &g),
            _ => rational_place(&mut rng, field, 't'),
        };
        let (vf, vg) = (valuation(&f, &x).unwrap(), valuation(&g, &x).unwrap());
        prop_assert_eq!(valuation(&f.mul(&g), &x).unwrap(), vf + vg);
        let sum = f.add(&g);
        if !sum.is_zero() {
            prop_assert!(valuation(&sum, &x).unwrap() >= vf.min(vg));
        }
    }

    #[test]
    fn evaluation_is_multiplicative_on_units(seed in any::<u64>(), field in prop::sample::select(vec![Q, fp(5), fp(7)])) {
        let mut rng = rng(seed);
        let f = random_rf(&mut rng, field, 4);
        let g = random_rf(&mut rng, field, 4);
        let x = match rng.gen_range(0..3) {
            0 => support_place(&mut rng, &f),
            1 => support_place(&mut rng, &g),
            _ => rational_place(&mut rng, field, 't'),
        };
        // strip the valuations with a uniformizer-free trick: f^{v_g} / g^{v_f} is a unit
        let (vf, vg) = (valuation(&f, &x).unwrap(), valuation(&g, &x).unwrap());
        let u = f.powi(vg).unwrap().div(&g.powi(vf).unwrap()).unwrap();
        let w = if vf == 0 { f.clone() } else { u.clone() };
        prop_assert_eq!(valuation(&u, &x).unwrap(), 0);
        let (eu, ew) = (evaluate(&u, &x).unwrap(), evaluate(&w, &x).unwrap());
        prop_assert_eq!(evaluate(&u.mul(&w), &x).unwrap(), eu.mul(&ew));
    }

    #[test]
    fn expansion_of_product_is_product_of_expansions(seed in any::<u64>(), field in prop::sample::select(vec![Q, fp(5)])) {
        let mut rng = rng(seed);
        let f = random_rf(&mut rng, field, 3);
        let g = random_rf(&mut rng, field, 3);
        let x = if rng.gen_bool(0.5) { support_place(&mut rng, &f) } else { support_place(&mut rng, &g) };
        let n = 5;
        let product = local_expansion(&f, &x, n).unwrap().mul(&local_expansion(&g, &x, n).unwrap());
        let direct = local_expansion(&f.mul(&g), &x, n).unwrap();
        let start = direct.start();
        for e in start..start + n as i64 {
            prop_assert_eq!(product.coeff(e).unwrap(), direct.coeff(e).unwrap());
        }
    }

    #[test]
    fn commensurability_is_an_equivalence(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let p = rng.gen_range(1..=3);
        let a = random_set(&mut rng, p);
        let b = if rng.gen_bool(0.6) { perturb(&mut rng, &a) } else { random_set(&mut rng, p) };
        let c = if rng.gen_bool(0.6) { perturb(&mut rng, &b) } else { random_set(&mut rng, p) };
        prop_assert!(a.commensurable(&a));
        prop_assert_eq!(a.commensurable(&b), b.commensurable(&a));
        if a.commensurable(&b) && b.commensurable(&c) {
            prop_assert!(a.commensurable(&c));
        }
    }

    #[test]
    fn tame_symbol_of_a_function_with_itself(seed in any::<u64>(), field in prop::sample::select(vec![Q, fp(5), fp(7)])) {
        let mut rng = rng(seed);
        let f = random_nonconstant_rf(&mut rng, field, 4);
        let x = if rng.gen_bool(0.8) { support_place(&mut rng, &f) } else { rational_place(&mut rng, field, 't') };
        let v = valuation(&f, &x).unwrap();
        let expected = if (x.degree() as i64 * v).rem_euclid(2) == 1 { scalar(field, -1) } else { scalar(field, 1) };
        prop_assert_eq!(tame_symbol(&f, &f, &x).unwrap(), expected);
    }

    #[test]
    fn vbar_shifts_with_the_parameter(seed in any::<u64>(), field in prop::sample::select(vec![Q, fp(5)])) {
        let mut rng = rng(seed);
        let f = random_surface(&mut rng, field);
        let t = surface_t(field);
        let unit = random_surface_unit(&mut rng, field);
        let z2 = t.mul(&unit);
        let x = if rng.gen_bool(0.5) { Place::Infinity } else { rational_place(&mut rng, field, 's') };
        let lambda = valuation(&phi_t(&z2.div(&t).unwrap()).unwrap(), &x).unwrap();
        // phi_{z'}(f) = phi_z(f) * ((z'/z)|_C)^{-v_C(f)}, so the shift enters with a minus sign
        prop_assert_eq!(vbar(&f, &x, &z2).unwrap(), vbar(&f, &x, &t).unwrap() - lambda * v_c(&f).unwrap());
    }
}

/// A unit along `C`: a nonzero constant times powers of `s - a` and `1 + t`.
fn random_surface_unit(rng: &mut rand_chacha::ChaCha8Rng, field: FieldDescriptor) -> SurfaceFunction {
    let c = SurfaceFunction::constant(Rf::constant(nonzero_scalar(rng, field), 's'), 't');
    let a = SurfaceFunction::constant(Rf::constant(scalar(field, rng.gen_range(-2..=2)), 's'), 't');
    let one = SurfaceFunction::constant(Rf::constant(scalar(field, 1), 's'), 't');
    c.mul(&surface_s(field).sub(&a).powi(rng.gen_range(-2..=2)).unwrap())
        .mul(&one.add(&surface_t(field)).powi(rng.gen_range(0..=2)).unwrap())
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn factorization_recomposes(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 5, 101])) {
        let mut rng = rng(seed);
        for _ in 0..25 {
            let d = rng.gen_range(0..=12);
            let a = fp_poly(&mut rng, p, d);
            let fac = factor_over_fp(&a, seed).unwrap();
            prop_assert!(fac.is_certified());
            prop_assert!(fac.factors.iter().all(|f| f.poly.is_monic()));
            prop_assert_eq!(fac.recompose('t'), a);
        }
    }

    #[test]
    fn cocycle_depends_on_commensurability_class_only(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let f = random_rf(&mut rng, Q, 3);
        let g = random_nonconstant_rf(&mut rng, Q, 3);
        let x = support_place(&mut rng, &g);
        let a = random_set(&mut rng, 1);
        let b = perturb(&mut rng, &a);
        prop_assert_eq!(cocycle_on_set(&f, &g, &x, &a, 8).unwrap(), cocycle_on_set(&f, &g, &x, &b, 8).unwrap());
        let ox = MonomialSet::ray(0);
        prop_assert_eq!(cocycle_on_set(&f, &g, &x, &ox, 8).unwrap(), cocycle_c(&f, &g, &x, 8).unwrap());
    }

    #[test]
    fn cocycle_identity(seed in any::<u64>()) {
        // c(f, g) c(f + g, h) = c(f, g + h) c(g, h) in the additive group of k(t)
        let mut rng = rng(seed);
        let f = random_nonconstant_rf(&mut rng, Q, 2);
        let g = random_nonconstant_rf(&mut rng, Q, 2);
        let h = random_nonconstant_rf(&mut rng, Q, 2);
        let which = [&f, &g, &h][rng.gen_range(0..3)];
        let x = support_place(&mut rng, which);
        let (fg, gh) = (f.add(&g), g.add(&h));
        if fg.is_zero() || gh.is_zero() {
            return Ok(());
        }
        let c = |a: &Rf, b: &Rf| cocycle_c(a, b, &x, 10).unwrap();
        prop_assert_eq!(c(&f, &g).mul(&c(&fg, &h)), c(&f, &gh).mul(&c(&g, &h)));
    }
}
