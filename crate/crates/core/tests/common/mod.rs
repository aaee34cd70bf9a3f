//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reciprocity_core::arith::{Field, FieldDescriptor, FieldScalar, Polynomial};
use reciprocity_core::function_field::{support, Place, Rf};
use reciprocity_core::surface::{surface_s, surface_t, SurfaceFunction, CURVE_VAR, NORMAL_VAR};
use reciprocity_core::tate::{MonomialLattice, MonomialSet};

pub type Poly = Polynomial<FieldScalar>;

pub const Q: FieldDescriptor = FieldDescriptor::Rational;

pub fn fp(p: u64) -> FieldDescriptor {
    FieldDescriptor::Prime(p)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scalar(field: FieldDescriptor, n: i64) -> FieldScalar {
    FieldScalar::from_int(n, &field)
}

/// A nonzero scalar: any unit of `F_p`, or a small rational over `Q`.
pub fn nonzero_scalar(rng: &mut ChaCha8Rng, field: FieldDescriptor) -> FieldScalar {
    match field {
        FieldDescriptor::Prime(p) => FieldScalar::modular(rng.gen_range(1..p as i64), p),
        FieldDescriptor::Rational => {
            let n = *[-3i64, -2, -1, 1, 2, 3, 5].choose(rng).unwrap();
            FieldScalar::rational(n, rng.gen_range(1..4))
        }
    }
}

pub fn poly_from(coeffs: Vec<FieldScalar>, field: FieldDescriptor, var: char) -> Poly {
    Poly::new(coeffs, field, var)
}

/// A polynomial of exact degree `d` with uniform coefficients over `F_p`.
pub fn fp_poly(rng: &mut ChaCha8Rng, p: u64, d: usize) -> Poly {
    let mut cs: Vec<FieldScalar> = (0..d).map(|_| FieldScalar::modular(rng.gen_range(0..p as i64), p)).collect();
    cs.push(FieldScalar::modular(rng.gen_range(1..p as i64), p));
    poly_from(cs, fp(p), NORMAL_VAR)
}

/// A polynomial over `Q` of degree at most `max_deg` whose irreducible
/// factors are linear, except for at most one of degree two or three, so
/// that factorization over `Q` is complete.
pub fn q_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let one = scalar(Q, 1);
    let mut acc = Poly::constant(nonzero_scalar(rng, Q), NORMAL_VAR);
    let mut deg = 0;
    let target = rng.gen_range(0..=max_deg);
    if target >= 2 && rng.gen_bool(0.5) {
        let d = rng.gen_range(2..=target.min(3));
        let mut cs: Vec<FieldScalar> = (0..d).map(|_| scalar(Q, rng.gen_range(-4..=4))).collect();
        if cs[0].is_zero() {
            cs[0] = one.clone();
        }
        cs.push(one.clone());
        acc = acc.mul(&poly_from(cs, Q, NORMAL_VAR));
        deg += d;
    }
    while deg < target {
        let root = FieldScalar::rational(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        let e = rng.gen_range(1..=(target - deg).min(3));
        let lin = poly_from(vec![root.neg(), one.clone()], Q, NORMAL_VAR);
        acc = acc.mul(&lin.pow(e as u32));
        deg += e;
    }
    acc
}

pub fn random_poly(rng: &mut ChaCha8Rng, field: FieldDescriptor, max_deg: usize) -> Poly {
    match field {
        FieldDescriptor::Prime(p) => {
            let d = rng.gen_range(0..=max_deg);
            fp_poly(rng, p, d)
        }
        FieldDescriptor::Rational => q_poly(rng, max_deg),
    }
}

/// A nonzero rational function with numerator and denominator of degree at
/// most `max_deg`.
pub fn random_rf(rng: &mut ChaCha8Rng, field: FieldDescriptor, max_deg: usize) -> Rf {
    let num = random_poly(rng, field, max_deg);
    let den = random_poly(rng, field, max_deg);
    Rf::new(num, den).expect("nonzero denominator")
}

/// A nonconstant rational function.
pub fn random_nonconstant_rf(rng: &mut ChaCha8Rng, field: FieldDescriptor, max_deg: usize) -> Rf {
    loop {
        let f = random_rf(rng, field, max_deg);
        if f.as_constant().is_none() {
            return f;
        }
    }
}

/// A place from the support of `f` (or infinity when the support is empty).
pub fn support_place(rng: &mut ChaCha8Rng, f: &Rf) -> Place {
    let places: Vec<Place> = support(f).expect("certified support").into_iter().map(|(x, _)| x).collect();
    places.choose(rng).cloned().unwrap_or(Place::Infinity)
}

/// A random degree-one place of `k(var)`, or infinity.
pub fn rational_place(rng: &mut ChaCha8Rng, field: FieldDescriptor, var: char) -> Place {
    if rng.gen_bool(0.2) {
        return Place::Infinity;
    }
    let a = match field {
        FieldDescriptor::Prime(p) => FieldScalar::modular(rng.gen_range(0..p as i64), p),
        FieldDescriptor::Rational => scalar(Q, rng.gen_range(-4..=4)),
    };
    Place::rational(a, var)
}

/// A random monomial set whose periodic tails have period dividing `p`.
pub fn random_set(rng: &mut ChaCha8Rng, p: usize) -> MonomialSet {
    let pattern = |rng: &mut ChaCha8Rng| -> Vec<i64> { (0..p as i64).filter(|_| rng.gen_bool(0.5)).collect() };
    let lo = rng.gen_range(-6..=2);
    let hi = lo + rng.gen_range(0..=6);
    let below = MonomialSet::residue_classes(p, &pattern(rng)).intersection(&MonomialSet::down_ray(lo));
    let above = MonomialSet::residue_classes(p, &pattern(rng)).intersection(&MonomialSet::ray(hi));
    let middle = MonomialSet::finite((lo..hi).filter(|_| rng.gen_bool(0.5)));
    let mut s = below.union(&above).union(&middle);
    if rng.gen_bool(0.2) {
        s = s.union(&MonomialSet::finite([rng.gen_range(-8..=8)]));
    }
    if rng.gen_bool(0.2) {
        s = s.difference(&MonomialSet::finite([rng.gen_range(-8..=8)]));
    }
    s
}

pub fn random_lattice(rng: &mut ChaCha8Rng, n_slots: usize, p: usize) -> MonomialLattice {
    MonomialLattice::new((0..n_slots).map(|_| random_set(rng, p)).collect())
}

/// A set commensurable with `s`: finitely many monomials added or removed.
pub fn perturb(rng: &mut ChaCha8Rng, s: &MonomialSet) -> MonomialSet {
    let added = MonomialSet::finite((0..rng.gen_range(0..4)).map(|_| rng.gen_range(-10..=10)));
    let removed = MonomialSet::finite((0..rng.gen_range(0..4)).map(|_| rng.gen_range(-10..=10)));
    s.union(&added).difference(&removed)
}

pub fn divisors(n: i64) -> Vec<usize> {
    let n = n.unsigned_abs() as usize;
    if n == 0 {
        return vec![1, 2, 3, 4, 6];
    }
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `c`, an element of `k(s)` embedded in `k(s)(t)`.
pub fn surface_const(c: Rf) -> SurfaceFunction {
    SurfaceFunction::constant(c, NORMAL_VAR)
}

/// `s - a` with `a` in the ground field.
fn s_minus(field: FieldDescriptor, a: &FieldScalar) -> SurfaceFunction {
    surface_s(field).sub(&surface_const(Rf::constant(a.clone(), CURVE_VAR)))
}

fn ground_element(rng: &mut ChaCha8Rng, field: FieldDescriptor) -> FieldScalar {
    match field {
        FieldDescriptor::Prime(p) => FieldScalar::modular(rng.gen_range(0..p as i64), p),
        FieldDescriptor::Rational => scalar(Q, rng.gen_range(-3..=3)),
    }
}

/// A surface function whose restrictions to `C` (for the parameters `t`,
/// `t(1+t)` and `st`) only have zeros and poles at degree-one places: a
/// product of powers of `t`, `s - a`, `t + λ(s - a)` and `1 + t(s - a)`.
pub fn random_surface(rng: &mut ChaCha8Rng, field: FieldDescriptor) -> SurfaceFunction {
    let t = surface_t(field);
    let mut f = surface_const(Rf::constant(nonzero_scalar(rng, field), CURVE_VAR));
    f = f.mul(&t.powi(rng.gen_range(-2..=2)).unwrap());
    for _ in 0..rng.gen_range(0..=2) {
        let a = ground_element(rng, field);
        f = f.mul(&s_minus(field, &a).powi(*[-2i64, -1, 1, 2].choose(rng).unwrap()).unwrap());
    }
    if rng.gen_bool(0.6) {
        let a = ground_element(rng, field);
        let lambda = surface_const(Rf::constant(nonzero_scalar(rng, field), CURVE_VAR));
        let factor = t.add(&lambda.mul(&s_minus(field, &a)));
        f = f.mul(&factor.powi(*[-1i64, 1].choose(rng).unwrap()).unwrap());
    }
    if rng.gen_bool(0.3) {
        let a = ground_element(rng, field);
        let unit = surface_const(Rf::constant(scalar(field, 1), CURVE_VAR)).add(&t.mul(&s_minus(field, &a)));
        f = f.mul(&unit);
    }
    f
}
