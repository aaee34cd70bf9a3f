//! Polynomial factorization over the ground field.
//!
//! Over `F_p` this is the full squarefree / distinct-degree / equal-degree
//! (Cantor–Zassenhaus) pipeline. Over `Q` factorization is deliberately
//! limited: squarefree decomposition plus rational-root extraction, which
//! certifies irreducibility of every remaining cofactor of degree 2 or 3.
//! Cofactors of degree at least 4 are returned flagged as uncertified.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::poly::Polynomial;
use super::scalar::{FieldDescriptor, FieldScalar};
use crate::error::{Error, Result};

pub type Poly = Polynomial<FieldScalar>;

/// Seed used for equal-degree splitting when the caller supplies none.
pub const DEFAULT_SEED: u64 = 0x5EED_2024_0001;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// Monic, and irreducible whenever `certified` is set.
    pub poly: Poly,
    pub multiplicity: u32,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldScalar,
    pub factors: Vec<Factor>,
}

impl Factorization {
    /// Multiplies the factors back together.
    pub fn recompose(&self, var: char) -> Poly {
        self.factors.iter().fold(Poly::constant(self.unit.clone(), var), |acc, f| {
            acc.mul(&f.poly.clone().with_var(var).pow(f.multiplicity))
        })
    }

    pub fn is_certified(&self) -> bool {
        self.factors.iter().all(|f| f.certified)
    }
}

fn sort_factors(factors: &mut [Factor]) {
    factors.sort_by(|a, b| a.poly.cmp_by_degree_then_coeffs(&b.poly).then(a.multiplicity.cmp(&b.multiplicity)));
}

/// Factors over whichever ground field the polynomial lives in.
pub fn factor(a: &Poly, seed: u64) -> Result<Factorization> {
    match a.ctx() {
        FieldDescriptor::Prime(_) => factor_over_fp(a, seed),
        FieldDescriptor::Rational => factor_over_q_limited(a),
    }
}

/// Complete factorization over `F_p` into monic irreducibles.
///
/// Output is sorted by degree, then by coefficients; equal-degree splitting
/// draws from a ChaCha stream seeded with `seed`, so output is reproducible.
pub fn factor_over_fp(a: &Poly, seed: u64) -> Result<Factorization> {
    let FieldDescriptor::Prime(p) = *a.ctx() else {
        return Err(Error::domain("factor_over_fp needs an F_p polynomial; use factor_over_q_limited"));
    };
    let lc = a.leading().cloned().ok_or(Error::ZeroInput("factor_over_fp"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, mult) in squarefree_fp(&a.monic(), p) {
        for (g, d) in distinct_degree(&part, p) {
            let mut pieces = Vec::new();
            equal_degree(&g, d, p, &mut rng, &mut pieces);
            out.extend(pieces.into_iter().map(|poly| Factor {
                poly,
                multiplicity: mult,
                certified: true,
            }));
        }
    }
    sort_factors(&mut out);
    Ok(Factorization { unit: lc, factors: out })
}

/// Squarefree decomposition over `F_p` for a monic input.
fn squarefree_fp(f: &Poly, p: u64) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let one = Poly::one(f.ctx(), f.var());
    let df = f.derivative();
    let mut c = f.gcd_unchecked(&df);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1u32;
    while w != one {
        let y = w.gcd_unchecked(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if c != one {
        // c is a p-th power; in F_p the p-th root of a coefficient is itself.
        let root_coeffs: Vec<FieldScalar> = c.coeffs().iter().step_by(p as usize).cloned().collect();
        let root = Poly::new(root_coeffs, *c.ctx(), c.var());
        for (g, m) in squarefree_fp(&root, p) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree: returns `(product, degree)` pairs.
fn distinct_degree(f: &Poly, p: u64) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let x = Poly::identity(f.ctx(), f.var());
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(p, &rest);
        let g = h.sub(&x).gcd_unchecked(&rest);
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero modulus");
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((rest, deg));
        }
    }
    out
}

fn random_poly(deg_bound: usize, p: u64, ctx: &FieldDescriptor, var: char, rng: &mut ChaCha8Rng) -> Poly {
    let cs = (0..deg_bound)
        .map(|_| FieldScalar::modular(rng.gen_range(0..p) as i64, p))
        .collect();
    Poly::new(cs, *ctx, var)
}

/// Cantor–Zassenhaus equal-degree splitting.
fn equal_degree(g: &Poly, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = g.degree().expect("nonzero");
    if n == d {
        out.push(g.clone());
        return;
    }
    let one = Poly::one(g.ctx(), g.var());
    loop {
        let a = random_poly(n, p, g.ctx(), g.var(), rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut acc = a.rem(g).expect("nonzero modulus");
            let mut term = acc.clone();
            for _ in 1..d {
                term = term.mul(&term).rem(g).expect("nonzero modulus");
                acc = acc.add(&term);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            let bits = (0..e.bits()).rev().map(|i| e.bit(i));
            a.pow_mod_bits(bits, g).sub(&one)
        };
        let h = b.gcd_unchecked(g);
        let dh = h.degree().unwrap_or(0);
        if dh > 0 && dh < n {
            let other = g.div_exact(&h).expect("gcd divides");
            equal_degree(&h, d, p, rng, out);
            equal_degree(&other, d, p, rng, out);
            return;
        }
    }
}

/// Factorization over `Q`, complete when every irreducible factor has degree
/// at most 3. Remaining cofactors of degree 4 or more are reported with
/// `certified = false`.
pub fn factor_over_q_limited(a: &Poly) -> Result<Factorization> {
    if *a.ctx() != FieldDescriptor::Rational {
        return Err(Error::domain("factor_over_q_limited needs a rational polynomial"));
    }
    let lc = a.leading().cloned().ok_or(Error::ZeroInput("factor_over_q_limited"))?;
    let mut out = Vec::new();
    for (part, mult) in squarefree_q(&a.monic()) {
        let (roots, cofactor) = extract_rational_roots(&part);
        for r in roots {
            let lin = Poly::new(
                vec![FieldScalar::Rational(-r), FieldScalar::one(&FieldDescriptor::Rational)],
                FieldDescriptor::Rational,
                a.var(),
            );
            out.push(Factor {
                poly: lin,
                multiplicity: mult,
                certified: true,
            });
        }
        if let Some((cof, certified_ok)) = cofactor {
            let deg = cof.degree().expect("nonzero");
            out.push(Factor {
                poly: cof,
                multiplicity: mult,
                certified: certified_ok && deg <= 3,
            });
        }
    }
    sort_factors(&mut out);
    Ok(Factorization { unit: lc, factors: out })
}

/// Yun's squarefree decomposition in characteristic zero (monic input).
fn squarefree_q(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let one = Poly::one(f.ctx(), f.var());
    let mut c = f.gcd_unchecked(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1u32;
    while w != one {
        let y = w.gcd_unchecked(&c);
        let z = w.div_exact(&y).expect("gcd divides");
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    out
}

/// Integer coefficients of a primitive multiple of `f`.
fn integer_coeffs(f: &Poly) -> Vec<BigInt> {
    let rats: Vec<BigRational> = f.coeffs().iter().map(|c| c.as_rational().expect("rational").clone()).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Rational roots of a squarefree polynomial, plus the remaining cofactor
/// (with a flag telling whether the root search was exhaustive).
fn extract_rational_roots(f: &Poly) -> (Vec<BigRational>, Option<(Poly, bool)>) {
    let mut roots = Vec::new();
    let mut rest = f.clone();
    let zero_root = Poly::identity(f.ctx(), f.var());
    if rest.coeff(0).is_zero() {
        roots.push(BigRational::zero());
        rest = rest.div_exact(&zero_root).expect("t divides");
    }
    let mut exhaustive = true;
    if rest.degree().unwrap_or(0) > 0 {
        let ints = integer_coeffs(&rest);
        match (divisors(&ints[0]), divisors(ints.last().expect("nonzero"))) {
            (Some(us), Some(vs)) => {
                let mut candidates: Vec<BigRational> = Vec::new();
                for &u in &us {
                    for &v in &vs {
                        let r = BigRational::new(BigInt::from(u), BigInt::from(v));
                        candidates.push(r.clone());
                        candidates.push(-r);
                    }
                }
                candidates.sort();
                candidates.dedup();
                for r in candidates {
                    if rest.degree().unwrap_or(0) == 0 {
                        break;
                    }
                    let val = rest.eval(&FieldScalar::Rational(r.clone()));
                    if val.is_zero() {
                        let lin = Poly::new(
                            vec![FieldScalar::Rational(-r.clone()), FieldScalar::one(&FieldDescriptor::Rational)],
                            FieldDescriptor::Rational,
                            f.var(),
                        );
                        rest = rest.div_exact(&lin).expect("root divides");
                        roots.push(r);
                    }
                }
            }
            _ => exhaustive = false,
        }
    }
    let cof = (rest.degree().unwrap_or(0) > 0).then_some((rest, exhaustive));
    (roots, cof)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64], field: FieldDescriptor) -> Poly {
        Poly::from_ints(cs, &field, 't')
    }

    fn summary(f: &Factorization) -> Vec<(Vec<String>, u32, bool)> {
        f.factors
            .iter()
            .map(|x| (x.poly.coeffs().iter().map(|c| c.to_string()).collect(), x.multiplicity, x.certified))
            .collect()
    }

    #[test]
    fn fp_examples() {
        let f3 = FieldDescriptor::Prime(3);
        let r = factor_over_fp(&poly(&[1, 0, 1], f3), DEFAULT_SEED).unwrap();
        assert_eq!(r.factors.len(), 1);
        assert_eq!(r.factors[0].poly, poly(&[1, 0, 1], f3));

        let f5 = FieldDescriptor::Prime(5);
        let r = factor_over_fp(&poly(&[1, 0, 1], f5), DEFAULT_SEED).unwrap();
        assert_eq!(
            summary(&r),
            vec![(vec!["2".into(), "1".into()], 1, true), (vec!["3".into(), "1".into()], 1, true)]
        );

        let f7 = FieldDescriptor::Prime(7);
        let r = factor_over_fp(&poly(&[0, 0, 1], f7), DEFAULT_SEED).unwrap();
        assert_eq!(summary(&r), vec![(vec!["0".into(), "1".into()], 2, true)]);
    }

    #[test]
    fn fp_inseparable_powers() {
        // (t + 1)^5 * (t^2 + 2) over F_5, exercising the p-th root branch.
        let f5 = FieldDescriptor::Prime(5);
        let a = poly(&[1, 1], f5).pow(5).mul(&poly(&[2, 0, 1], f5)).scale(&FieldScalar::modular(3, 5));
        let r = factor_over_fp(&a, 7).unwrap();
        assert_eq!(r.recompose('t'), a);
        assert_eq!(r.factors.iter().map(|f| f.multiplicity).collect::<Vec<_>>(), vec![5, 1]);
    }

    #[test]
    fn fp_rejects_bad_input() {
        let f5 = FieldDescriptor::Prime(5);
        assert!(matches!(factor_over_fp(&Poly::zero(&f5, 't'), 1), Err(Error::ZeroInput(_))));
        assert!(factor_over_fp(&poly(&[1, 1], FieldDescriptor::Rational), 1).is_err());
    }

    #[test]
    fn q_examples() {
        let q = FieldDescriptor::Rational;
        let r = factor_over_q_limited(&poly(&[0, -1, 0, 1], q)).unwrap();
        assert_eq!(
            summary(&r),
            vec![
                (vec!["-1".into(), "1".into()], 1, true),
                (vec!["0".into(), "1".into()], 1, true),
                (vec!["1".into(), "1".into()], 1, true),
            ]
        );
        let r = factor_over_q_limited(&poly(&[1, 0, 1], q)).unwrap();
        assert_eq!(summary(&r), vec![(vec!["1".into(), "0".into(), "1".into()], 1, true)]);

        // (t^4 + t + 1) * t: the quartic is left uncertified
        let r = factor_over_q_limited(&poly(&[0, 1, 1, 0, 0, 1], q)).unwrap();
        assert_eq!(
            summary(&r),
            vec![
                (vec!["0".into(), "1".into()], 1, true),
                (vec!["1".into(), "1".into(), "0".into(), "0".into(), "1".into()], 1, false),
            ]
        );
        assert!(!r.is_certified());
    }

    #[test]
    fn q_repeated_and_rational_roots() {
        let q = FieldDescriptor::Rational;
        // 4 (t - 1/2)^2 (t^2 + 1)^3
        let half = Poly::new(
            vec![FieldScalar::rational(-1, 2), FieldScalar::rational(1, 1)],
            q,
            't',
        );
        let a = half.pow(2).mul(&poly(&[1, 0, 1], q).pow(3)).scale(&FieldScalar::rational(4, 1));
        let r = factor_over_q_limited(&a).unwrap();
        assert_eq!(r.recompose('t'), a);
        assert!(r.is_certified());
        assert_eq!(r.factors.iter().map(|f| f.multiplicity).collect::<Vec<_>>(), vec![2, 3]);
    }
}
