use std::fmt;
use std::sync::Arc;

use crate::arith::{Field, Poly, Polynomial, ResidueFieldElem};
use crate::error::{Error, Result};

use super::place::{valuation, Place};
use super::rational::Rf;

/// Local parameter in which a series is written.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Uniformizer {
    /// `u = t - T` at a finite place, `T` the class of `t` in `k(x)`.
    Shift,
    /// `u = 1/t` at infinity.
    InverseT,
}

/// Laurent series `Σ c_e u^e` with coefficients known for `start <= e <= precision`.
///
/// `coeffs[0]` is nonzero, except for the known-zero truncation which has
/// no coefficients and `start = precision + 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSeriesTrunc {
    start: i64,
    coeffs: Vec<ResidueFieldElem>,
    precision: i64,
    ctx: Arc<Poly>,
    uniformizer: Uniformizer,
}

impl LaurentSeriesTrunc {
    /// Builds a series from coefficients at `start, start + 1, ..`; the
    /// precision is the last listed exponent.
    pub fn new(start: i64, coeffs: Vec<ResidueFieldElem>, ctx: &Arc<Poly>, uniformizer: Uniformizer) -> Self {
        let precision = start + coeffs.len() as i64 - 1;
        Self::normalized(start, coeffs, precision, ctx, uniformizer)
    }

    fn normalized(
        start: i64,
        mut coeffs: Vec<ResidueFieldElem>,
        precision: i64,
        ctx: &Arc<Poly>,
        uniformizer: Uniformizer,
    ) -> Self {
        coeffs.truncate((precision - start + 1).max(0) as usize);
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        coeffs.drain(..lead);
        let start = if coeffs.is_empty() { precision + 1 } else { start + lead as i64 };
        LaurentSeriesTrunc {
            start,
            coeffs,
            precision,
            ctx: Arc::clone(ctx),
            uniformizer,
        }
    }

    /// Lowest exponent with a nonzero coefficient, `None` if every known
    /// coefficient vanishes.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn uniformizer(&self) -> Uniformizer {
        self.uniformizer
    }

    pub fn residue_context(&self) -> &Arc<Poly> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[ResidueFieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> Result<ResidueFieldElem> {
        if e > self.precision {
            return Err(Error::InsufficientPrecision {
                needed: e,
                known: self.precision,
            });
        }
        Ok(if e < self.start {
            ResidueFieldElem::zero(&self.ctx)
        } else {
            self.coeffs[(e - self.start) as usize].clone()
        })
    }

    fn compatible(&self, other: &Self) {
        assert_eq!(self.ctx, other.ctx, "series over different residue fields");
        assert_eq!(self.uniformizer, other.uniformizer, "series in different uniformizers");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.compatible(other);
        let precision = self.precision.min(other.precision);
        let start = self.start.min(other.start);
        let coeffs = (start..=precision)
            .map(|e| self.coeff(e).expect("in range").add(&other.coeff(e).expect("in range")))
            .collect();
        Self::normalized(start, coeffs, precision, &self.ctx, self.uniformizer)
    }

    /// Product, known up to `min(N_a + v_b, N_b + v_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        self.compatible(other);
        let precision = (self.precision + other.start).min(other.precision + self.start);
        let start = self.start + other.start;
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::normalized(start, Vec::new(), precision, &self.ctx, self.uniformizer);
        }
        let len = (precision - start + 1).max(0) as usize;
        let mut coeffs = vec![ResidueFieldElem::zero(&self.ctx); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::normalized(start, coeffs, precision, &self.ctx, self.uniformizer)
    }

    /// Termwise derivative `d/du`, known up to `N - 1`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.start + i as i64;
                c.mul(&ResidueFieldElem::from_int(e, &self.ctx))
            })
            .collect();
        Self::normalized(self.start - 1, coeffs, self.precision - 1, &self.ctx, self.uniformizer)
    }

    /// Drops coefficients above `precision`.
    pub fn truncate(&self, precision: i64) -> Self {
        let precision = precision.min(self.precision);
        Self::normalized(self.start, self.coeffs.clone(), precision, &self.ctx, self.uniformizer)
    }
}

impl fmt::Display for LaurentSeriesTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = self.start + i as i64;
            let s = c.to_string();
            let s = if s.contains(['+', '-']) && c.rep().degree() > Some(0) { format!("({s})") } else { s };
            match e {
                0 => write!(f, "{s}")?,
                1 => write!(f, "{s}*u")?,
                _ => write!(f, "{s}*u^{e}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(u^{})", self.precision + 1)
    }
}

/// Power-series quotient `a / b` to `n` terms; `b(0)` must be invertible.
fn divide_series(a: &Polynomial<ResidueFieldElem>, b: &Polynomial<ResidueFieldElem>, n: usize) -> Vec<ResidueFieldElem> {
    let b0_inv = b.coeff(0).inv().expect("unit constant term");
    let mut c: Vec<ResidueFieldElem> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = a.coeff(k);
        for j in 1..=k.min(b.degree().unwrap_or(0)) {
            acc = acc.sub(&b.coeff(j).mul(&c[k - j]));
        }
        c.push(acc.mul(&b0_inv));
    }
    c
}

/// The Laurent expansion of `f` at `x` with exactly `n_terms` coefficients
/// starting at `v_x(f)`.
///
/// At a finite place the parameter is `u = t - T` with coefficients in
/// `k(x) = k[T]/(π)`; for a rational place this is `π` itself. At infinity
/// the parameter is `u = 1/t`.
pub fn local_expansion(f: &Rf, x: &Place, n_terms: usize) -> Result<LaurentSeriesTrunc> {
    if n_terms == 0 {
        return Err(Error::domain("local_expansion needs at least one term"));
    }
    let v = valuation(f, x)?;
    let field = *f.coeff_ctx();
    let ctx = x.residue_context(field);
    let lift = |p: &Poly| p.map_coeffs(&ctx, 'u', |c| ResidueFieldElem::from_scalar(c.clone(), &ctx));
    let (a, b, uniformizer) = match x {
        Place::Finite(_) => {
            let shift = Polynomial::new(
                vec![ResidueFieldElem::generator(&ctx), ResidueFieldElem::one(&ctx)],
                Arc::clone(&ctx),
                'u',
            );
            let n = lift(f.num()).compose(&shift);
            let d = lift(f.den()).compose(&shift);
            let (ln, ld) = (n.low_degree().expect("nonzero"), d.low_degree().expect("nonzero"));
            debug_assert_eq!(ln as i64 - ld as i64, v);
            (n.shift_down(ln), d.shift_down(ld), Uniformizer::Shift)
        }
        Place::Infinity => {
            let dn = f.num().degree().expect("nonzero");
            let dd = f.den().degree().expect("nonzero");
            (lift(&f.num().reversed(dn)), lift(&f.den().reversed(dd)), Uniformizer::InverseT)
        }
    };
    let coeffs = divide_series(&a, &b, n_terms);
    Ok(LaurentSeriesTrunc::new(v, coeffs, &ctx, uniformizer))
}

/// The coefficient at `u^{-1}`.
pub fn series_residue_coeff(s: &LaurentSeriesTrunc) -> Result<ResidueFieldElem> {
    s.coeff(-1)
}
