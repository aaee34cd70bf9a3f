//! Residues of `f dg` at a place: the classical coefficient extraction and
//! the trace of the commutator of truncated multiplication operators.
//!
//! Operators act on `V = k(x)((u))` with basis `e_j = u^j`; multiplication
//! by `h` has matrix entries `h_{j-k}`. Composing with the projection onto a
//! lattice gives an operator whose commutator with the other multiplication
//! operator has finite rank; its trace is the residue.

use crate::arith::{rf_trace, Field, FieldScalar, ResidueFieldElem};
use crate::error::{Error, Result};
use crate::function_field::{local_expansion, series_residue_coeff, valuation, LaurentSeriesTrunc, Place, Rf};

use super::lattice::MonomialSet;

/// Which multiplication operator is composed with the projection.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Truncation {
    /// `f₁ = P∘f`, `g₁ = g`.
    #[default]
    F,
    /// `f₁ = f`, `g₁ = P∘g`.
    G,
}

fn nonzero(f: &Rf, g: &Rf, what: &'static str) -> Result<()> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput(what));
    }
    Ok(())
}

/// `tr_{k(x)/k}` of the coefficient of `u^{-1}` in `f · dg/du`.
pub fn classical_residue(f: &Rf, g: &Rf, x: &Place) -> Result<FieldScalar> {
    Ok(rf_trace(&classical_residue_local(f, g, x)?))
}

/// The untraced residue `res_x(f dg) ∈ k(x)`.
pub fn classical_residue_local(f: &Rf, g: &Rf, x: &Place) -> Result<ResidueFieldElem> {
    nonzero(f, g, "classical_residue")?;
    let vf = valuation(f, x)?;
    let vg = valuation(g, x)?;
    // f up to u^{-v_g}, g up to u^{-v_f}: enough for the u^{-1} term of f·g'
    let nf = vf.max(-vg);
    let ng = vg.max(-vf);
    let fs = local_expansion(f, x, (nf - vf + 1) as usize)?;
    let gs = local_expansion(g, x, (ng - vg + 1) as usize)?;
    series_residue_coeff(&fs.mul(&gs.derivative()))
}

/// Smallest admissible window: `|v_f| + |v_g| + 2D + 2` with
/// `D = max(0, -v_f - v_g)` the number of expansion terms past the leading
/// one that the residue depends on.
pub fn residue_window_bound(f: &Rf, g: &Rf, x: &Place) -> Result<usize> {
    nonzero(f, g, "abstract_residue_trace")?;
    let vf = valuation(f, x)?;
    let vg = valuation(g, x)?;
    Ok(window_bound(vf, vg))
}

fn window_bound(vf: i64, vg: i64) -> usize {
    let d = (-vf - vg).max(0);
    (vf.abs() + vg.abs() + 2 * d + 2) as usize
}

/// Diagonal of `[A, B]` on the index range `[lo, hi]`, where `A` and `B` are
/// the finite matrices of the truncated and untruncated multiplication
/// operators.
fn commutator_diagonal(
    f: &LaurentSeriesTrunc,
    g: &LaurentSeriesTrunc,
    in_lattice: &dyn Fn(i64) -> bool,
    truncation: Truncation,
    lo: i64,
    hi: i64,
) -> Result<Vec<ResidueFieldElem>> {
    let n = (hi - lo + 1) as usize;
    let matrix = |s: &LaurentSeriesTrunc, project: bool| -> Result<Vec<Vec<ResidueFieldElem>>> {
        let zero = ResidueFieldElem::zero(s.residue_context());
        (0..n)
            .map(|r| {
                let j = lo + r as i64;
                (0..n)
                    .map(|c| {
                        let k = lo + c as i64;
                        if project && !in_lattice(j) {
                            Ok(zero.clone())
                        } else {
                            s.coeff(j - k)
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let (a, b) = match truncation {
        Truncation::F => (matrix(f, true)?, matrix(g, false)?),
        Truncation::G => (matrix(f, false)?, matrix(g, true)?),
    };
    Ok((0..n)
        .map(|i| {
            (0..n).fold(ResidueFieldElem::zero(f.residue_context()), |acc, k| {
                acc.add(&a[i][k].mul(&b[k][i])).sub(&b[i][k].mul(&a[k][i]))
            })
        })
        .collect())
}

/// Sums the diagonal over interior indices after checking that every
/// nonzero entry lies in `predicted` and inside the interior.
fn interior_trace(
    diag: &[ResidueFieldElem],
    lo: i64,
    interior: (i64, i64),
    predicted: &dyn Fn(i64) -> bool,
    predicted_range: (i64, i64),
) -> Result<ResidueFieldElem> {
    let (plo, phi) = predicted_range;
    if plo <= phi && (plo < interior.0 || phi > interior.1) {
        return Err(Error::SupportEscape(if plo < interior.0 { plo } else { phi }));
    }
    let mut acc = ResidueFieldElem::zero(diag[0].modulus());
    for (r, c) in diag.iter().enumerate() {
        let i = lo + r as i64;
        if i < interior.0 || i > interior.1 {
            continue;
        }
        if !c.is_zero() && !predicted(i) {
            return Err(Error::SupportEscape(i));
        }
        acc = acc.add(c);
    }
    Ok(acc)
}

/// Residue as the trace of `[f₁, g₁]` on the basis `u^{-W} .. u^{W+D}`.
pub fn abstract_residue_trace(f: &Rf, g: &Rf, x: &Place, window: usize) -> Result<FieldScalar> {
    abstract_residue_trace_with(f, g, x, window, Truncation::F)
}

pub fn abstract_residue_trace_with(
    f: &Rf,
    g: &Rf,
    x: &Place,
    window: usize,
    truncation: Truncation,
) -> Result<FieldScalar> {
    nonzero(f, g, "abstract_residue_trace")?;
    let vf = valuation(f, x)?;
    let vg = valuation(g, x)?;
    let bound = window_bound(vf, vg);
    if window < bound {
        return Err(Error::WindowTooSmall { window, bound });
    }
    let w = window as i64;
    let d = (-vf - vg).max(0);
    let (lo, hi) = (-w, w + d);
    let span = hi - lo;
    let fs = local_expansion(f, x, (span - vf + 1) as usize)?;
    let gs = local_expansion(g, x, (span - vg + 1) as usize)?;
    let diag = commutator_diagonal(&fs, &gs, &|j| j >= 0, truncation, lo, hi)?;
    let m = (-vf.min(vg)).max(0);
    // support is [v_h, -1] ∪ [0, -v_k - 1] for truncated k and plain h
    let (vk, vh) = match truncation {
        Truncation::F => (vf, vg),
        Truncation::G => (vg, vf),
    };
    let predicted = move |i: i64| (vh <= i && i <= -1) || (0 <= i && i <= -vk - 1);
    let prange = (vh.min(0), (-vk - 1).max(-1));
    let local = interior_trace(&diag, lo, (lo + m, hi - m), &predicted, prange)?;
    Ok(rf_trace(&local))
}

/// `res_S(f dg)` for the lattice spanned by `u^i`, `i ∈ S`, at `x`.
///
/// `S` must be ray-like up to finitely many exceptions or a complement of
/// such a set (period 1); for other periods the projection does not give a
/// finite-rank commutator.
pub fn residue_on_set(f: &Rf, g: &Rf, x: &Place, s: &MonomialSet) -> Result<FieldScalar> {
    nonzero(f, g, "residue_on_set")?;
    if s.period() != 1 {
        return Err(Error::domain(format!(
            "residue symbol needs a period-1 lattice, got {s}"
        )));
    }
    let vf = valuation(f, x)?;
    let vg = valuation(g, x)?;
    let m = (-vf.min(vg)).max(0);
    let (wlo, whi) = s.window();
    let (lo, hi) = (wlo - 2 * m - 1, whi + 2 * m);
    let span = hi - lo;
    // entries need exponents up to `span`; a function vanishing beyond that
    // contributes zeros only, for which its leading term suffices
    let fs = local_expansion(f, x, (span - vf + 1).max(1) as usize)?;
    let gs = local_expansion(g, x, (span - vg + 1).max(1) as usize)?;
    let diag = commutator_diagonal(&fs, &gs, &|j| s.contains(j), Truncation::F, lo, hi)?;
    let prange = (wlo - m, whi - 1 + m);
    let predicted = move |i: i64| prange.0 <= i && i <= prange.1;
    let local = interior_trace(&diag, lo, (lo + m, hi - m), &predicted, prange)?;
    Ok(rf_trace(&local))
}
