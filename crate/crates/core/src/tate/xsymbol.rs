//! Symbols that are additive on monomial lattices (`f(A) f(B) = f(A+B) f(A∩B)`,
//! trivial on `0` and `V`, constant on commensurability classes) and the
//! engine that checks the hypotheses of the general reciprocity theorem on a
//! finite family and compares both sides of its conclusion.

use crate::arith::{Field, FieldScalar};
use crate::error::{Error, Result};
use crate::function_field::{Place, Rf};
use crate::group::GroupValue;
use crate::segal_wilson::{cocycle_on_set, TruncatedPowerSeries};

use super::lattice::{independence_failure, lattice_sum_all, MonomialLattice, MonomialSet};
use super::operator::{set_index, MonomialOperator};
use super::residue::residue_on_set;

/// A residue datum `(f, g, x)` attached to one slot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResidueSlot {
    pub f: Rf,
    pub g: Rf,
    pub place: Place,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum XSymbol {
    /// `A ↦ Σ_slots w · i(u^m, A_slot)`: each monomial of a slot spans a
    /// `w`-dimensional space.
    Index { shifts: Vec<i64>, weights: Vec<i64> },
    /// `A ↦ Σ_slots tr res_{A_slot}(f dg)`; slots must be ray-like or
    /// finite/cofinite (period 1).
    Residue { slots: Vec<ResidueSlot> },
    /// Commutator of the commuting operators `σ = c u^m`, `τ = d u^n`
    /// acting diagonally on every slot.
    Tame { sigma: MonomialOperator, tau: MonomialOperator },
    /// `A ↦ Π_slots exp_{z²}(½ res_{A_slot}(f dg))`.
    Cocycle { slots: Vec<ResidueSlot>, order: usize },
}

impl XSymbol {
    /// The index of `u^m` acting on every one of `n_slots` slots.
    pub fn index(sigma: &MonomialOperator, n_slots: usize) -> Self {
        XSymbol::Index {
            shifts: vec![sigma.exponent(); n_slots],
            weights: vec![1; n_slots],
        }
    }

    /// Required slot count, if fixed.
    pub fn n_slots(&self) -> Option<usize> {
        match self {
            XSymbol::Index { shifts, .. } => Some(shifts.len()),
            XSymbol::Residue { slots } | XSymbol::Cocycle { slots, .. } => Some(slots.len()),
            XSymbol::Tame { .. } => None,
        }
    }

    pub fn identity(&self) -> GroupValue {
        match self {
            XSymbol::Index { .. } => GroupValue::Int(0),
            XSymbol::Residue { slots } => GroupValue::Additive(FieldScalar::zero(slots[0].f.coeff_ctx())),
            XSymbol::Tame { sigma, .. } => GroupValue::Multiplicative(FieldScalar::one(&sigma.scalar().descriptor())),
            XSymbol::Cocycle { order, .. } => GroupValue::Series(TruncatedPowerSeries::one(*order)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            XSymbol::Index { .. } => "index",
            XSymbol::Residue { .. } => "residue",
            XSymbol::Tame { .. } => "tame",
            XSymbol::Cocycle { .. } => "cocycle",
        }
    }

    fn check_slots(&self, a: &MonomialLattice) -> Result<()> {
        match self.n_slots() {
            Some(n) if n != a.n_slots() => Err(Error::domain(format!(
                "{} symbol has {n} slots, lattice {a} has {}",
                self.name(),
                a.n_slots()
            ))),
            _ => Ok(()),
        }
    }

    pub fn evaluate(&self, a: &MonomialLattice) -> Result<GroupValue> {
        self.check_slots(a)?;
        let slots = a.slots();
        Ok(match self {
            XSymbol::Index { shifts, weights } => {
                let mut total = 0;
                for ((s, m), w) in slots.iter().zip(shifts).zip(weights) {
                    total += w * set_index(*m, s)?;
                }
                GroupValue::Int(total)
            }
            XSymbol::Residue { slots: data } => {
                let field = *data[0].f.coeff_ctx();
                let mut total = FieldScalar::zero(&field);
                for (s, d) in slots.iter().zip(data) {
                    total = total.add(&residue_on_set(&d.f, &d.g, &d.place, s)?);
                }
                GroupValue::Additive(total)
            }
            XSymbol::Tame { sigma, tau } => {
                let mut total = FieldScalar::one(&sigma.scalar().descriptor());
                for s in slots {
                    total = total.mul(&tame_on_set(sigma, tau, s)?);
                }
                GroupValue::Multiplicative(total)
            }
            XSymbol::Cocycle { slots: data, order } => {
                let mut total = TruncatedPowerSeries::one(*order);
                for (s, d) in slots.iter().zip(data) {
                    total = total.mul(&cocycle_on_set(&d.f, &d.g, &d.place, s, *order)?);
                }
                GroupValue::Series(total)
            }
        })
    }
}

/// Closed form of the commutator of `σ = c u^m` and `τ = d u^n` relative to
/// a monomial set with period `p | m, n`. Each residue class mod `p` is a copy
/// of `k((w))`, `w = u^p`, on which `σ = c w^{m/p}`, `τ = d w^{n/p}`; a class
/// bounded below contributes `(-1)^{m'n'} c^{n'} d^{-m'}`, a class bounded
/// above the inverse, finite and cofinite classes nothing.
pub fn tame_on_set(sigma: &MonomialOperator, tau: &MonomialOperator, s: &MonomialSet) -> Result<FieldScalar> {
    let p = s.period() as i64;
    let (m, n) = (sigma.exponent(), tau.exponent());
    if m % p != 0 || n % p != 0 {
        return Err(Error::NotStabilized(s.to_string()));
    }
    let (m1, n1) = (m / p, n / p);
    let (c, d) = (sigma.scalar(), tau.scalar());
    let class_value = {
        let v = c.pow(n1).expect("unit").mul(&d.pow(-m1).expect("unit"));
        if (m1 * n1).rem_euclid(2) == 1 {
            v.neg()
        } else {
            v
        }
    };
    let mut total = FieldScalar::one(&c.descriptor());
    for r in 0..s.period() {
        match (s.below_pattern()[r], s.above_pattern()[r]) {
            (false, true) => total = total.mul(&class_value),
            (true, false) => total = total.mul(&class_value.inv().expect("unit")),
            _ => {}
        }
    }
    Ok(total)
}

/// Outcome of checking the three X-symbol axioms on a pair of lattices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomCheck {
    pub trivial_on_zero_and_whole: bool,
    /// Vacuously true when `A` and `B` are not commensurable.
    pub commensurability_invariant: bool,
    pub additive: bool,
    /// `(f(A) f(B), f(A+B) f(A∩B))`.
    pub additivity_sides: (GroupValue, GroupValue),
}

impl AxiomCheck {
    pub fn holds(&self) -> bool {
        self.trivial_on_zero_and_whole && self.commensurability_invariant && self.additive
    }
}

pub fn xsymbol_axiom_check(sym: &XSymbol, a: &MonomialLattice, b: &MonomialLattice) -> Result<AxiomCheck> {
    sym.check_slots(a)?;
    sym.check_slots(b)?;
    let n = a.n_slots();
    let zero = sym.evaluate(&MonomialLattice::zero(n))?;
    let whole = sym.evaluate(&MonomialLattice::full(n))?;
    let fa = sym.evaluate(a)?;
    let fb = sym.evaluate(b)?;
    let lhs = fa.combine(&fb);
    let rhs = sym.evaluate(&a.sum(b))?.combine(&sym.evaluate(&a.intersect(b))?);
    Ok(AxiomCheck {
        trivial_on_zero_and_whole: zero.is_identity() && whole.is_identity(),
        commensurability_invariant: !a.commensurable(b) || fa == fb,
        additive: lhs == rhs,
        additivity_sides: (lhs, rhs),
    })
}

/// Largest family the engine enumerates (it visits all pairs `J' ⊂ J`).
pub const MAX_FAMILY: usize = 10;

/// A symbol, a finite family `{A_i}` and lattices `B_J` for every `J ⊂ I`,
/// stored by bitmask of `J`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XSymbolFamily {
    symbol: XSymbol,
    members: Vec<MonomialLattice>,
    b: Vec<MonomialLattice>,
}

impl XSymbolFamily {
    pub fn new(symbol: XSymbol, members: Vec<MonomialLattice>, b: Vec<MonomialLattice>) -> Result<Self> {
        if members.is_empty() || members.len() > MAX_FAMILY {
            return Err(Error::domain(format!("family size must be 1..={MAX_FAMILY}, got {}", members.len())));
        }
        if b.len() != 1 << members.len() {
            return Err(Error::domain(format!("need {} lattices B_J, got {}", 1 << members.len(), b.len())));
        }
        let n = members[0].n_slots();
        if members.iter().chain(&b).any(|l| l.n_slots() != n) {
            return Err(Error::domain("all lattices of a family need the same slot count"));
        }
        symbol.check_slots(&members[0])?;
        Ok(XSymbolFamily { symbol, members, b })
    }

    /// `B_J = B_I + Σ_{i∉J} A_i`.
    pub fn from_base(symbol: XSymbol, members: Vec<MonomialLattice>, b_full: MonomialLattice) -> Result<Self> {
        let n = members.len();
        if n == 0 || n > MAX_FAMILY {
            return Err(Error::domain(format!("family size must be 1..={MAX_FAMILY}, got {n}")));
        }
        let b = (0..1usize << n)
            .map(|mask| {
                let outside = (0..n).filter(|i| mask & (1 << i) == 0).map(|i| &members[i]);
                b_full.sum(&lattice_sum_all(outside, b_full.n_slots()))
            })
            .collect();
        Self::new(symbol, members, b)
    }

    pub fn symbol(&self) -> &XSymbol {
        &self.symbol
    }

    pub fn members(&self) -> &[MonomialLattice] {
        &self.members
    }

    /// `B_J` for the subset given as a bitmask.
    pub fn b(&self, mask: usize) -> &MonomialLattice {
        &self.b[mask]
    }
}

fn subset(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

fn hypothesis(label: &'static str, mask: usize, n: usize, detail: String) -> Error {
    Error::Hypothesis {
        label,
        subset: subset(mask, n),
        detail,
    }
}

/// Both sides of `f(B_∅) = Π f(A_i)` and the per-member values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReciprocityRun {
    pub lhs: GroupValue,
    pub rhs: GroupValue,
    pub terms: Vec<GroupValue>,
    pub equal: bool,
}

/// Checks `A_i ⊂ B_J` (`i ∉ J`) and hypotheses (a), (b), (c) for every
/// `J ⊂ I`, then evaluates both sides of the reciprocity law.
pub fn general_reciprocity_run(fam: &XSymbolFamily) -> Result<ReciprocityRun> {
    let n = fam.members.len();
    let full = (1usize << n) - 1;
    let terms = fam
        .members
        .iter()
        .map(|a| fam.symbol.evaluate(a))
        .collect::<Result<Vec<_>>>()?;
    for mask in 0..=full {
        let bj = &fam.b[mask];
        for i in (0..n).filter(|i| mask & (1 << i) == 0) {
            if !fam.members[i].is_subset(bj) {
                return Err(hypothesis("containment", mask, n, format!("A_{i} is not contained in B_J = {bj}")));
            }
        }
        // (a): every J' ⊂ J
        let mut sub = mask;
        loop {
            let rest = (0..n).filter(|i| mask & !sub & (1 << i) != 0).map(|i| &fam.members[i]);
            let expect = bj.sum(&lattice_sum_all(rest, bj.n_slots()));
            if fam.b[sub] != expect {
                return Err(hypothesis(
                    "a",
                    mask,
                    n,
                    format!("B_J' for J' = {:?} is {}, expected {expect}", subset(sub, n), fam.b[sub]),
                ));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        // (b)
        let mut indep: Vec<MonomialLattice> = subset(mask, n).into_iter().map(|j| fam.members[j].clone()).collect();
        indep.push(bj.clone());
        if let Some(k) = independence_failure(&indep) {
            let who = if k + 1 == indep.len() { "B_J".to_string() } else { format!("A_{}", subset(mask, n)[k]) };
            return Err(hypothesis("b", mask, n, format!("{who} meets the others in an infinite set")));
        }
        // (c)
        let outside_trivial = (0..n).filter(|i| mask & (1 << i) == 0).all(|i| terms[i].is_identity());
        if outside_trivial {
            let value = fam.symbol.evaluate(bj)?;
            if !value.is_identity() {
                return Err(hypothesis("c", mask, n, format!("f(B_J) = {value} although f(A_i) = 1 for i outside J")));
            }
        }
    }
    let lhs = fam.symbol.evaluate(&fam.b[0])?;
    let rhs = GroupValue::combine_all(&terms, fam.symbol.identity());
    let equal = lhs == rhs;
    Ok(ReciprocityRun { lhs, rhs, terms, equal })
}

/// The index family of a function's divisor: one slot per place `x` in the
/// support, `A_x = u^0 k(x)[[u]]` in slot `x`, `σ` acting on slot `x` as
/// `u^{v_x(f)}` with weight `deg(x)`, and `B_J = Σ_{x∉J} A_x`.
pub fn valuation_index_family(support: &[(Place, i64)]) -> Result<XSymbolFamily> {
    let n = support.len();
    if n == 0 {
        return Err(Error::domain("empty support"));
    }
    let symbol = XSymbol::Index {
        shifts: support.iter().map(|(_, v)| *v).collect(),
        weights: support.iter().map(|(x, _)| x.degree() as i64).collect(),
    };
    let members = (0..n)
        .map(|i| {
            let mut slots = vec![MonomialSet::empty(); n];
            slots[i] = MonomialSet::ray(0);
            MonomialLattice::new(slots)
        })
        .collect();
    XSymbolFamily::from_base(symbol, members, MonomialLattice::zero(n))
}

/// Lemma 2.8 instance: for `σ = u^m` and `Ṽ` the union of the residue
/// classes mod `p` (with `p | m`) listed in `classes`, a set `S` containing
/// every other class outright has `i(σ, S) = i(σ, S ∩ Ṽ)`.
pub fn split_index_sides(m: i64, s: &MonomialSet, p: usize, classes: &[i64]) -> Result<(i64, i64)> {
    if p == 0 || m % p as i64 != 0 {
        return Err(Error::domain(format!("the period {p} must divide the shift {m}")));
    }
    let tilde = MonomialSet::residue_classes(p, classes);
    if !tilde.complement().is_subset(s) {
        return Err(Error::domain("S must contain the classes outside the invariant summand"));
    }
    Ok((set_index(m, s)?, set_index(m, &s.intersection(&tilde))?))
}
