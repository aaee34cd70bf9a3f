//! Monomial lattices: spans of `{u^i : i ∈ S}` for eventually periodic `S ⊂ Z`.
//!
//! A set is stored by a period `p`, the residue pattern it follows far below,
//! the pattern it follows far above, and an explicit window `[lo, hi)` in
//! between. Ray-like sets `[n0, ∞) ∪ added \ removed` are the period-1 case
//! with empty lower and full upper pattern. Sums and intersections of
//! monomial lattices are unions and intersections of exponent sets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialSet {
    period: usize,
    below: Vec<bool>,
    above: Vec<bool>,
    lo: i64,
    middle: Vec<bool>,
}

fn minimal_period(pattern: &[bool]) -> usize {
    let p = pattern.len();
    (1..=p)
        .filter(|d| p % d == 0)
        .find(|&d| (0..p).all(|i| pattern[i] == pattern[i % d]))
        .expect("p itself is a period")
}

impl MonomialSet {
    /// Builds the set agreeing with `below` on `n < lo`, with `middle` on
    /// `lo <= n < lo + middle.len()`, and with `above` beyond.
    pub fn from_parts(below: Vec<bool>, above: Vec<bool>, lo: i64, middle: Vec<bool>) -> Self {
        let p = below.len().lcm(&above.len());
        let below = (0..p).map(|i| below[i % below.len()]).collect();
        let above = (0..p).map(|i| above[i % above.len()]).collect();
        let raw = MonomialSet {
            period: p,
            below,
            above,
            lo,
            middle,
        };
        raw.canonical()
    }

    pub fn empty() -> Self {
        Self::from_parts(vec![false], vec![false], 0, Vec::new())
    }

    pub fn full() -> Self {
        Self::from_parts(vec![true], vec![true], 0, Vec::new())
    }

    /// `[n0, ∞)`.
    pub fn ray(n0: i64) -> Self {
        Self::from_parts(vec![false], vec![true], n0, Vec::new())
    }

    /// `(-∞, n0)`.
    pub fn down_ray(n0: i64) -> Self {
        Self::from_parts(vec![true], vec![false], n0, Vec::new())
    }

    pub fn finite(elems: impl IntoIterator<Item = i64>) -> Self {
        let elems: BTreeSet<i64> = elems.into_iter().collect();
        match (elems.first(), elems.last()) {
            (Some(&a), Some(&b)) => {
                let middle = (a..=b).map(|n| elems.contains(&n)).collect();
                Self::from_parts(vec![false], vec![false], a, middle)
            }
            _ => Self::empty(),
        }
    }

    /// `([n0, ∞) ∪ added) \ removed`.
    pub fn ray_with(n0: i64, added: &[i64], removed: &[i64]) -> Self {
        Self::ray(n0).union(&Self::finite(added.iter().copied())).difference(&Self::finite(removed.iter().copied()))
    }

    /// All `n ≡ r (mod p)` for `r` in `residues`.
    pub fn residue_classes(p: usize, residues: &[i64]) -> Self {
        assert!(p > 0, "period must be positive");
        let mut pat = vec![false; p];
        for r in residues {
            pat[r.rem_euclid(p as i64) as usize] = true;
        }
        Self::from_parts(pat.clone(), pat, 0, Vec::new())
    }

    fn hi(&self) -> i64 {
        self.lo + self.middle.len() as i64
    }

    fn pattern_at(pattern: &[bool], n: i64) -> bool {
        pattern[n.rem_euclid(pattern.len() as i64) as usize]
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < self.lo {
            Self::pattern_at(&self.below, n)
        } else if n >= self.hi() {
            Self::pattern_at(&self.above, n)
        } else {
            self.middle[(n - self.lo) as usize]
        }
    }

    fn canonical(self) -> Self {
        let p = minimal_period(&self.below).lcm(&minimal_period(&self.above));
        let below: Vec<bool> = self.below[..p].to_vec();
        let above: Vec<bool> = self.above[..p].to_vec();
        let span_lo = self.lo - p as i64;
        let span_hi = self.hi() + p as i64;
        let first_off_below = (self.lo..span_hi).find(|&n| self.contains(n) != Self::pattern_at(&below, n));
        let last_off_above = (span_lo..self.hi()).rev().find(|&n| self.contains(n) != Self::pattern_at(&above, n));
        let (lo, hi) = match (first_off_below, last_off_above) {
            (Some(l), Some(h)) if l <= h => (l, h + 1),
            (Some(_), Some(h)) => (h + 1, h + 1),
            _ => (0, 0),
        };
        let middle = (lo..hi).map(|n| self.contains(n)).collect();
        MonomialSet {
            period: p,
            below,
            above,
            lo,
            middle,
        }
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let p = self.period.lcm(&other.period);
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let pat = |f: &dyn Fn(&Self, i64) -> bool| -> Vec<bool> {
            (0..p as i64).map(|i| op(f(self, i), f(other, i))).collect()
        };
        let below = pat(&|s, i| Self::pattern_at(&s.below, i));
        let above = pat(&|s, i| Self::pattern_at(&s.above, i));
        let middle = (lo..hi).map(|n| op(self.contains(n), other.contains(n))).collect();
        Self::from_parts(below, above, lo, middle)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a != b)
    }

    pub fn complement(&self) -> Self {
        let neg = |v: &[bool]| v.iter().map(|b| !b).collect::<Vec<_>>();
        Self::from_parts(neg(&self.below), neg(&self.above), self.lo, neg(&self.middle))
    }

    /// `S + m`.
    pub fn shift(&self, m: i64) -> Self {
        let p = self.period as i64;
        let rot = |v: &[bool]| (0..p).map(|i| v[(i - m).rem_euclid(p) as usize]).collect::<Vec<_>>();
        Self::from_parts(rot(&self.below), rot(&self.above), self.lo + m, self.middle.clone())
    }

    pub fn is_finite(&self) -> bool {
        self.below.iter().chain(&self.above).all(|b| !b)
    }

    /// Number of elements of a finite set.
    pub fn count(&self) -> Option<usize> {
        self.is_finite().then(|| self.middle.iter().filter(|b| **b).count())
    }

    pub fn is_empty(&self) -> bool {
        self.count() == Some(0)
    }

    pub fn is_full(&self) -> bool {
        self.complement().is_empty()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// `dim (A+B)/(A∩B)` if finite, i.e. whether `A ∼ B`.
    pub fn commensurability_witness(&self, other: &Self) -> Option<usize> {
        self.symmetric_difference(other).count()
    }

    pub fn commensurable(&self, other: &Self) -> bool {
        self.commensurability_witness(other).is_some()
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// The window `[lo, hi)` outside which the set follows its patterns.
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi())
    }

    pub fn below_pattern(&self) -> &[bool] {
        &self.below
    }

    pub fn above_pattern(&self) -> &[bool] {
        &self.above
    }

    /// Elements inside the window `[lo, hi)`.
    pub fn window_elements(&self) -> Vec<i64> {
        (self.lo..self.hi()).filter(|&n| self.contains(n)).collect()
    }

    /// `(n0, added, removed)` with `|added| + |removed|` minimal, smallest
    /// `n0` among the minimizers; `None` unless the set is ray-like.
    pub fn as_ray(&self) -> Option<(i64, Vec<i64>, Vec<i64>)> {
        if self.period != 1 || self.below[0] || !self.above[0] {
            return None;
        }
        let (lo, hi) = self.window();
        (lo..=hi)
            .map(|n0| {
                let added: Vec<i64> = (lo..n0).filter(|&n| self.contains(n)).collect();
                let removed: Vec<i64> = (n0..hi).filter(|&n| !self.contains(n)).collect();
                (n0, added, removed)
            })
            .min_by_key(|(n0, a, r)| (a.len() + r.len(), *n0))
    }

    fn residues(pattern: &[bool]) -> Vec<usize> {
        (0..pattern.len()).filter(|&i| pattern[i]).collect()
    }

    fn fmt_pattern_part(pattern: &[bool], clause: &str, bound: i64) -> Option<String> {
        let rs = Self::residues(pattern);
        if rs.is_empty() {
            return None;
        }
        let base = if rs.len() == pattern.len() {
            if clause == "from" {
                return Some(format!("ray:{bound}"));
            }
            return Some(format!("down:{bound}"));
        } else {
            format!("mod:{}:{}", pattern.len(), join(rs.iter()))
        };
        Some(format!("{base};{clause}:{bound}"))
    }
}

fn join<T: fmt::Display>(xs: impl Iterator<Item = T>) -> String {
    xs.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "zero");
        }
        if self.is_full() {
            return write!(f, "full");
        }
        if let Some((n0, added, removed)) = self.as_ray() {
            write!(f, "ray:{n0}")?;
            if !added.is_empty() {
                write!(f, ";add:{}", join(added.iter()))?;
            }
            if !removed.is_empty() {
                write!(f, ";del:{}", join(removed.iter()))?;
            }
            return Ok(());
        }
        let (lo, hi) = self.window();
        if self.below == self.above && lo == hi {
            return write!(f, "mod:{}:{}", self.period, join(Self::residues(&self.below).iter()));
        }
        let mut terms = Vec::new();
        terms.extend(Self::fmt_pattern_part(&self.below, "below", lo));
        let mid = self.window_elements();
        if !mid.is_empty() {
            terms.push(format!("set:{}", join(mid.iter())));
        }
        terms.extend(Self::fmt_pattern_part(&self.above, "from", hi));
        write!(f, "{}", terms.join(" + "))
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse { pos: 0, msg: msg.into() }
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim().parse::<i64>().map_err(|_| parse_err(format!("expected an integer, found {s:?}")))
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_int).collect()
}

/// One term: a base set followed by `;`-separated modifiers.
fn parse_term(s: &str) -> Result<MonomialSet> {
    let mut clauses = s.split(';').map(str::trim);
    let base = clauses.next().unwrap_or("");
    let mut set = match base.split_once(':') {
        None if base == "zero" => MonomialSet::empty(),
        None if base == "full" => MonomialSet::full(),
        Some(("ray", n)) => MonomialSet::ray(parse_int(n)?),
        Some(("down", n)) => MonomialSet::down_ray(parse_int(n)?),
        Some(("set", xs)) => MonomialSet::finite(parse_list(xs)?),
        Some(("mod", rest)) => {
            let (p, rs) = rest.split_once(':').ok_or_else(|| parse_err("mod:<p>:<residues>"))?;
            let p = parse_int(p)?;
            if p <= 0 || p > 1 << 16 {
                return Err(parse_err(format!("period {p} out of range")));
            }
            MonomialSet::residue_classes(p as usize, &parse_list(rs)?)
        }
        _ => return Err(parse_err(format!("unknown lattice base {base:?}"))),
    };
    for clause in clauses {
        let (key, val) = clause.split_once(':').ok_or_else(|| parse_err(format!("bad clause {clause:?}")))?;
        set = match key {
            "add" => set.union(&MonomialSet::finite(parse_list(val)?)),
            "del" => set.difference(&MonomialSet::finite(parse_list(val)?)),
            "from" => set.intersection(&MonomialSet::ray(parse_int(val)?)),
            "below" => set.intersection(&MonomialSet::down_ray(parse_int(val)?)),
            _ => return Err(parse_err(format!("unknown lattice clause {key:?}"))),
        };
    }
    Ok(set)
}

impl FromStr for MonomialSet {
    type Err = Error;

    /// Terms joined by `+` (union). A term is `zero`, `full`, `ray:<n0>`,
    /// `down:<n0>`, `set:<i,..>` or `mod:<p>:<r,..>`, followed by modifiers
    /// `add:<i,..>`, `del:<i,..>`, `from:<n0>`, `below:<n0>`.
    fn from_str(s: &str) -> Result<Self> {
        s.split('+').map(parse_term).try_fold(MonomialSet::empty(), |acc, t| Ok(acc.union(&t?)))
    }
}

/// A direct sum of monomial sets, one per slot (for instance one slot per
/// place of a curve).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialLattice {
    slots: Vec<MonomialSet>,
}

impl MonomialLattice {
    pub fn new(slots: Vec<MonomialSet>) -> Self {
        assert!(!slots.is_empty(), "a lattice has at least one slot");
        MonomialLattice { slots }
    }

    pub fn single(set: MonomialSet) -> Self {
        Self::new(vec![set])
    }

    pub fn zero(n_slots: usize) -> Self {
        Self::new(vec![MonomialSet::empty(); n_slots])
    }

    pub fn full(n_slots: usize) -> Self {
        Self::new(vec![MonomialSet::full(); n_slots])
    }

    pub fn slots(&self) -> &[MonomialSet] {
        &self.slots
    }

    pub fn n_slots(&self) -> usize {
        self.slots.len()
    }

    fn zip(&self, other: &Self, f: impl Fn(&MonomialSet, &MonomialSet) -> MonomialSet) -> Self {
        assert_eq!(self.n_slots(), other.n_slots(), "lattices with different slot counts");
        Self::new(self.slots.iter().zip(&other.slots).map(|(a, b)| f(a, b)).collect())
    }

    /// `A + B`. Panics if the slot counts differ.
    pub fn sum(&self, other: &Self) -> Self {
        self.zip(other, MonomialSet::union)
    }

    /// `A ∩ B`. Panics if the slot counts differ.
    pub fn intersect(&self, other: &Self) -> Self {
        self.zip(other, MonomialSet::intersection)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.n_slots() == other.n_slots() && self.slots.iter().zip(&other.slots).all(|(a, b)| a.is_subset(b))
    }

    pub fn commensurability_witness(&self, other: &Self) -> Option<usize> {
        if self.n_slots() != other.n_slots() {
            return None;
        }
        self.slots.iter().zip(&other.slots).map(|(a, b)| a.commensurability_witness(b)).sum()
    }

    pub fn commensurable(&self, other: &Self) -> bool {
        self.commensurability_witness(other).is_some()
    }

    pub fn is_finite(&self) -> bool {
        self.slots.iter().all(MonomialSet::is_finite)
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(MonomialSet::is_empty)
    }

    pub fn is_full(&self) -> bool {
        self.slots.iter().all(MonomialSet::is_full)
    }
}

impl fmt::Display for MonomialLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.slots.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" | "))
    }
}

impl FromStr for MonomialLattice {
    type Err = Error;

    /// Slots separated by `|`.
    fn from_str(s: &str) -> Result<Self> {
        let slots = s.split('|').map(str::parse).collect::<Result<Vec<MonomialSet>>>()?;
        Ok(Self::new(slots))
    }
}

/// Sum of all given lattices (the zero lattice for an empty list).
pub fn lattice_sum_all<'a>(ls: impl IntoIterator<Item = &'a MonomialLattice>, n_slots: usize) -> MonomialLattice {
    ls.into_iter().fold(MonomialLattice::zero(n_slots), |acc, l| acc.sum(l))
}

/// Whether `A_i ∩ Σ_{j≠i} A_j ∼ 0` for every `i`.
pub fn independence_check(family: &[MonomialLattice]) -> bool {
    independence_failure(family).is_none()
}

/// The first member whose intersection with the others is infinite.
pub(crate) fn independence_failure(family: &[MonomialLattice]) -> Option<usize> {
    let n_slots = family.first().map_or(1, MonomialLattice::n_slots);
    (0..family.len()).find(|&i| {
        let others = lattice_sum_all(family.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, a)| a), n_slots);
        !family[i].intersect(&others).is_finite()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> MonomialSet {
        s.parse().unwrap()
    }

    #[test]
    fn sum_and_intersection_examples() {
        let a = MonomialSet::ray(0);
        let b = MonomialSet::ray_with(3, &[-2], &[]);
        assert_eq!(a.union(&b), MonomialSet::ray_with(0, &[-2], &[]));
        assert_eq!(a.intersection(&b), MonomialSet::ray(3));
        assert_eq!(a.union(&a), a);
        assert_eq!(a.intersection(&a), a);
        let a = MonomialSet::ray_with(0, &[], &[1]);
        let b = MonomialSet::ray_with(5, &[1], &[]);
        assert_eq!(a.union(&b), MonomialSet::ray(0));
        assert_eq!(a.intersection(&b), MonomialSet::ray(5));
    }

    #[test]
    fn commensurability_examples() {
        assert_eq!(MonomialSet::ray(0).commensurability_witness(&MonomialSet::ray(2)), Some(2));
        let a = MonomialSet::ray(0);
        assert_eq!(a.commensurability_witness(&a), Some(0));
        let a = MonomialSet::ray_with(0, &[-5], &[]);
        let b = MonomialSet::ray_with(1, &[], &[3]);
        assert_eq!(a.commensurability_witness(&b), Some(3));
        let evens = MonomialSet::residue_classes(2, &[0]);
        assert_eq!(evens.commensurability_witness(&MonomialSet::ray(0)), None);
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = MonomialSet::from_parts(vec![false, false], vec![true, true, true], -4, vec![false, false, true, true]);
        assert_eq!(a, MonomialSet::ray(-2));
        assert_eq!(a.period(), 1);
        let evens_then_all = MonomialSet::residue_classes(2, &[0])
            .intersection(&MonomialSet::down_ray(0))
            .union(&MonomialSet::ray(0));
        assert_eq!(evens_then_all.window(), (0, 0));
        assert_eq!(evens_then_all, set("mod:2:0;below:0 + ray:0"));
    }

    #[test]
    fn ray_form_and_display() {
        assert_eq!(MonomialSet::ray_with(3, &[-2], &[]).to_string(), "ray:3;add:-2");
        assert_eq!(MonomialSet::ray_with(0, &[], &[4]).to_string(), "ray:0;del:4");
        assert_eq!(MonomialSet::empty().to_string(), "zero");
        assert_eq!(MonomialSet::full().to_string(), "full");
        assert_eq!(MonomialSet::residue_classes(2, &[1]).to_string(), "mod:2:1");
        assert_eq!(set("mod:2:1;from:0").to_string(), "mod:2:1;from:0");
        assert_eq!(set("down:-1").to_string(), "down:-1");
    }

    #[test]
    fn literal_round_trip() {
        for s in [
            "ray:0",
            "ray:3;add:-2",
            "ray:0;del:1",
            "zero",
            "full",
            "mod:3:0,2",
            "mod:2:0;from:0",
            "mod:2:0;below:0 + ray:0",
            "down:5 + set:7,9",
            "set:-1,4",
        ] {
            let a = set(s);
            assert_eq!(set(&a.to_string()), a, "{s}");
        }
        assert!("ray:x".parse::<MonomialSet>().is_err());
        assert!("blob:1".parse::<MonomialSet>().is_err());
        let l: MonomialLattice = "ray:0 | down:0".parse().unwrap();
        assert_eq!(l.n_slots(), 2);
        assert_eq!(l.to_string().parse::<MonomialLattice>().unwrap(), l);
    }

    #[test]
    fn shift_rotates_patterns() {
        let evens = MonomialSet::residue_classes(2, &[0]);
        assert_eq!(evens.shift(1), MonomialSet::residue_classes(2, &[1]));
        assert_eq!(evens.shift(2), evens);
        assert_eq!(MonomialSet::ray_with(0, &[-2], &[]).shift(1), MonomialSet::ray_with(1, &[-1], &[]));
    }

    #[test]
    fn independence_examples() {
        let single = |s: &str| MonomialLattice::single(set(s));
        assert!(independence_check(&[single("mod:2:0;from:0"), single("mod:2:1;from:0")]));
        assert!(!independence_check(&[single("ray:0"), single("ray:0")]));
        assert!(independence_check(&[single("ray:0;add:-1"), single("down:0")]));
    }
}
