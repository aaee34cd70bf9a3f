//! Values of symbols: elements of the abelian groups `Z`, `(k, +)`, `k×` and
//! `k((z))×` (as truncated power series).

use std::fmt;

use serde::Serialize;

use crate::arith::{Field, FieldScalar};
use crate::segal_wilson::TruncatedPowerSeries;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupValue {
    Int(i64),
    Additive(FieldScalar),
    Multiplicative(FieldScalar),
    Series(TruncatedPowerSeries),
}

impl GroupValue {
    /// The identity of the same group as `self`.
    pub fn identity_like(&self) -> Self {
        match self {
            GroupValue::Int(_) => GroupValue::Int(0),
            GroupValue::Additive(a) => GroupValue::Additive(FieldScalar::zero(&a.descriptor())),
            GroupValue::Multiplicative(a) => GroupValue::Multiplicative(FieldScalar::one(&a.descriptor())),
            GroupValue::Series(s) => GroupValue::Series(TruncatedPowerSeries::one(s.order())),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupValue::Int(n) => *n == 0,
            GroupValue::Additive(a) => a.is_zero(),
            GroupValue::Multiplicative(a) => a.is_one(),
            GroupValue::Series(s) => s.is_one(),
        }
    }

    /// Group operation. Panics when the operands live in different groups.
    pub fn combine(&self, other: &Self) -> Self {
        match (self, other) {
            (GroupValue::Int(a), GroupValue::Int(b)) => GroupValue::Int(a + b),
            (GroupValue::Additive(a), GroupValue::Additive(b)) => GroupValue::Additive(a.add(b)),
            (GroupValue::Multiplicative(a), GroupValue::Multiplicative(b)) => GroupValue::Multiplicative(a.mul(b)),
            (GroupValue::Series(a), GroupValue::Series(b)) => GroupValue::Series(a.mul(b)),
            _ => panic!("combining values of different groups: {self:?} and {other:?}"),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            GroupValue::Int(a) => GroupValue::Int(-a),
            GroupValue::Additive(a) => GroupValue::Additive(a.neg()),
            GroupValue::Multiplicative(a) => GroupValue::Multiplicative(a.inv().expect("group elements are units")),
            GroupValue::Series(s) => GroupValue::Series(s.inverse().expect("group elements are units")),
        }
    }

    /// `n`-fold power (multiple, in additive notation).
    pub fn power(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(self.identity_like(), |acc, _| acc.combine(&base))
    }

    /// Combines a nonempty list; `identity` is returned for an empty one.
    pub fn combine_all<'a>(values: impl IntoIterator<Item = &'a GroupValue>, identity: GroupValue) -> GroupValue {
        values.into_iter().fold(identity, |acc, v| acc.combine(v))
    }

    pub fn group_name(&self) -> &'static str {
        match self {
            GroupValue::Int(_) => "Z",
            GroupValue::Additive(_) => "k",
            GroupValue::Multiplicative(_) => "k*",
            GroupValue::Series(_) => "k((z))*",
        }
    }
}

impl fmt::Display for GroupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupValue::Int(n) => write!(f, "{n}"),
            GroupValue::Additive(a) | GroupValue::Multiplicative(a) => write!(f, "{a}"),
            GroupValue::Series(s) => write!(f, "{s}"),
        }
    }
}

impl Serialize for GroupValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
