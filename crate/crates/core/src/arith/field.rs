use std::fmt;

/// Arithmetic shared by every coefficient domain used in this crate: the
/// ground field, residue fields `k[T]/(π)`, and rational function fields.
///
/// Elements carry their own context (field descriptor, modulus, variable), so
/// zero and one are built from a context rather than a type-level constant.
/// Combining elements from different contexts is a programming error and
/// panics; the public entry points validate contexts first and report
/// [`crate::Error::MixedField`].
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display {
    type Ctx: Clone + PartialEq + Eq + fmt::Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(n: i64, ctx: &Self::Ctx) -> Self;
    fn characteristic(ctx: &Self::Ctx) -> u64;

    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero (or a zero divisor when the
    /// modulus of a residue ring turns out to be reducible).
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// `self^e` for `e >= 0`, or the inverse power for `e < 0`.
    fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one(&self.ctx());
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }
}
