//! Finitely supported sequences with the sup norm and the coordinatewise order
//! and product.
//!
//! This is a dense subalgebra of `c_0`. It has no identity, but the prefix
//! units `e_n = e_1 + ... + e_n` form an approximate order unit and an
//! approximate identity at once. On finitely supported data both limits are
//! reached exactly after finitely many steps, so convergence is checked as
//! eventual equality.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// A finitely supported sequence indexed from 1. Zero values are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseSeq {
    entries: BTreeMap<u64, Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeqOp {
    Sup,
    Inf,
    Add,
    Sub,
    Mul,
}

impl SparseSeq {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a sequence, dropping zero values. Panics on index 0.
    pub fn from_entries(entries: impl IntoIterator<Item = (u64, Scalar)>) -> Self {
        let mut s = Self::new();
        for (i, v) in entries {
            s.insert(i, v);
        }
        s
    }

    pub fn from_ints(entries: &[(u64, i64)]) -> Self {
        Self::from_entries(entries.iter().map(|&(i, v)| (i, scalar::int(v))))
    }

    pub fn insert(&mut self, index: u64, value: Scalar) {
        assert!(index >= 1, "sequences are indexed from 1");
        if value.is_zero() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
    }

    pub fn get(&self, index: u64) -> Scalar {
        self.entries.get(&index).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn entries(&self) -> &BTreeMap<u64, Scalar> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.entries.values().all(Signed::is_positive)
    }

    /// Largest index in the support, 0 for the zero sequence.
    pub fn max_support(&self) -> u64 {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    pub fn abs(&self) -> Self {
        Self { entries: self.entries.iter().map(|(&i, v)| (i, v.abs())).collect() }
    }

    pub fn le(&self, other: &Self) -> bool {
        let diff = seq_ops(other, self, SeqOp::Sub);
        diff.is_positive()
    }

    pub fn norm(&self) -> Scalar {
        seq_norm(self)
    }
}

/// Coordinatewise operation over the union of supports.
pub fn seq_ops(x: &SparseSeq, y: &SparseSeq, op: SeqOp) -> SparseSeq {
    let combine = |a: &Scalar, b: &Scalar| match op {
        SeqOp::Sup => scalar::max(a, b).clone(),
        SeqOp::Inf => scalar::min(a, b).clone(),
        SeqOp::Add => a + b,
        SeqOp::Sub => a - b,
        SeqOp::Mul => a * b,
    };
    let mut out = SparseSeq::new();
    if op == SeqOp::Mul {
        for (&i, a) in &x.entries {
            if let Some(b) = y.entries.get(&i) {
                out.insert(i, a * b);
            }
        }
        return out;
    }
    let zero = Scalar::zero();
    for &i in x.entries.keys().chain(y.entries.keys()) {
        if out.entries.contains_key(&i) {
            continue;
        }
        let a = x.entries.get(&i).unwrap_or(&zero);
        let b = y.entries.get(&i).unwrap_or(&zero);
        out.insert(i, combine(a, b));
    }
    out
}

pub fn seq_norm(x: &SparseSeq) -> Scalar {
    x.entries.values().map(Signed::abs).max().unwrap_or_else(Scalar::zero)
}

/// A finitely supported functional, acting by `f(x) = sum_i f_i x_i`. Its norm
/// is the l1 norm, the dual of the sup norm.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseFunctional {
    coeffs: SparseSeq,
}

impl SparseFunctional {
    pub fn new(coeffs: SparseSeq) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(entries: &[(u64, i64)]) -> Self {
        Self::new(SparseSeq::from_ints(entries))
    }

    pub fn coeffs(&self) -> &SparseSeq {
        &self.coeffs
    }

    pub fn apply(&self, x: &SparseSeq) -> Scalar {
        self.coeffs.entries.iter().filter_map(|(i, f)| x.entries.get(i).map(|v| f * v)).sum()
    }

    pub fn norm(&self) -> Scalar {
        self.coeffs.entries.values().map(Signed::abs).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.is_positive()
    }
}

/// The prefix unit `e_n = e_1 + ... + e_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitPrefix(u64);

impl UnitPrefix {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParameter("unit prefixes start at n = 1".into()));
        }
        Ok(Self(n))
    }

    pub fn n(self) -> u64 {
        self.0
    }

    pub fn to_seq(self) -> SparseSeq {
        SparseSeq::from_entries((1..=self.0).map(|i| (i, Scalar::one())))
    }
}

/// `e_n` for `n >= 0`, with `e_0 = 0`.
fn prefix(n: u64) -> SparseSeq {
    UnitPrefix::new(n).map(UnitPrefix::to_seq).unwrap_or_default()
}

/// Least `N` with `f(e_n) = ||f||` for all `n >= N`.
///
/// `f(e_n)` is the partial sum of the coefficients of `f` up to `n`, which is
/// nondecreasing for positive `f` and constant past the support. The scan over
/// support indices therefore finds the first exact hit.
pub fn approx_order_unit_witness(f: &SparseFunctional) -> Result<u64> {
    if let Some((&index, _)) = f.coeffs.entries.iter().find(|(_, v)| v.is_negative()) {
        return Err(Error::NotPositive { index: index as usize });
    }
    let norm = f.norm();
    let mut partial = Scalar::zero();
    if partial == norm {
        return Ok(0);
    }
    for (&i, v) in &f.coeffs.entries {
        partial += v;
        if partial == norm {
            debug_assert_eq!(f.apply(&prefix(i)), norm);
            return Ok(i);
        }
    }
    unreachable!("the partial sums of a positive functional reach its norm")
}

/// Least `N` with `||e_n x - x|| = 0` for all `n >= N`.
pub fn approx_algebraic_identity_witness(x: &SparseSeq) -> u64 {
    // ||e_n x - x|| is nonincreasing in n and only changes at support indices
    std::iter::once(0)
        .chain(x.entries.keys().copied())
        .find(|&n| seq_norm(&seq_ops(&seq_ops(&prefix(n), x, SeqOp::Mul), x, SeqOp::Sub)).is_zero())
        .expect("n = max support always works")
}

/// An atom `e_j` outside the support of `x`, so that `x e_j = 0 != e_j`:
/// no finitely supported element is an identity.
pub fn non_identity_witness(x: &SparseSeq) -> u64 {
    let j = x.max_support() + 1;
    debug_assert!(seq_ops(x, &SparseSeq::from_ints(&[(j, 1)]), SeqOp::Mul).is_zero());
    j
}

/// Checks `(h x) ^ y = 0` for samples `(x, y, h)` with `h >= 0` and `x`, `y`
/// disjoint (`|x| ^ |y| = 0`). Signed entries are compared through their
/// moduli.
pub fn verify_f_algebra_sparse(samples: &[(SparseSeq, SparseSeq, SparseSeq)]) -> Result<bool> {
    for (n, (x, y, h)) in samples.iter().enumerate() {
        if !h.is_positive() {
            return Err(Error::PreconditionViolated(format!("sample {}: multiplier is not positive", n + 1)));
        }
        if !seq_ops(&x.abs(), &y.abs(), SeqOp::Inf).is_zero() {
            return Err(Error::PreconditionViolated(format!("sample {}: pair is not disjoint", n + 1)));
        }
    }
    Ok(samples.iter().all(|(x, y, h)| {
        let left = seq_ops(h, x, SeqOp::Mul).abs();
        let right = seq_ops(x, h, SeqOp::Mul).abs();
        seq_ops(&left, &y.abs(), SeqOp::Inf).is_zero() && seq_ops(&right, &y.abs(), SeqOp::Inf).is_zero()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn ops_examples() {
        let x = SparseSeq::from_ints(&[(1, 2), (3, 5)]);
        let y = SparseSeq::from_ints(&[(3, 4)]);
        assert_eq!(seq_ops(&x, &y, SeqOp::Mul), SparseSeq::from_ints(&[(3, 20)]));
        assert_eq!(seq_ops(&SparseSeq::from_ints(&[(1, -1)]), &SparseSeq::new(), SeqOp::Sup), SparseSeq::new());
        assert_eq!(seq_norm(&SparseSeq::from_ints(&[(2, -7), (9, 3)])), int(7));
        assert_eq!(seq_norm(&SparseSeq::new()), int(0));
        assert_eq!(seq_ops(&x, &x, SeqOp::Sub), SparseSeq::new());
        assert!(!seq_ops(&x, &y, SeqOp::Add).entries().values().any(Zero::is_zero));
    }

    #[test]
    fn order_unit_witnesses() {
        let f = SparseFunctional::from_ints(&[(1, 1), (4, 2)]);
        assert_eq!(approx_order_unit_witness(&f).unwrap(), 4);
        assert_eq!(f.apply(&prefix(4)), int(3));
        assert_eq!(f.norm(), int(3));
        assert_eq!(f.apply(&prefix(3)), int(1));
        assert_eq!(approx_order_unit_witness(&SparseFunctional::default()).unwrap(), 0);
        assert_eq!(approx_order_unit_witness(&SparseFunctional::from_ints(&[(7, 5)])).unwrap(), 7);
        assert_eq!(
            approx_order_unit_witness(&SparseFunctional::from_ints(&[(2, -1)])),
            Err(Error::NotPositive { index: 2 })
        );
    }

    #[test]
    fn identity_witnesses() {
        assert_eq!(approx_algebraic_identity_witness(&SparseSeq::from_ints(&[(2, 3)])), 2);
        assert_eq!(approx_algebraic_identity_witness(&SparseSeq::new()), 0);
        assert_eq!(approx_algebraic_identity_witness(&SparseSeq::from_ints(&[(1, 1), (10, -4)])), 10);
        assert_eq!(non_identity_witness(&SparseSeq::from_ints(&[(1, 1), (10, -4)])), 11);
    }

    #[test]
    fn f_algebra_samples() {
        let ok = (SparseSeq::from_ints(&[(1, 1)]), SparseSeq::from_ints(&[(2, 1)]), SparseSeq::from_ints(&[(1, 9)]));
        assert!(verify_f_algebra_sparse(&[ok]).unwrap());
        let overlapping = (SparseSeq::from_ints(&[(1, 1)]), SparseSeq::from_ints(&[(1, 1)]), SparseSeq::new());
        assert!(matches!(verify_f_algebra_sparse(&[overlapping]), Err(Error::PreconditionViolated(_))));
        let negative_h = (SparseSeq::new(), SparseSeq::new(), SparseSeq::from_ints(&[(1, -1)]));
        assert!(verify_f_algebra_sparse(&[negative_h]).is_err());
    }

    #[test]
    fn prefixes_increase() {
        assert!(prefix(3).le(&prefix(5)));
        assert!(!prefix(5).le(&prefix(3)));
        assert!(UnitPrefix::new(0).is_err());
    }
}
