//! Coordinatewise lattice arithmetic, lattice norms and their duals.
//!
//! A finite-dimensional Archimedean vector lattice is always written in its
//! atom basis, so `x <= y` means `x_k <= y_k` for every coordinate and all
//! lattice operations act coordinatewise. Functionals use the same coordinate
//! pairing `f(x) = sum_k f_k x_k`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| scalar::int(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Scalar::zero(); dim])
    }

    /// The atom `e_k` (0-based `k`).
    pub fn atom(dim: usize, k: usize) -> Self {
        let mut x = Self::zeros(dim);
        x.coords[k] = Scalar::one();
        x
    }

    pub fn constant(dim: usize, value: Scalar) -> Self {
        Self::new(vec![value; dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn get(&self, k: usize) -> &Scalar {
        &self.coords[k]
    }

    pub fn set(&mut self, k: usize, value: Scalar) {
        self.coords[k] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.dim()).filter(|&k| !self.coords[k].is_zero()).collect()
    }

    /// Coordinatewise `self <= other`. Panics on a dimension mismatch.
    pub fn le(&self, other: &Self) -> bool {
        assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::new(self.coords.iter().map(|c| c * s).collect())
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: dim, found: self.dim() })
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect())
    }

    fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self::new(self.coords.iter().map(f).collect())
    }

    pub fn sup(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| scalar::max(a, b).clone())
    }

    pub fn inf(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| scalar::min(a, b).clone())
    }

    pub fn abs(&self) -> Self {
        self.map(Signed::abs)
    }

    pub fn pos(&self) -> Self {
        self.map(|a| scalar::max(a, &Scalar::zero()).clone())
    }

    pub fn neg_part(&self) -> Self {
        self.map(|a| -scalar::min(a, &Scalar::zero()))
    }

    /// Coordinatewise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.map(|a| -a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeOp {
    Sup,
    Inf,
    Abs,
    Pos,
    Neg,
}

/// Applies a lattice operation coordinatewise. `Abs`, `Pos` and `Neg` ignore
/// `y` apart from the dimension check.
pub fn lattice_combine(x: &Element, y: &Element, op: LatticeOp) -> Result<Element> {
    y.check_dim(x.dim())?;
    Ok(match op {
        LatticeOp::Sup => x.sup(y),
        LatticeOp::Inf => x.inf(y),
        LatticeOp::Abs => x.abs(),
        LatticeOp::Pos => x.pos(),
        LatticeOp::Neg => x.neg_part(),
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Functional {
    coords: Vec<Scalar>,
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Functional{:?}", Element::new(self.coords.clone()))
    }
}

impl Functional {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| scalar::int(c)).collect())
    }

    /// The coordinate functional `e_k^*`.
    pub fn atom(dim: usize, k: usize) -> Self {
        Self::new(Element::atom(dim, k).into_coords())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn apply(&self, x: &Element) -> Result<Scalar> {
        x.check_dim(self.dim())?;
        Ok(self.coords.iter().zip(x.coords()).map(|(f, v)| f * v).sum())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    WeightedSup,
    WeightedL1,
}

impl NormKind {
    pub fn dual(self) -> Self {
        match self {
            NormKind::WeightedSup => NormKind::WeightedL1,
            NormKind::WeightedL1 => NormKind::WeightedSup,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NormKind::WeightedSup => "weighted_sup",
            NormKind::WeightedL1 => "weighted_l1",
        }
    }
}

/// A weighted sup or weighted l1 lattice norm with strictly positive weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormSpec {
    kind: NormKind,
    weights: Vec<Scalar>,
}

impl NormSpec {
    pub fn new(kind: NormKind, weights: Vec<Scalar>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("dimension must be positive".into()));
        }
        if let Some(k) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::InvalidWeights(format!(
                "weight {} is {}, weights must be strictly positive",
                k + 1,
                weights[k]
            )));
        }
        Ok(Self { kind, weights })
    }

    pub fn sup(weights: Vec<Scalar>) -> Result<Self> {
        Self::new(NormKind::WeightedSup, weights)
    }

    pub fn l1(weights: Vec<Scalar>) -> Result<Self> {
        Self::new(NormKind::WeightedL1, weights)
    }

    /// The plain (unit-weight) norm of the given kind.
    pub fn unweighted(kind: NormKind, dim: usize) -> Self {
        Self::new(kind, vec![Scalar::one(); dim]).expect("unit weights are valid")
    }

    pub fn kind(&self) -> NormKind {
        self.kind
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(One::is_one)
    }

    pub fn norm(&self, x: &Element) -> Result<Scalar> {
        x.check_dim(self.dim())?;
        let weighted = x.coords().iter().zip(&self.weights).map(|(c, w)| c.abs() * w);
        Ok(match self.kind {
            NormKind::WeightedSup => weighted.max().unwrap_or_else(Scalar::zero),
            NormKind::WeightedL1 => weighted.sum(),
        })
    }

    /// The norm of the dual space in coordinate form: the dual of a weighted
    /// sup norm is the weighted l1 norm with reciprocal weights, and vice versa.
    pub fn dual(&self) -> NormSpec {
        NormSpec {
            kind: self.kind.dual(),
            weights: self.weights.iter().map(|w| w.recip()).collect(),
        }
    }

    pub fn dual_norm(&self, f: &Functional) -> Result<Scalar> {
        if f.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: f.dim() });
        }
        self.dual().norm(&Element::new(f.coords().to_vec()))
    }

    /// Extreme points of the closed unit ball, up to sign for the sup norm
    /// (the ball is symmetric, so `-v` is implied for every returned `v`).
    pub fn ball_extreme_points(&self) -> Vec<Element> {
        let n = self.dim();
        match self.kind {
            NormKind::WeightedL1 => (0..n)
                .map(|k| Element::atom(n, k).scale(&self.weights[k].recip()))
                .collect(),
            NormKind::WeightedSup => {
                let reciprocal: Vec<Scalar> = self.weights.iter().map(|w| w.recip()).collect();
                (0..1usize << (n - 1))
                    .map(|mask| {
                        Element::new(
                            (0..n)
                                .map(|k| {
                                    // the last coordinate keeps a fixed sign
                                    if k + 1 < n && mask >> k & 1 == 1 {
                                        -&reciprocal[k]
                                    } else {
                                        reciprocal[k].clone()
                                    }
                                })
                                .collect(),
                        )
                    })
                    .collect()
            }
        }
    }
}

/// Whether `||x v y|| = max(||x||, ||y||)` holds on the positive cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmVerdict {
    Holds,
    Fails { x: Element, y: Element },
}

impl AmVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, AmVerdict::Holds)
    }
}

pub fn is_am_norm(n: &NormSpec) -> AmVerdict {
    match n.kind {
        NormKind::WeightedSup => AmVerdict::Holds,
        NormKind::WeightedL1 if n.dim() == 1 => AmVerdict::Holds,
        NormKind::WeightedL1 => {
            // ||e1 v e2|| = w1 + w2 > max(w1, w2)
            AmVerdict::Fails { x: Element::atom(n.dim(), 0), y: Element::atom(n.dim(), 1) }
        }
    }
}

/// The order unit `e` with `B_X = [-e, e]`, if one exists.
pub fn order_unit_of_ball(n: &NormSpec) -> Option<Element> {
    let unit = || Element::new(n.weights.iter().map(|w| w.recip()).collect());
    match n.kind {
        NormKind::WeightedSup => Some(unit()),
        NormKind::WeightedL1 if n.dim() == 1 => Some(unit()),
        NormKind::WeightedL1 => None,
    }
}

/// Checks `f(e) = ||f||` exactly for every dual atom, every sum of two
/// distinct dual atoms, and every sampled positive functional.
///
/// Atoms alone do not decide the question: for the l1 norm on two coordinates,
/// `e = (1, 1)` is normed by both atoms but `(e_1^* + e_2^*)(e) = 2 > 1`.
/// Since the dual norm is additive on the positive cone exactly when it comes
/// from an order unit, the pairwise sums complete the check.
pub fn verify_unit_duality(n: &NormSpec, e: &Element, samples: &[Functional]) -> Result<bool> {
    e.check_dim(n.dim())?;
    if let Some(index) = e.coords().iter().position(Signed::is_negative) {
        return Err(Error::NotPositive { index });
    }
    let dim = n.dim();
    let mut mandatory: Vec<Functional> = (0..dim).map(|k| Functional::atom(dim, k)).collect();
    for i in 0..dim {
        for j in i + 1..dim {
            let mut coords = vec![Scalar::zero(); dim];
            coords[i] = Scalar::one();
            coords[j] = Scalar::one();
            mandatory.push(Functional::new(coords));
        }
    }
    for f in mandatory.iter().chain(samples) {
        if !f.is_positive() {
            return Err(Error::PreconditionViolated("sampled functional is not positive".into()));
        }
        if f.apply(e)? != n.dual_norm(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The band projection onto the ideal generated by a positive element, and
/// its disjoint complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandProjection {
    dim: usize,
    support: BTreeSet<usize>,
}

impl BandProjection {
    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn complement_support(&self) -> BTreeSet<usize> {
        (0..self.dim).filter(|k| !self.support.contains(k)).collect()
    }

    fn restrict(&self, x: &Element, keep: impl Fn(usize) -> bool) -> Element {
        Element::new(
            x.coords()
                .iter()
                .enumerate()
                .map(|(k, c)| if keep(k) { c.clone() } else { Scalar::zero() })
                .collect(),
        )
    }

    /// `P x`.
    pub fn project(&self, x: &Element) -> Element {
        self.restrict(x, |k| self.support.contains(&k))
    }

    /// `P^d x`.
    pub fn complement(&self, x: &Element) -> Element {
        self.restrict(x, |k| !self.support.contains(&k))
    }

    /// Whether `|x| <= lambda e` for some `lambda`, i.e. `x` lies in the range of `P`.
    pub fn in_range(&self, x: &Element) -> bool {
        x.support().is_subset(&self.support)
    }
}

pub fn band_projection(e: &Element) -> Result<BandProjection> {
    if let Some(index) = e.coords().iter().position(Signed::is_negative) {
        return Err(Error::NotPositive { index });
    }
    Ok(BandProjection { dim: e.dim(), support: e.support() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn sup_norm(w: &[Scalar]) -> NormSpec {
        NormSpec::sup(w.to_vec()).unwrap()
    }

    fn l1_norm(w: &[Scalar]) -> NormSpec {
        NormSpec::l1(w.to_vec()).unwrap()
    }

    #[test]
    fn combine_examples() {
        let x = Element::from_ints(&[1, -2]);
        let y = Element::from_ints(&[0, 3]);
        assert_eq!(lattice_combine(&x, &y, LatticeOp::Sup).unwrap(), Element::from_ints(&[1, 3]));
        let z = Element::from_ints(&[-1, 2]);
        assert_eq!(lattice_combine(&z, &z, LatticeOp::Abs).unwrap(), Element::from_ints(&[1, 2]));
        assert_eq!(lattice_combine(&x, &x, LatticeOp::Inf).unwrap(), x);
        assert_eq!(lattice_combine(&x, &x, LatticeOp::Pos).unwrap(), Element::from_ints(&[1, 0]));
        assert_eq!(lattice_combine(&x, &x, LatticeOp::Neg).unwrap(), Element::from_ints(&[0, 2]));
        assert_eq!(
            lattice_combine(&x, &Element::zeros(3), LatticeOp::Sup),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn norm_examples() {
        let x = Element::from_ints(&[3, -4]);
        assert_eq!(sup_norm(&[int(1), int(1)]).norm(&x).unwrap(), int(4));
        assert_eq!(l1_norm(&[int(1), int(2)]).norm(&x).unwrap(), int(11));
        assert_eq!(l1_norm(&[int(1), int(2)]).norm(&Element::zeros(2)).unwrap(), int(0));
        assert!(sup_norm(&[int(1)]).norm(&x).is_err());
    }

    #[test]
    fn weights_must_be_positive() {
        assert!(NormSpec::sup(vec![int(1), int(0)]).is_err());
        assert!(NormSpec::l1(vec![ratio(-1, 2)]).is_err());
        assert!(NormSpec::l1(vec![]).is_err());
    }

    #[test]
    fn dual_norm_examples() {
        let n = sup_norm(&[int(1), int(1)]);
        assert_eq!(n.dual_norm(&Functional::from_ints(&[1, 1])).unwrap(), int(2));
        let n = sup_norm(&[int(1), int(2)]);
        assert_eq!(n.dual_norm(&Functional::from_ints(&[0, 5])).unwrap(), ratio(5, 2));
        assert_eq!(n.dual_norm(&Functional::from_ints(&[0, 0])).unwrap(), int(0));
    }

    #[test]
    fn am_norm_examples() {
        assert!(is_am_norm(&sup_norm(&[int(2), ratio(1, 3)])).holds());
        match is_am_norm(&l1_norm(&[int(1), int(1)])) {
            AmVerdict::Fails { x, y } => {
                let n = l1_norm(&[int(1), int(1)]);
                assert_eq!(n.norm(&x.sup(&y)).unwrap(), int(2));
                assert_eq!(n.norm(&x).unwrap(), int(1));
                assert_eq!(n.norm(&y).unwrap(), int(1));
            }
            AmVerdict::Holds => panic!("l1 on two coordinates is not an AM-norm"),
        }
        assert!(is_am_norm(&l1_norm(&[int(3)])).holds());
    }

    #[test]
    fn order_unit_examples() {
        assert_eq!(order_unit_of_ball(&sup_norm(&[int(1), int(1)])), Some(Element::from_ints(&[1, 1])));
        let n = sup_norm(&[int(2), ratio(1, 3)]);
        let e = order_unit_of_ball(&n).unwrap();
        assert_eq!(e, Element::new(vec![ratio(1, 2), int(3)]));
        // [-e, e] is the unit ball: every extreme point has norm one and lies in [-e, e]
        for v in n.ball_extreme_points() {
            assert_eq!(n.norm(&v).unwrap(), int(1));
            assert!(v.abs().le(&e));
        }
        assert_eq!(order_unit_of_ball(&l1_norm(&[int(1), int(1)])), None);
    }

    #[test]
    fn unit_duality_examples() {
        let n = sup_norm(&[int(1), int(1)]);
        let e = Element::from_ints(&[1, 1]);
        let f = Functional::from_ints(&[2, 3]);
        assert_eq!(f.apply(&e).unwrap(), int(5));
        assert_eq!(n.dual_norm(&f).unwrap(), int(5));
        assert!(verify_unit_duality(&n, &e, &[f]).unwrap());

        let n = sup_norm(&[int(2), int(1)]);
        let e = Element::new(vec![ratio(1, 2), int(1)]);
        let atom = Functional::atom(2, 1);
        assert_eq!(atom.apply(&e).unwrap(), n.dual_norm(&atom).unwrap());
        assert!(verify_unit_duality(&n, &e, &[atom]).unwrap());

        let n = l1_norm(&[int(1), int(1)]);
        for e in [Element::from_ints(&[1, 1]), Element::from_ints(&[1, 0]), Element::new(vec![ratio(1, 2), ratio(1, 2)])] {
            assert!(!verify_unit_duality(&n, &e, &[Functional::atom(2, 0)]).unwrap());
        }
        assert!(verify_unit_duality(&n, &Element::from_ints(&[-1, 1]), &[]).is_err());
    }

    #[test]
    fn band_projection_examples() {
        let p = band_projection(&Element::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(p.support(), &BTreeSet::from([2]));
        assert_eq!(p.project(&Element::from_ints(&[4, 5, 6])), Element::from_ints(&[0, 0, 6]));
        assert_eq!(p.complement(&Element::from_ints(&[4, 5, 6])), Element::from_ints(&[4, 5, 0]));

        let p = band_projection(&Element::from_ints(&[1, 1])).unwrap();
        let x = Element::from_ints(&[-3, 7]);
        assert_eq!(p.project(&x), x);
        assert!(p.complement(&x).is_zero());

        let p = band_projection(&Element::zeros(2)).unwrap();
        assert!(p.support().is_empty());
        assert!(p.project(&x).is_zero());

        assert_eq!(band_projection(&Element::from_ints(&[1, -1])), Err(Error::NotPositive { index: 1 }));
    }
}
