//! Bilinear products given by structure constants, and the axiom battery for
//! Banach lattice algebras.
//!
//! A product on the atom basis is a rank-3 tensor `c` with
//! `e_i e_j = sum_k c[i][j][k] e_k`. Everything here is exact.
//!
//! Two reductions make the checks finite:
//!
//! * Submultiplicativity. For a positive tensor and the weighted sup norm,
//!   `|x y| <= |x| |y| <= u u` whenever `||x||, ||y|| <= 1`, where
//!   `u_k = 1 / w_k` is the order unit of the ball. So `||u u|| <= 1` decides
//!   the inequality. Without positivity, `(x, y) -> ||x y||` is convex in each
//!   argument and its maximum over the ball is attained at pairs of extreme
//!   points, which are enumerated instead. For the weighted l1 norm the
//!   extreme points are `+-e_k / w_k`, so the atom pairs decide it.
//! * f-algebras. Disjoint elements have disjoint supports. Testing
//!   `(h a) ^ b = 0` on atoms `a = e_i`, `b = e_j` (`i != j`) and `h = e_k`
//!   forces `c[k][i][j] = 0` and `c[i][k][j] = 0`, so a positive tensor is an
//!   f-algebra exactly when it is diagonal. Likewise `e_i e_j = 0` for
//!   `i != j` characterizes almost f-algebras.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Element, NormKind, NormSpec};
use crate::linalg::{self, Solution};
use crate::scalar::Scalar;
use crate::Verdict;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StructureTensor {
    dim: usize,
    c: Vec<Scalar>,
}

impl fmt::Debug for StructureTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StructureTensor(dim={}; ", self.dim)?;
        let mut first = true;
        for (i, j, k, v) in self.nonzero_entries() {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "[{}][{}][{}]={v}", i + 1, j + 1, k + 1)?;
        }
        f.write_str(")")
    }
}

impl StructureTensor {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, c: vec![Scalar::zero(); dim * dim * dim] }
    }

    /// Builds a tensor from sparse 0-based entries; later entries overwrite
    /// earlier ones.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Self {
        let mut t = Self::zeros(dim);
        for (i, j, k, v) in entries {
            t.set(i, j, k, v);
        }
        t
    }

    /// The tensor of the coordinatewise product with `e_k^2 = d_k e_k`.
    pub fn diagonal(d: &[Scalar]) -> Self {
        Self::from_entries(d.len(), d.iter().enumerate().map(|(k, v)| (k, k, k, v.clone())))
    }

    /// The Kronecker tensor `c[i][j][k] = 1` iff `i = j = k`: the pointwise product.
    pub fn kronecker(dim: usize) -> Self {
        Self::diagonal(&vec![Scalar::one(); dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        assert!(i < self.dim && j < self.dim && k < self.dim, "tensor index out of range");
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[self.index(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let idx = self.index(i, j, k);
        self.c[idx] = v;
    }

    /// Nonzero entries in lexicographic `(i, j, k)` order, 0-based.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let d = self.dim;
        self.c
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(idx, v)| (idx / (d * d), idx / d % d, idx % d, v))
    }

    pub fn is_kronecker(&self) -> bool {
        *self == Self::kronecker(self.dim)
    }

    /// Whether only `c[k][k][k]` entries are nonzero.
    pub fn is_diagonal(&self) -> bool {
        self.nonzero_entries().all(|(i, j, k, _)| i == j && j == k)
    }

    /// The diagonal `(c[k][k][k])_k`.
    pub fn diagonal_values(&self) -> Vec<Scalar> {
        (0..self.dim).map(|k| self.get(k, k, k).clone()).collect()
    }

    pub fn first_negative_entry(&self) -> Option<(usize, usize, usize)> {
        self.nonzero_entries().find(|(_, _, _, v)| v.is_negative()).map(|(i, j, k, _)| (i, j, k))
    }

    pub fn is_positive(&self) -> bool {
        self.first_negative_entry().is_none()
    }

    /// `e_i e_j` as an element.
    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        Element::new((0..self.dim).map(|k| self.get(i, j, k).clone()).collect())
    }

    /// The tensor of the opposite product `(x, y) -> y x`.
    pub fn opposite(&self) -> Self {
        let d = self.dim;
        let mut t = Self::zeros(d);
        for (i, j, k, v) in self.nonzero_entries() {
            t.set(j, i, k, v.clone());
        }
        t
    }

    /// Restriction to the coordinates in `indices` (in the given order). Entries
    /// with an output coordinate outside `indices` are dropped; callers check
    /// closure separately.
    pub fn restrict(&self, indices: &[usize]) -> Self {
        let n = indices.len();
        let mut t = Self::zeros(n);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                for (c, &k) in indices.iter().enumerate() {
                    t.set(a, b, c, self.get(i, j, k).clone());
                }
            }
        }
        t
    }
}

/// `(x y)_k = sum_{i,j} x_i y_j c[i][j][k]`.
pub fn multiply(x: &Element, y: &Element, t: &StructureTensor) -> Result<Element> {
    x.check_dim(t.dim())?;
    y.check_dim(t.dim())?;
    let d = t.dim();
    let mut out = vec![Scalar::zero(); d];
    for i in 0..d {
        if x.get(i).is_zero() {
            continue;
        }
        for j in 0..d {
            if y.get(j).is_zero() {
                continue;
            }
            let xy = x.get(i) * y.get(j);
            for (k, o) in out.iter_mut().enumerate() {
                let c = t.get(i, j, k);
                if !c.is_zero() {
                    *o += &xy * c;
                }
            }
        }
    }
    Ok(Element::new(out))
}

/// The two-sided identity, if the linear system `e e_j = e_j = e_j e` has a
/// solution. Two-sided identities are unique, so a consistent system always
/// has exactly one solution.
pub fn find_identity(t: &StructureTensor) -> Option<Element> {
    let d = t.dim();
    let mut rows = Vec::with_capacity(2 * d * d);
    let mut rhs = Vec::with_capacity(2 * d * d);
    for j in 0..d {
        for k in 0..d {
            let target = if j == k { Scalar::one() } else { Scalar::zero() };
            rows.push((0..d).map(|i| t.get(i, j, k).clone()).collect());
            rhs.push(target.clone());
            rows.push((0..d).map(|i| t.get(j, i, k).clone()).collect());
            rhs.push(target);
        }
    }
    match linalg::solve(&rows, &rhs, d) {
        Solution::Unique(e) => Some(Element::new(e)),
        Solution::Inconsistent => None,
        Solution::Affine { .. } => unreachable!("a consistent identity system has a unique solution"),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec {
    norm: NormSpec,
    tensor: StructureTensor,
    label: Option<String>,
}

impl AlgebraSpec {
    pub fn new(norm: NormSpec, tensor: StructureTensor) -> Result<Self> {
        if norm.dim() != tensor.dim() {
            return Err(Error::DimensionMismatch { expected: norm.dim(), found: tensor.dim() });
        }
        Ok(Self { norm, tensor, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.norm.dim()
    }

    pub fn norm(&self) -> &NormSpec {
        &self.norm
    }

    pub fn tensor(&self) -> &StructureTensor {
        &self.tensor
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        multiply(x, y, &self.tensor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityWitness {
    /// Basis triple `(i, j, l)` with `(e_i e_j) e_l != e_i (e_j e_l)`.
    pub triple: (usize, usize, usize),
    pub left: Element,
    pub right: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmultiplicativityWitness {
    pub x: Element,
    pub y: Element,
    /// `||x y||`, which exceeds `||x|| ||y||`.
    pub product_norm: Scalar,
    pub bound: Scalar,
}

/// Which side the multiplier acts on in an f-algebra witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `(h f) ^ g != 0`
    Left,
    /// `(f h) ^ g != 0`
    Right,
}

/// Atoms `f = e_f`, `g = e_g` with `f ^ g = 0`, and a positive multiplier
/// `h = e_h` breaking disjointness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FWitness {
    /// The offending nonzero tensor entry `(i, j, k)`.
    pub entry: (usize, usize, usize),
    pub f: usize,
    pub g: usize,
    pub h: usize,
    pub side: Side,
    /// `(h f) ^ g` or `(f h) ^ g`.
    pub meet: Element,
}

/// Disjoint atoms whose product is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostFWitness {
    pub i: usize,
    pub j: usize,
    pub product: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FClassification {
    pub f_algebra: Verdict<FWitness>,
    pub almost_f_algebra: Verdict<AlmostFWitness>,
}

pub fn classify_f_algebra(t: &StructureTensor) -> Result<FClassification> {
    if let Some(entry) = t.first_negative_entry() {
        return Err(Error::NotPositiveProduct(entry));
    }
    let d = t.dim();
    let f_algebra = match t.nonzero_entries().find(|&(i, j, k, _)| !(i == j && j == k)) {
        None => Verdict::Holds,
        Some((i, j, k, _)) => {
            let (f, g, h, side) = if j != k {
                // (e_i e_j) ^ e_k >= c[i][j][k] e_k with e_j ^ e_k = 0
                (j, k, i, Side::Left)
            } else {
                // j == k, so i != k: (e_i e_j) ^ e_j with e_i ^ e_j = 0
                (i, k, j, Side::Right)
            };
            let product = match side {
                Side::Left => t.basis_product(h, f),
                Side::Right => t.basis_product(f, h),
            };
            let meet = product.inf(&Element::atom(d, g));
            Verdict::Fails(FWitness { entry: (i, j, k), f, g, h, side, meet })
        }
    };
    let almost_f_algebra = match t.nonzero_entries().find(|&(i, j, _, _)| i != j) {
        None => Verdict::Holds,
        Some((i, j, _, _)) => Verdict::Fails(AlmostFWitness { i, j, product: t.basis_product(i, j) }),
    };
    Ok(FClassification { f_algebra, almost_f_algebra })
}

fn check_associative(t: &StructureTensor) -> Verdict<AssociativityWitness> {
    let d = t.dim();
    let products: Vec<Vec<Element>> =
        (0..d).map(|i| (0..d).map(|j| t.basis_product(i, j)).collect()).collect();
    let zero = Element::zeros(d);
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                // (e_i e_j) e_l = sum_k c[i][j][k] e_k e_l
                let mut left = zero.clone();
                let mut right = zero.clone();
                for k in 0..d {
                    let a = t.get(i, j, k);
                    if !a.is_zero() {
                        left = &left + &products[k][l].scale(a);
                    }
                    let b = t.get(j, l, k);
                    if !b.is_zero() {
                        right = &right + &products[i][k].scale(b);
                    }
                }
                if left != right {
                    return Verdict::Fails(AssociativityWitness { triple: (i, j, l), left, right });
                }
            }
        }
    }
    Verdict::Holds
}

fn check_submultiplicative(norm: &NormSpec, t: &StructureTensor) -> Verdict<SubmultiplicativityWitness> {
    let candidates: Vec<(Element, Element)> = match norm.kind() {
        NormKind::WeightedSup if t.is_positive() => {
            let u = crate::lattice::order_unit_of_ball(norm).expect("sup norms have an order unit");
            vec![(u.clone(), u)]
        }
        _ => {
            let pts = norm.ball_extreme_points();
            let mut pairs = Vec::with_capacity(pts.len() * pts.len() * 2);
            for x in &pts {
                for y in &pts {
                    pairs.push((x.clone(), y.clone()));
                    if norm.kind() == NormKind::WeightedSup {
                        // only one sign of x is listed; y needs both
                        pairs.push((x.clone(), -y));
                    }
                }
            }
            pairs
        }
    };
    for (x, y) in candidates {
        let p = multiply(&x, &y, t).expect("dimensions agree");
        let product_norm = norm.norm(&p).expect("dimensions agree");
        let bound = norm.norm(&x).unwrap() * norm.norm(&y).unwrap();
        if product_norm > bound {
            return Verdict::Fails(SubmultiplicativityWitness { x, y, product_norm, bound });
        }
    }
    Verdict::Holds
}

/// Results of the full axiom battery. Failed axioms are reported with
/// witnesses rather than raised as errors.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    /// Witness is a negative tensor entry.
    pub positive_product: Verdict<(usize, usize, usize)>,
    pub associative: Verdict<AssociativityWitness>,
    pub submultiplicative: Verdict<SubmultiplicativityWitness>,
    pub identity: Option<Element>,
    pub identity_norm_one: bool,
    /// `None` when the product is not positive (classification undefined).
    pub f_classification: Option<FClassification>,
}

impl AxiomReport {
    /// Positive, associative and submultiplicative: a Banach lattice algebra.
    pub fn is_banach_lattice_algebra(&self) -> bool {
        self.positive_product.holds() && self.associative.holds() && self.submultiplicative.holds()
    }

    pub fn is_f_algebra(&self) -> bool {
        self.f_classification.as_ref().is_some_and(|c| c.f_algebra.holds())
    }

    pub fn is_almost_f_algebra(&self) -> bool {
        self.f_classification.as_ref().is_some_and(|c| c.almost_f_algebra.holds())
    }

    /// Names of the failed conditions among positivity, associativity and
    /// submultiplicativity.
    pub fn banach_failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.positive_product.holds() {
            out.push("positive_product");
        }
        if !self.associative.holds() {
            out.push("associative");
        }
        if !self.submultiplicative.holds() {
            out.push("submultiplicative");
        }
        out
    }
}

pub fn check_axioms(a: &AlgebraSpec) -> AxiomReport {
    let t = a.tensor();
    let positive_product = match t.first_negative_entry() {
        None => Verdict::Holds,
        Some(e) => Verdict::Fails(e),
    };
    let identity = find_identity(t);
    let identity_norm_one = identity
        .as_ref()
        .is_some_and(|e| a.norm().norm(e).expect("dimensions agree").is_one());
    AxiomReport {
        associative: check_associative(t),
        submultiplicative: check_submultiplicative(a.norm(), t),
        f_classification: classify_f_algebra(t).ok(),
        positive_product,
        identity,
        identity_norm_one,
    }
}

/// A bilinear map `A x B -> C` between coordinate spaces, with
/// `P(e_a, e_b) = sum_c t[a][b][c] e_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    dims: (usize, usize, usize),
    t: Vec<Scalar>,
}

impl BilinearMap {
    pub fn zeros(dims: (usize, usize, usize)) -> Self {
        Self { dims, t: vec![Scalar::zero(); dims.0 * dims.1 * dims.2] }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    fn index(&self, a: usize, b: usize, c: usize) -> usize {
        let (da, db, dc) = self.dims;
        assert!(a < da && b < db && c < dc, "bilinear map index out of range");
        (a * db + b) * dc + c
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &Scalar {
        &self.t[self.index(a, b, c)]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, v: Scalar) {
        let idx = self.index(a, b, c);
        self.t[idx] = v;
    }

    pub fn apply(&self, x: &Element, y: &Element) -> Result<Element> {
        let (da, db, dc) = self.dims;
        x.check_dim(da)?;
        y.check_dim(db)?;
        let mut out = vec![Scalar::zero(); dc];
        for a in 0..da {
            for b in 0..db {
                let xy = x.get(a) * y.get(b);
                if xy.is_zero() {
                    continue;
                }
                for (c, o) in out.iter_mut().enumerate() {
                    *o += &xy * self.get(a, b, c);
                }
            }
        }
        Ok(Element::new(out))
    }

    /// `P^t(b, a) = P(a, b)`.
    pub fn transpose(&self) -> Self {
        let (da, db, dc) = self.dims;
        let mut out = Self::zeros((db, da, dc));
        for a in 0..da {
            for b in 0..db {
                for c in 0..dc {
                    out.set(b, a, c, self.get(a, b, c).clone());
                }
            }
        }
        out
    }
}

impl From<&StructureTensor> for BilinearMap {
    fn from(t: &StructureTensor) -> Self {
        let d = t.dim();
        Self { dims: (d, d, d), t: t.c.clone() }
    }
}

impl TryFrom<&BilinearMap> for StructureTensor {
    type Error = Error;

    fn try_from(p: &BilinearMap) -> Result<Self> {
        let (da, db, dc) = p.dims;
        if da != db || db != dc {
            return Err(Error::DimensionMismatch { expected: da, found: if da != db { db } else { dc } });
        }
        Ok(StructureTensor { dim: da, c: p.t.clone() })
    }
}

/// The Arens adjoint `P^* : C^* x A -> B^*`, `P^*(phi, a)(b) = phi(P(a, b))`,
/// with each dual identified with its coordinate space.
pub fn arens_adjoint(p: &BilinearMap) -> BilinearMap {
    let (da, db, dc) = p.dims;
    let mut out = BilinearMap::zeros((dc, da, db));
    // P^*(e_c^*, e_a)(e_b) = e_c^*(P(e_a, e_b)) = t[a][b][c]
    for a in 0..da {
        for b in 0..db {
            for c in 0..dc {
                out.set(c, a, b, p.get(a, b, c).clone());
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArensProducts {
    /// `P^{***}`.
    pub first: StructureTensor,
    /// `P^{t***t}`.
    pub second: StructureTensor,
    pub regular: bool,
}

/// Both Arens extensions of a product, computed by composing adjoints and
/// transposes. In finite dimensions the bidual is the space itself and both
/// must reproduce the original product.
pub fn arens_products(t: &StructureTensor) -> ArensProducts {
    let p = BilinearMap::from(t);
    let triple = |q: &BilinearMap| arens_adjoint(&arens_adjoint(&arens_adjoint(q)));
    let first = StructureTensor::try_from(&triple(&p)).expect("square map");
    let second = StructureTensor::try_from(&triple(&p.transpose()).transpose()).expect("square map");
    let regular = first == second;
    ArensProducts { first, second, regular }
}
