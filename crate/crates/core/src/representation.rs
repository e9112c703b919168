//! Finite-scale representation results.
//!
//! * [`represent_am_unit`]: an AM-algebra with unit, written with a weighted
//!   sup norm, is carried by the diagonal scaling `x -> (w_k x_k)` onto the
//!   plain sup norm, where its product must become the pointwise product.
//! * [`martignon_products`]: every positive product on `R^n` with the constant
//!   one vector as identity is the pointwise product.
//! * [`quotient_representation`]: a sublattice cut out by constraints
//!   `f(t) = lambda f(s)` that is also a subalgebra is, after gluing points,
//!   the ideal of functions vanishing on a zero set.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::algebra::{check_axioms, classify_f_algebra, find_identity, AlgebraSpec, StructureTensor};
use crate::error::{Error, Result};
use crate::lattice::{order_unit_of_ball, Element, NormKind, NormSpec};
use crate::linalg::{self, Matrix, NonnegativeSolutions};
use crate::scalar::Scalar;
use crate::union_find::UnionFind;
use crate::Verdict;

#[derive(Clone, Debug, PartialEq)]
pub struct RepresentationResult {
    /// The weights `w`; the isometry is `x -> (w_k x_k)`.
    pub scaling: Vec<Scalar>,
    /// `c'[i][j][k] = w_k / (w_i w_j) c[i][j][k]`.
    pub transported: StructureTensor,
    pub is_pointwise: bool,
}

impl RepresentationResult {
    pub fn apply(&self, x: &Element) -> Element {
        x.hadamard(&Element::new(self.scaling.clone()))
    }

    pub fn invert(&self, y: &Element) -> Element {
        Element::new(y.coords().iter().zip(&self.scaling).map(|(v, w)| v / w).collect())
    }

    /// The plain sup norm on the target.
    pub fn target_norm(&self) -> NormSpec {
        NormSpec::unweighted(NormKind::WeightedSup, self.scaling.len())
    }
}

fn transport(t: &StructureTensor, w: &[Scalar]) -> StructureTensor {
    StructureTensor::from_entries(
        t.dim(),
        t.nonzero_entries().map(|(i, j, k, v)| (i, j, k, v * &w[k] / (&w[i] * &w[j]))),
    )
}

/// Represents an AM-algebra with unit as `C(K)` with `K` finite.
pub fn represent_am_unit(a: &AlgebraSpec) -> Result<RepresentationResult> {
    if a.norm().kind() != NormKind::WeightedSup {
        return Err(Error::NotAm);
    }
    let identity = find_identity(a.tensor()).ok_or(Error::NoIdentity)?;
    let order_unit = order_unit_of_ball(a.norm()).expect("sup norms have an order unit");
    if identity != order_unit {
        return Err(Error::IdentityNotOrderUnit { identity, order_unit });
    }
    let report = check_axioms(a);
    if !report.is_banach_lattice_algebra() {
        return Err(Error::AxiomsFailed(report.banach_failures().join(", ")));
    }
    let scaling = a.norm().weights().to_vec();
    let transported = transport(a.tensor(), &scaling);
    let is_pointwise = transported.is_kronecker();
    if !is_pointwise {
        return Err(Error::TheoremViolation(format!(
            "transported product {transported:?} of an AM-algebra with unit is not pointwise"
        )));
    }
    Ok(RepresentationResult { scaling, transported, is_pointwise })
}

/// Why an algebra is not isometric to a pointwise algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmFailure {
    AxiomsFailed(Vec<&'static str>),
    NotWeightedSup,
    NotFAlgebra,
    /// `c[k][k][k] != w_k`.
    DiagonalMismatch { k: usize, diagonal: Scalar, weight: Scalar },
}

#[derive(Clone, Debug, PartialEq)]
pub enum AmClassification {
    Isometric { zero_set_size: usize, scaling: Vec<Scalar> },
    Rejected(AmFailure),
}

impl AmClassification {
    pub fn is_isometric(&self) -> bool {
        matches!(self, AmClassification::Isometric { .. })
    }
}

/// Decides whether `a` is lattice and algebra isometric to a sublattice-algebra
/// of `C(K)`, `K` finite. In finite dimensions a closed ideal of functions on a
/// finite set is itself a full function algebra on the complement of the zero
/// set, so the zero set of a successful representation is empty.
pub fn classify_am_algebra(a: &AlgebraSpec) -> AmClassification {
    use AmClassification::Rejected;
    let report = check_axioms(a);
    if !report.is_banach_lattice_algebra() {
        return Rejected(AmFailure::AxiomsFailed(report.banach_failures()));
    }
    if a.norm().kind() != NormKind::WeightedSup {
        return Rejected(AmFailure::NotWeightedSup);
    }
    let f = classify_f_algebra(a.tensor()).expect("positivity was checked");
    if !f.f_algebra.holds() {
        return Rejected(AmFailure::NotFAlgebra);
    }
    let w = a.norm().weights();
    for (k, d) in a.tensor().diagonal_values().into_iter().enumerate() {
        if d != w[k] {
            return Rejected(AmFailure::DiagonalMismatch { k, diagonal: d, weight: w[k].clone() });
        }
    }
    let transported = transport(a.tensor(), w);
    let zero_set_size = transported.diagonal_values().iter().filter(|d| d.is_zero()).count();
    AmClassification::Isometric { zero_set_size, scaling: w.to_vec() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MartignonSolutions {
    Empty,
    Unique(StructureTensor),
    /// Exact elimination could not pin the set down to a point.
    Undetermined { free: usize },
}

impl MartignonSolutions {
    pub fn is_pointwise_singleton(&self) -> bool {
        matches!(self, MartignonSolutions::Unique(t) if t.is_kronecker())
    }
}

/// The equality system `1 e_j = e_j = e_j 1` on the `n^3` structure
/// constants, as rows over variables indexed like the tensor.
pub fn martignon_system(n: usize) -> (Matrix, Vec<Scalar>) {
    let var = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let cols = n * n * n;
    let mut rows = Vec::with_capacity(2 * n * n);
    let mut rhs = Vec::with_capacity(2 * n * n);
    let delta = |a: usize, b: usize| if a == b { Scalar::one() } else { Scalar::zero() };
    for j in 0..n {
        for k in 0..n {
            let mut row = vec![Scalar::zero(); cols];
            for i in 0..n {
                row[var(i, j, k)] = Scalar::one();
            }
            rows.push(row);
            rhs.push(delta(j, k));
        }
    }
    for i in 0..n {
        for k in 0..n {
            let mut row = vec![Scalar::zero(); cols];
            for j in 0..n {
                row[var(i, j, k)] = Scalar::one();
            }
            rows.push(row);
            rhs.push(delta(i, k));
        }
    }
    (rows, rhs)
}

/// All positive products on `R^n` (pointwise order) for which the constant one
/// vector is a two-sided identity. Associativity is not imposed.
pub fn martignon_products(n: usize) -> Result<MartignonSolutions> {
    if n == 0 {
        return Err(Error::BadParameter("n must be at least 1".into()));
    }
    let (rows, rhs) = martignon_system(n);
    Ok(match linalg::nonnegative_solutions(&rows, &rhs, n * n * n) {
        NonnegativeSolutions::Empty => MartignonSolutions::Empty,
        NonnegativeSolutions::Unique(c) => MartignonSolutions::Unique(StructureTensor::from_entries(
            n,
            c.into_iter().enumerate().map(|(idx, v)| (idx / (n * n), idx / n % n, idx % n, v)),
        )),
        NonnegativeSolutions::Undetermined { free, .. } => MartignonSolutions::Undetermined { free },
    })
}

/// One constraint `f(t) = lambda f(s)` (0-based points).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub t: usize,
    pub s: usize,
    pub lambda: Scalar,
}

/// The subspace `{f in R^m : f(t_i) = lambda_i f(s_i) for all i}`. Any
/// `lambda >= 0` is accepted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    ambient: usize,
    constraints: Vec<Constraint>,
}

impl ConstraintSystem {
    pub fn new(ambient: usize, constraints: Vec<Constraint>) -> Result<Self> {
        if ambient == 0 {
            return Err(Error::BadParameter("ambient dimension must be positive".into()));
        }
        for (n, c) in constraints.iter().enumerate() {
            if c.t >= ambient || c.s >= ambient {
                return Err(Error::BadParameter(format!("constraint {} refers to a point outside 1..={ambient}", n + 1)));
            }
            if c.lambda.is_negative() {
                return Err(Error::BadParameter(format!("constraint {} has negative lambda", n + 1)));
            }
        }
        Ok(Self { ambient, constraints })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Rows `f_t - lambda f_s`.
    pub fn equations(&self) -> Matrix {
        self.constraints
            .iter()
            .map(|c| {
                let mut row = vec![Scalar::zero(); self.ambient];
                row[c.t] += Scalar::one();
                row[c.s] -= &c.lambda;
                row
            })
            .collect()
    }

    pub fn contains(&self, f: &Element) -> bool {
        f.dim() == self.ambient && self.constraints.iter().all(|c| *f.get(c.t) == &c.lambda * f.get(c.s))
    }

    pub fn solution_basis(&self) -> Vec<Element> {
        linalg::null_space(&self.equations(), self.ambient).into_iter().map(Element::new).collect()
    }
}

fn zeros_of_basis(basis: &[Element], m: usize) -> BTreeSet<usize> {
    (0..m).filter(|&p| basis.iter().all(|b| b.get(p).is_zero())).collect()
}

/// Points where every function of the solution subspace vanishes.
pub fn forced_zero_coordinates(cs: &ConstraintSystem) -> BTreeSet<usize> {
    zeros_of_basis(&cs.solution_basis(), cs.ambient)
}

/// Two basis functions whose pointwise product leaves the subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductWitness {
    pub left: Element,
    pub right: Element,
    pub product: Element,
}

pub fn subalgebra_check(cs: &ConstraintSystem) -> Verdict<ProductWitness> {
    let basis = cs.solution_basis();
    for (a, left) in basis.iter().enumerate() {
        for right in &basis[a..] {
            let product = left.hadamard(right);
            if !cs.contains(&product) {
                return Verdict::Fails(ProductWitness { left: left.clone(), right: right.clone(), product });
            }
        }
    }
    Verdict::Holds
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintRole {
    /// `s` is a forced zero, hence so is `t`.
    ForcedZero,
    /// `lambda = 0`.
    Vanishes,
    /// `lambda = 1`: `t` and `s` are glued.
    Glue,
}

/// The gluing of a constraint-defined sublattice-algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResult {
    /// Partition of the ambient points, each class sorted, ordered by
    /// smallest member.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Indices into `classes` forming the zero set `F`.
    pub zero_set: BTreeSet<usize>,
    pub roles: Vec<ConstraintRole>,
    /// Basis of the solution subspace, as functions on the ambient points.
    pub basis: Vec<Element>,
    /// The same basis pushed to functions on classes.
    pub embedded_basis: Vec<Element>,
}

impl QuotientResult {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Dimension of the solution subspace.
    pub fn certificate(&self) -> usize {
        self.basis.len()
    }

    /// `f -> f~` with `f~(Q s) = f(s)`. Fails if `f` is not constant on classes.
    pub fn embed(&self, f: &Element) -> Result<Element> {
        f.check_dim(self.class_of.len())?;
        let mut out = Vec::with_capacity(self.classes.len());
        for class in &self.classes {
            let v = f.get(class[0]);
            if class.iter().any(|&p| f.get(p) != v) {
                return Err(Error::PreconditionViolated(format!(
                    "function is not constant on the class of point {}",
                    class[0] + 1
                )));
            }
            out.push(v.clone());
        }
        Ok(Element::new(out))
    }

    /// `g -> g o Q`.
    pub fn pull_back(&self, g: &Element) -> Element {
        Element::new(self.class_of.iter().map(|&c| g.get(c).clone()).collect())
    }

    /// Whether `g` lies in `{g in C(K) : g = 0 on F}`.
    pub fn image_contains(&self, g: &Element) -> bool {
        g.dim() == self.classes.len() && self.zero_set.iter().all(|&c| g.get(c).is_zero())
    }
}

fn violation(msg: impl Into<String>) -> Error {
    Error::TheoremViolation(msg.into())
}

/// Glues points identified by the constraints and collects the forced zeros.
///
/// Each constraint falls into one of three cases: its source point is a
/// forced zero, its `lambda` is 0, or its `lambda` is 1. Any other case is
/// impossible for a subalgebra, since `f^2` in the subspace forces
/// `lambda^2 f(s)^2 = lambda f(s)^2`; it is reported as
/// [`Error::ContradictsSubalgebra`]. All forced zeros form a single class, which
/// is the zero set `F`, so that two points share a class exactly when every
/// function of the subspace agrees on them.
pub fn quotient_representation(cs: &ConstraintSystem) -> Result<QuotientResult> {
    if !subalgebra_check(cs).holds() {
        return Err(Error::NotSubalgebra);
    }
    let m = cs.ambient;
    let basis = cs.solution_basis();
    let zeros = zeros_of_basis(&basis, m);

    let mut uf = UnionFind::new(m);
    let mut roles = Vec::with_capacity(cs.constraints.len());
    for (index, c) in cs.constraints.iter().enumerate() {
        let role = if zeros.contains(&c.s) {
            ConstraintRole::ForcedZero
        } else if c.lambda.is_zero() {
            ConstraintRole::Vanishes
        } else if c.lambda.is_one() {
            ConstraintRole::Glue
        } else {
            return Err(Error::ContradictsSubalgebra { index });
        };
        match role {
            ConstraintRole::ForcedZero | ConstraintRole::Vanishes => {
                if !zeros.contains(&c.t) {
                    return Err(violation(format!("constraint {} marks a point that is not a forced zero", index + 1)));
                }
            }
            ConstraintRole::Glue => {
                uf.union(c.t, c.s);
            }
        }
        roles.push(role);
    }
    if let Some(&first) = zeros.iter().next() {
        for &z in &zeros {
            uf.union(first, z);
        }
    }
    let classes = uf.classes();
    let mut class_of = vec![0; m];
    for (ci, class) in classes.iter().enumerate() {
        for &p in class {
            class_of[p] = ci;
        }
    }
    let zero_set: BTreeSet<usize> = zeros.iter().map(|&z| class_of[z]).collect();

    // the glued partition must coincide with "f(t) = f(s) for all f"
    for p in 0..m {
        for q in p + 1..m {
            let same = basis.iter().all(|b| b.get(p) == b.get(q));
            if same != (class_of[p] == class_of[q]) {
                return Err(violation(format!(
                    "points {} and {} are {} by the functions but {} by gluing",
                    p + 1,
                    q + 1,
                    if same { "identified" } else { "separated" },
                    if same { "separated" } else { "identified" },
                )));
            }
        }
    }

    let mut result = QuotientResult { classes, class_of, zero_set, roles, basis, embedded_basis: Vec::new() };
    let embedded_basis = result.basis.iter().map(|b| result.embed(b)).collect::<Result<Vec<_>>>()?;
    result.embedded_basis = embedded_basis;
    verify_embedding(cs, &result)?;
    Ok(result)
}

fn verify_embedding(cs: &ConstraintSystem, q: &QuotientResult) -> Result<()> {
    let k = q.num_classes();
    let sup = NormSpec::unweighted(NormKind::WeightedSup, cs.ambient);
    let sup_k = NormSpec::unweighted(NormKind::WeightedSup, k);
    let rows: Matrix = q.embedded_basis.iter().map(|g| g.coords().to_vec()).collect();
    if linalg::rank(&rows, k) != q.basis.len() {
        return Err(violation("embedding is not injective"));
    }
    for (b, g) in q.basis.iter().zip(&q.embedded_basis) {
        if sup.norm(b)? != sup_k.norm(g)? {
            return Err(violation("embedding is not isometric"));
        }
        let abs = b.abs();
        if !cs.contains(&abs) || q.embed(&abs)? != g.abs() {
            return Err(violation("embedding does not preserve the modulus"));
        }
        if !q.image_contains(g) {
            return Err(violation("embedded function does not vanish on the zero set"));
        }
    }
    for (a, (b1, g1)) in q.basis.iter().zip(&q.embedded_basis).enumerate() {
        for (b2, g2) in q.basis[a..].iter().zip(&q.embedded_basis[a..]) {
            let p = b1.hadamard(b2);
            if q.embed(&p)? != g1.hadamard(g2) {
                return Err(violation("embedding does not preserve products"));
            }
        }
    }
    if q.basis.len() != k - q.zero_set.len() {
        return Err(violation(format!(
            "image has dimension {} but the vanishing ideal has dimension {}",
            q.basis.len(),
            k - q.zero_set.len()
        )));
    }
    Ok(())
}
