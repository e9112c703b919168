//! Seeded generators of random exact objects for the property checks and the
//! command-line reports.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraSpec, StructureTensor};
use crate::complexify::ComplexElement;
use crate::lattice::{Element, NormSpec};
use crate::representation::{Constraint, ConstraintSystem};
use crate::scalar::Scalar;
use crate::sparse_seq::{SparseFunctional, SparseSeq};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p / q` with `|p| <= bound`, `1 <= q <= bound`.
pub fn rational(rng: &mut impl Rng, bound: i64) -> Scalar {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound.max(1));
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// A strictly positive rational `p / q` with `1 <= p, q <= bound`.
pub fn positive_rational(rng: &mut impl Rng, bound: i64) -> Scalar {
    let p = rng.gen_range(1..=bound.max(1));
    let q = rng.gen_range(1..=bound.max(1));
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn element(rng: &mut impl Rng, dim: usize, bound: i64) -> Element {
    Element::new((0..dim).map(|_| rational(rng, bound)).collect())
}

pub fn positive_element(rng: &mut impl Rng, dim: usize, bound: i64) -> Element {
    element(rng, dim, bound).abs()
}

/// A random element vanishing outside `support`.
pub fn element_on_support(rng: &mut impl Rng, dim: usize, support: &[usize], bound: i64) -> Element {
    let mut x = Element::zeros(dim);
    for &k in support {
        x.set(k, rational(rng, bound));
    }
    x
}

pub fn weights(rng: &mut impl Rng, dim: usize, bound: i64) -> Vec<Scalar> {
    (0..dim).map(|_| positive_rational(rng, bound)).collect()
}

/// A diagonal AM-algebra with unit: weighted sup norm `w` and `e_k^2 = w_k e_k`.
pub fn diagonal_am_spec(rng: &mut impl Rng, max_dim: usize, bound: i64) -> AlgebraSpec {
    let n = rng.gen_range(1..=max_dim);
    let w = weights(rng, n, bound);
    AlgebraSpec::new(NormSpec::sup(w.clone()).expect("positive weights"), StructureTensor::diagonal(&w))
        .expect("dimensions agree")
}

/// A tensor with nonnegative entries, each nonzero with probability `density`.
pub fn nonnegative_tensor(rng: &mut impl Rng, dim: usize, density: f64, bound: i64) -> StructureTensor {
    let mut t = StructureTensor::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if rng.gen_bool(density) {
                    t.set(i, j, k, positive_rational(rng, bound));
                }
            }
        }
    }
    t
}

/// Constraints with `lambda` in `{0, 1}` on `m` points.
pub fn constraint_system_01(rng: &mut impl Rng, m: usize, count: usize) -> ConstraintSystem {
    let constraints = (0..count)
        .map(|_| Constraint {
            t: rng.gen_range(0..m),
            s: rng.gen_range(0..m),
            lambda: if rng.gen_bool(0.5) { Scalar::zero() } else { Scalar::from_integer(1.into()) },
        })
        .collect();
    ConstraintSystem::new(m, constraints).expect("indices are in range")
}

/// Up to `max_len` entries with indices in `1..=max_index`.
pub fn sparse_seq(rng: &mut impl Rng, max_len: usize, max_index: u64, bound: i64) -> SparseSeq {
    let len = rng.gen_range(0..=max_len);
    SparseSeq::from_entries((0..len).map(|_| (rng.gen_range(1..=max_index), rational(rng, bound))))
}

pub fn positive_sparse_functional(rng: &mut impl Rng, max_len: usize, max_index: u64, bound: i64) -> SparseFunctional {
    let len = rng.gen_range(0..=max_len);
    SparseFunctional::new(SparseSeq::from_entries(
        (0..len).map(|_| (rng.gen_range(1..=max_index), positive_rational(rng, bound))),
    ))
}

/// A disjoint pair `(x, y)` and a positive multiplier `h`.
pub fn disjoint_sparse_triple(rng: &mut impl Rng, max_index: u64, bound: i64) -> (SparseSeq, SparseSeq, SparseSeq) {
    let mut indices: Vec<u64> = (1..=max_index).collect();
    indices.shuffle(rng);
    let split = rng.gen_range(0..=indices.len());
    let (left, right) = indices.split_at(split);
    let mut pick = |from: &[u64]| {
        let mut s = SparseSeq::new();
        for &i in from {
            if rng.gen_bool(0.5) {
                s.insert(i, rational(rng, bound));
            }
        }
        s
    };
    let x = pick(left);
    let y = pick(right);
    let h = sparse_seq(rng, max_index as usize, max_index, bound).abs();
    (x, y, h)
}

pub fn complex_element(rng: &mut impl Rng, dim: usize, bound: i64) -> ComplexElement {
    ComplexElement::new(element(rng, dim, bound), element(rng, dim, bound)).expect("same dimension")
}
