//! Complexification `A_C = A + iA` of a coordinate algebra.
//!
//! Products stay exact. The modulus `|z|_k = sqrt(re_k^2 + im_k^2)` generally
//! leaves the rationals, so moduli and complex norms are `f64`, compared with
//! the fixed tolerance [`TOLERANCE`]. Whenever every squared modulus is a
//! perfect square the exact value is available through [`cx_modulus_exact`].

use num_traits::{One, Signed, Zero};

use crate::algebra::{multiply, AlgebraSpec, StructureTensor};
use crate::error::{Error, Result};
use crate::lattice::{Element, NormKind, NormSpec};
use crate::scalar::{self, Scalar};

pub const TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexElement {
    re: Element,
    im: Element,
}

impl ComplexElement {
    pub fn new(re: Element, im: Element) -> Result<Self> {
        im.check_dim(re.dim())?;
        Ok(Self { re, im })
    }

    pub fn real(re: Element) -> Self {
        let im = Element::zeros(re.dim());
        Self { re, im }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::real(Element::zeros(dim))
    }

    pub fn re(&self) -> &Element {
        &self.re
    }

    pub fn im(&self) -> &Element {
        &self.im
    }

    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn neg(&self) -> Self {
        Self { re: -&self.re, im: -&self.im }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self { re: self.re.scale(s), im: self.im.scale(s) }
    }

    /// `re_k^2 + im_k^2`, exact.
    pub fn squared_modulus(&self) -> Element {
        &self.re.hadamard(&self.re) + &self.im.hadamard(&self.im)
    }
}

/// `(x1 + i x2)(y1 + i y2) = (x1 y1 - x2 y2) + i (x1 y2 + x2 y1)`.
pub fn cx_product(z1: &ComplexElement, z2: &ComplexElement, t: &StructureTensor) -> Result<ComplexElement> {
    let m = |a: &Element, b: &Element| multiply(a, b, t);
    let re = &m(&z1.re, &z2.re)? - &m(&z1.im, &z2.im)?;
    let im = &m(&z1.re, &z2.im)? + &m(&z1.im, &z2.re)?;
    Ok(ComplexElement { re, im })
}

fn coord_modulus(re: &Scalar, im: &Scalar) -> f64 {
    if im.is_zero() {
        return scalar::to_f64(&re.abs());
    }
    let sq = re * re + im * im;
    match scalar::exact_sqrt(&sq) {
        Some(r) => scalar::to_f64(&r),
        None => scalar::to_f64(re).hypot(scalar::to_f64(im)),
    }
}

/// Coordinatewise modulus. In the coordinate lattice the supremum
/// `sup_theta (re cos(theta) + im sin(theta))` is attained at
/// `theta_k = atan2(im_k, re_k)` separately in each coordinate.
pub fn cx_modulus(z: &ComplexElement) -> Vec<f64> {
    z.re.coords().iter().zip(z.im.coords()).map(|(r, i)| coord_modulus(r, i)).collect()
}

/// The modulus as an exact element, when every squared modulus is a perfect
/// square (in particular when `im = 0`).
pub fn cx_modulus_exact(z: &ComplexElement) -> Option<Element> {
    z.squared_modulus().coords().iter().map(scalar::exact_sqrt).collect::<Option<Vec<_>>>().map(Element::new)
}

fn float_norm(n: &NormSpec, v: &[f64]) -> f64 {
    let it = v.iter().zip(n.weights()).map(|(x, w)| x.abs() * scalar::to_f64(w));
    match n.kind() {
        NormKind::WeightedSup => it.fold(0.0, f64::max),
        NormKind::WeightedL1 => it.sum(),
    }
}

/// `||z||_C = || |z| ||`.
pub fn cx_norm(z: &ComplexElement, n: &NormSpec) -> Result<f64> {
    z.re.check_dim(n.dim())?;
    Ok(float_norm(n, &cx_modulus(z)))
}

/// The bilinear product on `f64` vectors.
pub fn float_multiply(x: &[f64], y: &[f64], t: &StructureTensor) -> Vec<f64> {
    let d = t.dim();
    let mut out = vec![0.0; d];
    for (i, j, k, c) in t.nonzero_entries() {
        out[k] += x[i] * y[j] * scalar::to_f64(c);
    }
    out
}

/// Checks `|z1 z2| <= |z1| |z2|` coordinatewise, within [`TOLERANCE`], for
/// every sampled pair.
pub fn check_modulus_submultiplicative(t: &StructureTensor, samples: &[(ComplexElement, ComplexElement)]) -> Result<bool> {
    if let Some(entry) = t.first_negative_entry() {
        return Err(Error::NotPositiveProduct(entry));
    }
    for (z1, z2) in samples {
        let lhs = cx_modulus(&cx_product(z1, z2, t)?);
        let rhs = float_multiply(&cx_modulus(z1), &cx_modulus(z2), t);
        if lhs.iter().zip(&rhs).any(|(l, r)| *l > r + TOLERANCE) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest coordinatewise gap `| |z1 z2| - |z1| |z2| |` over the samples.
pub fn max_modulus_gap(t: &StructureTensor, samples: &[(ComplexElement, ComplexElement)]) -> Result<f64> {
    let mut gap = 0f64;
    for (z1, z2) in samples {
        let lhs = cx_modulus(&cx_product(z1, z2, t)?);
        let rhs = float_multiply(&cx_modulus(z1), &cx_modulus(z2), t);
        for (l, r) in lhs.iter().zip(&rhs) {
            gap = gap.max((l - r).abs());
        }
    }
    Ok(gap)
}

/// Checks `||conj(z) z|| = ||z||^2` within [`TOLERANCE`]. Only algebras already
/// in represented form (pointwise product, unit-weight sup norm) are accepted.
pub fn check_cstar_identity(a: &AlgebraSpec, samples: &[ComplexElement]) -> Result<bool> {
    if a.norm().kind() != NormKind::WeightedSup {
        return Err(Error::NotRepresentedPointwise("norm is not a sup norm".into()));
    }
    if !a.norm().weights().iter().all(One::is_one) {
        return Err(Error::NotRepresentedPointwise("sup norm has non-unit weights; represent the algebra first".into()));
    }
    if !a.tensor().is_kronecker() {
        return Err(Error::NotRepresentedPointwise("product is not the pointwise product".into()));
    }
    for z in samples {
        let zz = cx_product(&z.conj(), z, a.tensor())?;
        let lhs = cx_norm(&zz, a.norm())?;
        let n = cx_norm(z, a.norm())?;
        if (lhs - n * n).abs() > TOLERANCE {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn z(re: &[i64], im: &[i64]) -> ComplexElement {
        ComplexElement::new(Element::from_ints(re), Element::from_ints(im)).unwrap()
    }

    #[test]
    fn product_examples() {
        let t = StructureTensor::kronecker(1);
        let i = z(&[0], &[1]);
        assert_eq!(cx_product(&i, &i, &t).unwrap(), z(&[-1], &[0]));
        let t = StructureTensor::kronecker(2);
        assert_eq!(cx_product(&z(&[1, 0], &[1, 0]), &z(&[1, 0], &[-1, 0]), &t).unwrap(), z(&[2, 0], &[0, 0]));
        let t = StructureTensor::from_entries(2, [(0, 1, 0, int(3)), (1, 1, 1, int(-2))]);
        assert_eq!(cx_product(&z(&[4, 5], &[-1, 2]), &ComplexElement::zeros(2), &t).unwrap(), ComplexElement::zeros(2));
    }

    #[test]
    fn modulus_examples() {
        assert_eq!(cx_modulus(&z(&[3], &[4])), vec![5.0]);
        assert_eq!(cx_modulus_exact(&z(&[3], &[4])), Some(Element::from_ints(&[5])));
        assert!((cx_modulus(&z(&[1], &[1]))[0] - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(cx_modulus_exact(&z(&[1], &[1])), None);
    }

    #[test]
    fn modulus_is_sup_over_angles() {
        let w = z(&[3, -2, 0, 7], &[-5, 0, 1, 7]);
        let m = cx_modulus(&w);
        let re: Vec<f64> = w.re().coords().iter().map(scalar::to_f64).collect();
        let im: Vec<f64> = w.im().coords().iter().map(scalar::to_f64).collect();
        for step in 0..360 {
            let theta = f64::from(step).to_radians();
            for k in 0..4 {
                assert!(re[k] * theta.cos() + im[k] * theta.sin() <= m[k] + 1e-12);
            }
        }
        for k in 0..4 {
            let theta = im[k].atan2(re[k]);
            assert!((re[k] * theta.cos() + im[k] * theta.sin() - m[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn cstar_examples() {
        let a = AlgebraSpec::new(NormSpec::unweighted(NormKind::WeightedSup, 1), StructureTensor::kronecker(1)).unwrap();
        let w = z(&[3], &[4]);
        let zz = cx_product(&w.conj(), &w, a.tensor()).unwrap();
        assert_eq!(zz, z(&[25], &[0]));
        assert!(check_cstar_identity(&a, &[w]).unwrap());

        let weighted = AlgebraSpec::new(
            NormSpec::sup(vec![int(2), int(1)]).unwrap(),
            StructureTensor::diagonal(&[int(2), int(1)]),
        )
        .unwrap();
        assert!(matches!(check_cstar_identity(&weighted, &[]), Err(Error::NotRepresentedPointwise(_))));
    }

    #[test]
    fn weighted_cstar_identity_fails() {
        // pointwise product under a weighted sup norm: ||conj(z) z|| = 2 but ||z||^2 = 4 for z = e_1
        let t = StructureTensor::diagonal(&[int(1), int(1)]);
        let n = NormSpec::sup(vec![int(2), int(1)]).unwrap();
        let w = ComplexElement::real(Element::from_ints(&[1, 0]));
        let zz = cx_product(&w.conj(), &w, &t).unwrap();
        assert_eq!(cx_norm(&zz, &n).unwrap(), 2.0);
        assert_eq!(cx_norm(&w, &n).unwrap().powi(2), 4.0);
    }

    #[test]
    fn real_positive_factor_scales_exactly() {
        let t = StructureTensor::kronecker(2);
        let w = z(&[3, -1], &[4, 0]);
        let r = ComplexElement::real(Element::from_ints(&[2, 5]));
        let p = cx_product(&w, &r, &t).unwrap();
        assert_eq!(cx_modulus_exact(&p), Some(Element::from_ints(&[10, 5])));
        assert!(check_modulus_submultiplicative(&t, &[(w, r)]).unwrap());
    }
}
