//! The example gallery, the ideal generated by an identity, and the two
//! alternative products showing that an identity does not pin down the
//! product unless the algebra is a `C(K)`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{check_axioms, AlgebraSpec, StructureTensor};
use crate::error::{Error, Result};
use crate::lattice::{band_projection, BandProjection, Element, Functional, NormKind, NormSpec};
use crate::representation::{represent_am_unit, RepresentationResult};
use crate::sampling;
use crate::scalar::{self, Scalar};
use crate::Verdict;

/// Named entries of the example gallery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GalleryName {
    /// `R^n` with weighted sup norm and `e_k^2 = w_k e_k`; identity `(1 / w_k)`.
    Pointwise { n: usize, weights: Vec<Scalar> },
    /// `l_inf^2` with `(x_1, y_1)(x_2, y_2) = (0, x_1 x_2)`.
    TwistedLinf2,
    /// `R^n + R` with `(x, a)(y, b) = (x y + a y + b x, a b)` and sup norm.
    C0R { n: usize },
    /// The group algebra of `Z / n` with the l1 norm.
    CyclicConvolution { n: usize },
    /// `R^n` with zero product, unitized by an identity atom at index `n + 1`.
    ZeroProduct { n: usize },
}

impl GalleryName {
    pub const IDENTIFIERS: [&'static str; 5] =
        ["pointwise", "twisted_linf2", "c0_R", "cyclic_convolution", "zero_product"];

    /// Parses a CLI identifier with its size parameter and optional weights
    /// (pointwise only; default all ones).
    pub fn parse(id: &str, n: Option<usize>, weights: Option<Vec<Scalar>>) -> Result<Self> {
        let need_n = || n.ok_or_else(|| Error::BadParameter(format!("{id} needs a size parameter")));
        if weights.is_some() && id != "pointwise" {
            return Err(Error::BadParameter(format!("{id} takes no weights")));
        }
        match id {
            "pointwise" => {
                let n = match (&weights, n) {
                    (Some(w), None) => w.len(),
                    (_, Some(n)) => n,
                    (None, None) => return Err(Error::BadParameter("pointwise needs a size or weights".into())),
                };
                let weights = weights.unwrap_or_else(|| vec![Scalar::one(); n]);
                Ok(Self::Pointwise { n, weights })
            }
            "twisted_linf2" => match n {
                None | Some(2) => Ok(Self::TwistedLinf2),
                Some(other) => Err(Error::BadParameter(format!("twisted_linf2 has dimension 2, not {other}"))),
            },
            "c0_R" => Ok(Self::C0R { n: need_n()? }),
            "cyclic_convolution" => Ok(Self::CyclicConvolution { n: need_n()? }),
            "zero_product" => Ok(Self::ZeroProduct { n: need_n()? }),
            other => Err(Error::BadParameter(format!(
                "unknown gallery entry {other:?}; expected one of {}",
                Self::IDENTIFIERS.join(", ")
            ))),
        }
    }

    pub fn identifier(&self) -> &'static str {
        match self {
            Self::Pointwise { .. } => "pointwise",
            Self::TwistedLinf2 => "twisted_linf2",
            Self::C0R { .. } => "c0_R",
            Self::CyclicConvolution { .. } => "cyclic_convolution",
            Self::ZeroProduct { .. } => "zero_product",
        }
    }
}

impl fmt::Display for GalleryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Pointwise { n, weights } if weights.iter().all(One::is_one) => write!(f, "pointwise({n})"),
            Self::Pointwise { n, weights } => {
                let w: Vec<String> = weights.iter().map(scalar::format).collect();
                write!(f, "pointwise({n}; w={})", w.join(","))
            }
            Self::TwistedLinf2 => f.write_str("twisted_linf2"),
            Self::C0R { n } => write!(f, "c0_R({n})"),
            Self::CyclicConvolution { n } => write!(f, "cyclic_convolution({n})"),
            Self::ZeroProduct { n } => write!(f, "zero_product({n})"),
        }
    }
}

fn unit_sup(dim: usize) -> NormSpec {
    NormSpec::unweighted(NormKind::WeightedSup, dim)
}

/// The tensor of a unitization: the atom at `unit` acts as identity on every
/// atom, and `inner` gives the products of the remaining atoms.
fn unitized(n: usize, inner: impl Fn(usize) -> Option<Scalar>) -> StructureTensor {
    let u = n;
    let mut t = StructureTensor::zeros(n + 1);
    t.set(u, u, u, Scalar::one());
    for i in 0..n {
        t.set(u, i, i, Scalar::one());
        t.set(i, u, i, Scalar::one());
        if let Some(v) = inner(i) {
            t.set(i, i, i, v);
        }
    }
    t
}

pub fn gallery(name: &GalleryName) -> Result<AlgebraSpec> {
    let positive = |n: usize| {
        if n == 0 {
            Err(Error::BadParameter("size must be at least 1".into()))
        } else {
            Ok(n)
        }
    };
    let spec = match name {
        GalleryName::Pointwise { n, weights } => {
            positive(*n)?;
            if weights.len() != *n {
                return Err(Error::BadParameter(format!("pointwise({n}) needs {n} weights, got {}", weights.len())));
            }
            let norm = NormSpec::sup(weights.clone()).map_err(|e| Error::BadParameter(e.to_string()))?;
            AlgebraSpec::new(norm, StructureTensor::diagonal(weights))?
        }
        GalleryName::TwistedLinf2 => {
            AlgebraSpec::new(unit_sup(2), StructureTensor::from_entries(2, [(0, 0, 1, Scalar::one())]))?
        }
        GalleryName::C0R { n } => {
            let n = positive(*n)?;
            AlgebraSpec::new(unit_sup(n + 1), unitized(n, |_| Some(Scalar::one())))?
        }
        GalleryName::CyclicConvolution { n } => {
            let n = positive(*n)?;
            let mut t = StructureTensor::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    t.set(i, j, (i + j) % n, Scalar::one());
                }
            }
            AlgebraSpec::new(NormSpec::unweighted(NormKind::WeightedL1, n), t)?
        }
        GalleryName::ZeroProduct { n } => {
            let n = positive(*n)?;
            AlgebraSpec::new(unit_sup(n + 1), unitized(n, |_| None))?
        }
    };
    Ok(spec.with_label(name.to_string()))
}

/// The positive/associative/identity prerequisites of the constructions below.
/// Submultiplicativity is not needed for them.
fn unital_identity(a: &AlgebraSpec) -> Result<Element> {
    let report = check_axioms(a);
    let mut failed = Vec::new();
    if !report.positive_product.holds() {
        failed.push("positive_product");
    }
    if !report.associative.holds() {
        failed.push("associative");
    }
    if !failed.is_empty() {
        return Err(Error::AxiomsFailed(failed.join(", ")));
    }
    report.identity.ok_or(Error::NoIdentity)
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdealOptions {
    pub samples: usize,
    pub seed: u64,
    /// Number of squarings for the spectral-radius estimate; `None` skips it.
    pub spectral_depth: Option<u32>,
    pub spectral_tolerance: f64,
}

impl Default for IdealOptions {
    fn default() -> Self {
        Self { samples: 100, seed: 0, spectral_depth: Some(12), spectral_tolerance: 1e-9 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralCheck {
    pub depth: u32,
    pub samples: usize,
    pub max_deviation: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdealReport {
    pub identity: Element,
    pub band: BandProjection,
    /// `A_e` in its own coordinates (the support of `e`, in increasing order),
    /// normed by `||x||_e = max |x_k| / e_k`.
    pub restricted: AlgebraSpec,
    pub representation: RepresentationResult,
    pub norm_samples: usize,
    /// Witness: a sampled `x` in `A_e` with `||x|| != ||x||_e`.
    pub norm_coincidence: Verdict<Element>,
    pub spectral: Option<SpectralCheck>,
}

/// `||x||_e = inf {l : |x| <= l e}` for `x` in the ideal generated by `e`.
pub fn order_unit_norm(x: &Element, e: &Element) -> Option<Scalar> {
    let mut best = Scalar::zero();
    for (v, ek) in x.coords().iter().zip(e.coords()) {
        if ek.is_zero() {
            if !v.is_zero() {
                return None;
            }
        } else {
            let r = v.abs() / ek;
            if r > best {
                best = r;
            }
        }
    }
    Some(best)
}

/// Analyses the ideal `A_e = {a : |a| <= l e}` generated by a norm-one identity.
pub fn ideal_ae(a: &AlgebraSpec, opts: &IdealOptions) -> Result<IdealReport> {
    let e = unital_identity(a)?;
    if !a.norm().norm(&e)?.is_one() {
        return Err(Error::PreconditionViolated("the identity does not have norm one".into()));
    }
    let band = band_projection(&e)?;
    let support: Vec<usize> = band.support().iter().copied().collect();
    let t = a.tensor();
    for &i in &support {
        for &j in &support {
            if !band.in_range(&t.basis_product(i, j)) {
                return Err(Error::TheoremViolation(format!(
                    "A_e is not closed under products: e_{} e_{} leaves it",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let unit_weights: Vec<Scalar> = support.iter().map(|&k| e.get(k).recip()).collect();
    let restricted = AlgebraSpec::new(NormSpec::sup(unit_weights)?, t.restrict(&support))?
        .with_label(format!("A_e of {}", a.label().unwrap_or("algebra")));
    let representation = represent_am_unit(&restricted)?;

    let mut rng = sampling::rng(opts.seed);
    let mut norm_coincidence = Verdict::Holds;
    let mut positives = Vec::new();
    for _ in 0..opts.samples {
        let x = sampling::element_on_support(&mut rng, a.dim(), &support, 12);
        let ambient = a.norm().norm(&x)?;
        let ideal = order_unit_norm(&x, &e).expect("sample lies in A_e");
        if ambient != ideal && norm_coincidence.holds() {
            norm_coincidence = Verdict::Fails(x.clone());
        }
        positives.push(x.abs());
    }
    let spectral = opts.spectral_depth.map(|depth| {
        let mut max_deviation = 0f64;
        let mut count = 0;
        for x in positives.iter().filter(|x| !x.is_zero()) {
            let estimate = spectral_estimate(a, x, depth);
            let target = scalar::to_f64(&order_unit_norm(x, &e).expect("sample lies in A_e"));
            max_deviation = max_deviation.max((estimate - target).abs());
            count += 1;
        }
        SpectralCheck { depth, samples: count, max_deviation, passed: max_deviation <= opts.spectral_tolerance }
    });
    Ok(IdealReport {
        identity: e,
        band,
        restricted,
        representation,
        norm_samples: opts.samples,
        norm_coincidence,
        spectral,
    })
}

/// `||x^(2^depth)||^(1 / 2^depth)` in floating point, renormalizing after each
/// squaring and tracking the logarithm of the discarded scale.
pub fn spectral_estimate(a: &AlgebraSpec, x: &Element, depth: u32) -> f64 {
    let d = a.dim();
    let tensor: Vec<f64> = {
        let t = a.tensor();
        let mut v = vec![0.0; d * d * d];
        for (i, j, k, c) in t.nonzero_entries() {
            v[(i * d + j) * d + k] = scalar::to_f64(c);
        }
        v
    };
    let weights: Vec<f64> = a.norm().weights().iter().map(scalar::to_f64).collect();
    let norm = |v: &[f64]| -> f64 {
        let it = v.iter().zip(&weights).map(|(x, w)| x.abs() * w);
        match a.norm().kind() {
            NormKind::WeightedSup => it.fold(0.0, f64::max),
            NormKind::WeightedL1 => it.sum(),
        }
    };
    let square = |v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; d];
        for i in 0..d {
            for j in 0..d {
                let p = v[i] * v[j];
                if p == 0.0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += p * tensor[(i * d + j) * d + k];
                }
            }
        }
        out
    };
    let mut v: Vec<f64> = x.coords().iter().map(scalar::to_f64).collect();
    let n0 = norm(&v);
    if n0 == 0.0 {
        return 0.0;
    }
    let mut log_norm = n0.ln();
    v.iter_mut().for_each(|c| *c /= n0);
    for _ in 0..depth {
        v = square(&v);
        let n = norm(&v);
        if n == 0.0 {
            return 0.0;
        }
        log_norm = 2.0 * log_norm + n.ln();
        v.iter_mut().for_each(|c| *c /= n);
    }
    (log_norm / f64::from(2u32).powi(depth as i32)).exp()
}

/// A basis product that changed under an alternative product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorDifference {
    pub i: usize,
    pub j: usize,
    pub original: Element,
    pub replaced: Element,
}

fn differences(old: &StructureTensor, new: &StructureTensor) -> Vec<TensorDifference> {
    let d = old.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let (original, replaced) = (old.basis_product(i, j), new.basis_product(i, j));
            if original != replaced {
                out.push(TensorDifference { i, j, original, replaced });
            }
        }
    }
    out
}

/// Checks shared by both alternative products.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductChecks {
    pub positive: bool,
    pub associative: bool,
    /// `e` is a two-sided identity of the new product.
    pub identity_preserved: bool,
    /// Both sides of the associativity expansion match on every basis triple.
    pub expansion_verified: bool,
}

impl ProductChecks {
    pub fn all_pass(&self) -> bool {
        self.positive && self.associative && self.identity_preserved && self.expansion_verified
    }
}

fn base_checks(a: &AlgebraSpec, t: &StructureTensor, e: &Element, expansion_verified: bool) -> ProductChecks {
    let spec = AlgebraSpec::new(a.norm().clone(), t.clone()).expect("same dimension");
    let report = check_axioms(&spec);
    let d = t.dim();
    let identity_preserved = (0..d).all(|j| {
        let ej = Element::atom(d, j);
        spec.multiply(e, &ej).unwrap() == ej && spec.multiply(&ej, e).unwrap() == ej
    });
    ProductChecks {
        positive: report.positive_product.holds(),
        associative: report.associative.holds(),
        identity_preserved,
        expansion_verified,
    }
}

fn tensor_from_basis(d: usize, product: impl Fn(&Element, &Element) -> Element) -> StructureTensor {
    let mut t = StructureTensor::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let p = product(&Element::atom(d, i), &Element::atom(d, j));
            for (k, v) in p.into_coords().into_iter().enumerate() {
                t.set(i, j, k, v);
            }
        }
    }
    t
}

fn basis_triples(d: usize) -> impl Iterator<Item = (Element, Element, Element)> {
    (0..d * d * d).map(move |n| (Element::atom(d, n / (d * d)), Element::atom(d, n / d % d), Element::atom(d, n % d)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct StarProduct {
    pub tensor: StructureTensor,
    pub checks: ProductChecks,
    /// `alpha` and `beta` are multiplicative on `A_e`.
    pub functionals_multiplicative: bool,
    pub differences: Vec<TensorDifference>,
}

/// `x * y = Px Py + alpha(Px) P^d y + P^d x beta(Py)`, where `P` is the band
/// projection onto `A_e` and `alpha`, `beta` are the point evaluations
/// `x -> x_k / e_k` at the given indices of `support(e)` (0-based).
pub fn star_product(a: &AlgebraSpec, alpha_idx: usize, beta_idx: usize) -> Result<StarProduct> {
    let e = unital_identity(a)?;
    let band = band_projection(&e)?;
    for idx in [alpha_idx, beta_idx] {
        if !band.support().contains(&idx) {
            return Err(Error::IndexOutsideSupport { index: idx });
        }
    }
    let d = a.dim();
    let eval = |k: usize| {
        let ek = e.get(k).clone();
        move |x: &Element| x.get(k) / &ek
    };
    let (alpha, beta) = (eval(alpha_idx), eval(beta_idx));
    let mul = |x: &Element, y: &Element| a.multiply(x, y).expect("dimensions agree");
    let p = |x: &Element| band.project(x);
    let pd = |x: &Element| band.complement(x);

    let star = |x: &Element, y: &Element| -> Element {
        let main = mul(&p(x), &p(y));
        let left = pd(y).scale(&alpha(&p(x)));
        let right = pd(x).scale(&beta(&p(y)));
        &(&main + &left) + &right
    };
    let tensor = tensor_from_basis(d, star);
    let new_mul = |x: &Element, y: &Element| crate::algebra::multiply(x, y, &tensor).expect("dimensions agree");

    let expansion_verified = basis_triples(d).all(|(x, y, z)| {
        let (px, py, pz) = (p(&x), p(&y), p(&z));
        let pxpy = mul(&px, &py);
        let common = &mul(&pxpy, &pz) + &pd(&y).scale(&(alpha(&px) * beta(&pz)));
        let left_expansion = &(&common + &pd(&z).scale(&alpha(&pxpy))) + &pd(&x).scale(&(beta(&py) * beta(&pz)));
        let right_expansion =
            &(&common + &pd(&z).scale(&(alpha(&px) * alpha(&py)))) + &pd(&x).scale(&beta(&mul(&py, &pz)));
        new_mul(&new_mul(&x, &y), &z) == left_expansion && new_mul(&x, &new_mul(&y, &z)) == right_expansion
    });

    let support: Vec<usize> = band.support().iter().copied().collect();
    let functionals_multiplicative = support.iter().all(|&i| {
        support.iter().all(|&j| {
            let (u, v) = (Element::atom(d, i), Element::atom(d, j));
            let uv = mul(&u, &v);
            alpha(&uv) == alpha(&u) * alpha(&v) && beta(&uv) == beta(&u) * beta(&v)
        })
    });

    Ok(StarProduct {
        checks: base_checks(a, &tensor, &e, expansion_verified),
        functionals_multiplicative,
        differences: differences(a.tensor(), &tensor),
        tensor,
    })
}

/// An element squaring to zero originally but not under the new product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AstWitness {
    pub x: Element,
    pub original_square: Element,
    pub new_square: Element,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AstProduct {
    pub tensor: StructureTensor,
    pub checks: ProductChecks,
    pub witness: AstWitness,
    pub differences: Vec<TensorDifference>,
}

fn precondition(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(msg.into()))
    }
}

/// `x * y = l m e + l y' + m x' + phi(x') phi(y') x0` for `x = l e + x'`,
/// `y = m e + y'` with `x', y'` in the disjoint complement of `A_e`.
///
/// Requires `A_e` to be one-dimensional, the original product to vanish on the
/// complement, `phi` positive, nonzero and supported on the complement, and
/// `x0` positive, nonzero and in the complement.
pub fn ast_product(a: &AlgebraSpec, phi: &Functional, x0: &Element) -> Result<AstProduct> {
    let e = unital_identity(a)?;
    let d = a.dim();
    x0.check_dim(d)?;
    if phi.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: phi.dim() });
    }
    let band = band_projection(&e)?;
    precondition(band.support().len() == 1, "A_e is not one-dimensional")?;
    let s = *band.support().iter().next().unwrap();
    let complement: BTreeSet<usize> = band.complement_support();
    for &i in &complement {
        for &j in &complement {
            precondition(
                a.tensor().basis_product(i, j).is_zero(),
                "the product does not vanish on the complement of A_e",
            )?;
        }
    }
    precondition(phi.is_positive() && !phi.is_zero(), "phi is not a positive nonzero functional")?;
    precondition(phi.coords()[s].is_zero(), "phi is not supported on the complement of A_e")?;
    precondition(x0.is_positive() && !x0.is_zero(), "x0 is not a positive nonzero element")?;
    precondition(x0.get(s).is_zero(), "x0 does not lie in the complement of A_e")?;

    let split = |x: &Element| -> (Scalar, Element) {
        let l = x.get(s) / e.get(s);
        let rest = x - &e.scale(&l);
        (l, rest)
    };
    let ph = |x: &Element| phi.apply(x).expect("dimensions agree");
    let ast = |x: &Element, y: &Element| -> Element {
        let (l, xr) = split(x);
        let (m, yr) = split(y);
        let mut out = e.scale(&(&l * &m));
        out = &out + &yr.scale(&l);
        out = &out + &xr.scale(&m);
        &out + &x0.scale(&(ph(&xr) * ph(&yr)))
    };
    let tensor = tensor_from_basis(d, ast);
    let new_mul = |x: &Element, y: &Element| crate::algebra::multiply(x, y, &tensor).expect("dimensions agree");

    let phi_x0 = ph(x0);
    let expansion_verified = basis_triples(d).all(|(x, y, z)| {
        let ((l, xr), (m, yr), (n, zr)) = (split(&x), split(&y), split(&z));
        let bracket = &n * ph(&xr) * ph(&yr)
            + &l * ph(&yr) * ph(&zr)
            + &m * ph(&xr) * ph(&zr)
            + ph(&xr) * ph(&yr) * ph(&zr) * &phi_x0;
        let mut expected = e.scale(&(&l * &m * &n));
        expected = &expected + &zr.scale(&(&l * &m));
        expected = &expected + &yr.scale(&(&n * &l));
        expected = &expected + &xr.scale(&(&n * &m));
        expected = &expected + &x0.scale(&bracket);
        new_mul(&new_mul(&x, &y), &z) == expected && new_mul(&x, &new_mul(&y, &z)) == expected
    });

    let j = phi.coords().iter().position(|c| !c.is_zero()).expect("phi is nonzero");
    let x = Element::atom(d, j);
    let witness = AstWitness { original_square: a.multiply(&x, &x)?, new_square: new_mul(&x, &x), x };
    debug_assert_eq!(witness.new_square, x0.scale(&(&phi.coords()[j] * &phi.coords()[j])));

    Ok(AstProduct {
        checks: base_checks(a, &tensor, &e, expansion_verified),
        differences: differences(a.tensor(), &tensor),
        witness,
        tensor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::find_identity;
    use crate::lattice::is_am_norm;
    use crate::scalar::{int, ratio};

    fn g(name: GalleryName) -> AlgebraSpec {
        gallery(&name).unwrap()
    }

    #[test]
    fn gallery_examples() {
        let r = check_axioms(&g(GalleryName::TwistedLinf2));
        assert!(r.is_banach_lattice_algebra());
        assert_eq!(r.identity, None);
        assert_eq!(find_identity(g(GalleryName::C0R { n: 2 }).tensor()), Some(Element::from_ints(&[0, 0, 1])));
        assert!(!is_am_norm(g(GalleryName::CyclicConvolution { n: 3 }).norm()).holds());
    }

    #[test]
    fn c0r_product_formula() {
        // (x, a)(y, b) = (x y + a y + b x, a b)
        let a = g(GalleryName::C0R { n: 2 });
        let x = Element::from_ints(&[2, -1, 3]);
        let y = Element::from_ints(&[5, 4, -2]);
        let expected = Element::from_ints(&[2 * 5 + 3 * 5 - 2 * 2, -4 + 3 * 4 + 2, -6]);
        assert_eq!(a.multiply(&x, &y).unwrap(), expected);
    }

    #[test]
    fn gallery_parameters() {
        assert!(gallery(&GalleryName::C0R { n: 0 }).is_err());
        assert!(gallery(&GalleryName::Pointwise { n: 2, weights: vec![int(1)] }).is_err());
        assert!(gallery(&GalleryName::Pointwise { n: 1, weights: vec![int(0)] }).is_err());
        assert!(GalleryName::parse("nope", Some(2), None).is_err());
        assert!(GalleryName::parse("c0_R", None, None).is_err());
        assert_eq!(GalleryName::parse("twisted_linf2", None, None).unwrap(), GalleryName::TwistedLinf2);
        assert_eq!(
            GalleryName::parse("pointwise", None, Some(vec![int(2), int(3)])).unwrap(),
            GalleryName::Pointwise { n: 2, weights: vec![int(2), int(3)] }
        );
    }

    #[test]
    fn ideal_c0r() {
        let report = ideal_ae(&g(GalleryName::C0R { n: 2 }), &IdealOptions::default()).unwrap();
        assert_eq!(report.band.support(), &BTreeSet::from([2]));
        assert_eq!(report.restricted.dim(), 1);
        assert_eq!(report.restricted.tensor(), &StructureTensor::kronecker(1));
        assert!(report.norm_coincidence.holds());
        assert!(report.spectral.unwrap().passed);
    }

    #[test]
    fn ideal_pointwise() {
        let report = ideal_ae(&g(GalleryName::Pointwise { n: 3, weights: vec![int(1); 3] }), &IdealOptions::default()).unwrap();
        assert_eq!(report.band.support().len(), 3);
        assert!(report.norm_coincidence.holds());

        let a = g(GalleryName::Pointwise { n: 2, weights: vec![int(2), int(3)] });
        let report = ideal_ae(&a, &IdealOptions::default()).unwrap();
        assert_eq!(report.identity, Element::new(vec![ratio(1, 2), ratio(1, 3)]));
        assert!(report.norm_coincidence.holds());
        let x = Element::from_ints(&[5, -7]);
        assert_eq!(order_unit_norm(&x, &report.identity), Some(int(21)));
        assert_eq!(a.norm().norm(&x).unwrap(), int(21));
    }

    #[test]
    fn ideal_needs_identity() {
        assert_eq!(ideal_ae(&g(GalleryName::TwistedLinf2), &IdealOptions::default()).unwrap_err(), Error::NoIdentity);
    }

    #[test]
    fn star_on_c0r() {
        let a = g(GalleryName::C0R { n: 2 });
        let star = star_product(&a, 2, 2).unwrap();
        assert!(star.checks.all_pass());
        assert!(star.functionals_multiplicative);
        let x = Element::from_ints(&[2, -1, 3]);
        let y = Element::from_ints(&[5, 4, -2]);
        // (x * y)_i = x_3 y_i + x_i y_3 for i <= 2, (x * y)_3 = x_3 y_3
        let expected = Element::from_ints(&[3 * 5 + 2 * -2, 3 * 4 + -1 * -2, -6]);
        assert_eq!(crate::algebra::multiply(&x, &y, &star.tensor).unwrap(), expected);
        let d11 = star.differences.iter().find(|d| (d.i, d.j) == (0, 0)).unwrap();
        assert_eq!(d11.original, Element::atom(3, 0));
        assert!(d11.replaced.is_zero());
    }

    #[test]
    fn star_collapses_when_ideal_is_everything() {
        for n in 1..4 {
            let a = g(GalleryName::Pointwise { n, weights: vec![int(1); n] });
            for alpha in 0..n {
                for beta in 0..n {
                    let star = star_product(&a, alpha, beta).unwrap();
                    assert_eq!(&star.tensor, a.tensor());
                    assert!(star.differences.is_empty());
                }
            }
        }
    }

    #[test]
    fn star_errors() {
        assert_eq!(star_product(&g(GalleryName::C0R { n: 2 }), 0, 2).unwrap_err(), Error::IndexOutsideSupport { index: 0 });
        assert_eq!(star_product(&g(GalleryName::TwistedLinf2), 0, 0).unwrap_err(), Error::NoIdentity);
    }

    #[test]
    fn ast_reproduces_c0r() {
        let a = g(GalleryName::ZeroProduct { n: 1 });
        let ast = ast_product(&a, &Functional::atom(2, 0), &Element::atom(2, 0)).unwrap();
        assert!(ast.checks.all_pass());
        assert_eq!(&ast.tensor, g(GalleryName::C0R { n: 1 }).tensor());
        assert!(ast.witness.original_square.is_zero());
        assert_eq!(ast.witness.new_square, Element::atom(2, 0));
    }

    #[test]
    fn ast_on_zero_product_two() {
        let a = g(GalleryName::ZeroProduct { n: 2 });
        let ast = ast_product(&a, &Functional::from_ints(&[1, 1, 0]), &Element::atom(3, 0)).unwrap();
        assert!(ast.checks.all_pass());
        let e1 = Element::atom(3, 0);
        assert_eq!(crate::algebra::multiply(&e1, &e1, &ast.tensor).unwrap(), e1);
        assert!(a.multiply(&e1, &e1).unwrap().is_zero());
    }

    #[test]
    fn ast_preconditions() {
        let phi = Functional::atom(3, 0);
        let x0 = Element::atom(3, 0);
        let c0r = g(GalleryName::C0R { n: 2 });
        assert!(matches!(ast_product(&c0r, &phi, &x0), Err(Error::PreconditionViolated(m)) if m.contains("vanish")));
        let zp = g(GalleryName::ZeroProduct { n: 2 });
        assert!(ast_product(&zp, &Functional::from_ints(&[0, 0, 0]), &x0).is_err());
        assert!(ast_product(&zp, &Functional::from_ints(&[0, 0, 1]), &x0).is_err());
        assert!(ast_product(&zp, &phi, &Element::from_ints(&[-1, 0, 0])).is_err());
        assert!(ast_product(&zp, &phi, &Element::from_ints(&[0, 0, 1])).is_err());
        let pw = g(GalleryName::Pointwise { n: 2, weights: vec![int(1); 2] });
        assert!(matches!(
            ast_product(&pw, &Functional::atom(2, 0), &Element::atom(2, 0)),
            Err(Error::PreconditionViolated(m)) if m.contains("one-dimensional")
        ));
    }

    #[test]
    fn spectral_estimate_matches_norm() {
        let a = g(GalleryName::Pointwise { n: 2, weights: vec![int(2), int(3)] });
        let x = Element::new(vec![ratio(3, 4), ratio(1, 5)]);
        // ||x|| = max(3/2, 3/5)
        assert!((spectral_estimate(&a, &x, 12) - 1.5).abs() < 1e-12);
    }
}
