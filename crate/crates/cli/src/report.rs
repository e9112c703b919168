//! JSON renderings of core results. Indices are 1-based, rationals are
//! canonical strings.

use latalg::algebra::{AlmostFWitness, FWitness, Side};
use latalg::constructions::{IdealReport, ProductChecks, TensorDifference};
use latalg::format::SpecFile;
use latalg::representation::{AmClassification, AmFailure, ConstraintRole, QuotientResult};
use latalg::{scalar, AlgebraSpec, AxiomReport, Element, Scalar, Verdict};
use serde_json::{json, Value};

pub fn rational(s: &Scalar) -> Value {
    Value::String(scalar::format(s))
}

pub fn element(x: &Element) -> Value {
    Value::Array(x.coords().iter().map(rational).collect())
}

pub fn indices<'a>(it: impl IntoIterator<Item = &'a usize>) -> Value {
    json!(it.into_iter().map(|i| i + 1).collect::<Vec<_>>())
}

pub fn spec(a: &AlgebraSpec) -> Value {
    serde_json::to_value(SpecFile::from_spec(a)).expect("spec files serialize")
}

fn verdict<W>(tag: &str, v: &Verdict<W>, witness: impl Fn(&W) -> Value) -> Value {
    match v {
        Verdict::Holds => json!({ "holds": true, "tag": tag }),
        Verdict::Fails(w) => json!({ "holds": false, "tag": tag, "witness": witness(w) }),
    }
}

fn f_witness(w: &FWitness) -> Value {
    let (i, j, k) = w.entry;
    json!({
        "entry": [i + 1, j + 1, k + 1],
        "f": w.f + 1,
        "g": w.g + 1,
        "h": w.h + 1,
        "side": match w.side { Side::Left => "left", Side::Right => "right" },
        "meet": element(&w.meet),
    })
}

fn almost_f_witness(w: &AlmostFWitness) -> Value {
    json!({ "pair": [w.i + 1, w.j + 1], "product": element(&w.product) })
}

pub fn axioms(r: &AxiomReport) -> Value {
    const AXIOM: &str = "lattice_algebra_axiom";
    let mut out = json!({
        "positive_product": verdict(AXIOM, &r.positive_product, |&(i, j, k)| json!([i + 1, j + 1, k + 1])),
        "associative": verdict(AXIOM, &r.associative, |w| json!({
            "triple": [w.triple.0 + 1, w.triple.1 + 1, w.triple.2 + 1],
            "left": element(&w.left),
            "right": element(&w.right),
        })),
        "submultiplicative": verdict(AXIOM, &r.submultiplicative, |w| json!({
            "x": element(&w.x),
            "y": element(&w.y),
            "product_norm": rational(&w.product_norm),
            "bound": rational(&w.bound),
        })),
        "identity": {
            "tag": "identity_search",
            "element": r.identity.as_ref().map(element),
            "norm_one": r.identity_norm_one,
        },
    });
    if let Some(f) = &r.f_classification {
        out["f_algebra"] = verdict("f_algebra_diagonal_criterion", &f.f_algebra, f_witness);
        out["almost_f_algebra"] = verdict("almost_f_algebra_criterion", &f.almost_f_algebra, almost_f_witness);
    }
    out
}

pub fn am_classification(c: &AmClassification) -> Value {
    let tag = "am_algebra_representation";
    match c {
        AmClassification::Isometric { zero_set_size, scaling } => json!({
            "tag": tag,
            "isometric": true,
            "zero_set_size": zero_set_size,
            "scaling": scaling.iter().map(rational).collect::<Vec<_>>(),
        }),
        AmClassification::Rejected(why) => {
            let reason = match why {
                AmFailure::AxiomsFailed(names) => json!({ "axioms_failed": names }),
                AmFailure::NotWeightedSup => json!("norm is not a weighted sup norm"),
                AmFailure::NotFAlgebra => json!("not an f-algebra"),
                AmFailure::DiagonalMismatch { k, diagonal, weight } => json!({
                    "diagonal_mismatch": { "index": k + 1, "diagonal": rational(diagonal), "weight": rational(weight) }
                }),
            };
            json!({ "tag": tag, "isometric": false, "reason": reason })
        }
    }
}

pub fn ideal(r: &IdealReport) -> Value {
    json!({
        "tag": "order_unit_ideal_norm",
        "identity": element(&r.identity),
        "support": indices(r.band.support()),
        "samples": r.norm_samples,
        "norms_coincide": verdict("order_unit_ideal_norm", &r.norm_coincidence, element),
        "spectral": r.spectral.as_ref().map(|s| json!({
            "depth": s.depth,
            "samples": s.samples,
            "max_deviation": s.max_deviation,
            "passed": s.passed,
        })),
    })
}

pub fn quotient(q: &QuotientResult) -> Value {
    json!({
        "tag": "constraint_quotient",
        "classes": q.classes.iter().map(indices).collect::<Vec<_>>(),
        "zero_points": indices(q.zero_set.iter().flat_map(|&c| &q.classes[c])),
        "roles": q.roles.iter().map(|r| match r {
            ConstraintRole::ForcedZero => "forced_zero",
            ConstraintRole::Vanishes => "vanishes",
            ConstraintRole::Glue => "glue",
        }).collect::<Vec<_>>(),
        "dimension": q.certificate(),
        "basis": q.basis.iter().map(element).collect::<Vec<_>>(),
        "embedded_basis": q.embedded_basis.iter().map(element).collect::<Vec<_>>(),
    })
}

pub fn checks(c: &ProductChecks) -> Value {
    json!({
        "positive": c.positive,
        "associative": c.associative,
        "identity_preserved": c.identity_preserved,
        "expansion_verified": c.expansion_verified,
    })
}

pub fn differences(ds: &[TensorDifference]) -> Value {
    Value::Array(
        ds.iter()
            .map(|d| json!({ "pair": [d.i + 1, d.j + 1], "original": element(&d.original), "replaced": element(&d.replaced) }))
            .collect(),
    )
}
