//! Canonical JSON reports for the command-line front end.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::group::{
    common_fixed_ray, equal_up_to_powers, fixed_subspace, invariant_fibration_class,
    null_entropy_decide, null_subset_enumerate, phi_map, EqualPowers, FibrationClass, GroupSpec,
    NullVerdict, PhiImage,
};
use crate::interval::{rat_string, RatInterval};
use crate::io::{canonicalize, int_json, matrix_json, vector_json, Document, Loaded};
use crate::isometry::{Isometry, IsometryClass};
use crate::lattice::RayVector;
use crate::linalg::{primitive_integer_vector, IntMatrix};
use crate::poly::{AlgebraicNumber, SpectralKind};

/// A report plus whether its verdict was left undecided within the bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportDocument {
    pub value: Value,
    pub undecided: bool,
}

impl ReportDocument {
    fn decided(value: Value) -> Self {
        Self {
            value,
            undecided: false,
        }
    }

    /// Single-line JSON with sorted keys and a trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string(&canonicalize(&self.value))
            .expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupCommand {
    NullEntropy,
    InvariantRay,
    FibrationClass,
    NullSubset,
    Phi,
}

impl GroupCommand {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupCommand::NullEntropy => "null-entropy",
            GroupCommand::InvariantRay => "invariant-ray",
            GroupCommand::FibrationClass => "fibration-class",
            GroupCommand::NullSubset => "null-subset",
            GroupCommand::Phi => "phi",
        }
    }
}

pub fn interval_json(iv: &RatInterval) -> Value {
    json!({ "lo": rat_string(&iv.lo), "hi": rat_string(&iv.hi) })
}

/// Minimal polynomial (ascending coefficients) and an isolating interval of width at most `width`.
pub fn algebraic_json(a: &AlgebraicNumber, width: &BigRational) -> Value {
    let r = a.refine(width);
    json!({
        "min_poly": Value::Array(r.min_poly().coeffs().iter().map(int_json).collect()),
        "interval": interval_json(&r.interval()),
    })
}

fn int_matrix_json(m: &IntMatrix) -> Value {
    matrix_json(&m.to_rows())
}

pub fn ray_json(ray: &RayVector, width: &BigRational) -> Value {
    match ray {
        RayVector::Rational(v) => vector_json(&primitive_integer_vector(v)),
        RayVector::Algebraic { field, coords } => {
            let mut field = field.clone();
            let enclosures: Vec<Value> = coords
                .iter()
                .map(|c| interval_json(&field.enclose_within(c, width)))
                .collect();
            json!({
                "generator": algebraic_json(field.root(), width),
                "modulus": field.modulus().coeffs().iter().map(rat_string).collect::<Vec<_>>(),
                "coords": coords
                    .iter()
                    .map(|c| field_coords_json(c.coeffs()))
                    .collect::<Vec<_>>(),
                "enclosures": enclosures,
            })
        }
    }
}

fn field_coords_json(coeffs: &[BigRational]) -> Vec<String> {
    if coeffs.is_empty() {
        vec![rat_string(&BigRational::from_integer(0.into()))]
    } else {
        coeffs.iter().map(rat_string).collect()
    }
}

fn base(command: &str, input: Value) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), Value::from(command));
    m.insert("input".into(), input);
    m
}

pub fn classify_report(
    g: &Isometry,
    input: Value,
    perron: bool,
    width: &BigRational,
) -> Result<ReportDocument> {
    let mut m = base("classify", input);
    let class = g.classify()?;
    m.insert("class".into(), Value::from(class.name()));
    m.insert("rank".into(), Value::from(g.rank()));
    m.insert(
        "char_poly".into(),
        Value::Array(g.char_poly().coeffs().iter().map(int_json).collect()),
    );
    match &class {
        IsometryClass::Elliptic { order } => {
            m.insert("order".into(), Value::from(*order));
        }
        IsometryClass::Parabolic => {
            m.insert("unipotent".into(), Value::from(g.is_unipotent()));
        }
        IsometryClass::Loxodromic { rho } => {
            let r = rho.refine(width);
            m.insert(
                "rho_min_poly".into(),
                Value::Array(r.min_poly().coeffs().iter().map(int_json).collect()),
            );
            m.insert("rho".into(), interval_json(&r.interval()));
            let kind = match g.salem_kind()? {
                SpectralKind::QuadraticInteger(_) => "quadratic_integer",
                SpectralKind::Salem(_) => "salem",
                SpectralKind::RhoOne => {
                    return Err(Error::Malformed("loxodromic with ρ = 1".into()))
                }
            };
            m.insert("salem_kind".into(), Value::from(kind));
        }
    }
    m.insert("entropy".into(), interval_json(&g.entropy(width)?));
    if perron {
        let value = match g.perron_ray() {
            Ok(pd) => json!({
                "ray": ray_json(&pd.ray(), width),
                "position": pd.position.as_str(),
            }),
            Err(Error::Domain(msg)) => json!({ "unavailable": msg }),
            Err(e) => return Err(e),
        };
        m.insert("perron".into(), value);
    }
    Ok(ReportDocument::decided(Value::Object(m)))
}

#[derive(Clone, Copy, Debug)]
pub struct GroupBounds {
    pub word_bound: usize,
    pub exponent_bound: u32,
}

pub fn group_report(
    g: &GroupSpec,
    command: GroupCommand,
    bounds: GroupBounds,
    input: Value,
    width: &BigRational,
) -> Result<ReportDocument> {
    let mut m = base("group", input);
    m.insert("subcommand".into(), Value::from(command.as_str()));
    m.insert("generators".into(), Value::from(g.generators().len()));
    let mut undecided = false;
    match command {
        GroupCommand::NullEntropy => {
            m.insert("word_bound".into(), Value::from(bounds.word_bound));
            let v = null_entropy_decide(g, bounds.word_bound)?;
            m.insert("verdict".into(), Value::from(v.name()));
            match v {
                NullVerdict::YesFixedRay(r) => {
                    m.insert("ray".into(), ray_json(&r.ray, width));
                    m.insert("position".into(), Value::from(r.position.as_str()));
                }
                NullVerdict::YesFinite(n) => {
                    m.insert("orbit_size".into(), Value::from(n));
                }
                NullVerdict::No(w) => {
                    m.insert("witness_word".into(), json!(w));
                }
                NullVerdict::Inconclusive(n) => {
                    undecided = true;
                    m.insert("word_bound_reached".into(), Value::from(n));
                }
            }
        }
        GroupCommand::InvariantRay => {
            let fs = fixed_subspace(g)?;
            m.insert("fixed_dimension".into(), Value::from(fs.dimension()));
            m.insert(
                "radical_dimension".into(),
                Value::from(fs.radical_dimension()),
            );
            match common_fixed_ray(g)? {
                Some(r) => {
                    m.insert("ray".into(), ray_json(&r.ray, width));
                    m.insert("position".into(), Value::from(r.position.as_str()));
                    m.insert(
                        "lambdas".into(),
                        Value::Array(r.lambdas.iter().map(|l| algebraic_json(l, width)).collect()),
                    );
                }
                None => {
                    m.insert("ray".into(), Value::Null);
                }
            }
        }
        GroupCommand::FibrationClass => match invariant_fibration_class(g)? {
            FibrationClass::Class(v) => {
                m.insert("class_vector".into(), vector_json(&v));
            }
            FibrationClass::FiniteOnLattice(v) => {
                m.insert("class_vector".into(), Value::Null);
                m.insert("interior_fixed_vector".into(), vector_json(&v));
                m.insert(
                    "note".into(),
                    Value::from(
                        "only an interior vector is fixed: the action on the lattice is finite",
                    ),
                );
            }
            FibrationClass::None => {
                m.insert("class_vector".into(), Value::Null);
            }
        },
        GroupCommand::NullSubset => {
            m.insert("word_bound".into(), Value::from(bounds.word_bound));
            let elems = null_subset_enumerate(g, bounds.word_bound)?;
            m.insert("count".into(), Value::from(elems.len()));
            let list = elems
                .iter()
                .map(|(iso, w)| {
                    Ok(json!({
                        "word": w,
                        "matrix": int_matrix_json(iso.matrix()),
                        "class": iso.classify()?.name(),
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            m.insert("elements".into(), Value::Array(list));
        }
        GroupCommand::Phi => {
            let ray = phi_ray(g)?;
            m.insert("ray".into(), ray_json(&ray, width));
            m.insert("exponent_bound".into(), Value::from(bounds.exponent_bound));
            let rep = phi_map(g, &ray, bounds.exponent_bound)?;
            m.insert(
                "lambdas".into(),
                Value::Array(
                    rep.lambdas
                        .iter()
                        .map(|l| algebraic_json(l, width))
                        .collect(),
                ),
            );
            m.insert(
                "is_discrete_cyclic".into(),
                Value::from(rep.is_discrete_cyclic()),
            );
            match rep.image {
                PhiImage::One => {
                    m.insert("image".into(), Value::from("one"));
                }
                PhiImage::Cyclic { lambda0, exponents } => {
                    m.insert("image".into(), Value::from("cyclic"));
                    m.insert("lambda0".into(), algebraic_json(&lambda0, width));
                    m.insert("exponents".into(), json!(exponents));
                }
                PhiImage::Undecided { .. } => {
                    undecided = true;
                    m.insert("image".into(), Value::from("undecided"));
                }
            }
        }
    }
    Ok(ReportDocument {
        value: Value::Object(m),
        undecided,
    })
}

/// The common fixed ray when there is one, else the Perron ray of the first loxodromic generator.
pub fn phi_ray(g: &GroupSpec) -> Result<RayVector> {
    if let Some(r) = common_fixed_ray(g)? {
        return Ok(r.ray);
    }
    for gen in g.generators() {
        if gen.classify()?.is_loxodromic() {
            return Ok(gen.perron_ray()?.ray());
        }
    }
    Err(Error::Domain(
        "no common fixed ray and no loxodromic generator to take a Perron ray from".into(),
    ))
}

pub fn equal_powers_report(
    g1: &Isometry,
    g2: &Isometry,
    exponent_bound: u32,
    pigeonhole_bound: usize,
    input: Value,
) -> Result<ReportDocument> {
    let mut m = base("equal-powers", input);
    let mut undecided = false;
    match equal_up_to_powers(g1, g2, exponent_bound, pigeonhole_bound)? {
        EqualPowers::Found { t1, t2 } => {
            m.insert("found".into(), Value::from(true));
            m.insert("t1".into(), Value::from(t1));
            m.insert("t2".into(), Value::from(t2));
            m.insert(
                "power_matrix".into(),
                int_matrix_json(g1.power(t1)?.matrix()),
            );
        }
        EqualPowers::NotFoundWithin {
            exponent_bound,
            pigeonhole_bound,
        } => {
            undecided = true;
            m.insert("found".into(), Value::from(false));
            m.insert("reason".into(), Value::from("not found within bounds"));
            m.insert("exponent_bound".into(), Value::from(exponent_bound));
            m.insert("pigeonhole_bound".into(), Value::from(pigeonhole_bound));
        }
        EqualPowers::NotCompatible(reason) => {
            m.insert("found".into(), Value::from(false));
            m.insert("reason".into(), Value::from(reason));
        }
    }
    Ok(ReportDocument {
        value: Value::Object(m),
        undecided,
    })
}

pub fn validate_report(doc: &Document, loaded: &Loaded, input: Value) -> Result<ReportDocument> {
    let mut m = base("validate", input);
    m.insert("kind".into(), Value::from(doc.kind()));
    m.insert("valid".into(), Value::from(true));
    let lat = match loaded {
        Loaded::Lattice(l) => l.clone(),
        Loaded::Isometry(g) => (**g.lattice()).clone(),
        Loaded::Group(g) => {
            m.insert("generators".into(), Value::from(g.generators().len()));
            (**g.lattice()).clone()
        }
    };
    m.insert("rank".into(), Value::from(lat.rank()));
    let (plus, minus, _) = crate::linalg::signature(lat.gram())?;
    m.insert("signature".into(), json!([plus, minus]));
    Ok(ReportDocument::decided(Value::Object(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::io::load_text;
    use num_bigint::BigInt;

    fn width() -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(10).pow(12))
    }

    fn iso(name: &str) -> Isometry {
        match load_text(fixtures::isometry_source(name).unwrap(), None)
            .unwrap()
            .1
        {
            Loaded::Isometry(g) => g,
            _ => unreachable!(),
        }
    }

    fn grp(name: &str) -> GroupSpec {
        match load_text(fixtures::group_source(name).unwrap(), None)
            .unwrap()
            .1
        {
            Loaded::Group(g) => g,
            _ => unreachable!(),
        }
    }

    #[test]
    fn classify_reports() {
        let r = classify_report(&iso("pell"), Value::Null, false, &width()).unwrap();
        assert_eq!(r.value["class"], "loxodromic");
        assert_eq!(r.value["rho_min_poly"], json!([1, -6, 1]));
        assert_eq!(r.value["salem_kind"], "quadratic_integer");
        let r = classify_report(&iso("swap"), Value::Null, false, &width()).unwrap();
        assert_eq!(r.value["class"], "elliptic");
        assert_eq!(r.value["order"], 2);
        let r = classify_report(&iso("para"), Value::Null, true, &width()).unwrap();
        assert_eq!(r.value["class"], "parabolic");
        assert!(r.value["perron"]["unavailable"].is_string());
    }

    #[test]
    fn group_reports() {
        let b = GroupBounds {
            word_bound: 8,
            exponent_bound: 64,
        };
        let r = group_report(
            &grp("para"),
            GroupCommand::FibrationClass,
            b,
            Value::Null,
            &width(),
        )
        .unwrap();
        assert_eq!(r.value["class_vector"], json!([1, 0, 0]));
        let r = group_report(
            &grp("pell"),
            GroupCommand::NullEntropy,
            b,
            Value::Null,
            &width(),
        )
        .unwrap();
        assert_eq!(r.value["verdict"], "no");
        assert_eq!(r.value["witness_word"], json!([0]));
        let r = group_report(
            &grp("pell_powers"),
            GroupCommand::Phi,
            b,
            Value::Null,
            &width(),
        )
        .unwrap();
        assert_eq!(r.value["exponents"], json!([1, 2, -1]));
        assert_eq!(r.value["lambda0"]["min_poly"], json!([1, -6, 1]));
        let b2 = GroupBounds {
            word_bound: 2,
            exponent_bound: 64,
        };
        let r = group_report(
            &grp("para"),
            GroupCommand::NullSubset,
            b2,
            Value::Null,
            &width(),
        )
        .unwrap();
        assert_eq!(r.value["count"], 5);
    }

    #[test]
    fn equal_powers_reports() {
        let r =
            equal_powers_report(&iso("pell"), &iso("pell_squared"), 64, 4096, Value::Null).unwrap();
        assert_eq!(r.value["found"], true);
        assert_eq!(
            (r.value["t1"].as_i64(), r.value["t2"].as_i64()),
            (Some(2), Some(1))
        );
        let r =
            equal_powers_report(&iso("pell3"), &iso("pell3_conj"), 64, 4096, Value::Null).unwrap();
        assert_eq!(r.value["found"], false);
        assert_eq!(r.value["reason"], "no common polarizing ray");
        assert!(!r.undecided);
    }
}
