//! Structured problem-file input: a single self-describing document with a
//! `kind` discriminator and a kind-specific `payload`. All rationals are
//! encoded as integers or `"p/q"` strings — never floats — so exactness
//! survives serialization.

use crate::algebra::{Bimodule, FiniteDimAlgebra};
use crate::cochain::GroupAction;
use crate::deform::{moyal_term, FormalDeformation};
use crate::lie::{make_lie_pair, Isotropy, LiePair};
use crate::linear_action::LinearAction;
use crate::matrix::Mat;
use crate::multidiff::MultiDiffCochain;
use crate::poly::Poly;
use crate::scalar::{parse_rat, Rat};
use crate::symbol_solve::Bounds;
use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use std::fmt;

/// Input-layer failure: the offending field and what was wrong with it.
#[derive(Debug, Clone, thiserror::Error)]
#[error("field `{field}`: {message}")]
pub struct SchemaError {
    pub field: String,
    pub message: String,
}

fn schema(field: &str, message: impl fmt::Display) -> SchemaError {
    SchemaError {
        field: field.to_string(),
        message: message.to_string(),
    }
}

/// An exact rational deserialized from an integer or a `"p/q"` string.
/// Malformed encodings (including zero denominators) fail during parsing,
/// so the reported position points at the offending token.
#[derive(Debug, Clone)]
pub struct JsonRat(pub Rat);

impl<'de> Deserialize<'de> for JsonRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RatVisitor;
        impl<'de> Visitor<'de> for RatVisitor {
            type Value = JsonRat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an integer or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonRat, E> {
                Ok(JsonRat(Rat::from_integer(BigInt::from(v))))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonRat, E> {
                Ok(JsonRat(Rat::from_integer(BigInt::from(v))))
            }
            fn visit_f64<E: de::Error>(self, _: f64) -> Result<JsonRat, E> {
                Err(E::custom(
                    "floating-point numbers are not accepted; use an integer or a \"p/q\" string",
                ))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonRat, E> {
                parse_rat(v).map(JsonRat).map_err(E::custom)
            }
        }
        d.deserialize_any(RatVisitor)
    }
}

pub type JsonMatrix = Vec<Vec<JsonRat>>;

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "lowercase")]
pub enum Problem {
    Algebra(AlgebraProblem),
    Invariant(InvariantProblem),
    Hkr(HkrProblem),
    Deform(DeformProblem),
    Homogeneous(HomogeneousProblem),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraProblem {
    pub dim: usize,
    /// Structure constants `structure[i][j][k]` with
    /// `e_i · e_j = Σ_k structure[i][j][k] e_k`.
    pub structure: Vec<Vec<Vec<JsonRat>>>,
    pub unit: Vec<JsonRat>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorPair {
    /// Automorphism matrix on the algebra.
    pub algebra: JsonMatrix,
    /// Matrix on the module; defaults to the algebra matrix (regular
    /// bimodule).
    #[serde(default)]
    pub module: Option<JsonMatrix>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantProblem {
    pub dim: usize,
    pub structure: Vec<Vec<Vec<JsonRat>>>,
    pub unit: Vec<JsonRat>,
    pub generators: Vec<GeneratorPair>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTermJson {
    pub exponents: Vec<u32>,
    pub value: JsonRat,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainJson {
    pub degree: usize,
    pub terms: Vec<CochainTermJson>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainTermJson {
    /// One derivative multi-index per argument slot.
    pub slots: Vec<Vec<u32>>,
    pub coeff: Vec<PolyTermJson>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsJson {
    pub max_slot_order: u32,
    pub max_coeff_degree: u32,
}

impl From<BoundsJson> for Bounds {
    fn from(b: BoundsJson) -> Bounds {
        Bounds::new(b.max_slot_order, b.max_coeff_degree)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HkrProblem {
    pub n_vars: usize,
    pub cochain: CochainJson,
    #[serde(default)]
    pub bounds: Option<BoundsJson>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformProblem {
    pub n_vars: usize,
    /// Start from the standard first-order term of this antisymmetric
    /// matrix…
    #[serde(default)]
    pub pi: Option<JsonMatrix>,
    /// …or from explicitly listed terms (at most one of the two).
    #[serde(default)]
    pub terms: Option<Vec<CochainJson>>,
    /// Generators of a finite linear group every term must be fixed by.
    #[serde(default)]
    pub invariance: Option<Vec<JsonMatrix>>,
    #[serde(default)]
    pub bounds: Option<BoundsJson>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum IsotropyJson {
    Name(String),
    Finite { elements: Vec<JsonMatrix> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomogeneousProblem {
    pub dim: usize,
    pub brackets: Vec<Vec<Vec<JsonRat>>>,
    pub h_basis: Vec<Vec<JsonRat>>,
    pub isotropy: IsotropyJson,
}

fn rat_vec(v: &[JsonRat]) -> Vec<Rat> {
    v.iter().map(|r| r.0.clone()).collect()
}

fn rat_cube(field: &str, c: &[Vec<Vec<JsonRat>>]) -> Result<Vec<Vec<Vec<Rat>>>, SchemaError> {
    let d = c.len();
    for (i, plane) in c.iter().enumerate() {
        if plane.len() != d {
            return Err(schema(field, format!("row {i} has {} entries, expected {d}", plane.len())));
        }
        for (j, row) in plane.iter().enumerate() {
            if row.len() != d {
                return Err(schema(
                    field,
                    format!("entry ({i},{j}) has {} entries, expected {d}", row.len()),
                ));
            }
        }
    }
    Ok(c.iter()
        .map(|plane| plane.iter().map(|row| rat_vec(row)).collect())
        .collect())
}

pub fn matrix(field: &str, m: &JsonMatrix, expected: usize) -> Result<Mat, SchemaError> {
    if m.len() != expected {
        return Err(schema(field, format!("expected {expected} rows, got {}", m.len())));
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != expected {
            return Err(schema(
                field,
                format!("row {i} has {} entries, expected {expected}", row.len()),
            ));
        }
    }
    Ok(Mat::from_rows(m.iter().map(|row| rat_vec(row)).collect()))
}

impl AlgebraProblem {
    pub fn build(&self) -> Result<FiniteDimAlgebra, SchemaError> {
        if self.structure.len() != self.dim {
            return Err(schema("structure", format!("expected {} planes", self.dim)));
        }
        if self.unit.len() != self.dim {
            return Err(schema("unit", format!("expected {} entries", self.dim)));
        }
        let cube = rat_cube("structure", &self.structure)?;
        FiniteDimAlgebra::new(cube, rat_vec(&self.unit))
            .map_err(|e| schema("structure", e))
    }
}

impl InvariantProblem {
    pub fn build(&self) -> Result<(FiniteDimAlgebra, Bimodule, GroupAction), SchemaError> {
        let algebra = AlgebraProblem {
            dim: self.dim,
            structure: self.structure.clone(),
            unit: self.unit.clone(),
        }
        .build()?;
        let module = Bimodule::regular(&algebra);
        let mut pairs = Vec::with_capacity(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            let a = matrix(&format!("generators[{i}].algebra"), &g.algebra, self.dim)?;
            let n = match &g.module {
                Some(m) => matrix(&format!("generators[{i}].module"), m, self.dim)?,
                None => a.clone(),
            };
            pairs.push((a, n));
        }
        let action = GroupAction::from_generators(&algebra, &module, pairs, 64)
            .map_err(|e| schema("generators", e))?;
        Ok((algebra, module, action))
    }
}

pub fn poly_from_json(field: &str, n_vars: usize, terms: &[PolyTermJson]) -> Result<Poly, SchemaError> {
    let mut p = Poly::zero(n_vars);
    for (i, t) in terms.iter().enumerate() {
        if t.exponents.len() != n_vars {
            return Err(schema(
                &format!("{field}[{i}].exponents"),
                format!("expected {n_vars} entries, got {}", t.exponents.len()),
            ));
        }
        p = p.add(&Poly::monomial(t.exponents.clone(), t.value.0.clone()));
    }
    Ok(p)
}

pub fn cochain_from_json(
    field: &str,
    n_vars: usize,
    c: &CochainJson,
) -> Result<MultiDiffCochain, SchemaError> {
    let mut out = MultiDiffCochain::zero(c.degree, n_vars);
    for (i, term) in c.terms.iter().enumerate() {
        if term.slots.len() != c.degree {
            return Err(schema(
                &format!("{field}.terms[{i}].slots"),
                format!("expected {} slots, got {}", c.degree, term.slots.len()),
            ));
        }
        for (s, slot) in term.slots.iter().enumerate() {
            if slot.len() != n_vars {
                return Err(schema(
                    &format!("{field}.terms[{i}].slots[{s}]"),
                    format!("expected {n_vars} entries, got {}", slot.len()),
                ));
            }
        }
        let coeff = poly_from_json(&format!("{field}.terms[{i}].coeff"), n_vars, &term.coeff)?;
        out.add_term(term.slots.clone(), coeff);
    }
    Ok(out)
}

impl HkrProblem {
    pub fn build(&self) -> Result<(MultiDiffCochain, Bounds), SchemaError> {
        let phi = cochain_from_json("cochain", self.n_vars, &self.cochain)?;
        let bounds = self
            .bounds
            .map(Bounds::from)
            .unwrap_or_else(|| Bounds::new(3, 3));
        Ok((phi, bounds))
    }
}

impl DeformProblem {
    pub fn build(&self) -> Result<(FormalDeformation, Bounds), SchemaError> {
        let invariance = match &self.invariance {
            None => None,
            Some(gens) => {
                let mats: Vec<Mat> = gens
                    .iter()
                    .enumerate()
                    .map(|(i, g)| matrix(&format!("invariance[{i}]"), g, self.n_vars))
                    .collect::<Result<_, _>>()?;
                Some(
                    LinearAction::from_generators(self.n_vars, &mats)
                        .map_err(|e| schema("invariance", e))?,
                )
            }
        };
        let terms = match (&self.pi, &self.terms) {
            (Some(_), Some(_)) => {
                return Err(schema("pi", "give either `pi` or `terms`, not both"));
            }
            (Some(pi), None) => {
                let mat = matrix("pi", pi, self.n_vars)?;
                vec![moyal_term(1, &mat).map_err(|e| schema("pi", e))?]
            }
            (None, Some(list)) => list
                .iter()
                .enumerate()
                .map(|(i, c)| cochain_from_json(&format!("terms[{i}]"), self.n_vars, c))
                .collect::<Result<_, _>>()?,
            (None, None) => Vec::new(),
        };
        let deformation = FormalDeformation::new(self.n_vars, terms, invariance)
            .map_err(|e| schema("terms", e))?;
        let bounds = self
            .bounds
            .map(Bounds::from)
            .unwrap_or_else(|| Bounds::new(3, 3));
        Ok((deformation, bounds))
    }
}

impl HomogeneousProblem {
    pub fn build(&self) -> Result<LiePair, SchemaError> {
        if self.brackets.len() != self.dim {
            return Err(schema("brackets", format!("expected {} planes", self.dim)));
        }
        let cube = rat_cube("brackets", &self.brackets)?;
        let flat: Vec<Rat> = cube
            .into_iter()
            .flat_map(|plane| plane.into_iter().flatten())
            .collect();
        let h_basis: Vec<Vec<Rat>> = self.h_basis.iter().map(|v| rat_vec(v)).collect();
        let isotropy = match &self.isotropy {
            IsotropyJson::Name(name) if name == "connected" => Isotropy::Connected,
            IsotropyJson::Name(name) => {
                return Err(schema(
                    "isotropy",
                    format!("unknown isotropy `{name}`; use \"connected\" or {{\"elements\": […]}}"),
                ));
            }
            IsotropyJson::Finite { elements } => {
                let mats: Vec<Mat> = elements
                    .iter()
                    .enumerate()
                    .map(|(i, m)| matrix(&format!("isotropy.elements[{i}]"), m, self.dim))
                    .collect::<Result<_, _>>()?;
                Isotropy::FiniteGroup { elements: mats }
            }
        };
        make_lie_pair(self.dim, flat, h_basis, isotropy).map_err(|e| schema("brackets", e))
    }
}
