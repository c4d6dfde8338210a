//! Scenario files: a torus, an endomorphism and optional factor, action and
//! subvariety data, stored as JSON with big integers and rationals as strings.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::{IntegerMatrix, RationalMatrix};
use crate::lattice_av::{
    standard_complex_structure, standard_riemann_form, ComplexTorus, LatticeEndomorphism, SimpleFactorSpec, Sublattice,
    TorsionPoint,
};
use crate::quotient_dyn::{bielliptic_action, AffineAutomorphism, GroupAction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubvarietySpec {
    pub basis: IntegerMatrix,
    pub translate: TorsionPoint,
    pub period: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub torus: ComplexTorus,
    pub endomorphism: LatticeEndomorphism,
    /// Whether the endomorphism is declared holomorphic (checked against `J`).
    pub analytic: bool,
    pub factors: Vec<SimpleFactorSpec>,
    pub action: Option<GroupAction>,
    pub subvariety: Option<SubvarietySpec>,
}

impl Scenario {
    /// Cross-checks every dimension against `2g` and re-validates the data.
    pub fn validate(&self) -> Result<()> {
        let rank = self.torus.rank();
        if self.endomorphism.rank() != rank {
            return Err(Error::Parse(format!(
                "endomorphism.matrix: expected {rank}x{rank}, got rank {}",
                self.endomorphism.rank()
            )));
        }
        if self.analytic && !self.endomorphism.is_analytic_on(&self.torus)? {
            return Err(Error::Parse("endomorphism: declared analytic but M J != J M".into()));
        }
        if !self.factors.is_empty() {
            let total: u64 = self.factors.iter().map(|f| u64::from(f.dimension()) * u64::from(f.multiplicity())).sum();
            if total != self.torus.half_dimension() as u64 {
                return Err(Error::Parse(format!(
                    "factors: dimensions times multiplicities sum to {total}, torus has g = {}",
                    self.torus.half_dimension()
                )));
            }
        }
        if let Some(action) = &self.action {
            if action.rank() != rank {
                return Err(Error::Parse(format!("action: elements act on rank {}, expected {rank}", action.rank())));
            }
        }
        if let Some(sub) = &self.subvariety {
            if sub.basis.rows() != rank {
                return Err(Error::Parse(format!("subvariety.basis: expected {rank} rows, got {}", sub.basis.rows())));
            }
            if sub.translate.rank() != rank {
                return Err(Error::Parse(format!(
                    "subvariety.translate: expected length {rank}, got {}",
                    sub.translate.rank()
                )));
            }
            if sub.period == 0 {
                return Err(Error::Parse("subvariety.period: must be >= 1".into()));
            }
            Sublattice::new(sub.basis.clone())?;
        }
        Ok(())
    }

    /// Indented JSON with every matrix row on a single line.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(ScenarioFile::from(self)).expect("scenario serializes");
        let mut out = String::new();
        write_json(&value, 0, &mut out);
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let scenario = file.into_scenario()?;
        scenario.validate()?;
        Ok(scenario)
    }

    /// Loads a builtin by name, or else a JSON file at that path.
    pub fn load(spec: &str) -> Result<Self> {
        if let Some(s) = builtin(spec) {
            return Ok(s);
        }
        let path = Path::new(spec);
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read scenario '{spec}': {e}")))?;
        Self::from_json(&text)
    }
}

fn write_json(value: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match value {
        Value::Array(items) if items.iter().all(|v| !v.is_array() && !v.is_object()) => {
            let inline: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&inline.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_json(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(fields) => {
            out.push_str("{\n");
            for (i, (key, item)) in fields.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_json(item, indent + 1, out);
                out.push_str(if i + 1 < fields.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

// -- wire format --

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    description: String,
    torus: TorusFile,
    endomorphism: EndomorphismFile,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    factors: Vec<FactorFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    action: Option<Vec<AffineFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    subvariety: Option<SubvarietyFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct TorusFile {
    g: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    complex_structure: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    riemann_form: Option<Vec<Vec<String>>>,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct EndomorphismFile {
    matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    translation: Option<Vec<String>>,
    #[serde(default = "default_true")]
    analytic: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct FactorFile {
    dimension: u32,
    multiplier: String,
    #[serde(default = "one")]
    multiplicity: u32,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct AffineFile {
    linear: Vec<Vec<String>>,
    translation: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct SubvarietyFile {
    basis: Vec<Vec<String>>,
    translate: Vec<String>,
    period: u32,
}

fn parse_int(field: &str, s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("{field}: '{s}' is not an integer")))
}

pub(crate) fn parse_rational(field: &str, s: &str) -> Result<BigRational> {
    let text = s.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num = parse_int(field, num)?;
    let den = parse_int(field, den)?;
    if den.is_zero() {
        return Err(Error::Parse(format!("{field}: zero denominator in '{s}'")));
    }
    Ok(BigRational::new(num, den))
}

fn parse_int_matrix(field: &str, rows: &[Vec<String>]) -> Result<IntegerMatrix> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter().enumerate().map(|(j, x)| parse_int(&format!("{field}[{i}][{j}]"), x)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    IntegerMatrix::from_big_rows(parsed).map_err(|e| Error::Parse(format!("{field}: {e}")))
}

fn parse_rational_matrix(field: &str, rows: &[Vec<String>]) -> Result<RationalMatrix> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| parse_rational(&format!("{field}[{i}][{j}]"), x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_big_rows(parsed).map_err(|e| Error::Parse(format!("{field}: {e}")))
}

fn parse_vector(field: &str, v: &[String]) -> Result<Vec<BigRational>> {
    v.iter().enumerate().map(|(i, x)| parse_rational(&format!("{field}[{i}]"), x)).collect()
}

fn int_rows(m: &IntegerMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn rational_rows(m: &RationalMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn vector(v: &[BigRational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn context(field: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Parse(msg) => Error::Parse(msg),
        other => Error::Parse(format!("{field}: {other}")),
    }
}

impl ScenarioFile {
    fn into_scenario(self) -> Result<Scenario> {
        let j = self
            .torus
            .complex_structure
            .as_deref()
            .map(|rows| parse_rational_matrix("torus.complex_structure", rows))
            .transpose()?;
        let s =
            self.torus.riemann_form.as_deref().map(|rows| parse_int_matrix("torus.riemann_form", rows)).transpose()?;
        let torus = ComplexTorus::new(self.torus.g, j, s).map_err(context("torus"))?;

        let matrix = parse_int_matrix("endomorphism.matrix", &self.endomorphism.matrix)?;
        let translation = match &self.endomorphism.translation {
            Some(t) => parse_vector("endomorphism.translation", t)?,
            None => vec![BigRational::zero(); matrix.rows()],
        };
        let endomorphism = LatticeEndomorphism::new(matrix, translation).map_err(context("endomorphism"))?;

        let factors = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let field = format!("factors[{i}]");
                let q = parse_int(&format!("{field}.multiplier"), &f.multiplier)?;
                SimpleFactorSpec::new(f.dimension, q, f.multiplicity).map_err(context(&field))
            })
            .collect::<Result<Vec<_>>>()?;

        let action = self
            .action
            .map(|elements| {
                let elements = elements
                    .iter()
                    .enumerate()
                    .map(|(i, a)| {
                        let field = format!("action[{i}]");
                        let linear = parse_int_matrix(&format!("{field}.linear"), &a.linear)?;
                        let t = parse_vector(&format!("{field}.translation"), &a.translation)?;
                        AffineAutomorphism::new(linear, t).map_err(context(&field))
                    })
                    .collect::<Result<Vec<_>>>()?;
                GroupAction::new(elements).map_err(context("action"))
            })
            .transpose()?;

        let subvariety = self
            .subvariety
            .map(|sub| -> Result<SubvarietySpec> {
                Ok(SubvarietySpec {
                    basis: parse_int_matrix("subvariety.basis", &sub.basis)?,
                    translate: TorsionPoint::new(parse_vector("subvariety.translate", &sub.translate)?)
                        .map_err(context("subvariety.translate"))?,
                    period: sub.period,
                })
            })
            .transpose()?;

        Ok(Scenario {
            name: self.name,
            description: self.description,
            torus,
            endomorphism,
            analytic: self.endomorphism.analytic,
            factors,
            action,
            subvariety,
        })
    }
}

impl From<&Scenario> for ScenarioFile {
    fn from(s: &Scenario) -> Self {
        let translation = s.endomorphism.has_translation().then(|| vector(s.endomorphism.translation()));
        ScenarioFile {
            name: s.name.clone(),
            description: s.description.clone(),
            torus: TorusFile {
                g: s.torus.half_dimension(),
                complex_structure: s.torus.complex_structure().map(rational_rows),
                riemann_form: s.torus.riemann_form().map(int_rows),
            },
            endomorphism: EndomorphismFile {
                matrix: int_rows(s.endomorphism.matrix()),
                translation,
                analytic: s.analytic,
            },
            factors: s
                .factors
                .iter()
                .map(|f| FactorFile {
                    dimension: f.dimension(),
                    multiplier: f.multiplier().to_string(),
                    multiplicity: f.multiplicity(),
                })
                .collect(),
            action: s.action.as_ref().map(|a| {
                a.elements()
                    .iter()
                    .map(|e| AffineFile { linear: int_rows(e.linear()), translation: vector(e.translation()) })
                    .collect()
            }),
            subvariety: s.subvariety.as_ref().map(|sub| SubvarietyFile {
                basis: int_rows(&sub.basis),
                translate: vector(sub.translate.coordinates()),
                period: sub.period,
            }),
        }
    }
}

// -- builtin library --

/// Names accepted by [`builtin`]; `mult-by-<m>[-g<g>]` is parametric.
pub const BUILTIN_NAMES: &[&str] = &[
    "mult-by-2",
    "gaussian-cm",
    "silverman-sumdiff",
    "unpolarizable-1x4",
    "bielliptic-quotient",
    "diagonal-subvariety",
];

pub fn builtin(name: &str) -> Option<Scenario> {
    if let Some(rest) = name.strip_prefix("mult-by-") {
        let (m, g) = match rest.split_once("-g") {
            Some((m, g)) => (m.parse().ok()?, g.parse().ok()?),
            None => (rest.parse().ok()?, 1usize),
        };
        return multiplication_scenario(m, g);
    }
    let standard = |g| ComplexTorus::standard(g).expect("standard torus is valid");
    let linear = |rows: &[&[i64]]| {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        LatticeEndomorphism::linear(IntegerMatrix::from_rows(&rows)).expect("square literal")
    };
    let factor = |g, q: i64, r| SimpleFactorSpec::new(g, q, r).expect("valid factor");

    let scenario = match name {
        "gaussian-cm" => Scenario {
            name: name.into(),
            description: "E = C/Z[i] with complex multiplication by 1+i (degree 2, multiplier 2)".into(),
            torus: standard(1),
            endomorphism: linear(&[&[1, -1], &[1, 1]]),
            analytic: true,
            factors: vec![factor(1, 2, 1)],
            action: None,
            subvariety: None,
        },
        "silverman-sumdiff" => Scenario {
            name: name.into(),
            description: "(x, y) -> (x + y, x - y) on E x E, multiplier 2 for the product polarization; degree 4 = 2^g with g = dim(E x E) = 2, equivalently 2^(2d) with d = dim E = 1".into(),
            torus: standard(2),
            endomorphism: linear(&[&[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 0, -1, 0], &[0, 1, 0, -1]]),
            analytic: true,
            factors: vec![factor(1, 2, 2)],
            action: None,
            subvariety: None,
        },
        "unpolarizable-1x4" => Scenario {
            name: name.into(),
            description: "[1] x [4] on A x E, A a surface: degree 16, no polarization multiplier".into(),
            torus: standard(3),
            endomorphism: LatticeEndomorphism::linear(IntegerMatrix::diagonal(&[1, 1, 1, 1, 4, 4])).expect("square"),
            analytic: true,
            factors: Vec::new(),
            action: None,
            subvariety: None,
        },
        "bielliptic-quotient" => Scenario {
            name: name.into(),
            description: "[3] on E x E with the free order-2 action (x, y) -> (x + 1/2, -y)".into(),
            torus: standard(2),
            endomorphism: LatticeEndomorphism::multiplication(3, 2),
            analytic: true,
            factors: vec![factor(1, 9, 2)],
            action: Some(bielliptic_action()),
            subvariety: None,
        },
        "diagonal-subvariety" => Scenario {
            name: name.into(),
            description: "[2] x [2] on E x E restricted to the diagonal".into(),
            torus: standard(2),
            endomorphism: LatticeEndomorphism::multiplication(2, 2),
            analytic: true,
            factors: vec![factor(1, 4, 2)],
            action: None,
            subvariety: Some(SubvarietySpec {
                basis: IntegerMatrix::from_rows(&[[1, 0], [0, 1], [1, 0], [0, 1]]),
                translate: TorsionPoint::origin(4),
                period: 1,
            }),
        },
        _ => return None,
    };
    Some(scenario)
}

fn multiplication_scenario(m: i64, g: usize) -> Option<Scenario> {
    if g == 0 || g > 16 {
        return None;
    }
    let name = if g == 1 { format!("mult-by-{m}") } else { format!("mult-by-{m}-g{g}") };
    let factors = if m.abs() >= 2 { vec![SimpleFactorSpec::new(1, m * m, g as u32).ok()?] } else { Vec::new() };
    Some(Scenario {
        name,
        description: format!("multiplication by {m} on a product of {g} elliptic curve(s)"),
        torus: ComplexTorus::new(g, Some(standard_complex_structure(g)), Some(standard_riemann_form(g))).ok()?,
        endomorphism: LatticeEndomorphism::multiplication(m, g),
        analytic: true,
        factors,
        action: None,
        subvariety: None,
    })
}

pub fn builtins() -> Vec<Scenario> {
    BUILTIN_NAMES.iter().map(|n| builtin(n).expect("listed builtin exists")).collect()
}
