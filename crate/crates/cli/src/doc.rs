//! JSON documents: algebras, certificates, and the exact fraction encoding
//! they share.

use std::fmt;
use std::str::FromStr;

use endosplit_core::algebra::StructureAlgebra;
use endosplit_core::ratlin::{QMatrix, QVector, Rat};
use endosplit_core::splittable::{Factor, SplittableCertificate};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// A rational number written as `"p/q"` in lowest terms, or `"p"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frac(pub Rat);

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct FracVisitor;

impl<'de> Visitor<'de> for FracVisitor {
    type Value = Frac;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an exact fraction string such as \"-3/4\"")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Frac, E> {
        parse_frac(v).map_err(E::custom)
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Frac, E> {
        Err(E::custom(format!("floating-point literal {v} is not accepted")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Frac, E> {
        Err(E::custom(format!("number {v} must be written as the string \"{v}\"")))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Frac, E> {
        Err(E::custom(format!("number {v} must be written as the string \"{v}\"")))
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Frac, D::Error> {
        d.deserialize_any(FracVisitor)
    }
}

pub fn parse_frac(s: &str) -> Result<Frac, String> {
    let t = s.trim();
    let ok = !t.is_empty()
        && t
            .chars()
            .enumerate()
            .all(|(i, c)| c.is_ascii_digit() || c == '/' || (i == 0 && c == '-'));
    if !ok {
        return Err(format!("\"{s}\" is not an exact fraction"));
    }
    Rat::from_str(t)
        .map(Frac)
        .map_err(|e| format!("\"{s}\" is not an exact fraction: {e}"))
}

pub fn fracs(v: &[Rat]) -> Vec<Frac> {
    v.iter().cloned().map(Frac).collect()
}

pub fn rats(v: &[Frac]) -> QVector {
    v.iter().map(|f| f.0.clone()).collect()
}

pub fn matrix_rows(m: &QMatrix) -> Vec<Vec<Frac>> {
    m.to_rows().iter().map(|r| fracs(r)).collect()
}

pub fn matrix_from_rows(rows: &[Vec<Frac>], n: usize, what: &str) -> Result<QMatrix, CliError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Input(format!("{what} must be {n}x{n}")));
    }
    let r: Vec<QVector> = rows.iter().map(|r| rats(r)).collect();
    Ok(QMatrix::from_rows(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedElement {
    pub name: String,
    pub coords: Vec<Frac>,
}

/// Matrices `ρ(b_i)` of a representation on `Q^(2g)`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TateSection {
    pub g: usize,
    pub rho: Vec<Vec<Vec<Frac>>>,
}

/// An algebra by structure constants: `structure_constants[i][j]` holds the
/// coordinates of `b_i b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub structure_constants: Vec<Vec<Vec<Frac>>>,
    pub unit: Vec<Frac>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<NamedElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tate: Option<TateSection>,
}

#[derive(Serialize)]
struct CanonicalAlgebra<'a> {
    schema_version: u32,
    dim: usize,
    structure_constants: &'a [Vec<Vec<Frac>>],
    unit: &'a [Frac],
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: AlgebraDocument =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed algebra document: {e}")))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!("unsupported schema_version {}", doc.schema_version)));
        }
        Ok(doc)
    }

    pub fn from_algebra(a: &StructureAlgebra, name: Option<String>) -> Self {
        AlgebraDocument {
            schema_version: SCHEMA_VERSION,
            name,
            dim: a.dim(),
            structure_constants: a
                .products_table()
                .iter()
                .map(|row| row.iter().map(|v| fracs(v)).collect())
                .collect(),
            unit: fracs(a.unit()),
            elements: Vec::new(),
            tate: None,
        }
    }

    /// Shape checks only; the axioms are left to the caller.
    pub fn algebra(&self) -> Result<StructureAlgebra, CliError> {
        let n = self.dim;
        let products = self
            .structure_constants
            .iter()
            .map(|row| row.iter().map(|v| rats(v)).collect())
            .collect();
        StructureAlgebra::new(n, products, rats(&self.unit)).map_err(|e| CliError::Input(e.to_string()))
    }

    /// Hash of the compact canonical encoding of the multiplication table
    /// and unit; names, elements and representations are ignored.
    pub fn digest(&self) -> String {
        let c = CanonicalAlgebra {
            schema_version: self.schema_version,
            dim: self.dim,
            structure_constants: &self.structure_constants,
            unit: &self.unit,
        };
        sha256_hex(serde_json::to_string(&c).expect("serializable").as_bytes())
    }

    pub fn element(&self, name: &str) -> Result<QVector, CliError> {
        let e = self
            .elements
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| CliError::Input(format!("unknown element \"{name}\"")))?;
        if e.coords.len() != self.dim {
            return Err(CliError::Input(format!(
                "element \"{name}\" has {} coordinates, expected {}",
                e.coords.len(),
                self.dim
            )));
        }
        Ok(rats(&e.coords))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDocument {
    pub size: usize,
    pub field_degree: usize,
    pub field_basis: Vec<Vec<Frac>>,
    /// `units[j][l] = E_jl`
    pub units: Vec<Vec<Vec<Frac>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub schema_version: u32,
    pub algebra_digest: String,
    pub element: NamedElement,
    pub dim: usize,
    /// Basis vectors of the subalgebra.
    pub subalgebra_basis: Vec<Vec<Frac>>,
    pub factors: Vec<FactorDocument>,
    pub witness_unit: Option<Vec<Frac>>,
    pub witness_element: Option<Vec<Frac>>,
}

impl CertificateDocument {
    pub fn new(cert: &SplittableCertificate, digest: String, element: NamedElement) -> Self {
        CertificateDocument {
            schema_version: SCHEMA_VERSION,
            algebra_digest: digest,
            element,
            dim: cert.dim(),
            subalgebra_basis: cert.sub_basis.columns().iter().map(|c| fracs(c)).collect(),
            factors: cert
                .factors
                .iter()
                .map(|f| FactorDocument {
                    size: f.size(),
                    field_degree: f.field_degree(),
                    field_basis: f.field_basis.iter().map(|v| fracs(v)).collect(),
                    units: f
                        .units
                        .iter()
                        .map(|row| row.iter().map(|v| fracs(v)).collect())
                        .collect(),
                })
                .collect(),
            witness_unit: cert.witness_unit.as_ref().map(|v| fracs(v)),
            witness_element: cert.witness_f.as_ref().map(|v| fracs(v)),
        }
    }

    /// Accepts a bare certificate or a `split` report that embeds one.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed certificate: {e}")))?;
        let inner = match value.get("outputs").and_then(|o| o.get("certificate")) {
            Some(c) => c.clone(),
            None => value,
        };
        let doc: CertificateDocument =
            serde_json::from_value(inner).map_err(|e| CliError::Input(format!("malformed certificate: {e}")))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!("unsupported schema_version {}", doc.schema_version)));
        }
        Ok(doc)
    }

    /// Rebuilds the library certificate over `ambient`; only shapes are
    /// checked here.
    pub fn certificate(&self, ambient: &StructureAlgebra) -> Result<SplittableCertificate, CliError> {
        let n = ambient.dim();
        let vec_ok = |v: &Vec<Frac>| v.len() == n;
        let bad = |what: &str| CliError::Input(format!("certificate {what} has the wrong shape"));
        if self.subalgebra_basis.len() != self.dim || !self.subalgebra_basis.iter().all(vec_ok) {
            return Err(bad("subalgebra basis"));
        }
        if self.element.coords.len() != n {
            return Err(bad("element"));
        }
        let mut factors = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let square = f.units.len() == f.size && f.units.iter().all(|r| r.len() == f.size);
            if !square
                || f.field_basis.len() != f.field_degree
                || !f.field_basis.iter().all(vec_ok)
                || !f.units.iter().flatten().all(vec_ok)
            {
                return Err(bad("factor"));
            }
            factors.push(Factor {
                field_basis: f.field_basis.iter().map(|v| rats(v)).collect(),
                units: f
                    .units
                    .iter()
                    .map(|row| row.iter().map(|v| rats(v)).collect())
                    .collect(),
            });
        }
        let cols: Vec<QVector> = self.subalgebra_basis.iter().map(|v| rats(v)).collect();
        let witness = |w: &Option<Vec<Frac>>| -> Result<Option<QVector>, CliError> {
            match w {
                Some(v) if v.len() != self.dim => Err(bad("witness")),
                Some(v) => Ok(Some(rats(v))),
                None => Ok(None),
            }
        };
        Ok(SplittableCertificate {
            ambient: ambient.clone(),
            sub_basis: QMatrix::from_columns(n, &cols),
            factors,
            witness_unit: witness(&self.witness_unit)?,
            witness_f: witness(&self.witness_element)?,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}
