//! JSON input formats: varieties, curves and families of tangent spaces.

use std::sync::Arc;

use grassgeo_core::grassmann::{adapted_basis, stiefel_differential, HomSpace};
use grassgeo_core::osc::ParamCurve;
use grassgeo_core::projvar::Parametrization;
use grassgeo_core::{
    DenseMatrix, Direction, Field, Ideal, MultiPoly, ProjVariety, Ring, Scalar, SubspaceRep,
    UniPoly,
};
use serde::Deserialize;
use serde_json::Value;

use crate::parse::parse_in_ring;
use crate::CliError;

/// `{"n", "generators": [..], "parametrization": {"params": [..], "coords": [..]}}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietySpec {
    pub n: usize,
    pub generators: Vec<String>,
    #[serde(default)]
    pub parametrization: Option<ParamSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSpec {
    pub params: Vec<String>,
    pub coords: Vec<String>,
}

impl VarietySpec {
    pub fn build(&self, field: Field) -> Result<ProjVariety, CliError> {
        let ring = Ring::with_prefix("x", self.n + 1, field);
        let gens = self
            .generators
            .iter()
            .map(|g| parse_in_ring(g, &ring).map_err(CliError::Input))
            .collect::<Result<Vec<_>, _>>()?;
        let par = match &self.parametrization {
            None => None,
            Some(p) => {
                let pr = Ring::new(
                    p.params.clone(),
                    field,
                    grassgeo_core::MonomialOrder::DegRevLex,
                );
                let coords = p
                    .coords
                    .iter()
                    .map(|c| parse_in_ring(c, &pr).map_err(CliError::Input))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(Parametrization { ring: pr, coords })
            }
        };
        Ok(ProjVariety::new(Ideal::new(&ring, gens)?, par)?)
    }
}

/// A polynomial curve `{"param": "t0", "coords": [..]}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(default = "default_param")]
    pub param: String,
    pub coords: Vec<String>,
}

fn default_param() -> String {
    "t0".into()
}

impl CurveSpec {
    pub fn build(&self, field: Field) -> Result<ParamCurve, CliError> {
        let ring = Ring::new(
            vec![self.param.clone()],
            field,
            grassgeo_core::MonomialOrder::DegRevLex,
        );
        let coords = self
            .coords
            .iter()
            .map(|c| {
                parse_in_ring(c, &ring)
                    .map(|p| to_unipoly(&p, field))
                    .map_err(CliError::Input)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ParamCurve::new(coords)?)
    }
}

fn to_unipoly(p: &MultiPoly, field: Field) -> UniPoly {
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![field.zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.degree() as usize] = c.clone();
    }
    UniPoly::new(field, coeffs)
}

/// Renders a univariate polynomial in the variable `var`.
pub fn unipoly_string(p: &UniPoly, var: &str) -> String {
    let ring = Ring::new(
        vec![var.to_string()],
        p.field(),
        grassgeo_core::MonomialOrder::DegRevLex,
    );
    let t = ring.var(0);
    let poly = p
        .coeffs()
        .iter()
        .enumerate()
        .fold(ring.zero(), |acc, (i, c)| {
            acc.add(&t.pow(i as u32).scale(c))
        });
    poly.to_string()
}

/// One member of a family: a basis of `L` and Stiefel velocities of that basis.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySample {
    pub basis: Vec<Vec<Value>>,
    pub velocities: Vec<Vec<Vec<Value>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedClass {
    pub class: String,
    #[serde(default)]
    pub center: Option<Vec<Vec<Value>>>,
}

/// `{"n", "samples": [..], "expected": {"class", "center"}}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub n: usize,
    pub samples: Vec<FamilySample>,
    #[serde(default)]
    pub expected: Option<ExpectedClass>,
}

pub fn scalar_from_json(v: &Value, field: Field) -> Result<Scalar, CliError> {
    match v {
        Value::String(s) => Ok(Scalar::parse(field, s)?),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Scalar::from_i64(field, i)),
            None => Err(CliError::Input(format!("not an integer: {n}"))),
        },
        other => Err(CliError::Input(format!(
            "expected a number or a string, got {other}"
        ))),
    }
}

pub fn matrix_from_json(
    rows: &[Vec<Value>],
    cols: usize,
    field: Field,
) -> Result<DenseMatrix, CliError> {
    let rows = rows
        .iter()
        .map(|r| {
            if r.len() != cols {
                return Err(CliError::Input(format!(
                    "row of length {}, expected {cols}",
                    r.len()
                )));
            }
            r.iter().map(|v| scalar_from_json(v, field)).collect()
        })
        .collect::<Result<Vec<Vec<Scalar>>, _>>()?;
    Ok(DenseMatrix::from_rows_with_cols(field, cols, rows)?)
}

pub fn subspace_from_json(
    rows: &[Vec<Value>],
    n: usize,
    field: Field,
) -> Result<SubspaceRep, CliError> {
    Ok(grassgeo_core::pluecker_embed(&matrix_from_json(
        rows,
        n + 1,
        field,
    )?)?)
}

impl FamilySpec {
    /// Tangent spaces spanned by the Stiefel images of the given velocities.
    pub fn tangent_spaces(&self, field: Field) -> Result<Vec<HomSpace>, CliError> {
        self.samples
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let l = subspace_from_json(&s.basis, self.n, field)
                    .map_err(|e| CliError::Input(format!("sample {i}: {e}")))?;
                let basis: Arc<_> = adapted_basis(&l);
                let homs = s
                    .velocities
                    .iter()
                    .map(|v| {
                        let m = matrix_from_json(v, self.n + 1, field)?;
                        Ok(stiefel_differential(&basis, &m)?)
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                Ok(HomSpace::span(Direction::Tangent, &basis, &homs)?)
            })
            .collect()
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<(T, String), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_string(),
        source: e,
    })?;
    let value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    Ok((value, text))
}
