//! JSON rendering of library values and the versioned run report.

use grassgeo_core::grassmann::{column_sets, HomElement, HomSpace};
use grassgeo_core::isoclass::{AlphaBeta, Check, ClassificationReport, RankOnePoint};
use grassgeo_core::{Scalar, SubspaceRep};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: &str = "1";

pub fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn rows(r: &[Vec<Scalar>]) -> Value {
    Value::Array(r.iter().map(|x| vector(x)).collect())
}

/// Basis rows plus the Plücker vector in the order of `pluecker_index_sets`.
pub fn subspace(s: &SubspaceRep) -> Value {
    let sets = if s.dim() == 0 {
        Vec::new()
    } else {
        column_sets(s.n() + 1, s.dim())
    };
    json!({
        "ell": s.ell(),
        "basis": rows(&s.basis_rows()),
        "pluecker": vector(s.pluecker()),
        "pluecker_index_sets": sets,
    })
}

pub fn hom(h: &HomElement) -> Value {
    json!({
        "rank": h.rank(),
        "matrix": rows(&h.matrix().to_rows()),
        "kernel": subspace(&h.kernel_subspace()),
        "image": subspace(&h.image_subspace()),
    })
}

pub fn hom_space(s: &HomSpace) -> Value {
    json!({
        "direction": match s.direction() {
            grassgeo_core::Direction::Tangent => "tangent",
            grassgeo_core::Direction::Conormal => "conormal",
        },
        "dim": s.dim(),
        "elements": s.elements().iter().map(hom).collect::<Vec<_>>(),
    })
}

fn rank_one_point(p: &RankOnePoint) -> Value {
    json!({
        "coefficients": vector(&p.coeffs),
        "kernel": subspace(&p.kernel),
        "image": subspace(&p.image),
        "multiplicity": p.multiplicity,
    })
}

pub fn classification(r: &ClassificationReport) -> Value {
    let alpha_beta = r.alpha_beta.as_ref().map(|ab| match ab {
        AlphaBeta::Alpha(k) => json!({"type": "alpha", "subspace": subspace(k)}),
        AlphaBeta::Beta(i) => json!({"type": "beta", "subspace": subspace(i)}),
    });
    json!({
        "mode": r.mode.as_str(),
        "space_dim": r.space_dim,
        "ell": r.ell,
        "n": r.n,
        "flags": {
            "strong": r.flags.strong,
            "rank_one_spanned": r.flags.rank_one_spanned,
            "hypersurface_rank_one": r.flags.hypersurface_rank_one,
            "low_dim_fallback": r.flags.low_dim_fallback,
        },
        "type": r.type_tag.as_str(),
        "alpha_beta": alpha_beta,
        "rank_one_points": r.witnesses.iter().map(rank_one_point).collect::<Vec<_>>(),
        "locus_positive_dimensional": r.locus_positive_dimensional,
        "certificates": r.certificates,
        "verdict": r.verdict.as_str(),
        "checks": r.checks.iter().map(check).collect::<Vec<_>>(),
    })
}

pub fn check(c: &Check) -> Value {
    json!({"name": c.name, "pass": c.pass, "detail": c.detail})
}

#[derive(Debug, Serialize)]
pub struct CheckOut {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckOut {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CheckOut {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }

    pub fn from_core(prefix: &str, c: &Check) -> Self {
        CheckOut::new(format!("{prefix}{}", c.name), c.pass, c.detail.clone())
    }
}

/// The root seed and the derived streams: child 0 drives the main
/// computation, child `i + 1` drives sample `i`.
#[derive(Debug, Serialize)]
pub struct Seeds {
    pub root: u64,
    pub main: Option<u64>,
    pub sample_streams: usize,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema_version: &'static str,
    pub command: String,
    pub inputs_digest: String,
    pub seeds: Seeds,
    pub field: String,
    pub results: Value,
    pub checks: Vec<CheckOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl RunReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// SHA-256 of the canonical input description, hex encoded.
pub fn digest(parts: &[(&str, String)]) -> String {
    let mut h = Sha256::new();
    for (k, v) in parts {
        h.update(k.as_bytes());
        h.update([0u8]);
        h.update(v.as_bytes());
        h.update([0xffu8]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
