//! JSON report types. Field order is fixed by declaration order, so output
//! is byte-stable for a given input. The shape is described by
//! `docs/report.schema.json`.

use froblab_core::fsing::{
    Conclusion, CriterionReport, CriterionVerdict, FedderReport, PipelineReport, SubCheck,
};
use froblab_core::quotients::{ClosureReport, ClosureVerdict};
use froblab_core::Polynomial;
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1.0";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DECISIVE: i32 = 2;

pub const CONCLUSION_STATEMENT: &str = "R is FH-finite and H^d_m(R) is antinilpotent";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Decisive,
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// A single membership certifies the verdict.
    Decisive,
    /// Only exponents up to `e_max` were searched.
    BoundedEvidence,
    /// Exact computation.
    Exact,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub command: String,
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<CommandResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub assumptions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub characteristic: u64,
    pub variables: Vec<String>,
    pub relations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_ideal: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sop: Option<Vec<String>>,
    pub f: String,
    pub e_max: u32,
}

#[derive(Debug, Serialize)]
pub struct ErrorInfo {
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
pub enum CommandResult {
    Gb(GbResult),
    Dim(DimResult),
    Membership(MembershipResult),
    Minors(MinorsResult),
    Fpure(FpureResult),
    Fclosure(ClosureJson),
    CoverCheck(CoverCheckResult),
    Pipeline(PipelineJson),
    FindSop(FindSopResult),
}

#[derive(Debug, Serialize)]
pub struct GbResult {
    pub order: String,
    pub basis: Vec<String>,
    pub leading_monomials: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct DimResult {
    pub dimension: usize,
}

#[derive(Debug, Serialize)]
pub struct MembershipResult {
    pub polynomial: String,
    pub ideal: Vec<String>,
    pub member: bool,
    pub normal_form: String,
}

#[derive(Debug, Serialize)]
pub struct MinorsResult {
    pub count: usize,
    pub minors: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct FedderJson {
    pub presentation: String,
    pub f_pure: bool,
    pub witness: Option<String>,
    pub colon_generators: usize,
}

#[derive(Debug, Serialize)]
pub struct FpureResult {
    pub ring: FedderJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_quotient: Option<FedderJson>,
}

#[derive(Debug, Serialize)]
pub struct ClosureWitnessJson {
    pub candidate_index: usize,
    pub element: String,
    pub e: u32,
    pub monotone_verified: bool,
}

#[derive(Debug, Serialize)]
pub struct ClosureJson {
    pub ring: String,
    pub ideal: Vec<String>,
    pub verdict: &'static str,
    pub e_max: u32,
    pub evidence: Evidence,
    pub socle_dimension: usize,
    pub socle_basis: Vec<String>,
    pub candidates_tested: usize,
    pub partial: bool,
    pub regular_sequence_verified: bool,
    pub witness: Option<ClosureWitnessJson>,
}

#[derive(Debug, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct SocleLiftJson {
    pub x: String,
    pub tail: Vec<String>,
    pub z: String,
    pub u: String,
}

#[derive(Debug, Serialize)]
pub struct StepJson {
    pub e: u32,
    pub q: u64,
    pub member: bool,
}

#[derive(Debug, Serialize)]
pub struct CriterionJson {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_max: Option<u32>,
    pub witness_e: Option<u32>,
    pub evidence: Evidence,
    pub checks: Vec<CheckJson>,
    pub socle_lift: Option<SocleLiftJson>,
    pub steps: Vec<StepJson>,
}

#[derive(Debug, Serialize)]
pub struct CoverSocleJson {
    pub dimension: usize,
    pub space_dimension: usize,
    pub spanned_by_ut: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct CoverCheckResult {
    pub f: String,
    pub sop_regular_on_cover: bool,
    pub criterion: CriterionJson,
    pub cover_socle: Option<CoverSocleJson>,
}

#[derive(Debug, Serialize)]
pub struct ConclusionJson {
    pub status: &'static str,
    pub statement: Option<&'static str>,
    pub reason: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct PipelineJson {
    pub characteristic: u32,
    pub dimension: usize,
    pub hypotheses: Vec<CheckJson>,
    pub fedder_r: FedderJson,
    pub fedder_r_mod_i: FedderJson,
    pub criterion: Option<CriterionJson>,
    pub closure: Option<ClosureJson>,
    pub conclusion: ConclusionJson,
}

#[derive(Debug, Serialize)]
pub struct FindSopResult {
    pub seed: u64,
    pub attempts: usize,
    pub sop: Vec<String>,
    pub checks: Vec<CheckJson>,
}

pub fn strings(polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(|p| p.to_string()).collect()
}

pub fn checks(cs: &[SubCheck]) -> Vec<CheckJson> {
    cs.iter()
        .map(|c| CheckJson {
            name: c.name.clone(),
            passed: c.passed,
            detail: c.detail.clone(),
        })
        .collect()
}

pub fn fedder(presentation: String, r: &FedderReport) -> FedderJson {
    FedderJson {
        presentation,
        f_pure: r.f_pure,
        witness: r.witness.as_ref().map(|w| w.to_string()),
        colon_generators: r.colon_generators,
    }
}

pub fn closure(ring: String, ideal: &[Polynomial], r: &ClosureReport) -> ClosureJson {
    let (verdict, evidence) = match r.verdict {
        ClosureVerdict::NotFrobeniusClosed => ("NOT_FROBENIUS_CLOSED", Evidence::Decisive),
        ClosureVerdict::ClosedUpTo(_) => ("CLOSED_UP_TO", Evidence::BoundedEvidence),
    };
    ClosureJson {
        ring,
        ideal: strings(ideal),
        verdict,
        e_max: r.e_max,
        evidence,
        socle_dimension: r.socle_dimension,
        socle_basis: strings(&r.socle_basis),
        candidates_tested: r.candidates_tested,
        partial: r.partial,
        regular_sequence_verified: r.regular_sequence_verified,
        witness: r.witness.as_ref().map(|w| ClosureWitnessJson {
            candidate_index: w.candidate_index,
            element: w.element.to_string(),
            e: w.e,
            monotone_verified: w.monotone_verified,
        }),
    }
}

pub fn criterion(r: &CriterionReport) -> CriterionJson {
    let (verdict, e_max, evidence) = match r.verdict {
        CriterionVerdict::DecisiveNotFInjective { .. } => {
            ("DECISIVE_NOT_F_INJECTIVE", None, Evidence::Decisive)
        }
        CriterionVerdict::NoFailureUpTo { e_max } => {
            ("NO_FAILURE_UP_TO", Some(e_max), Evidence::BoundedEvidence)
        }
        CriterionVerdict::P2Degenerate => ("P2_DEGENERATE", None, Evidence::Exact),
    };
    CriterionJson {
        verdict,
        e_max,
        witness_e: r.witness(),
        evidence,
        checks: checks(&r.checks),
        socle_lift: r.lift.as_ref().map(|l| SocleLiftJson {
            x: l.x.to_string(),
            tail: strings(&l.tail),
            z: l.z.to_string(),
            u: l.u.to_string(),
        }),
        steps: r
            .steps
            .iter()
            .map(|s| StepJson {
                e: s.e,
                q: s.q,
                member: s.member,
            })
            .collect(),
    }
}

/// `tail` is the ideal tested for Frobenius closure, written in the
/// variables of `R/I`.
pub fn pipeline(
    r: &PipelineReport,
    r_name: String,
    r_mod_i_name: String,
    tail: &[Polynomial],
) -> PipelineJson {
    let conclusion = match &r.conclusion {
        Conclusion::FhFinite => ConclusionJson {
            status: "implied_by_theorem",
            statement: Some(CONCLUSION_STATEMENT),
            reason: None,
        },
        Conclusion::Withheld { reason } => ConclusionJson {
            status: "withheld",
            statement: None,
            reason: Some(reason.clone()),
        },
    };
    PipelineJson {
        characteristic: r.characteristic,
        dimension: r.dimension,
        hypotheses: checks(&r.hypotheses),
        fedder_r: fedder(r_name, &r.fedder_r),
        fedder_r_mod_i: fedder(r_mod_i_name.clone(), &r.fedder_r_mod_i),
        criterion: r.criterion.as_ref().map(criterion),
        closure: r.closure.as_ref().map(|c| closure(r_mod_i_name, tail, c)),
        conclusion,
    }
}

/// Renders any report as indented `key: value` lines.
pub fn render_text(value: &serde_json::Value) -> String {
    let mut out = String::new();
    walk(value, 0, &mut out);
    out
}

fn scalar(v: &serde_json::Value) -> Option<String> {
    match v {
        serde_json::Value::Null => Some("-".into()),
        serde_json::Value::Bool(b) => Some(b.to_string()),
        serde_json::Value::Number(n) => Some(n.to_string()),
        serde_json::Value::String(s) => Some(s.clone()),
        serde_json::Value::Array(a) if a.is_empty() => Some("(none)".into()),
        serde_json::Value::Array(a) if a.iter().all(|x| x.is_string()) => Some(
            a.iter()
                .map(|x| x.as_str().unwrap())
                .collect::<Vec<_>>()
                .join(", "),
        ),
        _ => None,
    }
}

fn walk(v: &serde_json::Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        serde_json::Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        walk(x, depth + 1, out);
                    }
                }
            }
        }
        serde_json::Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        walk(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
