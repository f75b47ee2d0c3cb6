//! JSON report shapes. Field order is declaration order; every coefficient
//! is written in its canonical string form so output is byte-stable.

use std::fmt::Display;

use hwtensor::linalg::{Field, Matrix};
use hwtensor::tensor::{DropRecord, Verdict, VermaLift};
use hwtensor::unitarity::PositivityReport;
use serde::Serialize;

use crate::case::Case;

pub const SCHEMA: u32 = 1;

pub fn matrix_strings<F: Field + Display>(m: &Matrix<F>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
        .collect()
}

#[derive(Serialize)]
pub struct Kinds {
    pub v: String,
    pub z: String,
}

#[derive(Serialize)]
pub struct DropJson {
    pub drop: String,
    pub dim_singular: usize,
    pub gram_rank: usize,
    pub theta_rank: Option<usize>,
    pub pullback_ok: Option<bool>,
}

impl From<&DropRecord> for DropJson {
    fn from(r: &DropRecord) -> Self {
        Self {
            drop: r.drop.to_string(),
            dim_singular: r.dim_singular,
            gram_rank: r.gram_rank,
            theta_rank: r.theta_rank,
            pullback_ok: r.pullback_ok,
        }
    }
}

#[derive(Serialize)]
pub struct CheckReport {
    pub schema: u32,
    pub command: &'static str,
    pub case: String,
    pub datum: String,
    #[serde(rename = "D")]
    pub root: u32,
    pub hw_v: String,
    pub hw_z: String,
    pub kinds: Kinds,
    pub cutoff: u32,
    /// Depth of `V ⊗ Z` when both factors are finite-dimensional.
    pub sufficient_height: Option<u32>,
    pub unconditional: bool,
    pub drops: Vec<DropJson>,
    pub conclusion: String,
    pub defect_drop: Option<String>,
}

impl CheckReport {
    pub fn new(case: &Case, root: u32, verdict: &Verdict) -> Self {
        let sufficient = case.sufficient_height();
        Self {
            schema: SCHEMA,
            command: "check",
            case: case.to_string(),
            datum: case.datum.to_string(),
            root,
            hw_v: case.v.hw.to_string(),
            hw_z: case.z.hw.to_string(),
            kinds: Kinds {
                v: case.v.kind.to_string(),
                z: case.z.kind.to_string(),
            },
            cutoff: verdict.cutoff,
            sufficient_height: sufficient,
            unconditional: sufficient.is_some_and(|h| verdict.cutoff >= h),
            drops: verdict.drops.iter().map(DropJson::from).collect(),
            conclusion: verdict.conclusion.to_string(),
            defect_drop: match &verdict.conclusion {
                hwtensor::tensor::Conclusion::DefectAt(d) => Some(d.to_string()),
                _ => None,
            },
        }
    }
}

#[derive(Serialize)]
pub struct TwistJson {
    pub rows: usize,
    pub cols: usize,
    pub matrix: Vec<Vec<String>>,
    pub rank: usize,
}

impl TwistJson {
    pub fn new(m: &Matrix<hwtensor::RatFunc>) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            matrix: matrix_strings(m),
            rank: m.rank(),
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "status")]
pub enum VermaLiftJson {
    #[serde(rename = "matrix")]
    Matrix { matrix: Vec<Vec<String>>, agrees: bool },
    #[serde(rename = "dimension gap")]
    DimensionGap { lifted: usize, expected: usize },
}

impl VermaLiftJson {
    pub fn new(lift: &VermaLift, theta: &Matrix<hwtensor::RatFunc>) -> Self {
        match lift {
            VermaLift::Matrix(m) => Self::Matrix {
                matrix: matrix_strings(m),
                agrees: m == theta,
            },
            VermaLift::DimensionGap { lifted, expected } => Self::DimensionGap {
                lifted: *lifted,
                expected: *expected,
            },
        }
    }
}

#[derive(Serialize)]
pub struct TwistReportJson {
    pub schema: u32,
    pub command: &'static str,
    pub case: String,
    pub datum: String,
    #[serde(rename = "D")]
    pub root: u32,
    pub drop: String,
    pub dim_singular: usize,
    pub gram: Vec<Vec<String>>,
    pub gram_rank: usize,
    pub theta_vz: TwistJson,
    pub theta_zv: TwistJson,
    pub pullback: Vec<Vec<String>>,
    pub pullback_ok: bool,
    pub verma_lift: VermaLiftJson,
}

#[derive(Serialize)]
pub struct MinorsJson {
    pub drop: String,
    pub minors: Vec<String>,
}

#[derive(Serialize)]
pub struct WitnessJson {
    pub drop: String,
    pub order: usize,
    pub minor: String,
}

#[derive(Serialize)]
pub struct SampleJson {
    pub q0: String,
    pub positive: bool,
    pub star_adjoint: bool,
    pub drops: Vec<MinorsJson>,
    pub failure: Option<WitnessJson>,
}

impl SampleJson {
    pub fn new(r: &PositivityReport, star_adjoint: bool) -> Self {
        Self {
            q0: r.q0.to_string(),
            positive: r.passed(),
            star_adjoint,
            drops: r
                .drops
                .iter()
                .map(|d| MinorsJson {
                    drop: d.drop.to_string(),
                    minors: d.minors.iter().map(|m| m.to_string()).collect(),
                })
                .collect(),
            failure: r.failure.as_ref().map(|w| WitnessJson {
                drop: w.drop.to_string(),
                order: w.order,
                minor: w.minor.to_string(),
            }),
        }
    }
}

#[derive(Serialize)]
pub struct UnitarityReport {
    pub schema: u32,
    pub command: &'static str,
    pub datum: String,
    #[serde(rename = "D")]
    pub root: u32,
    pub module: String,
    pub cutoff: u32,
    pub star_tables_ok: bool,
    pub samples: Vec<SampleJson>,
    pub passed: bool,
}

pub fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("report serializes");
    s.push('\n');
    s
}
