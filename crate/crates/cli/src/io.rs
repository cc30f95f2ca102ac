//! Input schemas and parsing. All files are JSON; rationals are strings
//! `"p/q"` (bare integers also accepted), and parse errors carry the line
//! and column reported by the JSON parser.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use nrgit_core::quiver::{Arrow, Quiver, RankVector, RepMult};
use nrgit_core::rational::Rational;
use nrgit_core::truncpoly::AmMatrix;
use nrgit_core::{QMatrix, QVector};

#[derive(Debug)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

impl From<nrgit_core::Error> for CliError {
    fn from(e: nrgit_core::Error) -> Self {
        CliError(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("cannot read `{}`: {e}", path.display())))
}

pub fn parse_json<'a, T: Deserialize<'a>>(what: &str, text: &'a str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| {
        CliError(format!(
            "malformed {what} at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusFile {
    pub rank: usize,
    pub weights: Vec<Vec<i64>>,
    #[serde(default)]
    pub points: Vec<Vec<Rational>>,
    #[serde(default)]
    pub rho: Option<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedFile {
    pub gm_weights: Vec<i64>,
    #[serde(rename = "lieU")]
    pub lie_u: Vec<Vec<Vec<Rational>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowFile {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum QuiverRef {
    Path(String),
    Inline(QuiverFile),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub quiver: QuiverRef,
    pub m: usize,
    pub rank: BTreeMap<String, usize>,
    /// per arrow: one matrix of rationals per epsilon layer
    pub mats: BTreeMap<String, Vec<Vec<Vec<Rational>>>>,
}

impl QuiverFile {
    pub fn build(&self) -> CliResult<Quiver> {
        Ok(Quiver::new(
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| Arrow::new(&a.id, &a.src, &a.tgt))
                .collect(),
        )?)
    }
}

pub fn load_quiver(path: &Path) -> CliResult<Quiver> {
    let text = read_file(path)?;
    parse_json::<QuiverFile>("quiver file", &text)?.build()
}

fn matrix_from_rows(rows: &[Vec<Rational>]) -> CliResult<QMatrix> {
    Ok(QMatrix::from_rows(rows.to_vec())?)
}

impl RepFile {
    /// Resolve the quiver (inline or relative to `base_dir`) and assemble
    /// the representation.
    pub fn build(&self, base_dir: &Path) -> CliResult<RepMult> {
        let quiver = match &self.quiver {
            QuiverRef::Inline(q) => q.build()?,
            QuiverRef::Path(p) => {
                let mut path = PathBuf::from(p);
                if path.is_relative() {
                    path = base_dir.join(path);
                }
                load_quiver(&path)?
            }
        };
        let rank = RankVector::new(self.rank.clone());
        let mut mats = BTreeMap::new();
        for (arrow, layers) in &self.mats {
            let layer_mats = layers
                .iter()
                .map(|rows| matrix_from_rows(rows))
                .collect::<CliResult<Vec<_>>>()?;
            if layer_mats.len() != self.m + 1 {
                return Err(CliError(format!(
                    "arrow `{arrow}` has {} layers, expected {}",
                    layer_mats.len(),
                    self.m + 1
                )));
            }
            mats.insert(arrow.clone(), AmMatrix::from_layers(layer_mats)?);
        }
        Ok(RepMult::new(quiver, self.m, rank, mats)?)
    }
}

impl GradedFile {
    pub fn build(&self) -> CliResult<nrgit_core::graded::GradedRep> {
        let lie = self
            .lie_u
            .iter()
            .map(|rows| matrix_from_rows(rows))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(nrgit_core::graded::GradedRep::new(
            self.gm_weights.clone(),
            lie,
        )?)
    }
}

pub fn torus_rep_from(file: &TorusFile) -> CliResult<nrgit_core::torus::TorusRep> {
    let weights = file.weights.iter().map(|w| QVector::from_ints(w)).collect();
    Ok(nrgit_core::torus::TorusRep::new(file.rank, weights)?)
}

// ---- inline JSON arguments ----

pub fn parse_int_rows(arg: &str) -> CliResult<Vec<Vec<i64>>> {
    parse_json("--weights argument", arg)
}

pub fn parse_int_row(arg: &str) -> CliResult<Vec<i64>> {
    parse_json("integer list argument", arg)
}

pub fn parse_rational_row(arg: &str) -> CliResult<Vec<Rational>> {
    parse_json("rational list argument", arg)
}

pub fn parse_point(arg: &str) -> CliResult<QVector> {
    Ok(QVector::new(parse_rational_row(arg)?))
}

pub fn parse_mat2(arg: &str) -> CliResult<nrgit_core::borel::Mat2> {
    let rows: Vec<Vec<Rational>> = parse_json("--mat argument", arg)?;
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        return Err(CliError("--mat expects a 2x2 matrix".into()));
    }
    Ok(nrgit_core::borel::Mat2::new(
        rows[0][0].clone(),
        rows[0][1].clone(),
        rows[1][0].clone(),
        rows[1][1].clone(),
    ))
}
