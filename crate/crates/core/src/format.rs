//! On-disk formats. Field elements are always written as their integer index.
//!
//! Problem files are TOML:
//!
//! ```toml
//! epsilon = 1
//! A = [[1, 0, 1], [0, 1, 1]]
//!
//! [field]
//! p = 2
//! k = 1
//! modulus = [0, 1]   # coefficients over GF(p), lowest degree first
//!
//! [striped]          # optional; A may then be omitted
//! C = [[1, 1, 1]]
//! a = 2
//! ```
//!
//! Matrix files are plain text: a `rows cols q` header, then one line of
//! space-separated indices per row. A vector is a `1×n` matrix file.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fic::FicProblem;
use crate::gf::FieldSpec;
use crate::matrix::Matrix;
use crate::problem::FunctionUpdateProblem;

#[derive(Debug, Serialize, Deserialize)]
struct ProblemDoc {
    epsilon: usize,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    a: Option<Vec<Vec<u32>>>,
    field: FieldDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    striped: Option<StripedDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FieldDoc {
    p: u32,
    k: u32,
    modulus: Vec<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
struct StripedDoc {
    #[serde(rename = "C")]
    c: Vec<Vec<u32>>,
    a: usize,
}

fn field_doc(field: &FieldSpec) -> Result<FieldDoc> {
    match field.base() {
        Some(base) if !base.is_prime_field() => Err(Error::InvalidField(
            "only fields given by a modulus over GF(p) can be written".into(),
        )),
        _ => Ok(FieldDoc {
            p: field.characteristic(),
            k: field.absolute_degree(),
            modulus: field.modulus().to_vec(),
        }),
    }
}

fn field_from_doc(doc: &FieldDoc) -> Result<FieldSpec> {
    if doc.modulus.len() != doc.k as usize + 1 {
        return Err(Error::Parse(format!(
            "modulus has {} coefficients, expected k + 1 = {}",
            doc.modulus.len(),
            doc.k + 1
        )));
    }
    FieldSpec::from_modulus(doc.p, doc.modulus.clone())
}

fn matrix_from_rows(field: &FieldSpec, rows: &[Vec<u32>], cols_hint: usize) -> Result<Matrix> {
    if rows.is_empty() {
        return Ok(Matrix::zeros(field, 0, cols_hint));
    }
    Matrix::from_rows(field, rows)
}

pub fn parse_problem(text: &str) -> Result<FunctionUpdateProblem> {
    let doc: ProblemDoc = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let field = field_from_doc(&doc.field)?;
    match (&doc.a, &doc.striped) {
        (None, None) => Err(Error::Parse("problem needs A or a [striped] table".into())),
        (None, Some(s)) => {
            FunctionUpdateProblem::striped(matrix_from_rows(&field, &s.c, 0)?, s.a, doc.epsilon)
        }
        (Some(a), striped) => {
            let p = FunctionUpdateProblem::new(matrix_from_rows(&field, a, 0)?, doc.epsilon)?;
            match striped {
                Some(s) => p.with_striped(matrix_from_rows(&field, &s.c, 0)?, s.a),
                None => Ok(p),
            }
        }
    }
}

pub fn write_problem(problem: &FunctionUpdateProblem) -> Result<String> {
    let doc = ProblemDoc {
        epsilon: problem.epsilon(),
        a: Some(problem.a().to_rows()),
        field: field_doc(problem.field())?,
        striped: problem.striped_tag().map(|s| StripedDoc { c: s.c.to_rows(), a: s.a }),
    };
    toml::to_string(&doc).map_err(|e| Error::Parse(e.to_string()))
}

pub fn write_matrix(m: &Matrix) -> String {
    let mut out = format!("{} {} {}\n", m.rows(), m.cols(), m.field().order());
    out.push_str(&m.to_string());
    out
}

/// Parses a matrix file. With `field` given, the header order must match it;
/// otherwise the canonical field of that order is used.
pub fn parse_matrix(text: &str, field: Option<&FieldSpec>) -> Result<Matrix> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let nums = parse_numbers(header)?;
    let [rows, cols, q] = nums[..] else {
        return Err(Error::Parse(format!("header must be `rows cols q`, got {header:?}")));
    };
    let field = match field {
        Some(f) if f.order() == q => f.clone(),
        Some(f) => {
            return Err(Error::Parse(format!(
                "matrix is over GF({q}) but the problem is over GF({})",
                f.order()
            )))
        }
        None => FieldSpec::gf(q)?,
    };
    let mut data = Vec::with_capacity((rows * cols) as usize);
    let mut seen = 0;
    for line in lines {
        let row = parse_numbers(line)?;
        if row.len() != cols as usize {
            return Err(Error::Parse(format!("row {seen} has {} entries, expected {cols}", row.len())));
        }
        data.extend(row);
        seen += 1;
    }
    if seen != rows {
        return Err(Error::Parse(format!("found {seen} rows, header says {rows}")));
    }
    Matrix::new(&field, rows as usize, cols as usize, data)
}

fn parse_numbers(line: &str) -> Result<Vec<u32>> {
    line.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("not an index: {t:?}"))))
        .collect()
}

/// Reads a vector stored as a `1×n` or `n×1` matrix file.
pub fn parse_vector(text: &str, field: Option<&FieldSpec>) -> Result<Vec<u32>> {
    let m = parse_matrix(text, field)?;
    match (m.rows(), m.cols()) {
        (1, _) => Ok(m.row(0).to_vec()),
        (_, 1) => Ok(m.column(0)),
        (r, c) => Err(Error::Parse(format!("expected a vector, got a {r}x{c} matrix"))),
    }
}

pub fn write_vector(field: &FieldSpec, v: &[u32]) -> Result<String> {
    Ok(write_matrix(&Matrix::row_vector(field, v)?))
}

#[derive(Debug, Serialize)]
struct FicDoc {
    n: usize,
    users: u128,
    q: u32,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    shared: Option<Vec<Vec<u32>>>,
    user: Vec<FicUserDoc>,
}

#[derive(Debug, Serialize)]
struct FicUserDoc {
    side: Vec<usize>,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    demand: Option<Vec<Vec<u32>>>,
}

/// TOML listing of a functional index coding instance. Users of a reduced
/// problem share one demand matrix, written once.
pub fn write_fic(fic: &FicProblem) -> Result<String> {
    let shared = fic.shared_demand().map(Matrix::to_rows);
    let user = fic
        .users()
        .map(|u| FicUserDoc {
            side: u.side.clone(),
            demand: shared.is_none().then(|| u.demand.to_rows()),
        })
        .collect();
    let doc = FicDoc { n: fic.n(), users: fic.user_count(), q: fic.field().order(), shared, user };
    toml::to_string(&doc).map_err(|e| Error::Parse(e.to_string()))
}
