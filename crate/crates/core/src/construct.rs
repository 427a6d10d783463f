//! Encoder constructions.
//!
//! Every construction returns `S`; the encoder is `H = S·A`. Validity of each
//! follows from its structure, and the tests re-check it exhaustively.

use std::str::FromStr;

use crate::codes::parity_check_best;
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::gf::{find_primitive_modulus, FieldSpec, MAX_ORDER};
use crate::matrix::Matrix;
use crate::oracle::{bounds, Bounds};
use crate::problem::{EncoderScheme, FunctionUpdateProblem, Method, Striped};
use crate::vectors;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub scheme: EncoderScheme,
    /// Human-readable precondition the construction relied on.
    pub precondition: String,
    /// Extension-field parity check, for the companion construction.
    pub s_hat: Option<Matrix>,
    pub bounds: Option<Bounds>,
}

impl ConstructionReport {
    fn new(scheme: EncoderScheme, precondition: impl Into<String>) -> Self {
        ConstructionReport { scheme, precondition: precondition.into(), s_hat: None, bounds: None }
    }

    pub fn codelength(&self) -> usize {
        self.scheme.codelength()
    }
}

/// Construction selector, also used by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Choice {
    Auto,
    Naive,
    DropOne,
    T1Ecc,
    Subspace,
    Companion,
}

impl FromStr for Choice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Choice::Auto,
            "naive" => Choice::Naive,
            "drop-one" => Choice::DropOne,
            "t1-ecc" => Choice::T1Ecc,
            "subspace" => Choice::Subspace,
            "companion" => Choice::Companion,
            other => return Err(Error::Parse(format!("unknown method {other:?}"))),
        })
    }
}

/// Runs the selected construction and attaches the bound bracket when the
/// interference sets fit in the enumeration budget.
pub fn construct(
    problem: &FunctionUpdateProblem,
    choice: Choice,
    target_l: Option<usize>,
    limits: &Limits,
) -> Result<ConstructionReport> {
    let mut report = match choice {
        Choice::Auto => auto(problem, limits)?,
        Choice::Naive => naive(problem),
        Choice::DropOne => drop_one(problem, limits)?,
        Choice::T1Ecc => striped_t1(problem, limits)?,
        Choice::Subspace => {
            let l = match target_l {
                Some(l) => l,
                None => smallest_subspace_length(problem)?,
            };
            subspace_eps1(problem, l)?
        }
        Choice::Companion => companion(problem, limits)?,
    };
    if report.bounds.is_none() {
        if let Ok(sets) = problem.interference(limits) {
            report.bounds = Some(bounds(problem, &sets, limits));
        }
    }
    Ok(report)
}

/// `S = I_m`: send `A(x+e)` itself.
pub fn naive(problem: &FunctionUpdateProblem) -> ConstructionReport {
    let s = Matrix::identity(problem.field(), problem.m());
    let scheme = EncoderScheme::new(problem, s, Method::Naive).expect("square identity");
    ConstructionReport::new(scheme, "none")
}

/// Saves one symbol: picks the first nonzero `u` outside the syndrome set and
/// sends the coordinates of `A(x+e)` in a basis of `u^⊥`.
pub fn drop_one(problem: &FunctionUpdateProblem, limits: &Limits) -> Result<ConstructionReport> {
    let sets = problem.interference(limits)?;
    let u = sets.first_non_syndrome(problem.m(), problem.q()).ok_or(Error::NoSavings)?;
    let s = Matrix::row_vector(problem.field(), &u)?.orthogonal_complement();
    let scheme = EncoderScheme::new(problem, s, Method::DropOne)?;
    let pre = format!("u = {u:?} is not a syndrome");
    let mut report = ConstructionReport::new(scheme, pre);
    report.bounds = Some(bounds(problem, &sets, limits));
    Ok(report)
}

fn striped_tag(problem: &FunctionUpdateProblem) -> Result<&Striped> {
    problem
        .striped_tag()
        .ok_or_else(|| Error::InvalidParams("construction needs a striped problem".into()))
}

/// Striped with single-row `C`: `S` is the parity check of the best
/// `[a, k_q(a, 2ε+1), 2ε+1]` code, which is optimal.
pub fn striped_t1(problem: &FunctionUpdateProblem, limits: &Limits) -> Result<ConstructionReport> {
    let tag = striped_tag(problem)?;
    if tag.t() != 1 {
        return Err(Error::InvalidParams(format!("t1-ecc needs t = 1, got t = {}", tag.t())));
    }
    let d = 2 * problem.epsilon() + 1;
    let s = parity_check_best(problem.field(), problem.m(), d, limits)?;
    let scheme = EncoderScheme::new(problem, s, Method::T1Ecc)?;
    Ok(ConstructionReport::new(scheme, format!("striped, t = 1, d = {d}")))
}

/// Number of pairwise trivially intersecting `t`-dimensional subspaces of
/// F_q^l produced by [`subspace_family`].
pub fn subspace_count(q: u32, t: usize, l: usize) -> u128 {
    if l < 2 * t {
        return 0;
    }
    vectors::space_size(l - t, q) + u128::from(l == 2 * t)
}

/// The first `count` members of a family of `t`-dimensional subspaces of
/// F_q^l meeting pairwise only in zero, each as an `l×t` basis.
///
/// Members are `[I_t; P_β]` with `P_β` the first `t` columns of the matrix of
/// multiplication by `β` in GF(q^{l−t}); differences `P_β − P_β'` have full
/// column rank. For `l = 2t` the family is a spread and `[0; I_t]` joins it.
/// Order: `β = 0`, then `[0; I_t]` when present, then nonzero `β` by index.
pub fn subspace_family(field: &FieldSpec, t: usize, l: usize, count: usize) -> Result<Vec<Matrix>> {
    if t == 0 || l < 2 * t {
        return Err(Error::BadShape(format!("need l ≥ 2t, got l = {l}, t = {t}")));
    }
    let available = subspace_count(field.order(), t, l);
    if (count as u128) > available {
        return Err(Error::InsufficientSubspaces { available, needed: count });
    }
    let s = l - t;
    let ext_order = vectors::space_size(s, field.order());
    if ext_order > MAX_ORDER as u128 && count > 1 {
        return Err(Error::InvalidParams(format!("GF({}^{s}) is too large", field.order())));
    }
    let top = Matrix::identity(field, t);
    let cols: Vec<usize> = (0..t).collect();
    let mut family = Vec::with_capacity(count);
    family.push(top.vstack(&Matrix::zeros(field, s, t))?);
    if family.len() < count && l == 2 * t {
        family.push(Matrix::zeros(field, t, t).vstack(&Matrix::identity(field, t))?);
    }
    if family.len() < count {
        let ext = find_primitive_modulus(field, s)?;
        let mut beta = 1;
        while family.len() < count {
            let p = ext.phi_expand(beta)?.select_columns(&cols);
            family.push(top.vstack(&p)?);
            beta += 1;
        }
    }
    Ok(family)
}

/// ε = 1 striped problems: block `i` of `S` is a basis of the `i`-th member
/// of a trivially intersecting subspace family in F_q^l.
pub fn subspace_eps1(problem: &FunctionUpdateProblem, target_l: usize) -> Result<ConstructionReport> {
    let tag = striped_tag(problem)?;
    if problem.epsilon() != 1 {
        return Err(Error::InvalidParams("subspace construction needs ε = 1".into()));
    }
    let t = tag.t();
    let family = subspace_family(problem.field(), t, target_l, tag.a)?;
    let mut s = family[0].clone();
    for block in &family[1..] {
        s = s.hstack(block)?;
    }
    let scheme = EncoderScheme::new(problem, s, Method::Subspace)?;
    let available = subspace_count(problem.q(), t, target_l);
    Ok(ConstructionReport::new(
        scheme,
        format!("{available} subspaces of dimension {t} in F_{}^{target_l} ≥ a = {}", problem.q(), tag.a),
    ))
}

fn smallest_subspace_length(problem: &FunctionUpdateProblem) -> Result<usize> {
    let tag = striped_tag(problem)?;
    let t = tag.t();
    (2 * t..=problem.m().max(2 * t))
        .find(|&l| subspace_count(problem.q(), t, l) >= tag.a as u128)
        .ok_or(Error::InsufficientSubspaces {
            available: subspace_count(problem.q(), t, problem.m().max(2 * t)),
            needed: tag.a,
        })
}

/// Striped problems, any ε: take the best parity check `Ŝ` of length `a` and
/// distance `2ε+1` over GF(q^t) and replace every entry by its `t×t` matrix
/// over GF(q). Codelength `l = l̂·t`.
pub fn companion(problem: &FunctionUpdateProblem, limits: &Limits) -> Result<ConstructionReport> {
    let tag = striped_tag(problem)?;
    let t = tag.t();
    let ext = find_primitive_modulus(problem.field(), t)?;
    let d = 2 * problem.epsilon() + 1;
    let s_hat = parity_check_best(&ext, tag.a, d, limits)?;
    let s = expand_blocks(&s_hat, problem.field(), t)?;
    let scheme = EncoderScheme::new(problem, s, Method::Companion)?;
    let cmp = if ext.order() as usize >= tag.a { "≥" } else { "<" };
    let mut report = ConstructionReport::new(
        scheme,
        format!("q^t = {} {cmp} a = {}, p(x) = {:?}", ext.order(), tag.a, ext.modulus()),
    );
    report.s_hat = Some(s_hat);
    Ok(report)
}

/// Replaces each entry of a matrix over a degree-`t` extension by its
/// multiplication matrix over the base.
pub fn expand_blocks(s_hat: &Matrix, base: &FieldSpec, t: usize) -> Result<Matrix> {
    let ext = s_hat.field();
    let mut s = Matrix::zeros(base, s_hat.rows() * t, s_hat.cols() * t);
    for i in 0..s_hat.rows() {
        for j in 0..s_hat.cols() {
            let block = ext.phi_expand(s_hat.get(i, j))?;
            for bi in 0..t {
                for bj in 0..t {
                    s.set(i * t + bi, j * t + bj, block.get(bi, bj));
                }
            }
        }
    }
    Ok(s)
}

/// Runs every applicable construction and keeps the shortest; ties go to
/// t1-ecc, then companion, subspace, drop-one, naive.
pub fn auto(problem: &FunctionUpdateProblem, limits: &Limits) -> Result<ConstructionReport> {
    let order = [Choice::T1Ecc, Choice::Companion, Choice::Subspace, Choice::DropOne, Choice::Naive];
    let runs = limits.exec.map(&order, |&choice| -> Option<ConstructionReport> {
        match choice {
            Choice::T1Ecc => striped_t1(problem, limits).ok(),
            Choice::Companion => companion(problem, limits).ok(),
            Choice::Subspace => smallest_subspace_length(problem)
                .and_then(|l| subspace_eps1(problem, l))
                .ok(),
            Choice::DropOne => drop_one(problem, limits).ok(),
            _ => Some(naive(problem)),
        }
    });
    let mut best: Option<ConstructionReport> = None;
    for report in runs.into_iter().flatten() {
        if best.as_ref().is_none_or(|b| report.codelength() < b.codelength()) {
            best = Some(report);
        }
    }
    Ok(best.expect("naive always applies"))
}
