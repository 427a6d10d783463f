//! The (A, ε) function-update problem: interference sets, encoder validity,
//! encoding and decoding.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{dim_err, Error, Result};
use crate::exec::{Exec, Limits};
use crate::gf::FieldSpec;
use crate::matrix::{weight, Matrix};
use crate::vectors;

/// Striped structure `A = I_a ⊗ C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Striped {
    pub c: Matrix,
    pub a: usize,
}

impl Striped {
    pub fn t(&self) -> usize {
        self.c.rows()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionUpdateProblem {
    a: Matrix,
    epsilon: usize,
    striped: Option<Striped>,
}

impl FunctionUpdateProblem {
    /// `a` must have full row rank. Instances with `m ≤ 2ε` are accepted;
    /// see [`FunctionUpdateProblem::naive_optimal`].
    pub fn new(a: Matrix, epsilon: usize) -> Result<Self> {
        if epsilon == 0 {
            return Err(Error::InvalidProblem("epsilon must be at least 1".into()));
        }
        if a.rows() == 0 {
            return Err(Error::InvalidProblem("A has no rows".into()));
        }
        let rank = a.rank();
        if rank < a.rows() {
            return Err(Error::InvalidProblem(format!(
                "A must have full row rank: rank {rank} < {} rows",
                a.rows()
            )));
        }
        Ok(FunctionUpdateProblem { a, epsilon, striped: None })
    }

    /// Builds `A = I_a ⊗ C`. `C` must have full row rank.
    pub fn striped(c: Matrix, a: usize, epsilon: usize) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidProblem("stripe count must be at least 1".into()));
        }
        if c.rank() < c.rows() {
            return Err(Error::InvalidProblem("stripe matrix C is rank deficient".into()));
        }
        let full = Matrix::identity(c.field(), a).kron(&c)?;
        let mut p = FunctionUpdateProblem::new(full, epsilon)?;
        p.striped = Some(Striped { c, a });
        Ok(p)
    }

    /// Attaches a striped tag after checking that it reproduces `A`.
    pub fn with_striped(mut self, c: Matrix, a: usize) -> Result<Self> {
        if Matrix::identity(c.field(), a).kron(&c)? != self.a {
            return Err(Error::InvalidProblem("I_a ⊗ C does not reproduce A".into()));
        }
        self.striped = Some(Striped { c, a });
        Ok(self)
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn field(&self) -> &FieldSpec {
        self.a.field()
    }

    pub fn q(&self) -> u32 {
        self.field().order()
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn epsilon(&self) -> usize {
        self.epsilon
    }

    pub fn striped_tag(&self) -> Option<&Striped> {
        self.striped.as_ref()
    }

    /// `m ≤ 2ε`: sending `A(x+e)` itself is already optimal.
    pub fn naive_optimal(&self) -> bool {
        self.m() <= 2 * self.epsilon
    }

    pub fn enumeration_size(&self) -> u128 {
        vectors::ball_size(self.n(), 2 * self.epsilon, self.q())
    }

    pub fn interference(&self, limits: &Limits) -> Result<InterferenceSets> {
        enumerate_interference(self, limits)
    }
}

/// Label for how an encoder was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Naive,
    DropOne,
    T1Ecc,
    Subspace,
    Companion,
    Oracle,
    External,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::DropOne => "drop-one",
            Method::T1Ecc => "t1-ecc",
            Method::Subspace => "subspace",
            Method::Companion => "companion",
            Method::Oracle => "oracle",
            Method::External => "external",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An encoder `H = S·A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncoderScheme {
    s: Matrix,
    h: Matrix,
    method: Method,
}

impl EncoderScheme {
    pub fn new(problem: &FunctionUpdateProblem, s: Matrix, method: Method) -> Result<Self> {
        if s.cols() != problem.m() {
            return Err(dim_err(format!(
                "S has {} columns but A has {} rows",
                s.cols(),
                problem.m()
            )));
        }
        let h = s.mul(problem.a())?;
        Ok(EncoderScheme { s, h, method })
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn h(&self) -> &Matrix {
        &self.h
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn codelength(&self) -> usize {
        self.s.rows()
    }

    pub fn encode(&self, x_new: &[u32]) -> Result<Vec<u32>> {
        self.h.mul_vec(x_new)
    }
}

/// Interference sets of a problem, in canonical order.
///
/// `deltas` holds every `y` with `0 < wt(y) ≤ 2ε` and `Ay ≠ 0`. `syndromes`
/// holds the distinct values `Ay` in order of first appearance, each paired
/// with the first delta producing it.
#[derive(Debug, Clone)]
pub struct InterferenceSets {
    deltas: Vec<Vec<u32>>,
    syndromes: Vec<Vec<u32>>,
    representative: Vec<usize>,
    index: HashMap<Vec<u32>, usize>,
    eta: usize,
    considered: u128,
}

impl InterferenceSets {
    pub fn deltas(&self) -> &[Vec<u32>] {
        &self.deltas
    }

    pub fn syndromes(&self) -> &[Vec<u32>] {
        &self.syndromes
    }

    /// The first delta (canonical order) whose image is syndrome `i`.
    pub fn representative(&self, i: usize) -> &[u32] {
        &self.deltas[self.representative[i]]
    }

    pub fn contains_syndrome(&self, z: &[u32]) -> bool {
        self.index.contains_key(z)
    }

    /// Maximum Hamming weight over the syndromes; 0 when there are none.
    pub fn eta(&self) -> usize {
        self.eta
    }

    /// Number of vectors of weight ≤ 2ε examined.
    pub fn considered(&self) -> u128 {
        self.considered
    }

    /// Index of the first syndrome annihilated by `s`.
    pub fn first_annihilated(&self, s: &Matrix, exec: Exec) -> Option<usize> {
        exec.position_first(&self.syndromes, |z| s.annihilates(z))
    }

    pub fn check(&self, s: &Matrix, exec: Exec) -> Validity {
        match self.first_annihilated(s, exec) {
            None => Validity::Valid,
            Some(i) => Validity::Invalid {
                syndrome: self.syndromes[i].clone(),
                delta: self.representative(i).to_vec(),
            },
        }
    }

    /// Canonically first nonzero vector of F_q^m that is not a syndrome.
    pub fn first_non_syndrome(&self, m: usize, q: u32) -> Option<Vec<u32>> {
        let total = vectors::space_size(m, q);
        let bound = (self.syndromes.len() as u128 + 2).min(total);
        (1..bound).map(|i| vectors::unrank(i, m, q)).find(|u| !self.contains_syndrome(u))
    }
}

pub fn enumerate_interference(
    problem: &FunctionUpdateProblem,
    limits: &Limits,
) -> Result<InterferenceSets> {
    let considered = problem.enumeration_size();
    limits.check_enumeration(considered)?;
    let field = problem.field();
    let columns: Vec<Vec<u32>> = (0..problem.n()).map(|j| problem.a().column(j)).collect();
    let m = problem.m();
    let pairs = vectors::filter_map_ball(
        problem.n(),
        2 * problem.epsilon(),
        problem.q(),
        limits.exec,
        |supp, coeffs, y| {
            let mut z = vec![0u32; m];
            for (&j, &c) in supp.iter().zip(coeffs) {
                for (zi, &a) in z.iter_mut().zip(&columns[j]) {
                    if a != 0 {
                        *zi = field.add(*zi, field.mul(c, a));
                    }
                }
            }
            z.iter().any(|&v| v != 0).then(|| (y.to_vec(), z))
        },
    );

    let mut sets = InterferenceSets {
        deltas: Vec::with_capacity(pairs.len()),
        syndromes: Vec::new(),
        representative: Vec::new(),
        index: HashMap::new(),
        eta: 0,
        considered,
    };
    for (y, z) in pairs {
        let di = sets.deltas.len();
        sets.deltas.push(y);
        if !sets.index.contains_key(&z) {
            sets.eta = sets.eta.max(weight(&z));
            sets.index.insert(z.clone(), sets.syndromes.len());
            sets.syndromes.push(z);
            sets.representative.push(di);
        }
    }
    Ok(sets)
}

/// Outcome of a validity check. An invalid encoder comes with the first
/// syndrome `z = Ay` it annihilates and the delta `y` behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid { syndrome: Vec<u32>, delta: Vec<u32> },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Valid iff `S·z ≠ 0` for every syndrome `z`.
pub fn is_valid_encoder(
    problem: &FunctionUpdateProblem,
    s: &Matrix,
    limits: &Limits,
) -> Result<Validity> {
    if s.cols() != problem.m() {
        return Err(dim_err(format!("S has {} columns, expected {}", s.cols(), problem.m())));
    }
    if s.field() != problem.field() {
        return Err(Error::SpecMismatch);
    }
    Ok(problem.interference(limits)?.check(s, limits.exec))
}

/// Validity of an arbitrary `l×n` encoder `H`: valid iff `H·y ≠ 0` for every
/// delta `y`. The witness is the first such delta.
pub fn is_valid_encoder_matrix(
    problem: &FunctionUpdateProblem,
    h: &Matrix,
    limits: &Limits,
) -> Result<Validity> {
    if h.cols() != problem.n() {
        return Err(dim_err(format!("H has {} columns, expected {}", h.cols(), problem.n())));
    }
    if h.field() != problem.field() {
        return Err(Error::SpecMismatch);
    }
    let sets = problem.interference(limits)?;
    let hit = limits.exec.position_first(sets.deltas(), |y| h.annihilates(y));
    Ok(match hit {
        None => Validity::Valid,
        Some(i) => {
            let y = sets.deltas()[i].clone();
            Validity::Invalid { syndrome: problem.a().mul_vec_unchecked(&y), delta: y }
        }
    })
}

/// Replaces an arbitrary encoder `H` by one whose rows span
/// `rowspace(H) ∩ rowspace(A)`, written as `S·A`.
pub fn reduce_encoder(problem: &FunctionUpdateProblem, h: &Matrix) -> Result<EncoderScheme> {
    if h.cols() != problem.n() {
        return Err(dim_err(format!("H has {} columns, expected {}", h.cols(), problem.n())));
    }
    let p = problem.a().code_intersection(h)?;
    // Keep H's own rows when nothing was cut away.
    let p = if p.rows() == h.rank() { h.independent_rows() } else { p };
    let s = express_in_rows(problem.a(), &p)?;
    EncoderScheme::new(problem, s, Method::External)
}

/// Solves `S·A = P` for full-row-rank `A`, assuming the rows of `P` lie in
/// `rowspace(A)`.
fn express_in_rows(a: &Matrix, p: &Matrix) -> Result<Matrix> {
    let pivots = a.rref().pivots;
    let k = a.select_columns(&pivots).inverse()?;
    let s = p.select_columns(&pivots).mul(&k)?;
    if s.mul(a)? != *p {
        return Err(Error::InvalidParams("rows do not lie in the row space of A".into()));
    }
    Ok(s)
}

/// Recovers `A(x+e)` from `c = H(x+e)` and the stale `A·x`.
///
/// Holds a table from `S·A·e` to `A·e` over all updates with `wt(e) ≤ ε`;
/// keys reached by two distinct images are marked ambiguous. Two such
/// images differ by a syndrome, so a valid `S` never produces a clash.
#[derive(Debug, Clone)]
pub struct Decoder {
    s: Matrix,
    table: HashMap<Vec<u32>, Option<Vec<u32>>>,
}

impl Decoder {
    pub fn new(problem: &FunctionUpdateProblem, scheme: &EncoderScheme, sets: &InterferenceSets) -> Self {
        let s = scheme.s().clone();
        let a = problem.a();
        let mut table = HashMap::new();
        table.insert(vec![0u32; s.rows()], Some(vec![0u32; problem.m()]));
        let mut seen = std::collections::HashSet::new();
        for y in sets.deltas().iter().filter(|y| weight(y) <= problem.epsilon()) {
            let z = a.mul_vec_unchecked(y);
            if !seen.insert(z.clone()) {
                continue;
            }
            let key = s.mul_vec_unchecked(&z);
            table.entry(key).and_modify(|slot| *slot = None).or_insert_with(|| Some(z));
        }
        Decoder { s, table }
    }

    pub fn build(
        problem: &FunctionUpdateProblem,
        scheme: &EncoderScheme,
        limits: &Limits,
    ) -> Result<Self> {
        Ok(Decoder::new(problem, scheme, &problem.interference(limits)?))
    }

    pub fn decode(&self, codeword: &[u32], stale: &[u32]) -> Result<Vec<u32>> {
        if codeword.len() != self.s.rows() {
            return Err(dim_err(format!(
                "codeword of length {}, expected {}",
                codeword.len(),
                self.s.rows()
            )));
        }
        let field = self.s.field();
        let predicted = self.s.mul_vec(stale)?;
        let delta: Vec<u32> =
            codeword.iter().zip(&predicted).map(|(&c, &p)| field.sub(c, p)).collect();
        match self.table.get(&delta) {
            None => Err(Error::NoCandidate),
            Some(None) => Err(Error::AmbiguousCandidate),
            Some(Some(z)) => Ok(stale.iter().zip(z).map(|(&a, &b)| field.add(a, b)).collect()),
        }
    }
}

pub fn decode(
    problem: &FunctionUpdateProblem,
    scheme: &EncoderScheme,
    codeword: &[u32],
    stale: &[u32],
    limits: &Limits,
) -> Result<Vec<u32>> {
    Decoder::build(problem, scheme, limits)?.decode(codeword, stale)
}

/// Whether some valid encoder is shorter than `m`: `|I_FU| < q^m − 1`.
pub fn saving_possible(problem: &FunctionUpdateProblem, limits: &Limits) -> Result<bool> {
    let sets = problem.interference(limits)?;
    Ok(syndromes_leave_gap(&sets, problem.m(), problem.q()))
}

/// As [`saving_possible`] against precomputed sets.
pub fn syndromes_leave_gap(sets: &InterferenceSets, m: usize, q: u32) -> bool {
    (sets.syndromes().len() as u128) < vectors::space_size(m, q) - 1
}

/// Sufficient field size for a saving: `q^{m−2ε} ≥ C(n, 2ε)`.
pub fn sufficient_field_check(n: usize, m: usize, epsilon: usize, q: u32) -> Result<bool> {
    if m <= 2 * epsilon {
        return Err(Error::InvalidParams(format!("need m > 2ε, got m={m}, ε={epsilon}")));
    }
    let lhs = BigUint::from(q).pow((m - 2 * epsilon) as u32);
    let rhs = binomial_big(n, 2 * epsilon);
    Ok(lhs >= rhs)
}

fn binomial_big(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// Rewrites the problem as `(K·A, ε)` where `K` inverts the first `m`
/// independent columns of `A`, so those columns become `I_m`.
pub fn normalize(problem: &FunctionUpdateProblem) -> Result<(FunctionUpdateProblem, Matrix)> {
    let pivots = problem.a().rref().pivots;
    let k = problem.a().select_columns(&pivots).inverse()?;
    let a2 = k.mul(problem.a())?;
    Ok((FunctionUpdateProblem::new(a2, problem.epsilon())?, k))
}
