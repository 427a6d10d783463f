//! Functional index coding with uncoded side information and coded demands.
//!
//! User `i` knows the symbols `x_j` for `j ∈ X_i` and wants `A_i·x`. A linear
//! broadcast `H·x` serves everyone iff `H·y ≠ 0` for every `y` that vanishes
//! on some `X_i` while `A_i·y ≠ 0`.
//!
//! A function-update problem reduces to one user per update support: for each
//! `Q ⊆ [n]` with `|Q| = min(2ε, n)`, a user with `X = [n]∖Q` demanding `A`.
//! When `n ≤ 2ε` that is a single user with empty side information.

use std::collections::HashSet;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{dim_err, Error, Result};
use crate::exec::Limits;
use crate::gf::FieldSpec;
use crate::matrix::{weight, Matrix};
use crate::problem::FunctionUpdateProblem;
use crate::vectors;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FicUser {
    /// Indices of the symbols the user already has, ascending.
    pub side: Vec<usize>,
    pub demand: Arc<Matrix>,
}

impl FicUser {
    /// Positions the user does not know.
    pub fn unknown(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|j| self.side.binary_search(j).is_err()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Users {
    Explicit(Vec<FicUser>),
    /// Users generated on demand from the function-update reduction.
    Reduced { demand: Arc<Matrix>, unknown: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FicProblem {
    field: FieldSpec,
    n: usize,
    users: Users,
}

impl FicProblem {
    pub fn new(field: &FieldSpec, n: usize, users: Vec<FicUser>) -> Result<Self> {
        for u in &users {
            if u.demand.cols() != n {
                return Err(dim_err(format!("demand has {} columns, n = {n}", u.demand.cols())));
            }
            if u.demand.field() != field {
                return Err(Error::SpecMismatch);
            }
            if u.side.iter().any(|&j| j >= n) || !u.side.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::InvalidProblem(
                    "side information must be ascending indices below n".into(),
                ));
            }
        }
        Ok(FicProblem { field: field.clone(), n, users: Users::Explicit(users) })
    }

    /// One user per `Q ⊆ [n]` of size `min(2ε, n)`, in lexicographic order of `Q`.
    pub fn from_function_update(problem: &FunctionUpdateProblem, limits: &Limits) -> Result<Self> {
        let n = problem.n();
        let unknown = (2 * problem.epsilon()).min(n);
        limits.check_enumeration(vectors::binomial(n, unknown))?;
        Ok(FicProblem {
            field: problem.field().clone(),
            n,
            users: Users::Reduced { demand: Arc::new(problem.a().clone()), unknown },
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn user_count(&self) -> u128 {
        match &self.users {
            Users::Explicit(u) => u.len() as u128,
            Users::Reduced { unknown, .. } => vectors::binomial(self.n, *unknown),
        }
    }

    /// The shared demand matrix of a reduced problem.
    pub fn shared_demand(&self) -> Option<&Matrix> {
        match &self.users {
            Users::Reduced { demand, .. } => Some(demand),
            Users::Explicit(_) => None,
        }
    }

    pub fn users(&self) -> Box<dyn Iterator<Item = FicUser> + '_> {
        match &self.users {
            Users::Explicit(u) => Box::new(u.iter().cloned()),
            Users::Reduced { demand, unknown } => {
                let n = self.n;
                Box::new((0..n).combinations(*unknown).map(move |q| FicUser {
                    side: (0..n).filter(|j| !q.contains(j)).collect(),
                    demand: Arc::clone(demand),
                }))
            }
        }
    }

    /// Adds a user, materializing generated users first.
    pub fn push_user(&mut self, user: FicUser) -> Result<()> {
        let mut all: Vec<FicUser> = self.users().collect();
        all.push(user);
        *self = FicProblem::new(&self.field, self.n, all)?;
        Ok(())
    }
}

/// Sort key for the canonical order: weight, support, coefficients.
pub fn canonical_key(y: &[u32]) -> (usize, Vec<usize>, Vec<u32>) {
    let support: Vec<usize> = (0..y.len()).filter(|&i| y[i] != 0).collect();
    let coeffs = support.iter().map(|&i| y[i]).collect();
    (weight(y), support, coeffs)
}

/// Union over users of `{y : y_{X_i} = 0, A_i·y ≠ 0}`, in canonical order.
pub fn enumerate_fic_interference(problem: &FicProblem, limits: &Limits) -> Result<Vec<Vec<u32>>> {
    let q = problem.field.order();
    let users: Vec<FicUser> = problem.users().collect();
    let total = users.iter().fold(0u128, |acc, u| {
        acc.saturating_add(vectors::space_size(problem.n - u.side.len(), q))
    });
    limits.check_enumeration(total)?;
    let n = problem.n;
    let per_user = limits.exec.map(&users, |u| {
        let free = u.unknown(n);
        let mut hits = Vec::new();
        let mut y = vec![0u32; n];
        for idx in 1..vectors::space_size(free.len(), q) {
            let vals = vectors::unrank(idx, free.len(), q);
            for (&j, &v) in free.iter().zip(&vals) {
                y[j] = v;
            }
            if !u.demand.annihilates(&y) {
                hits.push(y.clone());
            }
        }
        hits
    });
    let union: HashSet<Vec<u32>> = per_user.into_iter().flatten().collect();
    let mut out: Vec<Vec<u32>> = union.into_iter().collect();
    out.sort_by_cached_key(|y| canonical_key(y));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FicValidity {
    Valid,
    Invalid { witness: Vec<u32> },
}

impl FicValidity {
    pub fn is_valid(&self) -> bool {
        matches!(self, FicValidity::Valid)
    }
}

/// Valid iff `H·y ≠ 0` on the whole interference set; the witness is the
/// canonically first `y` with `H·y = 0`.
pub fn is_valid_fic_encoder(problem: &FicProblem, h: &Matrix, limits: &Limits) -> Result<FicValidity> {
    if h.cols() != problem.n {
        return Err(dim_err(format!("H has {} columns, n = {}", h.cols(), problem.n)));
    }
    let set = enumerate_fic_interference(problem, limits)?;
    Ok(check_fic(&set, h, limits))
}

/// As [`is_valid_fic_encoder`] against a precomputed interference set.
pub fn check_fic(set: &[Vec<u32>], h: &Matrix, limits: &Limits) -> FicValidity {
    match limits.exec.position_first(set, |y| h.annihilates(y)) {
        None => FicValidity::Valid,
        Some(i) => FicValidity::Invalid { witness: set[i].clone() },
    }
}
