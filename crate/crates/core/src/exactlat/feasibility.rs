//! Nonnegative integer feasibility `A x = b, x ∈ ℤ^n_{≥0}` with replayable
//! infeasibility certificates.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::hnf::{hnf_rows, lattice_separator};
use super::lp::{self, LpOutcome};
use super::vector::{IntMatrix, IntVector, RatVector};
use super::LatError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IntFeasibility {
    Solution(IntVector),
    InfeasibleCertified(Infeasibility),
    UnknownUpToBound(u64),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Infeasibility {
    /// `yᵀA ≥ 0` and `yᵀb < 0`: no rational solution.
    Lp { farkas: RatVector },
    /// `forcing` satisfies `forcingᵀA ≥ 0`, `forcingᵀb = 0`, and is strictly
    /// positive on every column in `forced`, so those variables vanish in
    /// every solution. `separator` is integral on each remaining column and
    /// non-integral on `b`, so the reduced system has no integer solution.
    Congruence { forcing: Option<RatVector>, forced: Vec<usize>, separator: RatVector },
}

impl Infeasibility {
    /// Replay the certificate against the system it claims to refute.
    pub fn verify(&self, a: &IntMatrix, b: &IntVector) -> bool {
        if a.rows() != b.dim() {
            return false;
        }
        match self {
            Infeasibility::Lp { farkas } => {
                farkas.dim() == a.rows()
                    && a.left_mul_rat(farkas).coords().iter().all(|v| !v.is_negative())
                    && farkas.dot_int(b).is_negative()
            }
            Infeasibility::Congruence { forcing, forced, separator } => {
                if separator.dim() != a.rows() {
                    return false;
                }
                match forcing {
                    Some(y) => {
                        if y.dim() != a.rows() || !y.dot_int(b).is_zero() {
                            return false;
                        }
                        let ya = a.left_mul_rat(y);
                        if ya.coords().iter().any(|v| v.is_negative()) {
                            return false;
                        }
                        if forced.iter().any(|&j| j >= a.cols() || !ya[j].is_positive()) {
                            return false;
                        }
                    }
                    None if !forced.is_empty() => return false,
                    None => {}
                }
                let za = a.left_mul_rat(separator);
                (0..a.cols()).filter(|j| !forced.contains(j)).all(|j| za[j].is_integer())
                    && !separator.dot_int(b).is_integer()
            }
        }
    }
}

fn rat_rows(a: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..a.rows()).map(|i| (0..a.cols()).map(|j| BigRational::from_integer(a.get(i, j).clone())).collect()).collect()
}

/// Find `y` with `yᵀb = 0`, `yᵀA ≥ 0` and `(yᵀA)_j ≥ 1` for `j ∈ strict`.
/// Variables: y⁺, y⁻ (m each) and slacks s (n) with `(Aᵀ(y⁺−y⁻))_j − s_j = [j ∈ strict]`.
fn forcing_functional(a: &IntMatrix, b: &IntVector, strict: &[usize]) -> Option<RatVector> {
    let (m, n) = (a.rows(), a.cols());
    let q = |v: &BigInt| BigRational::from_integer(v.clone());
    let nv = 2 * m + n;
    let mut rows = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut row = vec![BigRational::zero(); nv];
        for i in 0..m {
            row[i] = q(a.get(i, j));
            row[m + i] = -q(a.get(i, j));
        }
        row[2 * m + j] = -BigRational::from_integer(1.into());
        rows.push(row);
        rhs.push(if strict.contains(&j) { BigRational::from_integer(1.into()) } else { BigRational::zero() });
    }
    let mut row = vec![BigRational::zero(); nv];
    for i in 0..m {
        row[i] = q(&b[i]);
        row[m + i] = -q(&b[i]);
    }
    rows.push(row);
    rhs.push(BigRational::zero());
    match lp::feasible(&rows, &rhs, nv) {
        LpOutcome::Feasible(x) => Some(RatVector::new((0..m).map(|i| &x[i] - &x[m + i]).collect())),
        LpOutcome::Infeasible(_) => None,
    }
}

/// Decide whether some `x ∈ ℤ^n_{≥0}` satisfies `A x = b`.
///
/// Tries rational feasibility first (Farkas certificate on failure), then a
/// lattice test on the columns that are not forced to zero (congruence
/// certificate on failure), and finally an exhaustive search over all `x`
/// with `Σ x_i ≤ bound`, smallest coordinate sum first.
pub fn solve_nonneg_integer(a: &IntMatrix, b: &IntVector, bound: u64) -> Result<IntFeasibility, LatError> {
    if a.rows() != b.dim() {
        return Err(LatError::ShapeMismatch { expected: a.rows(), found: b.dim() });
    }
    let n = a.cols();
    if b.is_zero() {
        return Ok(IntFeasibility::Solution(IntVector::zeros(n)));
    }
    let x_star = match lp::feasible(&rat_rows(a), b.to_rational().coords(), n) {
        LpOutcome::Infeasible(y) => {
            let cert = Infeasibility::Lp { farkas: RatVector::new(y) };
            debug_assert!(cert.verify(a, b));
            return Ok(IntFeasibility::InfeasibleCertified(cert));
        }
        LpOutcome::Feasible(x) => x,
    };

    // variables vanishing in every rational solution
    let mut forced = Vec::new();
    let mut forcing: Option<RatVector> = None;
    for j in (0..n).filter(|&j| x_star[j].is_zero()) {
        if let Some(y) = forcing_functional(a, b, &[j]) {
            forced.push(j);
            forcing = Some(match forcing {
                None => y,
                Some(acc) => RatVector::new(acc.coords().iter().zip(y.coords()).map(|(p, q)| p + q).collect()),
            });
        }
    }
    let free: Vec<usize> = (0..n).filter(|j| !forced.contains(j)).collect();

    let columns: Vec<Vec<BigInt>> = free.iter().map(|&j| a.column(j).into_coords()).collect();
    let lattice = hnf_rows(a.rows(), columns);
    if let Some(separator) = lattice_separator(&lattice, b) {
        let cert = Infeasibility::Congruence { forcing, forced, separator };
        debug_assert!(cert.verify(a, b));
        return Ok(IntFeasibility::InfeasibleCertified(cert));
    }

    Ok(match bounded_search(a, b, &free, bound) {
        Some(x) => {
            debug_assert_eq!(&a.mul_vec(&x), b);
            IntFeasibility::Solution(x)
        }
        None => IntFeasibility::UnknownUpToBound(bound),
    })
}

/// Exhaustive search for `x ≥ 0` supported on `cols` with `A x = b` and
/// `Σ x ≤ bound`, by increasing coordinate sum. Columns are chosen in
/// non-decreasing index order; failed states are memoized.
fn bounded_search(a: &IntMatrix, b: &IntVector, cols: &[usize], bound: u64) -> Option<IntVector> {
    let cols: Vec<usize> = cols.iter().copied().filter(|&j| !a.column(j).is_zero()).collect();
    let colvecs: Vec<IntVector> = cols.iter().map(|&j| a.column(j)).collect();
    // a grading positive on every column bounds the residual and prunes
    let grading = positive_grading(&colvecs, a.rows());
    let degrees: Option<Vec<BigRational>> = grading.as_ref().map(|y| colvecs.iter().map(|c| y.dot_int(c)).collect());
    if let Some(y) = &grading {
        if y.dot_int(b).is_negative() {
            return None;
        }
    }
    let mut failed: HashSet<(IntVector, u64, usize)> = HashSet::new();
    let mut path = Vec::new();
    for total in 0..=bound {
        if dfs(b, total, 0, &colvecs, &grading, &degrees, &mut failed, &mut path) {
            let mut x = IntVector::zeros(a.cols()).into_coords();
            for &k in &path {
                x[cols[k]] += 1;
            }
            return Some(IntVector::new(x));
        }
        if let (Some(y), Some(d)) = (&grading, &degrees) {
            // every further total needs at least total·min degree
            let min = d.iter().min().expect("nonempty");
            let need = min * BigRational::from_integer(BigInt::from(total + 1));
            if y.dot_int(b) < need {
                return None;
            }
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    residual: &IntVector,
    remaining: u64,
    start: usize,
    cols: &[IntVector],
    grading: &Option<RatVector>,
    degrees: &Option<Vec<BigRational>>,
    failed: &mut HashSet<(IntVector, u64, usize)>,
    path: &mut Vec<usize>,
) -> bool {
    if remaining == 0 {
        return residual.is_zero();
    }
    if let (Some(y), Some(d)) = (grading, degrees) {
        let deg = y.dot_int(residual);
        let avail = &d[start..];
        let (Some(lo), Some(hi)) = (avail.iter().min(), avail.iter().max()) else {
            return false;
        };
        let r = BigRational::from_integer(BigInt::from(remaining));
        if deg < lo * &r || deg > hi * &r {
            return false;
        }
    }
    let key = (residual.clone(), remaining, start);
    if failed.contains(&key) {
        return false;
    }
    for k in start..cols.len() {
        let next = residual - &cols[k];
        path.push(k);
        if dfs(&next, remaining - 1, k, cols, grading, degrees, failed, path) {
            return true;
        }
        path.pop();
    }
    failed.insert(key);
    false
}

/// A rational `y` with `⟨y, c⟩ ≥ 1` for every column, if one exists.
fn positive_grading(cols: &[IntVector], m: usize) -> Option<RatVector> {
    if cols.is_empty() {
        return None;
    }
    let a = IntMatrix::from_columns(m, cols).ok()?;
    // yᵀA − s = 1 with y = y⁺ − y⁻
    let n = cols.len();
    let q = |v: &BigInt| BigRational::from_integer(v.clone());
    let nv = 2 * m + n;
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut row = vec![BigRational::zero(); nv];
            for i in 0..m {
                row[i] = q(a.get(i, j));
                row[m + i] = -q(a.get(i, j));
            }
            row[2 * m + j] = -BigRational::from_integer(1.into());
            row
        })
        .collect();
    let rhs = vec![BigRational::from_integer(1.into()); n];
    match lp::feasible(&rows, &rhs, nv) {
        LpOutcome::Feasible(x) => Some(RatVector::new((0..m).map(|i| &x[i] - &x[m + i]).collect())),
        LpOutcome::Infeasible(_) => None,
    }
}
