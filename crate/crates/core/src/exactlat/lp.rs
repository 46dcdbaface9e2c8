//! Exact rational feasibility LP, `{x ≥ 0 : A x = b}`, by the two-phase
//! simplex method's first phase with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) enum LpOutcome {
    /// A feasible point.
    Feasible(Vec<BigRational>),
    /// A Farkas functional `y` with `yᵀA ≥ 0` and `yᵀb < 0`.
    Infeasible(Vec<BigRational>),
}

/// Decide feasibility of `{x ∈ ℚ^n_{≥0} : A x = b}` for an `m × n` matrix.
pub(crate) fn feasible(a: &[Vec<BigRational>], b: &[BigRational], n: usize) -> LpOutcome {
    let m = a.len();
    if m == 0 {
        return LpOutcome::Feasible(vec![BigRational::zero(); n]);
    }
    // rows flipped so that the right-hand side is nonnegative
    let signs: Vec<bool> = b.iter().map(|bi| bi.is_negative()).collect();
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            for j in 0..n {
                row.push(if signs[i] { -a[i][j].clone() } else { a[i][j].clone() });
            }
            for k in 0..m {
                row.push(if k == i { BigRational::one() } else { BigRational::zero() });
            }
            row.push(b[i].abs());
            row
        })
        .collect();
    // reduced costs of min Σ artificials
    let mut z: Vec<BigRational> = vec![BigRational::zero(); width];
    for j in 0..width {
        if (n..n + m).contains(&j) {
            continue;
        }
        let s: BigRational = t.iter().map(|row| row[j].clone()).sum();
        z[j] = -s;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| z[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero, so a leaving row always exists
        let (r, _) = leave.expect("phase-one simplex is bounded");
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        if !z[enter].is_zero() {
            let f = z[enter].clone();
            for (x, p) in z.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        basis[r] = enter;
    }

    // objective value = −z[rhs]
    let value = -z[width - 1].clone();
    if value.is_positive() {
        // dual of the flipped system: y'_i = 1 − rc(artificial_i); Farkas y = −y'
        let y = (0..m)
            .map(|i| {
                let yi = BigRational::one() - &z[n + i];
                if signs[i] {
                    yi
                } else {
                    -yi
                }
            })
            .collect();
        LpOutcome::Infeasible(y)
    } else {
        let mut x = vec![BigRational::zero(); n];
        for (i, &bj) in basis.iter().enumerate() {
            if bj < n {
                x[bj] = t[i][width - 1].clone();
            }
        }
        LpOutcome::Feasible(x)
    }
}
