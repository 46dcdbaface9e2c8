//! Exact rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::vector::{primitive_vector, IntVector, RatVector};

pub(crate) fn to_rat_rows(rows: &[IntVector]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.coords().iter().map(|c| BigRational::from_integer(c.clone())).collect()).collect()
}

/// Reduced row echelon form in place, pivoting only within the first
/// `ncols` columns (later columns ride along as augmentation). Returns the
/// pivot columns.
pub(crate) fn rref(m: &mut Vec<Vec<BigRational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rank(rows: &[IntVector]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut m = to_rat_rows(rows);
    rref(&mut m, first.dim()).len()
}

/// Canonical integer basis of the rational span of `vectors` in `ℚ^dim`:
/// the rows of the reduced row echelon form, each scaled to a primitive
/// integer vector with positive leading entry.
pub fn canonical_subspace_basis(dim: usize, vectors: &[IntVector]) -> Vec<IntVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = to_rat_rows(vectors);
    rref(&mut m, dim);
    m.into_iter().filter_map(|row| RatVector::new(row).to_primitive_int()).collect()
}

/// Integer vectors spanning `{x ∈ ℚ^dim : ⟨r, x⟩ = 0 for every row r}`,
/// in canonical form.
pub fn orthogonal_complement(dim: usize, rows: &[IntVector]) -> Vec<IntVector> {
    let mut m = to_rat_rows(rows);
    let pivots = rref(&mut m, dim);
    let mut basis = Vec::new();
    for free in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); dim];
        v[free] = BigRational::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        if let Some(iv) = RatVector::new(v).to_primitive_int() {
            basis.push(iv);
        }
    }
    canonical_subspace_basis(dim, &basis)
}

/// Orthogonal projection of `v` onto the complement of span(`basis`) with
/// respect to the standard dot product, rescaled to a primitive integer
/// vector. `None` when `v` lies in the span.
pub fn project_out(v: &IntVector, basis: &[IntVector]) -> Option<IntVector> {
    if basis.is_empty() {
        return primitive_vector(v).ok();
    }
    let residual = orthogonal_residual(v, basis);
    residual.to_primitive_int()
}

/// `v − proj_{span(basis)}(v)` as an exact rational vector.
pub(crate) fn orthogonal_residual(v: &IntVector, basis: &[IntVector]) -> RatVector {
    let dim = v.dim();
    if basis.is_empty() {
        return v.to_rational();
    }
    // Gram system (B Bᵀ) t = B v
    let k = basis.len();
    let mut aug: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigRational> =
                (0..k).map(|j| BigRational::from_integer(basis[i].dot(&basis[j]))).collect();
            row.push(BigRational::from_integer(basis[i].dot(v)));
            row
        })
        .collect();
    let pivots = rref(&mut aug, k);
    let mut t = vec![BigRational::zero(); k];
    for (row, &pc) in aug.iter().zip(&pivots) {
        t[pc] = row[k].clone();
    }
    let mut out: Vec<BigRational> = v.coords().iter().map(|c| BigRational::from_integer(c.clone())).collect();
    for (ti, b) in t.iter().zip(basis) {
        for (o, bc) in out.iter_mut().zip(b.coords()).take(dim) {
            *o -= ti * BigRational::from_integer(bc.clone());
        }
    }
    RatVector::new(out)
}

/// Exact determinant of a square integer matrix (fraction-free Bareiss).
pub fn determinant(rows: &[IntVector]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// A ℤ-basis of the lattice `{x ∈ ℤ^dim : ⟨r, x⟩ = 0 for every row r}`.
pub fn integer_kernel(dim: usize, rows: &[IntVector]) -> Vec<IntVector> {
    let split = KernelSplit::new(dim, rows);
    split.kernel().to_vec()
}

/// A unimodular change of coordinates `x = U y` adapted to the integer
/// kernel `K` of a row matrix `A`: the last columns of `U` are a basis of
/// `K`, so the first `rank` coordinates of `U⁻¹ x` identify `ℤ^dim / K`
/// with `ℤ^rank`.
///
/// Built by integer column operations reducing `A` to column echelon form
/// while the same operations are applied to the identity.
#[derive(Clone, Debug)]
pub struct KernelSplit {
    rank: usize,
    u_cols: Vec<IntVector>,
    u_inv_rows: Vec<IntVector>,
}

impl KernelSplit {
    pub fn new(dim: usize, rows: &[IntVector]) -> Self {
        let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.coords().to_vec()).collect();
        let mut u: Vec<Vec<BigInt>> =
            (0..dim).map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        let col_op = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, f: &BigInt| {
            for row in m.iter_mut() {
                let t = &row[src] * f;
                row[dst] -= t;
            }
        };
        let swap_cols = |m: &mut Vec<Vec<BigInt>>, x: usize, y: usize| {
            for row in m.iter_mut() {
                row.swap(x, y);
            }
        };
        let mut pc = 0;
        for r in 0..a.len() {
            if pc == dim {
                break;
            }
            loop {
                // smallest nonzero |entry| among columns pc.. in row r
                let best = (pc..dim).filter(|&j| !a[r][j].is_zero()).min_by(|&x, &y| a[r][x].abs().cmp(&a[r][y].abs()));
                let Some(b) = best else { break };
                swap_cols(&mut a, pc, b);
                swap_cols(&mut u, pc, b);
                let mut done = true;
                for j in pc + 1..dim {
                    if !a[r][j].is_zero() {
                        let q = num_integer::Integer::div_floor(&a[r][j], &a[r][pc]);
                        col_op(&mut a, j, pc, &q);
                        col_op(&mut u, j, pc, &q);
                        if !a[r][j].is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    pc += 1;
                    break;
                }
            }
        }
        let u_cols: Vec<IntVector> =
            (0..dim).map(|j| IntVector::new(u.iter().map(|row| row[j].clone()).collect())).collect();
        let u_inv_rows = unimodular_inverse_rows(dim, &u);
        KernelSplit { rank: pc, u_cols, u_inv_rows }
    }

    /// Rank of the quotient `ℤ^dim / K`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kernel(&self) -> &[IntVector] {
        &self.u_cols[self.rank..]
    }

    /// Coordinates of the class of `x` in `ℤ^dim / K ≅ ℤ^rank`.
    pub fn project(&self, x: &IntVector) -> IntVector {
        IntVector::new(self.u_inv_rows[..self.rank].iter().map(|r| r.dot(x)).collect())
    }

    /// A representative of the class with quotient coordinates `q`.
    pub fn lift(&self, q: &IntVector) -> IntVector {
        let dim = self.u_cols.len();
        let mut out = IntVector::zeros(dim);
        for (c, col) in q.coords().iter().zip(&self.u_cols) {
            out = out.combine(&BigInt::one(), col, c);
        }
        out
    }

    /// Pull a functional on `ℤ^dim` that vanishes on `K` back to quotient coordinates.
    pub fn pull_functional(&self, w: &IntVector) -> IntVector {
        IntVector::new(self.u_cols[..self.rank].iter().map(|c| c.dot(w)).collect())
    }
}

fn unimodular_inverse_rows(dim: usize, u: &[Vec<BigInt>]) -> Vec<IntVector> {
    let mut aug: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| {
            let mut row: Vec<BigRational> = u[i].iter().map(|c| BigRational::from_integer(c.clone())).collect();
            row.extend((0..dim).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    rref(&mut aug, dim);
    aug.into_iter().map(|row| IntVector::new(row[dim..].iter().map(|c| c.to_integer()).collect())).collect()
}
