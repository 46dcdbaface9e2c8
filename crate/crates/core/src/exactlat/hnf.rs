//! Lattices in Hermite normal form.
//!
//! Convention: basis rows are in row echelon form with pivots in strictly
//! increasing columns, every pivot is positive, and every other entry in a
//! pivot column is reduced into `[0, pivot)`. The form is unique, so two
//! lattices are equal exactly when their bases are equal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::linalg::orthogonal_residual;
use super::vector::{IntVector, RatVector};
use super::LatError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticeBasis {
    ambient_dim: usize,
    rows: Vec<IntVector>,
    pivots: Vec<usize>,
}

impl LatticeBasis {
    /// The zero lattice in `ℤ^ambient_dim`.
    pub fn zero(ambient_dim: usize) -> Self {
        LatticeBasis { ambient_dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn standard(dim: usize) -> Self {
        LatticeBasis {
            ambient_dim: dim,
            rows: (0..dim).map(|i| IntVector::unit(dim, i)).collect(),
            pivots: (0..dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis_rows(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// `Σ c_i · basis_i`
    pub fn combine(&self, coords: &IntVector) -> IntVector {
        let mut out = IntVector::zeros(self.ambient_dim);
        for (c, row) in coords.coords().iter().zip(&self.rows) {
            out = out.combine(&BigInt::one(), row, c);
        }
        out
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        coordinates_in_lattice(v, self).is_some()
    }

    /// Canonical representative of `v` modulo the lattice: each pivot
    /// coordinate is reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &IntVector) -> IntVector {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let q = out[p].div_floor(&row[p]);
            if !q.is_zero() {
                out = out.combine(&BigInt::one(), row, &-q);
            }
        }
        out
    }
}

/// HNF basis of the integer span of `generators`.
pub fn hermite_basis(generators: &[IntVector]) -> Result<LatticeBasis, LatError> {
    let first = generators.first().ok_or(LatError::EmptyInput)?;
    let n = first.dim();
    if let Some(bad) = generators.iter().find(|g| g.dim() != n) {
        return Err(LatError::ShapeMismatch { expected: n, found: bad.dim() });
    }
    Ok(hnf_rows(n, generators.iter().map(|g| g.coords().to_vec()).collect()))
}

pub(crate) fn hnf_rows(n: usize, mut m: Vec<Vec<BigInt>>) -> LatticeBasis {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m.len() {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let best = (r..m.len()).filter(|&i| !m[i][c].is_zero()).min_by(|&x, &y| m[x][c].abs().cmp(&m[y][c].abs()));
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut clean = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    let (head, tail) = m.split_at_mut(i);
                    for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                        *x -= &q * y;
                    }
                    if !m[i][c].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -&*x;
                }
            }
            let p = m[r][c].clone();
            for i in 0..r {
                let q = m[i][c].div_floor(&p);
                if !q.is_zero() {
                    let (head, tail) = m.split_at_mut(r);
                    for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                        *x -= &q * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    m.truncate(r);
    LatticeBasis { ambient_dim: n, rows: m.into_iter().map(IntVector::new).collect(), pivots }
}

/// Integer coordinates of `v` in the basis of `lattice`, or `None` when
/// `v` is not a lattice vector.
pub fn coordinates_in_lattice(v: &IntVector, lattice: &LatticeBasis) -> Option<IntVector> {
    if v.dim() != lattice.ambient_dim {
        return None;
    }
    let mut residual = v.clone();
    let mut coords = Vec::with_capacity(lattice.rank());
    for (row, &pc) in lattice.rows.iter().zip(&lattice.pivots) {
        let (q, rem) = residual[pc].div_rem(&row[pc]);
        if !rem.is_zero() {
            return None;
        }
        residual = residual.combine(&BigInt::one(), row, &-&q);
        coords.push(q);
    }
    residual.is_zero().then(|| IntVector::new(coords))
}

/// A rational functional `z` with `⟨z, b⟩ ∈ ℤ` for every lattice vector `b`
/// and `⟨z, v⟩ ∉ ℤ`, proving `v ∉ lattice`. `None` when `v` is in the lattice.
pub fn lattice_separator(lattice: &LatticeBasis, v: &IntVector) -> Option<RatVector> {
    let dim = lattice.ambient_dim;
    let residual = orthogonal_residual(v, &lattice.rows);
    if !residual.is_zero() {
        // v leaves the span: scale the orthogonal part so that ⟨z, v⟩ = 1/2
        let nv = residual
            .coords()
            .iter()
            .zip(v.coords())
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * BigRational::from_integer(b.clone()));
        let scale = (nv * BigRational::from_integer(BigInt::from(2))).recip();
        return Some(RatVector::new(residual.coords().iter().map(|c| c * &scale).collect()));
    }
    // v in the span: rational echelon coordinates, one of them fractional
    let mut res: Vec<BigRational> = v.coords().iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let mut t = Vec::with_capacity(lattice.rank());
    for (row, &pc) in lattice.rows.iter().zip(&lattice.pivots) {
        let ti = &res[pc] / BigRational::from_integer(row[pc].clone());
        for (x, y) in res.iter_mut().zip(row.coords()) {
            *x -= &ti * BigRational::from_integer(y.clone());
        }
        t.push(ti);
    }
    let i = t.iter().position(|ti| !ti.is_integer())?;
    // dual basis vector supported on pivot columns: ⟨z, row_j⟩ = δ_ij
    let k = lattice.rank();
    let mut zeta = vec![BigRational::zero(); k];
    for l in (0..k).rev() {
        // Σ_{j≥l} row_l[pc_j] ζ_j = δ_il; row_l[pc_j] = 0 for j < l
        let mut acc = if l == i { BigRational::one() } else { BigRational::zero() };
        for j in l + 1..k {
            acc -= BigRational::from_integer(lattice.rows[l][lattice.pivots[j]].clone()) * &zeta[j];
        }
        zeta[l] = acc / BigRational::from_integer(lattice.rows[l][lattice.pivots[l]].clone());
    }
    let mut z = vec![BigRational::zero(); dim];
    for (l, &pc) in lattice.pivots.iter().enumerate() {
        z[pc] = zeta[l].clone();
    }
    Some(RatVector::new(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_canonical() {
        let l = hermite_basis(&[crate::ivec![2, 1], crate::ivec![0, 3]]).unwrap();
        let a = l.reduce(&crate::ivec![7, -4]);
        let b = l.reduce(&(&crate::ivec![7, -4] + &crate::ivec![-6, 6]));
        assert_eq!(a, b);
        assert!(l.contains(&(&crate::ivec![7, -4] - &a)));
    }
    use crate::ivec;

    #[test]
    fn hnf_of_example_generators() {
        let b = hermite_basis(&[ivec![2, 0], ivec![1, 1], ivec![0, 1]]).unwrap();
        assert_eq!(b.basis_rows(), &[ivec![1, 0], ivec![0, 1]]);
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn hnf_single_generator() {
        let b = hermite_basis(&[ivec![2, 0]]).unwrap();
        assert_eq!(b.basis_rows(), &[ivec![2, 0]]);
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn hnf_second_example() {
        let b = hermite_basis(&[ivec![2, 0], ivec![1, 1], ivec![1, 2]]).unwrap();
        assert_eq!(b.basis_rows(), &[ivec![1, 0], ivec![0, 1]]);
        // brute-force span check in a 5×5 box: every box point is an
        // integer combination with small coefficients
        for x in -2..=2i64 {
            for y in -2..=2i64 {
                let mut found = false;
                'search: for a in -6..=6i64 {
                    for c in -6..=6i64 {
                        for d in -6..=6i64 {
                            if 2 * a + c + d == x && c + 2 * d == y {
                                found = true;
                                break 'search;
                            }
                        }
                    }
                }
                assert!(found, "({x},{y}) not in span");
            }
        }
    }

    #[test]
    fn hnf_rejects_empty() {
        assert_eq!(hermite_basis(&[]), Err(LatError::EmptyInput));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let b = hermite_basis(&[ivec![2, 8], ivec![0, -5]]).unwrap();
        assert_eq!(b.basis_rows(), &[ivec![2, 3], ivec![0, 5]]);
        // idempotent
        assert_eq!(hermite_basis(b.basis_rows()).unwrap(), b);
    }

    #[test]
    fn coordinates_examples() {
        let std2 = LatticeBasis::standard(2);
        assert_eq!(coordinates_in_lattice(&ivec![1, 1], &std2), Some(ivec![1, 1]));
        let l = hermite_basis(&[ivec![2, 0]]).unwrap();
        assert_eq!(coordinates_in_lattice(&ivec![3, 0], &l), None);
        assert_eq!(coordinates_in_lattice(&ivec![4, 0], &l), Some(ivec![2]));
    }

    #[test]
    fn separator_certifies_non_membership() {
        let l = hermite_basis(&[ivec![2, 0], ivec![0, 1]]).unwrap();
        let z = lattice_separator(&l, &ivec![1, 0]).unwrap();
        for b in l.basis_rows() {
            assert!(z.dot_int(b).is_integer());
        }
        assert!(!z.dot_int(&ivec![1, 0]).is_integer());
        assert!(lattice_separator(&l, &ivec![2, 5]).is_none());
        // out of span
        let l = hermite_basis(&[ivec![1, 1]]).unwrap();
        let z = lattice_separator(&l, &ivec![1, 0]).unwrap();
        assert!(z.dot_int(&ivec![1, 1]).is_integer());
        assert!(!z.dot_int(&ivec![1, 0]).is_integer());
    }
}
