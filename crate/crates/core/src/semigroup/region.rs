//! Level-bounded lattice points of σ∨, enumerated with machine integers.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{AffineSemigroup, SemigroupError};
use crate::exactlat::IntVector;

pub(crate) type Point = Vec<i64>;

pub(crate) fn to_point(v: &IntVector) -> Result<Point, SemigroupError> {
    v.to_i64s().ok_or(SemigroupError::TooLarge)
}

pub(crate) fn from_point(p: &[i64]) -> IntVector {
    IntVector::from_i64s(p)
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(x, y)| *x as i128 * *y as i128).sum()
}

impl AffineSemigroup {
    pub(crate) fn level_of_point(&self, w: &[i64], p: &[i64]) -> i128 {
        let d = dot(w, p);
        if self.is_pointed() {
            d
        } else {
            d.max(p.iter().map(|x| x.unsigned_abs() as i128).max().unwrap_or(0))
        }
    }

    /// Points of `σ∨ ∩ ℤ^r` with level at most `bound`, sorted by level and
    /// then lexicographically.
    pub(crate) fn region(&self, bound: u64) -> Result<Vec<Point>, SemigroupError> {
        let r = self.rank;
        let w = to_point(&self.grading)?;
        let facets: Vec<Point> = self.cone.facets().iter().map(to_point).collect::<Result<_, _>>()?;
        let d = bound as i64;
        // box: the pointed slice {x ∈ σ∨ : ⟨w,x⟩ ≤ D} is conv(0, D·ρ/⟨w,ρ⟩)
        let (lo, hi): (Vec<i64>, Vec<i64>) = if self.is_pointed() {
            let mut lo = vec![0i64; r];
            let mut hi = vec![0i64; r];
            for ray in self.cone.rays() {
                let deg = self.grading.dot(ray);
                for i in 0..r {
                    let t = BigRational::new(&ray[i] * BigInt::from(d), deg.clone());
                    lo[i] = lo[i].min(t.floor().to_integer().to_i64().ok_or(SemigroupError::TooLarge)?);
                    hi[i] = hi[i].max(t.ceil().to_integer().to_i64().ok_or(SemigroupError::TooLarge)?);
                }
            }
            (lo, hi)
        } else {
            (vec![-d; r], vec![d; r])
        };

        let mut out: Vec<(i128, Point)> = Vec::new();
        let mut x = lo.clone();
        'odometer: loop {
            if facets.iter().all(|f| dot(f, &x) >= 0) {
                let lv = self.level_of_point(&w, &x);
                if lv <= d as i128 {
                    out.push((lv, x.clone()));
                }
            }
            for i in (0..r).rev() {
                if x[i] < hi[i] {
                    x[i] += 1;
                    continue 'odometer;
                }
                x[i] = lo[i];
            }
            break;
        }
        out.sort();
        Ok(out.into_iter().map(|(_, p)| p).collect())
    }

    /// The members of 𝔉 among `region` (which must be level-sorted and
    /// closed under the orders used below).
    ///
    /// When σ∨ is pointed, `x ≠ 0` is in 𝔉 iff `x − g ∈ 𝔉` for some
    /// generator `g`, and `x − g` has smaller degree, so one pass in degree
    /// order decides the whole region.
    pub(crate) fn members_in(&self, region: &[Point]) -> Result<HashSet<Point>, SemigroupError> {
        let mut table: HashSet<Point> = HashSet::new();
        if !self.is_pointed() {
            for p in region {
                if self.member(&from_point(p)) {
                    table.insert(p.clone());
                }
            }
            return Ok(table);
        }
        let gens: Vec<Point> = self.gens.iter().map(to_point).collect::<Result<_, _>>()?;
        for p in region {
            let hit = p.iter().all(|c| *c == 0)
                || gens.iter().any(|g| {
                    let q: Point = p.iter().zip(g).map(|(a, b)| a - b).collect();
                    table.contains(&q)
                });
            if hit {
                table.insert(p.clone());
            }
        }
        Ok(table)
    }
}
