//! Holes, Hilbert bases and module generators of `𝔉_sat` over 𝔉.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::region::{from_point, Point};
use super::{AffineSemigroup, SemigroupError};
use crate::cones::Cone;
use crate::exactlat::{hermite_basis, IntVector};

/// Generators of `𝔉_sat` as an 𝔉-module, found by scanning levels up to
/// `certified_up_to`. `complete` is set once that bound passes
/// [`AffineSemigroup::completeness_bound`], after which no generator can
/// have been missed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleGens {
    pub gens: Vec<IntVector>,
    pub certified_up_to: u64,
    pub complete: bool,
}

impl AffineSemigroup {
    /// Lattice points of σ∨ up to the given level, sorted by level then lexicographically.
    pub fn saturation_points(&self, bound: u64) -> Result<Vec<IntVector>, SemigroupError> {
        Ok(self.region(bound)?.iter().map(|p| from_point(p)).collect())
    }

    /// `𝔉_sat ∖ 𝔉` up to the given level, sorted by level then lexicographically.
    pub fn saturation_holes(&self, bound: u64) -> Result<Vec<IntVector>, SemigroupError> {
        let region = self.region(bound)?;
        let table = self.members_in(&region)?;
        Ok(region.iter().filter(|p| !table.contains(*p)).map(|p| from_point(p)).collect())
    }

    /// Irreducible elements of `𝔉_sat` up to the given level.
    ///
    /// When σ∨ has a lineality space `L` every element is reducible, so the
    /// result is instead a generating set: a basis of the unit group
    /// `L ∩ ℤ^r` with both signs, followed by lifts of the irreducible
    /// elements of the pointed quotient `𝔉_sat / (L ∩ ℤ^r)`.
    pub fn hilbert_basis(&self, bound: u64) -> Result<Vec<IntVector>, SemigroupError> {
        let Some(units) = &self.units else {
            return self.pointed_hilbert_basis(bound);
        };
        let split = &units.split;
        let kernel = hermite_basis(split.kernel()).expect("lineality is nontrivial");
        let mut out = Vec::new();
        for k in kernel.basis_rows() {
            out.push(k.clone());
            out.push(-k);
        }
        if split.rank() > 0 {
            let projected: Vec<IntVector> =
                self.gens.iter().map(|g| split.project(g)).filter(|g| !g.is_zero()).collect();
            let cone = Cone::from_generators(split.rank(), &projected).expect("equal dimensions");
            let w = split.pull_functional(&self.grading);
            let inner = AffineSemigroup::assemble(projected, cone, w)?;
            out.extend(inner.pointed_hilbert_basis(bound)?.iter().map(|q| split.lift(q)));
        }
        Ok(out)
    }

    fn pointed_hilbert_basis(&self, bound: u64) -> Result<Vec<IntVector>, SemigroupError> {
        let region = self.region(bound)?;
        let facets: Vec<Point> = self.cone.facets().iter().map(super::region::to_point).collect::<Result<_, _>>()?;
        let inside =
            |p: &[i64]| facets.iter().all(|f| f.iter().zip(p).map(|(a, b)| *a as i128 * *b as i128).sum::<i128>() >= 0);
        let mut basis: Vec<Point> = Vec::new();
        for p in region.iter().skip(1) {
            let reducible = basis.iter().any(|h| {
                let q: Point = p.iter().zip(h).map(|(a, b)| a - b).collect();
                inside(&q)
            });
            if !reducible {
                basis.push(p.clone());
            }
        }
        Ok(basis.iter().map(|p| from_point(p)).collect())
    }

    /// Scan `𝔉_sat` by level; keep an element iff it is not in `m + 𝔉` for
    /// a generator `m` kept earlier. The first generator is always 0.
    pub fn module_generators(&self, bound: u64) -> Result<ModuleGens, SemigroupError> {
        let region = self.region(bound)?;
        let table = self.members_in(&region)?;
        let mut gens: Vec<Point> = Vec::new();
        for p in &region {
            if table.contains(p) {
                if gens.is_empty() {
                    gens.push(p.clone());
                }
                continue;
            }
            let covered = gens.iter().skip(1).any(|m| {
                let q: Point = p.iter().zip(m).map(|(a, b)| a - b).collect();
                if self.is_pointed() {
                    table.contains(&q)
                } else {
                    self.member(&from_point(&q))
                }
            });
            if !covered {
                gens.push(p.clone());
            }
        }
        let complete = BigInt::from(bound) + 1 >= self.completeness_bound();
        Ok(ModuleGens { gens: gens.iter().map(|p| from_point(p)).collect(), certified_up_to: bound, complete })
    }

    /// `p + m ∈ 𝔉` for every module generator `m`, i.e. `p + σ∨` has no holes
    /// (exact when `mg` is complete).
    pub fn is_saturation_point(&self, mg: &ModuleGens, p: &IntVector) -> Result<bool, SemigroupError> {
        if !self.member(p) {
            return Err(SemigroupError::NotInSemigroup(p.clone()));
        }
        Ok(mg.gens.iter().all(|m| self.member(&(p + m))))
    }

    /// Hilbert basis of `C ∩ ℤ^r` for a full-dimensional cone `C`, graded
    /// by the sum of the rays of `C∨`.
    pub fn cone_hilbert_basis(cone: &Cone, bound: u64) -> Result<Vec<IntVector>, SemigroupError> {
        if !cone.is_full_dimensional() {
            return Err(SemigroupError::NotFullLattice(cone.ambient_dim()));
        }
        let grading = cone.dual().relative_interior_point();
        let shell = AffineSemigroup::assemble(cone.generators(), cone.clone(), grading)?;
        shell.hilbert_basis(bound)
    }

    /// Default enumeration bound: eight times the largest generator level.
    pub fn default_bound(&self) -> u64 {
        (self.max_generator_level() * 8u32).to_u64().unwrap_or(u64::MAX)
    }
}
