//! Affine semigroups `𝔉 ⊆ ℤ^r` whose generators span `ℤ^r`: membership,
//! holes, Hilbert bases, module generators of the saturation and the
//! almost/nowhere saturated decision for faces.
//!
//! Enumerations are graded. `w`, the sum of the primitive rays of σ, is
//! positive on `σ∨ ∖ L` where `L` is the lineality space of σ∨. The *level*
//! of a point is `⟨w, x⟩` when σ∨ is pointed and `max(⟨w, x⟩, ‖x‖∞)`
//! otherwise; every level-bounded part of σ∨ is finite.

mod faces;
mod modules;
mod region;

pub use faces::{Obstruction, SaturationStatus, ShiftBranch};
pub use modules::ModuleGens;

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cones::Cone;
use crate::exactlat::linalg::orthogonal_complement;
use crate::exactlat::{hermite_basis, lp_feasible, IntMatrix, IntVector, KernelSplit, LatticeBasis, LpOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("no nonzero generators")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("generators span a proper sublattice of Z^{0}")]
    NotFullLattice(usize),
    #[error("{0} is not in the semigroup")]
    NotInSemigroup(IntVector),
    #[error("coordinates too large for lattice-point enumeration")]
    TooLarge,
}

/// Data for a saturation cone with lineality: generators inside `L` span the
/// group `ℤG₀ = ℕG₀`, and `split` identifies `ℤ^r / (L ∩ ℤ^r)`.
#[derive(Clone, Debug)]
struct Units {
    in_lineality: Vec<usize>,
    lattice: LatticeBasis,
    split: KernelSplit,
    group: GroupCoords,
}

/// Nonnegative integer coordinates in a family `G₀` with `ℕG₀ = ℤG₀`:
/// integer coordinates from a column echelon form, then shifted by a
/// relation `Σ c_i g_i = 0` with every `c_i ≥ 1`.
#[derive(Clone, Debug)]
struct GroupCoords {
    split: KernelSplit,
    echelon: Vec<IntVector>,
    relation: IntVector,
}

impl GroupCoords {
    fn new(r: usize, g0: &[IntVector]) -> GroupCoords {
        let k = g0.len();
        let rows: Vec<IntVector> = (0..r).map(|i| IntVector::new(g0.iter().map(|g| g[i].clone()).collect())).collect();
        let split = KernelSplit::new(k, &rows);
        let apply = |y: &IntVector| {
            g0.iter().zip(y.coords()).fold(IntVector::zeros(r), |acc, (g, c)| acc.combine(&BigInt::one(), g, c))
        };
        let echelon = (0..split.rank()).map(|j| apply(&split.lift(&IntVector::unit(split.rank(), j)))).collect();
        // c = 1 + z with z ≥ 0 and Σ z_i g_i = −Σ g_i
        let q = |x: &BigInt| BigRational::from_integer(x.clone());
        let a: Vec<Vec<BigRational>> = rows.iter().map(|row| row.coords().iter().map(q).collect()).collect();
        let b: Vec<BigRational> = rows.iter().map(|row| -q(&row.coords().iter().sum::<BigInt>())).collect();
        let LpOutcome::Feasible(z) = lp_feasible(&a, &b, k) else {
            unreachable!("generators of a linear space admit a positive relation")
        };
        let den = z.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let relation = IntVector::new(z.iter().map(|x| ((x + BigRational::one()) * q(&den)).to_integer()).collect());
        GroupCoords { split, echelon, relation }
    }

    fn solve(&self, target: &IntVector) -> Option<IntVector> {
        let mut residual = target.clone();
        let mut zc = Vec::with_capacity(self.echelon.len());
        for col in &self.echelon {
            let p = col.coords().iter().position(|c| !c.is_zero())?;
            let (t, rem) = residual[p].div_rem(&col[p]);
            if !rem.is_zero() {
                return None;
            }
            residual = residual.combine(&BigInt::one(), col, &-&t);
            zc.push(t);
        }
        if !residual.is_zero() {
            return None;
        }
        let y = self.split.lift(&IntVector::new(zc));
        let t = y
            .coords()
            .iter()
            .zip(self.relation.coords())
            .map(|(yi, ci)| if yi.is_negative() { (-yi).div_ceil(ci) } else { BigInt::zero() })
            .max()
            .unwrap_or_else(BigInt::zero);
        Some(y.combine(&BigInt::one(), &self.relation, &t))
    }
}

pub struct AffineSemigroup {
    gens: Vec<IntVector>,
    rank: usize,
    cone: Cone,
    grading: IntVector,
    matrix: IntMatrix,
    units: Option<Units>,
    memo: Mutex<HashMap<IntVector, bool>>,
}

impl Clone for AffineSemigroup {
    fn clone(&self) -> Self {
        AffineSemigroup {
            gens: self.gens.clone(),
            rank: self.rank,
            cone: self.cone.clone(),
            grading: self.grading.clone(),
            matrix: self.matrix.clone(),
            units: self.units.clone(),
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for AffineSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineSemigroup")
            .field("gens", &self.gens)
            .field("cone", &self.cone)
            .field("grading", &self.grading)
            .finish()
    }
}

impl AffineSemigroup {
    /// Zero and repeated generators are dropped; the rest keep their order.
    pub fn new(gens: &[IntVector]) -> Result<Self, SemigroupError> {
        let first = gens.first().ok_or(SemigroupError::EmptyInput)?;
        let r = first.dim();
        if let Some(bad) = gens.iter().find(|g| g.dim() != r) {
            return Err(SemigroupError::ShapeMismatch { expected: r, found: bad.dim() });
        }
        let mut kept: Vec<IntVector> = Vec::new();
        for g in gens {
            if !g.is_zero() && !kept.contains(g) {
                kept.push(g.clone());
            }
        }
        if kept.is_empty() || r == 0 {
            return Err(SemigroupError::EmptyInput);
        }
        let lattice = hermite_basis(&kept).expect("nonempty, equal dimensions");
        if lattice != LatticeBasis::standard(r) {
            return Err(SemigroupError::NotFullLattice(r));
        }
        let cone = Cone::from_generators(r, &kept).expect("equal dimensions");
        let grading = cone.dual().relative_interior_point();
        AffineSemigroup::assemble(kept, cone, grading)
    }

    fn assemble(gens: Vec<IntVector>, cone: Cone, grading: IntVector) -> Result<Self, SemigroupError> {
        let r = grading.dim();
        let matrix = IntMatrix::from_columns(r, &gens).expect("equal dimensions");
        let units = if cone.is_strictly_convex() {
            None
        } else {
            let in_lineality: Vec<usize> = (0..gens.len()).filter(|&i| grading.dot(&gens[i]).is_zero()).collect();
            let g0: Vec<IntVector> = in_lineality.iter().map(|&i| gens[i].clone()).collect();
            let lattice = hermite_basis(&g0).expect("lineality is spanned by generators");
            let split = KernelSplit::new(r, &orthogonal_complement(r, cone.lines()));
            let group = GroupCoords::new(r, &g0);
            Some(Units { in_lineality, lattice, split, group })
        };
        Ok(AffineSemigroup { gens, rank: r, cone, grading, matrix, units, memo: Mutex::new(HashMap::new()) })
    }

    pub fn gens(&self) -> &[IntVector] {
        &self.gens
    }

    pub fn lattice_rank(&self) -> usize {
        self.rank
    }

    /// σ∨, the cone spanned by the generators.
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn grading(&self) -> &IntVector {
        &self.grading
    }

    pub fn is_pointed(&self) -> bool {
        self.units.is_none()
    }

    pub fn degree(&self, v: &IntVector) -> BigInt {
        self.grading.dot(v)
    }

    pub fn level(&self, v: &IntVector) -> BigInt {
        let d = self.degree(v);
        if self.is_pointed() {
            d
        } else {
            d.max(v.linf_norm())
        }
    }

    pub fn max_generator_level(&self) -> BigInt {
        self.gens.iter().map(|g| self.level(g)).max().expect("at least one generator")
    }

    /// Every element of `𝔉_sat` lies in `y + 𝔉` for some `y` with level
    /// below this value: write it in a simplicial subcone spanned by `r`
    /// independent generators and drop the integer parts of the coefficients.
    pub fn completeness_bound(&self) -> BigInt {
        let mut levels: Vec<BigInt> = self.gens.iter().map(|g| self.level(g)).collect();
        levels.sort_by(|a, b| b.cmp(a));
        levels.into_iter().take(self.rank).sum()
    }

    /// `v ∈ 𝔉_sat = σ∨ ∩ ℤ^r`
    pub fn in_saturation(&self, v: &IntVector) -> bool {
        self.cone.contains(v)
    }

    /// Exact membership in 𝔉 (memoized).
    pub fn member(&self, v: &IntVector) -> bool {
        if v.dim() != self.rank || !self.cone.contains(v) {
            return false;
        }
        match &self.units {
            None => self.member_pointed(v),
            Some(units) => self.member_mod_units(units, v),
        }
    }

    /// `x ∈ 𝔉` iff `x = 0` or `x − g ∈ 𝔉` for a generator `g`; every step
    /// lowers the degree, so a depth-first search over `σ∨` terminates.
    fn member_pointed(&self, v: &IntVector) -> bool {
        let mut memo = self.memo.lock().expect("membership cache poisoned");
        let mut stack = vec![v.clone()];
        while let Some(x) = stack.last().cloned() {
            if memo.contains_key(&x) {
                stack.pop();
                continue;
            }
            if x.is_zero() {
                memo.insert(x, true);
                stack.pop();
                continue;
            }
            let mut pending = Vec::new();
            let mut hit = false;
            for g in &self.gens {
                let y = &x - g;
                if !self.cone.contains(&y) {
                    continue;
                }
                match memo.get(&y) {
                    Some(true) => {
                        hit = true;
                        break;
                    }
                    Some(false) => {}
                    None => pending.push(y),
                }
            }
            if hit || pending.is_empty() {
                memo.insert(x, hit);
                stack.pop();
            } else {
                stack.extend(pending);
            }
        }
        memo[v]
    }

    /// Nonnegative multiplicities `c` with `Σ c_i g_i = v`, if any.
    pub fn representation(&self, v: &IntVector) -> Option<IntVector> {
        if v.dim() != self.rank || !self.cone.contains(v) {
            return None;
        }
        match &self.units {
            None => {
                if !self.member_pointed(v) {
                    return None;
                }
                let mut counts = vec![BigInt::zero(); self.gens.len()];
                let mut x = v.clone();
                while !x.is_zero() {
                    let (i, y) = self
                        .gens
                        .iter()
                        .enumerate()
                        .map(|(i, g)| (i, &x - g))
                        .find(|(_, y)| self.cone.contains(y) && self.member_pointed(y))
                        .expect("a member has a member predecessor");
                    counts[i] += 1;
                    x = y;
                }
                Some(IntVector::new(counts))
            }
            Some(units) => self.representation_with_units(units, v),
        }
    }

    /// Depth-first search over classes modulo `ℤG₀ = ℕG₀`: `x ∈ 𝔉` iff
    /// `x ∈ ℤG₀` or `x − g ∈ 𝔉` for a generator `g` of positive degree.
    fn member_mod_units(&self, units: &Units, v: &IntVector) -> bool {
        let v = units.lattice.reduce(v);
        let mut memo = self.memo.lock().expect("membership cache poisoned");
        let mut stack = vec![v.clone()];
        while let Some(x) = stack.last().cloned() {
            if memo.contains_key(&x) {
                stack.pop();
                continue;
            }
            if x.is_zero() {
                memo.insert(x, true);
                stack.pop();
                continue;
            }
            let mut pending = Vec::new();
            let mut hit = false;
            for g in self.positive_gens(units) {
                let y = units.lattice.reduce(&(&x - g));
                if !self.cone.contains(&y) {
                    continue;
                }
                match memo.get(&y) {
                    Some(true) => {
                        hit = true;
                        break;
                    }
                    Some(false) => {}
                    None => pending.push(y),
                }
            }
            if hit || pending.is_empty() {
                memo.insert(x, hit);
                stack.pop();
            } else {
                stack.extend(pending);
            }
        }
        memo[&v]
    }

    fn positive_gens<'a>(&'a self, units: &'a Units) -> impl Iterator<Item = &'a IntVector> + 'a {
        self.gens.iter().enumerate().filter(|(i, _)| !units.in_lineality.contains(i)).map(|(_, g)| g)
    }

    /// Peel off positive-degree generators along the membership search,
    /// then write the remainder in `ℕG₀`.
    fn representation_with_units(&self, units: &Units, v: &IntVector) -> Option<IntVector> {
        if !self.member_mod_units(units, v) {
            return None;
        }
        let mut x = vec![BigInt::zero(); self.gens.len()];
        let mut rest = v.clone();
        while !units.lattice.contains(&rest) {
            let (i, y) = self
                .gens
                .iter()
                .enumerate()
                .filter(|(i, _)| !units.in_lineality.contains(i))
                .map(|(i, g)| (i, &rest - g))
                .find(|(_, y)| self.cone.contains(y) && self.member_mod_units(units, y))
                .expect("a member has a member predecessor");
            x[i] += 1;
            rest = y;
        }
        if !rest.is_zero() {
            let y = units.group.solve(&rest).expect("remainder lies in ZG0");
            for (k, &i) in units.in_lineality.iter().enumerate() {
                x[i] = y[k].clone();
            }
        }
        Some(IntVector::new(x))
    }
}
