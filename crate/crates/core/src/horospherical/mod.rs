//! The combinatorial dictionary of an affine horospherical variety `X(𝔉)`:
//! the lattice `M = ℤ𝔉`, the cones σ∨, σ, θ∨ = 𝒞 ∩ M_ℚ and θ, orbits,
//! codimension-one rays, the regularity cone and the flexibility verdict.
//!
//! Everything below `build` works in M-coordinates: a weight `λ` in ambient
//! coordinates is the combination `Σ x_i b_i` of the HNF basis rows of `M`.

mod analysis;
mod lnd;

pub use analysis::{Bounds, Certificates, FlexReport, OrbitInfo, RayStatus, Regularity, Verdict};
pub use lnd::{LndRoot, ShiftCheck};

use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

use crate::cones::{Cone, ConeError};
use crate::exactlat::{coordinates_in_lattice, hermite_basis, IntVector, LatticeBasis};
use crate::rootsystem::{self, GroupSpec, RootError};
use crate::semigroup::{AffineSemigroup, SemigroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HoroError {
    #[error("no generators")]
    EmptyInput,
    #[error("generator has length {found}, expected {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("generator {generator} is not dominant (coordinate {coordinate} is negative)")]
    NotDominant { generator: usize, coordinate: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("{0} is not a weight in the Weyl chamber")]
    NotAWeight(IntVector),
    #[error("ray index {0} out of range")]
    BadRay(usize),
    #[error("ray {0} does not give a codimension-one orbit")]
    NotCodimOne(usize),
    #[error("the dual facet of ray {0} is nowhere saturated, so no homogeneous LND has this ray")]
    NoLndExists(usize),
    #[error("no suitable Demazure root up to height {0}")]
    NotFound(u64),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

impl From<RootError> for HoroError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::NotDominant { generator, coordinate } => HoroError::NotDominant { generator, coordinate },
            RootError::ShapeMismatch { expected, found } => HoroError::ShapeMismatch { expected, found },
            RootError::BadGroupSpec(s) => HoroError::Inconsistent(s),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HoroVariety {
    group: GroupSpec,
    ambient_gens: Vec<IntVector>,
    m_basis: LatticeBasis,
    gens_m: Vec<IntVector>,
    sigma_dual: Cone,
    sigma: Cone,
    theta_dual: Cone,
    theta: Cone,
    semigroup: AffineSemigroup,
}

impl HoroVariety {
    pub fn build(group: GroupSpec, ambient_gens: &[IntVector]) -> Result<Self, HoroError> {
        if ambient_gens.is_empty() {
            return Err(HoroError::EmptyInput);
        }
        rootsystem::support_of_semigroup(&group, ambient_gens)?;
        let m_basis = hermite_basis(ambient_gens).map_err(|_| HoroError::EmptyInput)?;
        let r = m_basis.rank();
        if r == 0 {
            return Err(HoroError::EmptyInput);
        }
        let gens_m: Vec<IntVector> = ambient_gens
            .iter()
            .map(|g| coordinates_in_lattice(g, &m_basis).expect("generators lie in their own span"))
            .collect();
        let semigroup = AffineSemigroup::new(&gens_m)?;
        let sigma_dual = semigroup.cone().clone();
        let sigma = sigma_dual.dual();
        // λ = Σ x_j b_j is dominant iff Σ x_j b_j[i] ≥ 0 for each fundamental coordinate i
        let chamber: Vec<IntVector> = (0..group.semisimple_rank())
            .map(|i| IntVector::new(m_basis.basis_rows().iter().map(|b| b[i].clone()).collect()))
            .collect();
        let theta_dual = Cone::from_inequalities(r, &chamber, &[])?;
        let theta = theta_dual.dual();
        let h = HoroVariety {
            group,
            ambient_gens: ambient_gens.to_vec(),
            m_basis,
            gens_m,
            sigma_dual,
            sigma,
            theta_dual,
            theta,
            semigroup,
        };
        if !h.theta_dual.contains_cone(&h.sigma_dual) {
            return Err(HoroError::Inconsistent("σ∨ is not contained in θ∨".into()));
        }
        Ok(h)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn ambient_gens(&self) -> &[IntVector] {
        &self.ambient_gens
    }

    pub fn m_basis(&self) -> &LatticeBasis {
        &self.m_basis
    }

    pub fn lattice_rank(&self) -> usize {
        self.m_basis.rank()
    }

    pub fn gens_m(&self) -> &[IntVector] {
        &self.gens_m
    }

    pub fn sigma_dual(&self) -> &Cone {
        &self.sigma_dual
    }

    pub fn sigma(&self) -> &Cone {
        &self.sigma
    }

    pub fn theta_dual(&self) -> &Cone {
        &self.theta_dual
    }

    pub fn theta(&self) -> &Cone {
        &self.theta
    }

    pub fn semigroup(&self) -> &AffineSemigroup {
        &self.semigroup
    }

    /// Ambient weight of a point given in M-coordinates.
    pub fn to_ambient(&self, x: &IntVector) -> IntVector {
        self.m_basis.combine(x)
    }

    /// Δ of the subsemigroup generated by the generators with the given indices.
    fn delta_of(&self, indices: &[usize]) -> usize {
        let gens: Vec<IntVector> = indices.iter().map(|&i| self.ambient_gens[i].clone()).collect();
        let s: BTreeSet<usize> = rootsystem::support_of_semigroup(&self.group, &gens).expect("validated at build");
        rootsystem::delta(&self.group, &s)
    }

    /// `dim X = dim σ∨ + Δ(𝔉)`
    pub fn dimension(&self) -> usize {
        self.sigma_dual.dim() + self.delta_of(&(0..self.ambient_gens.len()).collect::<Vec<_>>())
    }

    /// Indices of generators lying on `τ̂ = σ∨ ∩ v⊥`.
    pub(crate) fn face_generator_indices(&self, v: &IntVector) -> Vec<usize> {
        (0..self.gens_m.len()).filter(|&i| v.dot(&self.gens_m[i]).is_zero()).collect()
    }

    /// `⟨Λ, v_ρ⟩` for a weight `Λ ∈ θ∨ ∩ M`.
    pub fn vanishing_order(&self, lambda: &IntVector, ray: usize) -> Result<num_bigint::BigInt, HoroError> {
        let v = self.sigma.rays().get(ray).ok_or(HoroError::BadRay(ray))?;
        if lambda.dim() != self.lattice_rank() || !self.theta_dual.contains(lambda) {
            return Err(HoroError::NotAWeight(lambda.clone()));
        }
        Ok(lambda.dot(v))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ivec;

    pub(crate) fn a1t1() -> GroupSpec {
        GroupSpec::new(vec!["A1".parse().unwrap()], 1)
    }

    pub(crate) fn example1() -> HoroVariety {
        HoroVariety::build(a1t1(), &[ivec![2, 0], ivec![1, 1], ivec![0, 1]]).unwrap()
    }

    pub(crate) fn example2() -> HoroVariety {
        HoroVariety::build(a1t1(), &[ivec![2, 0], ivec![1, 1], ivec![1, 2]]).unwrap()
    }

    fn cone(gens: &[IntVector]) -> Cone {
        Cone::from_generators(2, gens).unwrap()
    }

    #[test]
    fn first_example_cones() {
        let h = example1();
        let orthant = cone(&[ivec![1, 0], ivec![0, 1]]);
        assert_eq!(h.sigma_dual(), &orthant);
        assert_eq!(h.sigma(), &orthant);
        assert_eq!(h.theta(), &cone(&[ivec![1, 0]]));
        assert_eq!(h.theta_dual(), &Cone::from_inequalities(2, &[ivec![1, 0]], &[]).unwrap());
        assert_eq!(h.dimension(), 3);
    }

    #[test]
    fn second_example_cones() {
        let h = example2();
        assert_eq!(h.sigma_dual(), &cone(&[ivec![1, 0], ivec![1, 2]]));
        assert_eq!(h.sigma(), &cone(&[ivec![2, -1], ivec![0, 1]]));
        assert_eq!(h.theta(), &cone(&[ivec![1, 0]]));
        assert_eq!(h.dimension(), 3);
    }

    #[test]
    fn torus_only_orthant() {
        let h = HoroVariety::build(GroupSpec::torus(2), &[ivec![1, 0], ivec![0, 1]]).unwrap();
        assert_eq!(h.theta_dual(), &Cone::whole_space(2));
        assert_eq!(h.theta(), &Cone::zero(2));
        assert_eq!(h.dimension(), 2);
    }

    #[test]
    fn vanishing_orders() {
        let h = example2();
        let ray = h.sigma().ray_index(&ivec![2, -1]).unwrap();
        assert_eq!(h.vanishing_order(&ivec![1, 1], ray).unwrap(), 1.into());
        assert_eq!(h.vanishing_order(&ivec![1, 2], ray).unwrap(), 0.into());
        assert_eq!(h.vanishing_order(&ivec![2, 0], ray).unwrap(), 4.into());
        assert_eq!(h.vanishing_order(&ivec![-1, 0], ray), Err(HoroError::NotAWeight(ivec![-1, 0])));
    }

    #[test]
    fn build_errors() {
        assert_eq!(HoroVariety::build(a1t1(), &[]).unwrap_err(), HoroError::EmptyInput);
        assert_eq!(
            HoroVariety::build(a1t1(), &[ivec![-1, 1]]).unwrap_err(),
            HoroError::NotDominant { generator: 0, coordinate: 0 }
        );
    }

    #[test]
    fn sublattice_generators_use_m_coordinates() {
        // M = ℤ(2,0) + ℤ(0,1) ≠ ℤ²
        let h = HoroVariety::build(a1t1(), &[ivec![2, 0], ivec![2, 1], ivec![0, 1]]).unwrap();
        assert_eq!(h.lattice_rank(), 2);
        assert_eq!(h.gens_m(), &[ivec![1, 0], ivec![1, 1], ivec![0, 1]]);
        assert_eq!(h.to_ambient(&ivec![1, 1]), ivec![2, 1]);
    }
}
