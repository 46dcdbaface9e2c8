//! Face lattice and the face correspondence `τ ↦ τ̂ = σ∨ ∩ τ⊥`.

use std::collections::{BTreeSet, VecDeque};

use num_traits::Zero;

use super::Cone;
use crate::exactlat::IntVector;

/// A face `tau` of a cone σ with its dual face `tau_hat` of σ∨ and a
/// functional `support ∈ σ∨` cutting out `tau = σ ∩ support⊥`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FacePair {
    pub tau: Cone,
    pub tau_hat: Cone,
    pub support: IntVector,
}

impl FacePair {
    /// `dim τ + dim τ̂ = ambient dimension`
    pub fn dims_complementary(&self) -> bool {
        self.tau.dim() + self.tau_hat.dim() == self.tau.ambient_dim()
    }
}

impl Cone {
    /// All faces, from the minimal face (the lineality space) up to the cone
    /// itself, ordered by dimension and then by rays.
    pub fn faces(&self) -> Vec<FacePair> {
        let nr = self.rays.len();
        let incidence: Vec<Vec<bool>> =
            self.facets.iter().map(|f| self.rays.iter().map(|r| f.dot(r).is_zero()).collect()).collect();
        let closure = |set: &[bool]| -> Vec<bool> {
            let tight: Vec<usize> =
                (0..self.facets.len()).filter(|&j| (0..nr).all(|i| !set[i] || incidence[j][i])).collect();
            (0..nr).map(|i| tight.iter().all(|&j| incidence[j][i])).collect()
        };

        let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        let top = vec![true; nr];
        seen.insert(top.clone());
        queue.push_back(top);
        while let Some(face) = queue.pop_front() {
            for row in &incidence {
                let cut: Vec<bool> = face.iter().zip(row).map(|(a, b)| *a && *b).collect();
                if cut == face {
                    continue;
                }
                let c = closure(&cut);
                if seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }

        let mut out: Vec<FacePair> = seen.into_iter().map(|set| self.face_pair(&set)).collect();
        out.sort_by(|a, b| (a.tau.dim(), a.tau.rays()).cmp(&(b.tau.dim(), b.tau.rays())));
        out
    }

    fn face_pair(&self, rays: &[bool]) -> FacePair {
        let dim = self.ambient_dim;
        let chosen: Vec<IntVector> = self.rays.iter().zip(rays).filter(|(_, k)| **k).map(|(r, _)| r.clone()).collect();
        let tight: Vec<IntVector> =
            self.facets.iter().filter(|f| chosen.iter().all(|r| f.dot(r).is_zero())).cloned().collect();
        let tau = Cone::from_generators_and_lines(dim, &chosen, &self.lines)
            .expect("face generators share the ambient dimension");
        let tau_hat = Cone::from_generators_and_lines(dim, &tight, &self.eqs)
            .expect("dual face generators share the ambient dimension");
        let support = tight.iter().fold(IntVector::zeros(dim), |acc, f| &acc + f);
        FacePair { tau, tau_hat, support }
    }

    /// The face pair whose `tau` is the ray `ray` of this cone.
    pub fn ray_face(&self, ray: usize) -> Option<FacePair> {
        let mut set = vec![false; self.rays.len()];
        *set.get_mut(ray)? = true;
        Some(self.face_pair(&set))
    }

    /// The face pair whose `tau` is the whole cone.
    pub fn top_face(&self) -> FacePair {
        self.face_pair(&vec![true; self.rays.len()])
    }
}
