//! Demazure roots that give homogeneous LNDs: `e ∈ θ∨` with `g + e ∈ 𝔉`
//! for every generator `g` of the ideal `𝔉′ = {Λ ∈ 𝔉 : ⟨Λ, v_ρ⟩ > 0}`.

use num_traits::Signed;

use super::{HoroError, HoroVariety};
use crate::cones::DemazureRoot;
use crate::exactlat::IntVector;
use crate::semigroup::SaturationStatus;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftCheck {
    pub generator: IntVector,
    pub shifted: IntVector,
    /// Multiplicities of the semigroup generators summing to `shifted`.
    pub representation: IntVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LndRoot {
    pub root: DemazureRoot,
    pub in_theta_dual: bool,
    pub shift_checks: Vec<ShiftCheck>,
}

impl HoroVariety {
    /// Minimal generators of `𝔉′` as an 𝔉-module. Any `Λ ∈ 𝔉′` uses some
    /// semigroup generator off the face, so those generators suffice; the
    /// ones lying in another plus 𝔉 are dropped, keeping the least of any
    /// two that differ by a unit.
    pub fn ideal_generators(&self, ray: usize) -> Result<Vec<IntVector>, HoroError> {
        let v = self.sigma().rays().get(ray).ok_or(HoroError::BadRay(ray))?;
        let off: Vec<IntVector> = self.gens_m().iter().filter(|g| v.dot(g).is_positive()).cloned().collect();
        let s = self.semigroup();
        let mut out: Vec<IntVector> = off
            .iter()
            .filter(|g| !off.iter().any(|h| h != *g && s.member(&(*g - h)) && (h < *g || !s.member(&(h - *g)))))
            .cloned()
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Search Demazure roots of `ray` by increasing ℓ1 height for one in θ∨
    /// that shifts every ideal generator into 𝔉.
    pub fn find_lnd_root(
        &self,
        ray: usize,
        status: Option<&SaturationStatus>,
        root_height: u64,
    ) -> Result<LndRoot, HoroError> {
        if ray >= self.sigma().rays().len() {
            return Err(HoroError::BadRay(ray));
        }
        if !self.codim_one_rays()?.contains(&ray) {
            return Err(HoroError::NotCodimOne(ray));
        }
        if matches!(status, Some(SaturationStatus::NowhereSaturatedCertified(_))) {
            return Err(HoroError::NoLndExists(ray));
        }
        let ideal = self.ideal_generators(ray)?;
        for h in 0..=root_height {
            for root in self.sigma().demazure_roots_at_height(ray, h)? {
                if !self.theta_dual().contains(&root.e) {
                    continue;
                }
                if let Some(shift_checks) = self.shift_checks(&ideal, &root.e) {
                    return Ok(LndRoot { root, in_theta_dual: true, shift_checks });
                }
            }
        }
        Err(HoroError::NotFound(root_height))
    }

    fn shift_checks(&self, ideal: &[IntVector], e: &IntVector) -> Option<Vec<ShiftCheck>> {
        let s = self.semigroup();
        ideal
            .iter()
            .map(|g| {
                let shifted = g + e;
                let representation = s.representation(&shifted)?;
                Some(ShiftCheck { generator: g.clone(), shifted, representation })
            })
            .collect()
    }

    /// Replay an [`LndRoot`]: root conditions, θ∨, the ideal generators and
    /// every recorded representation.
    pub fn verify_lnd_root(&self, lnd: &LndRoot) -> bool {
        let ray = lnd.root.distinguished_ray_index;
        let e = &lnd.root.e;
        let Ok(ideal) = self.ideal_generators(ray) else { return false };
        let gens = self.semigroup().gens();
        self.sigma().is_demazure_root(e, ray).unwrap_or(false)
            && lnd.in_theta_dual == self.theta_dual().contains(e)
            && lnd.in_theta_dual
            && lnd.shift_checks.len() == ideal.len()
            && lnd.shift_checks.iter().zip(&ideal).all(|(c, g)| {
                c.generator == *g
                    && c.shifted == g + e
                    && c.representation.dim() == gens.len()
                    && c.representation.coords().iter().all(|x| !x.is_negative())
                    && gens
                        .iter()
                        .zip(c.representation.coords())
                        .fold(IntVector::zeros(e.dim()), |acc, (g, k)| acc.combine(&1.into(), g, k))
                        == c.shifted
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horospherical::tests::example2;
    use crate::ivec;
    use crate::rootsystem::GroupSpec;

    #[test]
    fn second_example_root() {
        let h = example2();
        let ray = h.sigma().ray_index(&ivec![2, -1]).unwrap();
        assert_eq!(h.ideal_generators(ray).unwrap(), vec![ivec![1, 1], ivec![2, 0]]);
        let lnd = h.find_lnd_root(ray, None, 24).unwrap();
        assert_eq!(lnd.root.e, ivec![1, 3]);
        assert!(h.verify_lnd_root(&lnd));
        // (0,1) is a lower root but (2,0) + (0,1) = (2,1) is a hole
        assert!(h.sigma().is_demazure_root(&ivec![0, 1], ray).unwrap());
        assert!(!h.semigroup().member(&ivec![2, 1]));
    }

    #[test]
    fn nowhere_saturated_ray_has_no_lnd() {
        let h = example2();
        let bounds = h.default_bounds();
        let (_, st) = h.ray_statuses(&bounds).unwrap();
        let ray = h.sigma().ray_index(&ivec![0, 1]).unwrap();
        assert_eq!(h.find_lnd_root(ray, st[ray].status.as_ref(), 24), Err(HoroError::NoLndExists(ray)));
    }

    #[test]
    fn toric_orthant_root() {
        let h = HoroVariety::build(GroupSpec::torus(2), &[ivec![1, 0], ivec![0, 1]]).unwrap();
        let ray = h.sigma().ray_index(&ivec![1, 0]).unwrap();
        let lnd = h.find_lnd_root(ray, None, 4).unwrap();
        assert_eq!(lnd.root.e, ivec![-1, 0]);
        assert!(h.verify_lnd_root(&lnd));
    }
}
