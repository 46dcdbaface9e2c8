//! Orbits, codimension-one rays, significant rays, the regularity cone γ
//! and the flexibility verdict.

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use super::{HoroError, HoroVariety};
use crate::cones::{Cone, FacePair};
use crate::exactlat::linalg::rank;
use crate::exactlat::IntVector;
use crate::semigroup::{ModuleGens, SaturationStatus};

/// Enumeration bounds, all in levels of the semigroup grading except
/// `root_height`, which bounds `Σ|e_i|` for Demazure roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub degree: u64,
    pub module_degree: u64,
    pub search_degree: u64,
    pub root_height: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regularity {
    Regular,
    NotRegular,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitInfo {
    pub face: FacePair,
    pub orbit_dim: usize,
    pub codim: usize,
    /// Generators of `𝔉 ∩ τ̂`, the weight monoid of the orbit closure.
    pub face_generators: Vec<IntVector>,
    /// Only set for codimension-one orbits.
    pub regularity: Option<Regularity>,
}

impl OrbitInfo {
    /// `O_self ⊆ closure(O_other)` iff `τ_other ⪯ τ_self`.
    pub fn in_closure_of(&self, other: &OrbitInfo) -> bool {
        self.face.tau.contains_cone(&other.face.tau)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayStatus {
    pub index: usize,
    pub ray: IntVector,
    pub codim_one: bool,
    /// Saturation status of the dual facet; computed for codimension-one rays.
    pub status: Option<SaturationStatus>,
}

impl RayStatus {
    pub fn significant(&self) -> bool {
        matches!(&self.status, Some(s) if s.is_almost_saturated())
    }

    pub fn undecided(&self) -> bool {
        matches!(&self.status, Some(SaturationStatus::UndecidedUpToBound(_)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Flexible,
    NotFlexible,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Flexible => "FLEXIBLE",
            Verdict::NotFlexible => "NOT_FLEXIBLE",
            Verdict::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Certificates {
    /// For NOT_FLEXIBLE: a nonzero `u ∈ M` with `γ_max ⊆ u⊥`.
    pub hyperplane_normal: Option<IntVector>,
    /// For FLEXIBLE: `rank M` linearly independent generators of `γ_min`.
    pub spanning_rays: Option<Vec<IntVector>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlexReport {
    pub verdict: Verdict,
    pub dim_x: usize,
    pub gamma_min: Cone,
    pub gamma_max: Cone,
    pub ray_statuses: Vec<RayStatus>,
    pub module_gens: ModuleGens,
    pub certificates: Certificates,
    pub bounds: Bounds,
}

impl HoroVariety {
    /// Eight times the largest generator level (resp. ℓ1 norm for roots).
    pub fn default_bounds(&self) -> Bounds {
        let s = self.semigroup();
        let d = s.default_bound();
        let l1 = self.gens_m().iter().map(|g| g.l1_norm()).max().unwrap_or_default();
        // the scan is already complete one level below the completeness bound
        let complete = (s.completeness_bound() - 1u32).to_u64().unwrap_or(u64::MAX);
        Bounds {
            degree: d,
            module_degree: d.min(complete),
            search_degree: d,
            root_height: (l1 * 8u32).to_u64().unwrap_or(u64::MAX),
        }
    }

    /// One entry per face of σ, ordered by orbit dimension and then by rays.
    /// Regularity of codimension-one orbits is filled in from `statuses`.
    pub fn orbit_lattice(&self, statuses: Option<&[RayStatus]>) -> Vec<OrbitInfo> {
        let dim_x = self.dimension();
        let mut out: Vec<OrbitInfo> = self
            .sigma()
            .faces()
            .into_iter()
            .map(|face| {
                let v = face.tau.relative_interior_point();
                let idx = self.face_generator_indices(&v);
                let orbit_dim = face.tau_hat.dim() + self.delta_of(&idx);
                let codim = dim_x - orbit_dim;
                let regularity = if codim == 1 {
                    let st =
                        statuses.and_then(|ss| ss.iter().find(|s| face.tau.rays() == std::slice::from_ref(&s.ray)));
                    Some(match st.and_then(|s| s.status.as_ref()) {
                        Some(SaturationStatus::AlmostSaturated { .. }) => Regularity::Regular,
                        Some(SaturationStatus::NowhereSaturatedCertified(_)) => Regularity::NotRegular,
                        _ => Regularity::Undecided,
                    })
                } else {
                    None
                };
                OrbitInfo {
                    face_generators: idx.iter().map(|&i| self.gens_m()[i].clone()).collect(),
                    face,
                    orbit_dim,
                    codim,
                    regularity,
                }
            })
            .collect();
        out.sort_by(|a, b| (a.orbit_dim, a.face.tau.rays()).cmp(&(b.orbit_dim, b.face.tau.rays())));
        out
    }

    /// Rays of σ that are not rays of θ, checked against the rays whose
    /// orbit has codimension one by the dimension formula.
    pub fn codim_one_rays(&self) -> Result<Vec<usize>, HoroError> {
        let sigma = self.sigma();
        let by_theta: Vec<usize> =
            (0..sigma.rays().len()).filter(|&i| !self.theta().rays().contains(&sigma.rays()[i])).collect();
        let dim_x = self.dimension();
        let by_dimension: Vec<usize> = (0..sigma.rays().len())
            .filter(|&i| {
                let idx = self.face_generator_indices(&sigma.rays()[i]);
                let face_dim = sigma.ray_face(i).expect("valid index").tau_hat.dim();
                face_dim + self.delta_of(&idx) + 1 == dim_x
            })
            .collect();
        if by_theta != by_dimension {
            return Err(HoroError::Inconsistent(format!(
                "codimension-one rays: {by_theta:?} from θ but {by_dimension:?} from dimensions"
            )));
        }
        Ok(by_theta)
    }

    /// Module generators of `𝔉_sat` and the status of every ray of σ; the
    /// dual facets of codimension-one rays are analysed in parallel.
    pub fn ray_statuses(&self, bounds: &Bounds) -> Result<(ModuleGens, Vec<RayStatus>), HoroError> {
        let s = self.semigroup();
        let mg = s.module_generators(bounds.module_degree)?;
        let codim1 = self.codim_one_rays()?;
        let sigma = self.sigma();
        let results: Vec<Result<RayStatus, HoroError>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..sigma.rays().len())
                .map(|i| {
                    let mg = &mg;
                    let codim_one = codim1.contains(&i);
                    scope.spawn(move || -> Result<RayStatus, HoroError> {
                        let status = if codim_one {
                            let face = sigma.ray_face(i).expect("valid index");
                            Some(s.face_saturation_status(&face, mg, bounds.search_degree)?)
                        } else {
                            None
                        };
                        Ok(RayStatus { index: i, ray: sigma.rays()[i].clone(), codim_one, status })
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("ray analysis panicked")).collect()
        });
        let statuses = results.into_iter().collect::<Result<Vec<_>, _>>()?;
        Ok((mg, statuses))
    }

    /// `γ_min = cone(θ ∪ significant rays)`, `γ_max` adds the undecided rays.
    pub fn regularity_cone(&self, statuses: &[RayStatus]) -> (Cone, Cone) {
        let r = self.lattice_rank();
        let mut lo = self.theta().generators();
        lo.extend(statuses.iter().filter(|s| s.significant()).map(|s| s.ray.clone()));
        let mut hi = lo.clone();
        hi.extend(statuses.iter().filter(|s| s.undecided()).map(|s| s.ray.clone()));
        (Cone::from_generators(r, &lo).expect("rank-r vectors"), Cone::from_generators(r, &hi).expect("rank-r vectors"))
    }

    pub fn flexibility(&self, bounds: &Bounds) -> Result<FlexReport, HoroError> {
        let (module_gens, ray_statuses) = self.ray_statuses(bounds)?;
        let (gamma_min, gamma_max) = self.regularity_cone(&ray_statuses);
        let mut certificates = Certificates::default();
        let verdict = if gamma_min.is_full_dimensional() {
            certificates.spanning_rays = Some(independent_subset(&gamma_min.generators()));
            Verdict::Flexible
        } else if !gamma_max.is_full_dimensional() {
            certificates.hyperplane_normal = gamma_max.equations().first().cloned();
            Verdict::NotFlexible
        } else {
            Verdict::Undecided
        };
        Ok(FlexReport {
            verdict,
            dim_x: self.dimension(),
            gamma_min,
            gamma_max,
            ray_statuses,
            module_gens,
            certificates,
            bounds: *bounds,
        })
    }

    /// γ∨: the weights of regular functions on the regular locus.
    pub fn regular_locus_weight_cone(&self, gamma: &Cone) -> Cone {
        gamma.dual()
    }

    /// Nonconstant invertible functions on the regular locus exist iff γ∨
    /// contains a line.
    pub fn has_nonconstant_invertible(&self, gamma: &Cone) -> bool {
        gamma.dual().lineality_dim() > 0
    }

    /// Replay every certificate of `report` against this variety.
    pub fn verify_report(&self, report: &FlexReport) -> Result<(), String> {
        let s = self.semigroup();
        let mg = &report.module_gens;
        if mg.gens.first().map(|g| !g.is_zero()).unwrap_or(true) {
            return Err("module generators must start with 0".into());
        }
        if mg.gens.iter().any(|m| !s.in_saturation(m)) {
            return Err("a module generator lies outside σ∨".into());
        }
        let codim1 = self.codim_one_rays().map_err(|e| e.to_string())?;
        if report.ray_statuses.len() != self.sigma().rays().len() {
            return Err("ray list does not match σ".into());
        }
        for rs in &report.ray_statuses {
            if self.sigma().rays().get(rs.index) != Some(&rs.ray) {
                return Err(format!("ray {} does not match σ", rs.ray));
            }
            if rs.codim_one != codim1.contains(&rs.index) {
                return Err(format!("codimension flag of ray {} is wrong", rs.ray));
            }
            if let Some(st) = &rs.status {
                if let SaturationStatus::AlmostSaturated { .. } = st {
                    if !mg.complete {
                        return Err("a witness needs complete module generators".into());
                    }
                }
                let face = self.sigma().ray_face(rs.index).expect("index checked");
                if !s.verify_status(&face, mg, st) {
                    return Err(format!("status of ray {} does not replay", rs.ray));
                }
            } else if rs.codim_one {
                return Err(format!("codimension-one ray {} has no status", rs.ray));
            }
        }
        let (gmin, gmax) = self.regularity_cone(&report.ray_statuses);
        if gmin != report.gamma_min || gmax != report.gamma_max {
            return Err("γ does not match the ray statuses".into());
        }
        let r = self.lattice_rank();
        match report.verdict {
            Verdict::Flexible => {
                let rays = report.certificates.spanning_rays.as_ref().ok_or("missing spanning rays")?;
                if rays.len() != r || rank(rays) != r || !rays.iter().all(|v| gmin.contains(v)) {
                    return Err("spanning rays do not span γ_min".into());
                }
            }
            Verdict::NotFlexible => {
                let u = report.certificates.hyperplane_normal.as_ref().ok_or("missing hyperplane")?;
                if u.is_zero() || u.dim() != r || gmax.generators().iter().any(|g| !u.dot(g).is_zero()) {
                    return Err("hyperplane does not contain γ_max".into());
                }
            }
            Verdict::Undecided => {
                if gmin.is_full_dimensional() || !gmax.is_full_dimensional() {
                    return Err("UNDECIDED is inconsistent with γ".into());
                }
            }
        }
        if report.dim_x != self.dimension() {
            return Err("dimension mismatch".into());
        }
        Ok(())
    }
}

/// A maximal linearly independent subset, greedily in the given order.
fn independent_subset(vs: &[IntVector]) -> Vec<IntVector> {
    let mut out: Vec<IntVector> = Vec::new();
    for v in vs {
        out.push(v.clone());
        if rank(&out) < out.len() {
            out.pop();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horospherical::tests::{a1t1, example1, example2};
    use crate::ivec;
    use crate::rootsystem::GroupSpec;

    #[test]
    fn first_example_report() {
        let h = example1();
        let orbits = h.orbit_lattice(None);
        let rho1 = orbits.iter().find(|o| o.face.tau.rays() == [ivec![1, 0]]).unwrap();
        assert_eq!((rho1.orbit_dim, rho1.codim), (1, 2));
        let rho2 = orbits.iter().find(|o| o.face.tau.rays() == [ivec![0, 1]]).unwrap();
        assert_eq!(rho2.codim, 1);
        assert_eq!(orbits[orbits.len() - 1].codim, 0);

        let rho2_idx = h.sigma().ray_index(&ivec![0, 1]).unwrap();
        assert_eq!(h.codim_one_rays().unwrap(), vec![rho2_idx]);
        let report = h.flexibility(&h.default_bounds()).unwrap();
        assert_eq!(report.verdict, Verdict::NotFlexible);
        assert_eq!(report.gamma_min, Cone::from_generators(2, &[ivec![1, 0]]).unwrap());
        assert_eq!(report.certificates.hyperplane_normal, Some(ivec![0, 1]));
        assert!(report.ray_statuses[rho2_idx].status.as_ref().unwrap().is_nowhere_saturated());
        h.verify_report(&report).unwrap();
        assert!(h.has_nonconstant_invertible(&report.gamma_min));
    }

    #[test]
    fn second_example_report() {
        let h = example2();
        assert_eq!(h.codim_one_rays().unwrap().len(), 2);
        let report = h.flexibility(&h.default_bounds()).unwrap();
        assert_eq!(report.verdict, Verdict::Flexible);
        assert_eq!(report.gamma_min, Cone::from_generators(2, &[ivec![1, 0], ivec![2, -1]]).unwrap());
        let rho1 = h.sigma().ray_index(&ivec![2, -1]).unwrap();
        assert_eq!(report.ray_statuses[rho1].status, Some(SaturationStatus::AlmostSaturated { witness: ivec![1, 2] }));
        h.verify_report(&report).unwrap();
        let gd = h.regular_locus_weight_cone(&report.gamma_min);
        assert_eq!(gd, Cone::from_generators(2, &[ivec![0, -1], ivec![1, 2]]).unwrap());
        assert!(!h.has_nonconstant_invertible(&report.gamma_min));
    }

    #[test]
    fn semisimple_rank_one_is_flexible() {
        let g = GroupSpec::new(vec!["A1".parse().unwrap()], 0);
        let h = HoroVariety::build(g, &[ivec![2]]).unwrap();
        let report = h.flexibility(&h.default_bounds()).unwrap();
        assert_eq!(report.verdict, Verdict::Flexible);
    }

    #[test]
    fn tampered_report_fails_replay() {
        let h = example1();
        let mut report = h.flexibility(&h.default_bounds()).unwrap();
        report.certificates.hyperplane_normal = Some(ivec![1, 0]);
        assert!(h.verify_report(&report).is_err());
        let _ = a1t1();
    }
}
