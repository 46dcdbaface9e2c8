//! Almost saturated and nowhere saturated faces of σ∨.
//!
//! For a face `τ̂ = σ∨ ∩ v⊥` (with `v` in the relative interior of the
//! paired face τ of σ) write `G_F` for the generators in τ̂ and `G_off` for
//! the rest, so `𝔉 ∩ τ̂ = ℕG_F`. For a module generator `m`, some
//! `p ∈ ℕG_F` has `p + m ∈ 𝔉` iff for some `d ∈ ℕ^{G_off}` with
//! `⟨G_off d, v⟩ = ⟨m, v⟩` the difference `m − G_off d` lies in `ℤG_F`.
//! There are finitely many such `d`, so each `m` is decided exactly, and if
//! every `m` passes then a large multiple of `Σ G_F` is a saturation point.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::modules::ModuleGens;
use super::{AffineSemigroup, SemigroupError};
use crate::cones::FacePair;
use crate::exactlat::{
    hermite_basis, lattice_separator, solve_nonneg_integer, Infeasibility, IntFeasibility, IntMatrix, IntVector,
    LatticeBasis, RatVector,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturationStatus {
    AlmostSaturated { witness: IntVector },
    NowhereSaturatedCertified(Obstruction),
    UndecidedUpToBound(u64),
}

impl SaturationStatus {
    pub fn is_almost_saturated(&self) -> bool {
        matches!(self, SaturationStatus::AlmostSaturated { .. })
    }

    pub fn is_nowhere_saturated(&self) -> bool {
        matches!(self, SaturationStatus::NowhereSaturatedCertified(_))
    }
}

/// Proof that no `p ∈ 𝔉 ∩ τ̂` is a saturation point: the element `m` of
/// `𝔉_sat` satisfies `p + m ∉ 𝔉` for every such `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The system of [`AffineSemigroup::joint_system`] for `m` has no
    /// nonnegative integer solution.
    Joint { m: IntVector, certificate: Infeasibility },
    /// Every admissible choice of off-face generators leaves a remainder
    /// outside `ℤG_F`, each refuted by a separating functional.
    Shift { m: IntVector, branches: Vec<ShiftBranch> },
}

impl Obstruction {
    pub fn m(&self) -> &IntVector {
        match self {
            Obstruction::Joint { m, .. } | Obstruction::Shift { m, .. } => m,
        }
    }
}

/// `off_face[k]` copies of the k-th off-face generator; `separator` is
/// integral on `G_F` and not on `m − G_off·off_face`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftBranch {
    pub off_face: IntVector,
    pub separator: RatVector,
}

impl AffineSemigroup {
    fn split_face(&self, v: &IntVector) -> (Vec<IntVector>, Vec<IntVector>) {
        self.gens.iter().cloned().partition(|g| v.dot(g).is_zero())
    }

    /// Unknowns `(c, d) ∈ ℕ^n × ℕ^n`: `Σ d_i g_i − Σ c_i g_i = m` and
    /// `Σ c_i ⟨g_i, v⟩ = 0`, i.e. `p = Gc ∈ 𝔉 ∩ v⊥` and `p + m = Gd ∈ 𝔉`.
    pub fn joint_system(&self, v: &IntVector, m: &IntVector) -> (IntMatrix, IntVector) {
        let n = self.gens.len();
        let r = self.rank;
        let mut a = IntMatrix::zeros(r + 1, 2 * n);
        for (j, g) in self.gens.iter().enumerate() {
            for i in 0..r {
                a.set(i, j, -g[i].clone());
                a.set(i, n + j, g[i].clone());
            }
            a.set(r, j, v.dot(g));
        }
        let b = IntVector::concat(&[m, &IntVector::zeros(1)]);
        (a, b)
    }

    /// All `d ∈ ℕ^{G_off}` with `Σ d_k ⟨g_k, v⟩ = ⟨m, v⟩`.
    fn off_face_choices(&self, off: &[IntVector], v: &IntVector, m: &IntVector) -> Vec<IntVector> {
        let pair: Vec<BigInt> = off.iter().map(|g| v.dot(g)).collect();
        let mut out = Vec::new();
        let mut cur = vec![BigInt::zero(); off.len()];
        fn go(k: usize, left: BigInt, pair: &[BigInt], cur: &mut Vec<BigInt>, out: &mut Vec<IntVector>) {
            if k == pair.len() {
                if left.is_zero() {
                    out.push(IntVector::new(cur.clone()));
                }
                return;
            }
            let mut c = BigInt::zero();
            let mut rest = left;
            while !rest.is_negative() {
                cur[k] = c.clone();
                go(k + 1, rest.clone(), pair, cur, out);
                rest -= &pair[k];
                c += 1;
            }
            cur[k] = BigInt::zero();
        }
        go(0, v.dot(m), &pair, &mut cur, &mut out);
        out
    }

    fn face_lattice(face_gens: &[IntVector], r: usize) -> LatticeBasis {
        if face_gens.is_empty() {
            LatticeBasis::zero(r)
        } else {
            hermite_basis(face_gens).expect("equal dimensions")
        }
    }

    /// Exact shift analysis for one `m`: `None` if some `p ∈ ℕG_F` has
    /// `p + m ∈ 𝔉`, otherwise the refuted branches.
    fn shift_obstruction(&self, v: &IntVector, m: &IntVector) -> Option<Vec<ShiftBranch>> {
        let (face, off) = self.split_face(v);
        let lattice = Self::face_lattice(&face, self.rank);
        let mut branches = Vec::new();
        for d in self.off_face_choices(&off, v, m) {
            let mut rest = m.clone();
            for (k, g) in off.iter().enumerate() {
                rest = rest.combine(&BigInt::from(1), g, &-&d[k]);
            }
            let separator = lattice_separator(&lattice, &rest)?;
            branches.push(ShiftBranch { off_face: d, separator });
        }
        Some(branches)
    }

    /// Decide whether the face `tau_hat` of σ∨ contains a saturation point.
    ///
    /// For each module generator `m`, the joint integer system and the exact
    /// shift analysis look for a proof that no `p ∈ 𝔉 ∩ τ̂` has `p + m ∈ 𝔉`.
    /// When none exists and `mg` is complete the face is almost saturated,
    /// and the witness is the smallest one by level (searched up to
    /// `search_bound`). Without a complete `mg` only nowhere-saturated is final.
    pub fn face_saturation_status(
        &self,
        face: &FacePair,
        mg: &ModuleGens,
        search_bound: u64,
    ) -> Result<SaturationStatus, SemigroupError> {
        let v = face.tau.relative_interior_point();
        if v.dim() != self.rank {
            return Err(SemigroupError::ShapeMismatch { expected: self.rank, found: v.dim() });
        }
        let (face_gens, _) = self.split_face(&v);

        for m in mg.gens.iter().filter(|m| !m.is_zero()) {
            let (a, b) = self.joint_system(&v, m);
            if let Ok(IntFeasibility::InfeasibleCertified(certificate)) = solve_nonneg_integer(&a, &b, 0) {
                return Ok(SaturationStatus::NowhereSaturatedCertified(Obstruction::Joint {
                    m: m.clone(),
                    certificate,
                }));
            }
            if let Some(branches) = self.shift_obstruction(&v, m) {
                return Ok(SaturationStatus::NowhereSaturatedCertified(Obstruction::Shift { m: m.clone(), branches }));
            }
        }
        if !mg.complete {
            return Ok(SaturationStatus::UndecidedUpToBound(search_bound));
        }
        // every m has a p_m with p_m + m ∈ 𝔉, so some k·Σ G_F works
        let q = face_gens.iter().fold(IntVector::zeros(self.rank), |acc, g| &acc + g);
        let mut k = BigInt::zero();
        let fallback = loop {
            let p = q.scale(&k);
            if self.is_saturation_point(mg, &p)? {
                break p;
            }
            k += 1;
        };
        // prefer the smallest witness by level
        let cap = self.level(&fallback).to_u64().unwrap_or(u64::MAX).min(search_bound);
        for p in self.region(cap)? {
            let p = super::region::from_point(&p);
            if v.dot(&p).is_zero() && self.member(&p) && self.is_saturation_point(mg, &p)? {
                return Ok(SaturationStatus::AlmostSaturated { witness: p });
            }
        }
        Ok(SaturationStatus::AlmostSaturated { witness: fallback })
    }

    /// Replay a status against this semigroup: witnesses are re-checked by
    /// membership, obstructions by their certificates.
    pub fn verify_status(&self, face: &FacePair, mg: &ModuleGens, status: &SaturationStatus) -> bool {
        let v = face.tau.relative_interior_point();
        match status {
            SaturationStatus::AlmostSaturated { witness } => {
                v.dot(witness).is_zero() && self.member(witness) && mg.gens.iter().all(|m| self.member(&(witness + m)))
            }
            SaturationStatus::NowhereSaturatedCertified(ob) => self.verify_obstruction(&v, ob),
            SaturationStatus::UndecidedUpToBound(_) => true,
        }
    }

    /// Check that `ob` proves `p + m ∉ 𝔉` for every `p ∈ 𝔉 ∩ v⊥`.
    pub fn verify_obstruction(&self, v: &IntVector, ob: &Obstruction) -> bool {
        let m = ob.m();
        if m.dim() != self.rank || !self.in_saturation(m) {
            return false;
        }
        match ob {
            Obstruction::Joint { certificate, .. } => {
                let (a, b) = self.joint_system(v, m);
                certificate.verify(&a, &b)
            }
            Obstruction::Shift { branches, .. } => {
                let (face, off) = self.split_face(v);
                let expected = self.off_face_choices(&off, v, m);
                if expected.len() != branches.len() {
                    return false;
                }
                branches.iter().zip(&expected).all(|(br, d)| {
                    if &br.off_face != d || br.separator.dim() != self.rank {
                        return false;
                    }
                    let mut rest = m.clone();
                    for (k, g) in off.iter().enumerate() {
                        rest = rest.combine(&BigInt::from(1), g, &-&d[k]);
                    }
                    face.iter().all(|g| br.separator.dot_int(g).is_integer())
                        && !br.separator.dot_int(&rest).is_integer()
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;
    use crate::semigroup::tests::{ex1, ex2};

    fn ray_face(s: &AffineSemigroup, ray: IntVector) -> FacePair {
        let sigma = s.cone().dual();
        sigma.ray_face(sigma.ray_index(&ray).unwrap()).unwrap()
    }

    #[test]
    fn second_example_faces() {
        let s = ex2();
        let mg = s.module_generators(32).unwrap();
        let rho1 = ray_face(&s, ivec![2, -1]);
        let st = s.face_saturation_status(&rho1, &mg, 32).unwrap();
        assert_eq!(st, SaturationStatus::AlmostSaturated { witness: ivec![1, 2] });
        assert!(s.verify_status(&rho1, &mg, &st));
        let rho2 = ray_face(&s, ivec![0, 1]);
        let st = s.face_saturation_status(&rho2, &mg, 32).unwrap();
        assert!(st.is_nowhere_saturated());
        assert!(s.verify_status(&rho2, &mg, &st));
    }

    #[test]
    fn first_example_parity_obstruction() {
        let s = ex1();
        let mg = s.module_generators(16).unwrap();
        let rho2 = ray_face(&s, ivec![0, 1]);
        let st = s.face_saturation_status(&rho2, &mg, 16).unwrap();
        match &st {
            SaturationStatus::NowhereSaturatedCertified(ob) => assert_eq!(ob.m(), &ivec![1, 0]),
            other => panic!("expected an obstruction, got {other:?}"),
        }
        assert!(s.verify_status(&rho2, &mg, &st));
    }

    #[test]
    fn whole_cone_is_almost_saturated() {
        for s in [ex1(), ex2()] {
            let mg = s.module_generators(16).unwrap();
            let top = s.cone().dual().faces().into_iter().next().unwrap();
            assert_eq!(top.tau_hat, *s.cone());
            let st = s.face_saturation_status(&top, &mg, 16).unwrap();
            assert!(st.is_almost_saturated());
            assert!(s.verify_status(&top, &mg, &st));
        }
    }

    #[test]
    fn shift_obstruction_when_joint_system_is_silent() {
        let s = ex2();
        let v = ivec![0, 1];
        let ob = s.shift_obstruction(&v, &ivec![1, 0]).unwrap();
        assert!(s.verify_obstruction(&v, &Obstruction::Shift { m: ivec![1, 0], branches: ob }));
        // a tampered branch list is rejected
        assert!(!s.verify_obstruction(&v, &Obstruction::Shift { m: ivec![1, 0], branches: vec![] }));
    }
}
