//! JSON documents. Integers are JSON numbers when they fit in 53 bits and
//! decimal strings otherwise; rationals that are not integers are strings
//! `"p/q"`. Both forms are accepted on input.

use std::fmt;
use std::str::FromStr;

use horoflex::cones::Cone;
use horoflex::exactlat::{Infeasibility, IntVector, RatVector};
use horoflex::horospherical::{
    Bounds, Certificates, FlexReport, HoroVariety, OrbitInfo, RayStatus, Regularity, Verdict,
};
use horoflex::rootsystem::{GroupSpec, SimpleFactor};
use horoflex::semigroup::{ModuleGens, Obstruction, SaturationStatus, ShiftBranch};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

const SAFE: i64 = (1 << 53) - 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) if x.abs() <= SAFE => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        BigInt::from_str(v.trim()).map(Int).map_err(|_| E::custom(format!("not an integer: {v:?}")))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            Int(self.0.numer().clone()).serialize(s)
        } else {
            s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Text(String),
        }
        let bad = |v: &str| de::Error::custom(format!("not a rational: {v:?}"));
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(Rat(BigRational::from_integer(n.into()))),
            Raw::Text(t) => {
                let (p, q) = t.split_once('/').unwrap_or((&t, "1"));
                let p = BigInt::from_str(p.trim()).map_err(|_| bad(&t))?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad(&t))?;
                if q.is_positive() {
                    Ok(Rat(BigRational::new(p, q)))
                } else {
                    Err(bad(&t))
                }
            }
        }
    }
}

pub type Vector = Vec<Int>;

pub fn vector(v: &IntVector) -> Vector {
    v.coords().iter().map(|x| Int(x.clone())).collect()
}

pub fn vectors(vs: &[IntVector]) -> Vec<Vector> {
    vs.iter().map(vector).collect()
}

pub fn int_vector(v: &[Int]) -> IntVector {
    IntVector::new(v.iter().map(|x| x.0.clone()).collect())
}

fn int_vectors(vs: &[Vector]) -> Vec<IntVector> {
    vs.iter().map(|v| int_vector(v)).collect()
}

fn rat_vector(v: &RatVector) -> Vec<Rat> {
    v.coords().iter().map(|x| Rat(x.clone())).collect()
}

fn from_rats(v: &[Rat]) -> RatVector {
    RatVector::new(v.iter().map(|x| x.0.clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    #[serde(default)]
    pub simple_factors: Vec<FactorDoc>,
    #[serde(default)]
    pub torus_rank: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_degree: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_degree: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_height: Option<u64>,
}

impl BoundsDoc {
    /// Fields set here replace those of `base`.
    pub fn over(&self, base: Bounds) -> Bounds {
        Bounds {
            degree: self.degree.unwrap_or(base.degree),
            module_degree: self.module_degree.unwrap_or(base.module_degree),
            search_degree: self.search_degree.unwrap_or(base.search_degree),
            root_height: self.root_height.unwrap_or(base.root_height),
        }
    }

    pub fn merge(&self, later: &BoundsDoc) -> BoundsDoc {
        BoundsDoc {
            degree: later.degree.or(self.degree),
            module_degree: later.module_degree.or(self.module_degree),
            search_degree: later.search_degree.or(self.search_degree),
            root_height: later.root_height.or(self.root_height),
        }
    }

    pub fn full(b: &Bounds) -> BoundsDoc {
        BoundsDoc {
            degree: Some(b.degree),
            module_degree: Some(b.module_degree),
            search_degree: Some(b.search_degree),
            root_height: Some(b.root_height),
        }
    }

    pub fn set(&mut self, key: &str, value: u64) -> Result<(), String> {
        let slot = match key {
            "degree" => &mut self.degree,
            "module_degree" => &mut self.module_degree,
            "search_degree" => &mut self.search_degree,
            "root_height" => &mut self.root_height,
            _ => return Err(format!("unknown bound {key:?}")),
        };
        *slot = Some(value);
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub group: GroupDoc,
    pub generators: Vec<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsDoc>,
}

impl InputDocument {
    pub fn group_spec(&self) -> Result<GroupSpec, String> {
        let factors = self
            .group
            .simple_factors
            .iter()
            .map(|f| SimpleFactor::from_str(&format!("{}{}", f.kind, f.rank)).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupSpec::new(factors, self.group.torus_rank))
    }

    pub fn variety(&self) -> Result<HoroVariety, String> {
        let g = self.group_spec()?;
        let n = g.ambient_dim();
        if let Some(bad) = self.generators.iter().position(|v| v.len() != n) {
            return Err(format!("generator {bad} has length {}, expected {n}", self.generators[bad].len()));
        }
        HoroVariety::build(g, &int_vectors(&self.generators)).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitDoc {
    pub face_rays: Vec<Vector>,
    pub dim: usize,
    pub codim: usize,
    pub face_generators: Vec<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regularity: Option<String>,
}

pub fn orbit_doc(o: &OrbitInfo) -> OrbitDoc {
    OrbitDoc {
        face_rays: vectors(o.face.tau.rays()),
        dim: o.orbit_dim,
        codim: o.codim,
        face_generators: vectors(&o.face_generators),
        regularity: o.regularity.map(|r| {
            match r {
                Regularity::Regular => "regular",
                Regularity::NotRegular => "not_regular",
                Regularity::Undecided => "undecided",
            }
            .to_string()
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InfeasibilityDoc {
    Lp { farkas: Vec<Rat> },
    Congruence { forcing: Option<Vec<Rat>>, forced: Vec<usize>, separator: Vec<Rat> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchDoc {
    pub off_face: Vector,
    pub separator: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObstructionDoc {
    Joint { m: Vector, certificate: InfeasibilityDoc },
    Shift { m: Vector, branches: Vec<BranchDoc> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StatusDoc {
    AlmostSaturated { witness: Vector },
    NowhereSaturated { obstruction: ObstructionDoc },
    Undecided { bound: u64 },
}

impl StatusDoc {
    pub fn from_status(s: &SaturationStatus) -> StatusDoc {
        match s {
            SaturationStatus::AlmostSaturated { witness } => StatusDoc::AlmostSaturated { witness: vector(witness) },
            SaturationStatus::NowhereSaturatedCertified(ob) => StatusDoc::NowhereSaturated {
                obstruction: match ob {
                    Obstruction::Joint { m, certificate } => ObstructionDoc::Joint {
                        m: vector(m),
                        certificate: match certificate {
                            Infeasibility::Lp { farkas } => InfeasibilityDoc::Lp { farkas: rat_vector(farkas) },
                            Infeasibility::Congruence { forcing, forced, separator } => InfeasibilityDoc::Congruence {
                                forcing: forcing.as_ref().map(rat_vector),
                                forced: forced.clone(),
                                separator: rat_vector(separator),
                            },
                        },
                    },
                    Obstruction::Shift { m, branches } => ObstructionDoc::Shift {
                        m: vector(m),
                        branches: branches
                            .iter()
                            .map(|b| BranchDoc { off_face: vector(&b.off_face), separator: rat_vector(&b.separator) })
                            .collect(),
                    },
                },
            },
            SaturationStatus::UndecidedUpToBound(b) => StatusDoc::Undecided { bound: *b },
        }
    }

    pub fn to_status(&self) -> SaturationStatus {
        match self {
            StatusDoc::AlmostSaturated { witness } => {
                SaturationStatus::AlmostSaturated { witness: int_vector(witness) }
            }
            StatusDoc::NowhereSaturated { obstruction } => {
                SaturationStatus::NowhereSaturatedCertified(match obstruction {
                    ObstructionDoc::Joint { m, certificate } => Obstruction::Joint {
                        m: int_vector(m),
                        certificate: match certificate {
                            InfeasibilityDoc::Lp { farkas } => Infeasibility::Lp { farkas: from_rats(farkas) },
                            InfeasibilityDoc::Congruence { forcing, forced, separator } => Infeasibility::Congruence {
                                forcing: forcing.as_deref().map(from_rats),
                                forced: forced.clone(),
                                separator: from_rats(separator),
                            },
                        },
                    },
                    ObstructionDoc::Shift { m, branches } => Obstruction::Shift {
                        m: int_vector(m),
                        branches: branches
                            .iter()
                            .map(|b| ShiftBranch {
                                off_face: int_vector(&b.off_face),
                                separator: from_rats(&b.separator),
                            })
                            .collect(),
                    },
                })
            }
            StatusDoc::Undecided { bound } => SaturationStatus::UndecidedUpToBound(*bound),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayStatusDoc {
    pub index: usize,
    pub ray: Vector,
    pub codim_one: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<StatusDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleGensDoc {
    pub gens: Vec<Vector>,
    pub certified_up_to: u64,
    pub complete: bool,
}

impl ModuleGensDoc {
    pub fn new(mg: &ModuleGens) -> Self {
        ModuleGensDoc { gens: vectors(&mg.gens), certified_up_to: mg.certified_up_to, complete: mg.complete }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificatesDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperplane_normal: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spanning_rays: Option<Vec<Vector>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleDoc {
    pub degree: u64,
    pub checks: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub input: InputDocument,
    pub lattice_rank: usize,
    pub m_basis: Vec<Vector>,
    pub generators_m: Vec<Vector>,
    pub sigma_dual_rays: Vec<Vector>,
    pub sigma_dual_lines: Vec<Vector>,
    pub sigma_rays: Vec<Vector>,
    pub theta_rays: Vec<Vector>,
    #[serde(rename = "dim_X")]
    pub dim_x: usize,
    pub orbits: Vec<OrbitDoc>,
    pub module_generators: ModuleGensDoc,
    pub ray_statuses: Vec<RayStatusDoc>,
    pub gamma_min_rays: Vec<Vector>,
    pub gamma_max_rays: Vec<Vector>,
    pub verdict: String,
    pub certificates: CertificatesDoc,
    pub bounds_used: BoundsDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
}

impl ReportDocument {
    pub fn new(input: &InputDocument, h: &HoroVariety, rep: &FlexReport) -> Self {
        let orbits = h.orbit_lattice(Some(&rep.ray_statuses));
        ReportDocument {
            input: input.clone(),
            lattice_rank: h.lattice_rank(),
            m_basis: vectors(h.m_basis().basis_rows()),
            generators_m: vectors(h.gens_m()),
            sigma_dual_rays: vectors(h.sigma_dual().rays()),
            sigma_dual_lines: vectors(h.sigma_dual().lines()),
            sigma_rays: vectors(h.sigma().rays()),
            theta_rays: vectors(h.theta().rays()),
            dim_x: rep.dim_x,
            orbits: orbits.iter().map(orbit_doc).collect(),
            module_generators: ModuleGensDoc::new(&rep.module_gens),
            ray_statuses: rep
                .ray_statuses
                .iter()
                .map(|r| RayStatusDoc {
                    index: r.index,
                    ray: vector(&r.ray),
                    codim_one: r.codim_one,
                    status: r.status.as_ref().map(StatusDoc::from_status),
                })
                .collect(),
            gamma_min_rays: vectors(rep.gamma_min.rays()),
            gamma_max_rays: vectors(rep.gamma_max.rays()),
            verdict: rep.verdict.to_string(),
            certificates: CertificatesDoc {
                hyperplane_normal: rep.certificates.hyperplane_normal.as_ref().map(vector),
                spanning_rays: rep.certificates.spanning_rays.as_deref().map(vectors),
            },
            bounds_used: BoundsDoc::full(&rep.bounds),
            oracle: None,
        }
    }

    /// Rebuild the engine's report; shape errors are reported, certificates
    /// are left for [`HoroVariety::verify_report`].
    pub fn to_report(&self, h: &HoroVariety) -> Result<FlexReport, String> {
        let r = h.lattice_rank();
        let cone = |rays: &[Vector]| Cone::from_generators(r, &int_vectors(rays)).map_err(|e| e.to_string());
        let verdict = match self.verdict.as_str() {
            "FLEXIBLE" => Verdict::Flexible,
            "NOT_FLEXIBLE" => Verdict::NotFlexible,
            "UNDECIDED" => Verdict::Undecided,
            v => return Err(format!("unknown verdict {v:?}")),
        };
        let b = &self.bounds_used;
        let bounds = match (b.degree, b.module_degree, b.search_degree, b.root_height) {
            (Some(degree), Some(module_degree), Some(search_degree), Some(root_height)) => {
                Bounds { degree, module_degree, search_degree, root_height }
            }
            _ => return Err("bounds_used must list every bound".into()),
        };
        Ok(FlexReport {
            verdict,
            dim_x: self.dim_x,
            gamma_min: cone(&self.gamma_min_rays)?,
            gamma_max: cone(&self.gamma_max_rays)?,
            ray_statuses: self
                .ray_statuses
                .iter()
                .map(|d| RayStatus {
                    index: d.index,
                    ray: int_vector(&d.ray),
                    codim_one: d.codim_one,
                    status: d.status.as_ref().map(StatusDoc::to_status),
                })
                .collect(),
            module_gens: ModuleGens {
                gens: int_vectors(&self.module_generators.gens),
                certified_up_to: self.module_generators.certified_up_to,
                complete: self.module_generators.complete,
            },
            certificates: Certificates {
                hyperplane_normal: self.certificates.hyperplane_normal.as_deref().map(int_vector),
                spanning_rays: self.certificates.spanning_rays.as_deref().map(int_vectors),
            },
            bounds,
        })
    }
}
