use anyhow::{anyhow, bail};
use horoflex::horospherical::{Bounds, FlexReport, HoroError, HoroVariety, Verdict};
use horoflex::oracle::{brute_holes, brute_toric_flexible, BruteScan};
use horoflex::semigroup::SaturationStatus;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::doc::{
    orbit_doc, vector, vectors, BoundsDoc, CertificatesDoc, InputDocument, ModuleGensDoc, OracleDoc, OrbitDoc,
    ReportDocument, Vector,
};
use crate::{text, BadInput, Format, Options, Outcome};

fn load(source: &str, opts: &Options) -> anyhow::Result<(InputDocument, HoroVariety, Bounds)> {
    let input: InputDocument = serde_json::from_str(source).map_err(|e| BadInput(format!("input document: {e}")))?;
    let h = input.variety().map_err(BadInput)?;
    let bounds = input.bounds.unwrap_or_default().merge(&opts.bounds).over(h.default_bounds());
    Ok((input, h, bounds))
}

fn emit<T: Serialize>(doc: &T, opts: &Options, render: impl FnOnce(&T) -> String) -> String {
    match opts.format {
        Format::Json => serde_json::to_string_pretty(doc).expect("documents serialize") + "\n",
        Format::Text => render(doc),
    }
}

fn no_oracle(opts: &Options, command: &str) -> anyhow::Result<()> {
    if opts.oracle {
        bail!(BadInput(format!("--oracle does not apply to {command}")));
    }
    Ok(())
}

/// Brute-force cross-check: holes up to degree 12, every saturation witness
/// (pointed case) and, for a rank-2 torus, the toric criterion.
fn oracle_check(h: &HoroVariety, rep: Option<&FlexReport>, bounds: &Bounds) -> anyhow::Result<OracleDoc> {
    let s = h.semigroup();
    let gens = h.gens_m();
    let degree = bounds.degree.min(12);
    let mut checks = 0;
    let engine = s.saturation_holes(degree)?;
    let brute = brute_holes(gens, degree);
    if engine != brute {
        bail!("oracle disagrees on holes up to degree {degree}");
    }
    checks += brute.len() + 1;
    if let Some(rep) = rep {
        let mg_level = rep.module_gens.gens.iter().map(|m| s.level(m)).max().unwrap_or_default();
        for st in &rep.ray_statuses {
            if let (Some(SaturationStatus::AlmostSaturated { witness }), true) = (&st.status, s.is_pointed()) {
                let level = (s.level(witness) + &mg_level).to_u64().ok_or_else(|| anyhow!("witness too large"))?;
                let scan = BruteScan::new(gens, level);
                if scan.is_member(witness) != Some(true) || scan.saturation_witness(witness).is_some() {
                    bail!("oracle rejects the saturation witness {witness}");
                }
                checks += 1;
            }
        }
        if h.group().simple_factors().is_empty() && h.lattice_rank() == 2 && rep.verdict != Verdict::Undecided {
            if (rep.verdict == Verdict::Flexible) != brute_toric_flexible(gens, 40) {
                bail!("oracle disagrees with the toric criterion");
            }
            checks += 1;
        }
    }
    Ok(OracleDoc { degree, checks, agree: true })
}

fn report_outcome(doc: ReportDocument, opts: &Options) -> Outcome {
    let undecided = doc.verdict == Verdict::Undecided.to_string();
    let output = if opts.quiet { format!("{}\n", doc.verdict) } else { emit(&doc, opts, text::report) };
    Outcome { output, undecided }
}

pub fn analyze(source: &str, opts: &Options) -> anyhow::Result<Outcome> {
    let (input, h, bounds) = load(source, opts)?;
    let rep = h.flexibility(&bounds)?;
    let mut doc = ReportDocument::new(&input, &h, &rep);
    if opts.oracle {
        doc.oracle = Some(oracle_check(&h, Some(&rep), &bounds)?);
    }
    Ok(report_outcome(doc, opts))
}

#[derive(Serialize, Deserialize)]
pub struct FlexibilityDoc {
    pub verdict: String,
    #[serde(rename = "dim_X")]
    pub dim_x: usize,
    pub gamma_min_rays: Vec<Vector>,
    pub gamma_max_rays: Vec<Vector>,
    pub certificates: CertificatesDoc,
    pub bounds_used: BoundsDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
}

pub fn flexibility(source: &str, opts: &Options) -> anyhow::Result<Outcome> {
    let (input, h, bounds) = load(source, opts)?;
    let rep = h.flexibility(&bounds)?;
    let full = ReportDocument::new(&input, &h, &rep);
    let doc = FlexibilityDoc {
        verdict: full.verdict,
        dim_x: full.dim_x,
        gamma_min_rays: full.gamma_min_rays,
        gamma_max_rays: full.gamma_max_rays,
        certificates: full.certificates,
        bounds_used: full.bounds_used,
        oracle: if opts.oracle { Some(oracle_check(&h, Some(&rep), &bounds)?) } else { None },
    };
    let undecided = rep.verdict == Verdict::Undecided;
    let output = if opts.quiet { format!("{}\n", doc.verdict) } else { emit(&doc, opts, text::flexibility) };
    Ok(Outcome { output, undecided })
}

#[derive(Serialize, Deserialize)]
pub struct OrbitsDoc {
    pub lattice_rank: usize,
    #[serde(rename = "dim_X")]
    pub dim_x: usize,
    pub orbits: Vec<OrbitDoc>,
}

pub fn orbits(source: &str, opts: &Options) -> anyhow::Result<Outcome> {
    no_oracle(opts, "orbits")?;
    let (_, h, _) = load(source, opts)?;
    let doc = OrbitsDoc {
        lattice_rank: h.lattice_rank(),
        dim_x: h.dimension(),
        // regularity needs the saturation analysis; see `analyze`
        orbits: h.orbit_lattice(None).iter().map(|o| OrbitDoc { regularity: None, ..orbit_doc(o) }).collect(),
    };
    Ok(Outcome { output: emit(&doc, opts, text::orbits), undecided: false })
}

#[derive(Serialize, Deserialize)]
pub struct HolesDoc {
    pub degree: u64,
    pub holes: Vec<Vector>,
    pub module_generators: ModuleGensDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
}

pub fn holes(source: &str, opts: &Options) -> anyhow::Result<Outcome> {
    let (_, h, bounds) = load(source, opts)?;
    let s = h.semigroup();
    let doc = HolesDoc {
        degree: bounds.degree,
        holes: vectors(&s.saturation_holes(bounds.degree)?),
        module_generators: ModuleGensDoc::new(&s.module_generators(bounds.module_degree)?),
        oracle: if opts.oracle { Some(oracle_check(&h, None, &bounds)?) } else { None },
    };
    Ok(Outcome { output: emit(&doc, opts, text::holes), undecided: false })
}

#[derive(Serialize, Deserialize)]
pub struct RootDoc {
    pub e: Vector,
    pub height: u64,
    pub in_theta_dual: bool,
}

#[derive(Serialize, Deserialize)]
pub struct RayRootsDoc {
    pub index: usize,
    pub ray: Vector,
    pub codim_one: bool,
    pub roots: Vec<RootDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct RootsDoc {
    pub height: u64,
    pub rays: Vec<RayRootsDoc>,
}

fn selected_rays(h: &HoroVariety, ray: Option<usize>) -> anyhow::Result<Vec<usize>> {
    let n = h.sigma().rays().len();
    match ray {
        Some(i) if i >= n => bail!(BadInput(format!("ray index {i} out of range: σ has {n} rays"))),
        Some(i) => Ok(vec![i]),
        None => Ok((0..n).collect()),
    }
}

pub fn roots(source: &str, opts: &Options, ray: Option<usize>, height: u64) -> anyhow::Result<Outcome> {
    no_oracle(opts, "roots")?;
    let (_, h, _) = load(source, opts)?;
    let codim1 = h.codim_one_rays()?;
    let mut rays = Vec::new();
    for i in selected_rays(&h, ray)? {
        let roots = h
            .sigma()
            .demazure_roots(i, height)?
            .into_iter()
            .map(|r| RootDoc {
                height: r.e.l1_norm().to_u64().expect("bounded by height"),
                in_theta_dual: h.theta_dual().contains(&r.e),
                e: vector(&r.e),
            })
            .collect();
        rays.push(RayRootsDoc { index: i, ray: vector(&h.sigma().rays()[i]), codim_one: codim1.contains(&i), roots });
    }
    let doc = RootsDoc { height, rays };
    Ok(Outcome { output: emit(&doc, opts, text::roots), undecided: false })
}

#[derive(Serialize, Deserialize)]
pub struct ShiftCheckDoc {
    pub generator: Vector,
    pub shifted: Vector,
    pub representation: Vector,
}

#[derive(Serialize, Deserialize)]
pub struct LndEntryDoc {
    pub index: usize,
    pub ray: Vector,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Vector>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub shift_checks: Vec<ShiftCheckDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Serialize, Deserialize)]
pub struct LndDoc {
    pub root_height: u64,
    pub derivations: Vec<LndEntryDoc>,
}

pub fn lnd(source: &str, opts: &Options, ray: Option<usize>) -> anyhow::Result<Outcome> {
    no_oracle(opts, "lnd")?;
    let (_, h, bounds) = load(source, opts)?;
    let codim1 = h.codim_one_rays()?;
    let wanted = selected_rays(&h, ray)?;
    if let Some(i) = ray.filter(|i| !codim1.contains(i)) {
        bail!(BadInput(format!("ray {i} does not give a codimension-one orbit")));
    }
    let (_, statuses) = h.ray_statuses(&bounds)?;
    let mut derivations = Vec::new();
    for st in statuses.iter().filter(|s| s.codim_one && wanted.contains(&s.index)) {
        let status = match &st.status {
            Some(SaturationStatus::AlmostSaturated { .. }) => "almost_saturated",
            Some(SaturationStatus::NowhereSaturatedCertified(_)) => "nowhere_saturated",
            _ => "undecided",
        };
        let mut entry = LndEntryDoc {
            index: st.index,
            ray: vector(&st.ray),
            status: status.into(),
            degree: None,
            shift_checks: Vec::new(),
            reason: None,
        };
        match h.find_lnd_root(st.index, st.status.as_ref(), bounds.root_height) {
            Ok(found) => {
                entry.degree = Some(vector(&found.root.e));
                entry.shift_checks = found
                    .shift_checks
                    .iter()
                    .map(|c| ShiftCheckDoc {
                        generator: vector(&c.generator),
                        shifted: vector(&c.shifted),
                        representation: vector(&c.representation),
                    })
                    .collect();
            }
            Err(e @ (HoroError::NoLndExists(_) | HoroError::NotFound(_))) => entry.reason = Some(e.to_string()),
            Err(e) => return Err(e.into()),
        }
        derivations.push(entry);
    }
    let doc = LndDoc { root_height: bounds.root_height, derivations };
    Ok(Outcome { output: emit(&doc, opts, text::lnd), undecided: false })
}

#[derive(Serialize, Deserialize)]
pub struct VerifyDoc {
    pub verified: bool,
    pub verdict: String,
}

pub fn verify(source: &str, opts: &Options) -> anyhow::Result<Outcome> {
    no_oracle(opts, "verify")?;
    let doc: ReportDocument = serde_json::from_str(source).map_err(|e| BadInput(format!("report document: {e}")))?;
    let h = doc.input.variety().map_err(BadInput)?;
    let rep = doc.to_report(&h).map_err(BadInput)?;
    h.verify_report(&rep).map_err(|e| anyhow!("verification failed: {e}"))?;
    let mut rebuilt = ReportDocument::new(&doc.input, &h, &rep);
    rebuilt.oracle = doc.oracle.clone();
    if rebuilt != doc {
        bail!("verification failed: the report does not match its input");
    }
    let out = VerifyDoc { verified: true, verdict: doc.verdict.clone() };
    let undecided = out.verdict == Verdict::Undecided.to_string();
    let output = if opts.quiet { format!("{}\n", out.verdict) } else { emit(&out, opts, text::verify) };
    Ok(Outcome { output, undecided })
}
