//! Shared corpus and random instance generators for the integration tests.
#![allow(dead_code)]

use horoflex::exactlat::IntVector;
use horoflex::horospherical::HoroVariety;
use horoflex::rootsystem::{GroupSpec, SimpleFactor};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn v(xs: &[i64]) -> IntVector {
    IntVector::from_i64s(xs)
}

pub fn vs(xss: &[&[i64]]) -> Vec<IntVector> {
    xss.iter().map(|x| v(x)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn group(factors: &[&str], torus: usize) -> GroupSpec {
    let fs: Vec<SimpleFactor> = factors.iter().map(|f| f.parse().unwrap()).collect();
    GroupSpec::new(fs, torus)
}

pub fn example1() -> HoroVariety {
    HoroVariety::build(group(&["A1"], 1), &vs(&[&[2, 0], &[1, 1], &[0, 1]])).unwrap()
}

pub fn example2() -> HoroVariety {
    HoroVariety::build(group(&["A1"], 1), &vs(&[&[2, 0], &[1, 1], &[1, 2]])).unwrap()
}

/// Semigroups that generate `ℤ^r`, kept small enough for the oracle.
pub fn shipped_semigroups() -> Vec<(&'static str, Vec<IntVector>)> {
    vec![
        ("example-1", vs(&[&[2, 0], &[1, 1], &[0, 1]])),
        ("example-2", vs(&[&[2, 0], &[1, 1], &[1, 2]])),
        ("orthant", vs(&[&[1, 0], &[0, 1]])),
        ("numerical-2-3", vs(&[&[2], &[3]])),
        ("numerical-3-5-7", vs(&[&[3], &[5], &[7]])),
        ("wide-cone", vs(&[&[1, 0], &[1, 1], &[1, 2], &[1, 3]])),
        ("gapped-wide", vs(&[&[1, 0], &[1, 3], &[2, 3], &[3, 1]])),
        ("twisted-quadrant", vs(&[&[3, 0], &[2, 1], &[0, 1], &[1, 0]])),
        ("three-dim", vs(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2], &[0, 0, 1]])),
        ("three-dim-holes", vs(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[3, 0, 0]])),
        ("half-plane", vs(&[&[1, 0], &[-1, 0], &[1, 2], &[0, 3]])),
        ("sparse-ray", vs(&[&[2, 0], &[3, 0], &[0, 1], &[1, 1]])),
    ]
}

/// A random instance over `g`: fundamental coordinates in `0..=3`, torus
/// coordinates in `-3..=3`, between two and four generators.
pub fn random_instance(g: &GroupSpec, rng: &mut ChaCha8Rng) -> HoroVariety {
    let ss = g.semisimple_rank();
    let n = g.ambient_dim();
    loop {
        let k = rng.gen_range(2..=4);
        let gens: Vec<IntVector> = (0..k)
            .map(|_| {
                let xs: Vec<i64> =
                    (0..n).map(|i| if i < ss { rng.gen_range(0..=3) } else { rng.gen_range(-3..=3) }).collect();
                v(&xs)
            })
            .collect();
        if gens.iter().all(|g| g.is_zero()) {
            continue;
        }
        if let Ok(h) = HoroVariety::build(g.clone(), &gens) {
            return h;
        }
    }
}

/// Compare `member`, `saturation_holes` and `is_saturation_point` with the
/// oracle on every lattice point of σ∨ up to `level`. Returns the number of
/// comparisons made.
pub fn oracle_agreement(gens: &[IntVector], level: u64) -> Result<usize, String> {
    use horoflex::oracle::{brute_grading, brute_holes, BruteScan};
    use horoflex::semigroup::AffineSemigroup;
    use num_traits::ToPrimitive;

    let s = AffineSemigroup::new(gens).map_err(|e| e.to_string())?;
    if brute_grading(gens) != *s.grading() {
        return Err(format!("gradings differ: {} vs {}", brute_grading(gens), s.grading()));
    }
    let holes = s.saturation_holes(level).map_err(|e| e.to_string())?;
    let brute = brute_holes(gens, level);
    if holes != brute {
        return Err(format!("holes differ: {holes:?} vs {brute:?}"));
    }
    let mut checks = 1;
    let mg = s.module_generators(s.default_bound().max(level)).map_err(|e| e.to_string())?;
    if !mg.complete {
        return Err("module generators not certified complete".into());
    }
    // a failing p has a hole p + m with level at most level(p) + level(m)
    let mg_level = mg.gens.iter().map(|m| s.level(m).to_u64().unwrap()).max().unwrap_or(0);
    let scan = BruteScan::new(gens, level + mg_level);
    let points = s.saturation_points(level).map_err(|e| e.to_string())?;
    if points != BruteScan::new(gens, level).points() {
        return Err("lattice point enumerations differ".into());
    }
    for p in &points {
        let engine = s.member(p);
        if Some(engine) != scan.is_member(p) {
            return Err(format!("member disagrees at {p}"));
        }
        checks += 1;
        if engine {
            let sat = s.is_saturation_point(&mg, p).map_err(|e| e.to_string())?;
            if sat != scan.saturation_witness(p).is_none() {
                return Err(format!("saturation point disagrees at {p}"));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config { cases, failure_persistence: None, ..Default::default() }
}

/// Structural invariants of an instance and, when given, of its report.
pub fn structural_violations(h: &HoroVariety, report: Option<&horoflex::horospherical::FlexReport>) -> Vec<String> {
    let mut bad: Vec<String> = Vec::new();
    fn note(bad: &mut Vec<String>, ok: bool, what: &str) {
        if !ok {
            bad.push(what.to_string());
        }
    }
    macro_rules! check {
        ($ok:expr, $what:expr $(,)?) => {
            note(&mut bad, $ok, $what)
        };
    }
    for (name, c) in [("σ∨", h.sigma_dual()), ("σ", h.sigma()), ("θ∨", h.theta_dual()), ("θ", h.theta())] {
        check!(c.representations_agree(), &format!("{name} representations"));
        check!(c.dual().dual() == *c, &format!("{name} double dual"));
    }
    check!(h.sigma().dual() == *h.sigma_dual(), "σ is dual to σ∨");
    check!(h.theta().dual() == *h.theta_dual(), "θ is dual to θ∨");
    check!(h.sigma_dual().is_full_dimensional(), "σ∨ full-dimensional");
    check!(h.sigma().is_strictly_convex(), "σ strictly convex");
    check!(h.theta_dual().contains_cone(h.sigma_dual()), "σ∨ ⊆ θ∨");
    check!(h.sigma().contains_cone(h.theta()), "θ ⊆ σ");
    for c in [h.sigma(), h.sigma_dual()] {
        check!(c.faces().iter().all(|f| f.dims_complementary()), "face dimensions complementary");
    }
    match h.codim_one_rays() {
        Ok(rays) => {
            let orbits = h.orbit_lattice(None);
            let from_orbits: Vec<usize> = orbits
                .iter()
                .filter(|o| o.codim == 1)
                .map(|o| h.sigma().ray_index(&o.face.tau.rays()[0]).unwrap())
                .collect();
            let mut sorted = from_orbits.clone();
            sorted.sort();
            check!(sorted == rays, "codimension-one orbits are the codimension-one rays");
            check!(orbits.iter().filter(|o| o.codim == 0).count() == 1, "one open orbit");
        }
        Err(e) => bad.push(format!("codimension-one characterizations: {e}")),
    }
    if let Some(rep) = report {
        check!(rep.gamma_min.contains_cone(h.theta()), "θ ⊆ γ_min");
        check!(rep.gamma_max.contains_cone(&rep.gamma_min), "γ_min ⊆ γ_max");
        check!(h.sigma().contains_cone(&rep.gamma_max), "γ_max ⊆ σ");
        if let Err(e) = h.verify_report(rep) {
            bad.push(format!("report replay: {e}"));
        }
        if rep.gamma_min == rep.gamma_max {
            let g = &rep.gamma_min;
            check!(
                h.has_nonconstant_invertible(g) != g.is_full_dimensional(),
                "invertibles exist iff γ is not full-dimensional",
            );
        }
    }
    bad
}

/// Apply a unimodular change of the torus coordinates (the last `torus`
/// entries) built from `steps` random elementary operations.
pub fn retwist_torus(
    gens: &[IntVector],
    ss: usize,
    torus: usize,
    steps: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<IntVector> {
    let mut rows: Vec<Vec<i64>> = gens.iter().map(|g| g.to_i64s().unwrap()).collect();
    if torus < 2 {
        if torus == 1 && rng.gen_bool(0.5) {
            rows.iter_mut().for_each(|r| r[ss] = -r[ss]);
        }
        return rows.iter().map(|r| v(r)).collect();
    }
    for _ in 0..steps {
        let i = ss + rng.gen_range(0..torus);
        let mut j = ss + rng.gen_range(0..torus);
        if i == j {
            j = if j + 1 < ss + torus { j + 1 } else { ss };
        }
        let k = if rng.gen_bool(0.5) { 1 } else { -1 };
        rows.iter_mut().for_each(|r| r[i] += k * r[j]);
    }
    rows.iter().map(|r| v(r)).collect()
}
