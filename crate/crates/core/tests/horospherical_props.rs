mod common;

use common::*;
use horoflex::cones::Cone;
use horoflex::horospherical::{HoroVariety, Verdict};
use horoflex::oracle::brute_toric_flexible;
use horoflex::rootsystem::GroupSpec;
use horoflex::semigroup::AffineSemigroup;
use rand::seq::SliceRandom;

fn group_types() -> Vec<GroupSpec> {
    vec![
        group(&["A1"], 1),
        group(&["A2"], 0),
        group(&["B2"], 1),
        group(&["G2"], 0),
        group(&["A1", "A1"], 1),
        group(&["A3"], 0),
        group(&[], 2),
    ]
}

#[test]
fn codim_one_characterizations_agree() {
    let mut r = rng(11);
    for g in group_types() {
        for _ in 0..50 {
            let h = random_instance(&g, &mut r);
            assert!(h.codim_one_rays().is_ok(), "{g} {:?}", h.ambient_gens());
        }
    }
}

#[test]
fn random_reports_satisfy_invariants() {
    let mut r = rng(12);
    for g in group_types() {
        for _ in 0..12 {
            let h = random_instance(&g, &mut r);
            let rep = h.flexibility(&h.default_bounds()).unwrap();
            let bad = structural_violations(&h, Some(&rep));
            assert!(bad.is_empty(), "{g} {:?}: {bad:?}", h.ambient_gens());
        }
    }
}

#[test]
fn semisimple_groups_are_flexible() {
    let mut r = rng(13);
    for g in [group(&["A1"], 0), group(&["A2"], 0), group(&["B2"], 0), group(&["G2"], 0)] {
        for _ in 0..10 {
            let h = random_instance(&g, &mut r);
            assert_eq!(
                h.flexibility(&h.default_bounds()).unwrap().verdict,
                Verdict::Flexible,
                "{g} {:?}",
                h.ambient_gens()
            );
        }
    }
}

#[test]
fn saturated_semigroups_have_gamma_sigma() {
    let mut r = rng(14);
    for g in [group(&["A1"], 1), group(&["A1", "A1"], 1), group(&["A2"], 1), group(&[], 2)] {
        let mut done = 0;
        while done < 5 {
            let seed = random_instance(&g, &mut r);
            let cone = Cone::from_generators(g.ambient_dim(), seed.ambient_gens()).unwrap();
            if !cone.is_full_dimensional() {
                continue;
            }
            let hb = AffineSemigroup::cone_hilbert_basis(&cone, 48).unwrap();
            let h = HoroVariety::build(g.clone(), &hb).unwrap();
            assert!(h.semigroup().saturation_holes(16).unwrap().is_empty());
            let rep = h.flexibility(&h.default_bounds()).unwrap();
            assert_eq!(&rep.gamma_min, h.sigma(), "{g} {hb:?}");
            assert_eq!(rep.verdict == Verdict::Flexible, h.sigma().is_full_dimensional());
            done += 1;
        }
    }
}

#[test]
fn torus_verdicts_match_toric_oracle() {
    let mut r = rng(15);
    for _ in 0..20 {
        let h = random_instance(&group(&[], 2), &mut r);
        let rep = h.flexibility(&h.default_bounds()).unwrap();
        assert_ne!(rep.verdict, Verdict::Undecided);
        let expected = brute_toric_flexible(h.gens_m(), 40);
        assert_eq!(rep.verdict == Verdict::Flexible, expected, "{:?}", h.ambient_gens());
    }
}

#[test]
fn verdicts_are_coordinate_and_order_invariant() {
    let mut r = rng(16);
    for (g, n) in [(group(&["A1"], 1), 6), (group(&["A1"], 2), 2), (group(&[], 2), 6), (group(&["A2"], 1), 3)] {
        for _ in 0..n {
            let h = random_instance(&g, &mut r);
            let verdict = h.flexibility(&h.default_bounds()).unwrap().verdict;
            let ss = g.semisimple_rank();
            let twisted = retwist_torus(h.ambient_gens(), ss, g.torus_rank(), 2, &mut r);
            let h2 = HoroVariety::build(g.clone(), &twisted).unwrap();
            assert_eq!(h2.flexibility(&h2.default_bounds()).unwrap().verdict, verdict, "{g} {twisted:?}");
            let mut shuffled = h.ambient_gens().to_vec();
            shuffled.shuffle(&mut r);
            let h3 = HoroVariety::build(g.clone(), &shuffled).unwrap();
            assert_eq!(h3.flexibility(&h3.default_bounds()).unwrap().verdict, verdict);
            assert_eq!(h3.dimension(), h.dimension());
        }
    }
}

#[test]
fn lnd_roots_replay() {
    let mut r = rng(17);
    let mut found = 0;
    for g in [group(&["A1"], 1), group(&[], 2), group(&["A2"], 1)] {
        for _ in 0..10 {
            let h = random_instance(&g, &mut r);
            let (_, statuses) = h.ray_statuses(&h.default_bounds()).unwrap();
            for st in statuses.iter().filter(|s| s.significant()) {
                let lnd = h.find_lnd_root(st.index, st.status.as_ref(), h.default_bounds().root_height).unwrap();
                assert!(h.verify_lnd_root(&lnd), "{g} {:?} {lnd:?}", h.ambient_gens());
                assert!(h.sigma().is_demazure_root(&lnd.root.e, st.index).unwrap());
                for c in &lnd.shift_checks {
                    assert!(h.semigroup().member(&c.shifted));
                }
                found += 1;
            }
        }
    }
    assert!(found > 10);
}

#[test]
fn worked_examples() {
    let h1 = example1();
    assert!(structural_violations(&h1, Some(&h1.flexibility(&h1.default_bounds()).unwrap())).is_empty());
    let h2 = example2();
    let rep = h2.flexibility(&h2.default_bounds()).unwrap();
    assert!(structural_violations(&h2, Some(&rep)).is_empty());
    assert_eq!(rep.verdict, Verdict::Flexible);
}
