mod common;

use common::*;
use horoflex::oracle::{brute_full_lattice, brute_holes, brute_member};
use horoflex::semigroup::AffineSemigroup;
use proptest::prelude::*;

#[test]
fn shipped_semigroups_agree_with_oracle() {
    for (name, gens) in shipped_semigroups() {
        assert!(brute_full_lattice(&gens), "{name}");
        let n = oracle_agreement(&gens, 12).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(n > 0);
    }
}

#[test]
fn first_example_holes() {
    let s = AffineSemigroup::new(&vs(&[&[2, 0], &[1, 1], &[0, 1]])).unwrap();
    let holes = s.saturation_holes(5).unwrap();
    assert_eq!(holes, vs(&[&[1, 0], &[3, 0], &[5, 0]]));
}

#[test]
fn module_generators_cover_holes() {
    for (name, gens) in shipped_semigroups() {
        let s = AffineSemigroup::new(&gens).unwrap();
        let mg = s.module_generators(s.default_bound()).unwrap();
        assert!(mg.complete, "{name}");
        assert!(mg.gens[0].is_zero(), "{name}");
        for hole in s.saturation_holes(12).unwrap() {
            let covered = mg.gens.iter().any(|m| {
                let d = &hole - m;
                s.member(&d)
            });
            assert!(covered, "{name}: hole {hole} not covered");
        }
    }
}

fn semigroup_2d() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=4, 2), 2..=4)
}

proptest! {
    #![proptest_config(proptest_config(48))]

    #[test]
    fn random_semigroups_agree_with_oracle(rows in semigroup_2d()) {
        let gens: Vec<_> = rows.iter().map(|r| v(r)).collect();
        prop_assume!(brute_full_lattice(&gens));
        let s = AffineSemigroup::new(&gens).unwrap();
        // with a line the oracle's coefficient budget is a heuristic
        prop_assume!(s.is_pointed());
        let level = 8;
        prop_assert_eq!(s.saturation_holes(level).unwrap(), brute_holes(&gens, level));
        for p in s.saturation_points(level).unwrap() {
            prop_assert_eq!(s.member(&p), brute_member(&gens, &p, level), "at {}", p);
        }
    }

    #[test]
    fn representations_replay(rows in semigroup_2d(), coeffs in prop::collection::vec(0i64..=3, 4)) {
        let gens: Vec<_> = rows.iter().map(|r| v(r)).collect();
        prop_assume!(brute_full_lattice(&gens));
        let s = AffineSemigroup::new(&gens).unwrap();
        let target = gens.iter().zip(&coeffs).fold(v(&[0, 0]), |acc, (g, &c)| &acc + &g.scale(&c.into()));
        let x = s.representation(&target).expect("a sum of generators is a member");
        let back = s.gens().iter().zip(x.coords()).fold(v(&[0, 0]), |acc, (g, c)| &acc + &g.scale(c));
        prop_assert_eq!(back, target);
        prop_assert!(x.coords().iter().all(|c| c >= &0.into()));
    }
}
