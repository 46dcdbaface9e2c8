mod common;

use common::{proptest_config, v};
use horoflex::exactlat::linalg::{determinant, integer_kernel, rank};
use horoflex::exactlat::{
    coordinates_in_lattice, hermite_basis, lattice_separator, primitive_vector, solve_nonneg_integer, IntFeasibility,
    IntMatrix, IntVector,
};
use proptest::prelude::*;

fn small_vectors(dim: usize, n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, dim), n)
}

/// Every `x ∈ ℕ^n` with `Σ x_i ≤ bound`, searched for `A x = b`.
fn exhaustive(cols: &[Vec<i64>], b: &[i64], bound: i64) -> bool {
    fn go(cols: &[Vec<i64>], k: usize, rest: &mut Vec<i64>, budget: i64) -> bool {
        if rest.iter().all(|&x| x == 0) {
            return true;
        }
        if k == cols.len() || budget == 0 {
            return false;
        }
        if go(cols, k + 1, rest, budget) {
            return true;
        }
        for t in 1..=budget {
            rest.iter_mut().zip(&cols[k]).for_each(|(r, c)| *r -= c);
            if go(cols, k + 1, rest, budget - t) {
                rest.iter_mut().zip(&cols[k]).for_each(|(r, c)| *r += t * c);
                return true;
            }
        }
        rest.iter_mut().zip(&cols[k]).for_each(|(r, c)| *r += budget * c);
        false
    }
    go(cols, 0, &mut b.to_vec(), bound)
}

proptest! {
    #![proptest_config(proptest_config(64))]

    #[test]
    fn hnf_is_idempotent_and_reconstructs(rows in small_vectors(3, 1..=4)) {
        let gens: Vec<IntVector> = rows.iter().map(|r| v(r)).collect();
        let b = hermite_basis(&gens).unwrap();
        prop_assert_eq!(hermite_basis(b.basis_rows()).unwrap_or(b.clone()), b.clone());
        prop_assert_eq!(b.rank(), rank(&gens));
        for g in &gens {
            let c = coordinates_in_lattice(g, &b).expect("generator in its own span");
            prop_assert_eq!(&b.combine(&c), g);
            prop_assert!(lattice_separator(&b, g).is_none());
        }
    }

    #[test]
    fn separators_certify(rows in small_vectors(2, 1..=3), p in prop::collection::vec(-6i64..=6, 2)) {
        let gens: Vec<IntVector> = rows.iter().map(|r| v(r)).collect();
        let b = hermite_basis(&gens).unwrap();
        let target = v(&p);
        match lattice_separator(&b, &target) {
            Some(z) => {
                prop_assert!(coordinates_in_lattice(&target, &b).is_none());
                for g in b.basis_rows() {
                    prop_assert!(z.dot_int(g).is_integer());
                }
                prop_assert!(!z.dot_int(&target).is_integer());
            }
            None => prop_assert!(coordinates_in_lattice(&target, &b).is_some()),
        }
    }

    #[test]
    fn kernel_is_annihilated(rows in small_vectors(4, 1..=3)) {
        let gens: Vec<IntVector> = rows.iter().map(|r| v(r)).collect();
        let k = integer_kernel(4, &gens);
        prop_assert_eq!(k.len(), 4 - rank(&gens));
        for x in &k {
            for g in &gens {
                prop_assert_eq!(x.dot(g), 0.into());
            }
        }
    }

    #[test]
    fn feasibility_agrees_with_exhaustive_search(
        cols in small_vectors(2, 1..=3),
        b in prop::collection::vec(-5i64..=5, 2),
    ) {
        let columns: Vec<IntVector> = cols.iter().map(|c| v(c)).collect();
        let a = IntMatrix::from_columns(2, &columns).unwrap();
        let target = v(&b);
        let bound = 8u64;
        match solve_nonneg_integer(&a, &target, bound).unwrap() {
            IntFeasibility::Solution(x) => {
                prop_assert!(x.coords().iter().all(|c| c >= &0.into()));
                prop_assert_eq!(a.mul_vec(&x), target);
            }
            IntFeasibility::InfeasibleCertified(cert) => {
                prop_assert!(cert.verify(&a, &target));
                prop_assert!(!exhaustive(&cols, &b, 12));
            }
            IntFeasibility::UnknownUpToBound(_) => {
                prop_assert!(!exhaustive(&cols, &b, bound as i64));
            }
        }
    }
}

#[test]
fn primitive_vector_examples() {
    assert_eq!(primitive_vector(&v(&[4, -2])).unwrap(), v(&[2, -1]));
    assert_eq!(primitive_vector(&v(&[2, -1])).unwrap(), v(&[2, -1]));
    assert_eq!(primitive_vector(&v(&[0, 7])).unwrap(), v(&[0, 1]));
    assert!(primitive_vector(&v(&[0, 0])).is_err());
}

#[test]
fn feasibility_examples() {
    let cols = [v(&[2, 0]), v(&[1, 1]), v(&[0, 1])];
    let a = IntMatrix::from_columns(2, &cols).unwrap();
    match solve_nonneg_integer(&a, &v(&[1, 0]), 10).unwrap() {
        IntFeasibility::InfeasibleCertified(c) => assert!(c.verify(&a, &v(&[1, 0]))),
        other => panic!("expected a certificate, got {other:?}"),
    }
    assert_eq!(solve_nonneg_integer(&a, &v(&[2, 2]), 10).unwrap(), IntFeasibility::Solution(v(&[0, 2, 0])));
    assert_eq!(solve_nonneg_integer(&a, &v(&[0, 0]), 0).unwrap(), IntFeasibility::Solution(v(&[0, 0, 0])));
    assert_eq!(determinant(&[v(&[2, 1]), v(&[1, 1])]), 1.into());
}
