//! Double description: generators of `{x : ⟨a,x⟩ ≥ 0 (a ∈ ineqs), ⟨b,x⟩ = 0 (b ∈ eqs)}`.
//!
//! The cone starts as the whole space (all unit vectors are lines) and the
//! constraints are intersected in one at a time. Two extremal rays are
//! combined only when they are adjacent, which is decided combinatorially
//! from their sets of tight inequalities.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactlat::linalg::{canonical_subspace_basis, project_out};
use crate::exactlat::{primitive_vector, IntVector};

struct Ray {
    v: IntVector,
    tight: Vec<bool>,
}

fn prim(v: IntVector) -> IntVector {
    primitive_vector(&v).expect("double description never produces a zero ray")
}

/// Returns `(lines, rays)` in canonical form: lines as the canonical basis of
/// the lineality space, rays primitive, orthogonal to the lines, sorted.
pub(crate) fn generators(dim: usize, ineqs: &[IntVector], eqs: &[IntVector]) -> (Vec<IntVector>, Vec<IntVector>) {
    let ineqs: Vec<&IntVector> = ineqs.iter().filter(|a| !a.is_zero()).collect();
    let m = ineqs.len();
    let mut lines: Vec<IntVector> = (0..dim).map(|i| IntVector::unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for a in eqs.iter().filter(|a| !a.is_zero()) {
        cut(a, None, m, &mut lines, &mut rays);
    }
    for (k, a) in ineqs.iter().enumerate() {
        cut(a, Some(k), m, &mut lines, &mut rays);
    }

    let lines = canonical_subspace_basis(dim, &lines);
    let mut out: Vec<IntVector> =
        rays.into_iter().filter_map(|r| if lines.is_empty() { Some(r.v) } else { project_out(&r.v, &lines) }).collect();
    out.sort();
    out.dedup();
    (lines, out)
}

/// Intersect with `⟨a,x⟩ ≥ 0` (when `index` is the inequality's position)
/// or with `⟨a,x⟩ = 0` (when `index` is `None`).
fn cut(a: &IntVector, index: Option<usize>, m: usize, lines: &mut Vec<IntVector>, rays: &mut Vec<Ray>) {
    if let Some(pos) = lines.iter().position(|l| !a.dot(l).is_zero()) {
        let mut l = lines.swap_remove(pos);
        let mut c = a.dot(&l);
        if c.is_negative() {
            l = -&l;
            c = -c;
        }
        for li in lines.iter_mut() {
            let f = a.dot(li);
            if !f.is_zero() {
                *li = prim(li.combine(&c, &l, &-f));
            }
        }
        for r in rays.iter_mut() {
            let f = a.dot(&r.v);
            if !f.is_zero() {
                r.v = prim(r.v.combine(&c, &l, &-f));
            }
            if let Some(k) = index {
                r.tight[k] = true;
            }
        }
        if let Some(k) = index {
            // the line becomes a ray tight on everything processed before
            let mut tight = vec![false; m];
            tight[..k].fill(true);
            rays.push(Ray { v: l, tight });
        }
        return;
    }

    let vals: Vec<BigInt> = rays.iter().map(|r| a.dot(&r.v)).collect();
    let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
    let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
    if let (true, Some(k)) = (neg.is_empty(), index) {
        for (r, v) in rays.iter_mut().zip(&vals) {
            if v.is_zero() {
                r.tight[k] = true;
            }
        }
        return;
    }

    let mut fresh = Vec::new();
    for &p in &pos {
        for &n in &neg {
            if !adjacent(rays, p, n) {
                continue;
            }
            let v = prim(rays[n].v.combine(&vals[p], &rays[p].v, &-&vals[n]));
            let mut tight: Vec<bool> = rays[p].tight.iter().zip(&rays[n].tight).map(|(x, y)| *x && *y).collect();
            if let Some(k) = index {
                tight[k] = true;
            }
            fresh.push(Ray { v, tight });
        }
    }
    let old = std::mem::take(rays);
    for (i, mut r) in old.into_iter().enumerate() {
        let keep = vals[i].is_zero() || (index.is_some() && vals[i].is_positive());
        if keep {
            if let (Some(k), true) = (index, vals[i].is_zero()) {
                r.tight[k] = true;
            }
            rays.push(r);
        }
    }
    rays.extend(fresh);
}

/// `p` and `n` span a 2-face iff no third ray is tight wherever both are.
fn adjacent(rays: &[Ray], p: usize, n: usize) -> bool {
    let common: Vec<usize> = (0..rays[p].tight.len()).filter(|&j| rays[p].tight[j] && rays[n].tight[j]).collect();
    !rays.iter().enumerate().any(|(i, r)| i != p && i != n && common.iter().all(|&j| r.tight[j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;

    #[test]
    fn orthant_from_inequalities() {
        let (lines, rays) = generators(2, &[ivec![1, 0], ivec![0, 1]], &[]);
        assert!(lines.is_empty());
        assert_eq!(rays, vec![ivec![0, 1], ivec![1, 0]]);
    }

    #[test]
    fn halfplane_keeps_a_line() {
        let (lines, rays) = generators(2, &[ivec![1, 0]], &[]);
        assert_eq!(lines, vec![ivec![0, 1]]);
        assert_eq!(rays, vec![ivec![1, 0]]);
    }

    #[test]
    fn equation_cuts_dimension() {
        let (lines, rays) = generators(3, &[ivec![1, 0, 0], ivec![0, 1, 0]], &[ivec![1, 1, -1]]);
        assert!(lines.is_empty());
        assert_eq!(rays, vec![ivec![0, 1, 1], ivec![1, 0, 1]]);
    }

    #[test]
    fn square_pyramid() {
        // |x| ≤ z and |y| ≤ z: the cone over a square
        let ineqs = [ivec![-1, 0, 1], ivec![1, 0, 1], ivec![0, -1, 1], ivec![0, 1, 1]];
        let (lines, rays) = generators(3, &ineqs, &[]);
        assert!(lines.is_empty());
        assert_eq!(rays, vec![ivec![-1, -1, 1], ivec![-1, 1, 1], ivec![1, -1, 1], ivec![1, 1, 1]]);
    }
}
