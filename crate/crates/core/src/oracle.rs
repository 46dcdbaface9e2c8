//! Slow brute-force references for semigroup questions.
//!
//! Nothing here calls into the cone, lattice or semigroup engines: facets
//! come from maximal minors, membership from layer-by-layer enumeration of
//! sums of generators, all in `i64`/`i128`. Generators must span `ℤ^r`
//! (see [`brute_full_lattice`]) and have small entries.
//!
//! The level of a point is `⟨w, x⟩` where `w` is the sum of the primitive
//! inward facet normals; when the cone contains a line it is
//! `max(⟨w, x⟩, ‖x‖∞)` so that every level set is finite.
//!
//! In the pointed case a member of level `D` is a sum of at most `D`
//! generators, so the scans are exhaustive. With a line the scans use sums
//! of at most `4D + 4` generators, which is only a heuristic budget.

use std::collections::HashSet;

use num_integer::Integer;

use crate::exactlat::IntVector;

type P = Vec<i64>;

fn to_points(gens: &[IntVector]) -> Vec<P> {
    gens.iter()
        .map(|g| g.to_i64s().expect("oracle inputs must fit in i64"))
        .filter(|g| g.iter().any(|&x| x != 0))
        .collect()
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Whether the generators span all of `ℤ^r`: the gcd of the maximal minors is 1.
pub fn brute_full_lattice(gens: &[IntVector]) -> bool {
    let pts = to_points(gens);
    let Some(r) = gens.first().map(|g| g.dim()) else { return false };
    let mut g: i128 = 0;
    for s in subsets(pts.len(), r) {
        let m: Vec<Vec<i128>> = s.iter().map(|&i| pts[i].iter().map(|&x| x as i128).collect()).collect();
        g = g.gcd(&det(&m));
    }
    g == 1
}

/// Primitive inward normals of the facets of `cone(gens)`, assumed
/// full-dimensional.
fn facets(r: usize, pts: &[P]) -> Vec<P> {
    let mut out: Vec<P> = Vec::new();
    for s in subsets(pts.len(), r.saturating_sub(1)) {
        let rows: Vec<Vec<i128>> = s.iter().map(|&i| pts[i].iter().map(|&x| x as i128).collect()).collect();
        let mut n: Vec<i128> = (0..r)
            .map(|j| {
                let minor: Vec<Vec<i128>> = rows
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                if j % 2 == 0 {
                    det(&minor)
                } else {
                    -det(&minor)
                }
            })
            .collect();
        let g = n.iter().fold(0i128, |a, &b| a.gcd(&b));
        if g == 0 {
            continue;
        }
        n.iter_mut().for_each(|x| *x /= g);
        let vals: Vec<i128> = pts.iter().map(|p| p.iter().zip(&n).map(|(&a, &b)| a as i128 * b).sum()).collect();
        let normal = if vals.iter().all(|&v| v >= 0) {
            n
        } else if vals.iter().all(|&v| v <= 0) {
            n.into_iter().map(|x| -x).collect()
        } else {
            continue;
        };
        let normal: P = normal.into_iter().map(|x| x as i64).collect();
        if !out.contains(&normal) {
            out.push(normal);
        }
    }
    out
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

struct Geometry {
    r: usize,
    pts: Vec<P>,
    facets: Vec<P>,
    w: P,
    pointed: bool,
}

impl Geometry {
    fn new(gens: &[IntVector]) -> Geometry {
        let r = gens.first().map(|g| g.dim()).unwrap_or(0);
        let pts = to_points(gens);
        let facets = facets(r, &pts);
        let w: P = (0..r).map(|i| facets.iter().map(|f| f[i]).sum()).collect();
        let pointed = pts.iter().all(|p| dot(&w, p) > 0);
        Geometry { r, pts, facets, w, pointed }
    }

    fn in_cone(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| dot(f, x) >= 0)
    }

    fn level(&self, x: &[i64]) -> i128 {
        let d = dot(&self.w, x);
        if self.pointed {
            d
        } else {
            d.max(x.iter().map(|v| v.unsigned_abs() as i128).max().unwrap_or(0))
        }
    }

    /// Every point of `cone(gens) ∩ ℤ^r` of level at most `bound`.
    fn lattice_points(&self, bound: u64) -> Vec<P> {
        let b = bound as i128;
        let radius: i64 = if self.pointed {
            // x = Σ c_g g with Σ c_g ⟨w,g⟩ ≤ b, so |x_i| ≤ b · max |g_i| / ⟨w,g⟩
            self.pts
                .iter()
                .map(|p| {
                    let wg = dot(&self.w, p);
                    let m = p.iter().map(|v| v.unsigned_abs() as i128).max().unwrap_or(0);
                    (b * m + wg - 1) / wg
                })
                .max()
                .unwrap_or(0) as i64
        } else {
            bound as i64
        };
        let mut out = Vec::new();
        let mut cur = vec![-radius; self.r];
        if self.r == 0 {
            return out;
        }
        loop {
            if self.in_cone(&cur) && self.level(&cur) <= b {
                out.push(cur.clone());
            }
            let mut i = 0;
            loop {
                if i == self.r {
                    return out;
                }
                if cur[i] < radius {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -radius;
                i += 1;
            }
        }
    }

    /// All sums of at most `terms` generators, pruned by level when the cone
    /// is pointed (levels only grow along a sum).
    fn sums(&self, terms: u64, level_cap: Option<i128>) -> HashSet<P> {
        let mut seen: HashSet<P> = HashSet::new();
        let zero = vec![0; self.r];
        seen.insert(zero.clone());
        let mut layer = vec![zero];
        for _ in 0..terms {
            let mut next = Vec::new();
            for x in &layer {
                for g in &self.pts {
                    let y: P = x.iter().zip(g).map(|(a, b)| a + b).collect();
                    if level_cap.is_some_and(|c| self.level(&y) > c) {
                        continue;
                    }
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next;
        }
        seen
    }

    fn coefficient_bound(&self, level: u64) -> u64 {
        if self.pointed {
            level
        } else {
            4 * level + 4
        }
    }
}

/// Is `v` a sum of at most `coeff_bound` generators?
pub fn brute_member(gens: &[IntVector], v: &IntVector, coeff_bound: u64) -> bool {
    let pts = to_points(gens);
    let target = v.to_i64s().expect("oracle inputs must fit in i64");
    fn go(pts: &[P], start: usize, rest: &mut P, budget: u64) -> bool {
        if rest.iter().all(|&x| x == 0) {
            return true;
        }
        if budget == 0 {
            return false;
        }
        for i in start..pts.len() {
            rest.iter_mut().zip(&pts[i]).for_each(|(a, b)| *a -= b);
            let hit = go(pts, i, rest, budget - 1);
            rest.iter_mut().zip(&pts[i]).for_each(|(a, b)| *a += b);
            if hit {
                return true;
            }
        }
        false
    }
    let mut rest = target;
    go(&pts, 0, &mut rest, coeff_bound)
}

/// Every lattice point of `cone(gens)` up to one level, with the members
/// among them, computed once for repeated queries.
pub struct BruteScan {
    geo: Geometry,
    level: u64,
    points: Vec<P>,
    members: HashSet<P>,
}

impl BruteScan {
    pub fn new(gens: &[IntVector], level: u64) -> BruteScan {
        let geo = Geometry::new(gens);
        let members = geo.sums(geo.coefficient_bound(level), geo.pointed.then_some(level as i128));
        let mut points = geo.lattice_points(level);
        points.sort_by_key(|x| (geo.level(x), x.clone()));
        BruteScan { geo, level, points, members }
    }

    /// Lattice points of the cone, sorted by level and then lexicographically.
    pub fn points(&self) -> Vec<IntVector> {
        self.points.iter().map(|x| IntVector::from_i64s(x)).collect()
    }

    /// `None` above the scanned level.
    pub fn is_member(&self, v: &IntVector) -> Option<bool> {
        let x = v.to_i64s()?;
        if !self.geo.in_cone(&x) {
            return Some(false);
        }
        (self.geo.level(&x) <= self.level as i128).then(|| self.members.contains(&x))
    }

    pub fn holes(&self) -> Vec<IntVector> {
        self.points.iter().filter(|x| !self.members.contains(*x)).map(|x| IntVector::from_i64s(x)).collect()
    }

    /// The first hole of `p + cone(gens)` in scan order.
    pub fn saturation_witness(&self, p: &IntVector) -> Option<IntVector> {
        let p = p.to_i64s().expect("oracle inputs must fit in i64");
        self.points
            .iter()
            .find(|x| {
                let d: P = x.iter().zip(&p).map(|(a, b)| a - b).collect();
                self.geo.in_cone(&d) && !self.members.contains(*x)
            })
            .map(|x| IntVector::from_i64s(x))
    }
}

/// Lattice points of `cone(gens)` up to level `degree_bound` that are not
/// sums of generators, sorted by level and then lexicographically.
pub fn brute_holes(gens: &[IntVector], degree_bound: u64) -> Vec<IntVector> {
    BruteScan::new(gens, degree_bound).holes()
}

/// A hole in `p + cone(gens)` of level at most `degree_bound`, if any.
pub fn brute_saturation_witness(gens: &[IntVector], p: &IntVector, degree_bound: u64) -> Option<IntVector> {
    BruteScan::new(gens, degree_bound).saturation_witness(p)
}

/// No hole of level at most `degree_bound` lies in `p + cone(gens)`.
pub fn brute_saturation_point(gens: &[IntVector], p: &IntVector, degree_bound: u64) -> bool {
    brute_saturation_witness(gens, p, degree_bound).is_none()
}

/// Primitive inward facet normals of `cone(gens)`: the rays of the dual cone.
pub fn brute_facet_normals(gens: &[IntVector]) -> Vec<IntVector> {
    let geo = Geometry::new(gens);
    let mut out: Vec<IntVector> = geo.facets.iter().map(|f| IntVector::from_i64s(f)).collect();
    out.sort();
    out
}

/// The toric flexibility criterion by brute force: a facet of `cone(gens)`
/// counts when one of its members of level at most `level / 2` has no hole
/// above it up to `level`; the variety is flexible when the normals of the
/// counted facets span the whole space.
pub fn brute_toric_flexible(gens: &[IntVector], level: u64) -> bool {
    let geo = Geometry::new(gens);
    let spans = |normals: &[P]| {
        subsets(normals.len(), geo.r).iter().any(|s| {
            let m: Vec<Vec<i128>> = s.iter().map(|&i| normals[i].iter().map(|&x| x as i128).collect()).collect();
            det(&m) != 0
        })
    };
    if !spans(&geo.facets) {
        return false;
    }
    let scan = BruteScan::new(gens, level);
    let counted: Vec<P> = scan
        .geo
        .facets
        .iter()
        .filter(|n| {
            scan.points.iter().any(|p| {
                dot(n, p) == 0
                    && scan.geo.level(p) <= (level / 2) as i128
                    && scan.members.contains(p)
                    && scan.saturation_witness(&IntVector::from_i64s(p)).is_none()
            })
        })
        .cloned()
        .collect();
    spans(&counted)
}

/// The oracle's own grading, for comparing levels with the engines.
pub fn brute_grading(gens: &[IntVector]) -> IntVector {
    IntVector::from_i64s(&Geometry::new(gens).w)
}
