//! Demazure roots: `e` with `⟨v_ρ, e⟩ = −1` on the distinguished ray and
//! `⟨v_j, e⟩ ≥ 0` on all others.

use num_bigint::BigInt;
use num_traits::Signed;

use super::{Cone, ConeError};
use crate::exactlat::IntVector;

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct DemazureRoot {
    pub e: IntVector,
    pub distinguished_ray_index: usize,
}

impl Cone {
    fn check_ray(&self, ray: usize) -> Result<(), ConeError> {
        if !self.is_strictly_convex() {
            return Err(ConeError::NotStrictlyConvex(self.lineality_dim()));
        }
        if ray >= self.rays.len() {
            return Err(ConeError::BadRay { index: ray, count: self.rays.len() });
        }
        Ok(())
    }

    pub fn is_demazure_root(&self, e: &IntVector, ray: usize) -> Result<bool, ConeError> {
        self.check_ray(ray)?;
        if e.dim() != self.ambient_dim {
            return Err(ConeError::ShapeMismatch { expected: self.ambient_dim, found: e.dim() });
        }
        Ok(self.rays.iter().enumerate().all(|(j, v)| {
            let p = v.dot(e);
            if j == ray {
                p == BigInt::from(-1)
            } else {
                !p.is_negative()
            }
        }))
    }

    /// Roots of ℓ1 height exactly `height`, in lexicographic order.
    pub fn demazure_roots_at_height(&self, ray: usize, height: u64) -> Result<Vec<DemazureRoot>, ConeError> {
        self.check_ray(ray)?;
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(self.ambient_dim);
        l1_sphere(self.ambient_dim, height as i64, &mut buf, &mut |v| {
            let e = IntVector::from_i64s(v);
            if self.is_demazure_root(&e, ray).unwrap_or(false) {
                out.push(DemazureRoot { e, distinguished_ray_index: ray });
            }
        });
        out.sort();
        Ok(out)
    }

    /// All roots with `Σ|e_i| ≤ max_height`, sorted by height then lexicographically.
    pub fn demazure_roots(&self, ray: usize, max_height: u64) -> Result<Vec<DemazureRoot>, ConeError> {
        let mut out = Vec::new();
        for h in 0..=max_height {
            out.extend(self.demazure_roots_at_height(ray, h)?);
        }
        Ok(out)
    }
}

/// Visit every integer vector of the given dimension with `Σ|v_i| = h`.
fn l1_sphere(dim: usize, h: i64, buf: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
    if buf.len() + 1 == dim {
        buf.push(h);
        visit(buf);
        buf.pop();
        if h != 0 {
            buf.push(-h);
            visit(buf);
            buf.pop();
        }
        return;
    }
    if dim == 0 {
        if h == 0 {
            visit(buf);
        }
        return;
    }
    for x in -h..=h {
        buf.push(x);
        l1_sphere(dim, h - x.abs(), buf, visit);
        buf.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;

    fn sigma2() -> Cone {
        Cone::from_generators(2, &[ivec![2, -1], ivec![0, 1]]).unwrap()
    }

    #[test]
    fn second_example_roots_by_height() {
        let s = sigma2();
        let ray = s.ray_index(&ivec![2, -1]).unwrap();
        let es = |h| -> Vec<IntVector> { s.demazure_roots(ray, h).unwrap().into_iter().map(|r| r.e).collect() };
        assert_eq!(es(6), vec![ivec![0, 1], ivec![1, 3]]);
        assert_eq!(es(7), vec![ivec![0, 1], ivec![1, 3], ivec![2, 5]]);
        assert!(s.is_demazure_root(&ivec![0, 1], ray).unwrap());
    }

    #[test]
    fn orthant_roots() {
        let c = Cone::from_generators(2, &[ivec![1, 0], ivec![0, 1]]).unwrap();
        let ray = c.ray_index(&ivec![1, 0]).unwrap();
        assert!(c.is_demazure_root(&ivec![-1, 0], ray).unwrap());
        assert!(!c.is_demazure_root(&ivec![-1, -1], ray).unwrap());
    }

    #[test]
    fn bad_ray_index() {
        assert_eq!(sigma2().demazure_roots(5, 3), Err(ConeError::BadRay { index: 5, count: 2 }));
    }

    #[test]
    fn sphere_counts() {
        // |{v ∈ ℤ² : |v|₁ = h}| = 4h for h > 0
        for h in 0..6 {
            let mut n = 0;
            l1_sphere(2, h, &mut Vec::new(), &mut |_| n += 1);
            assert_eq!(n, if h == 0 { 1 } else { 4 * h });
        }
    }
}
