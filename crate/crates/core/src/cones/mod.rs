//! Rational polyhedral cones with both representations kept in canonical
//! form, so that equal cones are structurally equal.
//!
//! A cone is stored as
//! `lines` (a canonical basis of its lineality space),
//! `rays` (extremal rays modulo the lineality space, projected orthogonally
//! off it), `eqs` (a canonical basis of span⊥) and `facets` (inner facet
//! normals projected onto the span). Duality swaps lines with eqs and rays
//! with facets.

mod dd;
mod faces;
mod roots;

pub use faces::FacePair;
pub use roots::DemazureRoot;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exactlat::IntVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("cone is not strictly convex (lineality dimension {0})")]
    NotStrictlyConvex(usize),
    #[error("ray index {index} out of range for a cone with {count} rays")]
    BadRay { index: usize, count: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cone {
    ambient_dim: usize,
    lines: Vec<IntVector>,
    rays: Vec<IntVector>,
    eqs: Vec<IntVector>,
    facets: Vec<IntVector>,
}

fn check_dims(dim: usize, vs: &[IntVector]) -> Result<(), ConeError> {
    match vs.iter().find(|v| v.dim() != dim) {
        Some(v) => Err(ConeError::ShapeMismatch { expected: dim, found: v.dim() }),
        None => Ok(()),
    }
}

impl Cone {
    /// `ℚ_{≥0} gens`.
    pub fn from_generators(dim: usize, gens: &[IntVector]) -> Result<Cone, ConeError> {
        Cone::from_generators_and_lines(dim, gens, &[])
    }

    /// `ℚ_{≥0} gens + ℚ lines`.
    pub fn from_generators_and_lines(dim: usize, gens: &[IntVector], lines: &[IntVector]) -> Result<Cone, ConeError> {
        check_dims(dim, gens)?;
        check_dims(dim, lines)?;
        let (eqs, facets) = dd::generators(dim, gens, lines);
        let (lines, rays) = dd::generators(dim, &facets, &eqs);
        Ok(Cone::assemble(dim, lines, rays, eqs, facets))
    }

    /// `{x : ⟨a,x⟩ ≥ 0 for a ∈ ineqs, ⟨b,x⟩ = 0 for b ∈ eqs}`.
    pub fn from_inequalities(dim: usize, ineqs: &[IntVector], eqs: &[IntVector]) -> Result<Cone, ConeError> {
        check_dims(dim, ineqs)?;
        check_dims(dim, eqs)?;
        let (lines, rays) = dd::generators(dim, ineqs, eqs);
        let (eqs, facets) = dd::generators(dim, &rays, &lines);
        Ok(Cone::assemble(dim, lines, rays, eqs, facets))
    }

    fn assemble(
        ambient_dim: usize,
        lines: Vec<IntVector>,
        rays: Vec<IntVector>,
        eqs: Vec<IntVector>,
        facets: Vec<IntVector>,
    ) -> Cone {
        let c = Cone { ambient_dim, lines, rays, eqs, facets };
        debug_assert!(c.representations_agree());
        c
    }

    /// Every generator satisfies every inequality, and the two
    /// representations have complementary dimensions.
    pub fn representations_agree(&self) -> bool {
        let gens = self.rays.iter().chain(&self.lines);
        for g in gens {
            if self.eqs.iter().any(|e| !e.dot(g).is_zero()) || self.facets.iter().any(|f| f.dot(g).is_negative()) {
                return false;
            }
        }
        self.lines.iter().all(|l| self.facets.iter().all(|f| f.dot(l).is_zero()))
            && self.lines.len() + self.eqs.len() <= self.ambient_dim
            && self.dim() + self.eqs.len() == self.ambient_dim
    }

    pub fn zero(dim: usize) -> Cone {
        Cone::from_generators(dim, &[]).expect("no generators to mismatch")
    }

    pub fn whole_space(dim: usize) -> Cone {
        Cone::from_inequalities(dim, &[], &[]).expect("no inequalities to mismatch")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Extremal rays modulo the lineality space.
    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn lines(&self) -> &[IntVector] {
        &self.lines
    }

    pub fn facets(&self) -> &[IntVector] {
        &self.facets
    }

    pub fn equations(&self) -> &[IntVector] {
        &self.eqs
    }

    /// A generating set: rays together with both orientations of every line.
    pub fn generators(&self) -> Vec<IntVector> {
        let mut out = self.rays.clone();
        for l in &self.lines {
            out.push(l.clone());
            out.push(-l);
        }
        out.sort();
        out
    }

    /// An H-representation using inequalities only.
    pub fn inequalities(&self) -> Vec<IntVector> {
        let mut out = self.facets.clone();
        for e in &self.eqs {
            out.push(e.clone());
            out.push(-e);
        }
        out.sort();
        out
    }

    pub fn lineality_dim(&self) -> usize {
        self.lines.len()
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.lines.len() + crate::exactlat::linalg::rank(&self.rays)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.eqs.is_empty()
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn extremal_rays(&self) -> Result<&[IntVector], ConeError> {
        if !self.is_strictly_convex() {
            return Err(ConeError::NotStrictlyConvex(self.lines.len()));
        }
        Ok(&self.rays)
    }

    /// `{w : ⟨w,v⟩ ≥ 0 for all v in the cone}`.
    pub fn dual(&self) -> Cone {
        Cone {
            ambient_dim: self.ambient_dim,
            lines: self.eqs.clone(),
            rays: self.facets.clone(),
            eqs: self.lines.clone(),
            facets: self.rays.clone(),
        }
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        v.dim() == self.ambient_dim
            && self.eqs.iter().all(|e| e.dot(v).is_zero())
            && self.facets.iter().all(|f| !f.dot(v).is_negative())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// Sum of the rays; lies in the relative interior.
    pub fn relative_interior_point(&self) -> IntVector {
        self.rays.iter().fold(IntVector::zeros(self.ambient_dim), |acc, r| &acc + r)
    }

    /// Position of `ray` (up to positive scaling) among the rays.
    pub fn ray_index(&self, ray: &IntVector) -> Option<usize> {
        let p = crate::exactlat::primitive_vector(ray).ok()?;
        self.rays.iter().position(|r| *r == p)
    }

    /// The values `⟨f, v⟩` over the facet normals.
    pub fn facet_values(&self, v: &IntVector) -> Vec<BigInt> {
        self.facets.iter().map(|f| f.dot(v)).collect()
    }
}

impl std::fmt::Display for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "cone(")?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}
