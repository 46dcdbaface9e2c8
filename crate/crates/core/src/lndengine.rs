//! Weight-level model of homogeneous locally nilpotent derivations.
//!
//! Every weight `Λ ∈ 𝔉` carries one formal symbol `x^Λ` with `x^Λ · x^μ =
//! x^{Λ+μ}`, so the model algebra is the semigroup algebra `ℚ[𝔉]`. A
//! derivation of degree `e` along the ray `v_ρ` acts by
//! `D(x^Λ) = scale · ⟨Λ, v_ρ⟩ · x^{Λ+e}`. For a torus this is the
//! coordinate ring itself; in general it keeps the weights and drops the
//! multiplicities of the weight spaces.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactlat::{lp_feasible, IntVector, LpOutcome};
use crate::horospherical::{HoroVariety, LndRoot};
use crate::semigroup::AffineSemigroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LndError {
    #[error("weight {0} is not in the semigroup")]
    NotInSemigroup(IntVector),
    #[error("derivation sends a term to weight {0}, outside the semigroup")]
    NotWellDefined(IntVector),
    #[error("no power up to {steps} annihilates x^{weight}")]
    NotNilpotent { weight: IntVector, steps: u64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("degree {0} fails the root checks")]
    InvalidRoot(IntVector),
}

type Terms = BTreeMap<IntVector, BigRational>;

/// A finite `ℚ`-combination of weight symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedElement {
    dim: usize,
    terms: Terms,
}

impl GradedElement {
    pub fn zero(dim: usize) -> Self {
        GradedElement { dim, terms: Terms::new() }
    }

    /// Membership of every weight in `s` is checked; zero coefficients are dropped.
    pub fn new(
        s: &AffineSemigroup,
        terms: impl IntoIterator<Item = (IntVector, BigRational)>,
    ) -> Result<Self, LndError> {
        let dim = s.lattice_rank();
        let mut out = GradedElement::zero(dim);
        for (w, c) in terms {
            if w.dim() != dim {
                return Err(LndError::ShapeMismatch { expected: dim, found: w.dim() });
            }
            if !s.member(&w) {
                return Err(LndError::NotInSemigroup(w));
            }
            out.add_term(w, c);
        }
        Ok(out)
    }

    /// The symbol `x^Λ`.
    pub fn symbol(s: &AffineSemigroup, weight: &IntVector) -> Result<Self, LndError> {
        Self::new(s, [(weight.clone(), BigRational::one())])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<IntVector, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, weight: &IntVector) -> BigRational {
        self.terms.get(weight).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, w: IntVector, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> GradedElement {
        let mut out = GradedElement::zero(self.dim);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    /// Product in the semigroup algebra; weights add, so 𝔉 is preserved.
    pub fn mul(&self, other: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·x^{w}")?;
        }
        Ok(())
    }
}

/// `D(x^Λ) = scale · ⟨Λ, ray⟩ · x^{Λ+degree}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousDerivation {
    pub degree: IntVector,
    pub ray: IntVector,
    pub scale: BigRational,
}

impl HomogeneousDerivation {
    pub fn new(degree: IntVector, ray: IntVector, scale: BigRational) -> Result<Self, LndError> {
        if degree.dim() != ray.dim() {
            return Err(LndError::ShapeMismatch { expected: ray.dim(), found: degree.dim() });
        }
        Ok(HomogeneousDerivation { degree, ray, scale })
    }

    /// The derivation attached to a root found by `find_lnd_root`, after
    /// replaying its checks.
    pub fn from_root(h: &HoroVariety, root: &LndRoot, scale: BigRational) -> Result<Self, LndError> {
        if !h.verify_lnd_root(root) {
            return Err(LndError::InvalidRoot(root.root.e.clone()));
        }
        let ray = h.sigma().rays()[root.root.distinguished_ray_index].clone();
        Self::new(root.root.e.clone(), ray, scale)
    }

    fn raw_apply(&self, x: &Terms) -> Terms {
        let mut out = GradedElement::zero(self.degree.dim());
        for (w, c) in x {
            let pairing = w.dot(&self.ray);
            if pairing.is_zero() {
                continue;
            }
            out.add_term(w + &self.degree, c * &self.scale * BigRational::from_integer(pairing));
        }
        out.terms
    }

    /// Apply to `x`; every produced weight is checked against `s`.
    pub fn apply(&self, s: &AffineSemigroup, x: &GradedElement) -> Result<GradedElement, LndError> {
        if x.dim != self.degree.dim() {
            return Err(LndError::ShapeMismatch { expected: self.degree.dim(), found: x.dim });
        }
        let terms = self.raw_apply(&x.terms);
        if let Some(w) = terms.keys().find(|w| !s.member(w)) {
            return Err(LndError::NotWellDefined(w.clone()));
        }
        Ok(GradedElement { dim: x.dim, terms })
    }

    /// Smallest `k` with `D^k(x^Λ) = 0`, searching up to `|⟨Λ, ray⟩| + 64` powers.
    pub fn nilpotency_order(&self, s: &AffineSemigroup, weight: &IntVector) -> Result<u64, LndError> {
        let cap = weight.dot(&self.ray).abs().to_u64().unwrap_or(u64::MAX - 64) + 64;
        let mut x = GradedElement::symbol(s, weight)?;
        for k in 0..=cap {
            if x.is_zero() {
                return Ok(k);
            }
            x = self.apply(s, &x)?;
        }
        Err(LndError::NotNilpotent { weight: weight.clone(), steps: cap })
    }

    /// `exp(tD)(x) = Σ tⁱ/i! Dⁱ(x)`; the series stops once a power vanishes.
    pub fn exp_action(
        &self,
        s: &AffineSemigroup,
        t: &BigRational,
        x: &GradedElement,
    ) -> Result<GradedElement, LndError> {
        let cap =
            x.terms.keys().map(|w| w.dot(&self.ray).abs().to_u64().unwrap_or(u64::MAX - 64)).max().unwrap_or(0) + 64;
        let mut total = GradedElement::zero(x.dim);
        let mut power = x.clone();
        let mut factor = BigRational::one();
        for i in 0..=cap {
            if power.is_zero() {
                return Ok(total);
            }
            total = total.add(&power.scale(&factor));
            power = self.apply(s, &power)?;
            factor = factor * t / BigRational::from_integer(BigInt::from(i + 1));
        }
        let weight = x.terms.keys().next().cloned().unwrap_or_else(|| IntVector::zeros(x.dim));
        Err(LndError::NotNilpotent { weight, steps: cap })
    }
}

fn sum_apply(ds: &[&HomogeneousDerivation], x: &Terms) -> Terms {
    let mut out = GradedElement::zero(ds.first().map(|d| d.degree.dim()).unwrap_or(0));
    for d in ds {
        for (w, c) in d.raw_apply(x) {
            out.add_term(w, c);
        }
    }
    out.terms
}

fn nilpotent_within(ds: &[&HomogeneousDerivation], x: &Terms, max_steps: u64) -> bool {
    let mut cur = x.clone();
    for _ in 0..=max_steps {
        if cur.is_empty() {
            return true;
        }
        cur = sum_apply(ds, &cur);
    }
    false
}

/// Degrees that are vertices of the convex hull of `degrees`, by exact LP:
/// `d` is a vertex iff it is not a convex combination of the other degrees.
pub fn hull_vertices(degrees: &[IntVector]) -> Vec<IntVector> {
    let mut distinct = degrees.to_vec();
    distinct.sort();
    distinct.dedup();
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    distinct
        .iter()
        .filter(|d| {
            let others: Vec<&IntVector> = distinct.iter().filter(|o| o != d).collect();
            if others.is_empty() {
                return true;
            }
            let mut a: Vec<Vec<BigRational>> =
                (0..d.dim()).map(|i| others.iter().map(|o| q(&o[i])).collect()).collect();
            a.push(vec![BigRational::one(); others.len()]);
            let mut b: Vec<BigRational> = d.coords().iter().map(q).collect();
            b.push(BigRational::one());
            matches!(lp_feasible(&a, &b, others.len()), LpOutcome::Infeasible(_))
        })
        .cloned()
        .collect()
}

/// Split `D = Σ components` by degree and check that each component sitting
/// at a vertex of the degree polytope is nilpotent on every sample, within
/// `max_steps` powers. The sum itself must be nilpotent on the samples;
/// otherwise the precondition fails with `NotNilpotent`.
pub fn vertex_component_check(
    components: &[HomogeneousDerivation],
    samples: &[GradedElement],
    max_steps: u64,
) -> Result<bool, LndError> {
    let all: Vec<&HomogeneousDerivation> = components.iter().collect();
    for x in samples {
        if !nilpotent_within(&all, &x.terms, max_steps) {
            let weight = x.terms.keys().next().cloned().unwrap_or_else(|| IntVector::zeros(x.dim));
            return Err(LndError::NotNilpotent { weight, steps: max_steps });
        }
    }
    let degrees: Vec<IntVector> = components.iter().map(|d| d.degree.clone()).collect();
    for v in hull_vertices(&degrees) {
        let part: Vec<&HomogeneousDerivation> = components.iter().filter(|d| d.degree == v).collect();
        if samples.iter().any(|x| !nilpotent_within(&part, &x.terms, max_steps)) {
            return Ok(false);
        }
    }
    Ok(true)
}
