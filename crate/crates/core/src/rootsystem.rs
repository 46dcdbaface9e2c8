//! Root data for `G = G′ × (𝕂^×)^s` with `G′` a product of simple factors.
//!
//! Weights are written in the basis of fundamental weights of the simple
//! factors followed by the standard characters of the torus, so dominance is
//! a sign condition on the first `semisimple_rank` coordinates. Simple roots
//! are numbered from 0 across all factors in order.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::cones::Cone;
use crate::exactlat::IntVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("invalid group specification: {0}")]
    BadGroupSpec(String),
    #[error("generator {generator} has negative fundamental coordinate {coordinate}")]
    NotDominant { generator: usize, coordinate: usize },
    #[error("weight has length {found}, expected {expected}")]
    ShapeMismatch { expected: usize, found: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleFactor {
    pub kind: SimpleType,
    pub rank: usize,
}

impl SimpleFactor {
    pub fn new(kind: SimpleType, rank: usize) -> Result<Self, RootError> {
        let ok = match kind {
            SimpleType::A => rank >= 1,
            SimpleType::B | SimpleType::C => rank >= 2,
            SimpleType::D => rank >= 3,
            SimpleType::E => (6..=8).contains(&rank),
            SimpleType::F => rank == 4,
            SimpleType::G => rank == 2,
        };
        if !ok {
            return Err(RootError::BadGroupSpec(format!("no simple group of type {kind:?}{rank}")));
        }
        Ok(SimpleFactor { kind, rank })
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

impl FromStr for SimpleFactor {
    type Err = RootError;

    /// Parses names such as `A1`, `b2`, `E8`.
    fn from_str(s: &str) -> Result<Self, RootError> {
        let bad = || RootError::BadGroupSpec(format!("cannot parse simple factor {s:?}"));
        let mut chars = s.trim().chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => SimpleType::A,
            Some('B') => SimpleType::B,
            Some('C') => SimpleType::C,
            Some('D') => SimpleType::D,
            Some('E') => SimpleType::E,
            Some('F') => SimpleType::F,
            Some('G') => SimpleType::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        SimpleFactor::new(kind, rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    simple_factors: Vec<SimpleFactor>,
    torus_rank: usize,
}

impl GroupSpec {
    pub fn new(simple_factors: Vec<SimpleFactor>, torus_rank: usize) -> Self {
        GroupSpec { simple_factors, torus_rank }
    }

    pub fn torus(rank: usize) -> Self {
        GroupSpec::new(Vec::new(), rank)
    }

    pub fn simple_factors(&self) -> &[SimpleFactor] {
        &self.simple_factors
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_factors.iter().map(|f| f.rank).sum()
    }

    /// Length of a weight vector.
    pub fn ambient_dim(&self) -> usize {
        self.semisimple_rank() + self.torus_rank
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.simple_factors.iter().map(|s| s.to_string()).collect();
        if self.torus_rank > 0 || parts.is_empty() {
            parts.push(format!("T{}", self.torus_rank));
        }
        write!(f, "{}", parts.join("×"))
    }
}

/// Cartan matrix with `a[i][j] = ⟨α_i^∨, α_j⟩`, Bourbaki numbering.
pub fn cartan_matrix(factor: SimpleFactor) -> Vec<Vec<i64>> {
    let n = factor.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match factor.kind {
        SimpleType::A | SimpleType::B | SimpleType::C | SimpleType::F | SimpleType::G => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        SimpleType::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        SimpleType::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
    }
    match factor.kind {
        // α_n short
        SimpleType::B => a[n - 1][n - 2] = -2,
        // α_n long
        SimpleType::C => a[n - 2][n - 1] = -2,
        // α₃, α₄ short
        SimpleType::F => a[2][1] = -2,
        // α₁ short
        SimpleType::G => a[0][1] = -3,
        _ => {}
    }
    a
}

/// Positive roots of one simple factor in simple-root coordinates, sorted
/// by height and then lexicographically.
pub fn factor_positive_roots(factor: SimpleFactor) -> Vec<Vec<i64>> {
    let n = factor.rank;
    let a = cartan_matrix(factor);
    let mut all: HashSet<Vec<i64>> = HashSet::new();
    let mut level: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut out = Vec::new();
    while !level.is_empty() {
        level.sort();
        level.dedup();
        all.extend(level.iter().cloned());
        let mut next = Vec::new();
        for beta in &level {
            for i in 0..n {
                // α_i-string through β: β − pα_i, …, β + qα_i with p − q = ⟨α_i^∨, β⟩
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| a[i][j] * beta[j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.push(up);
                }
            }
        }
        out.extend(level);
        level = next;
    }
    out
}

/// Positive roots of all factors, each in global simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub positive_roots: Vec<IntVector>,
    pub cartan: Vec<Vec<i64>>,
}

pub fn positive_roots(g: &GroupSpec) -> RootDatum {
    let n = g.semisimple_rank();
    let mut cartan = vec![vec![0i64; n]; n];
    let mut roots = Vec::new();
    let mut offset = 0;
    for &f in g.simple_factors() {
        let a = cartan_matrix(f);
        for i in 0..f.rank {
            for j in 0..f.rank {
                cartan[offset + i][offset + j] = a[i][j];
            }
        }
        for r in factor_positive_roots(f) {
            let mut v = vec![0i64; n];
            v[offset..offset + f.rank].copy_from_slice(&r);
            roots.push(IntVector::from_i64s(&v));
        }
        offset += f.rank;
    }
    RootDatum { positive_roots: roots, cartan }
}

/// The fundamental Weyl chamber in weight coordinates; torus directions are lines.
pub fn dominant_chamber(g: &GroupSpec) -> Cone {
    let d = g.ambient_dim();
    let ineqs: Vec<IntVector> = (0..g.semisimple_rank()).map(|i| IntVector::unit(d, i)).collect();
    Cone::from_inequalities(d, &ineqs, &[]).expect("unit vectors have the ambient dimension")
}

/// Simple roots not orthogonal to some generator. For dominant weights
/// `(α_i, λ) ≠ 0` exactly when the i-th fundamental coordinate is nonzero.
pub fn support_of_semigroup(g: &GroupSpec, gens: &[IntVector]) -> Result<BTreeSet<usize>, RootError> {
    let d = g.ambient_dim();
    let mut s = BTreeSet::new();
    for (k, v) in gens.iter().enumerate() {
        if v.dim() != d {
            return Err(RootError::ShapeMismatch { expected: d, found: v.dim() });
        }
        for i in 0..g.semisimple_rank() {
            if v[i].is_negative() {
                return Err(RootError::NotDominant { generator: k, coordinate: i });
            }
            if !v[i].is_zero() {
                s.insert(i);
            }
        }
    }
    Ok(s)
}

/// Number of positive roots whose support lies in `s`.
pub fn delta(g: &GroupSpec, s: &BTreeSet<usize>) -> usize {
    positive_roots(g).positive_roots.iter().filter(|r| (0..r.dim()).all(|i| r[i].is_zero() || s.contains(&i))).count()
}
