//! Second homotopy classes of root spheres.
//!
//! `π₂` of the flag manifold is free on the wall spheres `[Σ_{β_i}]`; every
//! other root sphere `[Σ_α]`, `α ∈ n`, is the sum of the wall classes its
//! root crosses. The projection to the compact Grassmannian sends `[Σ_{β_i}]`
//! to `(−1)^i [T]`, and its kernel is `π₂` of the period domain.

use std::collections::BTreeMap;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::domain::{describe_domain, HodgeNumbers};
use crate::intlin::{integer_kernel, same_lattice};
use crate::rootcalc::{parabolic_from_ranks, ParabolicData, RootVector};
use crate::{Error, Result};

/// Coordinates of a class in the basis `{[Σ_{β_0}], …, [Σ_{β_{k−1}}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pi2Class {
    coords: Vec<i64>,
}

impl Pi2Class {
    pub fn new(coords: Vec<i64>) -> Self {
        Pi2Class { coords }
    }

    pub fn zero(k: usize) -> Self {
        Pi2Class { coords: vec![0; k] }
    }

    pub fn basis(k: usize, i: usize) -> Self {
        let mut c = Self::zero(k);
        c.coords[i] = 1;
        c
    }

    pub fn k(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    fn sub(&self, other: &Pi2Class) -> Pi2Class {
        Pi2Class::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }
}

impl Add for &Pi2Class {
    type Output = Pi2Class;
    fn add(self, rhs: &Pi2Class) -> Pi2Class {
        assert_eq!(self.k(), rhs.k(), "classes from different domains");
        Pi2Class::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

/// Class of the sphere of an `n`-root: coordinate `i` is 1 iff the root
/// crosses wall `i`.
pub fn class_of_root(root: &RootVector, pd: &ParabolicData) -> Result<Pi2Class> {
    if root.dim() != pd.m || !pd.is_n_root(root) {
        return Err(Error::InvalidArgument(format!(
            "{:?} is not a root of n for ranks {}",
            root.coords(),
            pd.ranks
        )));
    }
    let from = pd.block_of[root.minus()];
    let to = pd.block_of[root.plus()];
    let k = pd.ranks.k();
    Ok(Pi2Class::new((0..k).map(|i| i64::from(from <= i && i < to)).collect()))
}

/// Classes of every `n`-root obtained by saturating the two sphere relations
///
/// * `[Σ_{α+β}] = [Σ_α] + [Σ_β]` whenever `α`, `β`, `α+β` are roots of `n`,
/// * `[Σ_{β+γ}] = [Σ_β]` for `γ ∈ Φ ∩ −Φ`,
///
/// starting from `[Σ_{β_i}] = e_i`. Fails if the relations are inconsistent
/// or leave some root undetermined.
pub fn relation_closure(pd: &ParabolicData) -> Result<BTreeMap<RootVector, Pi2Class>> {
    let k = pd.ranks.k();
    let mut known: BTreeMap<RootVector, Pi2Class> = BTreeMap::new();
    for i in 0..k {
        known.insert(pd.beta(i), Pi2Class::basis(k, i));
    }

    // (sum, left, right): class(sum) = class(left) + class(right)
    let mut additive = Vec::new();
    // (a, b): class(a) = class(b)
    let mut shifts = Vec::new();
    for a in &pd.n_roots {
        for b in &pd.n_roots {
            if let Some(s) = a.checked_add(b) {
                if pd.is_n_root(&s) && a < b {
                    additive.push((s, a.clone(), b.clone()));
                }
            }
        }
        for g in &pd.v_roots {
            if let Some(s) = a.checked_add(g) {
                if pd.is_n_root(&s) {
                    shifts.push((s, a.clone()));
                }
            }
        }
    }

    let inconsistent = |what: &str, r: &RootVector| {
        Error::RelationClosure(format!("inconsistent {what} relation at {:?}", r.coords()))
    };
    let mut changed = true;
    while changed {
        changed = false;
        for (s, a, b) in &additive {
            let (cs, ca, cb) = (known.get(s).cloned(), known.get(a).cloned(), known.get(b).cloned());
            match (cs, ca, cb) {
                (Some(cs), Some(ca), Some(cb)) => {
                    if cs != &ca + &cb {
                        return Err(inconsistent("additive", s));
                    }
                }
                (None, Some(ca), Some(cb)) => {
                    known.insert(s.clone(), &ca + &cb);
                    changed = true;
                }
                (Some(cs), None, Some(cb)) => {
                    known.insert(a.clone(), cs.sub(&cb));
                    changed = true;
                }
                (Some(cs), Some(ca), None) => {
                    known.insert(b.clone(), cs.sub(&ca));
                    changed = true;
                }
                _ => {}
            }
        }
        for (a, b) in &shifts {
            match (known.get(a).cloned(), known.get(b).cloned()) {
                (Some(ca), Some(cb)) => {
                    if ca != cb {
                        return Err(inconsistent("shift", a));
                    }
                }
                (Some(c), None) => {
                    known.insert(b.clone(), c);
                    changed = true;
                }
                (None, Some(c)) => {
                    known.insert(a.clone(), c);
                    changed = true;
                }
                (None, None) => {}
            }
        }
    }

    if let Some(missing) = pd.n_roots.iter().find(|r| !known.contains_key(*r)) {
        return Err(Error::RelationClosure(format!(
            "class of {:?} is not determined by the relations",
            missing.coords()
        )));
    }
    Ok(known)
}

/// `Σ_i (−1)^i a_i`: the image in `π₂` of the compact Grassmannian, in units of `[T]`.
pub fn pi_u_star(c: &Pi2Class) -> i64 {
    c.coords
        .iter()
        .enumerate()
        .map(|(i, &a)| if i % 2 == 0 { a } else { -a })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi2Report {
    pub rank_du: usize,
    pub rank_d: usize,
    /// Wall roots `β_0, …, β_{k−1}`.
    pub basis_du: Vec<RootVector>,
    /// Roots `β_{i,i+1}` whose classes span the kernel.
    pub kernel_basis: Vec<RootVector>,
    pub kernel_classes: Vec<Pi2Class>,
    /// The kernel classes span exactly the integer kernel of the projection.
    pub kernel_matches: bool,
}

pub fn pi2_report(ranks: &HodgeNumbers) -> Pi2Report {
    let pd = parabolic_from_ranks(ranks);
    let k = ranks.k();
    let basis_du: Vec<RootVector> = (0..k).map(|i| pd.beta(i)).collect();
    let kernel_basis: Vec<RootVector> = (0..k.saturating_sub(1))
        .map(|i| pd.beta_range(i, i + 1))
        .collect();
    let kernel_classes: Vec<Pi2Class> = kernel_basis
        .iter()
        .map(|r| class_of_root(r, &pd).expect("β_{i,i+1} lies in n"))
        .collect();

    let row: Vec<i64> = (0..k).map(|i| pi_u_star(&Pi2Class::basis(k, i))).collect();
    let kernel = integer_kernel(&vec![row], k);
    let classes: Vec<Vec<i64>> = kernel_classes.iter().map(|c| c.coords.clone()).collect();
    let kernel_matches = classes.len() == kernel.len() && same_lattice(&classes, &kernel);

    Pi2Report {
        rank_du: k,
        rank_d: kernel.len(),
        basis_du,
        kernel_basis,
        kernel_classes,
        kernel_matches,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representability {
    Representable,
    /// `r_{i+1} = 1`: no superhorizontal representative is known.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorStatus {
    pub index: usize,
    pub next_rank: usize,
    pub status: Representability,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperhorizontalReport {
    pub per_generator: Vec<GeneratorStatus>,
    pub fully_generated: bool,
    pub cartoun_hypothesis: bool,
}

/// Which generators `[Σ_{β_{i,i+1}}]` of `π₂(D)` have superhorizontal
/// representatives via an embedded `PU(2,2)` domain: those with `r_{i+1} ≥ 2`.
pub fn superhorizontal_generation_report(ranks: &HodgeNumbers) -> SuperhorizontalReport {
    let r = ranks.ranks();
    let per_generator: Vec<GeneratorStatus> = (0..ranks.k().saturating_sub(1))
        .map(|i| GeneratorStatus {
            index: i,
            next_rank: r[i + 1],
            status: if r[i + 1] >= 2 {
                Representability::Representable
            } else {
                Representability::Unknown
            },
        })
        .collect();
    let fully_generated = per_generator
        .iter()
        .all(|g| g.status == Representability::Representable);
    SuperhorizontalReport {
        per_generator,
        fully_generated,
        cartoun_hypothesis: describe_domain(ranks).cartoun_hypothesis,
    }
}
