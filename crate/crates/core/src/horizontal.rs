//! Real 2-planes in the superhorizontal fiber.
//!
//! The fiber of the superhorizontal distribution at the base point is the
//! level `−1` piece `⊕_i Hom(E^i, E^{i+1})`. A horizontal vector is a tuple
//! `(A_0, …, A_{k−1})` with `A_i` of size `r_{i+1} × r_i`. The bracket 2-form
//! takes values in the level `−2` piece `⊕_i Hom(E^i, E^{i+2})`:
//!
//! ```text
//! dθ(u, w)_i = B_{i+1} A_i − A_{i+1} B_i      (u = (A_i), w = (B_i))
//! ```
//!
//! which for ranks `(1, n, 1)`, with `u = (v_1, v_2ᵗ)` and `w = (w_1, w_2ᵗ)`,
//! is the complex symplectic form `v_1ᵗ w_2 − v_2ᵗ w_1` on `C^n × C^n`.

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::domain::HodgeNumbers;
use crate::linalg::{int, real_rank, realify, span_rank, Matrix, Scalar};
use crate::pi2::{class_of_root, Pi2Class};
use crate::rootcalc::{parabolic_from_ranks, RootVector, SparseMatrix};
use crate::sampling::{self, SuiteRng};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HorizontalVector {
    ranks: HodgeNumbers,
    components: Vec<Matrix>,
}

impl HorizontalVector {
    pub fn new(ranks: HodgeNumbers, components: Vec<Matrix>) -> Result<Self> {
        if components.len() != ranks.k() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} components, got {}",
                ranks.k(),
                components.len()
            )));
        }
        for (i, a) in components.iter().enumerate() {
            if (a.rows(), a.cols()) != (ranks.rank(i + 1), ranks.rank(i)) {
                return Err(Error::DimensionMismatch(format!(
                    "component {i} must be {}x{}",
                    ranks.rank(i + 1),
                    ranks.rank(i)
                )));
            }
        }
        Ok(HorizontalVector { ranks, components })
    }

    pub fn zero(ranks: &HodgeNumbers) -> Self {
        let components = (0..ranks.k())
            .map(|i| Matrix::zeros(ranks.rank(i + 1), ranks.rank(i)))
            .collect();
        HorizontalVector {
            ranks: ranks.clone(),
            components,
        }
    }

    /// `(v_1, v_2) ∈ C^n × C^n` in the `(1, n, 1)` model.
    pub fn pu2n(v1: &[Scalar], v2: &[Scalar]) -> Result<Self> {
        if v1.len() != v2.len() || v1.is_empty() {
            return Err(Error::DimensionMismatch(
                "both halves must have the same positive length".into(),
            ));
        }
        let n = v1.len();
        let ranks = HodgeNumbers::new(vec![1, n, 1])?;
        let a0 = Matrix::from_fn(n, 1, |r, _| v1[r].clone());
        let a1 = Matrix::from_fn(1, n, |_, c| v2[c].clone());
        HorizontalVector::new(ranks, vec![a0, a1])
    }

    pub fn ranks(&self) -> &HodgeNumbers {
        &self.ranks
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    /// Complex coordinates, component by component, row-major.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.components.iter().flat_map(|a| a.entries().cloned()).collect()
    }

    pub fn from_flat(ranks: &HodgeNumbers, flat: &[Scalar]) -> Result<Self> {
        if flat.len() != fiber_dim(ranks) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                fiber_dim(ranks),
                flat.len()
            )));
        }
        let mut offset = 0;
        let components = (0..ranks.k())
            .map(|i| {
                let (r, c) = (ranks.rank(i + 1), ranks.rank(i));
                let m = Matrix::from_fn(r, c, |a, b| flat[offset + a * c + b].clone());
                offset += r * c;
                m
            })
            .collect();
        HorizontalVector::new(ranks.clone(), components)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        HorizontalVector {
            ranks: self.ranks.clone(),
            components: self.components.iter().map(|a| a.scale(s)).collect(),
        }
    }

    pub fn add(&self, other: &HorizontalVector) -> Result<Self> {
        check_ranks(self, other)?;
        Ok(HorizontalVector {
            ranks: self.ranks.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }
}

/// Complex dimension `Σ r_i r_{i+1}` of the horizontal fiber.
pub fn fiber_dim(ranks: &HodgeNumbers) -> usize {
    ranks.ranks().windows(2).map(|w| w[0] * w[1]).sum()
}

/// Complex dimension `Σ r_i r_{i+2}` of the level `−2` piece.
pub fn level_two_dim(ranks: &HodgeNumbers) -> usize {
    ranks.ranks().windows(3).map(|w| w[0] * w[2]).sum()
}

fn check_ranks(u: &HorizontalVector, w: &HorizontalVector) -> Result<()> {
    if u.ranks != w.ranks {
        return Err(Error::DimensionMismatch(format!(
            "horizontal vectors for ranks {} and {}",
            u.ranks, w.ranks
        )));
    }
    Ok(())
}

/// `dθ(u, w)`: component `i` is the `r_{i+2} × r_i` matrix `B_{i+1}A_i − A_{i+1}B_i`.
pub fn dtheta_bracket(u: &HorizontalVector, w: &HorizontalVector) -> Result<Vec<Matrix>> {
    check_ranks(u, w)?;
    let (a, b) = (&u.components, &w.components);
    Ok((0..u.ranks.k().saturating_sub(1))
        .map(|i| &(&b[i + 1] * &a[i]) - &(&a[i + 1] * &b[i]))
        .collect())
}

fn flatten_level_two(parts: &[Matrix]) -> Vec<Scalar> {
    parts.iter().flat_map(|m| m.entries().cloned()).collect()
}

/// An oriented real 2-plane `span_R(u, w)` in the horizontal fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPlane {
    u: HorizontalVector,
    w: HorizontalVector,
    orientation: i8,
}

impl TwoPlane {
    pub fn new(u: HorizontalVector, w: HorizontalVector) -> Result<Self> {
        check_ranks(&u, &w)?;
        let n = fiber_dim(&u.ranks);
        if real_rank(n, &[u.flatten(), w.flatten()]) != 2 {
            return Err(Error::Degenerate(
                "spanning vectors are linearly dependent over R".into(),
            ));
        }
        Ok(TwoPlane {
            u,
            w,
            orientation: 1,
        })
    }

    pub fn u(&self) -> &HorizontalVector {
        &self.u
    }

    pub fn w(&self) -> &HorizontalVector {
        &self.w
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    /// Same plane with the basis `(a u + b w, c u + d w)`; the orientation
    /// flips when `ad − bc < 0`.
    pub fn rebase(&self, a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> Result<Self> {
        if !(a.im.is_zero() && b.im.is_zero() && c.im.is_zero() && d.im.is_zero()) {
            return Err(Error::InvalidArgument("change of basis must be real".into()));
        }
        let det = &(a * d) - &(b * c);
        if det.is_zero() {
            return Err(Error::Degenerate("singular change of basis".into()));
        }
        let u = self.u.scale(a).add(&self.w.scale(b))?;
        let w = self.u.scale(c).add(&self.w.scale(d))?;
        let flip = if det.re > num_rational::BigRational::zero() { 1 } else { -1 };
        Ok(TwoPlane {
            u,
            w,
            orientation: self.orientation * flip,
        })
    }

    /// `u` and `w` are complex-linearly dependent: the plane is a complex line.
    pub fn is_complex_line(&self) -> bool {
        span_rank(fiber_dim(&self.u.ranks), &[self.u.flatten(), self.w.flatten()]) < 2
    }
}

pub fn is_isotropic(s: &TwoPlane) -> bool {
    dtheta_bracket(&s.u, &s.w)
        .expect("plane vectors share ranks")
        .iter()
        .all(Matrix::is_zero)
}

/// Surjectivity of `v ↦ (x ↦ dθ(v, x))|_S` from the horizontal fiber onto
/// the real-linear maps `S → (level −2)`, decided by an exact real rank.
pub fn is_regular(s: &TwoPlane) -> bool {
    let ranks = &s.u.ranks;
    let n = fiber_dim(ranks);
    let target = 4 * level_two_dim(ranks);
    if target == 0 {
        return true;
    }
    let mut images = Vec::with_capacity(2 * n);
    for j in 0..n {
        for unit in [int(1), crate::linalg::gauss(0, 1)] {
            let mut flat = vec![Scalar::zero(); n];
            flat[j] = unit;
            let v = HorizontalVector::from_flat(ranks, &flat).expect("fiber dimension");
            let mut image = realify(&flatten_level_two(&dtheta_bracket(&v, &s.u).expect("ranks")));
            image.extend(realify(&flatten_level_two(&dtheta_bracket(&v, &s.w).expect("ranks"))));
            images.push(image);
        }
    }
    span_rank(target, &images) == target
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneRecord {
    pub seed: u64,
    pub sample: u64,
    pub isotropic: bool,
    pub regular: bool,
    pub complex_line: bool,
}

/// How a sampled plane was produced; mixing the kinds makes both sides of
/// every criterion occur with positive frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PlaneKind {
    ComplexLine,
    Isotropic,
    Generic,
}

fn random_vector(ranks: &HodgeNumbers, rng: &mut SuiteRng) -> HorizontalVector {
    let flat: Vec<Scalar> = (0..fiber_dim(ranks))
        .map(|_| sampling::small_gauss_rational(rng, 2, 2))
        .collect();
    HorizontalVector::from_flat(ranks, &flat).expect("fiber dimension")
}

/// Basis of `{w : dθ(u, w) = 0}`, as flat coordinate columns.
fn isotropic_partners(u: &HorizontalVector) -> Matrix {
    let ranks = &u.ranks;
    let n = fiber_dim(ranks);
    let columns: Vec<Vec<Scalar>> = (0..n)
        .map(|j| {
            let mut flat = vec![Scalar::zero(); n];
            flat[j] = int(1);
            let e = HorizontalVector::from_flat(ranks, &flat).expect("fiber dimension");
            flatten_level_two(&dtheta_bracket(u, &e).expect("ranks"))
        })
        .collect();
    let rows = level_two_dim(ranks);
    if rows == 0 {
        return Matrix::identity(n);
    }
    Matrix::from_columns(rows, &columns).nullspace()
}

/// A seeded random oriented plane for the given ranks.
pub fn sample_plane(ranks: &HodgeNumbers, rng: &mut SuiteRng) -> TwoPlane {
    loop {
        let kind = match rng.gen_range(0..4) {
            0 => PlaneKind::ComplexLine,
            1 => PlaneKind::Isotropic,
            _ => PlaneKind::Generic,
        };
        let u = random_vector(ranks, rng);
        let w = match kind {
            PlaneKind::ComplexLine => {
                let c = crate::linalg::gauss(rng.gen_range(-2..=2), rng.gen_range(1..=2));
                u.scale(&c)
            }
            PlaneKind::Isotropic => {
                let basis = isotropic_partners(&u);
                let mut flat = vec![Scalar::zero(); basis.rows()];
                for j in 0..basis.cols() {
                    let c = sampling::small_gauss(rng, 2);
                    for (r, f) in flat.iter_mut().enumerate() {
                        *f = &*f + &(&basis[(r, j)] * &c);
                    }
                }
                HorizontalVector::from_flat(ranks, &flat).expect("fiber dimension")
            }
            PlaneKind::Generic => random_vector(ranks, rng),
        };
        if let Ok(plane) = TwoPlane::new(u, w) {
            return plane;
        }
    }
}

pub fn classify(plane: &TwoPlane, seed: u64, sample: u64) -> PlaneRecord {
    PlaneRecord {
        seed,
        sample,
        isotropic: is_isotropic(plane),
        regular: is_regular(plane),
        complex_line: plane.is_complex_line(),
    }
}

/// Seeded planes of the `(1, n, 1)` model, classified.
pub fn classify_pu2n_samples(n: usize, samples: u64, seed: u64) -> Result<Vec<PlaneRecord>> {
    let ranks = HodgeNumbers::new(vec![1, n, 1])?;
    Ok((0..samples)
        .map(|i| {
            let mut rng = sampling::stream(seed, "pu2n", i);
            classify(&sample_plane(&ranks, &mut rng), seed, i)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pu2nSummary {
    pub n: usize,
    pub samples: u64,
    /// Planes where regularity disagrees with complex independence.
    pub mismatches: u64,
    pub isotropic: u64,
    pub regular: u64,
    pub regular_isotropic: u64,
    /// Isotropic planes that are not complex lines.
    pub isotropic_not_line: u64,
    pub found_regular_isotropic: bool,
    pub passed: bool,
}

pub fn summarize_pu2n(n: usize, records: &[PlaneRecord]) -> Pu2nSummary {
    let count = |f: &dyn Fn(&PlaneRecord) -> bool| records.iter().filter(|r| f(r)).count() as u64;
    let mismatches = count(&|r| r.regular == r.complex_line);
    let regular_isotropic = count(&|r| r.regular && r.isotropic);
    let isotropic_not_line = count(&|r| r.isotropic && !r.complex_line);
    let found = regular_isotropic > 0;
    let passed = mismatches == 0
        && if n == 1 {
            !found && isotropic_not_line == 0
        } else {
            found
        };
    Pu2nSummary {
        n,
        samples: records.len() as u64,
        mismatches,
        isotropic: count(&|r| r.isotropic),
        regular: count(&|r| r.regular),
        regular_isotropic,
        isotropic_not_line,
        found_regular_isotropic: found,
        passed,
    }
}

/// Regular ⟺ complex-independent, checked on seeded planes of the `(1, n, 1)` model.
pub fn verify_pu2n_criterion(n: usize, samples: u64, seed: u64) -> Result<Pu2nSummary> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(summarize_pu2n(n, &classify_pu2n_samples(n, samples, seed)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerDims {
    pub stab_dim: usize,
    pub orbit_dim: usize,
    /// `dim Sp(n, C) = n(2n + 1)`.
    pub group_dim: usize,
}

/// Complex dimensions of the stabilizer `Sp(n−k) × C^{2k(n−k)} × C^{k(k+1)/2}`
/// of an isotropic `k`-tuple, and of its `Sp(n, C)`-orbit.
pub fn stabilizer_dimension(n: usize, k: usize) -> Result<StabilizerDims> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let rest = n - k;
    let stab_dim = rest * (2 * rest + 1) + 2 * k * rest + k * (k + 1) / 2;
    let group_dim = n * (2 * n + 1);
    Ok(StabilizerDims {
        stab_dim,
        orbit_dim: group_dim - stab_dim,
        group_dim,
    })
}

/// Orbit dimension by building the tuple one vector at a time: the `j`-th
/// vector ranges over an open subset of the `(2n − j + 1)`-dimensional
/// symplectic complement of the previous ones.
pub fn isotropic_tuple_dimension(n: usize, k: usize) -> usize {
    (1..=k).map(|j| 2 * n - (j - 1)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Su22Embedding {
    /// Coordinates `(a, a+1, b, b+1)` of `W` (0-based, consecutive blocks).
    pub w_indices: [usize; 4],
    pub sub_ranks: Vec<usize>,
    pub closed_under_bracket: bool,
    pub sub_hodge_type: bool,
    pub level_one_included: bool,
    pub highest_root: RootVector,
    pub highest_root_class: Pi2Class,
    pub class_matches: bool,
}

impl Su22Embedding {
    pub fn all_checks_pass(&self) -> bool {
        self.closed_under_bracket && self.sub_hodge_type && self.level_one_included && self.class_matches
    }
}

/// The copy of `sl(4, C)` on `W = ⟨e^i_{last}⟩ ⊕ ⟨e^{i+1}_{first}, e^{i+1}_{last}⟩ ⊕ ⟨e^{i+2}_{first}⟩`.
pub fn su22_embedding(ranks: &HodgeNumbers, i: usize) -> Result<Su22Embedding> {
    let k = ranks.k();
    if k < 2 || i > k - 2 {
        return Err(Error::InvalidArgument(format!(
            "generator index {i} out of range for ranks {ranks}"
        )));
    }
    if ranks.rank(i + 1) < 2 {
        return Err(Error::NotApplicable(format!(
            "r_{} = 1: no embedded PU(2,2) domain through this generator",
            i + 1
        )));
    }
    let a = ranks.block_range(i).end - 1;
    let b = ranks.block_range(i + 1).end - 1;
    let w = [a, a + 1, b, b + 1];
    let sub_block = |x: usize| ranks.block_of(x) - i;

    // sl(W): off-diagonal units and consecutive diagonal differences.
    let mut basis: Vec<SparseMatrix> = Vec::new();
    for &x in &w {
        for &y in &w {
            if x != y {
                basis.push(SparseMatrix::unit(x, y));
            }
        }
    }
    for pair in w.windows(2) {
        basis.push(SparseMatrix::unit(pair[0], pair[0]).sub(&SparseMatrix::unit(pair[1], pair[1])));
    }
    let in_w = |x: &usize| w.contains(x);
    let closed_under_bracket = basis.iter().all(|x| {
        basis.iter().all(|y| {
            let br = x.bracket(y);
            let supported = br.keys().all(|(r, c)| in_w(r) && in_w(c));
            let trace: Scalar = w
                .iter()
                .map(|&d| br.to_dense(ranks.total())[(d, d)].clone())
                .fold(Scalar::zero(), |acc, v| acc + v);
            supported && trace.is_zero()
        })
    });

    let mut sub_ranks = vec![0; 3];
    for &x in &w {
        sub_ranks[sub_block(x)] += 1;
    }
    // The big grading restricted to sl(W) is the grading of the (1,2,1) model.
    let pd = parabolic_from_ranks(ranks);
    let mut sub_levels_agree = true;
    let mut level_one_count = 0;
    let mut level_one_included = true;
    for &x in &w {
        for &y in &w {
            if x == y {
                continue;
            }
            let sub_level = sub_block(y) as i64 - sub_block(x) as i64;
            let big_level = pd.entry_level(x, y);
            sub_levels_agree &= sub_level == big_level;
            if sub_level == -1 {
                level_one_count += 1;
                let root = RootVector::new(pd.m, x, y).expect("distinct coordinates");
                level_one_included &= big_level == -1 && pd.is_n_root(&root);
            }
        }
    }
    let sub_hodge_type = sub_ranks == [1, 2, 1] && sub_levels_agree && level_one_count == 4;

    let highest_root = RootVector::new(pd.m, b + 1, a).expect("distinct coordinates");
    let highest_root_class = class_of_root(&highest_root, &pd)?;
    let expected = class_of_root(&pd.beta_range(i, i + 1), &pd)?;
    let walls = &Pi2Class::basis(k, i) + &Pi2Class::basis(k, i + 1);
    let class_matches = highest_root_class == expected && expected == walls;

    Ok(Su22Embedding {
        w_indices: w,
        sub_ranks,
        closed_under_bracket,
        sub_hodge_type,
        level_one_included,
        highest_root,
        highest_root_class,
        class_matches,
    })
}
