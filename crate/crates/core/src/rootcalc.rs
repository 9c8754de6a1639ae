//! Type-A roots, parabolic subalgebras and the grading of `sl(m, C)`.
//!
//! Coordinates are numbered from 0 and the Hodge blocks are consecutive:
//! block 0 occupies the first `r_0` coordinates, and so on. The simple
//! roots are `α_j = e_j − e_{j−1}` for `j = 1..m−1` (the `j`-th simple root
//! raises coordinate `j−1` to `j`), and the root space of `e_b − e_a` is
//! spanned by the matrix unit `E_{b,a}`, which maps `e_a` to `e_b`.
//!
//! A matrix entry in row block `j` and column block `i` has level
//! `ℓ = i − j`. The parabolic `q = ⊕_{ℓ ≥ 0} g_ℓ` lowers the block index,
//! while the roots of `n` (sums of simple roots that cross a wall) raise it
//! and sit at negative levels: they are the tangent directions.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::domain::HodgeNumbers;
use crate::linalg::{int, real, Matrix, Scalar};
use crate::{Error, Result};

/// A root `e_plus − e_minus` of `sl(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector {
    coords: Vec<i64>,
}

impl RootVector {
    pub fn new(m: usize, plus: usize, minus: usize) -> Result<Self> {
        if plus >= m || minus >= m || plus == minus {
            return Err(Error::InvalidArgument(format!(
                "e_{plus} - e_{minus} is not a root of sl({m})"
            )));
        }
        let mut coords = vec![0; m];
        coords[plus] = 1;
        coords[minus] = -1;
        Ok(RootVector { coords })
    }

    pub fn from_coords(coords: Vec<i64>) -> Result<Self> {
        let plus = coords.iter().filter(|&&c| c == 1).count();
        let minus = coords.iter().filter(|&&c| c == -1).count();
        let zero = coords.iter().filter(|&&c| c == 0).count();
        if plus != 1 || minus != 1 || zero + 2 != coords.len() {
            return Err(Error::InvalidArgument(format!("{coords:?} is not a root")));
        }
        Ok(RootVector { coords })
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn plus(&self) -> usize {
        self.coords.iter().position(|&c| c == 1).expect("root invariant")
    }

    pub fn minus(&self) -> usize {
        self.coords.iter().position(|&c| c == -1).expect("root invariant")
    }

    pub fn negate(&self) -> Self {
        RootVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// `self + other` when that is again a root.
    pub fn checked_add(&self, other: &RootVector) -> Option<RootVector> {
        let sum: Vec<i64> = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        RootVector::from_coords(sum).ok()
    }

    pub fn dot(&self, other: &RootVector) -> i64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    /// Coefficients on `α_1, …, α_{m−1}` (index `j−1` holds the coefficient of `α_j`).
    pub fn simple_coefficients(&self) -> Vec<i64> {
        let (b, a) = (self.plus(), self.minus());
        let mut c = vec![0; self.dim() - 1];
        if b > a {
            for j in a + 1..=b {
                c[j - 1] = 1;
            }
        } else {
            for j in b + 1..=a {
                c[j - 1] = -1;
            }
        }
        c
    }

    pub fn is_positive(&self) -> bool {
        self.plus() > self.minus()
    }

    /// Root-space representative `E_{plus, minus}`.
    pub fn root_space(&self) -> SparseMatrix {
        SparseMatrix::unit(self.plus(), self.minus())
    }
}

pub fn simple_roots(m: usize) -> Result<Vec<RootVector>> {
    if m < 2 {
        return Err(Error::InvalidDimension(format!(
            "sl(m) needs m >= 2, got {m}"
        )));
    }
    (1..m).map(|j| RootVector::new(m, j, j - 1)).collect()
}

pub fn all_roots(m: usize) -> Vec<RootVector> {
    let mut out = Vec::with_capacity(m * m.saturating_sub(1));
    for b in 0..m {
        for a in 0..m {
            if a != b {
                out.push(RootVector::new(m, b, a).expect("distinct indices"));
            }
        }
    }
    out
}

/// Nonnegative integer combinations of the simple roots.
pub fn positive_roots(m: usize) -> Vec<RootVector> {
    all_roots(m)
        .into_iter()
        .filter(|r| r.simple_coefficients().iter().all(|&c| c >= 0))
        .collect()
}

/// Root-level description of the parabolic subalgebra attached to a tuple
/// of Hodge numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicData {
    pub ranks: HodgeNumbers,
    pub m: usize,
    /// Simple-root labels `j` (1-based, as in `α_j`) of the walls:
    /// `r_0, r_0 + r_1, …, r_0 + … + r_{k−1}`.
    pub pi_q: Vec<usize>,
    pub phi: Vec<RootVector>,
    pub v_roots: Vec<RootVector>,
    pub n_roots: Vec<RootVector>,
    pub block_of: Vec<usize>,
}

pub fn parabolic_from_ranks(ranks: &HodgeNumbers) -> ParabolicData {
    let m = ranks.total();
    let pi_q: Vec<usize> = (0..ranks.k()).map(|i| ranks.block_start(i + 1)).collect();
    // α ∈ span(Π ∖ Π_q): no wall simple root occurs in its expansion.
    let in_levi = |r: &RootVector| {
        r.simple_coefficients()
            .iter()
            .enumerate()
            .all(|(idx, &c)| c == 0 || !pi_q.contains(&(idx + 1)))
    };
    let phi: Vec<RootVector> = all_roots(m)
        .into_iter()
        .filter(|r| r.is_positive() || in_levi(r))
        .collect();
    let (v_roots, n_roots): (Vec<_>, Vec<_>) =
        phi.iter().cloned().partition(|r| phi.contains(&r.negate()));
    ParabolicData {
        ranks: ranks.clone(),
        m,
        block_of: (0..m).map(|c| ranks.block_of(c)).collect(),
        pi_q,
        phi,
        v_roots,
        n_roots,
    }
}

impl ParabolicData {
    pub fn n_dim(&self) -> usize {
        self.n_roots.len()
    }

    /// Level `ℓ = (source block) − (target block)` of a root space.
    pub fn level(&self, root: &RootVector) -> i64 {
        self.block_of[root.minus()] as i64 - self.block_of[root.plus()] as i64
    }

    pub fn entry_level(&self, row: usize, col: usize) -> i64 {
        self.block_of[col] as i64 - self.block_of[row] as i64
    }

    pub fn is_n_root(&self, root: &RootVector) -> bool {
        self.n_roots.contains(root)
    }

    /// The wall root `β_i = α_{r_0 + … + r_i}`.
    pub fn beta(&self, i: usize) -> RootVector {
        let j = self.pi_q[i];
        RootVector::new(self.m, j, j - 1).expect("wall index in range")
    }

    /// `β_{i,j}`: from the last coordinate of block `i` to the first of block `j+1`.
    pub fn beta_range(&self, i: usize, j: usize) -> RootVector {
        let last_i = self.ranks.block_range(i).end - 1;
        let first = self.ranks.block_start(j + 1);
        RootVector::new(self.m, first, last_i).expect("wall indices in range")
    }
}

/// A root together with its block data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedRoot {
    pub root: RootVector,
    pub source_block: usize,
    pub target_block: usize,
    pub level: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    pub levels: BTreeMap<i64, Vec<GradedRoot>>,
    /// `[g_a, g_b] ⊆ g_{a+b}` on every pair of root-space representatives.
    pub additive: bool,
    /// `[n, n^(r)] ⊆ n^(r+1)` for every depth `r`.
    pub filtered: bool,
    /// The roots at levels `ℓ ≥ 0` are exactly `v ∪ −n`.
    pub q_is_nonnegative: bool,
}

impl Grading {
    pub fn dim(&self, level: i64) -> usize {
        self.levels.get(&level).map_or(0, Vec::len)
    }

    /// `(d, dim g_{−d})` for every depth `d ≥ 1` that occurs.
    pub fn tangent_dims(&self) -> Vec<(usize, usize)> {
        self.levels
            .iter()
            .filter(|(&l, _)| l < 0)
            .rev()
            .map(|(&l, roots)| ((-l) as usize, roots.len()))
            .collect()
    }
}

fn graded_levels(pd: &ParabolicData, roots: &[RootVector]) -> BTreeMap<i64, Vec<GradedRoot>> {
    let mut levels: BTreeMap<i64, Vec<GradedRoot>> = BTreeMap::new();
    for r in roots {
        levels.entry(pd.level(r)).or_default().push(GradedRoot {
            root: r.clone(),
            source_block: pd.block_of[r.minus()],
            target_block: pd.block_of[r.plus()],
            level: pd.level(r),
        });
    }
    levels
}

pub fn grading(pd: &ParabolicData) -> Grading {
    let roots = all_roots(pd.m);
    let levels = graded_levels(pd, &roots);

    let mut additive = true;
    for a in &roots {
        for b in &roots {
            let br = a.root_space().bracket(&b.root_space());
            let target = pd.level(a) + pd.level(b);
            if br.keys().any(|&(row, col)| pd.entry_level(row, col) != target) {
                additive = false;
            }
        }
    }

    // n^(r) = ⊕_{d ≥ r} g_{−d}
    let depth = |r: &RootVector| -pd.level(r);
    let mut filtered = true;
    for x in &pd.n_roots {
        for y in &pd.n_roots {
            let br = x.root_space().bracket(&y.root_space());
            let min_depth = depth(y) + 1;
            if br.keys().any(|&(row, col)| -pd.entry_level(row, col) < min_depth) {
                filtered = false;
            }
        }
    }

    let mut q_roots: Vec<RootVector> = roots.iter().filter(|r| pd.level(r) >= 0).cloned().collect();
    let mut expected: Vec<RootVector> = pd
        .v_roots
        .iter()
        .cloned()
        .chain(pd.n_roots.iter().map(RootVector::negate))
        .collect();
    q_roots.sort();
    expected.sort();

    Grading {
        levels,
        additive,
        filtered,
        q_is_nonnegative: q_roots == expected,
    }
}

/// Per-depth certificate of bracket generation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCertificate {
    pub depth: usize,
    pub dim: usize,
    pub rank: usize,
    /// Bracket words `[g_1, [g_2, … g_d]]` of level-one roots whose values
    /// form a basis of the span reached at this depth.
    pub witnesses: Vec<Vec<RootVector>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketGeneration {
    pub generated: bool,
    pub levels: Vec<LevelCertificate>,
}

/// Do iterated brackets of the depth-one root spaces span every deeper level?
pub fn bracket_generating_check(pd: &ParabolicData) -> BracketGeneration {
    let dims: BTreeMap<usize, usize> = graded_levels(pd, &pd.n_roots)
        .iter()
        .map(|(&l, roots)| ((-l) as usize, roots.len()))
        .collect();
    let max_depth = dims.keys().copied().max().unwrap_or(0);
    let generators: Vec<RootVector> = pd.n_roots.iter().filter(|r| pd.level(r) == -1).cloned().collect();

    let mut levels = Vec::new();
    let mut generated = true;
    let mut current: Vec<(Vec<RootVector>, SparseMatrix)> = Vec::new();
    let mut echelon = Echelon::default();
    for g in &generators {
        let value = g.root_space();
        if echelon.insert(&value) {
            current.push((vec![g.clone()], value));
        }
    }
    for depth in 1..=max_depth {
        if depth > 1 {
            let mut next = Vec::new();
            echelon = Echelon::default();
            let target = dims.get(&depth).copied().unwrap_or(0);
            'outer: for g in &generators {
                for (word, value) in &current {
                    if echelon.rank() == target {
                        break 'outer;
                    }
                    let br = g.root_space().bracket(value);
                    if echelon.insert(&br) {
                        let mut w = vec![g.clone()];
                        w.extend(word.iter().cloned());
                        next.push((w, br));
                    }
                }
            }
            current = next;
        }
        let dim = dims.get(&depth).copied().unwrap_or(0);
        let rank = echelon.rank();
        generated &= rank == dim;
        levels.push(LevelCertificate {
            depth,
            dim,
            rank,
            witnesses: current.iter().map(|(w, _)| w.clone()).collect(),
        });
    }
    BracketGeneration { generated, levels }
}

/// Incremental row echelon basis of sparse matrices.
#[derive(Default)]
struct Echelon {
    basis: BTreeMap<(usize, usize), SparseMatrix>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Adds `v` to the basis if it is independent; returns whether it was.
    fn insert(&mut self, v: &SparseMatrix) -> bool {
        let mut v = v.clone();
        for (pivot, b) in &self.basis {
            if let Some(c) = v.entries.get(pivot).cloned() {
                let f = &c / &b.entries[pivot];
                v = v.sub(&b.scale(&f));
            }
        }
        match v.entries.keys().next().copied() {
            Some(p) => {
                self.basis.insert(p, v);
                true
            }
            None => false,
        }
    }
}

/// Sparse square matrix used for root-space computations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn unit(row: usize, col: usize) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert((row, col), Scalar::one());
        SparseMatrix { entries }
    }

    pub fn keys(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.entries.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn insert_add(&mut self, key: (usize, usize), v: Scalar) {
        let e = self.entries.entry(key).or_insert_with(Scalar::zero);
        *e = &*e + &v;
        if e.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = SparseMatrix::default();
        for (&k, v) in &self.entries {
            out.insert_add(k, v * s);
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> Self {
        let mut out = self.clone();
        for (&k, v) in &other.entries {
            out.insert_add(k, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &SparseMatrix) -> Self {
        let mut out = SparseMatrix::default();
        for (&(r, k), a) in &self.entries {
            for (&(k2, c), b) in other.entries.range((k, 0)..=(k, usize::MAX)) {
                debug_assert_eq!(k, k2);
                out.insert_add((r, c), a * b);
            }
        }
        out
    }

    pub fn bracket(&self, other: &SparseMatrix) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn to_dense(&self, m: usize) -> Matrix {
        let mut out = Matrix::zeros(m, m);
        for (&(r, c), v) in &self.entries {
            out[(r, c)] = v.clone();
        }
        out
    }
}

/// An element of `gl(m)` together with the block structure it is graded by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatrix {
    ranks: HodgeNumbers,
    entries: Matrix,
}

impl BlockMatrix {
    pub fn new(ranks: HodgeNumbers, entries: Matrix) -> Result<Self> {
        let m = ranks.total();
        if entries.rows() != m || entries.cols() != m {
            return Err(Error::DimensionMismatch(format!(
                "block matrix must be {m}x{m}, got {}x{}",
                entries.rows(),
                entries.cols()
            )));
        }
        Ok(BlockMatrix { ranks, entries })
    }

    pub fn root_space(ranks: &HodgeNumbers, root: &RootVector) -> Self {
        BlockMatrix {
            ranks: ranks.clone(),
            entries: root.root_space().to_dense(ranks.total()),
        }
    }

    pub fn ranks(&self) -> &HodgeNumbers {
        &self.ranks
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn is_traceless(&self) -> bool {
        self.entries.trace().is_zero()
    }

    /// Level of entry `(row, col)`: (column block) − (row block).
    pub fn entry_level(&self, row: usize, col: usize) -> i64 {
        self.ranks.block_of(col) as i64 - self.ranks.block_of(row) as i64
    }

    /// Projection onto `g_ℓ`.
    pub fn component(&self, level: i64) -> Self {
        let m = self.ranks.total();
        let entries = Matrix::from_fn(m, m, |r, c| {
            if self.entry_level(r, c) == level {
                self.entries[(r, c)].clone()
            } else {
                Scalar::zero()
            }
        });
        BlockMatrix {
            ranks: self.ranks.clone(),
            entries,
        }
    }

    /// Levels carrying a nonzero entry.
    pub fn support_levels(&self) -> Vec<i64> {
        let m = self.ranks.total();
        let mut out: Vec<i64> = (0..m)
            .flat_map(|r| (0..m).map(move |c| (r, c)))
            .filter(|&(r, c)| !self.entries[(r, c)].is_zero())
            .map(|(r, c)| self.entry_level(r, c))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The traceless grading element: `ad ξ` acts on `g_ℓ` by `ℓ`.
    pub fn grading_element(ranks: &HodgeNumbers) -> Self {
        let m = ranks.total();
        let blocks: Vec<i64> = (0..m).map(|c| ranks.block_of(c) as i64).collect();
        let mean = BigRational::new(blocks.iter().sum::<i64>().into(), (m as i64).into());
        let diag: Vec<Scalar> = blocks.iter().map(|&b| real(mean.clone()) - int(b)).collect();
        BlockMatrix {
            ranks: ranks.clone(),
            entries: Matrix::diag(&diag),
        }
    }

    pub fn bracket(&self, other: &BlockMatrix) -> Result<Self> {
        check_same(self, other)?;
        Ok(BlockMatrix {
            ranks: self.ranks.clone(),
            entries: self.entries.bracket(&other.entries),
        })
    }
}

fn check_same(x: &BlockMatrix, y: &BlockMatrix) -> Result<()> {
    if x.ranks.total() != y.ranks.total() {
        return Err(Error::DimensionMismatch(format!(
            "sl({}) vs sl({})",
            x.ranks.total(),
            y.ranks.total()
        )));
    }
    Ok(())
}

/// `B(X, Y) = 2m · tr(XY)`.
pub fn killing_form(x: &BlockMatrix, y: &BlockMatrix) -> Result<Scalar> {
    check_same(x, y)?;
    let m = x.ranks.total() as i64;
    Ok((&x.entries * &y.entries).trace() * int(2 * m))
}

/// Conjugation of the compact real form: `τ(X) = −X̄ᵀ`.
pub fn tau_conjugate(x: &BlockMatrix) -> BlockMatrix {
    BlockMatrix {
        ranks: x.ranks.clone(),
        entries: -&x.entries.adjoint(),
    }
}

/// The Hermitian form `(X, Y) ↦ −B(X, τ(Y))`.
pub fn invariant_inner(x: &BlockMatrix, y: &BlockMatrix) -> Result<Scalar> {
    Ok(-killing_form(x, &tau_conjugate(y))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hn(r: &[usize]) -> HodgeNumbers {
        HodgeNumbers::new(r.to_vec()).unwrap()
    }

    fn root(coords: &[i64]) -> RootVector {
        RootVector::from_coords(coords.to_vec()).unwrap()
    }

    #[test]
    fn simple_roots_small_ranks() {
        assert!(matches!(simple_roots(1), Err(Error::InvalidDimension(_))));
        assert_eq!(simple_roots(2).unwrap(), vec![root(&[-1, 1])]);
        assert_eq!(simple_roots(3).unwrap(), vec![root(&[-1, 1, 0]), root(&[0, -1, 1])]);
    }

    #[test]
    fn a3_cartan_pattern() {
        let s = simple_roots(4).unwrap();
        for (i, a) in s.iter().enumerate() {
            for (j, b) in s.iter().enumerate() {
                let expected = match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                };
                assert_eq!(a.dot(b), expected);
            }
        }
    }

    #[test]
    fn parabolic_small_cases() {
        let pd = parabolic_from_ranks(&hn(&[1, 1]));
        assert_eq!(pd.pi_q, vec![1]);
        assert_eq!(pd.n_dim(), 1);

        for n in 1..=5 {
            assert_eq!(parabolic_from_ranks(&hn(&[1, n, 1])).n_dim(), 2 * n + 1);
        }

        let pd = parabolic_from_ranks(&hn(&[2, 1]));
        let mut n = pd.n_roots.clone();
        n.sort();
        let mut expected = vec![root(&[-1, 0, 1]), root(&[0, -1, 1])];
        expected.sort();
        assert_eq!(n, expected);
        assert!(pd.v_roots.contains(&root(&[-1, 1, 0])));
        assert!(pd.v_roots.contains(&root(&[1, -1, 0])));
    }

    #[test]
    fn grading_dims() {
        let g = grading(&parabolic_from_ranks(&hn(&[1, 1, 1])));
        assert_eq!(g.tangent_dims(), vec![(1, 2), (2, 1)]);
        assert!(g.additive && g.filtered && g.q_is_nonnegative);
        for n in 1..=4 {
            let g = grading(&parabolic_from_ranks(&hn(&[1, n, 1])));
            assert_eq!(g.dim(-1), 2 * n);
        }
    }

    #[test]
    fn bracket_generation_small_cases() {
        let b = bracket_generating_check(&parabolic_from_ranks(&hn(&[1, 1, 1])));
        assert!(b.generated);
        assert_eq!(b.levels[1].rank, 1);
        assert_eq!(b.levels[1].witnesses[0].len(), 2);
        let b = bracket_generating_check(&parabolic_from_ranks(&hn(&[2, 3])));
        assert!(b.generated);
        assert_eq!(b.levels.len(), 1);
    }

    #[test]
    fn killing_form_on_sl2_unit() {
        let ranks = hn(&[1, 1]);
        let x = BlockMatrix::root_space(&ranks, &root(&[-1, 1]));
        assert_eq!(invariant_inner(&x, &x).unwrap(), int(4));
        let other = BlockMatrix::root_space(&hn(&[1, 2]), &root(&[-1, 1, 0]));
        assert!(matches!(killing_form(&x, &other), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn tau_of_diagonal_is_minus_conjugate() {
        let ranks = hn(&[1, 1]);
        let d = Matrix::diag(&[crate::linalg::gauss(1, 2), crate::linalg::gauss(-1, -2)]);
        let x = BlockMatrix::new(ranks, d.clone()).unwrap();
        assert_eq!(tau_conjugate(&x).entries(), &(-&d.conj()));
        assert!(invariant_inner(&x, &x).unwrap().im.is_zero());
    }

    #[test]
    fn grading_element_acts_by_level() {
        let ranks = hn(&[2, 1, 2]);
        let xi = BlockMatrix::grading_element(&ranks);
        assert!(xi.is_traceless());
        for r in all_roots(5) {
            let e = BlockMatrix::root_space(&ranks, &r);
            let ad = xi.bracket(&e).unwrap();
            let level = e.support_levels()[0];
            assert_eq!(ad.entries(), &e.entries().scale(&int(level)));
        }
    }
}
