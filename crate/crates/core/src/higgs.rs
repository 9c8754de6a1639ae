//! Pointwise Higgs-field algebra.
//!
//! At a point of the base, a Higgs field is a family of maps
//! `θ_i^(a): E^i → E^{i+1}`, one per piece `i` and tangent direction `a`,
//! subject to `[θ, θ] = 0`, i.e. `θ_{i+1}^(a) θ_i^(b) = θ_{i+1}^(b) θ_i^(a)`.
//! When an interior piece `E^i` has rank one, this relation forces
//! `θ_i = 0` as soon as `θ_{i−1}` has rank at least two (and symmetrically).

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::domain::HodgeNumbers;
use crate::linalg::{int, Matrix, Scalar, ScalarRepr};
use crate::sampling::{self, SuiteRng};
use crate::{Error, Result};

/// Rank tolerance of the floating-point mode.
pub const FLOAT_RANK_TOLERANCE: f64 = 1e-9;

/// Attempts before [`random_commuting_higgs`] gives up on a rank profile.
pub const MAX_SAMPLING_ATTEMPTS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiggsField {
    ranks: HodgeNumbers,
    tangent_dim: usize,
    /// `theta[i][a]` is the `r_{i+1} × r_i` matrix of `θ_i^(a)`.
    theta: Vec<Vec<Matrix>>,
}

impl HiggsField {
    pub fn new(ranks: HodgeNumbers, tangent_dim: usize, theta: Vec<Vec<Matrix>>) -> Result<Self> {
        if tangent_dim == 0 {
            return Err(Error::InvalidArgument("tangent dimension must be positive".into()));
        }
        if theta.len() != ranks.k() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} Higgs components, got {}",
                ranks.k(),
                theta.len()
            )));
        }
        for (i, dirs) in theta.iter().enumerate() {
            if dirs.len() != tangent_dim {
                return Err(Error::DimensionMismatch(format!(
                    "θ_{i} has {} directions, expected {tangent_dim}",
                    dirs.len()
                )));
            }
            let shape = (ranks.rank(i + 1), ranks.rank(i));
            if let Some(bad) = dirs.iter().find(|t| (t.rows(), t.cols()) != shape) {
                return Err(Error::DimensionMismatch(format!(
                    "θ_{i} must be {}x{}, got {}x{}",
                    shape.0,
                    shape.1,
                    bad.rows(),
                    bad.cols()
                )));
            }
        }
        Ok(HiggsField {
            ranks,
            tangent_dim,
            theta,
        })
    }

    pub fn zero(ranks: HodgeNumbers, tangent_dim: usize) -> Self {
        let theta = (0..ranks.k())
            .map(|i| vec![Matrix::zeros(ranks.rank(i + 1), ranks.rank(i)); tangent_dim])
            .collect();
        HiggsField {
            ranks,
            tangent_dim,
            theta,
        }
    }

    pub fn ranks(&self) -> &HodgeNumbers {
        &self.ranks
    }

    pub fn tangent_dim(&self) -> usize {
        self.tangent_dim
    }

    pub fn component(&self, i: usize, a: usize) -> &Matrix {
        &self.theta[i][a]
    }

    pub fn set_component(&mut self, i: usize, a: usize, m: Matrix) -> Result<()> {
        let shape = (self.ranks.rank(i + 1), self.ranks.rank(i));
        if (m.rows(), m.cols()) != shape {
            return Err(Error::DimensionMismatch(format!(
                "θ_{i} must be {}x{}",
                shape.0, shape.1
            )));
        }
        self.theta[i][a] = m;
        Ok(())
    }

    /// `θ_i ≡ 0` in every direction.
    pub fn vanishes(&self, i: usize) -> bool {
        self.theta[i].iter().all(Matrix::is_zero)
    }

    /// Full `m × m` matrix of `θ^(a)` on `E = ⊕ E^i` (blocks consecutive).
    pub fn total_matrix(&self, a: usize) -> Matrix {
        let m = self.ranks.total();
        let mut out = Matrix::zeros(m, m);
        for i in 0..self.ranks.k() {
            let rows = self.ranks.block_start(i + 1);
            let cols = self.ranks.block_start(i);
            let t = &self.theta[i][a];
            for r in 0..t.rows() {
                for c in 0..t.cols() {
                    out[(rows + r, cols + c)] = t[(r, c)].clone();
                }
            }
        }
        out
    }

    /// `θ_i` as one map `E^i → E^{i+1} ⊗ Ω¹`: the directions stacked vertically.
    fn stacked(&self, i: usize) -> Matrix {
        self.theta[i]
            .iter()
            .skip(1)
            .fold(self.theta[i][0].clone(), |acc, t| acc.vstack(t))
    }

    /// `θ_i` as a map `T ⊗ E^i → E^{i+1}`: the directions side by side.
    fn juxtaposed(&self, i: usize) -> Matrix {
        self.theta[i]
            .iter()
            .skip(1)
            .fold(self.theta[i][0].clone(), |acc, t| acc.hstack(t))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.ranks.k() {
            return Err(Error::InvalidArgument(format!(
                "Higgs index {i} out of range 0..{}",
                self.ranks.k()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<HiggsJson> {
        Ok(HiggsJson {
            ranks: self.ranks.ranks().to_vec(),
            tangent_dim: self.tangent_dim,
            theta: self
                .theta
                .iter()
                .map(|dirs| dirs.iter().map(Matrix::to_repr).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn from_json(json: &HiggsJson) -> Result<Self> {
        let ranks = HodgeNumbers::new(json.ranks.clone())?;
        let theta = json
            .theta
            .iter()
            .enumerate()
            .map(|(i, dirs)| {
                let cols = ranks.ranks().get(i).copied().unwrap_or(0);
                dirs.iter()
                    .map(|rows| Matrix::from_repr(rows, cols).map_err(Error::from))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        HiggsField::new(ranks, json.tangent_dim, theta)
    }
}

/// Wire form: `theta[i][a]` is the row list of `θ_i^(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HiggsJson {
    pub ranks: Vec<usize>,
    pub tangent_dim: usize,
    pub theta: Vec<Vec<Vec<Vec<ScalarRepr>>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Commutation {
    pub holds: bool,
    /// First `(i, a, b)` with `θ_{i+1}^(a) θ_i^(b) ≠ θ_{i+1}^(b) θ_i^(a)`.
    pub violation: Option<(usize, usize, usize)>,
}

pub fn check_commutation(h: &HiggsField) -> Commutation {
    for i in 0..h.ranks.k().saturating_sub(1) {
        for a in 0..h.tangent_dim {
            for b in a + 1..h.tangent_dim {
                let lhs = &h.theta[i + 1][a] * &h.theta[i][b];
                let rhs = &h.theta[i + 1][b] * &h.theta[i][a];
                if lhs != rhs {
                    return Commutation {
                        holds: false,
                        violation: Some((i, a, b)),
                    };
                }
            }
        }
    }
    Commutation {
        holds: true,
        violation: None,
    }
}

/// Rank of `θ_i: E^i → E^{i+1} ⊗ Ω¹` (the stacked `(m_t·r_{i+1}) × r_i` matrix).
pub fn pointwise_rank(h: &HiggsField, i: usize) -> Result<usize> {
    h.check_index(i)?;
    Ok(h.stacked(i).rank())
}

/// Rank of `θ_i` read as a map `T ⊗ E^i → E^{i+1}`; for `r_i = 1` this is the
/// dimension of the span of the images of the tangent directions.
pub fn image_rank(h: &HiggsField, i: usize) -> Result<usize> {
    h.check_index(i)?;
    Ok(h.juxtaposed(i).rank())
}

/// Floating-point version of [`pointwise_rank`] with [`FLOAT_RANK_TOLERANCE`].
pub fn pointwise_rank_float(h: &HiggsField, i: usize) -> Result<usize> {
    h.check_index(i)?;
    let m = h.stacked(i);
    let rows: Vec<Vec<Complex64>> = (0..m.rows())
        .map(|r| m.row(r).iter().map(to_complex64).collect())
        .collect();
    Ok(float_rank(rows, FLOAT_RANK_TOLERANCE))
}

fn to_complex64(z: &Scalar) -> Complex64 {
    Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

/// Rank by Gaussian elimination with partial pivoting; pivots below `tol`
/// (relative to the largest entry) count as zero.
fn float_rank(mut rows: Vec<Vec<Complex64>>, tol: f64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let scale = rows
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max)
        .max(1.0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some((p, best)) = (rank..rows.len())
            .map(|r| (r, rows[r][col].norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
        else {
            break;
        };
        if best <= tol * scale {
            continue;
        }
        rows.swap(rank, p);
        let pivot = rows[rank][col];
        for r in rank + 1..rows.len() {
            let f = rows[r][col] / pivot;
            if f.is_zero() {
                continue;
            }
            for c in col..ncols {
                let v = rows[rank][c];
                rows[r][c] -= f * v;
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum LemmaVerdict {
    /// `triggered` records whether the rank hypothesis was met.
    Holds { triggered: bool },
    /// The hypothesis holds but the neighbouring component does not vanish.
    Violated { rank: usize },
}

impl LemmaVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, LemmaVerdict::Holds { .. })
    }
}

fn lemma_preconditions(h: &HiggsField, i: usize) -> Result<()> {
    let k = h.ranks.k();
    if i == 0 || i >= k {
        return Err(Error::Precondition(format!(
            "index {i} is not interior (0 < i < {k})"
        )));
    }
    if h.ranks.rank(i) != 1 {
        return Err(Error::Precondition(format!(
            "r_{i} = {} but the lemma needs a rank-one piece",
            h.ranks.rank(i)
        )));
    }
    if let Some(v) = check_commutation(h).violation {
        return Err(Error::Precondition(format!(
            "field does not satisfy [θ,θ] = 0 at (i, a, b) = {v:?}"
        )));
    }
    Ok(())
}

/// For a rank-one interior piece `E^i`: `rank θ_{i−1} ≥ 2 ⟹ θ_i = 0`.
pub fn rank_one_lemma_check(h: &HiggsField, i: usize) -> Result<LemmaVerdict> {
    lemma_preconditions(h, i)?;
    let rank = pointwise_rank(h, i - 1)?;
    Ok(verdict(rank, h.vanishes(i)))
}

/// The transposed statement: `image_rank θ_i ≥ 2 ⟹ θ_{i−1} = 0`.
pub fn mirror_lemma_check(h: &HiggsField, i: usize) -> Result<LemmaVerdict> {
    lemma_preconditions(h, i)?;
    let rank = image_rank(h, i)?;
    Ok(verdict(rank, h.vanishes(i - 1)))
}

fn verdict(rank: usize, neighbour_vanishes: bool) -> LemmaVerdict {
    if rank < 2 {
        LemmaVerdict::Holds { triggered: false }
    } else if neighbour_vanishes {
        LemmaVerdict::Holds { triggered: true }
    } else {
        LemmaVerdict::Violated { rank }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub index: usize,
    /// `⊕_{j≤i} E^j` and `⊕_{j>i} E^j` are invariant under every `θ^(a)`.
    pub invariant: bool,
}

/// Least `i` with `θ_i ≡ 0`, if any, with the invariance of both halves checked.
pub fn splitting_detector(h: &HiggsField) -> Option<Split> {
    let index = (0..h.ranks.k()).find(|&i| h.vanishes(i))?;
    let cut = h.ranks.block_start(index + 1);
    let m = h.ranks.total();
    let invariant = (0..h.tangent_dim).all(|a| {
        let t = h.total_matrix(a);
        let lower_ok = (cut..m).all(|r| (0..cut).all(|c| t[(r, c)].is_zero()));
        let upper_ok = (0..cut).all(|r| (cut..m).all(|c| t[(r, c)].is_zero()));
        lower_ok && upper_ok
    });
    Some(Split { index, invariant })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingStrategy {
    /// `θ^(a) = c_a · N` for fixed `N`: pulled back along a curve.
    Pullback,
    /// Level by level, sample in the kernel of the linear commutation
    /// system; `rank_profile[i]`, when set, is the required rank of `θ_i`.
    Nullspace { rank_profile: Vec<Option<usize>> },
}

/// A seeded random field satisfying `[θ, θ] = 0`.
pub fn random_commuting_higgs(
    ranks: &HodgeNumbers,
    tangent_dim: usize,
    seed: u64,
    strategy: &SamplingStrategy,
) -> Result<HiggsField> {
    if tangent_dim == 0 {
        return Err(Error::InvalidArgument("tangent dimension must be positive".into()));
    }
    match strategy {
        SamplingStrategy::Pullback => {
            let mut rng = sampling::stream(seed, "higgs-pullback", 0);
            Ok(pullback_field(ranks, tangent_dim, &mut rng))
        }
        SamplingStrategy::Nullspace { rank_profile } => {
            if rank_profile.len() > ranks.k() {
                return Err(Error::InvalidArgument(format!(
                    "rank profile has {} entries for {} components",
                    rank_profile.len(),
                    ranks.k()
                )));
            }
            for attempt in 0..MAX_SAMPLING_ATTEMPTS {
                let mut rng = sampling::stream(seed, "higgs-nullspace", attempt as u64);
                let h = nullspace_field(ranks, tangent_dim, &mut rng);
                let ok = rank_profile.iter().enumerate().all(|(i, want)| {
                    want.is_none_or(|w| pointwise_rank(&h, i).expect("index in range") == w)
                });
                if ok {
                    return Ok(h);
                }
            }
            Err(Error::SamplingExhausted(MAX_SAMPLING_ATTEMPTS))
        }
    }
}

fn pullback_field(ranks: &HodgeNumbers, tangent_dim: usize, rng: &mut SuiteRng) -> HiggsField {
    let coeffs: Vec<Scalar> = (0..tangent_dim).map(|_| sampling::small_gauss(rng, 3)).collect();
    let theta = (0..ranks.k())
        .map(|i| {
            let n = sampling::small_matrix(rng, ranks.rank(i + 1), ranks.rank(i), 2);
            coeffs.iter().map(|c| n.scale(c)).collect()
        })
        .collect();
    HiggsField {
        ranks: ranks.clone(),
        tangent_dim,
        theta,
    }
}

/// Coefficient matrix of the commutation constraints on `θ_i` given `θ_{i−1}`,
/// with unknowns ordered direction-major then row-major.
fn commutation_system(prev: &[Matrix], rows: usize, cols: usize) -> Matrix {
    let dirs = prev.len();
    let unknowns = dirs * rows * cols;
    let out_cols = prev.first().map_or(0, Matrix::cols);
    let var = |a: usize, p: usize, t: usize| a * rows * cols + p * cols + t;
    let mut eqs = Vec::new();
    for a in 0..dirs {
        for b in a + 1..dirs {
            for p in 0..rows {
                for s in 0..out_cols {
                    // Σ_t θ^(a)[p,t] prev^(b)[t,s] − θ^(b)[p,t] prev^(a)[t,s]
                    let mut row = vec![Scalar::zero(); unknowns];
                    for t in 0..cols {
                        row[var(a, p, t)] = &row[var(a, p, t)] + &prev[b][(t, s)];
                        row[var(b, p, t)] = &row[var(b, p, t)] - &prev[a][(t, s)];
                    }
                    eqs.push(row);
                }
            }
        }
    }
    if eqs.is_empty() {
        return Matrix::zeros(0, unknowns);
    }
    Matrix::from_rows(eqs)
}

/// Random small-integer combination of a random subset of the columns of `basis`.
fn sparse_combination(basis: &Matrix, rng: &mut SuiteRng) -> Vec<Scalar> {
    let n = basis.cols();
    let mut out = vec![Scalar::zero(); basis.rows()];
    if n == 0 {
        return out;
    }
    let count = rng.gen_range(0..=n);
    for j in sample(rng, n, count) {
        let mut c = sampling::small_gauss(rng, 2);
        if c.is_zero() {
            c = int(1);
        }
        for (r, o) in out.iter_mut().enumerate() {
            *o = &*o + &(&basis[(r, j)] * &c);
        }
    }
    out
}

fn nullspace_field(ranks: &HodgeNumbers, tangent_dim: usize, rng: &mut SuiteRng) -> HiggsField {
    let mut theta: Vec<Vec<Matrix>> = Vec::with_capacity(ranks.k());
    for i in 0..ranks.k() {
        let (rows, cols) = (ranks.rank(i + 1), ranks.rank(i));
        let system = match theta.last() {
            Some(prev) => commutation_system(prev, rows, cols),
            None => Matrix::zeros(0, tangent_dim * rows * cols),
        };
        let x = sparse_combination(&system.nullspace(), rng);
        let dirs = (0..tangent_dim)
            .map(|a| Matrix::from_fn(rows, cols, |p, t| x[a * rows * cols + p * cols + t].clone()))
            .collect();
        theta.push(dirs);
    }
    HiggsField {
        ranks: ranks.clone(),
        tangent_dim,
        theta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hn(r: &[usize]) -> HodgeNumbers {
        HodgeNumbers::new(r.to_vec()).unwrap()
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_int_rows(rows)
    }

    #[test]
    fn shape_is_validated() {
        let err = HiggsField::new(hn(&[1, 2]), 1, vec![vec![m(&[&[1, 0]])]]);
        assert!(matches!(err, Err(Error::DimensionMismatch(_))));
        assert!(HiggsField::new(hn(&[1, 2]), 1, vec![vec![m(&[&[1], &[0]])]]).is_ok());
    }

    #[test]
    fn single_direction_always_commutes() {
        let h = random_commuting_higgs(&hn(&[2, 2, 2]), 1, 3, &SamplingStrategy::Nullspace {
            rank_profile: vec![],
        })
        .unwrap();
        assert!(check_commutation(&h).holds);
        let mut g = HiggsField::zero(hn(&[1, 1, 1]), 1);
        g.set_component(0, 0, m(&[&[5]])).unwrap();
        g.set_component(1, 0, m(&[&[7]])).unwrap();
        assert!(check_commutation(&g).holds);
    }

    #[test]
    fn pullback_commutes() {
        for seed in 0..20 {
            let h = random_commuting_higgs(&hn(&[2, 3, 1, 2]), 3, seed, &SamplingStrategy::Pullback)
                .unwrap();
            assert!(check_commutation(&h).holds);
        }
    }

    #[test]
    fn explicit_violation_is_located() {
        let mut h = HiggsField::zero(hn(&[1, 1, 1]), 2);
        h.set_component(0, 0, m(&[&[1]])).unwrap();
        h.set_component(1, 1, m(&[&[1]])).unwrap();
        let c = check_commutation(&h);
        assert!(!c.holds);
        assert_eq!(c.violation, Some((0, 0, 1)));
    }

    #[test]
    fn pointwise_rank_cases() {
        let h = HiggsField::zero(hn(&[2, 1]), 2);
        assert_eq!(pointwise_rank(&h, 0).unwrap(), 0);
        let mut h = h;
        h.set_component(0, 0, m(&[&[1, 0]])).unwrap();
        h.set_component(0, 1, m(&[&[0, 1]])).unwrap();
        assert_eq!(pointwise_rank(&h, 0).unwrap(), 2);
        assert_eq!(pointwise_rank_float(&h, 0).unwrap(), 2);
        assert!(matches!(pointwise_rank(&h, 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn lemma_forces_vanishing_for_two_one_two() {
        // θ_0 of rank 2: the commutation system leaves only θ_1 = 0.
        let ranks = hn(&[2, 1, 2]);
        let theta0 = vec![m(&[&[1, 0]]), m(&[&[0, 1]])];
        let system = commutation_system(&theta0, 2, 1);
        assert_eq!(system.nullspace().cols(), 0);

        let h = random_commuting_higgs(&ranks, 2, 11, &SamplingStrategy::Nullspace {
            rank_profile: vec![Some(2)],
        })
        .unwrap();
        assert!(h.vanishes(1));
        assert_eq!(rank_one_lemma_check(&h, 1).unwrap(), LemmaVerdict::Holds { triggered: true });
    }

    #[test]
    fn lemma_vacuous_when_rank_one() {
        let ranks = hn(&[1, 1, 1]);
        let mut h = HiggsField::zero(ranks, 2);
        for a in 0..2 {
            let c = (a + 2) as i64;
            h.set_component(0, a, m(&[&[c]])).unwrap();
            h.set_component(1, a, m(&[&[3 * c]])).unwrap();
        }
        assert!(check_commutation(&h).holds);
        assert_eq!(rank_one_lemma_check(&h, 1).unwrap(), LemmaVerdict::Holds { triggered: false });
    }

    #[test]
    fn lemma_preconditions_are_distinct_errors() {
        let h = HiggsField::zero(hn(&[1, 2, 1]), 2);
        assert!(matches!(rank_one_lemma_check(&h, 1), Err(Error::Precondition(_))));
        let h = HiggsField::zero(hn(&[1, 1, 1]), 2);
        assert!(matches!(rank_one_lemma_check(&h, 0), Err(Error::Precondition(_))));
        let mut bad = HiggsField::zero(hn(&[1, 1, 1]), 2);
        bad.set_component(0, 0, m(&[&[1]])).unwrap();
        bad.set_component(1, 1, m(&[&[1]])).unwrap();
        assert!(matches!(rank_one_lemma_check(&bad, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn splitting_cases() {
        let ranks = hn(&[1, 2, 2, 1]);
        let mut h = random_commuting_higgs(&ranks, 2, 5, &SamplingStrategy::Pullback).unwrap();
        // Pullback with nonzero coefficients and N_i ≠ 0 is generic here.
        if (0..3).all(|i| !h.vanishes(i)) {
            assert_eq!(splitting_detector(&h), None);
        }
        for a in 0..2 {
            h.set_component(1, a, Matrix::zeros(2, 2)).unwrap();
        }
        let s = splitting_detector(&h).unwrap();
        assert!(s.index <= 1 && s.invariant);

        let zero = HiggsField::zero(ranks, 3);
        assert_eq!(splitting_detector(&zero), Some(Split { index: 0, invariant: true }));
    }

    #[test]
    fn generic_field_does_not_split() {
        let ranks = hn(&[1, 2, 2, 1]);
        let mut h = HiggsField::zero(ranks, 1);
        h.set_component(0, 0, m(&[&[1], &[0]])).unwrap();
        h.set_component(1, 0, m(&[&[1, 0], &[0, 1]])).unwrap();
        h.set_component(2, 0, m(&[&[1, 1]])).unwrap();
        assert_eq!(splitting_detector(&h), None);
        h.set_component(1, 0, Matrix::zeros(2, 2)).unwrap();
        assert_eq!(splitting_detector(&h), Some(Split { index: 1, invariant: true }));
    }

    #[test]
    fn sampler_is_deterministic() {
        let ranks = hn(&[2, 1, 3]);
        let strat = SamplingStrategy::Nullspace { rank_profile: vec![] };
        let a = random_commuting_higgs(&ranks, 3, 99, &strat).unwrap();
        let b = random_commuting_higgs(&ranks, 3, 99, &strat).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a.to_json().unwrap()).unwrap(),
            serde_json::to_string(&b.to_json().unwrap()).unwrap()
        );
    }

    #[test]
    fn unreachable_profile_exhausts() {
        // θ_0: C^1 → C^1 ⊗ C^1 has rank at most 1.
        let r = random_commuting_higgs(&hn(&[1, 1]), 1, 0, &SamplingStrategy::Nullspace {
            rank_profile: vec![Some(2)],
        });
        assert_eq!(r, Err(Error::SamplingExhausted(MAX_SAMPLING_ATTEMPTS)));
    }

    #[test]
    fn json_round_trip() {
        let h = random_commuting_higgs(&hn(&[2, 1, 2]), 2, 4, &SamplingStrategy::Pullback).unwrap();
        let text = serde_json::to_string(&h.to_json().unwrap()).unwrap();
        let back: HiggsJson = serde_json::from_str(&text).unwrap();
        assert_eq!(HiggsField::from_json(&back).unwrap(), h);
    }
}
