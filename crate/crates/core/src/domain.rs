//! Period-domain descriptors and exact tests on concrete flags.
//!
//! `C^{p+q}` carries the Hermitian form `h = diag(+1 × p, −1 × q)`. A flag
//! `0 = F^{-1} ⊂ F^0 ⊂ … ⊂ F^k = C^{p+q}` with jumps `r_i` lies in the period
//! domain iff, for every `-1 ≤ i ≤ k-1`, `(-1)^i h` is negative definite on
//! the `h`-orthogonal complement of `F^i` inside `F^{i+1}`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{int, Matrix, Scalar, ScalarRepr};
use crate::{Error, Result};

/// Ranks `(r_0, …, r_k)` of the Hodge pieces `E^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct HodgeNumbers(Vec<usize>);

impl HodgeNumbers {
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        if ranks.len() < 2 {
            return Err(Error::InvalidRanks(format!(
                "need at least two Hodge pieces, got {ranks:?}"
            )));
        }
        if ranks.contains(&0) {
            return Err(Error::InvalidRanks(format!(
                "every rank must be positive, got {ranks:?}"
            )));
        }
        Ok(HodgeNumbers(ranks))
    }

    pub fn ranks(&self) -> &[usize] {
        &self.0
    }

    pub fn rank(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Index of the last piece; there are `k + 1` pieces and `k` walls.
    pub fn k(&self) -> usize {
        self.0.len() - 1
    }

    pub fn pieces(&self) -> usize {
        self.0.len()
    }

    /// `m = p + q`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn p(&self) -> usize {
        self.0.iter().step_by(2).sum()
    }

    pub fn q(&self) -> usize {
        self.0.iter().skip(1).step_by(2).sum()
    }

    /// First coordinate of block `i` in the consecutive-block numbering.
    pub fn block_start(&self, i: usize) -> usize {
        self.0[..i].iter().sum()
    }

    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        let s = self.block_start(i);
        s..s + self.0[i]
    }

    /// Block containing coordinate `c` (consecutive-block numbering).
    pub fn block_of(&self, c: usize) -> usize {
        let mut acc = 0;
        for (i, &r) in self.0.iter().enumerate() {
            acc += r;
            if c < acc {
                return i;
            }
        }
        panic!("coordinate {c} out of range for ranks {:?}", self.0)
    }

    /// Dimension of `F^i = E^0 ⊕ … ⊕ E^i`; `F^{-1}` is encoded as `None`.
    pub fn filtration_dim(&self, i: Option<usize>) -> usize {
        i.map_or(0, |i| self.0[..=i].iter().sum())
    }

    /// Every tuple with at least two positive parts summing to at most `max_total`.
    pub fn enumerate_up_to(max_total: usize) -> Vec<HodgeNumbers> {
        let mut out = Vec::new();
        for total in 2..=max_total {
            let mut current = Vec::new();
            compositions(total, &mut current, &mut out);
        }
        out
    }

    /// Every tuple with `pieces` parts, each in `1..=max_rank`.
    pub fn enumerate_bounded(pieces: usize, max_rank: usize) -> Vec<HodgeNumbers> {
        let mut out = vec![Vec::new()];
        for _ in 0..pieces {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<usize>| {
                    (1..=max_rank).map(move |r| {
                        let mut next = prefix.clone();
                        next.push(r);
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(HodgeNumbers).collect()
    }
}

fn compositions(remaining: usize, current: &mut Vec<usize>, out: &mut Vec<HodgeNumbers>) {
    if remaining == 0 {
        if current.len() >= 2 {
            out.push(HodgeNumbers(current.clone()));
        }
        return;
    }
    for part in 1..=remaining {
        current.push(part);
        compositions(remaining - part, current, out);
        current.pop();
    }
}

impl TryFrom<Vec<usize>> for HodgeNumbers {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        HodgeNumbers::new(v)
    }
}

impl From<HodgeNumbers> for Vec<usize> {
    fn from(h: HodgeNumbers) -> Self {
        h.0
    }
}

impl FromStr for HodgeNumbers {
    type Err = Error;

    /// Comma-separated positive integers, e.g. `1,2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let ranks = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidRanks(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        HodgeNumbers::new(ranks)
    }
}

impl fmt::Display for HodgeNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Dimensions and fibration data of the period domain with given Hodge numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainDescriptor {
    pub ranks: HodgeNumbers,
    pub p: usize,
    pub q: usize,
    pub dim_du: usize,
    pub horizontal_rank: usize,
    pub vertical_rank: usize,
    /// Even-indexed and odd-indexed ranks: the two flag-manifold factors of
    /// the central fiber.
    pub fiber_factors: (Vec<usize>, Vec<usize>),
    /// Some interior piece `0 < i < k` has rank one.
    pub cartoun_hypothesis: bool,
}

pub fn describe_domain(ranks: &HodgeNumbers) -> DomainDescriptor {
    let r = ranks.ranks();
    let mut dim_du = 0;
    let mut vertical_rank = 0;
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            dim_du += r[i] * r[j];
            if (j - i) % 2 == 0 {
                vertical_rank += r[i] * r[j];
            }
        }
    }
    let horizontal_rank = r.windows(2).map(|w| w[0] * w[1]).sum();
    let evens = r.iter().step_by(2).copied().collect();
    let odds = r.iter().skip(1).step_by(2).copied().collect();
    let k = ranks.k();
    DomainDescriptor {
        ranks: ranks.clone(),
        p: ranks.p(),
        q: ranks.q(),
        dim_du,
        horizontal_rank,
        vertical_rank,
        fiber_factors: (evens, odds),
        cartoun_hypothesis: (1..k).any(|i| r[i] == 1),
    }
}

/// The indefinite form `h = diag(+1 × p, −1 × q)`.
pub fn hermitian_form(ranks: &HodgeNumbers) -> Matrix {
    let p = ranks.p();
    let entries: Vec<Scalar> = (0..ranks.total())
        .map(|c| if c < p { int(1) } else { int(-1) })
        .collect();
    Matrix::diag(&entries)
}

/// A flag of `C^{p+q}` given by an adapted basis: the first
/// `dim F^i` columns of `basis` span `F^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    ranks: HodgeNumbers,
    basis: Matrix,
}

impl Flag {
    pub fn new(ranks: HodgeNumbers, basis: Matrix) -> Result<Self> {
        let m = ranks.total();
        if basis.rows() != m || basis.cols() != m {
            return Err(Error::DimensionMismatch(format!(
                "flag basis must be {m}x{m}, got {}x{}",
                basis.rows(),
                basis.cols()
            )));
        }
        if basis.rank() != m {
            return Err(Error::InvalidArgument(
                "flag basis vectors are linearly dependent".into(),
            ));
        }
        Ok(Flag { ranks, basis })
    }

    pub fn ranks(&self) -> &HodgeNumbers {
        &self.ranks
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Basis of `F^i` as columns; `None` stands for `F^{-1} = 0`.
    pub fn subspace(&self, i: Option<usize>) -> Matrix {
        self.basis.column_range(0, self.ranks.filtration_dim(i))
    }

    /// Apply a linear transformation to every subspace of the flag.
    pub fn transform(&self, g: &Matrix) -> Result<Flag> {
        Flag::new(self.ranks.clone(), g * &self.basis)
    }

    pub fn to_json(&self) -> Result<FlagJson> {
        Ok(FlagJson {
            ranks: self.ranks.ranks().to_vec(),
            basis: self.basis.transpose().to_repr()?,
        })
    }

    pub fn from_json(json: &FlagJson) -> Result<Self> {
        let ranks = HodgeNumbers::new(json.ranks.clone())?;
        let m = ranks.total();
        if json.basis.len() != m || json.basis.iter().any(|v| v.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "flag JSON needs {m} vectors of length {m}"
            )));
        }
        let rows = Matrix::from_repr(&json.basis, m)?;
        Flag::new(ranks, rows.transpose())
    }
}

/// Wire form of a [`Flag`]: `basis[j]` is the `j`-th adapted basis vector,
/// each entry encoded as `[[re_num, re_den], [im_num, im_den]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagJson {
    pub ranks: Vec<usize>,
    pub basis: Vec<Vec<ScalarRepr>>,
}

/// The base flag `F^s = E^0 ⊕ … ⊕ E^s` built from standard basis vectors.
///
/// Even blocks take the next unused positive coordinates, odd blocks the
/// next unused negative ones, so the result lies in the period domain.
pub fn hodge_flag(ranks: &HodgeNumbers) -> Flag {
    let m = ranks.total();
    let p = ranks.p();
    let (mut next_pos, mut next_neg) = (0, p);
    let mut order = Vec::with_capacity(m);
    for (i, &r) in ranks.ranks().iter().enumerate() {
        for _ in 0..r {
            if i % 2 == 0 {
                order.push(next_pos);
                next_pos += 1;
            } else {
                order.push(next_neg);
                next_neg += 1;
            }
        }
    }
    let mut basis = Matrix::zeros(m, m);
    for (col, &coord) in order.iter().enumerate() {
        basis[(coord, col)] = Scalar::one();
    }
    Flag {
        ranks: ranks.clone(),
        basis,
    }
}

/// Orthogonality used when taking complements inside the flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormMode {
    /// The standard positive definite form (projection to the Grassmannian).
    Definite,
    /// The indefinite form `h` (projection to the symmetric space).
    Indefinite,
}

fn form_matrix(ranks: &HodgeNumbers, mode: FormMode) -> Matrix {
    match mode {
        FormMode::Definite => Matrix::identity(ranks.total()),
        FormMode::Indefinite => hermitian_form(ranks),
    }
}

/// Basis of `{v ∈ span(hi) : form(f, v) = 0 for all f ∈ span(lo)}`, or
/// `None` when it fails to be a complement of `lo` inside `hi`.
fn complement(lo: &Matrix, hi: &Matrix, form: &Matrix) -> Option<Matrix> {
    let constraints = &(&lo.adjoint() * form) * hi;
    let coeffs = constraints.nullspace();
    let comp = hi * &coeffs;
    let expected = hi.cols() - lo.cols();
    if comp.cols() != expected || lo.hstack(&comp).rank() != hi.cols() {
        return None;
    }
    Some(comp)
}

/// Verdict of [`flag_in_period_domain`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub in_domain: bool,
    /// Some graded complement is degenerate for `h`.
    pub degenerate: bool,
    /// First index `i` (from `-1`) at which the sign condition fails.
    pub failing_index: Option<i64>,
}

pub fn flag_in_period_domain(flag: &Flag) -> Membership {
    let h = hermitian_form(&flag.ranks);
    let k = flag.ranks.k();
    let levels = std::iter::once(None).chain((0..k).map(Some));
    for lower in levels {
        let index = lower.map_or(-1, |i| i as i64);
        let upper = Some(lower.map_or(0, |i| i + 1));
        let fail = |degenerate| Membership {
            in_domain: false,
            degenerate,
            failing_index: Some(index),
        };
        let Some(comp) = complement(&flag.subspace(lower), &flag.subspace(upper), &h) else {
            return fail(true);
        };
        // (-1)^i h negative definite  ⟺  (-1)^{i+1} h positive definite.
        let gram = &(&comp.adjoint() * &h) * &comp;
        let gram = if index % 2 == 0 { -&gram } else { gram };
        match gram.hermitian_positive_definite() {
            Some(true) => {}
            Some(false) => return fail(false),
            None => return fail(true),
        }
    }
    Membership {
        in_domain: true,
        degenerate: false,
        failing_index: None,
    }
}

/// The `p`-plane `⊕_{i odd} F^{i⊥}` (complements taken inside `F^{i+1}`),
/// returned as an `m × p` basis.
pub fn project_to_symmetric_space(flag: &Flag, mode: FormMode) -> Result<Matrix> {
    let form = form_matrix(&flag.ranks, mode);
    let k = flag.ranks.k();
    let m = flag.ranks.total();
    let mut plane = Matrix::zeros(m, 0);
    // Odd i in -1..=k-1: complement of F^i in F^{i+1}, i.e. the even pieces.
    let mut upper = 0;
    while upper <= k {
        let lower = upper.checked_sub(1);
        let comp = complement(&flag.subspace(lower), &flag.subspace(Some(upper)), &form)
            .ok_or_else(|| {
                Error::Degenerate(format!(
                    "complement of F^{} in F^{upper} is degenerate",
                    lower.map_or(-1, |i| i as i64)
                ))
            })?;
        if mode == FormMode::Indefinite {
            let gram = &(&comp.adjoint() * &form) * &comp;
            if gram.det().is_zero() {
                return Err(Error::Degenerate(format!(
                    "h restricted to the complement inside F^{upper} is singular"
                )));
            }
        }
        plane = plane.hstack(&comp);
        upper += 2;
    }
    Ok(plane)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{gauss, same_column_span};

    fn hn(r: &[usize]) -> HodgeNumbers {
        HodgeNumbers::new(r.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_ranks() {
        assert!(matches!(HodgeNumbers::new(vec![]), Err(Error::InvalidRanks(_))));
        assert!(matches!(HodgeNumbers::new(vec![3]), Err(Error::InvalidRanks(_))));
        assert!(matches!(HodgeNumbers::new(vec![1, 0, 1]), Err(Error::InvalidRanks(_))));
        assert!("1,x".parse::<HodgeNumbers>().is_err());
        assert_eq!("1, 2,1".parse::<HodgeNumbers>().unwrap(), hn(&[1, 2, 1]));
    }

    #[test]
    fn describe_model_cases() {
        for n in 1..=8 {
            let d = describe_domain(&hn(&[1, n, 1]));
            assert_eq!((d.dim_du, d.horizontal_rank, d.vertical_rank), (2 * n + 1, 2 * n, 1));
            assert_eq!(d.cartoun_hypothesis, n == 1);
        }
        let d = describe_domain(&hn(&[1, 1]));
        assert_eq!((d.dim_du, d.horizontal_rank, d.vertical_rank), (1, 1, 0));
        assert!(!d.cartoun_hypothesis);
        let d = describe_domain(&hn(&[2, 3, 2]));
        assert_eq!((d.dim_du, d.horizontal_rank, d.vertical_rank), (16, 12, 4));
        assert!(!d.cartoun_hypothesis);
        assert_eq!(d.fiber_factors, (vec![2, 2], vec![3]));
    }

    #[test]
    fn hodge_flag_uses_signature_ordering() {
        let f = hodge_flag(&hn(&[1, 1]));
        assert_eq!(f.subspace(Some(0)), Matrix::from_int_rows(&[&[1], &[0]]));
        let f = hodge_flag(&hn(&[1, 2, 1]));
        // F^0 = <e1>, F^1 = <e1, e3, e4>
        let f1 = f.subspace(Some(1));
        let expected = Matrix::from_int_rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(same_column_span(&f1, &expected));
        assert_eq!(f.subspace(Some(0)).column(0), expected.column(0));
    }

    #[test]
    fn rank_one_one_membership_by_sign_of_f0() {
        let ranks = hn(&[1, 1]);
        // null line: degenerate
        let null = Flag::new(ranks.clone(), Matrix::from_int_rows(&[&[1, 0], &[1, 1]])).unwrap();
        let v = flag_in_period_domain(&null);
        assert!(!v.in_domain && v.degenerate);
        // F^0 = <e1>: h positive on E^0, in D
        let pos = Flag::new(ranks.clone(), Matrix::from_int_rows(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(flag_in_period_domain(&pos).in_domain);
        // F^0 = <e2>: h negative on F^0, outside D (and nondegenerate)
        let neg = Flag::new(ranks, Matrix::from_int_rows(&[&[0, 1], &[1, 0]])).unwrap();
        let v = flag_in_period_domain(&neg);
        assert!(!v.in_domain && !v.degenerate);
        assert_eq!(v.failing_index, Some(-1));
    }

    #[test]
    fn base_flag_projects_to_positive_coordinates() {
        let ranks = hn(&[1, 2, 1]);
        let base = hodge_flag(&ranks);
        let positive = Matrix::from_int_rows(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]);
        for mode in [FormMode::Definite, FormMode::Indefinite] {
            let plane = project_to_symmetric_space(&base, mode).unwrap();
            assert!(same_column_span(&plane, &positive));
        }
    }

    #[test]
    fn projections_differ_off_the_central_fiber() {
        // ranks (1,1,1): p = 2, q = 1; base order e1 | e3 | e2.
        // F^1 = <e1, e3 + t e2> with t = 1/2 + i/3.
        let ranks = hn(&[1, 1, 1]);
        let t = num_complex::Complex::new(crate::linalg::rat(1, 2), crate::linalg::rat(1, 3));
        let mut basis = Matrix::from_int_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        basis[(1, 1)] = t;
        let flag = Flag::new(ranks, basis).unwrap();
        assert!(flag_in_period_domain(&flag).in_domain);
        let indefinite = project_to_symmetric_space(&flag, FormMode::Indefinite).unwrap();
        let definite = project_to_symmetric_space(&flag, FormMode::Definite).unwrap();
        assert!(!same_column_span(&indefinite, &definite));
        let h = hermitian_form(flag.ranks());
        let gram = &(&indefinite.adjoint() * &h) * &indefinite;
        assert_eq!(gram.hermitian_positive_definite(), Some(true));
    }

    #[test]
    fn flag_json_round_trip() {
        let ranks = hn(&[1, 2]);
        let mut basis = Matrix::identity(3);
        basis[(2, 0)] = gauss(1, -2);
        let flag = Flag::new(ranks, basis).unwrap();
        let json = serde_json::to_string(&flag.to_json().unwrap()).unwrap();
        let back: FlagJson = serde_json::from_str(&json).unwrap();
        assert_eq!(Flag::from_json(&back).unwrap(), flag);
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let basis = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(Flag::new(hn(&[1, 1]), basis).is_err());
    }

    #[test]
    fn enumeration_counts_compositions() {
        // compositions of m with at least two parts: 2^{m-1} - 1
        let all = HodgeNumbers::enumerate_up_to(5);
        assert_eq!(all.len(), 1 + 3 + 7 + 15);
        assert_eq!(HodgeNumbers::enumerate_bounded(3, 2).len(), 8);
    }
}
