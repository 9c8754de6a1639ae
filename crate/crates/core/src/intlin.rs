//! Integer matrices: Smith normal form and lattice comparison.

/// Dense integer matrix stored as rows.
pub type IntMatrix = Vec<Vec<i64>>;

/// Result of a Smith reduction `U·A·V = D` with `U`, `V` unimodular and `D`
/// diagonal with `d_1 | d_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn invariant_factors(&self) -> Vec<i64> {
        let n = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..n).map(|i| self.d[i][i]).filter(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn cols(a: &IntMatrix) -> usize {
    a.first().map_or(0, Vec::len)
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = cols(b);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|c| row.iter().zip(b).map(|(x, brow)| x * brow[c]).sum())
                .collect()
        })
        .collect()
}

fn swap_cols(a: &mut IntMatrix, i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// `col_j ← col_j − f·col_i`
fn sub_col(a: &mut IntMatrix, j: usize, i: usize, f: i64) {
    for row in a.iter_mut() {
        row[j] -= f * row[i];
    }
}

/// `row_j ← row_j − f·row_i`
fn sub_row(a: &mut IntMatrix, j: usize, i: usize, f: i64) {
    let src = a[i].clone();
    for (x, s) in a[j].iter_mut().zip(src) {
        *x -= f * s;
    }
}

/// Smith normal form of an `r × c` integer matrix.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let r = a.len();
    let c = cols(a);
    let mut d = a.clone();
    let mut u = identity(r);
    let mut v = identity(c);
    let mut t = 0;
    while t < r.min(c) {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let pivot = (t..r)
            .flat_map(|i| (t..c).map(move |j| (i, j)))
            .filter(|&(i, j)| d[i][j] != 0)
            .min_by_key(|&(i, j)| d[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                let q = d[i][t].div_euclid(d[t][t]);
                if q != 0 {
                    sub_row(&mut d, i, t, q);
                    sub_row(&mut u, i, t, q);
                }
                if d[i][t] != 0 {
                    d.swap(t, i);
                    u.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..c {
                let q = d[t][j].div_euclid(d[t][t]);
                if q != 0 {
                    sub_col(&mut d, j, t, q);
                    sub_col(&mut v, j, t, q);
                }
                if d[t][j] != 0 {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: fold any entry not divisible by the pivot into row t.
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| d[i][j] % d[t][t] != 0);
            match bad {
                Some((i, _)) => {
                    sub_row(&mut d, t, i, -1);
                    sub_row(&mut u, t, i, -1);
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    Smith { u, d, v }
}

/// Basis (as vectors) of the integer kernel `{x ∈ Z^c : A·x = 0}`.
pub fn integer_kernel(a: &IntMatrix, c: usize) -> Vec<Vec<i64>> {
    if a.is_empty() {
        return identity(c);
    }
    let s = smith_normal_form(a);
    let rank = s.rank();
    (rank..c)
        .map(|j| s.v.iter().map(|row| row[j]).collect())
        .collect()
}

/// Row-style Hermite normal form of the lattice spanned by `vectors`,
/// with zero rows dropped. Two families span the same lattice iff their
/// Hermite forms coincide.
pub fn hermite_normal_form(vectors: &[Vec<i64>]) -> IntMatrix {
    let mut m: IntMatrix = vectors.to_vec();
    let n = m.first().map_or(0, Vec::len);
    let mut row = 0;
    for col in 0..n {
        if row == m.len() {
            break;
        }
        loop {
            let nz = (row..m.len())
                .filter(|&i| m[i][col] != 0)
                .min_by_key(|&i| m[i][col].abs());
            let Some(p) = nz else { break };
            m.swap(row, p);
            let mut clean = true;
            for i in row + 1..m.len() {
                let q = m[i][col].div_euclid(m[row][col]);
                sub_row(&mut m, i, row, q);
                if m[i][col] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if m[row][col] == 0 {
            continue;
        }
        if m[row][col] < 0 {
            for x in m[row].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..row {
            let q = m[i][col].div_euclid(m[row][col]);
            sub_row(&mut m, i, row, q);
        }
        row += 1;
    }
    m.truncate(row);
    m
}

pub fn same_lattice(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    hermite_normal_form(a) == hermite_normal_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_classic_example() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors(), vec![2, 6, 12]);
        assert_eq!(mat_mul(&mat_mul(&s.u, &a), &s.v), s.d);
    }

    #[test]
    fn kernel_of_alternating_row() {
        let a = vec![vec![1, -1, 1]];
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v[0] - v[1] + v[2], 0);
        }
        assert!(same_lattice(&k, &[vec![1, 1, 0], vec![0, 1, 1]]));
    }

    #[test]
    fn index_two_sublattice_is_detected() {
        assert!(!same_lattice(&[vec![2, 0], vec![0, 1]], &[vec![1, 0], vec![0, 1]]));
        assert!(same_lattice(&[vec![1, 1], vec![0, 1]], &[vec![1, 0], vec![0, 1]]));
    }
}
