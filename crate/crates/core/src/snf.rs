//! Smith normal form of integer matrices over arbitrary-precision integers,
//! with full U·A·V = D transform tracking.
//!
//! Pivot selection is by minimal absolute value; no modular shortcuts. The
//! matrices this crate feeds in are tiny (at most a few hundred rows), so
//! correctness wins over speed everywhere.

use num::{One, Signed, Zero};

use crate::cyclo::Int;

/// U·A·V = D with U, V unimodular and D diagonal with a divisibility chain
/// d₁ | d₂ | … (diagonal entries nonnegative).
pub struct SnfDecomposition {
    pub u: Vec<Vec<Int>>,
    pub d: Vec<Vec<Int>>,
    pub v: Vec<Vec<Int>>,
}

impl SnfDecomposition {
    /// Nonzero diagonal entries, in chain order.
    pub fn diagonal(&self) -> Vec<Int> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k)
            .map(|i| self.d[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    /// Diagonal entries with the 1-entries dropped: the torsion invariant
    /// factors of the cokernel.
    pub fn invariant_factors(&self) -> Vec<Int> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_one())
            .collect()
    }
}

fn identity_matrix(n: usize) -> Vec<Vec<Int>> {
    let mut m = vec![vec![Int::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Int::one();
    }
    m
}

struct SnfState {
    rows: usize,
    cols: usize,
    d: Vec<Vec<Int>>,
    u: Vec<Vec<Int>>,
    v: Vec<Vec<Int>>,
}

impl SnfState {
    fn pivot_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                if self.d[i][j].is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.d[bi][bj].abs() <= self.d[i][j].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            self.d.swap(a, b);
            self.u.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for row in self.d.iter_mut() {
                row.swap(a, b);
            }
            for row in self.v.iter_mut() {
                row.swap(a, b);
            }
        }
    }

    /// row_i -= q * row_t (in D and U).
    fn row_op(&mut self, i: usize, t: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = q * &self.d[t][j];
            self.d[i][j] -= s;
        }
        for j in 0..self.rows {
            let s = q * &self.u[t][j];
            self.u[i][j] -= s;
        }
    }

    /// col_j -= q * col_t (in D and V).
    fn col_op(&mut self, j: usize, t: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = q * &self.d[i][t];
            self.d[i][j] -= s;
        }
        for i in 0..self.cols {
            let s = q * &self.v[i][t];
            self.v[i][j] -= s;
        }
    }

    /// Diagonalize from position `from` onward.
    fn eliminate(&mut self, from: usize) {
        let mut t = from;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.pivot_from(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.d[i][t].is_zero() {
                        continue;
                    }
                    let q = &self.d[i][t] / &self.d[t][t];
                    self.row_op(i, t, &q);
                    if !self.d[i][t].is_zero() {
                        // remainder is strictly smaller: promote it to pivot
                        self.swap_rows(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols {
                    if self.d[t][j].is_zero() {
                        continue;
                    }
                    let q = &self.d[t][j] / &self.d[t][t];
                    self.col_op(j, t, &q);
                    if !self.d[t][j].is_zero() {
                        self.swap_cols(t, j);
                        dirty = true;
                    }
                }
                let col_clear = (t + 1..self.rows).all(|i| self.d[i][t].is_zero());
                let row_clear = (t + 1..self.cols).all(|j| self.d[t][j].is_zero());
                if !dirty && col_clear && row_clear {
                    break;
                }
            }
            if self.d[t][t].is_negative() {
                for j in 0..self.cols {
                    self.d[t][j] = -self.d[t][j].clone();
                }
                for j in 0..self.rows {
                    self.u[t][j] = -self.u[t][j].clone();
                }
            }
            t += 1;
        }
    }
}

/// Compute the Smith normal form of `a` (any shape, including empty).
pub fn smith_normal_form(a: &[Vec<Int>]) -> SnfDecomposition {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut st = SnfState {
        rows,
        cols,
        d: a.to_vec(),
        u: identity_matrix(rows),
        v: identity_matrix(cols),
    };
    st.eliminate(0);

    // Enforce the divisibility chain d_t | d_{t+1}.
    loop {
        let k = (0..rows.min(cols))
            .take_while(|&i| !st.d[i][i].is_zero())
            .count();
        let violation =
            (0..k.saturating_sub(1)).find(|&i| !(&st.d[i + 1][i + 1] % &st.d[i][i]).is_zero());
        let Some(i) = violation else { break };
        // Fold column i+1 into column i so the block re-eliminates to
        // gcd / lcm, then resume from i.
        let minus_one = -Int::one();
        st.col_op(i, i + 1, &minus_one);
        st.eliminate(i);
    }

    SnfDecomposition {
        u: st.u,
        d: st.d,
        v: st.v,
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    assert!(
        m.iter().all(|r| r.len() == n),
        "determinant needs a square matrix"
    );
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Plain integer matrix product, for verification.
pub fn matmul(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let rows = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![Int::zero(); cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                let s = &a[i][k] * &b[k][j];
                out[i][j] += s;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect()
    }

    fn check_snf(a: &[Vec<Int>]) -> SnfDecomposition {
        let snf = smith_normal_form(a);
        let ua = matmul(&snf.u, a);
        let uav = matmul(&ua, &snf.v);
        assert_eq!(uav, snf.d, "U*A*V != D");
        assert_eq!(determinant(&snf.u).abs(), Int::one(), "U not unimodular");
        assert_eq!(determinant(&snf.v).abs(), Int::one(), "V not unimodular");
        let rows = snf.d.len();
        let cols = snf.d.first().map_or(0, Vec::len);
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert!(snf.d[i][j].is_zero(), "D not diagonal");
                }
            }
        }
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            assert!(
                (&w[1] % &w[0]).is_zero(),
                "no divisibility chain: {:?}",
                diag
            );
        }
        snf
    }

    #[test]
    fn classic_example() {
        let a = int_matrix(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let snf = check_snf(&a);
        assert_eq!(
            snf.diagonal(),
            vec![Int::from(2), Int::from(6), Int::from(12)]
        );
    }

    #[test]
    fn rank_one_relator_matrix() {
        // exponent sums of the rank-1 relators over (h, p)
        let a = int_matrix(&[&[2, 0], &[0, 4], &[3, 3], &[6, 12], &[4, 8]]);
        let snf = check_snf(&a);
        assert_eq!(snf.invariant_factors(), vec![Int::from(2)]);
    }

    #[test]
    fn zero_and_identity() {
        let z = int_matrix(&[&[0, 0], &[0, 0]]);
        let snf = check_snf(&z);
        assert!(snf.diagonal().is_empty());
        let id = int_matrix(&[&[1, 0], &[0, 1]]);
        let snf = check_snf(&id);
        assert_eq!(snf.diagonal(), vec![Int::one(), Int::one()]);
        assert!(snf.invariant_factors().is_empty());
    }

    #[test]
    fn determinant_matches_cofactor_oracle() {
        fn cofactor_det(m: &[Vec<Int>]) -> Int {
            let n = m.len();
            if n == 1 {
                return m[0][0].clone();
            }
            let mut acc = Int::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Int>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m[i][c].clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * cofactor_det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(1..=5);
            let m: Vec<Vec<Int>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| Int::from(rng.gen_range(-6i64..=6)))
                        .collect()
                })
                .collect();
            assert_eq!(determinant(&m), cofactor_det(&m));
        }
    }

    #[test]
    fn randomized_snf_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..60 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let a: Vec<Vec<Int>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| Int::from(rng.gen_range(-9i64..=9)))
                        .collect()
                })
                .collect();
            check_snf(&a);
        }
    }
}
