//! Dense linear algebra over a prime field F_q with `q < 2^32`.

use crate::arith;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fq {
    pub q: u64,
}

impl Fq {
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.q - b % self.q) % self.q
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn inv(self, a: u64) -> u64 {
        arith::inv_mod(a % self.q, self.q).expect("nonzero element of a prime field")
    }

    pub fn pow(self, a: u64, e: u64) -> u64 {
        arith::pow_mod(a, e, self.q)
    }

    /// Basis of `{ c : sum_t c_t * cols[t] = 0 }` for column vectors `cols`.
    pub fn kernel_of_columns(self, cols: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let d = cols.len();
        if d == 0 {
            return Vec::new();
        }
        let rows = cols[0].len();
        let mut m: Vec<Vec<u64>> = (0..rows).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let pivots = self.rref(&mut m, d);
        let mut basis = Vec::new();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        for free in (0..d).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![0u64; d];
            v[free] = 1;
            for &(row, col) in &pivots {
                v[col] = self.sub(0, m[row][free]);
            }
            basis.push(v);
        }
        basis
    }

    /// In-place reduced row echelon form over the first `width` columns;
    /// returns `(row, column)` of each pivot.
    fn rref(self, m: &mut [Vec<u64>], width: usize) -> Vec<(usize, usize)> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..width {
            let Some(pr) = (row..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, pr);
            let inv = self.inv(m[row][col]);
            for x in m[row].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..m.len() {
                if r != row && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in 0..m[r].len() {
                        let t = self.mul(f, m[row][c]);
                        m[r][c] = self.sub(m[r][c], t);
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == m.len() {
                break;
            }
        }
        pivots
    }

    /// `a * v` for a square matrix given by rows.
    pub fn mat_vec(self, a: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
        a.iter()
            .map(|row| row.iter().zip(v).fold(0, |acc, (x, y)| (acc + x * y) % self.q))
            .collect()
    }
}
