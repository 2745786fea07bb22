use dashu_int::ops::ExtendedGcd;

use super::matrix::IntMatrix;
use crate::int::{abs, divides, is_negative, Int};

/// Smith normal form `u * m * v = diag(s)` with the inverses of both
/// transforms kept alongside.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Diagonal of length `min(rows, cols)`; nonzero entries come first and
    /// form a divisibility chain.
    pub diag: Vec<Int>,
    pub rank: usize,
}

impl Smith {
    /// The diagonal matrix `S`, same shape as the input.
    pub fn s(&self) -> IntMatrix {
        let mut s = IntMatrix::zeros(self.u.rows(), self.v.rows());
        for (i, d) in self.diag.iter().enumerate() {
            s[(i, i)] = d.clone();
        }
        s
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

/// `[[p, q], [r, s]]` with determinant 1.
type Unimodular2 = [Int; 4];

/// `L` with `L * (a, b)^T = (g, 0)^T`, `g = gcd(a, b) >= 0`.
fn gcd_step(a: &Int, b: &Int) -> Unimodular2 {
    let (g, x, y) = a.gcd_ext(b);
    let g = Int::from(g);
    [x, y, -(b / &g), a / &g]
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row i += k * row j
    fn add_row(&mut self, i: usize, j: usize, k: &Int) {
        self.a.add_row_multiple(i, j, k);
        self.u.add_row_multiple(i, j, k);
        self.u_inv.add_col_multiple(j, i, &-k);
    }

    /// col i += k * col j
    fn add_col(&mut self, i: usize, j: usize, k: &Int) {
        self.a.add_col_multiple(i, j, k);
        self.v.add_col_multiple(i, j, k);
        self.v_inv.add_row_multiple(j, i, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// (row i, row j) <- L (row i, row j)
    fn combine_rows(&mut self, i: usize, j: usize, l: &Unimodular2) {
        let [p, q, r, s] = l;
        rows2(&mut self.a, i, j, [p, q, r, s]);
        rows2(&mut self.u, i, j, [p, q, r, s]);
        // U^-1 <- U^-1 L^-1, L^-1 = [[s, -q], [-r, p]]
        cols2(&mut self.u_inv, i, j, [s, &-r, &-q, p]);
    }

    /// (col i, col j) <- (col i, col j) R
    fn combine_cols(&mut self, i: usize, j: usize, rm: &Unimodular2) {
        let [p, q, r, s] = rm;
        cols2(&mut self.a, i, j, [p, r, q, s]);
        cols2(&mut self.v, i, j, [p, r, q, s]);
        // V^-1 <- R^-1 V^-1
        rows2(&mut self.v_inv, i, j, [s, &-q, &-r, p]);
    }

    /// Clears row and column `t` outside the pivot.
    fn clear_cross(&mut self, t: usize) {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        loop {
            for i in t + 1..rows {
                if self.a[(i, t)].is_zero() {
                    continue;
                }
                if divides(&self.a[(t, t)], &self.a[(i, t)]) {
                    let q = &self.a[(i, t)] / &self.a[(t, t)];
                    self.add_row(i, t, &-q);
                } else {
                    let l = gcd_step(&self.a[(t, t)], &self.a[(i, t)]);
                    self.combine_rows(t, i, &l);
                }
            }
            let mut touched = false;
            for j in t + 1..cols {
                if self.a[(t, j)].is_zero() {
                    continue;
                }
                if divides(&self.a[(t, t)], &self.a[(t, j)]) {
                    let q = &self.a[(t, j)] / &self.a[(t, t)];
                    self.add_col(j, t, &-q);
                } else {
                    let l = gcd_step(&self.a[(t, t)], &self.a[(t, j)]);
                    // column form: (a, b) R = (g, 0) with R = L^T
                    let [p, q, r, s] = l;
                    self.combine_cols(t, j, &[p, r, q, s]);
                    touched = true;
                }
            }
            if !touched {
                return;
            }
        }
    }
}

fn rows2(m: &mut IntMatrix, i: usize, j: usize, [p, q, r, s]: [&Int; 4]) {
    for c in 0..m.cols() {
        let (x, y) = (m[(i, c)].clone(), m[(j, c)].clone());
        if x.is_zero() && y.is_zero() {
            continue;
        }
        m[(i, c)] = p * &x + q * &y;
        m[(j, c)] = r * &x + s * &y;
    }
}

/// new col i = a * col i + b * col j, new col j = c * col i + d * col j
fn cols2(m: &mut IntMatrix, i: usize, j: usize, [a, b, c, d]: [&Int; 4]) {
    for rr in 0..m.rows() {
        let (x, y) = (m[(rr, i)].clone(), m[(rr, j)].clone());
        if x.is_zero() && y.is_zero() {
            continue;
        }
        m[(rr, i)] = a * &x + b * &y;
        m[(rr, j)] = c * &x + d * &y;
    }
}

/// `|x| < b` for `b >= 0`, without allocating when `x` is small.
fn abs_less(x: &Int, b: &Int) -> bool {
    match (i64::try_from(x), i64::try_from(b)) {
        (Ok(x), Ok(b)) => x.unsigned_abs() < b as u64,
        _ => abs(x) < *b,
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let n = rows.min(cols);
    let mut rank = 0;
    for t in 0..n {
        // smallest nonzero entry of the remaining block becomes the pivot;
        // ties go to the sparsest row and column to limit fill-in
        let mut row_nnz = vec![0usize; rows];
        let mut col_nnz = vec![0usize; cols];
        for i in t..rows {
            for j in t..cols {
                if !w.a[(i, j)].is_zero() {
                    row_nnz[i] += 1;
                    col_nnz[j] += 1;
                }
            }
        }
        let mut best: Option<(usize, usize, Int, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &w.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let cost = (row_nnz[i] - 1) * (col_nnz[j] - 1);
                let better = match &best {
                    None => true,
                    Some(b) if abs_less(x, &b.2) => true,
                    Some(b) => cost < b.3 && !abs_less(&b.2, &abs(x)),
                };
                if better {
                    best = Some((i, j, abs(x), cost));
                }
            }
        }
        let Some((pi, pj, _, _)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        w.clear_cross(t);
        if is_negative(&w.a[(t, t)]) {
            w.negate_row(t);
        }
        rank += 1;
    }
    // diagonal -> divisibility chain via (a, b) -> (gcd, lcm)
    for i in 0..rank {
        for j in i + 1..rank {
            let (a, b) = (w.a[(i, i)].clone(), w.a[(j, j)].clone());
            if divides(&a, &b) {
                continue;
            }
            let (g, x, y) = (&a).gcd_ext(&b);
            let g = Int::from(g);
            let (ag, bg) = (&a / &g, &b / &g);
            let l = [x.clone(), y.clone(), -bg.clone(), ag.clone()];
            let r = [Int::ONE, -(&y * &bg), Int::ONE, &x * &ag];
            w.combine_rows(i, j, &l);
            w.combine_cols(i, j, &r);
        }
    }
    let diag = (0..n).map(|i| w.a[(i, i)].clone()).collect();
    Smith { u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv, diag, rank }
}
