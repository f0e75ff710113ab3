//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `diagonal = u · m · v`, with the inverses of `u` and `v` kept alongside.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal.get(i, i).clone()).take_while(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
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

    /// row[dst] += c · row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    /// col[dst] += c · col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of a nonzero entry of least absolute value in the lower-right
    /// block starting at `k`.
    fn smallest_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.a.rows() {
            for j in k..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a.get(bi, bj).abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    for k in 0..rows.min(cols) {
        let Some((pi, pj)) = w.smallest_pivot(k) else { break };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if w.a.get(i, k).is_zero() {
                    continue;
                }
                let q = w.a.get(i, k).div_floor(w.a.get(k, k));
                w.add_row(i, k, &-q);
                if !w.a.get(i, k).is_zero() {
                    // remainder is smaller than the pivot: make it the pivot
                    w.swap_rows(i, k);
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if w.a.get(k, j).is_zero() {
                    continue;
                }
                let q = w.a.get(k, j).div_floor(w.a.get(k, k));
                w.add_col(j, k, &-q);
                if !w.a.get(k, j).is_zero() {
                    w.swap_cols(j, k);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Row and column k are clear; enforce divisibility of the rest.
            let pivot = w.a.get(k, k).clone();
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !w.a.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => w.add_row(k, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a.get(k, k).is_negative() {
            w.negate_row(k);
        }
    }
    SmithForm { diagonal: w.a, u: w.u, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv }
}

/// Solves `m · x = b` over the integers, if an integral solution exists.
pub fn solve_integral(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, ubi) in ub.iter().enumerate() {
        let d = if i < m.cols() { snf.diagonal.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !ubi.is_zero() {
                return None;
            }
        } else {
            let (q, r) = ubi.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.mul_vec(&y))
}
