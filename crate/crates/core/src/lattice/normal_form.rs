use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, nonnegative,
/// each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

fn min_nonzero(m: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let a = m.get(i, j).abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(r);
    let mut v = IntegerMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = min_nonzero(&d, t) else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let p = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = d.get(i, t) / &p;
                d.add_row_multiple(i, t, &-&q);
                u.add_row_multiple(i, t, &-&q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..c {
                let q = d.get(t, j) / &p;
                d.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-&q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::from(1));
                    u.add_row_multiple(t, i, &BigInt::from(1));
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

/// Row-style Hermite normal form restricted to the first `width` columns:
/// returns `(h, t, rank)` with `t * m == h`, `t` unimodular.
fn row_echelon(m: &IntegerMatrix, width: usize) -> (IntegerMatrix, IntegerMatrix, usize) {
    let r = m.rows();
    let mut h = m.clone();
    let mut t = IntegerMatrix::identity(r);
    let mut row = 0;
    for col in 0..width {
        if row == r {
            break;
        }
        loop {
            let pivot = (row..r)
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by_key(|&i| h.get(i, col).abs());
            let Some(pi) = pivot else { break };
            h.swap_rows(row, pi);
            t.swap_rows(row, pi);
            let p = h.get(row, col).clone();
            let mut done = true;
            for i in row + 1..r {
                let q = h.get(i, col).div_floor(&p);
                h.add_row_multiple(i, row, &-&q);
                t.add_row_multiple(i, row, &-&q);
                done &= h.get(i, col).is_zero();
            }
            if done {
                break;
            }
        }
        if h.get(row, col).is_zero() {
            continue;
        }
        if h.get(row, col).is_negative() {
            h.negate_row(row);
            t.negate_row(row);
        }
        let p = h.get(row, col).clone();
        for i in 0..row {
            let q = h.get(i, col).div_floor(&p);
            h.add_row_multiple(i, row, &-&q);
            t.add_row_multiple(i, row, &-&q);
        }
        row += 1;
    }
    (h, t, row)
}

/// Row Hermite normal form: pivots positive, entries above each pivot reduced
/// into `[0, pivot)`, zero rows last.
pub fn hermite_normal_form(m: &IntegerMatrix) -> IntegerMatrix {
    row_echelon(m, m.cols()).0
}

/// Nonzero rows of the Hermite form: a canonical basis of the row lattice.
pub fn row_lattice_basis(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let (h, _, rank) = row_echelon(m, m.cols());
    (0..rank).map(|i| h.row(i)).collect()
}

/// Basis of `{x in Z^c : m x = 0}`, returned as the rows of a matrix in
/// Hermite normal form.
pub fn integer_kernel(m: &IntegerMatrix) -> IntegerMatrix {
    let c = m.cols();
    let mt = m.transpose();
    let (_, t, rank) = row_echelon(&mt, mt.cols());
    let rows: Vec<Vec<BigInt>> = (rank..c).map(|i| t.row(i)).collect();
    if rows.is_empty() {
        return IntegerMatrix::zeros(0, c);
    }
    let basis = IntegerMatrix::from_rows(&rows).expect("rows share length");
    let hb = row_lattice_basis(&basis);
    IntegerMatrix::from_rows(&hb).expect("rows share length")
}

pub fn rank(m: &IntegerMatrix) -> usize {
    row_echelon(m, m.cols()).2
}
