//! Gauss-Jordan elimination over exact scalars.

use crate::field::Scalar;

/// A matrix in reduced row-echelon form with zero rows dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    width: usize,
}

impl Rref {
    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Residue of `v` after eliminating every pivot column; zero iff `v` lies
    /// in the row space.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.width, "vector length");
        let mut out = v.to_vec();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            if out[col].is_zero() {
                continue;
            }
            let factor = out[col].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o = &*o - &(&factor * r);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }
}

/// Reduced row-echelon form: leading entries 1, pivot columns cleared above
/// and below, pivots strictly increasing.
pub fn rref(mut rows: Vec<Vec<Scalar>>) -> Rref {
    let width = rows.first().map_or(0, Vec::len);
    assert!(rows.iter().all(|r| r.len() == width), "ragged matrix");
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..width {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].inv().expect("non-zero pivot");
        for v in rows[next].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = &*v - &(&factor * p);
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    Rref { rows, pivots, width }
}
