//! Exact Gauss–Jordan elimination over ℚ(i).

use crate::exactnum::Scalar;

/// Reduced row echelon form. Pivot columns are chosen left to right and the
/// pivot row is the first remaining row with a nonzero entry, so the result
/// is a deterministic function of the input.
#[derive(Debug, Clone)]
pub struct Rref {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

pub fn rref(mut rows: Vec<Vec<Scalar>>, ncols: usize) -> Rref {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let inv = rows[top][col].inv().expect("pivot is nonzero");
        for x in rows[top][col..].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x -= &(&factor * p);
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    Rref { rows, pivots, ncols }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One basis vector per free column `j`: `v_j = 1`, pivot entries read
    /// off the reduced rows, all other free entries zero.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut v = vec![Scalar::zero(); self.ncols];
                v[j] = Scalar::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -&row[j];
                }
                v
            })
            .collect()
    }
}

pub fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).rank()
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(vectors: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let n = v.len();
    let base = rank(vectors, n);
    let mut extended = vectors.to_vec();
    extended.push(v.to_vec());
    rank(&extended, n) == base
}
