use super::field::Field;

/// Sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Incrementally built row echelon form over a field.
///
/// Rows are inserted one at a time. Each stored row is normalized to a unit
/// leading entry whose column is its pivot. `into_rref` performs the back
/// substitution that turns the stored rows into the reduced echelon form.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseRow<F::E>>,
    pivot_row: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon { field, ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Reduces a dense vector in place against the stored rows.
    pub fn reduce_dense(&self, acc: &mut [F::E]) {
        let f = &self.field;
        for c in 0..self.ncols {
            if f.is_zero(&acc[c]) {
                continue;
            }
            if let Some(ri) = self.pivot_row[c] {
                let s = acc[c].clone();
                for (j, v) in &self.rows[ri] {
                    acc[*j] = f.sub_mul(&acc[*j], &s, v);
                }
            }
        }
    }

    fn densify(&self, row: &[(usize, F::E)]) -> Vec<F::E> {
        let mut acc = vec![self.field.zero(); self.ncols];
        for (j, v) in row {
            acc[*j] = self.field.add(&acc[*j], v);
        }
        acc
    }

    /// Whether the row lies in the span of the stored rows.
    pub fn contains(&self, row: &[(usize, F::E)]) -> bool {
        let mut acc = self.densify(row);
        self.reduce_dense(&mut acc);
        acc.iter().all(|x| self.field.is_zero(x))
    }

    /// Inserts a row; returns the new pivot column if the row was independent.
    pub fn insert(&mut self, row: &[(usize, F::E)]) -> Option<usize> {
        let acc = self.densify(row);
        self.insert_dense(acc)
    }

    pub fn insert_dense(&mut self, mut acc: Vec<F::E>) -> Option<usize> {
        debug_assert_eq!(acc.len(), self.ncols);
        self.reduce_dense(&mut acc);
        let f = &self.field;
        let lead = acc.iter().position(|x| !f.is_zero(x))?;
        let inv = f.inv(&acc[lead]);
        let mut out = Vec::new();
        for (j, v) in acc.iter().enumerate().skip(lead) {
            if !f.is_zero(v) {
                out.push((j, if j == lead { f.one() } else { f.mul(v, &inv) }));
            }
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(out);
        Some(lead)
    }

    /// Reduced row echelon form: rows ordered by pivot column.
    pub fn into_rref(self) -> Rref<F> {
        let f = self.field.clone();
        let mut order: Vec<(usize, usize)> = (0..self.ncols)
            .filter_map(|c| self.pivot_row[c].map(|r| (c, r)))
            .collect();
        order.sort();
        let mut rows: Vec<Option<SparseRow<F::E>>> = self.rows.into_iter().map(Some).collect();
        let mut done: Vec<SparseRow<F::E>> = vec![Vec::new(); order.len()];
        let mut pos_of_col = vec![usize::MAX; self.ncols];
        for (pos, (c, _)) in order.iter().enumerate() {
            pos_of_col[*c] = pos;
        }
        for pos in (0..order.len()).rev() {
            let (_, ri) = order[pos];
            let row = rows[ri].take().expect("row used once");
            let mut acc = vec![f.zero(); self.ncols];
            for (j, v) in &row {
                acc[*j] = v.clone();
            }
            for (j, _) in row.iter().skip(1) {
                let p = pos_of_col[*j];
                if p == usize::MAX || f.is_zero(&acc[*j]) {
                    continue;
                }
                let s = acc[*j].clone();
                for (jj, vv) in &done[p] {
                    acc[*jj] = f.sub_mul(&acc[*jj], &s, vv);
                }
            }
            done[pos] = acc
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !f.is_zero(v))
                .collect();
        }
        Rref { field: f, ncols: self.ncols, pivots: order.iter().map(|x| x.0).collect(), rows: done }
    }
}

/// Reduced row echelon form in sparse storage.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub field: F,
    pub ncols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseRow<F::E>>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_p = vec![false; self.ncols];
        for &p in &self.pivots {
            is_p[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_p[c]).collect()
    }

    /// Canonical kernel basis: one vector per free column (increasing), equal to
    /// one at its own free column and zero at the others.
    pub fn nullspace(&self) -> Vec<Vec<F::E>> {
        let f = &self.field;
        let free = self.free_columns();
        let mut index_of_free = vec![usize::MAX; self.ncols];
        for (i, &c) in free.iter().enumerate() {
            index_of_free[c] = i;
        }
        let mut basis: Vec<Vec<F::E>> = free
            .iter()
            .map(|&c| {
                let mut v = vec![f.zero(); self.ncols];
                v[c] = f.one();
                v
            })
            .collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (j, val) in row.iter().skip(1) {
                let bi = index_of_free[*j];
                if bi != usize::MAX {
                    basis[bi][p] = f.neg(val);
                }
            }
        }
        basis
    }
}

/// Row echelon data of a list of sparse rows.
pub fn echelon_of<F: Field>(field: F, ncols: usize, rows: &[SparseRow<F::E>]) -> Echelon<F> {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::field::{Fp, Q};
    use crate::ratlinalg::rational::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rref_of_small_matrix() {
        let rows = vec![
            vec![(0, q(1)), (1, q(2)), (2, q(3))],
            vec![(0, q(2)), (1, q(4)), (2, q(7))],
        ];
        let r = echelon_of(Q, 3, &rows).into_rref();
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.rows[0], vec![(0, q(1)), (1, q(2))]);
        let ns = r.nullspace();
        assert_eq!(ns, vec![vec![q(-2), q(1), q(0)]]);
    }

    #[test]
    fn modular_rank() {
        let f = Fp::new(1_000_000_007);
        let rows = vec![vec![(0, 1u64), (1, 1)], vec![(0, 2), (1, 2)], vec![(1, 5)]];
        assert_eq!(echelon_of(f, 2, &rows).rank(), 2);
    }
}
