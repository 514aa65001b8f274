//! Dense row reduction over F_p.

use crate::polyring::PrimeField;

/// A row-reduced echelon form built incrementally. Rows are kept fully
/// reduced, so membership of a vector in the row space is one pass.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    ncols: usize,
    // (pivot column, row with 1 at the pivot)
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r.0).collect();
        p.sort_unstable();
        p
    }

    /// Reduces `v` against the current rows; the result has zeros in every
    /// pivot column.
    pub fn reduce(&self, v: &mut [u32]) {
        let k = self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                let f = k.neg(c);
                for (x, r) in v.iter_mut().zip(row.iter()) {
                    if *r != 0 {
                        *x = k.add(*x, k.mul(f, *r));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Inserts a vector; returns false if it was already in the span.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let k = self.field;
        let inv = k.inv(v[pivot]);
        for x in v.iter_mut() {
            *x = k.mul(*x, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                let f = k.neg(c);
                for (x, r) in row.iter_mut().zip(v.iter()) {
                    if *r != 0 {
                        *x = k.add(*x, k.mul(f, *r));
                    }
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    /// Rows sorted by pivot column.
    pub fn basis(&self) -> Vec<Vec<u32>> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|r| r.0);
        rows.into_iter().map(|r| r.1).collect()
    }

    /// Basis of the null space `{x : row · x = 0 for every row}`, one
    /// vector per free column in increasing column order.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let k = self.field;
        let pivots: Vec<usize> = self.rows.iter().map(|r| r.0).collect();
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if pivots.contains(&free) {
                continue;
            }
            let mut x = vec![0u32; self.ncols];
            x[free] = 1;
            for (pivot, row) in &self.rows {
                x[*pivot] = k.neg(row[free]);
            }
            out.push(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let k = PrimeField::new(3).unwrap();
        let mut e = Echelon::new(k, 3);
        assert!(e.insert(vec![1, 1, 0]));
        assert!(e.insert(vec![0, 1, 1]));
        // (1,1,0) + 2*(0,1,1) = (1,0,2)
        assert!(!e.insert(vec![1, 0, 2]));
        assert_eq!(e.rank(), 2);
        let ker = e.kernel();
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        assert_eq!(k.add(v[0], v[1]), 0);
        assert_eq!(k.add(v[1], v[2]), 0);
    }
}
