//! Exact sparse row echelon form over the rationals.
//!
//! Rows are inserted one at a time. An incoming row is reduced against the
//! stored pivot rows; if anything survives, one of its columns becomes a new
//! pivot. The pivot is the surviving column that occurs in the fewest stored
//! rows (a Markowitz-style choice), ties going to the lowest column index.
//!
//! A stored row never contains the pivot column of an earlier row, so the
//! stored rows restricted to their pivot columns are triangular in insertion
//! order. Reduction therefore eliminates pivots in insertion order, and a
//! fully reduced vector is zero exactly when it lies in the row space.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_traits::{One, Zero};

use crate::lincomb::Rational;

/// A sparse vector: `(column, coefficient)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Rational)>;

pub fn sparse_from_map(map: HashMap<usize, Rational>) -> SparseRow {
    let mut row: SparseRow = map.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    row.sort_unstable_by_key(|(c, _)| *c);
    row
}

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivot_col: Vec<usize>,
    pivot_of: HashMap<usize, usize>,
    col_count: HashMap<usize, u32>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Stored rows, each scaled so its pivot coefficient is 1.
    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_col
    }

    /// The remainder of `row` after eliminating every pivot column.
    pub fn reduce(&self, row: &[(usize, Rational)]) -> SparseRow {
        let mut acc: HashMap<usize, Rational> = HashMap::with_capacity(row.len() * 2);
        let mut heap = BinaryHeap::new();
        for (c, v) in row {
            if v.is_zero() {
                continue;
            }
            if let Some(&p) = self.pivot_of.get(c) {
                heap.push(Reverse(p));
            }
            *acc.entry(*c).or_insert_with(Rational::zero) += v;
        }
        while let Some(Reverse(p)) = heap.pop() {
            let col = self.pivot_col[p];
            let factor = match acc.get(&col) {
                Some(f) if !f.is_zero() => f.clone(),
                _ => continue,
            };
            for (c, v) in &self.rows[p] {
                let slot = acc.entry(*c).or_insert_with(Rational::zero);
                let was_zero = slot.is_zero();
                *slot -= &factor * v;
                if was_zero && !slot.is_zero() {
                    if let Some(&q) = self.pivot_of.get(c) {
                        heap.push(Reverse(q));
                    }
                }
            }
        }
        sparse_from_map(acc)
    }

    /// Adds a row to the span; returns whether the rank grew.
    pub fn insert(&mut self, row: &[(usize, Rational)]) -> bool {
        let reduced = self.reduce(row);
        let Some(pivot) = reduced
            .iter()
            .map(|(c, _)| *c)
            .min_by_key(|c| (self.col_count.get(c).copied().unwrap_or(0), *c))
        else {
            return false;
        };
        let lead = reduced
            .iter()
            .find(|(c, _)| *c == pivot)
            .map(|(_, v)| v.clone())
            .expect("pivot column present");
        let row: SparseRow = if lead.is_one() {
            reduced
        } else {
            let inv = lead.recip();
            reduced.into_iter().map(|(c, v)| (c, v * &inv)).collect()
        };
        for (c, _) in &row {
            *self.col_count.entry(*c).or_insert(0) += 1;
        }
        self.pivot_of.insert(pivot, self.rows.len());
        self.pivot_col.push(pivot);
        self.rows.push(row);
        true
    }

    pub fn contains(&self, row: &[(usize, Rational)]) -> bool {
        self.reduce(row).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::rational;

    fn row(items: &[(usize, i64)]) -> SparseRow {
        items.iter().map(|&(c, v)| (c, rational(v))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&row(&[(0, 1)])));
        assert!(e.insert(&row(&[(1, 1), (2, 1)])));
        assert!(e.insert(&row(&[(3, 1)])));
        assert!(!e.insert(&row(&[(1, 2), (2, 2), (0, 5)])));
        assert_eq!(e.rank(), 3);
        assert!(e.contains(&row(&[(1, -1), (2, -1), (3, 7)])));
        assert!(!e.contains(&row(&[(1, 1)])));
        assert_eq!(e.reduce(&row(&[(1, 1)])).len(), 1);
    }

    #[test]
    fn zero_row_is_ignored() {
        let mut e = Echelon::new();
        assert!(!e.insert(&row(&[])));
        assert!(!e.insert(&row(&[(4, 0)])));
        assert_eq!(e.rank(), 0);
    }

    #[test]
    fn triangular_chain() {
        // Later pivots appearing in earlier rows must be eliminated too.
        let mut e = Echelon::new();
        e.insert(&row(&[(0, 1), (1, 1)]));
        e.insert(&row(&[(1, 1), (2, 1)]));
        e.insert(&row(&[(2, 1), (3, 1)]));
        assert_eq!(e.rank(), 3);
        // (x0+x1) - (x1+x2) + (x2+x3) = x0 + x3
        assert!(e.contains(&row(&[(0, 1), (3, 1)])));
        assert!(!e.contains(&row(&[(0, 1), (3, -1)])));
        assert!(!e.insert(&row(&[(0, 2), (3, 2)])));
        assert!(e.insert(&row(&[(0, 1), (3, -1)])));
        assert!(e.contains(&row(&[(2, 5)])));
    }
}
