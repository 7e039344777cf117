//! Sparse row-echelon elimination for the large structured systems
//! (ideal saturation spans, bar differentials). Rows are sorted
//! `(column, coefficient)` lists; the echelon keeps one row per leading
//! column and is triangular, not fully reduced, which is enough for ranks
//! and for intersecting a row space with a trailing coordinate block.

use crate::scalar::{Field, Scalar};
use std::collections::BTreeMap;

pub type SparseVec = Vec<(usize, Scalar)>;

pub fn sparse_add_scaled(a: &SparseVec, b: &SparseVec, c: &Scalar) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = b[j].1.mul(c);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&b[j].1.mul(c));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental echelon basis keyed by leading column.
pub struct Echelon {
    pub field: Field,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Echelon {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the basis; if a nonzero remainder survives it is
    /// normalized and inserted. Returns true when the rank grew.
    pub fn insert(&mut self, mut row: SparseVec) -> bool {
        loop {
            let Some((lead, lv)) = row.first().map(|(c, v)| (*c, v.clone())) else {
                return false;
            };
            if let Some(base) = self.rows.get(&lead) {
                // base rows carry unit leading entries
                row = sparse_add_scaled(&row, base, &lv.neg());
            } else {
                let inv = lv.inv().expect("nonzero leading coefficient");
                if !inv.is_one() {
                    for e in row.iter_mut() {
                        e.1 = e.1.mul(&inv);
                    }
                }
                self.rows.insert(lead, row);
                return true;
            }
        }
    }

    /// Iterates echelon rows in leading-column order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Rows whose support lies entirely at columns `>= start`; for an echelon
    /// basis these span the intersection of the row space with that trailing
    /// coordinate block.
    pub fn rows_supported_from(&self, start: usize) -> impl Iterator<Item = &SparseVec> {
        self.rows.range(start..).map(|(_, r)| r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(field: Field, entries: &[(usize, i64)]) -> SparseVec {
        entries
            .iter()
            .map(|&(c, v)| (c, field.from_i64(v)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    #[test]
    fn echelon_rank_matches_dense() {
        let f = Field::Rational;
        let mut e = Echelon::new(f);
        assert!(e.insert(row(f, &[(0, 2), (1, 4)])));
        assert!(!e.insert(row(f, &[(0, 1), (1, 2)])));
        assert!(e.insert(row(f, &[(1, 1)])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn trailing_block_intersection() {
        let f = Field::Rational;
        let mut e = Echelon::new(f);
        e.insert(row(f, &[(0, 1), (2, 1)]));
        e.insert(row(f, &[(0, 1), (2, 2)]));
        // row space contains (0,0,1); echelon should expose it at column 2
        let tail: Vec<_> = e.rows_supported_from(2).collect();
        assert_eq!(tail.len(), 1);
    }
}
