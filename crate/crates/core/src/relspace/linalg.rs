//! Incremental reduced row echelon form over exact rationals, with sparse
//! rows indexed by arbitrary `usize` columns.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type SparseRow = Vec<(usize, Rational)>;

/// A fully reduced echelon basis: every pivot is 1 and is the only nonzero
/// entry in its column. The pivot of a row is its smallest column.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

fn axpy(acc: &mut BTreeMap<usize, Rational>, row: &SparseRow, c: &Rational) {
    for (col, v) in row {
        let e = acc.entry(*col).or_insert_with(Rational::zero);
        *e -= &(v * c);
        if e.is_zero() {
            acc.remove(col);
        }
    }
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseRow)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `v` against the basis; the result has no entry in any pivot column.
    pub fn reduce(
        &self,
        v: impl IntoIterator<Item = (usize, Rational)>,
    ) -> BTreeMap<usize, Rational> {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, x) in v {
            if x.is_zero() {
                continue;
            }
            let e = acc.entry(c).or_insert_with(Rational::zero);
            *e += &x;
            if e.is_zero() {
                acc.remove(&c);
            }
        }
        let hits: Vec<(usize, Rational)> = acc
            .iter()
            .filter(|(c, _)| self.rows.contains_key(c))
            .map(|(c, x)| (*c, x.clone()))
            .collect();
        // Pivot rows vanish on every other pivot column, so one pass suffices.
        for (c, x) in hits {
            axpy(&mut acc, &self.rows[&c], &x);
        }
        acc
    }

    pub fn contains(&self, v: impl IntoIterator<Item = (usize, Rational)>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns true if the rank grew.
    pub fn insert(&mut self, v: impl IntoIterator<Item = (usize, Rational)>) -> bool {
        let rem = self.reduce(v);
        let Some((&pivot, lead)) = rem.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let row: SparseRow = rem.iter().map(|(c, x)| (*c, x * &inv)).collect();
        for other in self.rows.values_mut() {
            if let Ok(k) = other.binary_search_by_key(&pivot, |(c, _)| *c) {
                let f = other[k].1.clone();
                let mut acc: BTreeMap<usize, Rational> = other.drain(..).collect();
                axpy(&mut acc, &row, &f);
                *other = acc.into_iter().collect();
            }
        }
        debug_assert!(row[0].1.is_one());
        self.rows.insert(pivot, row);
        true
    }
}
