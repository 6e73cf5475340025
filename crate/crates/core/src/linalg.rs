//! Sparse exact Gaussian elimination over the rationals, plus a rank routine
//! modulo a prime used only as a lower bound.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exact::Rational;

pub type SparseRow = Vec<(usize, Rational)>;

/// Incremental row echelon form. Each stored row has a leading 1 at its pivot.
#[derive(Default, Debug, Clone)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

fn axpy(target: &SparseRow, factor: &Rational, source: &SparseRow) -> SparseRow {
    // target - factor * source
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let take_t = j >= source.len() || (i < target.len() && target[i].0 < source[j].0);
        let take_s = i >= target.len() || (j < source.len() && source[j].0 < target[i].0);
        if take_t {
            out.push(target[i].clone());
            i += 1;
        } else if take_s {
            out.push((source[j].0, -(factor * &source[j].1)));
            j += 1;
        } else {
            let v = &target[i].1 - factor * &source[j].1;
            if !v.is_zero() {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the stored pivots; returns the residue.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|(c, _)| *c);
        let mut pos = 0;
        while pos < row.len() {
            let col = row[pos].0;
            if let Some(piv) = self.rows.get(&col) {
                let factor = row[pos].1.clone();
                row = axpy(&row, &factor, piv);
            } else {
                pos += 1;
            }
        }
        row
    }

    /// Insert a row; returns true if it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        let lead = row[0].1.clone();
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, v) in row.iter_mut() {
                *v *= &inv;
            }
        }
        self.rows.insert(row[0].0, row);
        true
    }

    /// Basis of the null space of the inserted rows, over `ncols` columns.
    pub fn nullspace(&self, ncols: usize) -> Vec<Vec<Rational>> {
        // full back-substitution into reduced form
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for &p in pivots.iter().rev() {
            let mut row = self.rows[&p].clone();
            let mut pos = 1;
            while pos < row.len() {
                let col = row[pos].0;
                if let Some(r) = reduced.get(&col) {
                    let factor = row[pos].1.clone();
                    row = axpy(&row, &factor, r);
                } else {
                    pos += 1;
                }
            }
            reduced.insert(p, row);
        }
        let mut basis = Vec::new();
        for free in 0..ncols {
            if reduced.contains_key(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (&p, row) in reduced.iter() {
                if let Some((_, c)) = row.iter().find(|(c, _)| *c == free) {
                    v[p] = -c.clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

pub fn rank_of(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Rank of a dense matrix over `Z/p`. Over `Q` the rank is at least this.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for v in rows[rank].iter_mut() {
            *v = (*v as u128 * inv as u128 % p as u128) as u64;
        }
        let pivot_row = rows[rank].clone();
        for r in 0..rows.len() {
            if r == rank {
                continue;
            }
            let f = rows[r][col] % p;
            if f == 0 {
                continue;
            }
            for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                let sub = (f as u128 * *pv as u128 % p as u128) as u64;
                rows[r][c] = (rows[r][c] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}
