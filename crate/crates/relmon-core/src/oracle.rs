//! Radical dimension of the relation algebra from its trace form, for
//! `n <= 3`.
//!
//! In characteristic zero the Jacobson radical of a finite-dimensional
//! algebra is the radical of the form `(a, b) ↦ tr(L_{ab})`, where `L_w` is
//! left multiplication in the regular representation. On the basis of
//! relations, `tr(L_w)` counts the relations `r` with `wr = r`, so the Gram
//! matrix has integer entries and its rank over the rationals is found by
//! fraction-free elimination.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::relation::Relation;

/// Largest `n` for which the trace form is built (basis size `2^{n²}`).
pub const ORACLE_LIMIT: usize = 3;

fn check(n: usize) -> Result<()> {
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge { op: "oracle", size: n, limit: ORACLE_LIMIT });
    }
    Ok(())
}

/// `tr(L_w)`: the number of relations `r` with `w ∘ r = r`.
pub fn left_mul_trace(w: &Relation) -> Result<u64> {
    check(w.len())?;
    Ok(Relation::all(w.len()).filter(|r| w.compose_unchecked(r) == *r).count() as u64)
}

/// Products of all pairs of basis relations, basis ordered by index.
#[derive(Clone, Debug)]
pub struct CompositionTable {
    n: usize,
    m: usize,
    table: Vec<u16>,
}

impl CompositionTable {
    pub fn new(n: usize) -> Result<Self> {
        check(n)?;
        let basis: Vec<Relation> = Relation::all(n).collect();
        let m = basis.len();
        let mut table = Vec::with_capacity(m * m);
        for u in &basis {
            for v in &basis {
                table.push(u.compose_unchecked(v).to_index() as u16);
            }
        }
        Ok(CompositionTable { n, m, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn product(&self, u: usize, v: usize) -> usize {
        self.table[u * self.m + v] as usize
    }

    /// `tr(L_w)` for every basis element `w`, from the table.
    pub fn traces(&self) -> Vec<u32> {
        (0..self.m).map(|w| (0..self.m).filter(|&r| self.product(w, r) == r).count() as u32).collect()
    }
}

/// Gram matrix of the trace form on the basis of relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub n: usize,
    pub m: usize,
    /// Row-major, `m * m` entries.
    pub entries: Vec<u32>,
}

impl GramMatrix {
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.entries[u * self.m + v]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.m).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }
}

pub fn gram(n: usize) -> Result<GramMatrix> {
    let table = CompositionTable::new(n)?;
    let traces = table.traces();
    let m = table.size();
    let mut entries = Vec::with_capacity(m * m);
    for u in 0..m {
        for v in 0..m {
            entries.push(traces[table.product(u, v)]);
        }
    }
    Ok(GramMatrix { n, m, entries })
}

/// Column and pivot scan order for [`bareiss_rank`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotOrder {
    /// Columns left to right, first usable row as pivot.
    Natural,
    /// Columns right to left, last usable row as pivot.
    Reversed,
}

/// Rank over the rationals by fraction-free (Bareiss) elimination. Every
/// division is checked to be exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>, order: PivotOrder) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let col_seq: Vec<usize> = match order {
        PivotOrder::Natural => (0..cols).collect(),
        PivotOrder::Reversed => (0..cols).rev().collect(),
    };
    let mut prev = BigInt::one();
    let mut rank = 0;
    for (step, &c) in col_seq.iter().enumerate() {
        if rank == rows {
            break;
        }
        let pivot = match order {
            PivotOrder::Natural => (rank..rows).find(|&i| !a[i][c].is_zero()),
            PivotOrder::Reversed => (rank..rows).rev().find(|&i| !a[i][c].is_zero()),
        };
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        let pv = &prow[c];
        for row in rest.iter_mut() {
            let factor = core::mem::take(&mut row[c]);
            for &j in &col_seq[step + 1..] {
                let mut x = pv * &row[j];
                if !factor.is_zero() {
                    x -= &factor * &prow[j];
                }
                let (q, r) = x.div_rem(&prev);
                assert!(r.is_zero(), "fraction-free elimination produced an inexact division");
                row[j] = q;
            }
        }
        prev = pv.clone();
        rank += 1;
    }
    rank
}

/// `2^{n²}` minus the rank of the trace form.
pub fn radical_dim_oracle(n: usize) -> Result<u64> {
    let g = gram(n)?;
    let rank = bareiss_rank(g.rows(), PivotOrder::Natural);
    Ok(g.m as u64 - rank as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_examples() {
        for n in 0..=3 {
            assert_eq!(left_mul_trace(&Relation::identity(n)).unwrap(), 1 << (n * n));
        }
        for n in 1..=3 {
            assert_eq!(left_mul_trace(&Relation::empty(n)).unwrap(), 1);
        }
        // on one point the full relation is Δ, so both relations are fixed
        assert_eq!(left_mul_trace(&Relation::full(1)).unwrap(), 2);
        // X×X ∘ r = r exactly when all rows of r coincide
        assert_eq!(left_mul_trace(&Relation::full(2)).unwrap(), 4);
        assert!(left_mul_trace(&Relation::identity(4)).is_err());
    }

    #[test]
    fn gram_small() {
        let g0 = gram(0).unwrap();
        assert_eq!((g0.m, g0.entries.clone()), (1, alloc::vec![1]));
        // basis {∅, {(1,1)}}: traces 1 and 2
        let g1 = gram(1).unwrap();
        assert_eq!(g1.entries, [1, 1, 1, 2]);
        assert_eq!(bareiss_rank(g1.rows(), PivotOrder::Natural), 2);
        let g2 = gram(2).unwrap();
        assert_eq!(g2.m, 16);
        assert_eq!(bareiss_rank(g2.rows(), PivotOrder::Natural), 16);
        assert!(gram(4).is_err());
    }

    #[test]
    fn bareiss_known_ranks() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
        };
        assert_eq!(bareiss_rank(m(&[&[1, 2], &[2, 4]]), PivotOrder::Natural), 1);
        assert_eq!(bareiss_rank(m(&[&[0, 0], &[0, 0]]), PivotOrder::Reversed), 0);
        let a = m(&[&[2, 3, 5], &[4, 6, 10], &[1, 0, 7], &[3, 3, 12]]);
        assert_eq!(bareiss_rank(a.clone(), PivotOrder::Natural), 2);
        assert_eq!(bareiss_rank(a, PivotOrder::Reversed), 2);
        assert_eq!(bareiss_rank(Vec::new(), PivotOrder::Natural), 0);
    }

    #[test]
    fn oracle_small() {
        assert_eq!(radical_dim_oracle(0).unwrap(), 0);
        assert_eq!(radical_dim_oracle(1).unwrap(), 0);
        assert_eq!(radical_dim_oracle(2).unwrap(), 0);
    }
}
