//! Relations on `{0, .., n-1}` stored as bit-matrices.
//!
//! Row `z` holds the pairs `(z, x)`: bit `x` of `rows[z]` is set iff `(z, x)`
//! belongs to the relation. With this orientation the composite `RS`
//! (`(z, x)` such that `(z, y) ∈ R` and `(y, x) ∈ S` for some `y`) is the
//! boolean matrix product with `R` on the left. A partial order stores `x <= z`
//! as the pair `(z, x)`, so row `z` is the principal downset of `z`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest ground set supported by [`Relation`].
pub const MAX_N: usize = 16;

/// Largest ground set for which [`Relation::boolean_rank`] is exact.
pub const RANK_LIMIT: usize = 5;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Relation {
    n: u8,
    rows: [u16; MAX_N],
}

#[inline]
fn low_mask(n: usize) -> u16 {
    if n >= 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

fn check_same(a: &Relation, b: &Relation) -> Result<()> {
    if a.n != b.n {
        return Err(Error::SizeMismatch { left: a.len(), right: b.len() });
    }
    Ok(())
}

impl Relation {
    /// The empty relation on an `n`-set.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_N, "relation size {n} exceeds {MAX_N}");
        Relation { n: n as u8, rows: [0; MAX_N] }
    }

    /// The equality relation Δ.
    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for z in 0..n {
            r.rows[z] = 1 << z;
        }
        r
    }

    /// `X × X`.
    pub fn full(n: usize) -> Self {
        let mut r = Self::empty(n);
        for z in 0..n {
            r.rows[z] = low_mask(n);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::TooLarge { op: "relation", size: n, limit: MAX_N });
        }
        let mut r = Self::empty(n);
        for &(z, x) in pairs {
            if z >= n || x >= n {
                return Err(Error::InvalidArgument("pair outside the ground set"));
            }
            r.rows[z] |= 1 << x;
        }
        Ok(r)
    }

    pub fn from_rows(rows: &[u16]) -> Result<Self> {
        let n = rows.len();
        if n > MAX_N {
            return Err(Error::TooLarge { op: "relation", size: n, limit: MAX_N });
        }
        let mut r = Self::empty(n);
        for (z, &row) in rows.iter().enumerate() {
            if row & !low_mask(n) != 0 {
                return Err(Error::InvalidArgument("row has bits outside the ground set"));
            }
            r.rows[z] = row;
        }
        Ok(r)
    }

    /// Decodes the `n²`-bit index used to enumerate all relations: bit
    /// `z * n + x` is the pair `(z, x)`.
    pub fn from_index(n: usize, index: u64) -> Self {
        assert!(n <= 8, "index encoding supports n <= 8");
        let mut r = Self::empty(n);
        for z in 0..n {
            r.rows[z] = ((index >> (z * n)) as u16) & low_mask(n);
        }
        r
    }

    pub fn to_index(&self) -> u64 {
        assert!(self.len() <= 8, "index encoding supports n <= 8");
        let n = self.len();
        (0..n).fold(0u64, |acc, z| acc | (u64::from(self.rows[z]) << (z * n)))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.rows().iter().all(|&r| r == 0)
    }

    #[inline]
    pub fn rows(&self) -> &[u16] {
        &self.rows[..self.n as usize]
    }

    #[inline]
    pub fn row(&self, z: usize) -> u16 {
        self.rows[z]
    }

    #[inline]
    pub fn contains(&self, z: usize, x: usize) -> bool {
        self.rows[z] >> x & 1 == 1
    }

    pub fn insert(&mut self, z: usize, x: usize) {
        assert!(z < self.len() && x < self.len());
        self.rows[z] |= 1 << x;
    }

    pub fn pair_count(&self) -> u32 {
        self.rows().iter().map(|r| r.count_ones()).sum()
    }

    /// Column `x` as a bitmask over rows.
    pub fn column(&self, x: usize) -> u16 {
        (0..self.len()).filter(|&z| self.contains(z, x)).fold(0, |m, z| m | 1 << z)
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n == other.n && self.rows().iter().zip(other.rows()).all(|(a, b)| a & !b == 0)
    }

    /// `self ∘ other`, i.e. the composite `RS` with `R = self`.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        check_same(self, other)?;
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Relation) -> Relation {
        let mut out = Relation::empty(self.len());
        for z in 0..self.len() {
            let mut ys = self.rows[z];
            let mut acc = 0u16;
            while ys != 0 {
                let y = ys.trailing_zeros() as usize;
                ys &= ys - 1;
                acc |= other.rows[y];
            }
            out.rows[z] = acc;
        }
        out
    }

    /// The graph `Δ_σ = {(σ(x), x)}` of a permutation.
    pub fn delta(sigma: &Permutation) -> Relation {
        let mut r = Relation::empty(sigma.len());
        for x in 0..sigma.len() {
            r.rows[sigma.apply(x)] |= 1 << x;
        }
        r
    }

    /// `Δ_σ R Δ_{σ⁻¹}`: the pair `(σ(z), σ(x))` for every `(z, x)` in `self`.
    pub fn conjugate(&self, sigma: &Permutation) -> Result<Relation> {
        if sigma.len() != self.len() {
            return Err(Error::SizeMismatch { left: sigma.len(), right: self.len() });
        }
        let mut out = Relation::empty(self.len());
        for z in 0..self.len() {
            out.rows[sigma.apply(z)] = sigma.apply_mask(self.rows[z]);
        }
        Ok(out)
    }

    pub fn opposite(&self) -> Relation {
        let mut out = Relation::empty(self.len());
        for z in 0..self.len() {
            out.rows[z] = self.column(z);
        }
        out
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|z| self.contains(z, z))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.len()).all(|z| (z + 1..self.len()).all(|x| !(self.contains(z, x) && self.contains(x, z))))
    }

    pub fn is_transitive(&self) -> bool {
        self.compose_unchecked(self).is_subset(self)
    }

    /// Reflexive, antisymmetric and transitive.
    pub fn is_order(&self) -> bool {
        self.is_reflexive() && self.is_antisymmetric() && self.is_transitive()
    }

    /// Minimal number of rectangles `A × B` whose union is the relation.
    ///
    /// This is the least `m` such that the relation factors through an
    /// `m`-element set. Exact search, limited to `n <= 5`.
    pub fn boolean_rank(&self) -> Result<usize> {
        let n = self.len();
        if n > RANK_LIMIT {
            return Err(Error::TooLarge { op: "boolean_rank", size: n, limit: RANK_LIMIT });
        }
        if self.is_empty() {
            return Ok(0);
        }
        let rects = self.maximal_rectangles();
        let mut covered = [0u16; MAX_N];
        for budget in 1..=n {
            if self.cover_search(&rects, &mut covered, budget) {
                return Ok(budget);
            }
        }
        // Rows are rectangles, so a cover of size <= n always exists.
        unreachable!("row cover has at most n rectangles")
    }

    /// No factorization through a smaller set.
    pub fn is_essential(&self) -> Result<bool> {
        Ok(self.boolean_rank()? == self.len())
    }

    /// Rectangles `(rows, cols)` contained in the relation that are maximal
    /// under inclusion.
    fn maximal_rectangles(&self) -> Vec<(u16, u16)> {
        let n = self.len();
        let mut out: Vec<(u16, u16)> = Vec::new();
        for a in 1u16..(1 << n) {
            let cols = (0..n).filter(|&z| a >> z & 1 == 1).fold(low_mask(n), |m, z| m & self.rows[z]);
            if cols == 0 {
                continue;
            }
            let closure = (0..n).filter(|&z| self.rows[z] & cols == cols).fold(0u16, |m, z| m | 1 << z);
            if closure == a {
                out.push((a, cols));
            }
        }
        out
    }

    fn cover_search(&self, rects: &[(u16, u16)], covered: &mut [u16; MAX_N], budget: usize) -> bool {
        let n = self.len();
        let Some(z) = (0..n).find(|&z| self.rows[z] & !covered[z] != 0) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        let x = (self.rows[z] & !covered[z]).trailing_zeros();
        for &(a, b) in rects {
            if a >> z & 1 == 0 || b >> x & 1 == 0 {
                continue;
            }
            let saved = *covered;
            for (w, row) in covered.iter_mut().enumerate().take(n) {
                if a >> w & 1 == 1 {
                    *row |= b;
                }
            }
            if self.cover_search(rects, covered, budget - 1) {
                *covered = saved;
                return true;
            }
            *covered = saved;
        }
        false
    }

    /// Iterator over all `2^(n²)` relations on an `n`-set, by index.
    pub fn all(n: usize) -> impl Iterator<Item = Relation> {
        assert!(n <= 5, "exhaustive iteration limited to n <= 5");
        (0..1u64 << (n * n)).map(move |i| Relation::from_index(n, i))
    }
}

/// Number of essential relations on an `n`-set, i.e. the dimension of the
/// quotient of the relation algebra by the ideal spanned by inessential
/// relations.
pub fn essential_algebra_dim(n: usize) -> Result<u64> {
    const LIMIT: usize = 4;
    if n > LIMIT {
        return Err(Error::TooLarge { op: "essential_algebra_dim", size: n, limit: LIMIT });
    }
    let mut count = 0;
    for r in Relation::all(n) {
        if r.is_essential()? {
            count += 1;
        }
    }
    Ok(count)
}

impl Ord for Relation {
    /// Size first, then the row-major `0`/`1` string (column 0 first).
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            let a = self.rows().iter().map(|r| r.reverse_bits());
            let b = other.rows().iter().map(|r| r.reverse_bits());
            a.cmp(b)
        })
    }
}

impl PartialOrd for Relation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({}; ", self.n)?;
        for (z, row) in self.rows().iter().enumerate() {
            if z > 0 {
                f.write_str("/")?;
            }
            for x in 0..self.len() {
                f.write_str(if row >> x & 1 == 1 { "1" } else { "0" })?;
            }
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn compose_single_witness() {
        // (1,2) then (2,1), renumbered to 0-based
        let r = Relation::from_pairs(2, &[(0, 1)]).unwrap();
        let s = Relation::from_pairs(2, &[(1, 0)]).unwrap();
        assert_eq!(r.compose(&s).unwrap(), Relation::from_pairs(2, &[(0, 0)]).unwrap());
    }

    #[test]
    fn compose_size_mismatch() {
        let err = Relation::identity(2).compose(&Relation::identity(3)).unwrap_err();
        assert_eq!(err, Error::SizeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn empty_annihilates() {
        let full = Relation::full(3);
        assert!(Relation::empty(3).compose(&full).unwrap().is_empty());
        assert!(full.compose(&Relation::empty(3)).unwrap().is_empty());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(Relation::delta(&Permutation::identity(3)), Relation::identity(3));
        let swap = perm(&[1, 0]);
        assert_eq!(Relation::delta(&swap), Relation::from_pairs(2, &[(1, 0), (0, 1)]).unwrap());
        let s = perm(&[2, 0, 3, 1]);
        let prod = Relation::delta(&s).compose(&Relation::delta(&s.inverse())).unwrap();
        assert_eq!(prod, Relation::identity(4));
    }

    #[test]
    fn delta_matches_conjugate_definition() {
        let s = perm(&[2, 0, 1]);
        let r = Relation::from_pairs(3, &[(0, 1), (2, 2), (1, 0)]).unwrap();
        let direct = Relation::delta(&s)
            .compose(&r)
            .unwrap()
            .compose(&Relation::delta(&s.inverse()))
            .unwrap();
        assert_eq!(r.conjugate(&s).unwrap(), direct);
    }

    #[test]
    fn conjugate_examples() {
        let r = Relation::from_pairs(3, &[(0, 1), (2, 0)]).unwrap();
        assert_eq!(r.conjugate(&Permutation::identity(3)).unwrap(), r);
        assert_eq!(Relation::identity(3).conjugate(&perm(&[1, 2, 0])).unwrap(), Relation::identity(3));
        // order 1 <= 2 relabelled by (1 2)
        let order = Relation::from_pairs(2, &[(0, 0), (1, 1), (1, 0)]).unwrap();
        let expected = Relation::from_pairs(2, &[(0, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(order.conjugate(&perm(&[1, 0])).unwrap(), expected);
    }

    #[test]
    fn order_predicate() {
        assert!(Relation::identity(4).is_order());
        assert!(!Relation::full(2).is_order());
        assert!(Relation::identity(0).is_order());
        let labeled = Relation::all(3).filter(Relation::is_order).count();
        assert_eq!(labeled, 19);
    }

    #[test]
    fn opposite_examples() {
        let chain = Relation::from_pairs(2, &[(0, 0), (1, 1), (1, 0)]).unwrap();
        let rev = Relation::from_pairs(2, &[(0, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(chain.opposite(), rev);
        assert_eq!(chain.opposite().opposite(), chain);
        assert_eq!(Relation::identity(5).opposite(), Relation::identity(5));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Relation::empty(3).boolean_rank(), Ok(0));
        for n in 1..=5 {
            assert_eq!(Relation::full(n).boolean_rank(), Ok(1));
        }
        assert_eq!(Relation::identity(3).boolean_rank(), Ok(3));
        assert!(matches!(Relation::identity(6).boolean_rank(), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn essential_examples() {
        assert_eq!(Relation::full(1).is_essential(), Ok(true));
        assert_eq!(Relation::empty(1).is_essential(), Ok(false));
        assert_eq!(Relation::identity(2).is_essential(), Ok(true));
        assert_eq!(essential_algebra_dim(0), Ok(1));
        assert_eq!(essential_algebra_dim(1), Ok(1));
        assert_eq!(essential_algebra_dim(2), Ok(6));
        assert!(essential_algebra_dim(5).is_err());
    }

    #[test]
    fn index_roundtrip() {
        for i in 0..512 {
            assert_eq!(Relation::from_index(3, i).to_index(), i);
        }
    }

    #[test]
    fn ordering_is_row_major_string() {
        // "01/00" < "10/00"
        let a = Relation::from_pairs(2, &[(0, 1)]).unwrap();
        let b = Relation::from_pairs(2, &[(0, 0)]).unwrap();
        assert!(a < b);
        let c = Relation::from_pairs(2, &[(1, 1)]).unwrap();
        assert!(c < a);
    }
}
