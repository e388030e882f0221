//! The lattice `T` of lower ideals of `(E, R^op)` and the invariant `g`.
//!
//! Elements are bitmasks over `E`, join is union and meet is intersection.
//! `E` sits inside `T` as the principal ideals, which are exactly the
//! join-irreducible elements.
//!
//! `g = |G|` with `G = E ⊔ {a ∈ T : r∞(s∞(a)) = a}`, where
//!
//! * `r(t)` is the join of the irreducibles strictly below `t` (for an
//!   irreducible this is its unique lower cover, otherwise `t` itself),
//! * `s(t)` is the meet of the irreducibles strictly above `t` (the top when
//!   there are none),
//!
//! and `r∞`, `s∞` iterate until a fixed point is reached. Both are monotone
//! in the direction they move (`r(t) <= t`, `s(t) >= t`), so iteration
//! terminates. The predicate sits behind [`FixedPointRule`] so a different
//! rule can be swapped in without touching callers.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poset::{PosetClass, MAX_POSET};
use crate::relation::Relation;

const NONE: u16 = u16::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DownsetLattice {
    e: usize,
    elements: Vec<u16>,
    lookup: Vec<u16>,
    irr: Vec<usize>,
    least: usize,
    greatest: usize,
}

impl DownsetLattice {
    /// Downsets of `order`, where row `z` of `order` is the downset of `z`.
    /// Sorted by cardinality, then by bitmask value.
    pub fn of_order(order: &Relation) -> Result<Self> {
        let e = order.len();
        if e > MAX_POSET {
            return Err(Error::TooLarge { op: "downset_lattice", size: e, limit: MAX_POSET });
        }
        if !order.is_order() {
            return Err(Error::NotAnOrder);
        }
        let mut elements = crate::poset::order_ideals(order);
        elements.sort_by_key(|&m| (m.count_ones(), m));
        let mut lookup = alloc::vec![NONE; 1 << e];
        for (i, &m) in elements.iter().enumerate() {
            lookup[m as usize] = i as u16;
        }
        let irr = (0..e).map(|x| lookup[order.row(x) as usize] as usize).collect();
        let least = lookup[0] as usize;
        let greatest = lookup[(1usize << e) - 1] as usize;
        Ok(DownsetLattice { e, elements, lookup, irr, least, greatest })
    }

    /// The lattice `T` attached to a class: lower ideals of `(E, R^op)`.
    pub fn for_class(p: &PosetClass) -> Result<Self> {
        Self::of_order(&p.canon.opposite())
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[u16] {
        &self.elements
    }

    #[inline]
    pub fn element(&self, i: usize) -> u16 {
        self.elements[i]
    }

    #[inline]
    pub fn index_of(&self, mask: u16) -> Option<usize> {
        match self.lookup.get(mask as usize) {
            Some(&i) if i != NONE => Some(i as usize),
            _ => None,
        }
    }

    /// Index of the principal ideal of `x`.
    #[inline]
    pub fn irreducible(&self, x: usize) -> usize {
        self.irr[x]
    }

    /// Principal ideals, indexed by the element of `E` generating them.
    pub fn irreducibles(&self) -> &[usize] {
        &self.irr
    }

    pub fn least(&self) -> usize {
        self.least
    }

    pub fn greatest(&self) -> usize {
        self.greatest
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lookup[(self.elements[a] | self.elements[b]) as usize] as usize
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.lookup[(self.elements[a] & self.elements[b]) as usize] as usize
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a] & !self.elements[b] == 0
    }

    /// Join of a family; the empty join is the least element.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        let mask = items.into_iter().fold(0u16, |m, i| m | self.elements[i]);
        self.lookup[mask as usize] as usize
    }

    /// Meet of a family; the empty meet is the greatest element.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        let full = self.elements[self.greatest];
        let mask = items.into_iter().fold(full, |m, i| m & self.elements[i]);
        self.lookup[mask as usize] as usize
    }

    pub fn is_irreducible(&self, a: usize) -> bool {
        self.irr.contains(&a)
    }

    /// Join-irreducible elements found from the lattice structure alone: an
    /// element other than the least one that differs from the join of the
    /// elements strictly below it. Checked against the principal ideals.
    pub fn join_irreducibles(&self) -> Result<Vec<usize>> {
        let found: Vec<usize> = (0..self.len())
            .filter(|&a| {
                let below = (0..self.len()).filter(|&b| b != a && self.leq(b, a));
                a != self.least && self.join_all(below) != a
            })
            .collect();
        let mut expected = self.irr.clone();
        expected.sort_unstable();
        if found.len() != self.e || found != expected {
            return Err(Error::LatticeStructure("join-irreducibles are not the principal ideals"));
        }
        Ok(found)
    }

    /// The order induced on `E` by inclusion of principal ideals, in the
    /// orientation of the order the lattice was built from.
    pub fn irreducible_order(&self) -> Relation {
        let mut r = Relation::empty(self.e);
        for y in 0..self.e {
            for x in 0..self.e {
                if self.leq(self.irr[x], self.irr[y]) {
                    r.insert(y, x);
                }
            }
        }
        r
    }

    /// `r(t)`: join of the irreducibles strictly below `t`.
    pub fn lower_join(&self, t: usize) -> usize {
        self.join_all(self.irr.iter().copied().filter(|&x| x != t && self.leq(x, t)))
    }

    /// `s(t)`: meet of the irreducibles strictly above `t`.
    pub fn upper_meet(&self, t: usize) -> usize {
        self.meet_all(self.irr.iter().copied().filter(|&x| x != t && self.leq(t, x)))
    }

    /// `r∞(t)`.
    pub fn lower_closure(&self, mut t: usize) -> usize {
        loop {
            let next = self.lower_join(t);
            if next == t {
                return t;
            }
            t = next;
        }
    }

    /// `s∞(t)`.
    pub fn upper_closure(&self, mut t: usize) -> usize {
        loop {
            let next = self.upper_meet(t);
            if next == t {
                return t;
            }
            t = next;
        }
    }
}

/// Decides which lattice elements join `E` in `G`.
pub trait FixedPointRule {
    fn is_fixed(&self, lattice: &DownsetLattice, a: usize) -> bool;
}

/// `r∞(s∞(a)) = a`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClosureRule;

impl FixedPointRule for ClosureRule {
    fn is_fixed(&self, lattice: &DownsetLattice, a: usize) -> bool {
        lattice.lower_closure(lattice.upper_closure(a)) == a
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GInfo {
    pub class_id: usize,
    pub e: usize,
    pub lattice_size: usize,
    pub g: usize,
    /// Indices of the fixed points outside `E`, increasing.
    pub fixed: Vec<usize>,
    /// Set when `g` exceeds the lattice size, which the definition forbids.
    pub flagged: bool,
}

impl GInfo {
    /// `(|E|, |fixed|)`; these add up to `g`.
    pub fn decomposition(&self) -> (usize, usize) {
        (self.e, self.fixed.len())
    }

    /// Membership in `G` for a lattice index.
    pub fn contains(&self, lattice: &DownsetLattice, a: usize) -> bool {
        lattice.is_irreducible(a) || self.fixed.binary_search(&a).is_ok()
    }

    /// Indices of `G`, increasing.
    pub fn members(&self, lattice: &DownsetLattice) -> Vec<usize> {
        (0..lattice.len()).filter(|&a| self.contains(lattice, a)).collect()
    }
}

pub fn compute_g(p: &PosetClass, t: &DownsetLattice) -> GInfo {
    compute_g_with(p, t, &ClosureRule)
}

pub fn compute_g_with<F: FixedPointRule + ?Sized>(p: &PosetClass, t: &DownsetLattice, rule: &F) -> GInfo {
    let fixed: Vec<usize> = (0..t.len()).filter(|&a| !t.is_irreducible(a) && rule.is_fixed(t, a)).collect();
    let g = t.e() + fixed.len();
    GInfo { class_id: p.class_id, e: p.e, lattice_size: t.len(), g, fixed, flagged: g > t.len() }
}

/// A tabulated value of `g` for a small class, with the lattice size used
/// for the anomaly check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GReference {
    pub label: &'static str,
    pub e: usize,
    pub canon: Relation,
    pub class_id: usize,
    pub g: usize,
    pub lattice_size: usize,
    /// The tabulated `g` exceeds the lattice size.
    pub flagged: bool,
}

/// Label, size and strict pairs `(a, b)` with `a < b`.
pub type SmallPoset = (&'static str, usize, &'static [(usize, usize)]);

/// Orders of size at most 3, in the row order of the published table.
pub const SMALL_POSETS: [SmallPoset; 9] = [
    ("empty", 0, &[]),
    ("point", 1, &[]),
    ("antichain-2", 2, &[]),
    ("chain-2", 2, &[(0, 1)]),
    ("antichain-3", 3, &[]),
    ("point+chain-2", 3, &[(1, 2)]),
    ("V", 3, &[(0, 1), (0, 2)]),
    ("Lambda", 3, &[(0, 2), (1, 2)]),
    ("chain-3", 3, &[(0, 1), (1, 2), (0, 2)]),
];

/// Published values of `g` for [`SMALL_POSETS`]. The 3-chain entry exceeds
/// its lattice size and comes back flagged.
pub const PUBLISHED_G: [usize; 9] = [1, 2, 4, 3, 5, 5, 5, 5, 6];

/// Builds an order from strict pairs `a < b`.
pub fn order_from_less(e: usize, less: &[(usize, usize)]) -> Relation {
    let mut r = Relation::identity(e);
    for &(a, b) in less {
        r.insert(b, a);
    }
    r
}

pub fn g_reference_table() -> Vec<GReference> {
    reference_table_from(&PUBLISHED_G)
}

/// Reference table with caller-supplied `g` values, in [`SMALL_POSETS`] order.
pub fn reference_table_from(values: &[usize; 9]) -> Vec<GReference> {
    SMALL_POSETS
        .iter()
        .zip(values)
        .map(|(&(label, e, less), &g)| {
            let canon = crate::poset::canonical_form(&order_from_less(e, less)).expect("valid order");
            let classes = crate::poset::enumerate_posets(e).expect("small size");
            let class_id = classes.iter().position(|c| c.canon == canon).expect("class present");
            let lattice_size = DownsetLattice::of_order(&canon.opposite()).expect("valid").len();
            GReference { label, e, canon, class_id, g, lattice_size, flagged: g > lattice_size }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{canonical_form, enumerate_posets};

    fn class_of(e: usize, less: &[(usize, usize)]) -> PosetClass {
        let canon = canonical_form(&order_from_less(e, less)).unwrap();
        enumerate_posets(e).unwrap().into_iter().find(|c| c.canon == canon).unwrap()
    }

    #[test]
    fn antichain_lattice_is_boolean() {
        for e in 0..=4 {
            let t = DownsetLattice::of_order(&Relation::identity(e)).unwrap();
            assert_eq!(t.len(), 1 << e);
        }
    }

    #[test]
    fn chain_lattice_is_chain() {
        let t = DownsetLattice::of_order(&order_from_less(3, &[(0, 1), (1, 2), (0, 2)])).unwrap();
        assert_eq!(t.len(), 4);
        for a in 0..4 {
            for b in 0..4 {
                assert!(t.leq(a, b) || t.leq(b, a));
            }
        }
    }

    #[test]
    fn point_plus_chain_has_six_downsets() {
        let t = DownsetLattice::of_order(&order_from_less(3, &[(1, 2)])).unwrap();
        assert_eq!(t.len(), 6);
    }

    #[test]
    fn join_irreducible_examples() {
        let boolean = DownsetLattice::of_order(&Relation::identity(3)).unwrap();
        let irr: Vec<u16> = boolean.join_irreducibles().unwrap().iter().map(|&i| boolean.element(i)).collect();
        assert_eq!(irr, [0b001, 0b010, 0b100]);

        let chain = DownsetLattice::of_order(&order_from_less(3, &[(0, 1), (1, 2), (0, 2)])).unwrap();
        let irr = chain.join_irreducibles().unwrap();
        assert_eq!(irr, [1, 2, 3]);

        // two minimal elements below one top
        let lambda = DownsetLattice::of_order(&order_from_less(3, &[(0, 2), (1, 2)])).unwrap();
        let irr: Vec<u16> = lambda.join_irreducibles().unwrap().iter().map(|&i| lambda.element(i)).collect();
        assert_eq!(irr, [0b001, 0b010, 0b111]);
    }

    #[test]
    fn closures_on_boolean_lattice() {
        let t = DownsetLattice::of_order(&Relation::identity(3)).unwrap();
        let pair = t.index_of(0b011).unwrap();
        assert_eq!(t.upper_meet(pair), t.greatest());
        assert_eq!(t.lower_join(t.greatest()), t.greatest());
        assert_eq!(t.upper_meet(t.least()), t.least());
        let atom = t.index_of(0b001).unwrap();
        assert_eq!(t.lower_join(atom), t.least());
    }

    #[test]
    fn g_small_examples() {
        let cases: [(usize, &[(usize, usize)], usize); 8] = [
            (0, &[], 1),
            (1, &[], 2),
            (2, &[], 4),
            (2, &[(0, 1)], 3),
            (3, &[], 5),
            (3, &[(1, 2)], 5),
            (3, &[(0, 1), (0, 2)], 5),
            (3, &[(0, 2), (1, 2)], 5),
        ];
        for (e, less, g) in cases {
            let p = class_of(e, less);
            let t = DownsetLattice::for_class(&p).unwrap();
            let info = compute_g(&p, &t);
            assert_eq!(info.g, g, "e={e} less={less:?}");
            assert_eq!(info.decomposition().0 + info.decomposition().1, g);
            assert!(!info.flagged);
        }
    }

    #[test]
    fn reference_table_flags_three_chain() {
        let table = g_reference_table();
        assert_eq!(table.len(), 9);
        let flagged: Vec<&str> = table.iter().filter(|r| r.flagged).map(|r| r.label).collect();
        assert_eq!(flagged, ["chain-3"]);
        assert_eq!(table[1].g, 2);
        assert_eq!(table[2].g, 4);
        assert_eq!(table[8].g, 6);
        assert_eq!(table[8].lattice_size, 4);
    }

    struct Nothing;
    impl FixedPointRule for Nothing {
        fn is_fixed(&self, _: &DownsetLattice, _: usize) -> bool {
            false
        }
    }

    #[test]
    fn rule_seam_is_swappable() {
        let p = class_of(2, &[]);
        let t = DownsetLattice::for_class(&p).unwrap();
        assert_eq!(compute_g_with(&p, &t, &Nothing).g, 2);
    }
}
