//! Partial orders up to isomorphism.
//!
//! Canonical forms are the least conjugate under the row-major `0`/`1`
//! ordering of [`Relation`]. For a partial order that least conjugate is
//! always lower-triangular (a natural labeling): placing an element above an
//! unplaced one can only make its row larger. The search therefore assigns
//! positions `0, 1, ..` to elements whose strict downset is already placed,
//! keeps only candidates producing the least row, and explores one element
//! per class of twins (elements with equal strict downsets and upsets, which
//! a transposition exchanges as an automorphism).
//!
//! Generation extends every class of size `e - 1` by one new maximal element
//! sitting above an order ideal, keeps one ideal per orbit of the parent's
//! automorphism group, and accepts the child only when the new element lies in
//! the orbit of the canonical last element (canonical augmentation).

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::relation::{Relation, MAX_N};

/// Largest poset size handled by canonical forms and generation.
pub const MAX_POSET: usize = 8;

/// One isomorphism class of partial orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetClass {
    pub e: usize,
    /// Canonical representative; `(z, x)` is stored when `x <= z`.
    pub canon: Relation,
    /// The full automorphism group, sorted by image arrays.
    pub aut: Vec<Permutation>,
    /// Position of this class among the classes of size `e`.
    pub class_id: usize,
}

impl PosetClass {
    pub fn aut_order(&self) -> usize {
        self.aut.len()
    }

    /// Number of labeled orders isomorphic to this one, `e! / |Aut|`.
    pub fn labeled_count(&self) -> u64 {
        factorial(self.e) / self.aut.len() as u64
    }
}

pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn check_order(r: &Relation) -> Result<()> {
    if r.len() > MAX_POSET {
        return Err(Error::TooLarge { op: "poset", size: r.len(), limit: MAX_POSET });
    }
    if !r.is_order() {
        return Err(Error::NotAnOrder);
    }
    Ok(())
}

struct CanonSearch<'a> {
    order: &'a Relation,
    n: usize,
    strict_down: [u16; MAX_N],
    twin_rep: [u8; MAX_N],
    placed: [u8; MAX_N],
    keys: [u16; MAX_N],
    best: Option<([u16; MAX_N], [u8; MAX_N])>,
    last: u16,
}

impl<'a> CanonSearch<'a> {
    fn new(order: &'a Relation) -> Self {
        let n = order.len();
        let mut strict_down = [0u16; MAX_N];
        let mut strict_up = [0u16; MAX_N];
        for v in 0..n {
            strict_down[v] = order.row(v) & !(1 << v);
            strict_up[v] = order.column(v) & !(1 << v);
        }
        let mut twin_rep = [0u8; MAX_N];
        for v in 0..n {
            let rep = (0..=v)
                .find(|&u| strict_down[u] == strict_down[v] && strict_up[u] == strict_up[v])
                .unwrap();
            twin_rep[v] = rep as u8;
        }
        CanonSearch {
            order,
            n,
            strict_down,
            twin_rep,
            placed: [0; MAX_N],
            keys: [0; MAX_N],
            best: None,
            last: 0,
        }
    }

    fn run(&mut self) {
        self.descend(0, 0);
        // Twins of an element that can be placed last can be placed last too.
        let mut closed = self.last;
        for v in 0..self.n {
            if self.last >> v & 1 == 1 {
                for u in 0..self.n {
                    if self.twin_rep[u] == self.twin_rep[v] {
                        closed |= 1 << u;
                    }
                }
            }
        }
        self.last = closed;
    }

    fn descend(&mut self, depth: usize, placed_mask: u16) {
        let n = self.n;
        if depth == n {
            let last = if n > 0 { 1u16 << self.placed[n - 1] } else { 0 };
            match &self.best {
                Some((keys, _)) if keys[..n] < self.keys[..n] => {}
                Some((keys, _)) if keys[..n] == self.keys[..n] => self.last |= last,
                _ => {
                    self.best = Some((self.keys, self.placed));
                    self.last = last;
                }
            }
            return;
        }
        let mut min_key = u16::MAX;
        let mut cands = 0u16;
        for v in 0..n {
            if placed_mask >> v & 1 == 1 || self.strict_down[v] & !placed_mask != 0 {
                continue;
            }
            let key = self.row_key(depth, v);
            if key < min_key {
                min_key = key;
                cands = 0;
            }
            if key == min_key {
                cands |= 1 << v;
            }
        }
        if let Some((best, _)) = &self.best {
            match self.keys[..depth].cmp(&best[..depth]) {
                core::cmp::Ordering::Greater => return,
                core::cmp::Ordering::Equal if min_key > best[depth] => return,
                _ => {}
            }
        }
        self.keys[depth] = min_key;
        let mut tried = 0u16;
        for v in 0..n {
            if cands >> v & 1 == 0 {
                continue;
            }
            let rep = self.twin_rep[v];
            if tried >> rep & 1 == 1 {
                continue;
            }
            tried |= 1 << rep;
            self.placed[depth] = v as u8;
            self.descend(depth + 1, placed_mask | 1 << v);
        }
    }

    /// Row of `v` at position `depth`, restricted to earlier positions, with
    /// position 0 as the most significant bit.
    fn row_key(&self, depth: usize, v: usize) -> u16 {
        let row = self.order.row(v);
        (0..depth).fold(0u16, |k, q| if row >> self.placed[q] & 1 == 1 { k | 1 << (depth - 1 - q) } else { k })
    }
}

/// Canonical labeling of an order: returns the canonical form, the
/// permutation `element -> position` realizing it, and the set of elements
/// that some canonical labeling puts in the last position.
pub fn canonical_labeling(r: &Relation) -> Result<(Relation, Permutation, u16)> {
    check_order(r)?;
    Ok(canonical_labeling_unchecked(r))
}

fn canonical_labeling_unchecked(r: &Relation) -> (Relation, Permutation, u16) {
    let n = r.len();
    let mut search = CanonSearch::new(r);
    search.run();
    let (_, placed) = search.best.expect("a natural labeling always exists");
    let mut images = [0usize; MAX_N];
    for (pos, &v) in placed.iter().enumerate().take(n) {
        images[v as usize] = pos;
    }
    let sigma = Permutation::from_images(&images[..n]).expect("labeling is a bijection");
    let canon = r.conjugate(&sigma).expect("sizes match");
    (canon, sigma, search.last)
}

/// The least conjugate of an order.
pub fn canonical_form(r: &Relation) -> Result<Relation> {
    canonical_labeling(r).map(|(c, _, _)| c)
}

/// `|Aut(E, R)|` and its elements, by backtracking over order-preserving
/// bijections.
pub fn aut_group(r: &Relation) -> Result<(usize, Vec<Permutation>)> {
    check_order(r)?;
    let auts = automorphisms(r);
    Ok((auts.len(), auts))
}

fn automorphisms(r: &Relation) -> Vec<Permutation> {
    let n = r.len();
    let sig: Vec<(u32, u32)> = (0..n).map(|v| (r.row(v).count_ones(), r.column(v).count_ones())).collect();
    let mut out = Vec::new();
    let mut image = [0usize; MAX_N];
    aut_descend(r, &sig, 0, 0, &mut image, &mut out);
    out
}

fn aut_descend(
    r: &Relation,
    sig: &[(u32, u32)],
    x: usize,
    used: u16,
    image: &mut [usize; MAX_N],
    out: &mut Vec<Permutation>,
) {
    let n = r.len();
    if x == n {
        out.push(Permutation::from_images(&image[..n]).expect("bijection"));
        return;
    }
    'cand: for y in 0..n {
        if used >> y & 1 == 1 || sig[y] != sig[x] {
            continue;
        }
        for w in 0..x {
            let iw = image[w];
            if r.contains(x, w) != r.contains(y, iw) || r.contains(w, x) != r.contains(iw, y) {
                continue 'cand;
            }
        }
        image[x] = y;
        aut_descend(r, sig, x + 1, used | 1 << y, image, out);
    }
}

/// Number of conjugacy classes of a finite permutation group given by its
/// full list of elements.
pub fn conjugacy_class_count(group: &[Permutation]) -> Result<usize> {
    let Some(first) = group.first() else {
        return Err(Error::NotAGroup);
    };
    let n = first.len();
    if group.iter().any(|g| g.len() != n) {
        return Err(Error::NotAGroup);
    }
    let mut elems = group.to_vec();
    elems.sort();
    elems.dedup();
    if elems.len() != group.len() {
        return Err(Error::NotAGroup);
    }
    let index = |p: &Permutation| elems.binary_search(p).ok();

    // Pick generators greedily until their closure is the whole list.
    let mut gens: Vec<Permutation> = Vec::new();
    let mut closure: BTreeSet<Permutation> = BTreeSet::new();
    closure.insert(Permutation::identity(n));
    for g in &elems {
        if closure.contains(g) {
            continue;
        }
        gens.push(*g);
        let mut queue: VecDeque<Permutation> = closure.iter().copied().collect();
        while let Some(h) = queue.pop_front() {
            for s in &gens {
                let p = h.compose(s);
                if index(&p).is_none() {
                    return Err(Error::NotAGroup);
                }
                if closure.insert(p) {
                    queue.push_back(p);
                }
            }
        }
    }
    if closure.len() != elems.len() {
        // identity missing from the list
        return Err(Error::NotAGroup);
    }

    let inverses: Vec<Permutation> = gens.iter().map(Permutation::inverse).collect();
    let mut seen = vec![false; elems.len()];
    let mut classes = 0;
    for start in 0..elems.len() {
        if seen[start] {
            continue;
        }
        classes += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for (s, s_inv) in gens.iter().zip(&inverses) {
                let c = s.compose(&elems[i]).compose(s_inv);
                let j = index(&c).expect("closed under conjugation");
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    Ok(classes)
}

/// Down-closed subsets of an order (row `z` is the downset of `z`), in
/// increasing bitmask order.
pub fn order_ideals(order: &Relation) -> Vec<u16> {
    let n = order.len();
    (0u16..1 << n)
        .filter(|&s| (0..n).all(|z| s >> z & 1 == 0 || order.row(z) & !s == 0))
        .collect()
}

/// Up-closed subsets of an order, in increasing bitmask order.
pub fn order_filters(order: &Relation) -> Vec<u16> {
    order_ideals(&order.opposite())
}

fn extend_with_maximal(parent: &Relation, below: u16) -> Relation {
    let m = parent.len();
    let mut rows: Vec<u16> = parent.rows().to_vec();
    rows.push(below | 1 << m);
    Relation::from_rows(&rows).expect("fits")
}

fn extend_with_minimal(parent: &Relation, above: u16) -> Relation {
    let m = parent.len();
    let mut rows: Vec<u16> = parent.rows().to_vec();
    for (z, row) in rows.iter_mut().enumerate() {
        if above >> z & 1 == 1 {
            *row |= 1 << m;
        }
    }
    rows.push(1 << m);
    Relation::from_rows(&rows).expect("fits")
}

/// Canonical forms of the children of `parent` accepted by canonical
/// augmentation. Children of distinct classes, and distinct accepted
/// children of one class, are pairwise non-isomorphic.
pub fn canonical_children(parent: &PosetClass) -> Vec<Relation> {
    let m = parent.e;
    let mut out = Vec::new();
    for ideal in order_ideals(&parent.canon) {
        if parent.aut.iter().any(|s| s.apply_mask(ideal) < ideal) {
            continue;
        }
        let child = extend_with_maximal(&parent.canon, ideal);
        let (canon, _, last) = canonical_labeling_unchecked(&child);
        if last >> m & 1 == 1 {
            out.push(canon);
        }
    }
    out
}

/// Builds sorted, numbered classes from canonical forms of one size.
pub fn classes_from_forms(e: usize, mut forms: Vec<Relation>) -> Vec<PosetClass> {
    forms.sort();
    forms
        .into_iter()
        .enumerate()
        .map(|(class_id, canon)| {
            debug_assert_eq!(canon.len(), e);
            PosetClass { e, aut: automorphisms(&canon), canon, class_id }
        })
        .collect()
}

fn check_size(e: usize) -> Result<()> {
    if e > MAX_POSET {
        return Err(Error::TooLarge { op: "enumerate_posets", size: e, limit: MAX_POSET });
    }
    Ok(())
}

/// The single class of size 0.
pub fn empty_class() -> PosetClass {
    PosetClass { e: 0, canon: Relation::empty(0), aut: vec![Permutation::identity(0)], class_id: 0 }
}

/// One representative per isomorphism class of orders on `e` elements,
/// sorted by canonical form.
pub fn enumerate_posets(e: usize) -> Result<Vec<PosetClass>> {
    Ok(enumerate_all(e)?.pop().expect("level e present"))
}

/// Classes of every size `0..=max_e`, indexed by size.
pub fn enumerate_all(max_e: usize) -> Result<Vec<Vec<PosetClass>>> {
    check_size(max_e)?;
    let mut levels = vec![vec![empty_class()]];
    for e in 1..=max_e {
        let forms: Vec<Relation> = levels[e - 1].iter().flat_map(canonical_children).collect();
        levels.push(classes_from_forms(e, forms));
    }
    Ok(levels)
}

/// Canonical forms of size `e`, generated independently of
/// [`enumerate_posets`]: every form of size `e - 1` gets a new minimal
/// element below each up-closed subset, and duplicates are removed by
/// canonical form.
pub fn enumerate_by_minimal_extension(e: usize) -> Result<Vec<Relation>> {
    check_size(e)?;
    let mut level: BTreeSet<Relation> = BTreeSet::new();
    level.insert(Relation::empty(0));
    for _ in 1..=e {
        level = level.iter().flat_map(minimal_extensions).collect();
    }
    Ok(level.into_iter().collect())
}

/// Canonical forms of `parent` extended by one new minimal element, one per
/// up-closed subset (not deduplicated).
pub fn minimal_extensions(parent: &Relation) -> impl Iterator<Item = Relation> + '_ {
    order_filters(parent)
        .into_iter()
        .map(move |filter| canonical_labeling_unchecked(&extend_with_minimal(parent, filter)).0)
}

/// Labeled partial orders on `e` elements, by filtering every reflexive
/// relation. Limited to `e <= 5`.
pub fn labeled_order_count(e: usize) -> Result<u64> {
    const LIMIT: usize = 5;
    if e > LIMIT {
        return Err(Error::TooLarge { op: "labeled_order_count", size: e, limit: LIMIT });
    }
    let off: Vec<(usize, usize)> = (0..e).flat_map(|z| (0..e).filter(move |&x| x != z).map(move |x| (z, x))).collect();
    let mut count = 0;
    for mask in 0u32..1 << off.len() {
        let mut r = Relation::identity(e);
        for (k, &(z, x)) in off.iter().enumerate() {
            if mask >> k & 1 == 1 {
                r.insert(z, x);
            }
        }
        if r.is_antisymmetric() && r.is_transitive() {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Relation {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|z| (0..=z).map(move |x| (z, x))).collect();
        Relation::from_pairs(n, &pairs).unwrap()
    }

    fn order(n: usize, less: &[(usize, usize)]) -> Relation {
        let mut r = Relation::identity(n);
        for &(a, b) in less {
            r.insert(b, a);
        }
        r
    }

    #[test]
    fn antichain_is_canonical() {
        for n in 0..=8 {
            assert_eq!(canonical_form(&Relation::identity(n)).unwrap(), Relation::identity(n));
        }
    }

    #[test]
    fn canonical_form_rejects_non_orders() {
        assert_eq!(canonical_form(&Relation::full(2)), Err(Error::NotAnOrder));
        assert!(matches!(canonical_form(&Relation::identity(9)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn canonical_form_is_lower_triangular() {
        let v = order(3, &[(2, 0), (2, 1)]);
        let c = canonical_form(&v).unwrap();
        for z in 0..3 {
            assert_eq!(c.row(z) >> (z + 1), 0);
        }
    }

    #[test]
    fn aut_examples() {
        assert_eq!(aut_group(&Relation::identity(3)).unwrap().0, 6);
        assert_eq!(aut_group(&chain(2)).unwrap().0, 1);
        assert_eq!(aut_group(&order(3, &[(0, 1), (0, 2)])).unwrap().0, 2);
        assert_eq!(aut_group(&Relation::identity(0)).unwrap().0, 1);
    }

    #[test]
    fn conjugacy_examples() {
        assert_eq!(conjugacy_class_count(&[Permutation::identity(3)]), Ok(1));
        let c2 = [Permutation::identity(2), Permutation::transposition(2, 0, 1)];
        assert_eq!(conjugacy_class_count(&c2), Ok(2));
        assert_eq!(conjugacy_class_count(&Permutation::all(3)), Ok(3));
        assert_eq!(conjugacy_class_count(&Permutation::all(5)), Ok(7));
    }

    #[test]
    fn conjugacy_rejects_non_groups() {
        assert_eq!(conjugacy_class_count(&[]), Err(Error::NotAGroup));
        let no_identity = [Permutation::transposition(2, 0, 1)];
        assert_eq!(conjugacy_class_count(&no_identity), Err(Error::NotAGroup));
        let cycle = Permutation::from_images(&[1, 2, 0]).unwrap();
        assert_eq!(conjugacy_class_count(&[Permutation::identity(3), cycle]), Err(Error::NotAGroup));
    }

    #[test]
    fn small_class_counts() {
        let levels = enumerate_all(5).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, [1, 1, 2, 5, 16, 63]);
        assert!(enumerate_posets(9).is_err());
    }

    #[test]
    fn classes_are_sorted_and_numbered() {
        let classes = enumerate_posets(4).unwrap();
        for (i, c) in classes.iter().enumerate() {
            assert_eq!(c.class_id, i);
            assert!(c.canon.is_order());
            assert_eq!(canonical_form(&c.canon).unwrap(), c.canon);
        }
        assert!(classes.windows(2).all(|w| w[0].canon < w[1].canon));
    }

    #[test]
    fn labeled_counts() {
        let got: Vec<u64> = (0..=5).map(|e| labeled_order_count(e).unwrap()).collect();
        assert_eq!(got, [1, 1, 3, 19, 219, 4231]);
    }

    #[test]
    fn ideals_of_chain_are_prefixes() {
        assert_eq!(order_ideals(&chain(3)), [0b000, 0b001, 0b011, 0b111]);
    }
}
