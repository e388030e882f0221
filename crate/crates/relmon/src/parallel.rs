//! Rayon drivers. Work is split per parent class (generation) or per class
//! (invariants); results are collected in input order and sorted, so the
//! output does not depend on the number of threads.

use rayon::prelude::*;
use relmon_core::dims::{Catalog, ClassData};
use relmon_core::poset::{canonical_children, empty_class, minimal_extensions, PosetClass, MAX_POSET};
use relmon_core::relation::Relation;
use relmon_core::{Error, Result};

/// Runs `f` on a pool with `threads` workers (`0` picks rayon's default).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
    pool.install(f)
}

/// Same result as [`relmon_core::poset::enumerate_all`], generated in
/// parallel on the current pool.
pub fn enumerate_all(max_e: usize) -> Result<Vec<Vec<PosetClass>>> {
    if max_e > MAX_POSET {
        return Err(Error::TooLarge { op: "enumerate_posets", size: max_e, limit: MAX_POSET });
    }
    let mut levels = vec![vec![empty_class()]];
    for e in 1..=max_e {
        let mut forms: Vec<Relation> = levels[e - 1].par_iter().flat_map_iter(canonical_children).collect();
        forms.par_sort();
        levels.push(classes_par(e, forms));
    }
    Ok(levels)
}

fn classes_par(e: usize, sorted: Vec<Relation>) -> Vec<PosetClass> {
    sorted
        .into_par_iter()
        .enumerate()
        .map(|(class_id, canon)| {
            let (_, aut) = relmon_core::poset::aut_group(&canon).expect("canonical forms are orders");
            PosetClass { e, canon, aut, class_id }
        })
        .collect()
}

/// Parallel form of [`relmon_core::poset::enumerate_by_minimal_extension`].
pub fn enumerate_by_minimal_extension(e: usize) -> Result<Vec<Relation>> {
    if e > MAX_POSET {
        return Err(Error::TooLarge { op: "enumerate_posets", size: e, limit: MAX_POSET });
    }
    let mut level = vec![Relation::empty(0)];
    for _ in 1..=e {
        let mut next: Vec<Relation> = level.par_iter().flat_map_iter(minimal_extensions).collect();
        next.par_sort();
        next.dedup();
        level = next;
    }
    Ok(level)
}

pub fn catalog(max_e: usize) -> Result<Catalog> {
    let levels = enumerate_all(max_e)?
        .into_iter()
        .map(|level| level.into_par_iter().map(ClassData::build).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Catalog::from_levels(levels)
}
