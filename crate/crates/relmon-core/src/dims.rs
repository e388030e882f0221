//! Dimension formulas for the simple modules of the relation algebra `R_X`
//! and for its Jacobson radical, in exact arithmetic.
//!
//! Standing assumption: the field has characteristic zero and is large
//! enough for the automorphism groups to split. Then a group algebra `kG`
//! has as many simple modules as `G` has conjugacy classes, and the squares
//! of their dimensions add up to `|G|`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{compute_g, g_reference_table, DownsetLattice, GInfo, SMALL_POSETS};
use crate::poset::{conjugacy_class_count, enumerate_all, PosetClass, MAX_POSET};

pub type BigCount = BigUint;

/// Row `e` of Pascal's triangle.
pub fn binomial_row(e: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for _ in 0..e {
        let mut next = vec![BigUint::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row
}

/// `|B_{E,R,X}| = Σ_{i=0}^{e} (-1)^i C(e,i) (g-i)^{nX}`: the number of maps
/// from an `nX`-set into a `g`-set whose image contains a fixed `e`-subset.
pub fn b_count(e: usize, g: usize, nx: usize) -> Result<BigCount> {
    if g < e {
        return Err(Error::InvalidArgument("b_count needs e <= g"));
    }
    let binom = binomial_row(e);
    let mut acc = BigInt::zero();
    for (i, c) in binom.into_iter().enumerate() {
        let term = BigInt::from_biguint(Sign::Plus, c * BigUint::from(g - i).pow(nx as u32));
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.to_biguint().ok_or(Error::Inconsistent("negative inclusion-exclusion sum"))
}

/// A simple module `S_{E,R,V}(X)`, described by the sizes involved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimpleParam {
    pub e: usize,
    pub class_id: usize,
    /// Dimension of the simple `k Aut(E,R)`-module `V`; supplied by the
    /// caller.
    pub dim_v: u64,
    pub nx: usize,
}

/// `dim S_{E,R,V}(X) = dim V · |B_{E,R,X}| / |Aut(E,R)|`, zero when
/// `|X| < |E|`.
pub fn dim_simple(p: &SimpleParam, g: usize, aut_order: usize) -> Result<BigCount> {
    if p.dim_v == 0 || aut_order == 0 {
        return Err(Error::InvalidArgument("dim V and |Aut| must be positive"));
    }
    if p.nx < p.e {
        return Ok(BigUint::zero());
    }
    let num = b_count(p.e, g, p.nx)? * p.dim_v;
    let (q, r) = num.div_rem(&BigUint::from(aut_order));
    if !r.is_zero() {
        return Err(Error::InexactDivision { what: "dim_simple", divisor: aut_order as u64 });
    }
    Ok(q)
}

/// A poset class together with its lattice invariant and the number of
/// simple modules of its automorphism group.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub class: PosetClass,
    pub g: GInfo,
    pub conjugacy_classes: usize,
}

impl ClassData {
    pub fn build(class: PosetClass) -> Result<Self> {
        let lattice = DownsetLattice::for_class(&class)?;
        let g = compute_g(&class, &lattice);
        let conjugacy_classes = conjugacy_class_count(&class.aut)?;
        Ok(ClassData { class, g, conjugacy_classes })
    }
}

/// One summand of the semisimple dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTerm {
    pub e: usize,
    pub class_id: usize,
    pub g: usize,
    pub aut_order: usize,
    /// `|B_{E,R,X}|`.
    pub sum: BigCount,
    /// `sum² / aut_order`, rounded down when not exact.
    pub term: BigCount,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimsReport {
    pub n: usize,
    pub dim_algebra: BigCount,
    pub semisimple_dim: BigCount,
    pub radical_dim: BigCount,
    pub per_class: Vec<ClassTerm>,
}

impl DimsReport {
    /// Terms whose division by `|Aut|` was not exact.
    pub fn inexact_terms(&self) -> impl Iterator<Item = &ClassTerm> {
        self.per_class.iter().filter(|t| !t.exact)
    }
}

/// Every poset class up to a given size, with the data the dimension
/// formulas need.
#[derive(Clone, Debug)]
pub struct Catalog {
    levels: Vec<Vec<ClassData>>,
}

impl Catalog {
    pub fn build(max_e: usize) -> Result<Self> {
        let levels = enumerate_all(max_e)?
            .into_iter()
            .map(|level| level.into_iter().map(ClassData::build).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalog { levels })
    }

    /// Wraps levels built elsewhere (for example in parallel); level `e`
    /// must hold the classes of size `e`.
    pub fn from_levels(levels: Vec<Vec<ClassData>>) -> Result<Self> {
        if levels.is_empty() || levels.len() > MAX_POSET + 1 {
            return Err(Error::InvalidArgument("catalog needs between 1 and 9 levels"));
        }
        for (e, level) in levels.iter().enumerate() {
            if level.iter().any(|c| c.class.e != e) {
                return Err(Error::InvalidArgument("class stored at the wrong level"));
            }
        }
        Ok(Catalog { levels })
    }

    pub fn max_size(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, e: usize) -> &[ClassData] {
        &self.levels[e]
    }

    pub fn levels(&self) -> &[Vec<ClassData>] {
        &self.levels
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_size() {
            return Err(Error::TooLarge { op: "catalog", size: n, limit: self.max_size() });
        }
        Ok(())
    }

    /// Number of simple `R_X`-modules for `|X| = n`: triples `(E, R, V)`
    /// with `|E| <= n`.
    pub fn count_simples(&self, n: usize) -> Result<usize> {
        self.check(n)?;
        Ok(self.levels[..=n].iter().flatten().map(|c| c.conjugacy_classes).sum())
    }

    /// Number of simple modules of the essential algebra on an `e`-set:
    /// pairs `(R, V)` up to conjugacy.
    pub fn count_simples_essential(&self, e: usize) -> Result<usize> {
        self.check(e)?;
        Ok(self.levels[e].iter().map(|c| c.conjugacy_classes).sum())
    }

    pub fn dims_report(&self, n: usize) -> Result<DimsReport> {
        self.check(n)?;
        let mut per_class = Vec::new();
        let mut lcm = BigUint::one();
        for c in self.levels[..=n].iter().flatten() {
            let aut = BigUint::from(c.class.aut_order());
            let sum = b_count(c.class.e, c.g.g, n)?;
            let (term, rem) = (&sum * &sum).div_rem(&aut);
            lcm = lcm.lcm(&aut);
            per_class.push(ClassTerm {
                e: c.class.e,
                class_id: c.class.class_id,
                g: c.g.g,
                aut_order: c.class.aut_order(),
                sum,
                term,
                exact: rem.is_zero(),
            });
        }
        // Accumulate over the common denominator so that non-integral
        // terms, should any occur, are still summed exactly.
        let numerator: BigUint = per_class
            .iter()
            .map(|t| &t.sum * &t.sum * (&lcm / BigUint::from(t.aut_order)))
            .sum();
        let (semisimple_dim, rem) = numerator.div_rem(&lcm);
        if !rem.is_zero() {
            return Err(Error::Inconsistent("semisimple dimension is not an integer"));
        }
        let dim_algebra = BigUint::one() << (n * n);
        if semisimple_dim > dim_algebra {
            return Err(Error::Inconsistent("semisimple quotient larger than the algebra"));
        }
        let radical_dim = &dim_algebra - &semisimple_dim;
        Ok(DimsReport { n, dim_algebra, semisimple_dim, radical_dim, per_class })
    }

    /// `Σ_{e<=n} Σ_R |B_{E,R,X}|² / |Aut(E,R)|`.
    pub fn semisimple_dim(&self, n: usize) -> Result<BigCount> {
        let report = self.dims_report(n)?;
        if report.inexact_terms().next().is_some() {
            return Err(Error::InexactDivision { what: "semisimple term", divisor: 0 });
        }
        Ok(report.semisimple_dim)
    }

    /// `2^{n²}` minus the semisimple dimension.
    pub fn radical_dim(&self, n: usize) -> Result<BigCount> {
        let report = self.dims_report(n)?;
        if report.inexact_terms().next().is_some() {
            return Err(Error::InexactDivision { what: "semisimple term", divisor: 0 });
        }
        Ok(report.radical_dim)
    }
}

pub fn count_simples(n: usize) -> Result<usize> {
    Catalog::build(n)?.count_simples(n)
}

pub fn count_simples_essential(e: usize) -> Result<usize> {
    Catalog::build(e)?.count_simples_essential(e)
}

pub fn semisimple_dim(n: usize) -> Result<BigCount> {
    Catalog::build(n)?.semisimple_dim(n)
}

pub fn radical_dim(n: usize) -> Result<BigCount> {
    Catalog::build(n)?.radical_dim(n)
}

/// One row of the `n = 3` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table3Row {
    pub e: usize,
    pub class_id: usize,
    pub label: &'static str,
    pub aut_order: usize,
    /// Computed `g`.
    pub g: usize,
    /// Tabulated `g`.
    pub g_reference: usize,
    /// The tabulated `g` exceeds the lattice size.
    pub g_flagged: bool,
    pub sum: BigCount,
    pub total: BigCount,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table3 {
    pub rows: Vec<Table3Row>,
    pub dim_algebra: BigCount,
    pub semisimple_dim: BigCount,
    pub radical_dim: BigCount,
}

impl Table3 {
    /// Rows whose computed `g` differs from the tabulated one.
    pub fn g_mismatches(&self) -> impl Iterator<Item = &Table3Row> {
        self.rows.iter().filter(|r| r.g != r.g_reference)
    }
}

/// The classes of size at most 3 evaluated at `|X| = 3`, in the row order of
/// the published table.
pub fn table3() -> Result<Table3> {
    let catalog = Catalog::build(3)?;
    table3_with(&catalog, &g_reference_table())
}

pub fn table3_with(catalog: &Catalog, reference: &[crate::lattice::GReference]) -> Result<Table3> {
    const N: usize = 3;
    let report = catalog.dims_report(N)?;
    let mut rows = Vec::with_capacity(SMALL_POSETS.len());
    for r in reference {
        let data = &catalog.level(r.e)[r.class_id];
        let term = report
            .per_class
            .iter()
            .find(|t| t.e == r.e && t.class_id == r.class_id)
            .ok_or(Error::Inconsistent("class missing from report"))?;
        rows.push(Table3Row {
            e: r.e,
            class_id: r.class_id,
            label: r.label,
            aut_order: data.class.aut_order(),
            g: data.g.g,
            g_reference: r.g,
            g_flagged: r.flagged,
            sum: term.sum.clone(),
            total: term.term.clone(),
        });
    }
    Ok(Table3 {
        rows,
        dim_algebra: report.dim_algebra,
        semisimple_dim: report.semisimple_dim,
        radical_dim: report.radical_dim,
    })
}
