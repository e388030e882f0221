//! Invariant suites and golden comparisons behind the `selftest` command.
//!
//! Every check is deterministic: details never contain timings or anything
//! that depends on the thread count.

use std::fmt::Write as _;

use serde::Serialize;

use relmon_core::dims::{b_count, dim_simple, table3_with, Catalog, SimpleParam};
use relmon_core::functor::{aut_act, b_enumerate, DEFAULT_BUDGET};
use relmon_core::lattice::{reference_table_from, DownsetLattice, PUBLISHED_G};
use relmon_core::oracle::{radical_dim_oracle, ORACLE_LIMIT};
use relmon_core::poset::{labeled_order_count, MAX_POSET};

use crate::report::Render;
use crate::{parallel, CLASS_COUNTS, LABELED_COUNTS, PUBLISHED_RADICAL};

/// Rows of the published `n = 3` table whose `g` is known to be
/// inconsistent with the lattice size.
pub const KNOWN_G_ANOMALIES: &[&str] = &["chain-3"];

const TABLE3_AUT: [usize; 9] = [1, 1, 2, 1, 6, 1, 2, 2, 1];
const TABLE3_SUM: [u64; 9] = [1, 7, 18, 12, 6, 6, 6, 6, 6];
const TABLE3_TOTAL: [u64; 9] = [1, 49, 162, 144, 6, 36, 18, 18, 36];

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    /// Tabulated `g` values compared against the computed ones, in the row
    /// order of the `n = 3` table. Replace to inject faults.
    pub reference_g: [usize; 9],
    /// Largest `n` for the trace-form oracle; `None` skips it.
    pub oracle_max: Option<usize>,
    pub budget: u64,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { reference_g: PUBLISHED_G, oracle_max: Some(ORACLE_LIMIT), budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

impl Render for SelftestReport {
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let rows = self
            .checks
            .iter()
            .map(|c| vec![c.name.to_string(), if c.passed { "pass" } else { "fail" }.to_string(), c.detail.clone()])
            .collect();
        (vec!["check", "status", "detail"], rows)
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            writeln!(s, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail).unwrap();
        }
        writeln!(s, "{} passed, {} failed", self.passed, self.failed).unwrap();
        s
    }
}

type Outcome = std::result::Result<String, String>;

fn check(name: &'static str, f: impl FnOnce() -> Outcome) -> Check {
    match f() {
        Ok(detail) => Check { name, passed: true, detail },
        Err(detail) => Check { name, passed: false, detail },
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    format!("error: {e}")
}

/// Runs every check on the current rayon pool.
pub fn run(opts: &SelftestOptions) -> SelftestReport {
    let mut checks = Vec::new();
    let catalog = match parallel::catalog(MAX_POSET) {
        Ok(c) => Some(c),
        Err(e) => {
            checks.push(Check { name: "catalog", passed: false, detail: err(e) });
            None
        }
    };
    if let Some(catalog) = &catalog {
        checks.push(check("class_counts", || class_counts(catalog)));
        checks.push(check("dual_strategy", || dual_strategy(catalog)));
        checks.push(check("labeled_counts", || labeled_counts(catalog)));
        checks.push(check("g_golden", || g_golden(catalog, opts)));
        checks.push(check("table3", || table3(catalog, opts)));
        checks.push(check("radical_dims", || radical_dims(catalog)));
        checks.push(check("simple_counts", || simple_counts(catalog)));
        checks.push(check("n2_simple_dims", || n2_simple_dims(catalog)));
        checks.push(check("b_enumeration", || b_enumeration(catalog, opts.budget)));
        checks.push(check("b_divisibility", || b_divisibility(catalog)));
        if let Some(max) = opts.oracle_max {
            checks.push(check("oracle", || oracle(catalog, max)));
        }
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    let failed = checks.len() - passed;
    SelftestReport { checks, passed, failed }
}

fn class_counts(catalog: &Catalog) -> Outcome {
    let got: Vec<usize> = catalog.levels().iter().map(Vec::len).collect();
    if got != CLASS_COUNTS {
        return Err(format!("counts {got:?}, expected {CLASS_COUNTS:?}"));
    }
    Ok(format!("{got:?}"))
}

fn dual_strategy(catalog: &Catalog) -> Outcome {
    for e in 0..=catalog.max_size() {
        let other = parallel::enumerate_by_minimal_extension(e).map_err(err)?;
        let forms: Vec<_> = catalog.level(e).iter().map(|c| c.class.canon).collect();
        if other != forms {
            return Err(format!("e={e}: {} forms by minimal extension, {} by augmentation", other.len(), forms.len()));
        }
    }
    Ok(format!("identical canonical forms for e=0..={}", catalog.max_size()))
}

fn labeled_counts(catalog: &Catalog) -> Outcome {
    for (e, &want) in LABELED_COUNTS.iter().enumerate() {
        let by_aut: u64 = catalog.level(e).iter().map(|c| c.class.labeled_count()).sum();
        let direct = labeled_order_count(e).map_err(err)?;
        if by_aut != want || direct != want {
            return Err(format!("e={e}: sum e!/|Aut| = {by_aut}, direct = {direct}, expected {want}"));
        }
    }
    Ok(format!("{LABELED_COUNTS:?}"))
}

fn g_golden(catalog: &Catalog, opts: &SelftestOptions) -> Outcome {
    let mut notes = Vec::new();
    for r in reference_table_from(&opts.reference_g) {
        let computed = catalog.level(r.e)[r.class_id].g.g;
        if computed == r.g {
            continue;
        }
        if r.flagged && KNOWN_G_ANOMALIES.contains(&r.label) {
            notes.push(format!("{} tabulated {} flagged (|T|={}), computed {}", r.label, r.g, r.lattice_size, computed));
        } else {
            return Err(format!("{}: computed g={computed}, tabulated g={}", r.label, r.g));
        }
    }
    if notes.is_empty() {
        Ok("all rows match".into())
    } else {
        Ok(notes.join("; "))
    }
}

fn table3(catalog: &Catalog, opts: &SelftestOptions) -> Outcome {
    let t = table3_with(catalog, &reference_table_from(&opts.reference_g)).map_err(err)?;
    if t.rows.len() != 9 {
        return Err(format!("{} rows", t.rows.len()));
    }
    for (i, r) in t.rows.iter().enumerate() {
        if r.aut_order != TABLE3_AUT[i] || r.sum != TABLE3_SUM[i].into() || r.total != TABLE3_TOTAL[i].into() {
            return Err(format!(
                "{}: aut={} sum={} total={}, expected {} {} {}",
                r.label, r.aut_order, r.sum, r.total, TABLE3_AUT[i], TABLE3_SUM[i], TABLE3_TOTAL[i]
            ));
        }
    }
    for r in t.g_mismatches() {
        if !(r.g_flagged && KNOWN_G_ANOMALIES.contains(&r.label)) {
            return Err(format!("g mismatch in row {}: computed {}, tabulated {}", r.label, r.g, r.g_reference));
        }
    }
    let want = (512u32, 470u32, 42u32);
    if (t.dim_algebra.clone(), t.semisimple_dim.clone(), t.radical_dim.clone())
        != (want.0.into(), want.1.into(), want.2.into())
    {
        return Err(format!("totals {} {} {}", t.dim_algebra, t.semisimple_dim, t.radical_dim));
    }
    Ok(format!("9 rows, semisimple {} radical {}", t.semisimple_dim, t.radical_dim))
}

fn radical_dims(catalog: &Catalog) -> Outcome {
    for (n, want) in PUBLISHED_RADICAL.iter().enumerate() {
        let got = catalog.radical_dim(n).map_err(err)?.to_string();
        if got != *want {
            return Err(format!("n={n}: {got}, expected {want}"));
        }
    }
    Ok(format!("n=0..=8 match, n=8 -> {}", PUBLISHED_RADICAL[8]))
}

fn simple_counts(catalog: &Catalog) -> Outcome {
    let got: Vec<usize> = (0..=2).map(|n| catalog.count_simples(n)).collect::<Result<_, _>>().map_err(err)?;
    if got != [1, 2, 5] {
        return Err(format!("{got:?}, expected [1, 2, 5]"));
    }
    Ok(format!("{got:?}"))
}

/// At `n = 2` every automorphism group is abelian, so each class contributes
/// one simple module of `dim V = 1` per conjugacy class.
fn n2_simple_dims(catalog: &Catalog) -> Outcome {
    const N: usize = 2;
    let mut dims = Vec::new();
    for c in catalog.levels()[..=N].iter().flatten() {
        if c.conjugacy_classes != c.class.aut_order() {
            return Err(format!("class {}:{} has a non-abelian group", c.class.e, c.class.class_id));
        }
        let p = SimpleParam { e: c.class.e, class_id: c.class.class_id, dim_v: 1, nx: N };
        let d = dim_simple(&p, c.g.g, c.class.aut_order()).map_err(err)?;
        for _ in 0..c.conjugacy_classes {
            dims.push(d.clone());
        }
    }
    let small: Vec<u64> = dims.iter().map(|d| u64::try_from(d).unwrap_or(u64::MAX)).collect();
    let squares: u64 = small.iter().map(|d| d * d).sum();
    let mut sorted = small.clone();
    sorted.sort_unstable();
    if sorted != [1, 1, 1, 2, 3] || squares != 16 {
        return Err(format!("dims {small:?}, sum of squares {squares}"));
    }
    Ok(format!("dims {small:?}, sum of squares {squares}"))
}

fn b_enumeration(catalog: &Catalog, budget: u64) -> Outcome {
    let mut cases = 0;
    for c in catalog.levels()[..=3].iter().flatten() {
        let t = DownsetLattice::for_class(&c.class).map_err(err)?;
        for nx in 0..=4 {
            let maps = b_enumerate(&t, &c.g, nx, budget).map_err(err)?;
            let want = b_count(c.class.e, c.g.g, nx).map_err(err)?;
            if want != maps.len().into() {
                return Err(format!("class {}:{} nx={nx}: {} maps, b_count {want}", c.class.e, c.class.class_id, maps.len()));
            }
            for phi in &maps {
                for sigma in &c.class.aut {
                    let img = aut_act(phi, sigma, &t).map_err(err)?;
                    if maps.binary_search(&img).is_err() {
                        return Err(format!("class {}:{} nx={nx}: B not closed under Aut", c.class.e, c.class.class_id));
                    }
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (class, nx) cases, e <= 3, nx <= 4"))
}

fn b_divisibility(catalog: &Catalog) -> Outcome {
    let mut cases = 0;
    for c in catalog.levels()[..=6].iter().flatten() {
        for nx in 0..=8 {
            let b = b_count(c.class.e, c.g.g, nx).map_err(err)?;
            let ok = if nx < c.class.e {
                b == 0u32.into()
            } else {
                b > 0u32.into() && (&b % c.class.aut_order()) == 0u32.into()
            };
            if !ok {
                return Err(format!("class {}:{} nx={nx}: b_count {b}, |Aut| {}", c.class.e, c.class.class_id, c.class.aut_order()));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (class, nx) cases, e <= 6, nx <= 8"))
}

fn oracle(catalog: &Catalog, max: usize) -> Outcome {
    let mut pairs = Vec::new();
    for n in 0..=max {
        let by_form = radical_dim_oracle(n).map_err(err)?;
        let by_formula = catalog.radical_dim(n).map_err(err)?;
        if by_formula != by_form.into() {
            return Err(format!("n={n}: trace form {by_form}, formula {by_formula}"));
        }
        pairs.push(format!("n={n}: {by_form}"));
    }
    Ok(pairs.join(", "))
}
