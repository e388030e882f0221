//! Serializable reports and their JSON, CSV and text renderings.
//!
//! Integers that can exceed 2^53 are written as decimal strings. Text output
//! is produced from the same records as JSON, so every number agrees.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use relmon_core::dims::{Catalog, ClassData, DimsReport, Table3};
use relmon_core::functor::LatticeMap;
use relmon_core::lattice::DownsetLattice;
use relmon_core::poset::PosetClass;
use relmon_core::Result;

use crate::text::row_strings;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub trait Render: Serialize {
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>);
    fn text(&self) -> String;

    fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    fn csv(&self) -> String {
        let (header, rows) = self.csv_rows();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).expect("in-memory write");
        for row in rows {
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }
}

/// Anomaly notice attached to reports: a tabulated `g` above `|T|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub kind: &'static str,
    pub class: String,
    pub e: usize,
    pub class_id: usize,
    pub value: usize,
    pub lattice_size: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetRecord {
    pub class_id: usize,
    pub e: usize,
    pub matrix: Vec<String>,
    pub aut_order: usize,
    pub labeled_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PosetList(pub Vec<PosetRecord>);

impl PosetList {
    pub fn new(classes: &[PosetClass]) -> Self {
        PosetList(
            classes
                .iter()
                .map(|c| PosetRecord {
                    class_id: c.class_id,
                    e: c.e,
                    matrix: row_strings(&c.canon),
                    aut_order: c.aut_order(),
                    labeled_count: c.labeled_count(),
                })
                .collect(),
        )
    }
}

impl Render for PosetList {
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let rows = self
            .0
            .iter()
            .map(|r| {
                vec![
                    r.class_id.to_string(),
                    r.e.to_string(),
                    r.matrix.join("/"),
                    r.aut_order.to_string(),
                    r.labeled_count.to_string(),
                ]
            })
            .collect();
        (vec!["class_id", "e", "matrix", "aut_order", "labeled_count"], rows)
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.0 {
            writeln!(s, "# class {} e={} aut_order={} labeled_count={}", r.class_id, r.e, r.aut_order, r.labeled_count)
                .unwrap();
            writeln!(s, "{}", r.e).unwrap();
            for row in &r.matrix {
                writeln!(s, "{row}").unwrap();
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GRecord {
    pub class_id: usize,
    pub e: usize,
    pub lattice_size: usize,
    pub irreducibles: Vec<usize>,
    pub g: usize,
    pub fixed_count: usize,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GTable(pub Vec<GRecord>);

impl GTable {
    pub fn new(catalog: &Catalog, max_e: usize) -> Result<Self> {
        let mut out = Vec::new();
        for level in &catalog.levels()[..=max_e] {
            for c in level {
                let t = DownsetLattice::for_class(&c.class)?;
                out.push(GRecord {
                    class_id: c.class.class_id,
                    e: c.class.e,
                    lattice_size: t.len(),
                    irreducibles: t.irreducibles().to_vec(),
                    g: c.g.g,
                    fixed_count: c.g.fixed.len(),
                    flagged: c.g.flagged,
                });
            }
        }
        Ok(GTable(out))
    }
}

fn join_usize(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

impl Render for GTable {
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let rows = self
            .0
            .iter()
            .map(|r| {
                vec![
                    r.class_id.to_string(),
                    r.e.to_string(),
                    r.lattice_size.to_string(),
                    join_usize(&r.irreducibles),
                    r.g.to_string(),
                    r.fixed_count.to_string(),
                    r.flagged.to_string(),
                ]
            })
            .collect();
        (vec!["class_id", "e", "lattice_size", "irreducibles", "g", "fixed_count", "flagged"], rows)
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.0 {
            write!(
                s,
                "e={} class={} |T|={} irreducibles=[{}] g={} fixed={}",
                r.e,
                r.class_id,
                r.lattice_size,
                join_usize(&r.irreducibles),
                r.g,
                r.fixed_count
            )
            .unwrap();
            if r.flagged {
                s.push_str(" FLAGGED");
            }
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub class_id: usize,
    pub e: usize,
    pub g: usize,
    pub aut_order: usize,
    pub sum: String,
    pub term: String,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimsRecord {
    pub n: usize,
    pub dim_algebra: String,
    pub semisimple_dim: String,
    pub radical_dim: String,
    pub per_class: Vec<TermRecord>,
    pub warnings: Vec<Warning>,
}

impl DimsRecord {
    pub fn new(report: &DimsReport, catalog: &Catalog) -> Self {
        let per_class = report
            .per_class
            .iter()
            .map(|t| TermRecord {
                class_id: t.class_id,
                e: t.e,
                g: t.g,
                aut_order: t.aut_order,
                sum: t.sum.to_string(),
                term: t.term.to_string(),
                exact: t.exact,
            })
            .collect();
        let mut warnings = Vec::new();
        for t in &report.per_class {
            let data = &catalog.level(t.e)[t.class_id];
            if data.g.flagged {
                warnings.push(Warning {
                    kind: "g_exceeds_lattice",
                    class: format!("{}:{}", t.e, t.class_id),
                    e: t.e,
                    class_id: t.class_id,
                    value: t.g,
                    lattice_size: data.g.lattice_size,
                    message: "computed g exceeds the lattice size".into(),
                });
            }
            if !t.exact {
                warnings.push(Warning {
                    kind: "inexact_term",
                    class: format!("{}:{}", t.e, t.class_id),
                    e: t.e,
                    class_id: t.class_id,
                    value: t.aut_order,
                    lattice_size: data.g.lattice_size,
                    message: "sum^2 is not divisible by aut_order; total accumulated over a common denominator".into(),
                });
            }
        }
        DimsRecord {
            n: report.n,
            dim_algebra: report.dim_algebra.to_string(),
            semisimple_dim: report.semisimple_dim.to_string(),
            radical_dim: report.radical_dim.to_string(),
            per_class,
            warnings,
        }
    }
}

fn warning_lines(s: &mut String, warnings: &[Warning]) {
    for w in warnings {
        writeln!(s, "warning: {} class={} value={} |T|={}: {}", w.kind, w.class, w.value, w.lattice_size, w.message)
            .unwrap();
    }
}

impl Render for DimsRecord {
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let rows = self
            .per_class
            .iter()
            .map(|t| {
                vec![
                    t.e.to_string(),
                    t.class_id.to_string(),
                    t.aut_order.to_string(),
                    t.g.to_string(),
                    t.sum.clone(),
                    t.term.clone(),
                ]
            })
            .collect();
        (vec!["size", "class", "aut_order", "g", "sum", "total"], rows)
    }

    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "n = {}", self.n).unwrap();
        writeln!(s, "{:>4} {:>6} {:>9} {:>4} {:>24} {:>40}", "size", "class", "aut_order", "g", "sum", "total").unwrap();
        for t in &self.per_class {
            writeln!(s, "{:>4} {:>6} {:>9} {:>4} {:>24} {:>40}", t.e, t.class_id, t.aut_order, t.g, t.sum, t.term)
                .unwrap();
        }
        writeln!(s, "dim_algebra = {}", self.dim_algebra).unwrap();
        writeln!(s, "semisimple_dim = {}", self.semisimple_dim).unwrap();
        writeln!(s, "radical_dim = {}", self.radical_dim).unwrap();
        warning_lines(&mut s, &self.warnings);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalRecord {
    pub n: usize,
    pub dim_algebra: String,
    pub semisimple_dim: String,
    pub radical_dim: String,
}

impl RadicalRecord {
    pub fn new(report: &DimsReport) -> Self {
        RadicalRecord {
            n: report.n,
            dim_algebra: report.dim_algebra.to_string(),
            semisimple_dim: report.semisimple_dim.to_string(),
            radical_dim: report.radical_dim.to_string(),
        }
    }
}

impl Render for RadicalRecord {
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let row = vec![self.n.to_string(), self.dim_algebra.clone(), self.semisimple_dim.clone(), self.radical_dim.clone()];
        (vec!["n", "dim_algebra", "semisimple_dim", "radical_dim"], vec![row])
    }

    fn text(&self) -> String {
        format!(
            "n = {}\ndim_algebra = {}\nsemisimple_dim = {}\nradical_dim = {}\n",
            self.n, self.dim_algebra, self.semisimple_dim, self.radical_dim
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRecord {
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    pub radical_dim: String,
    pub formula_radical_dim: String,
    pub agree: bool,
}

impl Render for OracleRecord {
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let row = vec![
            self.n.to_string(),
            self.m.to_string(),
            self.rank.to_string(),
            self.radical_dim.clone(),
            self.formula_radical_dim.clone(),
            self.agree.to_string(),
        ];
        (vec!["n", "m", "rank", "radical_dim", "formula_radical_dim", "agree"], vec![row])
    }

    fn text(&self) -> String {
        format!(
            "n = {}\nbasis size = {}\ntrace form rank = {}\nradical_dim (trace form) = {}\nradical_dim (formula) = {}\nagree = {}\n",
            self.n, self.m, self.rank, self.radical_dim, self.formula_radical_dim, self.agree
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table3RowRecord {
    pub size: usize,
    pub class: &'static str,
    pub class_id: usize,
    pub aut_order: usize,
    pub g: usize,
    pub g_reference: usize,
    pub g_flagged: bool,
    pub sum: String,
    pub total: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table3Record {
    pub rows: Vec<Table3RowRecord>,
    pub dim_algebra: String,
    pub semisimple_dim: String,
    pub radical_dim: String,
    pub warnings: Vec<Warning>,
}

impl Table3Record {
    pub fn new(t: &Table3, lattice_sizes: &[usize]) -> Self {
        let rows: Vec<Table3RowRecord> = t
            .rows
            .iter()
            .map(|r| Table3RowRecord {
                size: r.e,
                class: r.label,
                class_id: r.class_id,
                aut_order: r.aut_order,
                g: r.g,
                g_reference: r.g_reference,
                g_flagged: r.g_flagged,
                sum: r.sum.to_string(),
                total: r.total.to_string(),
            })
            .collect();
        let warnings = t
            .rows
            .iter()
            .zip(lattice_sizes)
            .filter(|(r, _)| r.g_flagged)
            .map(|(r, &size)| Warning {
                kind: "g_exceeds_lattice",
                class: r.label.to_string(),
                e: r.e,
                class_id: r.class_id,
                value: r.g_reference,
                lattice_size: size,
                message: format!("tabulated g = {} exceeds |T| = {}; computed g = {}", r.g_reference, size, r.g),
            })
            .collect();
        Table3Record {
            rows,
            dim_algebra: t.dim_algebra.to_string(),
            semisimple_dim: t.semisimple_dim.to_string(),
            radical_dim: t.radical_dim.to_string(),
            warnings,
        }
    }
}

impl Render for Table3Record {
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.size.to_string(),
                    r.class.to_string(),
                    r.aut_order.to_string(),
                    r.g.to_string(),
                    r.sum.clone(),
                    r.total.clone(),
                    if r.g_flagged { format!("g_reference={} flagged", r.g_reference) } else { String::new() },
                ]
            })
            .collect();
        (vec!["size", "class", "aut_order", "g", "sum", "total", "flag"], rows)
    }

    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{:>4}  {:<14} {:>9} {:>3} {:>5} {:>6}", "size", "poset", "aut_order", "g", "sum", "total").unwrap();
        for r in &self.rows {
            write!(s, "{:>4}  {:<14} {:>9} {:>3} {:>5} {:>6}", r.size, r.class, r.aut_order, r.g, r.sum, r.total).unwrap();
            if r.g_flagged {
                write!(s, "  [tabulated g={} flagged]", r.g_reference).unwrap();
            }
            s.push('\n');
        }
        writeln!(s, "semisimple_dim = {}", self.semisimple_dim).unwrap();
        writeln!(s, "dim_algebra = {}", self.dim_algebra).unwrap();
        writeln!(s, "radical_dim = {}", self.radical_dim).unwrap();
        warning_lines(&mut s, &self.warnings);
        s
    }
}

/// Lattice export used by the maps fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeExport {
    pub class_id: usize,
    pub e: usize,
    pub lattice_size: usize,
    /// Each element as the bitmask of its downset.
    pub elements: Vec<u16>,
    pub irreducibles: Vec<usize>,
    pub g: usize,
    pub fixed_count: usize,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapsFixture {
    pub lattice: LatticeExport,
    pub nx: usize,
    pub maps: Vec<Vec<usize>>,
}

impl MapsFixture {
    pub fn new(data: &ClassData, t: &DownsetLattice, nx: usize, maps: &[LatticeMap]) -> Self {
        MapsFixture {
            lattice: LatticeExport {
                class_id: data.class.class_id,
                e: data.class.e,
                lattice_size: t.len(),
                elements: t.elements().to_vec(),
                irreducibles: t.irreducibles().to_vec(),
                g: data.g.g,
                fixed_count: data.g.fixed.len(),
                flagged: data.g.flagged,
            },
            nx,
            maps: maps.iter().map(|m| m.values.clone()).collect(),
        }
    }
}

impl Render for MapsFixture {
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let rows = self.maps.iter().enumerate().map(|(i, m)| vec![i.to_string(), join_usize(m)]).collect();
        (vec!["index", "values"], rows)
    }

    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "class {}:{} |T|={} g={} nx={} maps={}",
            self.lattice.e,
            self.lattice.class_id,
            self.lattice.lattice_size,
            self.lattice.g,
            self.nx,
            self.maps.len()
        )
        .unwrap();
        for m in &self.maps {
            writeln!(s, "{}", join_usize(m)).unwrap();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn posets_json_shape() {
        let classes = relmon_core::poset::enumerate_posets(2).unwrap();
        let json: serde_json::Value = serde_json::from_str(&PosetList::new(&classes).json()).unwrap();
        let arr = json.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        for rec in arr {
            for key in ["class_id", "e", "matrix", "aut_order", "labeled_count"] {
                assert!(rec.get(key).is_some(), "missing {key}");
            }
        }
    }

    #[test]
    fn radical_text_matches_json() {
        let catalog = relmon_core::dims::Catalog::build(3).unwrap();
        let rec = RadicalRecord::new(&catalog.dims_report(3).unwrap());
        let json: serde_json::Value = serde_json::from_str(&rec.json()).unwrap();
        assert_eq!(json["radical_dim"], "42");
        assert!(rec.text().contains("radical_dim = 42\n"));
        assert_eq!(rec.csv(), "n,dim_algebra,semisimple_dim,radical_dim\n3,512,470,42\n");
    }
}
