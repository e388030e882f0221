//! Argument parsing and command dispatch for the `relmon` binary.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use relmon_core::dims::table3_with;
use relmon_core::functor::{b_enumerate, DEFAULT_BUDGET};
use relmon_core::lattice::{g_reference_table, DownsetLattice};
use relmon_core::oracle::{bareiss_rank, gram, PivotOrder};
use relmon_core::Error;

use crate::report::{
    DimsRecord, Format, GTable, MapsFixture, OracleRecord, PosetList, RadicalRecord, Render, Table3Record,
};
use crate::selftest::{self, SelftestOptions};
use crate::{gram_dump, parallel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "relmon", version, about = "Simple modules and radicals of the monoid algebra of relations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Upper bound on the number of candidate maps an enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Isomorphism classes of partial orders of a given size.
    Posets {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=8))]
        size: u8,
    },
    /// Lattice invariants of every class up to a given size.
    GTable {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=8))]
        max_size: u8,
    },
    /// Per-class breakdown of the semisimple dimension.
    Dims {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=8))]
        n: u8,
    },
    /// Dimension of the radical.
    Radical {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=8))]
        n: u8,
    },
    /// Radical dimension from the rank of the trace form.
    Oracle {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=3))]
        n: u8,
        /// Dump the Gram matrix here; the header goes to `<path>.json`.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// The maps `X -> T` indexing a simple module, with the lattice they live in.
    Maps {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=8))]
        size: u8,
        /// Class index within its size.
        #[arg(long)]
        class: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=6))]
        nx: u8,
    },
    /// The table of classes of size at most 3 at |X| = 3.
    Table3,
    /// Run every invariant suite and golden comparison.
    Selftest {
        /// Skip the trace-form oracle.
        #[arg(long)]
        no_oracle: bool,
    },
}

/// Rendered output and exit status of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
    /// Printed to stderr.
    pub message: Option<String>,
}

fn usage(e: Error) -> Outcome {
    Outcome { output: String::new(), code: EXIT_USAGE, message: Some(e.to_string()) }
}

fn failure(msg: String) -> Outcome {
    Outcome { output: String::new(), code: EXIT_VERIFY, message: Some(msg) }
}

fn classify(e: Error) -> Outcome {
    match e {
        Error::TooLarge { .. } | Error::InvalidArgument(_) | Error::BudgetExceeded { .. } => usage(e),
        other => failure(other.to_string()),
    }
}

fn done(output: String) -> Outcome {
    Outcome { output, code: EXIT_OK, message: None }
}

/// Runs a parsed command on a pool of `cli.threads` workers. Nothing is
/// written; see [`main`].
pub fn execute(cli: &Cli) -> Outcome {
    parallel::with_threads(cli.threads, || dispatch(cli))
}

fn dispatch(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::Posets { size } => match parallel::enumerate_all(*size as usize) {
            Ok(mut levels) => done(PosetList::new(&levels.pop().unwrap_or_default()).render(fmt)),
            Err(e) => classify(e),
        },
        Command::GTable { max_size } => {
            let max = *max_size as usize;
            match parallel::catalog(max).and_then(|c| GTable::new(&c, max)) {
                Ok(t) => done(t.render(fmt)),
                Err(e) => classify(e),
            }
        }
        Command::Dims { n } => {
            let n = *n as usize;
            match parallel::catalog(n).and_then(|c| Ok(DimsRecord::new(&c.dims_report(n)?, &c))) {
                Ok(r) => done(r.render(fmt)),
                Err(e) => classify(e),
            }
        }
        Command::Radical { n } => {
            let n = *n as usize;
            match parallel::catalog(n).and_then(|c| c.dims_report(n)) {
                Ok(r) if r.inexact_terms().next().is_some() => failure(format!("n={n}: non-integral semisimple term")),
                Ok(r) => done(RadicalRecord::new(&r).render(fmt)),
                Err(e) => classify(e),
            }
        }
        Command::Oracle { n, dump } => oracle(*n as usize, dump.as_ref(), fmt),
        Command::Maps { size, class, nx } => maps(*size as usize, *class, *nx as usize, cli.budget, fmt),
        Command::Table3 => {
            let reference = g_reference_table();
            let sizes: Vec<usize> = reference.iter().map(|r| r.lattice_size).collect();
            match parallel::catalog(3).and_then(|c| table3_with(&c, &reference)) {
                Ok(t) => done(Table3Record::new(&t, &sizes).render(fmt)),
                Err(e) => classify(e),
            }
        }
        Command::Selftest { no_oracle } => {
            let opts = SelftestOptions {
                oracle_max: if *no_oracle { None } else { SelftestOptions::default().oracle_max },
                budget: cli.budget,
                ..SelftestOptions::default()
            };
            let report = selftest::run(&opts);
            let code = if report.all_passed() { EXIT_OK } else { EXIT_VERIFY };
            let message = (!report.all_passed()).then(|| format!("{} check(s) failed", report.failed));
            Outcome { output: report.render(fmt), code, message }
        }
    }
}

fn oracle(n: usize, dump: Option<&PathBuf>, fmt: Format) -> Outcome {
    let g = match gram(n) {
        Ok(g) => g,
        Err(e) => return classify(e),
    };
    if let Some(path) = dump {
        if let Err(e) = gram_dump::write(&g, path) {
            return failure(format!("{}: {e}", path.display()));
        }
    }
    let rank = bareiss_rank(g.rows(), PivotOrder::Natural);
    let by_form = g.m - rank;
    let by_formula = match parallel::catalog(n).and_then(|c| c.radical_dim(n)) {
        Ok(v) => v,
        Err(e) => return classify(e),
    };
    let agree = by_formula == by_form.into();
    let rec = OracleRecord {
        n,
        m: g.m,
        rank,
        radical_dim: by_form.to_string(),
        formula_radical_dim: by_formula.to_string(),
        agree,
    };
    Outcome {
        output: rec.render(fmt),
        code: if agree { EXIT_OK } else { EXIT_VERIFY },
        message: (!agree).then(|| "trace form and formula disagree".to_string()),
    }
}

fn maps(size: usize, class: usize, nx: usize, budget: u64, fmt: Format) -> Outcome {
    let catalog = match parallel::catalog(size) {
        Ok(c) => c,
        Err(e) => return classify(e),
    };
    let Some(data) = catalog.level(size).get(class) else {
        return usage(Error::InvalidArgument("class index out of range"));
    };
    let result = DownsetLattice::for_class(&data.class)
        .and_then(|t| Ok(MapsFixture::new(data, &t, nx, &b_enumerate(&t, &data.g, nx, budget)?)));
    match result {
        Ok(f) => done(f.render(fmt)),
        Err(e) => classify(e),
    }
}

/// Parses `std::env::args`, runs, writes the output and returns the exit
/// status.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = execute(&cli);
    if let Some(msg) = &outcome.message {
        eprintln!("relmon: {msg}");
    }
    let written = match &cli.out {
        Some(path) => fs::write(path, &outcome.output).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(outcome.output.as_bytes()).map_err(|e| e.to_string())
        }
    };
    if let Err(msg) = written {
        eprintln!("relmon: {msg}");
        return EXIT_VERIFY;
    }
    outcome.code
}
