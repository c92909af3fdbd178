use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use pmpoly::graph::Family;
use pmpoly::matching;
use pmpoly::paperlab::{self, Verdict};
use pmpoly::polytope;

use super::{build_graph, exit_for, usage, BudgetArgs, CmdResult, Failure, FamilyArg};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub(crate) enum Parity {
    Any,
    /// Keep instances with `mn` even.
    Even,
    Odd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub(crate) enum Format {
    Json,
    Csv,
}

#[derive(Args)]
pub(crate) struct ScanArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Inclusive range "a..b", or a single value.
    #[arg(long, value_parser = parse_range)]
    m_range: (usize, usize),
    #[arg(long, value_parser = parse_range)]
    n_range: (usize, usize),
    #[arg(long, value_enum, default_value_t = Parity::Any)]
    parity: Parity,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Write the table here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Record wall-clock runtimes per row.
    #[arg(long)]
    timings: bool,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |x: &str| {
        let v: usize = x.trim().parse().map_err(|_| format!("bad range bound {x:?}"))?;
        if v == 0 {
            return Err("range bounds start at 1".to_string());
        }
        Ok(v)
    };
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => {
            let v = parse(s)?;
            Ok((v, v))
        }
    }
}

#[derive(Serialize)]
struct TorusRow {
    m: usize,
    n: usize,
    predicate: Option<bool>,
    verdict: Verdict,
    gorenstein: Option<bool>,
    method: Option<String>,
    note: Option<String>,
    runtime_ms: Option<u64>,
}

#[derive(Serialize)]
struct GridRow {
    m: usize,
    n: usize,
    formula: Option<usize>,
    dimension: Option<usize>,
    verdict: Verdict,
    runtime_ms: Option<u64>,
}

fn torus_row(m: usize, n: usize, args: &ScanArgs) -> Result<TorusRow, Failure> {
    let r = paperlab::verify_theorem_hokan(m, n, &args.budget.start())?;
    let gorenstein = r.computed.get("gorenstein").and_then(|v| v.as_bool());
    let method = r.evidence.get("method").and_then(|v| v.as_str()).map(str::to_string);
    Ok(TorusRow {
        m,
        n,
        predicate: paperlab::hokan_predicate(m, n),
        verdict: r.verdict,
        gorenstein,
        method,
        note: r.note,
        runtime_ms: None,
    })
}

fn grid_row(m: usize, n: usize) -> Result<GridRow, Failure> {
    let g = build_graph(FamilyArg::Grid, m, n)?;
    let formula = paperlab::dimension_formula_for(Family::Grid, m, n);
    let vs = matching::characteristic_vectors(&matching::enumerate_perfect_matchings(&g), g.n_edges());
    let dimension = if vs.is_empty() {
        None
    } else {
        Some(polytope::dimension_from_vertices(&vs)?)
    };
    let verdict = match (formula, dimension) {
        (Some(f), Some(d)) if f == d => Verdict::Pass,
        (Some(_), Some(_)) => Verdict::Fail,
        _ => Verdict::NotApplicable,
    };
    Ok(GridRow {
        m,
        n,
        formula,
        dimension,
        verdict,
        runtime_ms: None,
    })
}

fn write_table<R: Serialize>(rows: &[R], format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r).map_err(|e| match e.into_kind() {
                    csv::ErrorKind::Io(e) => Failure::from(e),
                    other => usage(format!("{other:?}")),
                })?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

trait Row: Serialize + Send {
    fn verdict(&self) -> Verdict;
    fn set_runtime(&mut self, ms: u64);
}

impl Row for TorusRow {
    fn verdict(&self) -> Verdict {
        self.verdict
    }
    fn set_runtime(&mut self, ms: u64) {
        self.runtime_ms = Some(ms);
    }
}

impl Row for GridRow {
    fn verdict(&self) -> Verdict {
        self.verdict
    }
    fn set_runtime(&mut self, ms: u64) {
        self.runtime_ms = Some(ms);
    }
}

fn scan_rows<R: Row>(
    args: &ScanArgs,
    instances: &[(usize, usize)],
    row: impl Fn(usize, usize) -> Result<R, Failure> + Sync,
) -> CmdResult {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| usage(e.to_string()))?;
    // Collecting an indexed parallel iterator keeps the (m, n) order.
    let rows: Vec<R> = pool.install(|| {
        instances
            .par_iter()
            .map(|&(m, n)| {
                let start = Instant::now();
                let mut r = row(m, n)?;
                if args.timings {
                    r.set_runtime(start.elapsed().as_millis() as u64);
                }
                eprintln!("scanned ({m},{n})");
                Ok(r)
            })
            .collect::<Result<_, Failure>>()
    })?;
    match &args.output {
        Some(path) => write_table(&rows, args.format, &mut File::create(path)?)?,
        None => write_table(&rows, args.format, &mut io::stdout().lock())?,
    }
    Ok(exit_for(rows.iter().map(Row::verdict)))
}

pub(crate) fn run(args: &ScanArgs) -> CmdResult {
    let (m_lo, m_hi) = args.m_range;
    let (n_lo, n_hi) = args.n_range;
    let instances: Vec<(usize, usize)> = (m_lo..=m_hi)
        .flat_map(|m| (n_lo..=n_hi).map(move |n| (m, n)))
        .filter(|&(m, n)| match args.parity {
            Parity::Any => true,
            Parity::Even => (m * n) % 2 == 0,
            Parity::Odd => (m * n) % 2 == 1,
        })
        .collect();
    match args.family {
        FamilyArg::Torus => scan_rows(args, &instances, |m, n| torus_row(m, n, args)),
        FamilyArg::Grid => scan_rows(args, &instances, grid_row),
    }
}

#[cfg(test)]
mod tests {
    use super::parse_range;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..7"), Ok((2, 7)));
        assert_eq!(parse_range("2..=7"), Ok((2, 7)));
        assert_eq!(parse_range("4"), Ok((4, 4)));
        assert_eq!(parse_range("5..4"), Ok((5, 4)));
        assert!(parse_range("0..3").is_err());
        assert!(parse_range("a..3").is_err());
    }
}
