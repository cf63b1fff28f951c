use substring_range::format::{AnyIndex, IndexKind};
use substring_range::LabelRange;

use crate::cli::{GapQuery, QueryArgs, QueryKind, RangeQuery};
use crate::error::{CliError, CliResult};
use crate::input::{parse_range, pattern_bytes};

pub fn run(args: &QueryArgs) -> CliResult {
    match &args.kind {
        QueryKind::Report(q) => {
            let (ix, p, r) = open(q, None)?;
            print_positions(&ix.srr().report(&p, label_range(r)?)?);
        }
        QueryKind::Count(q) => {
            let (ix, p, r) = open(q, None)?;
            println!("{}", ix.srr().count(&p, label_range(r)?)?);
        }
        QueryKind::Empty(q) => {
            let (ix, p, r) = open(q, None)?;
            println!("{}", ix.srr().empty(&p, label_range(r)?)?);
        }
        QueryKind::Prss(q) => {
            let (ix, p, (a, b)) = open(q, Some(IndexKind::Prss))?;
            let AnyIndex::Prss(ix) = ix else {
                unreachable!()
            };
            print_positions(&ix.query(&p, a as usize, b as usize)?);
        }
        QueryKind::Interval(q) => {
            let (ix, p, (a, b)) = open(q, Some(IndexKind::Interval))?;
            let AnyIndex::Interval(ix) = ix else {
                unreachable!()
            };
            print_positions(&ix.query(&p, a as usize, b as usize)?);
        }
        QueryKind::Gap(q) => run_gap(q)?,
    }
    Ok(())
}

fn run_gap(q: &GapQuery) -> CliResult {
    let p1 = pattern_bytes(&q.p1, q.hex)?;
    let p2 = pattern_bytes(&q.p2, q.hex)?;
    let ix = load(&q.index, Some(IndexKind::Gap))?;
    let AnyIndex::Gap(ix) = ix else {
        unreachable!()
    };
    print_positions(&ix.query(&p1, &p2)?);
    Ok(())
}

fn label_range((a, b): (u64, u64)) -> CliResult<LabelRange> {
    Ok(LabelRange::new(a, b)?)
}

fn open(q: &RangeQuery, want: Option<IndexKind>) -> CliResult<(AnyIndex, Vec<u8>, (u64, u64))> {
    let range = parse_range(&q.range)?;
    let pattern = pattern_bytes(&q.pattern, q.hex)?;
    Ok((load(&q.index, want)?, pattern, range))
}

fn load(path: &std::path::Path, want: Option<IndexKind>) -> CliResult<AnyIndex> {
    let ix = AnyIndex::load(path)?;
    match want {
        Some(kind) if ix.kind() != kind => Err(CliError::Usage(format!(
            "{} holds a {} index, this query needs a {kind} index",
            path.display(),
            ix.kind()
        ))),
        _ => Ok(ix),
    }
}

fn print_positions(positions: &[usize]) {
    use std::io::Write;
    let mut out = std::io::BufWriter::new(std::io::stdout().lock());
    for p in positions {
        let _ = writeln!(out, "{p}");
    }
    let _ = writeln!(out, "occ={}", positions.len());
}
