use std::time::{Duration, Instant};

use rand::prelude::*;

use substring_range::format::AnyIndex;
use substring_range::{LabelRange, PrssIndex, QueryPath, SrrIndex};

use crate::cli::BenchArgs;
use crate::error::{CliError, CliResult};
use crate::workload::random_bytes;

pub fn run(args: &BenchArgs) -> CliResult {
    if args.queries == 0 {
        return Err(CliError::Usage("--queries must be at least 1".into()));
    }
    if args.lengths.contains(&0) {
        return Err(CliError::Usage("pattern lengths must be at least 1".into()));
    }
    let alphabet = args.alphabet.as_bytes();
    if alphabet.is_empty() {
        return Err(CliError::Usage("--alphabet must not be empty".into()));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
    let index = match (&args.index, args.gen_len) {
        (Some(path), _) => AnyIndex::load(path)?,
        (None, Some(len)) => {
            if len == 0 {
                return Err(CliError::Usage("--gen-len must be at least 1".into()));
            }
            let started = Instant::now();
            let ix = PrssIndex::build(random_bytes(&mut rng, len, alphabet))?;
            eprintln!("built n={len} in {:.2?}", started.elapsed());
            AnyIndex::Prss(ix)
        }
        (None, None) => unreachable!("clap requires an input"),
    };
    let ix = index.srr();
    let full = LabelRange::new(0, ix.bound())?;
    println!(
        "kind: {}  n: {}  u: {}  tau: {}",
        index.kind(),
        ix.len(),
        ix.bound(),
        ix.tau()
    );
    println!(
        "{:>6} {:>8} {:>12} {:>10}  path",
        "m", "queries", "median", "mean occ"
    );

    for &m in &args.lengths {
        if m > ix.len() {
            println!("{m:>6} {:>8} {:>12} {:>10}  longer than text", 0, "-", "-");
            continue;
        }
        let text = ix.source().text();
        let patterns: Vec<&[u8]> = (0..args.queries)
            .map(|_| {
                let s = rng.gen_range(0..=text.len() - m);
                &text[s..s + m]
            })
            .collect();
        row(ix, &m.to_string(), &patterns, full)?;
    }

    // patterns with a byte outside the text never have a locus
    let absent: Vec<Vec<u8>> = (0..args.queries)
        .map(|_| {
            let mut p = random_bytes(&mut rng, 4, alphabet);
            p.push(0xff);
            p
        })
        .filter(|p| !contains(ix.source().text(), p))
        .collect();
    if !absent.is_empty() {
        let refs: Vec<&[u8]> = absent.iter().map(Vec::as_slice).collect();
        row(ix, "absent", &refs, full)?;
    }
    Ok(())
}

fn contains(text: &[u8], p: &[u8]) -> bool {
    text.windows(p.len()).any(|w| w == p)
}

fn row(ix: &SrrIndex, label: &str, patterns: &[&[u8]], r: LabelRange) -> CliResult {
    let mut lat: Vec<Duration> = Vec::with_capacity(patterns.len());
    let mut occ = 0usize;
    let mut paths = [0usize; 3];
    for p in patterns {
        let t = Instant::now();
        let (hits, stats) = ix.report_with_stats(p, r)?;
        lat.push(t.elapsed());
        std::hint::black_box(hits);
        occ += stats.occ;
        paths[match stats.path {
            QueryPath::TopTree1D => 0,
            QueryPath::Bottom2D => 1,
            QueryPath::NoLocus => 2,
        }] += 1;
    }
    lat.sort_unstable();
    let median = lat[lat.len() / 2];
    let names = [
        QueryPath::TopTree1D,
        QueryPath::Bottom2D,
        QueryPath::NoLocus,
    ];
    let used: Vec<String> = names
        .iter()
        .zip(paths)
        .filter(|(_, c)| *c > 0)
        .map(|(p, c)| format!("{p}={c}"))
        .collect();
    let path = if used.len() == 1 {
        names[paths.iter().position(|&c| c > 0).unwrap()].to_string()
    } else {
        format!("mixed {}", used.join(" "))
    };
    println!(
        "{label:>6} {:>8} {:>12} {:>10.1}  {path}",
        patterns.len(),
        format!("{median:.2?}"),
        occ as f64 / patterns.len() as f64
    );
    Ok(())
}
