use std::time::Instant;

use substring_range::format::AnyIndex;
use substring_range::{
    CutoffPolicy, GapIndex, IntervalIndex, IntervalSet, LabeledString, PrssIndex, SrrIndex,
};

use crate::cli::BuildArgs;
use crate::error::CliResult;
use crate::input::{read_file, read_intervals, read_labels};

pub fn run(args: &BuildArgs) -> CliResult {
    let text = read_file(&args.text)?;
    let policy = match (args.tau, args.counting) {
        (Some(t), _) => CutoffPolicy::Fixed(t),
        (None, true) => CutoffPolicy::Counting,
        (None, false) => CutoffPolicy::Reporting,
    };
    let started = Instant::now();
    let index = if let Some(path) = &args.labels {
        let labels = read_labels(path)?;
        let bound = args
            .bound
            .unwrap_or_else(|| labels.iter().copied().max().unwrap_or(0));
        let source = LabeledString::new(text, labels, bound)?;
        AnyIndex::Srr(SrrIndex::build(source, policy)?)
    } else if args.positional {
        AnyIndex::Prss(PrssIndex::build_with(text, policy)?)
    } else if let Some(path) = &args.intervals {
        let pi = IntervalSet::new(read_intervals(path)?);
        AnyIndex::Interval(IntervalIndex::build_with(text, pi, policy)?)
    } else {
        let gap = args.gap.expect("clap requires one label source");
        AnyIndex::Gap(GapIndex::build_with(text, gap, policy)?)
    };
    let elapsed = started.elapsed();
    let out = args.out.clone().unwrap_or_else(|| {
        let mut p = args.text.clone().into_os_string();
        p.push(".srr");
        p.into()
    });
    index.save(&out)?;

    let ix = index.srr();
    println!("kind: {}", index.kind());
    if let AnyIndex::Gap(g) = &index {
        println!("gap: {}", g.gap());
    }
    println!("n: {}", ix.len());
    println!("u: {}", ix.bound());
    println!("tau: {}", ix.tau());
    println!("nodes: {}", ix.suffix_index().node_count());
    eprintln!("build time: {:.3} ms", elapsed.as_secs_f64() * 1e3);
    Ok(())
}
