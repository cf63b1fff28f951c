use std::fmt;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use substring_range::format::AnyIndex;
use substring_range::oracle;
use substring_range::{
    CutoffPolicy, GapIndex, IntervalIndex, IntervalSet, LabelRange, LabeledString, PrssIndex,
    Routing, SrrIndex,
};

use crate::cli::{Mode, VerifyArgs};
use crate::error::{CliError, CliResult};
use crate::input::read_file;
use crate::workload::{random_bytes, random_pattern, random_range, WorkloadSpec};

const QUERIES_PER_TRIAL: usize = 4;

/// A failing instance, printed in full.
struct Counterexample {
    trial: usize,
    text: Vec<u8>,
    labels: Option<Vec<u64>>,
    extra: String,
    query: String,
    expected: String,
    got: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mismatch in trial {}", self.trial)?;
        writeln!(f, "text: \"{}\"", self.text.escape_ascii())?;
        if let Some(l) = &self.labels {
            writeln!(f, "labels: {l:?}")?;
        }
        if !self.extra.is_empty() {
            writeln!(f, "{}", self.extra)?;
        }
        writeln!(f, "query: {}", self.query)?;
        writeln!(f, "expected: {}", self.expected)?;
        write!(f, "got: {}", self.got)
    }
}

pub fn run(args: &VerifyArgs) -> CliResult {
    let spec = WorkloadSpec {
        trials: args.trials,
        max_len: args.max_len,
        alphabet: args.alphabet.as_bytes().to_vec(),
        label_bound: args.label_bound,
        seed: args.seed,
        mode: args.mode,
        text: args.text.as_deref().map(read_file).transpose()?,
    };
    spec.validate()?;
    let mut rng = spec.rng();
    for trial in 0..spec.trials {
        if let Err(cx) = run_trial(&spec, trial, &mut rng)? {
            println!("{cx}");
            println!("{trial}/{} ok", spec.trials);
            return Err(CliError::Mismatch(format!(
                "verification failed in trial {trial}"
            )));
        }
    }
    println!("{}/{} ok", spec.trials, spec.trials);
    Ok(())
}

fn show(p: &[u8]) -> String {
    format!("\"{}\"", p.escape_ascii())
}

fn reload(ix: &AnyIndex) -> CliResult<AnyIndex> {
    Ok(AnyIndex::from_bytes(&ix.to_bytes())?)
}

type Trial = CliResult<Result<(), Counterexample>>;

fn run_trial(spec: &WorkloadSpec, trial: usize, rng: &mut ChaCha8Rng) -> Trial {
    let text = spec.text(rng);
    match spec.mode {
        Mode::Srr => srr_trial(spec, trial, text, rng),
        Mode::Prss => prss_trial(spec, trial, text, rng),
        Mode::Interval => interval_trial(spec, trial, text, rng),
        Mode::Gap => gap_trial(spec, trial, text, rng),
    }
}

fn srr_trial(spec: &WorkloadSpec, trial: usize, text: Vec<u8>, rng: &mut ChaCha8Rng) -> Trial {
    let u = spec.label_bound;
    let labels: Vec<u64> = (0..text.len()).map(|_| rng.gen_range(0..=u)).collect();
    let source = LabeledString::new(text, labels, u)?;
    let built = AnyIndex::Srr(SrrIndex::build(source.clone(), CutoffPolicy::Reporting)?);
    let loaded = reload(&built)?;
    for _ in 0..QUERIES_PER_TRIAL {
        let p = random_pattern(rng, source.text(), &spec.alphabet);
        let (a, b) = random_range(rng, 0, u);
        let r = LabelRange::new(a, b)?;
        let want = oracle::naive_report(&source, &p, r);
        let want_count = want.len();
        for ix in [built.srr(), loaded.srr()] {
            let got = ix.report(&p, r)?;
            let forced = ix.report_routed(&p, r, Routing::Force2D)?.0;
            let count = ix.count(&p, r)?;
            let empty = ix.empty(&p, r)?;
            if got != want || forced != want || count != want_count || empty != (want_count == 0) {
                return Ok(Err(Counterexample {
                    trial,
                    text: source.text().to_vec(),
                    labels: Some(source.labels().to_vec()),
                    extra: format!("u: {u}"),
                    query: format!("pattern {} range {a}:{b}", show(&p)),
                    expected: format!("{want:?} (count {want_count})"),
                    got: format!("{got:?} forced-2d {forced:?} count {count} empty {empty}"),
                }));
            }
        }
    }
    Ok(Ok(()))
}

fn prss_trial(spec: &WorkloadSpec, trial: usize, text: Vec<u8>, rng: &mut ChaCha8Rng) -> Trial {
    let n = text.len();
    let built = AnyIndex::Prss(PrssIndex::build(text.clone())?);
    let loaded = reload(&built)?;
    for _ in 0..QUERIES_PER_TRIAL {
        let p = random_pattern(rng, &text, &spec.alphabet);
        let (a, b) = random_range(rng, 1, n as u64);
        let (a, b) = (a as usize, b as usize);
        let want = oracle::naive_prss(&text, &p, a, b);
        for ix in [&built, &loaded] {
            let AnyIndex::Prss(ix) = ix else {
                unreachable!()
            };
            let got = ix.query(&p, a, b)?;
            if got != want {
                return Ok(Err(Counterexample {
                    trial,
                    text,
                    labels: None,
                    extra: String::new(),
                    query: format!("pattern {} range {a}:{b}", show(&p)),
                    expected: format!("{want:?}"),
                    got: format!("{got:?}"),
                }));
            }
        }
    }
    Ok(Ok(()))
}

fn interval_trial(spec: &WorkloadSpec, trial: usize, text: Vec<u8>, rng: &mut ChaCha8Rng) -> Trial {
    let n = text.len();
    let pi: Vec<(usize, usize)> = (0..rng.gen_range(0..=16))
        .map(|_| {
            let (s, f) = random_range(rng, 1, n as u64);
            (s as usize, f as usize)
        })
        .collect();
    let built = AnyIndex::Interval(IntervalIndex::build(
        text.clone(),
        IntervalSet::new(pi.clone()),
    )?);
    let loaded = reload(&built)?;
    for _ in 0..QUERIES_PER_TRIAL {
        let p = random_pattern(rng, &text, &spec.alphabet);
        let (a, b) = random_range(rng, 1, n as u64);
        let (a, b) = (a as usize, b as usize);
        let want = oracle::naive_interval(&text, &pi, &p, a, b);
        for ix in [&built, &loaded] {
            let AnyIndex::Interval(ix) = ix else {
                unreachable!()
            };
            let got = ix.query(&p, a, b)?;
            if got != want {
                return Ok(Err(Counterexample {
                    trial,
                    text,
                    labels: None,
                    extra: format!("intervals: {pi:?}"),
                    query: format!("pattern {} range {a}:{b}", show(&p)),
                    expected: format!("{want:?}"),
                    got: format!("{got:?}"),
                }));
            }
        }
    }
    Ok(Ok(()))
}

fn gap_trial(spec: &WorkloadSpec, trial: usize, text: Vec<u8>, rng: &mut ChaCha8Rng) -> Trial {
    let gap = rng.gen_range(0..=8);
    let built = AnyIndex::Gap(GapIndex::build(text.clone(), gap)?);
    let loaded = reload(&built)?;
    for _ in 0..QUERIES_PER_TRIAL {
        let (m1, m2) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let (p1, p2) = if rng.gen_bool(0.5) && m1 + gap + m2 <= text.len() {
            let i = rng.gen_range(0..=text.len() - (m1 + gap + m2));
            let j = i + m1 + gap;
            (text[i..i + m1].to_vec(), text[j..j + m2].to_vec())
        } else {
            (
                random_bytes(rng, m1, &spec.alphabet),
                random_bytes(rng, m2, &spec.alphabet),
            )
        };
        let want = oracle::naive_gap(&text, gap, &p1, &p2);
        for ix in [&built, &loaded] {
            let AnyIndex::Gap(ix) = ix else {
                unreachable!()
            };
            let got = ix.query(&p1, &p2)?;
            if got != want {
                return Ok(Err(Counterexample {
                    trial,
                    text,
                    labels: None,
                    extra: format!("gap: {gap}"),
                    query: format!("p1 {} p2 {}", show(&p1), show(&p2)),
                    expected: format!("{want:?}"),
                    got: format!("{got:?}"),
                }));
            }
        }
    }
    Ok(Ok(()))
}
