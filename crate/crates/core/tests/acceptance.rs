//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::time::{Duration, Instant};

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use substring_range::format::AnyIndex;
use substring_range::oracle;
use substring_range::reductions::gap_match_start;
use substring_range::{
    CutoffPolicy, GapIndex, IntervalIndex, IntervalSet, LabelRange, LabeledString, PrssIndex,
    QueryPath, Routing, SrrIndex,
};

type Outcome = Result<String, String>;

/// (name, check, time limit in seconds)
type Criterion = (&'static str, fn() -> Outcome, Option<f64>);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const TRIALS: usize = 1000;
const ALPHABET: &[u8] = b"abcd";

fn random_text(rng: &mut ChaCha8Rng, max_len: usize, alphabet: &[u8]) -> Vec<u8> {
    let n = rng.gen_range(1..=max_len);
    (0..n).map(|_| *alphabet.choose(rng).unwrap()).collect()
}

/// Half substrings of the text, half random strings, lengths up to 16.
fn random_pattern(rng: &mut ChaCha8Rng, text: &[u8], alphabet: &[u8]) -> Vec<u8> {
    if rng.gen_bool(0.5) {
        let len = rng.gen_range(0..=16.min(text.len()));
        let start = rng.gen_range(0..=text.len() - len);
        text[start..start + len].to_vec()
    } else {
        let len = rng.gen_range(0..=8);
        (0..len).map(|_| *alphabet.choose(rng).unwrap()).collect()
    }
}

fn random_range(rng: &mut ChaCha8Rng, lo: u64, hi: u64) -> (u64, u64) {
    let a = rng.gen_range(lo..=hi);
    let b = rng.gen_range(lo..=hi);
    (a.min(b), a.max(b))
}

struct CoreTrial {
    source: LabeledString,
    index: SrrIndex,
    queries: Vec<(Vec<u8>, LabelRange)>,
}

fn core_workload(seed: u64) -> impl Iterator<Item = CoreTrial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..TRIALS).map(move |t| {
        let text = random_text(&mut rng, 512, ALPHABET);
        let labels = (0..text.len()).map(|_| rng.gen_range(0..=1024)).collect();
        let source = LabeledString::new(text, labels, 1024).unwrap();
        // alternate the reporting and counting layouts
        let policy = if t % 2 == 0 {
            CutoffPolicy::Reporting
        } else {
            CutoffPolicy::Counting
        };
        let index = SrrIndex::build(source.clone(), policy).unwrap();
        let queries = (0..8)
            .map(|_| {
                let p = random_pattern(&mut rng, source.text(), ALPHABET);
                let (a, b) = random_range(&mut rng, 0, 1024);
                (p, LabelRange::new(a, b).unwrap())
            })
            .collect();
        CoreTrial {
            source,
            index,
            queries,
        }
    })
}

fn gap_worked_examples() -> Outcome {
    ensure!(gap_match_start(7, 2, 2) == 3, "7 - 2 - 2 should map to 3");

    let ix = GapIndex::build(b"abxxbac".to_vec(), 2).map_err(|e| e.to_string())?;
    let t = ix.query_traced(b"ab", b"bac").map_err(|e| e.to_string())?;
    ensure!(t.interval == Some((3, 3)), "interval {:?}", t.interval);
    ensure!(t.inner_hits == vec![5], "inner hits {:?}", t.inner_hits);
    ensure!(t.matches == vec![1], "matches {:?}", t.matches);

    // A second instance with locus interval [6, 7], the inner
    // report returns 7, and the occurrence is at 7 - 2 - 2 = 3. Labels were
    // computed independently by brute-force suffix sorting of the reversal.
    let text = b"aaababbac";
    let ix = GapIndex::build(text.to_vec(), 2).map_err(|e| e.to_string())?;
    ensure!(
        ix.inner().source().labels() == [0, 0, 0, 1, 2, 3, 6, 4, 7],
        "labels {:?}",
        ix.inner().source().labels()
    );
    let t = ix.query_traced(b"ab", b"bac").map_err(|e| e.to_string())?;
    ensure!(t.interval == Some((6, 7)), "interval {:?}", t.interval);
    ensure!(t.inner_hits == vec![7], "inner hits {:?}", t.inner_hits);
    ensure!(t.matches == vec![3], "matches {:?}", t.matches);
    ensure!(
        oracle::naive_gap(text, 2, b"ab", b"bac") == vec![3],
        "oracle disagrees"
    );
    Ok("7-2-2=3; abxxbac -> {1} via [3,3]/5; aaababbac -> {3} via [6,7]/7".into())
}

fn core_equivalence() -> Outcome {
    let (mut queries, mut hits) = (0, 0);
    for (t, trial) in core_workload(0x5eed_0001).enumerate() {
        for (p, r) in &trial.queries {
            let want = oracle::naive_report(&trial.source, p, *r);
            let got = trial.index.report(p, *r).map_err(|e| e.to_string())?;
            ensure!(
                got == want,
                "trial {t}: report {p:?} {r:?}: {got:?} != {want:?}"
            );
            let count = trial.index.count(p, *r).map_err(|e| e.to_string())?;
            ensure!(
                count == oracle::naive_count(&trial.source, p, *r),
                "trial {t}: count {p:?} {r:?}"
            );
            let empty = trial.index.empty(p, *r).map_err(|e| e.to_string())?;
            ensure!(
                empty == oracle::naive_empty(&trial.source, p, *r),
                "trial {t}: empty {p:?} {r:?}"
            );
            ensure!(
                count == got.len() && empty == (count == 0),
                "trial {t}: inconsistent"
            );
            queries += 1;
            hits += !got.is_empty() as usize;
        }
    }
    Ok(format!(
        "{TRIALS} instances, {queries} queries, {hits} nonempty"
    ))
}

fn reductions_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut nonempty = [0usize; 3];
    for t in 0..TRIALS {
        let text = random_text(&mut rng, 512, ALPHABET);
        let n = text.len();
        let ix = PrssIndex::build(text.clone()).map_err(|e| e.to_string())?;
        ix.inner().check_invariants()?;
        for _ in 0..4 {
            let p = random_pattern(&mut rng, &text, ALPHABET);
            let (a, b) = random_range(&mut rng, 1, n as u64);
            let (a, b) = (a as usize, b as usize);
            let got = ix.query(&p, a, b).map_err(|e| e.to_string())?;
            let want = oracle::naive_prss(&text, &p, a, b);
            ensure!(
                got == want,
                "prss trial {t}: {p:?} [{a},{b}]: {got:?} != {want:?}"
            );
            nonempty[0] += !got.is_empty() as usize;
        }
    }

    for t in 0..TRIALS {
        let text = random_text(&mut rng, 512, ALPHABET);
        let n = text.len();
        let pi: Vec<(usize, usize)> = (0..rng.gen_range(0..=16))
            .map(|_| {
                let (s, f) = random_range(&mut rng, 1, n as u64);
                (s as usize, f as usize)
            })
            .collect();
        let ix = IntervalIndex::build(text.clone(), IntervalSet::new(pi.clone()))
            .map_err(|e| e.to_string())?;
        ix.inner().check_invariants()?;
        for _ in 0..4 {
            let p = random_pattern(&mut rng, &text, ALPHABET);
            let (a, b) = random_range(&mut rng, 1, n as u64);
            let (a, b) = (a as usize, b as usize);
            let got = ix.query(&p, a, b).map_err(|e| e.to_string())?;
            let want = oracle::naive_interval(&text, &pi, &p, a, b);
            ensure!(got == want, "interval trial {t}: {p:?} [{a},{b}] {pi:?}");
            nonempty[1] += !got.is_empty() as usize;
        }
    }

    for t in 0..TRIALS {
        let text = random_text(&mut rng, 512, ALPHABET);
        let gap = rng.gen_range(0..=8);
        let ix = GapIndex::build(text.clone(), gap).map_err(|e| e.to_string())?;
        ix.inner().check_invariants()?;
        ix.reverse_index().check_structure()?;
        for _ in 0..4 {
            let (m1, m2) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let (p1, p2) = if rng.gen_bool(0.5) && m1 + gap + m2 <= text.len() {
                // a window that really occurs
                let i = rng.gen_range(0..=text.len() - (m1 + gap + m2));
                let j = i + m1 + gap;
                (text[i..i + m1].to_vec(), text[j..j + m2].to_vec())
            } else {
                let mut gen = |m: usize| -> Vec<u8> {
                    (0..m)
                        .map(|_| *ALPHABET.choose(&mut rng).unwrap())
                        .collect()
                };
                (gen(m1), gen(m2))
            };
            let got = ix.query(&p1, &p2).map_err(|e| e.to_string())?;
            let want = oracle::naive_gap(&text, gap, &p1, &p2);
            ensure!(
                got == want,
                "gap trial {t}: d={gap} {p1:?} {p2:?}: {got:?} != {want:?}"
            );
            ensure!(
                got.windows(2).all(|w| w[0] < w[1]),
                "gap output not increasing"
            );
            nonempty[2] += !got.is_empty() as usize;
        }
    }
    Ok(format!(
        "{TRIALS} instances each; nonempty answers prss={} interval={} gap={}",
        nonempty[0], nonempty[1], nonempty[2]
    ))
}

fn path_equivalence() -> Outcome {
    let (mut top, mut bottom) = (0, 0);
    for (t, trial) in core_workload(0x5eed_0001).enumerate() {
        for (p, r) in &trial.queries {
            let (auto, stats) = trial
                .index
                .report_routed(p, *r, Routing::Auto)
                .map_err(|e| e.to_string())?;
            let (forced, fstats) = trial
                .index
                .report_routed(p, *r, Routing::Force2D)
                .map_err(|e| e.to_string())?;
            ensure!(auto == forced, "trial {t}: paths disagree on {p:?} {r:?}");
            ensure!(stats.occ == auto.len(), "trial {t}: occ stat wrong");
            let (c1, _) = trial.index.count_routed(p, *r, Routing::Auto).unwrap();
            let (c2, _) = trial.index.count_routed(p, *r, Routing::Force2D).unwrap();
            let (e1, _) = trial.index.empty_routed(p, *r, Routing::Auto).unwrap();
            let (e2, _) = trial.index.empty_routed(p, *r, Routing::Force2D).unwrap();
            ensure!(
                c1 == c2 && e1 == e2,
                "trial {t}: count/empty paths disagree"
            );
            match stats.path {
                QueryPath::TopTree1D => top += 1,
                QueryPath::Bottom2D => bottom += 1,
                QueryPath::NoLocus => {
                    ensure!(
                        fstats.path == QueryPath::NoLocus,
                        "forced path found a locus"
                    )
                }
            }
        }
    }
    ensure!(
        top >= 100 && bottom >= 100,
        "top={top} bottom={bottom}, need >= 100 each"
    );
    Ok(format!("TopTree1D={top} Bottom2D={bottom}"))
}

fn structural_invariants() -> Outcome {
    let mut builds = 0;
    let mut max_ratio: f64 = 0.0;
    for (t, trial) in core_workload(0x5eed_0001).enumerate() {
        trial
            .index
            .check_invariants()
            .map_err(|e| format!("trial {t}: {e}"))?;
        let n = trial.source.len();
        for s in trial.index.top_level_sizes() {
            ensure!(s <= n, "trial {t}: level holds {s} > n = {n}");
            max_ratio = max_ratio.max(s as f64 / n as f64);
        }
        builds += 1;
    }
    Ok(format!(
        "{builds} builds clean; max per-level store fill {max_ratio:.2} n"
    ))
}

fn serialization_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut files = 0;
    for t in 0..100 {
        let text = random_text(&mut rng, 512, ALPHABET);
        let n = text.len();
        let labels = (0..n).map(|_| rng.gen_range(0..=1024)).collect();
        let src = LabeledString::new(text.clone(), labels, 1024).unwrap();
        let pi: Vec<_> = (0..rng.gen_range(0..=16))
            .map(|_| {
                let (s, f) = random_range(&mut rng, 1, n as u64);
                (s as usize, f as usize)
            })
            .collect();
        let gap = rng.gen_range(0..=8);
        let indexes = [
            AnyIndex::Srr(SrrIndex::build(src, CutoffPolicy::Reporting).unwrap()),
            AnyIndex::Prss(PrssIndex::build(text.clone()).unwrap()),
            AnyIndex::Interval(IntervalIndex::build(text.clone(), IntervalSet::new(pi)).unwrap()),
            AnyIndex::Gap(GapIndex::build(text.clone(), gap).unwrap()),
        ];
        for ix in indexes {
            let bytes = ix.to_bytes();
            let back = AnyIndex::from_bytes(&bytes).map_err(|e| format!("trial {t}: {e}"))?;
            ensure!(
                back.to_bytes() == bytes,
                "trial {t}: {} bytes differ",
                ix.kind()
            );
            for _ in 0..4 {
                let p = random_pattern(&mut rng, &text, ALPHABET);
                let bound = ix.srr().bound();
                let (a, b) = random_range(&mut rng, 0, bound);
                let r = LabelRange::new(a, b).unwrap();
                ensure!(
                    back.srr().report(&p, r) == ix.srr().report(&p, r)
                        && back.srr().count(&p, r) == ix.srr().count(&p, r)
                        && back.srr().empty(&p, r) == ix.srr().empty(&p, r),
                    "trial {t}: {} answers differ after reload",
                    ix.kind()
                );
                match (&ix, &back) {
                    (AnyIndex::Gap(g1), AnyIndex::Gap(g2)) if !p.is_empty() => {
                        ensure!(
                            g1.query(&p, b"a") == g2.query(&p, b"a"),
                            "gap reload differs"
                        );
                    }
                    (AnyIndex::Prss(x), AnyIndex::Prss(y)) => {
                        let (a, b) = random_range(&mut rng, 1, n as u64);
                        let (a, b) = (a as usize, b as usize);
                        ensure!(
                            x.query(&p, a, b) == y.query(&p, a, b),
                            "prss reload differs"
                        );
                    }
                    (AnyIndex::Interval(x), AnyIndex::Interval(y)) => {
                        let (a, b) = random_range(&mut rng, 1, n as u64);
                        let (a, b) = (a as usize, b as usize);
                        ensure!(
                            x.query(&p, a, b) == y.query(&p, a, b),
                            "interval reload differs"
                        );
                    }
                    _ => {}
                }
            }
            files += 1;
        }
    }
    Ok(format!("{files} files re-serialized byte-identically"))
}

/// Zipf-weighted words from a synthetic vocabulary, with punctuation and
/// capitalised sentence starts.
fn english_like(bytes: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
    const COMMON: &[&str] = &[
        "the", "of", "and", "to", "in", "a", "is", "that", "for", "it", "as", "was", "with", "be",
        "by", "on", "not", "he", "this", "are", "or", "his", "from", "at", "which", "but", "have",
        "an", "had", "they", "you", "were", "their", "one", "all", "we", "can", "her", "has",
        "there", "been", "if", "more", "when", "will", "would", "who", "so", "no",
    ];
    const SYLLABLES: &[&str] = &[
        "ar", "ban", "cor", "de", "en", "fal", "gri", "hor", "in", "jo", "ka", "lim", "mor", "nes",
        "o", "per", "qua", "ris", "sta", "tion", "ul", "ver", "wal", "xe", "yo", "zen", "ment",
        "ing", "ly", "ous", "er", "est",
    ];
    let mut vocab: Vec<String> = COMMON.iter().map(|s| s.to_string()).collect();
    while vocab.len() < 20_000 {
        let k = rng.gen_range(1..=4);
        vocab.push((0..k).map(|_| *SYLLABLES.choose(rng).unwrap()).collect());
    }
    let weights: Vec<f64> = (1..=vocab.len()).map(|r| 1.0 / r as f64).collect();
    let pick = WeightedIndex::new(&weights).unwrap();
    let mut out = Vec::with_capacity(bytes + 32);
    let mut sentence_start = true;
    while out.len() < bytes {
        let w = vocab[pick.sample(rng)].as_bytes();
        if sentence_start {
            out.push(w[0].to_ascii_uppercase());
            out.extend_from_slice(&w[1..]);
        } else {
            out.extend_from_slice(w);
        }
        sentence_start = false;
        match rng.gen_range(0..100) {
            0..=5 => {
                out.extend_from_slice(b". ");
                sentence_start = true;
            }
            6..=10 => out.extend_from_slice(b", "),
            11 => out.push(b'\n'),
            _ => out.push(b' '),
        }
    }
    out.truncate(bytes);
    out
}

fn performance_gate() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let text = english_like(1 << 20, &mut rng);
    let n = text.len();
    let started = Instant::now();
    let ix = PrssIndex::build(text.clone()).map_err(|e| e.to_string())?;
    let build = started.elapsed();
    ensure!(build < Duration::from_secs(30), "build took {build:?}");

    let mut patterns = Vec::new();
    let mut attempts = 0;
    while patterns.len() < 1000 && attempts < 100_000 {
        attempts += 1;
        let s = rng.gen_range(0..n - 10);
        let p = &text[s..s + 10];
        if ix.count(p, 1, n).unwrap() <= 100 {
            patterns.push(p.to_vec());
        }
    }
    ensure!(
        patterns.len() == 1000,
        "only {} patterns with occ <= 100",
        patterns.len()
    );
    let mut lat = Vec::with_capacity(patterns.len());
    let mut paths = [0usize; 2];
    for p in &patterns {
        let (a, b) = random_range(&mut rng, 1, n as u64);
        let r = LabelRange::new(a, b).unwrap();
        let t = Instant::now();
        let (hits, stats) = ix.inner().report_with_stats(p, r).unwrap();
        lat.push(t.elapsed());
        std::hint::black_box(hits);
        paths[(stats.path == QueryPath::Bottom2D) as usize] += 1;
    }
    lat.sort_unstable();
    let median = lat[lat.len() / 2];
    ensure!(
        median < Duration::from_millis(1),
        "median report latency {median:?}"
    );
    Ok(format!(
        "n={n}, tau={}, build {:.2?}, median report {:.2?} (1D {} / 2D {})",
        ix.inner().tau(),
        build,
        median,
        paths[0],
        paths[1]
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        (
            "gapped-query worked examples",
            gap_worked_examples,
            Some(1.0),
        ),
        ("oracle equivalence, core", core_equivalence, Some(60.0)),
        (
            "oracle equivalence, reductions",
            reductions_equivalence,
            Some(120.0),
        ),
        ("path equivalence", path_equivalence, None),
        ("structural invariants", structural_invariants, None),
        ("serialization round-trip", serialization_round_trip, None),
        ("desk-scale performance", performance_gate, None),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let started = Instant::now();
        let mut outcome =
            std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = started.elapsed().as_secs_f64();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if secs >= limit {
                outcome = Err(format!("took {secs:.2}s, limit {limit}s"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS  {name} ({secs:.2}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.2}s): {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
