//! Seeded random workloads for `verify` and `bench`.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::cli::Mode;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone)]
pub struct WorkloadSpec {
    pub trials: usize,
    pub max_len: usize,
    pub alphabet: Vec<u8>,
    pub label_bound: u64,
    pub seed: u64,
    pub mode: Mode,
    /// Fixed text used by every trial instead of a random one.
    pub text: Option<Vec<u8>>,
}

impl WorkloadSpec {
    pub fn validate(&self) -> CliResult {
        if self.trials == 0 {
            return Err(CliError::Usage("--trials must be at least 1".into()));
        }
        if self.max_len == 0 {
            return Err(CliError::Usage("--max-len must be at least 1".into()));
        }
        if self.alphabet.is_empty() {
            return Err(CliError::Usage("--alphabet must not be empty".into()));
        }
        if self.text.as_ref().is_some_and(|t| t.is_empty()) {
            return Err(CliError::Validation("text is empty".into()));
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn text(&self, rng: &mut ChaCha8Rng) -> Vec<u8> {
        match &self.text {
            Some(t) => t.clone(),
            None => random_text(rng, self.max_len, &self.alphabet),
        }
    }
}

pub fn random_text(rng: &mut ChaCha8Rng, max_len: usize, alphabet: &[u8]) -> Vec<u8> {
    let n = rng.gen_range(1..=max_len);
    random_bytes(rng, n, alphabet)
}

pub fn random_bytes(rng: &mut ChaCha8Rng, len: usize, alphabet: &[u8]) -> Vec<u8> {
    (0..len)
        .map(|_| *alphabet.choose(rng).expect("nonempty alphabet"))
        .collect()
}

/// Half the time a substring of `text` (length up to 16), otherwise random
/// bytes (length up to 8).
pub fn random_pattern(rng: &mut ChaCha8Rng, text: &[u8], alphabet: &[u8]) -> Vec<u8> {
    if rng.gen_bool(0.5) {
        let len = rng.gen_range(0..=16.min(text.len()));
        let start = rng.gen_range(0..=text.len() - len);
        text[start..start + len].to_vec()
    } else {
        let len = rng.gen_range(0..=8);
        random_bytes(rng, len, alphabet)
    }
}

/// A random closed range within `[lo, hi]`.
pub fn random_range(rng: &mut ChaCha8Rng, lo: u64, hi: u64) -> (u64, u64) {
    let a = rng.gen_range(lo..=hi);
    let b = rng.gen_range(lo..=hi);
    (a.min(b), a.max(b))
}
