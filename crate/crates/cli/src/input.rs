//! Reading texts, label files, interval files, ranges and patterns.

use std::ffi::OsStr;
use std::path::Path;

use crate::error::{CliError, CliResult};

pub fn read_file(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn read_labels(path: &Path) -> CliResult<Vec<u64>> {
    let raw = read_file(path)?;
    let raw = String::from_utf8(raw)
        .map_err(|_| CliError::Validation(format!("{}: not valid UTF-8", path.display())))?;
    raw.split_whitespace()
        .enumerate()
        .map(|(i, tok)| {
            tok.parse::<u64>().map_err(|_| {
                CliError::Validation(format!(
                    "{}: label {} is not a number: {tok:?}",
                    path.display(),
                    i + 1
                ))
            })
        })
        .collect()
}

pub fn read_intervals(path: &Path) -> CliResult<Vec<(usize, usize)>> {
    let raw = read_file(path)?;
    let raw = String::from_utf8(raw)
        .map_err(|_| CliError::Validation(format!("{}: not valid UTF-8", path.display())))?;
    let mut out = Vec::new();
    for (lineno, line) in raw.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[..] {
            [] => continue,
            [s, f] => match (s.parse(), f.parse()) {
                (Ok(s), Ok(f)) => out.push((s, f)),
                _ => {
                    return Err(CliError::Validation(format!(
                        "{}:{}: expected two integers",
                        path.display(),
                        lineno + 1
                    )))
                }
            },
            _ => {
                return Err(CliError::Validation(format!(
                    "{}:{}: expected \"s f\"",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    Ok(out)
}

/// Parses an inclusive range `a:b`.
pub fn parse_range(s: &str) -> CliResult<(u64, u64)> {
    let bad = || CliError::Usage(format!("malformed range {s:?}, expected a:b"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Pattern bytes from an argument, raw or hex-encoded.
pub fn pattern_bytes(arg: &OsStr, hex: bool) -> CliResult<Vec<u8>> {
    let raw = os_bytes(arg);
    if hex {
        hex::decode(&raw).map_err(|e| CliError::Usage(format!("bad hex pattern: {e}")))
    } else {
        Ok(raw)
    }
}

#[cfg(unix)]
fn os_bytes(s: &OsStr) -> Vec<u8> {
    use std::os::unix::ffi::OsStrExt;
    s.as_bytes().to_vec()
}

#[cfg(not(unix))]
fn os_bytes(s: &OsStr) -> Vec<u8> {
    s.to_string_lossy().into_owned().into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1:6").unwrap(), (1, 6));
        assert_eq!(parse_range("0:0").unwrap(), (0, 0));
        for bad in ["", "1", "1-6", "a:b", "6:1", ":3", "-1:2"] {
            assert!(matches!(parse_range(bad), Err(CliError::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn patterns() {
        assert_eq!(pattern_bytes(OsStr::new("ana"), false).unwrap(), b"ana");
        assert_eq!(
            pattern_bytes(OsStr::new("00ff41"), true).unwrap(),
            vec![0, 255, b'A']
        );
        assert!(pattern_bytes(OsStr::new("0g"), true).is_err());
    }
}
