//! Structural checks of the recurrence plot, each reporting the first
//! counterexample it meets.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use pdrqa::oracle;
use pdrqa::pdseq::pd_prefix_substitution;
use pdrqa::rplines::{self, StartPoint};
use pdrqa::BinaryWord;
use rayon::prelude::*;

use crate::args::VerifyArgs;

/// A start point, line length and plot that contradict a suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counterexample {
    pub i: u64,
    pub j: u64,
    pub len: u64,
    pub n: u64,
    pub m: u64,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "i={} j={} l={} n={} m={}", self.i, self.j, self.len, self.n, self.m)
    }
}

struct SuiteResult {
    name: &'static str,
    summary: String,
    failure: Option<Counterexample>,
}

/// Prefix of the sequence, optionally with one letter flipped.
fn word(len: u64, corrupt_at: Option<u64>) -> BinaryWord {
    let x = pd_prefix_substitution(len as usize);
    match corrupt_at {
        Some(p) if p <= len => x.with_flipped(p as usize),
        _ => x,
    }
}

/// Start points in the `bound` grid, against a scan of a prefix long enough
/// that each of their lines ends inside it.
fn line_starts(bound: u64, corrupt_at: Option<u64>) -> SuiteResult {
    let n = 2 * bound + 176;
    let x = word(n, corrupt_at);
    let mut actual = vec![0u64; ((bound + 1) * (bound + 1)) as usize];
    let idx = |i: u64, j: u64| (i * (bound + 1) + j) as usize;
    for p in rplines::reference_scan(&x, n, 1).expect("prefix covers plot") {
        if p.i <= bound && p.j <= bound {
            actual[idx(p.i, p.j)] = p.length;
        }
    }
    let failure = (1..=bound).into_par_iter().find_map_first(|i| {
        for j in (1..=bound).filter(|&j| j != i) {
            let found = actual[idx(i, j)];
            for len in 1..=bound {
                if oracle::is_line_start(i, j, len).expect("valid start") != (found == len) {
                    return Some(Counterexample { i, j, len, n, m: 1 });
                }
            }
        }
        None
    });
    let checks = bound * (bound - 1) * bound;
    SuiteResult { name: "starts", summary: format!("{checks} start/length pairs, grid {bound}, prefix {n}"), failure }
}

/// Every line away from the plot boundary has an allowed length.
fn allowed_lengths(n: u64, corrupt_at: Option<u64>) -> SuiteResult {
    let x = word(n, corrupt_at);
    let mut interior = 0u64;
    let mut failure = None;
    rplines::for_each_diagonal_line(&x, n, 1, |p| {
        if p.is_interior(n) {
            interior += 2;
            if failure.is_none() && !oracle::is_allowed_length(p.length) {
                failure = Some(Counterexample { i: p.i, j: p.j, len: p.length, n, m: 1 });
            }
        }
    })
    .expect("prefix covers plot");
    SuiteResult { name: "allowed", summary: format!("{interior} interior lines, n={n}"), failure }
}

/// Column `j` and start row of a closed vertical run of length `len`.
fn find_vertical_run(x: &BinaryWord, n: u64, m: u64, len: u64) -> Option<(u64, u64)> {
    let s = x.symbols();
    let (n, m) = (n as usize, m as usize);
    let rec = |i: usize, j: usize| s[i..i + m] == s[j..j + m];
    for j in 0..n {
        let mut i = 0;
        while i < n {
            if !rec(i, j) {
                i += 1;
                continue;
            }
            let start = i;
            while i < n && rec(i, j) {
                i += 1;
            }
            if i < n && (i - start) as u64 == len {
                return Some((start as u64 + 1, j as u64 + 1));
            }
        }
    }
    None
}

/// Vertical runs that end above the bottom row have the lengths of the
/// infinite plot.
fn vertical(n: u64, dims: &[u64], corrupt_at: Option<u64>) -> SuiteResult {
    let mut notes = Vec::new();
    let mut failure = None;
    for &m in dims {
        let x = word(n + m, corrupt_at);
        let split = rplines::vertical_split(&x, n, m).expect("prefix covers plot");
        let lengths: Vec<u64> = split.closed.lengths().collect();
        let expected = oracle::vertical_lengths(m);
        let cut: Vec<u64> = split.bottom_edge.lengths().collect();
        notes.push(format!("m={m} lengths {lengths:?} (cut by last row: {cut:?})"));
        if failure.is_none() {
            if let Some(&bad) = lengths.iter().find(|l| !expected.contains(l)) {
                let (i, j) = find_vertical_run(&x, n, m, bad).unwrap_or((0, 0));
                failure = Some(Counterexample { i, j, len: bad, n, m });
            }
        }
    }
    SuiteResult { name: "vertical", summary: notes.join("; "), failure }
}

fn upper_closed(x: &BinaryWord, n: u64, m: u64) -> BTreeSet<StartPoint> {
    let mut out = BTreeSet::new();
    rplines::for_each_diagonal_line(x, n, m, |p| {
        if p.is_closed(n) {
            out.insert(p);
        }
    })
    .expect("prefix covers plot");
    out
}

/// Closed lines of the `m`-embedded plot are the closed lines of length at
/// least `m` of the plain plot of size `n + m - 1`, shortened by `m - 1`.
fn embedding_shift(n: u64, dims: &[u64], corrupt_at: Option<u64>) -> SuiteResult {
    let mut failure = None;
    let mut compared = 0usize;
    for &m in dims.iter().filter(|&&m| m >= 2) {
        let x = word(n + m, corrupt_at);
        let embedded = upper_closed(&x, n, m);
        let plain: BTreeSet<StartPoint> = upper_closed(&x, n + m - 1, 1)
            .into_iter()
            .filter(|p| p.length >= m)
            .map(|p| StartPoint { length: p.length - (m - 1), ..p })
            .collect();
        compared += embedded.len();
        if let Some(p) = embedded.symmetric_difference(&plain).next() {
            failure.get_or_insert(Counterexample { i: p.i, j: p.j, len: p.length, n, m });
        }
    }
    SuiteResult {
        name: "embedding",
        summary: format!(
            "{compared} closed lines, n={n}, m in {:?}",
            dims.iter().filter(|&&m| m >= 2).collect::<Vec<_>>()
        ),
        failure,
    }
}

/// Runs all suites. Returns the report and the first failing suite with
/// its counterexample, if any.
pub fn verify(args: &VerifyArgs) -> (String, Option<(&'static str, Counterexample)>) {
    let dims: Vec<u64> = match args.m {
        Some(m) => vec![m],
        None => vec![1, 2, 3, 4],
    };
    let shift_n = args.n.min(2048);
    let suites: [Box<dyn Fn() -> SuiteResult>; 4] = [
        Box::new(|| line_starts(args.bound, args.corrupt_at)),
        Box::new(|| allowed_lengths(args.n, args.corrupt_at)),
        Box::new(|| vertical(args.n, &dims, args.corrupt_at)),
        Box::new(|| embedding_shift(shift_n, &dims, args.corrupt_at)),
    ];
    let mut report = String::new();
    let mut first_failure = None;
    for suite in suites {
        let start = Instant::now();
        let r = suite();
        let secs = start.elapsed().as_secs_f64();
        let status = if r.failure.is_some() { "FAIL" } else { "PASS" };
        write!(report, "{status} {:<10} {secs:>8.3}s  {}", r.name, r.summary).expect("writing to a string");
        if let Some(c) = r.failure {
            write!(report, "  counterexample {c}").expect("writing to a string");
            first_failure.get_or_insert((r.name, c));
        }
        report.push('\n');
    }
    match first_failure {
        None => report.push_str("PASS\n"),
        Some((name, _)) => report.push_str(&format!("FAIL first failing suite: {name}\n")),
    }
    (report, first_failure)
}
