//! Diagonal- and vertical-line histograms of the symbolic recurrence plot.
//!
//! `RP^m(n)` is the `n x n` matrix with `R_ij = 1` iff the m-grams
//! `x_i ... x_{i+m-1}` and `x_j ... x_{j+m-1}` coincide. A diagonal line is a
//! maximal run of ones along an off-main diagonal; runs cut off by the lower
//! or right edge of the plot count at their truncated length. Coordinates in
//! [`StartPoint`] are 1-based.
//!
//! The streaming scanner walks one diagonal at a time over a bit-packed copy
//! of the word, so memory stays O(n) and only mismatching cells are visited
//! individually. [`reference_scan`] is the naive O(n^2) enumeration used to
//! check it.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pdseq::BinaryWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineKind {
    Diagonal,
    Vertical,
}

/// Exact line counts per exact length for one `(n, m)` plot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineHistogram {
    pub n: u64,
    pub m: u64,
    pub kind: LineKind,
    counts: BTreeMap<u64, u64>,
}

impl LineHistogram {
    pub fn new(n: u64, m: u64, kind: LineKind) -> Self {
        LineHistogram { n, m, kind, counts: BTreeMap::new() }
    }

    /// Builds a histogram from `(length, count)` pairs; zero counts are dropped.
    ///
    /// # Panics
    /// If a length lies outside `1..=n`.
    pub fn from_counts(n: u64, m: u64, kind: LineKind, counts: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut h = LineHistogram::new(n, m, kind);
        for (len, c) in counts {
            h.add(len, c);
        }
        h
    }

    pub fn add(&mut self, len: u64, count: u64) {
        if count == 0 {
            return;
        }
        assert!((1..=self.n).contains(&len), "line length {len} outside 1..={}", self.n);
        *self.counts.entry(len).or_insert(0) += count;
    }

    /// `NLINES_len`.
    pub fn count(&self, len: u64) -> u64 {
        self.counts.get(&len).copied().unwrap_or(0)
    }

    /// `NLINESS_len`: lines of length at least `len`.
    pub fn count_at_least(&self, len: u64) -> u64 {
        self.counts.range(len..).map(|(_, c)| c).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&l, &c)| (l, c))
    }

    pub fn lengths(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total_lines(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Recurrences covered by the lines, `sum l * NLINES_l`.
    pub fn total_recurrences(&self) -> u64 {
        self.counts.iter().map(|(l, c)| l * c).sum()
    }

    /// Longest line, 0 when empty.
    pub fn lmax(&self) -> u64 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }
}

/// A line start `(i, j)` (1-based) together with the line's length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StartPoint {
    pub i: u64,
    pub j: u64,
    pub length: u64,
}

impl StartPoint {
    pub fn transpose(self) -> StartPoint {
        StartPoint { i: self.j, j: self.i, length: self.length }
    }

    /// Whether the line stops inside the `n x n` plot rather than at its edge.
    pub fn is_closed(&self, n: u64) -> bool {
        self.i.max(self.j) + self.length <= n
    }

    /// Closed and not starting on the first row or column.
    pub fn is_interior(&self, n: u64) -> bool {
        self.i.min(self.j) >= 2 && self.is_closed(n)
    }
}

/// Longest diagonal line in a histogram.
pub fn lmax(hist: &LineHistogram) -> u64 {
    hist.lmax()
}

fn validate(x: &BinaryWord, n: u64, m: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::PlotTooSmall(n));
    }
    if m == 0 {
        return Err(Error::ZeroEmbedding);
    }
    let needed = n + m - 1;
    if (x.len() as u64) < needed {
        return Err(Error::WordTooShort { n, m, needed, got: x.len() as u64 });
    }
    Ok(())
}

/// Word packed 64 symbols per `u64`, least significant bit first.
struct PackedWord {
    words: Vec<u64>,
}

impl PackedWord {
    fn new(symbols: &[u8]) -> Self {
        let mut words = vec![0u64; symbols.len() / 64 + 2];
        for (p, &s) in symbols.iter().enumerate() {
            words[p / 64] |= u64::from(s) << (p % 64);
        }
        PackedWord { words }
    }

    /// Symbols `p .. p + 64` as a bit mask.
    #[inline]
    fn window(&self, p: usize) -> u64 {
        let (w, s) = (p / 64, p % 64);
        if s == 0 {
            self.words[w]
        } else {
            (self.words[w] >> s) | (self.words[w + 1] << (64 - s))
        }
    }
}

/// Calls `emit(start, len)` (0-based row of the upper copy) for each maximal
/// line on diagonal `delta` of `RP^m(n)`, upper triangle.
#[inline]
fn scan_diagonal(bits: &PackedWord, n: usize, m: usize, delta: usize, mut emit: impl FnMut(usize, usize)) {
    let rows = n - delta;
    let span = rows + m - 1;
    // equality runs of x_p vs x_{p + delta} over p in [0, span) become m-gram
    // matches over [start, end - m + 1), clipped to the plot
    let mut flush = |start: usize, end: usize| {
        if end >= start + m && start < rows {
            let stop = (end + 1 - m).min(rows);
            emit(start, stop - start);
        }
    };
    let mut run_start = 0usize;
    let mut chunk = 0usize;
    while chunk < span {
        let mut diff = bits.window(chunk) ^ bits.window(chunk + delta);
        let valid = span - chunk;
        if valid < 64 {
            diff &= (1u64 << valid) - 1;
        }
        while diff != 0 {
            let p = chunk + diff.trailing_zeros() as usize;
            flush(run_start, p);
            run_start = p + 1;
            diff &= diff - 1;
        }
        chunk += 64;
    }
    flush(run_start, span);
}

/// Visits every diagonal line of `RP^m(n)` with `i < j`, in order of
/// increasing `j - i` and then `i`. The transposed lines are implied.
pub fn for_each_diagonal_line(x: &BinaryWord, n: u64, m: u64, mut visit: impl FnMut(StartPoint)) -> Result<()> {
    validate(x, n, m)?;
    let bits = PackedWord::new(x.symbols());
    let (nu, mu) = (n as usize, m as usize);
    for delta in 1..nu {
        scan_diagonal(&bits, nu, mu, delta, |s, len| {
            visit(StartPoint { i: s as u64 + 1, j: (s + delta) as u64 + 1, length: len as u64 });
        });
    }
    Ok(())
}

/// Exact `NLINES^m_l(n)` for every `l`, both triangles.
///
/// Diagonals are scanned in parallel on the current rayon pool; the merge is
/// an integer sum, so the result does not depend on the worker count.
pub fn diagonal_histogram(x: &BinaryWord, n: u64, m: u64) -> Result<LineHistogram> {
    validate(x, n, m)?;
    let bits = PackedWord::new(x.symbols());
    let (nu, mu) = (n as usize, m as usize);
    let dense = (1..nu)
        .into_par_iter()
        .with_min_len(32)
        .fold(
            || vec![0u64; nu + 1],
            |mut acc, delta| {
                scan_diagonal(&bits, nu, mu, delta, |_, len| acc[len] += 1);
                acc
            },
        )
        .reduce(
            || vec![0u64; nu + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(LineHistogram::from_counts(
        n,
        m,
        LineKind::Diagonal,
        dense.into_iter().enumerate().map(|(len, c)| (len as u64, 2 * c)),
    ))
}

/// Rows `0..n` grouped by m-gram, each group sorted ascending.
fn mgram_classes(x: &BinaryWord, n: usize, m: usize) -> Vec<Vec<usize>> {
    let s = x.symbols();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| s[a..a + m].cmp(&s[b..b + m]).then(a.cmp(&b)));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for p in idx {
        match classes.last_mut() {
            Some(c) if s[c[0]..c[0] + m] == s[p..p + m] => c.push(p),
            _ => classes.push(vec![p]),
        }
    }
    classes
}

/// Number of off-diagonal recurrent cells of `RP^m(n)`, counted by grouping
/// equal m-grams rather than by scanning lines.
pub fn count_recurrences(x: &BinaryWord, n: u64, m: u64) -> Result<u64> {
    validate(x, n, m)?;
    Ok(mgram_classes(x, n as usize, m as usize).iter().map(|c| (c.len() as u64) * (c.len() as u64 - 1)).sum())
}

/// Vertical lines split by whether they reach the bottom row of the plot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerticalSplit {
    /// Runs that end strictly above row `n`.
    pub closed: LineHistogram,
    /// Runs containing row `n`, counted at their truncated length.
    pub bottom_edge: LineHistogram,
}

impl VerticalSplit {
    pub fn merged(&self) -> LineHistogram {
        let mut all = self.closed.clone();
        for (l, c) in self.bottom_edge.iter() {
            all.add(l, c);
        }
        all
    }
}

/// Vertical runs split into closed and bottom-edge runs. Runs pass through
/// the main-diagonal cell `(j, j)`, which is always recurrent.
pub fn vertical_split(x: &BinaryWord, n: u64, m: u64) -> Result<VerticalSplit> {
    validate(x, n, m)?;
    let mut closed = LineHistogram::new(n, m, LineKind::Vertical);
    let mut bottom_edge = LineHistogram::new(n, m, LineKind::Vertical);
    // Column j meets exactly the rows of its own m-gram class, so every
    // column of a class has the same runs: maximal blocks of consecutive rows.
    for class in mgram_classes(x, n as usize, m as usize) {
        let columns = class.len() as u64;
        let mut start = 0;
        for k in 1..=class.len() {
            if k == class.len() || class[k] != class[k - 1] + 1 {
                let len = (k - start) as u64;
                if class[k - 1] == n as usize - 1 {
                    bottom_edge.add(len, columns);
                } else {
                    closed.add(len, columns);
                }
                start = k;
            }
        }
    }
    Ok(VerticalSplit { closed, bottom_edge })
}

/// Exact vertical-line counts per length; bottom-edge runs count at their
/// truncated length.
pub fn vertical_histogram(x: &BinaryWord, n: u64, m: u64) -> Result<LineHistogram> {
    Ok(vertical_split(x, n, m)?.merged())
}

/// Naive enumeration of all diagonal lines of `RP^m(n)`, both triangles,
/// sorted by start point. Meant for `n` up to a few thousand.
pub fn reference_scan(x: &BinaryWord, n: u64, m: u64) -> Result<Vec<StartPoint>> {
    validate(x, n, m)?;
    let s = x.symbols();
    let (n, m) = (n as usize, m as usize);
    let rec = |i: usize, j: usize| s[i..i + m] == s[j..j + m];
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !rec(i, j) || (i.min(j) >= 1 && rec(i - 1, j - 1)) {
                continue;
            }
            let mut len = 1;
            while i.max(j) + len < n && rec(i + len, j + len) {
                len += 1;
            }
            out.push(StartPoint { i: i as u64 + 1, j: j as u64 + 1, length: len as u64 });
        }
    }
    Ok(out)
}

/// Histogram of a list of start points.
pub fn histogram_of(points: &[StartPoint], n: u64, m: u64) -> LineHistogram {
    let mut h = LineHistogram::new(n, m, LineKind::Diagonal);
    for p in points {
        h.add(p.length, 1);
    }
    h
}
