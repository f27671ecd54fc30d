//! The period-doubling sequence `x = 0100 0101 0100 0100 ...`.
//!
//! **All positions are 1-based**: `x_1 = 0`, `x_2 = 1`. Index 0 is never a
//! position, and every function taking an index treats it that way.
//!
//! Three independent constructions are provided (2-adic valuation parity,
//! fixed point of the substitution `0 -> 01, 1 -> 00`, and the Toeplitz
//! construction with patterns `(0*)`, `(1*)`), together with the arithmetic
//! position sets `M_1` and `N_k` and their affine images.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite word over `{0, 1}`. Positions are 1-based; the empty word is valid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&s| s > 1) {
            return Err(Error::InvalidSymbol(bad));
        }
        Ok(BinaryWord(symbols))
    }

    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.0
    }

    /// Symbol at 1-based position `i`.
    pub fn at(&self, i: usize) -> Option<u8> {
        i.checked_sub(1).and_then(|p| self.0.get(p).copied())
    }

    /// The prefix `w_1 ... w_n` (the whole word if it is shorter).
    pub fn prefix(&self, n: usize) -> BinaryWord {
        BinaryWord(self.0[..n.min(self.0.len())].to_vec())
    }

    /// Copy with the symbol at 1-based position `i` complemented.
    ///
    /// # Panics
    /// If `i` is not a position of the word.
    pub fn with_flipped(&self, i: usize) -> BinaryWord {
        let mut out = self.0.clone();
        out[i - 1] ^= 1;
        BinaryWord(out)
    }

    pub fn is_prefix_of(&self, other: &BinaryWord) -> bool {
        other.0.starts_with(&self.0)
    }

    /// 1-based positions `i` with `w = self_i ... self_{i+|w|-1}`.
    pub fn occurrences<'a>(&'a self, w: &'a BinaryWord) -> impl Iterator<Item = usize> + 'a {
        let (hay, needle) = (&self.0, &w.0);
        let upper = (hay.len() + 1).saturating_sub(needle.len());
        (0..upper).filter(move |&p| hay[p..p + needle.len()] == needle[..]).map(|p| p + 1)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&b| char::from(b'0' + b)).collect();
        f.write_str(&s)
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.bytes()
            .map(|c| match c {
                b'0' | b'1' => Ok(c - b'0'),
                other => Err(Error::InvalidSymbol(other)),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinaryWord)
    }
}

impl AsRef<[u8]> for BinaryWord {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

/// 2-adic valuation of a positive integer.
#[inline]
pub fn valuation(i: u64) -> u32 {
    i.trailing_zeros()
}

/// `x_i`: the parity of the 2-adic valuation of `i`.
pub fn pd_letter(i: u64) -> Result<u8> {
    if i == 0 {
        return Err(Error::ZeroIndex);
    }
    Ok((valuation(i) & 1) as u8)
}

/// `x_1 ... x_n` from the valuation definition, one index at a time.
pub fn pd_prefix_valuation(n: usize) -> BinaryWord {
    BinaryWord((1..=n as u64).map(|i| (valuation(i) & 1) as u8).collect())
}

/// `x_1 ... x_n` as a prefix of the fixed point of `0 -> 01, 1 -> 00`.
///
/// Uses the block form of the substitution: `xi^{k+1}(0) = xi^k(0) xi^k(1)`,
/// and `xi^k(1)` differs from `xi^k(0)` only in its last letter.
pub fn pd_prefix_substitution(n: usize) -> BinaryWord {
    if n == 0 {
        return BinaryWord::empty();
    }
    let mut w = Vec::with_capacity(n.next_power_of_two());
    w.push(0u8);
    while w.len() < n {
        let half = w.len();
        w.extend_from_within(..half);
        *w.last_mut().expect("nonempty") ^= 1;
    }
    w.truncate(n);
    BinaryWord(w)
}

/// `x_1 ... x_n` by the Toeplitz construction.
///
/// Round `r` writes `p_r` into every other remaining hole, starting with the
/// first; `p_0 = 0` and the pattern symbol alternates between rounds.
pub fn pd_prefix_toeplitz(n: usize) -> BinaryWord {
    let mut out = vec![u8::MAX; n];
    let mut holes: Vec<usize> = (0..n).collect();
    let mut symbol = 0u8;
    while !holes.is_empty() {
        for &h in holes.iter().step_by(2) {
            out[h] = symbol;
        }
        holes = holes.into_iter().skip(1).step_by(2).collect();
        symbol ^= 1;
    }
    BinaryWord(out)
}

/// `xi^iterations(w)` with `xi(a) = 0 a-bar`.
pub fn substitution_apply(w: &BinaryWord, iterations: u32) -> BinaryWord {
    let mut cur = w.0.clone();
    for _ in 0..iterations {
        cur = cur.iter().flat_map(|&a| [0, a ^ 1]).collect();
    }
    BinaryWord(cur)
}

/// `i` is in `M_1 = { i : x_i = 1 }`, i.e. the valuation of `i` is odd.
#[inline]
pub fn in_m1(i: u64) -> bool {
    i != 0 && valuation(i) & 1 == 1
}

/// `i` is in `N_k = { i : i = 2^k (mod 2^{k+1}) }`.
#[inline]
pub fn in_n(k: u32, i: u64) -> bool {
    i != 0 && valuation(i) == k
}

/// Base set of an affine position set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseSet {
    M1,
    N(u32),
}

impl BaseSet {
    pub fn contains(self, i: u64) -> bool {
        match self {
            BaseSet::M1 => in_m1(i),
            BaseSet::N(k) => in_n(k, i),
        }
    }
}

/// The set `scale * S + offset` for a base set `S` of positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PositionSetSpec {
    base: BaseSet,
    scale: u64,
    offset: i64,
}

impl PositionSetSpec {
    /// # Panics
    /// If `scale == 0` or `offset <= -scale`.
    pub fn new(base: BaseSet, scale: u64, offset: i64) -> Self {
        assert!(scale > 0, "scale must be positive");
        assert!(i128::from(offset) > -i128::from(scale), "offset must exceed -scale");
        PositionSetSpec { base, scale, offset }
    }

    pub fn base(&self) -> BaseSet {
        self.base
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// `c * self + d`.
    pub fn affine(&self, c: u64, d: i64) -> Self {
        let scale = self.scale * c;
        let offset = i64::try_from(i128::from(self.offset) * i128::from(c) + i128::from(d)).expect("offset overflow");
        PositionSetSpec::new(self.base, scale, offset)
    }

    pub fn contains(&self, i: u64) -> bool {
        let t = i128::from(i) - i128::from(self.offset);
        let c = i128::from(self.scale);
        if t <= 0 || t % c != 0 {
            return false;
        }
        self.base.contains((t / c) as u64)
    }
}

/// Affine-image membership `i in c * S + d`.
pub fn in_position_set(spec: &PositionSetSpec, i: u64) -> bool {
    spec.contains(i)
}

/// Outcome of [`is_recognizable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Recognizability {
    RecognizableOdd,
    RecognizableEven,
    NotRecognizable,
    NotInLanguage,
}

/// Default search horizon for [`is_recognizable`]: `4|w| + 16`.
///
/// Every factor of length up to 64 first occurs entirely inside this window;
/// checked exhaustively in the tests.
pub fn default_horizon(len: usize) -> usize {
    4 * len + 16
}

/// Classifies `w` by the parities of its occurrences inside `x_1 ... x_horizon`.
pub fn is_recognizable(w: &BinaryWord, horizon: usize) -> Recognizability {
    let x = pd_prefix_substitution(horizon);
    let mut parities = x.occurrences(w).map(|i| i % 2);
    let Some(first) = parities.next() else {
        return Recognizability::NotInLanguage;
    };
    if parities.any(|p| p != first) {
        Recognizability::NotRecognizable
    } else if first == 1 {
        Recognizability::RecognizableOdd
    } else {
        Recognizability::RecognizableEven
    }
}
