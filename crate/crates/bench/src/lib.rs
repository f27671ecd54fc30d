//! Shared inputs for the benchmarks.

use pdrqa::pdseq::pd_prefix_substitution;
use pdrqa::BinaryWord;

/// Plot sizes the scan benchmarks sweep over.
pub const PLOT_SIZES: [u64; 3] = [1 << 10, 1 << 12, 1 << 14];

/// Prefix long enough for an `m`-embedded plot of size `n`.
pub fn word(n: u64, m: u64) -> BinaryWord {
    pd_prefix_substitution((n + m) as usize)
}
