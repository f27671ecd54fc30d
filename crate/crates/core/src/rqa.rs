//! Finite-size recurrence quantifiers computed from a diagonal-line histogram.
//!
//! All quantifiers except the entropy are exact rationals over the
//! denominator `n^2 - n`. Undefined values (DET when there are no recurrences,
//! LAVG and ENTR when no line reaches `l_min`) are `None`, never NaN or zero.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rplines::{LineHistogram, LineKind};

#[derive(Debug, Clone, PartialEq)]
pub struct RqaReport {
    pub n: u64,
    pub m: u64,
    pub l_min: u64,
    /// `DENS_l(n)` for every length present in the histogram.
    pub dens: BTreeMap<u64, BigRational>,
    /// `DENSS_{l_min}(n)`.
    pub denss: BigRational,
    /// `RR_{l_min}(n)`.
    pub rr: BigRational,
    pub det: Option<BigRational>,
    pub lavg: Option<BigRational>,
    /// Entropy of the length distribution of lines with length >= `l_min`, in nats.
    pub entr: Option<f64>,
    /// Longest diagonal line of the plot.
    pub lmax: u64,
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `-p log p` for an exact probability, with `0 log 0 = 0`.
pub fn neg_p_log_p(p: &BigRational) -> f64 {
    if p.is_zero() {
        return 0.0;
    }
    let inv_log = p.denom().to_f64().unwrap().ln() - p.numer().to_f64().unwrap().ln();
    p.to_f64().unwrap() * inv_log
}

/// Computes DENS, DENSS, RR, DET, LAVG and ENTR for lines of length >= `l_min`.
pub fn quantify(hist: &LineHistogram, l_min: u64) -> Result<RqaReport> {
    if hist.kind != LineKind::Diagonal {
        return Err(Error::NotDiagonal);
    }
    if hist.n < 2 {
        return Err(Error::PlotTooSmall(hist.n));
    }
    if l_min == 0 {
        return Err(Error::ZeroLength);
    }
    let cells = hist.n * hist.n - hist.n;
    let dens = hist.iter().map(|(l, c)| (l, ratio(c, cells))).collect();
    let lines_at_least = hist.count_at_least(l_min);
    let mass = |from: u64| hist.iter().filter(|&(l, _)| l >= from).map(|(l, c)| l * c).sum::<u64>();
    let (mass_lmin, mass_all) = (mass(l_min), mass(1));

    let det = (mass_all > 0).then(|| ratio(mass_lmin, mass_all));
    let lavg = (lines_at_least > 0).then(|| ratio(mass_lmin, lines_at_least));
    let entr = (lines_at_least > 0)
        .then(|| hist.iter().filter(|&(l, _)| l >= l_min).map(|(_, c)| neg_p_log_p(&ratio(c, lines_at_least))).sum());

    Ok(RqaReport {
        n: hist.n,
        m: hist.m,
        l_min,
        dens,
        denss: ratio(lines_at_least, cells),
        rr: ratio(mass_lmin, cells),
        det,
        lavg,
        entr,
        lmax: hist.lmax(),
    })
}

/// Embedding dimension equivalent to distance threshold `eps` at dimension `m`:
/// `m + max(h, 0)` where `2^-h <= eps < 2^(1-h)`.
pub fn eps_to_embedding(eps: f64, m: u64) -> Result<u64> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidThreshold(eps));
    }
    let h = -floor_log2(eps);
    Ok(m + h.max(0) as u64)
}

/// Exact `floor(log2(v))` for finite positive `v`, read off the exponent bits.
fn floor_log2(v: f64) -> i64 {
    let bits = v.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    if exp == 0 {
        // subnormal: value = mantissa * 2^-1074
        let mantissa = bits & ((1u64 << 52) - 1);
        return 63 - i64::from(mantissa.leading_zeros()) - 1074;
    }
    exp - 1023
}
