//! Closed forms for the recurrence plot of the period-doubling sequence.
//!
//! Diagonal lines only have lengths `2^{k+1} - 1` or `3 * 2^k - 1`. Their
//! asymptotic start-point densities are `1 / (9 * 4^k)` and `1 / (18 * 4^k)`,
//! and the asymptotic quantifiers follow from geometric sums over them. Every
//! value here is an exact rational except the entropies.
//!
//! Lengths are parametrised by `(k_l, a_l)`: `k_l` is the smallest `k >= 0`
//! with `3 * 2^{k-1} - 1 < l <= 3 * 2^k - 1`, and `a_l = 2` when
//! `l <= 2^{k+1} - 1` (case I), `a_l = 1` otherwise (case II).

mod bounds;
mod sets;

pub use bounds::{density_bounds, nonempty_threshold, DensityBounds};
pub use sets::{
    determining_word, hset_member, hset_member_closed, hset_member_direct, in_k_set_via_ih, is_line_start, jset_member,
    jset_member_closed, jset_member_direct,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    /// `3 * 2^{k-1} - 1 < l <= 2^{k+1} - 1`
    I,
    /// `2^{k+1} - 1 < l <= 3 * 2^k - 1`
    II,
}

/// `(k_l, a_l)` and the case tag for a length `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OracleParams {
    pub len: u64,
    pub k: u32,
    pub a: u32,
    pub case: Case,
}

/// Computes `(k_l, a_l)` from the defining inequalities.
///
/// # Panics
/// If `len == 0`.
pub fn params(len: u64) -> OracleParams {
    assert!(len >= 1, "line lengths start at 1");
    let l1 = u128::from(len) + 1;
    // 3 * 2^{k-1} - 1 < l  <=>  3 * 2^k < 2 (l + 1)
    let k = (0u32..).find(|&k| l1 <= 3u128 << k).expect("k exists");
    debug_assert!(3u128 << k < 2 * l1);
    if l1 <= 2u128 << k {
        OracleParams { len, k, a: 2, case: Case::I }
    } else {
        OracleParams { len, k, a: 1, case: Case::II }
    }
}

/// Which of the two length families `l` belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthClass {
    /// `l = 2^{k+1} - 1`
    Pow2 {
        k: u32,
    },
    /// `l = 3 * 2^k - 1`
    ThreePow2 {
        k: u32,
    },
    Other,
}

impl LengthClass {
    pub fn is_allowed(self) -> bool {
        !matches!(self, LengthClass::Other)
    }

    pub fn k(self) -> Option<u32> {
        match self {
            LengthClass::Pow2 { k } | LengthClass::ThreePow2 { k } => Some(k),
            LengthClass::Other => None,
        }
    }
}

pub fn classify_length(len: u64) -> LengthClass {
    let l1 = len + 1;
    if len >= 1 && l1.is_power_of_two() {
        LengthClass::Pow2 { k: l1.trailing_zeros() - 1 }
    } else if len >= 1 && l1.is_multiple_of(3) && (l1 / 3).is_power_of_two() {
        LengthClass::ThreePow2 { k: (l1 / 3).trailing_zeros() }
    } else {
        LengthClass::Other
    }
}

pub fn is_allowed_length(len: u64) -> bool {
    classify_length(len).is_allowed()
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Asymptotic density `DENS_l` of start points of lines of length exactly `l`.
pub fn dens_asymptotic(len: u64) -> BigRational {
    let d = match classify_length(len) {
        LengthClass::Pow2 { k } => frac(1, BigInt::from(9) * pow2(2 * k)),
        LengthClass::ThreePow2 { k } => frac(1, BigInt::from(18) * pow2(2 * k)),
        LengthClass::Other => BigRational::zero(),
    };
    debug_assert_eq!(d, dens_from_constant(len));
    d
}

/// `c_l / (l + 1)^2` with `c_l` in `{4/9, 1/2, 0}`.
pub fn dens_from_constant(len: u64) -> BigRational {
    let c = match classify_length(len) {
        LengthClass::Pow2 { .. } => frac(4, 9),
        LengthClass::ThreePow2 { .. } => frac(1, 2),
        LengthClass::Other => return BigRational::zero(),
    };
    let l1 = BigInt::from(len) + 1;
    c / BigRational::from_integer(&l1 * &l1)
}

/// `DENS^m_l`: a line of length `l` in the `m`-embedded plot is a line of
/// length `l + m - 1` in the unembedded one, with the same start point.
pub fn dens(m: u64, len: u64) -> BigRational {
    dens_asymptotic(len + m - 1)
}

/// `DENSS_l = sum_{l' >= l} DENS_{l'} = a_l / (9 * 4^{k_l})`.
pub fn denss_asymptotic(len: u64) -> BigRational {
    let p = params(len);
    frac(p.a, BigInt::from(9) * pow2(2 * p.k))
}

/// `RR^m_l`, the asymptotic recurrence rate in lines of length >= `l` at
/// embedding dimension `m`.
pub fn rr(m: u64, len: u64) -> BigRational {
    let p = params(len + m - 1);
    let a = BigInt::from(p.a);
    frac(BigInt::from(2) * &a + 3, BigInt::from(9) * pow2(p.k)) - frac(a, BigInt::from(9) * pow2(2 * p.k))
}

/// `DET^m_l = RR^m_l / RR^m_1`.
pub fn det(m: u64, len: u64) -> BigRational {
    rr(m, len) / rr(m, 1)
}

/// `LAVG^m_l = (2 + 3 / a) 2^k - 1` at `l' = l + m - 1`.
pub fn lavg(m: u64, len: u64) -> BigRational {
    let p = params(len + m - 1);
    frac(BigInt::from(2 * p.a + 3) * pow2(p.k), p.a) - BigRational::one()
}

/// `ENTR^m_l`: the entropy of the asymptotic line-length distribution is
/// `2 log 2` for every `m` and `l`.
pub fn entr(_m: u64, _len: u64) -> f64 {
    2.0 * std::f64::consts::LN_2
}

/// `-sum_{l' >= l} DENS_{l'} log DENS_{l'}` in closed form.
pub fn entropy_sum(len: u64) -> f64 {
    let p = params(len);
    let (a, k) = (f64::from(p.a), f64::from(p.k));
    let num = (a * k + 1.0) * std::f64::consts::LN_2 + a * 3f64.ln();
    // 18 * 4^{k-1} = 4.5 * 4^k
    num / (4.5 * 4f64.powi(p.k as i32))
}

/// Partition of embedding dimensions `m` by the limit behaviour of `DET^m_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetClass {
    /// `(k, a)` agree at `m` and `l + m - 1`; DET is exactly 1.
    A1,
    /// `m` in case I, `l + m - 1` in case II of the same `k`; DET tends to 5/7.
    A2,
    /// Everything else; on its infinite part DET tends to 7/10.
    A3,
}

pub fn det_class(m: u64, len: u64) -> Result<DetClass> {
    if len < 2 {
        return Err(Error::DetClassLength(len));
    }
    let (pm, pl) = (params(m), params(len + m - 1));
    if (pm.k, pm.a) == (pl.k, pl.a) {
        return Ok(DetClass::A1);
    }
    let lp = u128::from(len + m - 1);
    let k = pm.k;
    if pm.case == Case::I && (2u128 << k) - 1 < lp && lp < (3u128 << k) {
        Ok(DetClass::A2)
    } else {
        Ok(DetClass::A3)
    }
}

/// Membership in the infinite part of `A3`:
/// `2^{k+1} - 1 < m <= 3 * 2^k - 1 < l + m - 1 <= 2^{k+2} - 1`.
pub fn in_a3_tilde(m: u64, len: u64) -> bool {
    let p = params(m);
    let lp = u128::from(len + m - 1);
    p.case == Case::II && (3u128 << p.k) - 1 < lp && lp < (4u128 << p.k)
}

/// Lengths of vertical lines in the infinite `m`-embedded plot. Runs of
/// zeros have length at most three and ones are isolated.
pub fn vertical_lengths(m: u64) -> Vec<u64> {
    assert!(m >= 1, "embedding dimension must be positive");
    match m {
        1 => vec![1, 3],
        2 => vec![1, 2],
        _ => vec![1],
    }
}
