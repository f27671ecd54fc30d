//! Finite-size statements about `K_l n [1, n]^2`, the start points of
//! length-`l` lines inside the `n x n` corner of the infinite plot.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::classify_length;
use super::LengthClass;
use crate::error::{Error, Result};

/// `K_l` meets `[1, n]^2` iff `l` is an allowed length and `n >= l + 2`.
pub fn nonempty_threshold(len: u64, n: u64) -> bool {
    classify_length(len).is_allowed() && n >= len + 2
}

/// Bounds on `D = |K_l n [1, n]^2|` whenever it is nonzero:
/// `lower * n^2 / (l+1)^2 < D <= upper * n^2 / (l+1)^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityBounds {
    pub len: u64,
    pub lower: BigRational,
    pub upper: BigRational,
}

impl DensityBounds {
    /// `(lower, upper)` for the count `D` at plot size `n`.
    pub fn count_range(&self, n: u64) -> (BigRational, BigRational) {
        let scale = BigRational::new(BigInt::from(n) * n, BigInt::from(self.len + 1).pow(2));
        (&self.lower * &scale, &self.upper * &scale)
    }

    /// `alpha` with `alpha / l^2 <= D / (n^2 - n)`, using `(l+1)^2 <= 4 l^2`.
    pub fn alpha(&self) -> BigRational {
        &self.lower / BigInt::from(4)
    }

    /// `beta` with `D / (n^2 - n) <= beta / l^2`, using `n^2 <= 2 (n^2 - n)` for `n >= 2`.
    pub fn beta(&self) -> BigRational {
        &self.upper * BigInt::from(2)
    }
}

pub fn density_bounds(len: u64) -> Result<DensityBounds> {
    let upper = match classify_length(len) {
        LengthClass::Pow2 { .. } => BigRational::from_integer(32.into()),
        LengthClass::ThreePow2 { .. } => BigRational::new(81.into(), 2.into()),
        LengthClass::Other => return Err(Error::DisallowedLength(len)),
    };
    Ok(DensityBounds { len, lower: BigRational::new(1.into(), 32.into()), upper })
}
