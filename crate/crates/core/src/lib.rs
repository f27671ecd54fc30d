//! Exact recurrence quantification analysis of the period-doubling sequence.
//!
//! * [`pdseq`]: the sequence itself, three generators and its position sets.
//! * [`rplines`]: diagonal and vertical line histograms of symbolic recurrence plots.
//! * [`rqa`]: finite-size quantifiers (RR, DET, LAVG, ENTR) from a histogram.
//! * [`oracle`]: closed forms for line starts, densities and asymptotic quantifiers.
//!
//! Every index in the public API is 1-based.

pub mod error;
pub mod oracle;
pub mod pdseq;
pub mod rplines;
pub mod rqa;

pub use error::{Error, Result};
pub use oracle::{classify_length, params, Case, DetClass, LengthClass, OracleParams};
pub use pdseq::{BinaryWord, PositionSetSpec, Recognizability};
pub use rplines::{LineHistogram, LineKind, StartPoint};
pub use rqa::RqaReport;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
