//! Start-point sets of diagonal lines, decided arithmetically.
//!
//! With `M_1 = { i : x_i = 1 }`:
//!
//! ```text
//! A = (2M_1 - 1) x (2M_1 + 1)  u  (2M_1) x ((4M_1 - 1) u (4M_1 + 1))
//! B = (2M_1 - 1) u (2M_1)
//! C = (2M_1 - 1) x (2M_1)
//! ```
//!
//! A line of length `2^{k+1} - 1` starts at `(i, j)` iff `(i, j)` or `(j, i)`
//! lies in `2^k A - (2^k - 1)` or in `[2^k B - (2^k - 1)] x {1}`; a line of
//! length `3 * 2^k - 1` iff it lies in `2^k C - (2^k - 1)`. No other lengths
//! occur.
//!
//! The `J`/`H` membership functions are verification API: they decide the
//! word-occurrence sets both by reading the sequence and by the affine
//! closed forms, and panic if the two disagree.

use super::{classify_length, LengthClass};
use crate::error::{Error, Result};
use crate::pdseq::{pd_letter, pd_prefix_substitution, substitution_apply, BaseSet, BinaryWord, PositionSetSpec};

fn m1(scale: u64, offset: i64) -> PositionSetSpec {
    PositionSetSpec::new(BaseSet::M1, scale, offset)
}

/// A union of affine images of `M_1`; empty means the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Union(Vec<PositionSetSpec>);

impl Union {
    fn empty() -> Self {
        Union(Vec::new())
    }

    fn contains(&self, i: u64) -> bool {
        self.0.iter().any(|s| s.contains(i))
    }

    /// `c * self + d`, element-wise.
    fn affine(&self, c: u64, d: i64) -> Self {
        Union(self.0.iter().map(|s| s.affine(c, d)).collect())
    }
}

/// `left x right`.
struct Product {
    left: Union,
    right: Union,
}

impl Product {
    fn contains(&self, i: u64, j: u64) -> bool {
        self.left.contains(i) && self.right.contains(j)
    }

    fn dilate(&self, scale: u64) -> Product {
        let d = 1 - scale as i64;
        Product { left: self.left.affine(scale, d), right: self.right.affine(scale, d) }
    }
}

fn set_a() -> [Product; 2] {
    [
        Product { left: Union(vec![m1(2, -1)]), right: Union(vec![m1(2, 1)]) },
        Product { left: Union(vec![m1(2, 0)]), right: Union(vec![m1(4, -1), m1(4, 1)]) },
    ]
}

fn set_b() -> Union {
    Union(vec![m1(2, -1), m1(2, 0)])
}

fn set_c() -> Product {
    Product { left: Union(vec![m1(2, -1)]), right: Union(vec![m1(2, 0)]) }
}

/// Whether a diagonal line of length exactly `len` starts at `(i, j)` in the
/// infinite recurrence plot (embedding dimension 1).
pub fn is_line_start(i: u64, j: u64, len: u64) -> Result<bool> {
    if i == 0 || j == 0 {
        return Err(Error::ZeroIndex);
    }
    if i == j {
        return Err(Error::MainDiagonal(i));
    }
    if len == 0 {
        return Err(Error::ZeroLength);
    }
    Ok(match classify_length(len) {
        LengthClass::Other => false,
        LengthClass::Pow2 { k } => {
            let s = 1u64 << k;
            let inner = set_a().iter().any(|p| {
                let p = p.dilate(s);
                p.contains(i, j) || p.contains(j, i)
            });
            let b = set_b().affine(s, 1 - s as i64);
            inner || (j == 1 && b.contains(i)) || (i == 1 && b.contains(j))
        }
        LengthClass::ThreePow2 { k } => {
            let c = set_c().dilate(1u64 << k);
            c.contains(i, j) || c.contains(j, i)
        }
    })
}

/// The word `w` shared by every line of length `len`: `[xi^k(v 0)]'` (last
/// letter dropped) with `v = 0` for `len = 2^{k+1} - 1` and `v = 00` for
/// `len = 3 * 2^k - 1`. In the first family this is the prefix `x_1^len`; in
/// the second it is that prefix with the letter at position `2^{k+1}` flipped.
pub fn determining_word(len: u64) -> Option<BinaryWord> {
    let (seed, k) = match classify_length(len) {
        LengthClass::Pow2 { k } => ("00", k),
        LengthClass::ThreePow2 { k } => ("000", k),
        LengthClass::Other => return None,
    };
    let mut w = substitution_apply(&seed.parse().expect("valid"), k).into_symbols();
    w.pop();
    Some(BinaryWord::new(w).expect("binary"))
}

fn letter(i: u64) -> u8 {
    pd_letter(i).expect("positive index")
}

/// `i in J^{ab}_w = { i >= 2 : x_{i-1} ... x_{i+|w|} = a w b }`, read off the sequence.
pub fn jset_member_direct(a: u8, b: u8, w: &BinaryWord, i: u64) -> bool {
    if i < 2 || letter(i - 1) != a {
        return false;
    }
    let l = w.len() as u64;
    w.symbols().iter().enumerate().all(|(p, &s)| letter(i + p as u64) == s) && letter(i + l) == b
}

/// Closed forms for the empty word, `0` and `00`.
fn jset_short(a: u8, b: u8, w: &[u8]) -> Option<Union> {
    let u = |v: Vec<PositionSetSpec>| Some(Union(v));
    match (w, a, b) {
        ([], 0, 0) => u(vec![m1(2, 0), m1(2, 1)]),
        ([], 1, 1) => Some(Union::empty()),
        ([], 0, 1) => u(vec![m1(1, 0)]),
        ([], 1, 0) => u(vec![m1(1, 1)]),
        ([0], 0, 0) => u(vec![m1(2, 0)]),
        ([0], 1, 1) => u(vec![m1(4, -1), m1(4, 1)]),
        ([0], 0, 1) => u(vec![m1(2, 1)]),
        ([0], 1, 0) => u(vec![m1(2, -1)]),
        ([0, 0], 0, 0) | ([0, 0], 1, 1) => Some(Union::empty()),
        ([0, 0], 0, 1) => u(vec![m1(2, 0)]),
        ([0, 0], 1, 0) => u(vec![m1(2, -1)]),
        _ => None,
    }
}

/// `J^{ab}_w` as a union of affine images of `M_1`, when a closed form is known:
/// `w` in `{empty, 0, 00}`, or `w` the determining word of an allowed length,
/// where `J^{ab}_w = 2^k J^{a'b'}_v - (2^k - 1)` with `v` in `{0, 00}` and
/// `a', b'` complemented when `k` is odd.
fn jset_closed_form(a: u8, b: u8, w: &BinaryWord) -> Option<Union> {
    if let Some(u) = jset_short(a, b, w.symbols()) {
        return Some(u);
    }
    let len = w.len() as u64;
    if determining_word(len).as_ref() != Some(w) {
        return None;
    }
    let (seed, k): (&[u8], u32) = match classify_length(len) {
        LengthClass::Pow2 { k } => (&[0], k),
        LengthClass::ThreePow2 { k } => (&[0, 0], k),
        LengthClass::Other => unreachable!(),
    };
    let flip = (k % 2) as u8;
    let s = 1u64 << k;
    Some(jset_short(a ^ flip, b ^ flip, seed)?.affine(s, 1 - s as i64))
}

/// Closed-form membership in `J^{ab}_w`, `None` where no closed form applies.
pub fn jset_member_closed(a: u8, b: u8, w: &BinaryWord, i: u64) -> Option<bool> {
    jset_closed_form(a, b, w).map(|u| i >= 2 && u.contains(i))
}

/// `i in J^{ab}_w`, checked against the closed form when one applies.
///
/// # Panics
/// If the direct reading and the closed form disagree.
pub fn jset_member(a: u8, b: u8, w: &BinaryWord, i: u64) -> bool {
    let direct = jset_member_direct(a, b, w, i);
    if let Some(closed) = jset_member_closed(a, b, w, i) {
        assert_eq!(direct, closed, "J^{a}{b}_{w} at i = {i}: direct and closed form disagree");
    }
    direct
}

/// `i in H^b_w = { i >= 2 : x_i ... x_{i+|w|} = w b, x_1 ... x_{|w|+1} = w b-bar }`.
pub fn hset_member_direct(b: u8, w: &BinaryWord, i: u64) -> bool {
    if i < 2 {
        return false;
    }
    let l = w.len() as u64;
    let matches_at = |start: u64, last: u8| {
        w.symbols().iter().enumerate().all(|(p, &s)| letter(start + p as u64) == s) && letter(start + l) == last
    };
    matches_at(i, b) && matches_at(1, b ^ 1)
}

/// Closed form: for nonempty `w`, `H^b_w` is nonempty only when
/// `w = x_1^{2^{k+1} - 1}` and `b = k mod 2`, and then equals
/// `2^k H^0_0 - (2^k - 1)` with `H^0_0 = (2M_1 - 1) u (2M_1)`.
pub fn hset_member_closed(b: u8, w: &BinaryWord, i: u64) -> Option<bool> {
    if w.is_empty() {
        return None;
    }
    let len = w.len() as u64;
    let LengthClass::Pow2 { k } = classify_length(len) else {
        return Some(false);
    };
    if *w != pd_prefix_substitution(w.len()) || u32::from(b) != k % 2 {
        return Some(false);
    }
    let s = 1u64 << k;
    Some(i >= 2 && set_b().affine(s, 1 - s as i64).contains(i))
}

/// `i in H^b_w`, checked against the closed form when one applies.
///
/// # Panics
/// If the direct reading and the closed form disagree.
pub fn hset_member(b: u8, w: &BinaryWord, i: u64) -> bool {
    let direct = hset_member_direct(b, w, i);
    if let Some(closed) = hset_member_closed(b, w, i) {
        assert_eq!(direct, closed, "H^{b}_{w} at i = {i}: direct and closed form disagree");
    }
    direct
}

/// `(i, j) in K_len` assembled from the `I` and `H` sets of the determining
/// word `w`: all four `I^{ab}_w = J^{ab}_w x J^{a-bar b-bar}_w` plus the two
/// boundary `H` sets for `len = 2^{k+1} - 1`, and `I^{01}_w u I^{10}_w` for
/// `len = 3 * 2^k - 1`.
pub fn in_k_set_via_ih(i: u64, j: u64, len: u64) -> bool {
    let Some(w) = determining_word(len) else {
        return false;
    };
    let in_i = |a: u8, b: u8| jset_member(a, b, &w, i) && jset_member(a ^ 1, b ^ 1, &w, j);
    match classify_length(len) {
        LengthClass::Pow2 { k } => {
            let b = (k % 2) as u8;
            [(0, 0), (0, 1), (1, 0), (1, 1)].iter().any(|&(a, c)| in_i(a, c))
                || (j == 1 && hset_member(b, &w, i))
                || (i == 1 && hset_member(b, &w, j))
        }
        LengthClass::ThreePow2 { .. } => in_i(0, 1) || in_i(1, 0),
        LengthClass::Other => false,
    }
}
