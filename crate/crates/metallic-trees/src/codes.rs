//! The two positional numeration systems induced by the metallic sequences.
//!
//! Both systems write a natural number as `Σ a_i · m_i` over the white
//! metallic sequence `m` (see [`crate::sequences`]), most-significant digit
//! first. They differ in the digit alphabet and the *forbidden factor* whose
//! absence makes the representation unique:
//!
//! | system   | digits    | forbidden factor | represents |
//! |----------|-----------|------------------|------------|
//! | metallic | `0 ..= d` | `d c* d`         | `n ≥ 0`    |
//! | nzm      | `1 ..= x` | `x d* x`         | `n ≥ 1`    |
//!
//! with `d = p−3`, `c = p−4`, `x = p−2`. "nzm" is short for *non-zero
//! metallic*: every digit is positive, so zero has no code.
//!
//! ## Normalization
//!
//! Out-of-pattern digit strings are repaired by local, value-preserving
//! rewrites derived from the recurrence `m_{t+1} = (p−2)·m_t − m_{t−1}`:
//!
//! - **collapse** — a forbidden factor spanning weights `m_t ..= m_{t+j+1}`
//!   sums to exactly `m_{t+j+2}` (metallic) or `m_{t+j+2}` plus the all-ones
//!   word on the same span (nzm), so it is folded into a carry one position
//!   up;
//! - **carry / borrow** — a digit outside its range trades `p−2` units at
//!   weight `m_t` against one unit each at `m_{t+1}` and `m_{t−1}`.
//!
//! Each rewrite strictly increases the string read most-significant-first,
//! while the evaluated value never changes, so the loop reaches the unique
//! pattern-free fixpoint. Debug builds additionally assert the fixpoint
//! equals re-encoding the evaluated value.
//!
//! ## Increment and decrement
//!
//! Metallic `±1` reuse the rewrite engine (add or subtract one unit at the
//! low end, then repair). The nzm system instead has dedicated digit-local
//! algorithms ([`NzmCode::inc`], [`NzmCode::dec`]) whose branch structure
//! mirrors the carry/borrow behaviour of the trailing digit run; they are
//! cross-checked against encode over long enumeration chains in the tests.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::Params;
use crate::sequences::SequenceTable;

/// Which numeration system a digit string lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    /// Digits `0..=d`, forbidden factor `d c* d`, zero is the code `0`.
    Metallic,
    /// Digits `1..=x`, forbidden factor `x d* x`, zero unrepresentable.
    Nzm,
}

/// Errors from code construction, parsing and arithmetic.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    /// A digit exceeds the system's alphabet (or is 0 in the nzm system).
    #[error("digit {digit} out of range {min}..={max} for p={p}")]
    DigitOutOfRange { digit: u32, min: u32, max: u32, p: u32 },
    /// The code is empty.
    #[error("a code needs at least one digit")]
    Empty,
    /// A canonical metallic code may not start with 0 (except the code of 0
    /// itself, the single digit `0`).
    #[error("leading zero in a multi-digit metallic code")]
    LeadingZero,
    /// The digit string contains the system's forbidden factor.
    #[error("forbidden factor present in {0:?} code")]
    ForbiddenFactor(System),
    /// The nzm system cannot represent zero.
    #[error("the nzm system cannot represent 0")]
    ZeroUnrepresentable,
    /// Decrement below the smallest representable value.
    #[error("cannot decrement the smallest {0:?} code")]
    DecrementUnderflow(System),
    /// Unparseable digit text.
    #[error("cannot parse digit string {text:?}: {reason}")]
    Parse { text: String, reason: String },
    /// Two codes from different parameter packs were combined.
    #[error("parameter mismatch: p={0} vs p={1}")]
    ParamsMismatch(u32, u32),
}

// ---------------------------------------------------------------------------
// Raw digit-string helpers (shared by both systems)
// ---------------------------------------------------------------------------

/// Evaluates a raw digit string (most-significant first) as `Σ a_i · m_i`.
///
/// Defined on arbitrary in-range digit strings — pattern-freedom is *not*
/// required, so normalization can be tested against it.
pub fn eval_digits(params: Params, digits: &[u32]) -> BigUint {
    let mut table = SequenceTable::new(params);
    table.ensure(digits.len().saturating_sub(1));
    let mut total = BigUint::zero();
    for (i, &a) in digits.iter().rev().enumerate() {
        if a != 0 {
            total += table.m(i) * a;
        }
    }
    total
}

fn check_digit_range(params: Params, digits: &[u32], system: System) -> Result<(), CodeError> {
    let (min, max) = match system {
        System::Metallic => (0, params.d()),
        System::Nzm => (1, params.x()),
    };
    for &a in digits {
        if a < min || a > max {
            return Err(CodeError::DigitOutOfRange { digit: a, min, max, p: params.p() });
        }
    }
    Ok(())
}

/// Locates the leftmost (most-significant) forbidden factor, returning the
/// index range `[start, end]` in most-significant-first positions, or `None`
/// if the string is pattern-free. `outer` is the factor's end letter
/// (`d` or `x`), `inner` its repeatable middle letter (`c` or `d`).
fn find_forbidden(digits: &[u32], outer: u32, inner: u32) -> Option<(usize, usize)> {
    let n = digits.len();
    for start in 0..n {
        if digits[start] != outer {
            continue;
        }
        let mut end = start + 1;
        while end < n && digits[end] == inner {
            end += 1;
        }
        if end < n && digits[end] == outer {
            return Some((start, end));
        }
    }
    None
}

fn has_forbidden(digits: &[u32], outer: u32, inner: u32) -> bool {
    find_forbidden(digits, outer, inner).is_some()
}

/// Shared rewrite engine. Works on least-significant-first signed digits;
/// `lo` is the smallest admissible digit (0 metallic, 1 nzm), `hi` the
/// largest (`d` or `x`), and `(outer, inner)` spell the forbidden factor.
/// The replacement word for a collapsed factor is `fill` on every position
/// of the factor (0 for metallic, 1 for nzm).
fn rewrite_fixpoint(
    params: Params,
    mut a: Vec<i64>, // least-significant first
    lo: i64,
    hi: i64,
    outer: i64,
    inner: i64,
    fill: i64,
) -> Vec<u32> {
    let base = params.x() as i64; // p − 2
    // Generous cap: each rewrite strictly increases the MSB-first reading of
    // the string, whose value is bounded; runaway means a rule is wrong.
    let mut budget = 64 * (a.len() as u64 + 16) * (a.len() as u64 + 16) + 4096;
    loop {
        budget = budget.checked_sub(1).expect("digit rewrite did not converge");

        // Carry/borrow pass, low to high.
        let mut dirty = false;
        let mut t = 0;
        while t < a.len() {
            if a[t] > hi {
                a[t] -= base;
                if t + 1 == a.len() {
                    a.push(0);
                }
                a[t + 1] += 1;
                if t > 0 {
                    a[t - 1] += 1;
                }
                dirty = true;
            } else if a[t] < lo && !(t + 1 == a.len() && a[t] == 0) {
                // A top-position 0 is a removable leading zero, not a borrow.
                if a[t] < 0 || a.iter().skip(t + 1).any(|&v| v != 0) {
                    if a[t] < 0 {
                        a[t] += base;
                        if t + 1 == a.len() {
                            a.push(0);
                        }
                        a[t + 1] -= 1;
                        if t > 0 {
                            a[t - 1] -= 1;
                        }
                        dirty = true;
                    } else {
                        // lo == 1 and a[t] == 0 inside an nzm string: borrow
                        // one unit from above to refill this position.
                        a[t] += base;
                        if t + 1 == a.len() {
                            a.push(0);
                        }
                        a[t + 1] -= 1;
                        if t > 0 {
                            a[t - 1] -= 1;
                        }
                        dirty = true;
                    }
                }
            }
            t += 1;
        }
        // Trim leading zeros (high end).
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
        if dirty {
            continue;
        }

        // Forbidden-factor collapse (leftmost first, i.e. highest positions).
        let msb: Vec<u32> = a.iter().rev().map(|&v| v as u32).collect();
        match find_forbidden(&msb, outer as u32, inner as u32) {
            None => break,
            Some((start, end)) => {
                // Convert MSB-first span [start, end] to LSB positions.
                // A factor spanning weights m_t ..= m_{t+j+1} sums to
                // m_{t+j+2} + m_{t−1} plus (for the nzm alphabet) the
                // all-ones word on the span, so the rewrite carries one
                // unit up AND one unit down.
                let n = a.len();
                let hi_pos = n - 1 - start; // position of the leading outer
                let lo_pos = n - 1 - end; // position of the trailing outer
                for t in lo_pos..=hi_pos {
                    a[t] = fill;
                }
                if hi_pos + 1 == a.len() {
                    a.push(0);
                }
                a[hi_pos + 1] += 1;
                if lo_pos > 0 {
                    a[lo_pos - 1] += 1;
                }
            }
        }
    }
    a.iter().rev().map(|&v| v as u32).collect()
}

/// Parses digit text: comma-separated decimal values most-significant
/// first, or (for `p ≤ 12`) a compact run of single characters
/// `0-9` then `a`/`A` for ten.
fn parse_digits(params: Params, text: &str) -> Result<Vec<u32>, CodeError> {
    let parse_err = |reason: &str| CodeError::Parse { text: text.to_string(), reason: reason.to_string() };
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(CodeError::Empty);
    }
    if trimmed.contains(',') {
        trimmed
            .split(',')
            .map(|part| part.trim().parse::<u32>().map_err(|e| parse_err(&e.to_string())))
            .collect()
    } else if params.p() <= 12 {
        trimmed
            .chars()
            .map(|ch| match ch {
                '0'..='9' => Ok(ch as u32 - '0' as u32),
                'a' | 'A' => Ok(10),
                _ => Err(parse_err(&format!("invalid compact digit {ch:?}"))),
            })
            .collect()
    } else {
        // For large p the compact form is ambiguous; a lone decimal number
        // is still accepted as a single digit.
        trimmed
            .parse::<u32>()
            .map(|v| vec![v])
            .map_err(|e| parse_err(&e.to_string()))
    }
}

fn format_digits(digits: &[u32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, d) in digits.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{d}")?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Metallic codes
// ---------------------------------------------------------------------------

/// A canonical metallic code: digits `0..=d` most-significant first, no
/// leading zero (except the code of 0 itself) and no factor `d c* d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MetallicCode {
    params: Params,
    digits: Vec<u32>,
}

impl MetallicCode {
    /// Validates a digit string as a canonical metallic code.
    pub fn from_digits(params: Params, digits: Vec<u32>) -> Result<Self, CodeError> {
        if digits.is_empty() {
            return Err(CodeError::Empty);
        }
        check_digit_range(params, &digits, System::Metallic)?;
        if digits.len() > 1 && digits[0] == 0 {
            return Err(CodeError::LeadingZero);
        }
        if has_forbidden(&digits, params.d(), params.c()) {
            return Err(CodeError::ForbiddenFactor(System::Metallic));
        }
        Ok(MetallicCode { params, digits })
    }

    /// The canonical code of 0: the single digit `0`.
    pub fn zero(params: Params) -> Self {
        MetallicCode { params, digits: vec![0] }
    }

    /// Greedy encoding of `n ≥ 0` (largest weight first); the greedy choice
    /// provably keeps digits `≤ d` and never forms the forbidden factor.
    pub fn encode(params: Params, n: &BigUint) -> Self {
        if n.is_zero() {
            return Self::zero(params);
        }
        let mut table = SequenceTable::new(params);
        let mut k = 0;
        while table.metallic(k + 1) <= *n {
            k += 1;
        }
        let mut digits = Vec::with_capacity(k + 1);
        let mut rem = n.clone();
        for i in (0..=k).rev() {
            let weight = table.m(i);
            let q = &rem / weight;
            rem -= weight * &q;
            let q: u32 = q.try_into().expect("greedy digit exceeds u32");
            digits.push(q);
        }
        debug_assert!(!has_forbidden(&digits, params.d(), params.c()));
        MetallicCode { params, digits }
    }

    /// Normalizes an arbitrary in-range digit string to the canonical
    /// pattern-free code of the same value.
    pub fn normalize(params: Params, raw: &[u32]) -> Result<Self, CodeError> {
        if raw.is_empty() {
            return Err(CodeError::Empty);
        }
        check_digit_range(params, raw, System::Metallic)?;
        let lsb: Vec<i64> = raw.iter().rev().map(|&v| v as i64).collect();
        let digits = rewrite_fixpoint(
            params,
            lsb,
            0,
            params.d() as i64,
            params.d() as i64,
            params.c() as i64,
            0,
        );
        let out = MetallicCode { params, digits };
        debug_assert_eq!(out, MetallicCode::encode(params, &eval_digits(params, raw)));
        Ok(out)
    }

    /// Parses the textual form (see module docs of [`crate::codes`]).
    pub fn parse(params: Params, text: &str) -> Result<Self, CodeError> {
        Self::from_digits(params, parse_digits(params, text)?)
    }

    /// The parameter pack.
    pub fn params(&self) -> Params {
        self.params
    }

    /// Digits, most-significant first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// The evaluated value `Σ a_i · m_i`.
    pub fn value(&self) -> BigUint {
        eval_digits(self.params, &self.digits)
    }

    /// True iff this is the canonical code of 0.
    pub fn is_zero(&self) -> bool {
        self.digits == [0]
    }

    /// The signature: the rightmost digit.
    pub fn signature(&self) -> u32 {
        *self.digits.last().unwrap()
    }

    /// The successor code `[ν]·0`: this code with a `0` appended. Appending
    /// `0` can neither create the forbidden factor nor a leading zero, so
    /// the result is canonical.
    pub fn successor(&self) -> MetallicCode {
        assert!(!self.is_zero(), "the zero code has no successor node");
        let mut digits = self.digits.clone();
        digits.push(0);
        MetallicCode { params: self.params, digits }
    }

    /// The canonical code of `value + 1`.
    pub fn inc(&self) -> MetallicCode {
        let mut lsb: Vec<i64> = self.digits.iter().rev().map(|&v| v as i64).collect();
        lsb[0] += 1;
        let digits = rewrite_fixpoint(
            self.params,
            lsb,
            0,
            self.params.d() as i64,
            self.params.d() as i64,
            self.params.c() as i64,
            0,
        );
        let out = MetallicCode { params: self.params, digits };
        debug_assert_eq!(out.value(), self.value() + 1u32);
        out
    }

    /// The canonical code of `value − 1`; errors on the zero code.
    pub fn dec(&self) -> Result<MetallicCode, CodeError> {
        if self.is_zero() {
            return Err(CodeError::DecrementUnderflow(System::Metallic));
        }
        let mut lsb: Vec<i64> = self.digits.iter().rev().map(|&v| v as i64).collect();
        lsb[0] -= 1;
        let digits = rewrite_fixpoint(
            self.params,
            lsb,
            0,
            self.params.d() as i64,
            self.params.d() as i64,
            self.params.c() as i64,
            0,
        );
        let out = MetallicCode { params: self.params, digits };
        debug_assert_eq!(out.value() + 1u32, self.value());
        Ok(out)
    }

    /// Cross-conversion: the nzm code of the same (positive) value.
    pub fn to_nzm(&self) -> Result<NzmCode, CodeError> {
        NzmCode::encode(self.params, &self.value())
    }
}

impl fmt::Display for MetallicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_digits(&self.digits, f)
    }
}

// ---------------------------------------------------------------------------
// Nzm codes
// ---------------------------------------------------------------------------

/// A canonical nzm code: digits `1..=x` most-significant first, no factor
/// `x d* x`. Represents values `≥ 1` only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NzmCode {
    params: Params,
    digits: Vec<u32>,
}

impl NzmCode {
    /// Validates a digit string as a canonical nzm code.
    pub fn from_digits(params: Params, digits: Vec<u32>) -> Result<Self, CodeError> {
        if digits.is_empty() {
            return Err(CodeError::Empty);
        }
        check_digit_range(params, &digits, System::Nzm)?;
        if has_forbidden(&digits, params.x(), params.d()) {
            return Err(CodeError::ForbiddenFactor(System::Nzm));
        }
        Ok(NzmCode { params, digits })
    }

    /// Encodes `n ≥ 1` by the cumulative-boundary construction: with `k`
    /// such that `M_k ≤ n < M_{k+1}`, write `n − M_k` as a `k+1`-digit
    /// metallic string (leading zeros allowed) and add 1 to every digit.
    pub fn encode(params: Params, n: &BigUint) -> Result<Self, CodeError> {
        if n.is_zero() {
            return Err(CodeError::ZeroUnrepresentable);
        }
        let mut table = SequenceTable::new(params);
        let mut k = 0;
        while table.cumulative_white(k + 1) <= *n {
            k += 1;
        }
        let n1 = n - table.mcum(k);
        let metallic = MetallicCode::encode(params, &n1);
        let mut digits = vec![0u32; k + 1];
        let pad = k + 1 - metallic.digits().len();
        digits[pad..].copy_from_slice(metallic.digits());
        if metallic.is_zero() {
            digits[k] = 0; // the zero code "0" contributes nothing
        }
        for a in &mut digits {
            *a += 1;
        }
        debug_assert!(!has_forbidden(&digits, params.x(), params.d()));
        let out = NzmCode { params, digits };
        debug_assert_eq!(&out.value(), n);
        Ok(out)
    }

    /// Normalizes an arbitrary string of digits `1..=x` to the canonical
    /// pattern-free code of the same value.
    pub fn normalize(params: Params, raw: &[u32]) -> Result<Self, CodeError> {
        if raw.is_empty() {
            return Err(CodeError::Empty);
        }
        check_digit_range(params, raw, System::Nzm)?;
        let lsb: Vec<i64> = raw.iter().rev().map(|&v| v as i64).collect();
        let digits = rewrite_fixpoint(
            params,
            lsb,
            1,
            params.x() as i64,
            params.x() as i64,
            params.d() as i64,
            1,
        );
        let out = NzmCode { params, digits };
        debug_assert_eq!(out, NzmCode::encode(params, &eval_digits(params, raw)).unwrap());
        Ok(out)
    }

    /// Parses the textual form (see module docs of [`crate::codes`]).
    pub fn parse(params: Params, text: &str) -> Result<Self, CodeError> {
        Self::from_digits(params, parse_digits(params, text)?)
    }

    /// The parameter pack.
    pub fn params(&self) -> Params {
        self.params
    }

    /// Digits, most-significant first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// The evaluated value `Σ a_i · m_i` (always `≥ 1`).
    pub fn value(&self) -> BigUint {
        eval_digits(self.params, &self.digits)
    }

    /// The signature: the rightmost digit.
    pub fn signature(&self) -> u32 {
        *self.digits.last().unwrap()
    }

    /// The successor code `[ν]_nz·1`: this code with a `1` appended.
    /// Appending `1` cannot create `x d* x`, so the result is canonical.
    pub fn successor(&self) -> NzmCode {
        let mut digits = self.digits.clone();
        digits.push(1);
        NzmCode { params: self.params, digits }
    }

    /// Digit-local increment. Branches on the trailing run of `d`s:
    ///
    /// - no trailing `d` and last digit `< x`: bump the last digit;
    /// - no trailing `d`, last digit `= x`: it becomes `1` and the carry
    ///   moves one position up;
    /// - a trailing run `a · d^i` with `a < x`: the lowest digit becomes
    ///   `x` (a net `+1`, since `x = d+1`);
    /// - a trailing run `x · d^i`: the whole run becomes `1^{i+1}` and the
    ///   carry moves above the run.
    ///
    /// A carry past the top digit prepends a leading `1`.
    pub fn inc(&self) -> NzmCode {
        let params = self.params;
        let d = params.d();
        let x = params.x();
        let mut a: Vec<u32> = self.digits.iter().rev().copied().collect(); // LSB first
        let mut i = 0;
        while i < a.len() && a[i] == d {
            i += 1;
        }
        if i > 0 {
            if i < a.len() && a[i] == x {
                for slot in a.iter_mut().take(i + 1) {
                    *slot = 1;
                }
                if i + 1 == a.len() {
                    a.push(1);
                } else {
                    a[i + 1] += 1;
                }
            } else {
                a[0] = x;
            }
        } else if a[0] == x {
            a[0] = 1;
            if a.len() == 1 {
                a.push(1);
            } else {
                a[1] += 1;
            }
        } else {
            a[0] += 1;
        }
        let digits: Vec<u32> = a.iter().rev().copied().collect();
        let out = NzmCode { params, digits };
        debug_assert_eq!(out.value(), self.value() + 1u32);
        debug_assert!(!has_forbidden(&out.digits, x, d));
        out
    }

    /// Digit-local decrement; errors on the code of 1 (zero has no code).
    ///
    /// A trailing run of `1`s borrows: the first non-`1` digit drops by
    /// one, the position below it becomes `x` and the rest of the run
    /// becomes `d`s. An all-ones code `1^{k+1}` (the value `M_k`) shrinks
    /// to `x d^{k−1}`.
    pub fn dec(&self) -> Result<NzmCode, CodeError> {
        let params = self.params;
        let d = params.d();
        let x = params.x();
        if self.digits == [1] {
            return Err(CodeError::DecrementUnderflow(System::Nzm));
        }
        let mut a: Vec<u32> = self.digits.iter().rev().copied().collect(); // LSB first
        if a[0] != 1 {
            a[0] -= 1;
        } else {
            let mut i = 0;
            while i < a.len() && a[i] == 1 {
                i += 1;
            }
            if i == a.len() {
                // All ones: 1^{k+1} = M_k, and M_k − 1 = x d^{k−1}.
                let k = a.len() - 1;
                a = vec![d; k];
                if let Some(top) = a.last_mut() {
                    *top = x;
                }
            } else {
                a[i] -= 1;
                a[i - 1] = x;
                for slot in a.iter_mut().take(i - 1) {
                    *slot = d;
                }
                // A now-leading zero (the borrowed digit was a top 1 … not
                // possible: a[i] ≥ 2 before the borrow, so a[i] ≥ 1 after).
            }
        }
        let digits: Vec<u32> = a.iter().rev().copied().collect();
        let out = NzmCode { params, digits };
        debug_assert_eq!(out.value() + 1u32, self.value());
        debug_assert!(!has_forbidden(&out.digits, x, d));
        Ok(out)
    }

    /// Cross-conversion: the metallic code of the same value.
    pub fn to_metallic(&self) -> MetallicCode {
        MetallicCode::encode(self.params, &self.value())
    }
}

impl fmt::Display for NzmCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_digits(&self.digits, f)
    }
}

/// Either kind of code; convenience for callers that dispatch on
/// [`System`] at run time (the CLI does).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyCode {
    /// A metallic code.
    Metallic(MetallicCode),
    /// An nzm code.
    Nzm(NzmCode),
}

impl AnyCode {
    /// Parses text in the given system.
    pub fn parse(params: Params, system: System, text: &str) -> Result<Self, CodeError> {
        Ok(match system {
            System::Metallic => AnyCode::Metallic(MetallicCode::parse(params, text)?),
            System::Nzm => AnyCode::Nzm(NzmCode::parse(params, text)?),
        })
    }

    /// Encodes a value in the given system.
    pub fn encode(params: Params, system: System, n: &BigUint) -> Result<Self, CodeError> {
        Ok(match system {
            System::Metallic => AnyCode::Metallic(MetallicCode::encode(params, n)),
            System::Nzm => AnyCode::Nzm(NzmCode::encode(params, n)?),
        })
    }

    /// The evaluated value.
    pub fn value(&self) -> BigUint {
        match self {
            AnyCode::Metallic(c) => c.value(),
            AnyCode::Nzm(c) => c.value(),
        }
    }
}

impl fmt::Display for AnyCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyCode::Metallic(c) => c.fmt(f),
            AnyCode::Nzm(c) => c.fmt(f),
        }
    }
}

impl FromStr for System {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "metallic" => Ok(System::Metallic),
            "nzm" => Ok(System::Nzm),
            other => Err(format!("unknown system {other:?} (expected metallic|nzm)")),
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Metallic => "metallic",
            System::Nzm => "nzm",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32) -> Params {
        Params::new(p).unwrap()
    }

    fn met(p: u32, text: &str) -> MetallicCode {
        MetallicCode::parse(params(p), text).unwrap()
    }

    fn nzm(p: u32, text: &str) -> NzmCode {
        NzmCode::parse(params(p), text).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(met(5, "2,1").value(), big(7));
        assert_eq!(met(5, "0").value(), big(0));
        assert_eq!(nzm(5, "1,1,1").value(), big(12));
    }

    #[test]
    fn encode_metallic_examples() {
        assert_eq!(MetallicCode::encode(params(5), &big(8)).to_string(), "1,0,0");
        assert_eq!(MetallicCode::encode(params(9), &big(7)).to_string(), "1,0");
        assert_eq!(MetallicCode::encode(params(5), &big(13)).to_string(), "1,1,2");
    }

    #[test]
    fn encode_nzm_examples() {
        assert_eq!(NzmCode::encode(params(5), &big(8)).unwrap().to_string(), "2,2");
        assert_eq!(NzmCode::encode(params(5), &big(12)).unwrap().to_string(), "1,1,1");
        assert_eq!(NzmCode::encode(params(5), &big(3)).unwrap().to_string(), "3");
        assert_eq!(
            NzmCode::encode(params(5), &big(0)),
            Err(CodeError::ZeroUnrepresentable)
        );
    }

    #[test]
    fn normalize_metallic_examples() {
        assert_eq!(MetallicCode::normalize(params(5), &[2, 2]).unwrap().to_string(), "1,0,0");
        assert_eq!(
            MetallicCode::normalize(params(5), &[2, 1, 2]).unwrap().to_string(),
            "1,0,0,0"
        );
        assert_eq!(
            MetallicCode::normalize(params(5), &[1, 0, 2]).unwrap().to_string(),
            "1,0,2"
        );
    }

    #[test]
    fn normalize_nzm_examples() {
        assert_eq!(NzmCode::normalize(params(5), &[3, 3]).unwrap().to_string(), "1,1,1");
        let raw = [2u32, 3, 2, 3, 1];
        let normalized = NzmCode::normalize(params(5), &raw).unwrap();
        assert_eq!(normalized.value(), eval_digits(params(5), &raw));
        assert_eq!(
            NzmCode::normalize(params(5), &[3, 2, 1]).unwrap().to_string(),
            "3,2,1"
        );
    }

    #[test]
    fn metallic_inc_dec_examples() {
        assert_eq!(met(5, "2,1").inc().to_string(), "1,0,0");
        assert_eq!(met(5, "1,0,0").dec().unwrap().to_string(), "2,1");
        assert_eq!(met(5, "1,2").inc().to_string(), "2,0");
        assert_eq!(
            MetallicCode::zero(params(5)).dec(),
            Err(CodeError::DecrementUnderflow(System::Metallic))
        );
    }

    #[test]
    fn nzm_inc_examples() {
        assert_eq!(nzm(5, "3").inc().to_string(), "1,1");
        assert_eq!(nzm(5, "3,2").inc().to_string(), "1,1,1");
        assert_eq!(nzm(5, "1,2").inc().to_string(), "1,3");
    }

    #[test]
    fn nzm_dec_examples() {
        assert_eq!(nzm(5, "2,1").dec().unwrap().to_string(), "1,3");
        assert_eq!(nzm(5, "1,2").dec().unwrap().to_string(), "1,1");
        assert_eq!(nzm(5, "1,1,1").dec().unwrap().to_string(), "3,2");
        assert_eq!(
            nzm(5, "1").dec(),
            Err(CodeError::DecrementUnderflow(System::Nzm))
        );
    }

    #[test]
    fn conversions() {
        assert_eq!(met(5, "1,0,0").to_nzm().unwrap().to_string(), "2,2");
        assert_eq!(met(5, "2,0").to_nzm().unwrap().to_string(), "1,3");
        assert_eq!(nzm(5, "3").to_metallic().to_string(), "1,0");
        assert!(MetallicCode::zero(params(5)).to_nzm().is_err());
    }

    #[test]
    fn signature_and_successor() {
        assert_eq!(met(5, "2,1").signature(), 1);
        assert_eq!(met(5, "1,0").successor().to_string(), "1,0,0");
        assert_eq!(nzm(5, "2").successor().to_string(), "2,1");
    }

    #[test]
    fn enumeration_chain_matches_encode() {
        for p in [5u32, 7, 9, 12] {
            let q = params(p);
            let mut c = MetallicCode::zero(q);
            let mut z = NzmCode::encode(q, &big(1)).unwrap();
            for n in 1u64..=800 {
                c = c.inc();
                assert_eq!(c, MetallicCode::encode(q, &big(n)), "metallic p={p} n={n}");
                assert_eq!(c.dec().unwrap(), MetallicCode::encode(q, &big(n - 1)));
                if n >= 2 {
                    z = z.inc();
                    assert_eq!(z, NzmCode::encode(q, &big(n)).unwrap(), "nzm p={p} n={n}");
                    assert_eq!(z.dec().unwrap(), NzmCode::encode(q, &big(n - 1)).unwrap());
                }
            }
        }
    }

    #[test]
    fn decrement_suffix_identity() {
        // [[ω]·0^k ⊖ 1] = [[ω]⊖1] · d c^{k−1} for k ≥ 1, whenever the
        // signature of [ω] is not 0 (so the trailing zero run of [ω]·0^k
        // is exactly k).
        for p in [5u32, 7, 9] {
            let q = params(p);
            for omega in 1u64..=60 {
                let w = MetallicCode::encode(q, &big(omega));
                if w.signature() == 0 {
                    continue;
                }
                for k in 1usize..=3 {
                    let mut digits = w.digits().to_vec();
                    digits.extend(std::iter::repeat(0).take(k));
                    let node = MetallicCode::from_digits(q, digits).unwrap();
                    let mut expect = w.dec().unwrap().digits().to_vec();
                    if expect == [0] {
                        expect.clear();
                    }
                    expect.push(q.d());
                    expect.extend(std::iter::repeat(q.c()).take(k - 1));
                    assert_eq!(
                        node.dec().unwrap().digits(),
                        &expect[..],
                        "p={p} omega={omega} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn zero_node_conversion_identities() {
        // [ω]·0 = [ω−1]·x   and   [ω]·0^k = [ω−1]·d c^{k−2} d (k ≥ 2),
        // for sig([ω]) ≠ 0, where [ω−1] is the *metallic* code of ω−1
        // (equal to [ω] with its last digit decremented). The right-hand
        // word may contain zeros; the identity is value-level, and when the
        // word happens to be a zero-free pattern-free digit string it is
        // exactly the canonical nzm code of the 0-node.
        for p in [5u32, 7, 9] {
            let q = params(p);
            for omega in 1u64..=500 {
                let w = MetallicCode::encode(q, &big(omega));
                if w.signature() == 0 {
                    continue;
                }
                let mut prev = MetallicCode::encode(q, &big(omega - 1)).digits().to_vec();
                if prev == [0] {
                    prev.clear();
                }
                for k in 1usize..=4 {
                    let mut node = w.digits().to_vec();
                    node.extend(std::iter::repeat(0).take(k));
                    let val = eval_digits(q, &node);

                    let mut word = prev.clone();
                    if k == 1 {
                        word.push(q.x());
                    } else {
                        word.push(q.d());
                        word.extend(std::iter::repeat(q.c()).take(k - 2));
                        word.push(q.d());
                    }
                    assert_eq!(eval_digits(q, &word), val, "p={p} omega={omega} k={k}");
                    let zero_free = word.iter().all(|&a| a >= 1);
                    if zero_free && !has_forbidden(&word, q.x(), q.d()) {
                        let canonical = NzmCode::encode(q, &val).unwrap();
                        assert_eq!(canonical.digits(), &word[..], "p={p} omega={omega} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn compact_parse() {
        assert_eq!(MetallicCode::parse(params(5), "100").unwrap().to_string(), "1,0,0");
        assert_eq!(NzmCode::parse(params(12), "a1").unwrap().digits(), &[10, 1]);
        assert!(MetallicCode::parse(params(5), "3,0").is_err()); // digit > d
        assert!(NzmCode::parse(params(5), "1,0").is_err()); // digit 0
        assert!(MetallicCode::parse(params(5), "2,1,2").is_err()); // forbidden
    }
}
