//! Digit words read least significant digit first.

use std::fmt;

use crate::error::DfaError;

/// A single digit; only meaningful together with a base.
pub type Digit = u32;

/// A word over the digit alphabet, least significant digit first.
///
/// Trailing zeros are allowed and do not change the value.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Digit>);

impl Word {
    pub fn new(digits: Vec<Digit>) -> Self {
        Word(digits)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut digits = self.0.clone();
        digits.extend_from_slice(&other.0);
        Word(digits)
    }

    pub fn check_base(&self, base: u32) -> Result<(), DfaError> {
        check_base(base)?;
        match self.0.iter().find(|&&d| d >= base) {
            Some(&digit) => Err(DfaError::DigitOutOfRange { digit, base }),
            None => Ok(()),
        }
    }
}

impl From<Vec<Digit>> for Word {
    fn from(digits: Vec<Digit>) -> Self {
        Word(digits)
    }
}

impl From<&[Digit]> for Word {
    fn from(digits: &[Digit]) -> Self {
        Word(digits.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_base(base: u32) -> Result<(), DfaError> {
    if base < 2 {
        Err(DfaError::InvalidBase(base))
    } else {
        Ok(())
    }
}

/// Value of an LSDF word: `Σ a_i · base^i`.
pub fn value(word: &Word, base: u32) -> Result<u64, DfaError> {
    word.check_base(base)?;
    // Horner from the most significant end.
    word.0.iter().rev().try_fold(0u64, |acc, &d| {
        acc.checked_mul(base as u64)
            .and_then(|v| v.checked_add(d as u64))
            .ok_or(DfaError::Overflow)
    })
}

/// Canonical LSDF representation of `n`: no trailing zero, empty for 0.
pub fn lsdf_rep(mut n: u64, base: u32) -> Word {
    assert!(base >= 2, "base must be at least 2");
    let base = base as u64;
    let mut digits = Vec::new();
    while n > 0 {
        digits.push((n % base) as Digit);
        n /= base;
    }
    Word(digits)
}

/// Appends the canonical digits of `n` to `out`, reusing its allocation.
pub(crate) fn push_digits(mut n: u64, base: u32, out: &mut Vec<Digit>) {
    out.clear();
    let base = base as u64;
    while n > 0 {
        out.push((n % base) as Digit);
        n /= base;
    }
}
