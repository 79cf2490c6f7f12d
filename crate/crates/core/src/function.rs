//! Truth-table representation of Boolean functions on up to six variables.
//!
//! A function `f` on `n` variables is stored as a `u64` where bit `t` holds
//! `f(t)` for the truth index `t ∈ [0, 2^n)`. Variable `x_i` (1-based) reads
//! bit `i - 1` of the truth index, so `x_1` toggles fastest and `x_n` slowest.
//!
//! The text encodings follow the same order: character `p` of a binary string
//! is `f(p)`, read left to right. A `0x` hex string is that binary string read
//! as a single number with the leftmost character most significant.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported variable count.
pub const MAX_VARS: usize = 6;

/// Index into a truth table; bit `i - 1` is the value of `x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthIndex(pub usize);

impl TruthIndex {
    #[inline]
    pub fn var(self, i: usize) -> bool {
        (self.0 >> (i - 1)) & 1 == 1
    }
}

/// Text encoding of a truth table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Binary,
    Hex,
}

impl TableFormat {
    /// Binary for small tables, hex from four variables up.
    pub fn default_for(n: usize) -> Self {
        if n >= 4 {
            TableFormat::Hex
        } else {
            TableFormat::Binary
        }
    }
}

/// An `n`-variable Boolean function stored as its `2^n`-bit truth table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanFunction {
    // Field order gives the derived `Ord` a (n, table integer) key.
    n: u8,
    bits: u64,
}

#[inline]
pub(crate) fn table_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1usize << n)) - 1
    }
}

/// Positions `t` with `x_i(t) = 1`, for `1 <= i <= 6`, over a full 64-bit word.
const VAR_WORDS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Positions where `x_i = a`, restricted to an `n`-variable table.
#[inline]
pub(crate) fn slice_mask(n: usize, i: usize, a: bool) -> u64 {
    let ones = VAR_WORDS[i - 1];
    let word = if a { ones } else { !ones };
    word & table_mask(n)
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_VARS {
        Err(Error::UnsupportedVariableCount { n, max: MAX_VARS })
    } else {
        Ok(())
    }
}

fn check_var(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(Error::VariableOutOfRange { i, n })
    } else {
        Ok(())
    }
}

impl BooleanFunction {
    /// Builds a function from its raw table integer (bit `t` = `f(t)`).
    /// Bits above `2^n` must be clear.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_n(n)?;
        if bits & !table_mask(n) != 0 {
            return Err(Error::TableOverflow { n });
        }
        Ok(Self { n: n as u8, bits })
    }

    /// Like [`from_bits`](Self::from_bits) but masks off excess bits.
    #[inline]
    pub(crate) fn from_bits_truncate(n: usize, bits: u64) -> Self {
        debug_assert!(n <= MAX_VARS);
        Self {
            n: n as u8,
            bits: bits & table_mask(n),
        }
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_bits(n, 0)
    }

    pub fn one(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self::from_bits_truncate(n, u64::MAX))
    }

    /// Every function on `n` variables in increasing table order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = BooleanFunction>> {
        if n > 4 {
            return Err(Error::EnumerationTooLarge { n, max: 4 });
        }
        let count = 1u64 << (1u64 << n);
        Ok((0..count).map(move |bits| Self::from_bits_truncate(n, bits)))
    }

    /// Projection `x_i`: blocks of `2^(i-1)` zeros and ones alternating,
    /// starting with zeros.
    pub fn variable_pattern(i: usize, n: usize) -> Result<Self> {
        check_n(n)?;
        check_var(i, n)?;
        Ok(Self::from_bits_truncate(n, VAR_WORDS[i - 1]))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Raw table integer; bit `t` holds `f(t)`.
    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of truth-table rows, `2^n`.
    #[inline]
    pub fn len(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn evaluate(&self, t: TruthIndex) -> Result<bool> {
        if t.0 >= self.len() {
            return Err(Error::IndexOutOfRange {
                t: t.0,
                len: self.len(),
            });
        }
        Ok(self.get(t.0))
    }

    #[inline]
    pub(crate) fn get(&self, t: usize) -> bool {
        (self.bits >> t) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == table_mask(self.n())
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.is_one()
    }

    /// The constant value, if `f` is constant.
    pub fn constant_value(&self) -> Option<bool> {
        if self.is_zero() {
            Some(false)
        } else if self.is_one() {
            Some(true)
        } else {
            None
        }
    }

    pub fn count_ones(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Subfunction `f|x_i=a` on `n - 1` variables; the remaining variables keep
    /// their relative order.
    pub fn restrict(&self, i: usize, a: bool) -> Result<Self> {
        check_var(i, self.n())?;
        Ok(self.restrict_unchecked(i, a))
    }

    pub(crate) fn restrict_unchecked(&self, i: usize, a: bool) -> Self {
        let low = i - 1;
        let low_mask = (1usize << low) - 1;
        let mut out = 0u64;
        for t_short in 0..(1usize << (self.n() - 1)) {
            let t = ((t_short >> low) << (low + 1)) | ((a as usize) << low) | (t_short & low_mask);
            out |= (self.get(t) as u64) << t_short;
        }
        Self::from_bits_truncate(self.n() - 1, out)
    }

    pub fn complement(&self) -> Self {
        Self::from_bits_truncate(self.n(), !self.bits)
    }

    /// Juxtaposition `fg`: the new variable `x_{n+1}` selects `self` (0) or
    /// `other` (1).
    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        check_n(self.n() + 1)?;
        let shift = self.len();
        Ok(Self::from_bits_truncate(
            self.n() + 1,
            self.bits | (other.bits << shift),
        ))
    }

    pub fn hamming_distance(&self, other: &Self) -> Result<u32> {
        self.same_arity(other)?;
        Ok((self.bits ^ other.bits).count_ones())
    }

    /// Distance to the nearer constant table.
    pub fn ncf_distance(&self) -> u32 {
        let ones = self.count_ones();
        ones.min(self.len() as u32 - ones)
    }

    /// Inserts a new variable at position `k` (old `x_j`, `j >= k`, becomes
    /// `x_{j+1}`) such that the result is `b` whenever `x_k = a` and equals
    /// `self` otherwise.
    pub fn insert_canalizing_variable(&self, k: usize, a: bool, b: bool) -> Result<Self> {
        let m = self.n() + 1;
        check_n(m)?;
        check_var(k, m)?;
        let low = k - 1;
        let low_mask = (1usize << low) - 1;
        let mut out = 0u64;
        for t in 0..(1usize << m) {
            let x_k = (t >> low) & 1 == 1;
            let value = if x_k == a {
                b
            } else {
                self.get(((t >> (low + 1)) << low) | (t & low_mask))
            };
            out |= (value as u64) << t;
        }
        Ok(Self::from_bits_truncate(m, out))
    }

    /// Variables whose two restrictions differ, ascending.
    pub fn essential_variables(&self) -> Vec<usize> {
        (1..=self.n())
            .filter(|&i| self.restrict_unchecked(i, false) != self.restrict_unchecked(i, true))
            .collect()
    }

    /// Parses a binary string of length `2^n`, or a `0x` hex string of
    /// `2^n / 4` digits (`n >= 2`).
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        check_n(n)?;
        let text = text.trim();
        let len = 1usize << n;
        if let Some(hex) = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
            if n < 2 {
                return Err(Error::HexTooShort { n });
            }
            let digits = len / 4;
            if hex.len() != digits {
                return Err(Error::WrongLength {
                    expected: digits,
                    found: hex.len(),
                    what: "hex digits",
                });
            }
            let value = u64::from_str_radix(hex, 16).map_err(|_| Error::InvalidCharacter {
                text: text.to_string(),
            })?;
            if !hex.chars().all(|c| c.is_ascii_hexdigit()) {
                return Err(Error::InvalidCharacter {
                    text: text.to_string(),
                });
            }
            // leftmost bit of the number is f(0)
            let mut bits = 0u64;
            for p in 0..len {
                if (value >> (len - 1 - p)) & 1 == 1 {
                    bits |= 1 << p;
                }
            }
            return Ok(Self::from_bits_truncate(n, bits));
        }
        let count = text.chars().count();
        if count != len {
            return Err(Error::WrongLength {
                expected: len,
                found: count,
                what: "binary digits",
            });
        }
        let mut bits = 0u64;
        for (p, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << p,
                _ => {
                    return Err(Error::InvalidCharacter {
                        text: text.to_string(),
                    })
                }
            }
        }
        Ok(Self::from_bits_truncate(n, bits))
    }

    /// Parses with the variable count inferred from the text length.
    pub fn parse_auto(text: &str) -> Result<Self> {
        let text = text.trim();
        let (len, hex) = match text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
            Some(h) => (h.len() * 4, true),
            None => (text.chars().count(), false),
        };
        let n = (0..=MAX_VARS).find(|&n| 1usize << n == len && (!hex || n >= 2));
        match n {
            Some(n) => Self::parse(text, n),
            None => Err(Error::UnknownLength { len }),
        }
    }

    pub fn format(&self, fmt: TableFormat) -> String {
        match fmt {
            TableFormat::Binary => (0..self.len())
                .map(|t| if self.get(t) { '1' } else { '0' })
                .collect(),
            TableFormat::Hex => {
                let len = self.len();
                let mut value = 0u64;
                for p in 0..len {
                    if self.get(p) {
                        value |= 1 << (len - 1 - p);
                    }
                }
                format!("0x{:0width$X}", value, width = (len / 4).max(1))
            }
        }
    }

    fn same_arity(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::ArityMismatch {
                left: self.n(),
                right: other.n(),
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() >= 2 && f.alternate() {
            f.write_str(&self.format(TableFormat::Hex))
        } else {
            f.write_str(&self.format(TableFormat::default_for(self.n())))
        }
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(n={}, {})", self.n, self)
    }
}

impl FromStr for BooleanFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_auto(s)
    }
}

/// Serialized as `{ "n": .., "table": ".." }`, the table in its default text
/// encoding.
#[derive(Serialize, Deserialize)]
struct FunctionRepr {
    n: usize,
    table: String,
}

impl Serialize for BooleanFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FunctionRepr {
            n: self.n(),
            table: self.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BooleanFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = FunctionRepr::deserialize(deserializer)?;
        BooleanFunction::parse(&repr.table, repr.n).map_err(serde::de::Error::custom)
    }
}
