//! Digit encoding of sequence pairs and near-normal quadruples.
//!
//! A pair (X;Y) of length ℓ is cut into quads `[x_i x_(ℓ+1−i); y_i y_(ℓ+1−i)]`
//! for i = 1..⌊ℓ/2⌋, each written as one digit 0–8, followed for odd ℓ by a
//! central-column digit 0–3. A near-normal quadruple is written `AB;CD`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::seq::{BinarySeq, BsQuadruple, NnQuadruple};

/// Sign patterns `(x_i, x_(ℓ+1−i), y_i, y_(ℓ+1−i))` for labels 0–8.
const QUAD_PATTERNS: [[i32; 4]; 9] = [
    [1, 1, 1, -1],
    [1, 1, 1, 1],
    [1, 1, -1, -1],
    [-1, 1, -1, 1],
    [1, -1, -1, 1],
    [-1, 1, 1, -1],
    [1, -1, 1, -1],
    [-1, -1, 1, 1],
    [-1, -1, -1, -1],
];

/// Column `(x_(m+1), y_(m+1))` for central labels 0–3.
const CENTRAL_PATTERNS: [[i32; 2]; 4] = [[1, 1], [1, -1], [-1, 1], [-1, -1]];

const fn pattern_key(p: [i32; 4]) -> usize {
    let mut key = 0;
    let mut k = 0;
    while k < 4 {
        if p[k] < 0 {
            key |= 1 << k;
        }
        k += 1;
    }
    key
}

/// Inverse of `QUAD_PATTERNS`, indexed by `pattern_key`.
const QUAD_LOOKUP: [Option<u8>; 16] = {
    let mut table = [None; 16];
    let mut label = 0;
    while label < 9 {
        table[pattern_key(QUAD_PATTERNS[label])] = Some(label as u8);
        label += 1;
    }
    table
};

/// A quad digit 0–8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadLabel(u8);

impl QuadLabel {
    pub fn new(digit: u8) -> Option<Self> {
        (digit <= 8).then_some(Self(digit))
    }

    pub fn digit(self) -> u8 {
        self.0
    }

    /// Signs `(x_i, x_(ℓ+1−i), y_i, y_(ℓ+1−i))`.
    pub fn pattern(self) -> [i32; 4] {
        QUAD_PATTERNS[self.0 as usize]
    }

    pub fn from_pattern(p: [i32; 4]) -> Option<Self> {
        QUAD_LOOKUP[pattern_key(p)].map(Self)
    }
}

/// A central-column digit 0–3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentralLabel(u8);

impl CentralLabel {
    pub fn new(digit: u8) -> Option<Self> {
        (digit <= 3).then_some(Self(digit))
    }

    pub fn digit(self) -> u8 {
        self.0
    }

    pub fn pattern(self) -> [i32; 2] {
        CENTRAL_PATTERNS[self.0 as usize]
    }

    pub fn from_pattern(p: [i32; 2]) -> Self {
        Self((if p[0] < 0 { 2 } else { 0 }) + (if p[1] < 0 { 1 } else { 0 }))
    }
}

/// Sign pattern of quad `i` (0-based) of the pair.
#[inline]
pub(crate) fn quad_pattern(x: BinarySeq, y: BinarySeq, i: usize) -> [i32; 4] {
    let last = x.len() - 1;
    [x.get(i), x.get(last - i), y.get(i), y.get(last - i)]
}

/// Label of quad `i` (0-based), if the pattern is one of the nine labeled ones.
#[inline]
pub(crate) fn quad_label(x: BinarySeq, y: BinarySeq, i: usize) -> Option<u8> {
    QUAD_LOOKUP[pattern_key(quad_pattern(x, y, i))]
}

/// Quad digits of a pair, without the central column.
pub(crate) fn quad_digits(x: BinarySeq, y: BinarySeq) -> Result<Vec<u8>> {
    (0..x.len() / 2)
        .map(|i| quad_label(x, y, i).ok_or(Error::UnlabeledQuad { index: i + 1 }))
        .collect()
}

/// Encodes a pair of equal-length sequences as a digit string.
pub fn encode_pair(x: BinarySeq, y: BinarySeq) -> Result<String> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(format!(
            "pair lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    let mut out: String = quad_digits(x, y)?
        .into_iter()
        .map(|d| char::from(b'0' + d))
        .collect();
    if x.len() % 2 == 1 {
        let mid = x.len() / 2;
        let central = CentralLabel::from_pattern([x.get(mid), y.get(mid)]);
        out.push(char::from(b'0' + central.digit()));
    }
    Ok(out)
}

fn parse_digit(ch: char, position: usize, max: u8) -> Result<u8> {
    match ch.to_digit(10) {
        Some(d) if d as u8 <= max => Ok(d as u8),
        _ => Err(Error::BadDigit {
            digit: ch,
            position,
        }),
    }
}

/// Inverse of [`encode_pair`] for a pair of length `len`.
pub fn decode_pair(digits: &str, len: usize) -> Result<(BinarySeq, BinarySeq)> {
    if len == 0 || len > crate::seq::MAX_LEN {
        return Err(Error::BadLength(len));
    }
    let chars: Vec<char> = digits.chars().collect();
    let quads = len / 2;
    let expected = quads + len % 2;
    if chars.len() != expected {
        return Err(Error::LengthMismatch(format!(
            "{} digits for length {len}, expected {expected}",
            chars.len()
        )));
    }
    let mut x = BinarySeq::ones(len)?;
    let mut y = x;
    for (i, &ch) in chars.iter().take(quads).enumerate() {
        let p = QUAD_PATTERNS[parse_digit(ch, i + 1, 8)? as usize];
        x = x.with(i, p[0]).with(len - 1 - i, p[1]);
        y = y.with(i, p[2]).with(len - 1 - i, p[3]);
    }
    if len % 2 == 1 {
        let p = CENTRAL_PATTERNS[parse_digit(chars[quads], quads + 1, 3)? as usize];
        x = x.with(quads, p[0]);
        y = y.with(quads, p[1]);
    }
    Ok((x, y))
}

/// The `AB;CD` code of a near-normal quadruple. Digits are stored as ASCII,
/// so the derived ordering is lexicographic on `ab`, then `cd`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NnCode {
    ab: String,
    cd: String,
}

impl NnCode {
    /// Validates the digit strings; `ab` must be one digit longer than `cd`.
    pub fn new(ab: &str, cd: &str) -> Result<Self> {
        let ab_chars: Vec<char> = ab.chars().collect();
        let cd_chars: Vec<char> = cd.chars().collect();
        let raw = || format!("{ab};{cd}");
        if cd_chars.is_empty() {
            return Err(Error::MalformedCode(raw(), "empty CD part"));
        }
        if ab_chars.len() != cd_chars.len() + 1 {
            return Err(Error::MalformedCode(
                raw(),
                "AB part must have exactly one more digit than CD part",
            ));
        }
        let (quads, central) = ab_chars.split_at(cd_chars.len());
        for (k, &ch) in quads.iter().enumerate() {
            parse_digit(ch, k + 1, 8)?;
        }
        parse_digit(central[0], ab_chars.len(), 3)?;
        for (k, &ch) in cd_chars.iter().enumerate() {
            if parse_digit(ch, ab_chars.len() + 1 + k, 8)? == 0 {
                return Err(Error::BadDigit {
                    digit: ch,
                    position: ab_chars.len() + 1 + k,
                });
            }
        }
        Ok(Self {
            ab: ab.to_owned(),
            cd: cd.to_owned(),
        })
    }

    pub fn ab(&self) -> &str {
        &self.ab
    }

    pub fn cd(&self) -> &str {
        &self.cd
    }

    /// n = 2 · |cd|.
    pub fn n(&self) -> usize {
        2 * self.cd.len()
    }

    pub fn ab_digits(&self) -> impl Iterator<Item = u8> + '_ {
        self.ab.bytes().map(|b| b - b'0')
    }

    pub fn cd_digits(&self) -> impl Iterator<Item = u8> + '_ {
        self.cd.bytes().map(|b| b - b'0')
    }
}

impl FromStr for NnCode {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (ab, cd) = text
            .split_once(';')
            .ok_or_else(|| Error::MalformedCode(text.to_owned(), "missing ';'"))?;
        Self::new(ab, cd.trim_start())
    }
}

impl fmt::Display for NnCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.ab, self.cd)
    }
}

impl fmt::Debug for NnCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NnCode({self})")
    }
}

impl Serialize for NnCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Decodes without the near-normal and autocorrelation checks.
pub fn decode_quadruple(code: &NnCode) -> Result<BsQuadruple> {
    let n = code.n();
    let (a, b) = decode_pair(&code.ab, n + 1)?;
    let (c, d) = decode_pair(&code.cd, n)?;
    BsQuadruple::new(a, b, c, d)
}

/// Decodes and validates a member of NN(n).
pub fn decode_nn(code: &NnCode) -> Result<NnQuadruple> {
    NnQuadruple::try_from(decode_quadruple(code)?)
}

/// Encodes a member of NN(n); fails when a quad has no label.
pub fn encode_nn(q: &NnQuadruple) -> Result<NnCode> {
    let ab = encode_pair(q.a(), q.b())?;
    let cd = encode_pair(q.c(), q.d())?;
    NnCode::new(&ab, &cd)
}
