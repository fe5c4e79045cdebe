//! Binary (±1) sequences and their non-periodic autocorrelation.
//!
//! A [`BinarySeq`] is packed into one `u64`: bit `k` (0-based) is set exactly
//! when element `k + 1` equals −1. Every operation in the crate uses this
//! mapping; positions are 1-based in docs and 0-based in code.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Longest sequence a single packed word can hold.
pub const MAX_LEN: usize = 64;

#[inline]
const fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Bits at 0-based odd indices, i.e. the even 1-based positions.
const EVEN_POSITIONS: u64 = 0xAAAA_AAAA_AAAA_AAAA;

/// A ±1 sequence of length `1..=64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinarySeq {
    bits: u64,
    len: u8,
}

impl BinarySeq {
    /// Builds a sequence from its packed form. Bits above `len` must be clear.
    pub fn from_bits(bits: u64, len: usize) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::BadLength(len));
        }
        if bits & !low_mask(len) != 0 {
            return Err(Error::LengthMismatch(format!(
                "bits set beyond length {len}"
            )));
        }
        Ok(Self {
            bits,
            len: len as u8,
        })
    }

    /// The all-(+1) sequence.
    pub fn ones(len: usize) -> Result<Self> {
        Self::from_bits(0, len)
    }

    pub fn from_signs(signs: &[i32]) -> Result<Self> {
        if signs.is_empty() || signs.len() > MAX_LEN {
            return Err(Error::BadLength(signs.len()));
        }
        let mut bits = 0u64;
        for (k, &s) in signs.iter().enumerate() {
            match s {
                1 => {}
                -1 => bits |= 1 << k,
                other => return Err(Error::BadSign(other)),
            }
        }
        Ok(Self {
            bits,
            len: signs.len() as u8,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// Always false; sequences have at least one element.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    fn mask(&self) -> u64 {
        low_mask(self.len())
    }

    /// Element at 0-based index `k`, as +1 or −1.
    #[inline]
    pub fn get(&self, k: usize) -> i32 {
        debug_assert!(k < self.len());
        1 - 2 * ((self.bits >> k) & 1) as i32
    }

    /// Returns a copy with element `k` (0-based) set to `sign`.
    #[inline]
    pub fn with(self, k: usize, sign: i32) -> Self {
        debug_assert!(k < self.len());
        let bits = if sign < 0 {
            self.bits | (1 << k)
        } else {
            self.bits & !(1 << k)
        };
        Self { bits, ..self }
    }

    pub fn signs(&self) -> Vec<i32> {
        (0..self.len()).map(|k| self.get(k)).collect()
    }

    /// −X
    #[inline]
    pub fn negate(self) -> Self {
        Self {
            bits: self.bits ^ self.mask(),
            ..self
        }
    }

    /// X′, the order-reversed sequence.
    #[inline]
    pub fn reverse(self) -> Self {
        Self {
            bits: self.bits.reverse_bits() >> (64 - self.len()),
            ..self
        }
    }

    /// X*, with x*_i = (−1)^(i−1) x_i.
    #[inline]
    pub fn alternate(self) -> Self {
        Self {
            bits: self.bits ^ (EVEN_POSITIONS & self.mask()),
            ..self
        }
    }

    /// The near-normal partner of an odd-length sequence: b_i = (−1)^(i−1) a_i
    /// for i ≤ n and b_(n+1) = −a_(n+1), where the length is n + 1.
    pub fn alpha(self) -> Result<Self> {
        let len = self.len();
        if len < 3 || len % 2 == 0 {
            return Err(Error::AlphaLength(len));
        }
        Ok(self.alpha_unchecked())
    }

    /// `alpha` without the length check; with odd length the last position is
    /// odd so alternation leaves it alone and we flip it explicitly.
    #[inline]
    pub(crate) fn alpha_unchecked(self) -> Self {
        let alt = self.alternate();
        Self {
            bits: alt.bits ^ (1 << (self.len() - 1)),
            ..alt
        }
    }

    /// Σ x_i, i.e. X(1).
    #[inline]
    pub fn sum(&self) -> i32 {
        self.len() as i32 - 2 * self.bits.count_ones() as i32
    }

    /// Σ (−1)^(i−1) x_i, i.e. X(−1).
    #[inline]
    pub fn alt_sum(&self) -> i32 {
        self.alternate().sum()
    }

    /// N_X(lag) for `lag >= 1`; zero once the lag reaches the length.
    #[inline]
    pub fn npaf_at(&self, lag: usize) -> i32 {
        let len = self.len();
        if lag >= len {
            return 0;
        }
        let overlap = len - lag;
        let disagree = ((self.bits ^ (self.bits >> lag)) & low_mask(overlap)).count_ones();
        overlap as i32 - 2 * disagree as i32
    }

    /// N_X(1..ℓ−1).
    pub fn npaf(&self) -> NpafVector {
        NpafVector {
            values: (1..self.len()).map(|i| self.npaf_at(i)).collect(),
            origin_len: self.len(),
        }
    }
}

impl fmt::Display for BinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len() {
            f.write_str(if self.get(k) > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySeq({self})")
    }
}

impl FromStr for BinarySeq {
    type Err = Error;

    /// Parses the `+`/`-` text form; the typographic minus `−` is accepted too.
    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' | '−' => Ok(-1),
                other => Err(Error::BadSymbol(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_signs(&signs)
    }
}

/// Non-periodic autocorrelation values at lags 1..ℓ−1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NpafVector {
    pub values: Vec<i32>,
    pub origin_len: usize,
}

impl NpafVector {
    /// Value at `lag` (1-based); zero beyond the stored range.
    pub fn at(&self, lag: usize) -> i32 {
        if lag == 0 {
            return self.origin_len as i32;
        }
        self.values.get(lag - 1).copied().unwrap_or(0)
    }

    /// Checks |v_i| ≤ ℓ − i and v_i ≡ ℓ − i (mod 2).
    pub fn is_consistent(&self) -> bool {
        self.values.len() + 1 == self.origin_len
            && self.values.iter().enumerate().all(|(k, &v)| {
                let room = (self.origin_len - (k + 1)) as i32;
                v.abs() <= room && (room - v).rem_euclid(2) == 0
            })
    }
}

/// Which of the four sequences of a quadruple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot {
    A,
    B,
    C,
    D,
}

impl Slot {
    pub const ALL: [Slot; 4] = [Slot::A, Slot::B, Slot::C, Slot::D];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Four binary sequences (A;B;C;D) with |A| = |B| = m and |C| = |D| = n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BsQuadruple {
    seqs: [BinarySeq; 4],
}

impl BsQuadruple {
    pub fn new(a: BinarySeq, b: BinarySeq, c: BinarySeq, d: BinarySeq) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch(format!(
                "|A| = {} but |B| = {}",
                a.len(),
                b.len()
            )));
        }
        if c.len() != d.len() {
            return Err(Error::LengthMismatch(format!(
                "|C| = {} but |D| = {}",
                c.len(),
                d.len()
            )));
        }
        Ok(Self { seqs: [a, b, c, d] })
    }

    #[inline]
    pub(crate) fn from_array_unchecked(seqs: [BinarySeq; 4]) -> Self {
        Self { seqs }
    }

    #[inline]
    pub fn get(&self, slot: Slot) -> BinarySeq {
        self.seqs[slot.index()]
    }

    #[inline]
    pub fn a(&self) -> BinarySeq {
        self.seqs[0]
    }
    #[inline]
    pub fn b(&self) -> BinarySeq {
        self.seqs[1]
    }
    #[inline]
    pub fn c(&self) -> BinarySeq {
        self.seqs[2]
    }
    #[inline]
    pub fn d(&self) -> BinarySeq {
        self.seqs[3]
    }

    #[inline]
    pub fn seqs(&self) -> [BinarySeq; 4] {
        self.seqs
    }

    #[inline]
    pub(crate) fn seqs_mut(&mut self) -> &mut [BinarySeq; 4] {
        &mut self.seqs
    }

    /// Length of A and B.
    pub fn m(&self) -> usize {
        self.seqs[0].len()
    }

    /// Length of C and D.
    pub fn n(&self) -> usize {
        self.seqs[2].len()
    }

    /// N_A(i) + N_B(i) + N_C(i) + N_D(i) for i = 1..max(m,n)−1.
    pub fn defect_vector(&self) -> Vec<i32> {
        let top = self.m().max(self.n());
        (1..top)
            .map(|lag| self.seqs.iter().map(|s| s.npaf_at(lag)).sum())
            .collect()
    }

    /// Whether the four autocorrelations cancel at every nonzero lag.
    pub fn is_base_sequences(&self) -> bool {
        let top = self.m().max(self.n());
        (1..top).all(|lag| self.seqs.iter().map(|s| s.npaf_at(lag)).sum::<i32>() == 0)
    }

    /// `Ok(())` or the first lag with a nonzero defect.
    pub fn check_base_sequences(&self) -> Result<()> {
        match self.defect_vector().iter().position(|&v| v != 0) {
            None => Ok(()),
            Some(k) => Err(Error::NotBaseSequences { lag: k + 1 }),
        }
    }

    /// (X(1)) for X = A, B, C, D.
    pub fn sums(&self) -> [i32; 4] {
        self.seqs.map(|s| s.sum())
    }

    /// (X(−1)) for X = A, B, C, D.
    pub fn alt_sums(&self) -> [i32; 4] {
        self.seqs.map(|s| s.alt_sum())
    }

    /// Near-normal shape: m = n + 1, n even and B = alpha(A). Does not check
    /// the autocorrelation identity.
    pub fn has_near_normal_shape(&self) -> bool {
        let n = self.n();
        self.m() == n + 1 && n % 2 == 0 && self.b() == self.a().alpha_unchecked()
    }

    /// Near-normal shape plus the base-sequence identity.
    pub fn is_near_normal(&self) -> bool {
        self.has_near_normal_shape() && self.is_base_sequences()
    }
}

impl fmt::Debug for BsQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}; {}; {}; {})",
            self.seqs[0], self.seqs[1], self.seqs[2], self.seqs[3]
        )
    }
}

/// Free-function form of [`BsQuadruple::is_near_normal`].
pub fn is_near_normal(q: &BsQuadruple) -> bool {
    q.is_near_normal()
}

/// A validated member of NN(n).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NnQuadruple(BsQuadruple);

impl NnQuadruple {
    /// Builds (A; alpha(A); C; D) and validates it.
    pub fn from_acd(a: BinarySeq, c: BinarySeq, d: BinarySeq) -> Result<Self> {
        let b = a.alpha()?;
        Self::try_from(BsQuadruple::new(a, b, c, d)?)
    }

    #[inline]
    pub(crate) fn new_unchecked(q: BsQuadruple) -> Self {
        debug_assert!(q.is_near_normal(), "{q:?}");
        Self(q)
    }

    #[inline]
    pub fn inner(&self) -> &BsQuadruple {
        &self.0
    }

    #[inline]
    pub fn into_inner(self) -> BsQuadruple {
        self.0
    }

    /// The parameter n (length of C and D).
    pub fn n(&self) -> usize {
        self.0.n()
    }
}

impl std::ops::Deref for NnQuadruple {
    type Target = BsQuadruple;

    fn deref(&self) -> &BsQuadruple {
        &self.0
    }
}

impl TryFrom<BsQuadruple> for NnQuadruple {
    type Error = Error;

    fn try_from(q: BsQuadruple) -> Result<Self> {
        if !q.has_near_normal_shape() {
            return Err(Error::NotNearNormal);
        }
        q.check_base_sequences()?;
        Ok(Self(q))
    }
}

impl fmt::Debug for NnQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Nn{:?}", self.0)
    }
}
