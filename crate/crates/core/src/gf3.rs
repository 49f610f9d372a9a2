//! Arithmetic in GF(3) using the two-bit encoding `0 = (0,0)`, `1 = (0,1)`,
//! `2 = (1,0)`, written as `(hi, lo)`.
//!
//! Addition and multiplication are pure boolean formulas over the two bits,
//! so a whole machine word of trits can be processed with a handful of word
//! operations. [`TritVector`] stores the `lo` and `hi` bits of its
//! coefficients in two separate bit planes for exactly that reason.
//!
//! ```text
//! (a1,a0) + (b1,b0) = ((a0|b0)^t, (a1|b1)^t)   t = (a0|b1)^(a1|b0)
//! (a1,a0) * (b1,b0) = ((a1&b0)|(a0&b1), (a0&b0)|(a1&b1))
//!       -(a1,a0)    = (a0, a1)
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

type Word = u64;
const WORD_BITS: usize = Word::BITS as usize;

/// One GF(3) element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Trit {
    hi: bool,
    lo: bool,
}

#[allow(clippy::should_implement_trait)]
impl Trit {
    pub const ZERO: Trit = Trit { hi: false, lo: false };
    pub const ONE: Trit = Trit { hi: false, lo: true };
    pub const TWO: Trit = Trit { hi: true, lo: false };

    /// Builds a trit from its bit pair, rejecting the unused pattern `(1,1)`.
    pub fn from_bits(hi: bool, lo: bool) -> Result<Self> {
        if hi && lo {
            return Err(Error::InvalidTrit { hi, lo });
        }
        Ok(Trit { hi, lo })
    }

    pub fn from_u8(value: u8) -> Result<Self> {
        match value {
            0 => Ok(Trit::ZERO),
            1 => Ok(Trit::ONE),
            2 => Ok(Trit::TWO),
            v => Err(Error::InvalidTritValue(v)),
        }
    }

    /// Reduces an arbitrary integer modulo 3.
    pub const fn from_i64(value: i64) -> Self {
        match value.rem_euclid(3) {
            0 => Trit::ZERO,
            1 => Trit::ONE,
            _ => Trit::TWO,
        }
    }

    #[inline]
    pub fn hi(self) -> bool {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> bool {
        self.lo
    }

    #[inline]
    pub fn value(self) -> u8 {
        ((self.hi as u8) << 1) | self.lo as u8
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        !(self.hi || self.lo)
    }

    /// Bit-level addition; `t` is the shared correction term.
    #[inline]
    pub fn add(self, rhs: Trit) -> Trit {
        let t = (self.lo | rhs.hi) ^ (self.hi | rhs.lo);
        Trit {
            hi: (self.lo | rhs.lo) ^ t,
            lo: (self.hi | rhs.hi) ^ t,
        }
    }

    #[inline]
    pub fn mul(self, rhs: Trit) -> Trit {
        Trit {
            hi: (self.hi & rhs.lo) | (self.lo & rhs.hi),
            lo: (self.lo & rhs.lo) | (self.hi & rhs.hi),
        }
    }

    /// Negation swaps the two bits.
    #[inline]
    pub fn neg(self) -> Trit {
        Trit {
            hi: self.lo,
            lo: self.hi,
        }
    }

    #[inline]
    pub fn sub(self, rhs: Trit) -> Trit {
        self.add(rhs.neg())
    }
}

impl Add for Trit {
    type Output = Trit;
    fn add(self, rhs: Trit) -> Trit {
        Trit::add(self, rhs)
    }
}

impl Sub for Trit {
    type Output = Trit;
    fn sub(self, rhs: Trit) -> Trit {
        Trit::sub(self, rhs)
    }
}

impl Mul for Trit {
    type Output = Trit;
    fn mul(self, rhs: Trit) -> Trit {
        Trit::mul(self, rhs)
    }
}

impl Neg for Trit {
    type Output = Trit;
    fn neg(self) -> Trit {
        Trit::neg(self)
    }
}

impl fmt::Display for Trit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[inline]
fn word_add(alo: Word, ahi: Word, blo: Word, bhi: Word) -> (Word, Word) {
    let t = (alo | bhi) ^ (ahi | blo);
    ((ahi | bhi) ^ t, (alo | blo) ^ t)
}

#[inline]
fn word_mul(alo: Word, ahi: Word, blo: Word, bhi: Word) -> (Word, Word) {
    ((alo & blo) | (ahi & bhi), (ahi & blo) | (alo & bhi))
}

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// Packed vector of GF(3) coefficients. Index 0 is the constant term when
/// the vector is read as a polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TritVector {
    len: usize,
    lo: Vec<Word>,
    hi: Vec<Word>,
}

impl TritVector {
    pub fn zeros(len: usize) -> Self {
        let n = words_for(len);
        TritVector {
            len,
            lo: vec![0; n],
            hi: vec![0; n],
        }
    }

    pub fn from_trits(trits: &[Trit]) -> Self {
        let mut v = TritVector::zeros(trits.len());
        for (i, &t) in trits.iter().enumerate() {
            v.set(i, t);
        }
        v
    }

    /// Builds a vector from coefficient values, lowest index first.
    pub fn from_values(values: &[u8]) -> Result<Self> {
        let mut v = TritVector::zeros(values.len());
        for (i, &x) in values.iter().enumerate() {
            v.set(i, Trit::from_u8(x)?);
        }
        Ok(v)
    }

    /// The vector with a single coefficient `t` at index `index`.
    pub fn monomial(len: usize, index: usize, t: Trit) -> Self {
        let mut v = TritVector::zeros(len);
        v.set(index, t);
        v
    }

    /// Pseudorandom vector with every coefficient uniform over {0,1,2}.
    ///
    /// The stream is ChaCha8 seeded through `SeedableRng::seed_from_u64`,
    /// drawing one `gen_range(0..3)` per coefficient from index 0 upwards.
    pub fn random(len: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_from(len, &mut rng)
    }

    pub fn random_from<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut v = TritVector::zeros(len);
        for i in 0..len {
            let t = match rng.gen_range(0..3u8) {
                0 => Trit::ZERO,
                1 => Trit::ONE,
                _ => Trit::TWO,
            };
            v.set(i, t);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.lo.iter().chain(&self.hi).all(|&w| w == 0)
    }

    /// Raw bit planes `(lo, hi)`.
    pub fn planes(&self) -> (&[Word], &[Word]) {
        (&self.lo, &self.hi)
    }

    #[inline]
    pub fn get(&self, i: usize) -> Trit {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let (w, b) = (i / WORD_BITS, i % WORD_BITS);
        Trit {
            hi: (self.hi[w] >> b) & 1 == 1,
            lo: (self.lo[w] >> b) & 1 == 1,
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, t: Trit) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let (w, b) = (i / WORD_BITS, i % WORD_BITS);
        let mask = 1 << b;
        self.lo[w] = (self.lo[w] & !mask) | ((t.lo as Word) << b);
        self.hi[w] = (self.hi[w] & !mask) | ((t.hi as Word) << b);
    }

    pub fn iter(&self) -> impl Iterator<Item = Trit> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_values(&self) -> Vec<u8> {
        self.iter().map(Trit::value).collect()
    }

    /// Index of the highest nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        (0..self.len).rev().find(|&i| !self.get(i).is_zero())
    }

    fn check_len(&self, other: &TritVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TritVector) -> Result<TritVector> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn sub(&self, other: &TritVector) -> Result<TritVector> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.accumulate(other, Trit::TWO);
        Ok(out)
    }

    pub fn neg(&self) -> TritVector {
        TritVector {
            len: self.len,
            lo: self.hi.clone(),
            hi: self.lo.clone(),
        }
    }

    pub fn scale(&self, k: Trit) -> TritVector {
        match k.value() {
            0 => TritVector::zeros(self.len),
            1 => self.clone(),
            _ => self.neg(),
        }
    }

    /// Coefficient-wise product (the word-parallel form of trit multiplication).
    pub fn hadamard(&self, other: &TritVector) -> Result<TritVector> {
        self.check_len(other)?;
        let mut out = TritVector::zeros(self.len);
        for i in 0..self.lo.len() {
            let (lo, hi) = word_mul(self.lo[i], self.hi[i], other.lo[i], other.hi[i]);
            out.lo[i] = lo;
            out.hi[i] = hi;
        }
        Ok(out)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &TritVector) {
        debug_assert_eq!(self.len, other.len);
        for i in 0..self.lo.len() {
            let (lo, hi) = word_add(self.lo[i], self.hi[i], other.lo[i], other.hi[i]);
            self.lo[i] = lo;
            self.hi[i] = hi;
        }
    }

    /// `self += k * other` for vectors of equal length.
    pub(crate) fn accumulate(&mut self, other: &TritVector, k: Trit) {
        debug_assert_eq!(self.len, other.len);
        let (olo, ohi) = match k.value() {
            0 => return,
            1 => (&other.lo, &other.hi),
            _ => (&other.hi, &other.lo),
        };
        for i in 0..self.lo.len() {
            let (lo, hi) = word_add(self.lo[i], self.hi[i], olo[i], ohi[i]);
            self.lo[i] = lo;
            self.hi[i] = hi;
        }
    }

    /// Zero-extends or truncates to `len` coefficients.
    pub fn resized(&self, len: usize) -> TritVector {
        let n = words_for(len);
        let mut out = TritVector {
            len,
            lo: self.lo.clone(),
            hi: self.hi.clone(),
        };
        out.lo.resize(n, 0);
        out.hi.resize(n, 0);
        out.clear_tail();
        out
    }

    /// Coefficients `start..start + len`, zero-filled past the end.
    pub fn slice(&self, start: usize, len: usize) -> TritVector {
        let n = words_for(len);
        let mut out = TritVector {
            len,
            lo: shr_plane(&self.lo, start, n),
            hi: shr_plane(&self.hi, start, n),
        };
        out.clear_tail();
        out
    }

    /// Multiplication by `x^k`: the result has `len + k` coefficients.
    pub fn shifted_up(&self, k: usize) -> TritVector {
        let len = self.len + k;
        let n = words_for(len);
        TritVector {
            len,
            lo: shl_plane(&self.lo, k, n),
            hi: shl_plane(&self.hi, k, n),
        }
    }

    /// In-place multiplication by `x`, dropping the top coefficient.
    pub(crate) fn shift_up_one(&mut self) {
        let mut carry_lo = 0;
        let mut carry_hi = 0;
        for i in 0..self.lo.len() {
            let (lo, hi) = (self.lo[i], self.hi[i]);
            self.lo[i] = (lo << 1) | carry_lo;
            self.hi[i] = (hi << 1) | carry_hi;
            carry_lo = lo >> (WORD_BITS - 1);
            carry_hi = hi >> (WORD_BITS - 1);
        }
        self.clear_tail();
    }

    /// `self += k * other * x^offset`, ignoring coefficients that land
    /// beyond `self.len()`.
    pub(crate) fn accumulate_at(&mut self, other: &TritVector, offset: usize, k: Trit) {
        if k.is_zero() || offset >= self.len {
            return;
        }
        let n = self.lo.len();
        let mut lo = shl_plane(&other.lo, offset, n);
        let mut hi = shl_plane(&other.hi, offset, n);
        if k == Trit::TWO {
            std::mem::swap(&mut lo, &mut hi);
        }
        for i in 0..n {
            let (l, h) = word_add(self.lo[i], self.hi[i], lo[i], hi[i]);
            self.lo[i] = l;
            self.hi[i] = h;
        }
        self.clear_tail();
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            let mask: Word = (1 << rem) - 1;
            if let Some(w) = self.lo.last_mut() {
                *w &= mask;
            }
            if let Some(w) = self.hi.last_mut() {
                *w &= mask;
            }
        }
    }

    /// Checks both storage invariants: disjoint planes and a zero tail.
    pub fn is_well_formed(&self) -> bool {
        let n = words_for(self.len);
        if self.lo.len() != n || self.hi.len() != n {
            return false;
        }
        if self.lo.iter().zip(&self.hi).any(|(l, h)| l & h != 0) {
            return false;
        }
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            let mask: Word = !((1 << rem) - 1);
            if (self.lo[n - 1] | self.hi[n - 1]) & mask != 0 {
                return false;
            }
        }
        true
    }
}

fn shl_plane(src: &[Word], k: usize, out_words: usize) -> Vec<Word> {
    let mut out = vec![0; out_words];
    let (ws, bs) = (k / WORD_BITS, k % WORD_BITS);
    for (i, &w) in src.iter().enumerate() {
        let j = i + ws;
        if j < out_words {
            out[j] |= w << bs;
        }
        if bs != 0 && j + 1 < out_words {
            out[j + 1] |= w >> (WORD_BITS - bs);
        }
    }
    out
}

fn shr_plane(src: &[Word], k: usize, out_words: usize) -> Vec<Word> {
    let mut out = vec![0; out_words];
    let (ws, bs) = (k / WORD_BITS, k % WORD_BITS);
    for (i, o) in out.iter_mut().enumerate() {
        let j = i + ws;
        if j < src.len() {
            *o = src[j] >> bs;
        }
        if bs != 0 && j + 1 < src.len() {
            *o |= src[j + 1] << (WORD_BITS - bs);
        }
    }
    out
}

impl fmt::Debug for TritVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TritVector({self})")
    }
}

/// Canonical text form: most-significant coefficient first, one digit per
/// coefficient.
impl fmt::Display for TritVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .rev()
            .map(|i| char::from(b'0' + self.get(i).value()))
            .collect();
        f.write_str(&s)
    }
}

impl FromStr for TritVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let len = chars.len();
        let mut v = TritVector::zeros(len);
        for (position, &c) in chars.iter().enumerate() {
            let t = match c {
                '0' => Trit::ZERO,
                '1' => Trit::ONE,
                '2' => Trit::TWO,
                found => return Err(Error::InvalidDigit { position, found }),
            };
            v.set(len - 1 - position, t);
        }
        Ok(v)
    }
}
