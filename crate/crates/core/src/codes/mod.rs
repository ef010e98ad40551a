//! Binary linear codes on at most 64 coordinates.
//!
//! Codewords are packed into a single `u64`, bit i being coordinate i (the
//! leftmost symbol of the usual string display).  A [`LinearCode`] stores a
//! row-reduced basis: pivots strictly increasing, each pivot column zero in
//! every other row.  That normal form makes code equality, membership, and
//! canonical coset representatives cheap and deterministic.
//!
//! The structure codes appearing in the framed VOA pipeline have lengths 8,
//! 16, 47 and 48, so the 64-bit cap costs no generality here.

pub mod cover;
pub mod named;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use cover::{check_condition1, find_hamming_cover, Condition1Report, CoverFailure, HammingCover};

/// Errors surfaced by code construction and parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeError {
    /// Word length above the 64-coordinate cap.
    LengthTooLarge(usize),
    /// A symbol other than '0' or '1' in a word literal.
    BadSymbol(char),
    /// Operands of different lengths.
    LengthMismatch { left: usize, right: usize },
    /// `coset_decomposition` was asked for cosets of a non-subcode.
    NotSubcode,
    /// A structure-code pair needs both members even.
    NotEven { which: &'static str },
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::LengthTooLarge(n) => write!(f, "word length {n} exceeds 64"),
            CodeError::BadSymbol(c) => write!(f, "invalid symbol {c:?} in codeword (want 0 or 1)"),
            CodeError::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            CodeError::NotSubcode => write!(f, "not a subcode"),
            CodeError::NotEven { which } => write!(f, "{which} is not an even code"),
        }
    }
}

/// A GF(2) word of fixed length ≤ 64.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitWord {
    len: u8,
    bits: u64,
}

fn len_mask(len: usize) -> u64 {
    if len == 64 {
        !0
    } else {
        (1u64 << len) - 1
    }
}

impl BitWord {
    pub fn zero(len: usize) -> Self {
        assert!(len <= 64, "word length {len} exceeds 64");
        BitWord { len: len as u8, bits: 0 }
    }

    pub fn ones(len: usize) -> Self {
        BitWord::zero(len).complement()
    }

    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= 64, "word length {len} exceeds 64");
        assert_eq!(bits & !len_mask(len), 0, "bits outside word length");
        BitWord { len: len as u8, bits }
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut w = BitWord::zero(len);
        for &i in support {
            w.set(i, true);
        }
        w
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len());
        self.bits >> i & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.len());
        if v {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_even(&self) -> bool {
        self.weight() % 2 == 0
    }

    pub fn is_doubly_even(&self) -> bool {
        self.weight() % 4 == 0
    }

    /// GF(2) inner product ⟨self, other⟩.
    pub fn dot(&self, other: &BitWord) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot product");
        (self.bits & other.bits).count_ones() % 2 == 1
    }

    /// Complement within the word length: α ↦ α + (1…1).
    pub fn complement(&self) -> BitWord {
        BitWord { len: self.len, bits: !self.bits & len_mask(self.len()) }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.get(i))
    }

    /// True when Supp(self) ⊆ Supp(other).
    pub fn supported_within(&self, other: &BitWord) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in support comparison");
        self.bits & !other.bits == 0
    }

    /// Concatenation (self first); combined length must stay ≤ 64.
    pub fn concat(&self, other: &BitWord) -> BitWord {
        let len = self.len() + other.len();
        assert!(len <= 64, "concatenated length {len} exceeds 64");
        BitWord { len: len as u8, bits: self.bits | other.bits << self.len() }
    }

    /// The word (ε, self) of length len+1: prepends ε as coordinate 0.
    pub fn prepend(&self, eps: bool) -> BitWord {
        assert!(self.len() < 64);
        BitWord { len: self.len + 1, bits: self.bits << 1 | eps as u64 }
    }

    /// Splits off coordinate 0, returning (first bit, remaining word).
    pub fn split_first(&self) -> (bool, BitWord) {
        assert!(self.len > 0);
        (self.bits & 1 == 1, BitWord { len: self.len - 1, bits: self.bits >> 1 })
    }

    /// The subword on the given coordinates, in the order listed.
    pub fn restrict(&self, positions: &[usize]) -> BitWord {
        let mut w = BitWord::zero(positions.len());
        for (j, &p) in positions.iter().enumerate() {
            w.set(j, self.get(p));
        }
        w
    }

    /// Inverse of [`restrict`](Self::restrict): places bit j at `positions[j]`.
    pub fn embed(&self, positions: &[usize], len: usize) -> BitWord {
        assert_eq!(self.len(), positions.len());
        let mut w = BitWord::zero(len);
        for (j, &p) in positions.iter().enumerate() {
            if self.get(j) {
                w.set(p, true);
            }
        }
        w
    }
}

impl core::ops::BitXor for BitWord {
    type Output = BitWord;
    fn bitxor(self, rhs: BitWord) -> BitWord {
        assert_eq!(self.len, rhs.len, "length mismatch in xor");
        BitWord { len: self.len, bits: self.bits ^ rhs.bits }
    }
}

impl core::ops::BitXorAssign for BitWord {
    fn bitxor_assign(&mut self, rhs: BitWord) {
        assert_eq!(self.len, rhs.len, "length mismatch in xor");
        self.bits ^= rhs.bits;
    }
}

impl core::ops::BitAnd for BitWord {
    type Output = BitWord;
    fn bitand(self, rhs: BitWord) -> BitWord {
        assert_eq!(self.len, rhs.len, "length mismatch in and");
        BitWord { len: self.len, bits: self.bits & rhs.bits }
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BitWord {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, CodeError> {
        if s.len() > 64 {
            return Err(CodeError::LengthTooLarge(s.len()));
        }
        let mut w = BitWord::zero(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => w.set(i, true),
                other => return Err(CodeError::BadSymbol(other)),
            }
        }
        Ok(w)
    }
}

/// Convenience constructor for word literals; panics on malformed input.
pub fn word(s: &str) -> BitWord {
    s.parse().expect("malformed word literal")
}

/// A binary linear code, stored as a row-reduced basis.
///
/// Two `LinearCode` values compare equal exactly when they are the same
/// subspace, because the reduced basis is a normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCode {
    len: usize,
    basis: Vec<BitWord>,
}

impl LinearCode {
    /// The zero code {0} of the given length.
    pub fn zero(len: usize) -> Self {
        assert!(len <= 64, "code length {len} exceeds 64");
        LinearCode { len, basis: Vec::new() }
    }

    /// The full space GF(2)^len.
    pub fn full(len: usize) -> Self {
        LinearCode::span(len, &(0..len).map(|i| BitWord::from_support(len, &[i])).collect::<Vec<_>>())
    }

    /// The span of the given generators.
    pub fn span(len: usize, generators: &[BitWord]) -> Self {
        assert!(len <= 64, "code length {len} exceeds 64");
        let mut code = LinearCode { len, basis: Vec::new() };
        for &g in generators {
            assert_eq!(g.len(), len, "generator length mismatch");
            code.insert(g);
        }
        code
    }

    /// Inserts a word into the row-reduced basis (no-op if already spanned).
    fn insert(&mut self, w: BitWord) {
        let w = self.reduce(&w);
        if w.is_zero() {
            return;
        }
        let pivot = w.bits.trailing_zeros();
        // Clear the new pivot from existing rows, then keep rows ordered by pivot.
        for row in &mut self.basis {
            if row.get(pivot as usize) {
                *row ^= w;
            }
        }
        let pos = self
            .basis
            .iter()
            .position(|row| row.bits.trailing_zeros() > pivot)
            .unwrap_or(self.basis.len());
        self.basis.insert(pos, w);
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of codewords, 2^dim.
    pub fn size(&self) -> u128 {
        1u128 << self.dim()
    }

    pub fn basis(&self) -> &[BitWord] {
        &self.basis
    }

    /// Canonical coset representative: reduces every pivot coordinate to zero.
    /// Words are in the same coset of this code iff they reduce equally.
    pub fn reduce(&self, w: &BitWord) -> BitWord {
        assert_eq!(w.len(), self.len, "word length mismatch");
        let mut w = *w;
        for row in &self.basis {
            if w.get(row.bits.trailing_zeros() as usize) {
                w ^= *row;
            }
        }
        w
    }

    pub fn contains(&self, w: &BitWord) -> bool {
        self.reduce(w).is_zero()
    }

    pub fn contains_code(&self, other: &LinearCode) -> bool {
        other.basis.iter().all(|w| self.contains(w))
    }

    /// Iterates all codewords in Gray-code order starting from 0.
    /// Intended for small codes; asserts dim ≤ 32.
    pub fn iter_words(&self) -> impl Iterator<Item = BitWord> + '_ {
        assert!(self.dim() <= 32, "code too large to enumerate (dim {})", self.dim());
        let count: u64 = 1 << self.dim();
        let mut cur = BitWord::zero(self.len);
        (0..count).map(move |i| {
            if i > 0 {
                cur ^= self.basis[i.trailing_zeros() as usize];
            }
            cur
        })
    }

    /// Weight distribution [A_0, …, A_n]; enumerates, so asserts dim ≤ 26.
    pub fn weight_enumerator(&self) -> Vec<u64> {
        assert!(self.dim() <= 26, "code too large for weight enumeration");
        let mut counts = alloc::vec![0u64; self.len + 1];
        for w in self.iter_words() {
            counts[w.weight() as usize] += 1;
        }
        counts
    }

    pub fn min_weight(&self) -> Option<u32> {
        let en = self.weight_enumerator();
        en.iter().enumerate().skip(1).find(|(_, &c)| c > 0).map(|(w, _)| w as u32)
    }

    /// Dual code: all words orthogonal to every codeword.
    pub fn dual(&self) -> LinearCode {
        // From the reduced basis, each free (non-pivot) coordinate f yields the
        // dual word with 1 at f and, at pivot p_i, the entry G[i][f].
        let pivots: Vec<usize> =
            self.basis.iter().map(|row| row.bits.trailing_zeros() as usize).collect();
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        let mut generators = Vec::with_capacity(self.len - self.dim());
        for f in 0..self.len {
            if pivot_set.contains(&f) {
                continue;
            }
            let mut w = BitWord::from_support(self.len, &[f]);
            for (row, &p) in self.basis.iter().zip(&pivots) {
                if row.get(f) {
                    w.set(p, true);
                }
            }
            generators.push(w);
        }
        LinearCode::span(self.len, &generators)
    }

    /// True when every codeword has even weight (checkable on the basis).
    pub fn is_even(&self) -> bool {
        self.basis.iter().all(BitWord::is_even)
    }

    /// True when every codeword has weight divisible by 4.  Because
    /// wt(a+b) = wt(a) + wt(b) − 2|a∧b|, this holds iff every basis word is
    /// doubly even and every basis pair meets in an even number of positions.
    pub fn is_doubly_even(&self) -> bool {
        self.basis.iter().all(BitWord::is_doubly_even)
            && self
                .basis
                .iter()
                .enumerate()
                .all(|(i, a)| self.basis[i + 1..].iter().all(|b| (*a & *b).is_even()))
    }

    /// True when the code is orthogonal to itself (C ⊆ C⊥).
    pub fn is_self_orthogonal(&self) -> bool {
        self.basis
            .iter()
            .enumerate()
            .all(|(i, a)| self.basis[i..].iter().all(|b| !a.dot(b)))
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.dim() == self.len && self.is_self_orthogonal()
    }

    /// The even-weight subcode D⁽⁰⁾ and, if the code has odd words, a
    /// canonical representative of the odd part D⁽¹⁾ = D⁽⁰⁾ + rep.
    pub fn split_even_odd(&self) -> (LinearCode, Option<BitWord>) {
        let odd_rows: Vec<usize> =
            (0..self.basis.len()).filter(|&i| !self.basis[i].is_even()).collect();
        let Some(&first_odd) = odd_rows.first() else {
            return (self.clone(), None);
        };
        let rep = self.basis[first_odd];
        let even_gens: Vec<BitWord> = (0..self.basis.len())
            .filter(|&i| i != first_odd)
            .map(|i| if self.basis[i].is_even() { self.basis[i] } else { self.basis[i] ^ rep })
            .collect();
        let even = LinearCode::span(self.len, &even_gens);
        (even.clone(), Some(even.reduce(&rep)))
    }

    /// Coset representatives of a subcode E ⊆ D, canonicalized and sorted;
    /// the zero coset comes first.  There are 2^(dim D − dim E) of them.
    pub fn coset_decomposition(&self, sub: &LinearCode) -> Result<Vec<BitWord>, CodeError> {
        if sub.len != self.len {
            return Err(CodeError::LengthMismatch { left: self.len, right: sub.len });
        }
        if !self.contains_code(sub) {
            return Err(CodeError::NotSubcode);
        }
        let extension: Vec<BitWord> = self
            .basis
            .iter()
            .filter_map(|row| {
                let r = sub.reduce(row);
                (!r.is_zero()).then_some(r)
            })
            .scan(LinearCode::zero(self.len), |acc, r| {
                if acc.contains(&r) {
                    Some(None)
                } else {
                    acc.insert(r);
                    Some(Some(r))
                }
            })
            .flatten()
            .collect();
        let diff = extension.len();
        assert!(diff <= 26, "coset space too large to enumerate (2^{diff})");
        let mut reps: Vec<BitWord> = (0..1u64 << diff)
            .map(|mask| {
                let mut w = BitWord::zero(self.len);
                for (j, &e) in extension.iter().enumerate() {
                    if mask >> j & 1 == 1 {
                        w ^= e;
                    }
                }
                sub.reduce(&w)
            })
            .collect();
        reps.sort();
        reps.dedup();
        assert_eq!(reps.len(), 1 << diff);
        Ok(reps)
    }

    /// The subcode of words supported inside the given mask, at full length.
    pub fn subcode_supported_on(&self, mask: &BitWord) -> LinearCode {
        assert_eq!(mask.len(), self.len);
        let mut rows = self.basis.clone();
        // Eliminate every coordinate outside the mask; surviving rows span
        // exactly the words vanishing there.
        for c in mask.complement().support() {
            if let Some(i) = rows.iter().position(|r| r.get(c)) {
                let pivot = rows.remove(i);
                for r in &mut rows {
                    if r.get(c) {
                        *r ^= pivot;
                    }
                }
            }
        }
        LinearCode::span(self.len, &rows)
    }

    /// Shortening: words supported inside `keep`, restricted to those
    /// coordinates.
    pub fn shorten(&self, keep: &[usize]) -> LinearCode {
        let mask = BitWord::from_support(self.len, keep);
        let sub = self.subcode_supported_on(&mask);
        let rows: Vec<BitWord> = sub.basis.iter().map(|r| r.restrict(keep)).collect();
        LinearCode::span(keep.len(), &rows)
    }

    /// Puncturing: all words projected onto the kept coordinates.
    pub fn puncture(&self, keep: &[usize]) -> LinearCode {
        let rows: Vec<BitWord> = self.basis.iter().map(|r| r.restrict(keep)).collect();
        LinearCode::span(keep.len(), &rows)
    }

    /// Minimum weight of the coset γ + C.
    ///
    /// Exact by full enumeration when dim ≤ 22; otherwise searches words of
    /// weight ≤ cap and returns `None` if the coset has no word that light.
    pub fn min_coset_weight(&self, gamma: &BitWord, cap: u32) -> Option<u32> {
        assert_eq!(gamma.len(), self.len);
        if self.contains(gamma) {
            return Some(0);
        }
        if self.dim() <= 22 {
            return self.iter_words().map(|w| (w ^ *gamma).weight()).min();
        }
        // On an even code, weight parity is constant across a coset.
        let (start, step) = if self.is_even() {
            let parity = gamma.weight() % 2;
            (if parity == 1 { 1 } else { 2 }, 2)
        } else {
            (1, 1)
        };
        let mut w = start;
        while w <= cap {
            for cand in weight_masks(self.len, w) {
                if self.contains(&(cand ^ *gamma)) {
                    return Some(w);
                }
            }
            w += step;
        }
        None
    }
}

impl fmt::Display for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}] code", self.len, self.dim())
    }
}

/// Iterates every word of the given length and weight (Gosper's hack),
/// in increasing numeric order of the packed bits.
pub fn weight_masks(len: usize, weight: u32) -> impl Iterator<Item = BitWord> {
    assert!(len <= 64);
    let end = len_mask(len);
    let mut cur = (weight as usize <= len).then(|| len_mask(weight as usize));
    core::iter::from_fn(move || {
        let v = cur?;
        let out = BitWord { len: len as u8, bits: v };
        cur = if v == 0 {
            None
        } else {
            let c = v & v.wrapping_neg();
            let r = v.checked_add(c)?;
            let next = (((r ^ v) >> 2) / c) | r;
            (next <= end && next > v).then_some(next)
        };
        if v > end {
            return None;
        }
        Some(out)
    })
}

/// A structure-code pair (D, S): same length, both even.
///
/// The containment D ⊆ S⊥ is part of condition (1) and is checked by
/// [`check_condition1`], not by the constructor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodePair {
    pub d: LinearCode,
    pub s: LinearCode,
}

impl CodePair {
    pub fn new(d: LinearCode, s: LinearCode) -> Result<Self, CodeError> {
        if d.len() != s.len() {
            return Err(CodeError::LengthMismatch { left: d.len(), right: s.len() });
        }
        if !d.is_even() {
            return Err(CodeError::NotEven { which: "D" });
        }
        if !s.is_even() {
            return Err(CodeError::NotEven { which: "S" });
        }
        Ok(CodePair { d, s })
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
