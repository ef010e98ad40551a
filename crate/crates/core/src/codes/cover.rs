//! Condition (1) on a structure-code pair (D, S): D ⊆ S⊥, and every α ∈ S
//! admits a Hamming cover E^α ⊆ D, a direct sum of [8,4,4] Hamming codes on a
//! partition of Supp(α) into 8-blocks.
//!
//! The search works per α: enumerate the weight-4 words of D supported inside
//! Supp(α); candidate 8-blocks are unions of two disjoint such words (every H8
//! contains the all-ones word of its block, so its weight-4 words pair up into
//! complements and at least one disjoint pair exists); a candidate survives if
//! those weight-4 words span a code of dimension 4, doubly even, with full
//! support on the block, which pins the span to a permuted H8, the unique
//! doubly even self-dual code of length 8.  A backtracking exact cover over
//! the surviving blocks then partitions Supp(α).

use alloc::vec::Vec;

use super::{BitWord, CodePair, LinearCode};

/// One 8-block of a Hamming cover: a permuted H8 inside D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverBlock {
    /// The 8 coordinates of the block, ascending.
    pub positions: Vec<usize>,
    /// Four full-length words of D spanning the H8 copy on those coordinates.
    pub basis: Vec<BitWord>,
}

/// A successful Hamming cover E^α of a 1/16-word α.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HammingCover {
    pub blocks: Vec<CoverBlock>,
    /// E^α itself: the direct sum of the block codes, dim = 4 · #blocks.
    pub code: LinearCode,
}

/// Why no cover exists for a particular α.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverFailure {
    /// |Supp(α)| is not a multiple of 8, so no partition into 8-blocks exists.
    SupportNotMultipleOf8 { weight: u32 },
    /// The candidate blocks admit no exact cover of Supp(α).
    NoPartition { candidate_blocks: usize },
}

impl core::fmt::Display for CoverFailure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CoverFailure::SupportNotMultipleOf8 { weight } => {
                write!(f, "support size {weight} is not a multiple of 8")
            }
            CoverFailure::NoPartition { candidate_blocks } => {
                write!(f, "no partition of the support into Hamming blocks ({candidate_blocks} candidates)")
            }
        }
    }
}

/// Searches for a Hamming cover of α inside D.
///
/// α = 0 succeeds with the empty cover.  The result is deterministic: blocks
/// are tried in increasing mask order and the lexicographically first
/// partition is returned.
pub fn find_hamming_cover(d: &LinearCode, alpha: &BitWord) -> Result<HammingCover, CoverFailure> {
    assert_eq!(d.len(), alpha.len(), "code and word lengths differ");
    let weight = alpha.weight();
    if weight % 8 != 0 {
        return Err(CoverFailure::SupportNotMultipleOf8 { weight });
    }
    if weight == 0 {
        return Ok(HammingCover { blocks: Vec::new(), code: LinearCode::zero(d.len()) });
    }

    let quartets = weight4_words_within(d, alpha);
    let candidates = candidate_blocks(d.len(), &quartets);

    let mut chosen: Vec<usize> = Vec::new();
    if !exact_cover(alpha.bits(), &candidates, &mut chosen) {
        return Err(CoverFailure::NoPartition { candidate_blocks: candidates.len() });
    }

    let blocks: Vec<CoverBlock> = chosen.iter().map(|&i| candidates[i].1.clone()).collect();
    let all_rows: Vec<BitWord> = blocks.iter().flat_map(|b| b.basis.iter().copied()).collect();
    let code = LinearCode::span(d.len(), &all_rows);
    debug_assert_eq!(code.dim(), 4 * blocks.len());
    debug_assert!(d.contains_code(&code));
    Ok(HammingCover { blocks, code })
}

/// All weight-4 words of D supported inside Supp(α), ascending by packed bits.
fn weight4_words_within(d: &LinearCode, alpha: &BitWord) -> Vec<BitWord> {
    let positions: Vec<usize> = alpha.support().collect();
    let mut out = Vec::new();
    for quad in super::weight_masks(positions.len(), 4) {
        let w = quad.embed(&positions, d.len());
        if d.contains(&w) {
            out.push(w);
        }
    }
    out
}

/// Builds the surviving 8-blocks from disjoint pairs of weight-4 words.
fn candidate_blocks(len: usize, quartets: &[BitWord]) -> Vec<(u64, CoverBlock)> {
    let mut seen = alloc::collections::BTreeSet::new();
    let mut out: Vec<(u64, CoverBlock)> = Vec::new();
    for (i, &a) in quartets.iter().enumerate() {
        for &b in &quartets[i + 1..] {
            if !(a & b).is_zero() {
                continue;
            }
            let mask = a.bits() | b.bits();
            if !seen.insert(mask) {
                continue;
            }
            let block_word = BitWord::from_bits(len, mask);
            let inside: Vec<BitWord> = quartets
                .iter()
                .copied()
                .filter(|w| w.supported_within(&block_word))
                .collect();
            let span = LinearCode::span(len, &inside);
            let full_support =
                span.basis().iter().fold(0u64, |acc, w| acc | w.bits()) == mask;
            if span.dim() == 4 && span.is_doubly_even() && full_support {
                let block = CoverBlock {
                    positions: block_word.support().collect(),
                    basis: span.basis().to_vec(),
                };
                out.push((mask, block));
            }
        }
    }
    out.sort_by_key(|(mask, _)| *mask);
    out
}

/// Backtracking exact cover of the support mask by candidate block masks.
fn exact_cover(uncovered: u64, candidates: &[(u64, CoverBlock)], chosen: &mut Vec<usize>) -> bool {
    if uncovered == 0 {
        return true;
    }
    let lowest = uncovered & uncovered.wrapping_neg();
    for (i, (mask, _)) in candidates.iter().enumerate() {
        if mask & lowest == 0 || mask & !uncovered != 0 {
            continue;
        }
        chosen.push(i);
        if exact_cover(uncovered & !mask, candidates, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// The verdict of condition (1) on a pair, with per-α witnesses.
#[derive(Clone, Debug)]
pub struct Condition1Report {
    /// (1-i): D ⊆ S⊥.
    pub containment: bool,
    /// A violating pair (d-word, s-word) when (1-i) fails.
    pub containment_witness: Option<(BitWord, BitWord)>,
    /// (1-ii): the cover search outcome for every α ∈ S, ascending by word.
    pub covers: Vec<(BitWord, Result<HammingCover, CoverFailure>)>,
}

impl Condition1Report {
    pub fn covers_found(&self) -> usize {
        self.covers.iter().filter(|(_, r)| r.is_ok()).count()
    }

    pub fn pass(&self) -> bool {
        self.containment && self.covers.iter().all(|(_, r)| r.is_ok())
    }
}

/// Checks condition (1) for a structure-code pair: the containment D ⊆ S⊥
/// and a Hamming cover for every α ∈ S.
pub fn check_condition1(pair: &CodePair) -> Condition1Report {
    let mut containment = true;
    let mut containment_witness = None;
    'outer: for a in pair.d.basis() {
        for b in pair.s.basis() {
            if a.dot(b) {
                containment = false;
                containment_witness = Some((*a, *b));
                break 'outer;
            }
        }
    }

    assert!(pair.s.dim() <= 20, "S too large to enumerate for condition (1)");
    let mut alphas: Vec<BitWord> = pair.s.iter_words().collect();
    alphas.sort();
    let covers = alphas
        .into_iter()
        .map(|alpha| {
            let r = find_hamming_cover(&pair.d, &alpha);
            (alpha, r)
        })
        .collect();

    Condition1Report { containment, containment_witness, covers }
}
