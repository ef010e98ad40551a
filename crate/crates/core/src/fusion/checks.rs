//! Structural checks on fusion data: simple currents, stabilizers, induced
//! labels, Miyamoto involution signs, top-weight bookkeeping, and the two
//! hypothesis checks used by the extension theorems.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::labels::{IsingLabel, ModuleLabel};
use super::{FusionElement, FusionError, FusionTable};
use crate::codes::{BitWord, LinearCode};
use crate::Exp;

/// A multiplicative sign, the value of a Miyamoto involution on a label.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.as_i8())
    }
}

/// The τ-type Miyamoto involution attached to frame position i acts on a
/// module by (−1)^{α_i}, where α is the module's 1/16-word.
pub fn miyamoto_tau(i: usize, sixteenth: &BitWord) -> Sign {
    Sign::from_parity(sixteenth.get(i))
}

/// The σ-type involution at position i, defined on modules whose i-th frame
/// component is not 1/16: sign +1 on h = 0 and −1 on h = 1/2.
pub fn miyamoto_sigma(i: usize, frame: &super::FrameLabel) -> Result<Sign, FusionError> {
    match frame.0[i] {
        IsingLabel::H0 => Ok(Sign::Plus),
        IsingLabel::H12 => Ok(Sign::Minus),
        IsingLabel::H116 => Err(FusionError::SigmaUndefined { index: i }),
    }
}

/// Top conformal weight data for a label: the weight class modulo 1 (exact
/// always) and the exact top weight when it is computable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TopWeight {
    /// Top weight mod 1, in [0, 1).
    pub class: Exp,
    /// The exact top weight, when the minimum could be certified.
    pub exact: Option<Exp>,
}

impl TopWeight {
    pub fn is_integral(&self) -> bool {
        self.class == Exp::new(0, 1)
    }

    pub fn is_half_integral(&self) -> bool {
        self.class == Exp::new(1, 2)
    }
}

fn frac_mod_1(x: Exp) -> Exp {
    let one = Exp::new(1, 1);
    let mut r = x - x.floor();
    if r >= one {
        r -= one;
    }
    r
}

/// How far the bounded coset-minimum search looks; cosets of the large frame
/// codes in this crate all have minimum weight well under this.
const COSET_WEIGHT_CAP: u32 = 5;

/// Top weight of a module label.
///
/// * `Coset(γ)` over D: the minimum of wt(β)/2 over β ∈ D+γ.  The weight
///   class is exact (D is even, so coset weight parity is constant); the
///   exact minimum is reported when enumeration or the bounded search
///   certifies it.
/// * `Twisted(χ)`: a Hamming block of 1/16s, top weight 8/16 = 1/2.
/// * `Framed{α, inner}`: wt(α)/16 plus the inner label's top weight; `code`
///   must then be the code over which the inner label's coset data lives.
pub fn top_weight(code: &LinearCode, label: &ModuleLabel) -> TopWeight {
    match label {
        ModuleLabel::Coset(gamma) => {
            let gamma = code.reduce(gamma);
            let class = frac_mod_1(Exp::new(gamma.weight() as i64 % 2, 2));
            let exact = code
                .min_coset_weight(&gamma, COSET_WEIGHT_CAP)
                .map(|w| Exp::new(w as i64, 2));
            TopWeight { class, exact }
        }
        ModuleLabel::Twisted(_) => {
            TopWeight { class: Exp::new(1, 2), exact: Some(Exp::new(1, 2)) }
        }
        ModuleLabel::Framed { sixteenth, inner } => {
            let base = Exp::new(sixteenth.weight() as i64, 16);
            let inner_weight = top_weight(code, inner);
            TopWeight {
                class: frac_mod_1(base + inner_weight.class),
                exact: inner_weight.exact.map(|e| base + e),
            }
        }
    }
}

/// Searches the table for a witness W with x ⊠ W = unit, multiplicity
/// exactly one and no other summand.  Such a W certifies x is a simple
/// current (invertible in the fusion ring).
pub fn simple_current_witness<L: Ord + Clone>(table: &FusionTable<L>, x: &L) -> Option<L> {
    table
        .labels()
        .iter()
        .find(|w| table.product(x, w).is_single(table.unit()))
        .cloned()
}

/// The stabilizer D_W = {α ∈ D : V^α ⊠ W ≅ W} of a label under the action
/// of the grading simple currents, via the supplied fusion oracle.
/// Always a subgroup of D.  Enumerates D, so asserts dim ≤ 20.
pub fn stabilizer<L: Ord + Clone>(
    d: &LinearCode,
    w: &L,
    fuse: impl Fn(&BitWord, &L) -> FusionElement<L>,
) -> Vec<BitWord> {
    assert!(d.dim() <= 20, "stabilizer enumeration needs dim ≤ 20");
    let mut fixed: Vec<BitWord> = d
        .iter_words()
        .filter(|alpha| fuse(alpha, w).is_single(w))
        .collect();
    fixed.sort();
    fixed
}

/// An induced label ⊕_{α∈S} V^α ⊠ w, recorded by its component list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InducedLabel<L> {
    /// (α, the single label V^α ⊠ w), sorted by α; one entry per word of S.
    pub components: Vec<(BitWord, L)>,
}

impl<L> InducedLabel<L> {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

/// Induces w along S: requires the stabilizer of w in S to be trivial (the
/// non-free branch of the induction theorem is out of scope) and every
/// V^α ⊠ w to be a single multiplicity-1 label.
pub fn induce<L: Ord + Clone>(
    s: &LinearCode,
    w: &L,
    fuse: impl Fn(&BitWord, &L) -> FusionElement<L>,
) -> Result<InducedLabel<L>, FusionError> {
    let stab = stabilizer(s, w, &fuse);
    if stab.len() != 1 {
        return Err(FusionError::StabilizerNotTrivial { size: stab.len() });
    }
    let mut components = Vec::with_capacity(1 << s.dim());
    for alpha in s.iter_words() {
        let image = fuse(&alpha, w);
        let single = image.as_single().ok_or(FusionError::NotSimpleCurrentAction)?;
        components.push((alpha, single.clone()));
    }
    components.sort_by_key(|(a, _)| *a);
    Ok(InducedLabel { components })
}

/// A family of labels graded by D₁ ⊕ D₂, as consumed by the grading check.
pub struct GradedFamily<L> {
    pub d1: LinearCode,
    pub d2: LinearCode,
    pub labels: BTreeMap<(BitWord, BitWord), L>,
}

/// A violation of the graded simple-current hypothesis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GradingViolation {
    /// No label recorded for this (α, β).
    MissingLabel { key: (BitWord, BitWord) },
    /// V^{(a1,b1)} ⊠ V^{(a2,b2)} failed to be V^{(a1+a2,b1+b2)} with
    /// multiplicity exactly one.
    ProductMismatch { left: (BitWord, BitWord), right: (BitWord, BitWord) },
    /// The D₂ = ℤ₂ parity split: labels over (·, 0) must have integral top
    /// weight, labels over (·, 1) half-integral.
    ParitySplit { key: (BitWord, BitWord) },
}

/// Checks that a D₁ ⊕ D₂-graded family fuses by the group law with all
/// multiplicities one, and, when D₂ = ℤ₂, that the top-weight parity split
/// holds: integral over (α, 0), half-integral over (α, 1).
pub fn extension_grading_check<L: Ord + Clone>(
    family: &GradedFamily<L>,
    fuse: impl Fn(&L, &L) -> FusionElement<L>,
    weight_class: impl Fn(&L) -> Exp,
) -> Result<(), GradingViolation> {
    assert!(family.d1.dim() + family.d2.dim() <= 16, "graded family too large");
    let mut keys: Vec<(BitWord, BitWord)> = Vec::new();
    for a in family.d1.iter_words() {
        for b in family.d2.iter_words() {
            let key = (a, b);
            if !family.labels.contains_key(&key) {
                return Err(GradingViolation::MissingLabel { key });
            }
            keys.push(key);
        }
    }

    let z2_split = family.d2.len() == 1 && family.d2.dim() == 1;
    for key in &keys {
        if z2_split {
            let class = weight_class(&family.labels[key]);
            let expected = if key.1.get(0) { Exp::new(1, 2) } else { Exp::new(0, 1) };
            if class != expected {
                return Err(GradingViolation::ParitySplit { key: *key });
            }
        }
    }

    for k1 in &keys {
        for k2 in &keys {
            let target = (k1.0 ^ k2.0, k1.1 ^ k2.1);
            let product = fuse(&family.labels[k1], &family.labels[k2]);
            if !product.is_single(&family.labels[&target]) {
                return Err(GradingViolation::ProductMismatch { left: *k1, right: *k2 });
            }
        }
    }
    Ok(())
}

/// The outcome of Hypothesis I condition (3) on a labeled family
/// {V^α : α ∈ S}.
#[derive(Clone, Debug)]
pub struct I3Report {
    /// (3-i) failures: α whose label carries a different 1/16-word.
    pub sixteenth_mismatches: Vec<BitWord>,
    /// (3-ii) failures: α whose label has non-integral top weight class.
    pub nonintegral: Vec<BitWord>,
    /// (3-iii): the multiplicity of V^{α+β} inside V^α ⊠ V^β for every pair.
    pub fusion_multiplicities: Vec<((BitWord, BitWord), u64)>,
}

impl I3Report {
    pub fn pass(&self) -> bool {
        self.sixteenth_mismatches.is_empty()
            && self.nonintegral.is_empty()
            && self.fusion_multiplicities.iter().all(|(_, m)| *m >= 1)
    }

    pub fn min_multiplicity(&self) -> Option<u64> {
        self.fusion_multiplicities.iter().map(|(_, m)| *m).min()
    }
}

/// Condition (3) of Hypothesis I on a family of labels indexed by S:
/// (3-i) the label of α carries 1/16-word α, (3-ii) top weights are integral,
/// (3-iii) V^α ⊠ V^β contains V^{α+β} (multiplicities are reported).
pub fn hypothesis_i3_check<L: Ord + Clone>(
    s: &LinearCode,
    labels: &BTreeMap<BitWord, L>,
    sixteenth: impl Fn(&L) -> BitWord,
    weight_class: impl Fn(&L) -> Exp,
    fuse: impl Fn(&L, &L) -> FusionElement<L>,
) -> I3Report {
    assert!(s.dim() <= 10, "1/16-word code too large to enumerate");
    let mut alphas: Vec<BitWord> = s.iter_words().collect();
    alphas.sort();

    let mut sixteenth_mismatches = Vec::new();
    let mut nonintegral = Vec::new();
    for alpha in &alphas {
        let label = &labels[alpha];
        if sixteenth(label) != *alpha {
            sixteenth_mismatches.push(*alpha);
        }
        if weight_class(label) != Exp::new(0, 1) {
            nonintegral.push(*alpha);
        }
    }

    let mut fusion_multiplicities = Vec::with_capacity(alphas.len() * alphas.len());
    for a in &alphas {
        for b in &alphas {
            let target = &labels[&(*a ^ *b)];
            let m = fuse(&labels[a], &labels[b]).multiplicity(target);
            fusion_multiplicities.push(((*a, *b), m));
        }
    }

    I3Report { sixteenth_mismatches, nonintegral, fusion_multiplicities }
}

#[cfg(test)]
mod tests {
    use super::super::labels::{frame_fuse, FrameLabel, HammingRing};
    use super::*;
    use crate::codes::named::hamming_h8;
    use crate::codes::word;
    use alloc::vec;

    #[test]
    fn tau_sign_is_sixteenth_parity() {
        let alpha = word("10100000");
        assert_eq!(miyamoto_tau(0, &alpha), Sign::Minus);
        assert_eq!(miyamoto_tau(1, &alpha), Sign::Plus);
        assert_eq!(miyamoto_tau(2, &alpha), Sign::Minus);
    }

    #[test]
    fn sigma_sign_and_domain() {
        use IsingLabel::*;
        let frame = FrameLabel(vec![H0, H12, H116]);
        assert_eq!(miyamoto_sigma(0, &frame), Ok(Sign::Plus));
        assert_eq!(miyamoto_sigma(1, &frame), Ok(Sign::Minus));
        assert_eq!(miyamoto_sigma(2, &frame), Err(FusionError::SigmaUndefined { index: 2 }));
    }

    #[test]
    fn ising_simple_currents() {
        use IsingLabel::*;
        let table = FusionTable::close(H0, &[H12, H116], |a, b| super::super::ising_fuse(*a, *b), 8)
            .unwrap();
        assert_eq!(simple_current_witness(&table, &H0), Some(H0));
        assert_eq!(simple_current_witness(&table, &H12), Some(H12));
        // h116 ⊠ h116 = h0 + h12 is not a single unit: not a simple current.
        assert_eq!(simple_current_witness(&table, &H116), None);
    }

    #[test]
    fn hamming_labels_are_simple_currents() {
        let ring = HammingRing::new(hamming_h8());
        let table = ring.table();
        for label in table.labels() {
            let witness = simple_current_witness(&table, label);
            assert_eq!(witness.as_ref(), Some(label), "self-inverse witness expected");
        }
    }

    #[test]
    fn stabilizer_of_the_regular_label_is_everything() {
        // Grading by D = H8 acting on cosets of H8: every α ∈ H8 fixes U_H.
        let h8 = hamming_h8();
        let ring = HammingRing::new(h8.clone());
        let unit = ring.untwisted(&BitWord::zero(8));
        let stab = stabilizer(&h8, &unit, |alpha, w| ring.fuse(&ring.untwisted(alpha), w));
        assert_eq!(stab.len(), 16);
        let mut expected: Vec<BitWord> = h8.iter_words().collect();
        expected.sort();
        assert_eq!(stab, expected);
    }

    #[test]
    fn stabilizer_of_a_frame_tuple_is_trivial() {
        // L(1/2,0) tuples: V^α ⊠ W shifts the 1/2-word by α, so only 0 fixes W.
        let d = crate::codes::LinearCode::span(4, &[word("1100"), word("0011")]);
        let w = FrameLabel::from_words(&word("0000"), &word("1000"));
        let stab = stabilizer(&d, &w, |alpha, l| {
            frame_fuse(&FrameLabel::from_words(&BitWord::zero(4), alpha), l)
        });
        assert_eq!(stab, vec![BitWord::zero(4)]);
    }

    #[test]
    fn stabilizer_of_a_twisted_label_over_h8_is_h8() {
        // U_{H8+α} ⊠ H(1/16, χ) = H(1/16, α+χ) = H(1/16, χ) for α ∈ H8.
        let h8 = hamming_h8();
        let ring = HammingRing::new(h8.clone());
        let chi = ring.twisted(&word("10000000"));
        let stab = stabilizer(&h8, &chi, |alpha, w| ring.fuse(&ring.untwisted(alpha), w));
        assert_eq!(stab.len(), 16);
    }

    #[test]
    fn stabilizers_are_subgroups() {
        let h8 = hamming_h8();
        let ring = HammingRing::new(h8.clone());
        let chi = ring.twisted(&word("11000000"));
        let stab = stabilizer(&h8, &chi, |alpha, w| ring.fuse(&ring.untwisted(alpha), w));
        for a in &stab {
            for b in &stab {
                assert!(stab.binary_search(&(*a ^ *b)).is_ok());
            }
        }
    }

    #[test]
    fn induce_needs_a_trivial_stabilizer() {
        let h8 = hamming_h8();
        let ring = HammingRing::new(h8.clone());
        let chi = ring.twisted(&BitWord::zero(8));
        let err = induce(&h8, &chi, |alpha, w| ring.fuse(&ring.untwisted(alpha), w));
        assert_eq!(err.unwrap_err(), FusionError::StabilizerNotTrivial { size: 16 });
    }

    #[test]
    fn induce_over_the_trivial_code() {
        let h8 = hamming_h8();
        let ring = HammingRing::new(h8.clone());
        let chi = ring.twisted(&word("10000000"));
        let trivial = crate::codes::LinearCode::zero(8);
        let induced = induce(&trivial, &chi, |alpha, w| {
            ring.fuse(&ring.untwisted(alpha), w)
        })
        .unwrap();
        assert_eq!(induced.component_count(), 1);
        assert_eq!(induced.components[0].1, chi);
    }

    #[test]
    fn induce_collects_coset_components() {
        // Inducing the odd coset along a 2-element 1/16-word group: both
        // components appear, distinctly.
        let d = crate::codes::LinearCode::span(2, &[word("11")]);
        let ambient = crate::codes::LinearCode::zero(2);
        let w = ModuleLabel::Coset(word("10"));
        let induced = induce(&d, &w, |alpha, l| {
            let ModuleLabel::Coset(g) = l else { panic!() };
            FusionElement::single(ModuleLabel::Coset(ambient.reduce(&(*alpha ^ *g))))
        })
        .unwrap();
        assert_eq!(induced.component_count(), 2);
        assert_eq!(induced.components[0].1, ModuleLabel::Coset(word("10")));
        assert_eq!(induced.components[1].1, ModuleLabel::Coset(word("01")));
    }

    #[test]
    fn top_weight_of_cosets() {
        let h8 = hamming_h8();
        let zero = top_weight(&h8, &ModuleLabel::Coset(BitWord::zero(8)));
        assert_eq!(zero.class, Exp::new(0, 1));
        assert_eq!(zero.exact, Some(Exp::new(0, 1)));

        let odd = top_weight(&h8, &ModuleLabel::Coset(word("10000000")));
        assert!(odd.is_half_integral());
        assert_eq!(odd.exact, Some(Exp::new(1, 2)));

        let pair = top_weight(&h8, &ModuleLabel::Coset(word("11000000")));
        assert!(pair.is_integral());
        assert_eq!(pair.exact, Some(Exp::new(1, 1)));
    }

    #[test]
    fn top_weight_of_twisted_and_framed() {
        let h8 = hamming_h8();
        let t = top_weight(&h8, &ModuleLabel::Twisted(BitWord::zero(8)));
        assert_eq!(t.exact, Some(Exp::new(1, 2)));

        // A framed label: 16 coordinates of 1/16 (wt(α)/16 = 1) over an even
        // inner coset: integral.
        let framed = ModuleLabel::Framed {
            sixteenth: BitWord::ones(16),
            inner: alloc::boxed::Box::new(ModuleLabel::Coset(word("11000000"))),
        };
        let w = top_weight(&h8, &framed);
        assert!(w.is_integral());
        assert_eq!(w.exact, Some(Exp::new(2, 1)));
    }

    /// The Z2 x Z2 family inside the Hamming ring graded by two even cosets
    /// and the twist bit, with the parity split checked against top weights.
    fn small_graded_family() -> (HammingRing, GradedFamily<ModuleLabel>) {
        let h8 = hamming_h8();
        let ring = HammingRing::new(h8.clone());
        // An even-weight representative outside H8: both cosets integral.
        let d1 = crate::codes::LinearCode::span(8, &[word("11000000")]);
        let d2 = crate::codes::LinearCode::full(1);
        let mut labels = BTreeMap::new();
        for a in d1.iter_words() {
            labels.insert((a, word("0")), ring.untwisted(&a));
            labels.insert((a, word("1")), ring.twisted(&a));
        }
        (ring, GradedFamily { d1, d2, labels })
    }

    #[test]
    fn grading_check_accepts_the_hamming_family() {
        let (ring, family) = small_graded_family();
        let h8 = hamming_h8();
        let result = extension_grading_check(
            &family,
            |a, b| ring.fuse(a, b),
            |l| top_weight(&h8, l).class,
        );
        assert_eq!(result, Ok(()));
    }

    #[test]
    fn grading_check_rejects_a_mislabeled_family() {
        let (ring, mut family) = small_graded_family();
        let h8 = hamming_h8();
        // Replace one twisted label by a different twisted coset.  A single
        // replacement is not a translation of the whole twisted sector, so
        // some cross product misses its target.
        let k = (word("00000000"), word("1"));
        family.labels.insert(k, ring.twisted(&word("00110000")));
        let result = extension_grading_check(
            &family,
            |a, b| ring.fuse(a, b),
            |l| top_weight(&h8, l).class,
        );
        assert!(matches!(result, Err(GradingViolation::ProductMismatch { .. })));
    }

    #[test]
    fn grading_check_rejects_a_broken_parity_split() {
        let (ring, mut family) = small_graded_family();
        let h8 = hamming_h8();
        // An untwisted label in the twisted slot has integral class: the
        // parity split fails before any product is taken.
        let k = (word("00000000"), word("1"));
        family.labels.insert(k, ring.untwisted(&word("11000000")));
        let result = extension_grading_check(
            &family,
            |a, b| ring.fuse(a, b),
            |l| top_weight(&h8, l).class,
        );
        assert_eq!(result, Err(GradingViolation::ParitySplit { key: k }));
    }

    #[test]
    fn i3_check_on_the_trivial_family() {
        // S = {0, 1^8} with V^0 = U_H and V^{1^8} a framed label whose inner
        // coset has half-integral top weight, making the total integral.
        let h8 = hamming_h8();
        let ring = HammingRing::new(h8.clone());
        let s = crate::codes::LinearCode::span(8, &[BitWord::ones(8)]);

        let mut labels = BTreeMap::new();
        labels.insert(BitWord::zero(8), ring.untwisted(&BitWord::zero(8)));
        labels.insert(
            BitWord::ones(8),
            ModuleLabel::Framed {
                sixteenth: BitWord::ones(8),
                inner: alloc::boxed::Box::new(ModuleLabel::Coset(word("10000000"))),
            },
        );

        // Fusion oracle for this toy family: the group law on S.
        let fuse = |a: &ModuleLabel, b: &ModuleLabel| {
            let target = a.sixteenth_word() ^ b.sixteenth_word();
            FusionElement::single(labels[&target].clone())
        };

        let report = hypothesis_i3_check(
            &s,
            &labels,
            |l| l.sixteenth_word(),
            |l| top_weight(&h8, l).class,
            fuse,
        );
        assert!(report.pass(), "report: {report:?}");
        assert_eq!(report.min_multiplicity(), Some(1));
        assert_eq!(report.fusion_multiplicities.len(), 4);
    }

    #[test]
    fn i3_check_flags_a_wrong_sixteenth_word() {
        let h8 = hamming_h8();
        let ring = HammingRing::new(h8.clone());
        let s = crate::codes::LinearCode::span(8, &[BitWord::ones(8)]);

        // Both slots filled with untwisted labels: the 1^8 slot then has
        // 1/16-word 0, violating (3-i).
        let mut labels = BTreeMap::new();
        labels.insert(BitWord::zero(8), ring.untwisted(&BitWord::zero(8)));
        labels.insert(BitWord::ones(8), ring.untwisted(&word("11110000")));

        let report = hypothesis_i3_check(
            &s,
            &labels,
            |l| l.sixteenth_word(),
            |l| top_weight(&h8, l).class,
            |a, b| ring.fuse(a, b),
        );
        assert!(!report.pass());
        assert_eq!(report.sixteenth_mismatches, vec![BitWord::ones(8)]);
        assert!(report.nonintegral.is_empty());
    }
}
