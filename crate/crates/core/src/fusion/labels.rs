//! Module labels and the concrete fusion rules.
//!
//! Three label families appear:
//!
//! * [`IsingLabel`]: the irreducible L(1/2, 0)-modules h ∈ {0, 1/2, 1/16},
//!   fusing by
//!   h½ × h½ = h0,  h½ × h′₁₆ = h′₁₆,  h′₁₆ × h′₁₆ = h0 + h½;
//! * [`FrameLabel`]: tuples of Ising labels for modules over a full frame
//!   L(1/2,0)⊗ⁿ, fusing componentwise; the positions carrying 1/16 form the
//!   label's 1/16-word, and 1/16-words add under fusion;
//! * [`ModuleLabel`]: labels over a code VOA U_D: cosets U_{D+γ}, twisted
//!   modules H(1/16, χ) over a Hamming block, and induced (framed) labels
//!   carrying a 1/16-word plus the label of their 0-part.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use super::FusionElement;
use crate::codes::{BitWord, LinearCode};
use crate::Exp;

/// An irreducible Ising module, by conformal weight.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum IsingLabel {
    H0,
    H12,
    H116,
}

impl IsingLabel {
    pub fn weight(&self) -> Exp {
        match self {
            IsingLabel::H0 => Exp::new(0, 1),
            IsingLabel::H12 => Exp::new(1, 2),
            IsingLabel::H116 => Exp::new(1, 16),
        }
    }

    pub const ALL: [IsingLabel; 3] = [IsingLabel::H0, IsingLabel::H12, IsingLabel::H116];
}

impl fmt::Display for IsingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsingLabel::H0 => write!(f, "0"),
            IsingLabel::H12 => write!(f, "1/2"),
            IsingLabel::H116 => write!(f, "1/16"),
        }
    }
}

/// The Ising fusion product.
pub fn ising_fuse(a: IsingLabel, b: IsingLabel) -> FusionElement<IsingLabel> {
    use IsingLabel::*;
    match (a, b) {
        (H0, x) | (x, H0) => FusionElement::single(x),
        (H12, H12) => FusionElement::single(H0),
        (H12, H116) | (H116, H12) => FusionElement::single(H116),
        (H116, H116) => [(H0, 1), (H12, 1)].into_iter().collect(),
    }
}

/// A module label over an n-fold frame: one Ising label per coordinate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct FrameLabel(pub Vec<IsingLabel>);

impl FrameLabel {
    pub fn vacuum(n: usize) -> Self {
        FrameLabel(alloc::vec![IsingLabel::H0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The 1/16-word τ: bit i set where component i is 1/16.
    pub fn sixteenth_word(&self) -> BitWord {
        let mut w = BitWord::zero(self.len());
        for (i, l) in self.0.iter().enumerate() {
            if *l == IsingLabel::H116 {
                w.set(i, true);
            }
        }
        w
    }

    /// The binary frame word of the non-1/16 part: bit i set where the
    /// component is 1/2.
    pub fn half_word(&self) -> BitWord {
        let mut w = BitWord::zero(self.len());
        for (i, l) in self.0.iter().enumerate() {
            if *l == IsingLabel::H12 {
                w.set(i, true);
            }
        }
        w
    }

    /// Top conformal weight: the sum of the component weights.
    pub fn top_weight(&self) -> Exp {
        self.0.iter().map(IsingLabel::weight).sum()
    }

    /// The label with given 1/16-part and 1/2-part (disjoint supports).
    pub fn from_words(sixteenth: &BitWord, half: &BitWord) -> Self {
        assert_eq!(sixteenth.len(), half.len());
        assert!((*sixteenth & *half).is_zero(), "1/16 and 1/2 supports overlap");
        FrameLabel(
            (0..sixteenth.len())
                .map(|i| {
                    if sixteenth.get(i) {
                        IsingLabel::H116
                    } else if half.get(i) {
                        IsingLabel::H12
                    } else {
                        IsingLabel::H0
                    }
                })
                .collect(),
        )
    }
}

impl fmt::Display for FrameLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Componentwise fusion of frame labels; the result has 2^k terms where k
/// counts the coordinates with 1/16 on both sides.
pub fn frame_fuse(a: &FrameLabel, b: &FrameLabel) -> FusionElement<FrameLabel> {
    assert_eq!(a.len(), b.len(), "frame lengths differ");
    let mut partial: Vec<(Vec<IsingLabel>, u64)> = alloc::vec![(Vec::with_capacity(a.len()), 1)];
    for (&x, &y) in a.0.iter().zip(&b.0) {
        let factor = ising_fuse(x, y);
        let mut next = Vec::with_capacity(partial.len() * factor.term_count());
        for (prefix, m) in &partial {
            for (l, ml) in factor.terms() {
                let mut t = prefix.clone();
                t.push(*l);
                next.push((t, m * ml));
            }
        }
        partial = next;
    }
    partial.into_iter().map(|(t, m)| (FrameLabel(t), m)).collect()
}

/// A label over a code VOA.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum ModuleLabel {
    /// The coset module U_{D+γ}; γ is the canonical representative mod D.
    Coset(BitWord),
    /// The twisted module H(1/16, χ) over a Hamming block; χ canonical mod H8.
    Twisted(BitWord),
    /// An induced label: the 1/16-word α together with the label of the
    /// 0-part it was induced from.
    Framed { sixteenth: BitWord, inner: Box<ModuleLabel> },
}

impl ModuleLabel {
    /// The 1/16-word the label carries.
    pub fn sixteenth_word(&self) -> BitWord {
        match self {
            ModuleLabel::Coset(g) => BitWord::zero(g.len()),
            // A twisted block is 1/16 on all of its coordinates.
            ModuleLabel::Twisted(chi) => BitWord::ones(chi.len()),
            ModuleLabel::Framed { sixteenth, .. } => *sixteenth,
        }
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::Coset(g) => write!(f, "U[{g}]"),
            ModuleLabel::Twisted(chi) => write!(f, "H16[{chi}]"),
            ModuleLabel::Framed { sixteenth, inner } => write!(f, "V[{sixteenth}; {inner}]"),
        }
    }
}

/// Fusion of coset modules over an even code D (the group algebra of
/// ℤ₂ⁿ/D): U_{D+γ₁} × U_{D+γ₂} = U_{D+γ₁+γ₂}.
pub fn coset_fuse(d: &LinearCode, g1: &BitWord, g2: &BitWord) -> FusionElement<ModuleLabel> {
    FusionElement::single(ModuleLabel::Coset(d.reduce(&(*g1 ^ *g2))))
}

/// The 32-label fusion ring of a Hamming code block: 16 cosets U_{H+γ} and
/// 16 twisted modules H(1/16, χ).
#[derive(Clone, Debug)]
pub struct HammingRing {
    code: LinearCode,
}

impl HammingRing {
    /// The ring over a permuted [8,4,4] Hamming code.
    pub fn new(code: LinearCode) -> Self {
        assert_eq!(code.len(), 8, "Hamming ring needs a length-8 code");
        assert_eq!(code.dim(), 4);
        assert!(code.is_doubly_even() && code.is_self_dual(), "not a Hamming [8,4,4] code");
        HammingRing { code }
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn untwisted(&self, gamma: &BitWord) -> ModuleLabel {
        ModuleLabel::Coset(self.code.reduce(gamma))
    }

    pub fn twisted(&self, chi: &BitWord) -> ModuleLabel {
        ModuleLabel::Twisted(self.code.reduce(chi))
    }

    /// The three fusion rules of the Hamming ring:
    /// U_{H+α} × U_{H+β} = U_{H+α+β},
    /// U_{H+α} × H(1/16, β) = H(1/16, α+β),
    /// H(1/16, α) × H(1/16, β) = U_{H+α+β}.
    pub fn fuse(&self, a: &ModuleLabel, b: &ModuleLabel) -> FusionElement<ModuleLabel> {
        use ModuleLabel::*;
        let sum = |x: &BitWord, y: &BitWord| self.code.reduce(&(*x ^ *y));
        FusionElement::single(match (a, b) {
            (Coset(x), Coset(y)) => Coset(sum(x, y)),
            (Coset(x), Twisted(y)) | (Twisted(y), Coset(x)) => Twisted(sum(x, y)),
            (Twisted(x), Twisted(y)) => Coset(sum(x, y)),
            _ => panic!("hamming ring labels are cosets and twisted modules"),
        })
    }

    /// The full 32-label table, closed from all cosets and one twisted label.
    pub fn table(&self) -> super::FusionTable<ModuleLabel> {
        let mut generators: Vec<ModuleLabel> = LinearCode::full(8)
            .iter_words()
            .map(|w| self.untwisted(&w))
            .collect();
        generators.push(self.twisted(&BitWord::zero(8)));
        generators.sort();
        generators.dedup();
        super::FusionTable::close(
            self.untwisted(&BitWord::zero(8)),
            &generators,
            |a, b| self.fuse(a, b),
            64,
        )
        .expect("hamming ring closes on 32 labels")
    }
}

/// Fusion rule for one Hamming block, as a free function.
pub fn hamming_fuse(
    h8: &LinearCode,
    a: &ModuleLabel,
    b: &ModuleLabel,
) -> FusionElement<ModuleLabel> {
    HammingRing::new(h8.clone()).fuse(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::named::hamming_h8;
    use crate::codes::word;
    use alloc::vec;

    #[test]
    fn ising_products_match_the_fusion_rules() {
        use IsingLabel::*;
        assert!(ising_fuse(H0, H0).is_single(&H0));
        assert!(ising_fuse(H0, H116).is_single(&H116));
        assert!(ising_fuse(H12, H12).is_single(&H0));
        assert!(ising_fuse(H12, H116).is_single(&H116));
        let square = ising_fuse(H116, H116);
        assert_eq!(square.multiplicity(&H0), 1);
        assert_eq!(square.multiplicity(&H12), 1);
        assert_eq!(square.term_count(), 2);
    }

    #[test]
    fn frame_fuse_expands_sixteenth_squares() {
        use IsingLabel::*;
        let t = FrameLabel(vec![H116, H116]);
        let product = frame_fuse(&t, &t);
        // (h116, h116)² = 4 labels, all with 1/16-word 00, each multiplicity 1.
        assert_eq!(product.term_count(), 4);
        for (l, m) in product.terms() {
            assert_eq!(m, 1);
            assert!(l.sixteenth_word().is_zero());
        }
    }

    #[test]
    fn frame_fuse_sixteenth_words_add() {
        use IsingLabel::*;
        let a = FrameLabel(vec![H116, H0, H12, H116]);
        let b = FrameLabel(vec![H0, H116, H116, H116]);
        let expected = a.sixteenth_word() ^ b.sixteenth_word();
        for (l, _) in frame_fuse(&a, &b).terms() {
            assert_eq!(l.sixteenth_word(), expected);
        }
    }

    #[test]
    fn frame_label_words_and_weight() {
        use IsingLabel::*;
        let l = FrameLabel(vec![H116, H12, H0, H116]);
        assert_eq!(l.sixteenth_word(), word("1001"));
        assert_eq!(l.half_word(), word("0100"));
        assert_eq!(l.top_weight(), Exp::new(1, 16) + Exp::new(1, 2) + Exp::new(1, 16));
        assert_eq!(FrameLabel::from_words(&word("1001"), &word("0100")), l);
    }

    #[test]
    fn coset_fuse_is_the_quotient_group() {
        let h8 = hamming_h8();
        let g = word("10000000");
        // γ + γ = 0: the coset squares to the unit.
        let square = coset_fuse(&h8, &g, &g);
        assert!(square.is_single(&ModuleLabel::Coset(BitWord::zero(8))));
        // Reduction is canonical: fusing different representatives agrees.
        let g2 = g ^ *h8.basis().first().unwrap();
        assert_eq!(coset_fuse(&h8, &g2, &g), square);
    }

    #[test]
    fn hamming_ring_three_lines() {
        let ring = HammingRing::new(hamming_h8());
        let a = word("10000000");
        let b = word("01000000");
        let u_a = ring.untwisted(&a);
        let u_b = ring.untwisted(&b);
        let t_a = ring.twisted(&a);
        let t_b = ring.twisted(&b);
        let u_ab = ring.untwisted(&(a ^ b));
        let t_ab = ring.twisted(&(a ^ b));
        assert!(ring.fuse(&u_a, &u_b).is_single(&u_ab));
        assert!(ring.fuse(&u_a, &t_b).is_single(&t_ab));
        assert!(ring.fuse(&t_a, &u_b).is_single(&t_ab));
        assert!(ring.fuse(&t_a, &t_b).is_single(&u_ab));
    }

    #[test]
    fn hamming_ring_closes_on_32_labels() {
        let ring = HammingRing::new(hamming_h8());
        let table = ring.table();
        assert_eq!(table.labels().len(), 32);
        assert!(table.verify_unit());
        assert!(table.is_commutative());
        assert!(table.check_associative().is_ok());
    }

    #[test]
    fn sixteenth_words_of_module_labels() {
        let coset = ModuleLabel::Coset(word("1100"));
        assert!(coset.sixteenth_word().is_zero());
        let twisted = ModuleLabel::Twisted(word("10000000"));
        assert_eq!(twisted.sixteenth_word(), BitWord::ones(8));
        let framed = ModuleLabel::Framed {
            sixteenth: word("1111"),
            inner: alloc::boxed::Box::new(coset),
        };
        assert_eq!(framed.sixteenth_word(), word("1111"));
    }
}
