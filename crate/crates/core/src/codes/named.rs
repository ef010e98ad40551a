//! The specific codes entering the moonshine and baby monster structure-code
//! pairs.
//!
//! * `H8`: the [8,4,4] Hamming code, the unique doubly even self-dual code of
//!   length 8.  Its copies inside D are what condition (1) asks to cover each
//!   1/16-word with.
//! * `RM(4,1)`: the length-16 first-order Reed-Muller code, dimension 5,
//!   weight enumerator 1 + 30z⁸ + z¹⁶.
//! * `S♮ ⊂ ℤ₂⁴⁸`: words (α,α,α), (αᶜ,α,α), (α,αᶜ,α), (α,α,αᶜ) for α ∈ RM(4,1);
//!   linear of dimension 7 because RM(4,1) contains the all-ones word.
//! * `D♮ = (S♮)⊥`, dimension 41.
//! * The length-47 descendants: D♭ᵉ = {α : φ_ε(α) ∈ D♮} and
//!   S♭ = {β : φ₀(β) ∈ (S♮)⁰}, where φ_ε prepends the bit ε.

use alloc::vec::Vec;

use super::{word, BitWord, LinearCode};

/// The [8,4,4] Hamming code.
pub fn hamming_h8() -> LinearCode {
    LinearCode::span(
        8,
        &[word("11111111"), word("11110000"), word("11001100"), word("10101010")],
    )
}

/// The first-order Reed-Muller code RM(4,1) of length 16.
pub fn reed_muller_4_1() -> LinearCode {
    LinearCode::span(
        16,
        &[
            word("1111111111111111"),
            word("1111111100000000"),
            word("1111000011110000"),
            word("1100110011001100"),
            word("1010101010101010"),
        ],
    )
}

/// S♮ ⊂ ℤ₂⁴⁸: the 1/16-word code of the moonshine module.
///
/// Generated by the diagonal copies (α,α,α) of RM(4,1) together with
/// (1¹⁶,0,0) and (0,1¹⁶,0); the words (αᶜ,α,α) etc. are recovered because
/// αᶜ = α + 1¹⁶.  Dimension 7, so 128 words.
pub fn s_natural() -> LinearCode {
    let rm = reed_muller_4_1();
    let ones = BitWord::ones(16);
    let zeros = BitWord::zero(16);
    let mut generators: Vec<BitWord> =
        rm.basis().iter().map(|&a| a.concat(&a).concat(&a)).collect();
    generators.push(ones.concat(&zeros).concat(&zeros));
    generators.push(zeros.concat(&ones).concat(&zeros));
    LinearCode::span(48, &generators)
}

/// D♮ = (S♮)⊥, the frame code of the moonshine module; dimension 41.
pub fn d_natural() -> LinearCode {
    s_natural().dual()
}

/// φ_ε: ℤ₂⁴⁷ → ℤ₂⁴⁸, prepending the bit ε at coordinate 0.
pub fn phi(eps: bool, w: &BitWord) -> BitWord {
    assert_eq!(w.len(), 47, "phi expects a length-47 word");
    w.prepend(eps)
}

/// The pair (D♭⁰, rep of D♭¹) obtained from D♮ by splitting on coordinate 0.
///
/// D♭ᵉ = {α ∈ ℤ₂⁴⁷ : φ_ε(α) ∈ D♮}.  D♭⁰ is a code of dimension 40 and D♭¹ is
/// one of its cosets; every word of D♭¹ has odd weight.
pub fn d_flat() -> (LinearCode, BitWord) {
    let (sub, rep) = split_on_first_coordinate(&d_natural());
    (sub, rep.expect("D natural has words with first coordinate 1"))
}

/// S♭ = {β ∈ ℤ₂⁴⁷ : φ₀(β) ∈ (S♮)⁰}: the 1/16-word code of the baby monster
/// VOA, dimension 6 (64 words).
pub fn s_flat() -> LinearCode {
    let (sub, _) = split_on_first_coordinate(&s_natural());
    sub
}

/// Splits a length-48 code by its first coordinate: returns the length-47
/// code {α : (0,α) ∈ C} and, when C has words with first bit 1, the
/// canonical representative of {α : (1,α) ∈ C} as a coset of the former.
fn split_on_first_coordinate(c: &LinearCode) -> (LinearCode, Option<BitWord>) {
    let mut mask = BitWord::ones(c.len());
    mask.set(0, false);
    let first_zero = c.subcode_supported_on(&mask);
    let sub_gens: Vec<BitWord> = first_zero.basis().iter().map(|w| w.split_first().1).collect();
    let sub = LinearCode::span(c.len() - 1, &sub_gens);
    let rep = c
        .basis()
        .iter()
        .find(|w| w.get(0))
        .map(|w| sub.reduce(&w.split_first().1));
    (sub, rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn h8_is_the_doubly_even_self_dual_code() {
        let h8 = hamming_h8();
        assert_eq!(h8.dim(), 4);
        assert!(h8.is_doubly_even());
        assert!(h8.is_self_dual());
        assert_eq!(h8.dual(), h8);
        assert_eq!(h8.weight_enumerator(), alloc::vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);
        assert_eq!(h8.min_weight(), Some(4));
    }

    #[test]
    fn reed_muller_shape() {
        let rm = reed_muller_4_1();
        assert_eq!(rm.dim(), 5);
        assert_eq!(rm.size(), 32);
        // Weights 0, 8, 16 only: 1 + 30z⁸ + z¹⁶.
        let en = rm.weight_enumerator();
        assert_eq!(en[0], 1);
        assert_eq!(en[8], 30);
        assert_eq!(en[16], 1);
        assert_eq!(en.iter().sum::<u64>(), 32);
        assert!(rm.contains(&BitWord::ones(16)));
    }

    #[test]
    fn s_natural_is_the_triplicated_code() {
        let s = s_natural();
        assert_eq!(s.dim(), 7);
        assert_eq!(s.size(), 128);

        // Brute force: the 128 words are exactly the four displayed shapes.
        let rm = reed_muller_4_1();
        let mut expected: Vec<BitWord> = Vec::new();
        for a in rm.iter_words() {
            let ac = a.complement();
            expected.push(a.concat(&a).concat(&a));
            expected.push(ac.concat(&a).concat(&a));
            expected.push(a.concat(&ac).concat(&a));
            expected.push(a.concat(&a).concat(&ac));
        }
        expected.sort();
        expected.dedup();
        let mut actual: Vec<BitWord> = s.iter_words().collect();
        actual.sort();
        assert_eq!(actual, expected);
    }

    #[test]
    fn s_natural_weights() {
        let s = s_natural();
        assert!(s.is_even());
        assert!(s.is_doubly_even());
        for w in s.iter_words() {
            assert_eq!(w.weight() % 8, 0, "weight {} not divisible by 8", w.weight());
        }
    }

    #[test]
    fn d_natural_dimension() {
        let d = d_natural();
        assert_eq!(d.dim(), 41);
        assert!(d.is_even());
        // D ⊆ S⊥ with equality here by construction.
        let s = s_natural();
        for a in d.basis() {
            for b in s.basis() {
                assert!(!a.dot(b));
            }
        }
    }

    #[test]
    fn flat_codes_dimensions() {
        let (d0, d1_rep) = d_flat();
        assert_eq!(d0.len(), 47);
        assert_eq!(d0.dim(), 40);
        assert!(!d0.contains(&d1_rep));
        // Every word of D♭¹ has odd weight: φ₁ adds a 1 to an even word.
        assert!(d0.is_even());
        assert_eq!(d1_rep.weight() % 2, 1);

        let s = s_flat();
        assert_eq!(s.len(), 47);
        assert_eq!(s.dim(), 6);
        assert_eq!(s.size(), 64);
    }

    #[test]
    fn phi_embeds_flat_codes() {
        let (d0, d1_rep) = d_flat();
        let dn = d_natural();
        for w in d0.basis() {
            assert!(dn.contains(&phi(false, w)));
        }
        assert!(dn.contains(&phi(true, &d1_rep)));
        let s = s_flat();
        let sn = s_natural();
        for w in s.basis() {
            assert!(sn.contains(&phi(false, w)));
        }
    }
}
