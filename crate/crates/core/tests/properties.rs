//! Randomized structural properties: duality on random codes, 1/16-word
//! additivity of frame fusion, subgroup closure of stabilizers, and the
//! anticommutation sign discipline of the Fock normal form.

use framed_voa::codes::named::hamming_h8;
use framed_voa::codes::{BitWord, LinearCode};
use framed_voa::fock::{apply_mode, Sector, StateVector};
use framed_voa::fusion::{frame_fuse, stabilizer, FrameLabel, HammingRing, IsingLabel};
use framed_voa::sqrt2::Sqrt2;
use framed_voa::Exp;
use proptest::prelude::*;

fn mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

fn arb_code(max_len: usize) -> impl Strategy<Value = LinearCode> {
    (1..=max_len).prop_flat_map(|len| {
        prop::collection::vec(0..=mask(len), 0..=len)
            .prop_map(move |rows| {
                let words: Vec<BitWord> = rows
                    .into_iter()
                    .map(|bits| BitWord::from_bits(len, bits))
                    .collect();
                LinearCode::span(len, &words)
            })
    })
}

fn arb_ising() -> impl Strategy<Value = IsingLabel> {
    prop_oneof![
        Just(IsingLabel::H0),
        Just(IsingLabel::H12),
        Just(IsingLabel::H116),
    ]
}

fn arb_frame_pair() -> impl Strategy<Value = (FrameLabel, FrameLabel)> {
    (1..=48usize)
        .prop_flat_map(|len| {
            (
                prop::collection::vec(arb_ising(), len),
                prop::collection::vec(arb_ising(), len),
            )
        })
        .prop_filter("bound the fusion branching", |(a, b)| {
            let collisions = a
                .iter()
                .zip(b)
                .filter(|(x, y)| **x == IsingLabel::H116 && **y == IsingLabel::H116)
                .count();
            collisions <= 10
        })
        .prop_map(|(a, b)| (FrameLabel(a), FrameLabel(b)))
}

proptest! {
    #[test]
    fn dual_is_an_involution(code in arb_code(24)) {
        let dual = code.dual();
        prop_assert_eq!(code.dim() + dual.dim(), code.len());
        prop_assert_eq!(dual.dual(), code);
    }

    #[test]
    fn frame_fusion_adds_sixteenth_words((a, b) in arb_frame_pair()) {
        let expected = a.sixteenth_word() ^ b.sixteenth_word();
        let product = frame_fuse(&a, &b);
        prop_assert!(product.term_count() >= 1);
        for (term, _) in product.terms() {
            prop_assert_eq!(term.sixteenth_word(), expected);
        }
    }

    #[test]
    fn stabilizers_are_subgroups(rows in prop::collection::vec(0..=mask(8), 0..=8), which in 0..32usize) {
        let d = LinearCode::span(
            8,
            &rows.into_iter().map(|b| BitWord::from_bits(8, b)).collect::<Vec<_>>(),
        );
        let ring = HammingRing::new(hamming_h8());
        let table = ring.table();
        let w = table.labels()[which].clone();
        let stab = stabilizer(&d, &w, |alpha, l| ring.fuse(&ring.untwisted(alpha), l));
        prop_assert!(stab.contains(&BitWord::zero(8)));
        for x in &stab {
            for y in &stab {
                prop_assert!(stab.contains(&(*x ^ *y)));
            }
        }
    }
}

fn distinct_modes(sector: Sector) -> impl Strategy<Value = Vec<i64>> {
    // Doubled indices: NS odd, Ramond even (including the zero mode).
    let offset = match sector {
        Sector::NS => 1,
        Sector::Ramond => 0,
    };
    prop::collection::btree_set((0..8i64).prop_map(move |k| 2 * k + offset), 1..=6)
        .prop_map(|set| set.into_iter().collect())
}

fn arb_car_case() -> impl Strategy<Value = (Sector, Vec<i64>, Vec<i64>)> {
    prop_oneof![Just(Sector::NS), Just(Sector::Ramond)].prop_flat_map(|sector| {
        distinct_modes(sector).prop_flat_map(move |modes| {
            let shuffled = Just(modes.clone()).prop_shuffle();
            (Just(sector), Just(modes), shuffled)
        })
    })
}

fn create_all(sector: Sector, doubled: &[i64]) -> StateVector {
    let mut v = StateVector::vacuum(sector);
    for d in doubled {
        v = apply_mode(Exp::new(-d, 2), &v).expect("mode on the sector lattice");
    }
    v
}

fn inversion_parity(seq: &[i64]) -> i64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

proptest! {
    #[test]
    fn car_normal_form_tracks_permutation_signs((sector, sorted, shuffled) in arb_car_case()) {
        let canonical = create_all(sector, &sorted);
        let permuted = create_all(sector, &shuffled);
        let sign = inversion_parity(&shuffled);
        prop_assert_eq!(permuted, canonical.scale(&Sqrt2::from_int(sign)));
    }
}
