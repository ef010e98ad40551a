//! The framed-structure pipeline: builds the two structure-code pairs, the
//! module labels over their 1/16-word codes, the three-label VB⁰ fusion ring
//! with its Ising identification, and the dual-pair character verification.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::codes::named::{d_flat, d_natural, s_flat, s_natural};
use crate::codes::{check_condition1, BitWord, CodeError, CodePair, Condition1Report, LinearCode};
use crate::fusion::{
    hypothesis_i3_check, induce, ising_fuse, top_weight, FusionElement, FusionError, FusionTable,
    I3Report, InducedLabel, IsingLabel, ModuleLabel, TopWeight,
};
use crate::qseries::{
    decomposition_residual, ising_characters, j_series, solve_baby_characters, verify_s_transform,
    CheckStatus, QSeries, QSeriesError, SMatrix3, STransformReport,
};
use crate::Exp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FramedError {
    Code(CodeError),
    Fusion(FusionError),
    Series(QSeriesError),
    /// The VB table's product at (left, right) does not match the Ising
    /// product of the image labels.
    NotIsomorphic { left: VbLabel, right: VbLabel },
}

impl From<CodeError> for FramedError {
    fn from(e: CodeError) -> Self {
        FramedError::Code(e)
    }
}

impl From<FusionError> for FramedError {
    fn from(e: FusionError) -> Self {
        FramedError::Fusion(e)
    }
}

impl From<QSeriesError> for FramedError {
    fn from(e: QSeriesError) -> Self {
        FramedError::Series(e)
    }
}

impl fmt::Display for FramedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FramedError::Code(e) => write!(f, "{e}"),
            FramedError::Fusion(e) => write!(f, "{e}"),
            FramedError::Series(e) => write!(f, "{e}"),
            FramedError::NotIsomorphic { left, right } => {
                write!(f, "product {left} x {right} breaks the Ising correspondence")
            }
        }
    }
}

/// A structure-code pair together with the module labels of its 1/16-word
/// family and the attached character data.
#[derive(Clone, Debug)]
pub struct FramedVoaDescriptor {
    pair: CodePair,
    condition1: Condition1Report,
    labels: BTreeMap<BitWord, ModuleLabel>,
    character: Option<QSeries>,
    induced: Option<InducedLabel<ModuleLabel>>,
}

impl FramedVoaDescriptor {
    pub fn pair(&self) -> &CodePair {
        &self.pair
    }

    pub fn condition1(&self) -> &Condition1Report {
        &self.condition1
    }

    pub fn labels(&self) -> &BTreeMap<BitWord, ModuleLabel> {
        &self.labels
    }

    pub fn character(&self) -> Option<&QSeries> {
        self.character.as_ref()
    }

    /// For the baby descriptor: the odd-sector module induced along S.
    pub fn induced(&self) -> Option<&InducedLabel<ModuleLabel>> {
        self.induced.as_ref()
    }

    /// The code the inner coset data of V^α lives over: D projected onto the
    /// coordinates outside Supp(α).  Even, because D ⊆ S⊥ makes both halves
    /// of every word even.
    pub fn inner_code(&self, sixteenth: &BitWord) -> LinearCode {
        outside_code(&self.pair.d, sixteenth)
    }

    /// Top weight of one of this descriptor's labels, over the right code.
    pub fn label_top_weight(&self, label: &ModuleLabel) -> TopWeight {
        match label {
            ModuleLabel::Framed { sixteenth, .. } => {
                top_weight(&self.inner_code(sixteenth), label)
            }
            _ => top_weight(&self.pair.d, label),
        }
    }

    /// Runs the Hypothesis I(3) battery on this descriptor's family, fusing
    /// by the formal group law V^α ⊠ V^β = V^{α+β}.
    pub fn hypothesis_report(&self) -> I3Report {
        let group_law = |a: &ModuleLabel, b: &ModuleLabel| {
            let key = a.sixteenth_word() ^ b.sixteenth_word();
            FusionElement::single(self.labels[&key].clone())
        };
        hypothesis_i3_check(
            &self.pair.s,
            &self.labels,
            ModuleLabel::sixteenth_word,
            |l| self.label_top_weight(l).class,
            group_law,
        )
    }
}

fn outside_code(d: &LinearCode, alpha: &BitWord) -> LinearCode {
    let outside: Vec<usize> = alpha.complement().support().collect();
    d.puncture(&outside)
}

/// The module label of V^α in a structure-code family: the vacuum coset for
/// α = 0, otherwise a framed label whose inner coset parity is pinned by
/// integrality of the top weight, wt(α)/16 + wt(η)/2 ∈ ℤ.
pub fn structure_labels(pair: &CodePair) -> BTreeMap<BitWord, ModuleLabel> {
    pair.s
        .iter_words()
        .map(|alpha| {
            let label = if alpha.weight() == 0 {
                ModuleLabel::Coset(BitWord::zero(pair.len()))
            } else {
                let inner_code = outside_code(&pair.d, &alpha);
                let eta = if (alpha.weight() / 8) % 2 == 0 {
                    BitWord::zero(inner_code.len())
                } else {
                    // An odd-parity coset; the representative within it is
                    // not pinned at label level, so take the canonical one.
                    inner_code.reduce(&BitWord::from_support(inner_code.len(), &[0]))
                };
                ModuleLabel::Framed {
                    sixteenth: alpha,
                    inner: Box::new(ModuleLabel::Coset(eta)),
                }
            };
            (alpha, label)
        })
        .collect()
}

/// Descriptor for an arbitrary structure-code pair: the condition-1 report
/// and the label family, with no attached character data.
pub fn build_pair_descriptor(pair: CodePair) -> FramedVoaDescriptor {
    let condition1 = check_condition1(&pair);
    let labels = structure_labels(&pair);
    FramedVoaDescriptor { pair, condition1, labels, character: None, induced: None }
}

/// The length-48 descriptor: pair (D♮, S♮), labels over all 128 words of
/// S♮, and the modular invariant j (at the given series order) as character.
pub fn build_moonshine_descriptor(character_order: i64) -> Result<FramedVoaDescriptor, FramedError> {
    let pair = CodePair::new(d_natural(), s_natural())?;
    let mut desc = build_pair_descriptor(pair);
    desc.character = Some(j_series(character_order));
    Ok(desc)
}

/// The length-47 descriptor: pair (D♭⁰, S♭), labels over the 64 words of
/// S♭, the solved even-sector character b0, and the odd sector recorded as
/// the label induced from the coset U_{D♭¹} along S♭.
pub fn build_baby_descriptor(character_order: i64) -> Result<FramedVoaDescriptor, FramedError> {
    let (d0, odd_rep) = d_flat();
    let pair = CodePair::new(d0, s_flat())?;
    let mut desc = build_pair_descriptor(pair);
    desc.character = Some(solve_baby_characters(character_order)?.b0);
    let seed = ModuleLabel::Coset(desc.pair.d.reduce(&odd_rep));
    desc.induced = Some(induce(&desc.pair.s, &seed, |alpha, l| {
        coset_action(&desc.pair, &desc.labels, alpha, l)
    })?);
    Ok(desc)
}

/// V^α acting on a coset label U_{D+γ}: an untwisted α fixes the coset; a
/// twisted α wraps it into a framed label whose inner coset is the sum of
/// V^α's own inner datum and γ's outside part (coset data is additive under
/// fusion).  Used only for the induction of the odd sector.
fn coset_action(
    pair: &CodePair,
    labels: &BTreeMap<BitWord, ModuleLabel>,
    alpha: &BitWord,
    label: &ModuleLabel,
) -> FusionElement<ModuleLabel> {
    let ModuleLabel::Coset(gamma) = label else {
        unreachable!("the induction seed and its orbit are coset-rooted")
    };
    if alpha.weight() == 0 {
        return FusionElement::single(ModuleLabel::Coset(pair.d.reduce(gamma)));
    }
    let outside: Vec<usize> = alpha.complement().support().collect();
    let inner_code = pair.d.puncture(&outside);
    let eta_alpha = match &labels[alpha] {
        ModuleLabel::Framed { inner, .. } => match inner.as_ref() {
            ModuleLabel::Coset(e) => *e,
            _ => unreachable!("structure labels carry coset inner data"),
        },
        _ => unreachable!("a nonzero 1/16-word carries a framed label"),
    };
    let eta = inner_code.reduce(&(eta_alpha ^ gamma.restrict(&outside)));
    FusionElement::single(ModuleLabel::Framed {
        sixteenth: *alpha,
        inner: Box::new(ModuleLabel::Coset(eta)),
    })
}

/// The three irreducible VB⁰-module labels.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum VbLabel {
    B0,
    B1,
    BT,
}

impl fmt::Display for VbLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VbLabel::B0 => "VB0",
            VbLabel::B1 => "VB1",
            VbLabel::BT => "VBT",
        };
        write!(f, "{s}")
    }
}

/// The VB⁰ fusion rules: VB¹ × VB¹ = VB⁰, VB¹ × VB_T = VB_T,
/// VB_T × VB_T = VB⁰ + VB¹.
pub fn vb_fuse(a: VbLabel, b: VbLabel) -> FusionElement<VbLabel> {
    use VbLabel::*;
    match (a, b) {
        (B0, x) | (x, B0) => FusionElement::single(x),
        (B1, B1) => FusionElement::single(B0),
        (B1, BT) | (BT, B1) => FusionElement::single(BT),
        (BT, BT) => [(B0, 1), (B1, 1)].into_iter().collect(),
    }
}

/// The closed three-label table with unit VB⁰.
pub fn vb_fusion_ring() -> FusionTable<VbLabel> {
    FusionTable::close(VbLabel::B0, &[VbLabel::B1, VbLabel::BT], |a, b| vb_fuse(*a, *b), 8)
        .expect("three labels close")
}

/// The label-for-label correspondence with the Ising ring.
pub fn ising_image(l: VbLabel) -> IsingLabel {
    match l {
        VbLabel::B0 => IsingLabel::H0,
        VbLabel::B1 => IsingLabel::H12,
        VbLabel::BT => IsingLabel::H116,
    }
}

/// Certificate that VB⁰ ↦ h0, VB¹ ↦ h(1/2), VB_T ↦ h(1/16) is a ring
/// isomorphism: all nine products compared.
#[derive(Clone, Debug)]
pub struct IsomorphismCertificate {
    /// ((left, right), the common image product), one entry per pair.
    pub comparisons: Vec<((VbLabel, VbLabel), FusionElement<IsingLabel>)>,
}

pub fn ring_isomorphism_to_ising(
    table: &FusionTable<VbLabel>,
) -> Result<IsomorphismCertificate, FramedError> {
    let mut comparisons = Vec::with_capacity(9);
    for &a in table.labels() {
        for &b in table.labels() {
            let mapped: FusionElement<IsingLabel> = table
                .product(&a, &b)
                .terms()
                .map(|(l, m)| (ising_image(*l), m))
                .collect();
            let direct = ising_fuse(ising_image(a), ising_image(b));
            if mapped != direct {
                return Err(FramedError::NotIsomorphic { left: a, right: b });
            }
            comparisons.push(((a, b), direct));
        }
    }
    Ok(IsomorphismCertificate { comparisons })
}

/// Bookkeeping for the module counts around a single frame involution: the
/// four irreducible modules of the τ-fixed subVOA with their top-weight
/// parity classes, the three VB⁰ labels, and the twisted-module shape.
#[derive(Clone, Debug)]
pub struct ModuleCountReport {
    /// (name, top weight class mod 1) for the four irreducibles.
    pub tau_fixed_modules: [(&'static str, Exp); 4],
    pub vb_labels: [VbLabel; 3],
    pub twisted_shape: &'static str,
}

impl ModuleCountReport {
    pub fn half_integral_count(&self) -> usize {
        self.tau_fixed_modules
            .iter()
            .filter(|(_, c)| *c == Exp::new(1, 2))
            .count()
    }
}

pub fn module_count_checks() -> ModuleCountReport {
    ModuleCountReport {
        tau_fixed_modules: [
            ("V^<tau>", Exp::new(0, 1)),
            ("V_e(1/16)", Exp::new(0, 1)),
            ("W^0", Exp::new(1, 2)),
            ("W^1", Exp::new(0, 1)),
        ],
        vb_labels: [VbLabel::B0, VbLabel::B1, VbLabel::BT],
        twisted_shape: "L(1/2,1/2)⊗VB⁰ ⊕ L(1/2,0)⊗VB¹ ⊕ L(1/2,1/16)⊗VB_T",
    }
}

/// Splits S♮ by the first coordinate; each half has 64 words, and the
/// 0-half is φ₀(S♭).
pub fn s_natural_halves() -> (Vec<BitWord>, Vec<BitWord>) {
    let mut zero_half = Vec::new();
    let mut one_half = Vec::new();
    for w in s_natural().iter_words() {
        if w.get(0) {
            one_half.push(w);
        } else {
            zero_half.push(w);
        }
    }
    zero_half.sort();
    one_half.sort();
    (zero_half, one_half)
}

/// The two S-transform reports plus the exactness of the frame
/// decomposition of j.
#[derive(Clone, Debug)]
pub struct DualPairReport {
    pub ising: STransformReport,
    pub baby: STransformReport,
    /// Whether ch₀·b0 + ch_{1/2}·b1 + ch_{1/16}·bT − j vanished identically
    /// through the requested order.
    pub decomposition_zero: bool,
}

impl DualPairReport {
    pub fn status(&self) -> CheckStatus {
        if !self.decomposition_zero {
            return CheckStatus::Fail;
        }
        match (self.ising.status(), self.baby.status()) {
            (CheckStatus::Fail, _) | (_, CheckStatus::Fail) => CheckStatus::Fail,
            (CheckStatus::Inconclusive, _) | (_, CheckStatus::Inconclusive) => {
                CheckStatus::Inconclusive
            }
            _ => CheckStatus::Pass,
        }
    }
}

/// Solves the character triple at the given order, re-checks the j
/// decomposition exactly, and verifies the S-transform law for both the
/// Ising triple and the solved triple at the sample points.
pub fn dual_pair_verification(
    order: i64,
    taus: &[Complex64],
    tol: f64,
) -> Result<DualPairReport, QSeriesError> {
    let triple = solve_baby_characters(order)?;
    let chars = ising_characters(order);
    let residual = decomposition_residual(&j_series(order), &chars, &triple);
    let s = SMatrix3::new();
    let ising = verify_s_transform([&chars[0], &chars[1], &chars[2]], &s, taus, tol);
    let baby = verify_s_transform(triple.as_array(), &s, taus, tol);
    Ok(DualPairReport { ising, baby, decomposition_zero: residual.is_zero_series() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn moonshine_pair() -> CodePair {
        CodePair::new(d_natural(), s_natural()).unwrap()
    }

    fn baby_pair() -> CodePair {
        CodePair::new(d_flat().0, s_flat()).unwrap()
    }

    fn bare_descriptor(pair: CodePair) -> FramedVoaDescriptor {
        // Skips the cover search and character solve; label checks only.
        let labels = structure_labels(&pair);
        FramedVoaDescriptor {
            condition1: Condition1Report {
                containment: true,
                containment_witness: None,
                covers: vec![],
            },
            labels,
            character: None,
            induced: None,
            pair,
        }
    }

    #[test]
    fn moonshine_labels_pass_hypothesis_i3() {
        let desc = bare_descriptor(moonshine_pair());
        assert_eq!(desc.labels().len(), 128);
        let report = desc.hypothesis_report();
        assert!(report.pass());
        assert_eq!(report.min_multiplicity(), Some(1));
        assert_eq!(report.fusion_multiplicities.len(), 128 * 128);
    }

    #[test]
    fn moonshine_label_weights_by_alpha_weight() {
        let desc = bare_descriptor(moonshine_pair());
        for (alpha, label) in desc.labels() {
            let tw = desc.label_top_weight(label);
            assert!(tw.is_integral(), "V^{alpha} must have integral top weight");
            if alpha.weight() == 24 {
                // 24/16 + 1/2 from the forced odd inner coset.
                assert_eq!(tw.exact, Some(Exp::new(2, 1)));
            }
        }
    }

    #[test]
    fn baby_labels_pass_hypothesis_i3() {
        let desc = bare_descriptor(baby_pair());
        assert_eq!(desc.labels().len(), 64);
        let report = desc.hypothesis_report();
        assert!(report.pass());
        assert_eq!(report.min_multiplicity(), Some(1));
    }

    #[test]
    fn odd_sector_induces_with_64_components() {
        let pair = baby_pair();
        let (_, odd_rep) = d_flat();
        let labels = structure_labels(&pair);
        let seed = ModuleLabel::Coset(pair.d.reduce(&odd_rep));
        let induced = induce(&pair.s, &seed, |a, l| coset_action(&pair, &labels, a, l)).unwrap();
        assert_eq!(induced.component_count(), 64);
        let zero = BitWord::zero(47);
        assert_eq!(induced.components[0].0, zero);
        assert_eq!(induced.components[0].1, seed);
        for (alpha, component) in &induced.components[1..] {
            assert_eq!(component.sixteenth_word(), *alpha);
            // Odd inner parity throughout: the odd coset stays odd outside
            // Supp(α) because the inside overlap is even.
            let tw = top_weight(&outside_code(&pair.d, alpha), component);
            assert!(tw.is_half_integral());
        }
    }

    #[test]
    fn odd_sector_top_weight_is_three_halves() {
        let pair = baby_pair();
        let (_, odd_rep) = d_flat();
        let tw = top_weight(&pair.d, &ModuleLabel::Coset(odd_rep));
        assert_eq!(tw, TopWeight { class: Exp::new(1, 2), exact: Some(Exp::new(3, 2)) });
    }

    #[test]
    fn vb_ring_closes_and_matches_ising() {
        let table = vb_fusion_ring();
        assert_eq!(table.labels().len(), 3);
        assert_eq!(*table.unit(), VbLabel::B0);
        assert!(table.verify_closed().is_ok());
        assert!(table.verify_unit());
        assert!(table.is_commutative());
        assert!(table.check_associative().is_ok());
        let cert = ring_isomorphism_to_ising(&table).unwrap();
        assert_eq!(cert.comparisons.len(), 9);
    }

    #[test]
    fn corrupted_vb_table_fails_the_isomorphism() {
        let mut table = vb_fusion_ring();
        table.corrupt_product(
            &VbLabel::B1,
            &VbLabel::B1,
            FusionElement::single(VbLabel::BT),
        );
        let err = ring_isomorphism_to_ising(&table).unwrap_err();
        assert_eq!(err, FramedError::NotIsomorphic { left: VbLabel::B1, right: VbLabel::B1 });
    }

    #[test]
    fn module_count_report() {
        let report = module_count_checks();
        assert_eq!(report.tau_fixed_modules.len(), 4);
        assert_eq!(report.half_integral_count(), 1);
        assert_eq!(report.tau_fixed_modules[2].0, "W^0");
        assert_eq!(report.vb_labels.len(), 3);
        assert_eq!(
            report.twisted_shape,
            "L(1/2,1/2)⊗VB⁰ ⊕ L(1/2,0)⊗VB¹ ⊕ L(1/2,1/16)⊗VB_T"
        );
    }

    #[test]
    fn s_natural_splits_into_phi_images() {
        use crate::codes::named::phi;
        let (zero_half, one_half) = s_natural_halves();
        assert_eq!(zero_half.len(), 64);
        assert_eq!(one_half.len(), 64);
        let s_nat = s_natural();
        let mut images: Vec<BitWord> = s_flat().iter_words().map(|w| phi(false, &w)).collect();
        images.sort();
        assert_eq!(images, zero_half);
        for w in s_flat().iter_words() {
            assert!(s_nat.contains(&phi(false, &w)));
        }
    }

    #[test]
    fn dual_pair_verification_at_low_order() {
        // Order 40 is the cheapest point where the tail majorant converges
        // for the solved triple (the window must clear the early coefficient
        // jump 1 → 96256).
        let taus = [Complex64::new(0.0, 1.0)];
        let report = dual_pair_verification(40, &taus, 1e-4).unwrap();
        assert!(report.decomposition_zero);
        assert_eq!(report.ising.status(), CheckStatus::Pass);
        assert_eq!(report.baby.status(), CheckStatus::Pass);
        assert_eq!(report.status(), CheckStatus::Pass);
    }

    #[test]
    fn inner_codes_are_even() {
        let desc = bare_descriptor(moonshine_pair());
        for alpha in desc.pair().s.iter_words().filter(|a| a.weight() > 0) {
            assert!(desc.inner_code(&alpha).is_even(), "outside code at {alpha}");
        }
    }

    #[test]
    fn structure_label_of_zero_is_the_vacuum_coset() {
        let desc = bare_descriptor(baby_pair());
        assert_eq!(desc.labels()[&BitWord::zero(47)], ModuleLabel::Coset(BitWord::zero(47)));
    }
}
