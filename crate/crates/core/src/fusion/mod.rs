//! Fusion rings with natural-number multiplicities.
//!
//! A fusion product here is a formal ℕ-combination of module labels.  The
//! label type is generic: the Ising ring uses [`IsingLabel`], frame tuple
//! rings use [`FrameLabel`], code-VOA rings use [`ModuleLabel`].  A
//! [`FusionTable`] is a finite, closed multiplication table built from
//! generators by saturation; on top of it sit the simple-current test
//! (x ⊠ W = unit with multiplicity exactly one), stabilizer subgroups,
//! induced labels, and the grading checks used by the extension theorems.

pub mod checks;
pub mod labels;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

pub use checks::{
    extension_grading_check, hypothesis_i3_check, induce, miyamoto_sigma, miyamoto_tau,
    simple_current_witness, stabilizer, top_weight, GradedFamily, GradingViolation, I3Report,
    InducedLabel, Sign, TopWeight,
};
pub use labels::{
    coset_fuse, frame_fuse, hamming_fuse, ising_fuse, FrameLabel, HammingRing, IsingLabel,
    ModuleLabel,
};

/// Errors from ring construction and label operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FusionError {
    /// Closure exceeded the label budget.
    RingTooLarge { limit: usize },
    /// A product referred to a label outside the table.
    NotClosed,
    /// Induction requires a trivial stabilizer (the non-free branch of the
    /// induced-module theorem is not mechanized).
    StabilizerNotTrivial { size: usize },
    /// Induction requires each V^α ⊠ w to be a single label of multiplicity 1.
    NotSimpleCurrentAction,
    /// σ-type Miyamoto involutions are undefined on 1/16 components.
    SigmaUndefined { index: usize },
}

impl fmt::Display for FusionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusionError::RingTooLarge { limit } => write!(f, "fusion closure exceeded {limit} labels"),
            FusionError::NotClosed => write!(f, "fusion table is not closed"),
            FusionError::StabilizerNotTrivial { size } => {
                write!(f, "stabilizer has {size} elements, induction needs it trivial")
            }
            FusionError::NotSimpleCurrentAction => {
                write!(f, "inducing words must act by simple currents")
            }
            FusionError::SigmaUndefined { index } => {
                write!(f, "sigma involution undefined: component {index} has label 1/16")
            }
        }
    }
}

/// A formal sum of labels with multiplicities in ℕ (zero terms never stored).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FusionElement<L: Ord>(BTreeMap<L, u64>);

impl<L: Ord + Clone> FusionElement<L> {
    pub fn zero() -> Self {
        FusionElement(BTreeMap::new())
    }

    pub fn single(label: L) -> Self {
        FusionElement(BTreeMap::from([(label, 1)]))
    }

    pub fn add(&mut self, label: L, mult: u64) {
        if mult > 0 {
            *self.0.entry(label).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, label: &L) -> u64 {
        self.0.get(label).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&L, u64)> {
        self.0.iter().map(|(l, &m)| (l, m))
    }

    pub fn term_count(&self) -> usize {
        self.0.len()
    }

    /// Total dimension-like count: sum of multiplicities.
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// True when the element is exactly 1·label.
    pub fn is_single(&self, label: &L) -> bool {
        self.0.len() == 1 && self.multiplicity(label) == 1
    }

    /// The unique label when the element is a single multiplicity-1 term.
    pub fn as_single(&self) -> Option<&L> {
        match self.0.iter().next() {
            Some((l, &1)) if self.0.len() == 1 => Some(l),
            _ => None,
        }
    }
}

impl<L: Ord + Clone> FromIterator<(L, u64)> for FusionElement<L> {
    fn from_iter<T: IntoIterator<Item = (L, u64)>>(iter: T) -> Self {
        let mut e = FusionElement::zero();
        for (l, m) in iter {
            e.add(l, m);
        }
        e
    }
}

impl<L: Ord + fmt::Display> fmt::Display for FusionElement<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, m)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m != 1 {
                write!(f, "{m}·")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A finite closed fusion ring: labels, unit, and all pairwise products.
#[derive(Clone, Debug)]
pub struct FusionTable<L: Ord + Clone> {
    labels: Vec<L>,
    unit: L,
    products: BTreeMap<(L, L), FusionElement<L>>,
}

impl<L: Ord + Clone> FusionTable<L> {
    /// Saturates the generator set under the fusion rule and tabulates all
    /// products.  Fails if more than `limit` labels appear.
    pub fn close(
        unit: L,
        generators: &[L],
        fuse: impl Fn(&L, &L) -> FusionElement<L>,
        limit: usize,
    ) -> Result<Self, FusionError> {
        let mut labels: BTreeSet<L> = generators.iter().cloned().collect();
        labels.insert(unit.clone());
        let mut products: BTreeMap<(L, L), FusionElement<L>> = BTreeMap::new();
        loop {
            let snapshot: Vec<L> = labels.iter().cloned().collect();
            let mut new_labels: BTreeSet<L> = BTreeSet::new();
            for a in &snapshot {
                for b in &snapshot {
                    let key = (a.clone(), b.clone());
                    if products.contains_key(&key) {
                        continue;
                    }
                    let prod = fuse(a, b);
                    for (l, _) in prod.terms() {
                        if !labels.contains(l) {
                            new_labels.insert(l.clone());
                        }
                    }
                    products.insert(key, prod);
                }
            }
            if new_labels.is_empty() {
                break;
            }
            labels.extend(new_labels);
            if labels.len() > limit {
                return Err(FusionError::RingTooLarge { limit });
            }
        }
        Ok(FusionTable { labels: labels.into_iter().collect(), unit, products })
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn unit(&self) -> &L {
        &self.unit
    }

    pub fn product(&self, a: &L, b: &L) -> &FusionElement<L> {
        self.products
            .get(&(a.clone(), b.clone()))
            .expect("labels not in fusion table")
    }

    /// Extends the product linearly to formal sums.
    pub fn multiply(&self, x: &FusionElement<L>, y: &FusionElement<L>) -> FusionElement<L> {
        let mut out = FusionElement::zero();
        for (a, ma) in x.terms() {
            for (b, mb) in y.terms() {
                for (l, m) in self.product(a, b).terms() {
                    out.add(l.clone(), ma * mb * m);
                }
            }
        }
        out
    }

    /// Every label appearing in a product is itself a table label.
    pub fn verify_closed(&self) -> Result<(), FusionError> {
        let set: BTreeSet<&L> = self.labels.iter().collect();
        for e in self.products.values() {
            if e.terms().any(|(l, _)| !set.contains(l)) {
                return Err(FusionError::NotClosed);
            }
        }
        Ok(())
    }

    /// unit ⊠ x = x = x ⊠ unit for every label.
    pub fn verify_unit(&self) -> bool {
        self.labels.iter().all(|x| {
            self.product(&self.unit, x).is_single(x) && self.product(x, &self.unit).is_single(x)
        })
    }

    pub fn is_commutative(&self) -> bool {
        self.labels
            .iter()
            .all(|a| self.labels.iter().all(|b| self.product(a, b) == self.product(b, a)))
    }

    /// Checks (a ⊠ b) ⊠ c = a ⊠ (b ⊠ c) for all label triples; returns the
    /// first violating triple if any.
    pub fn check_associative(&self) -> Result<(), (L, L, L)> {
        for a in &self.labels {
            for b in &self.labels {
                let ab = self.product(a, b).clone();
                for c in &self.labels {
                    let left = self.multiply(&ab, &FusionElement::single(c.clone()));
                    let right = self.multiply(
                        &FusionElement::single(a.clone()),
                        self.product(b, c),
                    );
                    if left != right {
                        return Err((a.clone(), b.clone(), c.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Replaces one product entry; the result is generally no longer a valid
    /// fusion ring.  Exists so negative controls can corrupt a table.
    pub fn corrupt_product(&mut self, a: &L, b: &L, value: FusionElement<L>) {
        self.products.insert((a.clone(), b.clone()), value);
    }
}

#[cfg(test)]
mod tests {
    use super::labels::{ising_fuse, IsingLabel};
    use super::*;

    fn ising_table() -> FusionTable<IsingLabel> {
        FusionTable::close(
            IsingLabel::H0,
            &[IsingLabel::H12, IsingLabel::H116],
            |a, b| ising_fuse(*a, *b),
            8,
        )
        .unwrap()
    }

    #[test]
    fn ising_ring_closes_on_three_labels() {
        let t = ising_table();
        assert_eq!(t.labels().len(), 3);
        assert!(t.verify_unit());
        assert!(t.is_commutative());
        assert!(t.check_associative().is_ok());
        assert!(t.verify_closed().is_ok());
    }

    #[test]
    fn element_arithmetic() {
        let mut e = FusionElement::zero();
        e.add(IsingLabel::H0, 1);
        e.add(IsingLabel::H12, 2);
        e.add(IsingLabel::H12, 1);
        assert_eq!(e.multiplicity(&IsingLabel::H12), 3);
        assert_eq!(e.total(), 4);
        assert_eq!(e.term_count(), 2);
        assert!(e.as_single().is_none());
        assert!(FusionElement::single(IsingLabel::H116).is_single(&IsingLabel::H116));
    }

    #[test]
    fn closure_budget_enforced() {
        // A deliberately divergent "fusion rule" on integers.
        let result = FusionTable::close(0u64, &[1], |a, b| FusionElement::single(a + b + 1), 10);
        assert_eq!(result.unwrap_err(), FusionError::RingTooLarge { limit: 10 });
    }
}
