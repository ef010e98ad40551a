//! Formal q-series with fractional exponents and exact rational coefficients.
//!
//! A series is a finite sum of terms c·q^{k/d} together with a validity
//! order: exponents strictly below the order are exact, everything at or
//! above it has been discarded.  Every operation propagates validity, so a
//! truncated tail can never masquerade as a computed one.
//!
//! On top of the arithmetic sit the named series of the character pipeline:
//! the three Ising characters, E4, Δ, j, the 2A McKay-Thompson series, and
//! the solver that extracts the three baby-monster characters from them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
// Float supplies exp/powf on f64 in the no_std build.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::fusion::{ising_fuse, FusionElement, IsingLabel};
use crate::sqrt2::Sqrt2;
use crate::Exp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QSeriesError {
    /// Inversion requires a nonzero leading term.
    ZeroLeadingTerm,
    /// The solved characters violated an exactness assertion; the message
    /// names the failed check.  Signals a wrong input series or convention.
    DerivationInconsistency(String),
}

impl fmt::Display for QSeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSeriesError::ZeroLeadingTerm => {
                write!(f, "cannot invert a series with no leading term")
            }
            QSeriesError::DerivationInconsistency(what) => {
                write!(f, "derivation inconsistency: {what}")
            }
        }
    }
}

fn exp_i64(n: i64) -> Exp {
    Exp::new(n, 1)
}

/// A truncated q-series: terms c·q^{k/denom}, exact for exponents < order.
#[derive(Clone, Debug)]
pub struct QSeries {
    denom: i64,
    terms: BTreeMap<i64, BigRational>,
    order: Exp,
}

impl QSeries {
    pub fn zero(order: Exp) -> Self {
        QSeries { denom: 1, terms: BTreeMap::new(), order }
    }

    pub fn one(order: Exp) -> Self {
        Self::monomial(Exp::new(0, 1), BigRational::one(), order)
    }

    pub fn monomial(e: Exp, c: BigRational, order: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if e < order && !c.is_zero() {
            terms.insert(*e.numer(), c);
        }
        QSeries { denom: *e.denom(), terms, order }
    }

    pub fn constant(c: i64, order: Exp) -> Self {
        Self::monomial(Exp::new(0, 1), BigRational::from_integer(BigInt::from(c)), order)
    }

    pub fn order(&self) -> Exp {
        self.order
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero_series(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn leading(&self) -> Option<(Exp, &BigRational)> {
        self.terms
            .iter()
            .next()
            .map(|(k, c)| (Exp::new(*k, self.denom), c))
    }

    /// Exact coefficient of q^e; requires e < order.
    pub fn coeff(&self, e: Exp) -> BigRational {
        self.try_coeff(e).expect("coefficient requested at or beyond the validity order")
    }

    /// Exact coefficient of q^e, or None when e is at or beyond the order.
    pub fn try_coeff(&self, e: Exp) -> Option<BigRational> {
        if e >= self.order {
            return None;
        }
        let scaled = e * exp_i64(self.denom);
        if !scaled.is_integer() {
            return Some(BigRational::zero());
        }
        Some(
            self.terms
                .get(&scaled.to_integer())
                .cloned()
                .unwrap_or_else(BigRational::zero),
        )
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exp, &BigRational)> + '_ {
        self.terms.iter().map(|(k, c)| (Exp::new(*k, self.denom), c))
    }

    /// Copy with the exponent denominator rescaled to a multiple of the
    /// current one; exact.
    pub fn rebase(&self, new_denom: i64) -> Self {
        assert!(new_denom > 0 && new_denom % self.denom == 0, "rebase must refine the lattice");
        let f = new_denom / self.denom;
        QSeries {
            denom: new_denom,
            terms: self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect(),
            order: self.order,
        }
    }

    /// Smallest equivalent exponent lattice; canonical form for output.
    pub fn normalized(&self) -> Self {
        let mut g = self.denom;
        for k in self.terms.keys() {
            g = g.gcd(k);
            if g == 1 {
                break;
            }
        }
        if g <= 1 {
            return self.clone();
        }
        QSeries {
            denom: self.denom / g,
            terms: self.terms.iter().map(|(k, c)| (k / g, c.clone())).collect(),
            order: self.order,
        }
    }

    /// Lowers the validity order, discarding terms at or above it.
    pub fn truncate(&self, new_order: Exp) -> Self {
        assert!(new_order <= self.order, "truncate cannot extend validity");
        let mut out = self.clone();
        out.order = new_order;
        let bound = new_order * exp_i64(self.denom);
        out.terms.retain(|k, _| Exp::new(*k, 1) < bound);
        out
    }

    pub fn neg(&self) -> Self {
        QSeries {
            denom: self.denom,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
            order: self.order,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QSeries::zero(self.order);
        }
        QSeries {
            denom: self.denom,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
            order: self.order,
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Multiplies by q^e.
    pub fn shift_exponent(&self, e: Exp) -> Self {
        let d = self.denom.lcm(e.denom());
        let shifted = self.rebase(d);
        let ke = e.numer() * (d / e.denom());
        QSeries {
            denom: d,
            terms: shifted.terms.into_iter().map(|(k, c)| (k + ke, c)).collect(),
            order: self.order + e,
        }
    }

    /// Substitutes q ↦ q^{1/2}, i.e. evaluates at half the modular argument.
    pub fn half_argument(&self) -> Self {
        QSeries {
            denom: self.denom.checked_mul(2).expect("denominator overflow"),
            terms: self.terms.clone(),
            order: self.order / exp_i64(2),
        }
    }

    pub fn add(&self, rhs: &QSeries) -> Self {
        let order = self.order.min(rhs.order);
        let d = self.denom.lcm(&rhs.denom);
        let mut terms = self.rebase(d).truncate(order).terms;
        for (k, c) in rhs.rebase(d).truncate(order).terms {
            let entry = terms.entry(k).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&k);
            }
        }
        QSeries { denom: d, terms, order }
    }

    pub fn sub(&self, rhs: &QSeries) -> Self {
        self.add(&rhs.neg())
    }

    /// Leading exponent used for validity propagation: a series with no
    /// terms is O(q^order), so its effective lead is the order itself.
    fn effective_lead(&self) -> Exp {
        self.leading().map(|(e, _)| e).unwrap_or(self.order)
    }

    /// Product.  Validity: a·b is exact below min(ord_a + lead_b,
    /// ord_b + lead_a), because the first unknown term of either factor
    /// enters the product shifted by the other factor's lead.
    pub fn mul(&self, rhs: &QSeries) -> Self {
        let order = (self.order + rhs.effective_lead()).min(rhs.order + self.effective_lead());
        let d = self.denom.lcm(&rhs.denom);
        let a = self.rebase(d);
        let b = rhs.rebase(d);
        let bound = order * exp_i64(d);
        let kmax = if bound.is_integer() { bound.to_integer() - 1 } else { bound.floor().to_integer() };
        let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k = ka + kb;
                if k > kmax {
                    break;
                }
                let entry = terms.entry(k).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        QSeries { denom: d, terms, order }
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return QSeries::one(self.order);
        }
        let mut acc = self.clone();
        for bit in (0..31 - n.leading_zeros()).rev() {
            acc = acc.mul(&acc);
            if n >> bit & 1 == 1 {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// Multiplicative inverse.  Writing self = c·q^e·(1 + u) with lead c·q^e,
    /// the reciprocal of 1 + u is solved term by term; validity drops to
    /// order − 2e (it grows when the lead is negative).
    pub fn invert(&self) -> Result<Self, QSeriesError> {
        let (lead_e, lead_c) = match self.leading() {
            Some((e, c)) => (e, c.clone()),
            None => return Err(QSeriesError::ZeroLeadingTerm),
        };
        let d = self.denom;
        let k0 = *(lead_e * exp_i64(d)).numer();
        // u, keyed on the same lattice relative to the lead: u_m for m > 0.
        let inv_lead = BigRational::one() / &lead_c;
        let u: BTreeMap<i64, BigRational> =
            self.terms.iter().filter(|(k, _)| **k > k0).map(|(k, c)| (k - k0, c * &inv_lead)).collect();

        // r·(1 + u) = 1, solved on the sub-semigroup generated by supp(u):
        // r_m = −Σ_{j ∈ supp(u), j ≤ m} u_j·r_{m−j}.  An agenda of candidate
        // exponents keeps the solve proportional to the nonzero support.
        let r_order = self.order - lead_e;
        let in_range = |m: i64| Exp::new(m, d) < r_order;
        let mut r: BTreeMap<i64, BigRational> = BTreeMap::new();
        r.insert(0, BigRational::one());
        let mut agenda: BTreeSet<i64> = u.keys().copied().filter(|m| in_range(*m)).collect();
        while let Some(m) = agenda.pop_first() {
            let mut conv = BigRational::zero();
            for (j, uj) in u.range(1..=m) {
                if let Some(rv) = r.get(&(m - j)) {
                    conv += uj * rv;
                }
            }
            if conv.is_zero() {
                continue;
            }
            for j in u.keys() {
                let next = m + j;
                if in_range(next) {
                    agenda.insert(next);
                }
            }
            r.insert(m, -conv);
        }

        let reciprocal = QSeries { denom: d, terms: r, order: r_order };
        Ok(reciprocal.scale(&inv_lead).shift_exponent(-lead_e))
    }

    pub fn div(&self, rhs: &QSeries) -> Result<Self, QSeriesError> {
        Ok(self.mul(&rhs.invert()?))
    }

    pub fn all_coeffs_integer(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// True when every exponent lies in offset + ℤ.
    pub fn supported_on_lattice(&self, offset: Exp) -> bool {
        self.terms().all(|(e, _)| (e - offset).is_integer())
    }
}

impl PartialEq for QSeries {
    /// Semantic equality: same validity, same terms as exponent/coefficient
    /// pairs (the internal lattice may differ).
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.terms.len() == other.terms.len()
            && self
                .terms()
                .zip(other.terms())
                .all(|((ea, ca), (eb, cb))| ea == eb && ca == cb)
    }
}

impl Eq for QSeries {}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "O(q^{})", self.order)?;
            return Ok(());
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*q^({e})")?;
        }
        write!(f, " + O(q^{})", self.order)
    }
}

/// ∏ over the given exponents of (1 + sign·q^e), truncated at `order`.
/// Exponents must be supplied in ascending order; the iterator is consumed
/// only while e < order.
fn product_over(order: Exp, sign: i64, exponents: impl Iterator<Item = Exp>) -> QSeries {
    let mut acc = QSeries::one(order);
    for e in exponents {
        if e >= order {
            break;
        }
        let factor = QSeries::one(order).add(&QSeries::monomial(
            e,
            BigRational::from_integer(BigInt::from(sign)),
            order,
        ));
        acc = acc.mul(&factor);
    }
    acc
}

/// The sign convention for the 1/16 character's exponent prefactor.
/// `Plus` is q^{+1/24} = q^{1/16 − 1/48}, forced by h − c/24 and by exponent
/// integrality of the character decomposition; `Minus` is the commonly
/// misprinted q^{−1/24}, kept selectable for comparison.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum SixteenthConvention {
    Plus,
    Minus,
}

/// Character of the Ising module L(1/2, h) to the given order.
pub fn ising_char(h: IsingLabel, order: i64) -> QSeries {
    ising_char_with(h, order, SixteenthConvention::Plus)
}

pub fn ising_char_with(h: IsingLabel, order: i64, convention: SixteenthConvention) -> QSeries {
    let [ch0, ch12, ch116] = ising_characters_with(order, convention);
    match h {
        IsingLabel::H0 => ch0,
        IsingLabel::H12 => ch12,
        IsingLabel::H116 => ch116,
    }
}

/// The three Ising characters (ch_0, ch_{1/2}, ch_{1/16}) to the given order:
///   ch_0 ± ch_{1/2} = q^{−1/48}·∏_{n≥0}(1 ± q^{n+1/2}),
///   ch_{1/16} = q^{1/24}·∏_{n≥1}(1 + q^n).
pub fn ising_characters(order: i64) -> [QSeries; 3] {
    ising_characters_with(order, SixteenthConvention::Plus)
}

pub fn ising_characters_with(order: i64, convention: SixteenthConvention) -> [QSeries; 3] {
    let ord = exp_i64(order);
    let half_odd = (0..).map(|n| Exp::new(2 * n + 1, 2));
    let plus = product_over(ord, 1, half_odd.clone());
    let minus = product_over(ord, -1, half_odd);
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let shift = Exp::new(-1, 48);
    let ch0 = plus.add(&minus).scale(&half).shift_exponent(shift);
    let ch12 = plus.sub(&minus).scale(&half).shift_exponent(shift);
    let sixteenth_shift = match convention {
        SixteenthConvention::Plus => Exp::new(1, 24),
        SixteenthConvention::Minus => Exp::new(-1, 24),
    };
    let ch116 = product_over(ord, 1, (1..).map(exp_i64)).shift_exponent(sixteenth_shift);
    [ch0, ch12, ch116]
}

/// E4 = 1 + 240·Σ_{n≥1} σ₃(n)·qⁿ.
pub fn eisenstein_e4(order: i64) -> QSeries {
    assert!(order >= 1);
    let mut sigma3 = alloc::vec![0i64; order as usize];
    for d in 1..order {
        let cube = d * d * d;
        let mut n = d;
        while n < order {
            sigma3[n as usize] += cube;
            n += d;
        }
    }
    let mut terms = BTreeMap::new();
    terms.insert(0, BigRational::one());
    for n in 1..order {
        terms.insert(n, BigRational::from_integer(BigInt::from(240 * sigma3[n as usize])));
    }
    QSeries { denom: 1, terms, order: exp_i64(order) }
}

/// Δ = q·∏_{n≥1}(1 − qⁿ)²⁴.
pub fn delta(order: i64) -> QSeries {
    product_over(exp_i64(order), -1, (1..).map(exp_i64))
        .pow(24)
        .shift_exponent(exp_i64(1))
}

/// j = E4³/Δ − 744 = q⁻¹ + 0 + 196884q + … .
pub fn j_series(order: i64) -> QSeries {
    let e4 = eisenstein_e4(order + 2);
    let j = e4.pow(3).div(&delta(order + 2)).expect("delta has a lead");
    j.add(&QSeries::constant(-744, j.order())).truncate(exp_i64(order))
}

/// The 2A McKay-Thompson series T_2A = f + 4096/f + 24, where
/// f = q⁻¹·∏_{n≥1}(1 − q^{2n−1})²⁴ is the eta quotient (η(τ)/η(2τ))²⁴.
pub fn t2a_series(order: i64) -> QSeries {
    let ord = exp_i64(order + 2);
    let f = product_over(ord, -1, (0..).map(|n| exp_i64(2 * n + 1)))
        .pow(24)
        .shift_exponent(exp_i64(-1));
    let inv = f.invert().expect("f has a lead").scale_i64(4096);
    f.add(&inv)
        .add(&QSeries::constant(24, ord))
        .truncate(exp_i64(order))
}

/// Character of the coset module U_{D+γ}: Σ_{β∈D+γ} ∏ᵢ ch_{L(1/2, βᵢ/2)}
/// = Σ_w N_w·ch₀^{n−w}·ch_{1/2}^w over the coset weight distribution.
pub fn code_voa_char(d: &crate::codes::LinearCode, gamma: &crate::codes::BitWord, order: i64) -> QSeries {
    assert_eq!(d.len(), gamma.len() as usize);
    assert!(d.dim() <= 26, "coset weight distribution needs dim ≤ 26");
    let n = d.len();
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for w in d.iter_words() {
        *counts.entry((w ^ *gamma).weight()).or_insert(0) += 1;
    }
    let [ch0, ch12, _] = ising_characters(order);
    let ord = exp_i64(order);
    let mut acc = QSeries::zero(ord);
    for (w, count) in counts {
        let term = if w == 0 {
            ch0.pow(n as u32)
        } else if w == n as u32 {
            ch12.pow(w)
        } else {
            ch0.pow((n as u32) - w).mul(&ch12.pow(w))
        };
        acc = acc.add(&term.scale(&BigRational::from_integer(BigInt::from(count))));
    }
    acc
}

/// The characters of the three irreducible modules of the baby-monster VOA,
/// with their leading exponents pinned to the central charge 47/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTriple {
    pub b0: QSeries,
    pub b1: QSeries,
    pub bt: QSeries,
}

impl CharacterTriple {
    /// Validates the exactness contract: leading exponents −47/48,
    /// −47/48 + 3/2, −47/48 + 31/16; vacuum coefficient 1; all coefficients
    /// nonnegative integers; exponents on the right lattices.
    pub fn new(b0: QSeries, b1: QSeries, bt: QSeries) -> Result<Self, QSeriesError> {
        let expected = [
            ("b0", &b0, Exp::new(-47, 48)),
            ("b1", &b1, Exp::new(-47, 48) + Exp::new(3, 2)),
            ("bT", &bt, Exp::new(-47, 48) + Exp::new(31, 16)),
        ];
        for (name, series, lead) in expected {
            let (e, _) = series.leading().ok_or_else(|| {
                QSeriesError::DerivationInconsistency(alloc::format!("{name} is identically zero"))
            })?;
            if e != lead {
                return Err(QSeriesError::DerivationInconsistency(alloc::format!(
                    "{name} leads at q^({e}), expected q^({lead})"
                )));
            }
            if !series.supported_on_lattice(lead) {
                return Err(QSeriesError::DerivationInconsistency(alloc::format!(
                    "{name} has exponents off the {lead} + Z lattice"
                )));
            }
            if !series.all_coeffs_integer() {
                return Err(QSeriesError::DerivationInconsistency(alloc::format!(
                    "{name} has a non-integer coefficient"
                )));
            }
            if !series.all_coeffs_nonnegative() {
                return Err(QSeriesError::DerivationInconsistency(alloc::format!(
                    "{name} has a negative coefficient"
                )));
            }
        }
        if !b0.leading().map(|(_, c)| c.is_one()).unwrap_or(false) {
            return Err(QSeriesError::DerivationInconsistency(String::from(
                "b0 vacuum coefficient is not 1",
            )));
        }
        Ok(CharacterTriple { b0, b1, bt })
    }

    pub fn as_array(&self) -> [&QSeries; 3] {
        [&self.b0, &self.b1, &self.bt]
    }
}

/// Solves for the baby-monster character triple at validity order K.
///
/// The three equations, with (ch₀, ch_{1/2}, ch_{1/16}) the Ising characters:
///   (1)  j            = ch₀·b0 + ch_{1/2}·b1 + ch_{1/16}·bT
///   (2)  T_2A         = ch₀·b0 + ch_{1/2}·b1 − ch_{1/16}·bT
///   (3)  T_2A(τ/2)    = ch_{1/2}·b0 + ch₀·b1 + ch_{1/16}·bT
/// (1) is the Ising-frame decomposition of the moonshine character, (2) the
/// τ-involution graded trace, and (3) the involution-twisted sector, whose
/// character equals T_2A at half argument by Fricke invariance
/// T_2A(−1/(2τ)) = T_2A(τ).
pub fn solve_baby_characters(order: i64) -> Result<CharacterTriple, QSeriesError> {
    // Equation (3) halves the argument, so the integral inputs must reach
    // twice the target order for the outputs to be valid through it.
    let wide = 2 * order + 4;
    let chars = ising_characters(wide);
    solve_baby_characters_from(&j_series(wide), &t2a_series(wide), &chars, order)
}

/// The solver core, on explicit inputs.  Exposed so a deliberately corrupted
/// input can be shown to trip the exactness assertions.
pub fn solve_baby_characters_from(
    j: &QSeries,
    t2a: &QSeries,
    chars: &[QSeries; 3],
    order: i64,
) -> Result<CharacterTriple, QSeriesError> {
    let [ch0, ch12, ch116] = chars;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));

    // bT = (j − T_2A) / (2·ch_{1/16}), from (1) − (2).
    let bt = j.sub(t2a).div(&ch116.scale_i64(2))?;

    // A = ch₀·b0 + ch_{1/2}·b1, from (1) + (2).
    let a = j.add(t2a).scale(&half);
    // B = ch_{1/2}·b0 + ch₀·b1, from (3).
    let b = t2a.half_argument().sub(&ch116.mul(&bt));

    // Invert the 2×2 system; the determinant ch₀² − ch_{1/2}² has leading
    // term q^{−1/24}.
    let det = ch0.mul(ch0).sub(&ch12.mul(ch12));
    let b0 = ch0.mul(&a).sub(&ch12.mul(&b)).div(&det)?;
    let b1 = ch0.mul(&b).sub(&ch12.mul(&a)).div(&det)?;

    let ord = exp_i64(order);
    let triple = CharacterTriple::new(
        b0.truncate(ord).normalized(),
        b1.truncate(ord).normalized(),
        bt.truncate(ord).normalized(),
    )?;

    // Residuals of all three defining equations must vanish identically
    // within the surviving validity.
    let residuals = [
        ("equation (1)", decomposition_residual(j, chars, &triple)),
        (
            "equation (2)",
            t2a.sub(&ch0.mul(&triple.b0))
                .sub(&ch12.mul(&triple.b1))
                .add(&ch116.mul(&triple.bt)),
        ),
        (
            "equation (3)",
            t2a.half_argument()
                .sub(&ch12.mul(&triple.b0))
                .sub(&ch0.mul(&triple.b1))
                .sub(&ch116.mul(&triple.bt)),
        ),
    ];
    for (name, r) in residuals {
        if !r.is_zero_series() {
            return Err(QSeriesError::DerivationInconsistency(alloc::format!(
                "{name} residual is nonzero from q^({})",
                r.leading().map(|(e, _)| e).unwrap()
            )));
        }
    }
    Ok(triple)
}

/// j − (ch₀·b0 + ch_{1/2}·b1 + ch_{1/16}·bT); identically zero within
/// validity for a correct triple.
pub fn decomposition_residual(j: &QSeries, chars: &[QSeries; 3], triple: &CharacterTriple) -> QSeries {
    let [ch0, ch12, ch116] = chars;
    j.sub(&ch0.mul(&triple.b0))
        .sub(&ch12.mul(&triple.b1))
        .sub(&ch116.mul(&triple.bt))
}

/// The shared modular S-matrix of the Ising and baby-monster triples:
/// [[1/2, 1/2, 1/√2], [1/2, 1/2, −1/√2], [1/√2, −1/√2, 0]], exact in ℚ(√2).
#[derive(Clone, Debug, PartialEq)]
pub struct SMatrix3 {
    entries: [[Sqrt2; 3]; 3],
}

impl Default for SMatrix3 {
    fn default() -> Self {
        Self::new()
    }
}

impl SMatrix3 {
    pub fn new() -> Self {
        let h = Sqrt2::from_frac(1, 2);
        let r = Sqrt2::inv_sqrt2();
        let z = Sqrt2::from_int(0);
        SMatrix3 {
            entries: [
                [h.clone(), h.clone(), r.clone()],
                [h.clone(), h, -r.clone()],
                [r.clone(), -r, z],
            ],
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &Sqrt2 {
        &self.entries[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// S² = 1, exactly.
    pub fn squares_to_identity(&self) -> bool {
        (0..3).all(|i| {
            (0..3).all(|j| {
                let mut acc = Sqrt2::from_int(0);
                for k in 0..3 {
                    acc = acc + self.entries[i][k].clone() * self.entries[k][j].clone();
                }
                acc == Sqrt2::from_int(if i == j { 1 } else { 0 })
            })
        })
    }

    /// Fusion multiplicities by the Verlinde formula,
    /// N_{ij}^k = Σ_m S_{im}·S_{jm}·S_{km}/S_{0m}, computed exactly in
    /// ℚ(√2); every entry must come out a nonnegative integer.
    pub fn verlinde(&self) -> [[[u64; 3]; 3]; 3] {
        let mut n = [[[0u64; 3]; 3]; 3];
        for (i, row) in self.entries.iter().enumerate() {
            for j in 0..3 {
                for k in 0..3 {
                    let mut acc = Sqrt2::from_int(0);
                    for m in 0..3 {
                        let prod = row[m].clone() * self.entries[j][m].clone()
                            * self.entries[k][m].clone()
                            * self.entries[0][m].clone().inv();
                        acc = acc + prod;
                    }
                    let value = acc.as_rational().expect("verlinde numbers are rational");
                    assert!(value.is_integer() && !value.is_negative(), "verlinde numbers are in N");
                    n[i][j][k] = value.to_integer().to_u64().expect("small multiplicity");
                }
            }
        }
        n
    }
}

/// The Ising fusion multiplicities of Eq. (1) as the same 3-index array,
/// labels ordered (0, 1/2, 1/16).
pub fn ising_multiplicities() -> [[[u64; 3]; 3]; 3] {
    use IsingLabel::*;
    let labels = [H0, H12, H116];
    let mut n = [[[0u64; 3]; 3]; 3];
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate() {
            let prod: FusionElement<IsingLabel> = ising_fuse(*a, *b);
            for (k, c) in labels.iter().enumerate() {
                n[i][j][k] = prod.multiplicity(c);
            }
        }
    }
    n
}

/// Numeric value of a truncated series at τ (upper half-plane), plus an
/// explicit bound on the discarded tail.
#[derive(Clone, Copy, Debug)]
pub struct EvalResult {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// Evaluates the series at q = e^{2πiτ}.  The tail bound extrapolates the
/// observed per-exponent coefficient growth over the last computed terms,
/// doubled for safety, and sums the resulting geometric majorant from the
/// validity order on; infinite when the majorant diverges.
pub fn numeric_eval(s: &QSeries, tau: Complex64) -> EvalResult {
    let two_pi_i = Complex64::new(0.0, 2.0 * core::f64::consts::PI);
    let mut value = Complex64::new(0.0, 0.0);
    let qabs = (-2.0 * core::f64::consts::PI * tau.im).exp();
    let mut magnitudes: Vec<(f64, f64)> = Vec::with_capacity(s.term_count());
    for (e, c) in s.terms() {
        let ef = *e.numer() as f64 / *e.denom() as f64;
        let cf = c.to_f64().unwrap_or(f64::INFINITY);
        value += Complex64::from(cf) * (two_pi_i * tau * Complex64::from(ef)).exp();
        magnitudes.push((ef, cf.abs()));
    }

    // Per-unit-exponent coefficient growth near the truncation point; the
    // early series is irrelevant to the tail.
    let window = magnitudes.len().saturating_sub(16);
    let mut growth: f64 = 1.0;
    for pair in magnitudes[window..].windows(2) {
        let (pe, pc) = pair[0];
        let (ef, cf) = pair[1];
        if pc > 0.0 && ef > pe {
            growth = growth.max((cf / pc).powf(1.0 / (ef - pe)));
        }
    }

    let ord = *s.order().numer() as f64 / *s.order().denom() as f64;
    let tail_bound = match magnitudes.last().copied() {
        None => 0.0,
        Some((le, lc)) => {
            let g = 2.0 * growth;
            let step_ratio = (g * qabs).powf(1.0 / s.denom() as f64);
            if step_ratio >= 1.0 {
                f64::INFINITY
            } else {
                // First conceivable tail term at the validity order, then a
                // geometric sum over the exponent lattice.
                let first = lc * g.powf(ord - le) * qabs.powf(ord);
                first / (1.0 - step_ratio)
            }
        }
    };
    EvalResult { value, tail_bound }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The truncation tail bound is too large to decide at this tolerance.
    Inconclusive,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Inconclusive => "inconclusive",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct STransformRow {
    pub tau: Complex64,
    pub row: usize,
    pub residual: f64,
    pub tail_bound: f64,
    pub status: CheckStatus,
}

#[derive(Clone, Debug)]
pub struct STransformReport {
    pub tol: f64,
    pub rows: Vec<STransformRow>,
}

impl STransformReport {
    pub fn status(&self) -> CheckStatus {
        if self.rows.iter().any(|r| r.status == CheckStatus::Fail) {
            CheckStatus::Fail
        } else if self.rows.iter().any(|r| r.status == CheckStatus::Inconclusive) {
            CheckStatus::Inconclusive
        } else {
            CheckStatus::Pass
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn max_tail_bound(&self) -> f64 {
        self.rows.iter().map(|r| r.tail_bound).fold(0.0, f64::max)
    }
}

/// Verifies ch_i(−1/τ) = Σ_j S_{ij}·ch_j(τ) numerically for every sample τ
/// and every row.  A row passes when its residual is below tol and the
/// accumulated tail bound below tol/10; a too-large tail is inconclusive
/// rather than a failure.
pub fn verify_s_transform(
    triple: [&QSeries; 3],
    s: &SMatrix3,
    taus: &[Complex64],
    tol: f64,
) -> STransformReport {
    let mut rows = Vec::with_capacity(taus.len() * 3);
    for &tau in taus {
        assert!(tau.im > 0.0, "sample must lie in the upper half-plane");
        let s_tau = -tau.finv();
        let direct: Vec<EvalResult> = triple.iter().map(|c| numeric_eval(c, s_tau)).collect();
        let at_tau: Vec<EvalResult> = triple.iter().map(|c| numeric_eval(c, tau)).collect();
        for i in 0..3 {
            let mut combo = Complex64::new(0.0, 0.0);
            let mut tail = direct[i].tail_bound;
            for j in 0..3 {
                let sij = s.entry(i, j).to_f64();
                combo += Complex64::from(sij) * at_tau[j].value;
                tail += sij.abs() * at_tau[j].tail_bound;
            }
            let residual = (direct[i].value - combo).norm();
            let status = if !(tail <= tol / 10.0) {
                CheckStatus::Inconclusive
            } else if residual < tol {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            rows.push(STransformRow { tau, row: i, residual, tail_bound: tail, status });
        }
    }
    STransformReport { tol, rows }
}
