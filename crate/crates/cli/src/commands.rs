//! Subcommand implementations.  Each builds a typed JSON report, prints it in
//! the requested format, and returns the aggregate check status for the exit
//! code.

use framed_voa::codes::named::{d_flat, d_natural, hamming_h8, reed_muller_4_1, s_flat, s_natural};
use framed_voa::codes::{CodePair, LinearCode};
use framed_voa::fock::{
    apply_mode, check_virasoro, enumerate_states, graded_dimensions, ramond_split,
    twisted_vectors, virasoro_mode, Sector, StateVector,
};
use framed_voa::framed::{build_pair_descriptor, ring_isomorphism_to_ising, vb_fusion_ring};
use framed_voa::fusion::{
    ising_fuse, simple_current_witness, FusionElement, FusionTable, HammingRing, IsingLabel,
};
use framed_voa::qseries::{
    decomposition_residual, ising_characters, ising_multiplicities, j_series,
    solve_baby_characters, t2a_series, verify_s_transform, CheckStatus, QSeries, SMatrix3,
};
use framed_voa::sqrt2::Sqrt2;
use framed_voa::{BigRational, Exp};
use serde::Serialize;

use crate::config::{CliError, Format, Rng, RunConfig};
use crate::output::{
    code_json, code_text, config_json, display_label, element_str, fusion_json, fusion_lines,
    s_transform_json, s_transform_text, series_head, series_json, status_str, CodeJson,
    ConfigJson, FusionTableJson, STransformJson, SeriesJson,
};
use crate::pairs::PairSpec;

fn combine(a: CheckStatus, b: CheckStatus) -> CheckStatus {
    match (a, b) {
        (CheckStatus::Fail, _) | (_, CheckStatus::Fail) => CheckStatus::Fail,
        (CheckStatus::Inconclusive, _) | (_, CheckStatus::Inconclusive) => {
            CheckStatus::Inconclusive
        }
        _ => CheckStatus::Pass,
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[derive(Serialize)]
pub struct CheckJson {
    pub name: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Accumulates named pass/fail items and the worst status seen.
struct Checks {
    items: Vec<CheckJson>,
    worst: CheckStatus,
}

impl Checks {
    fn new() -> Self {
        Checks { items: Vec::new(), worst: CheckStatus::Pass }
    }

    fn push(&mut self, name: impl Into<String>, ok: bool, detail: Option<String>) {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        self.push_status(name, status, detail);
    }

    fn push_status(&mut self, name: impl Into<String>, status: CheckStatus, detail: Option<String>) {
        self.worst = combine(self.worst, status);
        self.items.push(CheckJson {
            name: name.into(),
            status: status_str(status).to_string(),
            detail,
        });
    }

    fn text(&self) -> Vec<String> {
        self.items
            .iter()
            .map(|c| match &c.detail {
                Some(d) => format!("{}: {} ({d})", c.name, c.status),
                None => format!("{}: {}", c.name, c.status),
            })
            .collect()
    }
}

/// Writes one line to stdout; a broken pipe (e.g. piping into `head`) ends
/// the process quietly instead of panicking.
fn write_line(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{s}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("stdout write failed: {e}");
    }
}

fn emit<T: Serialize>(cfg: &RunConfig, report: &T, text: Vec<String>) {
    match cfg.format {
        Format::Json => {
            write_line(&serde_json::to_string_pretty(report).expect("report serializes"))
        }
        Format::Text => {
            for line in text {
                write_line(&line);
            }
        }
    }
}

// ---------------------------------------------------------------- codes ----

#[derive(Serialize)]
struct CodesReport {
    command: &'static str,
    config: ConfigJson,
    codes: Vec<CodeJson>,
    status: String,
}

fn builtin_codes() -> Vec<(String, LinearCode)> {
    vec![
        ("H8".to_string(), hamming_h8()),
        ("RM(1,4)".to_string(), reed_muller_4_1()),
        ("S♮".to_string(), s_natural()),
        ("D♮".to_string(), d_natural()),
        ("D♭0".to_string(), d_flat().0),
        ("S♭".to_string(), s_flat()),
    ]
}

fn enumerator_poly(we: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, n) in we.iter().enumerate() {
        match (i, *n) {
            (_, 0) => {}
            (0, n) => parts.push(n.to_string()),
            (i, 1) => parts.push(format!("z^{i}")),
            (i, n) => parts.push(format!("{n}z^{i}")),
        }
    }
    parts.join(" + ")
}

pub fn run_codes(cfg: &RunConfig, pair: Option<&str>) -> Result<CheckStatus, CliError> {
    let codes = match pair {
        None => builtin_codes(),
        Some(spec) => {
            let (name, pair) = spec.parse::<PairSpec>()?.resolve()?;
            vec![(format!("D[{name}]"), pair.d), (format!("S[{name}]"), pair.s)]
        }
    };
    let jsons: Vec<CodeJson> = codes.iter().map(|(n, c)| code_json(n, c)).collect();

    let mut text = Vec::new();
    for c in &jsons {
        text.push(code_text(c));
        if let Some(we) = &c.weight_enumerator {
            text.push(format!("  weight enumerator {}", enumerator_poly(we)));
        }
        if c.dim <= 8 {
            for b in &c.basis {
                text.push(format!("  {b}"));
            }
        }
    }
    text.push("status: pass".to_string());

    let report = CodesReport {
        command: "codes",
        config: config_json(cfg),
        codes: jsons,
        status: status_str(CheckStatus::Pass).to_string(),
    };
    emit(cfg, &report, text);
    Ok(CheckStatus::Pass)
}

// ----------------------------------------------------------- hypothesis ----

#[derive(Serialize)]
struct CoverBlockJson {
    positions: Vec<usize>,
    basis: Vec<String>,
}

#[derive(Serialize)]
struct CoverJson {
    alpha: String,
    weight: u32,
    status: String,
    blocks: Vec<CoverBlockJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
}

#[derive(Serialize)]
struct I3Json {
    pass: bool,
    sixteenth_mismatches: Vec<String>,
    nonintegral: Vec<String>,
    pairs_checked: usize,
    min_multiplicity: Option<u64>,
}

#[derive(Serialize)]
struct PairHypothesisJson {
    name: String,
    d: CodeJson,
    s: CodeJson,
    containment: bool,
    covers_found: usize,
    covers_total: usize,
    covers: Vec<CoverJson>,
    i3: I3Json,
    status: String,
}

#[derive(Serialize)]
struct HypothesisReport {
    command: &'static str,
    config: ConfigJson,
    pairs: Vec<PairHypothesisJson>,
    status: String,
}

fn hypothesis_pair(name: String, pair: CodePair) -> (PairHypothesisJson, Vec<String>, CheckStatus) {
    let desc = build_pair_descriptor(pair);
    let c1 = desc.condition1();

    let covers: Vec<CoverJson> = c1
        .covers
        .iter()
        .map(|(alpha, result)| match result {
            Ok(cover) => CoverJson {
                alpha: alpha.to_string(),
                weight: alpha.weight(),
                status: status_str(CheckStatus::Pass).to_string(),
                blocks: cover
                    .blocks
                    .iter()
                    .map(|b| CoverBlockJson {
                        positions: b.positions.clone(),
                        basis: b.basis.iter().map(|w| w.to_string()).collect(),
                    })
                    .collect(),
                failure: None,
            },
            Err(f) => CoverJson {
                alpha: alpha.to_string(),
                weight: alpha.weight(),
                status: status_str(CheckStatus::Fail).to_string(),
                blocks: Vec::new(),
                failure: Some(f.to_string()),
            },
        })
        .collect();

    let i3 = desc.hypothesis_report();
    let i3_json = I3Json {
        pass: i3.pass(),
        sixteenth_mismatches: i3.sixteenth_mismatches.iter().map(|w| w.to_string()).collect(),
        nonintegral: i3.nonintegral.iter().map(|w| w.to_string()).collect(),
        pairs_checked: i3.fusion_multiplicities.len(),
        min_multiplicity: i3.min_multiplicity(),
    };

    let status = if c1.pass() && i3.pass() { CheckStatus::Pass } else { CheckStatus::Fail };

    let mut text = vec![format!(
        "pair {name}: D = [{}, {}], S = [{}, {}]",
        desc.pair().d.len(),
        desc.pair().d.dim(),
        desc.pair().s.len(),
        desc.pair().s.dim()
    )];
    text.push(format!("  D ⊆ S⊥: {}", if c1.containment { "yes" } else { "NO" }));
    text.push(format!("  Hamming covers: {}/{}", c1.covers_found(), c1.covers.len()));
    for c in &covers {
        let blocks = c
            .blocks
            .iter()
            .map(|b| {
                let pos: Vec<String> = b.positions.iter().map(|p| p.to_string()).collect();
                format!("{{{}}}", pos.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ");
        match &c.failure {
            None if c.blocks.is_empty() => {
                text.push(format!("  α {} (wt {:>2}): empty cover", c.alpha, c.weight))
            }
            None => text.push(format!("  α {} (wt {:>2}): blocks {}", c.alpha, c.weight, blocks)),
            Some(f) => text.push(format!("  α {} (wt {:>2}): FAIL, {}", c.alpha, c.weight, f)),
        }
    }
    text.push(format!(
        "  I(3): 1/16-words {}, top-weight classes {}, min multiplicity {} over {} pairs",
        if i3_json.sixteenth_mismatches.is_empty() { "match" } else { "MISMATCH" },
        if i3_json.nonintegral.is_empty() { "integral" } else { "NONINTEGRAL" },
        i3_json.min_multiplicity.map_or("-".to_string(), |m| m.to_string()),
        i3_json.pairs_checked
    ));

    let d_json = code_json("D", &desc.pair().d);
    let s_json = code_json("S", &desc.pair().s);
    (
        PairHypothesisJson {
            name,
            d: d_json,
            s: s_json,
            containment: c1.containment,
            covers_found: c1.covers_found(),
            covers_total: c1.covers.len(),
            covers,
            i3: i3_json,
            status: status_str(status).to_string(),
        },
        text,
        status,
    )
}

pub fn run_hypothesis(cfg: &RunConfig, pair: Option<&str>) -> Result<CheckStatus, CliError> {
    let specs: Vec<PairSpec> = match pair {
        None => vec![PairSpec::Moonshine, PairSpec::Baby],
        Some(s) => vec![s.parse()?],
    };
    let mut pairs = Vec::new();
    let mut text = Vec::new();
    let mut status = CheckStatus::Pass;
    for spec in specs {
        let (name, pair) = spec.resolve()?;
        if pair.s.dim() > 10 {
            return Err(crate::config::usage(format!(
                "S has dimension {}; the label family is only enumerable for dim ≤ 10",
                pair.s.dim()
            )));
        }
        // A full-support α with odd 8-block parity leaves no coordinate for
        // its parity representative: no integral label family exists.
        if let Some(alpha) = pair
            .s
            .iter_words()
            .find(|a| a.weight() % 16 == 8 && a.weight() as usize == a.len())
        {
            return Err(CliError::Check(format!(
                "α = {alpha} has odd 8-block parity and full support; no label family satisfies the integrality condition"
            )));
        }
        let (json, lines, pair_status) = hypothesis_pair(name, pair);
        pairs.push(json);
        text.extend(lines);
        status = combine(status, pair_status);
    }
    text.push(format!("status: {}", status_str(status)));
    let report = HypothesisReport {
        command: "hypothesis",
        config: config_json(cfg),
        pairs,
        status: status_str(status).to_string(),
    };
    emit(cfg, &report, text);
    Ok(status)
}

// --------------------------------------------------------------- fusion ----

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum RingKind {
    Ising,
    Hamming,
    Vb,
}

#[derive(Serialize)]
struct SimpleCurrentJson {
    label: String,
    inverse: Option<String>,
}

#[derive(Serialize)]
struct RingChecksJson {
    closed: bool,
    unit: bool,
    commutative: bool,
    associative: bool,
}

#[derive(Serialize)]
struct CertificateEntryJson {
    l: String,
    r: String,
    image: String,
}

#[derive(Serialize)]
struct FusionReport {
    command: &'static str,
    config: ConfigJson,
    ring: &'static str,
    table: FusionTableJson,
    simple_currents: Vec<SimpleCurrentJson>,
    checks: RingChecksJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    ising_isomorphism: Option<Vec<CertificateEntryJson>>,
    status: String,
}

pub fn ising_table() -> FusionTable<IsingLabel> {
    use IsingLabel::*;
    FusionTable::close(H0, &[H0, H12, H116], |a, b| ising_fuse(*a, *b), 8)
        .expect("the Ising ring closes on three labels")
}

fn ring_report<L: Ord + Clone>(
    cfg: &RunConfig,
    ring: &'static str,
    table: &FusionTable<L>,
    fmt: impl Fn(&L) -> String + Copy,
) -> (FusionReport, Vec<String>, CheckStatus) {
    let checks = RingChecksJson {
        closed: table.verify_closed().is_ok(),
        unit: table.verify_unit(),
        commutative: table.is_commutative(),
        associative: table.check_associative().is_ok(),
    };
    let ok = checks.closed && checks.unit && checks.commutative && checks.associative;
    let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };

    let simple_currents: Vec<SimpleCurrentJson> = table
        .labels()
        .iter()
        .map(|l| SimpleCurrentJson {
            label: fmt(l),
            inverse: simple_current_witness(table, l).map(|w| fmt(&w)),
        })
        .collect();

    let mut text = vec![format!("ring {ring}: {} labels, unit {}", table.labels().len(), {
        fmt(table.unit())
    })];
    text.extend(fusion_lines(table, fmt));
    text.push(format!(
        "closed: {}  unit: {}  commutative: {}  associative: {}",
        checks.closed, checks.unit, checks.commutative, checks.associative
    ));
    let currents: Vec<String> = simple_currents
        .iter()
        .filter_map(|s| s.inverse.as_ref().map(|inv| format!("{} (inverse {})", s.label, inv)))
        .collect();
    text.push(format!("simple currents: {}", currents.join(", ")));

    let report = FusionReport {
        command: "fusion",
        config: config_json(cfg),
        ring,
        table: fusion_json(table, fmt),
        simple_currents,
        checks,
        ising_isomorphism: None,
        status: status_str(status).to_string(),
    };
    (report, text, status)
}

pub fn run_fusion(cfg: &RunConfig, kind: RingKind) -> Result<CheckStatus, CliError> {
    let (mut report, mut text, mut status) = match kind {
        RingKind::Ising => {
            let table = ising_table();
            ring_report(cfg, "ising", &table, |l| format!("h({l})"))
        }
        RingKind::Hamming => {
            let table = HammingRing::new(hamming_h8()).table();
            ring_report(cfg, "hamming", &table, display_label)
        }
        RingKind::Vb => {
            let table = vb_fusion_ring();
            ring_report(cfg, "vb", &table, display_label)
        }
    };

    if kind == RingKind::Vb {
        match ring_isomorphism_to_ising(&vb_fusion_ring()) {
            Ok(cert) => {
                report.ising_isomorphism = Some(
                    cert.comparisons
                        .iter()
                        .map(|((a, b), image)| CertificateEntryJson {
                            l: a.to_string(),
                            r: b.to_string(),
                            image: element_str(image, |l| format!("h({l})")),
                        })
                        .collect(),
                );
                text.push(format!(
                    "isomorphism to the Ising ring: VB0 ↦ h(0), VB1 ↦ h(1/2), VBT ↦ h(1/16); all {} products agree",
                    cert.comparisons.len()
                ));
            }
            Err(e) => {
                status = CheckStatus::Fail;
                report.status = status_str(status).to_string();
                text.push(format!("isomorphism to the Ising ring: FAIL ({e})"));
            }
        }
    }

    text.push(format!("status: {}", status_str(status)));
    emit(cfg, &report, text);
    Ok(status)
}

// ---------------------------------------------------------------- chars ----

#[derive(Serialize)]
struct STransformPairJson {
    ising: STransformJson,
    baby: STransformJson,
}

#[derive(Serialize)]
struct CharsReport {
    command: &'static str,
    config: ConfigJson,
    series: Vec<SeriesJson>,
    checks: Vec<CheckJson>,
    s_transform: STransformPairJson,
    status: String,
}

pub fn run_chars(cfg: &RunConfig) -> Result<CheckStatus, CliError> {
    let order = cfg.order;
    let chars = ising_characters(order);
    let j = j_series(order);
    let t2a = t2a_series(order);
    let triple = solve_baby_characters(order)
        .map_err(|e| CliError::Check(format!("character solve failed: {e}")))?;
    let residual = decomposition_residual(&j, &chars, &triple);

    let mut checks = Checks::new();
    let j_coeff = j.coeff(Exp::new(1, 1));
    checks.push("j q-coefficient equals 196884", j_coeff == rat(196884), Some(j_coeff.to_string()));
    let t_coeff = t2a.coeff(Exp::new(1, 1));
    checks.push("T2A q-coefficient equals 4372", t_coeff == rat(4372), Some(t_coeff.to_string()));
    checks.push(
        "j = ch(0)·b0 + ch(1/2)·b1 + ch(1/16)·bT to the computed order",
        residual.is_zero_series(),
        None,
    );
    let b0_head = triple.b0.coeff(Exp::new(-47, 48)) == rat(1)
        && triple.b0.coeff(Exp::new(1, 48)) == rat(0)
        && triple.b0.coeff(Exp::new(49, 48)) == rat(96256);
    checks.push("b0 = q^(-47/48)·(1 + 0·q + 96256·q^2 + …)", b0_head, None);
    let b1_lead = triple.b1.leading().map(|(e, c)| (e, c.clone()));
    checks.push(
        "b1 leading term 4371·q^(25/48)",
        b1_lead == Some((Exp::new(25, 48), rat(4371))),
        b1_lead.map(|(e, c)| format!("{c}·q^({e})")),
    );
    let bt_lead = triple.bt.leading().map(|(e, c)| (e, c.clone()));
    checks.push(
        "bT leading term 96256·q^(23/24)",
        bt_lead == Some((Exp::new(23, 24), rat(96256))),
        bt_lead.map(|(e, c)| format!("{c}·q^({e})")),
    );
    checks.push(
        "T2A cross-check 4372 = 1 + 4371",
        t_coeff == rat(1) + triple.b1.coeff(Exp::new(25, 48)),
        None,
    );
    let wholesome = triple
        .as_array()
        .iter()
        .all(|s| s.all_coeffs_integer() && s.all_coeffs_nonnegative());
    checks.push("triple coefficients are nonnegative integers", wholesome, None);

    let s = SMatrix3::new();
    let ising_rep = verify_s_transform([&chars[0], &chars[1], &chars[2]], &s, &cfg.taus, cfg.tol);
    let baby_rep = verify_s_transform(triple.as_array(), &s, &cfg.taus, cfg.tol);
    let status = combine(checks.worst, combine(ising_rep.status(), baby_rep.status()));

    let named: Vec<(&str, &QSeries)> = vec![
        ("ch(0)", &chars[0]),
        ("ch(1/2)", &chars[1]),
        ("ch(1/16)", &chars[2]),
        ("j", &j),
        ("T2A", &t2a),
        ("b0", &triple.b0),
        ("b1", &triple.b1),
        ("bT", &triple.bt),
    ];
    let mut text = vec![format!("characters at order {order}:")];
    for (name, s) in &named {
        text.push(format!("  {name:<8} = {}", series_head(s, 4)));
    }
    text.extend(checks.text());
    text.extend(s_transform_text("ising", &ising_rep));
    text.extend(s_transform_text("baby", &baby_rep));
    text.push(format!("status: {}", status_str(status)));

    let report = CharsReport {
        command: "chars",
        config: config_json(cfg),
        series: named.iter().map(|(n, s)| series_json(n, s)).collect(),
        checks: checks.items,
        s_transform: STransformPairJson {
            ising: s_transform_json(&ising_rep),
            baby: s_transform_json(&baby_rep),
        },
        status: status_str(status).to_string(),
    };
    emit(cfg, &report, text);
    Ok(status)
}

// ----------------------------------------------------------------- fock ----

#[derive(Serialize)]
struct WeightDimJson {
    w: String,
    dim: usize,
}

#[derive(Serialize)]
struct FockCheckJson {
    name: String,
    status: String,
    residual: f64,
}

#[derive(Serialize)]
struct FockSectorJson {
    sector: &'static str,
    weights: Vec<WeightDimJson>,
}

#[derive(Serialize)]
struct FockReport {
    command: &'static str,
    config: ConfigJson,
    sectors: Vec<FockSectorJson>,
    checks: Vec<FockCheckJson>,
    status: String,
}

struct FockChecks {
    items: Vec<FockCheckJson>,
    worst: CheckStatus,
}

impl FockChecks {
    fn new() -> Self {
        FockChecks { items: Vec::new(), worst: CheckStatus::Pass }
    }

    fn push(&mut self, name: impl Into<String>, residual: f64) {
        let status = if residual == 0.0 { CheckStatus::Pass } else { CheckStatus::Fail };
        self.worst = combine(self.worst, status);
        self.items.push(FockCheckJson {
            name: name.into(),
            status: status_str(status).to_string(),
            residual,
        });
    }

    fn text(&self) -> Vec<String> {
        self.items
            .iter()
            .map(|c| format!("{}: {} (residual {})", c.name, c.status, c.residual))
            .collect()
    }
}

/// Count of (weight, dim) mismatches between the oracle dimensions and a
/// character's coefficients.
fn dim_mismatches(dims: &[(Exp, usize)], series: &QSeries, offset: Exp) -> usize {
    dims.iter()
        .filter(|(w, dim)| series.try_coeff(*w - offset) != Some(rat(*dim as i64)))
        .count()
}

pub fn run_fock(cfg: &RunConfig) -> Result<CheckStatus, CliError> {
    let ns_dims = graded_dimensions(Sector::NS, Exp::new(8, 1));
    let ram_dims = graded_dimensions(Sector::Ramond, Exp::new(8, 1) + Exp::new(1, 16));

    let [ch0, ch12, ch116] = ising_characters(12);
    let ns_char = ch0.add(&ch12).shift_exponent(Exp::new(1, 48));
    let ram_char = ch116.shift_exponent(Exp::new(-1, 24)).scale_i64(2);

    let mut checks = FockChecks::new();
    checks.push(
        "NS graded dimensions match ch(0) + ch(1/2) through weight 8",
        dim_mismatches(&ns_dims, &ns_char, Exp::new(0, 1)) as f64,
    );
    checks.push(
        "Ramond graded dimensions match 2·ch(1/16) through weight 8",
        dim_mismatches(&ram_dims, &ram_char, Exp::new(1, 16)) as f64,
    );

    let samples: Vec<StateVector> = enumerate_states(Sector::NS, Exp::new(6, 1))
        .into_iter()
        .chain(enumerate_states(Sector::Ramond, Exp::new(6, 1)))
        .map(|s| StateVector::from_state(s, Sqrt2::from_int(1)))
        .collect();
    let mut worst_defect = 0usize;
    for m in -4..=4 {
        for n in -4..=4 {
            worst_defect = worst_defect.max(check_virasoro(m, n, &samples));
        }
    }
    checks.push(
        "Virasoro commutators with c = 1/2 exact for |m|,|n| ≤ 4 on states of weight ≤ 6",
        worst_defect as f64,
    );

    let (vp, vm) = twisted_vectors();
    let sixteenth = Sqrt2::from_frac(1, 16);
    let l0_defect = virasoro_mode(0, &vp).sub(&vp.scale(&sixteenth)).term_count()
        + virasoro_mode(0, &vm).sub(&vm.scale(&sixteenth)).term_count();
    checks.push("L(0)v± = (1/16)v±", l0_defect as f64);
    let phi_plus = apply_mode(Exp::new(0, 1), &vp)
        .expect("integer lattice")
        .sub(&vp.scale(&Sqrt2::inv_sqrt2()));
    let phi_minus = apply_mode(Exp::new(0, 1), &vm)
        .expect("integer lattice")
        .add(&vm.scale(&Sqrt2::inv_sqrt2()));
    checks.push(
        "φ₀v± = ±(1/√2)v±",
        (phi_plus.term_count() + phi_minus.term_count()) as f64,
    );
    let killed = virasoro_mode(1, &vp).term_count()
        + virasoro_mode(2, &vp).term_count()
        + virasoro_mode(1, &vm).term_count()
        + virasoro_mode(2, &vm).term_count();
    checks.push("L(1)v± = L(2)v± = 0", killed as f64);

    let split = ramond_split(4);
    let unbalanced = split.dims.iter().filter(|(_, dp, dm)| dp != dm).count();
    checks.push("v₊ and v₋ generate modules of equal graded dimension", unbalanced as f64);

    checks.push(
        "CAR anticommutators on 32 seeded random samples",
        car_spot_failures(cfg.seed, 32) as f64,
    );

    let status = checks.worst;
    let weight_line = |dims: &[(Exp, usize)]| {
        dims.iter().map(|(w, d)| format!("{w}: {d}")).collect::<Vec<_>>().join("  ")
    };
    let mut text = vec![
        format!("NS graded dimensions      {}", weight_line(&ns_dims)),
        format!("Ramond graded dimensions  {}", weight_line(&ram_dims)),
    ];
    let split_line = split
        .dims
        .iter()
        .map(|(w, dp, dm)| format!("{w}: {dp}+{dm}"))
        .collect::<Vec<_>>()
        .join("  ");
    text.push(format!("Ramond split (v₊+v₋)      {split_line}"));
    text.extend(checks.text());
    text.push(format!("status: {}", status_str(status)));

    let to_weights = |dims: &[(Exp, usize)]| {
        dims.iter().map(|(w, d)| WeightDimJson { w: w.to_string(), dim: *d }).collect()
    };
    let report = FockReport {
        command: "fock",
        config: config_json(cfg),
        sectors: vec![
            FockSectorJson { sector: "NS", weights: to_weights(&ns_dims) },
            FockSectorJson { sector: "Ramond", weights: to_weights(&ram_dims) },
        ],
        checks: checks.items,
        status: status_str(status).to_string(),
    };
    emit(cfg, &report, text);
    Ok(status)
}

/// Seeded random CAR checks: (ψ_a ψ_b + ψ_b ψ_a)v = δ_{a+b,0}·v on random
/// small states in both sectors.  Returns the number of failures.
fn car_spot_failures(seed: u64, count: usize) -> usize {
    let mut rng = Rng::new(seed);
    let mut failures = 0;
    for _ in 0..count {
        let (sector, lattice) = if rng.below(2) == 0 {
            (Sector::NS, [1i64, 3, 5, 7, 9, 11])
        } else {
            (Sector::Ramond, [0i64, 2, 4, 6, 8, 10])
        };
        let mut creation = lattice;
        rng.shuffle(&mut creation);
        let mut v = StateVector::vacuum(sector);
        for d in creation.iter().take(rng.below(5)) {
            v = apply_mode(Exp::new(-d, 2), &v).expect("sector lattice");
        }
        let sign = |r: &mut Rng| if r.below(2) == 0 { 1i64 } else { -1 };
        let da = lattice[rng.below(6)] * sign(&mut rng);
        let db = lattice[rng.below(6)] * sign(&mut rng);
        let (ka, kb) = (Exp::new(da, 2), Exp::new(db, 2));
        let apply2 = |first: Exp, second: Exp| {
            apply_mode(second, &apply_mode(first, &v).expect("sector lattice"))
                .expect("sector lattice")
        };
        let anti = apply2(kb, ka).add(&apply2(ka, kb));
        let expected = if da + db == 0 { v.clone() } else { StateVector::zero(sector) };
        if !anti.sub(&expected).is_zero() {
            failures += 1;
        }
    }
    failures
}

// ----------------------------------------------------------- verify-all ----

#[derive(Serialize)]
struct SectionJson {
    name: &'static str,
    status: String,
    checks: Vec<CheckJson>,
}

#[derive(Serialize)]
struct VerifyAllReport {
    command: &'static str,
    config: ConfigJson,
    sections: Vec<SectionJson>,
    status: String,
}

fn eq1_oracle() -> Vec<(IsingLabel, IsingLabel, FusionElement<IsingLabel>)> {
    use IsingLabel::*;
    let single = |l: IsingLabel| FusionElement::single(l);
    vec![
        (H0, H0, single(H0)),
        (H0, H12, single(H12)),
        (H0, H116, single(H116)),
        (H12, H0, single(H12)),
        (H12, H12, single(H0)),
        (H12, H116, single(H116)),
        (H116, H0, single(H116)),
        (H116, H12, single(H116)),
        (H116, H116, [(H0, 1), (H12, 1)].into_iter().collect()),
    ]
}

/// The oracle as a multiplicity tensor over the label order (0, 1/2, 1/16).
fn eq1_tensor() -> [[[u64; 3]; 3]; 3] {
    use IsingLabel::*;
    let idx = |l: &IsingLabel| match l {
        H0 => 0,
        H12 => 1,
        H116 => 2,
    };
    let mut n = [[[0u64; 3]; 3]; 3];
    for (a, b, product) in eq1_oracle() {
        for (c, m) in product.terms() {
            n[idx(&a)][idx(&b)][idx(c)] = m;
        }
    }
    n
}

pub fn run_verify_all(cfg: &RunConfig) -> Result<CheckStatus, CliError> {
    let mut sections: Vec<SectionJson> = Vec::new();
    let mut text: Vec<String> = Vec::new();
    let mut push_section = |name: &'static str, checks: Checks, text: &mut Vec<String>| {
        text.push(format!("[{}] {}: {}", sections.len() + 1, name, status_str(checks.worst)));
        text.extend(checks.text().into_iter().map(|l| format!("  {l}")));
        let status = checks.worst;
        sections.push(SectionJson {
            name,
            status: status_str(status).to_string(),
            checks: checks.items,
        });
        status
    };
    let mut status = CheckStatus::Pass;

    // 1: the Ising ring against the hard-coded fusion rules.
    let mut c = Checks::new();
    let table = ising_table();
    let oracle_ok = eq1_oracle()
        .iter()
        .all(|(a, b, expected)| table.product(a, b) == expected);
    c.push("all 9 products match the Ising fusion rules", oracle_ok, None);
    c.push("commutative", table.is_commutative(), None);
    c.push("associative over all 27 triples", table.check_associative().is_ok(), None);
    status = combine(status, push_section("ising fusion ring", c, &mut text));

    // 2: the Hamming code.
    let mut c = Checks::new();
    let h8 = hamming_h8();
    c.push("dim 4", h8.dim() == 4, None);
    c.push("doubly even", h8.is_doubly_even(), None);
    c.push("self-dual", h8.is_self_dual(), None);
    let we = h8.weight_enumerator();
    c.push(
        "weight enumerator 1 + 14z^4 + z^8",
        we == vec![1, 0, 0, 0, 14, 0, 0, 0, 1],
        Some(enumerator_poly(&we)),
    );
    status = combine(status, push_section("H8", c, &mut text));

    // 3: structure codes and condition (1).
    let mut c = Checks::new();
    c.push("dim S♮ = 7", s_natural().dim() == 7, None);
    c.push("dim D♮ = 41", d_natural().dim() == 41, None);
    c.push("dim D♭0 = 40", d_flat().0.dim() == 40, None);
    c.push("|S♭| = 64", s_flat().size() == 64, None);
    for (name, pair) in [
        ("moonshine", CodePair::new(d_natural(), s_natural())),
        ("baby", CodePair::new(d_flat().0, s_flat())),
    ] {
        let pair = pair.map_err(|e| CliError::Check(format!("{name} pair rejected: {e}")))?;
        let desc = build_pair_descriptor(pair);
        let c1 = desc.condition1();
        c.push(
            format!("condition (1) holds for the {name} pair"),
            c1.pass(),
            Some(format!("{}/{} covers, D ⊆ S⊥ {}", c1.covers_found(), c1.covers.len(), c1.containment)),
        );
        let i3 = desc.hypothesis_report();
        c.push(
            format!("Hypothesis I(3) holds for the {name} pair"),
            i3.pass(),
            i3.min_multiplicity().map(|m| format!("min multiplicity {m}")),
        );
    }
    status = combine(status, push_section("structure codes", c, &mut text));

    // 4: the character pipeline at the configured order.
    let mut c = Checks::new();
    let chars = ising_characters(cfg.order);
    let j = j_series(cfg.order);
    let t2a = t2a_series(cfg.order);
    let triple = solve_baby_characters(cfg.order)
        .map_err(|e| CliError::Check(format!("character solve failed: {e}")))?;
    c.push("j q-coefficient 196884", j.coeff(Exp::new(1, 1)) == rat(196884), None);
    c.push("T2A q-coefficient 4372", t2a.coeff(Exp::new(1, 1)) == rat(4372), None);
    c.push(
        "decomposition of j is exact",
        decomposition_residual(&j, &chars, &triple).is_zero_series(),
        None,
    );
    c.push(
        "b0 head",
        triple.b0.coeff(Exp::new(-47, 48)) == rat(1)
            && triple.b0.coeff(Exp::new(1, 48)) == rat(0)
            && triple.b0.coeff(Exp::new(49, 48)) == rat(96256),
        Some(series_head(&triple.b0, 3)),
    );
    c.push(
        "b1 lead 4371·q^(25/48)",
        triple.b1.leading().map(|(e, c)| (e, c.clone())) == Some((Exp::new(25, 48), rat(4371))),
        Some(series_head(&triple.b1, 2)),
    );
    c.push(
        "bT lead 96256·q^(23/24)",
        triple.bt.leading().map(|(e, c)| (e, c.clone())) == Some((Exp::new(23, 24), rat(96256))),
        Some(series_head(&triple.bt, 2)),
    );
    c.push(
        "4372 = 1 + 4371",
        t2a.coeff(Exp::new(1, 1)) == rat(1) + triple.b1.coeff(Exp::new(25, 48)),
        None,
    );
    c.push(
        "nonnegative integer coefficients",
        triple.as_array().iter().all(|s| s.all_coeffs_integer() && s.all_coeffs_nonnegative()),
        None,
    );
    status = combine(status, push_section("character pipeline", c, &mut text));

    // 5: S-transform laws, sharing the section-4 solve.
    let mut c = Checks::new();
    let s = SMatrix3::new();
    let ising_rep = verify_s_transform([&chars[0], &chars[1], &chars[2]], &s, &cfg.taus, cfg.tol);
    let baby_rep = verify_s_transform(triple.as_array(), &s, &cfg.taus, cfg.tol);
    for (name, rep) in [("ising", &ising_rep), ("baby", &baby_rep)] {
        c.push_status(
            format!("{name} triple S-transform"),
            rep.status(),
            Some(format!(
                "max residual {:.3e}, max tail {:.3e}",
                rep.max_residual(),
                rep.max_tail_bound()
            )),
        );
    }
    status = combine(status, push_section("modular verification", c, &mut text));

    // 6: the Fock oracle.
    let mut c = Checks::new();
    let ns_dims = graded_dimensions(Sector::NS, Exp::new(8, 1));
    let ram_dims = graded_dimensions(Sector::Ramond, Exp::new(8, 1) + Exp::new(1, 16));
    let [f0, f12, f116] = ising_characters(12);
    let ns_char = f0.add(&f12).shift_exponent(Exp::new(1, 48));
    let ram_char = f116.shift_exponent(Exp::new(-1, 24)).scale_i64(2);
    c.push(
        "NS dimensions = ch(0) + ch(1/2) through weight 8",
        dim_mismatches(&ns_dims, &ns_char, Exp::new(0, 1)) == 0,
        None,
    );
    c.push(
        "Ramond dimensions = 2·ch(1/16) through weight 8",
        dim_mismatches(&ram_dims, &ram_char, Exp::new(1, 16)) == 0,
        None,
    );
    let samples: Vec<StateVector> = enumerate_states(Sector::NS, Exp::new(6, 1))
        .into_iter()
        .chain(enumerate_states(Sector::Ramond, Exp::new(6, 1)))
        .map(|st| StateVector::from_state(st, Sqrt2::from_int(1)))
        .collect();
    let mut worst_defect = 0usize;
    for m in -4..=4 {
        for n in -4..=4 {
            worst_defect = worst_defect.max(check_virasoro(m, n, &samples));
        }
    }
    c.push(
        "Virasoro commutators exact for |m|,|n| ≤ 4, weight ≤ 6",
        worst_defect == 0,
        Some(format!("{} sample states", samples.len())),
    );
    let (vp, vm) = twisted_vectors();
    let sixteenth = Sqrt2::from_frac(1, 16);
    c.push(
        "L(0)v± = (1/16)v±",
        virasoro_mode(0, &vp).sub(&vp.scale(&sixteenth)).is_zero()
            && virasoro_mode(0, &vm).sub(&vm.scale(&sixteenth)).is_zero(),
        None,
    );
    status = combine(status, push_section("fock oracle", c, &mut text));

    // 7: the Verlinde reconstruction and the VB ring certificate.
    let mut c = Checks::new();
    let smat = SMatrix3::new();
    c.push("S is symmetric", smat.is_symmetric(), None);
    c.push("S² = 1", smat.squares_to_identity(), None);
    let n = smat.verlinde();
    c.push("Verlinde multiplicities match the fusion rules (27 entries)", n == eq1_tensor(), None);
    c.push("verlinde() agrees with the tabulated ring", n == ising_multiplicities(), None);
    c.push(
        "VB fusion ring is isomorphic to the Ising ring",
        ring_isomorphism_to_ising(&vb_fusion_ring()).is_ok(),
        None,
    );
    status = combine(status, push_section("verlinde cross-check", c, &mut text));

    text.push(format!("status: {}", status_str(status)));
    let report = VerifyAllReport {
        command: "verify-all",
        config: config_json(cfg),
        sections,
        status: status_str(status).to_string(),
    };
    emit(cfg, &report, text);
    Ok(status)
}
