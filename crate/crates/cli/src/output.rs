//! Shared rendering: JSON report pieces with fixed field order, and the text
//! formatters for codes, fusion elements, and series heads.
//!
//! JSON determinism: every report is a typed struct, so serde emits fields in
//! declaration order; all collections come out of BTree-backed iterators.

use std::fmt::Display;

use framed_voa::codes::LinearCode;
use framed_voa::fusion::{FusionElement, FusionTable};
use framed_voa::qseries::{CheckStatus, QSeries, STransformReport};
use serde::Serialize;

use crate::config::{render_tau, RunConfig};

pub fn status_str(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Inconclusive => "inconclusive",
    }
}

#[derive(Serialize)]
pub struct ConfigJson {
    pub order: i64,
    pub tol: f64,
    pub taus: Vec<String>,
    pub seed: u64,
}

pub fn config_json(cfg: &RunConfig) -> ConfigJson {
    ConfigJson {
        order: cfg.order,
        tol: cfg.tol,
        taus: cfg.taus.iter().map(|t| render_tau(*t)).collect(),
        seed: cfg.seed,
    }
}

#[derive(Serialize)]
pub struct CodeJson {
    pub name: String,
    pub length: usize,
    pub dim: usize,
    pub even: bool,
    pub doubly_even: bool,
    pub self_dual: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_weight: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_enumerator: Option<Vec<u64>>,
    pub basis: Vec<String>,
}

/// Stats for one code.  Exhaustive fields (minimum weight, enumerator) are
/// filled only for dimensions small enough to enumerate.
pub fn code_json(name: &str, code: &LinearCode) -> CodeJson {
    let small = code.dim() <= 16;
    CodeJson {
        name: name.to_string(),
        length: code.len(),
        dim: code.dim(),
        even: code.is_even(),
        doubly_even: code.is_doubly_even(),
        self_dual: code.is_self_dual(),
        min_weight: if small { code.min_weight() } else { None },
        weight_enumerator: if small { Some(code.weight_enumerator()) } else { None },
        basis: code.basis().iter().map(|w| w.to_string()).collect(),
    }
}

pub fn code_text(c: &CodeJson) -> String {
    let mut flags = Vec::new();
    if c.doubly_even {
        flags.push("doubly even");
    } else if c.even {
        flags.push("even");
    }
    if c.self_dual {
        flags.push("self-dual");
    }
    let mut line = format!("{}: [{}, {}]", c.name, c.length, c.dim);
    if let Some(d) = c.min_weight {
        line.push_str(&format!(", min weight {d}"));
    }
    if !flags.is_empty() {
        line.push_str(&format!(" ({})", flags.join(", ")));
    }
    line
}

#[derive(Serialize)]
pub struct FusionTermJson {
    pub label: String,
    pub mult: u64,
}

#[derive(Serialize)]
pub struct FusionProductJson {
    pub l: String,
    pub r: String,
    pub result: Vec<FusionTermJson>,
}

#[derive(Serialize)]
pub struct FusionTableJson {
    pub labels: Vec<String>,
    pub products: Vec<FusionProductJson>,
}

pub fn fusion_json<L: Ord + Clone>(
    table: &FusionTable<L>,
    fmt: impl Fn(&L) -> String,
) -> FusionTableJson {
    let labels: Vec<String> = table.labels().iter().map(&fmt).collect();
    let mut products = Vec::new();
    for a in table.labels() {
        for b in table.labels() {
            let result = table
                .product(a, b)
                .terms()
                .map(|(l, m)| FusionTermJson { label: fmt(l), mult: m })
                .collect();
            products.push(FusionProductJson { l: fmt(a), r: fmt(b), result });
        }
    }
    FusionTableJson { labels, products }
}

pub fn element_str<L: Ord + Clone>(
    e: &FusionElement<L>,
    fmt: impl Fn(&L) -> String,
) -> String {
    if e.term_count() == 0 {
        return "0".to_string();
    }
    e.terms()
        .map(|(l, m)| if m == 1 { fmt(l) } else { format!("{m}·{}", fmt(l)) })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Upper-triangle products over the non-unit labels, one line each.  For the
/// Ising ring these are exactly the three fusion-rule lines.
pub fn fusion_lines<L: Ord + Clone>(
    table: &FusionTable<L>,
    fmt: impl Fn(&L) -> String,
) -> Vec<String> {
    let others: Vec<&L> = table.labels().iter().filter(|l| *l != table.unit()).collect();
    let mut lines = Vec::new();
    for (i, a) in others.iter().enumerate() {
        for b in &others[i..] {
            let product = element_str(table.product(a, b), &fmt);
            lines.push(format!("{} × {} = {}", fmt(a), fmt(b), product));
        }
    }
    lines
}

#[derive(Serialize)]
pub struct SeriesJson {
    pub name: String,
    pub denom: i64,
    pub order: String,
    pub terms: Vec<(i64, String)>,
}

/// Series export on its exponent lattice: term (k, c) stands for c·q^(k/denom).
pub fn series_json(name: &str, s: &QSeries) -> SeriesJson {
    let denom = s.denom();
    let terms = s
        .terms()
        .map(|(e, c)| (e.numer() * (denom / e.denom()), c.to_string()))
        .collect();
    SeriesJson { name: name.to_string(), denom, order: s.order().to_string(), terms }
}

/// First `n` terms as a readable sum, e.g. "q^(-47/48) + 4371·q^(25/48) + …".
pub fn series_head(s: &QSeries, n: usize) -> String {
    let mut parts = Vec::new();
    for (e, c) in s.terms().take(n) {
        let q = if e == framed_voa::Exp::new(0, 1) {
            String::new()
        } else if e == framed_voa::Exp::new(1, 1) {
            "q".to_string()
        } else if *e.denom() == 1 && *e.numer() >= 0 {
            format!("q^{}", e.numer())
        } else {
            format!("q^({e})")
        };
        let part = match (c.to_string().as_str(), q.is_empty()) {
            (cs, true) => cs.to_string(),
            ("1", false) => q,
            (cs, false) => format!("{cs}·{q}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        parts.push("0".to_string());
    }
    if s.term_count() > n {
        parts.push("…".to_string());
    }
    format!("{} + O(q^({}))", parts.join(" + "), s.order())
}

#[derive(Serialize)]
pub struct STransformRowJson {
    pub tau: String,
    pub row: usize,
    pub residual: f64,
    pub tail_bound: f64,
    pub status: String,
}

#[derive(Serialize)]
pub struct STransformJson {
    pub tol: f64,
    pub status: String,
    pub max_residual: f64,
    pub max_tail_bound: f64,
    pub rows: Vec<STransformRowJson>,
}

pub fn s_transform_json(r: &STransformReport) -> STransformJson {
    STransformJson {
        tol: r.tol,
        status: status_str(r.status()).to_string(),
        max_residual: r.max_residual(),
        max_tail_bound: r.max_tail_bound(),
        rows: r
            .rows
            .iter()
            .map(|row| STransformRowJson {
                tau: render_tau(row.tau),
                row: row.row,
                residual: row.residual,
                tail_bound: row.tail_bound,
                status: status_str(row.status).to_string(),
            })
            .collect(),
    }
}

pub fn s_transform_text(name: &str, r: &STransformReport) -> Vec<String> {
    let mut lines = vec![format!(
        "S-transform [{}]: {} (max residual {:.3e}, max tail {:.3e}, tol {:.1e})",
        name,
        status_str(r.status()),
        r.max_residual(),
        r.max_tail_bound(),
        r.tol
    )];
    for row in &r.rows {
        lines.push(format!(
            "  τ = {:>6}  row {}  residual {:.3e}  tail {:.3e}  {}",
            render_tau(row.tau),
            row.row,
            row.residual,
            row.tail_bound,
            status_str(row.status)
        ));
    }
    lines
}

/// Plain Display-based label formatter.
pub fn display_label<L: Display>(l: &L) -> String {
    l.to_string()
}
