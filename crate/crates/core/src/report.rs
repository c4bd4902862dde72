//! Serializable reports for the command-line front end. Vertices are
//! 1-based; every element is an exact token.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;

use crate::digraph::{cores_from, leading_data_capped, scc_block_form, simple_cycles_capped, BlockForm, Cycle, CoreData, LeadingData};
use crate::eigen::{eigendecomposition_capped, eigenvalues_capped, eigenvector_for_capped, EigenKind};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::jordan::{jordan_decompose, JordanBounds};
use crate::matrix::{Matrix, Vector};
use crate::poly::Monomial;
use crate::stability::{ghostpotence_with, semi_idempotent_coeff, stability_index, GhostVerdict, StableForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub m: Option<usize>,
    pub m_max: usize,
    pub k_max: usize,
    pub max_n: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { m: None, m_max: 64, k_max: 16, max_n: crate::matrix::DEFAULT_MAX_N }
    }
}

fn rational_token(r: &BigRational) -> String {
    Element::Tangible(r.clone()).to_string()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn tokens(v: &Vector) -> Vec<String> {
    v.tokens()
}

fn kind_name(k: EigenKind) -> String {
    match k {
        EigenKind::Strict => "strict".into(),
        EigenKind::Supertropical => "supertropical".into(),
        EigenKind::Generalized(m) => format!("generalized({m})"),
        EigenKind::Weak { m, k } => format!("weak({m},{k})"),
    }
}

/// A report section that may have failed on its own (caps, bounds,
/// preconditions) without failing the whole analysis.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum Section<T> {
    Ok(T),
    Error(String),
}

impl<T> From<Result<T>> for Section<T> {
    fn from(r: Result<T>) -> Self {
        match r {
            Ok(v) => Section::Ok(v),
            Err(e) => Section::Error(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerReport {
    pub m: usize,
    pub matrix: Vec<Vec<String>>,
}

pub fn power(a: &Matrix, m: usize) -> PowerReport {
    PowerReport { m, matrix: a.pow(m).to_tokens() }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootReport {
    pub value: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharpolyReport {
    pub char_poly: String,
    pub coefficients: Vec<String>,
    pub classification: Vec<Monomial>,
    pub essential: String,
    pub corner_roots: Vec<RootReport>,
    pub permanent: String,
    pub trace: String,
    pub nonsingular: bool,
    pub rank: usize,
}

pub fn charpoly(a: &Matrix, o: &Options) -> Result<CharpolyReport> {
    let f = a.char_poly_capped(o.max_n)?;
    let det = a.permanent_capped(o.max_n)?;
    Ok(CharpolyReport {
        char_poly: f.to_string(),
        coefficients: f.to_json(),
        classification: f.classify(),
        essential: f.essential_part().to_string(),
        corner_roots: f
            .corner_roots()?
            .into_iter()
            .map(|r| RootReport { value: r.value.to_string(), multiplicity: r.multiplicity })
            .collect(),
        nonsingular: det.is_tangible(),
        permanent: det.to_string(),
        trace: a.trace().to_string(),
        rank: a.rank_capped(o.max_n)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleReport {
    pub vertices: Vec<usize>,
    pub weight: String,
    pub length: usize,
    pub average: String,
    pub leading: bool,
    pub in_core: bool,
    pub in_tcore: bool,
    pub in_anti_tcore: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TauReport {
    pub length: usize,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LeadingReport {
    pub mu: usize,
    pub alpha_mu: String,
    pub omega: String,
    pub mu_tilde: usize,
    pub lengths: Vec<usize>,
    pub tau: Vec<TauReport>,
    pub depth: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoresReport {
    pub leading: LeadingReport,
    pub core_vertices: Vec<usize>,
    pub tcore_vertices: Vec<usize>,
    pub anti_tcore_vertices: Vec<usize>,
    pub cycles: Vec<CycleReport>,
}

fn leading_report(d: &LeadingData) -> LeadingReport {
    LeadingReport {
        mu: d.mu,
        alpha_mu: d.alpha_mu.to_string(),
        omega: rational_token(&d.omega),
        mu_tilde: d.mu_tilde,
        lengths: d.lengths.clone(),
        tau: d.tau.iter().map(|(&length, &count)| TauReport { length, count }).collect(),
        depth: d.depth.clone(),
    }
}

fn cycle_report(c: &Cycle, d: &LeadingData, cores: &CoreData) -> CycleReport {
    CycleReport {
        vertices: one_based(&c.vertices),
        weight: c.weight.to_string(),
        length: c.len(),
        average: rational_token(&c.average()),
        leading: d.leading_cycles.contains(c),
        in_core: cores.core.contains(c),
        in_tcore: cores.tcore.contains(c),
        in_anti_tcore: cores.anti_tcore.contains(c),
    }
}

pub fn cores(a: &Matrix, o: &Options) -> Result<CoresReport> {
    let d = leading_data_capped(a, o.max_n)?;
    let c = cores_from(&d);
    let cycles = simple_cycles_capped(a, o.max_n)?.iter().map(|cy| cycle_report(cy, &d, &c)).collect();
    Ok(CoresReport {
        leading: leading_report(&d),
        core_vertices: one_based(&c.core_vertices),
        tcore_vertices: one_based(&c.tcore_vertices),
        anti_tcore_vertices: one_based(&c.anti_tcore_vertices),
        cycles,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockFormReport {
    pub eta: usize,
    pub permutation: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

fn block_form_report(bf: &BlockForm) -> BlockFormReport {
    BlockFormReport { eta: bf.eta(), permutation: one_based(&bf.perm), blocks: bf.blocks.iter().map(|b| one_based(b)).collect() }
}

#[derive(Debug, Clone, Serialize)]
pub struct OffBetaReport {
    pub i: usize,
    pub j: usize,
    pub beta: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StableFormReport {
    pub block_form: BlockFormReport,
    pub betas: Vec<String>,
    pub off_diagonal: Vec<OffBetaReport>,
    pub tangibly_stable: bool,
}

fn stable_form_report(s: &StableForm) -> StableFormReport {
    let eta = s.block_form.eta();
    let mut off = Vec::new();
    for i in 0..eta {
        for j in i + 1..eta {
            off.push(OffBetaReport { i: i + 1, j: j + 1, beta: s.off[i][j].as_ref().map(Element::to_string) });
        }
    }
    StableFormReport {
        block_form: block_form_report(&s.block_form),
        betas: s.betas.iter().map(Element::to_string).collect(),
        off_diagonal: off,
        tangibly_stable: s.tangibly_stable,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub semi_idempotent_coeff: Option<String>,
    pub stability_index: usize,
    pub m_max: usize,
    pub power: Vec<Vec<String>>,
    pub form: StableFormReport,
}

pub fn stability(a: &Matrix, o: &Options) -> Result<StabilityReport> {
    let (m, sf) = stability_index(a, o.m_max)?;
    Ok(StabilityReport {
        semi_idempotent_coeff: semi_idempotent_coeff(a).map(|b| b.to_string()),
        stability_index: m,
        m_max: o.m_max,
        power: a.pow(m).to_tokens(),
        form: stable_form_report(&sf),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GhostBlockReport {
    pub vertices: Vec<usize>,
    pub has_cycles: bool,
    pub tcore_empty: bool,
    pub ghost_index: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GhostReport {
    pub ghostpotent: bool,
    pub ghost_index: Option<usize>,
    pub bound: Option<usize>,
    pub bound_holds: Option<bool>,
    pub iteration_cap: usize,
    pub blocks: Vec<GhostBlockReport>,
}

fn ghost_report(v: &GhostVerdict) -> GhostReport {
    GhostReport {
        ghostpotent: v.ghostpotent,
        ghost_index: v.ghost_index,
        bound: v.bound,
        bound_holds: v.bound_holds,
        iteration_cap: v.iteration_cap,
        blocks: v
            .blocks
            .iter()
            .map(|b| GhostBlockReport {
                vertices: one_based(&b.vertices),
                has_cycles: b.has_cycles,
                tcore_empty: b.tcore_empty,
                ghost_index: b.ghost_index,
            })
            .collect(),
    }
}

pub fn ghost(a: &Matrix, o: &Options) -> Result<GhostReport> {
    Ok(ghost_report(&ghostpotence_with(a, o.max_n, o.m_max)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct AttemptReport {
    pub strategy: String,
    pub accepted: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct JordanPairReport {
    pub strategy: String,
    pub s: Vec<Vec<String>>,
    pub n: Vec<Vec<String>>,
    pub semisimple_k: usize,
    pub d: Vec<String>,
    pub ghost_index: Option<usize>,
    pub determinant: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct JordanReport {
    pub found: bool,
    pub pair: Option<JordanPairReport>,
    pub attempts: Vec<AttemptReport>,
}

pub fn jordan(a: &Matrix, o: &Options) -> Result<JordanReport> {
    let bounds = JordanBounds { max_n: o.max_n, k_max: o.m_max, ghost_cap: o.m_max };
    let out = jordan_decompose(a, &bounds)?;
    Ok(JordanReport {
        found: out.pair.is_some(),
        pair: out.pair.map(|p| JordanPairReport {
            strategy: p.strategy.name().into(),
            s: p.s.to_tokens(),
            n: p.n.to_tokens(),
            semisimple_k: p.witness.k,
            d: p.witness.d.iter().map(Element::to_string).collect(),
            ghost_index: p.verdict.ghost_index,
            determinant: p.det.to_string(),
        }),
        attempts: out
            .attempts
            .into_iter()
            .map(|t| AttemptReport { strategy: t.strategy.name().into(), accepted: t.failures.is_empty(), failures: t.failures })
            .collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub beta: String,
    pub vector: Vec<String>,
    pub kind: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompVectorReport {
    pub block: usize,
    pub beta: String,
    pub vector: Vec<String>,
    pub kind: String,
    pub annihilator: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub stable_power: usize,
    pub form: StableFormReport,
    pub vectors: Vec<DecompVectorReport>,
    pub rank: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenReport {
    pub eigenvalues: Vec<RootReport>,
    pub pairs: Vec<PairReport>,
    pub decomposition: DecompositionReport,
}

fn eigen_parts(a: &Matrix, o: &Options) -> Result<(Vec<RootReport>, Vec<PairReport>)> {
    let roots = eigenvalues_capped(a, o.max_n)?;
    let mut pairs = Vec::new();
    for r in &roots {
        for p in eigenvector_for_capped(a, &r.value, o.max_n)? {
            pairs.push(PairReport { beta: p.beta.to_string(), vector: tokens(&p.v), kind: kind_name(p.kind) });
        }
    }
    let roots = roots.into_iter().map(|r| RootReport { value: r.value.to_string(), multiplicity: r.multiplicity }).collect();
    Ok((roots, pairs))
}

fn decomposition(a: &Matrix, o: &Options) -> Result<DecompositionReport> {
    let d = eigendecomposition_capped(a, o.m_max, o.max_n)?;
    Ok(DecompositionReport {
        stable_power: d.m,
        form: stable_form_report(&d.stable),
        vectors: d
            .vectors
            .iter()
            .map(|x| DecompVectorReport {
                block: x.block + 1,
                beta: x.beta.to_string(),
                vector: tokens(&x.v),
                kind: kind_name(x.kind),
                annihilator: x.beta.is_zero(),
            })
            .collect(),
        rank: d.rank,
        failures: d.failures,
    })
}

pub fn eigen(a: &Matrix, o: &Options) -> Result<EigenReport> {
    let (eigenvalues, pairs) = eigen_parts(a, o)?;
    Ok(EigenReport { eigenvalues, pairs, decomposition: decomposition(a, o)? })
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub charpoly: Section<CharpolyReport>,
    pub block_form: BlockFormReport,
    pub cores: Section<CoresReport>,
    pub stability: Section<StabilityReport>,
    pub ghost: Section<GhostReport>,
    pub jordan: Section<JordanReport>,
    pub eigen: Section<EigenReport>,
}

pub fn analyze(a: &Matrix, o: &Options) -> AnalyzeReport {
    AnalyzeReport {
        n: a.n(),
        charpoly: charpoly(a, o).into(),
        block_form: block_form_report(&scc_block_form(a)),
        cores: cores(a, o).into(),
        stability: stability(a, o).into(),
        ghost: ghost(a, o).into(),
        jordan: jordan(a, o).into(),
        eigen: eigen(a, o).into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Power,
    Charpoly,
    Eigen,
    Jordan,
    Stability,
    Ghost,
    Cores,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Power => "power",
            Command::Charpoly => "charpoly",
            Command::Eigen => "eigen",
            Command::Jordan => "jordan",
            Command::Stability => "stability",
            Command::Ghost => "ghost",
            Command::Cores => "cores",
        }
    }
}

/// `{"command", "input", "result"}` for one command. Errors of
/// single-purpose commands propagate; `analyze` records them per section.
pub fn run(cmd: Command, a: &Matrix, o: &Options) -> Result<Value> {
    let result = match cmd {
        Command::Analyze => to_value(&analyze(a, o)),
        Command::Power => {
            let m = o.m.ok_or_else(|| Error::Parse("power requires --m".into()))?;
            to_value(&power(a, m))
        }
        Command::Charpoly => to_value(&charpoly(a, o)?),
        Command::Eigen => to_value(&eigen(a, o)?),
        Command::Jordan => {
            let r = jordan(a, o)?;
            if !r.found {
                return Err(Error::BoundExhausted { what: "jordan decomposition search", bound: o.m_max });
            }
            to_value(&r)
        }
        Command::Stability => to_value(&stability(a, o)?),
        Command::Ghost => to_value(&ghost(a, o)?),
        Command::Cores => to_value(&cores(a, o)?),
    };
    let mut out = BTreeMap::new();
    out.insert("command", Value::String(cmd.name().into()));
    out.insert("input", serde_json::to_value(a.to_file()).expect("serializable"));
    out.insert("result", result);
    Ok(serde_json::to_value(out).expect("serializable"))
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn is_matrix(v: &Value) -> bool {
    matches!(v, Value::Array(rows) if !rows.is_empty()
        && rows.iter().all(|r| matches!(r, Value::Array(c) if c.iter().all(Value::is_string))))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|i| !i.is_object() && !i.is_array()),
        _ => true,
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => scalar(other),
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(x, indent + 1, out);
                    }
                    _ if is_matrix(x) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(x, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(x, indent + 1, out);
                    }
                    Value::Array(items) => {
                        let _ = writeln!(out, "{pad}{k}: [{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", "));
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                    }
                }
            }
        }
        Value::Array(items) if is_matrix(v) => {
            let rows: Vec<Vec<String>> = items
                .iter()
                .map(|r| r.as_array().map(|c| c.iter().map(scalar).collect()).unwrap_or_default())
                .collect();
            let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
            for r in rows {
                let cells: Vec<String> = r.iter().map(|t| format!("{t:>width$}")).collect();
                let _ = writeln!(out, "{pad}[{}]", cells.join(" "));
            }
        }
        Value::Array(items) => {
            for x in items {
                match x {
                    Value::Object(map) if map.values().all(is_flat) => {
                        let fields: Vec<String> = map.iter().map(|(k, y)| format!("{k}: {}", flat(y))).collect();
                        let _ = writeln!(out, "{pad}- {}", fields.join(", "));
                    }
                    Value::Object(_) => {
                        let _ = writeln!(out, "{pad}-");
                        render(x, indent + 1, out);
                    }
                    Value::Array(inner) => {
                        let _ = writeln!(out, "{pad}- [{}]", inner.iter().map(scalar).collect::<Vec<_>>().join(", "));
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}- {}", scalar(x));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

/// Plain-text rendering of a report value.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}
