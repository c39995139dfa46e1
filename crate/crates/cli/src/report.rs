//! The analysis report: one document rendered as text, CSV or JSON.
//!
//! Displayed numbers are rounded once, at document build time, so every
//! format carries numerically identical values: log-likelihoods and
//! criteria to one decimal, parameters to two, correlation statistics and
//! penalty rates to four.

use serde::Serialize;

use wordring::data::PairCountTable;
use wordring::inference::{penalty_comparison, ModelEvaluation};
use wordring::kendall::{kendall_tau_b, KendallTest};
use wordring::models::DominantFrequencies;
use wordring::order::Order;
use wordring::ring::{build_ring, distance_table, ring_distance};

use crate::commands::CliError;

/// Sort key for the model table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortKey {
    Aicc,
    Bic,
    Loglik,
}

impl SortKey {
    pub fn name(self) -> &'static str {
        match self {
            SortKey::Aicc => "aicc",
            SortKey::Bic => "bic",
            SortKey::Loglik => "loglik",
        }
    }
}

fn round1(v: f64) -> f64 {
    (v * 10.0).round() / 10.0
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

fn round4(v: f64) -> f64 {
    (v * 10_000.0).round() / 10_000.0
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Metadata {
    pub dataset: String,
    pub frequencies: String,
    pub languages: u64,
    pub sample_size: u64,
    pub sort: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp_unix: Option<u64>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Param {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ModelRow {
    pub model: String,
    pub loglik: f64,
    pub k: usize,
    pub aicc: f64,
    pub bic: f64,
    pub params: Vec<Param>,
    pub conflicted: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DisplacementRow {
    pub partner: String,
    pub delta_s: u8,
    pub delta_v: u8,
    pub delta_o: u8,
    pub delta: u8,
    pub ring_distance: u8,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct KendallSection {
    pub tau: f64,
    pub p_one_sided: f64,
    pub p_two_sided: f64,
    pub permutations: u64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RingSection {
    pub cycle: Vec<String>,
    pub distance_matrix: Vec<Vec<u8>>,
    pub displacement_from_sov: Vec<DisplacementRow>,
    pub kendall: KendallSection,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PenaltyRow {
    pub k: usize,
    pub aicc_rate: f64,
    pub bic_rate: f64,
    pub bic_dominates: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PenaltySection {
    pub sample_size: u64,
    pub rows: Vec<PenaltyRow>,
}

/// The evaluation document: metadata, the model table and the winners.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct EvaluationDocument {
    pub metadata: Metadata,
    pub models: Vec<ModelRow>,
    pub best_by_aicc: String,
    pub best_by_bic: String,
}

/// The full report: the evaluation plus the ring analysis and the
/// penalty-comparison note.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ReportDocument {
    pub metadata: Metadata,
    pub models: Vec<ModelRow>,
    pub best_by_aicc: String,
    pub best_by_bic: String,
    pub ring: RingSection,
    pub penalty: PenaltySection,
}

fn model_row(eval: &ModelEvaluation) -> ModelRow {
    ModelRow {
        model: eval.name.to_string(),
        loglik: round1(eval.log_likelihood),
        k: eval.k,
        aicc: round1(eval.aic_c),
        bic: round1(eval.bic),
        params: eval
            .params
            .iter()
            .map(|(name, value)| Param {
                name: name.to_string(),
                value: round2(*value),
            })
            .collect(),
        conflicted: eval.conflicted,
    }
}

/// Sorts evaluations by the requested criterion (best first) and rounds
/// them into display rows.
pub fn model_table(evaluations: &[ModelEvaluation], sort: SortKey) -> Vec<ModelRow> {
    let mut sorted: Vec<&ModelEvaluation> = evaluations.iter().collect();
    match sort {
        SortKey::Aicc => sorted.sort_by(|a, b| a.aic_c.total_cmp(&b.aic_c)),
        SortKey::Bic => sorted.sort_by(|a, b| a.bic.total_cmp(&b.bic)),
        SortKey::Loglik => sorted.sort_by(|a, b| b.log_likelihood.total_cmp(&a.log_likelihood)),
    }
    sorted.into_iter().map(model_row).collect()
}

pub fn best_by_aicc(evaluations: &[ModelEvaluation]) -> String {
    evaluations
        .iter()
        .min_by(|a, b| a.aic_c.total_cmp(&b.aic_c))
        .map(|e| e.name.to_string())
        .unwrap_or_default()
}

pub fn best_by_bic(evaluations: &[ModelEvaluation]) -> String {
    evaluations
        .iter()
        .min_by(|a, b| a.bic.total_cmp(&b.bic))
        .map(|e| e.name.to_string())
        .unwrap_or_default()
}

/// The ring analysis: cycle, distance matrix, displacement table and the
/// rank correlation between the two distance measures.
pub fn ring_section() -> Result<RingSection, CliError> {
    let ring = build_ring();
    let cycle = ring
        .cycle_from(Order::SOV)
        .iter()
        .map(|o| o.to_string())
        .collect();
    let distance_matrix = Order::ALL
        .iter()
        .map(|&x| Order::ALL.iter().map(|&y| ring_distance(x, y)).collect())
        .collect();
    let rows = distance_table(Order::SOV);
    let displacement_from_sov: Vec<DisplacementRow> = rows
        .iter()
        .map(|r| DisplacementRow {
            partner: r.partner.to_string(),
            delta_s: r.displacement.delta_s,
            delta_v: r.displacement.delta_v,
            delta_o: r.displacement.delta_o,
            delta: r.displacement.total(),
            ring_distance: r.ring_distance,
        })
        .collect();
    let deltas: Vec<i64> = rows.iter().map(|r| r.displacement.total() as i64).collect();
    let distances: Vec<i64> = rows.iter().map(|r| r.ring_distance as i64).collect();
    let test: KendallTest = kendall_tau_b(&deltas, &distances)
        .map_err(|e| CliError::Internal(format!("ring correlation failed: {e}")))?;
    Ok(RingSection {
        cycle,
        distance_matrix,
        displacement_from_sov,
        kendall: KendallSection {
            tau: round4(test.tau),
            p_one_sided: round4(test.p_one_sided),
            p_two_sided: round4(test.p_two_sided),
            permutations: test.permutations,
        },
    })
}

/// Penalty rates of the two criteria for k = 1..=5 at the data's sample
/// size.
pub fn penalty_section(n: u64) -> Result<PenaltySection, CliError> {
    let mut rows = Vec::new();
    for k in 1..=5usize {
        if n > k as u64 + 1 {
            let c = penalty_comparison(k, n)
                .map_err(|e| CliError::Internal(format!("penalty comparison failed: {e}")))?;
            rows.push(PenaltyRow {
                k,
                aicc_rate: round4(c.aicc_rate),
                bic_rate: round4(c.bic_rate),
                bic_dominates: c.bic_dominates,
            });
        }
    }
    Ok(PenaltySection {
        sample_size: n,
        rows,
    })
}

pub fn metadata(
    dataset_label: &str,
    frequencies_label: &str,
    data: &PairCountTable,
    sort: SortKey,
    timestamp_unix: Option<u64>,
) -> Metadata {
    Metadata {
        dataset: dataset_label.to_string(),
        frequencies: frequencies_label.to_string(),
        languages: data.language_total(),
        sample_size: data.sample_size(),
        sort: sort.name().to_string(),
        timestamp_unix,
    }
}

/// Builds the full report document.
#[allow(clippy::too_many_arguments)]
pub fn build_report(
    data: &PairCountTable,
    dataset_label: &str,
    freqs: &DominantFrequencies,
    frequencies_label: &str,
    sort: SortKey,
    timestamp_unix: Option<u64>,
) -> Result<ReportDocument, CliError> {
    let evaluations = wordring::inference::evaluate_all_extended(data, freqs, true)
        .map_err(|e| CliError::Input(e.to_string()))?;
    Ok(ReportDocument {
        metadata: metadata(dataset_label, frequencies_label, data, sort, timestamp_unix),
        models: model_table(&evaluations, sort),
        best_by_aicc: best_by_aicc(&evaluations),
        best_by_bic: best_by_bic(&evaluations),
        ring: ring_section()?,
        penalty: penalty_section(data.sample_size())?,
    })
}

fn params_string(params: &[Param], separator: &str) -> String {
    params
        .iter()
        .map(|p| format!("{}={}", p.name, format_number(p.value, 2)))
        .collect::<Vec<_>>()
        .join(separator)
}

/// Formats an already-rounded value with a fixed number of decimals,
/// keeping non-finite values readable.
fn format_number(v: f64, decimals: usize) -> String {
    if v.is_finite() {
        format!("{v:.decimals$}")
    } else {
        format!("{v}")
    }
}

fn text_model_table(models: &[ModelRow], out: &mut String) {
    out.push_str(&format!(
        "{:<18}{:>10}{:>4}{:>10}{:>10}  {}\n",
        "model", "loglik", "k", "aicc", "bic", "parameters"
    ));
    for row in models {
        let mut line = format!(
            "{:<18}{:>10}{:>4}{:>10}{:>10}  {}",
            row.model,
            format_number(row.loglik, 1),
            row.k,
            format_number(row.aicc, 1),
            format_number(row.bic, 1),
            params_string(&row.params, " "),
        );
        if row.conflicted {
            line.push_str("  [observed pair with probability 0]");
        }
        line.push('\n');
        out.push_str(&line);
    }
}

fn text_metadata(meta: &Metadata, out: &mut String) {
    out.push_str(&format!("dataset: {}\n", meta.dataset));
    out.push_str(&format!("frequencies: {}\n", meta.frequencies));
    out.push_str(&format!(
        "languages (m): {}, sample size (n): {}\n",
        meta.languages, meta.sample_size
    ));
    out.push_str(&format!("sorted by: {}\n", meta.sort));
    if let Some(ts) = meta.timestamp_unix {
        out.push_str(&format!("timestamp (unix): {ts}\n"));
    }
}

/// Renders the evaluation document as a plain-text table.
pub fn evaluation_text(doc: &EvaluationDocument) -> String {
    let mut out = String::new();
    text_metadata(&doc.metadata, &mut out);
    out.push('\n');
    text_model_table(&doc.models, &mut out);
    out.push('\n');
    out.push_str(&format!("best by aicc: {}\n", doc.best_by_aicc));
    out.push_str(&format!("best by bic:  {}\n", doc.best_by_bic));
    out
}

fn text_ring(ring: &RingSection, out: &mut String) {
    out.push_str("word order permutation ring\n");
    out.push_str(&format!("cycle: {} - (back to start)\n\n", ring.cycle.join(" - ")));

    out.push_str("ring distance d(x, y):\n");
    out.push_str(&format!("{:<6}", ""));
    for o in Order::ALL {
        out.push_str(&format!("{:>5}", o.to_string()));
    }
    out.push('\n');
    for (i, x) in Order::ALL.iter().enumerate() {
        out.push_str(&format!("{:<6}", x.to_string()));
        for d in &ring.distance_matrix[i] {
            out.push_str(&format!("{d:>5}"));
        }
        out.push('\n');
    }
    out.push('\n');

    out.push_str("displacement vs ring distance from SOV:\n");
    out.push_str(&format!(
        "{:<9}{:>8}{:>8}{:>8}{:>7}{:>4}\n",
        "partner", "delta_s", "delta_v", "delta_o", "delta", "d"
    ));
    for row in &ring.displacement_from_sov {
        out.push_str(&format!(
            "{:<9}{:>8}{:>8}{:>8}{:>7}{:>4}\n",
            row.partner, row.delta_s, row.delta_v, row.delta_o, row.delta, row.ring_distance
        ));
    }
    out.push('\n');

    out.push_str(&format!(
        "kendall tau-b between displacement and ring distance: tau = {}\n",
        format_number(ring.kendall.tau, 4)
    ));
    out.push_str(&format!(
        "exact permutation test over {} arrangements: p = {} (one-sided), {} (two-sided)\n",
        ring.kendall.permutations,
        format_number(ring.kendall.p_one_sided, 4),
        format_number(ring.kendall.p_two_sided, 4)
    ));
}

fn text_penalty(penalty: &PenaltySection, out: &mut String) {
    out.push_str(&format!(
        "per-parameter penalty rates at n = {} (aicc: 2/(n-k-1), bic: ln n):\n",
        penalty.sample_size
    ));
    out.push_str(&format!(
        "{:<4}{:>11}{:>10}  {}\n",
        "k", "aicc_rate", "bic_rate", "bic_dominates"
    ));
    for row in &penalty.rows {
        out.push_str(&format!(
            "{:<4}{:>11}{:>10}  {}\n",
            row.k,
            format_number(row.aicc_rate, 4),
            format_number(row.bic_rate, 4),
            row.bic_dominates
        ));
    }
}

/// Renders the ring analysis alone (the `ring` subcommand).
pub fn ring_text(ring: &RingSection) -> String {
    let mut out = String::new();
    text_ring(ring, &mut out);
    out
}

/// Renders the full report as text.
pub fn report_text(doc: &ReportDocument) -> String {
    let mut out = String::from("wordring report\n");
    text_metadata(&doc.metadata, &mut out);
    out.push('\n');
    text_model_table(&doc.models, &mut out);
    out.push_str(&format!("best by aicc: {}\n", doc.best_by_aicc));
    out.push_str(&format!("best by bic:  {}\n\n", doc.best_by_bic));
    text_ring(&doc.ring, &mut out);
    out.push('\n');
    text_penalty(&doc.penalty, &mut out);
    out
}

/// Renders the full report as sectioned CSV. Section banners are `#`
/// comment lines; the model table uses the columns
/// `model,loglik,k,aicc,bic,params`.
pub fn report_csv(doc: &ReportDocument) -> String {
    let mut out = String::from("# wordring report\n");
    out.push_str(&format!("# dataset: {}\n", doc.metadata.dataset));
    out.push_str(&format!("# frequencies: {}\n", doc.metadata.frequencies));
    out.push_str(&format!("# languages (m): {}\n", doc.metadata.languages));
    out.push_str(&format!("# sample size (n): {}\n", doc.metadata.sample_size));
    out.push_str(&format!("# sort: {}\n", doc.metadata.sort));
    if let Some(ts) = doc.metadata.timestamp_unix {
        out.push_str(&format!("# timestamp_unix: {ts}\n"));
    }
    out.push_str("model,loglik,k,aicc,bic,params\n");
    for row in &doc.models {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.model,
            format_number(row.loglik, 1),
            row.k,
            format_number(row.aicc, 1),
            format_number(row.bic, 1),
            params_string(&row.params, ";"),
        ));
    }
    out.push_str(&format!("# best by aicc: {}\n", doc.best_by_aicc));
    out.push_str(&format!("# best by bic: {}\n", doc.best_by_bic));

    out.push_str("# ring cycle\n");
    out.push_str(&format!("{}\n", doc.ring.cycle.join(",")));
    out.push_str("# ring distance matrix\n");
    out.push_str("order,SOV,SVO,VSO,VOS,OVS,OSV\n");
    for (i, x) in Order::ALL.iter().enumerate() {
        let cells: Vec<String> = doc.ring.distance_matrix[i]
            .iter()
            .map(|d| d.to_string())
            .collect();
        out.push_str(&format!("{x},{}\n", cells.join(",")));
    }
    out.push_str("# displacement vs ring distance from SOV\n");
    out.push_str("partner,delta_s,delta_v,delta_o,delta,ring_distance\n");
    for row in &doc.ring.displacement_from_sov {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.partner, row.delta_s, row.delta_v, row.delta_o, row.delta, row.ring_distance
        ));
    }
    out.push_str("# kendall tau-b (displacement vs ring distance)\n");
    out.push_str("tau,p_one_sided,p_two_sided,permutations\n");
    out.push_str(&format!(
        "{},{},{},{}\n",
        format_number(doc.ring.kendall.tau, 4),
        format_number(doc.ring.kendall.p_one_sided, 4),
        format_number(doc.ring.kendall.p_two_sided, 4),
        doc.ring.kendall.permutations
    ));

    out.push_str(&format!(
        "# per-parameter penalty rates at n = {}\n",
        doc.penalty.sample_size
    ));
    out.push_str("k,aicc_rate,bic_rate,bic_dominates\n");
    for row in &doc.penalty.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.k,
            format_number(row.aicc_rate, 4),
            format_number(row.bic_rate, 4),
            row.bic_dominates
        ));
    }
    out
}

/// Renders a document as pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(doc)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Internal(format!("JSON serialization failed: {e}")))
}
