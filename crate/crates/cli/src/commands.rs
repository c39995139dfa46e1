//! Subcommand implementations. Each returns the rendered output so the
//! binary stays a thin exit-code wrapper and tests can call commands
//! directly.

use std::fmt::Write as _;
use std::path::Path;

use wordring::data::{canonical_dataset, parse_dominant_frequencies, parse_pair_counts,
    wals_dominant_frequencies, PairCountTable};
use wordring::inference::{
    evaluate_all_extended, grid_search, log_likelihood, plugin_fit, ModelFamily,
};
use wordring::models::DominantFrequencies;

use crate::report::{
    best_by_aicc, best_by_bic, build_report, evaluation_text, metadata, model_table, report_csv,
    report_text, ring_section, ring_text, to_json, EvaluationDocument, SortKey,
};

/// Command failures, split by exit code: input problems exit 1, internal
/// invariant violations exit 2.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.message())
    }
}

impl std::error::Error for CliError {}

pub const BUILTIN_DATASET_LABEL: &str = "canonical";
pub const BUILTIN_FREQUENCIES_LABEL: &str = "built-in WALS dominant-order counts";

/// Loads a pair-count dataset, defaulting to the built-in table.
pub fn load_dataset(path: Option<&Path>) -> Result<(PairCountTable, String), CliError> {
    match path {
        None => Ok((canonical_dataset(), BUILTIN_DATASET_LABEL.to_string())),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display())))?;
            let table = parse_pair_counts(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            Ok((table, p.display().to_string()))
        }
    }
}

/// Loads dominant-order frequencies, defaulting to the shipped WALS counts.
pub fn load_frequencies(path: Option<&Path>) -> Result<(DominantFrequencies, String), CliError> {
    match path {
        None => Ok((
            wals_dominant_frequencies(),
            BUILTIN_FREQUENCIES_LABEL.to_string(),
        )),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display())))?;
            let freqs = parse_dominant_frequencies(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            Ok((freqs, p.display().to_string()))
        }
    }
}

/// Output format of `evaluate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvaluateFormat {
    Text,
    Json,
}

/// Output format of `report`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
    Json,
}

/// `evaluate`: fit the models and print the comparison table.
pub fn cmd_evaluate(
    dataset: Option<&Path>,
    frequencies: Option<&Path>,
    format: EvaluateFormat,
    sort: SortKey,
    include_reduced: bool,
) -> Result<String, CliError> {
    let (data, dataset_label) = load_dataset(dataset)?;
    let (freqs, frequencies_label) = load_frequencies(frequencies)?;
    let evaluations = evaluate_all_extended(&data, &freqs, include_reduced)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let doc = EvaluationDocument {
        metadata: metadata(&dataset_label, &frequencies_label, &data, sort, None),
        models: model_table(&evaluations, sort),
        best_by_aicc: best_by_aicc(&evaluations),
        best_by_bic: best_by_bic(&evaluations),
    };
    match format {
        EvaluateFormat::Text => Ok(evaluation_text(&doc)),
        EvaluateFormat::Json => to_json(&doc),
    }
}

/// `fit`: plug-in estimates for one family, with an optional grid-search
/// verification pass.
pub fn cmd_fit(
    family_name: &str,
    dataset: Option<&Path>,
    grid_resolution: Option<f64>,
) -> Result<String, CliError> {
    let family: ModelFamily = family_name.parse().map_err(CliError::Input)?;
    let (data, dataset_label) = load_dataset(dataset)?;

    let mut out = String::new();
    let _ = writeln!(out, "family: {family}");
    let _ = writeln!(
        out,
        "dataset: {dataset_label} (m = {}, n = {})",
        data.language_total(),
        data.sample_size()
    );

    let plugin = match plugin_fit(family, &data) {
        Ok(fit) => {
            let model = fit.build().map_err(|e| CliError::Input(e.to_string()))?;
            let ll = log_likelihood(&model, &data).map_err(|e| CliError::Input(e.to_string()))?;
            let rendered: Vec<String> = model
                .params()
                .iter()
                .map(|(name, value)| format!("{name} = {value:.2}"))
                .collect();
            let _ = writeln!(out, "plug-in estimates: {}", rendered.join(", "));
            let _ = writeln!(out, "log-likelihood: {:.1}", ll.value);
            Some(ll.value)
        }
        Err(e) if grid_resolution.is_some() => {
            let _ = writeln!(out, "plug-in estimates: none ({e})");
            None
        }
        Err(e) => {
            return Err(CliError::Input(format!(
                "{e}; pass --grid <resolution> to fit this family by grid search"
            )));
        }
    };

    if let Some(resolution) = grid_resolution {
        let report =
            grid_search(family, &data, resolution).map_err(|e| CliError::Input(e.to_string()))?;
        let rendered: Vec<String> = report
            .best_params
            .iter()
            .map(|v| format!("{v:.4}"))
            .collect();
        let _ = writeln!(
            out,
            "grid search: resolution {resolution}, {} points evaluated",
            report.points_evaluated
        );
        let _ = writeln!(
            out,
            "best grid point: ({}) with log-likelihood {:.4}",
            rendered.join(", "),
            report.best_log_likelihood
        );
        match report.improved_over_plugin {
            Some(false) => {
                let _ = writeln!(out, "verdict: no improvement over plug-in");
            }
            Some(true) => {
                let gain = report.best_log_likelihood - plugin.unwrap_or(f64::NEG_INFINITY);
                let _ = writeln!(
                    out,
                    "verdict: grid improves on plug-in by {gain:.4} in log-likelihood"
                );
            }
            None => {
                let _ = writeln!(out, "verdict: no plug-in baseline for this family");
            }
        }
    }
    Ok(out)
}

/// `ring`: the permutation ring, both distance measures and their
/// correlation.
pub fn cmd_ring() -> Result<String, CliError> {
    Ok(ring_text(&ring_section()?))
}

/// `report`: the full analysis bundle in the chosen format.
pub fn cmd_report(
    dataset: Option<&Path>,
    frequencies: Option<&Path>,
    format: ReportFormat,
    sort: SortKey,
    with_timestamp: bool,
) -> Result<String, CliError> {
    let (data, dataset_label) = load_dataset(dataset)?;
    let (freqs, frequencies_label) = load_frequencies(frequencies)?;
    let timestamp = if with_timestamp {
        Some(
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_err(|e| CliError::Internal(format!("system clock error: {e}")))?
                .as_secs(),
        )
    } else {
        None
    };
    let doc = build_report(
        &data,
        &dataset_label,
        &freqs,
        &frequencies_label,
        sort,
        timestamp,
    )?;
    match format {
        ReportFormat::Text => Ok(report_text(&doc)),
        ReportFormat::Csv => Ok(report_csv(&doc)),
        ReportFormat::Json => to_json(&doc),
    }
}
