//! Likelihoods, information criteria, parameter estimation and model
//! comparison.
//!
//! Parameters are estimated by plug-in proportions; brute-force grid search
//! is available as an independent verification that the plug-in fits cannot
//! be improved at a given resolution. All log-likelihoods use natural logs.

use crate::data::PairCountTable;
use crate::models::{
    model0, model1, model1_trunc_exp, model2, model2_reduced, model3, model4,
    trunc_exp_class_probabilities, ConditionalModel, DominantFrequencies, Model1Params,
    Model2Params, Model3Params, ModelError,
};
use crate::order::{Constituent, Order};

/// Default cap on the number of grid points a search may visit.
pub const DEFAULT_GRID_BUDGET: u64 = 1_000_000_000;

/// Grid resolution used for the truncated-exponential fit inside
/// [`evaluate_all_extended`].
const TRUNC_EXP_RESOLUTION: f64 = 1e-4;
/// Search interval for the truncated-exponential decay rate.
const TRUNC_EXP_RANGE: (f64, f64) = (-10.0, 10.0);

/// Errors from estimation and scoring.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InferenceError {
    #[error("dataset contains no languages")]
    EmptyData,
    #[error("sample size {n} is too small for k = {k} parameters (need n > k + 1)")]
    SampleTooSmall { n: u64, k: usize },
    #[error("sample size must be at least 1")]
    ZeroSampleSize,
    #[error("parameter count must be at least 1")]
    ZeroParameters,
    #[error("family {family} has no plug-in estimator")]
    NoPluginEstimator { family: ModelFamily },
    #[error("family {family} is not supported by grid search (more than 3 free parameters)")]
    GridUnsupported { family: ModelFamily },
    #[error("grid resolution {resolution} must be positive and at most 1")]
    InvalidResolution { resolution: f64 },
    #[error("grid of {points} points exceeds the budget of {budget}")]
    GridBudgetExceeded { points: u128, budget: u64 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A fittable model family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelFamily {
    Model1,
    Model2,
    Model3,
    Model2Reduced,
    Model1TruncExp,
}

impl ModelFamily {
    pub const ALL: [ModelFamily; 5] = [
        ModelFamily::Model1,
        ModelFamily::Model2,
        ModelFamily::Model3,
        ModelFamily::Model2Reduced,
        ModelFamily::Model1TruncExp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelFamily::Model1 => "model1",
            ModelFamily::Model2 => "model2",
            ModelFamily::Model3 => "model3",
            ModelFamily::Model2Reduced => "model2_reduced",
            ModelFamily::Model1TruncExp => "model1_trunc_exp",
        }
    }
}

impl std::fmt::Display for ModelFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ModelFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ModelFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown model family `{s}` (expected one of model1, model2, model3, \
                     model2_reduced, model1_trunc_exp)"
                )
            })
    }
}

/// Log-likelihood of a model on a pair-count table, with the observed pairs
/// the model assigns zero probability (if any).
#[derive(Debug, Clone, PartialEq)]
pub struct LogLikelihood {
    /// Natural-log likelihood; negative infinity when conflicted.
    pub value: f64,
    /// Directed pairs (x, y) observed in the data with p(y|x) = 0.
    pub zero_probability_pairs: Vec<(Order, Order)>,
}

impl LogLikelihood {
    /// True when the data contains a pair the model rules out.
    pub fn is_conflicted(&self) -> bool {
        !self.zero_probability_pairs.is_empty()
    }
}

/// L = sum over ordered pairs of m(x,y) ln p(y|x); every language
/// contributes both directions of its pair.
pub fn log_likelihood(
    model: &ConditionalModel,
    data: &PairCountTable,
) -> Result<LogLikelihood, InferenceError> {
    if data.language_total() == 0 {
        return Err(InferenceError::EmptyData);
    }
    let mut value = 0.0;
    let mut conflicts = Vec::new();
    for (x, y, m) in data.rows() {
        if m == 0 {
            continue;
        }
        for (from, to) in [(x, y), (y, x)] {
            let p = model.prob(from, to);
            if p == 0.0 {
                conflicts.push((from, to));
            } else {
                value += m as f64 * p.ln();
            }
        }
    }
    if !conflicts.is_empty() {
        value = f64::NEG_INFINITY;
    }
    Ok(LogLikelihood {
        value,
        zero_probability_pairs: conflicts,
    })
}

/// Corrected Akaike information criterion: -2L + 2kn/(n - k - 1).
pub fn aic_c(log_lik: f64, k: usize, n: u64) -> Result<f64, InferenceError> {
    if n <= k as u64 + 1 {
        return Err(InferenceError::SampleTooSmall { n, k });
    }
    let (k, n) = (k as f64, n as f64);
    Ok(-2.0 * log_lik + 2.0 * k * n / (n - k - 1.0))
}

/// Bayesian information criterion: -2L + k ln n.
pub fn bic(log_lik: f64, k: usize, n: u64) -> Result<f64, InferenceError> {
    if n == 0 {
        return Err(InferenceError::ZeroSampleSize);
    }
    Ok(-2.0 * log_lik + k as f64 * (n as f64).ln())
}

/// Per-parameter penalty rates of the two criteria.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyComparison {
    /// 2 / (n - k - 1), the per-parameter rate of the AICc penalty.
    pub aicc_rate: f64,
    /// ln n, the per-parameter rate of the BIC penalty.
    pub bic_rate: f64,
    /// Whether BIC penalizes each parameter harder. Holds whenever n >= 8.
    pub bic_dominates: bool,
}

/// Compares the per-parameter penalty rates of BIC and AICc.
pub fn penalty_comparison(k: usize, n: u64) -> Result<PenaltyComparison, InferenceError> {
    if k == 0 {
        return Err(InferenceError::ZeroParameters);
    }
    if n <= k as u64 + 1 {
        return Err(InferenceError::SampleTooSmall { n, k });
    }
    let aicc_rate = 2.0 / (n as f64 - k as f64 - 1.0);
    let bic_rate = (n as f64).ln();
    Ok(PenaltyComparison {
        aicc_rate,
        bic_rate,
        bic_dominates: bic_rate > aicc_rate,
    })
}

/// Plug-in parameter estimates: every probability parameter replaced by the
/// corresponding sample proportion.
#[derive(Debug, Clone, PartialEq)]
pub enum PluginFit {
    Model1(Model1Params),
    Model2(Model2Params),
    Model3(Model3Params),
    Model2Reduced { p_sv: f64, p_so: f64 },
}

impl PluginFit {
    /// Fitted parameter values in the family's display order.
    pub fn values(&self) -> Vec<f64> {
        match self {
            PluginFit::Model1(p) => vec![p.pi1(), p.pi2()],
            PluginFit::Model2(p) => vec![p.p_sv(), p.p_so(), p.p_ov()],
            PluginFit::Model3(p) => p.values().to_vec(),
            PluginFit::Model2Reduced { p_sv, p_so } => vec![*p_sv, *p_so],
        }
    }

    /// Builds the conditional model at the fitted parameters.
    pub fn build(&self) -> Result<ConditionalModel, ModelError> {
        match self {
            PluginFit::Model1(p) => Ok(model1(*p)),
            PluginFit::Model2(p) => model2(p),
            PluginFit::Model3(p) => model3(p),
            PluginFit::Model2Reduced { p_sv, p_so } => model2_reduced(*p_sv, *p_so),
        }
    }
}

fn places_before(order: Order, first: Constituent, second: Constituent) -> bool {
    order.position(first) < order.position(second)
}

/// Fraction of the n order slots placing `first` before `second`.
fn slot_proportion(data: &PairCountTable, first: Constituent, second: Constituent) -> f64 {
    let slots = data.slot_counts();
    let favorable: u64 = Order::ALL
        .iter()
        .filter(|&&o| places_before(o, first, second))
        .map(|&o| slots[o.index()])
        .sum();
    favorable as f64 / data.sample_size() as f64
}

/// Estimates a family's parameters by plug-in proportions.
pub fn plugin_fit(family: ModelFamily, data: &PairCountTable) -> Result<PluginFit, InferenceError> {
    if data.language_total() == 0 {
        return Err(InferenceError::EmptyData);
    }
    match family {
        ModelFamily::Model1 => {
            let m = data.language_total() as f64;
            let classes = data.distance_class_totals();
            let params = Model1Params::new(classes[0] as f64 / m, classes[1] as f64 / m)?;
            Ok(PluginFit::Model1(params))
        }
        ModelFamily::Model2 => {
            let params = Model2Params::new(
                slot_proportion(data, Constituent::S, Constituent::V),
                slot_proportion(data, Constituent::S, Constituent::O),
                slot_proportion(data, Constituent::O, Constituent::V),
            )?;
            Ok(PluginFit::Model2(params))
        }
        ModelFamily::Model3 => {
            let n = data.sample_size() as f64;
            let slots = data.slot_counts();
            let mut pi = [0.0; 5];
            for i in 0..5 {
                pi[i] = slots[i] as f64 / n;
            }
            Ok(PluginFit::Model3(Model3Params::new(pi)?))
        }
        ModelFamily::Model2Reduced => Ok(PluginFit::Model2Reduced {
            p_sv: slot_proportion(data, Constituent::S, Constituent::V),
            p_so: slot_proportion(data, Constituent::S, Constituent::O),
        }),
        ModelFamily::Model1TruncExp => Err(InferenceError::NoPluginEstimator { family }),
    }
}

/// Result of a brute-force likelihood maximization over a parameter grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSearchReport {
    pub family: ModelFamily,
    pub resolution: f64,
    /// Arg-max parameter vector in the family's display order; ties broken
    /// toward the lexicographically smallest vector.
    pub best_params: Vec<f64>,
    pub best_log_likelihood: f64,
    pub points_evaluated: u64,
    /// Log-likelihood at the plug-in fit, when the family has one.
    pub plugin_log_likelihood: Option<f64>,
    /// True when the grid beat the plug-in fit by more than 1e-6;
    /// `None` for families without a plug-in estimator.
    pub improved_over_plugin: Option<bool>,
}

/// Aggregated per-direction observations used by the likelihood kernels.
struct GridData {
    /// Languages at ring distance 1, 2, 3.
    class_totals: [f64; 3],
    /// Observed unordered pairs with positive counts, as order indices.
    pairs: Vec<(usize, usize, f64)>,
    /// Orders appearing in any observed pair.
    involved: Vec<usize>,
}

impl GridData {
    fn new(data: &PairCountTable) -> Self {
        let totals = data.distance_class_totals();
        let mut pairs = Vec::new();
        let mut involved_mask = [false; 6];
        for (x, y, m) in data.rows() {
            if m > 0 {
                pairs.push((x.index(), y.index(), m as f64));
                involved_mask[x.index()] = true;
                involved_mask[y.index()] = true;
            }
        }
        GridData {
            class_totals: totals.map(|t| t as f64),
            pairs,
            involved: (0..6).filter(|&i| involved_mask[i]).collect(),
        }
    }

    /// L for a distance-class model: 2 sum_d n_d ln(pi_d / k_d).
    fn class_log_likelihood(&self, pi: [f64; 3]) -> f64 {
        const SHARES: [f64; 3] = [2.0, 2.0, 1.0];
        let mut value = 0.0;
        for d in 0..3 {
            if self.class_totals[d] > 0.0 {
                value += 2.0 * self.class_totals[d] * (pi[d] / SHARES[d]).ln();
            }
        }
        value
    }

    /// L for a prior-proportional model with unnormalized weights `w`.
    fn prior_log_likelihood(&self, weights: &[f64; 6]) -> Option<f64> {
        let total: f64 = weights.iter().sum();
        if !total.is_finite() || total <= 0.0 {
            return None;
        }
        let mut ln_q = [0.0; 6];
        let mut ln_rest = [0.0; 6];
        for &i in &self.involved {
            let q = weights[i] / total;
            if q >= 1.0 {
                return None;
            }
            ln_q[i] = q.ln();
            ln_rest[i] = (1.0 - q).ln();
        }
        let mut value = 0.0;
        for &(x, y, m) in &self.pairs {
            value += m * (ln_q[y] - ln_rest[x] + ln_q[x] - ln_rest[y]);
        }
        Some(value)
    }
}

struct ArgMax {
    best: Option<(f64, Vec<f64>)>,
    points: u64,
}

impl ArgMax {
    fn new() -> Self {
        ArgMax {
            best: None,
            points: 0,
        }
    }

    /// Points are offered in lexicographic parameter order, so keeping the
    /// first strict maximum implements the lexicographic tie-break.
    fn offer(&mut self, log_lik: f64, params: &[f64]) {
        self.points += 1;
        if log_lik.is_nan() {
            return;
        }
        let better = match &self.best {
            None => true,
            Some((best, _)) => log_lik > *best,
        };
        if better {
            self.best = Some((log_lik, params.to_vec()));
        }
    }
}

fn check_budget(points: u128, budget: u64) -> Result<(), InferenceError> {
    if points > budget as u128 {
        return Err(InferenceError::GridBudgetExceeded { points, budget });
    }
    Ok(())
}

/// Brute-force grid search with the default point budget.
pub fn grid_search(
    family: ModelFamily,
    data: &PairCountTable,
    resolution: f64,
) -> Result<GridSearchReport, InferenceError> {
    grid_search_with_budget(family, data, resolution, DEFAULT_GRID_BUDGET)
}

/// Brute-force grid search over the family's valid parameter region.
///
/// Model 1 walks the 2-simplex, model 2 the unit cube, the reduced model 2
/// the unit square, and the truncated-exponential variant the interval
/// [-10, 10]. Grids whose size exceeds `budget` points are rejected up
/// front.
pub fn grid_search_with_budget(
    family: ModelFamily,
    data: &PairCountTable,
    resolution: f64,
    budget: u64,
) -> Result<GridSearchReport, InferenceError> {
    if !(resolution > 0.0 && resolution <= 1.0) {
        return Err(InferenceError::InvalidResolution { resolution });
    }
    if data.language_total() == 0 {
        return Err(InferenceError::EmptyData);
    }
    let grid = GridData::new(data);
    let steps = (1.0 / resolution).round() as u64;
    let value_of = |i: u64| (i as f64 * resolution).min(1.0);

    let mut argmax = ArgMax::new();
    match family {
        ModelFamily::Model1 => {
            let points = ((steps as u128 + 1) * (steps as u128 + 2)) / 2;
            check_budget(points, budget)?;
            for i in 0..=steps {
                let pi1 = value_of(i);
                for j in 0..=(steps - i) {
                    let pi2 = value_of(j);
                    let pi3 = value_of(steps - i - j);
                    let value = grid.class_log_likelihood([pi1, pi2, pi3]);
                    argmax.offer(value, &[pi1, pi2]);
                }
            }
        }
        ModelFamily::Model2 => {
            let side = steps as u128 + 1;
            check_budget(side * side * side, budget)?;
            for i in 0..=steps {
                let p_sv = value_of(i);
                for j in 0..=steps {
                    let p_so = value_of(j);
                    for l in 0..=steps {
                        let p_ov = value_of(l);
                        let weights = model2_weights(p_sv, p_so, p_ov);
                        if let Some(value) = grid.prior_log_likelihood(&weights) {
                            argmax.offer(value, &[p_sv, p_so, p_ov]);
                        }
                    }
                }
            }
        }
        ModelFamily::Model2Reduced => {
            let side = steps as u128 + 1;
            check_budget(side * side, budget)?;
            for i in 0..=steps {
                let p_sv = value_of(i);
                for j in 0..=steps {
                    let p_so = value_of(j);
                    let weights = model2_weights(p_sv, p_so, 0.5);
                    if let Some(value) = grid.prior_log_likelihood(&weights) {
                        argmax.offer(value, &[p_sv, p_so]);
                    }
                }
            }
        }
        ModelFamily::Model1TruncExp => {
            let (lo, hi) = TRUNC_EXP_RANGE;
            let count = ((hi - lo) / resolution).round() as u64;
            check_budget(count as u128 + 1, budget)?;
            for i in 0..=count {
                let a = lo + i as f64 * resolution;
                let value = grid.class_log_likelihood(trunc_exp_class_probabilities(a));
                argmax.offer(value, &[a]);
            }
        }
        ModelFamily::Model3 => {
            return Err(InferenceError::GridUnsupported { family });
        }
    }

    let (best_log_likelihood, best_params) = argmax
        .best
        .expect("every supported grid contains at least one point");

    let plugin_log_likelihood = match plugin_fit(family, data) {
        Ok(fit) => Some(log_likelihood(&fit.build()?, data)?.value),
        Err(InferenceError::NoPluginEstimator { .. }) => None,
        Err(e) => return Err(e),
    };
    let improved_over_plugin =
        plugin_log_likelihood.map(|plugin| best_log_likelihood > plugin + 1e-6);

    Ok(GridSearchReport {
        family,
        resolution,
        best_params,
        best_log_likelihood,
        points_evaluated: argmax.points,
        plugin_log_likelihood,
        improved_over_plugin,
    })
}

fn model2_weights(p_sv: f64, p_so: f64, p_ov: f64) -> [f64; 6] {
    [
        p_sv * p_so * p_ov,
        p_sv * p_so * (1.0 - p_ov),
        (1.0 - p_sv) * p_so * (1.0 - p_ov),
        (1.0 - p_sv) * (1.0 - p_so) * (1.0 - p_ov),
        (1.0 - p_sv) * (1.0 - p_so) * p_ov,
        p_sv * (1.0 - p_so) * p_ov,
    ]
}

/// Scores of one model on one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelEvaluation {
    pub name: &'static str,
    pub log_likelihood: f64,
    pub k: usize,
    pub n: u64,
    pub aic_c: f64,
    pub bic: f64,
    pub params: Vec<(&'static str, f64)>,
    /// True when the data contains a pair the model assigns probability 0.
    pub conflicted: bool,
}

fn evaluate_model(
    model: &ConditionalModel,
    data: &PairCountTable,
) -> Result<ModelEvaluation, InferenceError> {
    let n = data.sample_size();
    let ll = log_likelihood(model, data)?;
    Ok(ModelEvaluation {
        name: model.name(),
        log_likelihood: ll.value,
        k: model.k(),
        n,
        aic_c: aic_c(ll.value, model.k(), n)?,
        bic: bic(ll.value, model.k(), n)?,
        params: model.params().to_vec(),
        conflicted: ll.is_conflicted(),
    })
}

/// Fits and scores models 0-4, sorted by BIC (best first).
pub fn evaluate_all(
    data: &PairCountTable,
    freqs: &DominantFrequencies,
) -> Result<Vec<ModelEvaluation>, InferenceError> {
    evaluate_all_extended(data, freqs, false)
}

/// Like [`evaluate_all`], optionally adding the truncated-exponential
/// variant of model 1 (fitted by a grid search at resolution 1e-4) and the
/// reduced model 2.
pub fn evaluate_all_extended(
    data: &PairCountTable,
    freqs: &DominantFrequencies,
    include_reduced: bool,
) -> Result<Vec<ModelEvaluation>, InferenceError> {
    if data.language_total() == 0 {
        return Err(InferenceError::EmptyData);
    }
    let mut models = vec![model0()];
    if let PluginFit::Model1(p) = plugin_fit(ModelFamily::Model1, data)? {
        models.push(model1(p));
    }
    if let PluginFit::Model2(p) = plugin_fit(ModelFamily::Model2, data)? {
        models.push(model2(&p)?);
    }
    if let PluginFit::Model3(p) = plugin_fit(ModelFamily::Model3, data)? {
        models.push(model3(&p)?);
    }
    models.push(model4(freqs)?);
    if include_reduced {
        let search = grid_search(ModelFamily::Model1TruncExp, data, TRUNC_EXP_RESOLUTION)?;
        models.push(model1_trunc_exp(search.best_params[0]));
        if let PluginFit::Model2Reduced { p_sv, p_so } =
            plugin_fit(ModelFamily::Model2Reduced, data)?
        {
            models.push(model2_reduced(p_sv, p_so)?);
        }
    }

    let mut evaluations = models
        .iter()
        .map(|m| evaluate_model(m, data))
        .collect::<Result<Vec<_>, _>>()?;
    evaluations.sort_by(|a, b| a.bic.total_cmp(&b.bic));
    Ok(evaluations)
}
