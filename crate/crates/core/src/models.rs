//! The conditional-probability models of partner choice.
//!
//! Every model assigns p(y|x): the probability that a language whose pair of
//! primary alternating orders already contains `x` has `y` as the other
//! member. Five models are provided, plus two reduced variants:
//!
//! * model 0 — uniform choice among the five partners (no parameters);
//! * model 1 — probability decays with ring distance, two parameters;
//! * model 2 — partner drawn in proportion to a prior built from the three
//!   pairwise order preferences p(SV), p(SO), p(OV);
//! * model 3 — partner drawn in proportion to a free six-way prior
//!   (five parameters, the sixth probability is the complement);
//! * model 4 — like model 3 but the prior is fixed to the relative
//!   frequencies of dominant orders (no parameters);
//! * a one-parameter variant of model 1 with exponentially decaying
//!   distance probabilities, and a two-parameter variant of model 2 with
//!   p(OV) pinned to 1/2.

use crate::order::Order;
use crate::ring::{neighbor_count, ring_distance};

/// Tolerance for probability sums (priors, rows of a conditional table).
pub const SUM_TOLERANCE: f64 = 1e-9;
/// Slack accepted on individual probability inputs before rejection.
pub const PROBABILITY_SLACK: f64 = 1e-12;

/// Errors from model construction.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("parameter {name} = {value} is not a probability")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("parameters {names} sum to {sum}, above 1")]
    SumAboveOne { names: &'static str, sum: f64 },
    #[error("normalization constant is undefined: denominator {denominator}")]
    DegenerateNormalizer { denominator: f64 },
    #[error("prior puts all mass on {order} (q = {q}); conditioning on it is undefined")]
    DegeneratePrior { order: Order, q: f64 },
    #[error("prior over the six orders sums to {sum}, not 1")]
    UnnormalizedPrior { sum: f64 },
    #[error("dominant-order frequencies are all zero")]
    AllZeroFrequencies,
    #[error("conditional probabilities for x = {x} sum to {sum}, not 1")]
    UnnormalizedRow { x: Order, sum: f64 },
}

fn checked_probability(name: &'static str, value: f64) -> Result<f64, ModelError> {
    if !value.is_finite() || !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&value) {
        return Err(ModelError::InvalidProbability { name, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

/// A probability distribution over the six orders.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorVector {
    q: [f64; 6],
}

impl PriorVector {
    /// Validates that each entry is a probability and the six sum to 1.
    pub fn new(q: [f64; 6]) -> Result<Self, ModelError> {
        for (order, &v) in Order::ALL.iter().zip(&q) {
            if !v.is_finite() || !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&v) {
                return Err(ModelError::InvalidProbability {
                    name: order_param_name(*order),
                    value: v,
                });
            }
        }
        let sum: f64 = q.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(ModelError::UnnormalizedPrior { sum });
        }
        Ok(PriorVector {
            q: q.map(|v| v.clamp(0.0, 1.0)),
        })
    }

    pub fn uniform() -> Self {
        PriorVector { q: [1.0 / 6.0; 6] }
    }

    pub fn get(&self, y: Order) -> f64 {
        self.q[y.index()]
    }

    pub fn values(&self) -> [f64; 6] {
        self.q
    }
}

fn order_param_name(order: Order) -> &'static str {
    match order {
        Order::SOV => "qSOV",
        Order::SVO => "qSVO",
        Order::VSO => "qVSO",
        Order::VOS => "qVOS",
        Order::OVS => "qOVS",
        Order::OSV => "qOSV",
    }
}

/// Parameters of model 1: the probabilities of choosing a partner at ring
/// distance 1 and 2. The distance-3 probability is the complement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model1Params {
    pi1: f64,
    pi2: f64,
}

impl Model1Params {
    pub fn new(pi1: f64, pi2: f64) -> Result<Self, ModelError> {
        let pi1 = checked_probability("pi1", pi1)?;
        let pi2 = checked_probability("pi2", pi2)?;
        if pi1 + pi2 > 1.0 + SUM_TOLERANCE {
            return Err(ModelError::SumAboveOne {
                names: "pi1 + pi2",
                sum: pi1 + pi2,
            });
        }
        Ok(Model1Params { pi1, pi2 })
    }

    pub fn pi1(&self) -> f64 {
        self.pi1
    }

    pub fn pi2(&self) -> f64 {
        self.pi2
    }

    /// Derived probability of a distance-3 partner.
    pub fn pi3(&self) -> f64 {
        (1.0 - self.pi1 - self.pi2).max(0.0)
    }

    /// Probability assigned to distance class `d` in 1..=3.
    pub fn class_probability(&self, d: u8) -> f64 {
        match d {
            1 => self.pi1,
            2 => self.pi2,
            3 => self.pi3(),
            _ => 0.0,
        }
    }
}

/// Parameters of model 2: probabilities of placing S before V, S before O
/// and O before V (not necessarily adjacently).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model2Params {
    p_sv: f64,
    p_so: f64,
    p_ov: f64,
}

impl Model2Params {
    pub fn new(p_sv: f64, p_so: f64, p_ov: f64) -> Result<Self, ModelError> {
        Ok(Model2Params {
            p_sv: checked_probability("pSV", p_sv)?,
            p_so: checked_probability("pSO", p_so)?,
            p_ov: checked_probability("pOV", p_ov)?,
        })
    }

    pub fn p_sv(&self) -> f64 {
        self.p_sv
    }

    pub fn p_so(&self) -> f64 {
        self.p_so
    }

    pub fn p_ov(&self) -> f64 {
        self.p_ov
    }

    /// Unnormalized prior weight of each order: the product of its three
    /// pairwise placement probabilities.
    pub fn weight(&self, y: Order) -> f64 {
        let (sv, so, ov) = (self.p_sv, self.p_so, self.p_ov);
        match y {
            Order::SOV => sv * so * ov,
            Order::SVO => sv * so * (1.0 - ov),
            Order::VSO => (1.0 - sv) * so * (1.0 - ov),
            Order::VOS => (1.0 - sv) * (1.0 - so) * (1.0 - ov),
            Order::OVS => (1.0 - sv) * (1.0 - so) * ov,
            Order::OSV => sv * (1.0 - so) * ov,
        }
    }

    /// Closed-form normalization constant c = 1 / sum of the six weights.
    pub fn normalizer(&self) -> Result<f64, ModelError> {
        let (sv, so, ov) = (self.p_sv, self.p_so, self.p_ov);
        let denominator = sv * (ov + so - 1.0) + 1.0 - so * ov;
        if !denominator.is_finite() || denominator <= 0.0 {
            return Err(ModelError::DegenerateNormalizer { denominator });
        }
        Ok(1.0 / denominator)
    }
}

/// Parameters of model 3: free prior probabilities for the first five
/// orders; q(OSV) is the complement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model3Params {
    pi: [f64; 5],
}

impl Model3Params {
    /// `pi` holds q(SOV), q(SVO), q(VSO), q(VOS), q(OVS).
    pub fn new(pi: [f64; 5]) -> Result<Self, ModelError> {
        let names = ["qSOV", "qSVO", "qVSO", "qVOS", "qOVS"];
        let mut checked = [0.0; 5];
        for i in 0..5 {
            checked[i] = checked_probability(names[i], pi[i])?;
        }
        let sum: f64 = checked.iter().sum();
        if sum > 1.0 + SUM_TOLERANCE {
            return Err(ModelError::SumAboveOne {
                names: "the five prior probabilities",
                sum,
            });
        }
        Ok(Model3Params { pi: checked })
    }

    pub fn values(&self) -> [f64; 5] {
        self.pi
    }

    /// Derived complement q(OSV).
    pub fn q_osv(&self) -> f64 {
        (1.0 - self.pi.iter().sum::<f64>()).max(0.0)
    }

    pub fn prior(&self) -> PriorVector {
        let mut q = [0.0; 6];
        q[..5].copy_from_slice(&self.pi);
        q[5] = self.q_osv();
        PriorVector { q }
    }
}

/// Counts of languages where each order is the dominant one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DominantFrequencies {
    counts: [u64; 6],
}

impl DominantFrequencies {
    pub fn new(counts: [u64; 6]) -> Result<Self, ModelError> {
        if counts.iter().all(|&c| c == 0) {
            return Err(ModelError::AllZeroFrequencies);
        }
        Ok(DominantFrequencies { counts })
    }

    pub fn counts(&self) -> [u64; 6] {
        self.counts
    }

    /// The counts normalized into a prior.
    pub fn prior(&self) -> PriorVector {
        let total: u64 = self.counts.iter().sum();
        PriorVector {
            q: self.counts.map(|c| c as f64 / total as f64),
        }
    }
}

/// A named model with its full table of conditional probabilities.
///
/// Instances are immutable after construction and validated to satisfy
/// p(x|x) = 0 and, for every x, a unit row sum over the five partners.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalModel {
    name: &'static str,
    k: usize,
    probs: [[f64; 6]; 6],
    params: Vec<(&'static str, f64)>,
}

impl ConditionalModel {
    fn from_table(
        name: &'static str,
        k: usize,
        probs: [[f64; 6]; 6],
        params: Vec<(&'static str, f64)>,
    ) -> Result<Self, ModelError> {
        for x in Order::ALL {
            debug_assert_eq!(probs[x.index()][x.index()], 0.0);
            let sum: f64 = probs[x.index()].iter().sum();
            if (sum - 1.0).abs() > SUM_TOLERANCE {
                return Err(ModelError::UnnormalizedRow { x, sum });
            }
        }
        Ok(ConditionalModel {
            name,
            k,
            probs,
            params,
        })
    }

    fn from_prior(
        name: &'static str,
        k: usize,
        prior: &PriorVector,
        params: Vec<(&'static str, f64)>,
    ) -> Result<Self, ModelError> {
        let mut probs = [[0.0; 6]; 6];
        for x in Order::ALL {
            let qx = prior.get(x);
            if qx > 1.0 - PROBABILITY_SLACK {
                return Err(ModelError::DegeneratePrior { order: x, q: qx });
            }
            for y in Order::ALL {
                if y != x {
                    probs[x.index()][y.index()] = prior.get(y) / (1.0 - qx);
                }
            }
        }
        Self::from_table(name, k, probs, params)
    }

    /// p(y|x): the probability of partner `y` given `x`.
    pub fn prob(&self, x: Order, y: Order) -> f64 {
        self.probs[x.index()][y.index()]
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    /// Number of free parameters.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Fitted parameter values for display, in a fixed order.
    pub fn params(&self) -> &[(&'static str, f64)] {
        &self.params
    }
}

/// Model 0: the null model, p(y|x) = 1/5 for every partner.
pub fn model0() -> ConditionalModel {
    let mut probs = [[0.0; 6]; 6];
    for x in Order::ALL {
        for y in Order::ALL {
            if y != x {
                probs[x.index()][y.index()] = 0.2;
            }
        }
    }
    ConditionalModel::from_table("model0", 0, probs, Vec::new()).expect("uniform rows sum to 1")
}

/// Model 1: p(y|x) = p(d(x,y)) / k(d(x,y)), the ring-distance model.
pub fn model1(params: Model1Params) -> ConditionalModel {
    let mut probs = [[0.0; 6]; 6];
    for x in Order::ALL {
        for y in Order::ALL {
            if y != x {
                let d = ring_distance(x, y);
                let share = neighbor_count(d).expect("distinct orders sit at distance 1..=3");
                probs[x.index()][y.index()] = params.class_probability(d) / share as f64;
            }
        }
    }
    ConditionalModel::from_table(
        "model1",
        2,
        probs,
        vec![("pi1", params.pi1()), ("pi2", params.pi2())],
    )
    .expect("class probabilities sum to 1")
}

/// The prior q(y) of model 2: normalized products of pairwise preferences.
pub fn model2_prior(params: &Model2Params) -> Result<PriorVector, ModelError> {
    let c = params.normalizer()?;
    let mut q = [0.0; 6];
    for y in Order::ALL {
        q[y.index()] = c * params.weight(y);
    }
    let sum: f64 = q.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(ModelError::UnnormalizedPrior { sum });
    }
    Ok(PriorVector { q })
}

/// Model 2: partner proportional to the two-way-typology prior; three
/// parameters.
pub fn model2(params: &Model2Params) -> Result<ConditionalModel, ModelError> {
    let prior = model2_prior(params)?;
    ConditionalModel::from_prior(
        "model2",
        3,
        &prior,
        vec![
            ("pSV", params.p_sv()),
            ("pSO", params.p_so()),
            ("pOV", params.p_ov()),
        ],
    )
}

/// Model 3: partner proportional to a free six-way prior; five parameters.
pub fn model3(params: &Model3Params) -> Result<ConditionalModel, ModelError> {
    let prior = params.prior();
    let pi = params.values();
    ConditionalModel::from_prior(
        "model3",
        5,
        &prior,
        vec![
            ("qSOV", pi[0]),
            ("qSVO", pi[1]),
            ("qVSO", pi[2]),
            ("qVOS", pi[3]),
            ("qOVS", pi[4]),
        ],
    )
}

/// Model 4: partner proportional to dominant-order frequencies; the
/// frequency vector is input data, not a parameter, so k = 0.
pub fn model4(freqs: &DominantFrequencies) -> Result<ConditionalModel, ModelError> {
    ConditionalModel::from_prior("model4", 0, &freqs.prior(), Vec::new())
}

/// One-parameter variant of model 1: distance-class probabilities follow a
/// right-truncated exponential, pi(d) proportional to exp(-a d) on d in 1..=3.
pub fn model1_trunc_exp(a: f64) -> ConditionalModel {
    assert!(a.is_finite(), "decay rate must be finite");
    let pi = trunc_exp_class_probabilities(a);
    let mut probs = [[0.0; 6]; 6];
    for x in Order::ALL {
        for y in Order::ALL {
            if y != x {
                let d = ring_distance(x, y);
                let share = neighbor_count(d).expect("distinct orders sit at distance 1..=3");
                probs[x.index()][y.index()] = pi[(d - 1) as usize] / share as f64;
            }
        }
    }
    ConditionalModel::from_table("model1_trunc_exp", 1, probs, vec![("a", a)])
        .expect("truncated exponential classes sum to 1")
}

/// Normalized exp(-a d) over d = 1, 2, 3, computed with the largest
/// exponent shifted out so any finite `a` is safe.
pub fn trunc_exp_class_probabilities(a: f64) -> [f64; 3] {
    let exponents = [-a, -2.0 * a, -3.0 * a];
    let max = exponents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights = exponents.map(|e| (e - max).exp());
    let total: f64 = weights.iter().sum();
    weights.map(|w| w / total)
}

/// Two-parameter variant of model 2 with p(OV) pinned to 1/2.
pub fn model2_reduced(p_sv: f64, p_so: f64) -> Result<ConditionalModel, ModelError> {
    let params = Model2Params::new(p_sv, p_so, 0.5)?;
    let prior = model2_prior(&params)?;
    ConditionalModel::from_prior(
        "model2_reduced",
        2,
        &prior,
        vec![("pSV", params.p_sv()), ("pSO", params.p_so())],
    )
}

/// Outcome of the c = 1 reduction of model 2 at one parameter pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C1Assessment {
    /// The inferred p(OV), or `None` when p(SV) = p(SO) leaves it undefined.
    pub p_ov: Option<f64>,
    /// Whether the inferred value is itself a probability.
    pub p_ov_in_range: bool,
    /// Whether the full set of normalization-derived constraints holds:
    /// p(OV) in [0,1], p(SO) = 1 and p(SV) > p(SO). No pair of
    /// probabilities satisfies them, so a two-parameter model 2 with c = 1
    /// does not exist.
    pub feasible: bool,
}

/// Evaluates the c = 1 reduction: p(OV) = p(SV)(1 - p(SO)) / (p(SV) - p(SO)),
/// together with the feasibility verdict.
pub fn model2_c1_pov(p_sv: f64, p_so: f64) -> Result<C1Assessment, ModelError> {
    let p_sv = checked_probability("pSV", p_sv)?;
    let p_so = checked_probability("pSO", p_so)?;
    if p_sv == p_so {
        return Ok(C1Assessment {
            p_ov: None,
            p_ov_in_range: false,
            feasible: false,
        });
    }
    let p_ov = p_sv * (1.0 - p_so) / (p_sv - p_so);
    let in_range = (0.0..=1.0).contains(&p_ov);
    let feasible = in_range && p_so == 1.0 && p_sv > p_so;
    Ok(C1Assessment {
        p_ov: Some(p_ov),
        p_ov_in_range: in_range,
        feasible,
    })
}

/// Result of scanning the (p(SV), p(SO)) grid for c = 1 solutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C1ScanSummary {
    pub step: f64,
    pub points: u64,
    /// Points whose inferred p(OV) lies in [0,1]; all of them sit on the
    /// boundary of the parameter square.
    pub in_range_points: u64,
    /// Points satisfying the full constraint set. Always zero.
    pub feasible_points: u64,
}

/// Exhaustive grid scan of the c = 1 reduction over [0,1] x [0,1].
pub fn c1_feasibility_scan(step: f64) -> C1ScanSummary {
    assert!(step > 0.0 && step <= 1.0);
    let steps = (1.0 / step).round() as u64;
    let mut summary = C1ScanSummary {
        step,
        points: 0,
        in_range_points: 0,
        feasible_points: 0,
    };
    for i in 0..=steps {
        for j in 0..=steps {
            let p_sv = (i as f64 * step).min(1.0);
            let p_so = (j as f64 * step).min(1.0);
            let check = model2_c1_pov(p_sv, p_so).expect("grid values are probabilities");
            summary.points += 1;
            if check.p_ov_in_range {
                summary.in_range_points += 1;
            }
            if check.feasible {
                summary.feasible_points += 1;
            }
        }
    }
    summary
}
