//! Models of how the six orderings of subject, verb and object pair up as a
//! language's primary alternating word orders.
//!
//! The crate provides:
//!
//! * [`ring`] — the word order permutation ring, its distance, the total
//!   constituent displacement, and a rank-correlation analysis relating the
//!   two ([`kendall`]);
//! * [`models`] — five conditional-probability models of partner choice
//!   plus two reduced variants;
//! * [`inference`] — log-likelihoods, AICc and BIC scoring, plug-in
//!   estimation and brute-force grid-search verification;
//! * [`data`] — the input file formats and the built-in datasets.
//!
//! ```
//! use wordring::data::{canonical_dataset, wals_dominant_frequencies};
//! use wordring::inference::evaluate_all;
//!
//! let scores = evaluate_all(&canonical_dataset(), &wals_dominant_frequencies()).unwrap();
//! assert_eq!(scores[0].name, "model1"); // best by BIC
//! ```

pub mod data;
pub mod inference;
pub mod kendall;
pub mod models;
pub mod order;
pub mod ring;

pub use data::{canonical_dataset, wals_dominant_frequencies, PairCountTable};
pub use inference::{evaluate_all, evaluate_all_extended, ModelEvaluation, ModelFamily};
pub use models::{ConditionalModel, DominantFrequencies};
pub use order::Order;
