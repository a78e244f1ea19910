#pragma once

// Error measures of estimators against a known source: per-letter KL
// redundancy (Monte Carlo and exact) and the per-step predictive KL error.

#include <cstdint>
#include <vector>

#include "uct/estimators.hpp"
#include "uct/montecarlo.hpp"
#include "uct/source_model.hpp"

namespace uct {

/// KL divergence D(P‖Q) in bits, 0·log 0 = 0. +inf if Q(a) = 0 < P(a).
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

/// Monte Carlo estimate of t^{-1} E[log2(P(x)/γ(x))] over x ~ truth of
/// length t. Trial i uses seed + i. The mean is +inf if the estimator ever
/// assigns probability zero to a drawn sequence.
MeanEstimate avg_kl_error(const SourceModel& truth, const EstimatorFactory& est, std::size_t t,
                          std::size_t trials, std::uint64_t seed);

/// Exact t^{-1} Σ_x P(x) log2(P(x)/γ(x)) by enumerating all |A|^t words.
double exact_avg_kl_error(const SourceModel& truth, const EstimatorFactory& est, std::size_t t);

/// Exact ρ^t(P‖γ) = Σ_{x ∈ A^t} P(x) D(P(·|x) ‖ γ(·|x)) by enumeration.
double exact_step_kl(const SourceModel& truth, const EstimatorFactory& est, std::size_t t);

/// Time-averaged squared and absolute error between the true conditional
/// probability of the realized next symbol and the estimator's, over one
/// sample path of length t.
struct PredictionError {
  double mean_squared = 0.0;
  double mean_absolute = 0.0;
};
PredictionError prediction_error(const SourceModel& truth, const EstimatorFactory& est, std::size_t t,
                                 std::uint64_t seed);

}  // namespace uct
