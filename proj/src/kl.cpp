#include "uct/kl.hpp"

#include <cmath>

namespace uct {

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw DomainError("kl_divergence: size mismatch");
  double d = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] <= 0.0) continue;
    if (q[a] <= 0.0) return kInf;
    d += p[a] * std::log2(p[a] / q[a]);
  }
  return d;
}

MeanEstimate avg_kl_error(const SourceModel& truth, const EstimatorFactory& est, std::size_t t,
                          std::size_t trials, std::uint64_t seed) {
  if (t == 0) throw DomainError("avg_kl_error: t must be positive");
  auto per_trial = parallel_trials(trials, [&](std::size_t i) {
    std::mt19937_64 rng(seed + i);
    const auto x = truth.generate(t, rng);
    auto e = est(truth.alphabet_size());
    e->begin_sample();
    for (Symbol a : x) e->update(a);
    const LogProb q = e->log_prob();
    if (q.is_zero()) return kInf;
    return (truth.log_prob(x).log2() - q.log2()) / static_cast<double>(t);
  });
  return summarize(per_trial);
}

namespace {

// Depth-first walk over A^t carrying the estimator state and P(prefix).
template <class Leaf>
void enumerate(const SourceModel& truth, const SequentialEstimator& est, std::vector<Symbol>& prefix,
               std::size_t t, Leaf&& leaf) {
  if (prefix.size() == t) {
    leaf(prefix, est);
    return;
  }
  for (Symbol a = 0; a < truth.alphabet_size(); ++a) {
    auto next = est.clone();
    next->update(a);
    prefix.push_back(a);
    enumerate(truth, *next, prefix, t, leaf);
    prefix.pop_back();
  }
}

}  // namespace

double exact_avg_kl_error(const SourceModel& truth, const EstimatorFactory& est, std::size_t t) {
  if (t == 0) throw DomainError("exact_avg_kl_error: t must be positive");
  auto root = est(truth.alphabet_size());
  root->begin_sample();
  std::vector<Symbol> prefix;
  double sum = 0.0;
  enumerate(truth, *root, prefix, t, [&](const std::vector<Symbol>& x, const SequentialEstimator& e) {
    const double lp = truth.log_prob(x).log2();
    if (lp == kNegInf) return;
    sum += std::exp2(lp) * (lp - e.log_prob().log2());
  });
  return sum / static_cast<double>(t);
}

double exact_step_kl(const SourceModel& truth, const EstimatorFactory& est, std::size_t t) {
  auto root = est(truth.alphabet_size());
  root->begin_sample();
  std::vector<Symbol> prefix;
  double sum = 0.0;
  enumerate(truth, *root, prefix, t, [&](const std::vector<Symbol>& x, const SequentialEstimator& e) {
    const double lp = truth.log_prob(x).log2();
    if (lp == kNegInf) return;
    sum += std::exp2(lp) * kl_divergence(truth.next_distribution(x), e.predict());
  });
  return sum;
}

PredictionError prediction_error(const SourceModel& truth, const EstimatorFactory& est, std::size_t t,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto x = truth.generate(t, rng);
  auto e = est(truth.alphabet_size());
  e->begin_sample();
  PredictionError r;
  for (std::size_t i = 0; i < t; ++i) {
    const auto p = truth.next_distribution(std::span<const Symbol>(x).first(i));
    const double q = std::exp2(e->cond_log2(x[i]));
    const double d = p[x[i]] - q;
    r.mean_squared += d * d;
    r.mean_absolute += std::abs(d);
    e->update(x[i]);
  }
  r.mean_squared /= static_cast<double>(t);
  r.mean_absolute /= static_cast<double>(t);
  return r;
}

}  // namespace uct
