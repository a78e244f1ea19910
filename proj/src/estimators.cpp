#include "uct/estimators.hpp"

#include <cmath>

namespace uct {

namespace {
constexpr double kLn2 = 0.69314718055994530942;
}

double omega(std::size_t i) {
  if (i == 0) throw DomainError("omega: index starts at 1");
  return 1.0 / std::log2(static_cast<double>(i) + 1.0) - 1.0 / std::log2(static_cast<double>(i) + 2.0);
}

double omega_tail(std::size_t i) {
  if (i == 0) throw DomainError("omega_tail: index starts at 1");
  return 1.0 / std::log2(static_cast<double>(i) + 1.0);
}

double SequentialEstimator::cond_log2(Symbol a) const {
  std::vector<double> p(alphabet_size());
  predict(p);
  return std::log2(p.at(a));
}

std::vector<double> SequentialEstimator::predict() const {
  std::vector<double> p(alphabet_size());
  predict(p);
  return p;
}

void SequentialEstimator::consume(const MultiSample& x) {
  if (x.alphabet_size() != alphabet_size()) throw DomainError("estimator alphabet size mismatch");
  for (const auto& sample : x.samples()) {
    begin_sample();
    for (Symbol a : sample) update(a);
  }
}

// ---------------------------------------------------------------- Laplace

LaplaceEstimator::LaplaceEstimator(std::size_t alphabet_size) : counts_(alphabet_size, 0) {
  if (alphabet_size < 2) throw DomainError("alphabet size must be >= 2");
}

void LaplaceEstimator::predict(std::span<double> probs) const {
  const double den = static_cast<double>(t_ + counts_.size());
  for (std::size_t a = 0; a < counts_.size(); ++a) probs[a] = (static_cast<double>(counts_[a]) + 1.0) / den;
}

double LaplaceEstimator::cond_log2(Symbol a) const {
  return std::log2((static_cast<double>(counts_.at(a)) + 1.0) / static_cast<double>(t_ + counts_.size()));
}

void LaplaceEstimator::update(Symbol a) {
  log2_ += cond_log2(a);
  ++counts_[a];
  ++t_;
}

std::unique_ptr<SequentialEstimator> LaplaceEstimator::clone() const {
  return std::make_unique<LaplaceEstimator>(*this);
}

// ---------------------------------------------------------------- KT

KtEstimator::KtEstimator(std::size_t alphabet_size, std::size_t order)
    : order_(order), counts_(alphabet_size, order) {}

void KtEstimator::predict(std::span<double> probs) const {
  const std::size_t A = alphabet_size();
  auto ctx = counts_.current_context(order_);
  if (!ctx) {
    for (std::size_t a = 0; a < A; ++a) probs[a] = 1.0 / static_cast<double>(A);
    return;
  }
  const double den = static_cast<double>(counts_.total(order_, *ctx)) + 0.5 * static_cast<double>(A);
  for (std::size_t a = 0; a < A; ++a)
    probs[a] = (static_cast<double>(counts_.count(order_, *ctx, static_cast<Symbol>(a))) + 0.5) / den;
}

double KtEstimator::cond_log2(Symbol a) const {
  const std::size_t A = alphabet_size();
  auto ctx = counts_.current_context(order_);
  if (!ctx) return -std::log2(static_cast<double>(A));
  const double num = static_cast<double>(counts_.count(order_, *ctx, a)) + 0.5;
  const double den = static_cast<double>(counts_.total(order_, *ctx)) + 0.5 * static_cast<double>(A);
  return std::log2(num / den);
}

void KtEstimator::update(Symbol a) {
  log2_ += cond_log2(a);
  counts_.append(a);
}

std::unique_ptr<SequentialEstimator> KtEstimator::clone() const {
  return std::make_unique<KtEstimator>(*this);
}

// ---------------------------------------------------------------- Mixture R

MixtureEstimator::MixtureEstimator(std::size_t alphabet_size, std::size_t max_order)
    : max_order_(std::min(max_order, ContextCounts::max_supported_order(alphabet_size))),
      counts_(alphabet_size, max_order_), log_w_(max_order_ + 1), log_k_(max_order_ + 1, 0.0) {
  for (std::size_t i = 0; i < max_order_; ++i) log_w_[i] = std::log2(omega(i + 1));
  log_w_[max_order_] = std::log2(omega_tail(max_order_ + 1));
}

void MixtureEstimator::begin_sample() {
  counts_.begin_sample();
  sample_len_ = 0;
  ++samples_;
}

double MixtureEstimator::kt_cond(std::size_t order, Symbol a) const {
  const std::size_t A = alphabet_size();
  auto ctx = counts_.current_context(order);
  if (!ctx) return 1.0 / static_cast<double>(A);
  const double num = static_cast<double>(counts_.count(order, *ctx, a)) + 0.5;
  const double den = static_cast<double>(counts_.total(order, *ctx)) + 0.5 * static_cast<double>(A);
  return num / den;
}

void MixtureEstimator::posterior(std::span<double> w) const {
  double m = kNegInf;
  for (std::size_t i = 0; i <= max_order_; ++i) {
    w[i] = log_w_[i] + log_k_[i];
    m = std::max(m, w[i]);
  }
  double s = 0.0;
  for (std::size_t i = 0; i <= max_order_; ++i) {
    w[i] = std::exp2(w[i] - m);
    s += w[i];
  }
  for (std::size_t i = 0; i <= max_order_; ++i) w[i] /= s;
}

void MixtureEstimator::predict(std::span<double> probs) const {
  const std::size_t A = alphabet_size();
  std::vector<double> w(max_order_ + 1);
  posterior(w);
  std::fill(probs.begin(), probs.begin() + static_cast<std::ptrdiff_t>(A), 0.0);
  for (std::size_t i = 0; i <= max_order_; ++i) {
    auto ctx = counts_.current_context(i);
    if (!ctx) {
      for (std::size_t a = 0; a < A; ++a) probs[a] += w[i] / static_cast<double>(A);
      continue;
    }
    const double den = static_cast<double>(counts_.total(i, *ctx)) + 0.5 * static_cast<double>(A);
    for (std::size_t a = 0; a < A; ++a)
      probs[a] += w[i] * (static_cast<double>(counts_.count(i, *ctx, static_cast<Symbol>(a))) + 0.5) / den;
  }
}

double MixtureEstimator::cond_log2(Symbol a) const {
  // Computed in the log domain so that extremely confident predictions keep
  // their precision.
  std::vector<double> joint(max_order_ + 1), prior(max_order_ + 1);
  for (std::size_t i = 0; i <= max_order_; ++i) {
    prior[i] = log_w_[i] + log_k_[i];
    joint[i] = prior[i] + std::log2(kt_cond(i, a));
  }
  return log2_sum(joint) - log2_sum(prior);
}

void MixtureEstimator::update(Symbol a) {
  if (a >= alphabet_size()) throw DomainError("symbol outside alphabet");
  if (samples_ == 0) begin_sample();
  for (std::size_t i = 0; i <= max_order_; ++i) log_k_[i] += std::log2(kt_cond(i, a));
  counts_.append(a);
  ++sample_len_;
  // K_i for i > D stops coinciding with K_D once a sample outgrows D + 1
  // letters (D letters when another sample may share the context).
  if (sample_len_ > max_order_ + 1 || (samples_ > 1 && sample_len_ > max_order_)) truncated_ = true;
}

LogProb MixtureEstimator::log_prob() const {
  std::vector<double> v(max_order_ + 1);
  for (std::size_t i = 0; i <= max_order_; ++i) v[i] = log_w_[i] + log_k_[i];
  return LogProb::from_log2(log2_sum(v));
}

std::unique_ptr<SequentialEstimator> MixtureEstimator::clone() const {
  return std::make_unique<MixtureEstimator>(*this);
}

// ---------------------------------------------------------------- Uniform

void UniformEstimator::predict(std::span<double> probs) const {
  for (std::size_t a = 0; a < n_; ++a) probs[a] = 1.0 / static_cast<double>(n_);
}

double UniformEstimator::cond_log2(Symbol) const { return -std::log2(static_cast<double>(n_)); }

void UniformEstimator::update(Symbol a) {
  if (a >= n_) throw DomainError("symbol outside alphabet");
  log2_ += cond_log2(a);
}

std::unique_ptr<SequentialEstimator> UniformEstimator::clone() const {
  return std::make_unique<UniformEstimator>(*this);
}

// ---------------------------------------------------------------- factories

EstimatorFactory laplace_factory() {
  return [](std::size_t n) { return std::make_unique<LaplaceEstimator>(n); };
}

EstimatorFactory kt_factory(std::size_t order) {
  return [order](std::size_t n) { return std::make_unique<KtEstimator>(n, order); };
}

EstimatorFactory mixture_factory(std::size_t max_order) {
  return [max_order](std::size_t n) { return std::make_unique<MixtureEstimator>(n, max_order); };
}

// ---------------------------------------------------------------- closed forms

LogProb laplace_cond(Symbol a, const SymbolSeq& x) {
  const std::size_t A = x.alphabet().size();
  if (a >= A) throw DomainError("symbol outside alphabet");
  std::size_t n = 0;
  for (Symbol s : x.symbols()) n += (s == a);
  return LogProb::from_log2(std::log2((static_cast<double>(n) + 1.0) /
                                      static_cast<double>(x.size() + A)));
}

LogProb laplace_prob(const SymbolSeq& x) {
  LaplaceEstimator est(x.alphabet().size());
  for (Symbol s : x.symbols()) est.update(s);
  return est.log_prob();
}

LogProb kt_prob(const MultiSample& x, std::size_t order) {
  const double A = static_cast<double>(x.alphabet_size());
  ContextCounts counts = ContextCounts::build(x, order);
  double ln = 0.0;
  const double lg_half = std::lgamma(0.5);
  const double lg_half_a = std::lgamma(0.5 * A);
  counts.for_each_pair(order, [&](auto, Symbol, std::uint64_t n) {
    ln += std::lgamma(static_cast<double>(n) + 0.5) - lg_half;
  });
  counts.for_each_context(order, [&](auto, std::uint64_t n) {
    ln -= std::lgamma(static_cast<double>(n) + 0.5 * A) - lg_half_a;
  });
  double prefix = 0.0;
  for (const auto& s : x.samples()) prefix += static_cast<double>(std::min(order, s.size()));
  return LogProb::from_log2(ln / kLn2 - prefix * std::log2(A));
}

LogProb r_prob(const MultiSample& x, std::size_t max_order) {
  MixtureEstimator est(x.alphabet_size(), max_order);
  est.consume(x);
  return est.log_prob();
}

LogProb r_cond(Symbol a, const MultiSample& x, std::size_t max_order) {
  MixtureEstimator est(x.alphabet_size(), max_order);
  est.consume(x);
  if (a >= x.alphabet_size()) throw DomainError("symbol outside alphabet");
  return LogProb::from_log2(est.cond_log2(a));
}

LogProb r_cond_sample(std::span<const Symbol> z, const MultiSample& x, std::size_t max_order) {
  MixtureEstimator est(x.alphabet_size(), max_order);
  est.consume(x);
  const LogProb before = est.log_prob();
  est.begin_sample();
  for (Symbol a : z) est.update(a);
  return est.log_prob() / before;
}

LogProb measure_prob(const EstimatorFactory& make, const MultiSample& x) {
  auto est = make(x.alphabet_size());
  est->consume(x);
  return est->log_prob();
}

}  // namespace uct
