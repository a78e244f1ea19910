#pragma once

// Sequential probability estimators: Laplace, Krichevsky-Trofimov (KT) of
// any Markov order, and the mixture R of KT estimators over all orders.

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "uct/context_counts.hpp"
#include "uct/logprob.hpp"
#include "uct/sequence.hpp"

namespace uct {

/// Weight ω_i of the order-(i-1) component, i >= 1:
/// ω_1 = 1 - 1/log2 3, ω_i = 1/log2(i+1) - 1/log2(i+2).
double omega(std::size_t i);

/// Σ_{j >= i} ω_j = 1/log2(i+1).
double omega_tail(std::size_t i);

/// A measure on finite sequences presented as a sequential predictor. The
/// joint probability of everything consumed so far is log_prob(); every
/// conditional distribution returned by predict() sums to one.
class SequentialEstimator {
 public:
  virtual ~SequentialEstimator() = default;

  virtual std::size_t alphabet_size() const = 0;
  /// Starts a new independent sample (the ⋄ boundary).
  virtual void begin_sample() = 0;
  /// Conditional distribution of the next symbol; probs.size() == |A|.
  virtual void predict(std::span<double> probs) const = 0;
  /// log2 of the conditional probability of `a` as the next symbol.
  virtual double cond_log2(Symbol a) const;
  virtual void update(Symbol a) = 0;
  virtual LogProb log_prob() const = 0;
  virtual std::unique_ptr<SequentialEstimator> clone() const = 0;
  virtual std::string name() const = 0;

  std::vector<double> predict() const;
  /// Feeds every sample of x, with a sample boundary before each one.
  void consume(const MultiSample& x);
};

using EstimatorFactory = std::function<std::unique_ptr<SequentialEstimator>(std::size_t alphabet_size)>;

/// L_0(a|x) = (ν_x(a) + 1) / (t + |A|).
class LaplaceEstimator final : public SequentialEstimator {
 public:
  explicit LaplaceEstimator(std::size_t alphabet_size);

  std::size_t alphabet_size() const override { return counts_.size(); }
  void begin_sample() override {}
  using SequentialEstimator::predict;
  void predict(std::span<double> probs) const override;
  double cond_log2(Symbol a) const override;
  void update(Symbol a) override;
  LogProb log_prob() const override { return LogProb::from_log2(log2_); }
  std::unique_ptr<SequentialEstimator> clone() const override;
  std::string name() const override { return "laplace"; }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t t_ = 0;
  double log2_ = 0.0;
};

/// K_m: the KT (add-1/2) estimator applied per order-m context. The first
/// min(m, t_i) letters of each sample cost 1/|A| each.
class KtEstimator final : public SequentialEstimator {
 public:
  KtEstimator(std::size_t alphabet_size, std::size_t order);

  std::size_t alphabet_size() const override { return counts_.alphabet_size(); }
  std::size_t order() const noexcept { return order_; }
  const ContextCounts& counts() const noexcept { return counts_; }

  void begin_sample() override { counts_.begin_sample(); }
  using SequentialEstimator::predict;
  void predict(std::span<double> probs) const override;
  double cond_log2(Symbol a) const override;
  void update(Symbol a) override;
  LogProb log_prob() const override { return LogProb::from_log2(log2_); }
  std::unique_ptr<SequentialEstimator> clone() const override;
  std::string name() const override { return "kt" + std::to_string(order_); }

 private:
  std::size_t order_;
  ContextCounts counts_;
  double log2_ = 0.0;
};

/// The measure R = Σ_i ω_{i+1} K_i.
///
/// Orders 0..D are carried explicitly; the weight of all orders >= D is
/// lumped onto K_D (1/log2(D+2)). While D >= max sample length - 1 every
/// K_i with i >= D equals K_D, so this is R exactly; beyond that it is still
/// a normalized measure and truncated() reports the approximation.
class MixtureEstimator final : public SequentialEstimator {
 public:
  static constexpr std::size_t kDefaultMaxOrder = 16;

  explicit MixtureEstimator(std::size_t alphabet_size, std::size_t max_order = kDefaultMaxOrder);

  std::size_t alphabet_size() const override { return counts_.alphabet_size(); }
  std::size_t max_order() const noexcept { return max_order_; }
  bool truncated() const noexcept { return truncated_; }
  /// log2 K_i of the data consumed so far, i = 0..max_order().
  std::span<const double> order_log2() const noexcept { return log_k_; }

  void begin_sample() override;
  using SequentialEstimator::predict;
  void predict(std::span<double> probs) const override;
  double cond_log2(Symbol a) const override;
  void update(Symbol a) override;
  LogProb log_prob() const override;
  std::unique_ptr<SequentialEstimator> clone() const override;
  std::string name() const override { return "r"; }

 private:
  double kt_cond(std::size_t order, Symbol a) const;
  void posterior(std::span<double> w) const;

  std::size_t max_order_;
  ContextCounts counts_;
  std::vector<double> log_w_;  // log2 of the mixture weight per order
  std::vector<double> log_k_;
  std::size_t sample_len_ = 0;
  std::size_t samples_ = 0;
  bool truncated_ = false;
};

/// Uniform i.i.d. measure |A|^{-t}.
class UniformEstimator final : public SequentialEstimator {
 public:
  explicit UniformEstimator(std::size_t alphabet_size) : n_(alphabet_size) {}
  std::size_t alphabet_size() const override { return n_; }
  void begin_sample() override {}
  using SequentialEstimator::predict;
  void predict(std::span<double> probs) const override;
  double cond_log2(Symbol) const override;
  void update(Symbol) override;
  LogProb log_prob() const override { return LogProb::from_log2(log2_); }
  std::unique_ptr<SequentialEstimator> clone() const override;
  std::string name() const override { return "uniform"; }

 private:
  std::size_t n_;
  double log2_ = 0.0;
};

EstimatorFactory laplace_factory();
EstimatorFactory kt_factory(std::size_t order);
EstimatorFactory mixture_factory(std::size_t max_order = MixtureEstimator::kDefaultMaxOrder);

// Closed forms.

/// log2 L_0(a|x) for a single sample.
LogProb laplace_cond(Symbol a, const SymbolSeq& x);
/// log2 L_0(x) by the chain rule.
LogProb laplace_prob(const SymbolSeq& x);

/// log2 K_m(x^1 ⋄ ... ⋄ x^r) via log-gamma.
LogProb kt_prob(const MultiSample& x, std::size_t order);

/// log2 R(x) with orders 0..max_order explicit.
LogProb r_prob(const MultiSample& x, std::size_t max_order = MixtureEstimator::kDefaultMaxOrder);
/// R(a | x): the next symbol continuing the last sample of x.
LogProb r_cond(Symbol a, const MultiSample& x,
               std::size_t max_order = MixtureEstimator::kDefaultMaxOrder);
/// R(z | x) = R(x ⋄ z) / R(x): z is a further independent sample.
LogProb r_cond_sample(std::span<const Symbol> z, const MultiSample& x,
                      std::size_t max_order = MixtureEstimator::kDefaultMaxOrder);

/// Joint log-probability of x under a fresh estimator from the factory.
LogProb measure_prob(const EstimatorFactory& make, const MultiSample& x);

}  // namespace uct
