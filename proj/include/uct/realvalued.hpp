#pragma once

// Bounded real-valued series: dyadic partitions, quantization and the
// density estimate r_U built from finite-alphabet measures on quantized
// data.

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "uct/estimators.hpp"

namespace uct {

/// Half-open interval [lo, hi).
struct Domain {
  double lo = 0.0;
  double hi = 1.0;

  Domain() = default;
  Domain(double lo_, double hi_);
  double length() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return x >= lo && x < hi; }
};

/// Π_s: 2^s equal half-open cells of the domain.
class Partition {
 public:
  Partition(Domain domain, std::size_t depth);

  const Domain& domain() const noexcept { return domain_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t cell_count() const noexcept { return std::size_t{1} << depth_; }
  double cell_volume() const noexcept { return domain_.length() / static_cast<double>(cell_count()); }
  std::pair<double, double> cell_bounds(std::size_t c) const;
  /// Cell containing x; throws DomainError if x is outside [lo, hi).
  std::size_t cell_index(double x) const;

 private:
  Domain domain_;
  std::size_t depth_;
};

/// x^[s]: cell indices at depth s. Errors name the offending index.
std::vector<Symbol> quantize(std::span<const double> x, std::size_t depth, const Domain& domain);

/// Finite union of half-open intervals, sorted and disjoint.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<std::pair<double, double>> intervals);
  const std::vector<std::pair<double, double>>& intervals() const noexcept { return intervals_; }

 private:
  std::vector<std::pair<double, double>> intervals_;
};

/// Piecewise-linear function through (x_j, f_j), x nondecreasing. Repeated
/// x values encode jumps.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<std::pair<double, double>> points);
  static PiecewiseLinear constant(const Domain& d, double c);

  /// ∫_u^v f(x) dx; [u, v] must be covered by the table.
  double integrate(double u, double v) const;
  double max_abs() const noexcept;
  double front() const noexcept { return points_.front().first; }
  double back() const noexcept { return points_.back().first; }

 private:
  std::vector<std::pair<double, double>> points_;
};

struct DensityConfig {
  std::size_t max_depth = 8;
  bool renormalize_depth_weights = false;
  /// Markov-order cap of the per-depth R estimator.
  std::size_t shallow_max_order = 8;
  std::size_t deep_max_order = 2;
  std::size_t shallow_depth_limit = 2;  // depths <= this use shallow_max_order

  std::size_t max_order_at(std::size_t depth) const {
    return depth <= shallow_depth_limit ? shallow_max_order : deep_max_order;
  }
};

/// r_U(x_1..x_t) = Σ_{i=0}^{S} ω_{i+1} μ_i(x^[i]) / vol_i^t with μ_i an R
/// mixture over the 2^i cells of depth i and Lebesgue dominating measure.
/// Without renormalization the truncated weights make r_U a sub-probability
/// density; conditionals are normalized either way.
class DensityEstimator {
 public:
  DensityEstimator(Domain domain, DensityConfig config = {});

  const Domain& domain() const noexcept { return domain_; }
  const DensityConfig& config() const noexcept { return config_; }
  std::size_t size() const noexcept { return t_; }

  void update(double x);
  void consume(std::span<const double> xs);

  /// log2 r_U of everything consumed.
  double log2_density() const;
  /// log2 of the weighted depth-i term of r_U.
  double log2_component(std::size_t depth) const;
  double log2_weight(std::size_t depth) const { return log_w_.at(depth); }
  /// log2 μ_i(x^[i]).
  double log2_measure(std::size_t depth) const;

  /// Conditional density r_U(x | past), piecewise constant on the cells of
  /// depth max_depth; returns the density value of each such cell.
  std::vector<double> conditional_cell_density() const;
  double conditional_density(double x) const;
  double conditional_log2_density(double x) const;
  double event_probability(const IntervalSet& b) const;
  double expectation(const PiecewiseLinear& f) const;

 private:
  Domain domain_;
  DensityConfig config_;
  std::vector<std::unique_ptr<MixtureEstimator>> measures_;  // index = depth; depth 0 has none
  std::vector<double> log_w_;
  std::size_t t_ = 0;
};

/// Convenience: log2 r_U(x) for a fresh estimator.
double density_estimate(std::span<const double> x, const Domain& domain, const DensityConfig& config = {});

/// Markov process on [-1, 1): given the previous value y, the next value is
/// negative with probability 1/2 + alpha·sign(y) (sign(0) = +1) and uniform
/// within the chosen half. The first value is uniform on [-1, 1).
std::vector<double> sign_process_generate(double alpha, std::size_t t, std::uint64_t seed);

/// Relative entropy rate of the sign process w.r.t. Lebesgue measure, bits.
double sign_process_entropy_rate(double alpha);

}  // namespace uct
