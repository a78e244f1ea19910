#include "uct/realvalued.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace uct {

Domain::Domain(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw DomainError("domain must be a finite interval [a, b) with a < b");
}

Partition::Partition(Domain domain, std::size_t depth) : domain_(domain), depth_(depth) {
  if (depth > 40) throw DomainError("partition depth must be <= 40");
}

std::pair<double, double> Partition::cell_bounds(std::size_t c) const {
  if (c >= cell_count()) throw DomainError("cell index out of range");
  const double n = static_cast<double>(cell_count());
  return {domain_.lo + domain_.length() * static_cast<double>(c) / n,
          domain_.lo + domain_.length() * static_cast<double>(c + 1) / n};
}

std::size_t Partition::cell_index(double x) const {
  if (!domain_.contains(x)) throw DomainError("value outside the domain");
  // The scaled position is shared by all depths and multiplying by 2^s is
  // exact, so coarsening a cell index is a right shift.
  const double u = (x - domain_.lo) / domain_.length();
  const auto c = static_cast<std::size_t>(std::floor(std::ldexp(u, static_cast<int>(depth_))));
  return std::min(c, cell_count() - 1);
}

std::vector<Symbol> quantize(std::span<const double> x, std::size_t depth, const Domain& domain) {
  const Partition p(domain, depth);
  std::vector<Symbol> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!domain.contains(x[i]))
      throw DomainError("value " + std::to_string(x[i]) + " at index " + std::to_string(i) +
                        " outside the domain [" + std::to_string(domain.lo) + ", " +
                        std::to_string(domain.hi) + ")");
    out[i] = static_cast<Symbol>(p.cell_index(x[i]));
  }
  return out;
}

// ---------------------------------------------------------------- intervals

IntervalSet::IntervalSet(std::vector<std::pair<double, double>> intervals) : intervals_(std::move(intervals)) {
  std::sort(intervals_.begin(), intervals_.end());
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto [lo, hi] = intervals_[i];
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) throw DomainError("malformed interval");
    if (i > 0 && lo < intervals_[i - 1].second) throw DomainError("intervals overlap");
  }
}

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw DomainError("piecewise-linear table needs at least two points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].first) || !std::isfinite(points_[i].second))
      throw DomainError("piecewise-linear table has a non-finite entry");
    if (i > 0 && points_[i].first < points_[i - 1].first)
      throw DomainError("piecewise-linear table x values must be nondecreasing");
  }
}

PiecewiseLinear PiecewiseLinear::constant(const Domain& d, double c) {
  return PiecewiseLinear({{d.lo, c}, {d.hi, c}});
}

double PiecewiseLinear::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& [x, f] : points_) m = std::max(m, std::abs(f));
  return m;
}

double PiecewiseLinear::integrate(double u, double v) const {
  if (u < front() || v > back()) throw DomainError("piecewise-linear table does not cover the integration range");
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < points_.size(); ++j) {
    const auto [x0, f0] = points_[j];
    const auto [x1, f1] = points_[j + 1];
    if (x1 <= x0) continue;  // jump
    const double a = std::max(u, x0), b = std::min(v, x1);
    if (b <= a) continue;
    auto at = [&](double x) { return f0 + (f1 - f0) * (x - x0) / (x1 - x0); };
    s += 0.5 * (at(a) + at(b)) * (b - a);
  }
  return s;
}

// ---------------------------------------------------------------- density

DensityEstimator::DensityEstimator(Domain domain, DensityConfig config)
    : domain_(domain), config_(config), log_w_(config.max_depth + 1) {
  if (config_.max_depth > 16) throw DomainError("density estimate: depth must be <= 16");
  measures_.resize(config_.max_depth + 1);
  for (std::size_t i = 1; i <= config_.max_depth; ++i)
    measures_[i] = std::make_unique<MixtureEstimator>(std::size_t{1} << i, config_.max_order_at(i));
  double norm = 0.0;
  if (config_.renormalize_depth_weights) {
    for (std::size_t i = 0; i <= config_.max_depth; ++i) norm += omega(i + 1);
  }
  for (std::size_t i = 0; i <= config_.max_depth; ++i)
    log_w_[i] = std::log2(omega(i + 1)) - (config_.renormalize_depth_weights ? std::log2(norm) : 0.0);
}

void DensityEstimator::update(double x) {
  if (!domain_.contains(x))
    throw DomainError("value " + std::to_string(x) + " at index " + std::to_string(t_) + " outside the domain");
  const std::size_t deepest = Partition(domain_, config_.max_depth).cell_index(x);
  for (std::size_t i = 1; i <= config_.max_depth; ++i)
    measures_[i]->update(static_cast<Symbol>(deepest >> (config_.max_depth - i)));
  ++t_;
}

void DensityEstimator::consume(std::span<const double> xs) {
  for (double x : xs) update(x);
}

double DensityEstimator::log2_measure(std::size_t depth) const {
  if (depth > config_.max_depth) throw DomainError("depth beyond the estimator's maximum");
  return depth == 0 ? 0.0 : measures_[depth]->log_prob().log2();
}

double DensityEstimator::log2_component(std::size_t depth) const {
  const double vol = Partition(domain_, depth).cell_volume();
  return log_w_.at(depth) + log2_measure(depth) - static_cast<double>(t_) * std::log2(vol);
}

double DensityEstimator::log2_density() const {
  std::vector<double> terms(config_.max_depth + 1);
  for (std::size_t i = 0; i <= config_.max_depth; ++i) terms[i] = log2_component(i);
  return log2_sum(terms);
}

std::vector<double> DensityEstimator::conditional_cell_density() const {
  const std::size_t S = config_.max_depth;
  std::vector<double> post(S + 1);
  for (std::size_t i = 0; i <= S; ++i) post[i] = log2_component(i);
  const double total = log2_sum(post);
  for (double& p : post) p = std::exp2(p - total);

  std::vector<double> dens(std::size_t{1} << S, 0.0);
  for (std::size_t i = 0; i <= S; ++i) {
    const double vol = Partition(domain_, i).cell_volume();
    std::vector<double> cond = i == 0 ? std::vector<double>{1.0} : measures_[i]->predict();
    for (std::size_t c = 0; c < dens.size(); ++c) dens[c] += post[i] * cond[c >> (S - i)] / vol;
  }
  return dens;
}

double DensityEstimator::conditional_density(double x) const {
  const std::size_t c = Partition(domain_, config_.max_depth).cell_index(x);
  return conditional_cell_density()[c];
}

double DensityEstimator::conditional_log2_density(double x) const {
  return std::log2(conditional_density(x));
}

double DensityEstimator::event_probability(const IntervalSet& b) const {
  const Partition part(domain_, config_.max_depth);
  const auto dens = conditional_cell_density();
  double p = 0.0;
  for (const auto& [lo, hi] : b.intervals()) {
    if (lo < domain_.lo || hi > domain_.hi) throw DomainError("event interval outside the domain");
    if (hi <= lo) continue;
    for (std::size_t c = 0; c < dens.size(); ++c) {
      const auto [cl, ch] = part.cell_bounds(c);
      const double overlap = std::min(hi, ch) - std::max(lo, cl);
      if (overlap > 0) p += dens[c] * overlap;
    }
  }
  return p;
}

double DensityEstimator::expectation(const PiecewiseLinear& f) const {
  if (f.front() > domain_.lo || f.back() < domain_.hi)
    throw DomainError("function table does not cover the domain");
  const Partition part(domain_, config_.max_depth);
  const auto dens = conditional_cell_density();
  double e = 0.0;
  for (std::size_t c = 0; c < dens.size(); ++c) {
    const auto [cl, ch] = part.cell_bounds(c);
    e += dens[c] * f.integrate(cl, ch);
  }
  return e;
}

double density_estimate(std::span<const double> x, const Domain& domain, const DensityConfig& config) {
  DensityEstimator est(domain, config);
  est.consume(x);
  return est.log2_density();
}

// ---------------------------------------------------------------- sign process

std::vector<double> sign_process_generate(double alpha, std::size_t t, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("sign process: alpha must lie in (0, 1/2)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> out;
  out.reserve(t);
  for (std::size_t i = 0; i < t; ++i) {
    bool negative;
    if (i == 0) {
      negative = unit(rng) < 0.5;
    } else {
      const double sign = out.back() < 0.0 ? -1.0 : 1.0;
      negative = unit(rng) < 0.5 + alpha * sign;
    }
    const double u = unit(rng);
    out.push_back(negative ? -1.0 + u : u);
  }
  return out;
}

double sign_process_entropy_rate(double alpha) {
  const double p = 0.5 + alpha, q = 0.5 - alpha;
  return -(p * std::log2(p) + q * std::log2(q));
}

}  // namespace uct
