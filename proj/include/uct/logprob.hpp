#pragma once

// Base-2 log-domain probability arithmetic.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <utility>

namespace uct {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kLog2E = 1.4426950408889634073599;  // log2(e)

/// log2(2^a + 2^b) without overflow or underflow.
inline double log2_add(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp2(b - a)) * kLog2E;
}

/// log2(Σ 2^v).
inline double log2_sum(std::span<const double> values) noexcept {
  double m = kNegInf;
  for (double v : values) m = std::max(m, v);
  if (m == kNegInf) return kNegInf;
  if (m == kInf) return kInf;
  double s = 0.0;
  for (double v : values) s += std::exp2(v - m);
  return m + std::log2(s);
}

/// A probability stored as its base-2 logarithm. Value is <= 0, or -inf for
/// probability zero.
class LogProb {
 public:
  constexpr LogProb() = default;
  static constexpr LogProb from_log2(double v) noexcept { return LogProb(v); }
  static LogProb from_prob(double p) noexcept { return LogProb(p > 0 ? std::log2(p) : kNegInf); }
  static constexpr LogProb one() noexcept { return LogProb(0.0); }
  static constexpr LogProb zero() noexcept { return LogProb(kNegInf); }

  constexpr double log2() const noexcept { return v_; }
  double prob() const noexcept { return std::exp2(v_); }
  /// -log2 p, the ideal codelength in bits.
  constexpr double bits() const noexcept { return -v_; }
  constexpr bool is_zero() const noexcept { return v_ == kNegInf; }

  /// Product of probabilities.
  constexpr LogProb operator*(LogProb o) const noexcept { return LogProb(v_ + o.v_); }
  constexpr LogProb& operator*=(LogProb o) noexcept { v_ += o.v_; return *this; }
  /// Ratio of probabilities; the caller guarantees o is nonzero.
  constexpr LogProb operator/(LogProb o) const noexcept { return LogProb(v_ - o.v_); }
  /// Sum of probabilities, via log-sum-exp.
  LogProb operator+(LogProb o) const noexcept { return LogProb(log2_add(v_, o.v_)); }

  constexpr auto operator<=>(const LogProb&) const = default;

 private:
  constexpr explicit LogProb(double v) : v_(v) {}
  double v_ = 0.0;
};

}  // namespace uct
