#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "uct/sequence.hpp"

namespace uct {

/// Sliding-window counts ν(v·a) for every context v of length k <= max_order.
///
/// Contexts are packed base-|A| into 64-bit integers (most recent symbol in
/// the lowest digit), so |A|^(max_order+1) must fit in 63 bits. Storage is
/// sparse: only observed (context, symbol) pairs are kept.
///
/// Appending is boundary-aware: begin_sample() starts a fresh sample and no
/// window ever spans two samples.
class ContextCounts {
 public:
  using Packed = std::uint64_t;

  ContextCounts(std::size_t alphabet_size, std::size_t max_order);

  static ContextCounts build(const MultiSample& x, std::size_t max_order);

  /// Largest order whose packed (context, symbol) keys fit in 63 bits.
  static std::size_t max_supported_order(std::size_t alphabet_size);

  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t max_order() const noexcept { return max_order_; }
  std::size_t total_symbols() const noexcept { return total_; }
  std::size_t sample_count() const noexcept { return samples_; }
  std::size_t position_in_sample() const noexcept { return pos_; }

  void begin_sample();
  void append(Symbol a);

  /// Packed context of the last k symbols of the current sample, if the
  /// sample has at least k symbols so far.
  std::optional<Packed> current_context(std::size_t k) const;

  std::uint64_t count(std::size_t k, Packed context, Symbol a) const;
  std::uint64_t total(std::size_t k, Packed context) const;

  std::uint64_t count(std::span<const Symbol> context, Symbol a) const;
  std::uint64_t total(std::span<const Symbol> context) const;

  Packed pack(std::span<const Symbol> context) const;

  /// Calls f(context, ν̄(context)) for every observed context of length k.
  template <class F>
  void for_each_context(std::size_t k, F&& f) const {
    for (const auto& [ctx, n] : levels_.at(k).totals) f(ctx, n);
  }

  /// Calls f(context, a, ν(context·a)) for every observed pair of order k.
  template <class F>
  void for_each_pair(std::size_t k, F&& f) const {
    const auto A = static_cast<Packed>(alphabet_size_);
    for (const auto& [key, n] : levels_.at(k).pairs) f(key / A, static_cast<Symbol>(key % A), n);
  }

 private:
  struct Level {
    std::unordered_map<Packed, std::uint64_t> pairs;   // context*|A| + a -> ν(v·a)
    std::unordered_map<Packed, std::uint64_t> totals;  // context -> ν̄(v)
  };

  std::size_t alphabet_size_;
  std::size_t max_order_;
  std::vector<Level> levels_;
  std::vector<Packed> ctx_;  // ctx_[k] = last k symbols, valid when pos_ >= k
  std::size_t pos_ = 0;
  std::size_t total_ = 0;
  std::size_t samples_ = 0;
};

}  // namespace uct
