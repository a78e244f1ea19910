#pragma once

// Fully specified finite-order Markov sources: simulation truths and nulls
// for the identity test.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "uct/logprob.hpp"
#include "uct/sequence.hpp"

namespace uct {

/// Block and conditional entropies of a source, in bits per symbol.
struct EntropyRate {
  std::vector<double> h;  // h[m] = H(X_{m+1} | X_1..X_m) under stationarity
  double h_inf = 0.0;
};

/// Markov source of order k over |A| symbols.
///
/// Rows are indexed by the packed context (first context symbol most
/// significant), one probability per next symbol. The first k letters of a
/// sample are drawn from `initial` (a distribution over k-tuples), which
/// defaults to the stationary distribution.
class SourceModel {
 public:
  SourceModel(std::size_t alphabet_size, std::size_t order, std::vector<std::vector<double>> rows,
              std::optional<std::vector<double>> initial = std::nullopt);

  static SourceModel iid(std::vector<double> p);
  static SourceModel uniform(std::size_t alphabet_size);

  /// Text format:
  ///   alphabet <n>
  ///   order <k>
  ///   row p_0 ... p_{n-1}        (n^k rows, contexts in lexicographic order)
  ///   initial q_0 ... q_{n^k-1}  (optional)
  /// '#' starts a comment. Rows must sum to 1 within 1e-9.
  static SourceModel parse(std::istream& in);
  static SourceModel load(const std::string& path);
  std::string to_text() const;

  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t order() const noexcept { return order_; }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
  const std::vector<double>& initial() const noexcept { return initial_; }

  /// P(a | context) where context is the packed last k symbols.
  double cond(std::uint64_t context, Symbol a) const { return rows_.at(context).at(a); }

  /// Probability of one sample (a finite word).
  LogProb log_prob(std::span<const Symbol> x) const;
  /// Product over independent samples.
  LogProb log_prob(const MultiSample& x) const;

  std::vector<Symbol> generate(std::size_t t, std::mt19937_64& rng) const;

  /// Conditional distribution of the next symbol given the full past.
  std::vector<double> next_distribution(std::span<const Symbol> past) const;

  /// Stationary distribution over packed k-tuples.
  std::vector<double> stationary() const;
  EntropyRate entropy_rate(std::size_t max_m) const;

 private:
  std::size_t alphabet_size_;
  std::size_t order_;
  std::size_t contexts_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::vector<double>> cum_rows_;
  std::vector<double> initial_;
  std::vector<double> cum_initial_;
  std::vector<std::vector<double>> prefix_;  // prefix_[j][v]: P(first j letters = v), j <= k
};

/// Draws an index from a cumulative distribution.
std::size_t sample_cumulative(const std::vector<double>& cum, std::mt19937_64& rng);

}  // namespace uct
