#pragma once

// Prediction with side information: the alphabet is a product X × Y, the
// past pairs and the current y are known, and x is to be predicted.

#include <utility>
#include <vector>

#include "uct/estimators.hpp"

namespace uct {

/// A = X × Y with (x, y) ↦ x·|Y| + y.
class PairAlphabet {
 public:
  PairAlphabet(std::size_t x_size, std::size_t y_size);

  std::size_t x_size() const noexcept { return x_size_; }
  std::size_t y_size() const noexcept { return y_size_; }
  std::size_t size() const noexcept { return x_size_ * y_size_; }

  Symbol pair(Symbol x, Symbol y) const;
  std::pair<Symbol, Symbol> split(Symbol a) const;

 private:
  std::size_t x_size_;
  std::size_t y_size_;
};

using Pair = std::pair<Symbol, Symbol>;

/// μ(x_t | (x_1,y_1) … (x_{t-1},y_{t-1}), y_t) =
///   μ(history, (x_t, y_t)) / Σ_{x ∈ X} μ(history, (x, y_t)).
/// Returns the whole distribution over X.
std::vector<double> side_info_distribution(const PairAlphabet& alphabet, std::span<const Pair> history,
                                           Symbol y_next, const EstimatorFactory& est = mixture_factory());

LogProb side_info_cond(Symbol x_next, const PairAlphabet& alphabet, std::span<const Pair> history,
                       Symbol y_next, const EstimatorFactory& est = mixture_factory());

}  // namespace uct
