#include "uct/side_info.hpp"

#include <cmath>

namespace uct {

PairAlphabet::PairAlphabet(std::size_t x_size, std::size_t y_size) : x_size_(x_size), y_size_(y_size) {
  if (x_size < 2) throw DomainError("side information: |X| must be >= 2");
  if (y_size < 1) throw DomainError("side information: |Y| must be >= 1");
}

Symbol PairAlphabet::pair(Symbol x, Symbol y) const {
  if (x >= x_size_ || y >= y_size_) throw DomainError("side information: pair outside alphabet");
  return static_cast<Symbol>(x * y_size_ + y);
}

std::pair<Symbol, Symbol> PairAlphabet::split(Symbol a) const {
  return {static_cast<Symbol>(a / y_size_), static_cast<Symbol>(a % y_size_)};
}

std::vector<double> side_info_distribution(const PairAlphabet& alphabet, std::span<const Pair> history,
                                           Symbol y_next, const EstimatorFactory& est) {
  if (alphabet.size() < 2) throw DomainError("side information: product alphabet too small");
  auto e = est(alphabet.size());
  e->begin_sample();
  for (const auto& [x, y] : history) e->update(alphabet.pair(x, y));
  // μ(h, (x, y)) / μ(h) is the estimator's conditional; μ(h) cancels.
  std::vector<double> logs(alphabet.x_size());
  for (Symbol x = 0; x < alphabet.x_size(); ++x) logs[x] = e->cond_log2(alphabet.pair(x, y_next));
  const double norm = log2_sum(logs);
  std::vector<double> out(alphabet.x_size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = std::exp2(logs[x] - norm);
  return out;
}

LogProb side_info_cond(Symbol x_next, const PairAlphabet& alphabet, std::span<const Pair> history,
                       Symbol y_next, const EstimatorFactory& est) {
  if (x_next >= alphabet.x_size()) throw DomainError("side information: x outside alphabet");
  auto e = est(alphabet.size());
  e->begin_sample();
  for (const auto& [x, y] : history) e->update(alphabet.pair(x, y));
  std::vector<double> logs(alphabet.x_size());
  for (Symbol x = 0; x < alphabet.x_size(); ++x) logs[x] = e->cond_log2(alphabet.pair(x, y_next));
  return LogProb::from_log2(logs[x_next] - log2_sum(logs));
}

}  // namespace uct
