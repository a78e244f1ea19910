#include "uct/sequence.hpp"

#include <algorithm>
#include <unordered_set>

namespace uct {

Alphabet Alphabet::of_size(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return from_labels(std::move(labels));
}

Alphabet Alphabet::from_labels(std::vector<std::string> labels) {
  if (labels.size() < 2) throw DomainError("alphabet must contain at least 2 symbols");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw DomainError("alphabet labels must be nonempty");
    if (!seen.insert(l).second) throw DomainError("duplicate alphabet label '" + l + "'");
  }
  return Alphabet(std::move(labels));
}

std::optional<Symbol> Alphabet::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Symbol>(it - labels_.begin());
}

bool Alphabet::single_char_labels() const noexcept {
  return std::all_of(labels_.begin(), labels_.end(),
                     [](const std::string& l) { return l.size() == 1; });
}

SymbolSeq::SymbolSeq(Alphabet alphabet, std::vector<Symbol> symbols)
    : alphabet_(std::move(alphabet)), symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] >= alphabet_.size())
      throw DomainError("symbol " + std::to_string(symbols_[i]) + " at position " +
                        std::to_string(i) + " outside alphabet of size " +
                        std::to_string(alphabet_.size()));
  }
}

void SymbolSeq::push_back(Symbol s) {
  if (s >= alphabet_.size()) throw DomainError("symbol outside alphabet");
  symbols_.push_back(s);
}

MultiSample::MultiSample(const SymbolSeq& seq) : alphabet_(seq.alphabet()) {
  samples_.emplace_back(seq.symbols().begin(), seq.symbols().end());
}

MultiSample::MultiSample(Alphabet alphabet, std::vector<std::vector<Symbol>> samples)
    : alphabet_(std::move(alphabet)) {
  for (auto& s : samples) add_sample(std::move(s));
}

std::size_t MultiSample::total_length() const noexcept {
  std::size_t t = 0;
  for (const auto& s : samples_) t += s.size();
  return t;
}

std::size_t MultiSample::max_sample_length() const noexcept {
  std::size_t m = 0;
  for (const auto& s : samples_) m = std::max(m, s.size());
  return m;
}

void MultiSample::add_sample(std::vector<Symbol> symbols) {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] >= alphabet_.size())
      throw DomainError("symbol " + std::to_string(symbols[i]) + " at position " +
                        std::to_string(i) + " of sample " + std::to_string(samples_.size()) +
                        " outside alphabet");
  }
  samples_.push_back(std::move(symbols));
}

void MultiSample::add_sample(const SymbolSeq& seq) {
  if (!(seq.alphabet() == alphabet_)) throw DomainError("sample over a different alphabet");
  samples_.emplace_back(seq.symbols().begin(), seq.symbols().end());
}

std::size_t count_occurrences(const MultiSample& x, std::span<const Symbol> word) {
  if (word.empty()) throw DomainError("count_occurrences: word must be nonempty");
  for (Symbol s : word)
    if (s >= x.alphabet_size()) throw DomainError("word symbol outside alphabet");
  std::size_t n = 0;
  for (const auto& sample : x.samples()) {
    if (sample.size() < word.size()) continue;
    for (std::size_t i = 0; i + word.size() <= sample.size(); ++i)
      if (std::equal(word.begin(), word.end(), sample.begin() + static_cast<std::ptrdiff_t>(i))) ++n;
  }
  return n;
}

}  // namespace uct
