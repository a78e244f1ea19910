#pragma once

// Alphabets, symbol sequences and multi-sample collections.
//
// Symbols are dense indices in [0, |A|). Labels are only used at the I/O
// boundary.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace uct {

using Symbol = std::uint32_t;

/// Thrown when an argument violates a mathematical precondition
/// (alphabet mismatch, out-of-range symbol, too-short sample, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class Alphabet {
 public:
  /// Labels "0", "1", ..., "n-1".
  static Alphabet of_size(std::size_t n);
  static Alphabet from_labels(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(Symbol s) const { return labels_.at(s); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Symbol> index_of(const std::string& label) const;
  bool single_char_labels() const noexcept;

  bool operator==(const Alphabet&) const = default;

 private:
  explicit Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {}
  std::vector<std::string> labels_;
};

class SymbolSeq {
 public:
  explicit SymbolSeq(Alphabet alphabet, std::vector<Symbol> symbols = {});

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }

  void push_back(Symbol s);

 private:
  Alphabet alphabet_;
  std::vector<Symbol> symbols_;
};

/// x^1 ⋄ x^2 ⋄ ... ⋄ x^r: independent samples from one source. Windows never
/// straddle sample boundaries.
class MultiSample {
 public:
  explicit MultiSample(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
  MultiSample(const SymbolSeq& seq);  // NOLINT: a single sample is a 1-sample collection
  MultiSample(Alphabet alphabet, std::vector<std::vector<Symbol>> samples);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
  std::size_t sample_count() const noexcept { return samples_.size(); }
  std::span<const Symbol> sample(std::size_t i) const { return samples_.at(i); }
  const std::vector<std::vector<Symbol>>& samples() const noexcept { return samples_; }
  std::size_t total_length() const noexcept;
  std::size_t max_sample_length() const noexcept;

  void add_sample(std::vector<Symbol> symbols);
  void add_sample(const SymbolSeq& seq);

 private:
  Alphabet alphabet_;
  std::vector<std::vector<Symbol>> samples_;
};

/// Number of sliding windows equal to `word`, summed per sample. A sample
/// shorter than the word contributes nothing.
std::size_t count_occurrences(const MultiSample& x, std::span<const Symbol> word);

}  // namespace uct
