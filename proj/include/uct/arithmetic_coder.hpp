#pragma once

// Binary arithmetic coder with 62-bit registers driven by any sequential
// estimator, plus the "UCT1" container format.
//
// Container layout (big-endian):
//   "UCT1" | u16 alphabet size | u64 sequence length | u8 model id | payload
// The payload is the coder bit stream, zero-padded to a byte boundary.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "uct/estimators.hpp"

namespace uct {

class DecodeError : public std::runtime_error {
 public:
  DecodeError(const std::string& what, std::size_t bit_position)
      : std::runtime_error(what + " (bit " + std::to_string(bit_position) + ")"), position_(bit_position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

struct BitString {
  std::vector<std::uint8_t> bytes;  // MSB first, zero padded
  std::size_t bit_count = 0;

  void push(bool bit);
  bool at(std::size_t i) const { return (bytes[i / 8] >> (7 - i % 8)) & 1u; }
};

/// Cumulative frequencies over a total of 2^62 with every gap >= 4, so each
/// symbol keeps a nonempty interval while the range exceeds 2^60. This
/// floors every probability at 2^-60.
std::vector<std::uint64_t> quantize_cdf(std::span<const double> probs);

class ArithmeticEncoder {
 public:
  void encode(std::span<const std::uint64_t> cdf, Symbol a);
  BitString finish();

 private:
  void emit(bool bit);

  std::uint64_t low_ = 0;
  std::uint64_t high_ = (std::uint64_t{1} << 62) - 1;
  std::uint64_t pending_ = 0;
  BitString out_;
};

class ArithmeticDecoder {
 public:
  explicit ArithmeticDecoder(std::span<const std::uint8_t> payload);
  Symbol decode(std::span<const std::uint64_t> cdf);

 private:
  bool next_bit();

  std::span<const std::uint8_t> payload_;
  std::size_t pos_ = 0;
  std::uint64_t low_ = 0;
  std::uint64_t high_ = (std::uint64_t{1} << 62) - 1;
  std::uint64_t value_ = 0;
};

/// Encodes x with the model's sequential predictions. Model disagreement
/// between encoder and decoder is not detected.
BitString arithmetic_encode(const MultiSample& x, SequentialEstimator& model);
BitString arithmetic_encode(std::span<const Symbol> x, SequentialEstimator& model);
/// Decodes `length` symbols of a single sample.
std::vector<Symbol> arithmetic_decode(std::span<const std::uint8_t> payload, std::size_t length,
                                      SequentialEstimator& model);

/// Model identifier byte of the container.
///   0x00..0x7F  R mixture with maximum explicit order = id
///   0x80        Laplace
///   0x81..0xFE  KT of order id - 0x81
///   0xFF        uniform
struct ModelId {
  std::uint8_t value = MixtureEstimator::kDefaultMaxOrder;

  static ModelId mixture(std::size_t max_order);
  static ModelId laplace() { return {0x80}; }
  static ModelId kt(std::size_t order);
  static ModelId uniform() { return {0xFF}; }

  std::unique_ptr<SequentialEstimator> make(std::size_t alphabet_size) const;
  std::string describe() const;
};

struct Container {
  std::uint16_t alphabet_size = 0;
  std::uint64_t length = 0;
  ModelId model;
  std::vector<std::uint8_t> payload;
};

std::vector<std::uint8_t> serialize(const Container& c);
Container deserialize(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> compress(const SymbolSeq& x, ModelId model = {});
/// Returns the decoded symbols; the alphabet size is in the header.
std::vector<Symbol> decompress(std::span<const std::uint8_t> bytes, std::size_t* alphabet_size = nullptr);

}  // namespace uct
