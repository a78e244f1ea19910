#pragma once

// Codelength providers: the bridge from codes to measures used by the
// hypothesis tests. Any uniquely decodable code works; the default is the
// ideal codelength -log2 R(x).

#include <memory>
#include <stdexcept>
#include <string>

#include "uct/estimators.hpp"

namespace uct {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProviderKind { IdealMeasure, ArithmeticCoder, ExternalCompressor };

std::string to_string(ProviderKind k);

class CodelengthProvider {
 public:
  virtual ~CodelengthProvider() = default;
  virtual ProviderKind kind() const = 0;
  virtual std::string name() const = 0;
  /// Codelength in bits of the whole (multi-)sample.
  virtual double codelength(const MultiSample& x) const = 0;
};

/// -log2 μ(x) for the measure produced by `make`. With integer_lengths the
/// value is rounded up to whole bits.
double ideal_codelength(const MultiSample& x, const EstimatorFactory& make = mixture_factory());

class IdealCodelength final : public CodelengthProvider {
 public:
  explicit IdealCodelength(EstimatorFactory make = mixture_factory(), bool integer_lengths = false,
                           std::string label = "ideal-r");
  ProviderKind kind() const override { return ProviderKind::IdealMeasure; }
  std::string name() const override { return label_; }
  double codelength(const MultiSample& x) const override;

 private:
  EstimatorFactory make_;
  bool integer_lengths_;
  std::string label_;
};

/// Bit count of the arithmetic coder's output (payload only, no container).
class ArithmeticCodelength final : public CodelengthProvider {
 public:
  explicit ArithmeticCodelength(EstimatorFactory make = mixture_factory(), std::string label = "arithmetic");
  ProviderKind kind() const override { return ProviderKind::ArithmeticCoder; }
  std::string name() const override { return label_; }
  double codelength(const MultiSample& x) const override;

 private:
  EstimatorFactory make_;
  std::string label_;
};

/// 8 × (compressed byte count) of an external program that reads the data
/// on standard input (one byte per symbol, samples concatenated) and writes
/// the compressed bytes to standard output. Container overhead is included.
class ExternalCompressor final : public CodelengthProvider {
 public:
  explicit ExternalCompressor(std::string command);
  ProviderKind kind() const override { return ProviderKind::ExternalCompressor; }
  std::string name() const override { return "external:" + command_; }
  double codelength(const MultiSample& x) const override;
  const std::string& command() const noexcept { return command_; }

 private:
  std::string command_;
};

double external_codelength(const MultiSample& x, const std::string& command);

using ProviderFactory = std::function<std::unique_ptr<CodelengthProvider>(std::size_t alphabet_size)>;

}  // namespace uct
