#pragma once

// Empirical Shannon entropy and the compression-based hypothesis tests:
// identity (goodness of fit), serial independence, and the partition
// meta-test for real-valued data.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uct/codelength.hpp"
#include "uct/json.hpp"
#include "uct/realvalued.hpp"
#include "uct/source_model.hpp"

namespace uct {

struct EmpiricalEntropy {
  std::size_t order = 0;
  double value = 0.0;       // bits per symbol
  std::size_t windows = 0;  // t - k·r
};

/// h*_k of a single or multi-sample input. Every sample must be longer
/// than k.
EmpiricalEntropy empirical_entropy(const MultiSample& x, std::size_t k);

/// Fully specified null source for the identity test.
using NullModel = SourceModel;

struct TestReport {
  std::string test;
  double alpha = 0.0;
  double statistic_bits = 0.0;
  double threshold_bits = 0.0;
  bool reject = false;
  std::string provider;
  std::optional<std::size_t> order;
  std::vector<std::size_t> lengths;
  std::vector<TestReport> sub_reports;

  std::optional<double> codelength_bits;
  std::optional<double> reference_bits;  // -log2 π(x) or (t - rm)·h*_m
  std::optional<std::size_t> depth;
  std::optional<std::size_t> stop_depth;

  std::string verdict() const { return reject ? "reject" : "accept"; }
  Json to_json() const;
};

/// Throws DomainError unless 0 < alpha < 1.
void check_alpha(double alpha);

/// Rejects iff -log2 π(x) - |φ(x)| > -log2 α.
TestReport identity_test(const MultiSample& x, const NullModel& pi, double alpha,
                         const CodelengthProvider& provider);

/// Rejects iff (t - rm)·h*_m(x) - |φ(x)| > log2(1/α).
TestReport serial_independence_test(const MultiSample& x, std::size_t m, double alpha,
                                    const CodelengthProvider& provider);

/// Null density on the domain for the identity meta-test.
class NullDensity {
 public:
  static NullDensity uniform(const Domain& d);
  /// Constant value[j] on [edges[j], edges[j+1]); edges must cover the domain.
  static NullDensity piecewise_constant(std::vector<double> edges, std::vector<double> values);
  /// Arbitrary density, integrated over cells by adaptive Simpson.
  static NullDensity function(std::function<double(double)> f);

  /// π_Λ for the cells of the partition, integrated exactly when piecewise
  /// constant and to relative tolerance 1e-8 otherwise.
  std::vector<double> cell_probabilities(const Partition& p) const;

 private:
  std::vector<double> edges_;
  std::vector<double> values_;
  std::function<double(double)> f_;
  bool uniform_ = false;
};

enum class MetaKind { Identity, SerialIndependence };

struct MetaTestConfig {
  MetaKind kind = MetaKind::SerialIndependence;
  double alpha = 0.05;
  std::size_t first_depth = 1;
  std::size_t max_depth = 8;
  /// Codelength provider for the alphabet of each partition. Defaults to
  /// the ideal codelength under R.
  ProviderFactory provider;
  /// Required for MetaKind::Identity.
  std::optional<NullDensity> null;
};

/// Runs the finite-alphabet test on the dyadic quantizations of the data at
/// depths first_depth, first_depth+1, ..., sub-test i at level α·ω_i, and
/// rejects if any sub-test rejects.
TestReport partition_meta_test(std::span<const double> data, const Domain& domain, const MetaTestConfig& config);

/// Depth after which no SI sub-test can reject: sub-test i cannot exceed
/// t·log2 min(2^depth, t) bits, which stops growing once 2^depth >= t while
/// its threshold -log2(α ω_i) keeps growing.
std::size_t si_stop_depth(std::size_t t, double alpha, std::size_t first_depth, std::size_t max_depth);

}  // namespace uct
