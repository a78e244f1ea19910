#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "uct/montecarlo.hpp"
#include "uct/testing.hpp"

using namespace uct;

namespace {

const Alphabet kBin = Alphabet::of_size(2);

/// Provider returning a fixed number of bits.
class FixedLength final : public CodelengthProvider {
 public:
  explicit FixedLength(double bits) : bits_(bits) {}
  ProviderKind kind() const override { return ProviderKind::IdealMeasure; }
  std::string name() const override { return "fixed"; }
  double codelength(const MultiSample&) const override { return bits_; }

 private:
  double bits_;
};

MultiSample alternating(std::size_t t) {
  std::vector<Symbol> v(t);
  for (std::size_t i = 0; i < t; ++i) v[i] = static_cast<Symbol>(i % 2);
  return MultiSample(kBin, {v});
}

}  // namespace

TEST_SUITE("testing") {
  TEST_CASE("empirical entropy examples") {
    CHECK(empirical_entropy(MultiSample(kBin, {{0, 1, 0, 1, 0}}), 0).value ==
          doctest::Approx(-(0.6 * std::log2(0.6) + 0.4 * std::log2(0.4))).epsilon(1e-12));
    CHECK(empirical_entropy(MultiSample(kBin, {{0, 0, 0, 0}}), 0).value == 0.0);
    const MultiSample alt = alternating(100);
    CHECK(empirical_entropy(alt, 1).value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(empirical_entropy(alt, 0).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(empirical_entropy(alt, 1).windows == 99);
    const MultiSample two(kBin, {{0, 1, 0, 1}, {1, 0, 1}});
    CHECK(empirical_entropy(two, 2).windows == 3);
  }

  TEST_CASE("empirical entropy agrees with a direct count oracle") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + rng() % 2, k = rng() % 3;
      oracle::Samples s(1 + rng() % 3);
      MultiSample x(Alphabet::of_size(n));
      std::size_t t = 0;
      for (auto& v : s) {
        v.resize(k + 1 + rng() % 12);
        for (auto& a : v) a = static_cast<std::uint32_t>(rng() % n);
        x.add_sample(std::vector<Symbol>(v.begin(), v.end()));
        t += v.size();
      }
      const auto h = empirical_entropy(x, k);
      REQUIRE(h.windows == t - k * s.size());
      REQUIRE(h.value * h.windows == doctest::Approx(oracle::empirical_entropy_bits(s, n, k)).epsilon(1e-10));
      REQUIRE(h.value >= 0.0);
      REQUIRE(h.value <= std::log2(n) + 1e-12);
    }
  }

  TEST_CASE("empirical entropy preconditions") {
    CHECK_THROWS_AS(empirical_entropy(MultiSample(kBin, {{0, 1}}), 2), DomainError);
    CHECK_THROWS_AS(empirical_entropy(MultiSample(kBin, {{0, 1, 1}, {1}}), 1), DomainError);
    CHECK_THROWS_AS(empirical_entropy(MultiSample(kBin), 0), DomainError);
  }

  TEST_CASE("identity test statistic, ties and zero-probability data") {
    const NullModel pi = NullModel::uniform(2);
    const MultiSample x(kBin, {{0, 1, 1, 0}});
    // A code matched to the null gives statistic zero.
    auto r = identity_test(x, pi, 0.05, FixedLength(4.0));
    CHECK(r.statistic_bits == 0.0);
    CHECK_FALSE(r.reject);
    // Statistic equal to the threshold accepts.
    r = identity_test(x, pi, 0.5, FixedLength(3.0));
    CHECK(r.statistic_bits == r.threshold_bits);
    CHECK(r.verdict() == "accept");
    r = identity_test(x, pi, 0.5, FixedLength(2.999));
    CHECK(r.reject);
    // The null gives the data probability zero.
    const NullModel degenerate = NullModel::iid({1.0, 0.0});
    r = identity_test(x, degenerate, 0.05, IdealCodelength());
    CHECK(std::isinf(r.statistic_bits));
    CHECK(r.reject);
    CHECK(r.to_json()["statistic_bits"] == "+inf");
    CHECK_THROWS_AS(identity_test(x, pi, 1.0, IdealCodelength()), DomainError);
    CHECK_THROWS_AS(identity_test(x, NullModel::uniform(3), 0.05, IdealCodelength()), DomainError);
  }

  TEST_CASE("identity test detects a biased coin") {
    std::mt19937_64 rng(1);
    const auto biased = NullModel::iid({0.9, 0.1});
    const MultiSample x(kBin, {biased.generate(10000, rng)});
    const auto r = identity_test(x, NullModel::uniform(2), 0.01, IdealCodelength());
    CHECK(r.reject);
    CHECK(r.statistic_bits > 4000);
  }

  TEST_CASE("serial-independence examples") {
    const auto r = serial_independence_test(alternating(10000), 0, 0.01, IdealCodelength());
    CHECK(r.reject);
    CHECK(r.statistic_bits > 9000);
    CHECK(r.threshold_bits == doctest::Approx(std::log2(100.0)));
    const MultiSample constant(kBin, {std::vector<Symbol>(1000, 1)});
    const auto c = serial_independence_test(constant, 0, 0.01, IdealCodelength());
    CHECK(c.statistic_bits <= 0.0);
    CHECK_FALSE(c.reject);
  }

  TEST_CASE("multi-sample SI statistic uses t - rm windows") {
    const MultiSample x(kBin, {{0, 1, 1, 0, 1}, {1, 1, 0}});
    const auto r = serial_independence_test(x, 1, 0.05, FixedLength(0.0));
    CHECK(r.statistic_bits == doctest::Approx(6 * empirical_entropy(x, 1).value));
    CHECK(r.lengths == std::vector<std::size_t>{5, 3});
  }

  TEST_CASE("shrinking alpha never turns a rejection into an acceptance") {
    std::mt19937_64 rng(4);
    const SourceModel chain(2, 1, {{0.7, 0.3}, {0.3, 0.7}});
    for (int trial = 0; trial < 20; ++trial) {
      const MultiSample x(kBin, {chain.generate(300, rng)});
      // Once rejected at a level, every larger level rejects.
      bool seen = false;
      for (double alpha : {0.001, 0.01, 0.05, 0.2, 0.5}) {
        const bool rej = serial_independence_test(x, 0, alpha, IdealCodelength()).reject;
        if (seen) REQUIRE(rej);
        seen = seen || rej;
      }
    }
  }

  TEST_CASE("Type I rate of the finite-alphabet tests stays within the bound") {
    const auto pi = NullModel::uniform(2);
    const std::size_t N = 300;
    const double alpha = 0.05;
    const auto id = count_rejections(N, 100, [&](std::mt19937_64& rng) {
      return identity_test(MultiSample(kBin, {pi.generate(300, rng)}), pi, alpha, IdealCodelength()).reject;
    });
    const auto si = count_rejections(N, 200, [&](std::mt19937_64& rng) {
      return serial_independence_test(MultiSample(kBin, {pi.generate(300, rng)}), 0, alpha, IdealCodelength()).reject;
    });
    CHECK(rejection_rate(id, N, alpha).within_bound);
    CHECK(rejection_rate(si, N, alpha).within_bound);
  }

  TEST_CASE("Lemma 1 on small random instances") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t n = 2 + rng() % 2, m = rng() % 3;
      std::vector<std::vector<double>> rows(static_cast<std::size_t>(std::pow(n, m)));
      for (auto& row : rows) {
        row.resize(n);
        double s = 0.0;
        for (auto& v : row) s += v = u(rng) + 1e-3;
        for (auto& v : row) v /= s;
      }
      const SourceModel theta(n, m, rows);
      MultiSample x(Alphabet::of_size(n));
      for (std::size_t r = 1 + rng() % 3; r > 0; --r) x.add_sample(theta.generate(m + 1 + rng() % 20, rng));
      const auto h = empirical_entropy(x, m);
      // θ(x) counts only the transitions; the first m letters of each sample
      // carry their own initial probability, which is at most one.
      double lp = 0.0;
      for (const auto& s : x.samples()) {
        std::uint64_t ctx = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (i >= m) lp += std::log2(theta.cond(ctx, s[i]));
          ctx = m ? (ctx * n + s[i]) % rows.size() : 0;
        }
      }
      REQUIRE(lp <= -static_cast<double>(h.windows) * h.value + 1e-9);
    }
  }

  TEST_CASE("JSON report schema") {
    const auto r = serial_independence_test(alternating(20), 0, 0.05, IdealCodelength());
    const Json j = r.to_json();
    for (const char* key : {"test", "alpha", "statistic_bits", "threshold_bits", "verdict", "provider", "order",
                            "lengths", "sub_reports"})
      CHECK(j.contains(key));
    CHECK(j["test"] == "serial-independence");
    CHECK(j["lengths"][0] == 20);
    CHECK(json_number(1.0 / 3).dump() == "0.333333333333");
    CHECK(json_number(-kInf) == "-inf");
  }

  TEST_CASE("null densities integrate per cell") {
    const Domain d(0.0, 2.0);
    const Partition p(d, 2);
    const auto pc = NullDensity::piecewise_constant({0.0, 0.5, 2.0}, {1.0, 1.0 / 3}).cell_probabilities(p);
    CHECK(pc[0] == doctest::Approx(0.5));
    CHECK(pc[1] == doctest::Approx(1.0 / 6));
    const auto fn = NullDensity::function([](double x) { return x / 2.0; }).cell_probabilities(p);
    CHECK(fn[0] == doctest::Approx(1.0 / 16).epsilon(1e-8));
    CHECK(fn[3] == doctest::Approx(7.0 / 16).epsilon(1e-8));
    CHECK(NullDensity::uniform(d).cell_probabilities(p)[2] == 0.25);
    CHECK_THROWS_AS(NullDensity::piecewise_constant({0.0, 1.0}, {1.0}).cell_probabilities(p), DomainError);
    CHECK_THROWS_AS(NullDensity::function([](double) { return 2.0; }).cell_probabilities(p), DomainError);
  }

  TEST_CASE("partition meta-test") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> xs(5000);
    for (auto& v : xs) v = u(rng);

    MetaTestConfig one_cell;
    one_cell.first_depth = 0;
    one_cell.max_depth = 0;
    auto r = partition_meta_test(xs, Domain(0, 1), one_cell);
    CHECK_FALSE(r.reject);
    REQUIRE(r.sub_reports.size() == 1);
    CHECK(r.sub_reports[0].statistic_bits == 0.0);

    MetaTestConfig si;
    si.max_depth = 4;
    r = partition_meta_test(xs, Domain(0, 1), si);
    CHECK_FALSE(r.reject);
    CHECK(r.sub_reports.size() == 4);
    double budget = 0.0;
    for (const auto& s : r.sub_reports) budget += s.alpha;
    CHECK(budget <= si.alpha);
    CHECK(r.sub_reports[1].alpha == doctest::Approx(si.alpha * omega(2)));

    const auto sign = sign_process_generate(0.4, 10000, 3);
    CHECK(partition_meta_test(sign, Domain(-1, 1), si).reject);

    MetaTestConfig id = si;
    id.kind = MetaKind::Identity;
    CHECK_THROWS_AS(partition_meta_test(xs, Domain(0, 1), id), DomainError);
    id.null = NullDensity::uniform(Domain(0, 1));
    CHECK_FALSE(partition_meta_test(xs, Domain(0, 1), id).reject);
    std::vector<double> squashed(xs);
    for (auto& v : squashed) v = v * v;
    CHECK(partition_meta_test(squashed, Domain(0, 1), id).reject);

    std::vector<double> outside{0.5, 1.5};
    CHECK_THROWS_AS(partition_meta_test(outside, Domain(0, 1), si), DomainError);
  }

  TEST_CASE("SI meta-test stops once no sub-test can reject") {
    CHECK(si_stop_depth(2, 0.5, 1, 8) == 1);
    CHECK(si_stop_depth(10000, 0.05, 1, 6) == 6);
    MetaTestConfig cfg;
    cfg.alpha = 0.5;
    const std::vector<double> two{0.1, 0.9};
    const auto r = partition_meta_test(two, Domain(0, 1), cfg);
    CHECK(r.stop_depth == 1u);
    CHECK(r.sub_reports.size() == 1);
  }
}
