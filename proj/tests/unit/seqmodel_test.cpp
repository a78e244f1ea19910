#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "uct/context_counts.hpp"
#include "uct/sequence.hpp"

using namespace uct;

namespace {

oracle::Samples as_samples(const MultiSample& x) {
  oracle::Samples s;
  for (const auto& v : x.samples()) s.emplace_back(v.begin(), v.end());
  return s;
}

MultiSample random_multisample(std::mt19937_64& rng, std::size_t n, std::size_t max_samples, std::size_t max_len) {
  MultiSample x(Alphabet::of_size(n));
  const std::size_t r = 1 + rng() % max_samples;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Symbol> s(rng() % (max_len + 1));
    for (auto& a : s) a = static_cast<Symbol>(rng() % n);
    x.add_sample(std::move(s));
  }
  return x;
}

}  // namespace

TEST_SUITE("seqmodel") {
  TEST_CASE("alphabet construction and lookup") {
    const auto a = Alphabet::from_labels({"A", "C", "G", "T"});
    CHECK(a.size() == 4);
    CHECK(a.index_of("G") == 2u);
    CHECK_FALSE(a.index_of("U").has_value());
    CHECK(a.single_char_labels());
    CHECK(Alphabet::of_size(12).label(11) == "11");
    CHECK_FALSE(Alphabet::of_size(12).single_char_labels());
    CHECK_THROWS_AS(Alphabet::from_labels({"a"}), DomainError);
    CHECK_THROWS_AS(Alphabet::from_labels({"a", "a"}), DomainError);
    CHECK_THROWS_AS(Alphabet::from_labels({"a", ""}), DomainError);
  }

  TEST_CASE("symbols outside the alphabet are rejected") {
    CHECK_THROWS_AS(SymbolSeq(Alphabet::of_size(2), {0, 1, 2}), DomainError);
    SymbolSeq s(Alphabet::of_size(3));
    s.push_back(2);
    CHECK_THROWS_AS(s.push_back(3), DomainError);
    CHECK_THROWS_AS(MultiSample(Alphabet::of_size(2), {{0, 1}, {5}}), DomainError);
  }

  TEST_CASE("multi-sample bookkeeping") {
    MultiSample x(Alphabet::of_size(2), {{0, 1, 0, 1}, {1, 0, 1}});
    CHECK(x.sample_count() == 2);
    CHECK(x.total_length() == 7);
    CHECK(x.max_sample_length() == 4);
    CHECK_THROWS_AS(x.add_sample(SymbolSeq(Alphabet::of_size(3), {0})), DomainError);
  }

  TEST_CASE("occurrence counts never straddle a sample boundary") {
    MultiSample x(Alphabet::of_size(2), {{0, 1, 0, 1}, {1, 0, 1}});
    const std::vector<Symbol> w01{0, 1}, w11{1, 1}, w10{1, 0}, w0101{0, 1, 0, 1};
    CHECK(count_occurrences(x, w01) == 3);
    CHECK(count_occurrences(x, w11) == 0);  // "1|1" across the boundary is not a window
    CHECK(count_occurrences(x, w10) == 2);
    CHECK(count_occurrences(x, w0101) == 1);
    const std::vector<Symbol> longer(5, 0);
    CHECK(count_occurrences(x, longer) == 0);
  }

  TEST_CASE("context counts match brute-force window counts") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + rng() % 2;
      const MultiSample x = random_multisample(rng, n, 3, 12);
      const auto ref = as_samples(x);
      const std::size_t K = 3;
      const ContextCounts c = ContextCounts::build(x, K);
      for (std::size_t k = 0; k <= K; ++k) {
        oracle::for_each_word(n, k, [&](const oracle::Word& v) {
          const std::vector<Symbol> ctx(v.begin(), v.end());
          std::uint64_t sum = 0;
          for (Symbol a = 0; a < n; ++a) {
            auto va = v;
            va.push_back(a);
            REQUIRE(c.count(ctx, a) == oracle::count(ref, va));
            REQUIRE(count_occurrences(x, std::vector<Symbol>(va.begin(), va.end())) == oracle::count(ref, va));
            sum += c.count(ctx, a);
          }
          REQUIRE(c.total(ctx) == sum);
        });
      }
    }
  }

  TEST_CASE("incremental append equals batch construction") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
      const MultiSample x = random_multisample(rng, 3, 4, 10);
      ContextCounts inc(3, 2);
      for (const auto& s : x.samples()) {
        inc.begin_sample();
        for (Symbol a : s) inc.append(a);
      }
      const ContextCounts batch = ContextCounts::build(x, 2);
      for (std::size_t k = 0; k <= 2; ++k) {
        std::size_t pairs = 0;
        batch.for_each_pair(k, [&](ContextCounts::Packed v, Symbol a, std::uint64_t n) {
          REQUIRE(inc.count(k, v, a) == n);
          ++pairs;
        });
        std::size_t inc_pairs = 0;
        inc.for_each_pair(k, [&](ContextCounts::Packed, Symbol, std::uint64_t) { ++inc_pairs; });
        REQUIRE(pairs == inc_pairs);
      }
    }
  }

  TEST_CASE("current context tracks the last k symbols of the sample") {
    ContextCounts c(2, 3);
    c.begin_sample();
    CHECK(c.current_context(0) == 0u);
    CHECK_FALSE(c.current_context(1).has_value());
    for (Symbol a : {1, 0, 1}) c.append(a);
    const std::vector<Symbol> tail{1, 0, 1};
    CHECK(c.current_context(3) == c.pack(tail));
    c.begin_sample();
    CHECK_FALSE(c.current_context(1).has_value());
    CHECK_THROWS_AS(c.append(2), DomainError);
  }

  TEST_CASE("orders too large to pack are refused") {
    CHECK(ContextCounts::max_supported_order(2) == 62);
    CHECK_THROWS_AS(ContextCounts(2, 63), DomainError);
    CHECK_NOTHROW(ContextCounts(256, ContextCounts::max_supported_order(256)));
  }
}
