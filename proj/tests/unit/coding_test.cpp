#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "uct/arithmetic_coder.hpp"
#include "uct/codelength.hpp"

using namespace uct;

namespace {

/// Fixed i.i.d. distribution as a sequential estimator.
class IidModel final : public SequentialEstimator {
 public:
  explicit IidModel(std::vector<double> p) : p_(std::move(p)) {}
  std::size_t alphabet_size() const override { return p_.size(); }
  void begin_sample() override {}
  using SequentialEstimator::predict;
  void predict(std::span<double> probs) const override { std::copy(p_.begin(), p_.end(), probs.begin()); }
  void update(Symbol a) override { log2_ += std::log2(p_[a]); }
  LogProb log_prob() const override { return LogProb::from_log2(log2_); }
  std::unique_ptr<SequentialEstimator> clone() const override { return std::make_unique<IidModel>(*this); }
  std::string name() const override { return "iid"; }

 private:
  std::vector<double> p_;
  double log2_ = 0.0;
};

std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t n) {
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> p(n);
  double s = 0.0;
  for (auto& v : p) s += v = g(rng) + 0.01;
  for (auto& v : p) v /= s;
  return p;
}

}  // namespace

TEST_SUITE("coding") {
  TEST_CASE("quantized CDF keeps every symbol reachable") {
    const std::vector<double> p{1.0, 0.0, 1e-30};
    const auto cdf = quantize_cdf(p);
    REQUIRE(cdf.size() == 4);
    CHECK(cdf.front() == 0);
    CHECK(cdf.back() == std::uint64_t{1} << 62);
    for (std::size_t i = 0; i < 3; ++i) CHECK(cdf[i + 1] - cdf[i] >= 4);
  }

  TEST_CASE("round trip and length bound for random models") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 2 + rng() % 6;
      IidModel model(random_distribution(rng, n));
      std::vector<Symbol> x(rng() % 200);
      for (auto& a : x) a = static_cast<Symbol>(rng() % n);
      IidModel enc = model, dec = model, meas = model;
      const BitString bits = arithmetic_encode(x, enc);
      REQUIRE(arithmetic_decode(bits.bytes, x.size(), dec) == x);
      for (Symbol a : x) meas.update(a);
      REQUIRE(bits.bit_count <= std::ceil(meas.log_prob().bits()) + 2);
    }
  }

  TEST_CASE("round trip with adaptive estimators") {
    std::mt19937_64 rng(2);
    for (const auto& make : {mixture_factory(), kt_factory(2), laplace_factory()}) {
      std::vector<Symbol> x(500);
      for (auto& a : x) a = static_cast<Symbol>(rng() % 3 == 0 ? 1 : 0);
      auto enc = make(2), dec = make(2);
      const BitString bits = arithmetic_encode(x, *enc);
      CHECK(arithmetic_decode(bits.bytes, x.size(), *dec) == x);
      CHECK(bits.bit_count <= std::ceil(enc->log_prob().bits()) + 2);
    }
  }

  TEST_CASE("alternating sequence under R") {
    std::vector<Symbol> x;
    for (int i = 0; i < 10; ++i) x.push_back(i % 2);
    MixtureEstimator r(2);
    const auto bits = arithmetic_encode(x, r);
    CHECK(bits.bit_count <= std::ceil(r_prob(MultiSample(Alphabet::of_size(2), {x})).bits()) + 2);
  }

  TEST_CASE("Kraft sum of coder lengths by enumeration") {
    for (const auto& make : {mixture_factory(), kt_factory(1)}) {
      for (std::size_t t = 0; t <= 6; ++t) {
        double kraft = 0.0, kraft_ideal = 0.0;
        oracle::for_each_word(2, t, [&](const oracle::Word& w) {
          const std::vector<Symbol> x(w.begin(), w.end());
          auto m = make(2);
          const auto bits = arithmetic_encode(x, *m);
          kraft += std::exp2(-static_cast<double>(bits.bit_count));
          kraft_ideal += m->log_prob().prob();
          // The ideal length never exceeds the coder's.
          REQUIRE(m->log_prob().bits() <= static_cast<double>(bits.bit_count) + 1e-9);
        });
        CHECK(kraft <= 1.0 + 1e-12);
        CHECK(kraft_ideal == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("container format") {
    const SymbolSeq x(Alphabet::of_size(3), {0, 2, 1, 1, 0, 2, 2});
    const auto bytes = compress(x, ModelId::kt(1));
    REQUIRE(bytes.size() >= 15);
    CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "UCT1");
    CHECK(bytes[4] == 0);
    CHECK(bytes[5] == 3);
    CHECK(bytes[13] == 7);
    CHECK(bytes[14] == 0x82);
    std::size_t n = 0;
    CHECK(decompress(bytes, &n) == std::vector<Symbol>(x.symbols().begin(), x.symbols().end()));
    CHECK(n == 3);

    const auto c = deserialize(bytes);
    CHECK(serialize(c) == bytes);
    CHECK(ModelId::mixture(16).value == 16);
    CHECK(ModelId::laplace().describe() == "laplace");
    CHECK(ModelId::kt(0).value == 0x81);
    CHECK(ModelId::uniform().make(4)->name() == "uniform");
  }

  TEST_CASE("empty input yields a header-only container") {
    const SymbolSeq empty(Alphabet::of_size(2));
    const auto bytes = compress(empty);
    CHECK(bytes.size() == 15);
    CHECK(decompress(bytes).empty());
  }

  TEST_CASE("every model id round-trips") {
    std::mt19937_64 rng(8);
    std::vector<Symbol> v(300);
    for (auto& a : v) a = static_cast<Symbol>(rng() % 4);
    const SymbolSeq x(Alphabet::of_size(4), v);
    for (ModelId m : {ModelId::mixture(0), ModelId::mixture(5), ModelId::laplace(), ModelId::kt(0), ModelId::kt(3),
                      ModelId::uniform()})
      CHECK(decompress(compress(x, m)) == v);
  }

  TEST_CASE("malformed containers raise decode errors") {
    const SymbolSeq x(Alphabet::of_size(2), std::vector<Symbol>(200, 1));
    auto bytes = compress(x);
    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK_THROWS_AS(decompress(bad_magic), DecodeError);
    CHECK_THROWS_AS(decompress(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 10)), DecodeError);
    // A stream claiming far more symbols than it carries runs out of bits.
    std::vector<std::uint8_t> random_payload(bytes.begin(), bytes.begin() + 15);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 4; ++i) random_payload.push_back(static_cast<std::uint8_t>(rng()));
    random_payload[12] = 0xFF;
    random_payload[11] = 0xFF;
    CHECK_THROWS_AS(decompress(random_payload), DecodeError);
    try {
      decompress(bad_magic);
    } catch (const DecodeError& e) {
      CHECK(e.position() == 0);
    }
  }

  TEST_CASE("codelength providers") {
    const MultiSample x(Alphabet::of_size(2), {{0, 0}});
    CHECK(IdealCodelength().codelength(x) == doctest::Approx(-std::log2(r_prob(x).prob())));
    CHECK(IdealCodelength().codelength(x) == doctest::Approx(1.756).epsilon(1e-3));
    CHECK(IdealCodelength(mixture_factory(), true).codelength(x) == 2.0);
    const auto uniform = [](std::size_t n) { return std::make_unique<UniformEstimator>(n); };
    const MultiSample y(Alphabet::of_size(3), {{0, 1, 2, 2, 1}});
    CHECK(ideal_codelength(y, uniform) == doctest::Approx(5 * std::log2(3.0)));
    const ArithmeticCodelength arith;
    CHECK(arith.codelength(y) >= IdealCodelength().codelength(y) - 1e-9);
    CHECK(arith.kind() == ProviderKind::ArithmeticCoder);
    CHECK(to_string(ProviderKind::IdealMeasure) == "ideal-measure");
  }

  TEST_CASE("external compressor") {
    const ExternalCompressor gz("gzip -c -n");
    const MultiSample constant(Alphabet::of_size(2), {std::vector<Symbol>(10000, 0)});
    CHECK(gz.codelength(constant) < 10000.0);
    std::mt19937_64 rng(5);
    std::vector<Symbol> bytes(10000);
    for (auto& b : bytes) b = static_cast<Symbol>(rng() % 256);
    const double random_bits = gz.codelength(MultiSample(Alphabet::of_size(256), {bytes}));
    CHECK(random_bits >= 8 * 10000 - 64);
    CHECK(gz.codelength(MultiSample(Alphabet::of_size(2))) > 0);
    CHECK(gz.codelength(constant) == gz.codelength(constant));
    CHECK_THROWS_AS(ExternalCompressor("false").codelength(constant), IoError);
    CHECK_THROWS_AS(ExternalCompressor("").codelength(constant), IoError);
    CHECK_THROWS_AS(gz.codelength(MultiSample(Alphabet::of_size(300), {{1}})), DomainError);
  }
}
