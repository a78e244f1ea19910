#include "uct/arithmetic_coder.hpp"

#include <algorithm>
#include <cmath>

namespace uct {

namespace {

using u128 = unsigned __int128;

constexpr int kPrecision = 62;
constexpr std::uint64_t kTotal = std::uint64_t{1} << kPrecision;
constexpr std::uint64_t kHalf = kTotal >> 1;
constexpr std::uint64_t kQuarter = kTotal >> 2;
constexpr std::uint64_t kThreeQuarters = kHalf + kQuarter;
constexpr std::uint64_t kMinGap = 4;
// The decoder legitimately reads up to kPrecision - 2 bits past the end of
// the payload (plus byte padding); anything beyond means a truncated stream.
constexpr std::size_t kMaxOverrun = kPrecision + 8;

constexpr char kMagic[4] = {'U', 'C', 'T', '1'};

std::uint64_t scale(std::uint64_t range, std::uint64_t f) {
  return static_cast<std::uint64_t>((static_cast<u128>(range) * f) >> kPrecision);
}

}  // namespace

void BitString::push(bool bit) {
  if (bit_count % 8 == 0) bytes.push_back(0);
  if (bit) bytes.back() |= static_cast<std::uint8_t>(0x80u >> (bit_count % 8));
  ++bit_count;
}

std::vector<std::uint64_t> quantize_cdf(std::span<const double> probs) {
  const std::size_t n = probs.size();
  if (n < 2) throw DomainError("quantize_cdf: need at least two symbols");
  if (kMinGap * n >= kTotal / 2) throw DomainError("quantize_cdf: alphabet too large");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("quantize_cdf: invalid probability");
    sum += p;
  }
  if (!(sum > 0.0)) throw DomainError("quantize_cdf: probabilities sum to zero");

  const std::uint64_t free_mass = kTotal - kMinGap * n;
  std::vector<std::uint64_t> width(n);
  std::uint64_t used = 0;
  std::size_t best = 0;
  for (std::size_t a = 0; a < n; ++a) {
    const long double share = static_cast<long double>(probs[a] / sum) * static_cast<long double>(free_mass);
    auto w = static_cast<std::uint64_t>(std::floor(share));
    w = std::min(w, free_mass - used);
    width[a] = w;
    used += w;
    if (probs[a] > probs[best]) best = a;
  }
  width[best] += free_mass - used;
  std::vector<std::uint64_t> cdf(n + 1, 0);
  for (std::size_t a = 0; a < n; ++a) cdf[a + 1] = cdf[a] + width[a] + kMinGap;
  return cdf;
}

// ---------------------------------------------------------------- encoder

void ArithmeticEncoder::emit(bool bit) {
  out_.push(bit);
  for (; pending_ > 0; --pending_) out_.push(!bit);
}

void ArithmeticEncoder::encode(std::span<const std::uint64_t> cdf, Symbol a) {
  const std::uint64_t range = high_ - low_ + 1;
  high_ = low_ + scale(range, cdf[a + 1]) - 1;
  low_ = low_ + scale(range, cdf[a]);
  for (;;) {
    if (high_ < kHalf) {
      emit(false);
    } else if (low_ >= kHalf) {
      emit(true);
      low_ -= kHalf;
      high_ -= kHalf;
    } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
      ++pending_;
      low_ -= kQuarter;
      high_ -= kQuarter;
    } else {
      break;
    }
    low_ <<= 1;
    high_ = (high_ << 1) | 1;
  }
}

BitString ArithmeticEncoder::finish() {
  // Two more bits select a dyadic interval inside [low, high].
  ++pending_;
  emit(low_ >= kQuarter);
  return std::move(out_);
}

// ---------------------------------------------------------------- decoder

ArithmeticDecoder::ArithmeticDecoder(std::span<const std::uint8_t> payload) : payload_(payload) {
  for (int i = 0; i < kPrecision; ++i) value_ = (value_ << 1) | static_cast<std::uint64_t>(next_bit());
}

bool ArithmeticDecoder::next_bit() {
  const std::size_t i = pos_++;
  if (i / 8 < payload_.size()) return (payload_[i / 8] >> (7 - i % 8)) & 1u;
  if (i >= payload_.size() * 8 + kMaxOverrun) throw DecodeError("payload truncated", payload_.size() * 8);
  return false;
}

Symbol ArithmeticDecoder::decode(std::span<const std::uint64_t> cdf) {
  const std::uint64_t range = high_ - low_ + 1;
  const std::size_t n = cdf.size() - 1;
  if (value_ < low_ || value_ > high_) throw DecodeError("corrupted payload", pos_);
  // Largest a with low + scale(range, cdf[a]) <= value.
  std::size_t lo = 0, hi = n;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (low_ + scale(range, cdf[mid]) <= value_) lo = mid;
    else hi = mid;
  }
  const auto a = static_cast<Symbol>(lo);
  high_ = low_ + scale(range, cdf[a + 1]) - 1;
  low_ = low_ + scale(range, cdf[a]);
  for (;;) {
    if (high_ < kHalf) {
      // nothing to subtract
    } else if (low_ >= kHalf) {
      low_ -= kHalf;
      high_ -= kHalf;
      value_ -= kHalf;
    } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
      low_ -= kQuarter;
      high_ -= kQuarter;
      value_ -= kQuarter;
    } else {
      break;
    }
    low_ <<= 1;
    high_ = (high_ << 1) | 1;
    value_ = (value_ << 1) | static_cast<std::uint64_t>(next_bit());
  }
  return a;
}

// ---------------------------------------------------------------- drivers

BitString arithmetic_encode(std::span<const Symbol> x, SequentialEstimator& model) {
  MultiSample ms(Alphabet::of_size(model.alphabet_size()));
  ms.add_sample(std::vector<Symbol>(x.begin(), x.end()));
  return arithmetic_encode(ms, model);
}

BitString arithmetic_encode(const MultiSample& x, SequentialEstimator& model) {
  if (x.alphabet_size() != model.alphabet_size()) throw DomainError("model alphabet size mismatch");
  if (x.total_length() == 0) return {};
  ArithmeticEncoder enc;
  std::vector<double> probs(model.alphabet_size());
  for (const auto& sample : x.samples()) {
    model.begin_sample();
    for (Symbol a : sample) {
      model.predict(probs);
      enc.encode(quantize_cdf(probs), a);
      model.update(a);
    }
  }
  return enc.finish();
}

std::vector<Symbol> arithmetic_decode(std::span<const std::uint8_t> payload, std::size_t length,
                                      SequentialEstimator& model) {
  std::vector<Symbol> out;
  if (length == 0) return out;
  out.reserve(std::min<std::size_t>(length, std::size_t{1} << 20));
  ArithmeticDecoder dec(payload);
  std::vector<double> probs(model.alphabet_size());
  model.begin_sample();
  for (std::size_t i = 0; i < length; ++i) {
    model.predict(probs);
    const Symbol a = dec.decode(quantize_cdf(probs));
    out.push_back(a);
    model.update(a);
  }
  return out;
}

// ---------------------------------------------------------------- container

ModelId ModelId::mixture(std::size_t max_order) {
  if (max_order > 0x7F) throw DomainError("container: mixture order must be <= 127");
  return {static_cast<std::uint8_t>(max_order)};
}

ModelId ModelId::kt(std::size_t order) {
  if (order > 0xFE - 0x81) throw DomainError("container: KT order too large");
  return {static_cast<std::uint8_t>(0x81 + order)};
}

std::unique_ptr<SequentialEstimator> ModelId::make(std::size_t alphabet_size) const {
  if (value <= 0x7F) return std::make_unique<MixtureEstimator>(alphabet_size, value);
  if (value == 0x80) return std::make_unique<LaplaceEstimator>(alphabet_size);
  if (value == 0xFF) return std::make_unique<UniformEstimator>(alphabet_size);
  return std::make_unique<KtEstimator>(alphabet_size, value - 0x81u);
}

std::string ModelId::describe() const {
  if (value <= 0x7F) return "r(max_order=" + std::to_string(value) + ")";
  if (value == 0x80) return "laplace";
  if (value == 0xFF) return "uniform";
  return "kt(order=" + std::to_string(value - 0x81u) + ")";
}

std::vector<std::uint8_t> serialize(const Container& c) {
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  out.push_back(static_cast<std::uint8_t>(c.alphabet_size >> 8));
  out.push_back(static_cast<std::uint8_t>(c.alphabet_size & 0xFF));
  for (int s = 56; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(c.length >> s));
  out.push_back(c.model.value);
  out.insert(out.end(), c.payload.begin(), c.payload.end());
  return out;
}

Container deserialize(std::span<const std::uint8_t> bytes) {
  constexpr std::size_t kHeader = 4 + 2 + 8 + 1;
  if (bytes.size() < kHeader) throw DecodeError("container shorter than its header", bytes.size() * 8);
  if (!std::equal(kMagic, kMagic + 4, bytes.begin())) throw DecodeError("bad magic, expected UCT1", 0);
  Container c;
  c.alphabet_size = static_cast<std::uint16_t>((bytes[4] << 8) | bytes[5]);
  for (std::size_t i = 6; i < 14; ++i) c.length = (c.length << 8) | bytes[i];
  c.model.value = bytes[14];
  if (c.alphabet_size < 2) throw DecodeError("alphabet size must be >= 2", 4 * 8);
  c.payload.assign(bytes.begin() + kHeader, bytes.end());
  return c;
}

std::vector<std::uint8_t> compress(const SymbolSeq& x, ModelId model) {
  const std::size_t n = x.alphabet().size();
  if (n > 0xFFFF) throw DomainError("container: alphabet size exceeds 65535");
  auto est = model.make(n);
  Container c;
  c.alphabet_size = static_cast<std::uint16_t>(n);
  c.length = x.size();
  c.model = model;
  c.payload = arithmetic_encode(x.symbols(), *est).bytes;
  return serialize(c);
}

std::vector<Symbol> decompress(std::span<const std::uint8_t> bytes, std::size_t* alphabet_size) {
  Container c = deserialize(bytes);
  auto est = c.model.make(c.alphabet_size);
  if (alphabet_size) *alphabet_size = c.alphabet_size;
  constexpr std::size_t kHeaderBits = 15 * 8;
  try {
    return arithmetic_decode(c.payload, c.length, *est);
  } catch (const DecodeError& e) {
    throw DecodeError(std::string("decompress: ") + e.what(), kHeaderBits + e.position());
  }
}

}  // namespace uct
