#include "uct/context_counts.hpp"

#include <algorithm>

namespace uct {

std::size_t ContextCounts::max_supported_order(std::size_t alphabet_size) {
  if (alphabet_size < 2) return 0;
  // Largest k with alphabet_size^(k+1) <= 2^63.
  constexpr Packed kLimit = Packed{1} << 63;
  std::size_t k = 0;
  Packed p = alphabet_size;
  while (p <= kLimit / alphabet_size) {
    p *= alphabet_size;
    ++k;
  }
  return k;
}

ContextCounts::ContextCounts(std::size_t alphabet_size, std::size_t max_order)
    : alphabet_size_(alphabet_size), max_order_(max_order), levels_(max_order + 1),
      ctx_(max_order + 1, 0) {
  if (alphabet_size < 2) throw DomainError("ContextCounts: alphabet size must be >= 2");
  if (max_order > max_supported_order(alphabet_size))
    throw DomainError("ContextCounts: order " + std::to_string(max_order) +
                      " too large for alphabet of size " + std::to_string(alphabet_size));
}

ContextCounts ContextCounts::build(const MultiSample& x, std::size_t max_order) {
  ContextCounts c(x.alphabet_size(), max_order);
  for (const auto& sample : x.samples()) {
    c.begin_sample();
    for (Symbol a : sample) c.append(a);
  }
  return c;
}

void ContextCounts::begin_sample() {
  pos_ = 0;
  ++samples_;
}

void ContextCounts::append(Symbol a) {
  if (a >= alphabet_size_) throw DomainError("ContextCounts::append: symbol outside alphabet");
  if (samples_ == 0) samples_ = 1;
  const auto A = static_cast<Packed>(alphabet_size_);
  const std::size_t top = std::min(max_order_, pos_);
  for (std::size_t k = 0; k <= top; ++k) {
    Level& lv = levels_[k];
    ++lv.pairs[ctx_[k] * A + a];
    ++lv.totals[ctx_[k]];
  }
  // Shift: the new order-k context is the old order-(k-1) context followed by a.
  for (std::size_t k = max_order_; k >= 1; --k) {
    if (pos_ + 1 >= k) ctx_[k] = ctx_[k - 1] * A + a;
  }
  ++pos_;
  ++total_;
}

std::optional<ContextCounts::Packed> ContextCounts::current_context(std::size_t k) const {
  if (k > max_order_ || pos_ < k) return std::nullopt;
  return ctx_[k];
}

std::uint64_t ContextCounts::count(std::size_t k, Packed context, Symbol a) const {
  const Level& lv = levels_.at(k);
  auto it = lv.pairs.find(context * alphabet_size_ + a);
  return it == lv.pairs.end() ? 0 : it->second;
}

std::uint64_t ContextCounts::total(std::size_t k, Packed context) const {
  const Level& lv = levels_.at(k);
  auto it = lv.totals.find(context);
  return it == lv.totals.end() ? 0 : it->second;
}

ContextCounts::Packed ContextCounts::pack(std::span<const Symbol> context) const {
  if (context.size() > max_order_) throw DomainError("context longer than max order");
  Packed p = 0;
  for (Symbol s : context) {
    if (s >= alphabet_size_) throw DomainError("context symbol outside alphabet");
    p = p * alphabet_size_ + s;
  }
  return p;
}

std::uint64_t ContextCounts::count(std::span<const Symbol> context, Symbol a) const {
  return count(context.size(), pack(context), a);
}

std::uint64_t ContextCounts::total(std::span<const Symbol> context) const {
  return total(context.size(), pack(context));
}

}  // namespace uct
