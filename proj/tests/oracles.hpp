#pragma once

// Straightforward reference implementations used as test oracles. They
// recount everything from scratch and share no code with the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

using Word = std::vector<std::uint32_t>;
using Samples = std::vector<Word>;

inline double omega(std::size_t i) {
  return i == 1 ? 1.0 - 1.0 / std::log2(3.0) : 1.0 / std::log2(i + 1.0) - 1.0 / std::log2(i + 2.0);
}

inline std::size_t count(const Samples& x, const Word& w) {
  std::size_t n = 0;
  for (const auto& s : x)
    for (std::size_t i = 0; i + w.size() <= s.size(); ++i)
      if (std::equal(w.begin(), w.end(), s.begin() + static_cast<std::ptrdiff_t>(i))) ++n;
  return n;
}

/// Calls f on every word of length t over n letters.
inline void for_each_word(std::size_t n, std::size_t t, const std::function<void(const Word&)>& f) {
  Word w(t, 0);
  while (true) {
    f(w);
    std::size_t i = t;
    while (i > 0 && ++w[i - 1] == n) w[--i] = 0;
    if (i == 0) return;
  }
}

/// Laplace probability by the running product.
inline double laplace(const Word& x, std::size_t n) {
  std::vector<double> c(n, 0.0);
  double p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    p *= (c[x[i]] + 1.0) / (static_cast<double>(i) + static_cast<double>(n));
    c[x[i]] += 1.0;
  }
  return p;
}

/// K_m of a multi-sample by the running product: the first m letters of a
/// sample cost 1/n, every later letter pays the KT ratio of its context
/// counted over all earlier windows.
inline double kt(const Samples& x, std::size_t n, std::size_t m) {
  std::map<Word, std::vector<double>> counts;
  double p = 1.0;
  for (const auto& s : x) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i < m) {
        p /= static_cast<double>(n);
        continue;
      }
      Word ctx(s.begin() + static_cast<std::ptrdiff_t>(i - m), s.begin() + static_cast<std::ptrdiff_t>(i));
      auto& c = counts.try_emplace(ctx, std::vector<double>(n, 0.0)).first->second;
      double total = 0.0;
      for (double v : c) total += v;
      p *= (c[s[i]] + 0.5) / (total + static_cast<double>(n) / 2.0);
      c[s[i]] += 1.0;
    }
  }
  return p;
}

/// R as the full infinite mixture: K_i for i >= the longest sample equals
/// n^{-t}, so the tail sums to n^{-t} / log2(L + 2).
inline double r(const Samples& x, std::size_t n) {
  std::size_t L = 0, t = 0;
  for (const auto& s : x) {
    L = std::max(L, s.size());
    t += s.size();
  }
  double p = 0.0;
  for (std::size_t i = 0; i < L; ++i) p += omega(i + 1) * kt(x, n, i);
  p += std::pow(static_cast<double>(n), -static_cast<double>(t)) / std::log2(L + 2.0);
  return p;
}

/// (t - km)·h*_k in bits from raw word counts.
inline double empirical_entropy_bits(const Samples& x, std::size_t n, std::size_t k) {
  double bits = 0.0;
  for_each_word(n, k, [&](const Word& v) {
    double nv = 0.0;
    std::vector<double> nva(n);
    for (std::uint32_t a = 0; a < n; ++a) {
      Word va = v;
      va.push_back(a);
      nva[a] = static_cast<double>(count(x, va));
      nv += nva[a];
    }
    for (double c : nva)
      if (c > 0) bits -= c * std::log2(c / nv);
  });
  return bits;
}

}  // namespace oracle
