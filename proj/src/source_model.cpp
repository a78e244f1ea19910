#include "uct/source_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace uct {

namespace {

constexpr double kRowTolerance = 1e-9;

std::uint64_t ipow(std::size_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > (std::uint64_t{1} << 40) / base) throw DomainError("source model too large");
    r *= base;
  }
  return r;
}

std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> c(p.size());
  std::partial_sum(p.begin(), p.end(), c.begin());
  if (!c.empty()) c.back() = 1.0;
  return c;
}

void check_distribution(const std::vector<double>& p, std::size_t n, const std::string& what) {
  if (p.size() != n)
    throw DomainError(what + ": expected " + std::to_string(n) + " entries, got " + std::to_string(p.size()));
  double s = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError(what + ": negative or non-finite entry");
    s += v;
  }
  if (std::abs(s - 1.0) > kRowTolerance) throw DomainError(what + ": entries sum to " + std::to_string(s));
}

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0) h -= v * std::log2(v);
  return h;
}

}  // namespace

std::size_t sample_cumulative(const std::vector<double>& cum, std::mt19937_64& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  // upper_bound never selects a zero-probability entry.
  auto it = std::upper_bound(cum.begin(), cum.end(), u);
  if (it == cum.end()) --it;
  return static_cast<std::size_t>(it - cum.begin());
}

SourceModel::SourceModel(std::size_t alphabet_size, std::size_t order,
                         std::vector<std::vector<double>> rows, std::optional<std::vector<double>> initial)
    : alphabet_size_(alphabet_size), order_(order), contexts_(ipow(alphabet_size, order)),
      rows_(std::move(rows)) {
  if (alphabet_size < 2) throw DomainError("source model: alphabet size must be >= 2");
  if (rows_.size() != contexts_)
    throw DomainError("source model: expected " + std::to_string(contexts_) + " rows, got " +
                      std::to_string(rows_.size()));
  for (std::size_t v = 0; v < contexts_; ++v) {
    check_distribution(rows_[v], alphabet_size_, "row " + std::to_string(v));
    cum_rows_.push_back(cumulative(rows_[v]));
  }
  if (initial) {
    check_distribution(*initial, contexts_, "initial");
    initial_ = std::move(*initial);
  } else {
    initial_ = stationary();
  }
  cum_initial_ = cumulative(initial_);

  // prefix_[j] is the marginal of the first j letters of the initial k-tuple.
  prefix_.resize(order_ + 1);
  prefix_[order_] = initial_;
  for (std::size_t j = order_; j-- > 0;) {
    prefix_[j].assign(ipow(alphabet_size_, j), 0.0);
    for (std::size_t v = 0; v < prefix_[j + 1].size(); ++v) prefix_[j][v / alphabet_size_] += prefix_[j + 1][v];
  }
}

SourceModel SourceModel::iid(std::vector<double> p) {
  const std::size_t n = p.size();
  return SourceModel(n, 0, {std::move(p)});
}

SourceModel SourceModel::uniform(std::size_t alphabet_size) {
  return iid(std::vector<double>(alphabet_size, 1.0 / static_cast<double>(alphabet_size)));
}

SourceModel SourceModel::parse(std::istream& in) {
  std::optional<std::size_t> n, k;
  std::vector<std::vector<double>> rows;
  std::optional<std::vector<double>> initial;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto numbers = [&] {
      std::vector<double> v;
      std::string tok;
      while (ls >> tok) {
        try {
          std::size_t used = 0;
          v.push_back(std::stod(tok, &used));
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          throw DomainError("source model line " + std::to_string(lineno) + ": bad number '" + tok + "'");
        }
      }
      return v;
    };
    if (key == "alphabet") {
      auto v = numbers();
      if (v.size() != 1) throw DomainError("source model: 'alphabet' takes one integer");
      n = static_cast<std::size_t>(v[0]);
    } else if (key == "order") {
      auto v = numbers();
      if (v.size() != 1 || v[0] < 0) throw DomainError("source model: 'order' takes one nonnegative integer");
      k = static_cast<std::size_t>(v[0]);
    } else if (key == "row") {
      rows.push_back(numbers());
    } else if (key == "initial") {
      initial = numbers();
    } else {
      throw DomainError("source model line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!n) throw DomainError("source model: missing 'alphabet'");
  return SourceModel(*n, k.value_or(0), std::move(rows), std::move(initial));
}

SourceModel SourceModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open source model file '" + path + "'");
  return parse(in);
}

std::string SourceModel::to_text() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "alphabet " << alphabet_size_ << "\norder " << order_ << "\n";
  for (const auto& r : rows_) {
    os << "row";
    for (double p : r) os << ' ' << p;
    os << '\n';
  }
  if (order_ > 0) {
    os << "initial";
    for (double p : initial_) os << ' ' << p;
    os << '\n';
  }
  return os.str();
}

LogProb SourceModel::log_prob(std::span<const Symbol> x) const {
  const std::size_t head = std::min(order_, x.size());
  std::uint64_t ctx = 0;
  for (std::size_t i = 0; i < head; ++i) {
    if (x[i] >= alphabet_size_) throw DomainError("symbol outside alphabet");
    ctx = ctx * alphabet_size_ + x[i];
  }
  double lp = std::log2(prefix_[head][ctx]);
  const std::uint64_t mod = contexts_;
  for (std::size_t i = head; i < x.size() && lp != kNegInf; ++i) {
    if (x[i] >= alphabet_size_) throw DomainError("symbol outside alphabet");
    lp += std::log2(rows_[ctx][x[i]]);
    if (order_ > 0) ctx = (ctx * alphabet_size_ + x[i]) % mod;
  }
  return LogProb::from_log2(lp);
}

LogProb SourceModel::log_prob(const MultiSample& x) const {
  if (x.alphabet_size() != alphabet_size_) throw DomainError("source model alphabet size mismatch");
  LogProb p = LogProb::one();
  for (const auto& s : x.samples()) p *= log_prob(s);
  return p;
}

std::vector<Symbol> SourceModel::generate(std::size_t t, std::mt19937_64& rng) const {
  std::vector<Symbol> out;
  out.reserve(t);
  std::uint64_t ctx = 0;
  if (order_ > 0 && t > 0) {
    ctx = sample_cumulative(cum_initial_, rng);
    std::vector<Symbol> head(order_);
    std::uint64_t c = ctx;
    for (std::size_t i = order_; i-- > 0;) {
      head[i] = static_cast<Symbol>(c % alphabet_size_);
      c /= alphabet_size_;
    }
    for (std::size_t i = 0; i < std::min(order_, t); ++i) out.push_back(head[i]);
  }
  while (out.size() < t) {
    const auto a = static_cast<Symbol>(sample_cumulative(cum_rows_[ctx], rng));
    out.push_back(a);
    if (order_ > 0) ctx = (ctx * alphabet_size_ + a) % contexts_;
  }
  return out;
}

std::vector<double> SourceModel::next_distribution(std::span<const Symbol> past) const {
  if (past.size() >= order_) {
    std::uint64_t ctx = 0;
    for (std::size_t i = past.size() - order_; i < past.size(); ++i) ctx = ctx * alphabet_size_ + past[i];
    return rows_[ctx];
  }
  // Still inside the initial block: condition the prefix marginal.
  const std::size_t j = past.size();
  std::uint64_t ctx = 0;
  for (Symbol s : past) ctx = ctx * alphabet_size_ + s;
  std::vector<double> p(alphabet_size_);
  const double den = prefix_[j][ctx];
  for (std::size_t a = 0; a < alphabet_size_; ++a)
    p[a] = den > 0 ? prefix_[j + 1][ctx * alphabet_size_ + a] / den : 1.0 / static_cast<double>(alphabet_size_);
  return p;
}

std::vector<double> SourceModel::stationary() const {
  if (order_ == 0) return {1.0};
  // Power iteration on the lazy chain (P + I)/2, which shares P's
  // stationary distribution and is aperiodic.
  std::vector<double> pi(contexts_, 1.0 / static_cast<double>(contexts_)), next(contexts_);
  for (int iter = 0; iter < 200000; ++iter) {
    for (std::size_t v = 0; v < contexts_; ++v) next[v] = 0.5 * pi[v];
    for (std::size_t v = 0; v < contexts_; ++v) {
      const std::uint64_t shifted = (v * alphabet_size_) % contexts_;
      for (std::size_t a = 0; a < alphabet_size_; ++a) next[shifted + a] += 0.5 * pi[v] * rows_[v][a];
    }
    double diff = 0.0;
    for (std::size_t v = 0; v < contexts_; ++v) diff += std::abs(next[v] - pi[v]);
    pi.swap(next);
    if (diff < 1e-15) break;
  }
  const double s = std::accumulate(pi.begin(), pi.end(), 0.0);
  for (double& v : pi) v /= s;
  return pi;
}

EntropyRate SourceModel::entropy_rate(std::size_t max_m) const {
  // Block entropies H_j of j consecutive letters under stationarity, j <= k+1.
  const std::vector<double> pi = stationary();
  std::vector<double> block(order_ + 2, 0.0);
  std::vector<double> marg = pi;
  block[order_] = entropy_bits(pi);
  for (std::size_t j = order_; j-- > 0;) {
    // Drop the oldest symbol: keep the last j letters.
    std::vector<double> m(ipow(alphabet_size_, j), 0.0);
    for (std::size_t v = 0; v < marg.size(); ++v) m[v % m.size()] += marg[v];
    marg.swap(m);
    block[j] = entropy_bits(marg);
  }
  double hk = 0.0;
  for (std::size_t v = 0; v < contexts_; ++v) hk += pi[v] * entropy_bits(rows_[v]);
  block[order_ + 1] = block[order_] + hk;

  EntropyRate r;
  r.h.resize(max_m + 1);
  for (std::size_t m = 0; m <= max_m; ++m) r.h[m] = m < order_ ? block[m + 1] - block[m] : hk;
  r.h_inf = hk;
  return r;
}

}  // namespace uct
