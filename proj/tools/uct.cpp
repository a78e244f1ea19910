// uct: command-line front end for the estimators, the coder and the tests.
//
// Exit codes: 0 success or accept, 1 reject, 2 usage error, 3 data error.
// Reports are JSON on standard output (or --out); errors are a JSON object
// {error, detail} on standard error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "uct/arithmetic_coder.hpp"
#include "uct/codelength.hpp"
#include "uct/estimators.hpp"
#include "uct/io.hpp"
#include "uct/json.hpp"
#include "uct/kl.hpp"
#include "uct/montecarlo.hpp"
#include "uct/realvalued.hpp"
#include "uct/side_info.hpp"
#include "uct/source_model.hpp"
#include "uct/testing.hpp"

namespace {

using namespace uct;

constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string in, in2, alphabet, domain, null_path, query, out;
  std::optional<std::size_t> order;
  std::size_t max_order = MixtureEstimator::kDefaultMaxOrder;
  std::optional<std::size_t> depth;
  double alpha = 0.05;
  std::string provider = "ideal-r";
  std::string compressor_cmd;
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  bool renormalize = false;
  std::string experiment;
  std::size_t length = 1000;
};

std::optional<Alphabet> alphabet_of(const RunConfig& c) {
  if (c.alphabet.empty()) return std::nullopt;
  return parse_alphabet_spec(c.alphabet);
}

const std::string& require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required option ") + flag);
  return value;
}

MultiSample load_symbols(const RunConfig& c) { return read_symbols(require(c.in, "--in"), alphabet_of(c)); }

std::unique_ptr<CodelengthProvider> make_provider(const RunConfig& c, std::size_t) {
  if (c.provider == "ideal-r") return std::make_unique<IdealCodelength>(mixture_factory(c.max_order));
  if (c.provider == "arithmetic") return std::make_unique<ArithmeticCodelength>(mixture_factory(c.max_order));
  if (c.provider == "external")
    return std::make_unique<ExternalCompressor>(require(c.compressor_cmd, "--compressor-cmd"));
  throw UsageError("unknown provider '" + c.provider + "'");
}

ProviderFactory provider_factory(const RunConfig& c) {
  make_provider(c, 2);  // validate early
  return [c](std::size_t n) { return make_provider(c, n); };
}

EstimatorFactory estimator_of(const RunConfig& c) {
  return c.order ? kt_factory(*c.order) : mixture_factory(c.max_order);
}

Json labels_json(const Alphabet& a) { return a.labels(); }

Json lengths_json(const MultiSample& x) {
  Json l = Json::array();
  for (const auto& s : x.samples()) l.push_back(s.size());
  return l;
}

void emit(const RunConfig& c, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (c.out.empty())
    std::cout << text;
  else
    write_text(c.out, text);
}

// ---------------------------------------------------------------- commands

int cmd_estimate(const RunConfig& c) {
  const MultiSample x = load_symbols(c);
  MixtureEstimator r(x.alphabet_size(), c.max_order);
  r.consume(x);
  Json j;
  j["command"] = "estimate";
  j["alphabet"] = labels_json(x.alphabet());
  j["lengths"] = lengths_json(x);
  j["max_order"] = r.max_order();
  j["log2_prob"] = json_number(r.log_prob().log2());
  j["prob"] = json_number(r.log_prob().prob());
  j["codelength_bits"] = json_number(r.log_prob().bits());
  j["truncated"] = r.truncated();
  Json orders = Json::array();
  for (std::size_t i = 0; i < r.order_log2().size(); ++i)
    orders.push_back({{"order", i}, {"log2_prob", json_number(r.order_log2()[i])}});
  j["orders"] = orders;
  if (c.order) j["kt"] = {{"order", *c.order}, {"log2_prob", json_number(kt_prob(x, *c.order).log2())}};
  if (!c.query.empty()) {
    const MultiSample z = parse_symbols(c.query, x.alphabet());
    if (z.sample_count() != 1) throw DomainError("--query must be a single sample");
    const LogProb q = r_cond_sample(z.sample(0), x, c.max_order);
    j["query"] = {{"symbols", z.samples()[0].size()},
                  {"mode", "new-sample"},
                  {"log2_prob", json_number(q.log2())},
                  {"prob", json_number(q.prob())}};
  }
  emit(c, j);
  return 0;
}

int cmd_predict(const RunConfig& c) {
  const MultiSample x = load_symbols(c);
  Json j;
  j["command"] = "predict";
  j["alphabet"] = labels_json(x.alphabet());
  std::vector<double> dist;
  if (!c.in2.empty()) {
    if (x.sample_count() != 1) throw DomainError("side-information prediction takes a single sample");
    const MultiSample y = read_symbols(c.in2);
    if (y.sample_count() != 1 || y.sample(0).size() != x.sample(0).size() + 1)
      throw DomainError("--in2 must hold one sample, one symbol longer than --in");
    const PairAlphabet pa(x.alphabet_size(), y.alphabet_size());
    std::vector<Pair> history;
    for (std::size_t i = 0; i < x.sample(0).size(); ++i) history.emplace_back(x.sample(0)[i], y.sample(0)[i]);
    dist = side_info_distribution(pa, history, y.sample(0).back(), estimator_of(c));
    j["side_alphabet"] = labels_json(y.alphabet());
    j["y_next"] = y.alphabet().label(y.sample(0).back());
  } else {
    auto est = estimator_of(c)(x.alphabet_size());
    est->consume(x);
    dist = est->predict();
    j["estimator"] = est->name();
  }
  Json d = Json::object();
  for (std::size_t a = 0; a < dist.size(); ++a) d[x.alphabet().label(static_cast<Symbol>(a))] = json_number(dist[a]);
  j["distribution"] = d;
  emit(c, j);
  return 0;
}

int cmd_compress(const RunConfig& c) {
  const MultiSample x = load_symbols(c);
  if (x.sample_count() > 1) throw DomainError("compress takes a single sample");
  const SymbolSeq seq(x.alphabet(), x.sample_count() ? x.samples()[0] : std::vector<Symbol>{});
  const ModelId model = c.order ? ModelId::kt(*c.order) : ModelId::mixture(c.max_order);
  const auto bytes = compress(seq, model);
  write_bytes(require(c.out, "--out"), bytes);
  auto est = model.make(x.alphabet_size());
  est->consume(x);
  Json j;
  j["command"] = "compress";
  j["model"] = model.describe();
  j["symbols"] = seq.size();
  j["bytes"] = bytes.size();
  j["ideal_bits"] = json_number(est->log_prob().bits());
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_decompress(const RunConfig& c) {
  const auto bytes = read_bytes(require(c.in, "--in"));
  std::size_t n = 0;
  const auto symbols = decompress(bytes, &n);
  Alphabet a = c.alphabet.empty() ? Alphabet::of_size(n) : parse_alphabet_spec(c.alphabet);
  if (a.size() != n)
    throw DomainError("alphabet has " + std::to_string(a.size()) + " labels but the stream uses " + std::to_string(n));
  MultiSample x(a);
  if (!symbols.empty()) x.add_sample(symbols);
  const std::string text = format_symbols(x);
  if (c.out.empty())
    std::cout << text;
  else
    write_text(c.out, text);
  return 0;
}

int verdict_exit(const TestReport& r) { return r.reject ? kExitReject : 0; }

int cmd_test_identity(const RunConfig& c) {
  TestReport r;
  if (!c.domain.empty()) {
    const Domain dom = parse_domain_spec(c.domain);
    MetaTestConfig mc;
    mc.kind = MetaKind::Identity;
    mc.alpha = c.alpha;
    mc.max_depth = c.depth.value_or(8);
    mc.provider = provider_factory(c);
    mc.null = c.null_path.empty() ? NullDensity::uniform(dom) : read_null_density(c.null_path);
    r = partition_meta_test(read_reals(require(c.in, "--in")), dom, mc);
  } else {
    const MultiSample x = load_symbols(c);
    const NullModel pi = c.null_path.empty() ? NullModel::uniform(x.alphabet_size()) : NullModel::load(c.null_path);
    r = identity_test(x, pi, c.alpha, *make_provider(c, x.alphabet_size()));
  }
  emit(c, r.to_json());
  return verdict_exit(r);
}

int cmd_test_independence(const RunConfig& c) {
  TestReport r;
  if (!c.domain.empty()) {
    if (c.order.value_or(0) != 0) throw UsageError("the real-valued independence test supports order 0 only");
    MetaTestConfig mc;
    mc.kind = MetaKind::SerialIndependence;
    mc.alpha = c.alpha;
    mc.max_depth = c.depth.value_or(8);
    mc.provider = provider_factory(c);
    r = partition_meta_test(read_reals(require(c.in, "--in")), parse_domain_spec(c.domain), mc);
  } else {
    const MultiSample x = load_symbols(c);
    r = serial_independence_test(x, c.order.value_or(0), c.alpha, *make_provider(c, x.alphabet_size()));
  }
  emit(c, r.to_json());
  return verdict_exit(r);
}

int cmd_density(const RunConfig& c) {
  const Domain dom = parse_domain_spec(require(c.domain, "--domain"));
  const auto xs = read_reals(require(c.in, "--in"));
  DensityConfig cfg;
  cfg.max_depth = c.depth.value_or(cfg.max_depth);
  cfg.renormalize_depth_weights = c.renormalize;
  DensityEstimator est(dom, cfg);
  est.consume(xs);
  Json j;
  j["command"] = "density";
  j["domain"] = {json_number(dom.lo), json_number(dom.hi)};
  j["depth"] = cfg.max_depth;
  j["renormalize_depth_weights"] = cfg.renormalize_depth_weights;
  j["length"] = xs.size();
  j["log2_density"] = json_number(est.log2_density());
  j["bits_per_value"] = xs.empty() ? Json(nullptr) : json_number(-est.log2_density() / static_cast<double>(xs.size()));
  Json comps = Json::array();
  for (std::size_t i = 0; i <= cfg.max_depth; ++i)
    comps.push_back({{"depth", i},
                     {"log2_weight", json_number(est.log2_weight(i))},
                     {"log2_measure", json_number(est.log2_measure(i))},
                     {"log2_component", json_number(est.log2_component(i))}});
  j["components"] = comps;
  Json cells = Json::array();
  for (double v : est.conditional_cell_density()) cells.push_back(json_number(v));
  j["next_cell_density"] = cells;
  emit(c, j);
  return 0;
}

int cmd_montecarlo(const RunConfig& c) {
  const std::size_t t = c.length;
  Json j;
  j["command"] = "montecarlo";
  j["experiment"] = c.experiment;
  j["length"] = t;
  j["trials"] = c.trials;
  j["seed"] = c.seed;

  auto null_model = [&] {
    if (!c.null_path.empty()) return NullModel::load(c.null_path);
    return NullModel::uniform(c.alphabet.empty() ? 2 : parse_alphabet_spec(c.alphabet).size());
  };

  if (c.experiment == "kl") {
    const SourceModel truth = null_model();
    const MeanEstimate m = avg_kl_error(truth, estimator_of(c), t, c.trials, c.seed);
    j["estimator"] = estimator_of(c)(truth.alphabet_size())->name();
    j["mean_bits_per_letter"] = json_number(m.mean);
    j["standard_error"] = json_number(m.std_error);
    emit(c, j);
    return 0;
  }

  check_alpha(c.alpha);
  const ProviderFactory providers = provider_factory(c);
  std::size_t rejections = 0;
  if (c.experiment == "type1-identity") {
    const NullModel pi = null_model();
    const Alphabet a = Alphabet::of_size(pi.alphabet_size());
    rejections = count_rejections(c.trials, c.seed, [&](std::mt19937_64& rng) {
      const MultiSample x(a, {pi.generate(t, rng)});
      return identity_test(x, pi, c.alpha, *providers(a.size())).reject;
    });
  } else if (c.experiment == "type1-independence") {
    const NullModel pi = null_model();
    if (pi.order() != 0) throw DomainError("type1-independence needs an i.i.d. source");
    const Alphabet a = Alphabet::of_size(pi.alphabet_size());
    rejections = count_rejections(c.trials, c.seed, [&](std::mt19937_64& rng) {
      const MultiSample x(a, {pi.generate(t, rng)});
      return serial_independence_test(x, c.order.value_or(0), c.alpha, *providers(a.size())).reject;
    });
  } else if (c.experiment == "type1-meta") {
    const Domain dom = c.domain.empty() ? Domain(0.0, 1.0) : parse_domain_spec(c.domain);
    MetaTestConfig mc;
    mc.alpha = c.alpha;
    mc.max_depth = c.depth.value_or(4);
    mc.provider = providers;
    rejections = count_rejections(c.trials, c.seed, [&](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> u(dom.lo, dom.hi);
      std::vector<double> xs(t);
      for (double& v : xs) v = u(rng);
      return partition_meta_test(xs, dom, mc).reject;
    });
  } else {
    throw UsageError("unknown experiment '" + c.experiment +
                     "' (expected kl, type1-identity, type1-independence or type1-meta)");
  }
  const RejectionRate rr = rejection_rate(rejections, c.trials, c.alpha);
  j["alpha"] = json_number(c.alpha);
  j["provider"] = c.provider;
  j["rejections"] = rr.rejections;
  j["rejection_rate"] = json_number(rr.rate);
  j["standard_error"] = json_number(rr.std_error);
  j["bound"] = json_number(rr.bound);
  j["pass"] = rr.within_bound;
  emit(c, j);
  return rr.within_bound ? 0 : kExitReject;
}

void print_error(const std::string& kind, const std::string& detail) {
  std::cerr << Json{{"error", kind}, {"detail", detail}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Universal-coding estimators, compression and hypothesis tests"};
  app.require_subcommand(1);

  auto in = [&](CLI::App* s) { s->add_option("--in", c.in, "Input file"); };
  auto alphabet = [&](CLI::App* s) {
    s->add_option("--alphabet", c.alphabet, "Alphabet: comma list or contiguous characters");
  };
  auto order = [&](CLI::App* s, const char* what) { s->add_option("--order,--m", c.order, what); };
  auto max_order = [&](CLI::App* s) { s->add_option("--max-order", c.max_order, "Highest explicit order of R"); };
  auto out = [&](CLI::App* s) { s->add_option("--out", c.out, "Output path"); };
  auto test_opts = [&](CLI::App* s) {
    s->add_option("--alpha", c.alpha, "Significance level");
    s->add_option("--provider", c.provider, "Codelength provider")
        ->check(CLI::IsMember({"ideal-r", "arithmetic", "external"}));
    s->add_option("--compressor-cmd", c.compressor_cmd, "External compressor reading stdin, writing stdout");
    s->add_option("--domain", c.domain, "Real-valued input on [a, b), written a:b");
    s->add_option("--depth", c.depth, "Deepest dyadic partition");
  };

  auto* est = app.add_subcommand("estimate", "Probability of the input under R");
  in(est), alphabet(est), max_order(est), out(est);
  order(est, "Also report the KT estimate of this order");
  est->add_option("--query", c.query, "Further sample z: report R(z | input)");

  auto* pred = app.add_subcommand("predict", "Next-symbol distribution");
  in(pred), alphabet(pred), max_order(pred), out(pred);
  order(pred, "Use KT of this order instead of R");
  pred->add_option("--in2", c.in2, "Side information: y sequence, one symbol longer than --in");

  auto* comp = app.add_subcommand("compress", "Arithmetic-code the input into a UCT1 container");
  in(comp), alphabet(comp), max_order(comp), out(comp);
  order(comp, "Use KT of this order instead of R");

  auto* decomp = app.add_subcommand("decompress", "Decode a UCT1 container");
  in(decomp), alphabet(decomp), out(decomp);

  auto* tid = app.add_subcommand("test-identity", "Goodness-of-fit test against a fully specified source");
  in(tid), alphabet(tid), max_order(tid), out(tid), test_opts(tid);
  tid->add_option("--null", c.null_path, "Null source model (or density with --domain); default uniform");

  auto* tsi = app.add_subcommand("test-independence", "Serial-independence test");
  in(tsi), alphabet(tsi), max_order(tsi), out(tsi), test_opts(tsi);
  order(tsi, "Markov order m of the null");

  auto* dens = app.add_subcommand("density", "Density estimate of a real-valued series");
  in(dens), out(dens);
  dens->add_option("--domain", c.domain, "Domain [a, b), written a:b");
  dens->add_option("--depth", c.depth, "Deepest dyadic partition S");
  dens->add_flag("--renormalize-depth-weights", c.renormalize, "Scale the depth weights to sum to one");

  auto* mc = app.add_subcommand("montecarlo", "Monte Carlo validation harness");
  mc->add_option("experiment", c.experiment, "kl, type1-identity, type1-independence or type1-meta")->required();
  mc->add_option("length", c.length, "Sequence length per trial");
  alphabet(mc), max_order(mc), out(mc), test_opts(mc);
  order(mc, "KT order (kl) or null order (type1-independence)");
  mc->add_option("--null", c.null_path, "Source model generating the data");
  mc->add_option("--seed", c.seed, "Base seed; trial i uses seed + i");
  mc->add_option("--trials", c.trials, "Number of trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return kExitUsage;
  }

  try {
    if (*est) return cmd_estimate(c);
    if (*pred) return cmd_predict(c);
    if (*comp) return cmd_compress(c);
    if (*decomp) return cmd_decompress(c);
    if (*tid) return cmd_test_identity(c);
    if (*tsi) return cmd_test_independence(c);
    if (*dens) return cmd_density(c);
    if (*mc) return cmd_montecarlo(c);
  } catch (const UsageError& e) {
    print_error("usage", e.what());
    return kExitUsage;
  } catch (const IoError& e) {
    print_error("io", e.what());
    return kExitData;
  } catch (const DecodeError& e) {
    print_error("decode", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    print_error("data", e.what());
    return kExitData;
  }
  return kExitUsage;
}
