#include "uct/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace uct {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ls(line);
  std::vector<std::string> out;
  for (std::string tok; ls >> tok;) out.push_back(tok);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

bool is_nonneg_integer(const std::string& s) {
  return !s.empty() && s.size() <= 9 && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (trim(s.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw DomainError(where + ": not a number: '" + s + "'");
}

}  // namespace

Alphabet parse_alphabet_spec(const std::string& spec) {
  std::vector<std::string> labels;
  if (spec.find(',') != std::string::npos) {
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');) labels.push_back(trim(item));
  } else {
    for (char c : spec) labels.emplace_back(1, c);
  }
  return Alphabet::from_labels(std::move(labels));
}

Domain parse_domain_spec(const std::string& spec) {
  const auto colon = spec.find(':', 1);
  if (colon == std::string::npos) throw DomainError("domain must be written a:b");
  return Domain(parse_double(spec.substr(0, colon), "domain"), parse_double(spec.substr(colon + 1), "domain"));
}

MultiSample parse_symbols(std::istream& in, const std::optional<Alphabet>& alphabet) {
  std::vector<std::vector<std::string>> lines;  // empty entry = blank line
  bool multi_token = false;
  for (std::string line; std::getline(in, line);) {
    lines.push_back(split_ws(line));
    multi_token = multi_token || lines.back().size() > 1;
  }

  // Tokenize into samples of labels.
  std::vector<std::vector<std::string>> samples;
  bool open = false;
  for (const auto& tokens : lines) {
    if (tokens.empty()) {
      open = false;
      continue;
    }
    if (!open) {
      samples.emplace_back();
      open = true;
    }
    auto& cur = samples.back();
    const bool label = alphabet ? alphabet->index_of(tokens[0]).has_value() : multi_token;
    if (tokens.size() == 1 && tokens[0].size() > 1 && !label) {
      for (char c : tokens[0]) cur.emplace_back(1, c);
    } else {
      cur.insert(cur.end(), tokens.begin(), tokens.end());
    }
  }

  Alphabet alpha = alphabet ? *alphabet : Alphabet::of_size(2);
  if (!alphabet) {
    std::set<std::string> distinct;
    for (const auto& s : samples) distinct.insert(s.begin(), s.end());
    if (!distinct.empty() && std::all_of(distinct.begin(), distinct.end(), is_nonneg_integer)) {
      std::size_t top = 1;
      for (const auto& d : distinct) top = std::max<std::size_t>(top, std::stoul(d));
      if (top >= (1u << 16)) throw DomainError("inferred alphabet too large; pass --alphabet");
      alpha = Alphabet::of_size(top + 1);
    } else if (distinct.size() >= 2) {
      alpha = Alphabet::from_labels({distinct.begin(), distinct.end()});
    } else if (!distinct.empty()) {
      throw DomainError("cannot infer an alphabet from one distinct label; pass --alphabet");
    }
  }

  MultiSample out(alpha);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::vector<Symbol> syms;
    syms.reserve(samples[i].size());
    for (std::size_t j = 0; j < samples[i].size(); ++j) {
      auto s = alpha.index_of(samples[i][j]);
      if (!s)
        throw DomainError("sample " + std::to_string(i + 1) + ", symbol " + std::to_string(j + 1) + ": '" +
                          samples[i][j] + "' is not in the alphabet");
      syms.push_back(*s);
    }
    out.add_sample(std::move(syms));
  }
  return out;
}

MultiSample parse_symbols(const std::string& text, const std::optional<Alphabet>& alphabet) {
  std::istringstream in(text);
  return parse_symbols(in, alphabet);
}

MultiSample read_symbols(const std::string& path, const std::optional<Alphabet>& alphabet) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_symbols(in, alphabet);
}

std::string format_symbols(const MultiSample& x) {
  const Alphabet& a = x.alphabet();
  const bool compact = a.single_char_labels();
  std::string out;
  for (std::size_t i = 0; i < x.sample_count(); ++i) {
    if (i > 0) out += '\n';
    if (compact) {
      for (Symbol s : x.sample(i)) out += a.label(s);
      out += '\n';
    } else {
      for (Symbol s : x.sample(i)) out += a.label(s) + '\n';
    }
  }
  return out;
}

std::vector<std::vector<double>> read_real_columns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(t);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(trim(c));
    std::vector<double> row;
    try {
      for (const auto& c : cells) row.push_back(parse_double(c, path + " line " + std::to_string(lineno)));
    } catch (const DomainError&) {
      if (first) {
        first = false;
        continue;
      }
      throw;
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size())
      throw DomainError(path + " line " + std::to_string(lineno) + ": inconsistent column count");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> read_reals(const std::string& path) {
  std::vector<double> out;
  for (const auto& row : read_real_columns(path)) {
    if (row.size() != 1) throw DomainError(path + ": expected one value per line");
    out.push_back(row[0]);
  }
  return out;
}

NullDensity read_null_density(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<double> edges, values;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    std::vector<double>* target = tokens[0] == "edges" ? &edges : tokens[0] == "values" ? &values : nullptr;
    if (!target) throw DomainError(path + ": unknown key '" + tokens[0] + "'");
    for (std::size_t i = 1; i < tokens.size(); ++i) target->push_back(parse_double(tokens[i], path));
  }
  return NullDensity::piecewise_constant(std::move(edges), std::move(values));
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace uct
