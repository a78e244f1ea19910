#pragma once

// Text and binary file formats at the I/O boundary.
//
// Symbol files (UTF-8 text):
//   - A blank line separates independent samples.
//   - A line holding several whitespace-separated tokens contributes one
//     symbol per token.
//   - A line holding a single token contributes one symbol if the token is
//     a label of the alphabet, and one symbol per character otherwise.
//     Without an explicit alphabet, a single token is a label only if some
//     line of the file holds several tokens; files with one multi-character
//     label per line therefore need an explicit alphabet.
// Without an explicit alphabet the labels are inferred: if every label is a
// nonnegative integer the alphabet is 0..max (at least 0..1); otherwise it
// is the sorted set of distinct labels.
//
// Real-valued files: one value per line, or comma-separated columns. Blank
// lines and lines starting with '#' are skipped; a first line that does not
// parse as numbers is taken as a header.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uct/codelength.hpp"
#include "uct/realvalued.hpp"
#include "uct/sequence.hpp"
#include "uct/testing.hpp"

namespace uct {

/// "a,b,c" gives labels a, b, c; a string without commas gives one label
/// per character ("01", "ACGT").
Alphabet parse_alphabet_spec(const std::string& spec);

/// "a:b" gives the domain [a, b).
Domain parse_domain_spec(const std::string& spec);

MultiSample parse_symbols(std::istream& in, const std::optional<Alphabet>& alphabet = std::nullopt);
MultiSample parse_symbols(const std::string& text, const std::optional<Alphabet>& alphabet = std::nullopt);
MultiSample read_symbols(const std::string& path, const std::optional<Alphabet>& alphabet = std::nullopt);

/// Canonical text form: single-character labels are written as one string
/// per sample, other labels one per line; samples are separated by a blank
/// line.
std::string format_symbols(const MultiSample& x);

/// Columns of a real-valued file; every row must have the same width.
std::vector<std::vector<double>> read_real_columns(const std::string& path);
std::vector<double> read_reals(const std::string& path);

/// Piecewise-constant density file: "edges e_0 ... e_n" and
/// "values v_1 ... v_n" lines, '#' comments.
NullDensity read_null_density(const std::string& path);

std::vector<std::uint8_t> read_bytes(const std::string& path);
std::string read_text(const std::string& path);
void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes);
void write_text(const std::string& path, const std::string& text);

}  // namespace uct
