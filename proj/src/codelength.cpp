#include "uct/codelength.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <unistd.h>
#include <sys/wait.h>

#include "uct/arithmetic_coder.hpp"

namespace uct {

std::string to_string(ProviderKind k) {
  switch (k) {
    case ProviderKind::IdealMeasure: return "ideal-measure";
    case ProviderKind::ArithmeticCoder: return "arithmetic-coder";
    case ProviderKind::ExternalCompressor: return "external-compressor";
  }
  return "unknown";
}

double ideal_codelength(const MultiSample& x, const EstimatorFactory& make) {
  const LogProb p = measure_prob(make, x);
  if (p.is_zero()) throw DomainError("measure assigns probability zero; not a valid code for this input");
  return p.bits();
}

IdealCodelength::IdealCodelength(EstimatorFactory make, bool integer_lengths, std::string label)
    : make_(std::move(make)), integer_lengths_(integer_lengths), label_(std::move(label)) {}

double IdealCodelength::codelength(const MultiSample& x) const {
  const double bits = ideal_codelength(x, make_);
  return integer_lengths_ ? std::ceil(bits) : bits;
}

ArithmeticCodelength::ArithmeticCodelength(EstimatorFactory make, std::string label)
    : make_(std::move(make)), label_(std::move(label)) {}

double ArithmeticCodelength::codelength(const MultiSample& x) const {
  auto model = make_(x.alphabet_size());
  return static_cast<double>(arithmetic_encode(x, *model).bit_count);
}

ExternalCompressor::ExternalCompressor(std::string command) : command_(std::move(command)) {
  if (command_.empty()) throw IoError("external compressor command is empty");
}

double ExternalCompressor::codelength(const MultiSample& x) const {
  return external_codelength(x, command_);
}

namespace {

class TempFile {
 public:
  TempFile() {
    const char* dir = std::getenv("TMPDIR");
    path_ = std::string(dir && *dir ? dir : "/tmp") + "/uct-XXXXXX";
    fd_ = ::mkstemp(path_.data());
    if (fd_ < 0) throw IoError("cannot create temporary file");
  }
  ~TempFile() {
    if (fd_ >= 0) ::close(fd_);
    ::unlink(path_.c_str());
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  void write_all(const std::vector<unsigned char>& data) {
    std::size_t off = 0;
    while (off < data.size()) {
      const ssize_t n = ::write(fd_, data.data() + off, data.size() - off);
      if (n <= 0) throw IoError("cannot write temporary file");
      off += static_cast<std::size_t>(n);
    }
    ::close(fd_);
    fd_ = -1;
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  int fd_ = -1;
};

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += "'\\''";
    else q += c;
  }
  return q + "'";
}

}  // namespace

double external_codelength(const MultiSample& x, const std::string& command) {
  if (x.alphabet_size() > 256) throw DomainError("external compressor: alphabet larger than 256 is unsupported");
  std::vector<unsigned char> data;
  data.reserve(x.total_length());
  for (const auto& s : x.samples())
    for (Symbol a : s) data.push_back(static_cast<unsigned char>(a));

  TempFile in;
  in.write_all(data);
  const std::string cmd = "(" + command + ") < " + shell_quote(in.path());
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw IoError("cannot start external compressor '" + command + "'");
  std::size_t bytes = 0;
  char buf[1 << 15];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) bytes += n;
  const int status = ::pclose(pipe);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw IoError("external compressor '" + command + "' failed");
  return 8.0 * static_cast<double>(bytes);
}

}  // namespace uct
