#include "rkgal/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "rkgal/errors.hpp"
#include "rkgal/reconstruct.hpp"

namespace rkgal {

std::string format_g17(Scalar v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string expect_key(std::istream& is, const std::string& key) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("unexpected end of input");
  const auto eq = line.find('=');
  if (eq == std::string::npos || line.substr(0, eq) != key)
    throw ParseError("expected '" + key + "=' header, got '" + line + "'");
  return line.substr(eq + 1);
}

}  // namespace

void write_signal(std::ostream& os, const FriSignal& f) {
  os << "generator=" << to_string(f.family.generator.kind) << "\n";
  os << "L=" << f.coeff_window.halfwidth << "\n";
  os << "seed=" << f.seed << "\n";
  const int L = f.coeff_window.halfwidth;
  for (int i = -L; i <= L; ++i)
    os << i << ' ' << format_g17(f.family.shift(i)) << ' '
       << format_g17(f.coeff(i)) << "\n";
}

FriSignal read_signal(std::istream& is) {
  const GeneratorKind kind = generator_kind_from_string(expect_key(is, "generator"));
  const int L = std::stoi(expect_key(is, "L"));
  const std::uint64_t seed = std::stoull(expect_key(is, "seed"));
  if (L < 1) throw ParseError("signal window half-width must be >= 1");

  FriSignal f;
  f.family.generator = Generator::make(kind);
  f.family.window = IndexWindow{L};
  f.family.shifts = Vector::Zero(2 * L + 1);
  f.family.seed = seed;
  f.coeff_window = IndexWindow{L};
  f.coeffs = Vector::Zero(2 * L + 1);
  f.seed = seed;

  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int i;
    Scalar theta, c;
    if (!(ls >> i >> theta >> c))
      throw ParseError("malformed signal row '" + line + "'");
    if (!f.coeff_window.contains(i))
      throw ParseError("signal row index out of window");
    f.family.shifts(f.family.window.to_flat(i)) = theta;
    f.coeffs(f.coeff_window.to_flat(i)) = c;
    ++rows;
  }
  if (rows != 2 * L + 1) throw ParseError("signal row count does not match L");
  return f;
}

void write_sampling_set(std::ostream& os, const SamplingSet& set) {
  os << "kind=" << to_string(set.kind) << "\n";
  os << "seed=" << set.seed << "\n";
  os << "interval=" << format_g17(set.interval.a) << ' '
     << format_g17(set.interval.b) << "\n";
  for (int n = 0; n < set.size(); ++n)
    os << format_g17(set.abscissae(n)) << ' ' << format_g17(set.weights(n))
       << "\n";
}

SamplingSet read_sampling_set(std::istream& is) {
  SamplingSet set;
  set.kind = sampling_kind_from_string(expect_key(is, "kind"));
  set.seed = std::stoull(expect_key(is, "seed"));
  {
    std::istringstream ls(expect_key(is, "interval"));
    if (!(ls >> set.interval.a >> set.interval.b))
      throw ParseError("malformed interval header");
  }
  std::vector<Scalar> gammas, weights;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Scalar g, w;
    if (!(ls >> g >> w)) throw ParseError("malformed sample row '" + line + "'");
    if (!gammas.empty() && g <= gammas.back())
      throw ParseError("abscissae must be strictly increasing");
    gammas.push_back(g);
    weights.push_back(w);
  }
  set.abscissae = Eigen::Map<Vector>(gammas.data(),
                                     static_cast<Eigen::Index>(gammas.size()));
  set.weights = Eigen::Map<Vector>(weights.data(),
                                   static_cast<Eigen::Index>(weights.size()));
  return set;
}

void write_iteration_report(std::ostream& os, const IterationReport& report) {
  os << "step,increment_norm\n";
  for (std::size_t m = 0; m < report.increment_norms.size(); ++m)
    os << (m + 1) << ',' << format_g17(report.increment_norms[m]) << "\n";
}

namespace {

template <typename T, typename WriteFn>
void save_to(const std::string& path, const T& value, WriteFn fn) {
  std::ofstream os(path);
  if (!os) throw ParseError("cannot open '" + path + "' for writing");
  fn(os, value);
}

}  // namespace

void save_signal(const std::string& path, const FriSignal& f) {
  save_to(path, f, [](std::ostream& os, const FriSignal& v) { write_signal(os, v); });
}

FriSignal load_signal(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open '" + path + "'");
  return read_signal(is);
}

void save_sampling_set(const std::string& path, const SamplingSet& set) {
  save_to(path, set, [](std::ostream& os, const SamplingSet& v) {
    write_sampling_set(os, v);
  });
}

SamplingSet load_sampling_set(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open '" + path + "'");
  return read_sampling_set(is);
}

}  // namespace rkgal
