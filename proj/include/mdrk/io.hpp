#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mdrk/convergence.hpp"
#include "mdrk/errors.hpp"
#include "mdrk/flux.hpp"
#include "mdrk/solver.hpp"

namespace mdrk {

/// Round-trip-exact formatting: 17 significant digits.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

/// Nodal solution dump: '#'-prefixed header lines, then one row per node
/// with columns x w_1 [w_2 w_3].
template <int N>
void write_solution(const std::string& path, const Mesh1D& mesh,
                    std::span<const StateVec<N>> values, const std::string& scheme,
                    double sigma, double t) {
  auto out = open_output(path);
  out << "# scheme=" << scheme << " M=" << mesh.M << " sigma=" << fmt17(sigma)
      << " t=" << fmt17(t) << "\n";
  out << "# columns: x";
  for (int c = 0; c < N; ++c) out << " w_" << (c + 1);
  out << "\n";
  for (int i = 0; i < mesh.M; ++i) {
    out << fmt17(mesh.x(i));
    for (int c = 0; c < N; ++c) out << ' ' << fmt17(values[i][c]);
    out << '\n';
  }
  if (!out) throw IoError("failed while writing '" + path + "'");
}

/// Reads a 3-component solution dump written by write_solution. Returns
/// false when the file is absent or malformed.
inline bool read_solution3(const std::string& path, int expected_M,
                           std::vector<StateVec<3>>& values, double& t) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  values.clear();
  t = std::numeric_limits<double>::quiet_NaN();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto pos = line.find(" t=");
      if (pos != std::string::npos) t = std::strtod(line.c_str() + pos + 3, nullptr);
      continue;
    }
    double x, w1, w2, w3;
    if (std::sscanf(line.c_str(), "%lf %lf %lf %lf", &x, &w1, &w2, &w3) != 4) return false;
    values.push_back({w1, w2, w3});
  }
  return static_cast<int>(values.size()) == expected_M && std::isfinite(t);
}

/// Convergence table: two columns dx and l1 error; diverged rows are
/// commented out with a flag.
inline void write_convergence(const std::string& path, const std::vector<ErrorRecord>& records,
                              const std::string& scheme, const std::string& problem, int p,
                              double sigma) {
  auto out = open_output(path);
  out << "# scheme=" << scheme << " problem=" << problem << " p=" << p
      << " sigma=" << fmt17(sigma) << "\n";
  out << "# columns: dx l1_error\n";
  for (const auto& rec : records) {
    if (rec.diverged)
      out << "# M=" << rec.M << " diverged\n";
    else if (rec.skipped)
      out << "# M=" << rec.M << " skipped (stencil exceeds mesh)\n";
    else
      out << fmt17(rec.dx) << ' ' << fmt17(rec.l1) << '\n';
  }
  if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace mdrk
