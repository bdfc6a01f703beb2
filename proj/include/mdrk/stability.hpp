#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "mdrk/errors.hpp"
#include "mdrk/stencil.hpp"
#include "mdrk/tableau.hpp"

namespace mdrk {

// Fully discrete von Neumann analysis of the linear-advection reduction.
// All symbols are taken at unit mesh width; only the frequency axis would
// rescale for other dx, not the amplification magnitudes.

/// P^(k)(kappa) = sum_{r=-p..p} delta^k_{p,r} e^{i r kappa}.
inline std::complex<double> fourier_symbol(const StencilTables& tables, int k,
                                           double kappa) {
  const int p = tables.p;
  std::complex<double> acc = 0.0;
  for (int r = -p; r <= p; ++r)
    acc += tables.delta[k][r + p] * std::polar(1.0, r * kappa);
  return acc;
}

/// Amplification factor g(kappa) of one step at CFL number sigma, via the
/// stage recurrence with weights (-1)^k sigma^k P^(k).
inline std::complex<double> amplification(const MdrkTableau& t, const StencilTables& tables,
                                          double sigma, double kappa) {
  const int r = t.r;
  std::vector<std::complex<double>> symbol(r + 1);
  double sk = 1.0;
  for (int k = 1; k <= r; ++k) {
    sk *= -sigma;
    symbol[k] = sk * fourier_symbol(tables, k, kappa);
  }
  std::vector<std::complex<double>> g(t.s);
  for (int l = 0; l < t.s; ++l) {
    std::complex<double> acc = 1.0;
    for (int k = 1; k <= r; ++k) {
      std::complex<double> sum = 0.0;
      for (int nu = 0; nu < l; ++nu) sum += t.a[k - 1][l][nu] * g[nu];
      acc += symbol[k] * sum;
    }
    g[l] = acc;
  }
  std::complex<double> out = 1.0;
  for (int k = 1; k <= r; ++k) {
    std::complex<double> sum = 0.0;
    for (int l = 0; l < t.s; ++l) sum += t.b[k - 1][l] * g[l];
    out += symbol[k] * sum;
  }
  return out;
}

constexpr int kKappaCells = 1000;  // uniform mesh on [-pi, pi], endpoints included

/// max over the 1001-point kappa grid of |g(kappa)|.
inline double max_amplification(const MdrkTableau& t, const StencilTables& tables,
                                double sigma) {
  double worst = 0.0;
  for (int i = 0; i <= kKappaCells; ++i) {
    double kappa = -std::numbers::pi + 2.0 * std::numbers::pi * i / kKappaCells;
    worst = std::max(worst, std::abs(amplification(t, tables, sigma, kappa)));
  }
  return worst;
}

struct CriticalCflOptions {
  double upper = 3.0;          // bracket upper bound, above every known scheme
  double tolerance = 1e-12;    // stability predicate max|g| <= 1 + tolerance
  double bracket_width = 1e-6; // bisection termination
};

/// Largest sigma (lower bisection endpoint) with max|g| <= 1 + tolerance.
inline double critical_cfl(const MdrkTableau& t, const StencilTables& tables,
                           const CriticalCflOptions& opt = {}) {
  auto stable = [&](double sigma) {
    return max_amplification(t, tables, sigma) <= 1.0 + opt.tolerance;
  };
  if (stable(opt.upper))
    throw BracketError("critical_cfl: scheme '" + t.name + "' with p=" +
                       std::to_string(tables.p) + " still stable at sigma=" +
                       std::to_string(opt.upper) + " (max|g|=" +
                       std::to_string(max_amplification(t, tables, opt.upper)) +
                       "); raise the bracket");
  double lo = 0.0, hi = opt.upper;
  while (hi - lo > opt.bracket_width) {
    double mid = 0.5 * (lo + hi);
    (stable(mid) ? lo : hi) = mid;
  }
  return lo;
}

struct StabilityReport {
  std::string scheme;
  int p = 0;
  double critical_cfl = 0.0;
  std::vector<double> sigmas;  // filled by sweep requests
  std::vector<double> max_g;
};

inline StabilityReport stability_report(const MdrkTableau& t, int p,
                                        double sweep_min = 0.0, double sweep_max = -1.0,
                                        double sweep_step = 0.0) {
  StencilTables tables = make_stencil_tables(p);
  StabilityReport rep;
  rep.scheme = t.name;
  rep.p = p;
  rep.critical_cfl = critical_cfl(t, tables);
  if (sweep_max >= sweep_min && sweep_step > 0.0) {
    for (double s = sweep_min; s <= sweep_max + 1e-15; s += sweep_step) {
      rep.sigmas.push_back(s);
      rep.max_g.push_back(max_amplification(t, tables, s));
    }
  }
  return rep;
}

}  // namespace mdrk
