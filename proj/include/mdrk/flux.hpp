#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include "mdrk/errors.hpp"

namespace mdrk {

template <int N>
using StateVec = std::array<double, N>;

template <std::size_t N>
inline std::array<double, N> operator+(std::array<double, N> a,
                                       const std::array<double, N>& b) {
  for (std::size_t i = 0; i < N; ++i) a[i] += b[i];
  return a;
}

template <std::size_t N>
inline std::array<double, N> operator*(double s, std::array<double, N> a) {
  for (std::size_t i = 0; i < N; ++i) a[i] *= s;
  return a;
}

template <std::size_t N>
inline std::array<double, N>& axpy(double s, const std::array<double, N>& x,
                                   std::array<double, N>& y) {
  for (std::size_t i = 0; i < N; ++i) y[i] += s * x[i];
  return y;
}

/// A flux model evaluates f(w) and supplies an upper bound on the spectral
/// radius of df/dw for CFL timestep control.
template <class F>
concept FluxModel = requires(const F f, const typename F::State w) {
  { F::components } -> std::convertible_to<int>;
  { f.flux(w) } -> std::same_as<typename F::State>;
  { f.max_wave_speed(w) } -> std::convertible_to<double>;
  { f.admissible(w) } -> std::same_as<bool>;
  { f.name() } -> std::convertible_to<std::string_view>;
};

struct AdvectionFlux {
  static constexpr int components = 1;
  using State = StateVec<1>;

  double alpha = 1.0;

  State flux(const State& w) const { return {alpha * w[0]}; }
  double max_wave_speed(const State&) const { return std::abs(alpha); }
  bool admissible(const State&) const { return true; }
  std::string_view name() const { return "advection"; }
};

struct BurgersFlux {
  static constexpr int components = 1;
  using State = StateVec<1>;

  State flux(const State& w) const { return {0.5 * w[0] * w[0]}; }
  double max_wave_speed(const State& w) const { return std::abs(w[0]); }
  bool admissible(const State&) const { return true; }
  std::string_view name() const { return "burgers"; }
};

/// f(w) = 4w^2 / (4w^2 + (1-w)^2); the denominator has no real root.
struct BuckleyLeverettFlux {
  static constexpr int components = 1;
  using State = StateVec<1>;

  State flux(const State& w) const {
    double u = w[0];
    double den = 4.0 * u * u + (1.0 - u) * (1.0 - u);
    return {4.0 * u * u / den};
  }
  // analytic f'(w), used only for CFL control
  static double dflux(double u) {
    double den = 4.0 * u * u + (1.0 - u) * (1.0 - u);
    return 8.0 * u * (1.0 - u) / (den * den);
  }
  // analytic f''(w), used by the characteristics reference solver
  static double d2flux(double u) {
    double D = 4.0 * u * u + (1.0 - u) * (1.0 - u);
    double N = 8.0 * u * (1.0 - u);
    double Np = 8.0 - 16.0 * u;
    double Dp = 10.0 * u - 2.0;
    return (Np * D - 2.0 * N * Dp) / (D * D * D);
  }
  double max_wave_speed(const State& w) const { return std::abs(dflux(w[0])); }
  bool admissible(const State&) const { return true; }
  std::string_view name() const { return "buckley-leverett"; }
};

/// 1D compressible Euler equations in conservative variables (rho, rho*u, E)
/// with ideal-gas closure p = (gamma - 1)(E - rho*u^2/2).
struct EulerFlux {
  static constexpr int components = 3;
  using State = StateVec<3>;

  double gamma = 1.4;

  double pressure(const State& w) const {
    return (gamma - 1.0) * (w[2] - 0.5 * w[1] * w[1] / w[0]);
  }

  State flux(const State& w) const {
    double rho = w[0], mom = w[1], E = w[2];
    double u = mom / rho;
    double p = (gamma - 1.0) * (E - 0.5 * mom * u);
    return {mom, mom * u + p, u * (E + p)};
  }

  double max_wave_speed(const State& w) const {
    double rho = w[0];
    double p = pressure(w);
    if (!(rho > 0.0) || !(p > 0.0))
      throw AdmissibilityError("euler state inadmissible: rho=" + std::to_string(rho) +
                               ", p=" + std::to_string(p));
    double u = w[1] / rho;
    return std::abs(u) + std::sqrt(gamma * p / rho);
  }

  bool admissible(const State& w) const {
    return w[0] > 0.0 && pressure(w) > 0.0;
  }

  std::string_view name() const { return "euler"; }

  State from_primitive(double rho, double u, double p) const {
    return {rho, rho * u, p / (gamma - 1.0) + 0.5 * rho * u * u};
  }
  std::array<double, 3> to_primitive(const State& w) const {
    double u = w[1] / w[0];
    return {w[0], u, pressure(w)};
  }
};

static_assert(FluxModel<AdvectionFlux>);
static_assert(FluxModel<BurgersFlux>);
static_assert(FluxModel<BuckleyLeverettFlux>);
static_assert(FluxModel<EulerFlux>);

}  // namespace mdrk
