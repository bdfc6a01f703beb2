#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdrk/errors.hpp"
#include "mdrk/flux.hpp"

namespace mdrk {

/// A smooth periodic initial profile with its derivative and the data the
/// characteristics solvers need (value range, steepest negative slope).
struct ScalarProfile {
  std::function<double(double)> value;
  std::function<double(double)> slope;
  double min_value = 0.0;
  double max_value = 0.0;
  double min_slope = 0.0;

  /// First shock time of Burgers-type transport: -1/min(w0') when the
  /// profile has a decreasing part, infinity otherwise.
  double breaking_time() const {
    return min_slope < 0.0 ? -1.0 / min_slope : std::numeric_limits<double>::infinity();
  }
};

namespace detail {

// dense scan plus local ternary refinement of min f over [a, b]
inline double minimize_scan(const std::function<double(double)>& f, double a, double b,
                            int samples = 4096) {
  double best = std::numeric_limits<double>::infinity();
  double xbest = a;
  for (int i = 0; i <= samples; ++i) {
    double x = a + (b - a) * i / samples;
    double v = f(x);
    if (v < best) {
      best = v;
      xbest = x;
    }
  }
  double lo = std::max(a, xbest - (b - a) / samples);
  double hi = std::min(b, xbest + (b - a) / samples);
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    (f(m1) < f(m2) ? hi : lo) = (f(m1) < f(m2) ? m2 : m1);
  }
  return f(0.5 * (lo + hi));
}

}  // namespace detail

/// Builds a ScalarProfile from closures, measuring range and steepest slope
/// over one period [a, b].
inline ScalarProfile make_profile(std::function<double(double)> value,
                                  std::function<double(double)> slope, double a, double b) {
  ScalarProfile prof;
  prof.min_value = detail::minimize_scan(value, a, b);
  prof.max_value = -detail::minimize_scan([&](double x) { return -value(x); }, a, b);
  prof.min_slope = detail::minimize_scan(slope, a, b);
  prof.value = std::move(value);
  prof.slope = std::move(slope);
  return prof;
}

constexpr double kCharacteristicsTol = 1e-14;
constexpr int kNewtonMaxIter = 100;
constexpr int kBisectionMaxIter = 200;

/// Solution of Burgers' equation along characteristics: the root w of
/// g(w) = w - w0(x - w t), found by Newton from w0(x) with a bisection
/// fallback. Valid strictly before the breaking time.
inline double burgers_characteristics(double x, double t, const ScalarProfile& w0) {
  if (t < 0.0 || t >= w0.breaking_time())
    throw std::invalid_argument("burgers_characteristics: t=" + std::to_string(t) +
                                " is at or beyond the breaking time " +
                                std::to_string(w0.breaking_time()));
  auto g = [&](double w) { return w - w0.value(x - w * t); };
  double w = w0.value(x);
  for (int it = 0; it < kNewtonMaxIter; ++it) {
    double res = g(w);
    if (std::abs(res) <= kCharacteristicsTol) return w;
    double dg = 1.0 + t * w0.slope(x - w * t);
    if (dg == 0.0 || !std::isfinite(dg)) break;
    w -= res / dg;
  }
  if (std::abs(g(w)) <= kCharacteristicsTol) return w;
  // g is strictly increasing for t below the breaking time
  double pad = 1e-6 * (1.0 + w0.max_value - w0.min_value);
  double lo = w0.min_value - pad, hi = w0.max_value + pad;
  if (g(lo) > 0.0 || g(hi) < 0.0)
    throw RootFindError("burgers_characteristics: bisection bracket invalid at x=" +
                        std::to_string(x) + ", t=" + std::to_string(t));
  for (int it = 0; it < kBisectionMaxIter; ++it) {
    double mid = 0.5 * (lo + hi);
    (g(mid) <= 0.0 ? lo : hi) = mid;
    if (hi - lo <= 1e-16 * (1.0 + std::abs(lo))) break;
  }
  w = 0.5 * (lo + hi);
  if (std::abs(g(w)) > 10 * kCharacteristicsTol)
    throw RootFindError("burgers_characteristics: residual " + std::to_string(g(w)) +
                        " after bisection at x=" + std::to_string(x));
  return w;
}

/// Characteristic solution of a scalar law with wave speed c(w) = f'(w):
/// finds the foot point x0 with x0 + c(w0(x0)) t = x on the periodic domain
/// [a, b] and returns w0(x0). Detects folds (multiple feet) as a
/// precondition failure.
inline double scalar_characteristics(double x, double t, const ScalarProfile& w0,
                                     const std::function<double(double)>& wave_speed,
                                     const std::function<double(double)>& wave_speed_slope,
                                     double a, double b) {
  if (t < 0.0) throw std::invalid_argument("scalar_characteristics: negative time");
  if (t == 0.0) return w0.value(x);
  const double period = b - a;
  auto h = [&](double x0) { return x0 + t * wave_speed(w0.value(x0)) - x; };

  // bracket by scanning one period centered at x; zero counts as positive
  // so an on-grid root is a single sign transition
  const int scan = 4096;
  double prev_x = x - 0.5 * period;
  double prev_h = h(prev_x);
  double blo = 0.0, bhi = 0.0;
  int crossings = 0;
  for (int i = 1; i <= scan; ++i) {
    double cur_x = x - 0.5 * period + period * i / scan;
    double cur_h = h(cur_x);
    if ((prev_h < 0.0) != (cur_h < 0.0)) {
      if (crossings == 0) {
        blo = prev_x;
        bhi = cur_x;
      }
      ++crossings;
    }
    prev_x = cur_x;
    prev_h = cur_h;
  }
  if (crossings == 0)
    throw RootFindError("scalar_characteristics: no characteristic foot found");
  if (crossings > 1)
    throw std::invalid_argument(
        "scalar_characteristics: characteristic map folded (" +
        std::to_string(crossings) + " feet) at x=" + std::to_string(x) +
        ", t=" + std::to_string(t));

  // safeguarded Newton inside the bracket
  double lo = blo, hi = bhi;
  double x0 = 0.5 * (lo + hi);
  for (int it = 0; it < kNewtonMaxIter + kBisectionMaxIter; ++it) {
    double res = h(x0);
    if (std::abs(res) <= kCharacteristicsTol) break;
    (res < 0.0 ? lo : hi) = x0;
    double dh = 1.0 + t * wave_speed_slope(w0.value(x0)) * w0.slope(x0);
    double next = (dh != 0.0 && std::isfinite(dh)) ? x0 - res / dh : 0.5 * (lo + hi);
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    if (next == x0) break;
    x0 = next;
  }
  if (std::abs(h(x0)) > 10 * kCharacteristicsTol)
    throw RootFindError("scalar_characteristics: residual " + std::to_string(h(x0)) +
                        " at x=" + std::to_string(x));
  return w0.value(x0);
}

/// Exact Euler solution for an advected density wave: rho travels at unit
/// speed, velocity and pressure stay one.
inline StateVec<3> euler_advected_density(double x, double t, double gamma = 1.4) {
  double rho = 1.0 + 0.3 * std::sin(std::numbers::pi * (x - t));
  EulerFlux flux{gamma};
  return flux.from_primitive(rho, 1.0, 1.0);
}

/// Scaled l1 norm dx * sum_i |a_i - b_i|, summed over solution components.
template <int N>
inline double l1_error(std::span<const StateVec<N>> numerical,
                       std::span<const StateVec<N>> reference, double dx) {
  if (numerical.size() != reference.size())
    throw std::invalid_argument("l1_error: node counts differ (" +
                                std::to_string(numerical.size()) + " vs " +
                                std::to_string(reference.size()) + ")");
  double acc = 0.0;
  for (std::size_t i = 0; i < numerical.size(); ++i)
    for (int c = 0; c < N; ++c) acc += std::abs(numerical[i][c] - reference[i][c]);
  return dx * acc;
}

}  // namespace mdrk
