#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mdrk {

/// Extended Butcher tableau of an explicit r-derivative, s-stage,
/// order-q multiderivative Runge-Kutta scheme. a[k-1] is the strictly
/// lower triangular s-by-s stage matrix of the k-th derivative,
/// b[k-1] the corresponding weight row.
struct MdrkTableau {
  std::string name;
  int r = 0;
  int s = 0;
  int q = 0;
  int recommended_p = 0;  // ceil(q/2)
  std::vector<double> c;
  std::vector<std::vector<std::vector<double>>> a;  // [r][s][s]
  std::vector<std::vector<double>> b;               // [r][s]
};

namespace detail {

inline MdrkTableau make_tableau(std::string name, int r, int s, int q,
                                std::vector<double> c,
                                std::vector<std::vector<std::vector<double>>> a,
                                std::vector<std::vector<double>> b) {
  MdrkTableau t;
  t.name = std::move(name);
  t.r = r;
  t.s = s;
  t.q = q;
  t.recommended_p = (q + 1) / 2;
  t.c = std::move(c);
  t.a = std::move(a);
  t.b = std::move(b);
  return t;
}

}  // namespace detail

inline const std::vector<std::string>& mdrk_scheme_names() {
  static const std::vector<std::string> names = {
      "mdrk-2-3-2", "mdrk-2-4-2", "mdrk-2-5-3",
      "mdrk-3-5-2", "mdrk-3-7-3", "mdrk-4-6-2"};
  return names;
}

inline std::string valid_scheme_names_message() {
  std::string msg;
  for (const auto& n : mdrk_scheme_names()) msg += n + " ";
  msg += "taylor-1 .. taylor-16";
  return msg;
}

/// Taylor series time stepping cast as a single-stage MDRK tableau:
/// b^(k) = 1/k!. Radius-p approximate Taylor methods are taylor-2p run
/// at stencil radius p, hence the derivative count reaches 16.
inline MdrkTableau taylor_tableau(int r) {
  if (r < 1 || r > 16)
    throw std::invalid_argument("taylor_tableau: derivative count must be in [1, 16]");
  std::vector<std::vector<std::vector<double>>> a(r, {{0.0}});
  std::vector<std::vector<double>> b(r);
  double kfac = 1.0;
  for (int k = 1; k <= r; ++k) {
    kfac *= k;
    b[k - 1] = {1.0 / kfac};
  }
  return detail::make_tableau("taylor-" + std::to_string(r), r, 1, r, {0.0},
                              std::move(a), std::move(b));
}

inline MdrkTableau get_tableau(std::string_view scheme_id) {
  const double sq2 = std::sqrt(2.0);
  if (scheme_id == "mdrk-2-3-2") {
    return detail::make_tableau(
        "mdrk-2-3-2", 2, 2, 3, {0.0, 1.0},
        {{{0, 0}, {1.0, 0}}, {{0, 0}, {1.0 / 2, 0}}},
        {{2.0 / 3, 1.0 / 3}, {1.0 / 6, 0.0}});
  }
  if (scheme_id == "mdrk-2-4-2") {
    return detail::make_tableau(
        "mdrk-2-4-2", 2, 2, 4, {0.0, 0.5},
        {{{0, 0}, {1.0 / 2, 0}}, {{0, 0}, {1.0 / 8, 0}}},
        {{1.0, 0.0}, {1.0 / 6, 1.0 / 3}});
  }
  if (scheme_id == "mdrk-2-5-3") {
    return detail::make_tableau(
        "mdrk-2-5-3", 2, 3, 5, {0.0, 2.0 / 5, 1.0},
        {{{0, 0, 0}, {2.0 / 5, 0, 0}, {1.0, 0, 0}},
         {{0, 0, 0}, {2.0 / 25, 0, 0}, {-1.0 / 4, 3.0 / 4, 0}}},
        {{1.0, 0.0, 0.0}, {1.0 / 8, 25.0 / 72, 1.0 / 36}});
  }
  if (scheme_id == "mdrk-3-5-2") {
    return detail::make_tableau(
        "mdrk-3-5-2", 3, 2, 5, {0.0, 2.0 / 5},
        {{{0, 0}, {2.0 / 5, 0}},
         {{0, 0}, {2.0 / 25, 0}},
         {{0, 0}, {4.0 / 375, 0}}},
        {{1.0, 0.0}, {1.0 / 2, 0.0}, {1.0 / 16, 5.0 / 48}});
  }
  if (scheme_id == "mdrk-3-7-3") {
    const double c2 = (3.0 - sq2) / 7.0;
    const double c3 = (3.0 + sq2) / 7.0;
    const double a32 = (122.0 + 71.0 * sq2) / 7203.0;
    // third-derivative row of stage 3 sums to c3^3/6 (stage consistency)
    return detail::make_tableau(
        "mdrk-3-7-3", 3, 3, 7, {0.0, c2, c3},
        {{{0, 0, 0}, {c2, 0, 0}, {c3, 0, 0}},
         {{0, 0, 0}, {c2 * c2 / 2, 0, 0}, {c3 * c3 / 2, 0, 0}},
         {{0, 0, 0},
          {c2 * c2 * c2 / 6, 0, 0},
          {c3 * c3 * c3 / 6 - a32, a32, 0}}},
        {{1.0, 0.0, 0.0},
         {1.0 / 2, 0.0, 0.0},
         {1.0 / 30, 1.0 / 15 + 13.0 * sq2 / 480, 1.0 / 15 - 13.0 * sq2 / 480}});
  }
  if (scheme_id == "mdrk-4-6-2") {
    return detail::make_tableau(
        "mdrk-4-6-2", 4, 2, 6, {0.0, 1.0 / 3},
        {{{0, 0}, {1.0 / 3, 0}},
         {{0, 0}, {1.0 / 18, 0}},
         {{0, 0}, {1.0 / 162, 0}},
         {{0, 0}, {1.0 / 1944, 0}}},
        {{1.0, 0.0}, {1.0 / 2, 0.0}, {1.0 / 6, 0.0}, {1.0 / 60, 1.0 / 40}});
  }
  if (scheme_id.starts_with("taylor-")) {
    auto digits = scheme_id.substr(7);
    int r = 0;
    bool ok = !digits.empty() && digits.size() <= 2;
    for (char ch : digits) {
      if (ch < '0' || ch > '9') ok = false;
      else r = 10 * r + (ch - '0');
    }
    if (ok && r >= 1 && r <= 16) return taylor_tableau(r);
  }
  throw std::invalid_argument("unknown scheme '" + std::string(scheme_id) +
                              "'; valid schemes: " + valid_scheme_names_message());
}

/// Stability function R(z): the scheme applied to y' = y, where every
/// time derivative of the right-hand side is y itself.
inline std::complex<double> stability_polynomial(const MdrkTableau& t,
                                                 std::complex<double> z) {
  std::vector<std::complex<double>> g(t.s);
  for (int l = 0; l < t.s; ++l) {
    std::complex<double> zk = 1.0;
    std::complex<double> acc = 1.0;
    for (int k = 1; k <= t.r; ++k) {
      zk *= z;
      std::complex<double> sum = 0.0;
      for (int nu = 0; nu < l; ++nu) sum += t.a[k - 1][l][nu] * g[nu];
      acc += zk * sum;
    }
    g[l] = acc;
  }
  std::complex<double> zk = 1.0;
  std::complex<double> out = 1.0;
  for (int k = 1; k <= t.r; ++k) {
    zk *= z;
    std::complex<double> sum = 0.0;
    for (int l = 0; l < t.s; ++l) sum += t.b[k - 1][l] * g[l];
    out += zk * sum;
  }
  return out;
}

/// Taylor coefficients of R(z) up to degree n, extracted by evaluating on
/// roots of unity and inverting the discrete Fourier sum. Exact for the
/// polynomial R (degree <= r*s) whenever n >= r*s.
inline std::vector<double> stability_polynomial_coefficients(const MdrkTableau& t,
                                                             int n) {
  const int N = std::max(n, t.r * t.s) + 1;
  std::vector<std::complex<double>> values(N);
  for (int j = 0; j < N; ++j) {
    double ang = 2.0 * std::numbers::pi * j / N;
    values[j] = stability_polynomial(t, std::polar(1.0, ang));
  }
  std::vector<double> coeffs(n + 1);
  for (int k = 0; k <= n; ++k) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < N; ++j) {
      double ang = -2.0 * std::numbers::pi * j * k / N;
      acc += values[j] * std::polar(1.0, ang);
    }
    coeffs[k] = (acc / static_cast<double>(N)).real();
  }
  return coeffs;
}

struct TableauValidation {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string why) {
    ok = false;
    failures.push_back(std::move(why));
  }
};

/// Structural checks: strict lower triangularity, c_1 = 0, first-order
/// condition sum(b^(1)) = 1, and R(z) coefficients 1/k! for k <= q.
inline TableauValidation validate_tableau(const MdrkTableau& t) {
  TableauValidation v;
  for (int k = 0; k < t.r; ++k)
    for (int l = 0; l < t.s; ++l)
      for (int nu = l; nu < t.s; ++nu)
        if (t.a[k][l][nu] != 0.0)
          v.fail("triangularity: a^(" + std::to_string(k + 1) + ")[" +
                 std::to_string(l + 1) + "][" + std::to_string(nu + 1) +
                 "] must vanish for an explicit scheme");
  if (t.c.empty() || t.c[0] != 0.0) v.fail("first abscissa: c_1 must be 0");
  double b1 = 0.0;
  for (double w : t.b[0]) b1 += w;
  if (std::abs(b1 - 1.0) > 1e-14)
    v.fail("first-order condition: sum of b^(1) weights is " + std::to_string(b1) +
           ", expected 1");
  auto coeffs = stability_polynomial_coefficients(t, t.q);
  double kfac = 1.0;
  for (int k = 0; k <= t.q; ++k) {
    if (k > 0) kfac *= k;
    if (std::abs(coeffs[k] - 1.0 / kfac) > 1e-12)
      v.fail("order condition: R(z) coefficient at z^" + std::to_string(k) +
             " is " + std::to_string(coeffs[k]) + ", expected 1/" +
             std::to_string(k) + "!");
  }
  return v;
}

}  // namespace mdrk
