#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mdrk/errors.hpp"
#include "mdrk/rational.hpp"

namespace mdrk {

// Finite-difference coefficient families of the local Lagrange bases on a
// unit-spaced stencil:
//   delta[k][j]     k-th derivative at 0 of the (2p+1)-point basis, j = -p..p
//   gamma[k][m][j]  k-th derivative at m of the 2p-point basis, j = -p+1..p
//   lambda[k][j]    half-way coefficients splitting delta[k] into a
//                   difference of two interface reconstructions
// All values are exact rationals; doubles are derived once via to_float().

constexpr int kMaxStencilRadius = 8;

namespace detail {

// Coefficients of prod_{r in nodes, r != j} (w - r)/(j - r), ascending powers.
inline std::vector<Rational> lagrange_basis_poly(int j, int lo, int hi) {
  std::vector<Rational> poly{Rational(1)};
  for (int r = lo; r <= hi; ++r) {
    if (r == j) continue;
    std::vector<Rational> next(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] += poly[i] * Rational(-r);
    }
    Rational scale = Rational(1) / Rational(j - r);
    for (auto& c : next) c *= scale;
    poly = std::move(next);
  }
  return poly;
}

// k-th derivative of a polynomial (ascending coefficients) evaluated at m.
inline Rational poly_derivative_at(const std::vector<Rational>& poly, int k, int m) {
  Rational acc(0);
  for (int t = static_cast<int>(poly.size()) - 1; t >= k; --t) {
    // t!/(t-k)! falling factorial
    Rational fall(1);
    for (int i = t; i > t - k; --i) fall *= Rational(i);
    acc += poly[t] * fall * Rational(m).pow(t - k);
  }
  return acc;
}

}  // namespace detail

/// delta^k_{p,j} for j = -p..p: exact k-th derivatives at 0 of the
/// (2p+1)-point Lagrange basis.
inline std::vector<Rational> central_derivative_coeffs(int p, int k) {
  if (p < 1 || p > kMaxStencilRadius)
    throw std::invalid_argument("central_derivative_coeffs: radius p must be in [1, 8], got " +
                                std::to_string(p));
  if (k < 0 || k > 2 * p)
    throw std::invalid_argument("central_derivative_coeffs: order k must be in [0, 2p], got " +
                                std::to_string(k));
  std::vector<Rational> out;
  out.reserve(2 * p + 1);
  for (int j = -p; j <= p; ++j) {
    auto poly = detail::lagrange_basis_poly(j, -p, p);
    // derivative at 0 is k! times the k-th coefficient
    out.push_back(k < static_cast<int>(poly.size()) ? poly[k] * Rational::factorial(k)
                                                    : Rational(0));
  }
  return out;
}

/// gamma^{k,m}_{p,j} for j = -p+1..p: exact k-th derivatives at offset m of
/// the 2p-point Lagrange basis.
inline std::vector<Rational> offset_derivative_coeffs(int p, int k, int m) {
  if (p < 1 || p > kMaxStencilRadius)
    throw std::invalid_argument("offset_derivative_coeffs: radius p must be in [1, 8], got " +
                                std::to_string(p));
  if (k < 0 || k > 2 * p - 1)
    throw std::invalid_argument("offset_derivative_coeffs: order k must be in [0, 2p-1], got " +
                                std::to_string(k));
  if (m < -p + 1 || m > p)
    throw std::invalid_argument("offset_derivative_coeffs: offset m must be in [-p+1, p], got " +
                                std::to_string(m));
  std::vector<Rational> out;
  out.reserve(2 * p);
  for (int j = -p + 1; j <= p; ++j) {
    auto poly = detail::lagrange_basis_poly(j, -p + 1, p);
    out.push_back(detail::poly_derivative_at(poly, k, m));
  }
  return out;
}

/// lambda^{k-1}_{p,j} for j = -p+1..p, obtained by back-substitution:
/// lambda_p = delta^k_p and lambda_j = delta^k_j + lambda_{j+1}. The leftover
/// relation delta^k_{-p} = -lambda_{-p+1} is asserted.
inline std::vector<Rational> halfway_coeffs(int p, int k) {
  if (p < 1 || p > kMaxStencilRadius)
    throw std::invalid_argument("halfway_coeffs: radius p must be in [1, 8], got " +
                                std::to_string(p));
  if (k < 1 || k > 2 * p)
    throw std::invalid_argument("halfway_coeffs: order k must be in [1, 2p], got " +
                                std::to_string(k));
  auto delta = central_derivative_coeffs(p, k);  // index j+p
  std::vector<Rational> lam(2 * p);              // index j+p-1
  lam[2 * p - 1] = delta[2 * p];
  for (int j = p - 1; j >= -p + 1; --j) lam[j + p - 1] = delta[j + p] + lam[j + p];
  if (delta[0] != -lam[0])
    throw InternalError("halfway_coeffs: overdetermined relation delta_{-p} = -lambda_{-p+1} "
                        "violated for p=" + std::to_string(p) + ", k=" + std::to_string(k));
  return lam;
}

/// All three coefficient families for a given radius, exact.
struct StencilCoefficients {
  int p = 0;
  std::vector<std::vector<Rational>> delta;               // [k in 0..2p][j+p]
  std::vector<std::vector<std::vector<Rational>>> gamma;  // [k in 0..2p-1][m+p-1][j+p-1]
  std::vector<std::vector<Rational>> lambda;              // [k in 1..2p] -> [j+p-1], holds lambda^{k-1}

  static StencilCoefficients generate(int p) {
    StencilCoefficients c;
    c.p = p;
    c.delta.resize(2 * p + 1);
    for (int k = 0; k <= 2 * p; ++k) c.delta[k] = central_derivative_coeffs(p, k);
    c.gamma.resize(2 * p);
    for (int k = 0; k <= 2 * p - 1; ++k) {
      c.gamma[k].resize(2 * p);
      for (int m = -p + 1; m <= p; ++m)
        c.gamma[k][m + p - 1] = offset_derivative_coeffs(p, k, m);
    }
    c.lambda.resize(2 * p + 1);  // slot 0 unused
    for (int k = 1; k <= 2 * p; ++k) c.lambda[k] = halfway_coeffs(p, k);
    return c;
  }

  const std::vector<Rational>& gamma_row(int k, int m) const {
    return gamma[k][m + p - 1];
  }
};

/// Double-precision mirror of StencilCoefficients, converted once at setup.
struct StencilTables {
  int p = 0;
  std::vector<std::vector<double>> delta;    // [k][j+p]
  std::vector<std::vector<double>> gamma1;   // [m+p-1][j+p-1], first-derivative rows
  std::vector<std::vector<double>> gamma_k0; // [k in 0..2p-1][j+p-1], offset m = 0
  std::vector<double> lambda0;               // [j+p-1], interface reconstruction weights
  std::vector<std::vector<double>> lambda;   // [k in 1..2p][j+p-1]
};

inline StencilTables to_float(const StencilCoefficients& c) {
  StencilTables t;
  t.p = c.p;
  t.delta.resize(c.delta.size());
  for (std::size_t k = 0; k < c.delta.size(); ++k) {
    t.delta[k].reserve(c.delta[k].size());
    for (const auto& r : c.delta[k]) t.delta[k].push_back(r.to_double());
  }
  t.gamma1.resize(2 * c.p);
  for (int m = -c.p + 1; m <= c.p; ++m) {
    const auto& row = c.gamma_row(1, m);
    for (const auto& r : row) t.gamma1[m + c.p - 1].push_back(r.to_double());
  }
  t.gamma_k0.resize(2 * c.p);
  for (int k = 0; k <= 2 * c.p - 1; ++k) {
    const auto& row = c.gamma_row(k, 0);
    for (const auto& r : row) t.gamma_k0[k].push_back(r.to_double());
  }
  t.lambda.resize(c.lambda.size());
  for (int k = 1; k <= 2 * c.p; ++k) {
    for (const auto& r : c.lambda[k]) t.lambda[k].push_back(r.to_double());
  }
  t.lambda0 = t.lambda[1];
  return t;
}

inline StencilTables make_stencil_tables(int p) {
  return to_float(StencilCoefficients::generate(p));
}

}  // namespace mdrk
