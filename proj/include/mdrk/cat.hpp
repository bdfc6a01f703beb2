#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "mdrk/errors.hpp"
#include "mdrk/flux.hpp"
#include "mdrk/stencil.hpp"

namespace mdrk {

/// Scratch arrays for the flux time-derivative recursion at one interface.
/// Allocated once and reused across cells; prepare() must be called whenever
/// dt changes.
template <FluxModel Flux>
struct CatWorkspace {
  using State = typename Flux::State;

  int p = 0;
  int r = 0;
  std::vector<State> ftilde;       // [k in 0..r-1][j], flux time derivatives
  std::vector<State> wtilde;       // [m in 1..r-1][j], solution time derivatives
  std::vector<State> taylor_flux;  // [j][rho], flux of Taylor-shifted states
  std::vector<double> shift_coef;  // [rho][m] = (rho*dt)^m / m!
  std::vector<double> inv_dt_pow;  // [k] = dt^-k

  CatWorkspace() = default;
  CatWorkspace(int p_, int r_) : p(p_), r(r_) {
    const int w = 2 * p;
    ftilde.assign(static_cast<std::size_t>(r) * w, State{});
    wtilde.assign(static_cast<std::size_t>(r) * w, State{});
    taylor_flux.assign(static_cast<std::size_t>(w) * w, State{});
    shift_coef.assign(static_cast<std::size_t>(w) * r, 0.0);
    inv_dt_pow.assign(r, 1.0);
  }

  void prepare(double dt) {
    for (int rho = -p + 1; rho <= p; ++rho) {
      double base = rho * dt;
      double c = 1.0;
      for (int m = 1; m < r; ++m) {
        c *= base / m;
        shift_coef[static_cast<std::size_t>(rho + p - 1) * r + m] = c;
      }
    }
    inv_dt_pow[0] = 1.0;
    for (int k = 1; k < r; ++k) inv_dt_pow[k] = inv_dt_pow[k - 1] / dt;
  }

  State* ftilde_row(int k) { return ftilde.data() + static_cast<std::size_t>(k) * 2 * p; }
  const State* ftilde_row(int k) const {
    return ftilde.data() + static_cast<std::size_t>(k) * 2 * p;
  }
  State* wtilde_row(int m) { return wtilde.data() + static_cast<std::size_t>(m) * 2 * p; }
};

/// One pass of the flux time-derivative recursion on a window of 2p states
/// (offsets j = -p+1..p around interface i+1/2, window[0] = node i-p+1).
/// Fills ws.ftilde[k-1][j] ~ d^(k-1)/dt^(k-1) f(w) at node i+j for k = 1..r
/// using only evaluations of the flux itself.
template <FluxModel Flux>
inline void flux_time_derivatives(const typename Flux::State* window, const Flux& flux,
                                  const StencilTables& tables, double dx,
                                  CatWorkspace<Flux>& ws) {
  using State = typename Flux::State;
  constexpr int m = Flux::components;
  const int p = ws.p;
  const int r = ws.r;
  const int w = 2 * p;

  State* f0 = ws.ftilde_row(0);
  for (int j = 0; j < w; ++j) f0[j] = flux.flux(window[j]);

  const double inv_dx = 1.0 / dx;
  for (int k = 2; k <= r; ++k) {
    const State* fprev = ws.ftilde_row(k - 2);
    State* fcur = ws.ftilde_row(k - 1);
    State* wt = ws.wtilde_row(k - 1);
    const double* gk0 = tables.gamma_k0[k - 1].data();
    for (int j = 0; j < w; ++j) {
      // wtilde^(k-1) = -(1/dx) sum_rho gamma^{1,j}_rho ftilde^(k-2)_rho
      const double* g1j = tables.gamma1[j].data();
      State acc{};
      for (int rho = 0; rho < w; ++rho) axpy(g1j[rho], fprev[rho], acc);
      for (int c = 0; c < m; ++c) wt[j][c] = -inv_dx * acc[c];

      // Taylor-shifted flux values across the temporal offsets
      State* frow = ws.taylor_flux.data() + static_cast<std::size_t>(j) * w;
      for (int rho = 0; rho < w; ++rho) {
        State shifted = window[j];
        const double* sc = ws.shift_coef.data() + static_cast<std::size_t>(rho) * r;
        for (int mm = 1; mm < k; ++mm) axpy(sc[mm], ws.wtilde_row(mm)[j], shifted);
        frow[rho] = flux.flux(shifted);
      }

      // ftilde^(k-1) = (1/dt^(k-1)) sum_rho gamma^{k-1,0}_rho fT_rho
      State acc2{};
      for (int rho = 0; rho < w; ++rho) axpy(gk0[rho], frow[rho], acc2);
      for (int c = 0; c < m; ++c) fcur[j][c] = ws.inv_dt_pow[k - 1] * acc2[c];
    }
  }

  for (int k = 0; k < r; ++k) {
    const State* row = ws.ftilde_row(k);
    for (int j = 0; j < w; ++j)
      for (int c = 0; c < m; ++c)
        if (!std::isfinite(row[j][c]))
          throw DivergedError("non-finite flux time derivative in recursion", -1,
                              std::numeric_limits<double>::quiet_NaN());
  }
}

/// Interface reconstruction at x_{i+1/2}: sum_j lambda^0_j ftilde[k-1][j].
template <FluxModel Flux>
inline typename Flux::State halfway_flux_contribution(const CatWorkspace<Flux>& ws, int k,
                                                      const StencilTables& tables) {
  using State = typename Flux::State;
  const int w = 2 * ws.p;
  const State* row = ws.ftilde_row(k - 1);
  State acc{};
  for (int j = 0; j < w; ++j) axpy(tables.lambda0[j], row[j], acc);
  return acc;
}

}  // namespace mdrk
