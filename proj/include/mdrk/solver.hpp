#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mdrk/cat.hpp"
#include "mdrk/errors.hpp"
#include "mdrk/flux.hpp"
#include "mdrk/stencil.hpp"
#include "mdrk/tableau.hpp"

namespace mdrk {

/// Uniform periodic mesh on [a, b) with nodes x_i = a + i*dx, i = 0..M-1.
struct Mesh1D {
  double a = 0.0;
  double b = 1.0;
  int M = 0;
  double dx = 0.0;

  Mesh1D() = default;
  Mesh1D(double a_, double b_, int M_) : a(a_), b(b_), M(M_), dx((b_ - a_) / M_) {
    if (M_ < 2 || !(b_ > a_))
      throw std::invalid_argument("Mesh1D: need b > a and at least two cells");
  }
  double x(int i) const { return a + i * dx; }
};

template <int N>
struct GridState {
  double t = 0.0;
  std::vector<StateVec<N>> values;
};

struct StepLog {
  long steps = 0;
  double min_dt = std::numeric_limits<double>::infinity();
  double max_dt = 0.0;
  std::vector<double> dts;

  void record(double dt) {
    ++steps;
    min_dt = std::min(min_dt, dt);
    max_dt = std::max(max_dt, dt);
    dts.push_back(dt);
  }
};

template <int N>
struct RunOutput {
  GridState<N> state;
  StepLog log;
};

/// CFL timestep: sigma * dx / max_i |wave speed|, clipped so the final step
/// lands exactly on t_end.
template <FluxModel Flux>
double compute_dt(const GridState<Flux::components>& state, const Flux& flux, double sigma,
                  double dx, double t_end) {
  double speed = 0.0;
  for (const auto& w : state.values) speed = std::max(speed, flux.max_wave_speed(w));
  if (!(speed > 0.0))
    throw DegenerateProblemError("compute_dt: wave speed vanishes everywhere");
  double dt = sigma * dx / speed;
  return std::min(dt, t_end - state.t);
}

template <FluxModel Flux>
class Solver {
 public:
  static constexpr int m = Flux::components;
  using State = typename Flux::State;
  using Grid = GridState<m>;

  Solver(Mesh1D mesh, MdrkTableau tableau, Flux flux, int p = 0)
      : mesh_(mesh),
        tab_(std::move(tableau)),
        flux_(flux),
        p_(p > 0 ? p : tab_.recommended_p) {
    if (tab_.r > 2 * p_)
      throw std::invalid_argument("Solver: radius p=" + std::to_string(p_) +
                                  " too small for " + std::to_string(tab_.r) +
                                  " derivatives (need r <= 2p)");
    // the 2p-node interface window must fit; at M = 2p the full update
    // stencil wraps onto itself, which is how the coarsest meshes run
    if (mesh_.M < 2 * p_)
      throw std::invalid_argument("Solver: mesh with M=" + std::to_string(mesh_.M) +
                                  " cells cannot hold a radius-" + std::to_string(p_) +
                                  " stencil");
    tables_ = make_stencil_tables(p_);

    int nthreads = 1;
#ifdef _OPENMP
    nthreads = omp_get_max_threads();
#endif
    for (int i = 0; i < nthreads; ++i) workspaces_.emplace_back(p_, tab_.r);

    const int M = mesh_.M;
    const std::size_t ext_len = static_cast<std::size_t>(M) + 2 * p_ - 1;
    stage_ext_.assign(tab_.s, std::vector<State>(ext_len));
    lam_flux_.assign(static_cast<std::size_t>(tab_.s) * tab_.r * M, State{});
    face_flux_.assign(M, State{});
    dt_pow_.assign(tab_.r, 1.0);
  }

  int radius() const { return p_; }
  const MdrkTableau& tableau() const { return tab_; }
  const Mesh1D& mesh() const { return mesh_; }
  const StencilTables& tables() const { return tables_; }
  const Flux& flux() const { return flux_; }

  Grid make_initial_state(auto&& ic) const {
    Grid g;
    g.t = 0.0;
    g.values.resize(mesh_.M);
    for (int i = 0; i < mesh_.M; ++i) g.values[i] = ic(mesh_.x(i));
    return g;
  }

  /// One full MDRKCAT step of size dt. Every interface flux is computed once
  /// and shared by its two neighbor cells through an index shift.
  void step(Grid& state, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    const int M = mesh_.M;
    const int r = tab_.r;
    const int s = tab_.s;

    dt_pow_[0] = 1.0;
    for (int k = 1; k < r; ++k) dt_pow_[k] = dt_pow_[k - 1] * dt;
    for (auto& ws : workspaces_) ws.prepare(dt);

    extend(state.values, stage_ext_[0]);
    ladder(0);

    for (int l = 1; l < s; ++l) {
      assemble_face_flux([&](int k) -> const double* { return tab_.a[k][l].data(); }, l);
      // conservative stage update from the time-level state
      const double lam = dt / mesh_.dx;
      std::vector<State>& ext = stage_ext_[l];
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
      for (int i = 0; i < M; ++i) {
        const State& wn = stage_ext_[0][i + p_ - 1];
        const State& fr = face_flux_[i];
        const State& fl = face_flux_[(i + M - 1) % M];
        State v;
        for (int c = 0; c < m; ++c) v[c] = wn[c] - lam * (fr[c] - fl[c]);
        ext[i + p_ - 1] = v;
      }
      wrap_ghosts(ext);
      ladder(l);
    }

    assemble_face_flux([&](int k) -> const double* { return tab_.b[k].data(); }, s);

    const double lam = dt / mesh_.dx;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < M; ++i) {
      const State& fr = face_flux_[i];
      const State& fl = face_flux_[(i + M - 1) % M];
      for (int c = 0; c < m; ++c) state.values[i][c] -= lam * (fr[c] - fl[c]);
    }
    state.t += dt;
  }

  using RunResult = RunOutput<m>;

  /// March from the given state to t_end with CFL-controlled steps.
  RunResult run(Grid state, double sigma, double t_end,
                long max_steps = 20'000'000) {
    StepLog log;
    while (state.t < t_end) {
      check_state(state, log.steps);
      double dt;
      try {
        dt = compute_dt(state, flux_, sigma, mesh_.dx, t_end);
      } catch (const AdmissibilityError& e) {
        throw DivergedError(std::string("state left the admissible set: ") + e.what(),
                            log.steps, state.t);
      }
      bool final_step = state.t + dt >= t_end;
      if (final_step) dt = t_end - state.t;
      if (!(dt > 0.0)) break;
      try {
        step(state, dt);
      } catch (const DivergedError& e) {
        throw DivergedError(e.what(), log.steps, state.t);
      }
      if (final_step) state.t = t_end;
      log.record(dt);
      if (log.steps >= max_steps)
        throw DivergedError("step limit exceeded (timestep collapse)", log.steps, state.t);
    }
    check_state(state, log.steps);
    return {std::move(state), std::move(log)};
  }

 private:
  void check_state(const Grid& state, long step_idx) const {
    for (int i = 0; i < mesh_.M; ++i) {
      const State& w = state.values[i];
      for (int c = 0; c < m; ++c)
        if (!std::isfinite(w[c]))
          throw DivergedError("non-finite solution value at node " + std::to_string(i),
                              step_idx, state.t);
      if (!flux_.admissible(w))
        throw DivergedError("inadmissible solution value at node " + std::to_string(i),
                            step_idx, state.t);
    }
  }

  // periodic extension: ext[idx] = values[(idx - (p-1)) mod M]
  void extend(const std::vector<State>& values, std::vector<State>& ext) const {
    const int M = mesh_.M;
    std::copy(values.begin(), values.end(), ext.begin() + (p_ - 1));
    for (int g = 0; g < p_ - 1; ++g) ext[g] = values[M - (p_ - 1) + g];
    for (int g = 0; g < p_; ++g) ext[M + p_ - 1 + g] = values[g];
  }

  void wrap_ghosts(std::vector<State>& ext) const {
    const int M = mesh_.M;
    for (int g = 0; g < p_ - 1; ++g) ext[g] = ext[M + g];
    for (int g = 0; g < p_; ++g) ext[M + p_ - 1 + g] = ext[p_ - 1 + g];
  }

  // Flux time-derivative ladders of stage l at every interface, reduced to
  // interface values: lam_flux_[(l*r + k)*M + i].
  void ladder(int l) {
    const int M = mesh_.M;
    const int r = tab_.r;
    const std::vector<State>& ext = stage_ext_[l];
    std::atomic<bool> failed{false};
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < M; ++i) {
      if (failed.load(std::memory_order_relaxed)) continue;
      int tid = 0;
#ifdef _OPENMP
      tid = omp_get_thread_num();
#endif
      CatWorkspace<Flux>& ws = workspaces_[tid];
      try {
        flux_time_derivatives(ext.data() + i, flux_, tables_, mesh_.dx, ws);
        for (int k = 1; k <= r; ++k)
          lam_flux_[(static_cast<std::size_t>(l) * r + k - 1) * M + i] =
              halfway_flux_contribution(ws, k, tables_);
      } catch (const DivergedError&) {
        failed.store(true, std::memory_order_relaxed);
      }
    }
    if (failed.load())
      throw DivergedError("flux derivative recursion diverged in stage " +
                              std::to_string(l + 1),
                          -1, std::numeric_limits<double>::quiet_NaN());
  }

  // F_{i+1/2} = sum_k dt^(k-1) sum_nu w[k][nu] * Lambda0(ftilde^nu)^(k-1)_i,
  // where w is the a-row of the stage being built (nu < l) or the b-row
  // (nu over all s stages) for the final update.
  template <class WeightRow>
  void assemble_face_flux(WeightRow&& weights, int nu_count) {
    const int M = mesh_.M;
    const int r = tab_.r;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < M; ++i) {
      State acc{};
      for (int k = 0; k < r; ++k) {
        const double* wrow = weights(k);
        State inner{};
        for (int nu = 0; nu < nu_count; ++nu) {
          double a = wrow[nu];
          if (a == 0.0) continue;
          axpy(a, lam_flux_[(static_cast<std::size_t>(nu) * r + k) * M + i], inner);
        }
        axpy(dt_pow_[k], inner, acc);
      }
      face_flux_[i] = acc;
    }
  }

  Mesh1D mesh_;
  MdrkTableau tab_;
  Flux flux_;
  int p_;
  StencilTables tables_;
  std::vector<CatWorkspace<Flux>> workspaces_;
  std::vector<std::vector<State>> stage_ext_;
  std::vector<State> lam_flux_;
  std::vector<State> face_flux_;
  std::vector<double> dt_pow_;
};

}  // namespace mdrk
