#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "mdrk/solver.hpp"
#include "mdrk/stencil.hpp"
#include "mdrk/tableau.hpp"

namespace mdrk::testutil {

/// Periodic random smooth field: a handful of low Fourier modes with
/// O(amplitude) coefficients.
inline std::vector<StateVec<1>> random_smooth_field(int M, double length, unsigned seed,
                                                    double amplitude = 0.1) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> coef(0.0, amplitude);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  struct Mode {
    double c, ph;
    int k;
  };
  std::vector<Mode> modes;
  for (int k = 1; k <= 5; ++k) modes.push_back({coef(rng), phase(rng), k});
  std::vector<StateVec<1>> out(M);
  for (int i = 0; i < M; ++i) {
    double x = length * i / M;
    double v = 0.0;
    for (const auto& m : modes)
      v += m.c * std::cos(2.0 * std::numbers::pi * m.k * x / length + m.ph);
    out[i] = {v};
  }
  return out;
}

/// Direct multiderivative Lax-Wendroff stepper for f(w) = alpha*w, built
/// straight from the centered-difference tables. Independent of the flux
/// recursion path; used as the linear-reduction oracle.
class MdrkLwReference {
 public:
  MdrkLwReference(const MdrkTableau& tab, int p, double alpha, int M, double dx)
      : tab_(tab), p_(p), alpha_(alpha), M_(M), dx_(dx), tables_(make_stencil_tables(p)) {}

  std::vector<double> step(const std::vector<double>& w, double dt) const {
    std::vector<std::vector<double>> stages(tab_.s);
    stages[0] = w;
    // stage_row >= 0 selects the a-row of that (zero-based) stage,
    // stage_row < 0 the b-weighted update over all stages
    for (int l = 1; l < tab_.s; ++l) stages[l] = combine(w, stages, dt, l);
    return combine(w, stages, dt, -1);
  }

 private:
  // P^(k) v at node i: (1/dx^k) sum_j delta^k_j v_{i+j}
  double apply_pk(const std::vector<double>& v, int k, int i) const {
    double acc = 0.0;
    for (int j = -p_; j <= p_; ++j)
      acc += tables_.delta[k][j + p_] * v[(i + j + M_) % M_];
    return acc / std::pow(dx_, k);
  }

  std::vector<double> combine(const std::vector<double>& w,
                              const std::vector<std::vector<double>>& stages, double dt,
                              int stage_row) const {
    const int count = stage_row < 0 ? tab_.s : stage_row;
    std::vector<double> out(M_);
    for (int i = 0; i < M_; ++i) {
      double acc = w[i];
      double factor = 1.0;
      for (int k = 1; k <= tab_.r; ++k) {
        factor *= -alpha_ * dt;
        double sum = 0.0;
        for (int nu = 0; nu < count; ++nu) {
          double wgt = stage_row < 0 ? tab_.b[k - 1][nu] : tab_.a[k - 1][stage_row][nu];
          if (wgt != 0.0) sum += wgt * apply_pk(stages[nu], k, i);
        }
        acc += factor * sum;
      }
      out[i] = acc;
    }
    return out;
  }

  MdrkTableau tab_;
  int p_;
  double alpha_;
  int M_;
  double dx_;
  StencilTables tables_;
};

}  // namespace mdrk::testutil
