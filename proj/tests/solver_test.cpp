#include "mdrk/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mdrk/convergence.hpp"
#include "mdrk/problems.hpp"
#include "test_util.hpp"

using namespace mdrk;

TEST(ComputeDt, DirectFormula) {
  GridState<1> state;
  state.t = 0.0;
  state.values = {{0.1}, {0.2}, {0.3}};
  EXPECT_DOUBLE_EQ(compute_dt(state, AdvectionFlux{1.0}, 0.5, 0.1, 100.0), 0.05);

  GridState<1> burgers_state;
  burgers_state.t = 0.0;
  burgers_state.values = {{0.25}, {-0.1}, {0.2}};
  EXPECT_DOUBLE_EQ(compute_dt(burgers_state, BurgersFlux{}, 0.5, 0.25, 100.0), 0.5);
}

TEST(ComputeDt, ClipsToFinalTime) {
  GridState<1> state;
  state.t = 0.99;
  state.values = {{1.0}, {1.0}};
  EXPECT_NEAR(compute_dt(state, AdvectionFlux{1.0}, 0.5, 0.1, 1.0), 0.01, 1e-15);
}

TEST(ComputeDt, DegenerateWaveSpeed) {
  GridState<1> state;
  state.t = 0.0;
  state.values = {{0.0}, {0.0}};
  EXPECT_THROW(compute_dt(state, BurgersFlux{}, 0.5, 0.1, 1.0), DegenerateProblemError);
}

TEST(Solver, ConstantStateIsFixedPoint) {
  for (const auto& name : mdrk_scheme_names()) {
    Mesh1D mesh(0.0, 2.0, 32);
    Solver<BurgersFlux> solver(mesh, get_tableau(name), BurgersFlux{});
    auto state = solver.make_initial_state([](double) { return StateVec<1>{0.4}; });
    solver.step(state, 0.01);
    for (const auto& w : state.values) EXPECT_NEAR(w[0], 0.4, 1e-15) << name;
  }
}

TEST(Solver, ConservationPerStep) {
  using std::numbers::pi;
  for (const auto& name : mdrk_scheme_names()) {
    Mesh1D mesh(0.0, 2.0, 64);
    Solver<BurgersFlux> solver(mesh, get_tableau(name), BurgersFlux{});
    auto state = solver.make_initial_state(
        [](double x) { return StateVec<1>{0.25 * std::cos(pi * x)}; });
    double mass0 = 0.0, abs0 = 0.0;
    for (const auto& w : state.values) {
      mass0 += w[0];
      abs0 += std::abs(w[0]);
    }
    for (int step = 0; step < 10; ++step) {
      double dt = compute_dt(state, BurgersFlux{}, 0.5, mesh.dx, 1e9);
      solver.step(state, dt);
      double mass = 0.0;
      for (const auto& w : state.values) mass += w[0];
      EXPECT_LE(std::abs(mass - mass0), 1e-13 * abs0) << name;
    }
  }
}

// one step of the two-derivative Taylor tableau at p = 1 on a linear flux is
// the classical second-order one-step update
TEST(Solver, ClassicalSecondOrderReduction) {
  const int M = 50;
  const double alpha = 1.0, sigma = 0.4;
  Mesh1D mesh(0.0, 1.0, M);
  double dt = sigma * mesh.dx / alpha;

  auto data = testutil::random_smooth_field(M, 1.0, 99);
  Solver<AdvectionFlux> solver(mesh, get_tableau("taylor-2"), AdvectionFlux{alpha}, 1);
  GridState<1> state{0.0, data};
  solver.step(state, dt);

  for (int j = 0; j < M; ++j) {
    double wm = data[(j + M - 1) % M][0], w0 = data[j][0], wp = data[(j + 1) % M][0];
    double expected = w0 - 0.5 * sigma * (wp - wm) + 0.5 * sigma * sigma * (wp - 2 * w0 + wm);
    EXPECT_NEAR(state.values[j][0], expected, 1e-13);
  }
}

// every scheme's step on f(w) = alpha w equals the centered-difference
// multiderivative update applied directly with the delta tables
TEST(Solver, LinearReductionMatchesDirectScheme) {
  const int M = 64;
  const double alpha = 1.0, sigma = 0.5;
  auto data = testutil::random_smooth_field(M, 1.0, 2024);
  std::vector<double> flat(M);
  for (int i = 0; i < M; ++i) flat[i] = data[i][0];

  for (const auto& name : mdrk_scheme_names()) {
    auto tab = get_tableau(name);
    int p = tab.recommended_p;
    Mesh1D mesh(0.0, 1.0, M);
    double dt = sigma * mesh.dx / alpha;

    Solver<AdvectionFlux> solver(mesh, tab, AdvectionFlux{alpha}, p);
    GridState<1> state{0.0, data};
    solver.step(state, dt);

    testutil::MdrkLwReference reference(tab, p, alpha, M, mesh.dx);
    auto expected = reference.step(flat, dt);

    double worst = 0.0;
    for (int i = 0; i < M; ++i)
      worst = std::max(worst, std::abs(state.values[i][0] - expected[i]));
    EXPECT_LE(worst, 1e-12) << name;
  }
}

TEST(Solver, RunReachesFinalTimeExactly) {
  auto prob = burgers_cosine_problem();
  auto result = run_scalar(prob, 32, "mdrk-2-4-2", 0, 0.5, prob.t_end);
  EXPECT_EQ(result.state.t, prob.t_end);
  EXPECT_GT(result.log.steps, 0);
  EXPECT_LE(result.log.min_dt, result.log.max_dt);
  // timestep varies because the wave speed does
  EXPECT_GT(result.log.max_dt / result.log.min_dt, 1.0 + 1e-6);
}

TEST(Solver, ZeroFinalTimeReturnsInitialState) {
  auto prob = burgers_cosine_problem();
  Mesh1D mesh(prob.xa, prob.xb, 16);
  Solver<BurgersFlux> solver(mesh, get_tableau("mdrk-2-3-2"), BurgersFlux{});
  auto state =
      solver.make_initial_state([&](double x) { return StateVec<1>{prob.profile.value(x)}; });
  auto initial = state.values;
  auto result = solver.run(std::move(state), 0.5, 0.0);
  EXPECT_EQ(result.log.steps, 0);
  EXPECT_EQ(result.state.values, initial);
}

TEST(Solver, MeshTooSmallRejected) {
  Mesh1D mesh(0.0, 1.0, 6);
  EXPECT_THROW(Solver<BurgersFlux>(mesh, get_tableau("mdrk-3-7-3"), BurgersFlux{}, 4),
               std::invalid_argument);
}

TEST(Solver, RadiusTooSmallForDerivativesRejected) {
  Mesh1D mesh(0.0, 1.0, 64);
  EXPECT_THROW(Solver<BurgersFlux>(mesh, get_tableau("mdrk-4-6-2"), BurgersFlux{}, 1),
               std::invalid_argument);
}

// advected Euler density profile travels at unit speed
TEST(Solver, EulerAdvectedDensity) {
  auto prob = euler_sinewave_problem();
  auto result = run_euler(prob, 64, "mdrk-2-4-2", 0, 0.5, prob.t_end);
  auto ref = euler_reference(prob, 64, prob.t_end);
  double err = l1_error<3>(result.state.values, ref, (prob.xb - prob.xa) / 64);
  EXPECT_LT(err, 1e-3);
}

TEST(Solver, DivergenceCarriesContext) {
  auto prob = euler_sine_system_problem();
  try {
    run_euler(prob, 16, "mdrk-3-7-3", 4, 0.5, prob.t_end);
    FAIL() << "expected divergence";
  } catch (const DivergedError& e) {
    EXPECT_GE(e.step(), 0);
    EXPECT_GE(e.last_valid_time(), 0.0);
    EXPECT_LT(e.last_valid_time(), prob.t_end);
  }
}
