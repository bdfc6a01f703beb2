#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdrk/exact.hpp"
#include "mdrk/flux.hpp"

namespace mdrk {

// The five periodic test setups driven by the CLI and the convergence
// harness. Scalar problems carry a characteristics-based exact solution;
// the Euler density wave has a closed form; the Euler sine system is
// measured against a fine self-reference.

enum class ReferenceKind { characteristics, advected_profile, fine_self_reference };

struct ScalarProblem {
  std::string name;
  std::string flux_name;  // "burgers" or "buckley-leverett"
  double xa = 0.0, xb = 1.0;
  double t_end = 0.0;
  ScalarProfile profile;
  ReferenceKind reference = ReferenceKind::characteristics;

  double exact(double x, double t) const {
    if (flux_name == "burgers") return burgers_characteristics(x, t, profile);
    return scalar_characteristics(
        x, t, profile, [](double w) { return BuckleyLeverettFlux::dflux(w); },
        [](double w) { return BuckleyLeverettFlux::d2flux(w); }, xa, xb);
  }
};

struct EulerProblem {
  std::string name;
  double xa = 0.0, xb = 1.0;
  double t_end = 0.0;
  double gamma = 1.4;
  std::function<StateVec<3>(double)> ic;
  ReferenceKind reference = ReferenceKind::fine_self_reference;
  std::function<StateVec<3>(double, double)> exact;  // set for advected_profile
};

inline ScalarProblem burgers_cosine_problem() {
  using std::numbers::pi;
  ScalarProblem prob;
  prob.name = "burgers-cosine";
  prob.flux_name = "burgers";
  prob.xa = 0.0;
  prob.xb = 2.0;
  prob.t_end = 0.8;
  prob.profile = make_profile([](double x) { return 0.25 * std::cos(pi * x); },
                              [](double x) { return -0.25 * pi * std::sin(pi * x); },
                              prob.xa, prob.xb);
  return prob;
}

inline ScalarProblem burgers_expcossin_problem() {
  using std::numbers::pi;
  ScalarProblem prob;
  prob.name = "burgers-expcossin";
  prob.flux_name = "burgers";
  prob.xa = 0.0;
  prob.xb = 2.0;
  prob.t_end = 0.3;
  auto val = [](double x) { return 0.25 * std::exp(std::cos(pi * x) + std::sin(pi * x)); };
  prob.profile = make_profile(
      val,
      [val](double x) { return val(x) * pi * (std::cos(pi * x) - std::sin(pi * x)); },
      prob.xa, prob.xb);
  return prob;
}

inline ScalarProblem buckley_downpulse_problem() {
  using std::numbers::pi;
  ScalarProblem prob;
  prob.name = "buckley-downpulse";
  prob.flux_name = "buckley-leverett";
  prob.xa = -1.0;
  prob.xb = 1.0;
  prob.t_end = 0.1;
  auto c = [](double x) { return std::cos(0.5 * pi * x); };
  prob.profile = make_profile(
      [c](double x) { return 1.0 - 0.75 * c(x) * c(x); },
      [c](double x) { return 0.75 * pi * c(x) * std::sin(0.5 * pi * x); }, prob.xa, prob.xb);
  return prob;
}

inline EulerProblem euler_sinewave_problem() {
  using std::numbers::pi;
  EulerProblem prob;
  prob.name = "euler-sinewave";
  prob.xa = 0.0;
  prob.xb = 4.0;
  prob.t_end = 0.8;
  prob.reference = ReferenceKind::advected_profile;
  double gamma = prob.gamma;
  prob.ic = [gamma](double x) { return euler_advected_density(x, 0.0, gamma); };
  prob.exact = [gamma](double x, double t) { return euler_advected_density(x, t, gamma); };
  return prob;
}

inline EulerProblem euler_sine_system_problem() {
  using std::numbers::pi;
  EulerProblem prob;
  prob.name = "euler-sine-system";
  prob.xa = 0.0;
  prob.xb = 2.0;
  prob.t_end = 0.2;
  prob.reference = ReferenceKind::fine_self_reference;
  prob.ic = [](double x) {
    double s = 0.5 * std::sin(pi * x);
    return StateVec<3>{0.75 + s, 0.25 + s, 0.75 + s};
  };
  return prob;
}

inline const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {
      "burgers-cosine", "burgers-expcossin", "buckley-downpulse",
      "euler-sinewave", "euler-sine-system"};
  return names;
}

inline bool is_euler_problem(const std::string& name) {
  return name == "euler-sinewave" || name == "euler-sine-system";
}

inline ScalarProblem get_scalar_problem(const std::string& name) {
  if (name == "burgers-cosine") return burgers_cosine_problem();
  if (name == "burgers-expcossin") return burgers_expcossin_problem();
  if (name == "buckley-downpulse") return buckley_downpulse_problem();
  std::string valid;
  for (const auto& n : problem_names()) valid += n + " ";
  throw std::invalid_argument("unknown scalar problem '" + name +
                              "'; valid problems: " + valid);
}

inline EulerProblem get_euler_problem(const std::string& name) {
  if (name == "euler-sinewave") return euler_sinewave_problem();
  if (name == "euler-sine-system") return euler_sine_system_problem();
  std::string valid;
  for (const auto& n : problem_names()) valid += n + " ";
  throw std::invalid_argument("unknown euler problem '" + name +
                              "'; valid problems: " + valid);
}

}  // namespace mdrk
