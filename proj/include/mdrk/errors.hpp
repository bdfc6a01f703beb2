#pragma once

#include <stdexcept>
#include <string>

namespace mdrk {

// Solution state became non-finite (or inadmissible) during time stepping.
// Carries the step index and the last time level that was still valid.
class DivergedError : public std::runtime_error {
 public:
  DivergedError(std::string what, long step, double last_valid_time)
      : std::runtime_error(std::move(what)),
        step_(step),
        last_valid_time_(last_valid_time) {}

  long step() const { return step_; }
  double last_valid_time() const { return last_valid_time_; }

 private:
  long step_;
  double last_valid_time_;
};

// A physically inadmissible state was handed to a flux model
// (e.g. nonpositive density or pressure for the Euler equations).
class AdmissibilityError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The wave speed vanished everywhere; no CFL timestep can be formed.
class DegenerateProblemError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bisection bracket could not be established.
class BracketError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Newton iteration and its bisection fallback both failed.
class RootFindError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal consistency relation that must hold by construction failed.
class InternalError : public std::logic_error {
  using std::logic_error::logic_error;
};

// File could not be opened or written.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mdrk
