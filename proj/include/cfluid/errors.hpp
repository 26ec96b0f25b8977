#pragma once

#include <stdexcept>
#include <string>

namespace cfluid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a time integration has to stop early (caustic trip,
/// density-floor violation).  Carries the last time that was still valid.
class SimulationAbort : public Error {
 public:
  SimulationAbort(const std::string& reason, double t_last_good)
      : Error(reason + " (last good time t=" + std::to_string(t_last_good) + ")"),
        reason_(reason),
        t_last_good_(t_last_good) {}

  const std::string& reason() const { return reason_; }
  double t_last_good() const { return t_last_good_; }

 private:
  std::string reason_;
  double t_last_good_;
};

}  // namespace cfluid
