#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lqgame {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or vector shapes do not agree with each other or with the horizon.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A weight matrix violates its symmetry / (semi)definiteness requirement.
class IndefiniteWeight : public Error {
 public:
  using Error::Error;
};

/// Out-of-range scalar parameters (persistence, scale, grid shape, counts).
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// The per-stage coupled gain system is numerically singular.
class SingularStageSystem : public Error {
 public:
  SingularStageSystem(std::size_t stage, double rcond)
      : Error("coupled stage system singular at stage " +
              std::to_string(stage) + " (rcond=" + std::to_string(rcond) +
              ")"),
        stage_(stage),
        rcond_(rcond) {}

  std::size_t stage() const { return stage_; }
  double rcond() const { return rcond_; }

 private:
  std::size_t stage_;
  double rcond_;
};

/// Failure to read an input or write an output file.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An error raised while evaluating one (rho, sigma0) cell of a sweep.
class SweepCellError : public Error {
 public:
  SweepCellError(double rho, double sigma0, const std::string& what)
      : Error("sweep cell (rho=" + std::to_string(rho) +
              ", sigma0=" + std::to_string(sigma0) + "): " + what),
        rho_(rho),
        sigma0_(sigma0) {}

  double rho() const { return rho_; }
  double sigma0() const { return sigma0_; }

 private:
  double rho_;
  double sigma0_;
};

}  // namespace lqgame
