#pragma once

// Model parameters, ladder conventions and the error hierarchy shared by
// every module of the library.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dirosc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidTruncation : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonSymmetricInput : public Error {
 public:
  using Error::Error;
};

/// The Ferrari/Cardano route produced a resolvent root with a non-negligible
/// imaginary part, or a vanishing radical. Callers fall back to Jacobi.
class DegenerateRadical : public Error {
 public:
  using Error::Error;
};

/// A closed form produced a value its derivation rules out (e.g. a negative
/// argument under an even root). Signals a transcription bug.
class FormulaViolation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Normalization of the oscillator annihilator: a|n> = scale * sqrt(n) |n-1>.
struct LadderConvention {
  double scale = 1.0;

  static LadderConvention unit() { return {1.0}; }
  static LadderConvention doubled() { return {std::numbers::sqrt2}; }

  bool operator==(const LadderConvention&) const = default;
};

/// Couplings of the extended Dirac oscillator in units m*omega = hbar = c = 1.
struct ModelParams {
  int dimension = 1;
  double m = 1.0;
  double A = 0.0;
  double B = 0.0;
  double alpha = 1.0;
  double gamma = 0.0;
  LadderConvention convention{};

  /// Defaults per dimension: scale 1 in one dimension, sqrt(2) in two and three.
  static ModelParams for_dimension(int d) {
    ModelParams p;
    p.dimension = d;
    p.convention = d == 1 ? LadderConvention::unit() : LadderConvention::doubled();
    return p;
  }

  void validate() const {
    if (dimension < 1 || dimension > 3) {
      throw InvalidParameter("dimension must be 1, 2 or 3 (got " + std::to_string(dimension) + ")");
    }
    if (!(convention.scale > 0.0) || !std::isfinite(convention.scale)) {
      throw InvalidParameter("ladder scale must be a positive finite number");
    }
    for (double v : {m, A, B, alpha, gamma}) {
      if (!std::isfinite(v)) throw InvalidParameter("model parameters must be finite");
    }
  }

  bool operator==(const ModelParams&) const = default;
};

inline void require_dimension(const ModelParams& p, int d, const char* where) {
  if (p.dimension != d) {
    throw DimensionMismatch(std::string(where) + ": requires dimension " + std::to_string(d) +
                           ", got " + std::to_string(p.dimension));
  }
}

}  // namespace dirosc
