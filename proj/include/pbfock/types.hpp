#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pbfock {

using Complex = std::complex<double>;
using Index = Eigen::Index;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

// Dense operator on span{|0>, ..., |D>}.
template <class Scalar = Complex>
using TruncatedOperator = Matrix<Scalar>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct NotCanonical : Error {
  using Error::Error;
};
struct AdmissibilityError : Error {
  using Error::Error;
};
struct TruncationError : Error {
  using Error::Error;
};
struct PairingError : Error {
  using Error::Error;
};
struct NotPositiveDefinite : Error {
  using Error::Error;
};
struct IllConditioned : Error {
  using Error::Error;
};
struct TailError : Error {
  using Error::Error;
};
struct QuadratureError : Error {
  using Error::Error;
};
struct FitError : Error {
  using Error::Error;
};

struct FockDim {
  int levels = 1;
  int guard = 0;

  FockDim() = default;
  FockDim(int levels_, int guard_) : levels(levels_), guard(guard_) {
    if (levels < 1) throw ConfigError("FockDim: levels must be >= 1");
    if (guard < 0 || guard >= levels)
      throw ConfigError("FockDim: guard must satisfy 0 <= g < D");
  }

  Index size() const { return levels + 1; }
  // Rows 0..D-g.
  Index guarded() const { return levels - guard + 1; }
};

}  // namespace pbfock
