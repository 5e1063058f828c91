#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace secprec {

using cd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double kLn2 = 0.6931471805599453094;
inline constexpr double kPi = 3.1415926535897932385;

// Bad arguments / violated preconditions.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical breakdown (non-finite values, indefinite matrices, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cholesky/LLT failure on a block that should be positive definite.
class DecompositionError : public NumericalError {
 public:
  DecompositionError(const std::string& what, int block_index)
      : NumericalError(what), block_index(block_index) {}
  int block_index;
};

// Malformed experiment spec / CLI configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A solver could not produce a design for an otherwise valid input.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) {
  if (watt <= 0.0) throw ParameterError("watt_to_dbm: power must be positive");
  return 10.0 * std::log10(watt) + 30.0;
}
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Emits `warning: <msg>` on stderr, once per distinct message per process.
void warn_once(const std::string& msg);

}  // namespace secprec
