#ifndef CNPLAB_TYPES_HPP
#define CNPLAB_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cnplab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Failure categories shared by every module. The C API maps them 1:1 onto
/// status codes, so the order here is part of the ABI.
enum class ErrorCode {
  InvalidArgument = 1,
  NonPositive,
  IllConditioned,
  ZeroKernelValue,
  IdentityViolated,
  GridTooCoarse,
  RankDeficient,
  NotAchieved,
  DegreeCap,
  Config,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

/// Numerical thresholds. Defaults are the project-wide ones; experiment
/// configs can override any of them.
struct Tolerances {
  double psd = 1e-10;        // relative to the largest eigenvalue of the reference
  double identity = 1e-10;   // absolute, on O(1) identities
  double cross = 1e-8;       // relative Frobenius, cross-method agreement
  double cond_cap = 1e12;    // kernel matrices above this are IllConditioned
};

/// Outcome of a semidefiniteness test: the smallest eigenvalue, the
/// threshold it was held to, and the eigenvector that realises it.
struct PsdVerdict {
  bool psd = false;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;
  Vector witness;
};

/// Symmetrize in place: M <- (M + M^H) / 2.
inline void hermitize(Matrix& m) {
  Matrix t = m.adjoint();
  m = (m + t) * 0.5;
}

/// PSD test M >= -tau * scale. scale <= 0 falls back to the largest
/// |eigenvalue| of M itself.
PsdVerdict psd_test(const Matrix& m, double tau, double scale = -1.0);

double relative_frobenius(const Matrix& a, const Matrix& b);

}  // namespace cnplab

#endif  // CNPLAB_TYPES_HPP
