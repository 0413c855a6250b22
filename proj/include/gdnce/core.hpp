// Core types shared by every gdnce module: the matrix currency, tolerance
// configuration, error codes and the working precision used for spectral work.
#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gdnce {

/// Dense n-by-n real matrix. Every module takes and returns this type.
using RealMatrix = Eigen::MatrixXd;

/// 50 significant digits. Entry polynomials of badly graded matrices carry
/// coefficients 30+ orders of magnitude below the largest projector entries
/// and still decide the sign of A^alpha; double cannot resolve them.
using HighPrecision = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<50>, boost::multiprecision::et_off>;

/// Escalation levels for matrices whose dynamic range outruns 50 digits.
using Precision100 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<100>, boost::multiprecision::et_off>;
using Precision200 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<200>, boost::multiprecision::et_off>;

enum class ErrorCode {
  InvalidMatrix,
  NotDiagonalizable,
  ComplexSpectrum,
  NegativeEigenvalue,
  NegativeEntry,
  NumericalFailure,
  WindowInvalid,
  NotGdn,
  IsolationInconclusive,
  NotApplicable,
  PreconditionViolated,
  VerificationFailed,
  UnknownName,
  NoFeasibleCandidate,
  Falsification,
  InvalidArgument,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::ComplexSpectrum: return "ComplexSpectrum";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::WindowInvalid: return "WindowInvalid";
    case ErrorCode::NotGdn: return "NotGdn";
    case ErrorCode::IsolationInconclusive: return "IsolationInconclusive";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::NoFeasibleCandidate: return "NoFeasibleCandidate";
    case ErrorCode::Falsification: return "Falsification";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Numerical tolerances. Relative ones are scaled by max(1, rho(A)) or by the
/// largest entry as noted.
struct ToleranceConfig {
  double entry_tol = 1e-12;      // relative to max |a_ij|
  double eig_tol = 1e-9;         // relative to rho(A)
  double merge_tol = 1e-8;       // relative to max(1, rho(A))
  double imag_tol = 1e-8;        // relative to rho(A)
  double isolation_tol = 1e-6;   // absolute, in alpha
  double touch_tol = 1e-10;      // relative to sum |a_i| lambda_i^alpha
  double cond_limit = 1e12;
  double idempotence_tol = 1e-6;
  double reconstruction_tol = 1e-9;  // relative to max(1, max |a_ij|)

  void check() const {
    for (double v : {entry_tol, eig_tol, merge_tol, imag_tol, isolation_tol,
                     touch_tol, cond_limit, idempotence_tol,
                     reconstruction_tol}) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
      }
    }
  }
};

/// Throws InvalidMatrix unless `a` is square, non-empty and finite.
inline void require_valid(const RealMatrix& a) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    throw Error(ErrorCode::InvalidMatrix, "matrix must be square with n >= 1");
  }
  if (!a.allFinite()) {
    throw Error(ErrorCode::InvalidMatrix, "matrix entries must be finite");
  }
}

inline double max_abs(const RealMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// Infinity norm (max absolute row sum).
inline double inf_norm(const RealMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Builds a matrix from nested row lists, e.g. from_rows({{1, 2}, {3, 4}}).
inline RealMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  RealMatrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorCode::InvalidMatrix, "rows must have length n");
    }
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace gdnce
