// Continuous conventional powers A^alpha = sum_i lambda_i^alpha P_i, the
// per-entry exponential polynomials behind them, and Hadamard powers.
#pragma once

#include "gdnce/exppoly.hpp"
#include "gdnce/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace gdnce {

/// Entry (j,k) is sum_i (P_i)_jk lambda_i^alpha.
class EntryPolyMatrix {
 public:
  EntryPolyMatrix() = default;

  template <class Scalar>
  explicit EntryPolyMatrix(const SpectralData<Scalar>& sd) : n_(static_cast<int>(sd.n())) {
    if (n_ < 1) throw Error(ErrorCode::InvalidArgument, "empty spectral data");
    noise_floor_ = sd.coefficient_noise_floor();
    const auto lambdas = sd.lambdas_double();
    lambdas_ = lambdas;
    for (const auto& l : lambdas) {
      if (l < 0.0) throw Error(ErrorCode::NegativeEigenvalue, "entry polynomials need lambda >= 0");
    }
    polys_.reserve(static_cast<std::size_t>(n_) * n_);
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        std::vector<ExpTerm> terms;
        for (std::size_t i = 0; i < lambdas.size(); ++i)
          terms.push_back({to_double(sd.projectors[i](j, k)), lambdas[i]});
        polys_.push_back(ExpPoly::with_absolute_tol(std::move(terms), noise_floor_));
      }
  }

  int n() const noexcept { return n_; }
  double noise_floor() const noexcept { return noise_floor_; }
  /// Bases of every entry polynomial before coefficient dropping.
  const std::vector<double>& lambdas() const noexcept { return lambdas_; }

  /// Ratio of the coefficient uncertainty, noise_floor * sum lambda^alpha over
  /// the eigenvalues flagged in `support`, to sum |a_i| lambda_i^alpha over
  /// the kept terms. Infinite when the entry polynomial is empty but some
  /// supported eigenvalue could still contribute.
  double uncertainty_ratio(int j, int k, double alpha, const std::vector<bool>& support) const {
    auto logsumexp = [](const std::vector<double>& xs) {
      if (xs.empty()) return -std::numeric_limits<double>::infinity();
      const double m = *std::max_element(xs.begin(), xs.end());
      double acc = 0.0;
      for (double x : xs) acc += std::exp(x - m);
      return m + std::log(acc);
    };
    std::vector<double> u, s;
    for (std::size_t i = 0; i < lambdas_.size(); ++i)
      if (support[i] && lambdas_[i] > 0.0) u.push_back(alpha * std::log(lambdas_[i]));
    for (const auto& t : (*this)(j, k).positive_terms())
      s.push_back(std::log(std::abs(t.coeff)) + alpha * std::log(t.base));
    if (u.empty()) return 0.0;
    if (s.empty()) return std::numeric_limits<double>::infinity();
    return std::exp(std::log(noise_floor_) + logsumexp(u) - logsumexp(s));
  }
  const ExpPoly& operator()(int j, int k) const {
    return polys_[static_cast<std::size_t>(j) * n_ + k];
  }

  /// A^alpha assembled from the entry polynomials (double evaluation).
  RealMatrix evaluate_all(double alpha) const {
    RealMatrix m(n_, n_);
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) m(j, k) = evaluate((*this)(j, k), alpha);
    return m;
  }

 private:
  int n_ = 0;
  double noise_floor_ = 0.0;
  std::vector<double> lambdas_;
  std::vector<ExpPoly> polys_;
};

/// sum_i lambda_i^alpha P_i computed in the working precision.
template <class Scalar>
RealMatrix power(const SpectralData<Scalar>& sd, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "power needs alpha > 0");
  const Eigen::Index n = sd.n();
  MatrixOf<Scalar> acc = MatrixOf<Scalar>::Zero(n, n);
  const Scalar a(alpha);
  for (std::size_t i = 0; i < sd.lambdas.size(); ++i) {
    const Scalar& l = sd.lambdas[i];
    if (l < 0) throw Error(ErrorCode::NegativeEigenvalue, "power needs nonnegative eigenvalues");
    if (l == 0) continue;
    using std::pow;
    acc += pow(l, a) * sd.projectors[i];
  }
  return acc.template cast<double>();
}

/// Entrywise a_ij^alpha with 0^alpha = 0.
inline RealMatrix hadamard_power(const RealMatrix& a, double alpha) {
  require_valid(a);
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "hadamard_power needs alpha > 0");
  if (a.minCoeff() < 0.0) throw Error(ErrorCode::NegativeEntry, "hadamard_power needs a >= 0");
  return a.unaryExpr([alpha](double v) { return v == 0.0 ? 0.0 : std::pow(v, alpha); });
}

struct HadamardSpectrum {
  double alpha = 0.0;
  std::vector<double> eigenvalues;  // real parts, descending
  double max_imag_abs = 0.0;
};

/// Eigenvalues of A^(alpha) for each alpha, solved in the working precision
/// so small eigenvalues keep their relative accuracy.
template <class Scalar = HighPrecision>
std::vector<HadamardSpectrum> hadamard_spectrum_trace(const RealMatrix& a,
                                                      const std::vector<double>& alphas) {
  require_valid(a);
  if (a.minCoeff() < 0.0) throw Error(ErrorCode::NegativeEntry, "hadamard powers need a >= 0");
  std::vector<HadamardSpectrum> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be > 0");
    MatrixOf<Scalar> h(a.rows(), a.cols());
    const Scalar e(alpha);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        using std::pow;
        h(i, j) = a(i, j) == 0.0 ? Scalar(0) : Scalar(pow(Scalar(a(i, j)), e));
      }
    Eigen::EigenSolver<MatrixOf<Scalar>> solver(h, false);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::NumericalFailure, "eigensolver did not converge");
    }
    HadamardSpectrum hs;
    hs.alpha = alpha;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      using std::abs;
      hs.eigenvalues.push_back(to_double(solver.eigenvalues()(i).real()));
      hs.max_imag_abs = std::max(hs.max_imag_abs, to_double(abs(solver.eigenvalues()(i).imag())));
    }
    std::sort(hs.eigenvalues.begin(), hs.eigenvalues.end(), std::greater<>());
    out.push_back(std::move(hs));
  }
  return out;
}

/// Formats a double with 17 significant digits.
inline std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// CSV with header `alpha,i,j,value`; i and j are 1-based. Samples
/// lo, lo+step, ... up to hi inclusive (within step/1e6).
inline std::string trajectory(const EntryPolyMatrix& epm, const std::vector<std::pair<int, int>>& entries,
                              Window window, double step) {
  if (!(window.lo > 0.0) || !(window.hi >= window.lo) || !(step > 0.0)) {
    throw Error(ErrorCode::WindowInvalid, "trajectory needs 0 < lo <= hi and step > 0");
  }
  for (const auto& [i, j] : entries) {
    if (i < 0 || j < 0 || i >= epm.n() || j >= epm.n()) {
      throw Error(ErrorCode::InvalidArgument, "entry index out of range");
    }
  }
  std::string csv = "alpha,i,j,value\n";
  const auto count = static_cast<long>(std::floor((window.hi - window.lo) / step + 1e-6));
  for (long s = 0; s <= count; ++s) {
    const double alpha = window.lo + step * static_cast<double>(s);
    for (const auto& [i, j] : entries) {
      csv += format17(alpha) + ',' + std::to_string(i + 1) + ',' + std::to_string(j + 1) + ',' +
             format17(evaluate(epm(i, j), alpha)) + '\n';
    }
  }
  return csv;
}

}  // namespace gdnce
