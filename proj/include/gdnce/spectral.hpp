// Eigendecomposition, merged spectral projectors and GDN validation.
//
// A diagonalizable A with real spectrum is written as A = sum_i lambda_i P_i,
// where P_i = x_i y_i sums the rank-one terms of every eigenvalue in a merge
// cluster. The projectors are the coefficient source for entry polynomials.
#pragma once

#include "gdnce/core.hpp"
#include "gdnce/pattern.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace gdnce {

template <class Scalar>
using MatrixOf = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
double to_double(const Scalar& x) {
  return static_cast<double>(x);
}

template <class Scalar = HighPrecision>
struct SpectralData {
  std::vector<Scalar> lambdas;  // strictly descending
  std::vector<MatrixOf<Scalar>> projectors;
  double cond_s = 1.0;
  double rho = 0.0;
  std::vector<std::string> warnings;
  std::vector<double> clamped;  // original values of eigenvalues set to 0

  Eigen::Index n() const { return projectors.empty() ? 0 : projectors.front().rows(); }
  std::size_t size() const { return lambdas.size(); }

  std::vector<double> lambdas_double() const {
    std::vector<double> out;
    out.reserve(lambdas.size());
    for (const auto& l : lambdas) out.push_back(to_double(l));
    return out;
  }

  /// Largest absolute projector entry.
  double max_projector_entry() const {
    double m = 0.0;
    for (const auto& p : projectors)
      for (Eigen::Index i = 0; i < p.size(); ++i) {
        using std::abs;
        m = std::max(m, to_double(abs(p.data()[i])));
      }
    return m;
  }

  /// Absolute size below which a projector entry is indistinguishable from
  /// rounding noise of the working precision.
  double coefficient_noise_floor() const {
    const double eps = to_double(std::numeric_limits<Scalar>::epsilon());
    return 1e3 * eps * std::max(1.0, cond_s) * std::max(1.0, max_projector_entry());
  }

  /// Size of an eigenvalue indistinguishable from zero in the working precision.
  double eigenvalue_noise_floor() const {
    const double eps = to_double(std::numeric_limits<Scalar>::epsilon());
    return 1e3 * eps * std::max(1.0, cond_s) * std::max(1.0, rho);
  }

  /// True when a clamped eigenvalue was a genuine (resolvable) negative one.
  bool clamped_beyond_noise() const {
    const double floor = eigenvalue_noise_floor();
    return std::any_of(clamped.begin(), clamped.end(), [&](double v) { return -v > floor; });
  }

  /// sum_i lambda_i P_i, in double.
  RealMatrix reconstruct() const {
    MatrixOf<Scalar> acc = MatrixOf<Scalar>::Zero(n(), n());
    for (std::size_t i = 0; i < lambdas.size(); ++i) acc += lambdas[i] * projectors[i];
    return acc.template cast<double>();
  }
};

namespace detail {

template <class Scalar>
struct Eigensystem {
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> values;
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> vectors;
  std::vector<Scalar> scaling;  // A = D B D^{-1}, B balanced
  double rho = 0.0;
};

/// Parlett-Reinsch balancing with power-of-two factors (exact in binary).
template <class Scalar>
MatrixOf<Scalar> balance(MatrixOf<Scalar> b, std::vector<Scalar>& d) {
  using std::abs;
  const Eigen::Index n = b.rows();
  d.assign(static_cast<std::size_t>(n), Scalar(1));
  bool converged = false;
  for (int sweep = 0; !converged && sweep < 100; ++sweep) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      Scalar c = 0, r = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs(b(j, i));
        r += abs(b(i, j));
      }
      if (c == 0 || r == 0) continue;
      const Scalar s = c + r;
      Scalar f = 1;
      Scalar g = r / 2;
      while (c < g) {
        f *= 2;
        c *= 4;
      }
      g = r * 2;
      while (c > g) {
        f /= 2;
        c /= 4;
      }
      if ((c + r) / f < Scalar(0.95) * s) {
        converged = false;
        d[static_cast<std::size_t>(i)] *= f;
        b.row(i) /= f;
        b.col(i) *= f;
      }
    }
  }
  return b;
}

template <class Scalar>
Eigensystem<Scalar> eigensystem(const RealMatrix& a) {
  require_valid(a);
  Eigensystem<Scalar> sys;
  MatrixOf<Scalar> b = balance<Scalar>(a.template cast<Scalar>(), sys.scaling);
  Eigen::EigenSolver<MatrixOf<Scalar>> solver(b, true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "eigensolver did not converge");
  }
  sys.values = solver.eigenvalues();
  sys.vectors = solver.eigenvectors();
  for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
    using std::abs;
    sys.rho = std::max(sys.rho, to_double(abs(sys.values(i))));
  }
  return sys;
}

}  // namespace detail

/// Merged spectral decomposition of A. Throws NotDiagonalizable,
/// ComplexSpectrum or NumericalFailure.
template <class Scalar = HighPrecision>
SpectralData<Scalar> decompose(const RealMatrix& a, const ToleranceConfig& tol = {}) {
  using std::abs;
  tol.check();
  using Complex = std::complex<Scalar>;
  using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  const auto sys = detail::eigensystem<Scalar>(a);
  const Eigen::Index n = a.rows();
  SpectralData<Scalar> out;
  out.rho = sys.rho;

  const double imag_limit = tol.imag_tol * sys.rho;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (to_double(abs(sys.values(i).imag())) > imag_limit) {
      throw Error(ErrorCode::ComplexSpectrum, "eigenvalue with imaginary part " +
                                                  std::to_string(to_double(sys.values(i).imag())));
    }
  }

  const CMatrix& s = sys.vectors;
  Eigen::PartialPivLU<CMatrix> lu(s);
  const CMatrix s_inv = lu.inverse();
  if (!s_inv.allFinite()) {
    throw Error(ErrorCode::NotDiagonalizable, "eigenvector matrix is singular");
  }
  auto norm1 = [](const CMatrix& m) {
    Scalar best = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Scalar col = 0;
      for (Eigen::Index i = 0; i < m.rows(); ++i) col += abs(m(i, j));
      best = std::max(best, col);
    }
    return best;
  };
  out.cond_s = to_double(norm1(s) * norm1(s_inv));
  if (!(out.cond_s <= tol.cond_limit)) {
    throw Error(ErrorCode::NotDiagonalizable,
                "eigenvector condition " + std::to_string(out.cond_s) + " exceeds limit");
  }

  // Cluster eigenvalues by real part, descending; chains closer than the
  // merge gap collapse into one cluster.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return sys.values(x).real() > sys.values(y).real();
  });
  const Scalar gap = Scalar(tol.merge_tol * std::max(1.0, sys.rho));
  std::vector<std::vector<Eigen::Index>> clusters;
  for (auto idx : order) {
    if (!clusters.empty() &&
        sys.values(clusters.back().back()).real() - sys.values(idx).real() <= gap) {
      clusters.back().push_back(idx);
    } else {
      clusters.push_back({idx});
    }
  }

  for (const auto& cluster : clusters) {
    Scalar lambda = 0;
    CMatrix p = CMatrix::Zero(n, n);
    for (auto idx : cluster) {
      lambda += sys.values(idx).real();
      p += s.col(idx) * s_inv.row(idx);
    }
    lambda /= Scalar(static_cast<double>(cluster.size()));
    MatrixOf<Scalar> real_p = p.real();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        real_p(i, j) *= sys.scaling[static_cast<std::size_t>(i)] /
                        sys.scaling[static_cast<std::size_t>(j)];
    out.lambdas.push_back(lambda);
    out.projectors.push_back(std::move(real_p));
  }

  // Projector algebra: P_i P_j = delta_ij P_i, sum P_i = I, sum lambda_i P_i = A.
  Scalar worst_idem = 0;
  MatrixOf<Scalar> sum = MatrixOf<Scalar>::Zero(n, n);
  for (std::size_t i = 0; i < out.projectors.size(); ++i) {
    sum += out.projectors[i];
    for (std::size_t j = 0; j < out.projectors.size(); ++j) {
      MatrixOf<Scalar> prod = out.projectors[i] * out.projectors[j];
      if (i == j) prod -= out.projectors[i];
      if (prod.size() > 0) worst_idem = std::max(worst_idem, prod.cwiseAbs().maxCoeff());
    }
  }
  if (!(to_double(worst_idem) <= tol.idempotence_tol)) {
    throw Error(ErrorCode::NotDiagonalizable,
                "projector idempotence defect " + std::to_string(to_double(worst_idem)));
  }
  const double scale = std::max(1.0, max_abs(a));
  const double identity_defect =
      to_double((sum - MatrixOf<Scalar>::Identity(n, n)).cwiseAbs().maxCoeff());
  const double recon_defect = max_abs(out.reconstruct() - a);
  if (!(identity_defect <= tol.reconstruction_tol * std::max(1.0, out.cond_s)) ||
      !(recon_defect <= tol.reconstruction_tol * scale)) {
    throw Error(ErrorCode::NotDiagonalizable, "spectral reconstruction failed");
  }

  // Nonnegative-spectrum clamp; numerically negative zeros become exact zeros.
  const Scalar clamp = Scalar(tol.eig_tol * sys.rho);
  for (auto& l : out.lambdas) {
    if (l < 0 && l >= -clamp) {
      out.warnings.push_back("ClampedEigenvalue " + std::to_string(to_double(l)));
      out.clamped.push_back(to_double(l));
      l = 0;
    }
  }
  return out;
}

struct GdnReport {
  bool is_gdn = false;
  double min_entry = 0.0;
  double min_eigenvalue_real = 0.0;
  double max_eigenvalue_imag_abs = 0.0;
  double diag_cond = 0.0;
  bool irreducible = false;
  std::vector<double> eigenvalues;  // merged, descending, after clamping
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
  ToleranceConfig tolerances;
};

/// Validation verdict plus the cleaned matrix and, when it succeeded, the
/// decomposition, so callers do not decompose twice.
template <class Scalar = HighPrecision>
struct GdnAnalysis {
  GdnReport report;
  RealMatrix cleaned;
  std::optional<SpectralData<Scalar>> spectral;
};

template <class Scalar = HighPrecision>
GdnAnalysis<Scalar> analyze_gdn(const RealMatrix& a, const ToleranceConfig& tol = {}) {
  require_valid(a);
  GdnAnalysis<Scalar> out;
  GdnReport& r = out.report;
  r.tolerances = tol;
  out.cleaned = a;
  r.min_entry = a.minCoeff();

  const double entry_floor = -tol.entry_tol * std::max(1.0, max_abs(a));
  if (r.min_entry < entry_floor) {
    r.failures.push_back("NegativeEntry");
  } else if (r.min_entry < 0.0) {
    r.warnings.push_back("ClampedEntry");
    out.cleaned = a.cwiseMax(0.0);
  }
  r.irreducible = is_irreducible(BoolPattern::of(out.cleaned));

  try {
    const auto sys = detail::eigensystem<Scalar>(out.cleaned);
    r.min_eigenvalue_real = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
      r.min_eigenvalue_real = std::min(r.min_eigenvalue_real, to_double(sys.values(i).real()));
      using std::abs;
      r.max_eigenvalue_imag_abs =
          std::max(r.max_eigenvalue_imag_abs, to_double(abs(sys.values(i).imag())));
    }
    auto sd = decompose<Scalar>(out.cleaned, tol);
    r.diag_cond = sd.cond_s;
    r.eigenvalues = sd.lambdas_double();
    r.warnings.insert(r.warnings.end(), sd.warnings.begin(), sd.warnings.end());
    if (sd.lambdas.back() < 0) {
      r.failures.push_back("NegativeEigenvalue");
    }
    out.spectral = std::move(sd);
  } catch (const Error& e) {
    r.failures.push_back(std::string(to_string(e.code())));
  }
  r.is_gdn = r.failures.empty();
  return out;
}

template <class Scalar = HighPrecision>
GdnReport validate_gdn(const RealMatrix& a, const ToleranceConfig& tol = {}) {
  return analyze_gdn<Scalar>(a, tol).report;
}

}  // namespace gdnce
