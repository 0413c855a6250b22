// Named example matrices, the odd-order bidiagonal-plus-corner family whose
// (n,n) entry goes negative on (n-2, n-1), and the Hadamard-power example
// without a critical exponent.
#pragma once

#include "gdnce/ce_estimator.hpp"
#include "gdnce/pattern.hpp"
#include "gdnce/powers.hpp"

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace gdnce {

enum class PaperMatrix { Ce4, Ce5, Ce6, Mip4, Mip5, Mip6, Hadamard3 };

inline constexpr std::array<std::string_view, 7> kPaperMatrixNames = {
    "ce4", "ce5", "ce6", "mip4", "mip5", "mip6", "hadamard3"};

inline PaperMatrix paper_matrix_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kPaperMatrixNames.size(); ++i)
    if (kPaperMatrixNames[i] == name) return static_cast<PaperMatrix>(i);
  throw Error(ErrorCode::UnknownName, "unknown paper matrix '" + std::string(name) + "'");
}

inline RealMatrix paper_matrix(PaperMatrix name) {
  switch (name) {
    case PaperMatrix::Ce4:
      return from_rows({{1, 7, 0, 0}, {0, 17000, 8500, 0}, {0, 0, 24000, 1600}, {20, 0, 0, 5}});
    case PaperMatrix::Ce5:
      return from_rows({{10, 70, 0, 0, 0},
                        {0, 5, 90, 0, 0},
                        {0, 0, 80000, 15000, 0},
                        {0, 0, 0, 120000, 30},
                        {150, 0, 0, 0, 0}});
    case PaperMatrix::Ce6:
      return from_rows({{156, 1605, 0, 0, 0, 0},
                        {0, 375, 7932, 0, 0, 0},
                        {0, 0, 805, 7840, 0, 0},
                        {0, 0, 0, 13803330, 224210, 0},
                        {0, 0, 0, 0, 9373900, 18590},
                        {105720, 0, 0, 0, 0, 25200}});
    case PaperMatrix::Mip4:
      return from_rows({{0, 0, 2, 0}, {0, 68, 56, 21}, {0, 0, 0, 16}, {14, 72, 0, 168}});
    case PaperMatrix::Mip5:
      return from_rows({{1800, 405, 0, 0, 0},
                        {0, 916, 794, 0, 0},
                        {447, 0, 0, 7, 0},
                        {0, 300, 0, 0, 15},
                        {0, 0, 72, 0, 0}});
    case PaperMatrix::Mip6:
      return from_rows({{2439, 1020, 0, 0, 0, 0},
                        {0, 1917, 668, 0, 0, 0},
                        {509, 0, 890, 213, 0, 0},
                        {0, 2746, 0, 0, 158, 0},
                        {0, 0, 270, 0, 0, 2},
                        {0, 0, 0, 206, 0, 0}});
    case PaperMatrix::Hadamard3:
      return from_rows({{2, 1, 1}, {1, 1, 1}, {1, 5, 2}});
  }
  throw Error(ErrorCode::UnknownName, "unknown paper matrix");
}

inline RealMatrix paper_matrix(std::string_view name) {
  return paper_matrix(paper_matrix_from_name(name));
}

// ---------------------------------------------------------------------------
// Bidiagonal-plus-corner family
// ---------------------------------------------------------------------------

struct Prop44Params {
  int n = 3;
  std::vector<double> d;  // d_1 > ... > d_{n-1} > 0; d_n = 0 implied
  double eps = 0.0;

  /// Throws InvalidArgument unless n is odd >= 3, d is strictly decreasing
  /// and positive, and 0 < eps < min gap / 2 (gaps include d_{n-1} - 0).
  void check() const {
    if (n < 3 || n % 2 == 0) throw Error(ErrorCode::InvalidArgument, "n must be odd and >= 3");
    if (static_cast<int>(d.size()) != n - 1) {
      throw Error(ErrorCode::InvalidArgument, "need n-1 diagonal values");
    }
    double min_gap = d.back();
    for (int i = 0; i + 1 < n - 1; ++i) min_gap = std::min(min_gap, d[i] - d[i + 1]);
    if (!(d.back() > 0.0) || !(min_gap > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "d must be strictly decreasing and positive");
    }
    if (!(eps > 0.0) || !(eps < 0.5 * min_gap)) {
      throw Error(ErrorCode::InvalidArgument, "eps must lie in (0, min gap / 2)");
    }
  }
};

/// d_i = (n - i) * s with s uniform in [1, 10]; eps = 0.4 * s.
template <class Rng>
Prop44Params random_prop44_params(int n, Rng& rng) {
  std::uniform_real_distribution<double> scale(1.0, 10.0);
  const double s = scale(rng);
  Prop44Params p;
  p.n = n;
  for (int i = 1; i < n; ++i) p.d.push_back((n - i) * s);
  p.eps = 0.4 * s;
  return p;
}

struct Prop44Verification {
  bool positive_spectrum = false;
  double det = 0.0;
  double det_expected = 0.0;
  bool det_ok = false;
  bool zero_corner_powers = false;  // (A^k)_nn == 0 for k < n
  bool corner_negative = false;     // (n,n) negativity meets (n-2, n-1)
  std::vector<std::pair<double, double>> corner_intervals;

  bool ok() const { return positive_spectrum && det_ok && zero_corner_powers && corner_negative; }
  std::string first_failure() const {
    if (!positive_spectrum) return "positive spectrum";
    if (!det_ok) return "det = eps^n";
    if (!zero_corner_powers) return "(A^k)_nn = 0 for k < n";
    if (!corner_negative) return "(A^alpha)_nn < 0 on (n-2, n-1)";
    return "";
  }
};

inline RealMatrix prop44_matrix(const Prop44Params& p) {
  p.check();
  RealMatrix a = RealMatrix::Zero(p.n, p.n);
  for (int i = 0; i + 1 < p.n; ++i) {
    a(i, i) = p.d[static_cast<std::size_t>(i)];
    a(i, i + 1) = p.eps;
  }
  a(p.n - 1, 0) = p.eps;
  return a;
}

inline Prop44Verification verify_prop44(const RealMatrix& a, const Prop44Params& p,
                                        const ToleranceConfig& tol = {}) {
  Prop44Verification v;
  const int n = p.n;
  auto analysis = analyze_gdn(a, tol);
  v.positive_spectrum = analysis.report.is_gdn && analysis.report.eigenvalues.back() > 0.0;

  v.det = to_double(a.template cast<HighPrecision>().determinant());
  v.det_expected = std::pow(p.eps, n);
  v.det_ok = std::abs(v.det - v.det_expected) <= 1e-8 * v.det_expected;

  v.zero_corner_powers = true;
  RealMatrix pw = a;
  for (int k = 1; k < n; ++k) {
    if (pw(n - 1, n - 1) != 0.0) v.zero_corner_powers = false;
    pw = pw * a;
  }

  if (analysis.spectral && v.positive_spectrum) {
    const EntryPolyMatrix epm(*analysis.spectral);
    const auto neg = negativity_intervals(epm(n - 1, n - 1), ce_window(n),
                                          IsolationOptions{1e-6, tol.touch_tol});
    for (const auto& iv : neg.intervals) {
      v.corner_intervals.emplace_back(iv.lo(), iv.hi());
      if (iv.lo() < n - 1 && iv.hi() > n - 2) v.corner_negative = true;
    }
  }
  return v;
}

/// Builds and verifies; throws VerificationFailed naming the failed clause.
inline RealMatrix build_prop44(const Prop44Params& p, const ToleranceConfig& tol = {}) {
  RealMatrix a = prop44_matrix(p);
  const auto v = verify_prop44(a, p, tol);
  if (!v.ok()) throw Error(ErrorCode::VerificationFailed, "failed clause: " + v.first_failure());
  return a;
}

// ---------------------------------------------------------------------------
// Hadamard powers of hadamard3
// ---------------------------------------------------------------------------

/// The printed hadamard3 has a_22 = 1, which gives it the eigenvalue -0.6458
/// and a trace 2^(alpha+1) + 1 that the closed forms below cannot match. With
/// a_22 = 2 the matrix is GDN (spectrum 5, 1, 0) and the closed forms are exact.
inline RealMatrix hadamard3_consistent() { return from_rows({{2, 1, 1}, {1, 2, 1}, {1, 5, 2}}); }

/// Closed-form spectrum of hadamard3_consistent()^(alpha), descending.
inline std::vector<double> hadamard3_closed_form(double alpha) {
  using std::pow;
  using std::sqrt;
  const HighPrecision a(alpha);
  const HighPrecision two = pow(HighPrecision(2), a);
  const HighPrecision root = sqrt(pow(HighPrecision(5), a) + HighPrecision(1.25));
  std::vector<double> out = {to_double(two - 1), to_double(two + HighPrecision(0.5) + root),
                             to_double(two + HighPrecision(0.5) - root)};
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

struct HadamardDemoReport {
  std::vector<HadamardSpectrum> samples;
  double max_min_eigenvalue = -std::numeric_limits<double>::infinity();  // max over samples of min eig
  double max_relative_error = 0.0;
  bool all_negative = true;
  bool closed_form_match = true;

  bool ok() const { return all_negative && closed_form_match; }
};

/// Samples alpha = 1 + k (alpha_max - 1)/count, k = 1..count.
inline HadamardDemoReport hadamard_no_ce_demo(double alpha_max, int count = 1000) {
  if (!(alpha_max > 1.0) || count < 1) {
    throw Error(ErrorCode::InvalidArgument, "need alpha_max > 1 and count >= 1");
  }
  std::vector<double> alphas;
  for (int k = 1; k <= count; ++k) alphas.push_back(1.0 + k * (alpha_max - 1.0) / count);
  HadamardDemoReport r;
  r.samples = hadamard_spectrum_trace(hadamard3_consistent(), alphas);
  for (const auto& s : r.samples) {
    const double lowest = s.eigenvalues.back();
    r.max_min_eigenvalue = std::max(r.max_min_eigenvalue, lowest);
    if (!(lowest < 0.0)) r.all_negative = false;
    const auto closed = hadamard3_closed_form(s.alpha);
    for (std::size_t i = 0; i < closed.size(); ++i) {
      const double err = std::abs(s.eigenvalues[i] - closed[i]) / std::abs(closed[i]);
      r.max_relative_error = std::max(r.max_relative_error, err);
    }
  }
  r.closed_form_match = r.max_relative_error <= 1e-8;
  return r;
}

}  // namespace gdnce
