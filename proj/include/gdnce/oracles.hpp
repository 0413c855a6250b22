// Brute-force cross-checks and random matrix families for the property
// tests and the acceptance run.
#pragma once

#include "gdnce/constructions.hpp"
#include "gdnce/exppoly.hpp"
#include "gdnce/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace gdnce {

struct SampledInterval {
  double lo = 0.0;     // first negative sample
  double hi = 0.0;     // last negative sample
  double depth = 0.0;  // min of value / scale over the run, negative
};

/// Samples p on lo, lo + step, ..., hi and returns the runs of negative
/// samples. Uses a multiplicative recurrence on exp((r_i - r_0) t),
/// re-anchored with exp() every 256 steps.
inline std::vector<SampledInterval> sampled_negativity(const ExpPoly& p, Window w, double step) {
  std::vector<SampledInterval> out;
  const auto terms = p.positive_terms();
  if (terms.empty()) return out;
  const std::size_t m = terms.size();
  std::vector<long double> c(m), r(m), q(m), e(m);
  for (std::size_t i = 0; i < m; ++i) {
    c[i] = terms[i].coeff;
    r[i] = std::log(static_cast<long double>(terms[i].base));
  }
  const long double r0 = *std::max_element(r.begin(), r.end());
  for (std::size_t i = 0; i < m; ++i) q[i] = std::exp((r[i] - r0) * step);

  const long count = static_cast<long>(std::floor((w.hi - w.lo) / step + 1e-9));
  bool in_run = false;
  SampledInterval cur;
  for (long k = 0; k <= count; ++k) {
    const double t = w.lo + k * step;
    if (k % 256 == 0) {
      for (std::size_t i = 0; i < m; ++i) e[i] = std::exp((r[i] - r0) * t);
    } else {
      for (std::size_t i = 0; i < m; ++i) e[i] *= q[i];
    }
    long double v = 0.0L, s = 0.0L;
    for (std::size_t i = 0; i < m; ++i) {
      v += c[i] * e[i];
      s += std::abs(c[i]) * e[i];
    }
    const double rel = static_cast<double>(v / s);
    if (rel < 0.0) {
      if (!in_run) {
        cur = {t, t, rel};
        in_run = true;
      }
      cur.hi = t;
      cur.depth = std::min(cur.depth, rel);
    } else if (in_run) {
      out.push_back(cur);
      in_run = false;
    }
  }
  if (in_run) out.push_back(cur);
  return out;
}

struct OracleComparison {
  int missed = 0;          // deep oracle runs with no overlapping interval
  int unmatched = 0;       // wide intervals the oracle never saw
  double max_endpoint_error = 0.0;
  bool ok(double endpoint_tol) const {
    return missed == 0 && unmatched == 0 && max_endpoint_error <= endpoint_tol;
  }
};

/// Matches estimator intervals against sampled runs. A run only counts as
/// missed when it dips below -touch_tol; an interval narrower than two steps
/// may fall between samples and is not required to match.
inline OracleComparison compare_with_oracle(const std::vector<NegativeInterval>& found,
                                            const std::vector<SampledInterval>& sampled,
                                            double step, double touch_tol) {
  OracleComparison cmp;
  std::vector<bool> used(sampled.size(), false);
  for (const auto& iv : found) {
    const double lo = iv.lo(), hi = iv.hi();
    bool matched = false;
    for (std::size_t k = 0; k < sampled.size(); ++k) {
      const auto& s = sampled[k];
      if (s.hi < lo - step || s.lo > hi + step) continue;
      used[k] = true;
      matched = true;
      // Sample endpoints sit up to one step inside the true interval.
      cmp.max_endpoint_error = std::max(cmp.max_endpoint_error, std::abs(s.lo - lo));
      cmp.max_endpoint_error = std::max(cmp.max_endpoint_error, std::abs(s.hi - hi));
    }
    if (!matched && hi - lo > 2.0 * step) ++cmp.unmatched;
  }
  for (std::size_t k = 0; k < sampled.size(); ++k)
    if (!used[k] && sampled[k].depth < -touch_tol) ++cmp.missed;
  return cmp;
}

/// Direct A^alpha = V diag(lambda^alpha) V^{-1} in the working precision,
/// bypassing projectors and coefficient dropping.
template <class Scalar = HighPrecision>
RealMatrix direct_power(const RealMatrix& a, double alpha) {
  using std::pow;
  using Complex = std::complex<Scalar>;
  const Eigen::EigenSolver<MatrixOf<Scalar>> es(a.template cast<Scalar>(), true);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "eigensolver failed");
  const auto v = es.eigenvectors();
  const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> vinv = v.partialPivLu().inverse();
  Eigen::Matrix<Complex, Eigen::Dynamic, 1> d(a.rows());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const Scalar re = es.eigenvalues()(i).real();
    d(i) = re > Scalar(0) ? Complex(pow(re, Scalar(alpha)), Scalar(0)) : Complex(Scalar(0), Scalar(0));
  }
  const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> p = v * d.asDiagonal() * vinv;
  RealMatrix out(a.rows(), a.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out(r, c) = to_double(p(r, c).real());
  return out;
}

// ---- random families -------------------------------------------------------

enum class Family { GradedCycle, Triangular, Gershgorin, DoublyNonnegative, Prop44, Reducible };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::GradedCycle: return "graded_cycle";
    case Family::Triangular: return "triangular";
    case Family::Gershgorin: return "gershgorin";
    case Family::DoublyNonnegative: return "doubly_nonnegative";
    case Family::Prop44: return "prop44";
    case Family::Reducible: return "reducible";
  }
  return "?";
}

namespace detail {

template <class Rng>
double log_uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

template <class Rng>
std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

}  // namespace detail

/// Cycle through a random permutation plus diagonal and sparse extras, with
/// entries spread over several decades, the shape the named examples have.
template <class Rng>
RealMatrix random_graded_cycle(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto perm = detail::random_permutation(n, rng);
  RealMatrix a = RealMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) a(perm[k], perm[(k + 1) % n]) = detail::log_uniform(rng, 0.1, 1e3);
  for (int i = 0; i < n; ++i)
    if (u(rng) < 0.7) a(i, i) = detail::log_uniform(rng, 1.0, 1e5);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a(i, j) == 0.0 && u(rng) < 0.1) a(i, j) = detail::log_uniform(rng, 0.1, 1e2);
  return a;
}

/// Upper triangular with distinct positive diagonal plus a few small
/// subdiagonal entries.
template <class Rng>
RealMatrix random_triangular(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealMatrix a = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = (n - i) * (1.0 + u(rng)) * 2.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (u(rng) < 0.6) a(i, j) = 5.0 * u(rng);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (u(rng) < 0.3) a(i, j) = 0.02 * u(rng);
  return a;
}

/// Widely spaced diagonal with off-diagonal mass small enough that the
/// Gershgorin discs are disjoint, so the spectrum is real and positive.
template <class Rng>
RealMatrix random_gershgorin(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealMatrix a = RealMatrix::Zero(n, n);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = std::pow(4.0, i) * (1.0 + 0.5 * u(rng));
  std::shuffle(diag.begin(), diag.end(), rng);
  for (int i = 0; i < n; ++i) a(i, i) = diag[i];
  double min_gap = *std::min_element(diag.begin(), diag.end());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) min_gap = std::min(min_gap, std::abs(diag[i] - diag[j]));
  const double budget = 0.45 * min_gap / n;  // row and column sums stay below min_gap / 2
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && u(rng) < 0.6) a(i, j) = budget * u(rng);
  return a;
}

/// B B^T with nonnegative sparse B, plus a small diagonal shift.
template <class Rng>
RealMatrix random_doubly_nonnegative(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int k = n + static_cast<int>(u(rng) * n);
  RealMatrix b = RealMatrix::Zero(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j)
      if (u(rng) < 0.5) b(i, j) = detail::log_uniform(rng, 0.1, 10.0);
  RealMatrix a = b * b.transpose();
  for (int i = 0; i < n; ++i) a(i, i) += 0.05 * u(rng);
  return 0.5 * (a + a.transpose());
}

template <class Rng>
RealMatrix random_prop44(int n, Rng& rng) {
  return prop44_matrix(random_prop44_params(n, rng));
}

struct BlockMatrix {
  RealMatrix a;          // block upper triangular: rows >= k, cols < k are zero
  int k = 0;             // size of the leading block
};

/// [[B, C], [0, D]] with Gershgorin-separated B and D sharing no eigenvalue
/// and a nonnegative coupling C.
template <class Rng>
BlockMatrix random_reducible(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> split(1, n - 1);
  BlockMatrix out;
  out.k = split(rng);
  out.a = random_gershgorin(n, rng);
  for (int i = out.k; i < n; ++i)
    for (int j = 0; j < out.k; ++j) out.a(i, j) = 0.0;
  for (int i = 0; i < out.k; ++i)
    for (int j = out.k; j < n; ++j)
      if (u(rng) < 0.7) out.a(i, j) = detail::log_uniform(rng, 0.01, 10.0);
  return out;
}

template <class Rng>
RealMatrix random_family_member(Family f, int n, Rng& rng) {
  switch (f) {
    case Family::GradedCycle: return random_graded_cycle(n, rng);
    case Family::Triangular: return random_triangular(n, rng);
    case Family::Gershgorin: return random_gershgorin(n, rng);
    case Family::DoublyNonnegative: return random_doubly_nonnegative(n, rng);
    case Family::Prop44: return random_prop44(n % 2 == 1 ? n : n + 1, rng);
    case Family::Reducible: {
      auto b = random_reducible(n, rng);
      return permute(b.a, detail::random_permutation(n, rng));
    }
  }
  return {};
}

struct CorpusMatrix {
  RealMatrix a;
  Family family = Family::GradedCycle;
};

/// `count` GDN matrices with 2 <= n <= n_max drawn round-robin from all
/// families; with `invertible` only those with a strictly positive spectrum.
/// Matrices whose tiny negative eigenvalues had to be clamped are skipped.
inline std::vector<CorpusMatrix> random_gdn_corpus(int count, int n_max, std::uint64_t seed,
                                                   bool invertible = false,
                                                   const ToleranceConfig& tol = {}) {
  constexpr Family kAll[] = {Family::GradedCycle, Family::Triangular, Family::Gershgorin,
                             Family::DoublyNonnegative, Family::Prop44, Family::Reducible};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(2, n_max);
  std::vector<CorpusMatrix> out;
  long draws = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++draws > 200L * count + 1000) {
      throw Error(ErrorCode::NoFeasibleCandidate, "corpus generator stalled");
    }
    const Family f = kAll[draws % 6];
    int n = size(rng);
    if (f == Family::Prop44) n = (n % 2 == 1) ? n : std::max(3, n - 1);
    if (n > n_max) continue;
    RealMatrix a = random_family_member(f, n, rng);
    const auto an = analyze_gdn(a, tol);
    const auto& rep = an.report;
    // Keep only matrices the analysis describes exactly.
    if (!rep.is_gdn || an.spectral->clamped_beyond_noise()) continue;
    if (invertible && !(rep.eigenvalues.back() > tol.eig_tol * rep.eigenvalues.front())) continue;
    out.push_back({std::move(a), f});
  }
  return out;
}

}  // namespace gdnce
