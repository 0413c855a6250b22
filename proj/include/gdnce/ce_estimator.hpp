// Per-matrix critical exponent: the supremum of the set of alpha at which some
// entry of A^alpha is negative, reported as a root bracket.
#pragma once

#include "gdnce/bounds.hpp"
#include "gdnce/pattern.hpp"
#include "gdnce/powers.hpp"
#include "gdnce/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gdnce {

/// Left end of every search window; alpha = 0 itself is outside the contract.
inline constexpr double kWindowStart = 1e-9;

struct CeOptions {
  double tol = 1e-6;  // bracket width
  ToleranceConfig tolerances;
  bool throw_on_inconclusive = true;
};

struct EntryProfile {
  int i = 0;
  int j = 0;
  std::vector<NegativeInterval> intervals;
  int sign_changes = 0;  // w_ij
  int crossings = 0;
  int touchings = 0;
  bool inconclusive = false;
  int components_beyond_one = 0;  // components meeting (1, inf)
  std::optional<int> cap;         // set for invertible inputs
};

struct NegativityProfile {
  int n = 0;
  Window window;
  bool invertible = false;
  double cond_s = 0.0;
  std::vector<double> eigenvalues;
  std::vector<EntryProfile> entries;  // row-major, all n*n entries
  std::optional<double> global_sup;
  std::optional<Window> bracket;
  std::optional<std::pair<int, int>> witness;
  std::vector<std::string> flags;
  CeOptions options;
  int precision_digits = 0;                      // working digits of the decomposition
  std::vector<std::pair<int, int>> unresolved;   // entries whose sign the precision cannot settle

  /// Lower end of the CE bracket, 0 when no entry ever goes negative.
  double ce_lower() const { return bracket ? bracket->lo : 0.0; }
  double ce_upper() const { return bracket ? bracket->hi : 0.0; }
  const EntryProfile& entry(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * n + j];
  }
};

/// Search window (0, k(n) + 1].
inline Window ce_window(int n) { return {kWindowStart, theorem_upper_bound(n) + 1.0}; }

/// Negativity profile from prebuilt entry polynomials. `invertible` enables
/// the per-entry component caps, which only hold for invertible inputs.
inline NegativityProfile negativity_profile(const EntryPolyMatrix& epm, bool invertible,
                                            const CeOptions& opt = {}) {
  NegativityProfile prof;
  prof.n = epm.n();
  prof.window = ce_window(prof.n);
  prof.invertible = invertible;
  prof.options = opt;
  const IsolationOptions iso{opt.tol, opt.tolerances.touch_tol};

  for (int i = 0; i < prof.n; ++i) {
    for (int j = 0; j < prof.n; ++j) {
      EntryProfile e;
      e.i = i;
      e.j = j;
      const auto& p = epm(i, j);
      e.sign_changes = sign_changes(p);
      auto neg = negativity_intervals(p, prof.window, iso);
      e.intervals = std::move(neg.intervals);
      e.crossings = neg.isolation.crossings();
      e.touchings = neg.isolation.touchings();
      e.inconclusive = neg.isolation.inconclusive;
      for (const auto& iv : e.intervals) {
        // A root at exactly alpha = 1 (a zero entry of A) ends a component
        // that lies in (0, 1]; the bracket may poke slightly past 1.
        if (iv.hi() > 1.0 + opt.tol) ++e.components_beyond_one;
        if (iv.ends_at_window) {
          prof.flags.push_back("NegativeAtWindowEnd(" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ")");
        }
      }
      if (invertible) {
        e.cap = component_cap(e.sign_changes, i == j);
        if (e.components_beyond_one > *e.cap) {
          prof.flags.push_back("CapViolation(" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ")");
        }
      }
      if (e.inconclusive) {
        prof.flags.push_back("IsolationInconclusive(" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ")");
      }
      if (!e.intervals.empty()) {
        const auto& last = e.intervals.back();
        const double sup = last.hi();
        if (!prof.global_sup || sup > *prof.global_sup) {
          prof.global_sup = sup;
          prof.bracket = last.ends_at_window ? Window{prof.window.hi, prof.window.hi}
                                             : Window{last.right.lo, last.right.hi};
          prof.witness = {i, j};
        }
      }
      prof.entries.push_back(std::move(e));
    }
  }
  if (opt.throw_on_inconclusive) {
    for (const auto& e : prof.entries) {
      if (e.inconclusive) {
        throw Error(ErrorCode::IsolationInconclusive,
                    "entry (" + std::to_string(e.i + 1) + "," + std::to_string(e.j + 1) +
                        ") has more roots than its Descartes bound");
      }
    }
  }
  return prof;
}

namespace detail {

/// support[i*n+j][c] says whether cluster c can appear in entry (i,j): some
/// diagonal block owning that eigenvalue must be reachable from i and reach j.
/// Irreducible inputs support every cluster everywhere.
inline std::vector<std::vector<bool>> coefficient_support(const RealMatrix& a,
                                                          const std::vector<double>& lambdas,
                                                          double rho) {
  const int n = static_cast<int>(a.rows());
  const auto m = lambdas.size();
  const auto bs = strongly_connected_blocks(BoolPattern::of(a));
  if (bs.irreducible()) return std::vector<std::vector<bool>>(n * n, std::vector<bool>(m, true));

  const auto nb = bs.blocks.size();
  std::vector<int> block_of(n);
  for (std::size_t b = 0; b < nb; ++b)
    for (int v : bs.blocks[b]) block_of[v] = static_cast<int>(b);
  std::vector<std::vector<bool>> reach(nb, std::vector<bool>(nb, false));
  for (std::size_t b = 0; b < nb; ++b) reach[b][b] = true;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (a(r, c) != 0.0) reach[block_of[r]][block_of[c]] = true;
  for (std::size_t k = 0; k < nb; ++k)
    for (std::size_t x = 0; x < nb; ++x)
      for (std::size_t y = 0; y < nb; ++y)
        if (reach[x][k] && reach[k][y]) reach[x][y] = true;

  // Loose matching only ever adds clusters, which makes the check stricter.
  std::vector<std::vector<bool>> owns(nb, std::vector<bool>(m, false));
  for (std::size_t b = 0; b < nb; ++b) {
    const auto& idx = bs.blocks[b];
    const int k = static_cast<int>(idx.size());
    RealMatrix sub(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) sub(r, c) = a(idx[r], idx[c]);
    const Eigen::EigenSolver<RealMatrix> es(sub, false);
    for (int e = 0; e < k; ++e) {
      const auto mu = es.eigenvalues()(e);
      for (std::size_t c = 0; c < m; ++c)
        if (std::abs(mu - lambdas[c]) <= 1e-6 * rho + 1e-3 * std::abs(lambdas[c]))
          owns[b][c] = true;
    }
  }
  std::vector<std::vector<bool>> out(n * n, std::vector<bool>(m, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (std::size_t b = 0; b < nb; ++b)
        if (reach[block_of[i]][b] && reach[b][block_of[j]])
          for (std::size_t c = 0; c < m; ++c)
            if (owns[b][c]) out[i * n + j][c] = true;
  return out;
}

/// Largest tolerated ratio of coefficient uncertainty to entry scale.
inline constexpr double kResolutionRatio = 1e-15;

template <class Scalar>
NegativityProfile profile_at(const GdnAnalysis<Scalar>& analysis, const CeOptions& opt) {
  const auto& sd = *analysis.spectral;
  const EntryPolyMatrix epm(sd);
  const auto lambdas = sd.lambdas_double();
  const bool invertible = lambdas.back() > opt.tolerances.eig_tol * std::max(sd.rho, 1e-300);
  auto prof = negativity_profile(epm, invertible, opt);
  prof.cond_s = sd.cond_s;
  prof.precision_digits = std::numeric_limits<Scalar>::digits10;
  // A resolvable negative eigenvalue set to zero means the profile describes a
  // nearby matrix, which need not be entrywise nonnegative.
  if (sd.clamped_beyond_noise()) prof.flags.push_back("ClampedNegativeEigenvalue");
  prof.eigenvalues = lambdas;

  const double rho = to_double(sd.rho);
  const auto support = coefficient_support(analysis.cleaned, lambdas, rho);
  std::vector<double> probes{prof.window.lo};
  for (double t = 1.0; t < prof.window.hi; t += 1.0) probes.push_back(t);
  probes.push_back(prof.window.hi);
  for (int i = 0; i < prof.n; ++i)
    for (int j = 0; j < prof.n; ++j)
      for (double t : probes)
        if (epm.uncertainty_ratio(i, j, t, support[i * prof.n + j]) > kResolutionRatio) {
          prof.unresolved.emplace_back(i, j);
          break;
        }
  return prof;
}

template <class Scalar>
std::optional<NegativityProfile> try_profile_at(const RealMatrix& a, const CeOptions& opt) {
  auto analysis = analyze_gdn<Scalar>(a, opt.tolerances);
  if (!analysis.report.is_gdn) return std::nullopt;
  return profile_at(analysis, opt);
}

}  // namespace detail

/// Critical exponent of a GDN matrix. Throws NotGdn otherwise. The
/// decomposition starts at 50 digits and escalates while some entry's sign
/// over the window is beyond the precision; what is still unresolved at the
/// top level is flagged.
inline NegativityProfile estimate_ce(const RealMatrix& a, const CeOptions& opt = {}) {
  auto analysis = analyze_gdn(a, opt.tolerances);
  if (!analysis.report.is_gdn) {
    std::string why;
    for (const auto& f : analysis.report.failures) why += (why.empty() ? "" : ",") + f;
    throw Error(ErrorCode::NotGdn, "matrix is not GDN: " + why);
  }
  auto prof = detail::profile_at(analysis, opt);
  if (!prof.unresolved.empty()) {
    if (auto p = detail::try_profile_at<Precision100>(analysis.cleaned, opt)) prof = std::move(*p);
  }
  if (!prof.unresolved.empty()) {
    if (auto p = detail::try_profile_at<Precision200>(analysis.cleaned, opt)) prof = std::move(*p);
  }
  for (const auto& [i, j] : prof.unresolved)
    prof.flags.push_back("Unresolved(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  return prof;
}

struct ColumnEscape {
  int column = 0;
  std::optional<int> first_clean;  // least integer m with [m, m+1] free of negativity
  double last_negative = 0.0;      // supremum of negativity in the column, 0 if none
  bool violation = false;          // negativity after a clean unit window
};

struct ColumnEscapeReport {
  std::vector<ColumnEscape> columns;
  bool clean() const {
    for (const auto& c : columns)
      if (c.violation) return false;
    return true;
  }
};

/// Checks numerically that a column which is nonnegative on a whole unit
/// window [m, m+1] stays nonnegative beyond m.
inline ColumnEscapeReport check_column_escape(const NegativityProfile& prof, int n) {
  if (n != prof.n) throw Error(ErrorCode::InvalidArgument, "profile size mismatch");
  const double slack = prof.options.tol;
  ColumnEscapeReport out;
  const int last_m = static_cast<int>(std::floor(prof.window.hi));
  for (int j = 0; j < n; ++j) {
    ColumnEscape col;
    col.column = j;
    std::vector<std::pair<double, double>> ivs;
    for (int i = 0; i < n; ++i)
      for (const auto& iv : prof.entry(i, j).intervals) {
        ivs.emplace_back(iv.lo(), iv.hi());
        col.last_negative = std::max(col.last_negative, iv.hi());
      }
    for (int m = 0; m < last_m; ++m) {
      const bool hit = std::any_of(ivs.begin(), ivs.end(), [&](const auto& iv) {
        return iv.first < m + 1 - slack && iv.second > m + slack;
      });
      if (!hit) {
        col.first_clean = m;
        break;
      }
    }
    if (col.first_clean) col.violation = col.last_negative > *col.first_clean + slack;
    out.columns.push_back(col);
  }
  return out;
}

}  // namespace gdnce
