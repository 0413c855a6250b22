// Pattern-level bounds on the index of primitivity and the trace conditions
// every GDN matrix with positive spectrum satisfies.
#pragma once

#include "gdnce/pattern.hpp"
#include "gdnce/spectral.hpp"

#include <optional>

namespace gdnce {

/// 2n - d - 1, d = number of true diagonal entries. Throws NotApplicable for
/// reducible patterns or patterns without a true diagonal entry.
inline int diagonal_support_bound(const BoolPattern& p) {
  const int d = p.diagonal_count();
  if (d < 1) throw Error(ErrorCode::NotApplicable, "pattern has no positive diagonal entry");
  if (!is_irreducible(p)) throw Error(ErrorCode::NotApplicable, "pattern is reducible");
  return 2 * p.n() - d - 1;
}

/// Index of primitivity cap for GDN patterns, 2n - 3.
inline int gdn_primitivity_cap(int n) { return 2 * n - 3; }

struct TraceNecessities {
  double t1 = 0.0;  // Tr(A)
  double t2 = 0.0;  // Tr(A^2)
  double c1 = 0.0;  // -t1
  double c2 = 0.0;  // (t1^2 - t2)/2
  int positive_diagonal = 0;
  bool c1_negative = false;
  bool c2_positive = false;
  bool two_positive_diagonal = false;

  bool holds() const { return c1_negative && c2_positive && two_positive_diagonal; }
};

/// Characteristic-polynomial coefficients c1, c2 from traces, plus the
/// positive diagonal count. Requires a GDN matrix with strictly positive
/// spectrum and n >= 2.
inline TraceNecessities gdn_trace_necessities(const RealMatrix& a, const ToleranceConfig& tol = {}) {
  const auto report = validate_gdn(a, tol);
  if (!report.is_gdn) throw Error(ErrorCode::PreconditionViolated, "matrix is not GDN");
  if (a.rows() < 2) throw Error(ErrorCode::PreconditionViolated, "needs n >= 2");
  const double rho = report.eigenvalues.front();
  if (!(report.eigenvalues.back() > tol.eig_tol * rho)) {
    throw Error(ErrorCode::PreconditionViolated, "spectrum is not strictly positive");
  }
  TraceNecessities out;
  out.t1 = a.trace();
  out.t2 = (a * a).trace();
  out.c1 = -out.t1;
  out.c2 = 0.5 * (out.t1 * out.t1 - out.t2);
  out.positive_diagonal = BoolPattern::of(a).diagonal_count();
  out.c1_negative = out.c1 < 0.0;
  out.c2_positive = out.c2 > 0.0;
  out.two_positive_diagonal = out.positive_diagonal >= 2;
  return out;
}

/// Permutation to block upper triangular form, or nullopt when irreducible.
inline std::optional<BlockStructure> reducibility_blocks(const RealMatrix& a,
                                                         double pattern_tol = 0.0) {
  auto blocks = strongly_connected_blocks(BoolPattern::of(a, pattern_tol));
  if (blocks.irreducible()) return std::nullopt;
  return blocks;
}

}  // namespace gdnce
