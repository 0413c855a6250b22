// Closed-form bounds: the sign change matrix W, per-entry caps on the number
// of negativity components beyond alpha = 1, and the quadratic upper bound
// k(n) on the critical exponent.
#pragma once

#include "gdnce/powers.hpp"

#include <vector>

namespace gdnce {

struct SignChangeMatrix {
  int n = 0;
  std::vector<int> w;  // row-major

  int operator()(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
};

inline SignChangeMatrix sign_change_matrix(const EntryPolyMatrix& epm) {
  SignChangeMatrix out{epm.n(), {}};
  out.w.reserve(static_cast<std::size_t>(epm.n()) * epm.n());
  for (int i = 0; i < epm.n(); ++i)
    for (int j = 0; j < epm.n(); ++j) out.w.push_back(sign_changes(epm(i, j)));
  return out;
}

/// Maximum number of connected components of {alpha > 1 : (A^alpha)_ij < 0}
/// for an invertible GDN matrix: floor((w-1)/2) off the diagonal, floor(w/2)
/// on it, 0 when w = 0.
inline int component_cap(int w, bool diagonal) {
  if (w < 0) throw Error(ErrorCode::InvalidArgument, "sign change count must be >= 0");
  if (w == 0) return 0;
  return diagonal ? w / 2 : (w - 1) / 2;
}

/// k(n): (n^2 - 3n + 4)/2 for odd n, (n^2 - 2n)/2 for even n.
inline double theorem_upper_bound(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  return n % 2 == 1 ? (n * n - 3 * n + 4) / 2.0 : (n * n - 2 * n) / 2.0;
}

/// Column-set component count in [1, inf) from the two parity branches:
/// (n^2 - 3n + 2)/2 for odd n, (n^2 - 2n)/2 for even n.
inline int component_budget(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "component_budget needs n >= 2");
  return n % 2 == 1 ? (n * n - 3 * n + 2) / 2 : (n * n - 2 * n) / 2;
}

}  // namespace gdnce
