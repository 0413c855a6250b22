// Zero/nonzero pattern analysis: boolean patterns, index of primitivity,
// strongly connected components and the block-triangular permutation.
#pragma once

#include "gdnce/core.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gdnce {

/// Boolean zero/nonzero pattern, row-major. bits[i*n + j] is true when the
/// (i,j) entry exceeds the pattern tolerance.
class BoolPattern {
 public:
  BoolPattern() = default;
  explicit BoolPattern(int n, bool value = false)
      : n_(n), bits_(static_cast<std::size_t>(n) * n, value) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "pattern size must be >= 1");
  }

  /// Pattern of entries strictly greater than `pattern_tol`.
  static BoolPattern of(const RealMatrix& a, double pattern_tol = 0.0) {
    require_valid(a);
    BoolPattern p(static_cast<int>(a.rows()));
    for (int i = 0; i < p.n_; ++i)
      for (int j = 0; j < p.n_; ++j) p.set(i, j, a(i, j) > pattern_tol);
    return p;
  }

  /// Tolerance used for patterns of computed (floating) results.
  static double floating_tol(const RealMatrix& a) { return 1e-12 * inf_norm(a); }

  int n() const noexcept { return n_; }
  bool operator()(int i, int j) const { return bits_[index(i, j)]; }
  void set(int i, int j, bool v) { bits_[index(i, j)] = v; }

  bool all() const {
    return std::all_of(bits_.begin(), bits_.end(), [](bool b) { return b; });
  }
  int diagonal_count() const {
    int d = 0;
    for (int i = 0; i < n_; ++i) d += (*this)(i, i) ? 1 : 0;
    return d;
  }

  /// Boolean product.
  BoolPattern operator*(const BoolPattern& rhs) const {
    BoolPattern out(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        if (!(*this)(i, k)) continue;
        for (int j = 0; j < n_; ++j)
          if (rhs(k, j)) out.set(i, j, true);
      }
    return out;
  }

  bool operator==(const BoolPattern&) const = default;

  /// 0/1 grid, one row per line.
  std::string to_string() const {
    std::string s;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (j) s += ' ';
        s += (*this)(i, j) ? '1' : '0';
      }
      s += '\n';
    }
    return s;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ + j;
  }

  int n_ = 0;
  std::vector<bool> bits_;
};

/// Classical Wielandt bound n^2 - 2n + 2 on the index of primitivity.
inline int wielandt_bound(int n) { return n * n - 2 * n + 2; }

/// Least k >= 1 with P^k all-true, or nullopt when P is not primitive.
inline std::optional<int> index_of_primitivity(const BoolPattern& p) {
  BoolPattern power = p;
  const int cap = wielandt_bound(p.n());
  for (int k = 1; k <= cap; ++k) {
    if (power.all()) return k;
    power = power * p;
  }
  return std::nullopt;
}

struct BlockStructure {
  /// Blocks in block-upper-triangular order; each lists original indices.
  std::vector<std::vector<int>> blocks;
  /// perm[new_position] = original index, so (P^T A P)(r,c) = A(perm[r], perm[c]).
  std::vector<int> permutation;

  bool irreducible() const { return blocks.size() <= 1; }
};

/// Strongly connected components of the digraph i -> j when P(i,j), ordered
/// so that every edge runs from an earlier (or the same) block to a later one.
inline BlockStructure strongly_connected_blocks(const BoolPattern& p) {
  const int n = p.n();
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::vector<int>> components;  // Tarjan emits sinks first
  int counter = 0;

  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w = 0; w < n; ++w) {
      if (!p(v, w)) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> comp;
      int w = -1;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      components.push_back(std::move(comp));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);

  BlockStructure out;
  out.blocks.assign(components.rbegin(), components.rend());
  for (const auto& b : out.blocks)
    out.permutation.insert(out.permutation.end(), b.begin(), b.end());
  return out;
}

inline bool is_irreducible(const BoolPattern& p) {
  return strongly_connected_blocks(p).irreducible();
}

/// P^T A P for a permutation given as perm[new] = old.
inline RealMatrix permute(const RealMatrix& a, const std::vector<int>& perm) {
  const auto n = a.rows();
  RealMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = a(perm[r], perm[c]);
  return out;
}

}  // namespace gdnce
