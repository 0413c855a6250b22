// Real exponential polynomials p(alpha) = sum_i a_i lambda_i^alpha with
// distinct nonnegative bases, and certified isolation of their real roots.
//
// Descartes' rule for exponential polynomials bounds the number of real roots
// (with multiplicity) by the sign changes of the coefficients ordered by
// decreasing base. Isolation scans a uniform grid and bisects sign changes;
// when that finds fewer roots than the bound, the window is cut at the
// critical points of p * lambda_k^-alpha (found recursively, one term fewer
// per level), on whose pieces p is monotone up to a positive factor, and
// every piece is checked. That second pass cannot miss a root.
#pragma once

#include "gdnce/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace gdnce {

struct ExpTerm {
  double coeff = 0.0;
  double base = 0.0;  // lambda >= 0
};

class ExpPoly {
 public:
  ExpPoly() = default;

  /// Drops terms with |coeff| <= 1e-12 * max |coeff|.
  explicit ExpPoly(std::vector<ExpTerm> terms) : ExpPoly(std::move(terms), -1.0) {}

  /// Drops terms with |coeff| <= zero_tol (absolute).
  static ExpPoly with_absolute_tol(std::vector<ExpTerm> terms, double zero_tol) {
    if (!(zero_tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "zero_tol must be >= 0");
    return ExpPoly(std::move(terms), zero_tol);
  }

  const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
  double zero_tol() const noexcept { return zero_tol_; }
  bool identically_zero() const noexcept { return terms_.empty(); }

  /// Terms that survive for alpha > 0 (the zero base, if any, removed).
  std::vector<ExpTerm> positive_terms() const {
    std::vector<ExpTerm> out;
    for (const auto& t : terms_)
      if (t.base > 0.0) out.push_back(t);
    return out;
  }

 private:
  ExpPoly(std::vector<ExpTerm> terms, double zero_tol) {
    for (const auto& t : terms) {
      if (!std::isfinite(t.coeff) || !std::isfinite(t.base) || t.base < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "terms need finite coeffs and bases >= 0");
      }
    }
    std::sort(terms.begin(), terms.end(),
              [](const ExpTerm& x, const ExpTerm& y) { return x.base > y.base; });
    // Equal bases are one term.
    std::vector<ExpTerm> merged;
    for (const auto& t : terms) {
      if (!merged.empty() && merged.back().base == t.base) {
        merged.back().coeff += t.coeff;
      } else {
        merged.push_back(t);
      }
    }
    if (zero_tol < 0.0) {
      double biggest = 0.0;
      for (const auto& t : merged) biggest = std::max(biggest, std::abs(t.coeff));
      zero_tol = 1e-12 * biggest;
    }
    zero_tol_ = zero_tol;
    for (const auto& t : merged)
      if (std::abs(t.coeff) > zero_tol_) terms_.push_back(t);
  }

  std::vector<ExpTerm> terms_;
  double zero_tol_ = 0.0;
};

/// Count of strict sign alternations in the stored coefficient sequence.
inline int sign_changes(const std::vector<ExpTerm>& terms) {
  int changes = 0;
  int last = 0;
  for (const auto& t : terms) {
    const int s = t.coeff > 0 ? 1 : (t.coeff < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline int sign_changes(const ExpPoly& p) { return sign_changes(p.terms()); }

namespace detail {

/// sum_i c_i e^{r_i t} with r_i strictly descending, evaluated relative to the
/// dominant factor e^{r_0 t} so large alpha never overflows.
struct ExpSum {
  std::vector<double> coeff;
  std::vector<double> rate;

  static ExpSum from(const std::vector<ExpTerm>& terms) {
    ExpSum s;
    for (const auto& t : terms) {
      s.coeff.push_back(t.coeff);
      s.rate.push_back(std::log(t.base));
    }
    return s;
  }

  std::size_t size() const { return coeff.size(); }

  struct Sample {
    double value;  // p(t) e^{-r_0 t}
    double scale;  // sum |c_i| e^{(r_i - r_0) t}
  };

  Sample sample(double t) const {
    Sample out{0.0, 0.0};
    if (coeff.empty()) return out;
    const double top = rate.front();
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      const double e = std::exp((rate[i] - top) * t);
      out.value += coeff[i] * e;
      out.scale += std::abs(coeff[i]) * e;
    }
    return out;
  }

  bool negative(double t) const { return sample(t).value < 0.0; }

  /// Derivative of p e^{-r_k t} up to the positive factor e^{r_k t}.
  ExpSum reduced_derivative() const {
    ExpSum d;
    if (coeff.size() < 2) return d;
    const double low = rate.back();
    for (std::size_t i = 0; i + 1 < coeff.size(); ++i) {
      const double c = coeff[i] * (rate[i] - low);
      if (c != 0.0) {
        d.coeff.push_back(c);
        d.rate.push_back(rate[i]);
      }
    }
    return d;
  }
};

/// Bisects a sign change of `f` on [a,b] to width <= tol.
inline std::pair<double, double> bisect(const ExpSum& f, double a, double b, double tol) {
  const bool neg_a = f.negative(a);
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    if (f.negative(m) == neg_a) {
      a = m;
    } else {
      b = m;
    }
  }
  return {a, b};
}

/// Minimizes sigma * value/scale on [a,b] by golden section; returns the
/// location and the relative value there (signed, before sigma).
inline std::pair<double, double> extremum(const ExpSum& f, double a, double b, int sigma,
                                          double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  auto g = [&](double t) {
    const auto s = f.sample(t);
    return s.scale > 0.0 ? sigma * s.value / s.scale : 0.0;
  };
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double g1 = g(x1), g2 = g(x2);
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    if (g1 < g2) {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - kInvPhi * (b - a);
      g1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + kInvPhi * (b - a);
      g2 = g(x2);
    }
  }
  const double t = g1 < g2 ? x1 : x2;
  return {t, sigma * std::min(g1, g2)};
}

/// All sign changes of f in [lo,hi], located to `tol`. Exhaustive: recursion
/// on the reduced derivative cuts the window into monotone pieces.
inline std::vector<std::pair<double, double>> sign_change_brackets(const ExpSum& f, double lo,
                                                                   double hi, double tol) {
  std::vector<std::pair<double, double>> out;
  if (f.size() < 2) return out;
  const double inner_tol = std::max(1e-14 * std::max(1.0, std::abs(hi)), 1e-300);
  const auto crit = sign_change_brackets(f.reduced_derivative(), lo, hi, inner_tol);
  std::vector<double> cuts{lo};
  for (const auto& [a, b] : crit) {
    if (a > cuts.back() && a < hi) cuts.push_back(a);
    if (b > cuts.back() && b < hi) cuts.push_back(b);
  }
  cuts.push_back(hi);
  bool neg_prev = f.negative(cuts.front());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const bool neg_next = f.negative(cuts[i + 1]);
    if (neg_next != neg_prev) out.push_back(bisect(f, cuts[i], cuts[i + 1], tol));
    neg_prev = neg_next;
  }
  return out;
}

/// Extrema (sign changes of the reduced derivative) of f in [lo,hi].
inline std::vector<double> critical_points(const ExpSum& f, double lo, double hi) {
  std::vector<double> out;
  const double inner_tol = std::max(1e-14 * std::max(1.0, std::abs(hi)), 1e-300);
  for (const auto& [a, b] : sign_change_brackets(f.reduced_derivative(), lo, hi, inner_tol))
    out.push_back(0.5 * (a + b));
  return out;
}

}  // namespace detail

/// p(alpha) for alpha > 0; zero-base terms contribute nothing.
inline double evaluate(const ExpPoly& p, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "evaluate needs alpha > 0");
  const auto terms = p.positive_terms();
  if (terms.empty()) return 0.0;
  const auto f = detail::ExpSum::from(terms);
  const auto s = f.sample(alpha);
  return s.value * std::exp(f.rate.front() * alpha);
}

/// sum_i |a_i| lambda_i^alpha: the magnitude against which cancellation in
/// p(alpha) is judged.
inline double evaluate_scale(const ExpPoly& p, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "evaluate needs alpha > 0");
  const auto terms = p.positive_terms();
  if (terms.empty()) return 0.0;
  const auto f = detail::ExpSum::from(terms);
  return f.sample(alpha).scale * std::exp(f.rate.front() * alpha);
}

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

enum class RootParity { Crossing, Touching };

struct IsolatedRoot {
  double lo = 0.0;
  double hi = 0.0;
  RootParity parity = RootParity::Crossing;

  double mid() const { return 0.5 * (lo + hi); }
};

struct RootIsolation {
  std::vector<IsolatedRoot> roots;  // ascending
  int descartes_bound = 0;
  double grid_step = 0.0;
  bool exhaustive = false;    // the critical-point pass ran
  bool inconclusive = false;  // more roots than the Descartes bound

  int crossings() const {
    return static_cast<int>(std::count_if(roots.begin(), roots.end(), [](const auto& r) {
      return r.parity == RootParity::Crossing;
    }));
  }
  int touchings() const { return static_cast<int>(roots.size()) - crossings(); }
  int multiplicity_count() const { return crossings() + 2 * touchings(); }
};

struct IsolationOptions {
  double tol = 1e-6;
  double touch_tol = 1e-10;
};

namespace detail {

inline void check_window(Window w, double tol) {
  if (!(w.lo > 0.0) || !(w.hi > w.lo) || !std::isfinite(w.hi) || !(tol > 0.0)) {
    throw Error(ErrorCode::WindowInvalid, "window must satisfy 0 < lo < hi and tol > 0");
  }
}

inline double relative_value(const ExpSum& f, double t) {
  const auto s = f.sample(t);
  return s.scale > 0.0 ? s.value / s.scale : 0.0;
}

/// Turns crossing brackets into roots, collapsing adjacent pairs that enclose
/// an extremum no deeper than touch_tol into a single touching root, and adds
/// touching roots found at the supplied extremum candidates.
inline std::vector<IsolatedRoot> classify(const ExpSum& f, Window w,
                                          const std::vector<std::pair<double, double>>& brackets,
                                          const std::vector<double>& extrema,
                                          const IsolationOptions& opt) {
  std::vector<IsolatedRoot> roots;
  for (const auto& [a, b] : brackets) roots.push_back({a, b, RootParity::Crossing});

  // Shallow excursions between adjacent crossings are noise-level touching.
  std::vector<IsolatedRoot> collapsed;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i + 1 < roots.size()) {
      const double a = roots[i].hi;
      const double b = roots[i + 1].lo;
      // Peak of the excursion between the two crossings.
      const int sigma = f.negative(0.5 * (a + b)) ? 1 : -1;
      const auto [t, rel] = b > a ? extremum(f, a, b, sigma, std::min(opt.tol, 1e-3 * (b - a)))
                                  : std::pair<double, double>{0.5 * (a + b), 0.0};
      if (std::abs(rel) <= opt.touch_tol) {
        collapsed.push_back({roots[i].lo, roots[i + 1].hi, RootParity::Touching});
        ++i;
        continue;
      }
    }
    collapsed.push_back(roots[i]);
  }

  for (double c : extrema) {
    if (c <= w.lo || c >= w.hi) continue;
    if (std::abs(relative_value(f, c)) > opt.touch_tol) continue;
    const bool near_existing = std::any_of(collapsed.begin(), collapsed.end(), [&](const auto& r) {
      return c >= r.lo - opt.tol && c <= r.hi + opt.tol;
    });
    if (!near_existing) {
      collapsed.push_back({std::max(w.lo, c - 0.5 * opt.tol), std::min(w.hi, c + 0.5 * opt.tol),
                           RootParity::Touching});
    }
  }
  std::sort(collapsed.begin(), collapsed.end(),
            [](const auto& x, const auto& y) { return x.lo < y.lo; });
  return collapsed;
}

}  // namespace detail

/// Brackets every real root of p inside the window.
inline RootIsolation isolate_roots(const ExpPoly& p, Window w, const IsolationOptions& opt = {}) {
  detail::check_window(w, opt.tol);
  RootIsolation out;
  const auto terms = p.positive_terms();
  out.descartes_bound = sign_changes(terms);
  const auto f = detail::ExpSum::from(terms);
  const double width = w.hi - w.lo;
  const auto steps = static_cast<long>(std::ceil(width / std::min(0.01, width / 1000.0)));
  out.grid_step = width / static_cast<double>(steps);
  if (f.size() < 2 || out.descartes_bound == 0) return out;

  // Grid pass.
  std::vector<double> xs(static_cast<std::size_t>(steps) + 1);
  std::vector<double> rel(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = i + 1 == xs.size() ? w.hi : w.lo + out.grid_step * static_cast<double>(i);
    rel[i] = detail::relative_value(f, xs[i]);
  }
  std::vector<std::pair<double, double>> brackets;
  std::vector<double> extrema;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if ((rel[i] < 0.0) != (rel[i + 1] < 0.0)) {
      brackets.push_back(detail::bisect(f, xs[i], xs[i + 1], opt.tol));
    }
  }
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const bool same = (rel[i - 1] < 0.0) == (rel[i] < 0.0) && (rel[i] < 0.0) == (rel[i + 1] < 0.0);
    if (!same) continue;
    const double m = std::abs(rel[i]);
    if (m < std::abs(rel[i - 1]) && m <= std::abs(rel[i + 1])) {
      const int sigma = rel[i] < 0.0 ? -1 : 1;
      const auto [t, v] = detail::extremum(f, xs[i - 1], xs[i + 1], sigma, 1e-3 * opt.tol);
      if ((v < 0.0) != (rel[i] < 0.0)) {
        // The dip crosses zero between grid points: two crossings.
        brackets.push_back(detail::bisect(f, xs[i - 1], t, opt.tol));
        brackets.push_back(detail::bisect(f, t, xs[i + 1], opt.tol));
      } else {
        extrema.push_back(t);
      }
    }
  }
  std::sort(brackets.begin(), brackets.end());
  out.roots = detail::classify(f, w, brackets, extrema, opt);

  if (out.multiplicity_count() < out.descartes_bound) {
    out.exhaustive = true;
    const auto all = detail::sign_change_brackets(f, w.lo, w.hi, opt.tol);
    out.roots = detail::classify(f, w, all, detail::critical_points(f, w.lo, w.hi), opt);
  }
  out.inconclusive = out.multiplicity_count() > out.descartes_bound;
  return out;
}

/// One maximal open interval of the window on which p < 0. Each endpoint is
/// either a located root (bracket) or the window edge.
struct NegativeInterval {
  IsolatedRoot left;
  IsolatedRoot right;
  bool starts_at_window = false;
  bool ends_at_window = false;

  double lo() const { return starts_at_window ? left.lo : left.mid(); }
  double hi() const { return ends_at_window ? right.hi : right.mid(); }
};

struct NegativitySet {
  std::vector<NegativeInterval> intervals;
  RootIsolation isolation;
};

/// Maximal subintervals of the window where p < 0, endpoints to opt.tol.
inline NegativitySet negativity_intervals(const ExpPoly& p, Window w,
                                          const IsolationOptions& opt = {}) {
  NegativitySet out;
  out.isolation = isolate_roots(p, w, opt);
  const auto terms = p.positive_terms();
  if (terms.empty()) return out;
  const auto f = detail::ExpSum::from(terms);

  bool negative = f.negative(w.lo);
  NegativeInterval current;
  if (negative) {
    current.starts_at_window = true;
    current.left = {w.lo, w.lo, RootParity::Crossing};
  }
  for (const auto& r : out.isolation.roots) {
    if (r.parity != RootParity::Crossing) continue;
    if (negative) {
      current.right = r;
      out.intervals.push_back(current);
      current = {};
    } else {
      current.left = r;
    }
    negative = !negative;
  }
  if (negative) {
    current.ends_at_window = true;
    current.right = {w.hi, w.hi, RootParity::Crossing};
    out.intervals.push_back(current);
  }
  return out;
}

}  // namespace gdnce
