// Seeded hill climbing with random restarts for GDN matrices with a large
// critical exponent or a large index of primitivity.
//
// Moves: multiplicative noise on all entries or on one entry, proportional
// scaling of a row or a column (scaling rows 1 and 4 of the n = 4 example
// down in proportion pushes its critical exponent up), and, when the pattern
// is free, toggling one entry.
#pragma once

#include "gdnce/bounds.hpp"
#include "gdnce/ce_estimator.hpp"
#include "gdnce/primitivity.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>

namespace gdnce {

enum class SearchTarget { MaxCe, MaxMip };

inline std::string_view to_string(SearchTarget t) {
  return t == SearchTarget::MaxCe ? "max_ce" : "max_mip";
}

inline SearchTarget search_target_from_name(std::string_view s) {
  if (s == "max_ce") return SearchTarget::MaxCe;
  if (s == "max_mip") return SearchTarget::MaxMip;
  throw Error(ErrorCode::UnknownName, "unknown search target '" + std::string(s) + "'");
}

struct SearchConfig {
  int n = 3;
  SearchTarget target = SearchTarget::MaxCe;
  std::uint64_t seed = 1;
  long budget = 1000;  // candidate evaluations
  std::optional<BoolPattern> pattern;
  double entry_lo = 0.1;
  double entry_hi = 1e4;
  double perturb_scale = 0.3;
  std::optional<RealMatrix> start;  // first candidate of restart 0
  long restart_iters = 200;
  double ce_tol = 1e-6;
  ToleranceConfig tolerances;

  void check() const {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
    if (budget < 1 || restart_iters < 1) throw Error(ErrorCode::InvalidArgument, "budget must be >= 1");
    if (!(entry_lo > 0.0) || !(entry_hi >= entry_lo)) {
      throw Error(ErrorCode::InvalidArgument, "entry range must be positive");
    }
    if (!(perturb_scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "perturb_scale must be > 0");
    if (pattern && pattern->n() != n) throw Error(ErrorCode::InvalidArgument, "pattern size != n");
    if (start && start->rows() != n) throw Error(ErrorCode::InvalidArgument, "start size != n");
    tolerances.check();
  }
};

struct Scored {
  RealMatrix matrix;
  double score = 0.0;
  std::optional<Window> ce_bracket;
  std::optional<int> primitivity;
};

struct SearchRecord {
  RealMatrix best;
  double score = 0.0;
  std::optional<Window> ce_bracket;
  std::optional<int> index_of_primitivity;
  long iterations = 0;
  long gdn_candidates = 0;
  int best_restart = 0;
  bool revalidated = false;
  SearchConfig config;
};

namespace detail {

/// Random pattern: a Hamiltonian cycle (irreducible), at least two positive
/// diagonal entries for n >= 2, and a sprinkle of extra entries.
template <class Rng>
BoolPattern random_pattern(int n, Rng& rng) {
  BoolPattern p(n);
  if (n == 1) {
    p.set(0, 0, true);
    return p;
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int k = 0; k < n; ++k) p.set(perm[k], perm[(k + 1) % n], true);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::shuffle(perm.begin(), perm.end(), rng);
  p.set(perm[0], perm[0], true);
  p.set(perm[1], perm[1], true);
  for (int k = 2; k < n; ++k)
    if (u(rng) < 0.5) p.set(perm[k], perm[k], true);
  const double extra = std::array<double, 3>{0.0, 0.1, 0.25}[static_cast<std::size_t>(u(rng) * 3) % 3];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && u(rng) < extra) p.set(i, j, true);
  return p;
}

template <class Rng>
RealMatrix sample_on_pattern(const BoolPattern& p, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> logu(std::log(lo), std::log(hi));
  RealMatrix a = RealMatrix::Zero(p.n(), p.n());
  for (int i = 0; i < p.n(); ++i)
    for (int j = 0; j < p.n(); ++j)
      if (p(i, j)) a(i, j) = std::exp(logu(rng));
  return a;
}

template <class Rng>
RealMatrix perturb(const RealMatrix& a, const SearchConfig& cfg, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, cfg.perturb_scale);
  std::uniform_int_distribution<int> pick(0, cfg.n - 1);
  RealMatrix b = a;
  const double move = u(rng);
  const bool free_pattern = !cfg.pattern && cfg.target == SearchTarget::MaxMip;
  if (free_pattern && move < 0.2) {
    const int i = pick(rng), j = pick(rng);
    std::uniform_real_distribution<double> logu(std::log(cfg.entry_lo), std::log(cfg.entry_hi));
    b(i, j) = b(i, j) > 0.0 ? 0.0 : std::exp(logu(rng));
  } else if (move < 0.45) {
    b = b.unaryExpr([&](double v) { return v * std::exp(gauss(rng)); });
  } else if (move < 0.7) {
    const int i = pick(rng), j = pick(rng);
    b(i, j) *= std::exp(3.0 * gauss(rng));
  } else if (move < 0.85) {
    b.row(pick(rng)) *= std::exp(3.0 * gauss(rng));
  } else {
    b.col(pick(rng)) *= std::exp(3.0 * gauss(rng));
  }
  return b.cwiseMin(1e12).unaryExpr([](double v) { return v > 0.0 && v < 1e-8 ? 1e-8 : v; });
}

inline std::string falsification_message(const char* what, const RealMatrix& a) {
  std::string s = std::string(what) + "; witness rows:";
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    s += " [";
    for (Eigen::Index j = 0; j < a.cols(); ++j) s += (j ? "," : "") + format17(a(i, j));
    s += "]";
  }
  return s;
}

}  // namespace detail

/// Scores one candidate; nullopt when it is not GDN (or, for max_mip, not
/// primitive). Throws Falsification when a bound would be broken.
inline std::optional<Scored> score_candidate(const RealMatrix& a, const SearchConfig& cfg) {
  Scored s;
  s.matrix = a;
  if (cfg.target == SearchTarget::MaxCe) {
    CeOptions opt;
    opt.tol = cfg.ce_tol;
    opt.tolerances = cfg.tolerances;
    opt.throw_on_inconclusive = false;
    NegativityProfile prof;
    try {
      prof = estimate_ce(a, opt);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotGdn) return std::nullopt;
      throw;
    }
    for (const auto& e : prof.entries)
      if (e.inconclusive) return std::nullopt;
    // Only exactly-nonnegative spectra count as search results.
    for (const auto& f : prof.flags)
      if (f == "ClampedNegativeEigenvalue" || f.rfind("Unresolved", 0) == 0) return std::nullopt;
    s.ce_bracket = prof.bracket.value_or(Window{0.0, 0.0});
    s.score = prof.ce_lower();
    if (prof.ce_upper() > theorem_upper_bound(cfg.n) + cfg.ce_tol) {
      throw Error(ErrorCode::Falsification,
                  detail::falsification_message("critical exponent above k(n)", a));
    }
  } else {
    const auto analysis = analyze_gdn(a, cfg.tolerances);
    if (!analysis.report.is_gdn || analysis.spectral->clamped_beyond_noise()) return std::nullopt;
    const auto idx = index_of_primitivity(BoolPattern::of(a));
    if (!idx) return std::nullopt;
    s.primitivity = idx;
    s.score = *idx;
    if (cfg.n >= 2 && *idx > gdn_primitivity_cap(cfg.n)) {
      throw Error(ErrorCode::Falsification,
                  detail::falsification_message("index of primitivity above 2n-3", a));
    }
  }
  return s;
}

inline SearchRecord search(const SearchConfig& cfg) {
  cfg.check();
  SearchRecord rec;
  rec.config = cfg;
  std::optional<Scored> best;
  const long restarts = (cfg.budget + cfg.restart_iters - 1) / cfg.restart_iters;
  for (long r = 0; r < restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    const long iters = std::min(cfg.restart_iters, cfg.budget - rec.iterations);
    std::optional<Scored> current;
    for (long it = 0; it < iters; ++it) {
      RealMatrix cand;
      if (current) {
        cand = detail::perturb(current->matrix, cfg, rng);
      } else if (r == 0 && it == 0 && cfg.start) {
        cand = *cfg.start;
      } else {
        const BoolPattern p = cfg.pattern ? *cfg.pattern : detail::random_pattern(cfg.n, rng);
        cand = detail::sample_on_pattern(p, cfg.entry_lo, cfg.entry_hi, rng);
      }
      ++rec.iterations;
      auto scored = score_candidate(cand, cfg);
      if (!scored) continue;
      ++rec.gdn_candidates;
      if (!current || scored->score >= current->score) current = std::move(scored);
    }
    if (current && (!best || current->score > best->score)) {
      best = std::move(current);
      rec.best_restart = static_cast<int>(r);
    }
  }
  if (!best) throw Error(ErrorCode::NoFeasibleCandidate, "no GDN candidate within budget");

  rec.best = best->matrix;
  rec.score = best->score;
  rec.ce_bracket = best->ce_bracket;
  rec.index_of_primitivity = best->primitivity;

  // Revalidate from scratch.
  const auto again = score_candidate(rec.best, cfg);
  rec.revalidated = again && std::abs(again->score - rec.score) <= std::max(cfg.ce_tol, 1e-12);
  return rec;
}

enum class Feasibility { FoundGdn, NoneFound };

struct FeasibilityVerdict {
  Feasibility verdict = Feasibility::NoneFound;
  std::optional<RealMatrix> witness;
  int trials = 0;
};

/// Samples matrices on the pattern until one is GDN. Never claims
/// infeasibility, only NoneFound after `trials` samples.
inline FeasibilityVerdict pattern_feasibility(const BoolPattern& p, int trials, std::uint64_t seed,
                                              const ToleranceConfig& tol = {}) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FeasibilityVerdict out;
  for (int t = 0; t < trials; ++t) {
    ++out.trials;
    // Alternate narrow and wide magnitude ranges; wide ranges make the
    // diagonal dominate and the spectrum real.
    const double decades = (t % 2 == 0) ? 1.0 + 2.0 * u(rng) : 3.0 + 4.0 * u(rng);
    RealMatrix a = detail::sample_on_pattern(p, 1.0, std::pow(10.0, decades), rng);
    if (validate_gdn(a, tol).is_gdn) {
      out.verdict = Feasibility::FoundGdn;
      out.witness = std::move(a);
      return out;
    }
  }
  return out;
}

}  // namespace gdnce
