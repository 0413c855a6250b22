// Matrix files (JSON or CSV) and JSON renderings of the reports.
#pragma once

#include "gdnce/bounds.hpp"
#include "gdnce/ce_estimator.hpp"
#include "gdnce/constructions.hpp"
#include "gdnce/primitivity.hpp"
#include "gdnce/search.hpp"
#include "gdnce/spectral.hpp"

#include <json.hpp>

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace gdnce {

using Json = nlohmann::ordered_json;

/// Process exit status for an error code: 64 usage or parse problems, 2 a
/// negative verdict about the input, 70 numerical trouble.
inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidMatrix:
    case ErrorCode::UnknownName:
    case ErrorCode::WindowInvalid:
      return 64;
    case ErrorCode::NotGdn:
    case ErrorCode::NotDiagonalizable:
    case ErrorCode::ComplexSpectrum:
    case ErrorCode::NegativeEigenvalue:
    case ErrorCode::NegativeEntry:
    case ErrorCode::NotApplicable:
    case ErrorCode::PreconditionViolated:
    case ErrorCode::VerificationFailed:
    case ErrorCode::NoFeasibleCandidate:
    case ErrorCode::Falsification:
      return 2;
    default:
      return 70;
  }
}

inline Json error_json(ErrorCode code, const std::string& message) {
  return Json{{"error", std::string(to_string(code))}, {"message", message}};
}

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline double parse_double(const std::string& field, int row, int col) {
  const std::string t = trim(field);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    throw Error(ErrorCode::ParseError, "bad number '" + t + "' at row " + std::to_string(row) +
                                           ", column " + std::to_string(col));
  }
  return v;
}

inline RealMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("data")) {
    throw Error(ErrorCode::ParseError, "matrix JSON needs fields 'n' and 'data'");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long>() < 1) {
    throw Error(ErrorCode::ParseError, "'n' must be a positive integer");
  }
  const long n = j["n"].get<long>();
  const auto& data = j["data"];
  if (!data.is_array() || static_cast<long>(data.size()) != n * n) {
    throw Error(ErrorCode::ParseError, "'data' must hold n*n numbers");
  }
  RealMatrix a(n, n);
  for (long k = 0; k < n * n; ++k) {
    if (!data[k].is_number()) throw Error(ErrorCode::ParseError, "'data' entries must be numbers");
    a(k / n, k % n) = data[k].get<double>();
  }
  return a;
}

}  // namespace detail

/// Parses either `{"n": .., "data": [row-major]}` or n lines of n
/// comma-separated values. Throws ParseError.
inline RealMatrix parse_matrix(const std::string& text) {
  const std::string body = detail::trim(text);
  if (body.empty()) throw Error(ErrorCode::ParseError, "empty matrix input");
  if (body.front() == '{') {
    Json j;
    try {
      j = Json::parse(body);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    return detail::matrix_from_json(j);
  }
  std::vector<std::vector<double>> rows;
  std::istringstream in(body);
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    std::vector<double> row;
    std::string field;
    std::istringstream fields(line);
    while (std::getline(fields, field, ','))
      row.push_back(detail::parse_double(field, static_cast<int>(rows.size()) + 1,
                                         static_cast<int>(row.size()) + 1));
    if (!line.empty() && line.back() == ',') {
      throw Error(ErrorCode::ParseError, "trailing comma in row " + std::to_string(rows.size() + 1));
    }
    rows.push_back(std::move(row));
  }
  const auto n = rows.size();
  for (const auto& r : rows) {
    if (r.size() != n) throw Error(ErrorCode::ParseError, "CSV matrix is not square");
  }
  RealMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = rows[r][c];
  return a;
}

inline RealMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_matrix(ss.str());
}

inline Json to_json(const RealMatrix& a) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) data.push_back(a(r, c));
  return Json{{"n", a.rows()}, {"data", std::move(data)}};
}

inline Json to_json(const ToleranceConfig& t) {
  return Json{{"entry_tol", t.entry_tol},         {"eig_tol", t.eig_tol},
              {"merge_tol", t.merge_tol},         {"imag_tol", t.imag_tol},
              {"isolation_tol", t.isolation_tol}, {"touch_tol", t.touch_tol},
              {"cond_limit", t.cond_limit},       {"idempotence_tol", t.idempotence_tol},
              {"reconstruction_tol", t.reconstruction_tol}};
}

/// Overrides the fields present in `j`; unknown keys are an error.
inline ToleranceConfig tolerances_from_json(const Json& j, ToleranceConfig t = {}) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "tolerances must be an object");
  for (const auto& [key, v] : j.items()) {
    if (!v.is_number()) throw Error(ErrorCode::ParseError, "tolerance '" + key + "' is not a number");
    const double x = v.get<double>();
    if (key == "entry_tol") t.entry_tol = x;
    else if (key == "eig_tol") t.eig_tol = x;
    else if (key == "merge_tol") t.merge_tol = x;
    else if (key == "imag_tol") t.imag_tol = x;
    else if (key == "isolation_tol") t.isolation_tol = x;
    else if (key == "touch_tol") t.touch_tol = x;
    else if (key == "cond_limit") t.cond_limit = x;
    else if (key == "idempotence_tol") t.idempotence_tol = x;
    else if (key == "reconstruction_tol") t.reconstruction_tol = x;
    else throw Error(ErrorCode::ParseError, "unknown tolerance '" + key + "'");
  }
  t.check();
  return t;
}

inline Json to_json(const GdnReport& r) {
  return Json{{"is_gdn", r.is_gdn},
              {"min_entry", r.min_entry},
              {"min_eigenvalue_real", r.min_eigenvalue_real},
              {"max_eigenvalue_imag_abs", r.max_eigenvalue_imag_abs},
              {"diag_cond", r.diag_cond},
              {"irreducible", r.irreducible},
              {"eigenvalues", r.eigenvalues},
              {"failures", r.failures},
              {"warnings", r.warnings},
              {"tolerances", to_json(r.tolerances)}};
}

inline Json to_json(Window w) { return Json{{"lo", w.lo}, {"hi", w.hi}}; }

inline Json to_json(const IsolatedRoot& r) {
  return Json{{"lo", r.lo},
              {"hi", r.hi},
              {"parity", r.parity == RootParity::Crossing ? "crossing" : "touching"}};
}

/// Entry indices are 1-based in every report.
inline Json to_json(const NegativityProfile& p, bool all_entries = false) {
  Json entries = Json::array();
  for (const auto& e : p.entries) {
    if (!all_entries && e.intervals.empty()) continue;
    Json ivs = Json::array();
    for (const auto& iv : e.intervals) {
      ivs.push_back(Json{{"left", to_json(iv.left)},
                         {"right", to_json(iv.right)},
                         {"starts_at_window", iv.starts_at_window},
                         {"ends_at_window", iv.ends_at_window}});
    }
    Json je{{"i", e.i + 1},
            {"j", e.j + 1},
            {"sign_changes", e.sign_changes},
            {"crossings", e.crossings},
            {"touchings", e.touchings},
            {"components_beyond_one", e.components_beyond_one}};
    je["cap"] = e.cap ? Json(*e.cap) : Json(nullptr);
    je["intervals"] = std::move(ivs);
    entries.push_back(std::move(je));
  }
  Json out{{"n", p.n},
           {"window", to_json(p.window)},
           {"invertible", p.invertible},
           {"cond_s", p.cond_s},
           {"precision_digits", p.precision_digits},
           {"eigenvalues", p.eigenvalues}};
  out["bracket"] = p.bracket ? to_json(*p.bracket) : Json(nullptr);
  out["witness"] = p.witness ? Json::array({p.witness->first + 1, p.witness->second + 1})
                             : Json(nullptr);
  out["upper_bound"] = theorem_upper_bound(p.n);
  out["flags"] = p.flags;
  out["bracket_tol"] = p.options.tol;
  out["tolerances"] = to_json(p.options.tolerances);
  out["entries"] = std::move(entries);
  return out;
}

/// Rows of '0'/'1' characters.
inline Json to_json(const BoolPattern& p) {
  Json rows = Json::array();
  for (int i = 0; i < p.n(); ++i) {
    std::string r;
    for (int j = 0; j < p.n(); ++j) r += p(i, j) ? '1' : '0';
    rows.push_back(r);
  }
  return rows;
}

inline BoolPattern pattern_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::ParseError, "pattern must be a list of rows");
  const int n = static_cast<int>(j.size());
  RealMatrix a = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_string() || static_cast<int>(j[i].get<std::string>().size()) != n) {
      throw Error(ErrorCode::ParseError, "pattern rows must be strings of n '0'/'1' characters");
    }
    const auto row = j[i].get<std::string>();
    for (int k = 0; k < n; ++k) {
      if (row[k] != '0' && row[k] != '1') throw Error(ErrorCode::ParseError, "pattern characters must be 0 or 1");
      a(i, k) = row[k] == '1' ? 1.0 : 0.0;
    }
  }
  return BoolPattern::of(a);
}

inline Json to_json(const SignChangeMatrix& w) {
  Json rows = Json::array();
  for (int i = 0; i < w.n; ++i) {
    Json r = Json::array();
    for (int j = 0; j < w.n; ++j) r.push_back(w(i, j));
    rows.push_back(r);
  }
  return rows;
}

/// Bound table entries for one n.
inline Json bounds_json(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  return Json{{"n", n},
              {"upper_bound", theorem_upper_bound(n)},
              {"component_budget", component_budget(n)},
              {"dn_critical_exponent", n - 2},
              {"gdn_primitivity_cap", gdn_primitivity_cap(n)},
              {"wielandt_bound", wielandt_bound(n)}};
}

inline Json to_json(const TraceNecessities& t) {
  return Json{{"t1", t.t1},
              {"t2", t.t2},
              {"c1", t.c1},
              {"c2", t.c2},
              {"positive_diagonal", t.positive_diagonal},
              {"holds", t.holds()}};
}

inline Json to_json(const SearchConfig& c) {
  Json out{{"n", c.n},
           {"target", std::string(to_string(c.target))},
           {"seed", c.seed},
           {"budget", c.budget},
           {"entry_range", Json::array({c.entry_lo, c.entry_hi})},
           {"perturb_scale", c.perturb_scale},
           {"restart_iters", c.restart_iters},
           {"ce_tol", c.ce_tol}};
  out["pattern"] = c.pattern ? to_json(*c.pattern) : Json(nullptr);
  out["start"] = c.start ? to_json(*c.start) : Json(nullptr);
  out["tolerances"] = to_json(c.tolerances);
  return out;
}

inline SearchConfig search_config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "search config must be an object");
  SearchConfig c;
  try {
    if (!j.contains("n") || !j.contains("seed")) {
      throw Error(ErrorCode::ParseError, "search config needs 'n' and an explicit 'seed'");
    }
    for (const auto& [key, v] : j.items()) {
      if (key == "n") c.n = v.get<int>();
      else if (key == "target") c.target = search_target_from_name(v.get<std::string>());
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "budget") c.budget = v.get<long>();
      else if (key == "entry_range") {
        if (!v.is_array() || v.size() != 2) throw Error(ErrorCode::ParseError, "entry_range must be [lo, hi]");
        c.entry_lo = v[0].get<double>();
        c.entry_hi = v[1].get<double>();
      } else if (key == "perturb_scale") c.perturb_scale = v.get<double>();
      else if (key == "restart_iters") c.restart_iters = v.get<long>();
      else if (key == "ce_tol") c.ce_tol = v.get<double>();
      else if (key == "pattern") { if (!v.is_null()) c.pattern = pattern_from_json(v); }
      else if (key == "start") { if (!v.is_null()) c.start = detail::matrix_from_json(v); }
      else if (key == "tolerances") c.tolerances = tolerances_from_json(v);
      else throw Error(ErrorCode::ParseError, "unknown search config key '" + key + "'");
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad search config: ") + e.what());
  }
  c.check();
  return c;
}

inline Json to_json(const SearchRecord& r) {
  Json out{{"best", to_json(r.best)}, {"score", r.score}};
  out["ce_bracket"] = r.ce_bracket ? to_json(*r.ce_bracket) : Json(nullptr);
  out["index_of_primitivity"] = r.index_of_primitivity ? Json(*r.index_of_primitivity) : Json(nullptr);
  out["iterations"] = r.iterations;
  out["gdn_candidates"] = r.gdn_candidates;
  out["best_restart"] = r.best_restart;
  out["revalidated"] = r.revalidated;
  out["seed"] = r.config.seed;
  out["config"] = to_json(r.config);
  return out;
}

inline Json to_json(const Prop44Params& p) {
  return Json{{"n", p.n}, {"d", p.d}, {"eps", p.eps}};
}

inline Json to_json(const Prop44Verification& v) {
  Json ivs = Json::array();
  for (const auto& [lo, hi] : v.corner_intervals) ivs.push_back(Json::array({lo, hi}));
  return Json{{"ok", v.ok()},
              {"positive_spectrum", v.positive_spectrum},
              {"det", v.det},
              {"det_expected", v.det_expected},
              {"det_ok", v.det_ok},
              {"zero_corner_powers", v.zero_corner_powers},
              {"corner_negative", v.corner_negative},
              {"corner_intervals", std::move(ivs)}};
}

inline Json to_json(const HadamardDemoReport& r) {
  return Json{{"ok", r.ok()},
              {"samples", r.samples.size()},
              {"all_negative", r.all_negative},
              {"max_min_eigenvalue", r.max_min_eigenvalue},
              {"max_relative_error", r.max_relative_error},
              {"closed_form_match", r.closed_form_match}};
}

}  // namespace gdnce
