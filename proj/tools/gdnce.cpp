// gdnce: command-line front end for GDN matrix analysis.
//
// Exit status: 0 success, 2 negative verdict, 64 usage or parse error,
// 70 numerical failure. Results go to stdout; errors go to stderr as JSON.

#include "gdnce/bounds.hpp"
#include "gdnce/ce_estimator.hpp"
#include "gdnce/constructions.hpp"
#include "gdnce/io.hpp"
#include "gdnce/primitivity.hpp"
#include "gdnce/search.hpp"
#include "gdnce/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace gdnce;

namespace {

constexpr int kUsage = 64;

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || *end != '\0') throw Error(ErrorCode::ParseError, "bad number list '" + s + "'");
    out.push_back(v);
  }
  return out;
}

/// "i,j" pairs, 1-based, separated by ';' or given as repeated options.
std::vector<std::pair<int, int>> parse_entries(const std::vector<std::string>& specs) {
  std::vector<std::pair<int, int>> out;
  for (const auto& spec : specs) {
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ';')) {
      const auto v = split_doubles(item);
      if (v.size() != 2 || v[0] != static_cast<int>(v[0]) || v[1] != static_cast<int>(v[1])) {
        throw Error(ErrorCode::ParseError, "entries must look like i,j");
      }
      out.emplace_back(static_cast<int>(v[0]) - 1, static_cast<int>(v[1]) - 1);
    }
  }
  return out;
}

struct Globals {
  ToleranceConfig tol;
};

void add_tolerance_flags(CLI::App& app, Globals& g) {
  auto* grp = app.add_option_group("Tolerances");
  grp->add_option("--entry-tol", g.tol.entry_tol, "Negative entries above -entry_tol*max|a| are clamped")
      ->capture_default_str();
  grp->add_option("--eig-tol", g.tol.eig_tol, "Eigenvalues above -eig_tol*rho are clamped to 0")
      ->capture_default_str();
  grp->add_option("--merge-tol", g.tol.merge_tol, "Eigenvalue merge distance, relative to max(1, rho)")
      ->capture_default_str();
  grp->add_option("--imag-tol", g.tol.imag_tol, "Largest imaginary part treated as real, relative to rho")
      ->capture_default_str();
  grp->add_option("--isolation-tol", g.tol.isolation_tol, "Root bracket width")->capture_default_str();
  grp->add_option("--touch-tol", g.tol.touch_tol, "Relative depth below which a sign excursion is a touch")
      ->capture_default_str();
  grp->add_option("--cond-limit", g.tol.cond_limit, "Largest accepted eigenvector condition number")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical exponents and continuous powers of GDN matrices"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  add_tolerance_flags(app, g);

  std::string file;
  std::function<int()> action;

  auto* validate = app.add_subcommand("validate", "Check the GDN conditions (exit 2 if not GDN)");
  validate->add_option("matrix", file, "Matrix file (JSON or CSV)")->required();
  validate->callback([&] {
    action = [&] {
      const auto rep = validate_gdn(read_matrix_file(file), g.tol);
      print(to_json(rep));
      return rep.is_gdn ? 0 : 2;
    };
  });

  double ce_tol = 1e-6;
  bool all_entries = false;
  auto* ce = app.add_subcommand("ce", "Critical exponent bracket and per-entry negativity intervals");
  ce->add_option("matrix", file, "Matrix file (JSON or CSV)")->required();
  ce->add_option("--tol", ce_tol, "Bracket width")->capture_default_str();
  ce->add_flag("--all-entries", all_entries, "Report entries without negativity too");
  ce->callback([&] {
    action = [&] {
      CeOptions opt;
      opt.tol = ce_tol;
      opt.tolerances = g.tol;
      opt.tolerances.isolation_tol = ce_tol;
      print(to_json(estimate_ce(read_matrix_file(file), opt), all_entries));
      return 0;
    };
  });

  double alpha = 1.0;
  auto* power_cmd = app.add_subcommand("power", "A^alpha as a matrix JSON");
  power_cmd->add_option("matrix", file, "Matrix file (JSON or CSV)")->required();
  power_cmd->add_option("--alpha", alpha, "Exponent, > 0")->required();
  power_cmd->callback([&] {
    action = [&] {
      print(to_json(power(decompose(read_matrix_file(file), g.tol), alpha)));
      return 0;
    };
  });

  std::vector<std::string> entry_specs;
  std::string window_spec;
  double step = 0.01;
  auto* traj = app.add_subcommand("trajectory", "CSV of entries of A^alpha along a grid");
  traj->add_option("matrix", file, "Matrix file (JSON or CSV)")->required();
  traj->add_option("--entries", entry_specs, "1-based entries, e.g. 1,3 or \"1,3;2,2\"")->required();
  traj->add_option("--window", window_spec, "lo,hi (default: step, k(n)+1)");
  traj->add_option("--step", step, "Grid step")->capture_default_str();
  traj->callback([&] {
    action = [&] {
      const RealMatrix a = read_matrix_file(file);
      Window w{step, theorem_upper_bound(static_cast<int>(a.rows())) + 1.0};
      if (!window_spec.empty()) {
        const auto v = split_doubles(window_spec);
        if (v.size() != 2) throw Error(ErrorCode::ParseError, "--window needs lo,hi");
        w = {v[0], v[1]};
      }
      const EntryPolyMatrix epm(decompose(a, g.tol));
      std::cout << trajectory(epm, parse_entries(entry_specs), w, step);
      return 0;
    };
  });

  auto* prim = app.add_subcommand("primitivity", "Index of primitivity and related bounds (exit 2 if not primitive)");
  prim->add_option("matrix", file, "Matrix file (JSON or CSV)")->required();
  prim->callback([&] {
    action = [&] {
      const RealMatrix a = read_matrix_file(file);
      const auto p = BoolPattern::of(a);
      const int n = p.n();
      const auto k = index_of_primitivity(p);
      Json out{{"n", n}, {"pattern", to_json(p)}};
      out["index_of_primitivity"] = k ? Json(*k) : Json(nullptr);
      out["wielandt_bound"] = wielandt_bound(n);
      out["gdn_primitivity_cap"] = gdn_primitivity_cap(n);
      try {
        out["diagonal_support_bound"] = diagonal_support_bound(p);
      } catch (const Error&) {
        out["diagonal_support_bound"] = nullptr;
      }
      try {
        out["trace_necessities"] = to_json(gdn_trace_necessities(a, g.tol));
      } catch (const Error& e) {
        out["trace_necessities"] = nullptr;
      }
      Json blocks = Json::array();
      if (const auto bs = reducibility_blocks(a)) {
        for (const auto& b : bs->blocks) {
          Json idx = Json::array();
          for (int v : b) idx.push_back(v + 1);
          blocks.push_back(idx);
        }
      }
      out["reducible_blocks"] = blocks;
      print(out);
      return k ? 0 : 2;
    };
  });

  int bounds_n = 0;
  std::string bounds_matrix;
  bool bounds_json_out = false;
  auto* bounds = app.add_subcommand("bounds", "Upper bound k(n), or the sign change matrix of a matrix file");
  auto* bn = bounds->add_option("--n", bounds_n, "Matrix size");
  auto* bm = bounds->add_option("--matrix", bounds_matrix, "Matrix file for the sign change matrix");
  bn->excludes(bm);
  bounds->add_flag("--json", bounds_json_out, "Full JSON report for --n");
  bounds->callback([&] {
    action = [&] {
      if (!bounds_matrix.empty()) {
        const RealMatrix a = read_matrix_file(bounds_matrix);
        const auto sd = decompose(a, g.tol);
        const EntryPolyMatrix epm(sd);
        const auto w = sign_change_matrix(epm);
        const int n = w.n;
        Json caps = Json::array();
        for (int i = 0; i < n; ++i) {
          Json row = Json::array();
          for (int j = 0; j < n; ++j) row.push_back(component_cap(w(i, j), i == j));
          caps.push_back(row);
        }
        Json out = bounds_json(std::max(n, 2));
        out["sign_changes"] = to_json(w);
        out["component_caps"] = caps;
        print(out);
        return 0;
      }
      if (bounds_n < 1) throw Error(ErrorCode::InvalidArgument, "bounds needs --n >= 1 or --matrix");
      if (bounds_json_out) {
        print(bounds_json(bounds_n));
      } else {
        std::cout << format17(theorem_upper_bound(bounds_n)) << '\n';
      }
      return 0;
    };
  });

  std::string family = "paper", name, d_spec;
  int cn = 3;
  double eps = 0.0;
  std::uint64_t cseed = 0;
  bool have_seed = false;
  auto* construct = app.add_subcommand("construct", "Emit a named paper matrix or an odd-n construction");
  construct->add_option("--family", family, "paper or prop44")->check(CLI::IsMember({"paper", "prop44"}))
      ->capture_default_str();
  construct->add_option("--name", name, "Paper matrix: ce4 ce5 ce6 mip4 mip5 mip6 hadamard3");
  construct->add_option("--n", cn, "Odd size for prop44")->capture_default_str();
  construct->add_option("--d", d_spec, "Diagonal d_1,...,d_{n-1}");
  construct->add_option("--eps", eps, "Corner and superdiagonal value");
  construct->add_option("--seed", cseed, "Draw random parameters instead of --d/--eps")
      ->each([&](const std::string&) { have_seed = true; });
  construct->callback([&] {
    action = [&] {
      if (family == "paper") {
        if (name.empty()) throw Error(ErrorCode::InvalidArgument, "--family paper needs --name");
        print(to_json(paper_matrix(name)));
        return 0;
      }
      Prop44Params p;
      if (have_seed) {
        std::mt19937_64 rng(cseed);
        p = random_prop44_params(cn, rng);
      } else {
        p.n = cn;
        if (!d_spec.empty()) p.d = split_doubles(d_spec);
        p.eps = eps;
      }
      p.check();
      const RealMatrix a = prop44_matrix(p);
      const auto v = verify_prop44(a, p, g.tol);
      Json out = to_json(a);
      out["params"] = to_json(p);
      out["verification"] = to_json(v);
      print(out);
      return v.ok() ? 0 : 2;
    };
  });

  std::string config_file, target = "max_ce";
  int sn = 0;
  long budget = 0;
  std::uint64_t sseed = 0;
  bool have_sseed = false;
  auto* search_cmd = app.add_subcommand("search", "Seeded hill climbing for large CE or index of primitivity");
  search_cmd->add_option("config", config_file, "JSON search config");
  search_cmd->add_option("--n", sn, "Matrix size (overrides config)");
  search_cmd->add_option("--target", target, "max_ce or max_mip")->check(CLI::IsMember({"max_ce", "max_mip"}));
  search_cmd->add_option("--seed", sseed, "Seed (required unless in config)")
      ->each([&](const std::string&) { have_sseed = true; });
  search_cmd->add_option("--budget", budget, "Candidate evaluations");
  search_cmd->callback([&] {
    action = [&] {
      Json cfg_json = Json::object();
      if (!config_file.empty()) {
        std::ifstream in(config_file);
        if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + config_file + "'");
        try {
          cfg_json = Json::parse(in);
        } catch (const Json::exception& e) {
          throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
        }
      }
      if (sn > 0) cfg_json["n"] = sn;
      if (have_sseed) cfg_json["seed"] = sseed;
      if (budget > 0) cfg_json["budget"] = budget;
      if (search_cmd->count("--target") > 0) cfg_json["target"] = target;
      if (!cfg_json.contains("tolerances")) cfg_json["tolerances"] = to_json(g.tol);
      const auto cfg = search_config_from_json(cfg_json);
      print(to_json(search(cfg)));
      return 0;
    };
  });

  double alpha_max = 50.0;
  int count = 1000;
  auto* had = app.add_subcommand("hadamard", "Hadamard powers of hadamard3: min eigenvalue stays negative");
  had->add_option("--alpha-max", alpha_max, "Largest alpha sampled")->capture_default_str();
  had->add_option("--count", count, "Number of samples in (1, alpha_max]")->capture_default_str();
  had->callback([&] {
    action = [&] {
      const auto rep = hadamard_no_ce_demo(alpha_max, count);
      print(to_json(rep));
      return rep.ok() ? 0 : 2;
    };
  });

  auto* vp = app.add_subcommand("verify-paper", "Run every reproduction check and print a pass/fail table");
  vp->callback([&] {
    action = [&] {
      bool all = true;
      for (const auto& r : verify_paper()) {
        std::printf("[%2d] %s  %-s  (%s; %.1fs)\n", r.id, r.pass ? "PASS" : "FAIL", r.claim.c_str(),
                    r.detail.c_str(), r.seconds);
        all = all && r.pass;
      }
      return all ? 0 : 2;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << error_json(ErrorCode::ParseError, e.what()).dump() << '\n';
    return kUsage;
  }
  try {
    g.tol.check();
    return action ? action() : kUsage;
  } catch (const Error& e) {
    std::cerr << error_json(e.code(), e.what()).dump() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << error_json(ErrorCode::NumericalFailure, e.what()).dump() << '\n';
    return 70;
  }
}
