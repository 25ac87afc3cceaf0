#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bondle/affine.hpp"
#include "bondle/algebra.hpp"
#include "bondle/cluster.hpp"
#include "bondle/json_io.hpp"
#include "bondle/moves.hpp"
#include "bondle/solver.hpp"
#include "bondle/statesum.hpp"
#include "bondle/weights.hpp"

namespace bondle {

namespace cli_detail {

// "n=15,a=4,b=3,m=6" (m optional).
inline FiniteBondle parse_affine_spec(const std::string& spec) {
  std::map<std::string, std::int64_t> kv;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--affine", "expected key=value, got '" + item + "'");
    const auto key = item.substr(0, eq);
    if (key != "n" && key != "a" && key != "b" && key != "m") throw CLI::ValidationError("--affine", "unknown key '" + key + "'");
    try {
      kv[key] = std::stoll(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--affine", "value of '" + key + "' is not an integer");
    }
  }
  for (const char* k : {"n", "a", "b"})
    if (!kv.count(k)) throw CLI::ValidationError("--affine", std::string("missing '") + k + "'");
  if (kv.count("m")) return affine_bondle(kv["n"], kv["a"], kv["b"], kv["m"]);
  if (!odd_semiprime(kv["n"])) throw Error("n = " + std::to_string(kv["n"]) + " is not a product of two distinct odd primes");
  return affine_singquandle(kv["n"], kv["a"], kv["b"]);
}

inline std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

inline std::string witness_text(const std::vector<Element>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

inline void print_report(std::ostream& out, const AxiomReport& R, const std::string& what, std::size_t shown) {
  if (R.passed) {
    out << "PASS " << what << "\n";
    return;
  }
  out << "FAIL " << what << " (" << R.violations.size() << " violations)\n";
  std::map<std::string, std::size_t> per_axiom;
  for (const auto& v : R.violations) ++per_axiom[v.axiom];
  for (const auto& [ax, k] : per_axiom) out << "  " << ax << ": " << k << "\n";
  for (std::size_t i = 0; i < std::min(shown, R.violations.size()); ++i)
    out << "  " << R.violations[i].axiom << " at " << witness_text(R.violations[i].witness) << "\n";
}

inline void save_json(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  f << j.dump(2) << "\n";
}

template <typename F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace cli_detail

// Exit codes: 0 success, 1 domain error or failed check, 2 usage error.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace cli_detail;
  CLI::App app{"Bondle colorings and state sums of folded-chain diagrams", "bondle"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bondle 0.1.0");

  bool as_json = false;
  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", as_json, "Machine-readable output"); };
  std::string bondle_path, weights_path;
  int exit_code = 0;

  // check
  auto* check = app.add_subcommand("check", "Verify quandle / singquandle / bondle axioms");
  std::string affine_spec, level = "auto", save_path;
  std::size_t shown = 10;
  auto* grp = check->add_option_group("source");
  grp->add_option("--affine", affine_spec, "Affine parameters n=..,a=..,b=..[,m=..]");
  grp->add_option("--bondle", bondle_path, "Bondle JSON file")->check(CLI::ExistingFile);
  grp->require_option(1);
  check->add_option("--level", level, "Axioms to check")->check(CLI::IsMember({"auto", "quandle", "singquandle", "bondle"}));
  check->add_option("--show", shown, "Violations to list");
  check->add_option("--save", save_path, "Write the bondle as JSON");
  add_json(check);

  // weights-check
  auto* wcheck = app.add_subcommand("weights-check", "Verify Boltzmann weight conditions");
  std::vector<std::int64_t> constant;
  wcheck->add_option("--bondle", bondle_path, "Bondle JSON file")->required()->check(CLI::ExistingFile);
  auto* wgrp = wcheck->add_option_group("weights");
  wgrp->add_option("--weights", weights_path, "Weights JSON file")->check(CLI::ExistingFile);
  wgrp->add_option("--constant", constant, "Constant weights m a b (phi = 0, phi1 = a, phi2 = b)")->expected(3)->delimiter(',');
  wgrp->require_option(1);
  wcheck->add_option("--show", shown, "Violations to list");
  wcheck->add_option("--save", save_path, "Write the weights as JSON");
  add_json(wcheck);

  // color
  auto* color = app.add_subcommand("color", "Count or enumerate colorings");
  std::string diagram_path, engine = "backtrack";
  bool enumerate = false;
  std::size_t limit = 100;
  color->add_option("diagram", diagram_path, "Diagram (.bgc)")->required()->check(CLI::ExistingFile);
  color->add_option("--bondle", bondle_path, "Bondle JSON file")->required()->check(CLI::ExistingFile);
  color->add_flag("--enumerate", enumerate, "List colorings");
  color->add_option("--limit", limit, "Maximum colorings listed");
  color->add_option("--engine", engine, "Counting engine")->check(CLI::IsMember({"backtrack", "affine", "both"}));
  add_json(color);

  // statesum
  auto* ssum = app.add_subcommand("statesum", "Boltzmann-weight state sum");
  ssum->add_option("diagram", diagram_path, "Diagram (.bgc)")->required()->check(CLI::ExistingFile);
  ssum->add_option("--bondle", bondle_path, "Bondle JSON file")->required()->check(CLI::ExistingFile);
  ssum->add_option("--weights", weights_path, "Weights JSON file")->required()->check(CLI::ExistingFile);
  add_json(ssum);

  // cluster
  auto* clus = app.add_subcommand("cluster", "Two-stage clustering by count, then state sum");
  std::vector<std::string> diagram_paths;
  clus->add_option("diagrams", diagram_paths, "Diagrams (.bgc)")->required()->check(CLI::ExistingFile);
  clus->add_option("--bondle", bondle_path, "Bondle JSON file")->required()->check(CLI::ExistingFile);
  clus->add_option("--weights", weights_path, "Weights JSON file")->required()->check(CLI::ExistingFile);
  add_json(clus);

  // moves
  auto* moves = app.add_subcommand("moves", "Randomized Reidemeister invariance test");
  std::size_t trials = 100, depth = 1;
  std::uint64_t seed = 0;
  moves->add_option("diagram", diagram_path, "Diagram (.bgc)")->required()->check(CLI::ExistingFile);
  moves->add_option("--bondle", bondle_path, "Bondle JSON file")->required()->check(CLI::ExistingFile);
  moves->add_option("--weights", weights_path, "Weights JSON file (also compare state sums)")->check(CLI::ExistingFile);
  moves->add_option("--trials", trials, "Number of random trials");
  moves->add_option("--depth", depth, "Moves applied per trial")->check(CLI::Range(1, 16));
  moves->add_option("--seed", seed, "Random seed");
  add_json(moves);

  // search
  auto* search = app.add_subcommand("search", "Search affine bondles or weights");
  search->require_subcommand(1);
  auto* saff = search->add_subcommand("affine", "Affine bondles accepted by the constructor");
  std::int64_t n_arg = 15, m_arg = 2;
  bool verify = false;
  saff->add_option("--n", n_arg, "Carrier size")->check(CLI::PositiveNumber);
  saff->add_flag("--verify", verify, "Run check_bondle on each");
  add_json(saff);
  auto* sw = search->add_subcommand("weights", "Weights with phi = 0");
  std::uint64_t budget = 1000000;
  std::string family = "general";
  bool list_solutions = false;
  sw->add_option("--bondle", bondle_path, "Bondle JSON file")->required()->check(CLI::ExistingFile);
  sw->add_option("--m", m_arg, "Target group order")->check(CLI::PositiveNumber);
  sw->add_option("--budget", budget, "Maximum candidates examined");
  sw->add_option("--family", family, "Table family")->check(CLI::IsMember({"general", "row-constant"}));
  sw->add_flag("--solutions", list_solutions, "Include the solutions (JSON only)");
  add_json(sw);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) {
      const auto B = affine_spec.empty() ? load_bondle(bondle_path) : parse_affine_spec(affine_spec);
      if (!save_path.empty()) save_json(save_path, to_json(B));
      if (level == "auto") level = B.r3 ? "bondle" : "singquandle";
      if (level == "bondle" && !B.r3) throw Error("bondle axioms need r3, which this structure lacks");
      const auto R = level == "quandle" ? check_quandle(B) : level == "singquandle" ? check_singquandle(B) : check_bondle(B);
      if (as_json)
        out << json{{"level", level}, {"n", B.n}, {"report", to_json(R)}}.dump(2) << "\n";
      else
        print_report(out, R, level + " axioms", shown);
      return R.passed ? 0 : 1;
    }

    if (wcheck->parsed()) {
      const auto B = load_bondle(bondle_path);
      const auto W = weights_path.empty() ? constant_weights(B, constant[0], constant[1], constant[2]) : load_weights(weights_path);
      if (!save_path.empty()) save_json(save_path, to_json(W));
      const auto R = check_weights(B, W);
      if (as_json)
        out << json{{"m", W.m}, {"report", to_json(R)}}.dump(2) << "\n";
      else
        print_report(out, R, "weight conditions", shown);
      return R.passed ? 0 : 1;
    }

    if (color->parsed()) {
      const auto D = load_bgc(diagram_path);
      const auto B = load_bondle(bondle_path);
      json j{{"diagram", stem(diagram_path)}, {"engine", engine}};
      std::optional<Count> bt, af;
      if (engine != "affine") j["timings_ms"]["backtrack"] = time_ms([&] { bt = count_colorings(D, B); });
      if (engine != "backtrack") j["timings_ms"]["affine"] = time_ms([&] { af = count_colorings_affine(D, B); });
      const Count count = bt ? *bt : *af;
      j["colorings"] = count_json(count);
      if (bt && af) {
        j["agree"] = *bt == *af;
        if (*bt != *af) {
          j["backtrack"] = count_json(*bt);
          j["affine"] = count_json(*af);
          exit_code = 1;
        }
      }
      std::optional<Enumeration> en;
      if (enumerate) en = enumerate_colorings(D, B, limit);
      if (as_json) {
        if (en) j["enumeration"] = {{"colorings", en->colorings}, {"truncated", en->truncated}};
        out << j.dump(2) << "\n";
      } else {
        if (bt && af) {
          out << "backtrack: " << *bt << " (" << j["timings_ms"]["backtrack"].get<double>() << " ms)\n";
          out << "affine: " << *af << " (" << j["timings_ms"]["affine"].get<double>() << " ms)\n";
          out << (*bt == *af ? "engines agree" : "ENGINES DISAGREE") << "\n";
        } else {
          out << "colorings: " << count << "\n";
        }
        if (en) {
          for (const auto& c : en->colorings) {
            for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
            out << "\n";
          }
          if (en->truncated) out << "(truncated at " << limit << ")\n";
        }
      }
      return exit_code;
    }

    if (ssum->parsed()) {
      const auto S = state_sum(load_bgc(diagram_path), load_bondle(bondle_path), load_weights(weights_path));
      if (as_json)
        out << to_json(S).dump(2) << "\n";
      else
        out << render(S) << "  (" << S.total() << " colorings)\n";
      return 0;
    }

    if (clus->parsed()) {
      const auto B = load_bondle(bondle_path);
      const auto W = load_weights(weights_path);
      std::vector<NamedDiagram> ds;
      for (const auto& p : diagram_paths) ds.push_back({stem(p), load_bgc(p)});
      const auto R = cluster(ds, B, W);
      if (as_json) {
        out << to_json(R).dump(2) << "\n";
        return 0;
      }
      out << "stage 1 (coloring count):\n";
      for (const auto& [count, names] : R.stage1) {
        out << "  " << count << ":";
        for (const auto& n : names) out << " " << n;
        out << "\n";
      }
      out << "stage 2 (state sum):\n";
      for (const auto& [k, names] : R.stage2) {
        out << "  " << render(k.second) << ":";
        for (const auto& n : names) out << " " << n;
        out << "\n";
      }
      for (const auto& [a, b] : R.distinguished_pairs) out << "distinguished only by state sum: " << a << " " << b << "\n";
      return 0;
    }

    if (moves->parsed()) {
      const auto D = load_bgc(diagram_path);
      const auto B = load_bondle(bondle_path);
      std::optional<BoltzmannWeights> W;
      if (!weights_path.empty()) W = load_weights(weights_path);
      const auto base_count = count_colorings(D, B);
      std::optional<StateSum> base_sum;
      if (W) base_sum = state_sum(D, B, *W);
      std::mt19937_64 rng(seed);
      json failures = json::array();
      for (std::size_t t = 0; t < trials; ++t) {
        auto cur = D;
        std::string path;
        for (std::size_t k = 0; k < depth; ++k) {
          auto mv = random_move(cur, rng);
          cur = std::move(mv.result);
          path += (k ? " " : "") + mv.description;
        }
        const auto c = count_colorings(cur, B);
        bool ok = c == base_count;
        json f{{"trial", t}, {"moves", path}, {"colorings", count_json(c)}};
        if (W) {
          const auto S = state_sum(cur, B, *W);
          ok = ok && S == *base_sum;
          f["state_sum"] = render(S);
        }
        if (!ok) failures.push_back(f);
      }
      json j{{"diagram", stem(diagram_path)}, {"trials", trials}, {"depth", depth}, {"seed", seed},
             {"colorings", count_json(base_count)}, {"invariant", failures.empty()}, {"failures", failures}};
      if (base_sum) j["state_sum"] = render(*base_sum);
      if (as_json) {
        out << j.dump(2) << "\n";
      } else {
        out << (failures.empty() ? "PASS" : "FAIL") << " " << trials << " trials of " << depth << " move(s), seed " << seed
            << ": colorings " << base_count;
        if (base_sum) out << ", state sum " << render(*base_sum);
        out << "\n";
        for (const auto& f : failures) out << "  trial " << f["trial"] << " (" << f["moves"].get<std::string>() << ") changed the invariant\n";
      }
      return failures.empty() ? 0 : 1;
    }

    if (saff->parsed()) {
      const auto pq = odd_semiprime(n_arg);
      if (!pq) throw Error("n = " + std::to_string(n_arg) + " is not a product of two distinct odd primes");
      json rows = json::array();
      std::size_t failed = 0;
      for (std::int64_t a = 1; a < n_arg; ++a) {
        if (!inverse_mod(a, n_arg)) continue;
        for (std::int64_t b = 0; b < n_arg; ++b)
          for (std::int64_t m = 0; m < n_arg; ++m) {
            if (!affine_r3_admissible(pq->first, pq->second, m)) continue;
            json r{{"a", a}, {"b", b}, {"m", m}};
            if (verify) {
              const bool ok = check_bondle(affine_bondle(n_arg, a, b, m)).passed;
              r["passed"] = ok;
              failed += !ok;
            }
            rows.push_back(r);
          }
      }
      if (as_json) {
        out << json{{"n", n_arg}, {"bondles", rows}}.dump(2) << "\n";
      } else {
        out << rows.size() << " affine bondles on Z_" << n_arg;
        if (verify) out << ", " << rows.size() - failed << " pass check_bondle";
        out << "\n";
        for (const auto& r : rows) {
          out << "  a=" << r["a"] << " b=" << r["b"] << " m=" << r["m"];
          if (verify) out << (r["passed"].get<bool>() ? "  PASS" : "  FAIL");
          out << "\n";
        }
      }
      return failed ? 1 : 0;
    }

    if (sw->parsed()) {
      const auto B = load_bondle(bondle_path);
      const auto R = search_weights(B, m_arg, budget, family == "general" ? WeightFamily::general : WeightFamily::row_constant);
      json j{{"m", m_arg}, {"family", family}, {"budget", budget}, {"found", R.solutions.size()}, {"truncated", R.truncated},
             {"total", count_json(R.total)}, {"phi1_classes", R.phi1_classes}, {"phi2_classes", R.phi2_classes}};
      if (as_json) {
        if (list_solutions) {
          j["solutions"] = json::array();
          for (const auto& W : R.solutions) j["solutions"].push_back(to_json(W));
        }
        out << j.dump(2) << "\n";
      } else {
        out << R.solutions.size() << " weight triples found (" << R.total << " exist, " << R.phi1_classes << " phi1 classes, "
            << R.phi2_classes << " phi2 classes)" << (R.truncated ? ", truncated by budget" : "") << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace bondle
