// Command-line front end: every experiment line in the suite is a single
// seeded invocation of this binary, so published runs can be reproduced
// from the shell. Exit codes: 0 success, 1 invalid input, 2 infeasibility
// or budget exhaustion (JSON error body on stderr).

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subeuclid/bnb.hpp"
#include "subeuclid/errors.hpp"
#include "subeuclid/estimator.hpp"
#include "subeuclid/h_factor.hpp"
#include "subeuclid/held_karp.hpp"
#include "subeuclid/json_io.hpp"
#include "subeuclid/local_moves.hpp"
#include "subeuclid/matching.hpp"
#include "subeuclid/mst.hpp"
#include "subeuclid/oracles.hpp"
#include "subeuclid/tour_ops.hpp"
#include "subeuclid/two_factor.hpp"

namespace {

using namespace subeuclid;

void emit(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-")
    std::cout << body << "\n";
  else
    write_file(path, body);
}

int fail_invalid(const std::string& message) {
  std::cerr << "{\"error\": \"invalid\", \"message\": \"" << message << "\"}\n";
  return 1;
}

int fail_infeasible(const std::string& message, const std::string& detail = "") {
  std::cerr << "{\"error\": \"infeasible\", \"message\": \"" << message << "\"";
  if (!detail.empty()) std::cerr << ", " << detail;
  std::cerr << "}\n";
  return 2;
}

HPattern parse_pattern_file(const std::string& path) {
  // Pattern JSON: {"size": h, "edges": [[u,v],...]} or a named shorthand.
  const std::string text = read_file(path);
  auto j = nlohmann::json::parse(text);
  HPattern p;
  p.size = j.at("size").get<int>();
  for (const auto& row : j.at("edges"))
    p.edges.push_back(make_edge(row[0].get<int>(), row[1].get<int>()));
  return p;
}

HPattern named_pattern(const std::string& name) {
  if (name == "k2" || name == "edge") return HPattern::single_edge();
  if (name == "triangle" || name == "k3") return HPattern::triangle();
  if (name == "p3" || name == "path3") return HPattern::path(3);
  if (name == "t3" || name == "star3") return HPattern::star(3);
  throw std::invalid_argument("unknown pattern name: " + name);
}

std::string edges_with_length_json(const std::vector<Edge>& edges, double length,
                                   bool exact, const std::string& extra = "") {
  std::ostringstream out;
  out << "{\"length\": " << format_double(length)
      << ", \"exact\": " << (exact ? "true" : "false");
  if (!extra.empty()) out << ", " << extra;
  out << ", \"edges\": " << edges_to_json(edges) << "}";
  return out.str();
}

std::string tour_order_json(const Tour& t) {
  std::ostringstream out;
  out << "\"order\": [";
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    if (i) out << ", ";
    out << t.order[i];
  }
  out << "]";
  return out.str();
}

struct SolveArgs {
  std::string functional, in, out, pattern;
  int k = 3, g = 4;
};

int run_solve(const SolveArgs& args, bool oracle_mode) {
  PointSet ps = point_set_from_json(read_file(args.in));
  const std::string& f = args.functional;
  if (oracle_mode) {
    if (f == "tsp") {
      auto [tour, len] = tsp_oracle(ps);
      emit(args.out, edges_with_length_json(tour.edges(), len, true, tour_order_json(tour)));
    } else if (f == "mm") {
      auto [m, len] = matching_oracle(ps);
      emit(args.out, edges_with_length_json(m.edges, len, true));
    } else if (f == "tf" || f == "tf_g") {
      auto [tf, len] = two_factor_oracle(ps, f == "tf" ? 3 : args.g);
      emit(args.out, edges_with_length_json(tf.edges(), len, true));
    } else if (f == "mst_k") {
      auto [tree, len] = mst_k_oracle(ps, args.k);
      emit(args.out, edges_with_length_json(tree.edges, len, true));
    } else if (f == "hf") {
      HPattern p = args.pattern.empty() ? HPattern::single_edge()
                                        : (args.pattern.front() == '{' || args.pattern.find(".json") != std::string::npos
                                               ? parse_pattern_file(args.pattern)
                                               : named_pattern(args.pattern));
      auto [hf, len] = h_factor_oracle(ps, p);
      emit(args.out, edges_with_length_json(hf.edges(), len, true));
    } else {
      return fail_invalid("unknown oracle functional: " + f);
    }
    return 0;
  }
  if (f == "mst") {
    auto [tree, len] = mst(ps);
    emit(args.out, edges_with_length_json(tree.edges, len, true));
  } else if (f == "mst_k") {
    auto r = mst_k(ps, args.k);
    emit(args.out, edges_with_length_json(r.tree.edges, r.length, r.exact));
  } else if (f == "mm") {
    auto [m, len] = min_matching(ps);
    emit(args.out, edges_with_length_json(m.edges, len, true));
  } else if (f == "tf") {
    auto r = two_factor(ps);
    emit(args.out, edges_with_length_json(r.factor.edges(), r.length, true));
  } else if (f == "tf_g") {
    auto r = two_factor_girth(ps, args.g);
    if (!r.optimal)
      return fail_infeasible("two_factor_girth: node budget exhausted",
                             "\"best_bound\": " + format_double(r.best_bound));
    emit(args.out, edges_with_length_json(r.factor.edges(), r.length, true));
  } else if (f == "hf") {
    HPattern p = args.pattern.empty() ? HPattern::single_edge()
                                      : (args.pattern.find(".json") != std::string::npos
                                             ? parse_pattern_file(args.pattern)
                                             : named_pattern(args.pattern));
    auto r = h_factor(ps, p);
    emit(args.out, edges_with_length_json(r.factor.edges(), r.length, r.exact));
  } else if (f == "tsp") {
    const int n = ps.size();
    if (n <= 18) {
      auto [tour, len] = tsp_oracle(ps);
      emit(args.out,
           edges_with_length_json(tour.edges(), len, true, tour_order_json(tour)));
    } else if (n <= 40) {
      auto r = solve_bnb(ps);
      emit(args.out, edges_with_length_json(r.tour.edges(), r.length, r.optimal,
                                            tour_order_json(r.tour)));
    } else {
      auto relaxed = two_factor(ps);
      auto patched = patch_to_tour(ps, relaxed.factor);
      Tour improved = tour_2opt(ps, patched.tour);
      emit(args.out,
           edges_with_length_json(improved.edges(), tour_length(ps, improved),
                                  false, tour_order_json(improved)));
    }
  } else {
    return fail_invalid("unknown functional: " + f);
  }
  return 0;
}

std::string beta_json(const BetaEstimate& est) {
  std::ostringstream out;
  out << "{\"functional\": \"" << est.functional << "\", \"d\": " << est.d
      << ", \"n\": " << est.n << ", \"trials\": " << est.trials
      << ", \"mean\": " << format_double(est.mean)
      << ", \"ci95\": [" << format_double(est.ci_lo) << ", "
      << format_double(est.ci_hi) << "]"
      << ", \"exactMode\": " << (est.exact_mode ? "true" : "false") << "}";
  return out.str();
}

std::string separation_json(const SeparationReport& rep) {
  std::ostringstream out;
  out << "{\"d\": " << rep.d << ", \"n\": " << rep.n
      << ", \"trials\": " << rep.trials << ", \"pairs\": [";
  for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
    const auto& p = rep.pairs[i];
    if (i) out << ", ";
    out << "{\"lower\": \"" << p.lower << "\", \"upper\": \"" << p.upper
        << "\", \"meanGap\": " << format_double(p.mean_gap)
        << ", \"gapCI95\": [" << format_double(p.gap_ci_lo) << ", "
        << format_double(p.gap_ci_hi) << "]"
        << ", \"perInstanceViolations\": " << p.violations << "}";
  }
  out << "]}";
  return out.str();
}

std::string separation_csv(const SeparationReport& rep) {
  std::ostringstream out;
  out << "lower,upper,meanGap,gapCiLo,gapCiHi,perInstanceViolations\n";
  for (const auto& p : rep.pairs)
    out << p.lower << "," << p.upper << "," << format_double(p.mean_gap) << ","
        << format_double(p.gap_ci_lo) << "," << format_double(p.gap_ci_hi) << ","
        << p.violations << "\n";
  return out.str();
}

std::string alpha_csv(const AlphaReport& rep) {
  std::ostringstream out;
  out << "k,fraction,ciLo,ciHi\n";
  for (const auto& [k, row] : rep.fraction_by_degree)
    out << k << "," << format_double(row.mean) << "," << format_double(row.ci_lo)
        << "," << format_double(row.ci_hi) << "\n";
  return out.str();
}

std::string alpha_json(const AlphaReport& rep) {
  std::ostringstream out;
  out << "{\"d\": " << rep.d << ", \"n\": " << rep.n
      << ", \"trials\": " << rep.trials << ", \"maxDegree\": " << rep.max_degree
      << ", \"fractions\": {";
  bool first = true;
  for (const auto& [k, row] : rep.fraction_by_degree) {
    if (!first) out << ", ";
    first = false;
    out << "\"" << k << "\": {\"mean\": " << format_double(row.mean)
        << ", \"ci95\": [" << format_double(row.ci_lo) << ", "
        << format_double(row.ci_hi) << "]}";
  }
  out << "}}";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers and experiments for Euclidean combinatorial functionals"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate uniform points in [0,1)^d");
  int gen_n = 100, gen_d = 2;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "point count")->required();
  gen->add_option("--d", gen_d, "dimension")->required();
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // solve / oracle
  SolveArgs solve_args, oracle_args;
  auto* solve = app.add_subcommand("solve", "Run a production solver");
  solve->add_option("--functional", solve_args.functional,
                    "one of mst, mst_k, mm, tf, tf_g, hf, tsp")->required();
  solve->add_option("--in", solve_args.in, "points.json")->required();
  solve->add_option("--k", solve_args.k, "degree bound for mst_k");
  solve->add_option("--g", solve_args.g, "girth for tf_g");
  solve->add_option("--pattern", solve_args.pattern, "pattern name or H.json");
  solve->add_option("--out", solve_args.out, "result file (default stdout)");
  std::uint64_t unused_seed = 0;
  solve->add_option("--seed", unused_seed, "accepted for uniformity; solver is deterministic");
  auto* oracle = app.add_subcommand("oracle", "Run a brute-force oracle");
  oracle->add_option("--functional", oracle_args.functional,
                     "one of tsp, mm, tf, tf_g, mst_k, hf")->required();
  oracle->add_option("--in", oracle_args.in, "points.json")->required();
  oracle->add_option("--k", oracle_args.k, "degree bound for mst_k");
  oracle->add_option("--g", oracle_args.g, "girth for tf_g");
  oracle->add_option("--pattern", oracle_args.pattern, "pattern name or H.json");
  oracle->add_option("--out", oracle_args.out, "result file (default stdout)");
  oracle->add_option("--seed", unused_seed, "accepted for uniformity; oracle is deterministic");

  // hk / hk-check
  std::string hk_in, hk_out, hk_include, hk_exclude;
  auto* hk = app.add_subcommand("hk", "Tour LP lower bound via cutting planes");
  hk->add_option("--in", hk_in, "points.json")->required();
  hk->add_option("--include", hk_include, "forced edges json");
  hk->add_option("--exclude", hk_exclude, "banned edges json");
  hk->add_option("--out", hk_out, "fractional solution file (default stdout)");
  hk->add_option("--seed", unused_seed, "accepted for uniformity; LP is deterministic");
  std::string hkc_in;
  auto* hkc = app.add_subcommand("hk-check", "Feasibility check of a fractional file");
  hkc->add_option("--in", hkc_in, "frac.json")->required();
  hkc->add_option("--seed", unused_seed, "accepted for uniformity; check is deterministic");

  // beta
  std::string beta_functional, beta_out, beta_pattern, beta_format = "json";
  std::string beta_grid;
  int beta_d = 2, beta_n = 100, beta_trials = 10, beta_k = 3, beta_g = 4, jobs = 1;
  std::uint64_t beta_seed = 0;
  auto* beta = app.add_subcommand("beta", "Monte-Carlo scaling-constant estimate");
  beta->add_option("--functional", beta_functional,
                   "tsp|mst|mst_k|mm2|tf|tf_g|hk|hf")->required();
  beta->add_option("--d", beta_d)->required();
  beta->add_option("--n", beta_n, "instance size");
  beta->add_option("--ns", beta_grid,
                   "comma-separated n grid; fits mean against n^(-1/d) "
                   "(heuristic extrapolation)");
  beta->add_option("--trials", beta_trials)->required();
  beta->add_option("--seed", beta_seed)->required();
  beta->add_option("--k", beta_k, "degree bound for mst_k");
  beta->add_option("--g", beta_g, "girth for tf_g");
  beta->add_option("--pattern", beta_pattern, "pattern for hf");
  beta->add_option("--jobs", jobs, "worker threads");
  beta->add_option("--format", beta_format, "json|csv");
  beta->add_option("--out", beta_out, "output file (default stdout)");

  // separate
  int sep_d = 2, sep_n = 12, sep_trials = 200;
  std::uint64_t sep_seed = 0;
  std::string sep_out, sep_format = "json";
  auto* sep = app.add_subcommand("separate", "Per-instance ordering suite");
  sep->add_option("--d", sep_d)->required();
  sep->add_option("--n", sep_n)->required();
  sep->add_option("--trials", sep_trials)->required();
  sep->add_option("--seed", sep_seed)->required();
  sep->add_option("--jobs", jobs, "worker threads");
  sep->add_option("--format", sep_format, "json|csv");
  sep->add_option("--out", sep_out, "output file (default stdout)");

  // alpha
  int alpha_d = 2, alpha_n = 1000, alpha_trials = 50;
  std::uint64_t alpha_seed = 0;
  std::string alpha_out, alpha_format = "csv";
  auto* alpha = app.add_subcommand("alpha", "MST degree-fraction experiment");
  alpha->add_option("--d", alpha_d)->required();
  alpha->add_option("--n", alpha_n)->required();
  alpha->add_option("--trials", alpha_trials)->required();
  alpha->add_option("--seed", alpha_seed, "generator seed");
  alpha->add_option("--jobs", jobs, "worker threads");
  alpha->add_option("--format", alpha_format, "json|csv");
  alpha->add_option("--out", alpha_out, "output file (default stdout)");

  // bnb / bnb-growth
  std::string bnb_in, bnb_out, bnb_bound = "tf";
  std::uint64_t bnb_budget = 2000000;
  auto* bnb = app.add_subcommand("bnb", "Branch-and-bound exact TSP with stats");
  bnb->add_option("--in", bnb_in, "points.json")->required();
  bnb->add_option("--bound", bnb_bound, "tf, tfg:G, or hk");
  bnb->add_option("--budget", bnb_budget, "node budget");
  bnb->add_option("--out", bnb_out, "stats file (default stdout)");
  bnb->add_option("--seed", unused_seed, "accepted for uniformity; search is deterministic");
  std::string growth_ns = "12,16,20,24,28", growth_out, growth_bound = "tf",
              growth_format = "csv";
  int growth_trials = 25;
  std::uint64_t growth_seed = 0;
  auto* growth = app.add_subcommand("bnb-growth", "Tree-size growth experiment");
  growth->add_option("--n", growth_ns, "comma-separated sizes");
  growth->add_option("--trials", growth_trials)->required();
  growth->add_option("--bound", growth_bound, "tf, tfg:G, or hk");
  growth->add_option("--seed", growth_seed)->required();
  growth->add_option("--jobs", jobs, "worker threads");
  growth->add_option("--format", growth_format, "csv|json");
  growth->add_option("--out", growth_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      emit(gen_out, point_set_to_json(generate_uniform(gen_n, gen_d, gen_seed)));
      return 0;
    }
    if (*solve) return run_solve(solve_args, false);
    if (*oracle) return run_solve(oracle_args, true);
    if (*hk) {
      PointSet ps = point_set_from_json(read_file(hk_in));
      Constraints cons;
      if (!hk_include.empty()) cons.include = edges_from_json(read_file(hk_include));
      if (!hk_exclude.empty()) cons.exclude = edges_from_json(read_file(hk_exclude));
      auto r = hk_value(ps, cons);
      if (!r.converged)
        return fail_infeasible("hk: cut iteration cap exceeded",
                               "\"lastBound\": " + format_double(r.value));
      // Flat FractionalSolution file with the value alongside, so the
      // output feeds hk-check directly.
      std::string body = fractional_to_json(r.solution);
      body.pop_back();  // strip '}'
      body += ", \"value\": " + format_double(r.value) +
              ", \"cuts\": " + std::to_string(r.cuts_added) + "}";
      emit(hk_out, body);
      return 0;
    }
    if (*hkc) {
      FractionalSolution sol = fractional_from_json(read_file(hkc_in));
      auto rep = hk_feasible(sol);
      if (rep.feasible) {
        std::cout << "{\"feasible\": true}\n";
        return 0;
      }
      std::string detail = "\"violation\": \"" + rep.violation + "\"";
      if (rep.cut) {
        detail += ", \"cutWeight\": " + format_double(rep.cut->crossing_weight);
        detail += ", \"cutSubset\": [";
        for (std::size_t i = 0; i < rep.cut->subset.size(); ++i) {
          if (i) detail += ", ";
          detail += std::to_string(rep.cut->subset[i]);
        }
        detail += "]";
      }
      return fail_infeasible("fractional solution infeasible", detail);
    }
    if (*beta) {
      Functional f;
      f.name = beta_functional;
      f.k = beta_k;
      f.g = beta_g;
      if (!beta_pattern.empty())
        f.pattern = beta_pattern.find(".json") != std::string::npos
                        ? parse_pattern_file(beta_pattern)
                        : named_pattern(beta_pattern);
      if (!beta_grid.empty()) {
        std::vector<int> sizes;
        std::stringstream ss(beta_grid);
        std::string item;
        while (std::getline(ss, item, ',')) sizes.push_back(std::stoi(item));
        auto fit = extrapolate_beta(f, beta_d, sizes, beta_trials, beta_seed, jobs);
        std::ostringstream out;
        out << "{\"heuristic\": true, \"intercept\": "
            << format_double(fit.intercept)
            << ", \"slope\": " << format_double(fit.slope) << ", \"grid\": [";
        for (std::size_t i = 0; i < fit.grid.size(); ++i) {
          if (i) out << ", ";
          out << beta_json(fit.grid[i]);
        }
        out << "]}";
        emit(beta_out, out.str());
        return 0;
      }
      auto est = estimate_beta(f, beta_d, beta_n, beta_trials, beta_seed, jobs);
      if (beta_format == "csv") {
        std::ostringstream out;
        out << "functional,d,n,trials,mean,ciLo,ciHi,exactMode\n"
            << est.functional << "," << est.d << "," << est.n << "," << est.trials
            << "," << format_double(est.mean) << "," << format_double(est.ci_lo)
            << "," << format_double(est.ci_hi) << ","
            << (est.exact_mode ? "true" : "false") << "\n";
        emit(beta_out, out.str());
      } else {
        emit(beta_out, beta_json(est));
      }
      return 0;
    }
    if (*sep) {
      auto rep = separation_suite(sep_d, sep_n, sep_trials, sep_seed, jobs);
      emit(sep_out, sep_format == "csv" ? separation_csv(rep) : separation_json(rep));
      return 0;
    }
    if (*alpha) {
      auto rep = mst_alpha(alpha_d, alpha_n, alpha_trials, alpha_seed, jobs);
      emit(alpha_out, alpha_format == "json" ? alpha_json(rep) : alpha_csv(rep));
      return 0;
    }
    if (*bnb) {
      PointSet ps = point_set_from_json(read_file(bnb_in));
      BnbOptions opt;
      opt.node_budget = bnb_budget;
      if (bnb_bound == "tf") {
        opt.bound = BoundKind::TwoFactorBound;
      } else if (bnb_bound == "hk") {
        opt.bound = BoundKind::HeldKarpBound;
      } else if (bnb_bound.rfind("tfg:", 0) == 0) {
        opt.bound = BoundKind::TwoFactorGirthBound;
        opt.girth = std::stoi(bnb_bound.substr(4));
      } else {
        return fail_invalid("unknown bound: " + bnb_bound);
      }
      auto r = solve_bnb(ps, opt);
      std::ostringstream out;
      out << "{\"length\": " << format_double(r.length)
          << ", \"optimal\": " << (r.optimal ? "true" : "false")
          << ", \"nodesExpanded\": " << r.stats.nodes_expanded
          << ", \"leaves\": " << r.stats.leaves
          << ", \"prunedNodes\": " << r.stats.pruned_nodes
          << ", \"boundCalls\": " << r.stats.bound_calls
          << ", \"maxDepth\": " << r.stats.max_depth
          << ", \"wallTime\": " << format_double(r.stats.wall_time) << ", "
          << tour_order_json(r.tour) << "}";
      emit(bnb_out, out.str());
      return r.optimal ? 0 : 2;
    }
    if (*growth) {
      std::vector<int> sizes;
      std::stringstream ss(growth_ns);
      std::string item;
      while (std::getline(ss, item, ',')) sizes.push_back(std::stoi(item));
      BoundKind bound = BoundKind::TwoFactorBound;
      int girth = 4;
      if (growth_bound == "hk") {
        bound = BoundKind::HeldKarpBound;
      } else if (growth_bound.rfind("tfg:", 0) == 0) {
        bound = BoundKind::TwoFactorGirthBound;
        girth = std::stoi(growth_bound.substr(4));
      } else if (growth_bound != "tf") {
        return fail_invalid("unknown bound: " + growth_bound);
      }
      auto rows = growth_experiment(sizes, growth_trials, bound, growth_seed,
                                    2000000, jobs, girth);
      std::ostringstream out;
      if (growth_format == "json") {
        out << "[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const auto& r = rows[i];
          if (i) out << ", ";
          out << "{\"n\": " << r.n << ", \"trial\": " << r.trial
              << ", \"nodes\": " << r.nodes << ", \"leaves\": " << r.leaves
              << ", \"pruned\": " << r.pruned
              << ", \"optimal\": " << (r.optimal ? "true" : "false")
              << ", \"wallTime\": " << format_double(r.wall_time) << "}";
        }
        out << "]";
      } else {
        out << "n,trial,nodes,leaves,pruned,optimal,wallTime\n";
        for (const auto& r : rows)
          out << r.n << "," << r.trial << "," << r.nodes << "," << r.leaves << ","
              << r.pruned << "," << (r.optimal ? "true" : "false") << ","
              << format_double(r.wall_time) << "\n";
      }
      emit(growth_out, out.str());
      return 0;
    }
  } catch (const InfeasibleError& e) {
    std::string detail;
    if (e.vertex() >= 0) detail = "\"vertex\": " + std::to_string(e.vertex());
    return fail_infeasible(e.what(), detail);
  } catch (const std::exception& e) {
    return fail_invalid(e.what());
  }
  return fail_invalid("no subcommand");
}
