// Command-line entry point: enumeration, counting, constructions, spread and
// peeling analyses, the maximum-family search, and the verification suites.
//
// Exit codes: 0 all checks pass, 2 a check failed, 64 usage error, 1 I/O or
// other runtime failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "treeint/counting.hpp"
#include "treeint/family.hpp"
#include "treeint/io.hpp"
#include "treeint/parallel.hpp"
#include "treeint/peeling.hpp"
#include "treeint/search.hpp"
#include "treeint/spread.hpp"
#include "treeint/suites.hpp"
#include "treeint/tree.hpp"

using namespace treeint;

namespace {

constexpr int kExitFailure = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string format = "json";
  std::string out;
  int workers = 0;
  std::uint64_t seed = kDefaultSeed;
  bool timings = false;
};

int emit(const Report& rep, const Common& common) {
  const std::string text = render_report(rep, parse_format(common.format));
  if (common.out.empty())
    std::cout << text;
  else
    write_file(common.out, text);
  return rep.passed() ? 0 : kExitFailure;
}

// "1-2,3-4" or an edge-list file.
EdgeSet read_forest(int& n, const std::string& edges, const std::string& file) {
  if (!file.empty()) {
    const auto list = parse_edge_list(read_file(file));
    if (n != 0 && n != list.n) throw UsageError("--n disagrees with the file header");
    n = list.n;
    return list.edges;
  }
  if (n == 0) throw UsageError("--n is required");
  std::vector<std::pair<int, int>> pairs;
  std::size_t pos = 0;
  while (pos < edges.size()) {
    const auto comma = edges.find(',', pos);
    const auto item = edges.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw UsageError("edges are written u-v, got '" + item + "'");
    try {
      pairs.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
    } catch (const std::logic_error&) {
      throw UsageError("edges are written u-v, got '" + item + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  const EdgeSet f = edge_set(n, pairs);
  if (!is_acyclic(n, f)) throw CycleError("edge set contains a cycle");
  return f;
}

Json edge_pairs(int n, const EdgeSet& s) {
  Json a = Json::array();
  s.for_each([&](int e) {
    const Edge ed = edge_from_index(e, n);
    a.push_back(Json::array({ed.u, ed.v}));
  });
  return a;
}

template <class Set>
SetFamily<Set> load_family(const std::string& path) {
  return family_from_json<Set>(Json::parse(read_file(path)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"t-intersecting families of labelled spanning trees"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", common.out, "write the report to this path");
    sub->add_option("--workers", common.workers, "worker threads (default: TREEINT_WORKERS or 1)")
        ->check(CLI::Range(1, 1024));
    sub->add_option("--seed", common.seed, "base seed for randomized checks");
    sub->add_flag("--timings", common.timings, "include wall-clock times");
  };

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "enumerate the labelled spanning trees of K_n");
  int en_n = 0, en_cap = kDefaultEnumerationCap;
  bool en_list = false;
  enumerate->add_option("--n", en_n, "vertices")->required();
  enumerate->add_option("--cap", en_cap, "largest n allowed");
  enumerate->add_flag("--list", en_list, "list every tree as edge pairs, in Prufer order");
  add_common(enumerate);

  // count
  auto* count = app.add_subcommand("count", "count spanning trees containing a forest");
  int co_n = 0;
  std::string co_edges, co_file;
  bool co_oracle = false;
  count->add_option("--n", co_n, "vertices");
  count->add_option("--edges", co_edges, "forest as u-v,u-v,...");
  count->add_option("--forest", co_file, "forest as an edge-list file");
  count->add_flag("--oracle", co_oracle, "also count by enumeration");
  add_common(count);

  // c-table
  auto* ctable = app.add_subcommand("c-table", "c(n,t) table with ratio bound checks");
  int ct_n_max = 50;
  ctable->add_option("--n-max", ct_n_max, "largest n")->check(CLI::Range(3, 2000));
  add_common(ctable);

  // a-table
  auto* atable = app.add_subcommand("a-table", "exact A(n,t,r) by exhaustive forest scan");
  int at_n = 0, at_cap = kDefaultExhaustiveCap;
  atable->add_option("--n", at_n, "vertices")->required();
  atable->add_option("--cap", at_cap, "largest n allowed");
  add_common(atable);

  // family
  auto* family = app.add_subcommand("family", "build or check a family of spanning trees");
  std::string fa_kind, fa_edges, fa_forest, fa_check, fa_save;
  int fa_n = 0, fa_t = -1, fa_r = 0;
  family->add_option("--build", fa_kind, "trivial, U, hm or stars")->check(CLI::IsMember({"trivial", "U", "hm", "stars"}));
  family->add_option("--check", fa_check, "family JSON file to check");
  family->add_option("--n", fa_n, "vertices");
  family->add_option("--t", fa_t, "intersection size");
  family->add_option("--r", fa_r, "U-family excess");
  family->add_option("--edges", fa_edges, "forest as u-v,u-v,... (trivial default: balanced forest with t edges)");
  family->add_option("--forest", fa_forest, "forest as an edge-list file");
  family->add_option("--save", fa_save, "write the built family as JSON");
  add_common(family);

  // spread
  auto* spread = app.add_subcommand("spread", "spread radius, restrictions, approximation, Monte-Carlo");
  std::string sp_file, sp_alpha, sp_approx_r, sp_beta, sp_delta = "1";
  int sp_q_cap = 0;
  std::uint64_t sp_trials = 0;
  spread->add_option("--family", sp_file, "family JSON file")->required();
  spread->add_option("--alpha", sp_alpha, "find an alpha-spread restriction (rational)");
  spread->add_option("--approx-r", sp_approx_r, "run the greedy spread approximation with this r");
  spread->add_option("--q-cap", sp_q_cap, "cover size cap for the approximation");
  spread->add_option("--beta", sp_beta, "Monte-Carlo beta");
  spread->add_option("--delta", sp_delta, "Monte-Carlo delta");
  spread->add_option("--trials", sp_trials, "Monte-Carlo trials");
  add_common(spread);

  // peel
  auto* peelc = app.add_subcommand("peel", "peel a t-intersecting family and verify the trace");
  std::string pe_file;
  int pe_t = 0, pe_q = 0;
  peelc->add_option("--family", pe_file, "family JSON file")->required();
  peelc->add_option("--t", pe_t, "intersection size")->required();
  peelc->add_option("--q", pe_q, "top uniformity (default: largest member)");
  add_common(peelc);

  // search-max
  auto* searchc = app.add_subcommand("search-max", "maximum t-intersecting family of spanning trees");
  int se_n = 0, se_t = 0, se_cap = kDefaultSearchCap;
  std::optional<double> se_limit;
  bool se_sym = false, se_seeds = false;
  searchc->add_option("--n", se_n, "vertices")->required();
  searchc->add_option("--t", se_t, "intersection size")->required();
  searchc->add_option("--time-limit", se_limit, "seconds");
  searchc->add_option("--cap", se_cap, "largest n allowed");
  searchc->add_flag("--symmetry", se_sym, "break symmetry at the root by vertex relabelling orbits");
  searchc->add_flag("--seed-constructions", se_seeds, "start from the known constructions");
  add_common(searchc);

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  SuiteConfig scfg;
  std::string suite = "all";
  verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suite_names()));
  verify->add_option("--n", scfg.n, "single n");
  verify->add_option("--n-min", scfg.n_min, "smallest n");
  verify->add_option("--n-max", scfg.n_max, "largest n");
  verify->add_option("--t", scfg.t, "t");
  verify->add_option("--instances", scfg.instances, "generated instances");
  verify->add_option("--trials", scfg.trials, "Monte-Carlo trials");
  verify->add_option("--time-limit", scfg.time_limit, "search time limit in seconds");
  verify->add_flag("--symmetry", scfg.symmetry, "search with symmetry breaking");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const int workers = common.workers > 0 ? common.workers : workers_from_env(1);
  Report rep;
  try {
    if (*enumerate) {
      rep.command = "enumerate";
      rep.config = {{"n", en_n}, {"cap", en_cap}, {"list", en_list}};
      const auto trees = all_spanning_trees(en_n, workers, en_cap);
      rep.add({"cayley", {{"n", en_n}}, std::to_string(trees.size()), std::to_string(cayley_count(en_n)),
               trees.size() == cayley_count(en_n)});
      if (en_list) {
        Json list = Json::array();
        for (const auto& t : trees) list.push_back(edge_pairs(en_n, t));
        rep.sections["trees"] = std::move(list);
      }
    } else if (*count) {
      rep.command = "count";
      const EdgeSet f = read_forest(co_n, co_edges, co_file);
      const auto profile = profile_of(components_of(co_n, f));
      const BigCount value = count_trees_containing(profile);
      rep.config = {{"n", co_n}, {"forest", edge_pairs(co_n, f)}, {"oracle", co_oracle}};
      rep.sections["profile"] = profile.sizes;
      if (co_oracle) {
        std::uint64_t brute = 0;
        for (const auto& t : all_spanning_trees(co_n, workers, kMaxVertices))
          if (f.is_subset_of(t)) ++brute;
        rep.add({"count-trees-oracle", {{"profile", to_string(profile)}}, value.str(), std::to_string(brute),
                 value == brute});
      } else {
        rep.add({"count-trees", {{"profile", to_string(profile)}}, value.str(), value.str(), true, false});
      }
    } else if (*ctable) {
      rep.command = "c-table";
      rep.config = {{"n_max", ct_n_max}};
      for (int n = 1; n <= ct_n_max; ++n)
        for (int t = 0; t <= n - 1; ++t)
          rep.add({"c", {{"n", n}, {"t", t}, {"profile", to_string(balanced_profile(n, t))}}, compute_c(n, t).str(),
                   "", true, false});
      const auto scan = verify_c_ratio_bounds(ct_n_max, workers);
      for (const auto& v : scan.violations)
        rep.add({v.check, {{"n", v.n}, {"t", v.t}, {"r", v.r}}, v.lhs.str(), v.rhs.str(), false});
      rep.add({"c-ratio-scan", {{"n_max", ct_n_max}}, std::to_string(scan.violations.size()) + " violations",
               std::to_string(scan.checks) + " checks", scan.violations.empty()});
    } else if (*atable) {
      rep.command = "a-table";
      rep.config = {{"n", at_n}, {"cap", at_cap}};
      for (int t = 0; t <= at_n - 1; ++t)
        for (int r = 0; t + 2 * r <= at_n - 1; ++r) {
          const AResult a = compute_A_exact(at_n, t, r, at_cap);
          const bool check = r == 0;
          rep.add({"A", {{"t", t}, {"r", r}, {"argmax_profile", to_string(profile_of(components_of(at_n, a.argmax)))},
                         {"forests", a.forests_scanned}},
                   a.value.str(), check ? size_trivial(at_n, t).str() : "", !check || a.value == size_trivial(at_n, t),
                   check});
        }
    } else if (*family) {
      rep.command = "family";
      if (fa_kind.empty() == fa_check.empty()) throw UsageError("give exactly one of --build and --check");
      TreeFamily fam;
      if (!fa_check.empty()) {
        fam = load_family<EdgeSet>(fa_check);
        if (fam.vertices() == 0) throw UsageError("family file must give 'n'");
        fa_n = fam.vertices();
        if (fa_t < 0) throw UsageError("--t is required with --check");
        rep.config = {{"check", fa_check}, {"t", fa_t}};
      } else {
        if (fa_n < 2) throw UsageError("--n is required");
        rep.config = {{"build", fa_kind}, {"n", fa_n}};
        if (fa_kind == "hm") {
          fam = build_HM_family(fa_n, make_edge(1, 2, fa_n));
          if (fa_t < 0) fa_t = 1;
          rep.add({"hm-size", {{"n", fa_n}}, std::to_string(fam.size()), hm_family_size(fa_n).str(),
                   BigCount(fam.size()) == hm_family_size(fa_n)});
        } else if (fa_kind == "stars") {
          fam = build_star_family(fa_n);
          if (fa_t < 0) fa_t = 1;
        } else {
          const bool default_forest = fa_kind == "trivial" && fa_edges.empty() && fa_forest.empty() && fa_t > 0;
          if (default_forest) check_vertex_count(fa_n);
          const EdgeSet f = default_forest ? balanced_forest(fa_n, fa_t) : read_forest(fa_n, fa_edges, fa_forest);
          rep.config["forest"] = edge_pairs(fa_n, f);
          if (fa_kind == "trivial") {
            fam = build_trivial(fa_n, f);
            if (fa_t < 0) fa_t = f.count();
            rep.add({"trivial-size", {{"profile", to_string(profile_of(components_of(fa_n, f)))}},
                     std::to_string(fam.size()), count_trees_containing(profile_of(components_of(fa_n, f))).str(),
                     BigCount(fam.size()) == count_trees_containing(profile_of(components_of(fa_n, f)))});
          } else {
            if (fa_t < 0) throw UsageError("--t is required for U");
            rep.config["r"] = fa_r;
            fam = build_U(fa_n, fa_t, fa_r, f);
          }
        }
        rep.config["t"] = fa_t;
        if (!fa_save.empty()) write_file(fa_save, family_to_json(fam).dump() + "\n");
      }
      const auto cert = certify_family(fa_n, fam, fa_t);
      rep.add({"t-intersecting", {{"t", fa_t}, {"size", fam.size()}},
               cert.min_pairwise_intersection ? std::to_string(*cert.min_pairwise_intersection) : "none",
               std::to_string(fa_t), cert.valid});
      rep.sections["certificate"] = certificate_to_json(cert);
    } else if (*spread) {
      rep.command = "spread";
      const auto fam = load_family<WideSet>(sp_file);
      if (fam.empty()) throw UsageError("family is empty");
      rep.config = {{"family", sp_file}, {"members", fam.size()}};
      const auto prof = spread_radius(fam);
      Json radius;
      radius["unbounded"] = prof.unbounded();
      radius["family_size"] = prof.family_size;
      radius["restricted_size"] = prof.restricted_size;
      radius["exponent"] = prof.exponent;
      radius["witness"] = set_to_json(prof.witness);
      rep.sections["radius"] = std::move(radius);
      if (!sp_alpha.empty()) {
        const Rational alpha = parse_rational(sp_alpha);
        rep.config["alpha"] = to_string(alpha);
        const auto found = find_spread_restriction(fam, alpha);
        rep.add({"restriction-alpha-spread", {{"x", set_to_json(found.x)}, {"restricted", found.restricted.size()}},
                 is_r_spread(found.restricted, alpha) ? "spread" : "not spread", "spread",
                 is_r_spread(found.restricted, alpha)});
      }
      if (!sp_approx_r.empty()) {
        if (sp_q_cap < 1) throw UsageError("--q-cap is required with --approx-r");
        const Rational r = parse_rational(sp_approx_r);
        rep.config["approx_r"] = to_string(r);
        rep.config["q_cap"] = sp_q_cap;
        const auto approx = greedy_spread_approximation(fam, r, sp_q_cap);
        bool all_spread = true;
        for (const auto& step : approx.steps) all_spread = all_spread && is_r_spread(restriction(step.attached, step.cover), r);
        rep.add({"approximation-covers-r-spread", {{"covers", approx.steps.size()}, {"remainder", approx.remainder.size()}},
                 all_spread ? "true" : "false", "true", all_spread});
        rep.sections["approximation"] = approximation_to_json(approx);
      }
      if (sp_trials > 0) {
        if (sp_beta.empty()) throw UsageError("--beta is required with --trials");
        const Rational beta = parse_rational(sp_beta), delta = parse_rational(sp_delta);
        rep.config["beta"] = to_string(beta);
        rep.config["delta"] = to_string(delta);
        rep.config["trials"] = sp_trials;
        rep.config["seed"] = common.seed;
        const auto mc = monte_carlo_cover_probability(fam, beta, delta, sp_trials, common.seed, workers);
        rep.add({"cover-probability", {{"trials", sp_trials}}, json_double(mc.estimate + 3 * mc.sigma).dump(),
                 json_double(mc.bound).dump(), mc.holds});
        rep.sections["monte_carlo"] = monte_carlo_to_json(mc);
      }
    } else if (*peelc) {
      rep.command = "peel";
      const auto fam = load_family<WideSet>(pe_file);
      const int q = pe_q > 0 ? pe_q : std::max(pe_t, fam.max_member_size());
      rep.config = {{"family", pe_file}, {"t", pe_t}, {"q", q}};
      const auto trace = peel(fam, pe_t, q);
      std::vector<WideSet> reference;
      if (fam.vertices() > 0 && fam.vertices() <= kDefaultExhaustiveCap)
        for (const auto& t : spanning_trees(fam.vertices())) reference.push_back(convert_set<WideSet>(t));
      else
        reference = fam.members();
      const auto report = verify_trace(trace, std::span<const WideSet>(reference));
      rep.add({"peel-trace", {{"levels", trace.levels.size()}}, report.ok ? "ok" : "failed", "ok", report.ok});
      rep.sections["trace"] = trace_to_json(trace, &report);
    } else if (*searchc) {
      rep.command = "search-max";
      rep.config = {{"n", se_n}, {"t", se_t}, {"symmetry", se_sym}, {"seed_constructions", se_seeds}};
      if (se_limit) rep.config["time_limit"] = *se_limit;
      const auto g = build_compatibility_graph(se_n, se_t, se_cap, workers);
      SearchOptions opts;
      opts.time_limit_seconds = se_limit;
      opts.symmetry = se_sym;
      if (se_seeds) opts.seeds = seed_constructions(se_n, se_t, std::max(se_cap, kDefaultExhaustiveCap));
      const auto res = search_max_family(g, opts);
      const auto cert = certify_family(se_n, res.witness, se_t);
      std::size_t best_seed = 0;
      for (const auto& s : opts.seeds) best_seed = std::max(best_seed, s.family.size());
      rep.add({"search-max", {{"status", to_string(res.status)}}, std::to_string(res.max_size), std::to_string(best_seed),
               cert.valid && res.max_size >= best_seed});
      Json j = search_to_json(res, common.timings);
      j["witness"]["pairs"] = Json::array();
      for (const auto& m : res.witness) j["witness"]["pairs"].push_back(edge_pairs(se_n, m));
      j["certificate"] = certificate_to_json(cert);
      rep.sections["search"] = std::move(j);
    } else if (*verify) {
      scfg.suite = suite;
      scfg.seed = common.seed;
      scfg.workers = workers;
      rep = run_suite(scfg);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CycleError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::parse_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    return emit(rep, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
