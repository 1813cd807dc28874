// Command-line front end: family / check / enumerate / orient / gamma /
// verify / pipeline / report, all emitting JSON documents with an embedded
// run manifest. Exit code 0 means no stage errored; physics outcomes such
// as "only trivial solutions" are data, not errors.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mtlz/canonical.hpp"
#include "mtlz/digest.hpp"
#include "mtlz/families.hpp"
#include "mtlz/gamma.hpp"
#include "mtlz/graph6.hpp"
#include "mtlz/orientation.hpp"
#include "mtlz/rules.hpp"
#include "mtlz/search.hpp"
#include "mtlz/verifier.hpp"

using nlohmann::json;
using namespace mtlz;

namespace {

constexpr const char* kToolVersion = "mtlz 0.1.0";

struct ManifestInfo {
  std::string command;
  json config = json::object();
  json seeds = json::object();
  json inputs = json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void add_input(const std::string& name, std::string_view data) {
    inputs[name] = to_hex(fnv1a64(data));
  }

  json finish() const {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    return json{{"tool", kToolVersion}, {"command", command}, {"config", config},
                {"rng_seeds", seeds},   {"inputs", inputs},   {"wall_ms", ms}};
  }
};

int default_threads() {
  if (const char* env = std::getenv("MTLZ_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::string edge_key(const Edge& e) {
  return std::to_string(e.a) + "-" + std::to_string(e.b);
}

json graph_summary(const Graph& g) {
  json j;
  j["graph6"] = emit_graph6(g);
  j["n"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["degrees"] = g.degree_multiset();
  j["diameter"] = is_connected(g) ? json(diameter(g)) : json();
  return j;
}

json check_to_json(const RuleCheck& c) {
  json j;
  j["pass"] = c.pass;
  if (!c.pass) j["witness"] = c.witness;
  return j;
}

json report_to_json(const RuleReport& r) {
  return json{{"no_k3", check_to_json(r.no_k3)},
              {"two_path", check_to_json(r.two_path)},
              {"no_k33", check_to_json(r.no_k33)},
              {"no_1221", check_to_json(r.no_1221)},
              {"candidate", r.candidate},
              {"bipartite", r.bipartite},
              {"connected", r.connected}};
}

json orientation_to_json(const Graph& g, const Orientation& o) {
  json signs = json::object();
  for (std::size_t i = 0; i < g.edges().size(); ++i)
    signs[edge_key(g.edges()[i])] = static_cast<int>(o.signs[i]);
  return signs;
}

json branch_result_to_json(const Graph& g, const RConstraintSystem& sys,
                           const BranchSearchResult& res, bool include_raw) {
  json vars = json::array();
  for (std::size_t v = 0; v < sys.vars.size(); ++v) vars.push_back(sys.var_name(static_cast<int>(v)));
  json classes = json::array();
  for (const auto& cls : res.classes) {
    json solutions = json::array();
    for (const auto& a : cls.representative.assignments)
      solutions.push_back(std::vector<int>(a.begin(), a.end()));
    classes.push_back(json{{"canonical_key", hex_encode(cls.canonical_key)},
                           {"signs", orientation_to_json(g, cls.representative.orientation)},
                           {"r_solutions", solutions},
                           {"raw_members", cls.raw_members.size()}});
  }
  json out{{"variables", vars},
           {"orientations", classes},
           {"counts",
            json{{"raw_survivors", res.raw.size()},
                 {"reversal_classes", res.reversal_classes},
                 {"isomorphism_classes", res.classes.size()}}},
           {"pruned_counts",
            json{{"invalid_cycle", res.pruned_invalid_cycle},
                 {"unsatisfiable", res.pruned_unsat}}}};
  if (include_raw) {
    json raw = json::array();
    for (const auto& surv : res.raw) {
      json solutions = json::array();
      for (const auto& a : surv.assignments)
        solutions.push_back(std::vector<int>(a.begin(), a.end()));
      raw.push_back(json{{"signs", orientation_to_json(g, surv.orientation)},
                         {"r_solutions", solutions}});
    }
    out["raw"] = raw;
  }
  return out;
}

const char* status_name(GammaStatus s) {
  switch (s) {
    case GammaStatus::Nontrivial:
      return "nontrivial";
    case GammaStatus::TrivialOnly:
      return "trivial_only";
    case GammaStatus::NoneFound:
      return "none_found";
  }
  return "?";
}

json gamma_solution_to_json(const Graph& g, const GammaSolution& sol) {
  json x = json::object();
  for (std::size_t i = 0; i < sol.x.size(); ++i) x[edge_key(g.edges()[i])] = sol.x[i];
  return json{{"status", status_name(sol.status)}, {"x", x},
              {"residual", sol.residual},          {"restarts_used", sol.restarts_used},
              {"best_restart", sol.best_restart},  {"rng_seed", sol.rng_seed}};
}

RAssignment assignment_from_json(const RConstraintSystem& sys, const json& j) {
  RAssignment r(sys.vars.size(), 0);
  for (const auto& item : j.at("assignment")) {
    int id = sys.var_id(item.at("a").get<int>(), item.at("c").get<int>(),
                        item.at("b").get<int>(), item.at("d").get<int>());
    if (id < 0) throw GammaError("unknown r variable in assignment");
    int value = item.at("value").get<int>();
    if (value != 1 && value != -1) throw GammaError("r values must be +1 or -1");
    r[static_cast<std::size_t>(id)] = static_cast<std::int8_t>(value);
  }
  for (auto v : r)
    if (v == 0) throw GammaError("assignment must cover every r variable");
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream os(out_path, std::ios::trunc);
    os << doc.dump(2) << "\n";
  }
}

json run_pipeline(const Graph& g, const GammaConfig& gamma_cfg) {
  json doc;
  RuleReport rules = is_candidate(g);
  doc["rules"] = report_to_json(rules);
  doc["graph"] = graph_summary(g);
  if (!rules.candidate) return doc;

  RConstraintSystem sys = build_r_system(g);
  BranchSearchResult branches = branch_search(g);
  doc["orientation"] = branch_result_to_json(g, sys, branches, false);

  json gammas = json::array();
  for (std::size_t c = 0; c < branches.classes.size(); ++c) {
    const auto& cls = branches.classes[c];
    for (std::size_t s = 0; s < cls.representative.assignments.size(); ++s) {
      GammaSystem gsys = build_gamma_system(g, sys, cls.representative.assignments[s]);
      GammaSolution sol = solve_gamma(gsys, gamma_cfg);
      gammas.push_back(json{{"orientation_class", c},
                            {"r_solution", s},
                            {"result", gamma_solution_to_json(g, sol)}});
    }
  }
  doc["gamma"] = gammas;
  return doc;
}

json table_report(const std::vector<std::string>& files, int from, int to) {
  if (files.empty()) throw SearchError("no catalog files given");
  std::map<int, std::pair<int, int>> counts;  // n -> (free, with)
  std::map<int, std::vector<json>> by_n;
  for (const std::string& path : files) {
    std::ifstream in(path);
    if (!in) throw SearchError("cannot open catalog " + path);
    Catalog c = read_catalog_jsonl(in);
    for (const auto& [key, e] : c.entries) {
      auto& row = counts[e.n];
      (e.has_1221 ? row.second : row.first) += 1;
      by_n[e.n].push_back(json{{"graph6", e.graph6},
                               {"edges", parse_graph6(e.graph6).edge_count()},
                               {"degrees", e.degrees},
                               {"has_1221", e.has_1221},
                               {"diameter", e.diameter}});
    }
  }
  if (counts.empty()) throw SearchError("catalogs contain no entries");
  if (from < 0) from = counts.begin()->first;
  if (to < 0) to = counts.rbegin()->first;
  json table1 = json::array();
  for (int n = from; n <= to; ++n) {
    auto it = counts.find(n);
    if (it == counts.end())
      throw SearchError("no catalog covers n=" + std::to_string(n));
    table1.push_back(json{{"n", n},
                          {"free_1221", it->second.first},
                          {"with_1221", it->second.second},
                          {"total", it->second.first + it->second.second}});
  }
  json doc{{"table1", table1}};
  if (by_n.count(10)) {
    auto rows = by_n[10];
    std::sort(rows.begin(), rows.end(), [](const json& x, const json& y) {
      if (x["edges"] != y["edges"]) return x["edges"] < y["edges"];
      return x["degrees"] > y["degrees"];
    });
    doc["table2_n10"] = rows;
  }
  json notes = json::array();
  for (const auto& row : doc["table1"])
    notes.push_back("n=" + std::to_string(row["n"].get<int>()) + ": " +
                    std::to_string(row["total"].get<int>()) + " candidates total");
  doc["notes"] = notes;
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Candidate-graph search and verification toolkit for multitime "
               "Landau-Zener models"};
  app.require_subcommand(1);
  app.fallthrough();

  int threads = default_threads();
  app.add_option("--threads", threads, "worker threads (env MTLZ_THREADS)")
      ->capture_default_str();
  std::string out_path;
  app.add_option("--out,-o", out_path, "output file (default stdout)");

  // family
  auto* family = app.add_subcommand("family", "build a named graph family");
  family->fallthrough();
  std::string family_spec;
  family->add_option("spec", family_spec,
                     "e.g. K2, Fan(4), K(2,3), Q(3), Product(K2,Fan(3)), G1463, "
                     "G14631, G13631, Clebsch16, Catalog1441_2")
      ->required();

  // check
  auto* check = app.add_subcommand("check", "run the candidate rules on a graph");
  check->fallthrough();
  std::string check_g6;
  check->add_option("graph6", check_g6)->required();

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "seeded exhaustive candidate search");
  enumerate->fallthrough();
  SearchConfig search_cfg;
  std::string strategy_name = "basic", seeds_name = "both", checkpoint_path;
  enumerate->add_option("--n", search_cfg.n, "vertex count (8..)")->required();
  enumerate->add_option("--strategy", strategy_name, "basic|layered")
      ->check(CLI::IsMember({"basic", "layered"}))
      ->capture_default_str();
  enumerate->add_option("--seeds", seeds_name, "both|free|with1221")
      ->check(CLI::IsMember({"both", "free", "with1221"}))
      ->capture_default_str();
  enumerate->add_option("--checkpoint", checkpoint_path, "checkpoint file; resumes if present");
  enumerate->add_option("--stop-after-tasks", search_cfg.stop_after_tasks,
                        "claim only this many work units (testing/budgeting)");

  // orient
  auto* orient = app.add_subcommand("orient", "branch search over edge orientations");
  orient->fallthrough();
  std::string orient_g6;
  bool orient_raw = false;
  orient->add_option("graph6", orient_g6)->required();
  orient->add_flag("--raw", orient_raw, "include every surviving orientation");

  // gamma
  auto* gamma = app.add_subcommand("gamma", "solve the multipath system");
  gamma->fallthrough();
  std::string gamma_g6, gamma_rfile;
  bool gamma_auto = false;
  GammaConfig gamma_cfg;
  gamma->add_option("graph6", gamma_g6)->required();
  gamma->add_option("--r-file", gamma_rfile, "JSON file with an r assignment");
  gamma->add_flag("--auto", gamma_auto, "derive r assignments from the branch search");
  gamma->add_option("--restarts", gamma_cfg.restarts)->capture_default_str();
  gamma->add_option("--seed", gamma_cfg.rng_seed)->capture_default_str();
  gamma->add_option("--tol", gamma_cfg.tol_resid)->capture_default_str();
  gamma->add_option("--eps-trivial", gamma_cfg.eps_trivial)->capture_default_str();
  gamma->add_option("--max-iterations", gamma_cfg.max_iterations)->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "check explicit data against the identities");
  verify->fallthrough();
  std::string verify_file;
  double verify_tol = 1e-9;
  verify->add_option("file", verify_file, "JSON: graph6, m, forms, signs, gamma")->required();
  verify->add_option("--tol", verify_tol)->capture_default_str();

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "rules, orientations and gamma in one run");
  pipeline->fallthrough();
  std::string pipeline_g6;
  GammaConfig pipeline_gamma;
  pipeline->add_option("graph6", pipeline_g6)->required();
  pipeline->add_option("--restarts", pipeline_gamma.restarts)->capture_default_str();
  pipeline->add_option("--seed", pipeline_gamma.rng_seed)->capture_default_str();

  // report
  auto* report = app.add_subcommand("report", "tabulate catalogs");
  report->fallthrough();
  std::vector<std::string> report_files;
  int report_from = -1, report_to = -1;
  report->add_option("catalogs", report_files, "catalog JSONL files")->required();
  report->add_option("--from", report_from, "first n (default: smallest present)");
  report->add_option("--to", report_to, "last n (default: largest present)");

  CLI11_PARSE(app, argc, argv);

  ManifestInfo manifest;
  for (int i = 0; i < argc; ++i) {
    if (i) manifest.command += " ";
    manifest.command += argv[i];
  }

  try {
    if (*family) {
      manifest.add_input("spec", family_spec);
      Graph g = build(FamilySpec::parse(family_spec));
      json doc = graph_summary(g);
      doc["spec"] = FamilySpec::parse(family_spec).to_string();
      doc["manifest"] = manifest.finish();
      emit(doc, out_path);
    } else if (*check) {
      manifest.add_input("graph6", check_g6);
      Graph g = parse_graph6(check_g6);
      json doc = report_to_json(is_candidate(g));
      doc["graph"] = graph_summary(g);
      doc["manifest"] = manifest.finish();
      emit(doc, out_path);
    } else if (*enumerate) {
      search_cfg.strategy = strategy_name == "basic" ? Strategy::Basic : Strategy::Layered;
      search_cfg.seeds = seeds_name == "both"
                             ? SeedChoice::Both
                             : (seeds_name == "free" ? SeedChoice::Free : SeedChoice::With1221);
      search_cfg.threads = threads;
      search_cfg.checkpoint_path = checkpoint_path;
      manifest.config = json{{"n", search_cfg.n},
                             {"strategy", strategy_name},
                             {"seeds", seeds_name},
                             {"threads", threads}};
      Catalog catalog =
          (!checkpoint_path.empty() && std::filesystem::exists(checkpoint_path))
              ? resume(checkpoint_path, threads, &search_cfg)
              : enumerate_candidates(search_cfg);
      std::ostringstream body;
      write_catalog_jsonl(body, catalog);
      json tail{{"manifest", manifest.finish()}};
      if (out_path.empty() || out_path == "-") {
        std::cout << body.str() << tail.dump() << "\n";
      } else {
        std::ofstream os(out_path, std::ios::trunc);
        os << body.str() << tail.dump() << "\n";
      }
    } else if (*orient) {
      manifest.add_input("graph6", orient_g6);
      Graph g = parse_graph6(orient_g6);
      RConstraintSystem sys = build_r_system(g);
      BranchSearchResult res = branch_search(g, threads);
      json doc = branch_result_to_json(g, sys, res, orient_raw);
      doc["manifest"] = manifest.finish();
      emit(doc, out_path);
    } else if (*gamma) {
      manifest.add_input("graph6", gamma_g6);
      manifest.seeds = json{{"gamma", gamma_cfg.rng_seed}};
      gamma_cfg.threads = threads;
      Graph g = parse_graph6(gamma_g6);
      RConstraintSystem sys = build_r_system(g);
      json doc;
      if (gamma_auto) {
        BranchSearchResult res = branch_search(g, threads);
        json runs = json::array();
        for (std::size_t c = 0; c < res.classes.size(); ++c) {
          const auto& cls = res.classes[c];
          for (std::size_t s = 0; s < cls.representative.assignments.size(); ++s) {
            GammaSystem gsys =
                build_gamma_system(g, sys, cls.representative.assignments[s]);
            runs.push_back(json{{"orientation_class", c},
                                {"r_solution", s},
                                {"result", gamma_solution_to_json(
                                               g, solve_gamma(gsys, gamma_cfg))}});
          }
        }
        doc["runs"] = runs;
      } else {
        if (gamma_rfile.empty())
          throw GammaError("gamma needs --r-file or --auto");
        std::string text = read_file(gamma_rfile);
        manifest.add_input("r_file", text);
        RAssignment r = assignment_from_json(sys, json::parse(text));
        GammaSystem gsys = build_gamma_system(g, sys, r);
        doc["result"] = gamma_solution_to_json(g, solve_gamma(gsys, gamma_cfg));
      }
      doc["manifest"] = manifest.finish();
      emit(doc, out_path);
    } else if (*verify) {
      std::string text = read_file(verify_file);
      manifest.add_input("file", text);
      json in = json::parse(text);
      MTLZData data;
      data.graph = parse_graph6(in.at("graph6").get<std::string>());
      data.forms.dim = in.at("m").get<int>();
      data.forms.forms.resize(data.graph.edges().size());
      data.orientation.signs.assign(data.graph.edges().size(), 0);
      data.gamma.assign(data.graph.edges().size(), 0.0);
      for (std::size_t i = 0; i < data.graph.edges().size(); ++i) {
        std::string key = edge_key(data.graph.edges()[i]);
        data.forms.forms[i] = in.at("forms").at(key).get<std::vector<double>>();
        data.orientation.signs[i] =
            static_cast<std::int8_t>(in.at("signs").at(key).get<int>());
        data.gamma[i] = in.at("gamma").at(key).get<double>();
      }
      double tol = in.value("tol", verify_tol);
      auto items_json = [](const ResidualReport& rep) {
        json items = json::array();
        for (const auto& item : rep.items)
          items.push_back(json{{"subject", item.subject}, {"residual", item.residual}});
        return items;
      };
      ResidualReport cyc = check_cycle_property(data, tol);
      ResidualReport mp = check_multipath_property(data, tol);
      json doc{{"cycle_property",
                json{{"max_residual", cyc.max_residual}, {"pass", cyc.pass(tol)},
                     {"items", items_json(cyc)}}},
               {"multipath_property",
                json{{"max_residual", mp.max_residual}, {"pass", mp.pass(tol)},
                     {"items", items_json(mp)}}},
               {"tol", tol},
               {"pass", cyc.pass(tol) && mp.pass(tol)}};
      doc["manifest"] = manifest.finish();
      emit(doc, out_path);
    } else if (*pipeline) {
      manifest.add_input("graph6", pipeline_g6);
      manifest.seeds = json{{"gamma", pipeline_gamma.rng_seed}};
      pipeline_gamma.threads = threads;
      json doc = run_pipeline(parse_graph6(pipeline_g6), pipeline_gamma);
      doc["manifest"] = manifest.finish();
      emit(doc, out_path);
    } else if (*report) {
      for (const auto& f : report_files) manifest.add_input(f, read_file(f));
      json doc = table_report(report_files, report_from, report_to);
      doc["manifest"] = manifest.finish();
      emit(doc, out_path);
    }
  } catch (const std::exception& e) {
    json err{{"error", e.what()}, {"manifest", manifest.finish()}};
    std::cerr << err.dump(2) << "\n";
    return 1;
  }
  return 0;
}
