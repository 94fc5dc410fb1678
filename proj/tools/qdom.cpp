// qdom: build the named graph families, measure gamma and the least
// Q-eigenvalue, run the verification sweeps, and explore the extremal
// landscape. Machine-readable JSON throughout; exit code 0 when everything
// passed, 1 on a counterexample, 2 when inconclusive results remain, 64 on
// usage errors.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "qdom/domination.hpp"
#include "qdom/enumeration.hpp"
#include "qdom/families.hpp"
#include "qdom/graph.hpp"
#include "qdom/perturbations.hpp"
#include "qdom/report.hpp"
#include "qdom/spectra.hpp"

using namespace qdom;
using nlohmann::json;

namespace {

struct RunConfig {
  double tol = 1e-10;
  double margin = 1e-8;
  int workers = 1;
  std::string cache_path;
  std::string format = "json";
  std::string n_range;
};

std::pair<int, int> parse_range(const std::string& text, int def_lo,
                                int def_hi) {
  if (text.empty()) return {def_lo, def_hi};
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    int v = std::stoi(text);
    return {v, v};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

json measure_graph(const Graph& g, double tol) {
  StructuralProfile p = profile(g);
  domination::DominationCert dom = domination::domination_number(g);
  spectra::SpectralCert spec = spectra::q_spectrum(g, tol);
  json j;
  j["graph6"] = g.to_graph6();
  j["n"] = g.order();
  j["m"] = g.size();
  j["profile"] = {
      {"connected", p.connected},
      {"bipartite", p.bipartite},
      {"girth", p.girth == kInfinity ? -1 : p.girth},
      {"odd_girth", p.odd_girth == kInfinity ? -1 : p.odd_girth},
      {"min_degree", p.min_degree},
      {"pendants", set_to_vector(p.pendant_vertices)},
      {"p_dominators", set_to_vector(p.p_dominators)},
  };
  j["gamma"] = dom.gamma;
  j["witness"] = set_to_vector(dom.witness);
  j["q_min"] = spec.q_min;
  j["residual"] = spec.residual;
  return j;
}

void emit_measurement(const Graph& g, const RunConfig& cfg,
                      const LabelMap* labels) {
  if (cfg.format == "dot") {
    std::cout << to_dot(g, labels);
  } else if (cfg.format == "graph6") {
    std::cout << g.to_graph6() << "\n";
  } else if (cfg.format == "csv") {
    json j = measure_graph(g, cfg.tol);
    std::cout << j["graph6"].get<std::string>() << "," << j["n"] << ","
              << j["m"] << "," << j["gamma"] << "," << j["q_min"] << "\n";
  } else {
    std::cout << measure_graph(g, cfg.tol).dump() << "\n";
  }
}

int exit_code_for(const report::VerificationReport& rep) {
  if (rep.count(spectra::CheckStatus::Fail) > 0) return 1;
  if (rep.count(spectra::CheckStatus::Inconclusive) > 0) return 2;
  return 0;
}

void print_report(const report::VerificationReport& rep) {
  std::cout << rep.to_jsonl();
  std::cerr << rep.summary() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"domination number and least Q-eigenvalue toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--tol", cfg.tol, "eigensolver tolerance")
      ->check(CLI::Range(1e-14, 1e-6));
  app.add_option("--margin", cfg.margin, "strict-inequality margin");
  app.add_option("--workers", cfg.workers, "parallel sweep workers")
      ->check(CLI::PositiveNumber);
  app.add_option("--cache", cfg.cache_path, "JSON-lines gamma/q_min cache");
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "dot", "graph6"}));

  std::string family_json;
  CLI::App* family = app.add_subcommand(
      "family", "build a family instance and print its measurements");
  family->add_option("spec", family_json, "FamilySpec JSON")->required();

  CLI::App* measure = app.add_subcommand(
      "measure", "measure graph6 graphs from stdin, one per line");

  std::string theorem_id;
  CLI::App* verify =
      app.add_subcommand("verify", "run a theorem or lemma sweep");
  verify->add_option("id", theorem_id, "theorem identifier")->required();
  verify->add_option("--n", cfg.n_range, "order budget (N or A..B)");

  std::string universe = "unicyclic";
  std::optional<int> search_girth, odd_girth_max;
  std::string gamma_range;
  CLI::App* search = app.add_subcommand(
      "search", "extremal search for the minimum q_min in a universe");
  search->add_option("--universe", universe, "unicyclic|connected|all");
  search->add_option("--n", cfg.n_range, "order")->required();
  search->add_option("--girth", search_girth, "exact girth filter");
  search->add_option("--odd-girth-max", odd_girth_max, "odd girth bound");
  search->add_option("--gamma", gamma_range, "gamma value or range A..B");

  CLI::App* conjecture = app.add_subcommand(
      "conjecture", "explore the open question at small orders");
  conjecture->add_option("--n", cfg.n_range, "order range A..B");

  std::string convert_to = "dot";
  CLI::App* convert =
      app.add_subcommand("convert", "convert between graph6 and DOT");
  convert->add_option("--to", convert_to, "dot|graph6")
      ->check(CLI::IsMember({"dot", "graph6"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  if (!(cfg.tol < cfg.margin)) {
    std::cerr << "tol must stay below margin\n";
    return 64;
  }

  enumeration::Cache cache;
  if (!cfg.cache_path.empty()) cache.load(cfg.cache_path);
  auto save_cache = [&] {
    if (!cfg.cache_path.empty()) cache.save(cfg.cache_path);
  };

  try {
    if (family->parsed()) {
      families::FamilySpec spec = families::family_spec_from_json(family_json);
      families::FamilyInstance inst = families::make(spec);
      emit_measurement(inst.graph, cfg, &inst.labels);
      return 0;
    }
    if (measure->parsed()) {
      std::string line;
      while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        emit_measurement(Graph::from_graph6(line), cfg, nullptr);
      }
      return 0;
    }
    if (verify->parsed()) {
      auto [lo, hi] = parse_range(cfg.n_range, 0, 0);
      int budget = hi > 0 ? hi : 11;
      report::VerificationReport rep = enumeration::verify_theorem(
          theorem_id, budget, cfg.tol, cfg.margin, &cache, cfg.workers);
      save_cache();
      print_report(rep);
      return exit_code_for(rep);
    }
    if (search->parsed()) {
      enumeration::UniverseSpec spec;
      if (universe == "unicyclic")
        spec.kind = enumeration::UniverseKind::UnicyclicNonbipartite;
      else if (universe == "connected")
        spec.kind = enumeration::UniverseKind::ConnectedNonbipartite;
      else
        spec.kind = enumeration::UniverseKind::ConnectedAll;
      auto [lo, hi] = parse_range(cfg.n_range, 0, 0);
      spec.n = hi;
      spec.girth = search_girth;
      spec.odd_girth_max = odd_girth_max;
      if (!gamma_range.empty())
        spec.gamma_range = parse_range(gamma_range, 0, 0);
      enumeration::ExtremalResult res = enumeration::extremal_search(
          spec, cfg.margin, cfg.tol, &cache, cfg.workers);
      save_cache();
      json j;
      j["min_q"] = res.min_value;
      j["unique"] = res.unique;
      j["runner_up_gap"] = res.runner_up_gap;
      json mins = json::array();
      for (const Graph& g : res.minimizers) mins.push_back(g.to_graph6());
      j["minimizers"] = mins;
      std::cout << j.dump() << "\n";
      return res.unique ? 0 : 2;
    }
    if (conjecture->parsed()) {
      auto [lo, hi] = parse_range(cfg.n_range, 4, 8);
      report::VerificationReport rep = enumeration::explore_conjecture(
          lo, hi, cfg.tol, cfg.margin, &cache, cfg.workers);
      save_cache();
      print_report(rep);
      return exit_code_for(rep);
    }
    if (convert->parsed()) {
      std::string text((std::istreambuf_iterator<char>(std::cin)),
                       std::istreambuf_iterator<char>());
      if (convert_to == "dot") {
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
          if (line.empty()) continue;
          std::cout << to_dot(Graph::from_graph6(line));
        }
      } else {
        std::cout << from_dot(text).to_graph6() << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  }
  return 64;
}
